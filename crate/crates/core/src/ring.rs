//! Coefficient rings.
//!
//! Every supported ring is a quotient `D/(m)` of a Euclidean domain `D`:
//! the integers (with optional modulus, covering `Z/n` and `F_p`) and,
//! behind the `poly` feature, `F_p[x]`. All normal-form computations run in
//! `D`; a nonzero modulus is carried along as the extra relations `m·e_i`.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// A Euclidean domain with canonical remainders and canonical associates.
///
/// Implementations are context objects: elements are plain data and all
/// arithmetic goes through `&self`.
pub trait EuclideanDomain: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Euclidean size; zero exactly for the zero element.
    fn size(&self, a: &Self::Elem) -> BigUint;

    /// Division with remainder by a nonzero `b`. When `b` is a canonical
    /// associate the remainder is the canonical representative of `a mod b`.
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);

    /// A unit `u` such that `u·a` is the canonical associate of `a`.
    fn normalizing_unit(&self, a: &Self::Elem) -> Self::Elem;

    fn is_unit(&self, a: &Self::Elem) -> bool;

    /// `|D/(a)|`, or `None` when infinite.
    fn residue_count(&self, a: &Self::Elem) -> Option<BigUint>;

    /// All canonical residues modulo a nonzero `a`, if there are at most `limit`.
    fn residues(&self, a: &Self::Elem, limit: usize) -> Option<Vec<Self::Elem>>;

    fn format(&self, a: &Self::Elem) -> String;

    /// The element numbered `index` in a fixed enumeration of "small"
    /// elements, used for sampling. Integers enumerate as themselves.
    fn small_element(&self, index: u64) -> Self::Elem {
        self.from_int(&BigInt::from(index))
    }

    fn is_associate_canonical(&self, a: &Self::Elem) -> bool {
        self.is_zero(a) || self.normalizing_unit(a) == self.one()
    }

    /// Exact quotient `a / b` when `b` divides `a`.
    fn divide_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        if self.is_zero(b) {
            return if self.is_zero(a) {
                Some(self.zero())
            } else {
                None
            };
        }
        let (q, r) = self.div_rem(a, b);
        self.is_zero(&r).then_some(q)
    }

    /// Extended gcd: `(g, s, t)` with `g = s·a + t·b` and `g` canonical.
    fn xgcd(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem, Self::Elem) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !self.is_zero(&r1) {
            let (q, r) = self.div_rem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.sub(&t0, &self.mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let u = self.normalizing_unit(&r0);
        (self.mul(&u, &r0), self.mul(&u, &s0), self.mul(&u, &t0))
    }

    fn gcd(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.xgcd(a, b).0
    }
}

/// The ring of integers with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl EuclideanDomain for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn size(&self, a: &BigInt) -> BigUint {
        a.magnitude().clone()
    }
    fn div_rem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        let r = a.mod_floor(&b.abs());
        let q = (a - &r) / b;
        (q, r)
    }
    fn normalizing_unit(&self, a: &BigInt) -> BigInt {
        if a.sign() == Sign::Minus {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }
    fn is_unit(&self, a: &BigInt) -> bool {
        a.magnitude().is_one()
    }
    fn residue_count(&self, a: &BigInt) -> Option<BigUint> {
        (!a.is_zero()).then(|| a.magnitude().clone())
    }
    fn residues(&self, a: &BigInt, limit: usize) -> Option<Vec<BigInt>> {
        let n = a.magnitude().to_usize()?;
        (n <= limit).then(|| (0..n).map(BigInt::from).collect())
    }
    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }
}

/// A polynomial over `F_p`, coefficients from the constant term upward,
/// without trailing zeros.
#[cfg(feature = "poly")]
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly(pub Vec<u64>);

#[cfg(feature = "poly")]
impl Poly {
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }
    fn trimmed(mut v: Vec<u64>) -> Poly {
        while v.last() == Some(&0) {
            v.pop();
        }
        Poly(v)
    }
}

/// The polynomial ring `F_p[x]`.
#[cfg(feature = "poly")]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolyFp {
    p: u64,
}

#[cfg(feature = "poly")]
impl PolyFp {
    pub fn new(p: u64) -> Result<Self, Error> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        Ok(PolyFp { p })
    }
    pub fn characteristic(&self) -> u64 {
        self.p
    }
    /// Builds a polynomial from coefficients, reducing mod `p`.
    pub fn poly(&self, coeffs: &[i64]) -> Poly {
        let p = self.p as i64;
        Poly::trimmed(coeffs.iter().map(|c| c.rem_euclid(p) as u64).collect())
    }
    /// The monomial `c·x^k`.
    pub fn monomial(&self, c: u64, k: usize) -> Poly {
        let mut v = vec![0; k + 1];
        v[k] = c % self.p;
        Poly::trimmed(v)
    }
    fn inv(&self, a: u64) -> u64 {
        pow_mod(a, self.p - 2, self.p)
    }
}

#[cfg(feature = "poly")]
impl EuclideanDomain for PolyFp {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly(Vec::new())
    }
    fn one(&self) -> Poly {
        Poly(vec![1])
    }
    fn from_int(&self, n: &BigInt) -> Poly {
        let r = n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap_or(0);
        Poly::trimmed(vec![r])
    }
    fn is_zero(&self, a: &Poly) -> bool {
        a.0.is_empty()
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.0.len().max(b.0.len());
        let v = (0..n)
            .map(|i| {
                let s = a.0.get(i).copied().unwrap_or(0) as u128
                    + b.0.get(i).copied().unwrap_or(0) as u128;
                (s % self.p as u128) as u64
            })
            .collect();
        Poly::trimmed(v)
    }
    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        self.add(a, &self.neg(b))
    }
    fn neg(&self, a: &Poly) -> Poly {
        Poly(a.0.iter().map(|&c| (self.p - c) % self.p).collect())
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.0.is_empty() || b.0.is_empty() {
            return self.zero();
        }
        let mut v = vec![0u64; a.0.len() + b.0.len() - 1];
        for (i, &x) in a.0.iter().enumerate() {
            for (j, &y) in b.0.iter().enumerate() {
                v[i + j] = ((v[i + j] as u128 + x as u128 * y as u128) % self.p as u128) as u64;
            }
        }
        Poly::trimmed(v)
    }
    fn size(&self, a: &Poly) -> BigUint {
        BigUint::from(a.0.len())
    }
    fn div_rem(&self, a: &Poly, b: &Poly) -> (Poly, Poly) {
        let db = b.degree().expect("division by zero polynomial");
        let lead_inv = self.inv(b.0[db]);
        let mut r = a.0.clone();
        let mut q = vec![0u64; a.0.len().saturating_sub(db).max(1)];
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            let c = mulmod(r[dr], lead_inv, self.p);
            let shift = dr - db;
            q[shift] = c;
            for (j, &bj) in b.0.iter().enumerate() {
                r[shift + j] = ((r[shift + j] as u128 + (self.p - mulmod(c, bj, self.p)) as u128)
                    % self.p as u128) as u64;
            }
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        (Poly::trimmed(q), Poly::trimmed(r))
    }
    fn normalizing_unit(&self, a: &Poly) -> Poly {
        match a.0.last() {
            Some(&lead) => Poly(vec![self.inv(lead)]),
            None => self.one(),
        }
    }
    fn is_unit(&self, a: &Poly) -> bool {
        a.0.len() == 1
    }
    fn residue_count(&self, a: &Poly) -> Option<BigUint> {
        let d = a.degree()?;
        Some(BigUint::from(self.p).pow(d as u32))
    }
    fn residues(&self, a: &Poly, limit: usize) -> Option<Vec<Poly>> {
        let d = a.degree()?;
        let count = (self.p as usize).checked_pow(d as u32)?;
        if count > limit {
            return None;
        }
        let out = (0..count)
            .map(|mut idx| {
                let mut v = Vec::with_capacity(d);
                for _ in 0..d {
                    v.push((idx % self.p as usize) as u64);
                    idx /= self.p as usize;
                }
                Poly::trimmed(v)
            })
            .collect();
        Some(out)
    }
    /// Base-`p` digits of `index` as coefficients.
    fn small_element(&self, mut index: u64) -> Poly {
        let mut v = Vec::new();
        while index > 0 {
            v.push(index % self.p);
            index /= self.p;
        }
        Poly::trimmed(v)
    }
    fn format(&self, a: &Poly) -> String {
        if a.0.is_empty() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (k, &c) in a.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let t = match (k, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (k, 1) => format!("x^{k}"),
                (k, c) => format!("{c}x^{k}"),
            };
            terms.push(t);
        }
        terms.join("+")
    }
}

/// Names one of the supported rings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingDescriptor {
    Integers,
    IntegersMod(u64),
    PrimeField(u64),
    PolynomialsOverPrimeField(u64),
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Integers => write!(f, "Z"),
            RingDescriptor::IntegersMod(n) => write!(f, "Zmod:{n}"),
            RingDescriptor::PrimeField(p) => write!(f, "Fp:{p}"),
            RingDescriptor::PolynomialsOverPrimeField(p) => write!(f, "Fpx:{p}"),
        }
    }
}

impl FromStr for RingDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s == "Z" {
            return Ok(RingDescriptor::Integers);
        }
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidRing(format!("unknown ring `{s}`")))?;
        let n: u64 = arg
            .trim()
            .parse()
            .map_err(|_| Error::InvalidRing(format!("bad ring parameter `{arg}`")))?;
        let desc = match kind.trim() {
            "Zmod" => RingDescriptor::IntegersMod(n),
            "Fp" => RingDescriptor::PrimeField(n),
            "Fpx" => RingDescriptor::PolynomialsOverPrimeField(n),
            other => return Err(Error::InvalidRing(format!("unknown ring kind `{other}`"))),
        };
        desc.validate()?;
        Ok(desc)
    }
}

impl RingDescriptor {
    pub fn validate(&self) -> Result<(), Error> {
        match *self {
            RingDescriptor::Integers => Ok(()),
            RingDescriptor::IntegersMod(n) if n >= 2 => Ok(()),
            RingDescriptor::IntegersMod(n) => Err(Error::InvalidRing(format!("modulus {n} < 2"))),
            RingDescriptor::PrimeField(p) | RingDescriptor::PolynomialsOverPrimeField(p) => {
                if is_prime(p) {
                    Ok(())
                } else {
                    Err(Error::InvalidRing(format!("{p} is not prime")))
                }
            }
        }
    }
}

/// A ring `D/(m)` with its Euclidean domain `D` and optional modulus `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring<D: EuclideanDomain> {
    domain: D,
    modulus: Option<D::Elem>,
    descriptor: RingDescriptor,
}

impl Ring<Integers> {
    pub fn integers() -> Self {
        Ring {
            domain: Integers,
            modulus: None,
            descriptor: RingDescriptor::Integers,
        }
    }

    pub fn integers_mod(n: u64) -> Result<Self, Error> {
        let descriptor = RingDescriptor::IntegersMod(n);
        descriptor.validate()?;
        Ok(Ring {
            domain: Integers,
            modulus: Some(BigInt::from(n)),
            descriptor,
        })
    }

    pub fn prime_field(p: u64) -> Result<Self, Error> {
        let descriptor = RingDescriptor::PrimeField(p);
        descriptor.validate()?;
        Ok(Ring {
            domain: Integers,
            modulus: Some(BigInt::from(p)),
            descriptor,
        })
    }

    /// The integer-based ring for a descriptor; polynomial rings are rejected.
    pub fn from_descriptor(desc: RingDescriptor) -> Result<Self, Error> {
        match desc {
            RingDescriptor::Integers => Ok(Self::integers()),
            RingDescriptor::IntegersMod(n) => Self::integers_mod(n),
            RingDescriptor::PrimeField(p) => Self::prime_field(p),
            RingDescriptor::PolynomialsOverPrimeField(_) => Err(Error::InvalidRing(
                "polynomial ring is not an integer ring".into(),
            )),
        }
    }

    /// Shorthand for an integer constant.
    pub fn int(&self, n: i64) -> BigInt {
        self.reduce(&BigInt::from(n))
    }
}

#[cfg(feature = "poly")]
impl Ring<PolyFp> {
    pub fn poly_over_fp(p: u64) -> Result<Self, Error> {
        let domain = PolyFp::new(p)?;
        Ok(Ring {
            domain,
            modulus: None,
            descriptor: RingDescriptor::PolynomialsOverPrimeField(p),
        })
    }
}

impl<D: EuclideanDomain> Ring<D> {
    pub fn domain(&self) -> &D {
        &self.domain
    }

    pub fn descriptor(&self) -> RingDescriptor {
        self.descriptor
    }

    /// The modulus `m` of `D/(m)`, if any.
    pub fn modulus(&self) -> Option<&D::Elem> {
        self.modulus.as_ref()
    }

    /// Canonical representative of `a` in the quotient ring.
    pub fn reduce(&self, a: &D::Elem) -> D::Elem {
        match &self.modulus {
            Some(m) => self.domain.div_rem(a, m).1,
            None => a.clone(),
        }
    }

    pub fn zero(&self) -> D::Elem {
        self.domain.zero()
    }
    pub fn one(&self) -> D::Elem {
        self.reduce(&self.domain.one())
    }
    pub fn from_int(&self, n: &BigInt) -> D::Elem {
        self.reduce(&self.domain.from_int(n))
    }
    pub fn add(&self, a: &D::Elem, b: &D::Elem) -> D::Elem {
        self.reduce(&self.domain.add(a, b))
    }
    pub fn sub(&self, a: &D::Elem, b: &D::Elem) -> D::Elem {
        self.reduce(&self.domain.sub(a, b))
    }
    pub fn neg(&self, a: &D::Elem) -> D::Elem {
        self.reduce(&self.domain.neg(a))
    }
    pub fn mul(&self, a: &D::Elem, b: &D::Elem) -> D::Elem {
        self.reduce(&self.domain.mul(a, b))
    }
    pub fn pow(&self, a: &D::Elem, mut e: u64) -> D::Elem {
        let mut base = self.reduce(a);
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
    pub fn is_zero(&self, a: &D::Elem) -> bool {
        self.domain.is_zero(&self.reduce(a))
    }

    /// Number of elements, `None` if infinite.
    pub fn order(&self) -> Option<BigUint> {
        self.modulus
            .as_ref()
            .and_then(|m| self.domain.residue_count(m))
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    /// All elements of a finite ring, in canonical order.
    pub fn elements(&self, limit: usize) -> Option<Vec<D::Elem>> {
        self.modulus
            .as_ref()
            .and_then(|m| self.domain.residues(m, limit))
    }

    pub fn format(&self, a: &D::Elem) -> String {
        self.domain.format(a)
    }
}

impl<D: EuclideanDomain> fmt::Display for Ring<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.descriptor.fmt(f)
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(feature = "poly")]
#[cfg(feature = "poly")]
fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

#[cfg(feature = "poly")]
fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_parse_roundtrip() {
        for s in ["Z", "Zmod:12", "Fp:7", "Fpx:2"] {
            let d: RingDescriptor = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
        assert!("Zmod:1".parse::<RingDescriptor>().is_err());
        assert!("Fp:9".parse::<RingDescriptor>().is_err());
        assert!("Q".parse::<RingDescriptor>().is_err());
    }

    #[test]
    fn integer_division_has_canonical_remainder() {
        let z = Integers;
        let (q, r) = z.div_rem(&BigInt::from(-7), &BigInt::from(3));
        assert_eq!(r, BigInt::from(2));
        assert_eq!(q, BigInt::from(-3));
        let (q, r) = z.div_rem(&BigInt::from(7), &BigInt::from(-3));
        assert_eq!(&q * BigInt::from(-3) + &r, BigInt::from(7));
        assert!(r >= BigInt::zero() && r < BigInt::from(3));
    }

    #[test]
    fn xgcd_bezout() {
        let z = Integers;
        let (g, s, t) = z.xgcd(&BigInt::from(4), &BigInt::from(6));
        assert_eq!(g, BigInt::from(2));
        assert_eq!(s * 4 + t * 6, BigInt::from(2));
        let (g, _, _) = z.xgcd(&BigInt::from(-4), &BigInt::from(0));
        assert_eq!(g, BigInt::from(4));
    }

    #[test]
    fn modular_ring_reduces() {
        let r = Ring::integers_mod(6).unwrap();
        assert_eq!(r.int(8), r.int(2));
        assert_eq!(r.neg(&r.int(1)), r.int(5));
        assert_eq!(r.order(), Some(BigUint::from(6u32)));
        assert_eq!(r.elements(100).unwrap().len(), 6);
        assert!(!Ring::integers().is_finite());
    }

    #[cfg(feature = "poly")]
    #[test]
    fn polynomial_arithmetic() {
        let f = PolyFp::new(2).unwrap();
        let x = f.monomial(1, 1);
        let x2p1 = f.add(&f.mul(&x, &x), &f.one());
        // (x+1)^2 = x^2 + 1 over F_2
        let xp1 = f.add(&x, &f.one());
        assert_eq!(f.mul(&xp1, &xp1), x2p1);
        let (q, r) = f.div_rem(&x2p1, &xp1);
        assert_eq!(q, xp1);
        assert!(f.is_zero(&r));
        assert_eq!(f.format(&x2p1), "x^2+1");
        assert_eq!(f.residue_count(&x2p1), Some(BigUint::from(4u32)));
        let g = PolyFp::new(5).unwrap();
        let a = g.poly(&[1, 0, 3]);
        assert_eq!(g.mul(&g.normalizing_unit(&a), &a).0.last(), Some(&1));
    }
}

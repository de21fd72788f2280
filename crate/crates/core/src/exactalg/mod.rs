//! Exact linear algebra: normal forms, linear systems and finitely
//! generated submodules of `R^k`.
//!
//! A submodule of `R^k` with `R = D/(m)` is stored as its preimage lattice in
//! `D^k`, which always contains `m·D^k`. Its canonical form is the row
//! Hermite basis of that lattice.

mod normal;
mod submodule;

pub use submodule::{quotient_order, Submodule};

pub(crate) use normal::{coordinates, row_hermite, smith as normal_smith};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::ring::{EuclideanDomain, Ring};

/// Cardinality of a finite set or group, or infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Card {
    Finite(BigUint),
    Infinite,
}

impl Card {
    pub fn one() -> Card {
        Card::Finite(BigUint::one())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Card::Finite(n) if n.is_one())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Card::Finite(_))
    }

    pub fn finite(&self) -> Option<&BigUint> {
        match self {
            Card::Finite(n) => Some(n),
            Card::Infinite => None,
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.finite().and_then(|n| n.to_u64())
    }
}

impl From<u64> for Card {
    fn from(n: u64) -> Self {
        Card::Finite(BigUint::from(n))
    }
}

impl std::ops::Mul for Card {
    type Output = Card;
    fn mul(self, rhs: Card) -> Card {
        match (self, rhs) {
            (Card::Finite(a), Card::Finite(b)) => Card::Finite(a * b),
            _ => Card::Infinite,
        }
    }
}

impl std::fmt::Display for Card {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Card::Finite(n) => write!(f, "{n}"),
            Card::Infinite => write!(f, "inf"),
        }
    }
}

/// Which way the solver walks its generators; both give valid solutions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SolveOrder {
    #[default]
    Forward,
    Reverse,
}

/// Column-style Hermite form: the canonical generators of the column span,
/// as columns, with zero columns dropped.
pub fn hermite_form<D: EuclideanDomain>(ring: &Ring<D>, m: &Mat<D::Elem>) -> Mat<D::Elem> {
    Submodule::from_columns(ring, m).canonical_form()
}

/// Smith form `(U, S, V)` with `U·m·V = S`.
///
/// Over `Z/n` the diagonal entries are normalized to the divisors
/// `gcd(d, n)` of `n`.
pub fn smith_form<D: EuclideanDomain>(
    ring: &Ring<D>,
    m: &Mat<D::Elem>,
) -> (Mat<D::Elem>, Mat<D::Elem>, Mat<D::Elem>) {
    let d = ring.domain();
    let sf = normal::smith(d, ring.reduce_mat(m).to_rows(), m.cols());
    let mut u = Mat::from_rows(sf.p, m.rows()).expect("square");
    let mut s = Mat::from_rows(sf.s, m.cols()).expect("shape");
    let v = Mat::from_rows(sf.q, m.cols()).expect("square");
    if let Some(modulus) = ring.modulus() {
        for i in 0..m.rows().min(m.cols()) {
            let entry = s.get(i, i).clone();
            if let Some(unit) = modular_normalizer(d, &entry, modulus) {
                for j in 0..m.cols() {
                    let x = d.mul(&unit, s.get(i, j));
                    s.set(i, j, x);
                }
                for j in 0..m.rows() {
                    let x = d.mul(&unit, u.get(i, j));
                    u.set(i, j, x);
                }
            }
        }
    }
    (
        ring.reduce_mat(&u),
        ring.reduce_mat(&s),
        ring.reduce_mat(&v),
    )
}

/// A unit `u` of `D/(m)` with `u·a ≡ gcd(a, m)`, when one is needed.
fn modular_normalizer<D: EuclideanDomain>(d: &D, a: &D::Elem, m: &D::Elem) -> Option<D::Elem> {
    let g = d.gcd(a, m);
    let a_red = d.div_rem(a, m).1;
    if a_red == d.div_rem(&g, m).1 {
        return None;
    }
    // Integers only: search the unit among lifts of (a/g)^{-1} mod m/g.
    let m_int = BigInt::from_biguint(num_bigint::Sign::Plus, d.size(m));
    let g_int = BigInt::from_biguint(num_bigint::Sign::Plus, d.size(&g));
    let a_int = BigInt::from_biguint(num_bigint::Sign::Plus, d.size(&a_red));
    if d.from_int(&a_int) != a_red || d.from_int(&g_int) != g {
        return None;
    }
    let mg = &m_int / &g_int;
    let ag = &a_int / &g_int;
    let inv = mod_inverse(&ag, &mg)?;
    let mut k = BigInt::zero();
    while k < g_int {
        let cand = &inv + &k * &mg;
        if cand.gcd(&m_int).is_one() {
            return Some(d.from_int(&cand));
        }
        k += 1;
    }
    None
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Some `x` with `A·x ≡ b` modulo `modulo` (or modulo nothing beyond the
/// ring's own modulus), or `None` when no solution exists.
pub fn solve_linear<D: EuclideanDomain>(
    ring: &Ring<D>,
    a: &Mat<D::Elem>,
    b: &[D::Elem],
    modulo: Option<&Submodule<D>>,
) -> Result<Option<Vec<D::Elem>>> {
    solve_linear_with(ring, a, b, modulo, SolveOrder::Forward)
}

pub fn solve_linear_with<D: EuclideanDomain>(
    ring: &Ring<D>,
    a: &Mat<D::Elem>,
    b: &[D::Elem],
    modulo: Option<&Submodule<D>>,
    order: SolveOrder,
) -> Result<Option<Vec<D::Elem>>> {
    let m = a.rows();
    if b.len() != m {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {m} rows",
            b.len()
        )));
    }
    let zero;
    let modulo = match modulo {
        Some(s) => {
            if s.ambient_rank() != m {
                return Err(Error::DimensionMismatch(format!(
                    "modulus submodule of rank {} for {m} rows",
                    s.ambient_rank()
                )));
            }
            s
        }
        None => {
            zero = Submodule::zero(ring, m);
            &zero
        }
    };
    let d = ring.domain();
    let l = a.cols();
    let mut order_idx: Vec<usize> = (0..l).collect();
    if order == SolveOrder::Reverse {
        order_idx.reverse();
    }
    let mut gens: Vec<Vec<D::Elem>> = order_idx.iter().map(|&j| a.column(j)).collect();
    gens.extend(modulo.basis().iter().cloned());
    let h = row_hermite(d, gens, m, true);
    let target: Vec<D::Elem> = b.iter().map(|x| ring.reduce(x)).collect();
    let Some(c) = coordinates(d, &h.basis(), &h.pivots, &target) else {
        return Ok(None);
    };
    let u = h.transform.as_ref().expect("tracked");
    let mut x = vec![d.zero(); l];
    for (ci, urow) in c.iter().zip(u.iter()) {
        if d.is_zero(ci) {
            continue;
        }
        for (pos, &j) in order_idx.iter().enumerate() {
            x[j] = d.add(&x[j], &d.mul(ci, &urow[pos]));
        }
    }
    let x: Vec<D::Elem> = x.iter().map(|e| ring.reduce(e)).collect();
    debug_assert!({
        let ax = ring.mat_vec(a, &x).unwrap();
        let diff: Vec<_> = ax
            .iter()
            .zip(&target)
            .map(|(p, q)| ring.sub(p, q))
            .collect();
        modulo.contains(&diff).unwrap()
    });
    Ok(Some(x))
}

/// `{x : f·x ∈ target}` for a matrix `f` of shape `b × a`.
pub fn preimage<D: EuclideanDomain>(
    ring: &Ring<D>,
    f: &Mat<D::Elem>,
    target: &Submodule<D>,
) -> Result<Submodule<D>> {
    if target.ambient_rank() != f.rows() {
        return Err(Error::AmbientMismatch(f.rows(), target.ambient_rank()));
    }
    let a = f.cols();
    let mut gens: Vec<Vec<D::Elem>> = (0..a).map(|j| f.column(j)).collect();
    gens.extend(target.basis().iter().cloned());
    let h = row_hermite(ring.domain(), gens, f.rows(), true);
    let kernel = h
        .left_kernel()
        .into_iter()
        .map(|row| row[..a].to_vec())
        .collect();
    Submodule::new(ring, a, kernel)
}

/// `f(source)` for a matrix `f` of shape `b × a`.
pub fn image<D: EuclideanDomain>(
    ring: &Ring<D>,
    f: &Mat<D::Elem>,
    source: &Submodule<D>,
) -> Result<Submodule<D>> {
    if source.ambient_rank() != f.cols() {
        return Err(Error::AmbientMismatch(f.cols(), source.ambient_rank()));
    }
    let gens = source
        .basis()
        .iter()
        .map(|v| ring.mat_vec(f, v))
        .collect::<Result<Vec<_>>>()?;
    Submodule::new(ring, f.rows(), gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_examples() {
        let z = Ring::integers();
        assert_eq!(hermite_form(&z, &z.mat(&[&[4, 6]])), z.mat(&[&[2]]));
        assert_eq!(hermite_form(&z, &z.identity_mat(3)), z.identity_mat(3));
        let h = hermite_form(&z, &z.zero_mat(2, 3));
        assert_eq!((h.rows(), h.cols()), (2, 0));
    }

    #[test]
    fn hermite_is_idempotent_and_canonical() {
        let z = Ring::integers();
        let m = z.mat(&[&[3, 5, 7], &[-2, 4, 0]]);
        let h = hermite_form(&z, &m);
        assert_eq!(hermite_form(&z, &h), h);
        // same span, different generators
        let m2 = z.mat(&[&[3, 8, 15, 7], &[-2, 2, 2, 0]]);
        assert_eq!(hermite_form(&z, &m2), h);
    }

    #[test]
    fn smith_examples() {
        let z = Ring::integers();
        let (_, s, _) = smith_form(&z, &z.mat(&[&[2, 0], &[0, 3]]));
        assert_eq!(s, z.mat(&[&[1, 0], &[0, 6]]));
        let (_, s, _) = smith_form(&z, &z.identity_mat(2));
        assert_eq!(s, z.identity_mat(2));
        let (_, s, _) = smith_form(&z, &z.mat(&[&[0]]));
        assert_eq!(s, z.mat(&[&[0]]));
    }

    #[test]
    fn smith_over_zmod_normalizes_to_divisors() {
        let r = Ring::integers_mod(12).unwrap();
        let m = r.mat(&[&[10, 0], &[0, 7]]);
        let (u, s, v) = smith_form(&r, &m);
        assert_eq!(r.mat_mul(&r.mat_mul(&u, &m).unwrap(), &v).unwrap(), s);
        assert_eq!(s, r.mat(&[&[1, 0], &[0, 2]]));
    }

    #[test]
    fn solve_examples() {
        let z = Ring::integers();
        let a = z.mat(&[&[2]]);
        assert_eq!(
            solve_linear(&z, &a, &z.vector(&[4]), None).unwrap(),
            Some(z.vector(&[2]))
        );
        assert_eq!(solve_linear(&z, &a, &z.vector(&[1]), None).unwrap(), None);
        let three = Submodule::new(&z, 1, vec![z.vector(&[3])]).unwrap();
        let x = solve_linear(&z, &a, &z.vector(&[1]), Some(&three))
            .unwrap()
            .unwrap();
        // 2·x ≡ 1 mod 3
        assert_eq!(
            (&x[0] * BigInt::from(2) - BigInt::from(1)).mod_floor(&BigInt::from(3)),
            BigInt::zero()
        );
        assert!(matches!(
            solve_linear(&z, &a, &z.vector(&[1, 2]), None),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn solve_orders_both_valid() {
        let z = Ring::integers();
        let a = z.mat(&[&[2, 3, 5]]);
        for order in [SolveOrder::Forward, SolveOrder::Reverse] {
            let x = solve_linear_with(&z, &a, &z.vector(&[7]), None, order)
                .unwrap()
                .unwrap();
            assert_eq!(z.mat_vec(&a, &x).unwrap(), z.vector(&[7]));
        }
    }

    #[test]
    fn preimage_of_multiplication() {
        let z = Ring::integers();
        // x ↦ 2x, preimage of 4Z is 2Z
        let four = Submodule::new(&z, 1, vec![z.vector(&[4])]).unwrap();
        let p = preimage(&z, &z.mat(&[&[2]]), &four).unwrap();
        assert_eq!(p, Submodule::new(&z, 1, vec![z.vector(&[2])]).unwrap());
        let img = image(&z, &z.mat(&[&[3]]), &p).unwrap();
        assert_eq!(img, Submodule::new(&z, 1, vec![z.vector(&[6])]).unwrap());
    }
}

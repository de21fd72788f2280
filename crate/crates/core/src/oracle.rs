//! Brute-force counterparts of the pp calculus over finite rings `ℤ/q`.
//!
//! Everything here works on explicit element lists and shares nothing with
//! the normal-form machinery except the input types. Intended for tests.

use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::fpmod::{FpModule, DEFAULT_ENUM_BOUND};
use crate::mat::Mat;
use crate::ppcalc::PpFormula;
use crate::ring::{Integers, Ring};
use crate::Card;

/// An explicit finite module `(ℤ/q)^k / rel`, with cosets labelled `0..size`.
#[derive(Debug)]
struct Model {
    q: u32,
    k: usize,
    /// coset label of every vector of `(ℤ/q)^k`, indexed in base `q`
    canon: Vec<u32>,
    /// one representative per label, as digits
    reps: Vec<Vec<u32>>,
}

impl Model {
    fn new(
        ring: &Ring<Integers>,
        k: usize,
        relations: &[Vec<BigInt>],
        bound: usize,
    ) -> Result<Model> {
        let q = modulus(ring)?;
        let universe = (q as u128)
            .checked_pow(k as u32)
            .filter(|&u| u <= bound as u128)
            .ok_or(Error::TooLarge)? as usize;
        let rel_gens: Vec<Vec<u32>> = relations
            .iter()
            .map(|r| r.iter().map(|c| residue(c, q)).collect())
            .collect();

        // the relation subgroup, grown one generator at a time
        let mut in_rel = vec![false; universe];
        in_rel[0] = true;
        let mut rel = vec![0usize];
        for g in &rel_gens {
            let gi = encode(g, q);
            if in_rel[gi] {
                continue;
            }
            let base = rel.clone();
            let mut shift = gi;
            while !in_rel[shift] {
                for &h in &base {
                    let v = add_index(h, shift, q, k);
                    if !in_rel[v] {
                        in_rel[v] = true;
                        rel.push(v);
                    }
                }
                shift = add_index(shift, gi, q, k);
            }
        }

        let mut canon = vec![u32::MAX; universe];
        let mut reps = Vec::with_capacity(universe / rel.len());
        for u in 0..universe {
            if canon[u] != u32::MAX {
                continue;
            }
            let label = reps.len() as u32;
            for &r in &rel {
                canon[add_index(u, r, q, k)] = label;
            }
            reps.push(decode(u, q, k));
        }
        Ok(Model { q, k, canon, reps })
    }

    fn size(&self) -> usize {
        self.reps.len()
    }

    fn label(&self, digits: &[u32]) -> u32 {
        self.canon[encode(digits, self.q)]
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        let q = self.q;
        let d: Vec<u32> = self.reps[a as usize]
            .iter()
            .zip(&self.reps[b as usize])
            .map(|(x, y)| (x + y) % q)
            .collect();
        self.label(&d)
    }

    fn scale(&self, c: u32, a: u32) -> u32 {
        let q = self.q as u64;
        let d: Vec<u32> = self.reps[a as usize]
            .iter()
            .map(|&x| ((c as u64 * x as u64) % q) as u32)
            .collect();
        self.label(&d)
    }

    fn neg(&self, a: u32) -> u32 {
        self.scale(self.q - 1, a)
    }

    fn generator(&self, i: usize) -> u32 {
        let mut d = vec![0; self.k];
        d[i] = 1 % self.q;
        self.label(&d)
    }

    /// `Σ_j row[j]·v[j]`.
    fn combine(&self, row: &[u32], v: &[u32]) -> u32 {
        row.iter()
            .zip(v)
            .fold(0, |acc, (&c, &x)| self.add(acc, self.scale(c, x)))
    }

    fn apply(&self, m: &[Vec<u32>], v: &[u32]) -> Vec<u32> {
        m.iter().map(|row| self.combine(row, v)).collect()
    }
}

fn modulus(ring: &Ring<Integers>) -> Result<u32> {
    ring.modulus()
        .and_then(|m| m.to_u32())
        .filter(|&q| q >= 1)
        .ok_or(Error::RingNotFinite)
}

fn residue(c: &BigInt, q: u32) -> u32 {
    let r = c % BigInt::from(q);
    let r = if r < BigInt::from(0) { r + q } else { r };
    r.to_u32().expect("reduced")
}

fn encode(digits: &[u32], q: u32) -> usize {
    digits
        .iter()
        .rev()
        .fold(0usize, |acc, &d| acc * q as usize + d as usize)
}

fn decode(mut u: usize, q: u32, k: usize) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = (u % q as usize) as u32;
            u /= q as usize;
            d
        })
        .collect()
}

fn add_index(a: usize, b: usize, q: u32, k: usize) -> usize {
    let (x, y) = (decode(a, q, k), decode(b, q, k));
    let s: Vec<u32> = x.iter().zip(&y).map(|(a, b)| (a + b) % q).collect();
    encode(&s, q)
}

fn residue_mat(m: &Mat<BigInt>, q: u32) -> Vec<Vec<u32>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|c| residue(c, q)).collect())
        .collect()
}

/// Odometer over `size^len` tuples of labels.
fn tuples(size: usize, len: usize) -> impl Iterator<Item = Vec<u32>> {
    let total = size.checked_pow(len as u32);
    let mut cur = if total == Some(0) {
        None
    } else {
        Some(vec![0u32; len])
    };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let next = cur.as_mut().expect("present");
        let mut i = 0;
        loop {
            if i == len {
                cur = None;
                break;
            }
            next[i] += 1;
            if (next[i] as usize) < size {
                break;
            }
            next[i] = 0;
            i += 1;
        }
        Some(out)
    })
}

fn check_budget(size: usize, len: usize, bound: usize) -> Result<()> {
    match size.checked_pow(len as u32) {
        Some(t) if t <= bound => Ok(()),
        _ => Err(Error::TooLarge),
    }
}

/// `φ(M) ⊆ M^n` as an explicit list of tuples.
#[derive(Clone, Debug)]
pub struct FiniteSolutionSet {
    model: Arc<Model>,
    arity: usize,
    members: Vec<Vec<u32>>,
    index: HashSet<Vec<u32>>,
}

impl FiniteSolutionSet {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `|M|^n`.
    pub fn ambient_size(&self) -> Card {
        let mut c = Card::one();
        for _ in 0..self.arity {
            c = c * Card::from(self.model.size() as u64);
        }
        c
    }

    /// Members as coordinate vectors in `R^{nk}`, variable by variable.
    pub fn representatives(&self) -> Vec<Vec<BigInt>> {
        self.members
            .iter()
            .map(|t| {
                t.iter()
                    .flat_map(|&e| self.model.reps[e as usize].iter().map(|&d| BigInt::from(d)))
                    .collect()
            })
            .collect()
    }

    /// Membership of a tuple given by coordinates in `R^{nk}`.
    pub fn contains_coords(&self, v: &[BigInt]) -> Result<bool> {
        let k = self.model.k;
        if v.len() != k * self.arity {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates, expected {}",
                v.len(),
                k * self.arity
            )));
        }
        let t: Vec<u32> = v
            .chunks(k.max(1))
            .take(self.arity)
            .map(|c| {
                let d: Vec<u32> = c.iter().map(|x| residue(x, self.model.q)).collect();
                if k == 0 {
                    0
                } else {
                    self.model.label(&d)
                }
            })
            .collect();
        let t = if k == 0 { vec![0; self.arity] } else { t };
        Ok(self.index.contains(&t))
    }

    /// Contains zero and is closed under addition; closure under the ring
    /// action follows since every scalar is an integer multiple of 1.
    pub fn is_closed(&self) -> bool {
        let zero = vec![0u32; self.arity];
        if !self.index.contains(&zero) {
            return false;
        }
        // the subgroup generated by the members, grown from a greedy generating set
        let mut span: HashSet<Vec<u32>> = HashSet::from([zero]);
        for s in &self.members {
            if span.contains(s) {
                continue;
            }
            let base: Vec<Vec<u32>> = span.iter().cloned().collect();
            let mut shift = s.clone();
            while !span.contains(&shift) {
                for h in &base {
                    let v = self.add(h, &shift);
                    if !self.index.contains(&v) {
                        return false;
                    }
                    span.insert(v);
                }
                shift = self.add(&shift, s);
            }
        }
        span.len() == self.members.len()
    }

    fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| self.model.add(x, y))
            .collect()
    }
}

/// `|A·M^l| ⊆ M^m`: the subgroup generated by the images of the generators.
fn image_set(
    model: &Model,
    a: &[Vec<u32>],
    m: usize,
    l: usize,
    bound: usize,
) -> Result<HashSet<Vec<u32>>> {
    let zero = vec![0u32; m];
    let mut set: HashSet<Vec<u32>> = HashSet::from([zero]);
    let add = |x: &[u32], y: &[u32]| -> Vec<u32> {
        x.iter().zip(y).map(|(&s, &t)| model.add(s, t)).collect()
    };
    for j in 0..l {
        for g in 0..model.k {
            let gen = model.generator(g);
            let col: Vec<u32> = (0..m).map(|r| model.scale(a[r][j], gen)).collect();
            if set.contains(&col) {
                continue;
            }
            let base: Vec<Vec<u32>> = set.iter().cloned().collect();
            let mut shift = col.clone();
            while !set.contains(&shift) {
                for h in &base {
                    set.insert(add(h, &shift));
                }
                if set.len() > bound {
                    return Err(Error::TooLarge);
                }
                shift = add(&shift, &col);
            }
        }
    }
    Ok(set)
}

pub fn evaluate_brute(
    phi: &PpFormula<Integers>,
    m: &FpModule<Integers>,
) -> Result<FiniteSolutionSet> {
    evaluate_brute_bounded(phi, m, DEFAULT_ENUM_BOUND)
}

/// Scans every `x̄ ∈ M^n` against the set of values `Aȳ`, `ȳ ∈ M^l`.
pub fn evaluate_brute_bounded(
    phi: &PpFormula<Integers>,
    m: &FpModule<Integers>,
    bound: usize,
) -> Result<FiniteSolutionSet> {
    if phi.ring() != m.ring() {
        return Err(Error::RingMismatch);
    }
    let model = Model::new(m.ring(), m.num_gens(), m.raw_relations(), bound)?;
    let q = model.q;
    let (n, l, rows) = (phi.arity(), phi.bound(), phi.equations());
    check_budget(model.size(), n, bound)?;
    let a = residue_mat(phi.a(), q);
    let b = residue_mat(phi.b(), q);
    let values = image_set(&model, &a, rows, l, bound)?;
    let members: Vec<Vec<u32>> = tuples(model.size(), n)
        .filter(|x| values.contains(&model.apply(&b, x)))
        .collect();
    let index = members.iter().cloned().collect();
    Ok(FiniteSolutionSet {
        model: Arc::new(model),
        arity: n,
        members,
        index,
    })
}

/// Whether `φ → ψ` in every module, decided in the free realization of `φ`.
pub fn implies_brute(phi: &PpFormula<Integers>, psi: &PpFormula<Integers>) -> Result<bool> {
    implies_brute_bounded(phi, psi, DEFAULT_ENUM_BOUND)
}

pub fn implies_brute_bounded(
    phi: &PpFormula<Integers>,
    psi: &PpFormula<Integers>,
    bound: usize,
) -> Result<bool> {
    if phi.ring() != psi.ring() {
        return Err(Error::RingMismatch);
    }
    if phi.arity() != psi.arity() {
        return Err(Error::ArityMismatch(phi.arity(), psi.arity()));
    }
    let ring = phi.ring();
    let q = modulus(ring)?;
    let (n, l) = (phi.arity(), phi.bound());

    // generators x̄ then ȳ; one relation Bx̄ - Aȳ per equation of φ
    let relations: Vec<Vec<BigInt>> = (0..phi.equations())
        .map(|r| {
            let mut row: Vec<BigInt> = phi.b().row(r).to_vec();
            row.extend(phi.a().row(r).iter().map(|c| -c));
            row
        })
        .collect();
    let model = Model::new(ring, n + l, &relations, bound)?;
    let tuple: Vec<u32> = (0..n).map(|i| model.generator(i)).collect();

    let c = residue_mat(psi.a(), q);
    let d = residue_mat(psi.b(), q);
    let target = model.apply(&d, &tuple);
    has_solution(&model, &c, &target, psi.bound(), bound)
}

/// Whether `Cz̄ = t` has a solution `z̄ ∈ M^l`, meeting in the middle.
fn has_solution(model: &Model, c: &[Vec<u32>], t: &[u32], l: usize, bound: usize) -> Result<bool> {
    let half = l / 2;
    check_budget(model.size(), l - half, bound)?;
    let left: Vec<Vec<u32>> = c.iter().map(|r| r[..half].to_vec()).collect();
    let right: Vec<Vec<u32>> = c.iter().map(|r| r[half..].to_vec()).collect();
    // t - C_left z
    let wanted: HashSet<Vec<u32>> = tuples(model.size(), half)
        .map(|z| {
            let v = model.apply(&left, &z);
            t.iter()
                .zip(&v)
                .map(|(&a, &b)| model.add(a, model.neg(b)))
                .collect()
        })
        .collect();
    Ok(tuples(model.size(), l - half).any(|z| wanted.contains(&model.apply(&right, &z))))
}

/// `|φ(M)| / |ψ(M)|` by counting.
pub fn index_brute(
    top: &PpFormula<Integers>,
    bottom: &PpFormula<Integers>,
    m: &FpModule<Integers>,
) -> Result<Card> {
    index_brute_bounded(top, bottom, m, DEFAULT_ENUM_BOUND)
}

pub fn index_brute_bounded(
    top: &PpFormula<Integers>,
    bottom: &PpFormula<Integers>,
    m: &FpModule<Integers>,
    bound: usize,
) -> Result<Card> {
    let big = evaluate_brute_bounded(top, m, bound)?;
    let small = evaluate_brute_bounded(bottom, m, bound)?;
    if !small.members.iter().all(|t| big.index.contains(t)) {
        return Err(Error::NotComparable);
    }
    Ok(Card::from((big.len() / small.len()) as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zq(q: u64) -> Ring<Integers> {
        Ring::integers_mod(q).unwrap()
    }

    fn div(r: &Ring<Integers>, a: i64) -> PpFormula<Integers> {
        PpFormula::divisibility(r, &r.mat(&[&[a]]))
    }

    fn cyclic(r: &Ring<Integers>, n: i64) -> FpModule<Integers> {
        FpModule::cyclic(r, &r.vector(&[n]))
    }

    fn members(s: &FiniteSolutionSet) -> Vec<i64> {
        let mut v: Vec<i64> = s
            .representatives()
            .iter()
            .map(|c| c[0].to_i64().unwrap())
            .collect();
        v.sort();
        v
    }

    #[test]
    fn evaluate_examples() {
        let z4 = zq(4);
        let s = evaluate_brute(&div(&z4, 2), &FpModule::free(&z4, 1)).unwrap();
        assert_eq!(members(&s), vec![0, 2]);
        assert!(s.is_closed());
        let z2 = zq(2);
        assert_eq!(
            members(&evaluate_brute(&PpFormula::top(&z2, 1), &FpModule::free(&z2, 1)).unwrap()),
            vec![0, 1]
        );
        let z8 = zq(8);
        let phi = PpFormula::new(&z8, z8.mat(&[&[2], &[4]]), z8.mat(&[&[1], &[0]])).unwrap();
        assert_eq!(
            members(&evaluate_brute(&phi, &FpModule::free(&z8, 1)).unwrap()),
            vec![0, 4]
        );
    }

    #[test]
    fn quotient_modules() {
        let z = zq(12);
        let m = cyclic(&z, 4);
        let s = evaluate_brute(&div(&z, 2), &m).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.contains_coords(&[BigInt::from(6)]).unwrap());
        assert!(!s.contains_coords(&[BigInt::from(1)]).unwrap());
        assert_eq!(s.ambient_size(), Card::from(4u64));
    }

    #[test]
    fn implies_examples() {
        let z6 = zq(6);
        assert!(implies_brute(&div(&z6, 2), &div(&z6, 4)).unwrap());
        assert!(implies_brute(&div(&z6, 4), &div(&z6, 2)).unwrap());
        assert!(implies_brute(&div(&z6, 3), &PpFormula::top(&z6, 1)).unwrap());
        let z4 = zq(4);
        assert!(!implies_brute(&div(&z4, 2), &PpFormula::equals_zero(&z4, 1)).unwrap());
        assert!(!implies_brute(&div(&z4, 2), &div(&z4, 4)).unwrap());
        let z = Ring::integers();
        assert_eq!(
            implies_brute(&div(&z, 2), &div(&z, 4)),
            Err(Error::RingNotFinite)
        );
    }

    #[test]
    fn index_examples() {
        let z4 = zq(4);
        let top = PpFormula::top(&z4, 1);
        assert_eq!(
            index_brute(&top, &div(&z4, 2), &FpModule::free(&z4, 1)).unwrap(),
            Card::from(2u64)
        );
        assert_eq!(
            index_brute(&top, &top, &FpModule::free(&z4, 1)).unwrap(),
            Card::one()
        );
        let z2 = zq(2);
        let m = FpModule::free(&z2, 2);
        let idx =
            index_brute(&PpFormula::top(&z2, 1), &PpFormula::equals_zero(&z2, 1), &m).unwrap();
        assert_eq!(idx, Card::from(4u64));
    }

    #[test]
    fn arity_two() {
        let z6 = zq(6);
        let m = FpModule::free(&z6, 1);
        // x1 = 2*y ; x2 = 3*y
        let phi = PpFormula::new(&z6, z6.mat(&[&[2], &[3]]), z6.mat(&[&[1, 0], &[0, 1]])).unwrap();
        let s = evaluate_brute(&phi, &m).unwrap();
        assert_eq!(s.len(), 6);
        assert!(s.is_closed());
    }

    #[test]
    fn too_large() {
        let z = zq(12);
        let m = FpModule::free(&z, 6);
        assert_eq!(
            evaluate_brute(&PpFormula::top(&z, 1), &m).unwrap_err(),
            Error::TooLarge
        );
    }

    #[test]
    fn shares_no_solver_code() {
        let src = include_str!("oracle.rs");
        let code = &src[..src.find("#[cfg(test)]").unwrap()];
        let banned = [
            "exactalg",
            "Submodule",
            "hermite_form",
            "smith_form",
            "solve_linear",
            "row_hermite",
            "evaluate(",
            "implies(",
            "free_realization",
            "quotient_order",
        ];
        for b in banned {
            assert!(!code.contains(b), "oracle mentions {b}");
        }
    }
}

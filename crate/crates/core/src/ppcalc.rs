//! Positive primitive formulas `∃ȳ (Aȳ ≐ Bx̄)` and their calculus.
//!
//! Tuples in `M^n` are laid out variable by variable: the coordinates of
//! `x_1` over the generators of `M`, then those of `x_2`, and so on. Under
//! that layout a formula acts on `M` through `A ⊗ I_k` and `B ⊗ I_k`.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::{preimage, quotient_order, solve_linear_with, Card, SolveOrder, Submodule};
use crate::fpmod::{FpModule, ModElem};
use crate::mat::Mat;
use crate::ring::{EuclideanDomain, Ring, RingDescriptor};

/// The formula `∃ȳ (Aȳ ≐ Bx̄)`.
#[derive(Clone, PartialEq, Eq)]
pub struct PpFormula<D: EuclideanDomain> {
    ring: Ring<D>,
    a: Mat<D::Elem>,
    b: Mat<D::Elem>,
}

impl<D: EuclideanDomain> PpFormula<D> {
    /// `∃ȳ (Aȳ ≐ Bx̄)`; `a` is `m × l`, `b` is `m × n`.
    pub fn new(ring: &Ring<D>, a: Mat<D::Elem>, b: Mat<D::Elem>) -> Result<Self> {
        if a.rows() != b.rows() {
            return Err(Error::DimensionMismatch(format!(
                "A has {} rows but B has {}",
                a.rows(),
                b.rows()
            )));
        }
        Ok(PpFormula {
            ring: ring.clone(),
            a: ring.reduce_mat(&a),
            b: ring.reduce_mat(&b),
        })
    }

    /// The formula with no equations, true of every `n`-tuple.
    pub fn top(ring: &Ring<D>, arity: usize) -> Self {
        Self::new(ring, ring.zero_mat(0, 0), ring.zero_mat(0, arity)).expect("no rows")
    }

    /// `x̄ ≐ 0`.
    pub fn equals_zero(ring: &Ring<D>, arity: usize) -> Self {
        Self::new(ring, ring.zero_mat(arity, 0), ring.identity_mat(arity)).expect("square")
    }

    /// `r·x ≐ 0`.
    pub fn annihilator(ring: &Ring<D>, r: &D::Elem) -> Self {
        let b = Mat::from_rows(vec![vec![r.clone()]], 1).expect("1x1");
        Self::new(ring, ring.zero_mat(1, 0), b).expect("one row")
    }

    /// `A | x̄`, that is `∃ȳ (Aȳ ≐ x̄)`.
    pub fn divisibility(ring: &Ring<D>, a: &Mat<D::Elem>) -> Self {
        Self::new(ring, a.clone(), ring.identity_mat(a.rows())).expect("matching rows")
    }

    /// `∃y (x̄ ≐ āy ∧ b̄y ≐ 0)`.
    pub fn cyc_formula(ring: &Ring<D>, a: &[D::Elem], b: &[D::Elem]) -> Self {
        let n = a.len();
        let mut arows = Vec::new();
        let mut brows = Vec::new();
        for (i, ai) in a.iter().enumerate() {
            arows.push(vec![ai.clone()]);
            let mut e = vec![ring.zero(); n];
            e[i] = ring.one();
            brows.push(e);
        }
        for bj in b {
            arows.push(vec![bj.clone()]);
            brows.push(vec![ring.zero(); n]);
        }
        let a = Mat::from_rows(arows, 1).expect("width 1");
        let b = Mat::from_rows(brows, n).expect("width n");
        Self::new(ring, a, b).expect("matching rows")
    }

    /// `∃y (x̄ ≐ āy ∧ ry ≐ 0)`.
    pub fn cypr_formula(ring: &Ring<D>, a: &[D::Elem], r: &D::Elem) -> Self {
        Self::cyc_formula(ring, a, std::slice::from_ref(r))
    }

    pub fn ring(&self) -> &Ring<D> {
        &self.ring
    }

    pub fn arity(&self) -> usize {
        self.b.cols()
    }

    pub fn bound(&self) -> usize {
        self.a.cols()
    }

    /// Number of equations.
    pub fn equations(&self) -> usize {
        self.a.rows()
    }

    pub fn a(&self) -> &Mat<D::Elem> {
        &self.a
    }

    pub fn b(&self) -> &Mat<D::Elem> {
        &self.b
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch(self.arity(), other.arity()));
        }
        Ok(())
    }

    /// Conjunction: both systems, with separate bound variables.
    pub fn conj(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let a = self.ring.block_diag(&self.a, &other.a);
        let b = self.b.vstack(&other.b)?;
        Self::new(&self.ring, a, b)
    }

    /// `φ + ψ`, defining `φ(M) + ψ(M)`.
    ///
    /// Bound variables are `(ȳ_φ, ȳ_ψ, x̄₁)`, where `x̄ = x̄₁ + x̄₂` and `x̄₂`
    /// has been eliminated.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let r = &self.ring;
        let n = self.arity();
        let (l1, l2) = (self.bound(), other.bound());
        let (m1, m2) = (self.equations(), other.equations());
        // φ(x̄₁; ȳ₁): A1 ȳ₁ − B1 x̄₁ ≐ 0
        let top = self
            .a
            .hstack(&r.zero_mat(m1, l2))?
            .hstack(&r.neg_mat(&self.b))?;
        // ψ(x̄ − x̄₁; ȳ₂): A2 ȳ₂ + B2 x̄₁ ≐ B2 x̄
        let bottom = r.zero_mat(m2, l1).hstack(&other.a)?.hstack(&other.b)?;
        let a = top.vstack(&bottom)?;
        let b = r.zero_mat(m1, n).vstack(&other.b)?;
        Self::new(r, a, b)
    }

    /// `∃` over every free variable not listed in `keep`; the kept ones
    /// become the free variables, in the given order.
    pub fn project(&self, keep: &[usize]) -> Result<Self> {
        let n = self.arity();
        check_indices(keep, n)?;
        let dropped: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
        let a = self
            .a
            .hstack(&self.ring.neg_mat(&self.b.select_columns(&dropped)))?;
        let b = self.b.select_columns(keep);
        Self::new(&self.ring, a, b)
    }

    /// Substitutes `0` for the listed free variables.
    pub fn kernel(&self, zeroed: &[usize]) -> Result<Self> {
        let n = self.arity();
        check_indices(zeroed, n)?;
        let rest: Vec<usize> = (0..n).filter(|i| !zeroed.contains(i)).collect();
        Self::new(&self.ring, self.a.clone(), self.b.select_columns(&rest))
    }
}

fn check_indices(idx: &[usize], n: usize) -> Result<()> {
    for (pos, &i) in idx.iter().enumerate() {
        if i >= n || idx[..pos].contains(&i) {
            return Err(Error::BadIndex(i));
        }
    }
    Ok(())
}

impl<D: EuclideanDomain> fmt::Debug for PpFormula<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PpFormula({self})")
    }
}

/// Prints the formula in the DSL accepted by the command line tool, with
/// free variables `x1..xn` and bound variables `y1..yl`.
impl<D: EuclideanDomain> fmt::Display for PpFormula<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bracket = matches!(
            self.ring.descriptor(),
            RingDescriptor::PolynomialsOverPrimeField(_)
        );
        let mut eqs = Vec::new();
        for i in 0..self.equations() {
            let lhs = linear(&self.ring, self.a.row(i), "y", bracket);
            let rhs = linear(&self.ring, self.b.row(i), "x", bracket);
            eqs.push(format!("{lhs} = {rhs}"));
        }
        for j in 0..self.arity() {
            if (0..self.equations()).all(|i| self.ring.is_zero(self.b.get(i, j))) {
                eqs.push(format!("x{0} = x{0}", j + 1));
            }
        }
        if eqs.is_empty() {
            eqs.push("0 = 0".into());
        }
        if self.bound() > 0 {
            let ys: Vec<String> = (1..=self.bound()).map(|j| format!("y{j}")).collect();
            write!(f, "exists {} ( {} )", ys.join(" "), eqs.join(" ; "))
        } else if eqs.len() == 1 {
            write!(f, "{}", eqs[0])
        } else {
            write!(f, "( {} )", eqs.join(" ; "))
        }
    }
}

fn linear<D: EuclideanDomain>(
    ring: &Ring<D>,
    coeffs: &[D::Elem],
    var: &str,
    bracket: bool,
) -> String {
    let mut out = String::new();
    for (j, c) in coeffs.iter().enumerate() {
        if ring.is_zero(c) {
            continue;
        }
        let s = ring.format(c);
        let (neg, mag) = match s.strip_prefix('-') {
            Some(m) if !bracket => (true, m.to_string()),
            _ => (false, s),
        };
        let term = match (mag.as_str(), bracket) {
            ("1", _) => format!("{var}{}", j + 1),
            (m, true) => format!("[{m}]*{var}{}", j + 1),
            (m, false) => format!("{m}*{var}{}", j + 1),
        };
        match (out.is_empty(), neg) {
            (true, false) => out.push_str(&term),
            (true, true) => out.push_str(&format!("-{term}")),
            (false, false) => out.push_str(&format!(" + {term}")),
            (false, true) => out.push_str(&format!(" - {term}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A module with a distinguished tuple.
#[derive(Clone, PartialEq)]
pub struct PointedModule<D: EuclideanDomain> {
    module: FpModule<D>,
    tuple: Vec<ModElem<D>>,
}

impl<D: EuclideanDomain> PointedModule<D> {
    pub fn new(module: FpModule<D>, tuple: Vec<ModElem<D>>) -> Result<Self> {
        if tuple.iter().any(|e| e.module() != &module) {
            return Err(Error::ModuleMismatch);
        }
        Ok(PointedModule { module, tuple })
    }

    pub fn module(&self) -> &FpModule<D> {
        &self.module
    }

    pub fn tuple(&self) -> &[ModElem<D>] {
        &self.tuple
    }

    pub fn arity(&self) -> usize {
        self.tuple.len()
    }
}

impl<D: EuclideanDomain> fmt::Debug for PointedModule<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PointedModule")
            .field("module", &self.module)
            .field("tuple", &self.tuple)
            .finish()
    }
}

fn check_ring<D: EuclideanDomain>(phi: &PpFormula<D>, m: &FpModule<D>) -> Result<()> {
    if phi.ring() != m.ring() {
        return Err(Error::RingMismatch);
    }
    Ok(())
}

/// Concatenated coordinates of a tuple, variable by variable.
pub(crate) fn flatten<D: EuclideanDomain>(tuple: &[ModElem<D>]) -> Vec<D::Elem> {
    tuple
        .iter()
        .flat_map(|e| e.coords().iter().cloned())
        .collect()
}

/// Splits a flat coordinate vector back into a tuple of elements of `m`.
pub(crate) fn unflatten<D: EuclideanDomain>(
    m: &FpModule<D>,
    v: &[D::Elem],
    count: usize,
) -> Result<Vec<ModElem<D>>> {
    let k = m.num_gens();
    if v.len() != k * count {
        return Err(Error::DimensionMismatch(format!(
            "{} coordinates for {count} elements",
            v.len()
        )));
    }
    (0..count)
        .map(|i| m.elem(v[i * k..(i + 1) * k].to_vec()))
        .collect()
}

/// `φ(M)` as a subgroup of `M^n`, stored as its preimage in `R^{nk}`
/// (so it always contains the relations of `M^n`).
pub fn evaluate<D: EuclideanDomain>(phi: &PpFormula<D>, m: &FpModule<D>) -> Result<Submodule<D>> {
    check_ring(phi, m)?;
    let ring = phi.ring();
    let k = m.num_gens();
    let ak = ring.kron_identity(phi.a(), k);
    let bk = ring.kron_identity(phi.b(), k);
    let rel = m.relations().power(phi.equations());
    let target = Submodule::from_columns(ring, &ak).sum(&rel)?;
    preimage(ring, &bk, &target)
}

/// A witness `ȳ ∈ M^l` for `φ(ā)`, if one exists.
pub fn witness<D: EuclideanDomain>(
    phi: &PpFormula<D>,
    p: &PointedModule<D>,
) -> Result<Option<Vec<ModElem<D>>>> {
    witness_with(phi, p, SolveOrder::Forward)
}

pub fn witness_with<D: EuclideanDomain>(
    phi: &PpFormula<D>,
    p: &PointedModule<D>,
    order: SolveOrder,
) -> Result<Option<Vec<ModElem<D>>>> {
    check_ring(phi, p.module())?;
    if p.arity() != phi.arity() {
        return Err(Error::ArityMismatch(phi.arity(), p.arity()));
    }
    let ring = phi.ring();
    let m = p.module();
    let k = m.num_gens();
    let ak = ring.kron_identity(phi.a(), k);
    let bk = ring.kron_identity(phi.b(), k);
    let rhs = ring.mat_vec(&bk, &flatten(p.tuple()))?;
    let rel = m.relations().power(phi.equations());
    match solve_linear_with(ring, &ak, &rhs, Some(&rel), order)? {
        Some(y) => Ok(Some(unflatten(m, &y, phi.bound())?)),
        None => Ok(None),
    }
}

/// Whether the distinguished tuple satisfies `φ`.
pub fn satisfies<D: EuclideanDomain>(phi: &PpFormula<D>, p: &PointedModule<D>) -> Result<bool> {
    Ok(witness(phi, p)?.is_some())
}

/// The module on generators `(x̄, ȳ)` with relations `Bx̄ − Aȳ`, pointed at `x̄`.
pub fn free_realization<D: EuclideanDomain>(phi: &PpFormula<D>) -> PointedModule<D> {
    let ring = phi.ring();
    let n = phi.arity();
    let rels = phi.b().hstack(&ring.neg_mat(phi.a())).expect("equal rows");
    let module = FpModule::new(ring, n + phi.bound(), &rels).expect("width n + l");
    let tuple = (0..n)
        .map(|i| module.generator(i).expect("in range"))
        .collect();
    PointedModule { module, tuple }
}

/// `∃ȳ (x̄ ≐ Gȳ ∧ Hȳ ≐ 0)`: `G` holds the tuple's coordinates and `H` the
/// relations of the module. Implies every pp formula the tuple satisfies.
pub fn canonical_generator<D: EuclideanDomain>(p: &PointedModule<D>) -> PpFormula<D> {
    let m = p.module();
    let ring = m.ring();
    let k = m.num_gens();
    let n = p.arity();
    let g = Mat::from_rows(p.tuple().iter().map(|e| e.coords().to_vec()).collect(), k)
        .expect("width k");
    let h = m.relation_matrix();
    let h = if h.rows() == 0 {
        ring.zero_mat(0, k)
    } else {
        h
    };
    let a = g.vstack(&h).expect("width k");
    let b = ring
        .identity_mat(n)
        .vstack(&ring.zero_mat(h.rows(), n))
        .expect("width n");
    PpFormula::new(ring, a, b).expect("matching rows")
}

/// `φ ≤ ψ`: `φ(M) ⊆ ψ(M)` in every module.
pub fn implies<D: EuclideanDomain>(phi: &PpFormula<D>, psi: &PpFormula<D>) -> Result<bool> {
    phi.check_compatible(psi)?;
    satisfies(psi, &free_realization(phi))
}

pub fn equivalent<D: EuclideanDomain>(phi: &PpFormula<D>, psi: &PpFormula<D>) -> Result<bool> {
    Ok(implies(phi, psi)? && implies(psi, phi)?)
}

/// Whether `φ` generates the pp type of the distinguished tuple.
pub fn freely_realizes<D: EuclideanDomain>(
    p: &PointedModule<D>,
    phi: &PpFormula<D>,
) -> Result<bool> {
    Ok(satisfies(phi, p)? && equivalent(&canonical_generator(p), phi)?)
}

/// `|φ(M)/ψ(M)|` for `ψ ≤ φ`.
pub fn pp_index<D: EuclideanDomain>(
    phi: &PpFormula<D>,
    psi: &PpFormula<D>,
    m: &FpModule<D>,
) -> Result<Card> {
    if !implies(psi, phi)? {
        return Err(Error::NotComparable);
    }
    quotient_order(&evaluate(phi, m)?, &evaluate(psi, m)?)
}

/// Truth of an arity-0 formula. Such sentences always hold (take `ȳ = 0`).
pub fn holds<D: EuclideanDomain>(phi: &PpFormula<D>) -> Result<bool> {
    if phi.arity() != 0 {
        return Err(Error::ArityMismatch(0, phi.arity()));
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Integers;

    fn z() -> Ring<Integers> {
        Ring::integers()
    }

    fn div(r: &Ring<Integers>, a: i64) -> PpFormula<Integers> {
        PpFormula::divisibility(r, &r.mat(&[&[a]]))
    }

    fn elems(m: &FpModule<Integers>, sub: &Submodule<Integers>) -> Vec<i64> {
        let mut out: Vec<i64> = m
            .elements(1000)
            .unwrap()
            .filter(|e| sub.contains(e.coords()).unwrap())
            .map(|e| i64::try_from(&e.coords()[0]).unwrap())
            .collect();
        out.sort();
        out
    }

    #[test]
    fn divisibility_examples() {
        let z = z();
        let z4 = FpModule::cyclic(&z, &z.vector(&[4]));
        assert_eq!(elems(&z4, &evaluate(&div(&z, 2), &z4).unwrap()), vec![0, 2]);
        assert!(equivalent(
            &PpFormula::divisibility(&z, &z.identity_mat(2)),
            &PpFormula::top(&z, 2)
        )
        .unwrap());
        assert!(equivalent(&div(&z, 0), &PpFormula::equals_zero(&z, 1)).unwrap());
    }

    #[test]
    fn cypr_and_cyc_shapes() {
        let z = z();
        let f = PpFormula::cypr_formula(&z, &z.vector(&[2]), &z.int(4));
        assert_eq!(f.a(), &z.mat(&[&[2], &[4]]));
        assert_eq!(f.b(), &z.mat(&[&[1], &[0]]));
        assert!(equivalent(
            &PpFormula::cypr_formula(&z, &z.vector(&[1]), &z.int(0)),
            &PpFormula::top(&z, 1)
        )
        .unwrap());
        let g = PpFormula::cyc_formula(&z, &z.vector(&[3]), &z.vector(&[2, 4]));
        assert_eq!(g.a(), &z.mat(&[&[3], &[2], &[4]]));
        assert_eq!(
            f,
            PpFormula::cyc_formula(&z, &z.vector(&[2]), &z.vector(&[4]))
        );
    }

    #[test]
    fn conj_and_sum() {
        let z = z();
        let top = PpFormula::top(&z, 1);
        let zero = PpFormula::equals_zero(&z, 1);
        assert!(equivalent(&zero.sum(&top).unwrap(), &top).unwrap());
        assert!(equivalent(&div(&z, 2).conj(&div(&z, 3)).unwrap(), &div(&z, 6)).unwrap());
        assert!(equivalent(&div(&z, 2).sum(&div(&z, 3)).unwrap(), &top).unwrap());
        assert!(equivalent(&div(&z, 4).sum(&div(&z, 6)).unwrap(), &div(&z, 2)).unwrap());
        assert_eq!(
            div(&z, 2).conj(&PpFormula::top(&z, 2)),
            Err(Error::ArityMismatch(1, 2))
        );
    }

    #[test]
    fn project_and_kernel() {
        let z = z();
        // ∃y (x ≐ 2y ∧ z ≐ y), free (x, z)
        let phi = PpFormula::new(&z, z.mat(&[&[2], &[1]]), z.mat(&[&[1, 0], &[0, 1]])).unwrap();
        assert!(equivalent(&phi.project(&[0]).unwrap(), &div(&z, 2)).unwrap());
        // x ≐ y as φ(x, y)
        let xy = PpFormula::new(&z, z.zero_mat(1, 0), z.mat(&[&[1, -1]])).unwrap();
        let k = xy.kernel(&[0]).unwrap();
        assert_eq!(k.arity(), 1);
        assert!(equivalent(&k, &PpFormula::equals_zero(&z, 1)).unwrap());
        // ∃z (x ≐ 2z ∧ y ≐ 3z ∧ 4z ≐ 0) with x zeroed
        let phi = PpFormula::cyc_formula(&z, &z.vector(&[2, 3]), &z.vector(&[4]));
        let k = phi.kernel(&[0]).unwrap();
        assert_eq!(k.a(), &z.mat(&[&[2], &[3], &[4]]));
        assert_eq!(k.b(), &z.mat(&[&[0], &[1], &[0]]));
        assert_eq!(phi.project(&[2]), Err(Error::BadIndex(2)));
    }

    #[test]
    fn evaluate_examples() {
        let z = z();
        let z8 = FpModule::cyclic(&z, &z.vector(&[8]));
        let phi = PpFormula::cypr_formula(&z, &z.vector(&[2]), &z.int(4));
        assert_eq!(elems(&z8, &evaluate(&phi, &z8).unwrap()), vec![0, 4]);
        let z4 = FpModule::cyclic(&z, &z.vector(&[4]));
        assert_eq!(
            elems(&z4, &evaluate(&PpFormula::top(&z, 1), &z4).unwrap()),
            vec![0, 1, 2, 3]
        );
        let z6 = Ring::integers_mod(6).unwrap();
        assert_eq!(
            evaluate(&div(&z, 2), &FpModule::free(&z6, 1)),
            Err(Error::RingMismatch)
        );
    }

    #[test]
    fn free_realization_examples() {
        let z = z();
        let p = free_realization(&div(&z, 5));
        assert_eq!(p.module().structure().free_rank, 1);
        assert!(freely_realizes(&p, &div(&z, 5)).unwrap());
        let r = z.int(6);
        let cyc = FpModule::cyclic(&z, std::slice::from_ref(&r));
        let pm = PointedModule::new(cyc.clone(), vec![cyc.generator(0).unwrap()]).unwrap();
        assert!(freely_realizes(&pm, &PpFormula::cypr_formula(&z, &z.vector(&[1]), &r)).unwrap());
        let phi = PpFormula::cypr_formula(&z, &z.vector(&[2]), &z.int(4));
        let p = free_realization(&phi);
        assert_eq!(p.module().order(), Card::from(4));
        assert_eq!(p.tuple()[0].order(), Card::from(2));
    }

    #[test]
    fn canonical_generator_examples() {
        let z = z();
        let zz = FpModule::free(&z, 1);
        let p = PointedModule::new(zz.clone(), vec![zz.generator(0).unwrap()]).unwrap();
        assert!(equivalent(&canonical_generator(&p), &PpFormula::top(&z, 1)).unwrap());
        let z2 = FpModule::cyclic(&z, &z.vector(&[2]));
        let p = PointedModule::new(z2.clone(), vec![z2.generator(0).unwrap()]).unwrap();
        assert!(equivalent(
            &canonical_generator(&p),
            &PpFormula::annihilator(&z, &z.int(2))
        )
        .unwrap());
        let z4 = FpModule::cyclic(&z, &z.vector(&[4]));
        let p = PointedModule::new(z4.clone(), vec![z4.elem(z.vector(&[2])).unwrap()]).unwrap();
        let expected = div(&z, 2)
            .conj(&PpFormula::annihilator(&z, &z.int(2)))
            .unwrap();
        assert!(equivalent(&canonical_generator(&p), &expected).unwrap());
    }

    #[test]
    fn implication_examples() {
        let z = z();
        assert!(implies(&div(&z, 4), &div(&z, 2)).unwrap());
        assert!(!implies(&div(&z, 2), &div(&z, 4)).unwrap());
        assert!(implies(&div(&z, 7), &div(&z, 7)).unwrap());
        let z6 = Ring::integers_mod(6).unwrap();
        assert!(equivalent(&div(&z6, 2), &div(&z6, 4)).unwrap());
    }

    #[test]
    fn index_examples() {
        let z = z();
        let z4 = FpModule::cyclic(&z, &z.vector(&[4]));
        let top = PpFormula::top(&z, 1);
        assert_eq!(pp_index(&top, &div(&z, 2), &z4).unwrap(), Card::from(2));
        assert_eq!(
            pp_index(&div(&z, 2), &div(&z, 2), &z4).unwrap(),
            Card::from(1)
        );
        let zz = FpModule::free(&z, 1);
        assert_eq!(
            pp_index(&top, &PpFormula::equals_zero(&z, 1), &zz).unwrap(),
            Card::Infinite
        );
        assert_eq!(pp_index(&div(&z, 2), &top, &zz), Err(Error::NotComparable));
    }

    #[test]
    fn sentences_hold() {
        let z = z();
        let s = PpFormula::new(&z, z.mat(&[&[2]]), z.zero_mat(1, 0)).unwrap();
        assert!(holds(&s).unwrap());
        assert!(equivalent(&s, &PpFormula::top(&z, 0)).unwrap());
        let p = free_realization(&s);
        assert!(freely_realizes(&p, &s).unwrap());
    }

    #[test]
    fn printer() {
        let z = z();
        assert_eq!(div(&z, 2).to_string(), "exists y1 ( 2*y1 = x1 )");
        assert_eq!(PpFormula::top(&z, 1).to_string(), "x1 = x1");
        let f = PpFormula::new(&z, z.mat(&[&[1, -3]]), z.mat(&[&[0, -1]])).unwrap();
        assert_eq!(f.to_string(), "exists y1 y2 ( y1 - 3*y2 = -x2 ; x1 = x1 )");
    }
}

//! Generalized Bass modules: direct limits of free realizations along a
//! descending chain, explored stage by stage.

use std::fmt;

use crate::chains::{lattice_strictness, DccReport, PpChain, Verdict};
use crate::error::{Error, Result};
use crate::exactalg::SolveOrder;
use crate::fpmod::{DirectSum, FpModule, ModElem, ModMorphism};
use crate::ppcalc::{free_realization, satisfies, witness_with, PointedModule, PpFormula};
use crate::ring::{EuclideanDomain, Ring};

/// Free realizations `(A_i, ā_i)` of `φ_0, …, φ_k` with connecting maps
/// `g_i : A_i → A_{i+1}`, `g_i(ā_i) = ā_{i+1}`.
#[derive(Clone, Debug)]
pub struct BassSystem<D: EuclideanDomain> {
    chain: PpChain<D>,
    stages: Vec<PointedModule<D>>,
    connectors: Vec<ModMorphism<D>>,
}

/// Builds the system through stage `k`.
pub fn build_system<D: EuclideanDomain>(chain: &PpChain<D>, k: usize) -> Result<BassSystem<D>> {
    build_system_with(chain, k, SolveOrder::Forward)
}

/// As [`build_system`], with the solver walking its unknowns in `order`.
pub fn build_system_with<D: EuclideanDomain>(
    chain: &PpChain<D>,
    k: usize,
    order: SolveOrder,
) -> Result<BassSystem<D>> {
    let chain = chain.materialize(k)?;
    let stages: Vec<PointedModule<D>> = chain.materialized().iter().map(free_realization).collect();
    let mut connectors = Vec::with_capacity(k);
    for i in 0..k {
        let phi = &chain.materialized()[i];
        let next = &stages[i + 1];
        // ā_{i+1} satisfies φ_i; a witness gives the images of the ȳ generators
        let ys = witness_with(phi, next, order)?.ok_or_else(|| {
            Error::Precondition(format!("stage {} does not satisfy stage {i}", i + 1))
        })?;
        let mut images = next.tuple().to_vec();
        images.extend(ys);
        connectors.push(ModMorphism::from_images(
            stages[i].module(),
            next.module(),
            &images,
        )?);
    }
    Ok(BassSystem {
        chain,
        stages,
        connectors,
    })
}

/// Bounded answer of a semi-decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Upto {
    Yes(usize),
    Unknown,
}

/// Bounded answer for equality in the colimit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColimEq {
    Yes(usize),
    No,
    Unknown,
}

/// A tuple of the colimit, represented at a stage.
#[derive(Clone, PartialEq)]
pub struct ColimitElem<D: EuclideanDomain> {
    pub stage: usize,
    pub values: Vec<ModElem<D>>,
}

impl<D: EuclideanDomain> fmt::Debug for ColimitElem<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {:?})", self.stage, self.values)
    }
}

impl<D: EuclideanDomain> BassSystem<D> {
    pub fn ring(&self) -> &Ring<D> {
        self.chain.ring()
    }

    pub fn chain(&self) -> &PpChain<D> {
        &self.chain
    }

    pub fn last_stage(&self) -> usize {
        self.stages.len() - 1
    }

    pub fn stages(&self) -> &[PointedModule<D>] {
        &self.stages
    }

    pub fn connectors(&self) -> &[ModMorphism<D>] {
        &self.connectors
    }

    fn check_stage(&self, stage: usize) -> Result<()> {
        if stage > self.last_stage() {
            return Err(Error::StageOutOfRange {
                stage,
                last: self.last_stage(),
            });
        }
        Ok(())
    }

    /// A tuple of `A_stage` viewed in the colimit.
    pub fn elem(&self, stage: usize, values: Vec<ModElem<D>>) -> Result<ColimitElem<D>> {
        self.check_stage(stage)?;
        if values
            .iter()
            .any(|v| v.module() != self.stages[stage].module())
        {
            return Err(Error::ModuleMismatch);
        }
        Ok(ColimitElem { stage, values })
    }

    /// `f_i(ā_i)`.
    pub fn distinguished(&self, stage: usize) -> Result<ColimitElem<D>> {
        self.check_stage(stage)?;
        Ok(ColimitElem {
            stage,
            values: self.stages[stage].tuple().to_vec(),
        })
    }

    /// The same colimit tuple represented at stage `to`.
    pub fn push(&self, e: &ColimitElem<D>, to: usize) -> Result<ColimitElem<D>> {
        self.check_stage(to)?;
        if to < e.stage {
            return Err(Error::StageOutOfRange {
                stage: to,
                last: self.last_stage(),
            });
        }
        let mut values = e.values.clone();
        for g in &self.connectors[e.stage..to] {
            values = values.iter().map(|v| g.apply(v)).collect::<Result<_>>()?;
        }
        Ok(ColimitElem { stage: to, values })
    }

    /// The least stage `s ≤ bound` at which `e` satisfies `φ`. Satisfaction
    /// persists along connectors, so `Unknown` never hides a "yes" below the
    /// bound.
    pub fn satisfies_upto(
        &self,
        e: &ColimitElem<D>,
        phi: &PpFormula<D>,
        bound: usize,
    ) -> Result<Upto> {
        self.check_stage(bound)?;
        if phi.arity() != e.values.len() {
            return Err(Error::ArityMismatch(phi.arity(), e.values.len()));
        }
        if bound < e.stage {
            return Ok(Upto::Unknown);
        }
        let mut cur = e.clone();
        for s in e.stage..=bound {
            if s > cur.stage {
                cur = self.push(&cur, s)?;
            }
            let p = PointedModule::new(self.stages[s].module().clone(), cur.values.clone())?;
            if satisfies(phi, &p)? {
                return Ok(Upto::Yes(s));
            }
        }
        Ok(Upto::Unknown)
    }

    /// Bounded equality in the colimit. `No` is relative to the connectors
    /// built so far: all of them from the common stage on are injective and
    /// the values differ there.
    pub fn colim_eq_upto(
        &self,
        e1: &ColimitElem<D>,
        e2: &ColimitElem<D>,
        bound: usize,
    ) -> Result<ColimEq> {
        self.check_stage(bound)?;
        if e1.values.len() != e2.values.len() {
            return Err(Error::ArityMismatch(e1.values.len(), e2.values.len()));
        }
        let common = e1.stage.max(e2.stage);
        if common > bound {
            return Ok(ColimEq::Unknown);
        }
        let (mut a, mut b) = (self.push(e1, common)?, self.push(e2, common)?);
        let first_differs = a.values != b.values;
        for s in common..=bound {
            if s > common {
                a = self.push(&a, s)?;
                b = self.push(&b, s)?;
            }
            if a.values == b.values {
                return Ok(ColimEq::Yes(s));
            }
        }
        if first_differs && self.connectors[common..].iter().all(|g| g.is_injective()) {
            return Ok(ColimEq::No);
        }
        Ok(ColimEq::Unknown)
    }

    /// Checks the hypotheses of the Bass-module argument through stage `k`.
    pub fn ml_failure_report(&self, k: usize) -> Result<MlEvidence<D>> {
        if k < 2 {
            return Err(Error::Precondition(
                "the evidence needs at least two steps".into(),
            ));
        }
        self.check_stage(k)?;
        let strictness = lattice_strictness(&self.chain, k)?;
        if let Some(i) = strictness.first_equal() {
            return Err(Error::ChainStabilized(i));
        }
        let e0 = self.distinguished(0)?;
        let mut identifications = Vec::with_capacity(k + 1);
        let mut satisfaction = Vec::with_capacity(k + 1);
        for i in 0..=k {
            identifications.push(self.colim_eq_upto(&e0, &self.distinguished(i)?, i)?);
            satisfaction.push(self.satisfies_upto(&e0, &self.chain.materialized()[i], k)?);
        }
        Ok(MlEvidence {
            k,
            identifications,
            satisfaction,
            strictness,
        })
    }
}

/// Evidence through stage `k` that the pp type of `f_0(ā_0)` in the colimit
/// is not finitely generated. This is bounded evidence, not a proof that the
/// colimit fails to be Mittag-Leffler: that needs strictness at every stage.
#[derive(Clone, Debug)]
pub struct MlEvidence<D: EuclideanDomain> {
    pub k: usize,
    /// `f_0(ā_0) = f_i(ā_i)`, found at stage `i`.
    pub identifications: Vec<ColimEq>,
    /// Least stage at which `f_0(ā_0)` satisfies `φ_i`.
    pub satisfaction: Vec<Upto>,
    /// Strictness of `φ_0 > … > φ_k`.
    pub strictness: DccReport<D>,
}

impl<D: EuclideanDomain> MlEvidence<D> {
    /// All three items hold: identification and satisfaction at stage `i`
    /// exactly, and strictness through `k` with valid certificates.
    pub fn complete(&self) -> Result<bool> {
        let ids = self
            .identifications
            .iter()
            .enumerate()
            .all(|(i, e)| *e == ColimEq::Yes(i));
        let sat = self
            .satisfaction
            .iter()
            .enumerate()
            .all(|(i, e)| *e == Upto::Yes(i));
        let strict = self.strictness.verdict == Verdict::StrictThrough(self.k);
        Ok(ids && sat && strict && self.strictness.verify()?)
    }

    pub fn statement(&self) -> String {
        format!(
            "evidence through stage {} that the pp type of f_0(a_0) is not finitely generated; \
             not a proof that the module is not Mittag-Leffler",
            self.k
        )
    }
}

/// A finite truncation `⊕ A^(m_A)` of a pure-free module.
#[derive(Clone, Debug)]
pub struct PureFreeTruncation<D: EuclideanDomain> {
    pub summands: Vec<(FpModule<D>, usize)>,
    pub sum: DirectSum<D>,
}

impl<D: EuclideanDomain> PureFreeTruncation<D> {
    pub fn module(&self) -> &FpModule<D> {
        &self.sum.module
    }
}

pub fn pure_free_truncation<D: EuclideanDomain>(
    ring: &Ring<D>,
    summands: &[(FpModule<D>, usize)],
) -> Result<PureFreeTruncation<D>> {
    let mut list = Vec::new();
    for (m, mult) in summands {
        if *mult == 0 {
            return Err(Error::Precondition(
                "multiplicities must be at least 1".into(),
            ));
        }
        list.extend(std::iter::repeat_n(m.clone(), *mult));
    }
    let sum = DirectSum::of(ring, &list)?;
    Ok(PureFreeTruncation {
        summands: summands.to_vec(),
        sum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Card;
    use crate::mat::Mat;
    use crate::ring::Integers;
    use num_bigint::BigInt;

    fn pow2_chain(r: &Ring<Integers>) -> PpChain<Integers> {
        let r2 = r.clone();
        PpChain::from_fn(r, 1, move |i| {
            let c = r2.from_int(&(BigInt::from(1) << i));
            Ok(PpFormula::divisibility(
                &r2,
                &Mat::from_rows(vec![vec![c]], 1)?,
            ))
        })
    }

    fn prufer_chain(r: &Ring<Integers>) -> PpChain<Integers> {
        let r2 = r.clone();
        PpChain::from_fn(r, 1, move |i| {
            let a = r2.from_int(&(BigInt::from(1) << i));
            let b = r2.from_int(&(BigInt::from(1) << (i + 1)));
            Ok(PpFormula::cypr_formula(&r2, &[a], &b))
        })
    }

    #[test]
    fn classical_system() {
        let z = Ring::integers();
        let sys = build_system(&pow2_chain(&z), 8).unwrap();
        for (i, g) in sys.connectors().iter().enumerate() {
            let img: Vec<_> = sys.stages()[i]
                .tuple()
                .iter()
                .map(|a| g.apply(a).unwrap())
                .collect();
            assert_eq!(img, sys.stages()[i + 1].tuple());
            assert!(g.is_injective());
        }
        assert_eq!(sys.stages()[8].module().structure().free_rank, 1);
        let one = sys
            .elem(0, vec![sys.stages()[0].module().generator(1).unwrap()])
            .unwrap();
        let div32 = PpFormula::divisibility(&z, &z.mat(&[&[32]]));
        assert_eq!(sys.satisfies_upto(&one, &div32, 8).unwrap(), Upto::Yes(5));
        assert_eq!(
            sys.satisfies_upto(&one, &PpFormula::top(&z, 1), 0).unwrap(),
            Upto::Yes(0)
        );
        let two = sys
            .elem(0, vec![one.values[0].scalar_mul(&z.int(2))])
            .unwrap();
        assert_eq!(sys.colim_eq_upto(&one, &two, 8).unwrap(), ColimEq::No);
        let pushed = sys.push(&two, 1).unwrap();
        assert_eq!(
            sys.colim_eq_upto(&two, &pushed, 8).unwrap(),
            ColimEq::Yes(1)
        );
        let ev = sys.ml_failure_report(8).unwrap();
        assert!(ev.complete().unwrap());
        assert!(matches!(
            sys.push(&one, 9),
            Err(Error::StageOutOfRange { .. })
        ));
    }

    #[test]
    fn prufer_system() {
        let z = Ring::integers();
        let sys = build_system(&prufer_chain(&z), 6).unwrap();
        for (i, st) in sys.stages().iter().enumerate() {
            assert_eq!(st.module().order(), Card::from(1u64 << (i + 1)));
            assert_eq!(st.tuple()[0].order(), Card::from(2));
        }
        let e = sys.distinguished(0).unwrap();
        let phi3 = sys.chain().stage(3).unwrap();
        assert_eq!(sys.satisfies_upto(&e, &phi3, 6).unwrap(), Upto::Yes(3));
        assert!(sys.ml_failure_report(6).unwrap().complete().unwrap());
        // connectors 1 ↦ 2 are injective on ℤ/2^{i+1} → ℤ/2^{i+2}
        assert!(sys.connectors().iter().all(|g| g.is_injective()));
    }

    #[test]
    fn non_injective_connector_gives_unknown() {
        let z = Ring::integers();
        let top = PpFormula::top(&z, 1);
        let zero = PpFormula::equals_zero(&z, 1);
        let chain = PpChain::from_list(&z, vec![top, zero.clone(), zero]).unwrap();
        let sys = build_system(&chain, 2).unwrap();
        assert!(!sys.connectors()[0].is_injective());
        let m = sys.stages()[0].module();
        let a = sys.elem(0, vec![m.generator(0).unwrap()]).unwrap();
        let b = sys.elem(0, vec![m.zero_elem()]).unwrap();
        assert_eq!(sys.colim_eq_upto(&a, &b, 0).unwrap(), ColimEq::Unknown);
        assert_eq!(sys.colim_eq_upto(&a, &b, 1).unwrap(), ColimEq::Yes(1));
    }

    #[test]
    fn stabilized_chain_has_no_evidence() {
        let z8 = Ring::integers_mod(8).unwrap();
        let sys = build_system(&pow2_chain(&z8), 5).unwrap();
        assert_eq!(
            sys.ml_failure_report(5).unwrap_err(),
            Error::ChainStabilized(3)
        );
    }

    #[test]
    fn solver_orders_agree_on_evidence() {
        let z = Ring::integers();
        for order in [SolveOrder::Forward, SolveOrder::Reverse] {
            let sys = build_system_with(&prufer_chain(&z), 5, order).unwrap();
            assert!(sys.ml_failure_report(5).unwrap().complete().unwrap());
        }
    }

    #[test]
    fn truncations() {
        let z = Ring::integers();
        let t = pure_free_truncation(&z, &[(FpModule::free(&z, 1), 3)]).unwrap();
        assert_eq!(t.module().structure().free_rank, 3);
        let z2 = FpModule::cyclic(&z, &z.vector(&[2]));
        let z4 = FpModule::cyclic(&z, &z.vector(&[4]));
        let t = pure_free_truncation(&z, &[(z2, 1), (z4, 2)]).unwrap();
        assert_eq!(t.module().order(), Card::from(32));
        assert_eq!(
            pure_free_truncation(&z, &[]).unwrap().module().order(),
            Card::from(1)
        );
    }
}

//! Descending chains of pp formulas and their stabilization behaviour.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::{solve_linear, Submodule};
use crate::fpmod::{DirectSum, FpModule, ModMorphism};
use crate::ppcalc::{
    evaluate, free_realization, implies, satisfies, unflatten, witness, PointedModule, PpFormula,
};
use crate::ring::{EuclideanDomain, Ring};

type StageFn<D> = Arc<dyn Fn(usize) -> Result<PpFormula<D>> + Send + Sync>;

#[derive(Clone)]
enum Source<D: EuclideanDomain> {
    List(Vec<PpFormula<D>>),
    Generator(StageFn<D>),
}

/// A chain `φ_0 ≥ φ_1 ≥ …` given by a list or a stage function, with the
/// prefix that has been verified descending.
#[derive(Clone)]
pub struct PpChain<D: EuclideanDomain> {
    ring: Ring<D>,
    arity: usize,
    source: Source<D>,
    materialized: Vec<PpFormula<D>>,
}

impl<D: EuclideanDomain> PpChain<D> {
    pub fn from_list(ring: &Ring<D>, formulas: Vec<PpFormula<D>>) -> Result<Self> {
        let arity = formulas.first().map_or(0, |f| f.arity());
        for f in &formulas {
            if f.ring() != ring {
                return Err(Error::RingMismatch);
            }
            if f.arity() != arity {
                return Err(Error::ArityMismatch(arity, f.arity()));
            }
        }
        Ok(PpChain {
            ring: ring.clone(),
            arity,
            source: Source::List(formulas),
            materialized: Vec::new(),
        })
    }

    /// A chain whose stage `i` is `f(i)`.
    pub fn from_fn<F>(ring: &Ring<D>, arity: usize, f: F) -> Self
    where
        F: Fn(usize) -> Result<PpFormula<D>> + Send + Sync + 'static,
    {
        PpChain {
            ring: ring.clone(),
            arity,
            source: Source::Generator(Arc::new(f)),
            materialized: Vec::new(),
        }
    }

    pub fn ring(&self) -> &Ring<D> {
        &self.ring
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Stage `i`, from the verified prefix when available.
    pub fn stage(&self, i: usize) -> Result<PpFormula<D>> {
        if let Some(f) = self.materialized.get(i) {
            return Ok(f.clone());
        }
        let f = match &self.source {
            Source::List(v) => v.get(i).cloned().ok_or(Error::StageOutOfRange {
                stage: i,
                last: v.len().saturating_sub(1),
            })?,
            Source::Generator(g) => g(i).map_err(|e| Error::Generator(i, e.to_string()))?,
        };
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        if f.arity() != self.arity {
            return Err(Error::Generator(
                i,
                format!("arity {} instead of {}", f.arity(), self.arity),
            ));
        }
        Ok(f)
    }

    /// Number of stages a list-backed chain has; `None` for generators.
    pub fn len_hint(&self) -> Option<usize> {
        match &self.source {
            Source::List(v) => Some(v.len()),
            Source::Generator(_) => None,
        }
    }

    /// The verified stages `φ_0, …, φ_k` (empty before materialization).
    pub fn materialized(&self) -> &[PpFormula<D>] {
        &self.materialized
    }

    /// Verifies `φ_{i+1} ≤ φ_i` for all `i < k` and keeps stages `0..=k`.
    pub fn materialize(&self, k: usize) -> Result<PpChain<D>> {
        let mut out = self.clone();
        let mut stages: Vec<PpFormula<D>> = self.materialized.iter().take(k + 1).cloned().collect();
        if stages.is_empty() {
            stages.push(self.stage(0)?);
        }
        while stages.len() <= k {
            stages.push(self.stage(stages.len())?);
        }
        for i in 0..k {
            let lower = free_realization(&stages[i + 1]);
            if !satisfies(&stages[i], &lower)? {
                return Err(Error::NotDescending {
                    index: i,
                    witness: format!(
                        "the free realization of stage {} is generated by {:?} in a module with relations {:?}; \
                         it fails stage {i}",
                        i + 1,
                        lower.tuple(),
                        lower.module().relation_matrix()
                    ),
                });
            }
        }
        out.materialized = stages;
        Ok(out)
    }

    fn prefix(&self, k: usize) -> Result<Vec<PpFormula<D>>> {
        if self.materialized.len() > k {
            Ok(self.materialized[..=k].to_vec())
        } else {
            Ok(self.materialize(k)?.materialized)
        }
    }
}

impl<D: EuclideanDomain> fmt::Debug for PpChain<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PpChain")
            .field("ring", &self.ring.descriptor())
            .field("arity", &self.arity)
            .field("materialized", &self.materialized)
            .finish()
    }
}

/// Outcome of a bounded stabilization test over steps `0..k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Steps from this index through the bound are all equalities.
    StabilizesAt(usize),
    /// Every step through the bound is strict.
    StrictThrough(usize),
    /// Some step was an equality but the last one is strict, so no final
    /// plateau was observed.
    Unsettled { last_equal: usize, bound: usize },
}

/// Evidence for one step `φ_i ⟶ φ_{i+1}`.
#[derive(Clone, Debug)]
pub enum StepEvidence<D: EuclideanDomain> {
    /// A tuple satisfying `φ_i` but not `φ_{i+1}`.
    Strict(PointedModule<D>),
    /// `φ_i` and `φ_{i+1}` agree (in the lattice, or on the module probed).
    Equal,
}

impl<D: EuclideanDomain> StepEvidence<D> {
    pub fn is_strict(&self) -> bool {
        matches!(self, StepEvidence::Strict(_))
    }
}

/// A stabilization report for steps `0..k` of a chain, either in the pp
/// lattice (`module` is `None`) or in a given module.
#[derive(Clone, Debug)]
pub struct DccReport<D: EuclideanDomain> {
    pub verdict: Verdict,
    pub steps: Vec<StepEvidence<D>>,
    pub stages: Vec<PpFormula<D>>,
    pub module: Option<FpModule<D>>,
}

impl<D: EuclideanDomain> DccReport<D> {
    fn new(
        stages: Vec<PpFormula<D>>,
        steps: Vec<StepEvidence<D>>,
        module: Option<FpModule<D>>,
    ) -> Self {
        DccReport {
            verdict: verdict_of(&steps),
            steps,
            stages,
            module,
        }
    }

    /// First step that is an equality.
    pub fn first_equal(&self) -> Option<usize> {
        self.steps.iter().position(|s| !s.is_strict())
    }

    /// Re-checks every certificate by direct evaluation.
    pub fn verify(&self) -> Result<bool> {
        if verdict_of(&self.steps) != self.verdict || self.stages.len() != self.steps.len() + 1 {
            return Ok(false);
        }
        for (i, step) in self.steps.iter().enumerate() {
            let (upper, lower) = (&self.stages[i], &self.stages[i + 1]);
            let ok = match step {
                StepEvidence::Strict(p) => {
                    let in_module = self.module.as_ref().is_none_or(|m| p.module() == m);
                    in_module && satisfies(upper, p)? && !satisfies(lower, p)?
                }
                StepEvidence::Equal => match &self.module {
                    None => implies(upper, lower)?,
                    Some(m) => evaluate(upper, m)? == evaluate(lower, m)?,
                },
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn verdict_of<D: EuclideanDomain>(steps: &[StepEvidence<D>]) -> Verdict {
    let k = steps.len();
    match steps.iter().rposition(|s| s.is_strict()) {
        None => Verdict::StabilizesAt(0),
        Some(last) if last + 1 < k => Verdict::StabilizesAt(last + 1),
        Some(_) => match steps.iter().rposition(|s| !s.is_strict()) {
            None => Verdict::StrictThrough(k),
            Some(e) => Verdict::Unsettled {
                last_equal: e,
                bound: k,
            },
        },
    }
}

/// Strictness of each step `φ_i > φ_{i+1}`, `i < k`, in the pp lattice. The
/// witness for a strict step is the free realization of `φ_i`.
pub fn lattice_strictness<D: EuclideanDomain>(
    chain: &PpChain<D>,
    k: usize,
) -> Result<DccReport<D>> {
    let stages = chain.prefix(k)?;
    let mut steps = Vec::with_capacity(k);
    for i in 0..k {
        let p = free_realization(&stages[i]);
        if satisfies(&stages[i + 1], &p)? {
            steps.push(StepEvidence::Equal);
        } else {
            steps.push(StepEvidence::Strict(p));
        }
    }
    Ok(DccReport::new(stages, steps, None))
}

/// The chain of subgroups `φ_i(M)`, `i ≤ bound`. Strict steps carry a tuple
/// of `M` in `φ_i(M) ∖ φ_{i+1}(M)`.
pub fn stabilizes_in<D: EuclideanDomain>(
    chain: &PpChain<D>,
    m: &FpModule<D>,
    bound: usize,
) -> Result<DccReport<D>> {
    if chain.ring() != m.ring() {
        return Err(Error::RingMismatch);
    }
    let stages = chain.prefix(bound)?;
    let subs = stages
        .iter()
        .map(|f| evaluate(f, m))
        .collect::<Result<Vec<Submodule<D>>>>()?;
    let mut steps = Vec::with_capacity(bound);
    for i in 0..bound {
        let missing = subs[i]
            .basis()
            .iter()
            .find(|v| !subs[i + 1].contains(v).unwrap_or(true));
        match missing {
            None => steps.push(StepEvidence::Equal),
            Some(v) => {
                let tuple = unflatten(m, v, chain.arity())?;
                steps.push(StepEvidence::Strict(PointedModule::new(m.clone(), tuple)?));
            }
        }
    }
    Ok(DccReport::new(stages, steps, Some(m.clone())))
}

/// The divisibility chain `r_i | x` for principal ideals `r_0R ⊇ r_1R ⊇ …`.
pub fn principal_ideal_chain<D: EuclideanDomain>(
    ring: &Ring<D>,
    r: &[D::Elem],
) -> Result<PpChain<D>> {
    for i in 0..r.len().saturating_sub(1) {
        let a = crate::mat::Mat::from_rows(vec![vec![r[i].clone()]], 1)?;
        if solve_linear(ring, &a, std::slice::from_ref(&r[i + 1]), None)?.is_none() {
            return Err(Error::NotDescendingIdeals(i));
        }
    }
    let formulas = r
        .iter()
        .map(|x| {
            PpFormula::divisibility(
                ring,
                &crate::mat::Mat::from_rows(vec![vec![x.clone()]], 1).expect("1x1"),
            )
        })
        .collect();
    let chain = PpChain::from_list(ring, formulas)?;
    match r.len() {
        0 => Ok(chain),
        n => chain.materialize(n - 1),
    }
}

/// Kernel and projection chains for a split of the free variables into
/// `part` (zeroed by the kernel, kept by the projection) and the rest.
pub fn split_kernel_projection<D: EuclideanDomain>(
    chain: &PpChain<D>,
    k: usize,
    part: &[usize],
) -> Result<(PpChain<D>, PpChain<D>)> {
    let stages = chain.prefix(k)?;
    let kernels = stages
        .iter()
        .map(|f| f.kernel(part))
        .collect::<Result<Vec<_>>>()?;
    let projections = stages
        .iter()
        .map(|f| f.project(part))
        .collect::<Result<Vec<_>>>()?;
    let kc = PpChain::from_list(chain.ring(), kernels)?.materialize(k)?;
    let pc = PpChain::from_list(chain.ring(), projections)?.materialize(k)?;
    Ok((kc, pc))
}

/// The three reports behind [`ordered_stabilization_equivalence`].
#[derive(Clone, Debug)]
pub struct SplitStabilization<D: EuclideanDomain> {
    pub holds: bool,
    pub chain: DccReport<D>,
    pub kernel: DccReport<D>,
    pub projection: DccReport<D>,
}

/// Checks in `M` that the chain stabilizes iff its kernel and projection
/// chains both do. The comparison is made step by step (a step is an
/// equality iff it is one in both derived chains) and on the verdicts.
pub fn ordered_stabilization_equivalence<D: EuclideanDomain>(
    chain: &PpChain<D>,
    m: &FpModule<D>,
    bound: usize,
    part: &[usize],
) -> Result<SplitStabilization<D>> {
    let chain = chain.materialize(bound)?;
    let (kc, pc) = split_kernel_projection(&chain, bound, part)?;
    let full = stabilizes_in(&chain, m, bound)?;
    let kernel = stabilizes_in(&kc, m, bound)?;
    let projection = stabilizes_in(&pc, m, bound)?;
    let stepwise = (0..bound).all(|i| {
        full.steps[i].is_strict()
            == (kernel.steps[i].is_strict() || projection.steps[i].is_strict())
    });
    let verdicts = match (full.verdict, kernel.verdict, projection.verdict) {
        (Verdict::StabilizesAt(a), Verdict::StabilizesAt(b), Verdict::StabilizesAt(c)) => {
            a == b.max(c)
        }
        (Verdict::StabilizesAt(_), _, _) => false,
        (_, Verdict::StabilizesAt(_), Verdict::StabilizesAt(_)) => false,
        _ => true,
    };
    Ok(SplitStabilization {
        holds: stepwise && verdicts,
        chain: full,
        kernel,
        projection,
    })
}

/// The construction in the proof that non-stabilization in `M` transfers
/// to a direct sum of free realizations.
#[derive(Clone, Debug)]
pub struct TransferWitness<D: EuclideanDomain> {
    /// `(G_i, ḡ_i)`, the free realization of `φ_i`.
    pub realizations: Vec<PointedModule<D>>,
    /// `(G_i, ḡ_i) → (M, ā_i)`.
    pub maps: Vec<ModMorphism<D>>,
    pub sum: DirectSum<D>,
    /// The chain evaluated in `⊕ G_i`.
    pub report: DccReport<D>,
}

impl<D: EuclideanDomain> TransferWitness<D> {
    /// Re-checks that the maps send `ḡ_i` to the witnesses and that the chain
    /// is strict in the sum.
    pub fn verify(&self, witnesses: &[PointedModule<D>]) -> Result<bool> {
        for ((p, h), w) in self.realizations.iter().zip(&self.maps).zip(witnesses) {
            for (g, a) in p.tuple().iter().zip(w.tuple()) {
                if !h.apply(g)?.equals(a)? {
                    return Ok(false);
                }
            }
        }
        let strict = matches!(self.report.verdict, Verdict::StrictThrough(k) if k == self.realizations.len());
        Ok(strict && self.report.verify()?)
    }
}

/// For a chain strict through `k` in `M`: free realizations `G_i` of `φ_i`,
/// maps onto the witnesses `ā_i`, and the chain re-checked in `⊕_{i<k} G_i`.
pub fn transfer_witness<D: EuclideanDomain>(
    chain: &PpChain<D>,
    m: &FpModule<D>,
    k: usize,
) -> Result<TransferWitness<D>> {
    let report = stabilizes_in(chain, m, k)?;
    if let Some(i) = report.first_equal() {
        return Err(Error::Stabilized(i));
    }
    let mut realizations = Vec::new();
    let mut maps = Vec::new();
    for (i, step) in report.steps.iter().enumerate() {
        let StepEvidence::Strict(w) = step else {
            unreachable!("all steps strict")
        };
        let g = free_realization(&report.stages[i]);
        let ys = witness(&report.stages[i], w)?.ok_or_else(|| {
            Error::Precondition(format!("witness at stage {i} does not satisfy its formula"))
        })?;
        let mut images = w.tuple().to_vec();
        images.extend(ys);
        maps.push(ModMorphism::from_images(g.module(), m, &images)?);
        realizations.push(g);
    }
    let sum = DirectSum::of(
        m.ring(),
        &realizations
            .iter()
            .map(|p| p.module().clone())
            .collect::<Vec<_>>(),
    )?;
    let in_sum = stabilizes_in(chain, &sum.module, k)?;
    Ok(TransferWitness {
        realizations,
        maps,
        sum,
        report: in_sum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
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

    #[test]
    fn materialize_examples() {
        let z = Ring::integers();
        assert!(pow2_chain(&z).materialize(12).is_ok());
        let f = PpFormula::top(&z, 1);
        assert!(PpChain::from_list(&z, vec![f.clone(), f.clone(), f])
            .unwrap()
            .materialize(2)
            .is_ok());
        let z2 = z.clone();
        let up = PpChain::from_fn(&z, 1, move |i| {
            Ok(PpFormula::annihilator(
                &z2,
                &z2.from_int(&(BigInt::from(1) << i)),
            ))
        });
        assert!(matches!(
            up.materialize(3),
            Err(Error::NotDescending { index: 0, .. })
        ));
    }

    #[test]
    fn lattice_examples() {
        let z = Ring::integers();
        let rep = lattice_strictness(&pow2_chain(&z), 12).unwrap();
        assert_eq!(rep.verdict, Verdict::StrictThrough(12));
        assert!(rep.verify().unwrap());
        let z8 = Ring::integers_mod(8).unwrap();
        let rep = lattice_strictness(&pow2_chain(&z8), 5).unwrap();
        assert_eq!(rep.verdict, Verdict::StabilizesAt(3));
        assert!(rep.verify().unwrap());
        let f = PpFormula::top(&z, 1);
        let c = PpChain::from_list(&z, vec![f.clone(), f.clone(), f]).unwrap();
        assert_eq!(
            lattice_strictness(&c, 2).unwrap().verdict,
            Verdict::StabilizesAt(0)
        );
    }

    #[test]
    fn module_examples() {
        let z = Ring::integers();
        let zz = FpModule::free(&z, 1);
        let rep = stabilizes_in(&pow2_chain(&z), &zz, 6).unwrap();
        assert_eq!(rep.verdict, Verdict::StrictThrough(6));
        for (i, s) in rep.steps.iter().enumerate() {
            let StepEvidence::Strict(p) = s else { panic!() };
            assert_eq!(p.tuple()[0].coords(), &[BigInt::from(1) << i][..]);
        }
        assert!(rep.verify().unwrap());
        let z9 = FpModule::cyclic(&z, &z.vector(&[9]));
        assert_eq!(
            stabilizes_in(&pow2_chain(&z), &z9, 6).unwrap().verdict,
            Verdict::StabilizesAt(0)
        );
        let zero = FpModule::zero(&z);
        assert_eq!(
            stabilizes_in(&pow2_chain(&z), &zero, 4).unwrap().verdict,
            Verdict::StabilizesAt(0)
        );
    }

    #[test]
    fn plateau_then_drop() {
        let z = Ring::integers();
        let d = |a: i64| PpFormula::divisibility(&z, &z.mat(&[&[a]]));
        let c = PpChain::from_list(&z, vec![d(1), d(2), d(2), d(4)]).unwrap();
        let rep = lattice_strictness(&c, 3).unwrap();
        assert_eq!(
            rep.verdict,
            Verdict::Unsettled {
                last_equal: 1,
                bound: 3
            }
        );
        let c = PpChain::from_list(&z, vec![d(1), d(2), d(2), d(4), d(4)]).unwrap();
        assert_eq!(
            lattice_strictness(&c, 4).unwrap().verdict,
            Verdict::StabilizesAt(3)
        );
    }

    #[test]
    fn principal_ideals() {
        let z = Ring::integers();
        let c = principal_ideal_chain(&z, &z.vector(&[1, 2, 4, 8])).unwrap();
        assert_eq!(
            lattice_strictness(&c, 3).unwrap().verdict,
            Verdict::StrictThrough(3)
        );
        assert_eq!(
            principal_ideal_chain(&z, &z.vector(&[2, 3])).unwrap_err(),
            Error::NotDescendingIdeals(0)
        );
        let z12 = Ring::integers_mod(12).unwrap();
        let c = principal_ideal_chain(&z12, &z12.vector(&[1, 2, 4, 8, 0])).unwrap();
        // 4 and 8 generate the same ideal mod 12
        assert_eq!(
            lattice_strictness(&c, 4).unwrap().verdict,
            Verdict::Unsettled {
                last_equal: 2,
                bound: 4
            }
        );
    }

    #[test]
    fn kernel_projection_split() {
        let z = Ring::integers();
        let z2 = z.clone();
        // φ_i(x, y) = 2^i | x ∧ 2^i | y
        let chain = PpChain::from_fn(&z, 2, move |i| {
            let c = z2.from_int(&(BigInt::from(1) << i));
            let d = Mat::from_rows(vec![vec![c.clone(), z2.zero()], vec![z2.zero(), c]], 2)?;
            Ok(PpFormula::divisibility(&z2, &d))
        });
        let (kc, pc) = split_kernel_projection(&chain, 4, &[0]).unwrap();
        let div8 = PpFormula::divisibility(&z, &z.mat(&[&[8]]));
        assert!(crate::ppcalc::equivalent(&kc.stage(3).unwrap(), &div8).unwrap());
        assert!(crate::ppcalc::equivalent(&pc.stage(3).unwrap(), &div8).unwrap());
        // x ≐ 2^i y is not descending: stages 0 and 1 are incomparable
        let z3 = z.clone();
        let bad = PpChain::from_fn(&z, 2, move |i| {
            let c = z3.from_int(&(BigInt::from(1) << i));
            PpFormula::new(
                &z3,
                z3.zero_mat(1, 0),
                Mat::from_rows(vec![vec![z3.one(), z3.neg(&c)]], 2)?,
            )
        });
        assert!(matches!(
            bad.materialize(1),
            Err(Error::NotDescending { index: 0, .. })
        ));
        let zz = FpModule::free(&z, 1);
        let s = ordered_stabilization_equivalence(&chain, &zz, 5, &[0]).unwrap();
        assert!(s.holds);
        assert_eq!(s.chain.verdict, Verdict::StrictThrough(5));
    }

    #[test]
    fn transfer() {
        let z = Ring::integers();
        let zz = FpModule::free(&z, 1);
        let chain = pow2_chain(&z);
        let t = transfer_witness(&chain, &zz, 6).unwrap();
        let rep = stabilizes_in(&chain, &zz, 6).unwrap();
        let ws: Vec<_> = rep
            .steps
            .iter()
            .map(|s| match s {
                StepEvidence::Strict(p) => p.clone(),
                StepEvidence::Equal => unreachable!(),
            })
            .collect();
        assert!(t.verify(&ws).unwrap());
        assert_eq!(t.sum.module.structure().free_rank, 6);
        let z8 = FpModule::cyclic(&z, &z.vector(&[8]));
        assert_eq!(
            transfer_witness(&chain, &z8, 5).unwrap_err(),
            Error::Stabilized(3)
        );
        assert!(transfer_witness(&chain, &zz, 1).is_ok());
    }
}

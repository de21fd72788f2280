//! pp-pair invariants and bounded probes for elementary equivalence.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bass::{BassSystem, PureFreeTruncation};
use crate::error::{Error, Result};
use crate::exactalg::Card;
use crate::fpmod::FpModule;
use crate::mat::Mat;
use crate::ppcalc::{implies, pp_index, PpFormula};
use crate::ring::{EuclideanDomain, Ring};

/// A pp pair `φ/ψ` with `ψ ≤ φ`.
#[derive(Clone, PartialEq, Eq)]
pub struct PpPair<D: EuclideanDomain> {
    top: PpFormula<D>,
    bottom: PpFormula<D>,
}

impl<D: EuclideanDomain> PpPair<D> {
    pub fn new(top: PpFormula<D>, bottom: PpFormula<D>) -> Result<Self> {
        if !implies(&bottom, &top)? {
            return Err(Error::NotComparable);
        }
        Ok(PpPair { top, bottom })
    }

    pub fn top(&self) -> &PpFormula<D> {
        &self.top
    }

    pub fn bottom(&self) -> &PpFormula<D> {
        &self.bottom
    }

    pub fn arity(&self) -> usize {
        self.top.arity()
    }
}

impl<D: EuclideanDomain> fmt::Debug for PpPair<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.top, self.bottom)
    }
}

/// `|φ(M)/ψ(M)|`.
pub fn pair_index<D: EuclideanDomain>(pair: &PpPair<D>, m: &FpModule<D>) -> Result<Card> {
    pp_index(&pair.top, &pair.bottom, m)
}

type MemberFn<D> = Arc<dyn Fn(usize) -> FpModule<D> + Send + Sync>;

/// A family of finitely presented modules: an explicit list, or an indexed
/// family that is only ever probed up to a bound.
#[derive(Clone)]
pub enum ModuleFamily<D: EuclideanDomain> {
    List(Vec<FpModule<D>>),
    Indexed(MemberFn<D>),
}

impl<D: EuclideanDomain> ModuleFamily<D> {
    pub fn indexed<F>(f: F) -> Self
    where
        F: Fn(usize) -> FpModule<D> + Send + Sync + 'static,
    {
        ModuleFamily::Indexed(Arc::new(f))
    }

    /// Members with index `≤ bound` (all of them for a list).
    pub fn members(&self, bound: usize) -> Vec<FpModule<D>> {
        match self {
            ModuleFamily::List(v) => v.clone(),
            ModuleFamily::Indexed(f) => (0..=bound).map(|i| f(i)).collect(),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ModuleFamily::List(_))
    }
}

impl<D: EuclideanDomain> fmt::Debug for ModuleFamily<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleFamily::List(v) => f.debug_tuple("List").field(v).finish(),
            ModuleFamily::Indexed(_) => write!(f, "Indexed(..)"),
        }
    }
}

/// A pp index in `⊕_{A ∈ family} A^(ω)`, which is always 1 or infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PureFreeIndex {
    One,
    /// Member `member` has index greater than 1.
    Infinite {
        member: usize,
    },
    /// No member with index `≤ bound` opens the pair; later members were not probed.
    OneUpTo(usize),
}

pub fn pure_free_index<D: EuclideanDomain>(
    pair: &PpPair<D>,
    family: &ModuleFamily<D>,
    probe_bound: usize,
) -> Result<PureFreeIndex> {
    let members = family.members(probe_bound);
    if members.is_empty() {
        return Err(Error::Precondition("family is empty".into()));
    }
    for (i, m) in members.iter().enumerate() {
        if !pair_index(pair, m)?.is_one() {
            return Ok(PureFreeIndex::Infinite { member: i });
        }
    }
    Ok(if family.is_finite() {
        PureFreeIndex::One
    } else {
        PureFreeIndex::OneUpTo(probe_bound)
    })
}

/// What an invariant signature is computed from.
#[derive(Clone, Debug)]
pub enum ModuleSource<D: EuclideanDomain> {
    Module(FpModule<D>),
    Truncation(PureFreeTruncation<D>),
    /// `⊕_{A ∈ family} A^(ω)`, probed up to `probe_bound`.
    PureFree {
        family: ModuleFamily<D>,
        probe_bound: usize,
    },
    /// The colimit of a Bass system, looked at through stages `≤ stage_bound`.
    Colimit {
        system: BassSystem<D>,
        stage_bound: usize,
    },
}

/// The value of one invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignatureValue {
    Exact(CardValue),
    PureFree(PureFreeIndex),
    /// Largest index over the stage modules `A_s`, `s ≤ stage_bound`, and the
    /// first stage attaining it. A value of the truncation, not of the
    /// colimit itself.
    ColimitStage {
        value: CardValue,
        stage: usize,
    },
}

/// `Card` restricted to values that fit a machine word, so that signature
/// values are `Copy`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CardValue {
    Finite(u64),
    Huge,
    Infinite,
}

impl From<&Card> for CardValue {
    fn from(c: &Card) -> Self {
        match c {
            Card::Infinite => CardValue::Infinite,
            c => c.to_u64().map_or(CardValue::Huge, CardValue::Finite),
        }
    }
}

impl fmt::Display for CardValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CardValue::Finite(n) => write!(f, "{n}"),
            CardValue::Huge => write!(f, ">2^64"),
            CardValue::Infinite => write!(f, "inf"),
        }
    }
}

impl SignatureValue {
    /// The exact index, when the source determines it.
    pub fn definite(&self) -> Option<CardValue> {
        match self {
            SignatureValue::Exact(CardValue::Huge) => None,
            SignatureValue::Exact(c) => Some(*c),
            SignatureValue::PureFree(PureFreeIndex::One) => Some(CardValue::Finite(1)),
            SignatureValue::PureFree(PureFreeIndex::Infinite { .. }) => Some(CardValue::Infinite),
            SignatureValue::PureFree(PureFreeIndex::OneUpTo(_)) => None,
            SignatureValue::ColimitStage { .. } => None,
        }
    }
}

/// The pp-pair invariants of a module, computed on demand.
#[derive(Clone, Debug)]
pub struct InvariantSignature<D: EuclideanDomain> {
    pub source: ModuleSource<D>,
}

impl<D: EuclideanDomain> InvariantSignature<D> {
    pub fn new(source: ModuleSource<D>) -> Self {
        InvariantSignature { source }
    }

    pub fn ring(&self) -> Option<Ring<D>> {
        match &self.source {
            ModuleSource::Module(m) => Some(m.ring().clone()),
            ModuleSource::Truncation(t) => Some(t.module().ring().clone()),
            ModuleSource::PureFree { family, .. } => {
                family.members(0).first().map(|m| m.ring().clone())
            }
            ModuleSource::Colimit { system, .. } => Some(system.ring().clone()),
        }
    }

    pub fn value(&self, pair: &PpPair<D>) -> Result<SignatureValue> {
        match &self.source {
            ModuleSource::Module(m) => Ok(SignatureValue::Exact((&pair_index(pair, m)?).into())),
            ModuleSource::Truncation(t) => Ok(SignatureValue::Exact(
                (&pair_index(pair, t.module())?).into(),
            )),
            ModuleSource::PureFree {
                family,
                probe_bound,
            } => Ok(SignatureValue::PureFree(pure_free_index(
                pair,
                family,
                *probe_bound,
            )?)),
            ModuleSource::Colimit {
                system,
                stage_bound,
            } => {
                let (value, stage) = colimit_stage_index(pair, system, *stage_bound)?;
                Ok(SignatureValue::ColimitStage {
                    value: (&value).into(),
                    stage,
                })
            }
        }
    }
}

/// Largest pair index among `A_0, …, A_bound` and the first stage attaining it.
pub fn colimit_stage_index<D: EuclideanDomain>(
    pair: &PpPair<D>,
    system: &BassSystem<D>,
    stage_bound: usize,
) -> Result<(Card, usize)> {
    if stage_bound > system.last_stage() {
        return Err(Error::StageOutOfRange {
            stage: stage_bound,
            last: system.last_stage(),
        });
    }
    let mut best = (Card::one(), 0);
    for s in 0..=stage_bound {
        let v = pair_index(pair, system.stages()[s].module())?;
        if v > best.0 {
            best = (v, s);
        }
    }
    Ok(best)
}

/// Result of a bounded elementary-equivalence probe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeVerdict {
    /// Pair number `pair` has different definite values on the two sides.
    Distinguished {
        pair: usize,
        left: SignatureValue,
        right: SignatureValue,
    },
    /// No probed pair told the two apart. Not a claim of elementary equivalence.
    IndistinguishableOn(usize),
}

pub fn elem_equiv_probe<D: EuclideanDomain>(
    left: &InvariantSignature<D>,
    right: &InvariantSignature<D>,
    pairs: &[PpPair<D>],
) -> Result<ProbeVerdict> {
    if let (Some(a), Some(b)) = (left.ring(), right.ring()) {
        if a != b {
            return Err(Error::RingMismatch);
        }
    }
    for (i, p) in pairs.iter().enumerate() {
        let (l, r) = (left.value(p)?, right.value(p)?);
        if let (Some(a), Some(b)) = (l.definite(), r.definite()) {
            if a != b {
                return Ok(ProbeVerdict::Distinguished {
                    pair: i,
                    left: l,
                    right: r,
                });
            }
        }
    }
    Ok(ProbeVerdict::IndistinguishableOn(pairs.len()))
}

/// One pair in a [`TransferReport`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferEntry {
    pub pair: usize,
    /// First stage module where the pair opens, with its index.
    pub stage: Option<(usize, Card)>,
    /// First family member where the pair opens, with its index.
    pub member: Option<(usize, Card)>,
}

impl TransferEntry {
    pub fn violated(&self) -> bool {
        self.stage.is_some() && self.member.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferReport {
    pub entries: Vec<TransferEntry>,
    pub violations: usize,
}

impl TransferReport {
    pub fn passes(&self) -> bool {
        self.violations == 0
    }
}

/// Every pair that opens in some stage `A_s`, `s ≤ stage_bound`, must open
/// in some member of the family.
pub fn lemma8_transfer_check<D: EuclideanDomain>(
    family: &ModuleFamily<D>,
    system: &BassSystem<D>,
    pairs: &[PpPair<D>],
    stage_bound: usize,
) -> Result<TransferReport> {
    if stage_bound > system.last_stage() {
        return Err(Error::StageOutOfRange {
            stage: stage_bound,
            last: system.last_stage(),
        });
    }
    let members = family.members(stage_bound);
    let mut entries = Vec::with_capacity(pairs.len());
    for (i, p) in pairs.iter().enumerate() {
        let mut stage = None;
        for s in 0..=stage_bound {
            let v = pair_index(p, system.stages()[s].module())?;
            if !v.is_one() {
                stage = Some((s, v));
                break;
            }
        }
        let mut member = None;
        if stage.is_some() {
            for (j, m) in members.iter().enumerate() {
                let v = pair_index(p, m)?;
                if !v.is_one() {
                    member = Some((j, v));
                    break;
                }
            }
        }
        entries.push(TransferEntry {
            pair: i,
            stage,
            member,
        });
    }
    let violations = entries.iter().filter(|e| e.violated()).count();
    Ok(TransferReport {
        entries,
        violations,
    })
}

/// Sampling budget for [`enumerate_pairs`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairBounds {
    pub arity_max: usize,
    pub bound_vars_max: usize,
    /// Entries are drawn from the first `entry_bound` small ring elements.
    pub entry_bound: u64,
}

/// A deterministic stream of comparable pairs: a fixed list of unary pairs
/// built from divisibility and annihilator formulas, then seeded random
/// pairs `φ / conj(φ, extra)` whose formulas use at most
/// `bound_vars_max` bound variables.
pub fn enumerate_pairs<D: EuclideanDomain>(
    ring: &Ring<D>,
    bounds: PairBounds,
    count: usize,
    seed: u64,
) -> Result<Vec<PpPair<D>>> {
    if bounds.arity_max == 0 || bounds.entry_bound == 0 {
        return Err(Error::Precondition("bounds must be positive".into()));
    }
    let mut out = systematic_pairs(ring)?;
    out.truncate(count);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sampler = Sampler {
        ring,
        bounds,
        rng: &mut rng,
    };
    while out.len() < count {
        out.push(sampler.pair()?);
    }
    Ok(out)
}

fn systematic_pairs<D: EuclideanDomain>(ring: &Ring<D>) -> Result<Vec<PpPair<D>>> {
    let c = |n: i64| ring.from_int(&n.into());
    let div =
        |n: i64| PpFormula::divisibility(ring, &Mat::from_rows(vec![vec![c(n)]], 1).expect("1x1"));
    let ann = |n: i64| PpFormula::annihilator(ring, &c(n));
    let top = PpFormula::top(ring, 1);
    let zero = PpFormula::equals_zero(ring, 1);
    let list = vec![
        (top.clone(), div(2)),
        (div(2), div(4)),
        (div(2), div(2).conj(&ann(2))?),
        (top.clone(), zero.clone()),
        (top.clone(), ann(2)),
        (ann(2), zero.clone()),
        (div(2), zero.clone()),
        (top.clone(), div(3)),
        (ann(4), ann(2)),
        (ann(2), ann(2).conj(&div(2))?),
        (div(2).sum(&ann(2))?, div(2)),
        (top, div(2).sum(&ann(2))?),
    ];
    list.into_iter().map(|(a, b)| PpPair::new(a, b)).collect()
}

struct Sampler<'a, D: EuclideanDomain> {
    ring: &'a Ring<D>,
    bounds: PairBounds,
    rng: &'a mut ChaCha8Rng,
}

impl<D: EuclideanDomain> Sampler<'_, D> {
    fn elem(&mut self) -> D::Elem {
        let i = self.rng.gen_range(0..self.bounds.entry_bound);
        self.ring.reduce(&self.ring.domain().small_element(i))
    }

    fn mat(&mut self, rows: usize, cols: usize) -> Mat<D::Elem> {
        let data = (0..rows * cols).map(|_| self.elem()).collect();
        Mat::new(rows, cols, data).expect("sized")
    }

    /// A formula of arity `n` with at most `lmax` bound variables.
    fn atom(&mut self, n: usize, lmax: usize) -> PpFormula<D> {
        let r = self.ring;
        let shape = self.rng.gen_range(0..6);
        match shape {
            0 if lmax >= 1 => {
                let l = self.rng.gen_range(1..=lmax.min(2));
                PpFormula::divisibility(r, &self.mat(n, l))
            }
            1 => {
                let m = self.rng.gen_range(1..=2);
                PpFormula::new(r, r.zero_mat(m, 0), self.mat(m, n)).expect("rows")
            }
            2 if lmax >= 1 => {
                let a: Vec<_> = (0..n).map(|_| self.elem()).collect();
                let nb = self.rng.gen_range(0..=2);
                let b: Vec<_> = (0..nb).map(|_| self.elem()).collect();
                PpFormula::cyc_formula(r, &a, &b)
            }
            3 => {
                let m = self.rng.gen_range(1..=2);
                let l = self.rng.gen_range(0..=lmax);
                PpFormula::new(r, self.mat(m, l), self.mat(m, n)).expect("rows")
            }
            4 => PpFormula::top(r, n),
            _ => PpFormula::equals_zero(r, n),
        }
    }

    fn formula(&mut self, n: usize, lmax: usize) -> Result<PpFormula<D>> {
        // a sum of two bound-free atoms costs n bound variables
        if n <= lmax && self.rng.gen_bool(0.2) {
            let a = self.atom(n, 0);
            let b = self.atom(n, 0);
            return a.sum(&b);
        }
        Ok(self.atom(n, lmax))
    }

    fn pair(&mut self) -> Result<PpPair<D>> {
        let n = self.rng.gen_range(1..=self.bounds.arity_max);
        let lmax = self.bounds.bound_vars_max;
        let budget = self.rng.gen_range(0..=lmax);
        let phi = self.formula(n, budget)?;
        let extra = self.formula(n, lmax - phi.bound())?;
        let psi = phi.conj(&extra)?;
        PpPair::new(phi, psi)
    }
}

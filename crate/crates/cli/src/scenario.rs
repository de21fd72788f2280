//! Scenario files and the reports they produce.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use ppmod::bass::{build_system, pure_free_truncation, BassSystem};
use ppmod::chains::{lattice_strictness, stabilizes_in, PpChain, StepEvidence};
use ppmod::eqprobe::{
    elem_equiv_probe, enumerate_pairs, pair_index, InvariantSignature, ModuleFamily, ModuleSource,
    PairBounds, ProbeVerdict, SignatureValue,
};
use ppmod::ppcalc::{evaluate, free_realization};
use ppmod::{FpModule, Integers, PpFormula, Ring, RingDescriptor};

use crate::certify::{formula_json, implication, module_json, tuple_json, vector_json};
use crate::dsl::{parse_formula, parse_formula_in, parse_template, parse_with, CliRing};
use crate::error::{CliError, Result};
use crate::perfect::{padded_report, power_chain, probe_zmod};

pub const REPORT_VERSION: &str = "1";

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub ring: String,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub bounds: Bounds,
    #[serde(default)]
    pub declarations: Declarations,
    #[serde(default)]
    pub tasks: Vec<Task>,
    /// Cross-check tasks against the brute-force oracle where it applies.
    #[serde(default)]
    pub with_oracle: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Bounds {
    pub stage_bound: usize,
    pub enum_bound: usize,
    pub pairs: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            stage_bound: 12,
            enum_bound: ppmod::fpmod::DEFAULT_ENUM_BOUND,
            pairs: 50,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Declarations {
    pub formulas: BTreeMap<String, String>,
    pub modules: BTreeMap<String, ModuleDecl>,
    pub chains: BTreeMap<String, ChainDecl>,
    pub systems: BTreeMap<String, SystemDecl>,
}

/// A ring element in JSON: a number or a string such as `"x^2+1"`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Lit {
    Int(i64),
    Text(String),
}

impl Lit {
    fn text(&self) -> String {
        match self {
            Lit::Int(n) => n.to_string(),
            Lit::Text(s) => s.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ModuleDecl {
    Presented {
        gens: usize,
        relations: Vec<Vec<Lit>>,
    },
    /// `R/(r)`.
    Cyclic(Lit),
    Free(usize),
    Sum(Vec<String>),
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainDecl {
    /// Stage `i` is this text with `i` substituted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub template: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub formulas: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDecl {
    pub chain: String,
    pub stages: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Task {
    Implies {
        phi: String,
        psi: String,
    },
    Evaluate {
        formula: String,
        module: String,
    },
    FreeRealization {
        formula: String,
    },
    ChainAnalyze {
        chain: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        steps: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        module: Option<String>,
    },
    BassBuild {
        system: String,
    },
    EqProbe {
        left: Source,
        right: Source,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pairs: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        arity: Option<usize>,
    },
    PerfectProbe {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        steps: Option<usize>,
    },
}

impl Task {
    pub fn kind(&self) -> &'static str {
        match self {
            Task::Implies { .. } => "implies",
            Task::Evaluate { .. } => "evaluate",
            Task::FreeRealization { .. } => "free-realization",
            Task::ChainAnalyze { .. } => "chain-analyze",
            Task::BassBuild { .. } => "bass-build",
            Task::EqProbe { .. } => "eq-probe",
            Task::PerfectProbe { .. } => "perfect-probe",
        }
    }
}

/// One side of an elementary-equivalence probe.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Source {
    Module(String),
    /// `⊕ M^(m)` for the listed modules and multiplicities.
    Truncation(Vec<(String, usize)>),
    /// `⊕ M^(ω)` over the listed modules.
    PureFree(Vec<String>),
    Colimit {
        system: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        stage_bound: Option<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub tool: String,
    pub ring: String,
    pub seed: u64,
    pub tasks: Vec<TaskReport>,
    /// Wall time per task; excluded from comparisons.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<Vec<u64>>,
}

impl Report {
    pub fn without_timings(&self) -> Report {
        Report {
            timings_ms: None,
            ..self.clone()
        }
    }

    pub fn all_completed(&self) -> bool {
        self.tasks.iter().all(|t| t.error.is_none())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("ring {} (seed {})\n", self.ring, self.seed);
        for (i, t) in self.tasks.iter().enumerate() {
            match &t.error {
                Some(e) => out.push_str(&format!("[{i}] {}: error: {e}\n", t.kind)),
                None => out.push_str(&format!("[{i}] {}: {}\n", t.kind, t.verdict)),
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaskReport {
    pub kind: String,
    pub inputs: Value,
    pub verdict: String,
    pub certificates: Vec<Value>,
    pub stage_data: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

struct Outcome {
    verdict: String,
    certificates: Vec<Value>,
    stage_data: Value,
}

/// Reads a scenario file.
pub fn load_scenario(path: &std::path::Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::Schema(e.to_string()))
}

pub fn run_scenario(sc: &Scenario) -> Result<Report> {
    let desc: RingDescriptor = sc.ring.parse()?;
    match desc {
        #[cfg(feature = "poly")]
        RingDescriptor::PolynomialsOverPrimeField(p) => {
            Ctx::new(sc, Ring::<ppmod::PolyFp>::poly_over_fp(p)?)?.run()
        }
        #[cfg(not(feature = "poly"))]
        RingDescriptor::PolynomialsOverPrimeField(_) => Err(CliError::Schema(
            "built without polynomial ring support".into(),
        )),
        other => Ctx::new(sc, Ring::<Integers>::from_descriptor(other)?)?.run(),
    }
}

struct Ctx<'a, D: CliRing> {
    sc: &'a Scenario,
    ring: Ring<D>,
    formulas: BTreeMap<String, PpFormula<D>>,
    modules: BTreeMap<String, FpModule<D>>,
    chains: BTreeMap<String, PpChain<D>>,
}

impl<'a, D: CliRing> Ctx<'a, D> {
    /// Resolves every declaration and type-checks every task.
    fn new(sc: &'a Scenario, ring: Ring<D>) -> Result<Self> {
        let decl = &sc.declarations;
        let mut formulas = BTreeMap::new();
        for (name, text) in &decl.formulas {
            let f = parse_formula(text, &ring)
                .map_err(|e| CliError::Schema(format!("formula `{name}`: {e}")))?;
            formulas.insert(name.clone(), f);
        }
        let mut modules = BTreeMap::new();
        for name in decl.modules.keys() {
            resolve_module(&ring, decl, name, &mut modules, &mut BTreeSet::new())?;
        }
        let mut chains = BTreeMap::new();
        for (name, c) in &decl.chains {
            let chain = build_chain(&ring, c)
                .map_err(|e| CliError::Schema(format!("chain `{name}`: {e}")))?;
            chains.insert(name.clone(), chain);
        }
        for (name, s) in &decl.systems {
            if !chains.contains_key(&s.chain) {
                return Err(CliError::Resolve(format!(
                    "{} (in system `{name}`)",
                    s.chain
                )));
            }
        }
        let ctx = Ctx {
            sc,
            ring,
            formulas,
            modules,
            chains,
        };
        for t in &sc.tasks {
            ctx.check(t)?;
        }
        Ok(ctx)
    }

    fn formula(&self, name: &str) -> Result<&PpFormula<D>> {
        self.formulas
            .get(name)
            .ok_or_else(|| CliError::Resolve(name.into()))
    }

    fn module(&self, name: &str) -> Result<&FpModule<D>> {
        self.modules
            .get(name)
            .ok_or_else(|| CliError::Resolve(name.into()))
    }

    fn chain(&self, name: &str) -> Result<&PpChain<D>> {
        self.chains
            .get(name)
            .ok_or_else(|| CliError::Resolve(name.into()))
    }

    fn system(&self, name: &str) -> Result<&SystemDecl> {
        self.sc
            .declarations
            .systems
            .get(name)
            .ok_or_else(|| CliError::Resolve(name.into()))
    }

    fn check_source(&self, s: &Source) -> Result<()> {
        match s {
            Source::Module(m) => self.module(m).map(|_| ()),
            Source::Truncation(v) => v.iter().try_for_each(|(m, _)| self.module(m).map(|_| ())),
            Source::PureFree(v) if v.is_empty() => {
                Err(CliError::Schema("pure_free needs a module".into()))
            }
            Source::PureFree(v) => v.iter().try_for_each(|m| self.module(m).map(|_| ())),
            Source::Colimit {
                system,
                stage_bound,
            } => {
                let s = self.system(system)?;
                match stage_bound {
                    Some(b) if *b > s.stages => Err(CliError::Schema(format!(
                        "stage bound {b} beyond {} stages",
                        s.stages
                    ))),
                    _ => Ok(()),
                }
            }
        }
    }

    fn check(&self, t: &Task) -> Result<()> {
        match t {
            Task::Implies { phi, psi } => {
                let (a, b) = (self.formula(phi)?, self.formula(psi)?);
                if a.arity() != b.arity() {
                    return Err(CliError::Schema(format!(
                        "`{phi}` and `{psi}` have arities {} and {}",
                        a.arity(),
                        b.arity()
                    )));
                }
            }
            Task::Evaluate { formula, module } => {
                self.formula(formula)?;
                self.module(module)?;
            }
            Task::FreeRealization { formula } => {
                self.formula(formula)?;
            }
            Task::ChainAnalyze { chain, module, .. } => {
                self.chain(chain)?;
                if let Some(m) = module {
                    self.module(m)?;
                }
            }
            Task::BassBuild { system } => {
                self.system(system)?;
            }
            Task::EqProbe { left, right, .. } => {
                self.check_source(left)?;
                self.check_source(right)?;
            }
            Task::PerfectProbe { .. } => {}
        }
        Ok(())
    }

    fn run(&self) -> Result<Report> {
        let mut tasks = Vec::with_capacity(self.sc.tasks.len());
        let mut timings = Vec::with_capacity(self.sc.tasks.len());
        for t in &self.sc.tasks {
            let start = Instant::now();
            let inputs = self.inputs(t)?;
            let rec = match self.execute(t) {
                Ok(o) => TaskReport {
                    kind: t.kind().into(),
                    inputs,
                    verdict: o.verdict,
                    certificates: o.certificates,
                    stage_data: o.stage_data,
                    error: None,
                },
                Err(e) => TaskReport {
                    kind: t.kind().into(),
                    inputs,
                    verdict: "error".into(),
                    certificates: Vec::new(),
                    stage_data: Value::Null,
                    error: Some(e.to_string()),
                },
            };
            tasks.push(rec);
            timings.push(start.elapsed().as_millis() as u64);
        }
        Ok(Report {
            version: REPORT_VERSION.into(),
            tool: format!("ppmod {}", env!("CARGO_PKG_VERSION")),
            ring: self.ring.descriptor().to_string(),
            seed: self.sc.seed,
            tasks,
            timings_ms: Some(timings),
        })
    }

    /// The task as written plus the declarations it names.
    fn inputs(&self, t: &Task) -> Result<Value> {
        let d = &self.sc.declarations;
        let mut names: Vec<&str> = Vec::new();
        let mut sources = Vec::new();
        match t {
            Task::Implies { phi, psi } => names.extend([phi.as_str(), psi.as_str()]),
            Task::Evaluate { formula, module } => names.extend([formula.as_str(), module.as_str()]),
            Task::FreeRealization { formula } => names.push(formula),
            Task::ChainAnalyze { chain, module, .. } => {
                names.push(chain);
                names.extend(module.as_deref());
            }
            Task::BassBuild { system } => names.push(system),
            Task::EqProbe { left, right, .. } => sources.extend([left, right]),
            Task::PerfectProbe { .. } => {}
        }
        for s in sources {
            match s {
                Source::Module(m) => names.push(m),
                Source::Truncation(v) => names.extend(v.iter().map(|(m, _)| m.as_str())),
                Source::PureFree(v) => names.extend(v.iter().map(String::as_str)),
                Source::Colimit { system, .. } => names.push(system),
            }
        }
        let mut resolved = serde_json::Map::new();
        while let Some(n) = names.pop() {
            if resolved.contains_key(n) {
                continue;
            }
            let v = if let Some(f) = d.formulas.get(n) {
                Value::String(f.clone())
            } else if let Some(m) = d.modules.get(n) {
                if let ModuleDecl::Sum(parts) = m {
                    names.extend(parts.iter().map(String::as_str));
                }
                serde_json::to_value(m)?
            } else if let Some(c) = d.chains.get(n) {
                serde_json::to_value(c)?
            } else if let Some(s) = d.systems.get(n) {
                names.push(&s.chain);
                serde_json::to_value(s)?
            } else {
                continue;
            };
            resolved.insert(n.to_owned(), v);
        }
        let mut v = serde_json::to_value(t)?;
        v["resolved"] = Value::Object(resolved);
        Ok(v)
    }

    fn execute(&self, t: &Task) -> Result<Outcome> {
        match t {
            Task::Implies { phi, psi } => self.implies(self.formula(phi)?, self.formula(psi)?),
            Task::Evaluate { formula, module } => {
                self.evaluate(self.formula(formula)?, self.module(module)?)
            }
            Task::FreeRealization { formula } => self.free_realization(self.formula(formula)?),
            Task::ChainAnalyze {
                chain,
                steps,
                module,
            } => {
                let m = module.as_deref().map(|m| self.module(m)).transpose()?;
                self.chain_analyze(
                    self.chain(chain)?,
                    steps.unwrap_or(self.sc.bounds.stage_bound),
                    m,
                )
            }
            Task::BassBuild { system } => self.bass_build(self.system(system)?),
            Task::EqProbe {
                left,
                right,
                pairs,
                seed,
                arity,
            } => self.eq_probe(
                left,
                right,
                pairs.unwrap_or(self.sc.bounds.pairs),
                seed.unwrap_or(self.sc.seed),
                arity.unwrap_or(1),
            ),
            Task::PerfectProbe { steps } => {
                self.perfect_probe(steps.unwrap_or(self.sc.bounds.stage_bound))
            }
        }
    }

    fn implies(&self, phi: &PpFormula<D>, psi: &PpFormula<D>) -> Result<Outcome> {
        let (holds, cert) = implication(phi, psi)?;
        let mut certificates = vec![cert];
        if self.sc.with_oracle {
            if let Some(r) = D::oracle_implies(phi, psi, self.sc.bounds.enum_bound) {
                certificates.push(json!({
                    "type": "oracle",
                    "enum_bound": self.sc.bounds.enum_bound,
                    "arity": phi.arity(),
                    "top": formula_json(psi),
                    "bottom": formula_json(phi),
                    "module": null,
                    "agrees": r? == holds,
                }));
            }
        }
        Ok(Outcome {
            verdict: holds.to_string(),
            certificates,
            stage_data: Value::Null,
        })
    }

    fn evaluate(&self, phi: &PpFormula<D>, m: &FpModule<D>) -> Result<Outcome> {
        let n = phi.arity();
        let s = evaluate(phi, m)?;
        let ambient = m.relations().power(n);
        let size = ppmod::exactalg::quotient_order(&s, &ambient)?;
        let gens: Vec<Value> = s
            .basis()
            .iter()
            .map(|v| vector_json(&self.ring, v))
            .collect();
        let mut certificates = vec![json!({
            "type": "solution-set",
            "arity": n,
            "formula": formula_json(phi),
            "module": module_json(m),
            "generators": gens,
        })];
        if self.sc.with_oracle {
            let zero = phi.conj(&PpFormula::equals_zero(&self.ring, n))?;
            if let Some(r) = D::oracle_index(phi, &zero, m, self.sc.bounds.enum_bound) {
                certificates.push(json!({
                    "type": "oracle",
                    "enum_bound": self.sc.bounds.enum_bound,
                    "arity": n,
                    "top": formula_json(phi),
                    "bottom": formula_json(&zero),
                    "module": module_json(m),
                    "agrees": r? == size,
                }));
            }
        }
        Ok(Outcome {
            verdict: format!("|phi(M)| = {size}"),
            certificates,
            stage_data: Value::Null,
        })
    }

    fn free_realization(&self, phi: &PpFormula<D>) -> Result<Outcome> {
        let p = free_realization(phi);
        let st = p.module().structure();
        let torsion: Vec<Value> = st
            .torsion
            .iter()
            .map(|e| Value::String(self.ring.format(e)))
            .collect();
        Ok(Outcome {
            verdict: format!("order {}", p.module().order()),
            certificates: vec![json!({
                "type": "free-realization",
                "arity": phi.arity(),
                "formula": formula_json(phi),
                "module": module_json(p.module()),
                "tuple": tuple_json(p.tuple()),
            })],
            stage_data: json!({ "torsion": torsion, "free_rank": st.free_rank }),
        })
    }

    fn chain_analyze(
        &self,
        chain: &PpChain<D>,
        steps: usize,
        m: Option<&FpModule<D>>,
    ) -> Result<Outcome> {
        let lat = lattice_strictness(chain, steps)?;
        let mut certificates = step_certificates(&lat, chain.arity());
        let mut verdict = format!("lattice: {:?}", lat.verdict);
        if let Some(m) = m {
            let inm = stabilizes_in(chain, m, steps)?;
            certificates.extend(step_certificates(&inm, chain.arity()));
            verdict.push_str(&format!("; module: {:?}", inm.verdict));
        }
        let stage_data: Vec<Value> = lat
            .stages
            .iter()
            .enumerate()
            .map(|(i, f)| json!({ "stage": i, "formula": formula_json(f) }))
            .collect();
        Ok(Outcome {
            verdict,
            certificates,
            stage_data: Value::Array(stage_data),
        })
    }

    fn bass_build(&self, decl: &SystemDecl) -> Result<Outcome> {
        let chain = self.chain(&decl.chain)?;
        let sys = build_system(chain, decl.stages)?;
        let mut certificates = connector_certificates(&sys);
        let stages: Vec<Value> = chain
            .materialize(decl.stages)?
            .materialized()
            .iter()
            .map(formula_json)
            .collect();
        let verdict = match sys.ml_failure_report(decl.stages) {
            Ok(ev) => {
                let complete = ev.complete()?;
                certificates.push(json!({
                    "type": "ml-evidence",
                    "arity": chain.arity(),
                    "stages": stages,
                    "complete": complete,
                    "identifications": ev.identifications.iter().map(|e| format!("{e:?}")).collect::<Vec<_>>(),
                    "satisfaction": ev.satisfaction.iter().map(|e| format!("{e:?}")).collect::<Vec<_>>(),
                }));
                certificates.extend(step_certificates(&ev.strictness, chain.arity()));
                if complete {
                    ev.statement()
                } else {
                    format!("incomplete evidence through stage {}", decl.stages)
                }
            }
            Err(ppmod::Error::ChainStabilized(i)) => {
                format!("chain stabilizes at step {i}; no failure evidence")
            }
            Err(e) => return Err(e.into()),
        };
        let stage_data: Vec<Value> = sys
            .stages()
            .iter()
            .enumerate()
            .map(|(i, p)| {
                json!({
                    "stage": i,
                    "module": module_json(p.module()),
                    "order": p.module().order().to_string(),
                    "tuple": tuple_json(p.tuple()),
                })
            })
            .collect();
        Ok(Outcome {
            verdict,
            certificates,
            stage_data: Value::Array(stage_data),
        })
    }

    fn signature(&self, s: &Source) -> Result<(InvariantSignature<D>, Option<FpModule<D>>)> {
        Ok(match s {
            Source::Module(m) => {
                let m = self.module(m)?.clone();
                (
                    InvariantSignature::new(ModuleSource::Module(m.clone())),
                    Some(m),
                )
            }
            Source::Truncation(v) => {
                let parts = v
                    .iter()
                    .map(|(m, k)| Ok((self.module(m)?.clone(), *k)))
                    .collect::<Result<Vec<_>>>()?;
                let t = pure_free_truncation(&self.ring, &parts)?;
                let m = t.module().clone();
                (
                    InvariantSignature::new(ModuleSource::Truncation(t)),
                    Some(m),
                )
            }
            Source::PureFree(v) => {
                let family = ModuleFamily::List(
                    v.iter()
                        .map(|m| Ok(self.module(m)?.clone()))
                        .collect::<Result<_>>()?,
                );
                (
                    InvariantSignature::new(ModuleSource::PureFree {
                        family,
                        probe_bound: v.len(),
                    }),
                    None,
                )
            }
            Source::Colimit {
                system,
                stage_bound,
            } => {
                let decl = self.system(system)?;
                let sys = build_system(self.chain(&decl.chain)?, decl.stages)?;
                let b = stage_bound.unwrap_or(decl.stages);
                (
                    InvariantSignature::new(ModuleSource::Colimit {
                        system: sys,
                        stage_bound: b,
                    }),
                    None,
                )
            }
        })
    }

    fn eq_probe(
        &self,
        left: &Source,
        right: &Source,
        count: usize,
        seed: u64,
        arity: usize,
    ) -> Result<Outcome> {
        let (ls, lm) = self.signature(left)?;
        let (rs, rm) = self.signature(right)?;
        let entry_bound = self
            .ring
            .order()
            .and_then(|n| u64::try_from(n).ok())
            .unwrap_or(6)
            .min(16);
        let bounds = PairBounds {
            arity_max: arity.max(1),
            bound_vars_max: 2,
            entry_bound,
        };
        let pairs = enumerate_pairs(&self.ring, bounds, count, seed)?;
        let verdict = elem_equiv_probe(&ls, &rs, &pairs)?;
        let mut stage_data = Vec::with_capacity(pairs.len());
        for (i, p) in pairs.iter().enumerate() {
            stage_data.push(json!({
                "pair": i,
                "top": formula_json(p.top()),
                "bottom": formula_json(p.bottom()),
                "left": signature_text(&ls.value(p)?),
                "right": signature_text(&rs.value(p)?),
            }));
        }
        let mut certificates = Vec::new();
        let text = match verdict {
            ProbeVerdict::Distinguished { pair, .. } => {
                let p = &pairs[pair];
                for m in [&lm, &rm].into_iter().flatten() {
                    certificates.push(json!({
                        "type": "pair-index",
                        "arity": p.arity(),
                        "top": formula_json(p.top()),
                        "bottom": formula_json(p.bottom()),
                        "module": module_json(m),
                        "index": pair_index(p, m)?.to_string(),
                    }));
                }
                format!("distinguished by pair {pair}")
            }
            ProbeVerdict::IndistinguishableOn(n) => format!("indistinguishable on {n} pairs"),
        };
        if self.sc.with_oracle {
            for p in pairs.iter().take(10) {
                for m in [&lm, &rm].into_iter().flatten() {
                    if let Some(r) =
                        D::oracle_index(p.top(), p.bottom(), m, self.sc.bounds.enum_bound)
                    {
                        certificates.push(json!({
                                "type": "oracle",
                        "enum_bound": self.sc.bounds.enum_bound,
                                "arity": p.arity(),
                                "top": formula_json(p.top()),
                                "bottom": formula_json(p.bottom()),
                                "module": module_json(m),
                                "agrees": r? == pair_index(p, m)?,
                            }));
                    }
                }
            }
        }
        Ok(Outcome {
            verdict: text,
            certificates,
            stage_data: Value::Array(stage_data),
        })
    }

    fn perfect_probe(&self, steps: usize) -> Result<Outcome> {
        match (self.ring.descriptor(), self.ring.modulus()) {
            (RingDescriptor::IntegersMod(n) | RingDescriptor::PrimeField(n), Some(_)) => {
                let p = probe_zmod(n)?;
                let z = Ring::integers_mod(n)?;
                let rep = padded_report(&z, &p.longest, p.divisor_count)?;
                let gens: Vec<String> = rep_generators(&p.longest, p.divisor_count);
                let verdict = if p.all_within {
                    format!(
                        "all principal-ideal chains stabilize; steps <= {} (divisor count {})",
                        p.max_steps, p.divisor_count
                    )
                } else {
                    "some principal-ideal chain does not stabilize within the divisor count".into()
                };
                Ok(Outcome {
                    verdict,
                    certificates: vec![
                        json!({ "type": "ideal-chain", "generators": gens, "verdict": format!("{:?}", rep.verdict) }),
                    ],
                    stage_data: json!({ "chains": p.chains, "divisor_count": p.divisor_count, "max_steps": p.max_steps }),
                })
            }
            _ => {
                let r = D::probe_base(&self.ring);
                let (gens, rep) = power_chain(&self.ring, &r, steps)?;
                let verdict = format!("powers of {}: {:?}", self.ring.format(&r), rep.verdict);
                Ok(Outcome {
                    verdict,
                    certificates: vec![json!({
                        "type": "ideal-chain",
                        "generators": gens.iter().map(|g| self.ring.format(g)).collect::<Vec<_>>(),
                        "verdict": format!("{:?}", rep.verdict),
                    })],
                    stage_data: Value::Null,
                })
            }
        }
    }
}

fn rep_generators(chain: &[u64], steps: usize) -> Vec<String> {
    let mut out: Vec<String> = chain.iter().map(|g| g.to_string()).collect();
    while out.len() <= steps {
        out.push(out.last().cloned().unwrap_or_else(|| "1".into()));
    }
    out
}

fn signature_text(v: &SignatureValue) -> String {
    use ppmod::eqprobe::PureFreeIndex;
    match v {
        SignatureValue::Exact(c) => c.to_string(),
        SignatureValue::PureFree(PureFreeIndex::One) => "1".into(),
        SignatureValue::PureFree(PureFreeIndex::Infinite { .. }) => "inf".into(),
        SignatureValue::PureFree(PureFreeIndex::OneUpTo(b)) => format!("1 up to member {b}"),
        SignatureValue::ColimitStage { value, stage } => format!(">= {value} (stage {stage})"),
    }
}

fn step_certificates<D: CliRing>(rep: &ppmod::chains::DccReport<D>, arity: usize) -> Vec<Value> {
    rep.steps
        .iter()
        .enumerate()
        .map(|(i, s)| match s {
            StepEvidence::Strict(p) => json!({
                "type": "strict-step",
                "step": i,
                "arity": arity,
                "upper": formula_json(&rep.stages[i]),
                "lower": formula_json(&rep.stages[i + 1]),
                "module": module_json(p.module()),
                "tuple": tuple_json(p.tuple()),
            }),
            StepEvidence::Equal => json!({
                "type": "equal-step",
                "step": i,
                "arity": arity,
                "upper": formula_json(&rep.stages[i]),
                "lower": formula_json(&rep.stages[i + 1]),
                "module": rep.module.as_ref().map(module_json),
            }),
        })
        .collect()
}

fn connector_certificates<D: CliRing>(sys: &BassSystem<D>) -> Vec<Value> {
    let ring = sys.ring();
    sys.connectors()
        .iter()
        .enumerate()
        .map(|(i, g)| {
            json!({
                "type": "connector",
                "stage": i,
                "source": module_json(g.source()),
                "target": module_json(g.target()),
                "matrix": g.matrix().to_rows().iter().map(|r| vector_json(ring, r)).collect::<Vec<_>>(),
                "source_tuple": tuple_json(sys.stages()[i].tuple()),
                "target_tuple": tuple_json(sys.stages()[i + 1].tuple()),
            })
        })
        .collect()
}

fn resolve_module<D: CliRing>(
    ring: &Ring<D>,
    decl: &Declarations,
    name: &str,
    done: &mut BTreeMap<String, FpModule<D>>,
    visiting: &mut BTreeSet<String>,
) -> Result<FpModule<D>> {
    if let Some(m) = done.get(name) {
        return Ok(m.clone());
    }
    let d = decl
        .modules
        .get(name)
        .ok_or_else(|| CliError::Resolve(name.into()))?;
    if !visiting.insert(name.into()) {
        return Err(CliError::Schema(format!(
            "module `{name}` is defined in terms of itself"
        )));
    }
    let m = match d {
        ModuleDecl::Presented { gens, relations } => {
            let rows = relations
                .iter()
                .map(|r| {
                    if r.len() != *gens {
                        return Err(CliError::Schema(format!(
                            "module `{name}`: relation of length {}",
                            r.len()
                        )));
                    }
                    r.iter()
                        .map(|e| D::parse_elem(ring, &e.text()))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            FpModule::from_relations(ring, *gens, rows)?
        }
        ModuleDecl::Cyclic(r) => FpModule::cyclic(ring, &[D::parse_elem(ring, &r.text())?]),
        ModuleDecl::Free(k) => FpModule::free(ring, *k),
        ModuleDecl::Sum(parts) => {
            let ms = parts
                .iter()
                .map(|p| resolve_module(ring, decl, p, done, visiting))
                .collect::<Result<Vec<_>>>()?;
            ppmod::fpmod::DirectSum::of(ring, &ms)?.module
        }
    };
    visiting.remove(name);
    done.insert(name.into(), m.clone());
    Ok(m)
}

fn build_chain<D: CliRing>(ring: &Ring<D>, c: &ChainDecl) -> Result<PpChain<D>> {
    match (&c.template, &c.formulas) {
        (Some(t), None) => {
            let first = parse_template(t, ring, None, 0)?;
            let (free, text, r) = (first.free.clone(), t.clone(), ring.clone());
            Ok(PpChain::from_fn(ring, first.formula.arity(), move |i| {
                parse_template(&text, &r, Some(&free), i as u64)
                    .map(|p| p.formula)
                    .map_err(|e| ppmod::Error::Precondition(e.to_string()))
            }))
        }
        (None, Some(list)) if !list.is_empty() => {
            let first = parse_with(&list[0], ring, None, None)?;
            let mut stages = vec![first.formula];
            for f in &list[1..] {
                stages.push(parse_formula_in(f, ring, &first.free)?);
            }
            Ok(PpChain::from_list(ring, stages)?)
        }
        _ => Err(CliError::Schema(
            "a chain needs exactly one of `template` or a nonempty `formulas`".into(),
        )),
    }
}

/// Re-checks every certificate in a report.
pub fn verify_report(report: &Report) -> Result<bool> {
    let desc: RingDescriptor = report.ring.parse()?;
    match desc {
        #[cfg(feature = "poly")]
        RingDescriptor::PolynomialsOverPrimeField(p) => {
            verify_all(&Ring::<ppmod::PolyFp>::poly_over_fp(p)?, report)
        }
        #[cfg(not(feature = "poly"))]
        RingDescriptor::PolynomialsOverPrimeField(_) => Err(CliError::Schema(
            "built without polynomial ring support".into(),
        )),
        other => verify_all(&Ring::<Integers>::from_descriptor(other)?, report),
    }
}

fn verify_all<D: CliRing>(ring: &Ring<D>, report: &Report) -> Result<bool> {
    for t in &report.tasks {
        for c in &t.certificates {
            if !crate::certify::verify(ring, c)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

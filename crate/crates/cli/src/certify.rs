//! Certificates: self-contained JSON records that re-verify through the
//! library without the scenario that produced them.

use serde_json::{json, Value};

use ppmod::bass::build_system;
use ppmod::chains::{lattice_strictness, principal_ideal_chain, PpChain};
use ppmod::eqprobe::{pair_index, PpPair};
use ppmod::ppcalc::{evaluate, free_realization, freely_realizes, implies, satisfies};
use ppmod::{
    Card, EuclideanDomain, FpModule, ModElem, PointedModule, PpFormula, Ring, RingDescriptor,
    Submodule,
};

use crate::dsl::{default_names, parse_formula_in, parse_rows, CliRing};
use crate::error::{CliError, Result};

pub fn elem_json<D: EuclideanDomain>(ring: &Ring<D>, e: &D::Elem) -> Value {
    Value::String(ring.format(e))
}

pub fn vector_json<D: EuclideanDomain>(ring: &Ring<D>, v: &[D::Elem]) -> Value {
    Value::Array(v.iter().map(|e| elem_json(ring, e)).collect())
}

pub fn module_json<D: EuclideanDomain>(m: &FpModule<D>) -> Value {
    let ring = m.ring();
    json!({
        "gens": m.num_gens(),
        "relations": m.raw_relations().iter().map(|r| vector_json(ring, r)).collect::<Vec<_>>(),
    })
}

pub fn tuple_json<D: EuclideanDomain>(t: &[ModElem<D>]) -> Value {
    Value::Array(
        t.iter()
            .map(|e| vector_json(e.module().ring(), e.coords()))
            .collect(),
    )
}

pub fn formula_json<D: EuclideanDomain>(phi: &PpFormula<D>) -> Value {
    Value::String(phi.to_string())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| CliError::Schema(format!("certificate lacks `{key}`")))
}

fn string_rows(v: &Value) -> Result<Vec<Vec<String>>> {
    let bad = || CliError::Schema("expected an array of arrays of strings".into());
    v.as_array()
        .ok_or_else(bad)?
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|e| e.as_str().map(str::to_owned).ok_or_else(bad))
                .collect()
        })
        .collect()
}

fn usize_field(v: &Value, key: &str) -> Result<usize> {
    field(v, key)?
        .as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| CliError::Schema(format!("`{key}` is not a number")))
}

pub fn read_module<D: CliRing>(ring: &Ring<D>, v: &Value) -> Result<FpModule<D>> {
    let gens = usize_field(v, "gens")?;
    let rows = string_rows(field(v, "relations")?)?;
    let m = parse_rows(ring, &rows, gens)?;
    Ok(FpModule::from_relations(ring, gens, m.to_rows())?)
}

pub fn read_tuple<D: CliRing>(m: &FpModule<D>, v: &Value) -> Result<Vec<ModElem<D>>> {
    let rows = string_rows(v)?;
    let mat = parse_rows(m.ring(), &rows, m.num_gens())?;
    mat.to_rows().into_iter().map(|r| Ok(m.elem(r)?)).collect()
}

/// Certificates print formulas with `x1, …, xn`; the arity is passed along
/// so that unmentioned variables are not lost.
pub fn read_formula<D: CliRing>(ring: &Ring<D>, v: &Value, arity: usize) -> Result<PpFormula<D>> {
    let text = v
        .as_str()
        .ok_or_else(|| CliError::Schema("formula is not a string".into()))?;
    parse_formula_in(text, ring, &default_names(arity))
}

fn arity_of(v: &Value) -> Result<usize> {
    usize_field(v, "arity")
}

/// Re-checks one certificate.
pub fn verify<D: CliRing>(ring: &Ring<D>, cert: &Value) -> Result<bool> {
    let kind = field(cert, "type")?.as_str().unwrap_or_default();
    match kind {
        "implication" | "non-implication" => {
            let n = arity_of(cert)?;
            let phi = read_formula(ring, field(cert, "phi")?, n)?;
            let psi = read_formula(ring, field(cert, "psi")?, n)?;
            let m = read_module(ring, field(cert, "realization")?)?;
            let tuple = read_tuple(&m, field(cert, "tuple")?)?;
            let p = PointedModule::new(m, tuple)?;
            let realizes = freely_realizes(&p, &phi)?;
            let holds = satisfies(&psi, &p)?;
            if kind == "non-implication" {
                return Ok(realizes && !holds);
            }
            // the recorded witness, checked by substitution
            let w = read_tuple(p.module(), field(cert, "witness")?)?;
            let ok = (0..psi.equations()).all(|r| {
                let lhs = combine(ring, psi.a().row(r), &w, p.module());
                let rhs = combine(ring, psi.b().row(r), p.tuple(), p.module());
                lhs.equals(&rhs).unwrap_or(false)
            });
            Ok(realizes && holds && ok)
        }
        "solution-set" => {
            let n = arity_of(cert)?;
            let phi = read_formula(ring, field(cert, "formula")?, n)?;
            let m = read_module(ring, field(cert, "module")?)?;
            let gens = string_rows(field(cert, "generators")?)?;
            let gens = parse_rows(ring, &gens, n * m.num_gens())?;
            let claimed = Submodule::new(ring, n * m.num_gens(), gens.to_rows())?
                .sum(&m.relations().power(n))?;
            Ok(evaluate(&phi, &m)? == claimed)
        }
        "free-realization" => {
            let n = arity_of(cert)?;
            let phi = read_formula(ring, field(cert, "formula")?, n)?;
            let m = read_module(ring, field(cert, "module")?)?;
            let tuple = read_tuple(&m, field(cert, "tuple")?)?;
            Ok(freely_realizes(&PointedModule::new(m, tuple)?, &phi)?)
        }
        "strict-step" => {
            let n = arity_of(cert)?;
            let upper = read_formula(ring, field(cert, "upper")?, n)?;
            let lower = read_formula(ring, field(cert, "lower")?, n)?;
            let m = read_module(ring, field(cert, "module")?)?;
            let tuple = read_tuple(&m, field(cert, "tuple")?)?;
            let p = PointedModule::new(m, tuple)?;
            Ok(satisfies(&upper, &p)? && !satisfies(&lower, &p)?)
        }
        "equal-step" => {
            let n = arity_of(cert)?;
            let upper = read_formula(ring, field(cert, "upper")?, n)?;
            let lower = read_formula(ring, field(cert, "lower")?, n)?;
            match cert.get("module") {
                Some(Value::Null) | None => Ok(implies(&upper, &lower)?),
                Some(mv) => {
                    let m = read_module(ring, mv)?;
                    Ok(evaluate(&upper, &m)? == evaluate(&lower, &m)?)
                }
            }
        }
        "connector" => {
            let src = read_module(ring, field(cert, "source")?)?;
            let tgt = read_module(ring, field(cert, "target")?)?;
            let rows = string_rows(field(cert, "matrix")?)?;
            let mat = parse_rows(ring, &rows, src.num_gens())?;
            let g = match ppmod::ModMorphism::new(&src, &tgt, &mat) {
                Ok(g) => g,
                Err(_) => return Ok(false),
            };
            let a = read_tuple(&src, field(cert, "source_tuple")?)?;
            let b = read_tuple(&tgt, field(cert, "target_tuple")?)?;
            for (x, y) in a.iter().zip(&b) {
                if !g.apply(x)?.equals(y)? {
                    return Ok(false);
                }
            }
            Ok(a.len() == b.len())
        }
        "ml-evidence" => {
            let n = arity_of(cert)?;
            let stages = field(cert, "stages")?
                .as_array()
                .ok_or_else(|| CliError::Schema("`stages` is not an array".into()))?
                .iter()
                .map(|s| read_formula(ring, s, n))
                .collect::<Result<Vec<_>>>()?;
            let k = stages.len().saturating_sub(1);
            let sys = build_system(&PpChain::from_list(ring, stages)?, k)?;
            let complete = sys.ml_failure_report(k)?.complete()?;
            Ok(Some(complete) == field(cert, "complete")?.as_bool())
        }
        "pair-index" => {
            let n = arity_of(cert)?;
            let top = read_formula(ring, field(cert, "top")?, n)?;
            let bottom = read_formula(ring, field(cert, "bottom")?, n)?;
            let m = read_module(ring, field(cert, "module")?)?;
            let got = pair_index(&PpPair::new(top, bottom)?, &m)?;
            Ok(Some(got.to_string().as_str()) == field(cert, "index")?.as_str())
        }
        "ideal-chain" => {
            let gens = field(cert, "generators")?
                .as_array()
                .ok_or_else(|| CliError::Schema("`generators` is not an array".into()))?
                .iter()
                .map(|g| D::parse_elem(ring, g.as_str().unwrap_or_default()))
                .collect::<Result<Vec<_>>>()?;
            let k = gens.len().saturating_sub(1);
            let chain = principal_ideal_chain(ring, &gens)?;
            let rep = lattice_strictness(&chain, k)?;
            Ok(rep.verify()?
                && Some(format!("{:?}", rep.verdict).as_str()) == field(cert, "verdict")?.as_str())
        }
        "oracle" => {
            let n = arity_of(cert)?;
            let top = read_formula(ring, field(cert, "top")?, n)?;
            let bottom = read_formula(ring, field(cert, "bottom")?, n)?;
            let agrees = field(cert, "agrees")?.as_bool();
            let bound = usize_field(cert, "enum_bound")?;
            match cert.get("module") {
                Some(mv) if !mv.is_null() => {
                    let m = read_module(ring, mv)?;
                    let main: Card = ppmod::ppcalc::pp_index(&top, &bottom, &m)?;
                    match D::oracle_index(&top, &bottom, &m, bound) {
                        Some(r) => Ok(agrees == Some(r? == main)),
                        None => Ok(false),
                    }
                }
                _ => match D::oracle_implies(&bottom, &top, bound) {
                    Some(r) => Ok(agrees == Some(r? == implies(&bottom, &top)?)),
                    None => Ok(false),
                },
            }
        }
        other => Err(CliError::Schema(format!(
            "unknown certificate type `{other}`"
        ))),
    }
}

fn combine<D: EuclideanDomain>(
    ring: &Ring<D>,
    row: &[D::Elem],
    vals: &[ModElem<D>],
    m: &FpModule<D>,
) -> ModElem<D> {
    row.iter().zip(vals).fold(m.zero_elem(), |acc, (c, v)| {
        acc.add(&v.scalar_mul(&ring.reduce(c)))
            .expect("same module")
    })
}

/// Certificate for `φ → ψ` or its failure, built in the free realization of `φ`.
pub fn implication<D: EuclideanDomain>(
    phi: &PpFormula<D>,
    psi: &PpFormula<D>,
) -> ppmod::Result<(bool, Value)> {
    let p = free_realization(phi);
    let w = ppmod::ppcalc::witness(psi, &p)?;
    let mut cert = json!({
        "type": if w.is_some() { "implication" } else { "non-implication" },
        "arity": phi.arity(),
        "phi": formula_json(phi),
        "psi": formula_json(psi),
        "realization": module_json(p.module()),
        "tuple": tuple_json(p.tuple()),
    });
    if let Some(w) = &w {
        cert["witness"] = tuple_json(w);
    }
    Ok((w.is_some(), cert))
}

/// The ring a report was produced over.
pub fn ring_descriptor(text: &str) -> Result<RingDescriptor> {
    Ok(text.parse::<RingDescriptor>()?)
}

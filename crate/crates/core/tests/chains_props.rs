mod common;

use common::*;
use ppmod::bass::{build_system, ColimEq, Upto};
use ppmod::chains::{
    lattice_strictness, ordered_stabilization_equivalence, split_kernel_projection, stabilizes_in,
    transfer_witness, PpChain, StepEvidence, Verdict,
};
use ppmod::fpmod::{check_welldefined, MorphismCheck};
use ppmod::ppcalc::{satisfies, PpFormula};
use ppmod::{Error, Integers, Ring};
use proptest::prelude::*;

/// `φ_0 = base`, `φ_{i+1} = φ_i ∧ extra_i`: always descending.
fn conj_chain(
    ring: &Ring<Integers>,
    base: &FormulaSpec,
    extras: &[FormulaSpec],
) -> PpChain<Integers> {
    let mut stages = vec![base.build(ring)];
    for e in extras {
        let next = stages.last().unwrap().conj(&e.build(ring)).unwrap();
        stages.push(next);
    }
    PpChain::from_list(ring, stages).unwrap()
}

fn chain_strategy(arity: usize) -> impl Strategy<Value = (FormulaSpec, Vec<FormulaSpec>)> {
    (
        formula_spec(arity, 1),
        proptest::collection::vec(formula_spec(arity, 1), 1..=4),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn certificates_reverify_and_reports_agree(q in any_ring(), (base, extras) in chain_strategy(1), m in module_spec(2)) {
        let ring = ring_of(q);
        let chain = conj_chain(&ring, &base, &extras);
        let k = extras.len();
        prop_assert!(chain.materialize(k).is_ok());
        let lat = lattice_strictness(&chain, k).unwrap();
        prop_assert!(lat.verify().unwrap());
        let module = m.build(&ring);
        let inm = stabilizes_in(&chain, &module, k).unwrap();
        prop_assert!(inm.verify().unwrap());
        for i in 0..k {
            match &lat.steps[i] {
                StepEvidence::Equal => prop_assert!(!inm.steps[i].is_strict()),
                StepEvidence::Strict(w) => {
                    let witness_report = stabilizes_in(&chain, w.module(), k).unwrap();
                    prop_assert!(witness_report.steps[i].is_strict());
                }
            }
        }
    }

    #[test]
    fn transfer_witness_keeps_strictness(q in any_ring(), (base, extras) in chain_strategy(1), m in module_spec(2)) {
        let ring = ring_of(q);
        let chain = conj_chain(&ring, &base, &extras);
        let module = m.build(&ring);
        let k = extras.len();
        let report = stabilizes_in(&chain, &module, k).unwrap();
        match transfer_witness(&chain, &module, k) {
            Ok(t) => {
                prop_assert_eq!(report.verdict, Verdict::StrictThrough(k));
                let ws: Vec<_> = report.steps.iter().map(|s| match s { StepEvidence::Strict(p) => p.clone(), _ => unreachable!() }).collect();
                prop_assert!(t.verify(&ws).unwrap());
                prop_assert_eq!(t.report.verdict, Verdict::StrictThrough(k));
            }
            Err(Error::Stabilized(i)) => prop_assert_eq!(report.first_equal(), Some(i)),
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }

    #[test]
    fn split_outputs_descend(q in any_ring(), (base, extras) in chain_strategy(2), part in 0usize..2, m in module_spec(2)) {
        let ring = ring_of(q);
        let chain = conj_chain(&ring, &base, &extras);
        let k = extras.len();
        let (kernel, projection) = split_kernel_projection(&chain, k, &[part]).unwrap();
        prop_assert!(kernel.materialize(k).is_ok());
        prop_assert!(projection.materialize(k).is_ok());
        let module = m.build(&ring);
        let r = ordered_stabilization_equivalence(&chain, &module, k, &[part]).unwrap();
        prop_assert!(r.holds);
    }

    #[test]
    fn bass_systems_are_coherent(q in any_ring(), (base, extras) in chain_strategy(1)) {
        let ring = ring_of(q);
        let chain = conj_chain(&ring, &base, &extras);
        let k = extras.len();
        let sys = build_system(&chain, k).unwrap();
        for (i, g) in sys.connectors().iter().enumerate() {
            prop_assert!(matches!(check_welldefined(g.source(), g.target(), g.matrix()).unwrap(), MorphismCheck::Accepted(_)));
            let (a, b) = (&sys.stages()[i], &sys.stages()[i + 1]);
            for (x, y) in a.tuple().iter().zip(b.tuple()) {
                prop_assert!(g.apply(x).unwrap().equals(y).unwrap());
            }
        }
        let first = sys.distinguished(0).unwrap();
        for i in 0..=k {
            let e = sys.distinguished(i).unwrap();
            prop_assert_eq!(sys.colim_eq_upto(&first, &e, i).unwrap(), ColimEq::Yes(i));
            for phi in chain.materialize(k).unwrap().materialized() {
                if let Upto::Yes(s) = sys.satisfies_upto(&e, phi, k).unwrap() {
                    for t in s..=k {
                        let pushed = sys.push(&e, t).unwrap();
                        let p = ppmod::PointedModule::new(sys.stages()[t].module().clone(), pushed.values.clone()).unwrap();
                        prop_assert!(satisfies(phi, &p).unwrap());
                    }
                }
            }
        }
        let lat = lattice_strictness(&chain, k).unwrap();
        if let Verdict::StabilizesAt(i) = lat.verdict {
            prop_assert!(i < k || k == 0);
            prop_assert!(matches!(sys.ml_failure_report(k), Err(Error::ChainStabilized(_)) | Err(Error::Precondition(_))));
        }
    }
}

#[test]
fn principal_ideal_chains_stabilize_within_divisor_count() {
    for n in 2u64..=24 {
        let ring = ring_of(n);
        let d = (1..=n).filter(|x| n % x == 0).count();
        // 1, p1, p1 p2, … along the prime factorization, padded to d steps
        let mut gens = vec![1i64];
        let mut rest = n as i64;
        let mut p = 2;
        while rest > 1 {
            while rest % p == 0 {
                rest /= p;
                gens.push(gens.last().unwrap() * p);
            }
            p += 1;
        }
        while gens.len() <= d {
            gens.push(0);
        }
        let elems: Vec<_> = gens.iter().map(|&g| ring.int(g)).collect();
        let chain = ppmod::chains::principal_ideal_chain(&ring, &elems).unwrap();
        let rep = lattice_strictness(&chain, d).unwrap();
        assert!(
            matches!(rep.verdict, Verdict::StabilizesAt(i) if i <= d),
            "n = {n}: {:?}",
            rep.verdict
        );
    }
}

#[test]
fn top_chain_is_constant() {
    let z = Ring::integers();
    let chain = PpChain::from_list(&z, vec![PpFormula::top(&z, 1); 3]).unwrap();
    assert_eq!(
        lattice_strictness(&chain, 2).unwrap().verdict,
        Verdict::StabilizesAt(0)
    );
}

mod common;

use common::*;
use num_bigint::BigInt;
use ppmod::exactalg::preimage;
use ppmod::ppcalc::{evaluate, free_realization, freely_realizes, implies, pp_index};
use ppmod::{FpModule, Integers, Mat, PpFormula, Ring};
use proptest::prelude::*;

/// Coordinates of the variables in `vars` inside `R^{nk}`.
fn coords(vars: &[usize], k: usize) -> Vec<usize> {
    vars.iter().flat_map(|&v| v * k..(v + 1) * k).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn free_realization_round_trip(q in any_ring(), n in 1usize..=2, f in formula_spec(2, 2)) {
        let ring = ring_of(q);
        let mut f = f;
        f.arity = n;
        f.b.truncate(f.rows * n);
        let phi = f.build(&ring);
        prop_assert!(freely_realizes(&free_realization(&phi), &phi).unwrap());
    }

    #[test]
    fn implication_is_monotone(q in any_ring(), f in formula_spec(1, 2), g in formula_spec(1, 2), m in module_spec(2)) {
        let ring = ring_of(q);
        let (phi, chi) = (f.build(&ring), g.build(&ring));
        let module = m.build(&ring);
        for (a, b) in [(phi.conj(&chi).unwrap(), phi.clone()), (phi.clone(), chi.clone()), (chi.clone(), phi.sum(&chi).unwrap())] {
            if implies(&a, &b).unwrap() {
                prop_assert!(evaluate(&a, &module).unwrap().leq(&evaluate(&b, &module).unwrap()).unwrap());
            }
        }
        prop_assert!(implies(&phi.conj(&chi).unwrap(), &phi).unwrap());
        prop_assert!(implies(&phi, &phi.sum(&chi).unwrap()).unwrap());
    }

    #[test]
    fn evaluate_respects_combinators(q in any_ring(), f in formula_spec(2, 2), g in formula_spec(2, 1), m in module_spec(2), which in 0usize..2) {
        let ring = ring_of(q);
        let (phi, psi) = (f.build(&ring), g.build(&ring));
        let module = m.build(&ring);
        let k = module.num_gens();
        let (ep, es) = (evaluate(&phi, &module).unwrap(), evaluate(&psi, &module).unwrap());
        prop_assert_eq!(evaluate(&phi.conj(&psi).unwrap(), &module).unwrap(), ep.intersection(&es).unwrap());
        prop_assert_eq!(evaluate(&phi.sum(&psi).unwrap(), &module).unwrap(), ep.sum(&es).unwrap());

        let keep = [which];
        prop_assert_eq!(evaluate(&phi.project(&keep).unwrap(), &module).unwrap(), ep.project(&coords(&keep, k)).unwrap());

        // kernel: the slice of φ(M) where the zeroed variable vanishes
        let zeroed = [which];
        let rest = [1 - which];
        let mut incl = ring.zero_mat(2 * k, k);
        for (j, c) in coords(&rest, k).into_iter().enumerate() {
            incl.set(c, j, ring.one());
        }
        prop_assert_eq!(evaluate(&phi.kernel(&zeroed).unwrap(), &module).unwrap(), preimage(&ring, &incl, &ep).unwrap());
    }

    #[test]
    fn pp_index_is_multiplicative(q in any_ring(), f in formula_spec(1, 2), g in formula_spec(1, 2), a in module_spec(2), b in module_spec(2)) {
        let ring = ring_of(q);
        let phi = f.build(&ring);
        let psi = phi.conj(&g.build(&ring)).unwrap();
        let (ma, mb) = (a.build(&ring), b.build(&ring));
        let sum = ma.direct_sum(&mb).unwrap().module;
        let whole = pp_index(&phi, &psi, &sum).unwrap();
        prop_assert_eq!(whole, pp_index(&phi, &psi, &ma).unwrap() * pp_index(&phi, &psi, &mb).unwrap());
    }
}

#[test]
fn named_families_round_trip() {
    for q in [0u64, 2, 4, 6, 8, 12] {
        let ring = ring_of(q);
        let c = |x: i64| BigInt::from(x);
        let mut forms: Vec<PpFormula<Integers>> = Vec::new();
        for a in 1..=6 {
            forms.push(PpFormula::divisibility(
                &ring,
                &Mat::new(1, 1, vec![c(a)]).unwrap(),
            ));
            forms.push(PpFormula::cypr_formula(&ring, &[c(a)], &c(2 * a)));
            forms.push(PpFormula::cyc_formula(&ring, &[c(a), c(a + 1)], &[c(3)]));
            forms.push(PpFormula::annihilator(&ring, &c(a)));
        }
        for phi in forms {
            assert!(
                freely_realizes(&free_realization(&phi), &phi).unwrap(),
                "{phi}"
            );
        }
    }
}

#[test]
fn conj_of_divisibility_is_lcm() {
    let z = Ring::integers();
    let d = |a: i64| PpFormula::divisibility(&z, &z.mat(&[&[a]]));
    let both = d(2).conj(&d(3)).unwrap();
    assert!(implies(&both, &d(6)).unwrap() && implies(&d(6), &both).unwrap());
    let m = FpModule::cyclic(&z, &z.vector(&[36]));
    assert_eq!(evaluate(&both, &m).unwrap(), evaluate(&d(6), &m).unwrap());
}

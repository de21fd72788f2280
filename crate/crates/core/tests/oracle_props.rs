mod common;

use common::*;
use ppmod::oracle::{evaluate_brute, implies_brute, index_brute};
use ppmod::ppcalc::{evaluate, implies, pp_index};
use ppmod::Card;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn evaluate_agrees(q in finite_ring(), n in 1usize..=2, f in formula_spec(2, 2), m in module_spec(2)) {
        let ring = ring_of(q);
        let mut f = f;
        f.arity = n;
        f.b.truncate(f.rows * n);
        let phi = f.build(&ring);
        let module = m.build(&ring);
        let brute = evaluate_brute(&phi, &module).unwrap();
        prop_assert!(brute.is_closed());
        let main = evaluate(&phi, &module).unwrap();
        let reps = brute.representatives();
        for r in &reps {
            prop_assert!(main.contains(r).unwrap());
        }
        // equal sizes plus containment give equality
        let ambient = module.relations().power(n);
        let size = ppmod::exactalg::quotient_order(&main, &ambient).unwrap();
        prop_assert_eq!(size, Card::from(reps.len() as u64));
    }

    #[test]
    fn implies_agrees(q in finite_ring(), f in formula_spec(1, 2), g in formula_spec(1, 2), extra in formula_spec(1, 1)) {
        let ring = ring_of(q);
        let (phi, psi) = (f.build(&ring), g.build(&ring));
        prop_assert_eq!(implies(&phi, &psi).unwrap(), implies_brute(&phi, &psi).unwrap());
        let tighter = phi.conj(&extra.build(&ring)).unwrap();
        prop_assert!(implies_brute(&tighter, &phi).unwrap());
        prop_assert_eq!(implies(&phi, &tighter).unwrap(), implies_brute(&phi, &tighter).unwrap());
    }

    #[test]
    fn index_agrees(q in finite_ring(), f in formula_spec(1, 2), g in formula_spec(1, 1), m in module_spec(2)) {
        let ring = ring_of(q);
        let phi = f.build(&ring);
        let psi = phi.conj(&g.build(&ring)).unwrap();
        let module = m.build(&ring);
        prop_assert_eq!(pp_index(&phi, &psi, &module).unwrap(), index_brute(&phi, &psi, &module).unwrap());
    }
}

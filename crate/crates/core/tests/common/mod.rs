#![allow(dead_code)]

use num_bigint::BigInt;
use ppmod::{FpModule, Integers, Mat, PpFormula, Ring};
use proptest::prelude::*;

/// `0` stands for ℤ.
pub fn ring_of(q: u64) -> Ring<Integers> {
    if q == 0 {
        Ring::integers()
    } else {
        Ring::integers_mod(q).unwrap()
    }
}

pub fn mat(rows: usize, cols: usize, entries: &[i64]) -> Mat<BigInt> {
    Mat::new(
        rows,
        cols,
        entries.iter().map(|&x| BigInt::from(x)).collect(),
    )
    .unwrap()
}

/// A ring code: `0` for ℤ or a modulus in `2..=12`.
pub fn any_ring() -> impl Strategy<Value = u64> {
    prop_oneof![Just(0u64), 2u64..=12]
}

pub fn finite_ring() -> impl Strategy<Value = u64> {
    2u64..=12
}

pub fn entries(len: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-6i64..=6, len)
}

/// Raw data for a module: generator count and relation rows.
#[derive(Clone, Debug)]
pub struct ModuleSpec {
    pub gens: usize,
    pub rels: Vec<Vec<i64>>,
}

impl ModuleSpec {
    pub fn build(&self, ring: &Ring<Integers>) -> FpModule<Integers> {
        let rels = self
            .rels
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        FpModule::from_relations(ring, self.gens, rels).unwrap()
    }
}

pub fn module_spec(max_gens: usize) -> impl Strategy<Value = ModuleSpec> {
    (1..=max_gens).prop_flat_map(|gens| {
        proptest::collection::vec(proptest::collection::vec(-8i64..=8, gens), 0..=2)
            .prop_map(move |rels| ModuleSpec { gens, rels })
    })
}

/// Raw data for `∃ȳ (Aȳ ≐ Bx̄)`.
#[derive(Clone, Debug)]
pub struct FormulaSpec {
    pub arity: usize,
    pub bound: usize,
    pub rows: usize,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
}

impl FormulaSpec {
    pub fn build(&self, ring: &Ring<Integers>) -> PpFormula<Integers> {
        PpFormula::new(
            ring,
            mat(self.rows, self.bound, &self.a),
            mat(self.rows, self.arity, &self.b),
        )
        .unwrap()
    }
}

pub fn formula_spec(arity: usize, max_bound: usize) -> impl Strategy<Value = FormulaSpec> {
    (0..=max_bound, 1usize..=2).prop_flat_map(move |(bound, rows)| {
        (entries(rows * bound), entries(rows * arity)).prop_map(move |(a, b)| FormulaSpec {
            arity,
            bound,
            rows,
            a,
            b,
        })
    })
}

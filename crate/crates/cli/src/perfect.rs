//! Principal-ideal chain probes.

use ppmod::chains::{lattice_strictness, principal_ideal_chain, DccReport, Verdict};
use ppmod::{EuclideanDomain, Integers, Ring};

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Every chain `d_0 | d_1 | …` of distinct divisors of `n`, i.e. every strictly
/// descending chain of ideals `(d_0) ⊋ (d_1) ⊋ …` of `ℤ/n`.
pub fn divisor_chains(n: u64) -> Vec<Vec<u64>> {
    let ds = divisors(n);
    let mut out = Vec::new();
    let mut stack: Vec<Vec<u64>> = ds.iter().map(|&d| vec![d]).collect();
    while let Some(c) = stack.pop() {
        let last = *c.last().expect("nonempty");
        for &d in &ds {
            if d != last && d % last == 0 {
                let mut next = c.clone();
                next.push(d);
                stack.push(next);
            }
        }
        out.push(c);
    }
    out.sort();
    out
}

#[derive(Clone, Debug)]
pub struct ZmodProbe {
    pub n: u64,
    pub divisor_count: usize,
    pub chains: usize,
    /// Largest stabilization index seen.
    pub max_steps: usize,
    pub longest: Vec<u64>,
    pub all_within: bool,
}

/// Runs every ideal chain of `ℤ/n`, padded by repetition to `d(n)` steps.
pub fn probe_zmod(n: u64) -> ppmod::Result<ZmodProbe> {
    let ring = Ring::integers_mod(n)?;
    let d = divisors(n).len();
    let mut best = (0, Vec::new());
    let mut all_within = true;
    let chains = divisor_chains(n);
    for c in &chains {
        let rep = padded_report(&ring, c, d)?;
        match rep.verdict {
            Verdict::StabilizesAt(i) if i <= d && rep.verify()? => {
                if i > best.0 || best.1.is_empty() {
                    best = (i, c.clone());
                }
            }
            _ => all_within = false,
        }
    }
    Ok(ZmodProbe {
        n,
        divisor_count: d,
        chains: chains.len(),
        max_steps: best.0,
        longest: best.1,
        all_within,
    })
}

pub fn padded_report(
    ring: &Ring<Integers>,
    chain: &[u64],
    steps: usize,
) -> ppmod::Result<DccReport<Integers>> {
    let mut gens: Vec<_> = chain.iter().map(|&g| ring.int(g as i64)).collect();
    while gens.len() <= steps {
        gens.push(gens.last().expect("nonempty").clone());
    }
    let c = principal_ideal_chain(ring, &gens)?;
    lattice_strictness(&c, steps)
}

/// The chain `(1) ⊇ (r) ⊇ (r^2) ⊇ …` through `steps` steps.
pub fn power_chain<D: EuclideanDomain>(
    ring: &Ring<D>,
    r: &D::Elem,
    steps: usize,
) -> ppmod::Result<(Vec<D::Elem>, DccReport<D>)> {
    let gens: Vec<D::Elem> = (0..=steps).map(|i| ring.pow(r, i as u64)).collect();
    let c = principal_ideal_chain(ring, &gens)?;
    let rep = lattice_strictness(&c, steps)?;
    Ok((gens, rep))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chains_of_small_rings() {
        assert_eq!(
            divisor_chains(4),
            vec![
                vec![1],
                vec![1, 2],
                vec![1, 2, 4],
                vec![1, 4],
                vec![2],
                vec![2, 4],
                vec![4]
            ]
        );
        let p = probe_zmod(24).unwrap();
        assert!(p.all_within);
        assert_eq!(p.divisor_count, 8);
        assert_eq!(p.max_steps, 4);
    }

    #[test]
    fn integers_are_not_perfect() {
        let z = Ring::integers();
        let (_, rep) = power_chain(&z, &z.int(2), 32).unwrap();
        assert_eq!(rep.verdict, Verdict::StrictThrough(32));
    }
}

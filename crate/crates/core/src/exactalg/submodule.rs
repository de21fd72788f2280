use std::fmt;

use super::normal::{coordinates, reduce_against, row_hermite, smith};
use super::Card;
use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::ring::{EuclideanDomain, Ring};

/// A finitely generated submodule of `R^k`.
///
/// Two submodules are equal iff their canonical bases coincide.
#[derive(Clone)]
pub struct Submodule<D: EuclideanDomain> {
    ring: Ring<D>,
    rank: usize,
    generators: Vec<Vec<D::Elem>>,
    // Hermite basis of the preimage lattice in D^k (modulus included).
    basis: Vec<Vec<D::Elem>>,
    pivots: Vec<usize>,
}

impl<D: EuclideanDomain> Submodule<D> {
    /// The submodule of `R^rank` spanned by `generators`.
    pub fn new(ring: &Ring<D>, rank: usize, generators: Vec<Vec<D::Elem>>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.len() != rank) {
            return Err(Error::DimensionMismatch(format!(
                "generator of length {} in R^{rank}",
                g.len()
            )));
        }
        let generators: Vec<Vec<D::Elem>> = generators
            .into_iter()
            .map(|g| g.iter().map(|x| ring.reduce(x)).collect())
            .collect();
        let mut lattice = generators.clone();
        if let Some(m) = ring.modulus() {
            for i in 0..rank {
                let mut e = vec![ring.domain().zero(); rank];
                e[i] = m.clone();
                lattice.push(e);
            }
        }
        let h = row_hermite(ring.domain(), lattice, rank, false);
        let basis = h.basis();
        Ok(Submodule {
            ring: ring.clone(),
            rank,
            generators,
            basis,
            pivots: h.pivots,
        })
    }

    /// Span of the columns of `m`.
    pub fn from_columns(ring: &Ring<D>, m: &Mat<D::Elem>) -> Self {
        Submodule::new(ring, m.rows(), m.to_columns()).expect("columns have the row count")
    }

    pub fn zero(ring: &Ring<D>, rank: usize) -> Self {
        Submodule::new(ring, rank, Vec::new()).expect("no generators")
    }

    pub fn full(ring: &Ring<D>, rank: usize) -> Self {
        let d = ring.domain();
        let gens = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| if i == j { d.one() } else { d.zero() })
                    .collect()
            })
            .collect();
        Submodule::new(ring, rank, gens).expect("unit vectors")
    }

    pub fn ring(&self) -> &Ring<D> {
        &self.ring
    }

    pub fn ambient_rank(&self) -> usize {
        self.rank
    }

    /// Generators as supplied, as columns.
    pub fn generators(&self) -> Mat<D::Elem> {
        Mat::from_columns(&self.generators, self.rank).expect("generator lengths")
    }

    /// Hermite basis of the lifted lattice (rows), modulus relations included.
    pub fn basis(&self) -> &[Vec<D::Elem>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical generators as columns. Basis vectors that are just the
    /// ring's modulus relations are left out since they vanish in `R^k`.
    pub fn canonical_form(&self) -> Mat<D::Elem> {
        let cols: Vec<Vec<D::Elem>> = self
            .basis
            .iter()
            .map(|v| v.iter().map(|x| self.ring.reduce(x)).collect::<Vec<_>>())
            .filter(|v| !self.ring.is_zero_vec(v))
            .collect();
        Mat::from_columns(&cols, self.rank).expect("lengths")
    }

    /// Canonical representative of `v` modulo this submodule.
    pub fn reduce(&self, v: &[D::Elem]) -> Result<Vec<D::Elem>> {
        self.check_len(v)?;
        let mut w: Vec<D::Elem> = v.iter().map(|x| self.ring.reduce(x)).collect();
        reduce_against(self.ring.domain(), &self.basis, &self.pivots, &mut w);
        Ok(w)
    }

    pub fn contains(&self, v: &[D::Elem]) -> Result<bool> {
        let w = self.reduce(v)?;
        Ok(w.iter().all(|x| self.ring.domain().is_zero(x)))
    }

    /// Coefficients of `v` with respect to [`Submodule::basis`].
    pub fn coordinates(&self, v: &[D::Elem]) -> Result<Option<Vec<D::Elem>>> {
        self.check_len(v)?;
        Ok(coordinates(
            self.ring.domain(),
            &self.basis,
            &self.pivots,
            v,
        ))
    }

    pub fn is_zero(&self) -> bool {
        self.canonical_form().cols() == 0
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        Submodule::new(&self.ring, self.rank, gens)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let d = self.ring.domain();
        let mut stacked = self.basis.clone();
        stacked.extend(other.basis.iter().cloned());
        let h = row_hermite(d, stacked, self.rank, true);
        let n1 = self.basis.len();
        let gens = h
            .left_kernel()
            .into_iter()
            .map(|c| {
                let mut v = vec![d.zero(); self.rank];
                for (ci, row) in c[..n1].iter().zip(&self.basis) {
                    if d.is_zero(ci) {
                        continue;
                    }
                    for (vj, rj) in v.iter_mut().zip(row) {
                        *vj = d.add(vj, &d.mul(ci, rj));
                    }
                }
                v
            })
            .collect();
        Submodule::new(&self.ring, self.rank, gens)
    }

    /// `self ⊆ other`.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.check_same(other)?;
        for v in &self.basis {
            if !other.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `self ⊕ other` inside `R^(k1 + k2)`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let d = self.ring.domain();
        let k = self.rank + other.rank;
        let mut gens = Vec::new();
        for v in &self.basis {
            let mut w = v.clone();
            w.resize(k, d.zero());
            gens.push(w);
        }
        for v in &other.basis {
            let mut w = vec![d.zero(); self.rank];
            w.extend(v.iter().cloned());
            gens.push(w);
        }
        Submodule::new(&self.ring, k, gens)
    }

    /// `S^n` inside `R^(k·n)`.
    pub fn power(&self, n: usize) -> Self {
        let mut acc = Submodule::zero(&self.ring, 0);
        for _ in 0..n {
            acc = acc.direct_sum(self).expect("same ring");
        }
        acc
    }

    /// Keeps the listed coordinates (a coordinate projection).
    pub fn project(&self, keep: &[usize]) -> Result<Self> {
        if let Some(&bad) = keep.iter().find(|&&i| i >= self.rank) {
            return Err(Error::BadIndex(bad));
        }
        let gens = self
            .basis
            .iter()
            .map(|v| keep.iter().map(|&i| v[i].clone()).collect())
            .collect();
        Submodule::new(&self.ring, keep.len(), gens)
    }

    fn check_len(&self, v: &[D::Elem]) -> Result<()> {
        if v.len() != self.rank {
            return Err(Error::AmbientMismatch(v.len(), self.rank));
        }
        Ok(())
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.rank != other.rank {
            return Err(Error::AmbientMismatch(self.rank, other.rank));
        }
        Ok(())
    }
}

impl<D: EuclideanDomain> PartialEq for Submodule<D> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.rank == other.rank && self.basis == other.basis
    }
}

impl<D: EuclideanDomain> Eq for Submodule<D> {}

impl<D: EuclideanDomain> fmt::Debug for Submodule<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Submodule")
            .field("ring", &self.ring.descriptor())
            .field("rank", &self.rank)
            .field("canonical", &self.canonical_form())
            .finish()
    }
}

/// `|big / small|`, computed from the Smith form of the inclusion.
pub fn quotient_order<D: EuclideanDomain>(
    big: &Submodule<D>,
    small: &Submodule<D>,
) -> Result<Card> {
    if !small.leq(big)? {
        return Err(Error::NotContained);
    }
    let d = big.ring.domain();
    let r = big.basis.len();
    let coords: Vec<Vec<D::Elem>> = small
        .basis
        .iter()
        .map(|v| big.coordinates(v).map(|c| c.expect("contained")))
        .collect::<Result<_>>()?;
    let sf = smith(d, coords, r);
    let diag: Vec<D::Elem> = sf
        .diagonal()
        .into_iter()
        .filter(|x| !d.is_zero(x))
        .collect();
    if diag.len() < r {
        return Ok(Card::Infinite);
    }
    let mut acc = Card::one();
    for x in &diag {
        match d.residue_count(x) {
            Some(n) => acc = acc * Card::Finite(n),
            None => return Ok(Card::Infinite),
        }
    }
    Ok(acc)
}

//! Finitely presented modules, their elements and morphisms.
//!
//! Conventions: a module on `k` generators has relations stored as rows of
//! length `k`; elements are coordinate vectors over the generators, always
//! reduced to the canonical coset representative; a morphism `M → N` is a
//! `k_N × k_M` matrix whose column `j` is the image of generator `j`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::{preimage, quotient_order, row_hermite, Card, Submodule};
use crate::mat::Mat;
use crate::ppcalc::{canonical_generator, equivalent, PointedModule};
use crate::ring::{EuclideanDomain, Ring};

/// Default cap on the number of elements [`FpModule::elements`] will list.
pub const DEFAULT_ENUM_BOUND: usize = 1_000_000;

struct ModuleData<D: EuclideanDomain> {
    ring: Ring<D>,
    num_gens: usize,
    raw_relations: Vec<Vec<D::Elem>>,
    relations: Submodule<D>,
}

/// A finitely presented module `R^k / ⟨relations⟩`.
#[derive(Clone)]
pub struct FpModule<D: EuclideanDomain> {
    inner: Arc<ModuleData<D>>,
}

impl<D: EuclideanDomain> FpModule<D> {
    /// Module on `num_gens` generators subject to the given relation rows.
    pub fn from_relations(
        ring: &Ring<D>,
        num_gens: usize,
        relations: Vec<Vec<D::Elem>>,
    ) -> Result<Self> {
        let raw: Vec<Vec<D::Elem>> = relations
            .iter()
            .map(|r| r.iter().map(|x| ring.reduce(x)).collect())
            .collect();
        let sub = Submodule::new(ring, num_gens, relations)?;
        Ok(FpModule {
            inner: Arc::new(ModuleData {
                ring: ring.clone(),
                num_gens,
                raw_relations: raw,
                relations: sub,
            }),
        })
    }

    /// Module presented by a relation matrix (one relation per row).
    pub fn new(ring: &Ring<D>, num_gens: usize, relations: &Mat<D::Elem>) -> Result<Self> {
        if relations.cols() != num_gens && relations.rows() > 0 {
            return Err(Error::DimensionMismatch(format!(
                "relations have {} columns for {num_gens} generators",
                relations.cols()
            )));
        }
        Self::from_relations(ring, num_gens, relations.to_rows())
    }

    pub fn free(ring: &Ring<D>, rank: usize) -> Self {
        Self::from_relations(ring, rank, Vec::new()).expect("no relations")
    }

    pub fn zero(ring: &Ring<D>) -> Self {
        Self::free(ring, 0)
    }

    /// The cyclic module `R/I` with `I` generated by `ideal`.
    pub fn cyclic(ring: &Ring<D>, ideal: &[D::Elem]) -> Self {
        Self::from_relations(ring, 1, ideal.iter().map(|g| vec![g.clone()]).collect())
            .expect("length-one rows")
    }

    pub fn ring(&self) -> &Ring<D> {
        &self.inner.ring
    }

    pub fn num_gens(&self) -> usize {
        self.inner.num_gens
    }

    /// The relation submodule of `R^k`.
    pub fn relations(&self) -> &Submodule<D> {
        &self.inner.relations
    }

    /// Relations exactly as supplied at construction.
    pub fn raw_relations(&self) -> &[Vec<D::Elem>] {
        &self.inner.raw_relations
    }

    /// Canonical relation rows (nonzero in the ring).
    pub fn relation_matrix(&self) -> Mat<D::Elem> {
        self.relations().canonical_form().transpose()
    }

    pub fn elem(&self, coords: Vec<D::Elem>) -> Result<ModElem<D>> {
        let coords = self.relations().reduce(&coords)?;
        Ok(ModElem {
            module: self.clone(),
            coords,
        })
    }

    pub fn zero_elem(&self) -> ModElem<D> {
        let z = self.ring().zero();
        self.elem(vec![z; self.num_gens()]).expect("right length")
    }

    pub fn generator(&self, i: usize) -> Result<ModElem<D>> {
        if i >= self.num_gens() {
            return Err(Error::BadIndex(i));
        }
        let mut v = vec![self.ring().zero(); self.num_gens()];
        v[i] = self.ring().one();
        self.elem(v)
    }

    pub fn generators(&self) -> Vec<ModElem<D>> {
        (0..self.num_gens())
            .map(|i| self.generator(i).expect("in range"))
            .collect()
    }

    /// `|M|`.
    pub fn order(&self) -> Card {
        quotient_order(
            &Submodule::full(self.ring(), self.num_gens()),
            self.relations(),
        )
        .expect("relations are contained")
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_finite()
    }

    /// `M ≅ D^free_rank ⊕ ⊕ D/(t_i)` with nonunit canonical `t_i`, `t_i | t_{i+1}`.
    pub fn structure(&self) -> ModuleStructure<D::Elem> {
        let d = self.ring().domain();
        let basis = self.relations().basis().to_vec();
        let sf = crate::exactalg::normal_smith(d, basis, self.num_gens());
        let diag = sf.diagonal();
        let nonzero: Vec<D::Elem> = diag.into_iter().filter(|x| !d.is_zero(x)).collect();
        let free_rank = self.num_gens() - nonzero.len();
        let torsion = nonzero.into_iter().filter(|x| !d.is_unit(x)).collect();
        ModuleStructure { torsion, free_rank }
    }

    /// Every element exactly once, when `M` is finite with at most `bound` elements.
    pub fn elements(&self, bound: usize) -> Result<ElementIter<D>> {
        let d = self.ring().domain();
        let k = self.num_gens();
        let basis = self.relations().basis().to_vec();
        let sf = crate::exactalg::normal_smith(d, basis, k);
        let diag = sf.diagonal();
        let mut radices: Vec<Vec<D::Elem>> = Vec::with_capacity(k);
        let mut total: usize = 1;
        for i in 0..k {
            let di = diag.get(i).cloned().unwrap_or_else(|| d.zero());
            if d.is_zero(&di) {
                return Err(Error::TooLarge);
            }
            let res = d.residues(&di, bound).ok_or(Error::TooLarge)?;
            total = total
                .checked_mul(res.len())
                .filter(|&t| t <= bound)
                .ok_or(Error::TooLarge)?;
            radices.push(res);
        }
        // rows of Q^{-1}: coordinates in Smith basis back to generator coordinates
        let q_rows = sf.q.clone();
        let inv = row_hermite(d, q_rows, k, true);
        let q_inv = inv.transform.expect("tracked");
        Ok(ElementIter {
            module: self.clone(),
            radices,
            q_inv,
            counter: vec![0; k],
            remaining: total,
        })
    }

    /// Direct sum with injections and projections.
    pub fn direct_sum(&self, other: &Self) -> Result<DirectSum<D>> {
        DirectSum::of(self.ring(), &[self.clone(), other.clone()])
    }
}

impl<D: EuclideanDomain> PartialEq for FpModule<D> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.num_gens() == other.num_gens() && self.relations() == other.relations())
    }
}

impl<D: EuclideanDomain> Eq for FpModule<D> {}

impl<D: EuclideanDomain> fmt::Debug for FpModule<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FpModule")
            .field("ring", &self.ring().descriptor())
            .field("num_gens", &self.num_gens())
            .field("relations", &self.relation_matrix())
            .finish()
    }
}

/// Invariant-factor description of a module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleStructure<E> {
    pub torsion: Vec<E>,
    pub free_rank: usize,
}

pub struct ElementIter<D: EuclideanDomain> {
    module: FpModule<D>,
    radices: Vec<Vec<D::Elem>>,
    q_inv: Vec<Vec<D::Elem>>,
    counter: Vec<usize>,
    remaining: usize,
}

impl<D: EuclideanDomain> Iterator for ElementIter<D> {
    type Item = ModElem<D>;

    fn next(&mut self) -> Option<ModElem<D>> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let ring = self.module.ring();
        let d = ring.domain();
        let k = self.module.num_gens();
        let mut v = vec![d.zero(); k];
        for (i, &c) in self.counter.iter().enumerate() {
            let w = &self.radices[i][c];
            if d.is_zero(w) {
                continue;
            }
            for (vj, qj) in v.iter_mut().zip(&self.q_inv[i]) {
                *vj = d.add(vj, &d.mul(w, qj));
            }
        }
        for i in 0..k {
            self.counter[i] += 1;
            if self.counter[i] < self.radices[i].len() {
                break;
            }
            self.counter[i] = 0;
        }
        Some(self.module.elem(v).expect("right length"))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining, Some(self.remaining))
    }
}

/// An element of a finitely presented module.
#[derive(Clone)]
pub struct ModElem<D: EuclideanDomain> {
    module: FpModule<D>,
    coords: Vec<D::Elem>,
}

impl<D: EuclideanDomain> ModElem<D> {
    pub fn module(&self) -> &FpModule<D> {
        &self.module
    }

    /// Canonical coordinates over the generators.
    pub fn coords(&self) -> &[D::Elem] {
        &self.coords
    }

    fn same_module(&self, other: &Self) -> Result<()> {
        if self.module != other.module {
            return Err(Error::ModuleMismatch);
        }
        Ok(())
    }

    /// Equality of elements; errors when they live in different modules.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        self.same_module(other)?;
        Ok(self.coords == other.coords)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_module(other)?;
        let r = self.module.ring();
        let v = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| r.add(a, b))
            .collect();
        self.module.elem(v)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let r = self.module.ring();
        self.module
            .elem(self.coords.iter().map(|a| r.neg(a)).collect())
            .expect("right length")
    }

    pub fn scalar_mul(&self, s: &D::Elem) -> Self {
        let r = self.module.ring();
        self.module
            .elem(self.coords.iter().map(|a| r.mul(s, a)).collect())
            .expect("right length")
    }

    pub fn is_zero(&self) -> bool {
        self.module.ring().is_zero_vec(&self.coords)
    }

    /// Order of the cyclic submodule generated by this element.
    pub fn order(&self) -> Card {
        let rel = self.module.relations();
        let span = Submodule::new(
            self.module.ring(),
            self.module.num_gens(),
            vec![self.coords.clone()],
        )
        .and_then(|s| s.sum(rel))
        .expect("same ambient");
        quotient_order(&span, rel).expect("relations inside span")
    }
}

impl<D: EuclideanDomain> PartialEq for ModElem<D> {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.module == other.module
    }
}

impl<D: EuclideanDomain> Eq for ModElem<D> {}

impl<D: EuclideanDomain> Hash for ModElem<D> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl<D: EuclideanDomain> fmt::Debug for ModElem<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModElem{:?}", self.coords)
    }
}

/// Outcome of checking candidate morphism data.
#[derive(Clone, Debug)]
pub enum MorphismCheck<D: EuclideanDomain> {
    Accepted(ModMorphism<D>),
    /// A source relation whose image is not a relation of the target.
    Rejected {
        relation: Vec<D::Elem>,
        image: Vec<D::Elem>,
    },
}

/// A module homomorphism between finitely presented modules.
#[derive(Clone)]
pub struct ModMorphism<D: EuclideanDomain> {
    source: FpModule<D>,
    target: FpModule<D>,
    matrix: Mat<D::Elem>,
}

/// Accepts `matrix` (column `j` = image of source generator `j`) iff every
/// source relation maps into the target relations.
pub fn check_welldefined<D: EuclideanDomain>(
    source: &FpModule<D>,
    target: &FpModule<D>,
    matrix: &Mat<D::Elem>,
) -> Result<MorphismCheck<D>> {
    if source.ring() != target.ring() {
        return Err(Error::RingMismatch);
    }
    if matrix.rows() != target.num_gens() || matrix.cols() != source.num_gens() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix for a map from {} to {} generators",
            matrix.rows(),
            matrix.cols(),
            source.num_gens(),
            target.num_gens()
        )));
    }
    let ring = source.ring();
    let matrix = ring.reduce_mat(matrix);
    for rel in source.relations().basis() {
        let image = ring.mat_vec(&matrix, rel)?;
        if !target.relations().contains(&image)? {
            return Ok(MorphismCheck::Rejected {
                relation: rel.iter().map(|x| ring.reduce(x)).collect(),
                image,
            });
        }
    }
    Ok(MorphismCheck::Accepted(ModMorphism {
        source: source.clone(),
        target: target.clone(),
        matrix,
    }))
}

impl<D: EuclideanDomain> ModMorphism<D> {
    /// Like [`check_welldefined`], turning a rejection into an error.
    pub fn new(source: &FpModule<D>, target: &FpModule<D>, matrix: &Mat<D::Elem>) -> Result<Self> {
        match check_welldefined(source, target, matrix)? {
            MorphismCheck::Accepted(m) => Ok(m),
            MorphismCheck::Rejected { relation, .. } => Err(Error::Precondition(format!(
                "map is not well defined on relation {relation:?}"
            ))),
        }
    }

    /// The morphism sending generator `j` of `source` to `images[j]`.
    pub fn from_images(
        source: &FpModule<D>,
        target: &FpModule<D>,
        images: &[ModElem<D>],
    ) -> Result<Self> {
        if images.len() != source.num_gens() {
            return Err(Error::DimensionMismatch(format!(
                "{} images for {} generators",
                images.len(),
                source.num_gens()
            )));
        }
        if images.iter().any(|e| e.module() != target) {
            return Err(Error::ModuleMismatch);
        }
        let cols: Vec<Vec<D::Elem>> = images.iter().map(|e| e.coords().to_vec()).collect();
        let m = Mat::from_columns(&cols, target.num_gens())?;
        Self::new(source, target, &m)
    }

    pub fn identity(m: &FpModule<D>) -> Self {
        ModMorphism {
            source: m.clone(),
            target: m.clone(),
            matrix: m.ring().identity_mat(m.num_gens()),
        }
    }

    pub fn source(&self) -> &FpModule<D> {
        &self.source
    }

    pub fn target(&self) -> &FpModule<D> {
        &self.target
    }

    pub fn matrix(&self) -> &Mat<D::Elem> {
        &self.matrix
    }

    pub fn apply(&self, x: &ModElem<D>) -> Result<ModElem<D>> {
        if x.module() != &self.source {
            return Err(Error::ModuleMismatch);
        }
        let v = self.source.ring().mat_vec(&self.matrix, x.coords())?;
        self.target.elem(v)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Self) -> Result<Self> {
        if self.target != next.source {
            return Err(Error::ModuleMismatch);
        }
        let matrix = self.source.ring().mat_mul(&next.matrix, &self.matrix)?;
        Ok(ModMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            matrix,
        })
    }

    /// Kernel-lattice test: the preimage of the target relations must not
    /// exceed the source relations.
    pub fn is_injective(&self) -> bool {
        let ring = self.source.ring();
        let pre = preimage(ring, &self.matrix, self.target.relations()).expect("shapes match");
        pre.leq(self.source.relations()).expect("same ambient")
    }

    /// Injectivity by listing the elements of a finite source.
    pub fn is_injective_by_enumeration(&self, bound: usize) -> Result<bool> {
        for x in self.source.elements(bound)? {
            if !x.is_zero() && self.apply(&x)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether this injective map preserves pp types: the canonical pp
    /// generator of the source generators must be equivalent to that of
    /// their images.
    pub fn is_pure_embedding(&self) -> Result<bool> {
        if !self.is_injective() {
            return Err(Error::NotInjective);
        }
        let gens = self.source.generators();
        let images = gens
            .iter()
            .map(|g| self.apply(g))
            .collect::<Result<Vec<_>>>()?;
        let src = PointedModule::new(self.source.clone(), gens)?;
        let dst = PointedModule::new(self.target.clone(), images)?;
        equivalent(&canonical_generator(&src), &canonical_generator(&dst))
    }

    /// `h` applied coordinatewise to a subgroup of `source^n`, giving a subgroup of `target^n`.
    pub fn image_of_power(&self, s: &Submodule<D>, n: usize) -> Result<Submodule<D>> {
        let ring = self.source.ring();
        let mut big = ring.zero_mat(0, 0);
        for _ in 0..n {
            big = ring.block_diag(&big, &self.matrix);
        }
        let img = crate::exactalg::image(ring, &big, s)?;
        img.sum(&self.target.relations().power(n))
    }
}

impl<D: EuclideanDomain> fmt::Debug for ModMorphism<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModMorphism")
            .field("matrix", &self.matrix)
            .finish()
    }
}

impl<D: EuclideanDomain> PartialEq for ModMorphism<D> {
    fn eq(&self, other: &Self) -> bool {
        if self.source != other.source || self.target != other.target {
            return false;
        }
        // equal as maps: images of generators agree in the target
        self.source
            .generators()
            .iter()
            .all(|g| self.apply(g).ok() == other.apply(g).ok())
    }
}

/// A finite direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum<D: EuclideanDomain> {
    pub module: FpModule<D>,
    pub injections: Vec<ModMorphism<D>>,
    pub projections: Vec<ModMorphism<D>>,
}

impl<D: EuclideanDomain> DirectSum<D> {
    /// Block-diagonal presentation of `⊕ summands`.
    pub fn of(ring: &Ring<D>, summands: &[FpModule<D>]) -> Result<Self> {
        if summands.iter().any(|m| m.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        let total: usize = summands.iter().map(|m| m.num_gens()).sum();
        let d = ring.domain();
        let mut rels = Vec::new();
        let mut offset = 0;
        for m in summands {
            for r in m.raw_relations() {
                let mut row = vec![d.zero(); total];
                row[offset..offset + m.num_gens()].clone_from_slice(r);
                rels.push(row);
            }
            offset += m.num_gens();
        }
        let module = FpModule::from_relations(ring, total, rels)?;
        let mut injections = Vec::new();
        let mut projections = Vec::new();
        let mut offset = 0;
        for m in summands {
            let k = m.num_gens();
            let mut inj = ring.zero_mat(total, k);
            let mut proj = ring.zero_mat(k, total);
            for j in 0..k {
                inj.set(offset + j, j, ring.one());
                proj.set(j, offset + j, ring.one());
            }
            injections.push(ModMorphism::new(m, &module, &inj)?);
            projections.push(ModMorphism::new(&module, m, &proj)?);
            offset += k;
        }
        Ok(DirectSum {
            module,
            injections,
            projections,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Integers;

    fn z() -> Ring<Integers> {
        Ring::integers()
    }

    #[test]
    fn cyclic_examples() {
        let z = z();
        let m = FpModule::cyclic(&z, &z.vector(&[4]));
        assert_eq!(m.order(), Card::from(4));
        assert_eq!(FpModule::cyclic(&z, &[]).order(), Card::Infinite);
        let m = FpModule::cyclic(&z, &z.vector(&[2, 4]));
        assert_eq!(m.relation_matrix(), z.mat(&[&[2]]));
    }

    #[test]
    fn element_arithmetic() {
        let z = z();
        let z4 = FpModule::cyclic(&z, &z.vector(&[4]));
        let two = z4.elem(z.vector(&[2])).unwrap();
        assert!(two.add(&two).unwrap().is_zero());
        let z6 = FpModule::cyclic(&z, &z.vector(&[6]));
        assert!(z6
            .elem(z.vector(&[8]))
            .unwrap()
            .equals(&z6.elem(z.vector(&[2])).unwrap())
            .unwrap());
        assert_eq!(two.equals(&z6.zero_elem()), Err(Error::ModuleMismatch));
        assert_eq!(two.order(), Card::from(2));
    }

    #[test]
    fn direct_sum_injections_have_disjoint_support() {
        let z = z();
        let a = FpModule::cyclic(&z, &z.vector(&[2]));
        let b = FpModule::cyclic(&z, &z.vector(&[4]));
        let s = a.direct_sum(&b).unwrap();
        let x = s.injections[0].apply(&a.generator(0).unwrap()).unwrap();
        let y = s.injections[1].apply(&b.generator(0).unwrap()).unwrap();
        assert_eq!(x.coords(), &z.vector(&[1, 0])[..]);
        assert_eq!(y.coords(), &z.vector(&[0, 1])[..]);
        assert_eq!(s.module.order(), Card::from(8));
    }

    #[test]
    fn welldefinedness_examples() {
        let z = z();
        let z2 = FpModule::cyclic(&z, &z.vector(&[2]));
        let z4 = FpModule::cyclic(&z, &z.vector(&[4]));
        match check_welldefined(&z2, &z4, &z.mat(&[&[1]])).unwrap() {
            MorphismCheck::Rejected { relation, image } => {
                assert_eq!(relation, z.vector(&[2]));
                assert_eq!(image, z.vector(&[2]));
            }
            MorphismCheck::Accepted(_) => panic!("1 -> 1 must be rejected"),
        }
        assert!(matches!(
            check_welldefined(&z2, &z4, &z.mat(&[&[2]])).unwrap(),
            MorphismCheck::Accepted(_)
        ));
        assert!(matches!(
            check_welldefined(&z4, &z4, &z.identity_mat(1)).unwrap(),
            MorphismCheck::Accepted(_)
        ));
    }

    #[test]
    fn enumeration_counts() {
        let z = z();
        assert_eq!(
            FpModule::cyclic(&z, &z.vector(&[4]))
                .elements(100)
                .unwrap()
                .count(),
            4
        );
        assert!(matches!(
            FpModule::free(&z, 1).elements(100),
            Err(Error::TooLarge)
        ));
        let s = DirectSum::of(
            &z,
            &[
                FpModule::cyclic(&z, &z.vector(&[2])),
                FpModule::cyclic(&z, &z.vector(&[3])),
            ],
        )
        .unwrap();
        let elems: Vec<_> = s.module.elements(100).unwrap().collect();
        assert_eq!(elems.len(), 6);
        let distinct: std::collections::HashSet<_> =
            elems.iter().map(|e| e.coords().to_vec()).collect();
        assert_eq!(distinct.len(), 6);
        assert!(matches!(
            FpModule::cyclic(&z, &z.vector(&[1000])).elements(10),
            Err(Error::TooLarge)
        ));
    }

    #[test]
    fn injectivity_routes_agree() {
        let z = z();
        let z2 = FpModule::cyclic(&z, &z.vector(&[2]));
        let z4 = FpModule::cyclic(&z, &z.vector(&[4]));
        let f = ModMorphism::new(&z2, &z4, &z.mat(&[&[2]])).unwrap();
        assert!(f.is_injective());
        assert!(f.is_injective_by_enumeration(100).unwrap());
        let g = ModMorphism::new(&z4, &z2, &z.mat(&[&[1]])).unwrap();
        assert!(!g.is_injective());
        assert!(!g.is_injective_by_enumeration(100).unwrap());
    }

    #[test]
    fn purity_examples() {
        let z = z();
        let zz = FpModule::free(&z, 1);
        let twice = ModMorphism::new(&zz, &zz, &z.mat(&[&[2]])).unwrap();
        assert_eq!(twice.is_pure_embedding(), Ok(false));
        let z2 = FpModule::cyclic(&z, &z.vector(&[2]));
        let z4 = FpModule::cyclic(&z, &z.vector(&[4]));
        let inc = ModMorphism::new(&z2, &z4, &z.mat(&[&[2]])).unwrap();
        assert_eq!(inc.is_pure_embedding(), Ok(false));
        let s = z2.direct_sum(&z4).unwrap();
        assert_eq!(s.injections[0].is_pure_embedding(), Ok(true));
        let proj = &s.projections[1];
        assert_eq!(proj.is_pure_embedding(), Err(Error::NotInjective));
    }

    #[test]
    fn composition_is_associative() {
        let z = z();
        let m = FpModule::cyclic(&z, &z.vector(&[12]));
        let f = ModMorphism::new(&m, &m, &z.mat(&[&[5]])).unwrap();
        let g = ModMorphism::new(&m, &m, &z.mat(&[&[7]])).unwrap();
        let h = ModMorphism::new(&m, &m, &z.mat(&[&[2]])).unwrap();
        let left = f.then(&g).unwrap().then(&h).unwrap();
        let right = f.then(&g.then(&h).unwrap()).unwrap();
        assert_eq!(left, right);
        assert_eq!(f.then(&ModMorphism::identity(&m)).unwrap(), f);
    }
}

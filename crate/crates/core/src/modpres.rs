//! Quotient rings `k[x]/J` and finitely presented modules `coker(A)` over
//! them, with the module constructions the sequence tests need.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::ext::ExtInt;
use crate::groebner::{buchberger, ideal_basis, ideal_relations, kernel, FreeModuleElement, GroebnerBasis};
use crate::poly::{PolyMatrix, PolyRing, Polynomial};

/// `R = k[x]/J`, carrying a reduced Gröbner basis of `J`.
#[derive(Clone, Debug)]
pub struct PolyRingPresentation {
    poly: Arc<PolyRing>,
    ideal_gens: Vec<Polynomial>,
    ideal_gb: GroebnerBasis,
}

impl PolyRingPresentation {
    pub fn new(poly: &Arc<PolyRing>, ideal: &[Polynomial]) -> Result<Arc<Self>> {
        let ideal_gb = ideal_basis(poly, ideal)?;
        let ideal_gens = ideal.iter().filter(|p| !p.is_zero()).cloned().collect();
        Ok(Arc::new(PolyRingPresentation { poly: poly.clone(), ideal_gens, ideal_gb }))
    }

    /// The polynomial ring itself.
    pub fn polynomial(poly: &Arc<PolyRing>) -> Arc<Self> {
        Self::new(poly, &[]).expect("empty ideal")
    }

    pub fn poly_ring(&self) -> &Arc<PolyRing> {
        &self.poly
    }

    pub fn ideal_gens(&self) -> &[Polynomial] {
        &self.ideal_gens
    }

    pub fn ideal_gb(&self) -> &GroebnerBasis {
        &self.ideal_gb
    }

    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        self.ideal_gb.reduce_poly(p)
    }

    /// Parses and reduces modulo `J`.
    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        Ok(self.reduce(&self.poly.parse(text)?))
    }

    pub fn dimension(&self) -> ExtInt {
        self.ideal_gb.dimension()
    }

    pub fn is_zero_ring(&self) -> bool {
        self.ideal_gb.is_unit()
    }

    /// Whether `J` is generated by homogeneous polynomials.
    pub fn is_homogeneous(&self) -> bool {
        self.ideal_gb.polys().iter().all(Polynomial::is_homogeneous)
    }

    /// `R[names]`, with `J` read in the larger ring.
    pub fn extend(&self, names: &[String]) -> Result<Arc<Self>> {
        let bigger = self.poly.extend(names)?;
        let ideal: Vec<Polynomial> = self.ideal_gens.iter().map(|p| p.embed(&bigger)).collect();
        Self::new(&bigger, &ideal)
    }

    /// `R/(J + extra)`.
    pub fn quotient(&self, extra: &[Polynomial]) -> Result<Arc<Self>> {
        let mut ideal = self.ideal_gens.clone();
        ideal.extend(extra.iter().cloned());
        Self::new(&self.poly, &ideal)
    }
}

impl PartialEq for PolyRingPresentation {
    fn eq(&self, o: &Self) -> bool {
        self.poly == o.poly && self.ideal_gb.polys() == o.ideal_gb.polys()
    }
}

impl fmt::Display for PolyRingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.poly.field(), self.poly.vars().join(","))?;
        if !self.ideal_gens.is_empty() {
            let gens: Vec<String> = self.ideal_gens.iter().map(|p| p.to_string()).collect();
            write!(f, "/({})", gens.join(", "))?;
        }
        Ok(())
    }
}

/// An ordered list of ring elements, stored reduced modulo `J`.
#[derive(Clone, Debug, PartialEq)]
pub struct RingSequence {
    ring: Arc<PolyRingPresentation>,
    elements: Vec<Polynomial>,
}

impl RingSequence {
    pub fn new(ring: &Arc<PolyRingPresentation>, elements: &[Polynomial]) -> Result<Self> {
        let mut out = Vec::with_capacity(elements.len());
        for p in elements {
            if **p.ring() != **ring.poly_ring() {
                return Err(Error::RingMismatch { left: ring.poly_ring().to_string(), right: p.ring().to_string() });
            }
            out.push(ring.reduce(p));
        }
        Ok(RingSequence { ring: ring.clone(), elements: out })
    }

    pub fn parse(ring: &Arc<PolyRingPresentation>, texts: &[&str]) -> Result<Self> {
        let els = texts.iter().map(|t| ring.parse(t)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, &els)
    }

    pub fn empty(ring: &Arc<PolyRingPresentation>) -> Self {
        RingSequence { ring: ring.clone(), elements: Vec::new() }
    }

    pub fn ring(&self) -> &Arc<PolyRingPresentation> {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn prefix(&self, k: usize) -> RingSequence {
        RingSequence { ring: self.ring.clone(), elements: self.elements[..k].to_vec() }
    }

    /// `x_1^n, ..., x_l^n`, reduced.
    pub fn power(&self, n: u32) -> RingSequence {
        let elements = self.elements.iter().map(|p| self.ring.reduce(&p.pow(n))).collect();
        RingSequence { ring: self.ring.clone(), elements }
    }

    /// The same elements read in an extension ring of `ring`.
    pub fn embed(&self, target: &Arc<PolyRingPresentation>) -> RingSequence {
        let elements = self.elements.iter().map(|p| target.reduce(&p.embed(target.poly_ring()))).collect();
        RingSequence { ring: target.clone(), elements }
    }
}

impl fmt::Display for RingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let els: Vec<String> = self.elements.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", els.join(", "))
    }
}

/// `M = R^g / <relations>`; the relation basis also contains `J * R^g`.
#[derive(Clone, Debug)]
pub struct ModulePresentation {
    ring: Arc<PolyRingPresentation>,
    gens: usize,
    relations: Vec<FreeModuleElement>,
    rel_gb: GroebnerBasis,
    ann: OnceLock<GroebnerBasis>,
    ann_primes: OnceLock<Vec<GroebnerBasis>>,
}

fn reduce_components(ring: &PolyRingPresentation, v: &FreeModuleElement) -> FreeModuleElement {
    v.map_components(|p| ring.reduce(p))
}

/// Presentation of `(K + B)/B` for `K` generated by `gens` and `B` by the
/// basis `rel_gb`, both inside `S^rank`. Generators already in `B` are dropped.
pub fn subquotient(
    ring: &Arc<PolyRingPresentation>,
    gens: &[FreeModuleElement],
    rel_gb: &GroebnerBasis,
) -> Result<(ModulePresentation, Vec<FreeModuleElement>)> {
    let mut kept: Vec<FreeModuleElement> = Vec::new();
    for g in gens {
        let r = rel_gb.reduce(g);
        if !r.is_zero() && !kept.contains(&r) {
            kept.push(r);
        }
    }
    let rels = kernel(ring.poly_ring(), rel_gb.rank(), &kept, rel_gb.elements())?;
    let m = ModulePresentation::new(ring, kept.len(), rels)?;
    Ok((m, kept))
}

impl ModulePresentation {
    pub fn new(ring: &Arc<PolyRingPresentation>, gens: usize, relations: Vec<FreeModuleElement>) -> Result<Self> {
        let poly = ring.poly_ring();
        let mut rels: Vec<FreeModuleElement> = Vec::new();
        for r in &relations {
            if r.rank() != gens {
                return Err(Error::ShapeMismatch(format!("relation of rank {} for {gens} generators", r.rank())));
            }
            if **r.ring() != **poly {
                return Err(Error::RingMismatch { left: poly.to_string(), right: r.ring().to_string() });
            }
            let r = reduce_components(ring, r);
            if !r.is_zero() && !rels.contains(&r) {
                rels.push(r);
            }
        }
        let mut all = rels.clone();
        all.extend(ideal_relations(ring.ideal_gb(), gens));
        let rel_gb = buchberger(poly, gens, &all)?;
        Ok(ModulePresentation {
            ring: ring.clone(),
            gens,
            relations: rels,
            rel_gb,
            ann: OnceLock::new(),
            ann_primes: OnceLock::new(),
        })
    }

    /// The cokernel of a `g x c` matrix.
    pub fn from_matrix(ring: &Arc<PolyRingPresentation>, a: &PolyMatrix) -> Result<Self> {
        let cols = a
            .columns()
            .iter()
            .map(|c| FreeModuleElement::from_components(ring.poly_ring(), c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, a.rows(), cols)
    }

    pub fn free(ring: &Arc<PolyRingPresentation>, rank: usize) -> Self {
        Self::new(ring, rank, Vec::new()).expect("free module")
    }

    /// `R/I` as a cyclic module.
    pub fn cyclic(ring: &Arc<PolyRingPresentation>, ideal: &[Polynomial]) -> Result<Self> {
        let rels = ideal.iter().map(|p| FreeModuleElement::from_poly_at(p.clone(), 1, 0)).collect();
        Self::new(ring, 1, rels)
    }

    pub fn zero(ring: &Arc<PolyRingPresentation>) -> Self {
        Self::free(ring, 0)
    }

    pub fn ring(&self) -> &Arc<PolyRingPresentation> {
        &self.ring
    }

    pub fn poly_ring(&self) -> &Arc<PolyRing> {
        self.ring.poly_ring()
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn relations(&self) -> &[FreeModuleElement] {
        &self.relations
    }

    pub fn rel_gb(&self) -> &GroebnerBasis {
        &self.rel_gb
    }

    /// The relation matrix `A` (one column per relation).
    pub fn matrix(&self) -> PolyMatrix {
        let cols: Vec<Vec<Polynomial>> = self.relations.iter().map(|r| r.components()).collect();
        PolyMatrix::from_columns(self.poly_ring(), self.gens, &cols).expect("consistent shape")
    }

    pub fn is_zero(&self) -> bool {
        self.rel_gb.is_full()
    }

    /// Normal form of a vector modulo the relations.
    pub fn reduce(&self, v: &FreeModuleElement) -> FreeModuleElement {
        self.rel_gb.reduce(v)
    }

    /// Whether `v` represents zero in `M`.
    pub fn is_zero_element(&self, v: &FreeModuleElement) -> bool {
        self.rel_gb.contains(v)
    }

    /// Same module up to identical reduced relation bases.
    pub fn same_presentation(&self, o: &ModulePresentation) -> bool {
        self.gens == o.gens && *self.ring == *o.ring && self.rel_gb.elements() == o.rel_gb.elements()
    }

    /// `M / xM`.
    pub fn quotient_by_sequence(&self, x: &RingSequence) -> Result<ModulePresentation> {
        if **x.ring().poly_ring() != **self.poly_ring() {
            return Err(Error::RingMismatch {
                left: self.poly_ring().to_string(),
                right: x.ring().poly_ring().to_string(),
            });
        }
        let mut rels = self.relations.clone();
        for p in x.elements() {
            for j in 0..self.gens {
                rels.push(FreeModuleElement::from_poly_at(p.clone(), self.gens, j));
            }
        }
        Self::new(&self.ring, self.gens, rels)
    }

    /// Representatives (reduced, nonzero in `M`) of generators of `(0 :_M f)`.
    pub fn scalar_kernel_gens(&self, f: &Polynomial) -> Result<Vec<FreeModuleElement>> {
        let poly = self.poly_ring();
        let cols: Vec<FreeModuleElement> =
            (0..self.gens).map(|j| FreeModuleElement::from_poly_at(f.clone(), self.gens, j)).collect();
        let ker = kernel(poly, self.gens, &cols, self.rel_gb.elements())?;
        let mut out: Vec<FreeModuleElement> = Vec::new();
        for k in ker {
            let r = self.reduce(&k);
            if !r.is_zero() && !out.contains(&r) {
                out.push(r);
            }
        }
        Ok(out)
    }

    /// `(0 :_M f)` re-presented as a cokernel.
    pub fn scalar_kernel(&self, f: &Polynomial) -> Result<ModulePresentation> {
        let gens = self.scalar_kernel_gens(f)?;
        Ok(subquotient(&self.ring, &gens, &self.rel_gb)?.0)
    }

    /// The submodule of `M` generated by the given vectors.
    pub fn submodule(&self, els: &[FreeModuleElement]) -> Result<ModulePresentation> {
        Ok(subquotient(&self.ring, els, &self.rel_gb)?.0)
    }

    /// Reduced Gröbner basis of `Ann(M)` as an ideal of the polynomial ring;
    /// it contains `J`.
    pub fn annihilator_ideal(&self) -> Result<GroebnerBasis> {
        if let Some(a) = self.ann.get() {
            return Ok(a.clone());
        }
        let a = self.compute_annihilator()?;
        Ok(self.ann.get_or_init(|| a).clone())
    }

    /// Lazily filled cache for the minimal primes of `Ann(M)`.
    pub(crate) fn annihilator_primes_cell(&self) -> &OnceLock<Vec<GroebnerBasis>> {
        &self.ann_primes
    }

    fn compute_annihilator(&self) -> Result<GroebnerBasis> {
        let poly = self.poly_ring();
        let g = self.gens;
        if g == 0 {
            return ideal_basis(poly, &[poly.one()]);
        }
        if g == 1 {
            return ideal_basis(poly, &self.rel_gb.polys());
        }
        let total = g * g;
        let mut v = FreeModuleElement::zero(poly, total);
        for j in 0..g {
            v = v.add(&FreeModuleElement::unit(poly, total, j * g + j))?;
        }
        let mut rels = Vec::with_capacity(g * self.rel_gb.elements().len());
        for j in 0..g {
            for r in self.rel_gb.elements() {
                rels.push(r.shift(j * g, total));
            }
        }
        let ker = kernel(poly, total, &[v], &rels)?;
        let gens: Vec<Polynomial> = ker.iter().map(|k| k.component(0)).collect();
        ideal_basis(poly, &gens)
    }

    /// Generators of `Ann(M)` in `R` (reduced modulo `J`).
    pub fn annihilator(&self) -> Result<Vec<Polynomial>> {
        let gb = self.annihilator_ideal()?;
        let mut out: Vec<Polynomial> = Vec::new();
        for p in gb.polys() {
            let r = self.ring.reduce(&p);
            if !r.is_zero() && !out.contains(&r) {
                out.push(r);
            }
        }
        if gb.is_unit() {
            return Ok(vec![self.poly_ring().one()]);
        }
        Ok(out)
    }

    /// Krull dimension of `M`; `-inf` for the zero module.
    pub fn dimension(&self) -> Result<ExtInt> {
        Ok(self.annihilator_ideal()?.dimension())
    }

    /// A variable name not yet used by the ring, `t` if possible.
    pub fn fresh_variable(&self) -> String {
        self.poly_ring().fresh_name(&["t"], "t", &[])
    }

    /// `M ⊗_R R[t]` over `R[t]`.
    pub fn extend_to_polynomial_ring(&self) -> Result<ModulePresentation> {
        let name = self.fresh_variable();
        let ring = self.ring.extend(&[name])?;
        self.base_change(&ring)
    }

    /// The same presentation read over an extension ring whose first
    /// variables are those of `R`.
    pub fn base_change(&self, ring: &Arc<PolyRingPresentation>) -> Result<ModulePresentation> {
        let map: Vec<usize> = (0..self.poly_ring().nvars()).collect();
        let rels = self.relations.iter().map(|r| r.map_vars(ring.poly_ring(), &map)).collect();
        Self::new(ring, self.gens, rels)
    }

    /// `M ⊕ N`.
    pub fn direct_sum(&self, o: &ModulePresentation) -> Result<ModulePresentation> {
        if *self.ring != *o.ring {
            return Err(Error::RingMismatch { left: self.ring.to_string(), right: o.ring.to_string() });
        }
        let g = self.gens + o.gens;
        let mut rels: Vec<FreeModuleElement> = self.relations.iter().map(|r| r.shift(0, g)).collect();
        rels.extend(o.relations.iter().map(|r| r.shift(self.gens, g)));
        Self::new(&self.ring, g, rels)
    }

    /// Whether `J` and all relations are homogeneous with generators in degree 0.
    pub fn is_graded(&self) -> bool {
        let shifts = vec![0; self.gens];
        self.ring.is_homogeneous() && self.relations.iter().all(|r| r.homogeneous_degree(&shifts).is_some())
    }
}

impl fmt::Display for ModulePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens == 0 {
            return write!(f, "0");
        }
        write!(f, "coker over {} with {} generator(s)", self.ring, self.gens)?;
        if self.relations.is_empty() {
            return write!(f, ", free");
        }
        let rels: Vec<String> = self.relations.iter().map(|r| r.to_string()).collect();
        write!(f, ", relations {}", rels.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Field, OrderKind};

    fn plane() -> Arc<PolyRingPresentation> {
        PolyRingPresentation::polynomial(&PolyRing::new(Field::Rational, &["x", "y"], OrderKind::Grevlex).unwrap())
    }

    fn ps(r: &PolyRingPresentation, src: &[&str]) -> Vec<Polynomial> {
        src.iter().map(|s| r.parse(s).unwrap()).collect()
    }

    #[test]
    fn quotients_by_sequences() {
        let r = plane();
        let m = ModulePresentation::free(&r, 1);
        let q = m.quotient_by_sequence(&RingSequence::parse(&r, &["x", "y"]).unwrap()).unwrap();
        assert!(!q.is_zero());
        assert_eq!(q.dimension().unwrap(), ExtInt::Finite(0));
        let same = m.quotient_by_sequence(&RingSequence::empty(&r)).unwrap();
        assert!(same.same_presentation(&m));

        let c = ModulePresentation::cyclic(&r, &ps(&r, &["x^2", "x*y"])).unwrap();
        let q = c.quotient_by_sequence(&RingSequence::parse(&r, &["y"]).unwrap()).unwrap();
        let oracle = ModulePresentation::cyclic(&r, &ps(&r, &["x^2", "y"])).unwrap();
        assert!(q.same_presentation(&oracle));

        let xy = m.quotient_by_sequence(&RingSequence::parse(&r, &["x", "y"]).unwrap()).unwrap();
        let yx = m.quotient_by_sequence(&RingSequence::parse(&r, &["y", "x"]).unwrap()).unwrap();
        assert!(xy.same_presentation(&yx));
    }

    #[test]
    fn scalar_kernels() {
        let r = plane();
        let free = ModulePresentation::free(&r, 1);
        assert!(free.scalar_kernel(&r.parse("x").unwrap()).unwrap().is_zero());
        let q = r.quotient(&ps(&r, &["x*y"])).unwrap();
        let m = ModulePresentation::free(&q, 1);
        let gens = m.scalar_kernel_gens(&q.parse("x").unwrap()).unwrap();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].component(0), q.parse("y").unwrap());
        assert!(!m.scalar_kernel(&q.parse("x").unwrap()).unwrap().is_zero());
        assert!(m.scalar_kernel(&q.parse("1").unwrap()).unwrap().is_zero());
    }

    #[test]
    fn annihilators() {
        let r = plane();
        let c = ModulePresentation::cyclic(&r, &ps(&r, &["x^2", "x*y"])).unwrap();
        assert_eq!(c.annihilator().unwrap(), ps(&r, &["x^2", "x*y"]));
        assert!(ModulePresentation::free(&r, 1).annihilator().unwrap().is_empty());
        let a = ModulePresentation::cyclic(&r, &ps(&r, &["x"])).unwrap();
        let b = ModulePresentation::cyclic(&r, &ps(&r, &["y"])).unwrap();
        let sum = a.direct_sum(&b).unwrap();
        let ann = sum.annihilator().unwrap();
        assert_eq!(ann, ps(&r, &["x*y"]));
        for p in &ann {
            for j in 0..sum.gens() {
                assert!(sum.is_zero_element(&FreeModuleElement::from_poly_at(p.clone(), 2, j)));
            }
        }
    }

    #[test]
    fn base_extension() {
        let line = PolyRingPresentation::polynomial(&PolyRing::new(Field::Rational, &["x"], OrderKind::Grevlex).unwrap());
        let m = ModulePresentation::cyclic(&line, &ps(&line, &["x"])).unwrap();
        let e = m.extend_to_polynomial_ring().unwrap();
        assert_eq!(e.poly_ring().vars(), &["x".to_string(), "t".to_string()]);
        assert_eq!(e.dimension().unwrap(), ExtInt::Finite(1));
        assert!(ModulePresentation::zero(&line).extend_to_polynomial_ring().unwrap().is_zero());

        let r = plane();
        let m = ModulePresentation::cyclic(&r, &ps(&r, &["x*y"])).unwrap();
        let e = m.extend_to_polynomial_ring().unwrap();
        assert_eq!(m.dimension().unwrap(), ExtInt::Finite(1));
        assert_eq!(e.dimension().unwrap(), ExtInt::Finite(2));
    }

    #[test]
    fn fresh_name_avoids_clashes() {
        let r = PolyRingPresentation::polynomial(&PolyRing::new(Field::Rational, &["t", "x"], OrderKind::Grevlex).unwrap());
        let m = ModulePresentation::free(&r, 1);
        assert_eq!(m.fresh_variable(), "t1");
    }
}

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{Coeff, Monomial, MonomialOrder, PolyRing, Polynomial};

/// One term `coeff * mono * e_pos` of a free-module element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub pos: usize,
    pub mono: Monomial,
    pub coeff: Coeff,
}

/// Position-over-term: a smaller position index is larger; within a
/// position the ring order decides.
pub(crate) fn cmp_pot(ord: &MonomialOrder, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
    b.0.cmp(&a.0).then_with(|| ord.cmp(a.1, b.1))
}

pub(crate) fn cmp_terms(ord: &MonomialOrder, a: &Term, b: &Term) -> Ordering {
    cmp_pot(ord, (a.pos, &a.mono), (b.pos, &b.mono))
}

/// `f - c * m * g` on sorted term lists.
pub(crate) fn sub_mul(ord: &MonomialOrder, f: &[Term], c: &Coeff, m: &Monomial, g: &[Term]) -> Vec<Term> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let mut scaled = g.iter().map(|t| Term { pos: t.pos, mono: t.mono.mul(m), coeff: t.coeff.mul(c) });
    let mut next_g = scaled.next();
    while i < f.len() {
        let Some(b) = next_g.as_ref() else { break };
        let a = &f[i];
        match cmp_terms(ord, a, b) {
            Ordering::Greater => {
                out.push(a.clone());
                i += 1;
            }
            Ordering::Less => {
                let b = next_g.take().expect("present");
                out.push(Term { coeff: b.coeff.neg(), ..b });
                next_g = scaled.next();
                j += 1;
            }
            Ordering::Equal => {
                let coeff = a.coeff.sub(&b.coeff);
                if !coeff.is_zero() {
                    out.push(Term { pos: a.pos, mono: a.mono.clone(), coeff });
                }
                i += 1;
                j += 1;
                next_g = scaled.next();
            }
        }
    }
    let _ = j;
    out.extend(f[i..].iter().cloned());
    while let Some(b) = next_g {
        out.push(Term { coeff: b.coeff.neg(), ..b });
        next_g = scaled.next();
    }
    out
}

pub(crate) fn sort_terms(ord: &MonomialOrder, mut terms: Vec<Term>) -> Vec<Term> {
    terms.sort_by(|a, b| cmp_terms(ord, b, a));
    let mut out: Vec<Term> = Vec::with_capacity(terms.len());
    for t in terms {
        match out.last_mut() {
            Some(last) if last.pos == t.pos && last.mono == t.mono => {
                last.coeff = last.coeff.add(&t.coeff);
            }
            _ => {
                if matches!(out.last(), Some(l) if l.coeff.is_zero()) {
                    out.pop();
                }
                out.push(t);
            }
        }
    }
    if matches!(out.last(), Some(l) if l.coeff.is_zero()) {
        out.pop();
    }
    out
}

/// An element of the free module `S^rank`, stored as a sparse term list
/// sorted descending in the position-over-term order.
#[derive(Clone)]
pub struct FreeModuleElement {
    ring: Arc<PolyRing>,
    rank: usize,
    terms: Vec<Term>,
}

impl FreeModuleElement {
    pub fn zero(ring: &Arc<PolyRing>, rank: usize) -> Self {
        FreeModuleElement { ring: ring.clone(), rank, terms: Vec::new() }
    }

    /// The standard basis vector `e_i`.
    pub fn unit(ring: &Arc<PolyRing>, rank: usize, i: usize) -> Self {
        Self::from_poly_at(ring.one(), rank, i)
    }

    /// `p * e_i`.
    pub fn from_poly_at(p: Polynomial, rank: usize, i: usize) -> Self {
        assert!(i < rank, "position {i} outside rank {rank}");
        let ring = p.ring().clone();
        let terms = p
            .into_terms()
            .into_iter()
            .map(|(mono, coeff)| Term { pos: i, mono, coeff })
            .collect();
        FreeModuleElement { ring, rank, terms }
    }

    pub fn from_components(ring: &Arc<PolyRing>, comps: &[Polynomial]) -> Result<Self> {
        let mut terms = Vec::new();
        for (i, p) in comps.iter().enumerate() {
            if **p.ring() != **ring {
                return Err(Error::RingMismatch { left: ring.to_string(), right: p.ring().to_string() });
            }
            terms.extend(p.terms().iter().map(|(m, c)| Term { pos: i, mono: m.clone(), coeff: c.clone() }));
        }
        // Components are already internally sorted and positions ascend.
        Ok(FreeModuleElement { ring: ring.clone(), rank: comps.len(), terms })
    }

    pub(crate) fn from_sorted_terms(ring: &Arc<PolyRing>, rank: usize, terms: Vec<Term>) -> Self {
        FreeModuleElement { ring: ring.clone(), rank, terms }
    }

    pub fn from_terms(ring: &Arc<PolyRing>, rank: usize, terms: Vec<Term>) -> Self {
        let terms = sort_terms(ring.order(), terms);
        FreeModuleElement { ring: ring.clone(), rank, terms }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub(crate) fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn component(&self, i: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.pos == i)
            .map(|t| (t.mono.clone(), t.coeff.clone()))
            .collect();
        Polynomial::from_sorted_terms(&self.ring, terms)
    }

    pub fn components(&self) -> Vec<Polynomial> {
        let mut parts: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); self.rank];
        for t in &self.terms {
            parts[t.pos].push((t.mono.clone(), t.coeff.clone()));
        }
        parts.into_iter().map(|t| Polynomial::from_sorted_terms(&self.ring, t)).collect()
    }

    fn check(&self, o: &FreeModuleElement) -> Result<()> {
        if self.rank != o.rank {
            return Err(Error::ShapeMismatch(format!("rank {} vs rank {}", self.rank, o.rank)));
        }
        if *self.ring != *o.ring {
            return Err(Error::RingMismatch { left: self.ring.to_string(), right: o.ring.to_string() });
        }
        Ok(())
    }

    pub fn add(&self, o: &FreeModuleElement) -> Result<FreeModuleElement> {
        self.check(o)?;
        let one = self.ring.field().one().neg();
        let terms = sub_mul(self.ring.order(), &self.terms, &one, &Monomial::one(self.ring.nvars()), &o.terms);
        Ok(Self::from_sorted_terms(&self.ring, self.rank, terms))
    }

    pub fn sub(&self, o: &FreeModuleElement) -> Result<FreeModuleElement> {
        self.check(o)?;
        let one = self.ring.field().one();
        let terms = sub_mul(self.ring.order(), &self.terms, &one, &Monomial::one(self.ring.nvars()), &o.terms);
        Ok(Self::from_sorted_terms(&self.ring, self.rank, terms))
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> FreeModuleElement {
        if c.is_zero() {
            return Self::zero(&self.ring, self.rank);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term { pos: t.pos, mono: t.mono.mul(m), coeff: t.coeff.mul(c) })
            .collect();
        Self::from_sorted_terms(&self.ring, self.rank, terms)
    }

    /// Scalar action of a ring element.
    pub fn scale(&self, p: &Polynomial) -> FreeModuleElement {
        let mut terms = Vec::with_capacity(self.terms.len() * p.terms().len());
        for (m, c) in p.terms() {
            for t in &self.terms {
                terms.push(Term { pos: t.pos, mono: t.mono.mul(m), coeff: t.coeff.mul(c) });
            }
        }
        Self::from_terms(&self.ring, self.rank, terms)
    }

    /// Places this element into a larger free module starting at `offset`.
    pub fn shift(&self, offset: usize, new_rank: usize) -> FreeModuleElement {
        assert!(offset + self.rank <= new_rank);
        let terms = self.terms.iter().map(|t| Term { pos: t.pos + offset, ..t.clone() }).collect();
        Self::from_sorted_terms(&self.ring, new_rank, terms)
    }

    /// Keeps positions `range`, renumbered from zero.
    pub fn restrict(&self, range: std::ops::Range<usize>) -> FreeModuleElement {
        let terms = self
            .terms
            .iter()
            .filter(|t| range.contains(&t.pos))
            .map(|t| Term { pos: t.pos - range.start, ..t.clone() })
            .collect();
        Self::from_sorted_terms(&self.ring, range.len(), terms)
    }

    /// Applies a map to each component, keeping the rank.
    pub fn map_components(&self, f: impl Fn(&Polynomial) -> Polynomial) -> FreeModuleElement {
        let comps: Vec<Polynomial> = self.components().iter().map(f).collect();
        Self::from_components(&self.ring, &comps).expect("same ring")
    }

    /// Re-reads the element over another ring with the given variable map.
    pub fn map_vars(&self, target: &Arc<PolyRing>, map: &[usize]) -> FreeModuleElement {
        let comps: Vec<Polynomial> = self.components().iter().map(|p| p.map_vars(target, map)).collect();
        Self::from_components(target, &comps).expect("target ring")
    }

    /// Total degree of each term shifted by the degree of its basis vector;
    /// `Some(d)` when all terms agree.
    pub fn homogeneous_degree(&self, shifts: &[i64]) -> Option<i64> {
        let mut it = self.terms.iter().map(|t| t.mono.degree() as i64 + shifts[t.pos]);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }
}

impl PartialEq for FreeModuleElement {
    fn eq(&self, o: &Self) -> bool {
        self.rank == o.rank && self.terms == o.terms && *self.ring == *o.ring
    }
}

impl Eq for FreeModuleElement {}

impl fmt::Display for FreeModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self.components().iter().map(|p| p.to_string()).collect();
        write!(f, "({})", comps.join(", "))
    }
}

impl fmt::Debug for FreeModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeModuleElement{self}")
    }
}

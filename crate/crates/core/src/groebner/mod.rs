//! Buchberger's algorithm for submodules of free modules `S^r` under the
//! position-over-term extension of the ring order; normal forms, kernels
//! of module maps and the combinatorial dimension of a leading-term ideal.

mod element;

use std::collections::HashSet;
use std::sync::Arc;

pub use element::{FreeModuleElement, Term};
pub(crate) use element::{cmp_pot, sub_mul};

use crate::error::{Error, Result};
use crate::ext::ExtInt;
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial};

/// A Gröbner basis of a submodule of `S^rank`; rank 1 is the ideal case.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    rank: usize,
    elements: Vec<FreeModuleElement>,
    reduced: bool,
}

fn reduce_terms(ord: &MonomialOrder, f: Vec<Term>, basis: &[Vec<Term>]) -> Vec<Term> {
    let mut p = f;
    let mut rem = Vec::new();
    let mut start = 0;
    while start < p.len() {
        let lt = &p[start];
        let hit = basis.iter().find(|g| g[0].pos == lt.pos && g[0].mono.divides(&lt.mono));
        match hit {
            Some(g) => {
                let q = g[0].mono.quotient_of(&lt.mono).expect("divides");
                let c = lt.coeff.div(&g[0].coeff);
                p = sub_mul(ord, &p[start..], &c, &q, g);
                start = 0;
            }
            None => {
                rem.push(p[start].clone());
                start += 1;
            }
        }
    }
    rem
}

fn monic(mut f: Vec<Term>) -> Vec<Term> {
    let inv = f[0].coeff.inv();
    if !inv.is_one() {
        for t in &mut f {
            t.coeff = t.coeff.mul(&inv);
        }
    }
    f
}

fn s_poly(ord: &MonomialOrder, f: &[Term], g: &[Term]) -> Vec<Term> {
    let l = f[0].mono.lcm(&g[0].mono);
    let mf = f[0].mono.quotient_of(&l).expect("lcm");
    let mg = g[0].mono.quotient_of(&l).expect("lcm");
    let cf = f[0].coeff.inv();
    let lhs: Vec<Term> = f
        .iter()
        .map(|t| Term { pos: t.pos, mono: t.mono.mul(&mf), coeff: t.coeff.mul(&cf) })
        .collect();
    sub_mul(ord, &lhs, &g[0].coeff.inv(), &mg, g)
}

fn pair_key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn buchberger_terms(ord: &MonomialOrder, gens: Vec<Vec<Term>>, rank: usize) -> Vec<Vec<Term>> {
    let mut basis: Vec<Vec<Term>> = Vec::new();
    let mut queue: Vec<(usize, usize, Monomial)> = Vec::new();
    let mut queued: HashSet<(usize, usize)> = HashSet::new();

    let push = |basis: &mut Vec<Vec<Term>>,
                queue: &mut Vec<(usize, usize, Monomial)>,
                queued: &mut HashSet<(usize, usize)>,
                g: Vec<Term>| {
        let idx = basis.len();
        for (i, b) in basis.iter().enumerate() {
            if b[0].pos == g[0].pos {
                queue.push((i, idx, b[0].mono.lcm(&g[0].mono)));
                queued.insert((i, idx));
            }
        }
        basis.push(g);
    };

    for g in gens {
        if !g.is_empty() {
            push(&mut basis, &mut queue, &mut queued, monic(g));
        }
    }

    while !queue.is_empty() {
        let best = (0..queue.len())
            .min_by_key(|&k| (queue[k].2.degree(), queue[k].0, queue[k].1))
            .expect("nonempty");
        let (i, j, lcm) = queue.swap_remove(best);
        queued.remove(&(i, j));

        if rank == 1 && basis[i][0].mono.coprime(&basis[j][0].mono) {
            continue;
        }
        let pos = basis[i][0].pos;
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k][0].pos == pos
                && basis[k][0].mono.divides(&lcm)
                && !queued.contains(&pair_key(i, k))
                && !queued.contains(&pair_key(j, k))
        });
        if chain {
            continue;
        }
        let s = s_poly(ord, &basis[i], &basis[j]);
        let r = reduce_terms(ord, s, &basis);
        if !r.is_empty() {
            push(&mut basis, &mut queue, &mut queued, monic(r));
        }
    }

    // Minimize: drop elements whose leading term is divisible by another's.
    let n = basis.len();
    let keep: Vec<bool> = (0..n)
        .map(|i| {
            !(0..n).any(|j| {
                j != i
                    && basis[j][0].pos == basis[i][0].pos
                    && basis[j][0].mono.divides(&basis[i][0].mono)
                    && (basis[j][0].mono != basis[i][0].mono || j < i)
            })
        })
        .collect();
    let minimal: Vec<Vec<Term>> =
        basis.into_iter().zip(keep).filter_map(|(b, k)| k.then_some(b)).collect();

    // Interreduce tails.
    let mut reduced = Vec::with_capacity(minimal.len());
    for (i, g) in minimal.iter().enumerate() {
        let others: Vec<Vec<Term>> =
            minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, h)| h.clone()).collect();
        let mut out = vec![g[0].clone()];
        out.extend(reduce_terms(ord, g[1..].to_vec(), &others));
        reduced.push(out);
    }
    reduced.sort_by(|a, b| cmp_pot(ord, (b[0].pos, &b[0].mono), (a[0].pos, &a[0].mono)));
    reduced
}

fn check_gens(ring: &Arc<PolyRing>, rank: usize, gens: &[FreeModuleElement]) -> Result<()> {
    for g in gens {
        if g.rank() != rank {
            return Err(Error::ShapeMismatch(format!("generator of rank {} in rank {rank}", g.rank())));
        }
        if **g.ring() != **ring {
            return Err(Error::RingMismatch { left: ring.to_string(), right: g.ring().to_string() });
        }
    }
    Ok(())
}

/// Reduced Gröbner basis of the submodule of `S^rank` generated by `gens`.
pub fn buchberger(ring: &Arc<PolyRing>, rank: usize, gens: &[FreeModuleElement]) -> Result<GroebnerBasis> {
    check_gens(ring, rank, gens)?;
    let terms = gens.iter().map(|g| g.terms().to_vec()).collect();
    let out = buchberger_terms(ring.order(), terms, rank);
    Ok(GroebnerBasis {
        ring: ring.clone(),
        rank,
        elements: out.into_iter().map(|t| FreeModuleElement::from_sorted_terms(ring, rank, t)).collect(),
        reduced: true,
    })
}

/// Reduced Gröbner basis of an ideal.
pub fn ideal_basis(ring: &Arc<PolyRing>, gens: &[Polynomial]) -> Result<GroebnerBasis> {
    let els: Vec<FreeModuleElement> = gens
        .iter()
        .map(|p| {
            if **p.ring() != **ring {
                return Err(Error::RingMismatch { left: ring.to_string(), right: p.ring().to_string() });
            }
            Ok(FreeModuleElement::from_poly_at(p.clone(), 1, 0))
        })
        .collect::<Result<_>>()?;
    buchberger(ring, 1, &els)
}

/// Remainder of `f` on division by `gb`.
pub fn normal_form(f: &FreeModuleElement, gb: &GroebnerBasis) -> Result<FreeModuleElement> {
    check_gens(&gb.ring, gb.rank, std::slice::from_ref(f))?;
    Ok(gb.reduce(f))
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn elements(&self) -> &[FreeModuleElement] {
        &self.elements
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    fn term_lists(&self) -> Vec<Vec<Term>> {
        self.elements.iter().map(|e| e.terms().to_vec()).collect()
    }

    /// Normal form; panics on a rank mismatch.
    pub fn reduce(&self, f: &FreeModuleElement) -> FreeModuleElement {
        assert_eq!(f.rank(), self.rank, "rank mismatch in reduction");
        let basis = self.term_lists();
        let r = reduce_terms(self.ring.order(), f.terms().to_vec(), &basis);
        FreeModuleElement::from_sorted_terms(&self.ring, self.rank, r)
    }

    pub fn contains(&self, f: &FreeModuleElement) -> bool {
        self.reduce(f).is_zero()
    }

    /// Ideal case: the basis as polynomials.
    pub fn polys(&self) -> Vec<Polynomial> {
        assert_eq!(self.rank, 1, "not an ideal basis");
        self.elements.iter().map(|e| e.component(0)).collect()
    }

    /// Ideal case: normal form of a polynomial.
    pub fn reduce_poly(&self, p: &Polynomial) -> Polynomial {
        assert_eq!(self.rank, 1, "not an ideal basis");
        self.reduce(&FreeModuleElement::from_poly_at(p.clone(), 1, 0)).component(0)
    }

    pub fn contains_poly(&self, p: &Polynomial) -> bool {
        self.reduce_poly(p).is_zero()
    }

    /// Whether the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.rank == 1 && self.elements.iter().any(|e| e.lead().is_some_and(|t| t.mono.is_one()))
    }

    /// Whether the submodule is all of `S^rank`.
    pub fn is_full(&self) -> bool {
        (0..self.rank).all(|i| self.elements.iter().any(|e| e.lead().is_some_and(|t| t.pos == i && t.mono.is_one())))
    }

    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.elements.iter().map(|e| e.lead().map(|t| (t.pos, t.mono.clone())).expect("nonzero")).collect()
    }

    /// Buchberger's criterion: every S-pair reduces to zero.
    pub fn s_pair_certificate(&self) -> bool {
        let ord = self.ring.order();
        let basis = self.term_lists();
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                if basis[i][0].pos != basis[j][0].pos {
                    continue;
                }
                if !reduce_terms(ord, s_poly(ord, &basis[i], &basis[j]), &basis).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Krull dimension of `S / J` for an ideal basis of `J`.
    pub fn dimension(&self) -> ExtInt {
        lt_ideal_dimension(self)
    }
}

/// Largest size of a variable subset containing the support of no leading
/// monomial; `-inf` for the unit ideal.
pub fn lt_ideal_dimension(gb: &GroebnerBasis) -> ExtInt {
    assert_eq!(gb.rank, 1, "dimension of a rank-1 basis only");
    if gb.is_unit() {
        return ExtInt::NegInf;
    }
    let n = gb.ring.nvars();
    let masks: Vec<u64> = gb
        .elements
        .iter()
        .map(|e| e.lead().expect("nonzero").mono.support().fold(0u64, |m, v| m | (1 << v)))
        .collect();
    let mut best = 0u32;
    for s in 0u64..(1u64 << n) {
        let size = s.count_ones();
        if size > best && masks.iter().all(|&m| m & !s != 0) {
            best = size;
        }
    }
    ExtInt::Finite(best as i64)
}

/// Kernel of `S^n -> S^r / N`, `e_i -> columns[i]`, where `N` is generated by
/// `relations`. Computed by eliminating the target positions of the graph
/// module.
pub fn kernel(
    ring: &Arc<PolyRing>,
    target_rank: usize,
    columns: &[FreeModuleElement],
    relations: &[FreeModuleElement],
) -> Result<Vec<FreeModuleElement>> {
    check_gens(ring, target_rank, columns)?;
    check_gens(ring, target_rank, relations)?;
    let n = columns.len();
    let total = target_rank + n;
    let mut graph = Vec::with_capacity(n + relations.len());
    for (i, c) in columns.iter().enumerate() {
        let mut terms = c.shift(0, total).into_terms();
        terms.push(Term { pos: target_rank + i, mono: Monomial::one(ring.nvars()), coeff: ring.field().one() });
        graph.push(terms);
    }
    for r in relations {
        if !r.is_zero() {
            graph.push(r.shift(0, total).into_terms());
        }
    }
    let gb = buchberger_terms(ring.order(), graph, total);
    Ok(gb
        .into_iter()
        .filter(|g| g[0].pos >= target_rank)
        .map(|g| FreeModuleElement::from_sorted_terms(ring, total, g).restrict(target_rank..total))
        .collect())
}

/// Syzygies of `gens` over the polynomial ring.
pub fn syzygies(ring: &Arc<PolyRing>, rank: usize, gens: &[FreeModuleElement]) -> Result<Vec<FreeModuleElement>> {
    kernel(ring, rank, gens, &[])
}

/// `J * e_j` for every basis element of `J` and every position `j < rank`.
pub fn ideal_relations(ideal: &GroebnerBasis, rank: usize) -> Vec<FreeModuleElement> {
    let mut out = Vec::new();
    for j in 0..rank {
        for p in ideal.polys() {
            out.push(FreeModuleElement::from_poly_at(p, rank, j));
        }
    }
    out
}

/// Syzygies of `gens` over `S / J`, reduced modulo `J` with zeros and
/// duplicates removed.
pub fn syzygies_modulo(
    ring: &Arc<PolyRing>,
    rank: usize,
    gens: &[FreeModuleElement],
    ideal: &GroebnerBasis,
) -> Result<Vec<FreeModuleElement>> {
    let rels = ideal_relations(ideal, rank);
    let ker = kernel(ring, rank, gens, &rels)?;
    Ok(reduce_mod_ideal(ker, ideal))
}

/// Componentwise reduction modulo an ideal, dropping zeros and repeats.
pub fn reduce_mod_ideal(els: Vec<FreeModuleElement>, ideal: &GroebnerBasis) -> Vec<FreeModuleElement> {
    let mut out: Vec<FreeModuleElement> = Vec::new();
    for e in els {
        let r = e.map_components(|p| ideal.reduce_poly(p));
        if !r.is_zero() && !out.contains(&r) {
            out.push(r);
        }
    }
    out
}

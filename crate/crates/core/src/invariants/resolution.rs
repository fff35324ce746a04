//! Graded minimal free resolutions over a polynomial ring by iterated
//! syzygies of minimal generating sets.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, syzygies, FreeModuleElement};
use crate::modpres::{subquotient, ModulePresentation};
use crate::poly::PolyRing;

/// Greedy minimal generators of a graded submodule: by increasing degree,
/// keep an element unless the kept ones already generate it.
fn minimal_generators(
    ring: &Arc<PolyRing>,
    rank: usize,
    shifts: &[i64],
    gens: &[FreeModuleElement],
) -> Result<Vec<(FreeModuleElement, i64)>> {
    let mut graded: Vec<(FreeModuleElement, i64)> = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let d = g
            .homogeneous_degree(shifts)
            .ok_or_else(|| Error::InvalidArgument(format!("non-homogeneous element {g}")))?;
        graded.push((g.clone(), d));
    }
    graded.sort_by_key(|(_, d)| *d);
    let mut kept: Vec<(FreeModuleElement, i64)> = Vec::new();
    for (g, d) in graded {
        let span: Vec<FreeModuleElement> = kept.iter().map(|k| k.0.clone()).collect();
        if !buchberger(ring, rank, &span)?.contains(&g) {
            kept.push((g, d));
        }
    }
    Ok(kept)
}

/// Ranks `b_0, b_1, ...` of the graded minimal free resolution of `M`.
/// Requires `J = 0` and a graded presentation with generators in degree 0.
pub fn betti_ranks(m: &ModulePresentation) -> Result<Vec<usize>> {
    if !m.ring().ideal_gb().is_empty() {
        return Err(Error::InvalidArgument("free resolutions need the full polynomial ring".into()));
    }
    if !m.is_graded() {
        return Err(Error::InvalidArgument("module presentation is not graded".into()));
    }
    let poly = m.poly_ring().clone();
    if m.is_zero() {
        return Ok(Vec::new());
    }
    // Drop generators made redundant by degree-0 relations.
    let g = m.gens();
    let keep: Vec<FreeModuleElement> = (0..g)
        .filter(|&p| {
            !m.rel_gb().elements().iter().any(|e| e.lead().is_some_and(|t| t.pos == p && t.mono.is_one()))
        })
        .map(|p| FreeModuleElement::unit(&poly, g, p))
        .collect();
    let (minimal, _) = subquotient(m.ring(), &keep, m.rel_gb())?;

    let mut ranks = vec![minimal.gens()];
    let mut rank = minimal.gens();
    let mut shifts = vec![0i64; rank];
    let mut current: Vec<FreeModuleElement> = minimal.rel_gb().elements().to_vec();
    for _ in 0..=poly.nvars() + 1 {
        let gens = minimal_generators(&poly, rank, &shifts, &current)?;
        if gens.is_empty() {
            return Ok(ranks);
        }
        ranks.push(gens.len());
        let cols: Vec<FreeModuleElement> = gens.iter().map(|(e, _)| e.clone()).collect();
        shifts = gens.iter().map(|(_, d)| *d).collect();
        current = syzygies(&poly, rank, &cols)?;
        rank = cols.len();
    }
    Err(Error::Internal("resolution longer than the number of variables".into()))
}

/// Length of the graded minimal free resolution; `None` for the zero module.
pub fn projective_dimension(m: &ModulePresentation) -> Result<Option<usize>> {
    Ok(betti_ranks(m)?.len().checked_sub(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modpres::PolyRingPresentation;
    use crate::poly::{Field, OrderKind};

    #[test]
    fn resolutions_of_plane_modules() {
        let r = PolyRingPresentation::polynomial(&PolyRing::new(Field::Rational, &["x", "y"], OrderKind::Grevlex).unwrap());
        let p = |s: &str| r.parse(s).unwrap();
        assert_eq!(betti_ranks(&ModulePresentation::free(&r, 1)).unwrap(), [1]);
        assert_eq!(betti_ranks(&ModulePresentation::cyclic(&r, &[p("x")]).unwrap()).unwrap(), [1, 1]);
        assert_eq!(betti_ranks(&ModulePresentation::cyclic(&r, &[p("x"), p("y")]).unwrap()).unwrap(), [1, 2, 1]);
        assert_eq!(betti_ranks(&ModulePresentation::cyclic(&r, &[p("x^2"), p("x*y")]).unwrap()).unwrap(), [1, 2, 1]);
        // A degree-0 relation removes a generator.
        let rel = FreeModuleElement::from_components(r.poly_ring(), &[p("1"), p("-1")]).unwrap();
        let m = ModulePresentation::new(&r, 2, vec![rel]).unwrap();
        assert_eq!(betti_ranks(&m).unwrap(), [1]);
        assert_eq!(projective_dimension(&ModulePresentation::zero(&r)).unwrap(), None);
    }
}

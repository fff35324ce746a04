//! Dimension, height of an ideal on a module, grade via Koszul homology,
//! polynomial grade, minimal primes and free resolutions.

mod factor;
mod primes;
mod resolution;

use std::sync::OnceLock;

use serde::Serialize;

pub use factor::{irreducible_factors, is_irreducible, poly_sqrt};
pub use primes::{ideal_contains, minimal_primes};
pub use resolution::{betti_ranks, projective_dimension};

use crate::error::{Error, Result};
use crate::ext::ExtInt;
use crate::groebner::{ideal_basis, GroebnerBasis};
use crate::koszul::koszul_complex;
use crate::modpres::{ModulePresentation, RingSequence};
use crate::poly::Polynomial;

/// `dim M`, `-inf` for the zero module.
pub fn module_dimension(m: &ModulePresentation) -> Result<ExtInt> {
    m.dimension()
}

/// An ideal `I` of `R` together with a module `M`, caching `Ann(M)`.
pub struct IdealOnModuleQuery {
    ideal: Vec<Polynomial>,
    module: ModulePresentation,
    ann: OnceLock<GroebnerBasis>,
}

impl IdealOnModuleQuery {
    pub fn new(ideal: &[Polynomial], module: &ModulePresentation) -> Result<Self> {
        let ring = module.ring();
        let mut gens = Vec::new();
        for p in ideal {
            if **p.ring() != **ring.poly_ring() {
                return Err(Error::RingMismatch { left: ring.poly_ring().to_string(), right: p.ring().to_string() });
            }
            let r = ring.reduce(p);
            if !r.is_zero() {
                gens.push(r);
            }
        }
        Ok(IdealOnModuleQuery { ideal: gens, module: module.clone(), ann: OnceLock::new() })
    }

    pub fn from_sequence(x: &RingSequence, module: &ModulePresentation) -> Result<Self> {
        Self::new(x.elements(), module)
    }

    pub fn ideal(&self) -> &[Polynomial] {
        &self.ideal
    }

    pub fn module(&self) -> &ModulePresentation {
        &self.module
    }

    /// `Ann(M)` in the polynomial ring (it contains `J`).
    pub fn annihilator(&self) -> Result<&GroebnerBasis> {
        if let Some(a) = self.ann.get() {
            return Ok(a);
        }
        let a = self.module.annihilator_ideal()?;
        Ok(self.ann.get_or_init(|| a))
    }

    /// `I + Ann(M)`.
    pub fn support_ideal(&self) -> Result<GroebnerBasis> {
        let mut gens = self.annihilator()?.polys();
        gens.extend(self.ideal.iter().cloned());
        ideal_basis(self.module.poly_ring(), &gens)
    }

    /// `inf { dim M_p : p in Supp M ∩ V(I) }`; `+inf` when the intersection
    /// is empty.
    pub fn height(&self) -> Result<ExtInt> {
        let poly = self.module.poly_ring();
        let sum = self.support_ideal()?;
        if sum.is_unit() {
            return Ok(ExtInt::PosInf);
        }
        let over = minimal_primes(poly, &sum.polys())?;
        let cell = self.module.annihilator_primes_cell();
        let under = match cell.get() {
            Some(u) => u,
            None => {
                let u = minimal_primes(poly, &self.annihilator()?.polys())?;
                cell.get_or_init(|| u)
            }
        };
        let mut best = ExtInt::PosInf;
        for p in &over {
            let dp = p.dimension().finite().expect("proper prime");
            let local = under
                .iter()
                .filter(|q| ideal_contains(p, q))
                .map(|q| q.dimension().finite().expect("proper prime") - dp)
                .max()
                .ok_or_else(|| Error::Internal("prime over the support contains no minimal prime".into()))?;
            best = best.min(ExtInt::Finite(local));
        }
        Ok(best)
    }
}

/// `ht_M(I)`.
pub fn height_on_module(ideal: &[Polynomial], m: &ModulePresentation) -> Result<ExtInt> {
    IdealOnModuleQuery::new(ideal, m)?.height()
}

/// `grade(xR, M) = l - max{i : H_i(x; M) != 0}`, `+inf` when `xM = M`.
pub fn grade(x: &RingSequence, m: &ModulePresentation) -> Result<ExtInt> {
    if m.quotient_by_sequence(x)?.is_zero() {
        return Ok(ExtInt::PosInf);
    }
    let c = koszul_complex(x, m, 1)?;
    let top = c.top_nonvanishing()?.ok_or_else(|| Error::Internal("H_0 vanished with xM != M".into()))?;
    Ok(ExtInt::Finite((x.len() - top) as i64))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PgradeReport {
    pub grade: ExtInt,
    pub extended_grade: ExtInt,
}

/// Polynomial grade: the grade, confirmed over `R[t]`.
pub fn pgrade(x: &RingSequence, m: &ModulePresentation) -> Result<PgradeReport> {
    let g = grade(x, m)?;
    let ext = m.extend_to_polynomial_ring()?;
    let xe = x.embed(ext.ring());
    let ge = grade(&xe, &ext)?;
    if g != ge {
        return Err(Error::Internal(format!("pgrade mismatch: grade {g} over R but {ge} over R[t]")));
    }
    Ok(PgradeReport { grade: g, extended_grade: ge })
}

/// The sequence of all ring variables.
pub fn variables_sequence(m: &ModulePresentation) -> Result<RingSequence> {
    let poly = m.poly_ring();
    let vars: Vec<Polynomial> = (0..poly.nvars()).map(|i| poly.var(i)).collect();
    RingSequence::new(m.ring(), &vars)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuslanderBuchsbaum {
    pub depth: ExtInt,
    pub projective_dimension: Option<usize>,
    pub nvars: usize,
    pub holds: bool,
}

/// `depth M + pd M = n` for a graded module over the full polynomial ring.
pub fn auslander_buchsbaum(m: &ModulePresentation) -> Result<AuslanderBuchsbaum> {
    let depth = grade(&variables_sequence(m)?, m)?;
    let pd = projective_dimension(m)?;
    let n = m.poly_ring().nvars();
    let holds = match (depth, pd) {
        (ExtInt::Finite(d), Some(p)) => d + p as i64 == n as i64,
        (ExtInt::PosInf, None) => true,
        _ => false,
    };
    Ok(AuslanderBuchsbaum { depth, projective_dimension: pd, nvars: n, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modpres::PolyRingPresentation;
    use crate::poly::{Field, OrderKind, PolyRing};
    use std::sync::Arc;

    fn plane() -> Arc<PolyRingPresentation> {
        PolyRingPresentation::polynomial(&PolyRing::new(Field::Rational, &["x", "y"], OrderKind::Grevlex).unwrap())
    }

    fn ps(r: &PolyRingPresentation, src: &[&str]) -> Vec<Polynomial> {
        src.iter().map(|s| r.parse(s).unwrap()).collect()
    }

    #[test]
    fn dimensions() {
        let r = plane();
        assert_eq!(module_dimension(&ModulePresentation::free(&r, 1)).unwrap(), ExtInt::Finite(2));
        let m = ModulePresentation::cyclic(&r, &ps(&r, &["x^2", "x*y"])).unwrap();
        assert_eq!(module_dimension(&m).unwrap(), ExtInt::Finite(1));
        assert_eq!(module_dimension(&ModulePresentation::zero(&r)).unwrap(), ExtInt::NegInf);
    }

    #[test]
    fn heights() {
        let r = plane();
        let free = ModulePresentation::free(&r, 1);
        assert_eq!(height_on_module(&ps(&r, &["x"]), &free).unwrap(), ExtInt::Finite(1));
        let m = ModulePresentation::cyclic(&r, &ps(&r, &["x^2", "x*y"])).unwrap();
        assert_eq!(height_on_module(&ps(&r, &["x"]), &m).unwrap(), ExtInt::Finite(0));
        assert_eq!(height_on_module(&ps(&r, &["y"]), &m).unwrap(), ExtInt::Finite(1));
        assert_eq!(height_on_module(&ps(&r, &["1"]), &m).unwrap(), ExtInt::PosInf);
    }

    #[test]
    fn grades() {
        let r = plane();
        let xy = RingSequence::parse(&r, &["x", "y"]).unwrap();
        assert_eq!(grade(&xy, &ModulePresentation::free(&r, 1)).unwrap(), ExtInt::Finite(2));
        let m = ModulePresentation::cyclic(&r, &ps(&r, &["x^2", "x*y"])).unwrap();
        assert_eq!(grade(&xy, &m).unwrap(), ExtInt::Finite(0));
        let unit = RingSequence::parse(&r, &["1"]).unwrap();
        assert_eq!(grade(&unit, &m).unwrap(), ExtInt::PosInf);
        // Another generating set of (x, y).
        let other = RingSequence::parse(&r, &["x + y", "x - y", "x^2"]).unwrap();
        assert_eq!(grade(&other, &ModulePresentation::free(&r, 1)).unwrap(), ExtInt::Finite(2));
    }

    #[test]
    fn polynomial_grades() {
        let r = plane();
        let xy = RingSequence::parse(&r, &["x", "y"]).unwrap();
        let rep = pgrade(&xy, &ModulePresentation::free(&r, 1)).unwrap();
        assert_eq!((rep.grade, rep.extended_grade), (ExtInt::Finite(2), ExtInt::Finite(2)));
        let q = r.quotient(&ps(&r, &["x*y"])).unwrap();
        let rep = pgrade(&RingSequence::parse(&q, &["x"]).unwrap(), &ModulePresentation::free(&q, 1)).unwrap();
        assert_eq!(rep.grade, ExtInt::Finite(0));
        let m = ModulePresentation::free(&r, 1);
        assert_eq!(pgrade(&RingSequence::empty(&r), &m).unwrap().grade, ExtInt::Finite(0));
    }

    #[test]
    fn auslander_buchsbaum_on_plane_modules() {
        let r = plane();
        for gens in [vec![], vec!["x"], vec!["x^2", "x*y"], vec!["x", "y"]] {
            let m = ModulePresentation::cyclic(&r, &ps(&r, &gens)).unwrap();
            let ab = auslander_buchsbaum(&m).unwrap();
            assert!(ab.holds, "{gens:?}: {ab:?}");
        }
    }
}

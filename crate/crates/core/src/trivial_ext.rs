//! The trivial extension `R ⋉ M` as the quotient ring
//! `k[x, y_1..y_g] / (J + <sum_i A_ij y_i> + <y_i y_j>)`, and the checks that
//! relate its Cohen-Macaulayness to that of `R` and `M`.

use std::sync::Arc;

use serde::Serialize;

use crate::cm::{auto_pool, cm_check, maximal_cm_check, CmOptions, CmVerdict, MaximalCm};
use crate::error::{Error, Result};
use crate::ext::ExtInt;
use crate::groebner::{ideal_basis, FreeModuleElement};
use crate::modpres::{ModulePresentation, PolyRingPresentation, RingSequence};
use crate::poly::{PolyRing, Polynomial};
use crate::sequences::{is_regular_sequence, is_weakly_proregular, Outcome, WprBounds};

const NAME_CANDIDATES: [&str; 7] = ["y", "z", "w", "u", "v", "s", "t"];

/// Results of the checks run while building the extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BuildChecks {
    /// Every product `y_i y_j` reduces to zero.
    pub square_zero: bool,
    /// `T/(y)` has the same reduced ideal basis as `R`.
    pub quotient_is_base: bool,
    /// The ideal `(y)` re-presents `M`.
    pub ideal_is_module: bool,
}

impl BuildChecks {
    pub fn all(&self) -> bool {
        self.square_zero && self.quotient_is_base && self.ideal_is_module
    }
}

pub struct TrivialExtensionPresentation {
    base: Arc<PolyRingPresentation>,
    module: ModulePresentation,
    ring: Arc<PolyRingPresentation>,
    module_vars: Vec<usize>,
    checks: BuildChecks,
}

/// Names for the module generators, avoiding the base variables.
fn fresh_names(base: &PolyRing, g: usize) -> Vec<String> {
    let mut names: Vec<String> = Vec::with_capacity(g);
    for _ in 0..g {
        let n = base.fresh_name(&NAME_CANDIDATES, "m", &names);
        names.push(n);
    }
    names
}

/// Builds `T = R ⋉ M` and certifies the three structural invariants.
pub fn build_trivial_extension(
    base: &Arc<PolyRingPresentation>,
    module: &ModulePresentation,
) -> Result<TrivialExtensionPresentation> {
    if **module.ring() != **base {
        return Err(Error::RingMismatch { left: base.to_string(), right: module.ring().to_string() });
    }
    if module.is_zero() {
        return Err(Error::ZeroModule("the trivial extension needs a nonzero module".into()));
    }
    let g = module.gens();
    let names = fresh_names(base.poly_ring(), g);
    let poly_t = base.poly_ring().extend(&names)?;
    let n = base.poly_ring().nvars();
    let module_vars: Vec<usize> = (n..n + g).collect();
    let y = |i: usize| poly_t.var(module_vars[i]);

    let mut ideal: Vec<Polynomial> = base.ideal_gens().iter().map(|p| p.embed(&poly_t)).collect();
    for col in module.relations() {
        let mut acc = poly_t.zero();
        for (i, a) in col.components().iter().enumerate() {
            acc = &acc + &(&a.embed(&poly_t) * &y(i));
        }
        ideal.push(acc);
    }
    for i in 0..g {
        for j in i..g {
            ideal.push(&y(i) * &y(j));
        }
    }
    let ring = PolyRingPresentation::new(&poly_t, &ideal)?;
    let mut t = TrivialExtensionPresentation {
        base: base.clone(),
        module: module.clone(),
        ring,
        module_vars,
        checks: BuildChecks { square_zero: false, quotient_is_base: false, ideal_is_module: false },
    };
    t.checks = t.run_checks()?;
    if !t.checks.all() {
        return Err(Error::Internal(format!("trivial extension invariants failed: {:?}", t.checks)));
    }
    Ok(t)
}

impl TrivialExtensionPresentation {
    pub fn base(&self) -> &Arc<PolyRingPresentation> {
        &self.base
    }

    pub fn module(&self) -> &ModulePresentation {
        &self.module
    }

    /// The extension ring `T`.
    pub fn ring(&self) -> &Arc<PolyRingPresentation> {
        &self.ring
    }

    pub fn module_vars(&self) -> &[usize] {
        &self.module_vars
    }

    pub fn checks(&self) -> BuildChecks {
        self.checks
    }

    /// `T` as a module over itself.
    pub fn as_module(&self) -> ModulePresentation {
        ModulePresentation::free(&self.ring, 1)
    }

    /// `R -> T`.
    pub fn lift(&self, p: &Polynomial) -> Polynomial {
        self.ring.reduce(&p.embed(self.ring.poly_ring()))
    }

    pub fn lift_sequence(&self, x: &RingSequence) -> RingSequence {
        x.embed(&self.ring)
    }

    /// `pi : T -> R`, killing every `y_i`.
    pub fn project(&self, p: &Polynomial) -> Polynomial {
        let zero = self.ring.poly_ring().zero();
        let killed = self.module_vars.iter().fold(p.clone(), |acc, &v| acc.substitute(v, &zero));
        let n = self.base.poly_ring().nvars();
        let map: Vec<usize> = (0..self.ring.poly_ring().nvars()).map(|i| i.min(n.saturating_sub(1))).collect();
        self.base.reduce(&killed.map_vars(self.base.poly_ring(), &map))
    }

    pub fn project_sequence(&self, x: &RingSequence) -> Result<RingSequence> {
        let els: Vec<Polynomial> = x.elements().iter().map(|p| self.project(p)).collect();
        RingSequence::new(&self.base, &els)
    }

    fn run_checks(&self) -> Result<BuildChecks> {
        let poly_t = self.ring.poly_ring();
        let g = self.module_vars.len();
        let ys: Vec<Polynomial> = self.module_vars.iter().map(|&v| poly_t.var(v)).collect();

        let square_zero = ys.iter().all(|a| ys.iter().all(|b| self.ring.reduce(&(a * b)).is_zero()));

        let mut with_y = self.ring.ideal_gb().polys();
        with_y.extend(ys.iter().cloned());
        let killed = ideal_basis(poly_t, &with_y)?;
        let rest: Vec<Polynomial> = killed
            .polys()
            .into_iter()
            .filter(|p| !self.module_vars.iter().any(|&v| p.involves(v)))
            .collect();
        let base_gb: Vec<Polynomial> = self.base.ideal_gb().polys().iter().map(|p| p.embed(poly_t)).collect();
        let quotient_is_base = rest == base_gb;

        // Relations among y_1..y_g over T, with y set to zero, present M.
        let cols: Vec<FreeModuleElement> = ys.iter().map(|y| FreeModuleElement::from_poly_at(y.clone(), 1, 0)).collect();
        let syz = crate::groebner::syzygies_modulo(poly_t, 1, &cols, self.ring.ideal_gb())?;
        let base_poly = self.base.poly_ring();
        let mut rels = Vec::new();
        for s in syz {
            let comps: Vec<Polynomial> = s.components().iter().map(|p| self.project(p)).collect();
            rels.push(FreeModuleElement::from_components(base_poly, &comps)?);
        }
        let rebuilt = ModulePresentation::new(&self.base, g, rels)?;
        let ideal_is_module = rebuilt.same_presentation(&self.module);
        Ok(BuildChecks { square_zero, quotient_is_base, ideal_is_module })
    }
}

/// `T/xT` against the extension built from `(R/xR, M/xM)`.
pub fn quotient_iso_check(t: &TrivialExtensionPresentation, x: &RingSequence) -> Result<bool> {
    let lifted: Vec<Polynomial> = x.elements().iter().map(|p| t.lift(p)).collect();
    let left = t.ring.quotient(&lifted)?;
    let base_q = t.base.quotient(x.elements())?;
    let module_q = t.module.quotient_by_sequence(x)?.base_change(&base_q)?;
    let right_gb = if module_q.is_zero() {
        let poly_t = t.ring.poly_ring();
        let mut gens: Vec<Polynomial> = base_q.ideal_gb().polys().iter().map(|p| p.embed(poly_t)).collect();
        gens.extend(t.module_vars.iter().map(|&v| poly_t.var(v)));
        ideal_basis(poly_t, &gens)?.polys()
    } else {
        let other = build_trivial_extension(&base_q, &module_q)?;
        if other.ring.poly_ring() != t.ring.poly_ring() {
            return Ok(false);
        }
        other.ring.ideal_gb().polys()
    };
    Ok(left.ideal_gb().polys() == right_gb)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaWReport {
    pub sequence: Vec<String>,
    pub projected: Vec<String>,
    pub on_extension: Outcome,
    pub on_ring: Outcome,
    pub on_module: Outcome,
    /// `None` when some verdict is undetermined at the bounds.
    pub holds: Option<bool>,
}

/// Weak proregularity of `x` on `T` against that of `pi(x)` on `R` and `M`.
pub fn lemma_w_check(t: &TrivialExtensionPresentation, x: &RingSequence, bounds: WprBounds) -> Result<LemmaWReport> {
    let px = t.project_sequence(x)?;
    let on_extension = is_weakly_proregular(x, &t.as_module(), bounds)?.outcome;
    let on_ring = is_weakly_proregular(&px, &ModulePresentation::free(&t.base, 1), bounds)?.outcome;
    let on_module = is_weakly_proregular(&px, &t.module, bounds)?.outcome;
    let decided = [on_extension, on_ring, on_module].iter().all(|o| *o != Outcome::UndeterminedAtBound);
    let holds = decided.then(|| (on_extension == Outcome::Yes) == (on_ring == Outcome::Yes && on_module == Outcome::Yes));
    Ok(LemmaWReport {
        sequence: x.elements().iter().map(|p| p.to_string()).collect(),
        projected: px.elements().iter().map(|p| p.to_string()).collect(),
        on_extension,
        on_ring,
        on_module,
        holds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferRow {
    pub sequence: Vec<String>,
    pub weak_regular_on_module: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub extension_ring: String,
    pub build_checks: BuildChecks,
    pub dim_extension: ExtInt,
    pub dim_ring: ExtInt,
    pub dim_module: ExtInt,
    pub cm_extension: CmVerdict,
    pub cm_ring: CmVerdict,
    pub maximal_cm_module: MaximalCm,
    /// `R`-regular sequences of the pool and whether each is weak `M`-regular.
    pub transfer: Vec<TransferRow>,
    pub item1: Option<bool>,
    pub item2: Option<bool>,
    pub item3: Option<bool>,
    /// `(1) <=> (3)`; `None` when an outcome is inconclusive.
    pub equivalence_1_3: Option<bool>,
    pub equivalence_1_2: Option<bool>,
    pub hypothesis: &'static str,
}

#[derive(Debug, Clone)]
pub struct HarnessOptions {
    pub cm: CmOptions,
    pub pool_budget: usize,
    /// Sequences in `R`; lifted to `T` and run before the automatic pool.
    pub pool: Option<Vec<RingSequence>>,
}

impl Default for HarnessOptions {
    fn default() -> Self {
        HarnessOptions { cm: CmOptions::default(), pool_budget: 256, pool: None }
    }
}

fn cm_bool(v: &CmVerdict) -> Option<bool> {
    match v.outcome {
        crate::cm::CmOutcome::Cm => Some(true),
        crate::cm::CmOutcome::NotCm => Some(false),
        crate::cm::CmOutcome::Inconclusive => None,
    }
}

/// `cm(R ⋉ M)` against `cm(R)` and `M` maximal Cohen-Macaulay, with the
/// regular-to-weak-regular transfer over the pool.
pub fn theorem_th_harness(
    base: &Arc<PolyRingPresentation>,
    module: &ModulePresentation,
    options: &HarnessOptions,
) -> Result<TheoremReport> {
    let t = build_trivial_extension(base, module)?;
    let r_module = ModulePresentation::free(base, 1);
    let mut pool_r = options.pool.clone().unwrap_or_default();
    for s in auto_pool(&r_module, options.pool_budget)? {
        if !pool_r.contains(&s) {
            pool_r.push(s);
        }
    }
    let mut pool_t: Vec<RingSequence> = options.pool.iter().flatten().map(|x| t.lift_sequence(x)).collect();
    let t_module = t.as_module();
    for s in auto_pool(&t_module, options.pool_budget)? {
        if !pool_t.contains(&s) {
            pool_t.push(s);
        }
    }
    let cm_extension = cm_check(&t_module, &pool_t, options.cm)?;
    let cm_ring = cm_check(&r_module, &pool_r, options.cm)?;
    let maximal_cm_module = maximal_cm_check(module)?;

    let mut transfer = Vec::new();
    for x in &pool_r {
        if is_regular_sequence(x, &r_module, false)?.is_yes() {
            transfer.push(TransferRow {
                sequence: x.elements().iter().map(|p| p.to_string()).collect(),
                weak_regular_on_module: is_regular_sequence(x, module, true)?.is_yes(),
            });
        }
    }
    let transfer_ok = transfer.iter().all(|r| r.weak_regular_on_module);

    let item1 = cm_bool(&cm_extension);
    let r_cm = cm_bool(&cm_ring);
    let item2 = r_cm.map(|c| c && transfer_ok);
    let item3 = r_cm.map(|c| c && maximal_cm_module.holds);
    let eq = |a: Option<bool>, b: Option<bool>| a.zip(b).map(|(a, b)| a == b);
    Ok(TheoremReport {
        extension_ring: t.ring.to_string(),
        build_checks: t.checks,
        dim_extension: t.ring.dimension(),
        dim_ring: base.dimension(),
        dim_module: module.dimension()?,
        equivalence_1_3: eq(item1, item3),
        equivalence_1_2: eq(item1, item2),
        cm_extension,
        cm_ring,
        maximal_cm_module,
        transfer,
        item1,
        item2,
        item3,
        hypothesis: "every R-weakly proregular sequence is M-weakly proregular: automatic for Noetherian R and finitely generated M, so a failing hypothesis is never exercised",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cm::CmOutcome;
    use crate::poly::{Field, OrderKind};

    fn ring(vars: &[&str], ideal: &[&str]) -> Arc<PolyRingPresentation> {
        let poly = PolyRing::new(Field::Rational, vars, OrderKind::Grevlex).unwrap();
        let gens: Vec<Polynomial> = ideal.iter().map(|s| poly.parse(s).unwrap()).collect();
        PolyRingPresentation::new(&poly, &gens).unwrap()
    }

    fn cyclic(r: &Arc<PolyRingPresentation>, ideal: &[&str]) -> ModulePresentation {
        let gens: Vec<Polynomial> = ideal.iter().map(|s| r.parse(s).unwrap()).collect();
        ModulePresentation::cyclic(r, &gens).unwrap()
    }

    fn ideal_text(t: &TrivialExtensionPresentation) -> Vec<String> {
        t.ring().ideal_gb().polys().iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn builds_corpus_extensions() {
        let line = ring(&["x"], &[]);
        let t = build_trivial_extension(&line, &cyclic(&line, &[])).unwrap();
        assert_eq!(t.ring().poly_ring().vars(), &["x".to_string(), "y".to_string()]);
        assert_eq!(ideal_text(&t), ["y^2"]);
        let t = build_trivial_extension(&line, &cyclic(&line, &["x"])).unwrap();
        assert_eq!(ideal_text(&t), ["x*y", "y^2"]);
        let plane = ring(&["x", "y"], &[]);
        let t = build_trivial_extension(&plane, &cyclic(&plane, &["x"])).unwrap();
        assert_eq!(t.ring().poly_ring().vars()[2], "z");
        assert_eq!(ideal_text(&t), ["x*z", "z^2"]);
        assert!(t.checks().all());
        assert!(matches!(build_trivial_extension(&plane, &cyclic(&plane, &["1"])), Err(Error::ZeroModule(_))));
    }

    #[test]
    fn projections() {
        let plane = ring(&["x", "y"], &[]);
        let t = build_trivial_extension(&plane, &cyclic(&plane, &["x"])).unwrap();
        let p = t.ring().parse("x*y + z + y^2").unwrap();
        assert_eq!(t.project(&p), plane.parse("x*y + y^2").unwrap());
    }

    #[test]
    fn quotient_isomorphisms() {
        let line = ring(&["x"], &[]);
        let t = build_trivial_extension(&line, &cyclic(&line, &[])).unwrap();
        assert!(quotient_iso_check(&t, &RingSequence::parse(&line, &["x"]).unwrap()).unwrap());
        assert!(quotient_iso_check(&t, &RingSequence::empty(&line)).unwrap());
        let plane = ring(&["x", "y"], &[]);
        let t = build_trivial_extension(&plane, &cyclic(&plane, &["x"])).unwrap();
        assert!(quotient_iso_check(&t, &RingSequence::parse(&plane, &["y"]).unwrap()).unwrap());
        assert!(quotient_iso_check(&t, &RingSequence::parse(&plane, &["x", "y"]).unwrap()).unwrap());
    }

    #[test]
    fn lemma_w_examples() {
        let line = ring(&["x"], &[]);
        let t = build_trivial_extension(&line, &cyclic(&line, &[])).unwrap();
        let b = WprBounds::default();
        for (els, proj) in [(vec!["x"], vec!["x"]), (vec!["y"], vec!["0"]), (vec![], vec![])] {
            let x = RingSequence::parse(t.ring(), &els).unwrap();
            let rep = lemma_w_check(&t, &x, b).unwrap();
            assert_eq!(rep.projected, proj);
            assert_eq!((rep.on_extension, rep.on_ring, rep.on_module), (Outcome::Yes, Outcome::Yes, Outcome::Yes));
            assert_eq!(rep.holds, Some(true));
        }
    }

    #[test]
    fn harness_examples() {
        let line = ring(&["x"], &[]);
        let rep = theorem_th_harness(&line, &cyclic(&line, &[]), &HarnessOptions::default()).unwrap();
        assert_eq!(rep.cm_extension.outcome, CmOutcome::Cm);
        assert_eq!((rep.item1, rep.item3, rep.equivalence_1_3), (Some(true), Some(true), Some(true)));

        let rep = theorem_th_harness(&line, &cyclic(&line, &["x"]), &HarnessOptions::default()).unwrap();
        assert_eq!(rep.cm_extension.outcome, CmOutcome::NotCm);
        assert_eq!(rep.cm_extension.certificate.unwrap().depth, ExtInt::Finite(0));
        assert_eq!((rep.item1, rep.item3, rep.equivalence_1_3), (Some(false), Some(false), Some(true)));

        let plane = ring(&["x", "y"], &[]);
        let rep = theorem_th_harness(&plane, &cyclic(&plane, &["x"]), &HarnessOptions::default()).unwrap();
        assert_eq!(rep.cm_extension.outcome, CmOutcome::NotCm);
        let w: Vec<String> = rep.cm_extension.witness.unwrap().elements().iter().map(|p| p.to_string()).collect();
        assert_eq!(w, ["x"]);
        assert_eq!(rep.equivalence_1_3, Some(true));
        assert_eq!(rep.dim_extension, rep.dim_ring);
    }
}

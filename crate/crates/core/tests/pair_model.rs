//! Differential test of `R ⋉ M` arithmetic: pairs `(r, m)` with
//! `(r, m)(r', m') = (rr', rm' + r'm)` against the quotient-ring model.

use std::sync::Arc;

use nagata_core::groebner::FreeModuleElement;
use nagata_core::modpres::{ModulePresentation, PolyRingPresentation};
use nagata_core::poly::{Field, OrderKind, PolyRing, Polynomial};
use nagata_core::trivial_ext::{build_trivial_extension, TrivialExtensionPresentation};
use proptest::prelude::*;

#[derive(Clone, Debug)]
struct Pair {
    r: Polynomial,
    m: FreeModuleElement,
}

struct Model {
    base: Arc<PolyRingPresentation>,
    module: ModulePresentation,
    ext: TrivialExtensionPresentation,
}

impl Model {
    fn new(vars: &[&str], ideal: &[&str], gens: usize, relations: &[&[&str]]) -> Model {
        let poly = PolyRing::new(Field::Rational, vars, OrderKind::Grevlex).unwrap();
        let ideal: Vec<Polynomial> = ideal.iter().map(|s| poly.parse(s).unwrap()).collect();
        let base = PolyRingPresentation::new(&poly, &ideal).unwrap();
        let rels = relations
            .iter()
            .map(|col| {
                let comps: Vec<Polynomial> = col.iter().map(|s| poly.parse(s).unwrap()).collect();
                FreeModuleElement::from_components(&poly, &comps).unwrap()
            })
            .collect();
        let module = ModulePresentation::new(&base, gens, rels).unwrap();
        let ext = build_trivial_extension(&base, &module).unwrap();
        Model { base, module, ext }
    }

    fn pair(&self, r: &str, m: &[String]) -> Pair {
        let poly = self.base.poly_ring();
        let r = self.base.reduce(&poly.parse(r).unwrap());
        let comps: Vec<Polynomial> = m.iter().map(|s| poly.parse(s).unwrap()).collect();
        let m = self.module.reduce(&FreeModuleElement::from_components(poly, &comps).unwrap());
        Pair { r, m }
    }

    fn mul(&self, a: &Pair, b: &Pair) -> Pair {
        let r = self.base.reduce(&(&a.r * &b.r));
        let m = self.module.reduce(&b.m.scale(&a.r).add(&a.m.scale(&b.r)).unwrap());
        Pair { r, m }
    }

    fn add(&self, a: &Pair, b: &Pair) -> Pair {
        Pair { r: self.base.reduce(&(&a.r + &b.r)), m: self.module.reduce(&a.m.add(&b.m).unwrap()) }
    }

    fn is_zero(&self, a: &Pair) -> bool {
        a.r.is_zero() && a.m.is_zero()
    }

    /// `(r, m) -> r + sum m_i y_i` in `T`.
    fn embed(&self, a: &Pair) -> Polynomial {
        let t = self.ext.ring();
        let mut acc = self.ext.lift(&a.r);
        for (i, c) in a.m.components().iter().enumerate() {
            let y = t.poly_ring().var(self.ext.module_vars()[i]);
            acc = &acc + &(&self.ext.lift(c) * &y);
        }
        t.reduce(&acc)
    }
}

fn models() -> Vec<Model> {
    vec![
        Model::new(&["x"], &[], 1, &[]),
        Model::new(&["x"], &[], 1, &[&["x"]]),
        Model::new(&["x", "y"], &[], 1, &[&["x"]]),
        Model::new(&["x", "y"], &["x*y"], 1, &[]),
        Model::new(&["x", "y"], &[], 1, &[&["x^2"], &["x*y"]]),
        Model::new(&["x", "y"], &[], 2, &[&["x", "y"]]),
    ]
}

type Terms = Vec<(i32, u32, u32)>;

fn small_poly() -> impl Strategy<Value = Terms> {
    prop::collection::vec((-2i32..=2, 0u32..=2, 0u32..=2), 0..=3)
}

/// Text of a generated polynomial; `y` is dropped for one-variable rings.
fn text(terms: &Terms, nvars: usize) -> String {
    let mut s = String::from("0");
    for &(c, a, b) in terms {
        s.push_str(&format!(" + ({c})*x^{a}"));
        if nvars > 1 {
            s.push_str(&format!("*y^{b}"));
        }
    }
    s
}

fn pair_input() -> impl Strategy<Value = (Terms, Vec<Terms>)> {
    (small_poly(), prop::collection::vec(small_poly(), 2))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pair_model_matches_quotient_ring(a in pair_input(), b in pair_input()) {
        for model in models() {
            let n = model.base.poly_ring().nvars();
            let g = model.module.gens();
            let p = model.pair(&text(&a.0, n), &a.1.iter().take(g).map(|t| text(t, n)).collect::<Vec<_>>());
            let q = model.pair(&text(&b.0, n), &b.1.iter().take(g).map(|t| text(t, n)).collect::<Vec<_>>());
            let t = model.ext.ring();
            prop_assert_eq!(model.embed(&model.mul(&p, &q)), t.reduce(&(&model.embed(&p) * &model.embed(&q))));
            prop_assert_eq!(model.embed(&model.add(&p, &q)), t.reduce(&(&model.embed(&p) + &model.embed(&q))));
            prop_assert_eq!(model.embed(&p).is_zero(), model.is_zero(&p));
            prop_assert_eq!(model.ext.project(&model.embed(&p)), p.r.clone());
        }
    }
}

#[test]
fn module_part_squares_to_zero() {
    for model in models() {
        let g = model.module.gens();
        let m: Vec<String> = (0..g).map(|i| if i == 0 { "1".into() } else { "0".into() }).collect();
        let p = model.pair("0", &m);
        assert!(model.is_zero(&model.mul(&p, &p)));
        let t = model.ext.ring();
        assert!(t.reduce(&(&model.embed(&p) * &model.embed(&p))).is_zero());
    }
}

//! Minimal primes for monomial ideals, ideals that eliminate linearly, and
//! ideals whose generators split into supported irreducible factors.

use std::sync::Arc;

use super::factor::irreducible_factors;
use crate::error::{Error, Result};
use crate::groebner::{ideal_basis, GroebnerBasis};
use crate::poly::{PolyRing, Polynomial};

/// Whether the ideal `small` is contained in the ideal `big`.
pub fn ideal_contains(big: &GroebnerBasis, small: &GroebnerBasis) -> bool {
    small.polys().iter().all(|p| big.contains_poly(p))
}

fn same_ideal(a: &GroebnerBasis, b: &GroebnerBasis) -> bool {
    a.polys() == b.polys()
}

/// Minimal sets of variables meeting the support of every monomial.
fn minimal_covers(supports: &[Vec<usize>]) -> Vec<Vec<usize>> {
    fn rec(supports: &[Vec<usize>], chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        match supports.iter().find(|s| !s.iter().any(|v| chosen.contains(v))) {
            None => {
                let mut c = chosen.clone();
                c.sort_unstable();
                out.push(c);
            }
            Some(s) => {
                for &v in s {
                    chosen.push(v);
                    rec(supports, chosen, out);
                    chosen.pop();
                }
            }
        }
    }
    let mut all = Vec::new();
    rec(supports, &mut Vec::new(), &mut all);
    all.sort();
    all.dedup();
    let minimal: Vec<Vec<usize>> = all
        .iter()
        .filter(|c| !all.iter().any(|d| d != *c && d.iter().all(|v| c.contains(v))))
        .cloned()
        .collect();
    minimal
}

fn components(ring: &Arc<PolyRing>, gens: &[Polynomial], depth: usize) -> Result<Vec<GroebnerBasis>> {
    if depth > 64 {
        return Err(Error::UnsupportedIdealClass("splitting did not terminate".into()));
    }
    let gb = ideal_basis(ring, gens)?;
    if gb.is_unit() {
        return Ok(Vec::new());
    }
    let polys = gb.polys();

    if polys.iter().all(Polynomial::is_monomial) {
        let supports: Vec<Vec<usize>> =
            polys.iter().map(|p| p.leading_monomial().expect("nonzero").support().collect()).collect();
        return minimal_covers(&supports)
            .into_iter()
            .map(|c| ideal_basis(ring, &c.iter().map(|&v| ring.var(v)).collect::<Vec<_>>()))
            .collect();
    }

    // A generator c*v + h with h free of v eliminates v.
    for f in &polys {
        for v in 0..ring.nvars() {
            if f.degree_in(v) != 1 {
                continue;
            }
            let cs = f.coefficients_in(v);
            if !cs[1].is_constant() {
                continue;
            }
            let c = cs[1].leading_coeff().expect("nonzero").clone();
            let value = cs[0].scale(&c.inv()).neg();
            let rest: Vec<Polynomial> =
                polys.iter().filter(|g| *g != f).map(|g| g.substitute(v, &value)).collect();
            let sub = components(ring, &rest, depth + 1)?;
            return sub
                .into_iter()
                .map(|p| {
                    let mut gens = p.polys();
                    gens.push(f.clone());
                    ideal_basis(ring, &gens)
                })
                .collect();
        }
    }

    let mut undecided = false;
    for f in &polys {
        match irreducible_factors(f) {
            None => undecided = true,
            Some(fs) if fs.len() == 1 && fs[0] == f.monic() => {}
            Some(fs) => {
                let mut out = Vec::new();
                for q in fs {
                    let mut g = polys.clone();
                    g.push(q);
                    out.extend(components(ring, &g, depth + 1)?);
                }
                return Ok(out);
            }
        }
    }
    if polys.len() == 1 && !undecided {
        return Ok(vec![gb]);
    }
    let shown: Vec<String> = polys.iter().map(|p| p.to_string()).collect();
    Err(Error::UnsupportedIdealClass(format!("cannot decompose ({})", shown.join(", "))))
}

/// Minimal primes of the ideal generated by `gens`, as reduced bases sorted
/// by generator count and then text. The unit ideal has none.
pub fn minimal_primes(ring: &Arc<PolyRing>, gens: &[Polynomial]) -> Result<Vec<GroebnerBasis>> {
    let comps = components(ring, gens, 0)?;
    let mut uniq: Vec<GroebnerBasis> = Vec::new();
    for c in comps {
        if !uniq.iter().any(|u| same_ideal(u, &c)) {
            uniq.push(c);
        }
    }
    let minimal: Vec<GroebnerBasis> = uniq
        .iter()
        .filter(|p| !uniq.iter().any(|q| !same_ideal(p, q) && ideal_contains(p, q)))
        .cloned()
        .collect();
    let mut keyed: Vec<(usize, String, GroebnerBasis)> = minimal
        .into_iter()
        .map(|p| {
            let key = p.polys().iter().map(|f| f.to_string()).collect::<Vec<_>>().join(", ");
            (p.elements().len(), key, p)
        })
        .collect();
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    Ok(keyed.into_iter().map(|k| k.2).collect())
}

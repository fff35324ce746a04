//! Distinct irreducible factors for the polynomial shapes that occur when
//! splitting ideals: monomial content, perfect squares, polynomials of degree
//! one in some variable, quadratics in a variable with constant leading
//! coefficient, and univariate polynomials or binary forms whose part without
//! linear factors has degree at most three.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::{Coeff, Field, Monomial, Polynomial};

/// Monic distinct irreducible factors of `p`, or `None` when `p` falls
/// outside the supported shapes. Constants have no factors.
pub fn irreducible_factors(p: &Polynomial) -> Option<Vec<Polynomial>> {
    let mut out = Vec::new();
    collect(p, &mut out)?;
    let mut uniq: Vec<Polynomial> = Vec::new();
    for f in out {
        let f = f.monic();
        if !uniq.contains(&f) {
            uniq.push(f);
        }
    }
    uniq.sort_by_key(|f| f.to_string());
    Some(uniq)
}

/// Whether `p` is irreducible, when that can be decided.
pub fn is_irreducible(p: &Polynomial) -> Option<bool> {
    if p.is_constant() {
        return Some(false);
    }
    let fs = irreducible_factors(p)?;
    Some(fs.len() == 1 && p.monic() == fs[0])
}

/// `p` with every power of `f` divided out.
fn strip_power(p: &Polynomial, f: &Polynomial) -> Polynomial {
    let mut cur = p.clone();
    while let Some(q) = cur.exact_div(f) {
        cur = q;
    }
    cur
}

fn monomial_content(p: &Polynomial) -> Monomial {
    let mut it = p.terms().iter().map(|(m, _)| m.clone());
    let first = it.next().expect("nonzero");
    it.fold(first, |acc, m| acc.gcd(&m))
}

fn collect(p: &Polynomial, out: &mut Vec<Polynomial>) -> Option<()> {
    if p.is_zero() {
        return None;
    }
    if p.is_constant() {
        return Some(());
    }
    let ring = p.ring().clone();
    let content = monomial_content(p);
    let mut p = p.clone();
    if !content.is_one() {
        for v in content.support() {
            out.push(ring.var(v));
        }
        p = p.exact_div(&ring.monomial(content.clone())).expect("content divides");
        if p.is_constant() {
            return Some(());
        }
    }
    if p.total_degree() == Some(1) {
        out.push(p);
        return Some(());
    }
    if let Some(r) = poly_sqrt(&p).or_else(|| poly_sqrt(&p.neg())) {
        return collect(&r, out);
    }
    let n = ring.nvars();
    if let Some(k) = (0..n).find(|&k| p.degree_in(k) == 1) {
        let cs = p.coefficients_in(k);
        let (c, b) = (&cs[0], &cs[1]);
        if b.is_constant() {
            out.push(p);
            return Some(());
        }
        // p = x_k * b + c: common factors of b and c split off, the rest is
        // primitive of degree one in x_k.
        let mut rest = p.clone();
        let mut bf = Vec::new();
        collect(b, &mut bf)?;
        for f in bf {
            if c.exact_div(&f).is_some() && rest.exact_div(&f).is_some() {
                rest = strip_power(&rest, &f);
                out.push(f);
            }
        }
        if !rest.is_constant() {
            out.push(rest);
        }
        return Some(());
    }
    let two = ring.field().from_i64(2);
    if two.is_zero() {
        return None;
    }
    let Some(k) = (0..n).find(|&k| {
        let cs = p.coefficients_in(k);
        cs.len() == 3 && cs[2].is_constant()
    }) else {
        return split_binary(&p, out);
    };
    let cs = p.coefficients_in(k);
    let (c, b, a) = (&cs[0], &cs[1], cs[2].leading_coeff().expect("nonzero").clone());
    let disc = &(b * b) - &c.scale(&a.mul(&ring.field().from_i64(4)));
    match poly_sqrt(&disc) {
        None => out.push(p),
        Some(s) => {
            // Roots (-b +- s) / 2a give factors x_k - root.
            let x = ring.var(k);
            let inv = a.mul(&two).inv();
            let r1 = (&b.neg() + &s).scale(&inv);
            let r2 = (&b.neg() - &s).scale(&inv);
            out.push(&x - &r1);
            out.push(&x - &r2);
        }
    }
    Some(())
}

/// Largest absolute value tried when enumerating rational root candidates.
const ROOT_SEARCH_LIMIT: u64 = 1_000_000;

/// A univariate polynomial or a form in two variables, split by its roots in
/// the coefficient field. What remains must have degree at most three.
fn split_binary(p: &Polynomial, out: &mut Vec<Polynomial>) -> Option<()> {
    let ring = p.ring().clone();
    let vars: Vec<usize> = (0..ring.nvars()).filter(|&v| p.involves(v)).collect();
    let (a, b) = match vars[..] {
        [a] => (a, None),
        [a, b] if p.is_homogeneous() => (a, Some(b)),
        _ => return None,
    };
    let linear = |r: &Coeff| {
        let tail = match b {
            Some(b) => ring.var(b).scale(r),
            None => ring.constant(r.clone()),
        };
        &ring.var(a) - &tail
    };
    let mut rest = p.clone();
    for r in roots(p, a)? {
        let f = linear(&r);
        rest = strip_power(&rest, &f);
        out.push(f);
    }
    match rest.degree_in(a) {
        0 => {}
        1..=3 => out.push(rest),
        _ => return None,
    }
    Some(())
}

/// Dense coefficients of `p` by degree in `a`; other variables are ignored.
fn dense(p: &Polynomial, a: usize) -> Vec<Coeff> {
    let mut cs = vec![p.ring().field().zero(); p.degree_in(a) as usize + 1];
    for (m, c) in p.terms() {
        let i = m.exps()[a] as usize;
        cs[i] = cs[i].add(c);
    }
    cs
}

fn eval(cs: &[Coeff], t: &Coeff) -> Coeff {
    cs.iter().rev().fold(t.field().zero(), |acc, c| acc.mul(t).add(c))
}

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64().filter(|&v| v <= ROOT_SEARCH_LIMIT)?;
    let mut out: Vec<u64> = (1..).take_while(|d| d * d <= n).filter(|d| n % d == 0).flat_map(|d| [d, n / d]).collect();
    out.sort_unstable();
    out.dedup();
    Some(out)
}

/// Roots in the coefficient field of the dense polynomial in `a`.
fn roots(p: &Polynomial, a: usize) -> Option<Vec<Coeff>> {
    let cs = dense(p, a);
    let field = p.ring().field();
    let found: Vec<Coeff> = match field {
        Field::Prime(q) => {
            if q as u64 > ROOT_SEARCH_LIMIT {
                return None;
            }
            (0..q as i64).map(|v| field.from_i64(v)).filter(|t| eval(&cs, t).is_zero()).collect()
        }
        Field::Rational => {
            let rats: Vec<BigRational> = cs
                .iter()
                .map(|c| match c {
                    Coeff::Rational(r) => r.clone(),
                    Coeff::Modular { .. } => unreachable!("rational ring"),
                })
                .collect();
            let lcm = rats.iter().fold(BigInt::one(), |l, r| num_integer::Integer::lcm(&l, r.denom()));
            let ints: Vec<BigInt> = rats.iter().map(|r| (r * BigRational::from_integer(lcm.clone())).to_integer()).collect();
            let low = ints.iter().find(|c| !c.is_zero())?;
            let high = ints.last()?;
            let (num, den) = (divisors(low)?, divisors(high)?);
            let mut cands: Vec<BigRational> = Vec::new();
            for &n in &num {
                for &d in &den {
                    for sign in [1i64, -1] {
                        let r = BigRational::new(BigInt::from(sign) * BigInt::from(n), BigInt::from(d));
                        if !cands.contains(&r) {
                            cands.push(r);
                        }
                    }
                }
            }
            cands
                .into_iter()
                .map(Coeff::Rational)
                .filter(|t| eval(&cs, t).is_zero())
                .collect()
        }
    };
    Some(found)
}

/// Square root in the polynomial ring, if `p` is a perfect square.
pub fn poly_sqrt(p: &Polynomial) -> Option<Polynomial> {
    let ring = p.ring().clone();
    if p.is_zero() {
        return Some(ring.zero());
    }
    let (lm, lc) = p.leading_term()?.clone();
    if lm.exps().iter().any(|e| e % 2 == 1) {
        return None;
    }
    let half = Monomial::new(lm.exps().iter().map(|e| e / 2).collect());
    let max_deg = lm.degree().max(p.total_degree()?) / 2;
    let lead = ring.monomial(half.clone()).scale(&lc.sqrt()?);
    let two_lead = lead.scale(&ring.field().from_i64(2));
    let (tm, tc) = two_lead.leading_term()?.clone();
    let mut s = lead;
    loop {
        let r = &p.clone() - &(&s * &s);
        let Some((rm, rc)) = r.leading_term() else { return Some(s) };
        let q = tm.quotient_of(rm)?;
        if q.degree() > max_deg {
            return None;
        }
        s = &s + &ring.monomial(q).scale(&rc.div(&tc));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Field, OrderKind, PolyRing};

    fn strs(fs: &[Polynomial]) -> Vec<String> {
        fs.iter().map(|f| f.to_string()).collect()
    }

    #[test]
    fn splits_supported_shapes() {
        let r = PolyRing::new(Field::Rational, &["x", "y", "z"], OrderKind::Grevlex).unwrap();
        let f = |s: &str| irreducible_factors(&r.parse(s).unwrap()).unwrap();
        assert_eq!(strs(&f("x*y")), ["x", "y"]);
        assert_eq!(strs(&f("x^2*y + x*y^2")), ["x", "x + y", "y"]);
        assert_eq!(strs(&f("x^2 - y^2")), ["x + y", "x - y"]);
        assert_eq!(strs(&f("x^2 + y^2")), ["x^2 + y^2"]);
        assert_eq!(strs(&f("(x+y)^2")), ["x + y"]);
        assert_eq!(strs(&f("x*z + y*z")), ["x + y", "z"]);
        assert_eq!(strs(&f("x*y*z + x*z + y + 1")), ["x*z + 1", "y + 1"]);
        assert_eq!(strs(&f("x^2 - y")), ["x^2 - y"]);
        assert!(f("7").is_empty());
        assert_eq!(strs(&f("x^4 - 2*x^2*y^2 + y^4")), ["x + y", "x - y"]);
        assert_eq!(strs(&f("x^3 - x")), ["x", "x + 1", "x - 1"]);
        assert_eq!(strs(&f("x^4 + x^3*y + x*y^3 + y^4")), ["x + y", "x^2 - x*y + y^2"]);
        assert_eq!(strs(&f("2*x^3 - 3*x^2 + 1")), ["x + 1/2", "x - 1"]);
        assert!(irreducible_factors(&r.parse("x^4 + 1").unwrap()).is_none());
    }

    #[test]
    fn irreducibility() {
        let r = PolyRing::new(Field::Rational, &["x", "y"], OrderKind::Grevlex).unwrap();
        let i = |s: &str| is_irreducible(&r.parse(s).unwrap());
        assert_eq!(i("x"), Some(true));
        assert_eq!(i("x^2"), Some(false));
        assert_eq!(i("x*y - 1"), Some(true));
        assert_eq!(i("x^2 - 2"), Some(true));
        assert_eq!(i("x^3 + y^3 + 1"), None);
    }

    #[test]
    fn modular_quadratics() {
        let r = PolyRing::new(Field::Prime(5), &["x"], OrderKind::Grevlex).unwrap();
        assert_eq!(strs(&irreducible_factors(&r.parse("x^2 + 1").unwrap()).unwrap()), ["x + 2", "x + 3"]);
        let r2 = PolyRing::new(Field::Prime(2), &["x"], OrderKind::Grevlex).unwrap();
        assert!(irreducible_factors(&r2.parse("x^2 + x + 1").unwrap()).is_none());
    }

    #[test]
    fn square_roots() {
        let r = PolyRing::new(Field::Rational, &["x", "y"], OrderKind::Lex).unwrap();
        let s = poly_sqrt(&r.parse("4*x^2 - 12*x*y + 9*y^2").unwrap()).unwrap();
        assert_eq!(&s * &s, r.parse("4*x^2 - 12*x*y + 9*y^2").unwrap());
        assert!(poly_sqrt(&r.parse("x^2 + y").unwrap()).is_none());
    }
}

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::coeff::Coeff;
use super::monomial::Monomial;
use super::ring::PolyRing;
use crate::error::{Error, Result};

/// A sparse polynomial. Terms are kept sorted strictly descending under the
/// ring's monomial order, with no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, Coeff)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Exact ring arithmetic with a structured error when the operands live in
/// different rings.
pub fn poly_arith(a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(ring: &Arc<PolyRing>, mut terms: Vec<(Monomial, Coeff)>) -> Self {
        let ord = ring.order();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Coeff)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = last.1.add(&c),
                _ => {
                    if let Some(last) = out.last() {
                        if last.1.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if matches!(out.last(), Some(l) if l.1.is_zero()) {
            out.pop();
        }
        Polynomial { ring: ring.clone(), terms: out }
    }

    /// Wraps terms already in canonical order.
    pub(crate) fn from_sorted_terms(ring: &Arc<PolyRing>, terms: Vec<(Monomial, Coeff)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| !t.1.is_zero()));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Coeff)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Coeff)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.terms.first().map(|t| &t.1)
    }

    /// Total degree; the zero polynomial reports `None`.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.iter().map(|(m, _)| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exps()[var]).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exps()[var] > 0)
    }

    pub fn same_ring(&self, o: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &o.ring) || self.ring == o.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch { left: self.ring.to_string(), right: o.ring.to_string() })
        }
    }

    fn merge(&self, o: &Polynomial, negate: bool) -> Polynomial {
        let ord = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < o.terms.len() {
            let (a, b) = (&self.terms[i], &o.terms[j]);
            match ord.cmp(&a.0, &b.0) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b.0.clone(), if negate { b.1.neg() } else { b.1.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { a.1.sub(&b.1) } else { a.1.add(&b.1) };
                    if !c.is_zero() {
                        out.push((a.0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(
            o.terms[j..]
                .iter()
                .map(|b| (b.0.clone(), if negate { b.1.neg() } else { b.1.clone() })),
        );
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn checked_add(&self, o: &Polynomial) -> Result<Polynomial> {
        self.same_ring(o)?;
        Ok(self.merge(o, false))
    }

    pub fn checked_sub(&self, o: &Polynomial) -> Result<Polynomial> {
        self.same_ring(o)?;
        Ok(self.merge(o, true))
    }

    pub fn checked_mul(&self, o: &Polynomial) -> Result<Polynomial> {
        self.same_ring(o)?;
        if self.is_zero() || o.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let mut terms = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                terms.push((ma.mul(mb), ca.mul(cb)));
            }
        }
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect(),
        }
    }

    /// `c * m * self`; multiplication by a monomial preserves term order.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(a, b)| (a.mul(m), b.mul(c))).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            Some(c) if !c.is_one() => self.scale(&c.inv()),
            _ => self.clone(),
        }
    }

    /// Coefficients with respect to `var`: entry `k` is the coefficient of
    /// `var^k`, itself free of `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let d = self.degree_in(var) as usize;
        let mut parts: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let mut e = m.exps().to_vec();
            let k = e[var] as usize;
            e[var] = 0;
            parts[k].push((Monomial::new(e), c.clone()));
        }
        parts.into_iter().map(|t| Polynomial::from_terms(&self.ring, t)).collect()
    }

    /// Replaces `var` by `value` everywhere.
    pub fn substitute(&self, var: usize, value: &Polynomial) -> Polynomial {
        let coeffs = self.coefficients_in(var);
        // Horner in `value`.
        let mut acc = Polynomial::zero(&self.ring);
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Polynomial) -> Option<Polynomial> {
        let (dm, dc) = d.leading_term()?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.leading_term() {
            let q = dm.quotient_of(m)?;
            let qc = c.div(dc);
            rem = &rem - &d.mul_term(&q, &qc);
            quot.push((q, qc));
        }
        Some(Polynomial::from_terms(&self.ring, quot))
    }

    /// Re-reads the polynomial in `target`, sending variable `i` to
    /// variable `map[i]`. Fields must agree.
    pub fn map_vars(&self, target: &Arc<PolyRing>, map: &[usize]) -> Polynomial {
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; n];
                for (i, &x) in m.exps().iter().enumerate() {
                    e[map[i]] += x;
                }
                (Monomial::new(e), c.clone())
            })
            .collect();
        Polynomial::from_terms(target, terms)
    }

    /// Reads the polynomial in a ring that extends this one by trailing variables.
    pub fn embed(&self, target: &Arc<PolyRing>) -> Polynomial {
        let map: Vec<usize> = (0..self.ring.nvars()).collect();
        self.map_vars(target, &map)
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms && (Arc::ptr_eq(&self.ring, &o.ring) || self.ring == o.ring)
    }
}

impl Eq for Polynomial {}

impl Hash for Polynomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            let mut first = true;
            for (v, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", self.ring.vars()[v])?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

macro_rules! panicking_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl std::ops::$tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            /// Panics when the operands live in different rings; use the
            /// `checked_*` methods for a recoverable error.
            fn $method(self, o: &Polynomial) -> Polynomial {
                self.$checked(o).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

panicking_op!(Add, add, checked_add);
panicking_op!(Sub, sub, checked_sub);
panicking_op!(Mul, mul, checked_mul);

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Field, OrderKind};
    use proptest::prelude::*;

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(Field::Rational, &["x", "y", "z"], OrderKind::Grevlex).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let r = ring();
        let p = |s: &str| r.parse(s).unwrap();
        assert_eq!(poly_arith(&p("x+y"), &p("x-y"), ArithOp::Add).unwrap(), p("2*x"));
        assert!(poly_arith(&p("x+y"), &p("0"), ArithOp::Mul).unwrap().is_zero());
        // Term-by-term expansion: x*x + x*(-1) + 1*x + 1*(-1).
        let expanded = Polynomial::from_terms(
            &r,
            vec![
                (Monomial::new(vec![2, 0, 0]), Field::Rational.from_i64(1)),
                (Monomial::new(vec![1, 0, 0]), Field::Rational.from_i64(-1)),
                (Monomial::new(vec![1, 0, 0]), Field::Rational.from_i64(1)),
                (Monomial::new(vec![0, 0, 0]), Field::Rational.from_i64(-1)),
            ],
        );
        assert_eq!(poly_arith(&p("x+1"), &p("x-1"), ArithOp::Mul).unwrap(), expanded);
        assert_eq!(expanded.to_string(), "x^2 - 1");
    }

    #[test]
    fn ring_mismatch_names_both_rings() {
        let a = ring().parse("x").unwrap();
        let other = PolyRing::new(Field::Prime(7), &["x"], OrderKind::Lex).unwrap();
        let b = other.parse("x").unwrap();
        match a.checked_add(&b) {
            Err(Error::RingMismatch { left, right }) => {
                assert!(left.contains("QQ"));
                assert!(right.contains("GF(7)"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn substitution_and_division() {
        let r = ring();
        let p = |s: &str| r.parse(s).unwrap();
        let f = p("x^3 - z");
        assert_eq!(f.substitute(0, &p("y+1")), p("y^3 + 3*y^2 + 3*y + 1 - z"));
        assert_eq!(p("x^2 - y^2").exact_div(&p("x + y")), Some(p("x - y")));
        assert_eq!(p("x^2 + y").exact_div(&p("x + y")), None);
    }

    fn small_poly(r: Arc<PolyRing>) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((prop::collection::vec(0u32..3, 3), -5i64..6, 1i64..4), 0..5)
            .prop_map(move |ts| {
                let terms = ts
                    .into_iter()
                    .map(|(e, n, d)| {
                        let c = Field::Rational
                            .from_rational(&num_rational::BigRational::new(n.into(), d.into()))
                            .unwrap();
                        (Monomial::new(e), c)
                    })
                    .collect();
                Polynomial::from_terms(&r, terms)
            })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(ring()), b in small_poly(ring()), c in small_poly(ring())) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn text_round_trip(a in small_poly(ring())) {
            let r = a.ring().clone();
            let printed = a.to_string();
            let back = r.parse(&printed).unwrap();
            prop_assert_eq!(&back, &a);
            prop_assert_eq!(back.to_string(), printed);
        }
    }
}

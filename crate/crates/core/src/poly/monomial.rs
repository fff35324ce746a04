use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Exponent vector of a power product. Its length is the variable count of
/// the ambient ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * k).collect())
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `o / self` when `self` divides `o`.
    pub fn quotient_of(&self, o: &Monomial) -> Option<Monomial> {
        if self.divides(o) {
            Some(Monomial(o.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn coprime(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    pub fn extend(&self, extra: usize) -> Monomial {
        let mut e = self.0.clone();
        e.extend(std::iter::repeat_n(0, extra));
        Monomial(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Grevlex,
    Lex,
    GradedLex,
}

impl OrderKind {
    pub fn parse(s: &str) -> Result<OrderKind> {
        match s.trim() {
            "grevlex" | "degrevlex" => Ok(OrderKind::Grevlex),
            "lex" => Ok(OrderKind::Lex),
            "glex" | "deglex" | "graded-lex" => Ok(OrderKind::GradedLex),
            other => Err(Error::InvalidArgument(format!("unknown monomial order `{other}`"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            OrderKind::Grevlex => "grevlex",
            OrderKind::Lex => "lex",
            OrderKind::GradedLex => "glex",
        }
    }
}

/// A monomial order together with the variable priority it ranks by:
/// `priority[0]` is the largest variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, nvars: usize) -> Self {
        MonomialOrder { kind, priority: (0..nvars).collect() }
    }

    pub fn with_priority(kind: OrderKind, priority: Vec<usize>) -> Result<Self> {
        let mut seen = priority.clone();
        seen.sort_unstable();
        if seen != (0..priority.len()).collect::<Vec<_>>() {
            return Err(Error::InvalidArgument(format!(
                "variable priority {priority:?} is not a permutation"
            )));
        }
        Ok(MonomialOrder { kind, priority })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn is_identity_priority(&self) -> bool {
        self.priority.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// The same order on a ring with `extra` further variables appended as
    /// the smallest ones.
    pub fn extended(&self, extra: usize) -> Self {
        let n = self.priority.len();
        let mut priority = self.priority.clone();
        priority.extend(n..n + extra);
        MonomialOrder { kind: self.kind, priority }
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != b.nvars() || a.nvars() != self.priority.len() {
            return Err(Error::MonomialLength { left: a.nvars(), right: b.nvars() });
        }
        Ok(self.cmp(a, b))
    }

    /// Unchecked comparison; both monomials must have the order's length.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exps(), b.exps());
        match self.kind {
            OrderKind::Lex => self.lex(ea, eb),
            OrderKind::GradedLex => a.degree().cmp(&b.degree()).then_with(|| self.lex(ea, eb)),
            OrderKind::Grevlex => a.degree().cmp(&b.degree()).then_with(|| {
                for &v in self.priority.iter().rev() {
                    match ea[v].cmp(&eb[v]) {
                        Ordering::Equal => continue,
                        other => return other.reverse(),
                    }
                }
                Ordering::Equal
            }),
        }
    }

    fn lex(&self, ea: &[u32], eb: &[u32]) -> Ordering {
        for &v in &self.priority {
            match ea[v].cmp(&eb[v]) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    }
}

/// Free-standing form of [`MonomialOrder::compare`].
pub fn compare_monomials(m1: &Monomial, m2: &Monomial, ord: &MonomialOrder) -> Result<Ordering> {
    ord.compare(m1, m2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn grevlex_examples() {
        let ord = MonomialOrder::new(OrderKind::Grevlex, 2);
        assert_eq!(ord.compare(&m(&[1, 0]), &m(&[0, 1])).unwrap(), Ordering::Greater);
        assert_eq!(ord.compare(&m(&[2, 1]), &m(&[1, 2])).unwrap(), Ordering::Greater);
        assert_eq!(ord.compare(&m(&[0, 0]), &m(&[1, 0])).unwrap(), Ordering::Less);
    }

    #[test]
    fn grevlex_differs_from_glex_in_three_variables() {
        // x*z^2 vs y^3: glex puts x z^2 first, grevlex puts y^3 first.
        let a = m(&[1, 0, 2]);
        let b = m(&[0, 3, 0]);
        let gl = MonomialOrder::new(OrderKind::GradedLex, 3);
        let gr = MonomialOrder::new(OrderKind::Grevlex, 3);
        assert_eq!(gl.cmp(&a, &b), Ordering::Greater);
        assert_eq!(gr.cmp(&a, &b), Ordering::Less);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let ord = MonomialOrder::new(OrderKind::Lex, 2);
        assert!(ord.compare(&m(&[1, 0]), &m(&[1, 0, 0])).is_err());
    }

    #[test]
    fn priority_reorders_variables() {
        let ord = MonomialOrder::with_priority(OrderKind::Lex, vec![1, 0]).unwrap();
        assert_eq!(ord.cmp(&m(&[1, 0]), &m(&[0, 1])), Ordering::Less);
        assert!(MonomialOrder::with_priority(OrderKind::Lex, vec![0, 0]).is_err());
    }

    fn exps() -> impl Strategy<Value = Vec<u32>> {
        prop::collection::vec(0u32..4, 3)
    }

    fn kinds() -> impl Strategy<Value = OrderKind> {
        prop_oneof![Just(OrderKind::Grevlex), Just(OrderKind::Lex), Just(OrderKind::GradedLex)]
    }

    proptest! {
        #[test]
        fn orders_are_multiplicative_and_well_founded(a in exps(), b in exps(), c in exps(), k in kinds()) {
            let ord = MonomialOrder::new(k, 3);
            let (a, b, c) = (m(&a), m(&b), m(&c));
            let one = Monomial::one(3);
            prop_assert_ne!(ord.cmp(&one, &a), Ordering::Greater);
            let base = ord.cmp(&a, &b);
            prop_assert_eq!(ord.cmp(&a.mul(&c), &b.mul(&c)), base);
            prop_assert_eq!(ord.cmp(&b, &a), base.reverse());
            prop_assert_eq!(base == Ordering::Equal, a == b);
        }
    }
}

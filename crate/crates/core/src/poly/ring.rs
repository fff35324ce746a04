use std::fmt;
use std::sync::Arc;

use super::coeff::{Coeff, Field};
use super::monomial::{Monomial, MonomialOrder, OrderKind};
use super::polynomial::Polynomial;
use crate::error::{Error, Result};

/// A polynomial ring `k[x_1..x_n]` with a fixed monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: Field,
    vars: Vec<String>,
    order: MonomialOrder,
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(field: Field, vars: &[S], kind: OrderKind) -> Result<Arc<PolyRing>> {
        let order = MonomialOrder::new(kind, vars.len());
        Self::with_order(field, vars, order)
    }

    pub fn with_order<S: AsRef<str>>(
        field: Field,
        vars: &[S],
        order: MonomialOrder,
    ) -> Result<Arc<PolyRing>> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if !valid_name(v) {
                return Err(Error::InvalidArgument(format!("invalid variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidArgument(format!("duplicate variable `{v}`")));
            }
        }
        if order.priority().len() != vars.len() {
            return Err(Error::InvalidArgument("order length differs from variable count".into()));
        }
        Ok(Arc::new(PolyRing { field, vars, order }))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn zero(self: &Arc<Self>) -> Polynomial {
        Polynomial::zero(self)
    }

    pub fn one(self: &Arc<Self>) -> Polynomial {
        self.constant(self.field.one())
    }

    pub fn constant(self: &Arc<Self>, c: Coeff) -> Polynomial {
        Polynomial::from_terms(self, vec![(Monomial::one(self.nvars()), c)])
    }

    pub fn from_i64(self: &Arc<Self>, v: i64) -> Polynomial {
        self.constant(self.field.from_i64(v))
    }

    pub fn var(self: &Arc<Self>, i: usize) -> Polynomial {
        Polynomial::from_terms(self, vec![(Monomial::var(self.nvars(), i), self.field.one())])
    }

    pub fn monomial(self: &Arc<Self>, m: Monomial) -> Polynomial {
        Polynomial::from_terms(self, vec![(m, self.field.one())])
    }

    pub fn parse(self: &Arc<Self>, text: &str) -> Result<Polynomial> {
        super::parse::parse_polynomial(self, text)
    }

    /// A name not yet used, trying `candidates` first and then `base1`, `base2`, ...
    pub fn fresh_name(&self, candidates: &[&str], base: &str, taken: &[String]) -> String {
        let used = |s: &str| self.vars.iter().any(|v| v == s) || taken.iter().any(|v| v == s);
        for c in candidates {
            if !used(c) {
                return c.to_string();
            }
        }
        (1..)
            .map(|i| format!("{base}{i}"))
            .find(|s| !used(s))
            .expect("unbounded search")
    }

    /// The ring with `names` appended as the smallest variables.
    pub fn extend(&self, names: &[String]) -> Result<Arc<PolyRing>> {
        let mut vars = self.vars.clone();
        vars.extend(names.iter().cloned());
        Self::with_order(self.field, &vars, self.order.extended(names.len()))
    }

    /// Same variables and order over another coefficient field.
    pub fn with_field(&self, field: Field) -> Arc<PolyRing> {
        Arc::new(PolyRing { field, vars: self.vars.clone(), order: self.order.clone() })
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}] ({})", self.field, self.vars.join(","), self.order.kind().name())
    }
}

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const DEFAULT_PRIME: u32 = 32003;

/// Coefficient field of a polynomial ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    pub fn prime(p: u32) -> Result<Field> {
        if !(2..1 << 31).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^31")));
        }
        Ok(Field::Prime(p))
    }

    /// Parses `q`, `QQ`, `p:<prime>` or `GF(<prime>)`.
    pub fn parse(s: &str) -> Result<Field> {
        let t = s.trim();
        match t {
            "q" | "Q" | "QQ" => Ok(Field::Rational),
            "p" => Field::prime(DEFAULT_PRIME),
            _ => {
                let digits = t
                    .strip_prefix("p:")
                    .or_else(|| t.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')))
                    .ok_or_else(|| Error::InvalidField(format!("unknown field `{t}`")))?;
                let p: u32 = digits
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidField(format!("bad prime `{digits}`")))?;
                Field::prime(p)
            }
        }
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            Field::Rational => Coeff::Rational(BigRational::zero()),
            Field::Prime(p) => Coeff::Modular { value: 0, modulus: *p },
        }
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match self {
            Field::Rational => Coeff::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Coeff::Modular {
                value: v.rem_euclid(*p as i64) as u32,
                modulus: *p,
            },
        }
    }

    pub fn from_rational(&self, r: &BigRational) -> Result<Coeff> {
        match self {
            Field::Rational => Ok(Coeff::Rational(r.clone())),
            Field::Prime(p) => {
                let pb = BigInt::from(*p);
                let num = mod_bigint(r.numer(), &pb);
                let den = mod_bigint(r.denom(), &pb);
                if den == 0 {
                    return Err(Error::InvalidField(format!(
                        "denominator of {r} vanishes modulo {p}"
                    )));
                }
                let value = (num as u64 * inv_mod(den, *p) as u64 % *p as u64) as u32;
                Ok(Coeff::Modular { value, modulus: *p })
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

fn mod_bigint(v: &BigInt, p: &BigInt) -> u32 {
    let r = ((v % p) + p) % p;
    r.to_u32().expect("residue fits in u32")
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a != 0);
    pow_mod(a as u64, p as u64 - 2, p as u64) as u32
}

/// Square root modulo an odd prime (Tonelli-Shanks).
fn sqrt_mod(a: u32, p: u32) -> Option<u32> {
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    let (a, p64) = (a as u64, p as u64);
    if pow_mod(a, (p64 - 1) / 2, p64) != 1 {
        return None;
    }
    let mut q = p64 - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2u64;
    while pow_mod(z, (p64 - 1) / 2, p64) != p64 - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p64);
    let mut t = pow_mod(a, q, p64);
    let mut r = pow_mod(a, q.div_ceil(2), p64);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = t2 * t2 % p64;
            i += 1;
        }
        let b = pow_mod(c, 1u64 << (m - i - 1), p64);
        m = i;
        c = b * b % p64;
        t = t * c % p64;
        r = r * b % p64;
    }
    Some(r as u32)
}

/// An exact field element: a reduced rational or a residue modulo a prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Rational(BigRational),
    Modular { value: u32, modulus: u32 },
}

impl Coeff {
    pub fn field(&self) -> Field {
        match self {
            Coeff::Rational(_) => Field::Rational,
            Coeff::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rational(r) => r.is_zero(),
            Coeff::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Rational(r) => r.is_one(),
            Coeff::Modular { value, .. } => *value == 1,
        }
    }

    /// Sign used by the printer; residues are always non-negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Coeff::Rational(r) => r.is_negative(),
            Coeff::Modular { .. } => false,
        }
    }

    pub fn add(&self, o: &Coeff) -> Coeff {
        match (self, o) {
            (Coeff::Rational(a), Coeff::Rational(b)) => Coeff::Rational(a + b),
            (Coeff::Modular { value: a, modulus: p }, Coeff::Modular { value: b, modulus: q })
                if p == q =>
            {
                Coeff::Modular {
                    value: ((*a as u64 + *b as u64) % *p as u64) as u32,
                    modulus: *p,
                }
            }
            _ => mismatch(self, o),
        }
    }

    pub fn sub(&self, o: &Coeff) -> Coeff {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Coeff) -> Coeff {
        match (self, o) {
            (Coeff::Rational(a), Coeff::Rational(b)) => Coeff::Rational(a * b),
            (Coeff::Modular { value: a, modulus: p }, Coeff::Modular { value: b, modulus: q })
                if p == q =>
            {
                Coeff::Modular {
                    value: ((*a as u64 * *b as u64) % *p as u64) as u32,
                    modulus: *p,
                }
            }
            _ => mismatch(self, o),
        }
    }

    pub fn neg(&self) -> Coeff {
        match self {
            Coeff::Rational(a) => Coeff::Rational(-a),
            Coeff::Modular { value, modulus } => Coeff::Modular {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Coeff {
        assert!(!self.is_zero(), "inverse of zero coefficient");
        match self {
            Coeff::Rational(a) => Coeff::Rational(a.recip()),
            Coeff::Modular { value, modulus } => Coeff::Modular {
                value: inv_mod(*value, *modulus),
                modulus: *modulus,
            },
        }
    }

    pub fn div(&self, o: &Coeff) -> Coeff {
        self.mul(&o.inv())
    }

    /// A square root in the same field, when one exists.
    pub fn sqrt(&self) -> Option<Coeff> {
        match self {
            Coeff::Rational(r) => {
                if r.is_negative() {
                    return None;
                }
                let n = r.numer().sqrt();
                let d = r.denom().sqrt();
                if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
                    Some(Coeff::Rational(BigRational::new(n, d)))
                } else {
                    None
                }
            }
            Coeff::Modular { value, modulus } => {
                sqrt_mod(*value, *modulus).map(|v| Coeff::Modular { value: v, modulus: *modulus })
            }
        }
    }
}

#[cold]
fn mismatch(a: &Coeff, b: &Coeff) -> ! {
    panic!("coefficient field mismatch: {} vs {}", a.field(), b.field())
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Coeff::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_in_lowest_terms() {
        let f = Field::Rational;
        let a = f.from_rational(&BigRational::new(4.into(), (-6).into())).unwrap();
        match &a {
            Coeff::Rational(r) => {
                assert_eq!(r.numer(), &BigInt::from(-2));
                assert_eq!(r.denom(), &BigInt::from(3));
            }
            _ => unreachable!(),
        }
        assert_eq!(a.to_string(), "-2/3");
    }

    #[test]
    fn residues_are_canonical() {
        let f = Field::Prime(7);
        assert_eq!(f.from_i64(-1), Coeff::Modular { value: 6, modulus: 7 });
        assert_eq!(f.from_i64(15), Coeff::Modular { value: 1, modulus: 7 });
        let half = f.from_rational(&BigRational::new(1.into(), 2.into())).unwrap();
        assert_eq!(half.mul(&f.from_i64(2)), f.one());
    }

    #[test]
    fn denominator_divisible_by_p_is_rejected() {
        let f = Field::Prime(5);
        assert!(f.from_rational(&BigRational::new(1.into(), 10.into())).is_err());
    }

    #[test]
    fn field_parsing() {
        assert_eq!(Field::parse("q").unwrap(), Field::Rational);
        assert_eq!(Field::parse("p:32003").unwrap(), Field::Prime(32003));
        assert_eq!(Field::parse("GF(7)").unwrap(), Field::Prime(7));
        assert!(Field::parse("p:32004").is_err());
        assert!(Field::parse("r").is_err());
    }

    #[test]
    fn modular_square_roots() {
        for p in [3u32, 7, 13, 32003] {
            for a in 0..p.min(200) {
                let c = Coeff::Modular { value: a, modulus: p };
                if let Some(r) = c.sqrt() {
                    assert_eq!(r.mul(&r), c);
                }
            }
        }
        let q = Field::Rational;
        assert_eq!(
            q.from_rational(&BigRational::new(9.into(), 4.into())).unwrap().sqrt(),
            Some(q.from_rational(&BigRational::new(3.into(), 2.into())).unwrap())
        );
        assert_eq!(q.from_i64(2).sqrt(), None);
    }
}

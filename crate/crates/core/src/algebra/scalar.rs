//! Exact coefficient fields: the rationals and prime fields.
//!
//! Every scalar is stored as a reduced [`BigRational`]. Over a prime field the
//! stored value is always the canonical integer representative in `0..p`, so
//! equality is syntactic in both cases.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::Value;

use super::BaseAlgebra;
use crate::error::{Error, Result};

/// A field element. Meaningful only together with its [`CoefficientField`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// The ground field `k`: either `Q` or `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientField {
    Rational,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_pow(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u128;
    let mut b = (base % p) as u128;
    let m = p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

impl CoefficientField {
    pub fn rationals() -> Self {
        CoefficientField::Rational
    }

    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(CoefficientField::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// 0 for `Q`, `p` for `F_p`.
    pub fn characteristic(&self) -> u64 {
        match self {
            CoefficientField::Rational => 0,
            CoefficientField::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar(BigRational::zero())
    }

    pub fn one(&self) -> Scalar {
        Scalar(BigRational::one())
    }

    fn residue(&self, n: &BigInt, p: u64) -> u64 {
        n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits in u64")
    }

    /// Maps an arbitrary rational into the field.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match *self {
            CoefficientField::Rational => Ok(Scalar(q.clone())),
            CoefficientField::Prime(p) => {
                let num = self.residue(q.numer(), p);
                let den = self.residue(q.denom(), p);
                if den == 0 {
                    return Err(Error::DivisionByZero);
                }
                let inv = mod_pow(den, p - 2, p);
                let v = (num as u128 * inv as u128 % p as u128) as u64;
                Ok(Scalar(BigRational::from_integer(BigInt::from(v))))
            }
        }
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.from_rational(&BigRational::from_integer(BigInt::from(n)))
            .expect("integers have unit denominator")
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        self.from_rational(&BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn canon(&self, q: BigRational) -> Scalar {
        match self {
            CoefficientField::Rational => Scalar(q),
            CoefficientField::Prime(_) => self
                .from_rational(&q)
                .expect("field operations never divide by a multiple of p"),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.canon(&a.0 + &b.0)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.canon(&a.0 - &b.0)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.canon(-&a.0)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.canon(&a.0 * &b.0)
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if a.is_zero() {
            return Err(Error::NotInvertible);
        }
        match *self {
            CoefficientField::Rational => Ok(Scalar(a.0.recip())),
            CoefficientField::Prime(p) => {
                let v = self.residue(a.0.numer(), p);
                let inv = mod_pow(v, p - 2, p);
                Ok(Scalar(BigRational::from_integer(BigInt::from(inv))))
            }
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Parses `"3"`, `"-3/4"` and maps the result into the field.
    pub fn parse(&self, text: &str) -> Result<Scalar> {
        let q = parse_rational(text)?;
        self.from_rational(&q)
    }

    pub fn describe(&self) -> String {
        match self {
            CoefficientField::Rational => "Q".to_string(),
            CoefficientField::Prime(p) => format!("F_{p}"),
        }
    }
}

pub(crate) fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("invalid rational `{text}`"));
    if t.is_empty() {
        return Err(bad());
    }
    match t.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(t).map_err(|_| bad())?,
        )),
    }
}

pub(crate) fn scalar_from_json(field: &CoefficientField, v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => field.parse(s),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(field.from_int(i)),
            None => Err(Error::Parse(format!("non-integer JSON number {n}"))),
        },
        _ => Err(Error::Parse(format!("expected a scalar, got {v}"))),
    }
}

/// The coefficient field viewed as a one-dimensional base algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarAlgebra {
    field: CoefficientField,
}

impl ScalarAlgebra {
    pub fn new(field: CoefficientField) -> Self {
        Self { field }
    }
}

impl BaseAlgebra for ScalarAlgebra {
    type Elem = Scalar;

    fn field(&self) -> &CoefficientField {
        &self.field
    }

    fn zero(&self) -> Scalar {
        self.field.zero()
    }

    fn one(&self) -> Scalar {
        self.field.one()
    }

    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.field.add(a, b)
    }

    fn neg(&self, a: &Scalar) -> Scalar {
        self.field.neg(a)
    }

    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.field.sub(a, b)
    }

    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.field.mul(a, b)
    }

    fn scale(&self, c: &Scalar, a: &Scalar) -> Scalar {
        self.field.mul(c, a)
    }

    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }

    fn try_invert(&self, a: &Scalar) -> Result<Scalar> {
        self.field.inv(a)
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn is_field(&self) -> bool {
        true
    }

    fn encode(&self, a: &Scalar) -> Value {
        Value::String(a.to_string())
    }

    fn decode(&self, v: &Value) -> Result<Scalar> {
        scalar_from_json(&self.field, v)
    }

    fn format(&self, a: &Scalar) -> String {
        a.to_string()
    }

    fn describe(&self) -> String {
        self.field.describe()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = CoefficientField::prime(5).unwrap();
        let two = f.from_int(2);
        let three = f.from_int(3);
        assert!(f.add(&two, &three).is_zero());
        assert_eq!(f.inv(&two).unwrap(), three);
        assert_eq!(f.from_ratio(1, 2).unwrap(), three);
        assert_eq!(f.from_int(-1), f.from_int(4));
        assert_eq!(f.from_ratio(1, 5), Err(Error::DivisionByZero));
    }

    #[test]
    fn characteristic_kills_multiples() {
        let f = CoefficientField::prime(7).unwrap();
        let a = f.from_int(3);
        let mut acc = f.zero();
        for _ in 0..7 {
            acc = f.add(&acc, &a);
        }
        assert!(acc.is_zero());
        assert_eq!(f.characteristic(), 7);
        assert_eq!(CoefficientField::rationals().characteristic(), 0);
    }

    #[test]
    fn rejects_composites() {
        assert_eq!(CoefficientField::prime(1), Err(Error::NotPrime(1)));
        assert_eq!(CoefficientField::prime(9), Err(Error::NotPrime(9)));
        assert!(CoefficientField::prime(2).is_ok());
    }

    #[test]
    fn parse_and_display() {
        let q = CoefficientField::rationals();
        let s = q.parse(" -6/4 ").unwrap();
        assert_eq!(s.to_string(), "-3/2");
        assert_eq!(q.parse("7").unwrap().to_string(), "7");
        assert!(q.parse("x").is_err());
        assert_eq!(q.parse("1/0"), Err(Error::DivisionByZero));
        assert_eq!(q.inv(&q.zero()), Err(Error::NotInvertible));
    }
}

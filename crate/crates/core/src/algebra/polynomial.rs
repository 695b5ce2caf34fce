//! Sparse polynomials on symplectic coordinates `x1..xn, p1..pn`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Value};

use super::scalar::{parse_rational, scalar_from_json};
use super::{BaseAlgebra, CoefficientField, Scalar};
use crate::error::{Error, Result};

/// A symplectic coordinate, 1-based as in the text grammar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variable {
    X(usize),
    P(usize),
}

impl Variable {
    pub fn parse(name: &str, dof: usize) -> Result<Variable> {
        let unknown = || Error::UnknownVariable(name.to_string());
        let (head, tail) = name.split_at(1.min(name.len()));
        let idx = if tail.is_empty() {
            // bare `x`/`p` only make sense with one degree of freedom
            if dof == 1 {
                1
            } else {
                return Err(unknown());
            }
        } else {
            tail.parse::<usize>().map_err(|_| unknown())?
        };
        if idx == 0 || idx > dof {
            return Err(unknown());
        }
        match head {
            "x" => Ok(Variable::X(idx)),
            "p" => Ok(Variable::P(idx)),
            _ => Err(unknown()),
        }
    }

    /// Position in an exponent vector of length `2 * dof`.
    pub fn slot(&self, dof: usize) -> usize {
        match *self {
            Variable::X(i) => i - 1,
            Variable::P(i) => dof + i - 1,
        }
    }

    fn check(&self, dof: usize) -> Result<()> {
        let i = match *self {
            Variable::X(i) | Variable::P(i) => i,
        };
        if i == 0 || i > dof {
            Err(Error::UnknownVariable(self.to_string()))
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::X(i) => write!(f, "x{i}"),
            Variable::P(i) => write!(f, "p{i}"),
        }
    }
}

/// Exponent vector ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `2 * dof` variables, kept in canonical form (no stored
/// zero coefficients), so structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    dof: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(dof: usize) -> Self {
        Polynomial {
            dof,
            terms: BTreeMap::new(),
        }
    }

    pub fn dof(&self) -> usize {
        self.dof
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&Monomial::one(2 * self.dof))
            .cloned()
            .unwrap_or_else(|| CoefficientField::Rational.zero())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_constant(&self) -> bool {
        self.degree().unwrap_or(0) == 0
    }
}

/// Polynomial functions on symplectic `R^{2n}` with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialAlgebra {
    field: CoefficientField,
    dof: usize,
}

impl PolynomialAlgebra {
    pub fn new(field: CoefficientField, dof: usize) -> Result<Self> {
        if dof == 0 {
            return Err(Error::Invalid(
                "polynomial algebra needs at least one degree of freedom".into(),
            ));
        }
        Ok(Self { field, dof })
    }

    pub fn dof(&self) -> usize {
        self.dof
    }

    pub fn nvars(&self) -> usize {
        2 * self.dof
    }

    fn check(&self, f: &Polynomial) -> Result<()> {
        if f.dof != self.dof {
            return Err(Error::VariableMismatch {
                left: self.dof,
                right: f.dof,
            });
        }
        Ok(())
    }

    pub fn constant(&self, c: Scalar) -> Polynomial {
        self.monomial(Monomial::one(self.nvars()), c)
    }

    pub fn monomial(&self, m: Monomial, c: Scalar) -> Polynomial {
        debug_assert_eq!(m.0.len(), self.nvars());
        let mut p = Polynomial::zero(self.dof);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn variable(&self, v: Variable) -> Result<Polynomial> {
        v.check(self.dof)?;
        let mut e = vec![0; self.nvars()];
        e[v.slot(self.dof)] = 1;
        Ok(self.monomial(Monomial(e), self.field.one()))
    }

    /// `x_i` (1-based).
    pub fn x(&self, i: usize) -> Polynomial {
        self.variable(Variable::X(i)).expect("x index in range")
    }

    /// `p_i` (1-based).
    pub fn p(&self, i: usize) -> Polynomial {
        self.variable(Variable::P(i)).expect("p index in range")
    }

    pub fn poly_add(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        self.check(g)?;
        let mut out = f.clone();
        for (m, c) in &g.terms {
            self.accumulate(&mut out.terms, m.clone(), c);
        }
        Ok(out)
    }

    pub fn poly_mul(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        self.check(g)?;
        let mut terms = BTreeMap::new();
        for (mf, cf) in &f.terms {
            for (mg, cg) in &g.terms {
                self.accumulate(&mut terms, mf.mul(mg), &self.field.mul(cf, cg));
            }
        }
        Ok(Polynomial {
            dof: self.dof,
            terms,
        })
    }

    fn accumulate(&self, terms: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: &Scalar) {
        use std::collections::btree_map::Entry;
        match terms.entry(m) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c.clone());
                }
            }
            Entry::Occupied(mut o) => {
                let s = self.field.add(o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// `k`-th partial derivative in `v`.
    pub fn diff(&self, f: &Polynomial, v: Variable, order: u32) -> Result<Polynomial> {
        self.check(f)?;
        v.check(self.dof)?;
        let mut alpha = vec![0; self.nvars()];
        alpha[v.slot(self.dof)] = order;
        Ok(self.diff_multi(f, &alpha))
    }

    /// Mixed partial derivative `∂^alpha f` for a full exponent vector `alpha`.
    pub fn diff_multi(&self, f: &Polynomial, alpha: &[u32]) -> Polynomial {
        debug_assert_eq!(alpha.len(), self.nvars());
        let mut terms = BTreeMap::new();
        'term: for (m, c) in &f.terms {
            let mut factor = BigInt::one();
            let mut exps = m.0.clone();
            for (e, &a) in exps.iter_mut().zip(alpha) {
                if *e < a {
                    continue 'term;
                }
                for k in 0..a {
                    factor *= *e - k;
                }
                *e -= a;
            }
            let factor = self
                .field
                .from_rational(&BigRational::from_integer(factor))
                .expect("integer factor");
            self.accumulate(&mut terms, Monomial(exps), &self.field.mul(c, &factor));
        }
        Polynomial {
            dof: self.dof,
            terms,
        }
    }

    /// `{f, g} = Σ_i ∂f/∂x_i ∂g/∂p_i - ∂f/∂p_i ∂g/∂x_i`.
    pub fn poisson_bracket(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        self.check(g)?;
        let mut out = Polynomial::zero(self.dof);
        for i in 1..=self.dof {
            let (x, p) = (Variable::X(i), Variable::P(i));
            let a = self.poly_mul(&self.diff(f, x, 1)?, &self.diff(g, p, 1)?)?;
            let b = self.poly_mul(&self.diff(f, p, 1)?, &self.diff(g, x, 1)?)?;
            out = self.poly_add(&out, &a)?;
            out = self.poly_add(&out, &self.neg(&b))?;
        }
        Ok(out)
    }

    /// Evaluates at a point given as `[x1..xn, p1..pn]`.
    pub fn evaluate(&self, f: &Polynomial, point: &[Scalar]) -> Result<Scalar> {
        self.check(f)?;
        if point.len() != self.nvars() {
            return Err(Error::DimensionMismatch {
                left: self.nvars(),
                right: point.len(),
            });
        }
        let mut acc = self.field.zero();
        for (m, c) in &f.terms {
            let mut t = c.clone();
            for (v, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t = self.field.mul(&t, v);
                }
            }
            acc = self.field.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Parses the text grammar, e.g. `3/2 x1^2 p1 - x2`.
    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        Parser::new(self, text).parse()
    }

    fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (slot, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let v = if slot < self.dof {
                Variable::X(slot + 1)
            } else {
                Variable::P(slot - self.dof + 1)
            };
            if e == 1 {
                parts.push(v.to_string());
            } else {
                parts.push(format!("{v}^{e}"));
            }
        }
        parts.join(" ")
    }
}

fn int_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(i) => json!(i),
        None => Value::String(n.to_string()),
    }
}

fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("expected an integer, got {n}"))),
        Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("expected an integer, got `{s}`"))),
        _ => Err(Error::Parse(format!("expected an integer, got {v}"))),
    }
}

impl BaseAlgebra for PolynomialAlgebra {
    type Elem = Polynomial;

    fn field(&self) -> &CoefficientField {
        &self.field
    }

    fn zero(&self) -> Polynomial {
        Polynomial::zero(self.dof)
    }

    fn one(&self) -> Polynomial {
        self.constant(self.field.one())
    }

    fn add(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.poly_add(a, b).expect("operands share the variable set")
    }

    fn neg(&self, a: &Polynomial) -> Polynomial {
        Polynomial {
            dof: a.dof,
            terms: a
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.field.neg(c)))
                .collect(),
        }
    }

    fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.poly_mul(a, b).expect("operands share the variable set")
    }

    fn scale(&self, c: &Scalar, a: &Polynomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(a.dof);
        }
        Polynomial {
            dof: a.dof,
            terms: a
                .terms
                .iter()
                .map(|(m, t)| (m.clone(), self.field.mul(c, t)))
                .filter(|(_, t)| !t.is_zero())
                .collect(),
        }
    }

    fn is_zero(&self, a: &Polynomial) -> bool {
        a.is_zero()
    }

    /// Units of a polynomial ring over a field are the nonzero constants.
    fn try_invert(&self, a: &Polynomial) -> Result<Polynomial> {
        if !a.is_constant() {
            return Err(Error::NotInvertible);
        }
        let c = a
            .terms
            .values()
            .next()
            .cloned()
            .unwrap_or_else(|| self.field.zero());
        Ok(self.constant(self.field.inv(&c)?))
    }

    fn is_commutative(&self) -> bool {
        true
    }

    /// `[[exponents], numerator, denominator]` per term, leading term first.
    fn encode(&self, a: &Polynomial) -> Value {
        Value::Array(
            a.terms
                .iter()
                .rev()
                .map(|(m, c)| json!([m.0, int_json(c.numer()), int_json(c.denom())]))
                .collect(),
        )
    }

    fn decode(&self, v: &Value) -> Result<Polynomial> {
        match v {
            Value::String(s) => self.parse(s),
            Value::Number(_) => Ok(self.constant(scalar_from_json(&self.field, v)?)),
            Value::Array(items) => {
                let mut out = self.zero();
                for item in items {
                    let bad = || Error::Parse(format!("invalid polynomial term {item}"));
                    let parts = item.as_array().filter(|a| a.len() == 3).ok_or_else(bad)?;
                    let exps: Vec<u32> = parts[0]
                        .as_array()
                        .ok_or_else(bad)?
                        .iter()
                        .map(|e| e.as_u64().and_then(|e| u32::try_from(e).ok()))
                        .collect::<Option<_>>()
                        .ok_or_else(bad)?;
                    if exps.len() != self.nvars() {
                        return Err(Error::VariableMismatch {
                            left: self.nvars(),
                            right: exps.len(),
                        });
                    }
                    let num = int_from_json(&parts[1])?;
                    let den = int_from_json(&parts[2])?;
                    if den == BigInt::from(0) {
                        return Err(Error::DivisionByZero);
                    }
                    let c = self.field.from_rational(&BigRational::new(num, den))?;
                    let term = self.monomial(Monomial(exps), c);
                    out = self.add(&out, &term);
                }
                Ok(out)
            }
            _ => Err(Error::Parse(format!("expected a polynomial, got {v}"))),
        }
    }

    fn format(&self, a: &Polynomial) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in a.terms.iter().rev().enumerate() {
            let negative = c.value() < &BigRational::from_integer(0.into());
            let mag = if negative {
                self.field.neg(c)
            } else {
                c.clone()
            };
            let mono = self.format_monomial(m);
            let body = match (mono.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => mono,
                (false, false) => format!("{mag} {mono}"),
            };
            match (i, negative) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body);
                }
            }
        }
        out
    }

    fn describe(&self) -> String {
        let vars: Vec<String> = (1..=self.dof)
            .map(|i| format!("x{i}"))
            .chain((1..=self.dof).map(|i| format!("p{i}")))
            .collect();
        format!("{}[{}]", self.field.describe(), vars.join(","))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Slash,
    Caret,
    Star,
}

struct Parser<'a> {
    alg: &'a PolynomialAlgebra,
    text: &'a str,
    tokens: Vec<Token>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(alg: &'a PolynomialAlgebra, text: &'a str) -> Self {
        Parser {
            alg,
            text,
            tokens: Vec::new(),
            pos: 0,
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} in polynomial `{}`", self.text))
    }

    fn tokenize(&mut self) -> Result<()> {
        let mut chars = self.text.chars().peekable();
        while let Some(&c) = chars.peek() {
            match c {
                ' ' | '\t' | '\n' => {
                    chars.next();
                }
                '+' | '-' | '/' | '^' | '*' => {
                    chars.next();
                    self.tokens.push(match c {
                        '+' => Token::Plus,
                        '-' => Token::Minus,
                        '/' => Token::Slash,
                        '^' => Token::Caret,
                        _ => Token::Star,
                    });
                }
                '0'..='9' => {
                    let mut s = String::new();
                    while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                        s.push(d);
                        chars.next();
                    }
                    self.tokens.push(Token::Num(s));
                }
                'a'..='z' | 'A'..='Z' => {
                    let mut s = String::new();
                    while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric()) {
                        s.push(d);
                        chars.next();
                    }
                    self.tokens.push(Token::Ident(s));
                }
                _ => return Err(self.err(&format!("unexpected character `{c}`"))),
            }
        }
        Ok(())
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn parse(mut self) -> Result<Polynomial> {
        self.tokenize()?;
        if self.tokens.is_empty() {
            return Err(self.err("empty input"));
        }
        let alg = self.alg;
        let mut acc = alg.zero();
        let mut first = true;
        while self.peek().is_some() {
            let negative = match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    false
                }
                Some(Token::Minus) => {
                    self.next();
                    true
                }
                _ if first => false,
                _ => return Err(self.err("expected `+` or `-` between terms")),
            };
            first = false;
            let term = self.term()?;
            acc = if negative {
                alg.sub(&acc, &term)
            } else {
                alg.add(&acc, &term)
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let alg = self.alg;
        let mut acc = alg.one();
        let mut factors = 0;
        loop {
            match self.peek() {
                Some(Token::Num(_)) => {
                    let Some(Token::Num(n)) = self.next() else {
                        unreachable!()
                    };
                    let mut text = n;
                    if self.peek() == Some(&Token::Slash) {
                        self.next();
                        match self.next() {
                            Some(Token::Num(d)) => {
                                text.push('/');
                                text.push_str(&d);
                            }
                            _ => return Err(self.err("expected a denominator")),
                        }
                    }
                    let c = alg.field.from_rational(&parse_rational(&text)?)?;
                    acc = alg.scale(&c, &acc);
                }
                Some(Token::Ident(_)) => {
                    let Some(Token::Ident(name)) = self.next() else {
                        unreachable!()
                    };
                    let v = alg.variable(Variable::parse(&name, alg.dof)?)?;
                    let mut e = 1u32;
                    if self.peek() == Some(&Token::Caret) {
                        self.next();
                        match self.next() {
                            Some(Token::Num(d)) => {
                                e = d.parse().map_err(|_| self.err("exponent too large"))?
                            }
                            _ => return Err(self.err("expected an exponent")),
                        }
                    }
                    acc = alg.mul(&acc, &super::power(alg, &v, e));
                }
                Some(Token::Star) if factors > 0 => {
                    self.next();
                    continue;
                }
                _ => break,
            }
            factors += 1;
        }
        if factors == 0 {
            return Err(self.err("expected a term"));
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg1() -> PolynomialAlgebra {
        PolynomialAlgebra::new(CoefficientField::rationals(), 1).unwrap()
    }

    #[test]
    fn products() {
        let a = alg1();
        let (x, p) = (a.x(1), a.p(1));
        assert_eq!(a.mul(&x, &p), a.parse("x1 p1").unwrap());
        let f = a.parse("3 x^2 - 1/2 p + 7").unwrap();
        assert_eq!(a.mul(&f, &a.one()), f);
        let lhs = a.mul(&a.add(&x, &p), &a.sub(&x, &p));
        assert_eq!(lhs, a.parse("x^2 - p^2").unwrap());
    }

    #[test]
    fn derivatives() {
        let a = alg1();
        let x2 = a.parse("x^2").unwrap();
        assert_eq!(a.diff(&x2, Variable::X(1), 1).unwrap(), a.parse("2 x").unwrap());
        assert!(a.diff(&x2, Variable::P(1), 1).unwrap().is_zero());
        let x2p = a.parse("x^2 p").unwrap();
        assert_eq!(a.diff(&x2p, Variable::X(1), 2).unwrap(), a.parse("2 p").unwrap());
        assert_eq!(a.diff(&x2p, Variable::X(1), 0).unwrap(), x2p);
        assert_eq!(
            a.diff(&x2p, Variable::X(2), 1),
            Err(Error::UnknownVariable("x2".into()))
        );
    }

    #[test]
    fn brackets() {
        let a = alg1();
        let (x, p) = (a.x(1), a.p(1));
        assert_eq!(a.poisson_bracket(&x, &p).unwrap(), a.one());
        let x2 = a.parse("x^2").unwrap();
        assert_eq!(a.poisson_bracket(&x2, &p).unwrap(), a.parse("2 x").unwrap());
        let f = a.parse("x^3 p - 2 x p^2 + 5").unwrap();
        assert!(a.poisson_bracket(&f, &f).unwrap().is_zero());
    }

    #[test]
    fn variable_mismatch_is_an_error() {
        let a1 = alg1();
        let a2 = PolynomialAlgebra::new(CoefficientField::rationals(), 2).unwrap();
        let e = a1.poly_mul(&a1.x(1), &a2.x(1)).unwrap_err();
        assert_eq!(e, Error::VariableMismatch { left: 1, right: 2 });
        assert!(a1.poisson_bracket(&a2.x(2), &a1.p(1)).is_err());
    }

    #[test]
    fn grammar() {
        let a = PolynomialAlgebra::new(CoefficientField::rationals(), 2).unwrap();
        let f = a.parse("3/2 x1^2 p1 - x2").unwrap();
        assert_eq!(a.format(&f), "3/2 x1^2 p1 - x2");
        assert_eq!(a.parse("2*x1*3").unwrap(), a.parse("6 x1").unwrap());
        assert_eq!(a.parse("-x1 + x1").unwrap(), a.zero());
        assert!(a.parse("x3").is_err());
        assert!(a.parse("x").is_err());
        assert!(a.parse("x1 +").is_err());
        assert!(a.parse("").is_err());
        assert!(a.parse("x1 $").is_err());
        assert_eq!(a.format(&a.parse("-1").unwrap()), "-1");
    }

    #[test]
    fn canonical_json() {
        let a = alg1();
        let f = a.parse("3/2 x^2 p - x + 4").unwrap();
        let v = a.encode(&f);
        assert_eq!(v, json!([[[2, 1], 3, 2], [[1, 0], -1, 1], [[0, 0], 4, 1]]));
        assert_eq!(a.decode(&v).unwrap(), f);
        assert!(a.decode(&json!([[[1], 1, 1]])).is_err());
    }

    #[test]
    fn units_are_nonzero_constants() {
        let a = alg1();
        let two = a.from_int(2);
        assert_eq!(a.try_invert(&two).unwrap(), a.parse("1/2").unwrap());
        assert_eq!(a.try_invert(&a.x(1)), Err(Error::NotInvertible));
        assert_eq!(a.try_invert(&a.zero()), Err(Error::NotInvertible));
    }

    #[test]
    fn prime_field_derivatives_reduce() {
        let f5 = CoefficientField::prime(5).unwrap();
        let a = PolynomialAlgebra::new(f5, 1).unwrap();
        let f = a.parse("x^5").unwrap();
        assert!(a.diff(&f, Variable::X(1), 1).unwrap().is_zero());
    }
}

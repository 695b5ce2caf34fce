//! Base algebras `A_0`: unital associative algebras over an exact coefficient
//! field, with decidable equality and partial inversion.

mod matrix;
mod polynomial;
mod scalar;

use std::fmt::Debug;

use serde_json::Value;

use crate::error::Result;

pub use matrix::{Matrix, MatrixAlgebra};
pub use polynomial::{Monomial, Polynomial, PolynomialAlgebra, Variable};
pub use scalar::{CoefficientField, Scalar, ScalarAlgebra};

/// A unital associative algebra over a [`CoefficientField`].
///
/// Implementors are lightweight descriptors (the "parent" of their elements);
/// all arithmetic goes through them so that elements stay plain data.
pub trait BaseAlgebra: Clone + Debug + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Send + Sync + 'static;

    fn field(&self) -> &CoefficientField;

    fn zero(&self) -> Self::Elem;

    fn one(&self) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Action of the coefficient field.
    fn scale(&self, c: &Scalar, a: &Self::Elem) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Returns `b` with `ab = ba = 1`, or [`crate::Error::NotInvertible`].
    fn try_invert(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn is_commutative(&self) -> bool;

    fn is_field(&self) -> bool {
        false
    }

    fn from_scalar(&self, c: &Scalar) -> Self::Elem {
        self.scale(c, &self.one())
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_scalar(&self.field().from_int(n))
    }

    /// Canonical JSON encoding of an element.
    fn encode(&self, a: &Self::Elem) -> Value;

    /// Accepts the canonical encoding and, where available, text literals.
    fn decode(&self, v: &Value) -> Result<Self::Elem>;

    /// Human-readable rendering.
    fn format(&self, a: &Self::Elem) -> String;

    fn describe(&self) -> String;
}

/// Algebras whose elements can be evaluated to a scalar at a base point
/// (the origin for polynomials).
pub trait PointEvaluation: BaseAlgebra {
    fn evaluate_at_origin(&self, a: &Self::Elem) -> Scalar;
}

impl PointEvaluation for ScalarAlgebra {
    fn evaluate_at_origin(&self, a: &Scalar) -> Scalar {
        a.clone()
    }
}

impl PointEvaluation for PolynomialAlgebra {
    fn evaluate_at_origin(&self, a: &Polynomial) -> Scalar {
        a.constant_term()
    }
}

/// `a^k` by repeated multiplication; `a^0 = 1`.
pub fn power<R: BaseAlgebra>(alg: &R, a: &R::Elem, k: u32) -> R::Elem {
    let mut acc = alg.one();
    for _ in 0..k {
        acc = alg.mul(&acc, a);
    }
    acc
}

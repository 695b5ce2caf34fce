//! Square matrices over a base algebra.

use std::collections::HashMap;

use serde_json::Value;

use super::{BaseAlgebra, CoefficientField, PointEvaluation, Scalar};
use crate::error::{Error, Result};

/// An `n x n` matrix stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    n: usize,
    entries: Vec<E>,
}

impl<E> Matrix<E> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Matrix { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Invalid("matrix must be at least 1x1".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Matrix { n, entries })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[E] {
        &self.entries
    }

    pub fn map<F>(&self, f: impl FnMut(&E) -> F) -> Matrix<F> {
        Matrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

/// `M_n(R)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixAlgebra<R> {
    entry: R,
    n: usize,
}

impl<R: BaseAlgebra> MatrixAlgebra<R> {
    pub fn new(entry: R, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("matrix dimension must be at least 1".into()));
        }
        Ok(Self { entry, n })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry_algebra(&self) -> &R {
        &self.entry
    }

    pub fn identity(&self) -> Matrix<R::Elem> {
        self.one()
    }

    pub fn diagonal(&self, diag: &[R::Elem]) -> Result<Matrix<R::Elem>> {
        if diag.len() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: diag.len(),
            });
        }
        Ok(Matrix::from_fn(self.n, |i, j| {
            if i == j {
                diag[i].clone()
            } else {
                self.entry.zero()
            }
        }))
    }

    /// Elementary matrix `E_ij` with entry `c`.
    pub fn elementary(&self, i: usize, j: usize, c: R::Elem) -> Matrix<R::Elem> {
        Matrix::from_fn(self.n, |a, b| {
            if a == i && b == j {
                c.clone()
            } else {
                self.entry.zero()
            }
        })
    }

    pub fn trace(&self, m: &Matrix<R::Elem>) -> R::Elem {
        (0..self.n).fold(self.entry.zero(), |acc, i| self.entry.add(&acc, m.get(i, i)))
    }

    fn check(&self, m: &Matrix<R::Elem>) -> Result<()> {
        if m.n != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: m.n,
            });
        }
        Ok(())
    }

    /// Exact inverse. Gauss-Jordan with unit pivots, falling back to the
    /// adjugate formula over commutative entry rings (so polynomial matrices
    /// with a scalar determinant are inverted too).
    pub fn matrix_invert(&self, m: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
        self.check(m)?;
        if let Some(inv) = self.gauss_jordan(m) {
            return Ok(inv);
        }
        if self.entry.is_field() || !self.entry.is_commutative() {
            return Err(Error::NotInvertible);
        }
        let det = self.determinant(m)?;
        let det_inv = self.entry.try_invert(&det)?;
        let adj = self.adjugate(m)?;
        let inv = adj.map(|e| self.entry.mul(&det_inv, e));
        if self.is_one(&self.mul(m, &inv)) && self.is_one(&self.mul(&inv, m)) {
            Ok(inv)
        } else {
            Err(Error::NotInvertible)
        }
    }

    fn gauss_jordan(&self, m: &Matrix<R::Elem>) -> Option<Matrix<R::Elem>> {
        let n = self.n;
        let r = &self.entry;
        let mut a = m.clone();
        let mut inv = self.one();
        for col in 0..n {
            let (pivot_row, pivot_inv) = (col..n)
                .find_map(|row| r.try_invert(a.get(row, col)).ok().map(|p| (row, p)))?;
            if pivot_row != col {
                for j in 0..n {
                    a.entries.swap(col * n + j, pivot_row * n + j);
                    inv.entries.swap(col * n + j, pivot_row * n + j);
                }
            }
            // left-multiply the pivot row by the pivot's inverse
            for j in 0..n {
                let v = r.mul(&pivot_inv, a.get(col, j));
                a.set(col, j, v);
                let w = r.mul(&pivot_inv, inv.get(col, j));
                inv.set(col, j, w);
            }
            for row in 0..n {
                if row == col || r.is_zero(a.get(row, col)) {
                    continue;
                }
                let factor = a.get(row, col).clone();
                for j in 0..n {
                    let v = r.sub(a.get(row, j), &r.mul(&factor, a.get(col, j)));
                    a.set(row, j, v);
                    let w = r.sub(inv.get(row, j), &r.mul(&factor, inv.get(col, j)));
                    inv.set(row, j, w);
                }
            }
        }
        // row operations give a left inverse; over noncommutative entries it
        // still has to be checked on the right
        if self.is_one(&self.mul(m, &inv)) {
            Some(inv)
        } else {
            None
        }
    }

    /// Determinant by memoized Laplace expansion; commutative entries only.
    pub fn determinant(&self, m: &Matrix<R::Elem>) -> Result<R::Elem> {
        self.check(m)?;
        if !self.entry.is_commutative() {
            return Err(Error::Invalid(
                "determinant needs a commutative entry ring".into(),
            ));
        }
        let mut memo = HashMap::new();
        Ok(self.det_rec(m, 0, (1u64 << self.n) - 1, &mut memo))
    }

    fn det_rec(
        &self,
        m: &Matrix<R::Elem>,
        row: usize,
        cols: u64,
        memo: &mut HashMap<u64, R::Elem>,
    ) -> R::Elem {
        let r = &self.entry;
        if row == m.n {
            return r.one();
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let mut acc = r.zero();
        let mut sign_positive = true;
        for col in 0..m.n {
            if cols & (1 << col) == 0 {
                continue;
            }
            let e = m.get(row, col);
            if !r.is_zero(e) {
                let minor = self.det_rec(m, row + 1, cols & !(1 << col), memo);
                let t = r.mul(e, &minor);
                acc = if sign_positive {
                    r.add(&acc, &t)
                } else {
                    r.sub(&acc, &t)
                };
            }
            sign_positive = !sign_positive;
        }
        memo.insert(cols, acc.clone());
        acc
    }

    fn adjugate(&self, m: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
        let n = self.n;
        if n == 1 {
            return Ok(self.one());
        }
        let minor_alg = MatrixAlgebra::new(self.entry.clone(), n - 1)?;
        let mut out = self.zero();
        for i in 0..n {
            for j in 0..n {
                let minor = Matrix::from_fn(n - 1, |a, b| {
                    let a = if a >= i { a + 1 } else { a };
                    let b = if b >= j { b + 1 } else { b };
                    m.get(a, b).clone()
                });
                let d = minor_alg.determinant(&minor)?;
                let c = if (i + j) % 2 == 0 {
                    d
                } else {
                    self.entry.neg(&d)
                };
                // adj is the transposed cofactor matrix
                out.set(j, i, c);
            }
        }
        Ok(out)
    }
}

impl<R: BaseAlgebra> BaseAlgebra for MatrixAlgebra<R> {
    type Elem = Matrix<R::Elem>;

    fn field(&self) -> &CoefficientField {
        self.entry.field()
    }

    fn zero(&self) -> Self::Elem {
        Matrix::from_fn(self.n, |_, _| self.entry.zero())
    }

    fn one(&self) -> Self::Elem {
        Matrix::from_fn(self.n, |i, j| {
            if i == j {
                self.entry.one()
            } else {
                self.entry.zero()
            }
        })
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        assert_eq!(a.n, b.n, "matrix dimensions differ");
        Matrix {
            n: a.n,
            entries: a
                .entries
                .iter()
                .zip(&b.entries)
                .map(|(x, y)| self.entry.add(x, y))
                .collect(),
        }
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.map(|x| self.entry.neg(x))
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        assert_eq!(a.n, b.n, "matrix dimensions differ");
        Matrix {
            n: a.n,
            entries: a
                .entries
                .iter()
                .zip(&b.entries)
                .map(|(x, y)| self.entry.sub(x, y))
                .collect(),
        }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        assert_eq!(a.n, b.n, "matrix dimensions differ");
        let n = a.n;
        let r = &self.entry;
        Matrix::from_fn(n, |i, k| {
            let mut acc = r.zero();
            for j in 0..n {
                let (x, y) = (a.get(i, j), b.get(j, k));
                if r.is_zero(x) || r.is_zero(y) {
                    continue;
                }
                acc = r.add(&acc, &r.mul(x, y));
            }
            acc
        })
    }

    fn scale(&self, c: &Scalar, a: &Self::Elem) -> Self::Elem {
        a.map(|x| self.entry.scale(c, x))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.entries.iter().all(|x| self.entry.is_zero(x))
    }

    fn try_invert(&self, a: &Self::Elem) -> Result<Self::Elem> {
        self.matrix_invert(a)
    }

    fn is_commutative(&self) -> bool {
        self.n == 1 && self.entry.is_commutative()
    }

    fn is_field(&self) -> bool {
        self.n == 1 && self.entry.is_field()
    }

    fn encode(&self, a: &Self::Elem) -> Value {
        Value::Array(
            (0..a.n)
                .map(|i| Value::Array((0..a.n).map(|j| self.entry.encode(a.get(i, j))).collect()))
                .collect(),
        )
    }

    fn decode(&self, v: &Value) -> Result<Self::Elem> {
        let rows = v
            .as_array()
            .ok_or_else(|| Error::Parse(format!("expected a matrix (array of rows), got {v}")))?;
        let rows = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Parse(format!("expected a matrix row, got {row}")))?
                    .iter()
                    .map(|e| self.entry.decode(e))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let m = Matrix::from_rows(rows)?;
        self.check(&m)?;
        Ok(m)
    }

    fn format(&self, a: &Self::Elem) -> String {
        let rows: Vec<String> = (0..a.n)
            .map(|i| {
                let cells: Vec<String> =
                    (0..a.n).map(|j| self.entry.format(a.get(i, j))).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }

    fn describe(&self) -> String {
        format!("M_{}({})", self.n, self.entry.describe())
    }
}

impl<R: PointEvaluation> MatrixAlgebra<R> {
    /// Trace evaluated at the base point.
    pub fn scalar_trace(&self, m: &Matrix<R::Elem>) -> Scalar {
        self.entry.evaluate_at_origin(&self.trace(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PolynomialAlgebra, ScalarAlgebra};
    use serde_json::json;

    fn m2() -> MatrixAlgebra<ScalarAlgebra> {
        MatrixAlgebra::new(ScalarAlgebra::new(CoefficientField::rationals()), 2).unwrap()
    }

    #[test]
    fn invert_over_rationals() {
        let a = m2();
        assert_eq!(a.matrix_invert(&a.one()).unwrap(), a.one());
        let u = a.decode(&json!([[1, 1], [0, 1]])).unwrap();
        let expected = a.decode(&json!([[1, -1], [0, 1]])).unwrap();
        assert_eq!(a.matrix_invert(&u).unwrap(), expected);
        assert_eq!(a.matrix_invert(&a.zero()), Err(Error::NotInvertible));
        let singular = a.decode(&json!([[1, 2], [2, 4]])).unwrap();
        assert_eq!(a.matrix_invert(&singular), Err(Error::NotInvertible));
        let swap = a.decode(&json!([[0, 1], [1, 0]])).unwrap();
        assert_eq!(a.matrix_invert(&swap).unwrap(), swap);
    }

    #[test]
    fn invert_polynomial_matrix_with_scalar_determinant() {
        let pa = PolynomialAlgebra::new(CoefficientField::rationals(), 1).unwrap();
        let a = MatrixAlgebra::new(pa, 2).unwrap();
        // no entry is a unit, det = -1
        let m = a.decode(&json!([["1 + x", "x"], ["x", "x - 1"]])).unwrap();
        assert_eq!(a.determinant(&m).unwrap(), a.entry_algebra().from_int(-1));
        let inv = a.matrix_invert(&m).unwrap();
        assert_eq!(a.mul(&m, &inv), a.one());
        assert_eq!(a.mul(&inv, &m), a.one());
        let bad = a.decode(&json!([["x", 0], [0, 1]])).unwrap();
        assert_eq!(a.matrix_invert(&bad), Err(Error::NotInvertible));
    }

    #[test]
    fn determinant_of_3x3() {
        let a = MatrixAlgebra::new(ScalarAlgebra::new(CoefficientField::rationals()), 3).unwrap();
        let m = a.decode(&json!([[2, 0, 1], [1, 3, 2], [1, 1, 2]])).unwrap();
        assert_eq!(a.determinant(&m).unwrap(), CoefficientField::Rational.from_int(6));
    }

    #[test]
    fn decode_checks_shape() {
        let a = m2();
        assert!(a.decode(&json!([[1, 2], [3]])).is_err());
        assert!(a.decode(&json!([[1]])).is_err());
        assert!(a.decode(&json!(3)).is_err());
    }
}

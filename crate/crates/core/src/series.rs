//! Truncated ℏ-adic series `A_0[ℏ]/(ℏ^N)` with explicit precision.
//!
//! Coefficients are stored densely in the ℏ direction. Binary operations
//! require equal precision; use [`TruncatedSeries::truncate`] to align.

use serde_json::{json, Value};

use crate::algebra::{BaseAlgebra, Matrix, Scalar};
use crate::error::{Error, Result};

/// `Σ_{j<N} a_j ℏ^j` at precision `N = coeffs.len() ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> TruncatedSeries<E> {
    pub fn new(coeffs: Vec<E>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::PrecisionOutOfRange {
                requested: 0,
                max: usize::MAX,
            });
        }
        Ok(TruncatedSeries { coeffs })
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &E {
        &self.coeffs[j]
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    /// `e_0`: the coefficient of ℏ^0.
    pub fn classical_limit(&self) -> &E {
        &self.coeffs[0]
    }

    /// Image in `A/(ℏ^j)`.
    pub fn truncate(&self, j: usize) -> Result<Self> {
        if j == 0 || j > self.precision() {
            return Err(Error::PrecisionOutOfRange {
                requested: j,
                max: self.precision(),
            });
        }
        Ok(TruncatedSeries {
            coeffs: self.coeffs[..j].to_vec(),
        })
    }

    pub fn map<F: Clone>(&self, f: impl FnMut(&E) -> F) -> TruncatedSeries<F> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

impl<E: Clone + PartialEq> TruncatedSeries<E> {
    pub fn constant<R: BaseAlgebra<Elem = E>>(base: &R, a: E, precision: usize) -> Self {
        let mut coeffs = vec![base.zero(); precision.max(1)];
        coeffs[0] = a;
        TruncatedSeries { coeffs }
    }

    pub fn zero<R: BaseAlgebra<Elem = E>>(base: &R, precision: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![base.zero(); precision.max(1)],
        }
    }

    pub fn one<R: BaseAlgebra<Elem = E>>(base: &R, precision: usize) -> Self {
        Self::constant(base, base.one(), precision)
    }

    /// The formal parameter ℏ (zero at precision 1).
    pub fn hbar<R: BaseAlgebra<Elem = E>>(base: &R, precision: usize) -> Self {
        hbar_shift(base, &Self::one(base, precision), 1)
    }

    /// Pads with zero coefficients up to `precision` (the extend-by-zero lift).
    pub fn extend_by_zero<R: BaseAlgebra<Elem = E>>(&self, base: &R, precision: usize) -> Result<Self> {
        if precision < self.precision() {
            return Err(Error::PrecisionOutOfRange {
                requested: precision,
                max: self.precision(),
            });
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(precision, base.zero());
        Ok(TruncatedSeries { coeffs })
    }

    /// Index of the lowest nonzero coefficient, `None` for the zero series.
    pub fn valuation<R: BaseAlgebra<Elem = E>>(&self, base: &R) -> Option<usize> {
        self.coeffs.iter().position(|c| !base.is_zero(c))
    }
}

fn check_precision<E>(a: &TruncatedSeries<E>, b: &TruncatedSeries<E>) -> Result<()> {
    if a.coeffs.len() != b.coeffs.len() {
        return Err(Error::PrecisionMismatch {
            left: a.coeffs.len(),
            right: b.coeffs.len(),
        });
    }
    Ok(())
}

pub fn add<R: BaseAlgebra>(
    base: &R,
    a: &TruncatedSeries<R::Elem>,
    b: &TruncatedSeries<R::Elem>,
) -> Result<TruncatedSeries<R::Elem>> {
    check_precision(a, b)?;
    Ok(TruncatedSeries {
        coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| base.add(x, y)).collect(),
    })
}

pub fn sub<R: BaseAlgebra>(
    base: &R,
    a: &TruncatedSeries<R::Elem>,
    b: &TruncatedSeries<R::Elem>,
) -> Result<TruncatedSeries<R::Elem>> {
    check_precision(a, b)?;
    Ok(TruncatedSeries {
        coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| base.sub(x, y)).collect(),
    })
}

pub fn neg<R: BaseAlgebra>(base: &R, a: &TruncatedSeries<R::Elem>) -> TruncatedSeries<R::Elem> {
    a.map(|x| base.neg(x))
}

pub fn scalar_mul<R: BaseAlgebra>(
    base: &R,
    c: &Scalar,
    a: &TruncatedSeries<R::Elem>,
) -> TruncatedSeries<R::Elem> {
    a.map(|x| base.scale(c, x))
}

/// Multiplication by ℏ^j at fixed precision.
pub fn hbar_shift<R: BaseAlgebra>(
    base: &R,
    a: &TruncatedSeries<R::Elem>,
    j: usize,
) -> TruncatedSeries<R::Elem> {
    let n = a.precision();
    let coeffs = (0..n)
        .map(|q| if q < j { base.zero() } else { a.coeffs[q - j].clone() })
        .collect();
    TruncatedSeries { coeffs }
}

pub fn is_zero<R: BaseAlgebra>(base: &R, a: &TruncatedSeries<R::Elem>) -> bool {
    a.coeffs.iter().all(|c| base.is_zero(c))
}

/// `{ "precision": N, "coeffs": [...] }`.
pub fn to_json<R: BaseAlgebra>(base: &R, a: &TruncatedSeries<R::Elem>) -> Value {
    json!({
        "precision": a.precision(),
        "coeffs": a.coeffs.iter().map(|c| base.encode(c)).collect::<Vec<_>>(),
    })
}

/// Accepts the object form or a bare coefficient list. With `precision`
/// given, shorter lists are padded with zeros and longer ones rejected.
pub fn from_json<R: BaseAlgebra>(
    base: &R,
    v: &Value,
    precision: Option<usize>,
) -> Result<TruncatedSeries<R::Elem>> {
    let (items, declared) = match v {
        Value::Array(items) => (items.clone(), None),
        Value::Object(map) => {
            let items = map
                .get("coeffs")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("series object needs a `coeffs` array".into()))?;
            let declared = match map.get("precision") {
                Some(p) => Some(
                    p.as_u64()
                        .ok_or_else(|| Error::Parse(format!("invalid precision {p}")))?
                        as usize,
                ),
                None => None,
            };
            (items.clone(), declared)
        }
        // a lone element stands for a constant series
        other => (vec![other.clone()], None),
    };
    let coeffs = items
        .iter()
        .map(|c| base.decode(c))
        .collect::<Result<Vec<_>>>()?;
    let target = precision.or(declared).unwrap_or(coeffs.len());
    if target == 0 || coeffs.len() > target {
        return Err(Error::PrecisionOutOfRange {
            requested: coeffs.len(),
            max: target,
        });
    }
    TruncatedSeries::new(coeffs)?.extend_by_zero(base, target)
}

/// Human-readable form, e.g. `x1 p1 + (1/2) h`.
pub fn format<R: BaseAlgebra>(base: &R, a: &TruncatedSeries<R::Elem>) -> String {
    let mut parts = Vec::new();
    for (j, c) in a.coeffs.iter().enumerate() {
        if base.is_zero(c) {
            continue;
        }
        let body = base.format(c);
        parts.push(match j {
            0 => body,
            1 => format!("({body}) h"),
            _ => format!("({body}) h^{j}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// An `n x n` matrix of series sharing one precision: an element of `M_n(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesMatrix<E> {
    n: usize,
    precision: usize,
    entries: Vec<TruncatedSeries<E>>,
}

impl<E: Clone + PartialEq> SeriesMatrix<E> {
    pub fn from_entries(n: usize, entries: Vec<TruncatedSeries<E>>) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                left: n * n,
                right: entries.len(),
            });
        }
        let precision = entries[0].precision();
        for e in &entries {
            if e.precision() != precision {
                return Err(Error::PrecisionMismatch {
                    left: precision,
                    right: e.precision(),
                });
            }
        }
        Ok(SeriesMatrix {
            n,
            precision,
            entries,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn get(&self, i: usize, j: usize) -> &TruncatedSeries<E> {
        &self.entries[i * self.n + j]
    }

    /// `M_n(A_0[ℏ]/ℏ^N) = M_n(A_0)[ℏ]/ℏ^N`.
    pub fn to_matrix_series(&self) -> TruncatedSeries<Matrix<E>> {
        let coeffs = (0..self.precision)
            .map(|q| Matrix::from_fn(self.n, |i, j| self.get(i, j).coeff(q).clone()))
            .collect();
        TruncatedSeries { coeffs }
    }

    pub fn from_matrix_series(s: &TruncatedSeries<Matrix<E>>) -> Self {
        let n = s.coeff(0).dim();
        let entries = (0..n * n)
            .map(|k| TruncatedSeries {
                coeffs: s
                    .coeffs()
                    .iter()
                    .map(|m| m.get(k / n, k % n).clone())
                    .collect(),
            })
            .collect();
        SeriesMatrix {
            n,
            precision: s.precision(),
            entries,
        }
    }

    pub fn identity<R: BaseAlgebra<Elem = E>>(base: &R, n: usize, precision: usize) -> Self {
        let entries = (0..n * n)
            .map(|k| {
                if k / n == k % n {
                    TruncatedSeries::one(base, precision)
                } else {
                    TruncatedSeries::zero(base, precision)
                }
            })
            .collect();
        SeriesMatrix {
            n,
            precision,
            entries,
        }
    }

    pub fn truncate(&self, j: usize) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.truncate(j))
            .collect::<Result<Vec<_>>>()?;
        Ok(SeriesMatrix {
            n: self.n,
            precision: j,
            entries,
        })
    }

    pub fn classical_limit(&self) -> Matrix<E> {
        Matrix::from_fn(self.n, |i, j| self.get(i, j).classical_limit().clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{CoefficientField, MatrixAlgebra, ScalarAlgebra};

    fn q() -> ScalarAlgebra {
        ScalarAlgebra::new(CoefficientField::rationals())
    }

    fn s(v: &[i64]) -> TruncatedSeries<Scalar> {
        TruncatedSeries::new(v.iter().map(|&c| q().from_int(c)).collect()).unwrap()
    }

    #[test]
    fn additive_laws() {
        let b = q();
        assert_eq!(add(&b, &s(&[1, 1]), &s(&[1, -1])).unwrap(), s(&[2, 0]));
        let a = s(&[3, -2, 5]);
        assert_eq!(add(&b, &a, &TruncatedSeries::zero(&b, 3)).unwrap(), a);
        let minus_one = b.field().from_int(-1);
        let z = add(&b, &scalar_mul(&b, &minus_one, &a), &a).unwrap();
        assert!(is_zero(&b, &z));
        assert_eq!(
            add(&b, &s(&[1]), &s(&[1, 2])),
            Err(Error::PrecisionMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn truncation() {
        let a = s(&[1, 1, 1]);
        assert_eq!(a.truncate(1).unwrap(), s(&[1]));
        assert_eq!(a.truncate(3).unwrap(), a);
        assert_eq!(a.truncate(3).unwrap().truncate(2).unwrap(), a.truncate(2).unwrap());
        assert!(a.truncate(0).is_err());
        assert!(a.truncate(4).is_err());
    }

    #[test]
    fn classical_limit_and_shift() {
        let b = q();
        assert_eq!(s(&[4, 7]).classical_limit(), &b.from_int(4));
        assert_eq!(TruncatedSeries::one(&b, 3).classical_limit(), &b.one());
        assert!(b.is_zero(TruncatedSeries::hbar(&b, 3).classical_limit()));
        assert_eq!(hbar_shift(&b, &s(&[1, 0]), 1), s(&[0, 1]));
        let a = s(&[2, 3, 4]);
        assert_eq!(hbar_shift(&b, &a, 0), a);
        assert!(is_zero(&b, &hbar_shift(&b, &TruncatedSeries::one(&b, 4), 4)));
    }

    #[test]
    fn json_forms() {
        let b = q();
        let a = s(&[1, -2, 0]);
        let v = to_json(&b, &a);
        assert_eq!(v, json!({"precision": 3, "coeffs": ["1", "-2", "0"]}));
        assert_eq!(from_json(&b, &v, None).unwrap(), a);
        assert_eq!(from_json(&b, &json!(["1", "-1"]), Some(3)).unwrap(), s(&[1, -1, 0]));
        assert_eq!(from_json(&b, &json!("5"), Some(2)).unwrap(), s(&[5, 0]));
        assert!(from_json(&b, &json!([1, 2, 3]), Some(2)).is_err());
    }

    #[test]
    fn series_matrix_roundtrip() {
        let b = q();
        let entries = vec![s(&[1, 2]), s(&[0, 1]), s(&[3, 0]), s(&[1, 1])];
        let m = SeriesMatrix::from_entries(2, entries).unwrap();
        let back = SeriesMatrix::from_matrix_series(&m.to_matrix_series());
        assert_eq!(back, m);
        assert_eq!(m.truncate(1).unwrap().precision(), 1);
        let id = SeriesMatrix::identity(&b, 2, 2);
        assert_eq!(id.classical_limit(), MatrixAlgebra::new(b, 2).unwrap().one());
        assert!(SeriesMatrix::from_entries(2, vec![s(&[1]), s(&[1, 2]), s(&[1]), s(&[1])]).is_err());
    }
}

//! Gauge twists `T = id + Σ_{k≥1} ℏ^k T_k` and the star products
//! `a ★ b = T⁻¹(T(a)·T(b))` they induce.

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::{
    BaseAlgebra, Matrix, MatrixAlgebra, Polynomial, PolynomialAlgebra, Scalar, ScalarAlgebra,
};
use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

/// A `k`-linear endomorphism of `A_0`.
pub type LinearMap<E> = Arc<dyn Fn(&E) -> E + Send + Sync>;

/// The maps `T_1, …, T_m`; `T_0` is the identity and `T_k = 0` for `k > m`.
/// Every `T_k` annihilates the unit, so `1` stays the ★-unit.
pub struct GaugeTwist<E> {
    maps: Vec<LinearMap<E>>,
    description: Value,
}

impl<E> Clone for GaugeTwist<E> {
    fn clone(&self) -> Self {
        GaugeTwist {
            maps: self.maps.clone(),
            description: self.description.clone(),
        }
    }
}

impl<E> fmt::Debug for GaugeTwist<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GaugeTwist")
            .field("order", &self.maps.len())
            .field("description", &self.description)
            .finish()
    }
}

impl<E: Clone + PartialEq + Send + Sync + 'static> GaugeTwist<E> {
    pub fn new<R: BaseAlgebra<Elem = E>>(
        base: &R,
        maps: Vec<LinearMap<E>>,
        description: Value,
    ) -> Result<Self> {
        let one = base.one();
        for (k, t) in maps.iter().enumerate() {
            if !base.is_zero(&t(&one)) {
                return Err(Error::TwistMovesUnit { order: k + 1 });
            }
        }
        Ok(GaugeTwist { maps, description })
    }

    /// Number of nonzero-able components `T_1..T_m`.
    pub fn order(&self) -> usize {
        self.maps.len()
    }

    pub fn description(&self) -> &Value {
        &self.description
    }

    /// `T_k(a)` for `k ≥ 1`.
    pub fn component<R: BaseAlgebra<Elem = E>>(&self, base: &R, k: usize, a: &E) -> E {
        match self.maps.get(k - 1) {
            Some(t) => t(a),
            None => base.zero(),
        }
    }

    /// Coefficientwise action on a series: `(Ta)_q = a_q + Σ_{k≥1} T_k(a_{q-k})`.
    pub fn apply<R: BaseAlgebra<Elem = E>>(
        &self,
        base: &R,
        a: &TruncatedSeries<E>,
    ) -> TruncatedSeries<E> {
        let n = a.precision();
        let coeffs = (0..n)
            .map(|q| {
                let mut acc = a.coeff(q).clone();
                for k in 1..=q.min(self.order()) {
                    acc = base.add(&acc, &self.component(base, k, a.coeff(q - k)));
                }
                acc
            })
            .collect();
        TruncatedSeries::new(coeffs).expect("precision preserved")
    }

    /// Solves `T(a) = c` coefficient by coefficient.
    pub fn apply_inverse<R: BaseAlgebra<Elem = E>>(
        &self,
        base: &R,
        c: &TruncatedSeries<E>,
    ) -> TruncatedSeries<E> {
        let mut out: Vec<E> = Vec::with_capacity(c.precision());
        for q in 0..c.precision() {
            let mut acc = c.coeff(q).clone();
            for k in 1..=q.min(self.order()) {
                acc = base.sub(&acc, &self.component(base, k, &out[q - k]));
            }
            out.push(acc);
        }
        TruncatedSeries::new(out).expect("precision preserved")
    }

    /// Component `S_m` of `T⁻¹ = Σ ℏ^m S_m`, from `S_0 = id` and
    /// `S_m = −Σ_{k=1}^{m} S_{m−k} ∘ T_k`.
    pub fn inverse_component<R: BaseAlgebra<Elem = E>>(&self, base: &R, m: usize, a: &E) -> E {
        if m == 0 {
            return a.clone();
        }
        let mut acc = base.zero();
        for k in 1..=m.min(self.order()) {
            let tk = self.component(base, k, a);
            if base.is_zero(&tk) {
                continue;
            }
            acc = base.sub(&acc, &self.inverse_component(base, m - k, &tk));
        }
        acc
    }

    /// `φ_p(a, b) = Σ_{m+q=p} S_m(c_q)` with `c_q = Σ_{k+l=q} T_k(a)·T_l(b)`,
    /// i.e. the `ℏ^p` coefficient of `T⁻¹(Σ_q c_q ℏ^q)`.
    pub fn phi<R: BaseAlgebra<Elem = E>>(&self, base: &R, p: usize, a: &E, b: &E) -> E {
        self.phis(base, p, a, b).swap_remove(p)
    }

    /// `[φ_0(a, b), …, φ_upto(a, b)]` in one pass.
    pub fn phis<R: BaseAlgebra<Elem = E>>(&self, base: &R, upto: usize, a: &E, b: &E) -> Vec<E> {
        let ta: Vec<E> = (0..=upto)
            .map(|k| if k == 0 { a.clone() } else { self.component(base, k, a) })
            .collect();
        let tb: Vec<E> = (0..=upto)
            .map(|k| if k == 0 { b.clone() } else { self.component(base, k, b) })
            .collect();
        let c: Vec<E> = (0..=upto)
            .map(|q| {
                let mut c = base.zero();
                for k in 0..=q {
                    if base.is_zero(&ta[k]) || base.is_zero(&tb[q - k]) {
                        continue;
                    }
                    c = base.add(&c, &base.mul(&ta[k], &tb[q - k]));
                }
                c
            })
            .collect();
        let c = TruncatedSeries::new(c).expect("upto + 1 ≥ 1 coefficients");
        self.apply_inverse(base, &c).into_coeffs()
    }

    /// The same twist acting entrywise on `M_n(A_0)`.
    pub fn entrywise(&self) -> GaugeTwist<Matrix<E>> {
        let maps = self
            .maps
            .iter()
            .map(|t| {
                let t = t.clone();
                let lifted: LinearMap<Matrix<E>> = Arc::new(move |m: &Matrix<E>| m.map(|x| t(x)));
                lifted
            })
            .collect();
        GaugeTwist {
            maps,
            description: json!({ "entrywise": self.description }),
        }
    }
}

impl GaugeTwist<Matrix<Scalar>> {
    /// Twists on `M_n(k)` given by `n² × n²` matrices acting on row-major
    /// coordinates.
    pub fn from_matrices(
        alg: &MatrixAlgebra<ScalarAlgebra>,
        mats: Vec<Matrix<Scalar>>,
    ) -> Result<Self> {
        let n = alg.dim();
        let field = *alg.field();
        let description = Value::Array(
            mats.iter()
                .map(|m| {
                    MatrixAlgebra::new(ScalarAlgebra::new(field), m.dim())
                        .map(|a| a.encode(m))
                        .unwrap_or(Value::Null)
                })
                .collect(),
        );
        let mut maps: Vec<LinearMap<Matrix<Scalar>>> = Vec::new();
        for m in mats {
            if m.dim() != n * n {
                return Err(Error::DimensionMismatch {
                    left: n * n,
                    right: m.dim(),
                });
            }
            maps.push(Arc::new(move |a: &Matrix<Scalar>| {
                let v = a.entries();
                Matrix::from_fn(n, |i, j| {
                    let row = i * n + j;
                    let mut acc = field.zero();
                    for (col, x) in v.iter().enumerate() {
                        let c = m.get(row, col);
                        if c.is_zero() || x.is_zero() {
                            continue;
                        }
                        acc = field.add(&acc, &field.mul(c, x));
                    }
                    acc
                })
            }));
        }
        GaugeTwist::new(alg, maps, description)
    }
}

/// `D = Σ c_α(x, p) ∂^α`, a differential operator with polynomial
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialOperator {
    terms: Vec<(Polynomial, Vec<u32>)>,
}

impl DifferentialOperator {
    pub fn new(alg: &PolynomialAlgebra, terms: Vec<(Polynomial, Vec<u32>)>) -> Result<Self> {
        for (c, alpha) in &terms {
            if alpha.len() != alg.nvars() || c.dof() != alg.dof() {
                return Err(Error::VariableMismatch {
                    left: alg.nvars(),
                    right: alpha.len(),
                });
            }
        }
        Ok(DifferentialOperator { terms })
    }

    pub fn apply(&self, alg: &PolynomialAlgebra, f: &Polynomial) -> Polynomial {
        let mut acc = alg.zero();
        for (c, alpha) in &self.terms {
            let d = alg.diff_multi(f, alpha);
            if !d.is_zero() {
                acc = alg.add(&acc, &alg.mul(c, &d));
            }
        }
        acc
    }

    /// `[{"coeff": <polynomial>, "derivative": [exponents]}, ...]`.
    pub fn to_json(&self, alg: &PolynomialAlgebra) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(c, a)| json!({ "coeff": alg.format(c), "derivative": a }))
                .collect(),
        )
    }

    pub fn from_json(alg: &PolynomialAlgebra, v: &Value) -> Result<Self> {
        let items = v
            .as_array()
            .ok_or_else(|| Error::Parse(format!("expected a list of operator terms, got {v}")))?;
        let mut terms = Vec::new();
        for item in items {
            let bad = || Error::Parse(format!("invalid operator term {item}"));
            let coeff = alg.decode(item.get("coeff").ok_or_else(bad)?)?;
            let alpha = item
                .get("derivative")
                .and_then(Value::as_array)
                .ok_or_else(bad)?
                .iter()
                .map(|e| e.as_u64().and_then(|e| u32::try_from(e).ok()))
                .collect::<Option<Vec<u32>>>()
                .ok_or_else(bad)?;
            terms.push((coeff, alpha));
        }
        DifferentialOperator::new(alg, terms)
    }
}

impl GaugeTwist<Polynomial> {
    /// Twists on polynomial symbols by differential operators `T_k = D_k`.
    /// Each `D_k` must kill constants.
    pub fn from_differential_operators(
        alg: &PolynomialAlgebra,
        ops: Vec<DifferentialOperator>,
    ) -> Result<Self> {
        let description = Value::Array(ops.iter().map(|d| d.to_json(alg)).collect());
        let maps = ops
            .into_iter()
            .map(|d| {
                let a = alg.clone();
                let m: LinearMap<Polynomial> = Arc::new(move |f: &Polynomial| d.apply(&a, f));
                m
            })
            .collect();
        GaugeTwist::new(alg, maps, description)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::CoefficientField;
    use crate::star::StarProduct;
    use serde_json::json;

    fn m2() -> MatrixAlgebra<ScalarAlgebra> {
        MatrixAlgebra::new(ScalarAlgebra::new(CoefficientField::rationals()), 2).unwrap()
    }

    #[test]
    fn rejects_twists_that_move_the_unit() {
        let a = m2();
        let id4 = MatrixAlgebra::new(ScalarAlgebra::new(CoefficientField::rationals()), 4)
            .unwrap()
            .one();
        let err = GaugeTwist::from_matrices(&a, vec![id4]).unwrap_err();
        assert_eq!(err, Error::TwistMovesUnit { order: 1 });
    }

    #[test]
    fn zero_twist_is_trivial() {
        let a = m2();
        let zero4 = MatrixAlgebra::new(ScalarAlgebra::new(CoefficientField::rationals()), 4)
            .unwrap()
            .zero();
        let t = GaugeTwist::from_matrices(&a, vec![zero4]).unwrap();
        let s = StarProduct::gauge_twist(a.clone(), t);
        let x = a.decode(&json!([[1, 2], [3, 4]])).unwrap();
        let y = a.decode(&json!([[0, 1], [5, -1]])).unwrap();
        for p in 1..4 {
            assert!(a.is_zero(&s.phi(p, &x, &y).unwrap()));
        }
    }

    #[test]
    fn first_order_cochain_is_a_coboundary() {
        // φ_1(a, b) = T_1(a) b + a T_1(b) - T_1(ab)
        let alg = PolynomialAlgebra::new(CoefficientField::rationals(), 1).unwrap();
        let d = DifferentialOperator::from_json(
            &alg,
            &json!([{"coeff": "1", "derivative": [2, 0]}, {"coeff": "x", "derivative": [0, 1]}]),
        )
        .unwrap();
        let t = GaugeTwist::from_differential_operators(&alg, vec![d.clone()]).unwrap();
        let f = alg.parse("x^2 p + p^3").unwrap();
        let g = alg.parse("x^3 - x p").unwrap();
        let expect = alg.sub(
            &alg.add(&alg.mul(&d.apply(&alg, &f), &g), &alg.mul(&f, &d.apply(&alg, &g))),
            &d.apply(&alg, &alg.mul(&f, &g)),
        );
        assert_eq!(t.phi(&alg, 1, &f, &g), expect);
    }

    #[test]
    fn inverse_undoes_apply() {
        let alg = PolynomialAlgebra::new(CoefficientField::rationals(), 1).unwrap();
        let d1 = DifferentialOperator::from_json(&alg, &json!([{"coeff": "1", "derivative": [1, 1]}])).unwrap();
        let d2 = DifferentialOperator::from_json(&alg, &json!([{"coeff": "p", "derivative": [1, 0]}])).unwrap();
        let t = GaugeTwist::from_differential_operators(&alg, vec![d1, d2]).unwrap();
        let a = TruncatedSeries::new(vec![
            alg.parse("x^2 p^2").unwrap(),
            alg.parse("x p").unwrap(),
            alg.parse("x^3").unwrap(),
            alg.zero(),
        ])
        .unwrap();
        assert_eq!(t.apply_inverse(&alg, &t.apply(&alg, &a)), a);
        assert_eq!(t.apply(&alg, &t.apply_inverse(&alg, &a)), a);
    }
}

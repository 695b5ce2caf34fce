//! Star products on truncated series.
//!
//! A [`StarProduct`] is the base multiplication together with bilinear
//! cochains `φ_p` (`p ≥ 1`). On series it acts by
//!
//! ```text
//! (Σ a_j ℏ^j) ★ (Σ b_l ℏ^l) = Σ_q ℏ^q Σ_{j+l+p=q} φ_p(a_j, b_l),   φ_0 = ·
//! ```

mod gauge;
mod moyal;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{BaseAlgebra, MatrixAlgebra, PolynomialAlgebra};
use crate::error::{Error, Result};
use crate::series::{self, SeriesMatrix, TruncatedSeries};

pub use gauge::{DifferentialOperator, GaugeTwist, LinearMap};
pub use moyal::moyal_phi;

/// `(p, a, b) ↦ φ_p(a, b)` for `p ≥ 1`.
pub type Cochain<E> = Arc<dyn Fn(usize, &E, &E) -> E + Send + Sync>;

/// `(m, a, b) ↦ [φ_1(a, b), …, φ_m(a, b)]`, for cochains that are cheaper
/// to evaluate together.
pub type CochainFamily<E> = Arc<dyn Fn(usize, &E, &E) -> Vec<E> + Send + Sync>;

/// A single bilinear map `A_0 × A_0 → A_0`.
pub type BilinearMap<E> = Arc<dyn Fn(&E, &E) -> E + Send + Sync>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StarKind {
    Trivial,
    Moyal,
    GaugeTwist,
    User,
}

pub struct StarProduct<R: BaseAlgebra> {
    base: R,
    kind: StarKind,
    /// `None` means every `φ_p` with `p ≥ 1` vanishes.
    cochain: Option<Cochain<R::Elem>>,
    /// Optional batched form of `cochain`, used by `star_mul`.
    family: Option<CochainFamily<R::Elem>>,
    /// `φ_p` is defined for `p < order_limit`.
    order_limit: Option<usize>,
    twist: Option<GaugeTwist<R::Elem>>,
    /// Sizes of the matrix lifts applied on top of the original base.
    lifts: Vec<usize>,
}

impl<R: BaseAlgebra> Clone for StarProduct<R> {
    fn clone(&self) -> Self {
        StarProduct {
            base: self.base.clone(),
            kind: self.kind,
            cochain: self.cochain.clone(),
            family: self.family.clone(),
            order_limit: self.order_limit,
            twist: self.twist.clone(),
            lifts: self.lifts.clone(),
        }
    }
}

impl<R: BaseAlgebra> fmt::Debug for StarProduct<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StarProduct")
            .field("base", &self.base.describe())
            .field("kind", &self.kind)
            .field("order_limit", &self.order_limit)
            .field("lifts", &self.lifts)
            .finish()
    }
}

/// Outcome of [`StarProduct::check_associativity`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AssociativityReport {
    pub identity: &'static str,
    pub precision: usize,
    pub checked: usize,
    pub failures: Vec<AssociativityFailure>,
}

impl AssociativityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// First ℏ-coefficient at which `(a★b)★c` and `a★(b★c)` differ.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AssociativityFailure {
    pub index: usize,
    pub order: usize,
    pub left: Value,
    pub right: Value,
}

impl<R: BaseAlgebra> StarProduct<R> {
    /// Undeformed product: `A = A_0[[ℏ]]`.
    pub fn trivial(base: R) -> Self {
        StarProduct {
            base,
            kind: StarKind::Trivial,
            cochain: None,
            family: None,
            order_limit: None,
            twist: None,
            lifts: Vec::new(),
        }
    }

    /// User-supplied `φ_1, …, φ_m`; higher orders vanish. Associativity is
    /// not assumed and should be validated.
    pub fn from_cochains(base: R, phis: Vec<BilinearMap<R::Elem>>) -> Self {
        let zero_base = base.clone();
        let cochain: Cochain<R::Elem> = Arc::new(move |p, a, b| match phis.get(p - 1) {
            Some(phi) => phi(a, b),
            None => zero_base.zero(),
        });
        StarProduct {
            base,
            kind: StarKind::User,
            cochain: Some(cochain),
            family: None,
            order_limit: None,
            twist: None,
            lifts: Vec::new(),
        }
    }

    /// A general cochain family, defined for `p < order_limit` when given.
    pub fn from_cochain(
        base: R,
        kind: StarKind,
        cochain: Cochain<R::Elem>,
        order_limit: Option<usize>,
    ) -> Self {
        StarProduct {
            base,
            kind,
            cochain: Some(cochain),
            family: None,
            order_limit,
            twist: None,
            lifts: Vec::new(),
        }
    }

    /// `a ★ b := T⁻¹(T(a)·T(b))`, associative by construction.
    pub fn gauge_twist(base: R, twist: GaugeTwist<R::Elem>) -> Self {
        let (b, t) = (base.clone(), twist.clone());
        let cochain: Cochain<R::Elem> = Arc::new(move |p, x, y| t.phi(&b, p, x, y));
        let (b, t) = (base.clone(), twist.clone());
        let family: CochainFamily<R::Elem> = Arc::new(move |m, x, y| {
            let mut v = t.phis(&b, m, x, y);
            v.remove(0);
            v
        });
        StarProduct {
            base,
            kind: StarKind::GaugeTwist,
            cochain: Some(cochain),
            family: Some(family),
            order_limit: None,
            twist: Some(twist),
            lifts: Vec::new(),
        }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn kind(&self) -> StarKind {
        self.kind
    }

    pub fn twist(&self) -> Option<&GaugeTwist<R::Elem>> {
        self.twist.as_ref()
    }

    pub fn is_trivial(&self) -> bool {
        self.cochain.is_none()
    }

    /// Highest precision this product can multiply at, if bounded.
    pub fn max_precision(&self) -> Option<usize> {
        self.order_limit
    }

    /// Fails with [`Error::MissingCochain`] unless every `φ_p` with
    /// `p < precision` is available.
    pub fn ensure_precision(&self, precision: usize) -> Result<()> {
        match self.order_limit {
            Some(limit) if precision > limit && self.cochain.is_some() => {
                Err(Error::MissingCochain { order: limit })
            }
            _ => Ok(()),
        }
    }

    /// `φ_p(a, b)`, with `φ_0` the base product.
    pub fn phi(&self, p: usize, a: &R::Elem, b: &R::Elem) -> Result<R::Elem> {
        if p == 0 {
            return Ok(self.base.mul(a, b));
        }
        match &self.cochain {
            None => Ok(self.base.zero()),
            Some(c) => {
                if matches!(self.order_limit, Some(l) if p >= l) {
                    return Err(Error::MissingCochain { order: p });
                }
                Ok(c(p, a, b))
            }
        }
    }

    /// `[φ_0(a, b), …, φ_upto(a, b)]`; shorter when every `φ_p`, `p ≥ 1`,
    /// vanishes.
    pub fn phis(&self, upto: usize, a: &R::Elem, b: &R::Elem) -> Result<Vec<R::Elem>> {
        let mut out = vec![self.base.mul(a, b)];
        if self.cochain.is_none() || upto == 0 {
            return Ok(out);
        }
        match &self.family {
            Some(family) => out.extend(family(upto, a, b)),
            None => {
                for p in 1..=upto {
                    out.push(self.phi(p, a, b)?);
                }
            }
        }
        Ok(out)
    }

    /// The ★-product of two series at their common precision.
    pub fn star_mul(
        &self,
        a: &TruncatedSeries<R::Elem>,
        b: &TruncatedSeries<R::Elem>,
    ) -> Result<TruncatedSeries<R::Elem>> {
        let n = a.precision();
        if b.precision() != n {
            return Err(Error::PrecisionMismatch {
                left: n,
                right: b.precision(),
            });
        }
        self.ensure_precision(n)?;
        let base = &self.base;
        let mut out = vec![base.zero(); n];
        for (j, aj) in a.coeffs().iter().enumerate() {
            if base.is_zero(aj) {
                continue;
            }
            for (l, bl) in b.coeffs().iter().enumerate().take(n - j) {
                if base.is_zero(bl) {
                    continue;
                }
                for (p, t) in self.phis(n - 1 - j - l, aj, bl)?.iter().enumerate() {
                    out[j + l + p] = base.add(&out[j + l + p], t);
                }
            }
        }
        TruncatedSeries::new(out)
    }

    /// `a ★ b` for classical elements embedded at `precision`.
    pub fn star_mul_classical(
        &self,
        a: &R::Elem,
        b: &R::Elem,
        precision: usize,
    ) -> Result<TruncatedSeries<R::Elem>> {
        let a = TruncatedSeries::constant(&self.base, a.clone(), precision);
        let b = TruncatedSeries::constant(&self.base, b.clone(), precision);
        self.star_mul(&a, &b)
    }

    /// `a^k` under ★; `a^0 = 1`.
    pub fn star_pow(&self, a: &TruncatedSeries<R::Elem>, k: u32) -> Result<TruncatedSeries<R::Elem>> {
        let mut acc = TruncatedSeries::one(&self.base, a.precision());
        for _ in 0..k {
            acc = self.star_mul(&acc, a)?;
        }
        Ok(acc)
    }

    /// Checks `φ_p(c·a + a', b) = c·φ_p(a, b) + φ_p(a', b)` and the same in
    /// the second slot.
    pub fn is_bilinear_on(
        &self,
        p: usize,
        a: &R::Elem,
        a2: &R::Elem,
        b: &R::Elem,
        c: &crate::algebra::Scalar,
    ) -> Result<bool> {
        let base = &self.base;
        let combo = base.add(&base.scale(c, a), a2);
        let left = self.phi(p, &combo, b)?;
        let expect_left = base.add(&base.scale(c, &self.phi(p, a, b)?), &self.phi(p, a2, b)?);
        let right = self.phi(p, b, &combo)?;
        let expect_right = base.add(&base.scale(c, &self.phi(p, b, a)?), &self.phi(p, b, a2)?);
        Ok(left == expect_left && right == expect_right)
    }

    /// Compares `(a★b)★c` with `a★(b★c)` on every sample at `precision`.
    /// Samples are truncated or zero-extended to that precision.
    pub fn check_associativity(
        &self,
        samples: &[(
            TruncatedSeries<R::Elem>,
            TruncatedSeries<R::Elem>,
            TruncatedSeries<R::Elem>,
        )],
        precision: usize,
    ) -> Result<AssociativityReport> {
        let align = |s: &TruncatedSeries<R::Elem>| {
            if s.precision() >= precision {
                s.truncate(precision)
            } else {
                s.extend_by_zero(&self.base, precision)
            }
        };
        let mut failures = Vec::new();
        for (index, (a, b, c)) in samples.iter().enumerate() {
            let (a, b, c) = (align(a)?, align(b)?, align(c)?);
            let left = self.star_mul(&self.star_mul(&a, &b)?, &c)?;
            let right = self.star_mul(&a, &self.star_mul(&b, &c)?)?;
            if let Some(order) = (0..precision).find(|&q| left.coeff(q) != right.coeff(q)) {
                failures.push(AssociativityFailure {
                    index,
                    order,
                    left: self.base.encode(left.coeff(order)),
                    right: self.base.encode(right.coeff(order)),
                });
            }
        }
        Ok(AssociativityReport {
            identity: "(a*b)*c = a*(b*c)",
            precision,
            checked: samples.len(),
            failures,
        })
    }

    /// The induced star product on `M_n(A_0)`:
    /// `φ_p^M(a, b)_{ik} = Σ_j φ_p(a_ij, b_jk)`.
    pub fn matrix_lift(&self, n: usize) -> Result<StarProduct<MatrixAlgebra<R>>> {
        let mbase = MatrixAlgebra::new(self.base.clone(), n)?;
        let cochain = self.cochain.clone().map(|inner| {
            let base = self.base.clone();
            let lifted: Cochain<_> = Arc::new(move |p, a: &crate::algebra::Matrix<R::Elem>, b: &crate::algebra::Matrix<R::Elem>| {
                crate::algebra::Matrix::from_fn(n, |i, k| {
                    let mut acc = base.zero();
                    for j in 0..n {
                        let (x, y) = (a.get(i, j), b.get(j, k));
                        if base.is_zero(x) || base.is_zero(y) {
                            continue;
                        }
                        acc = base.add(&acc, &inner(p, x, y));
                    }
                    acc
                })
            });
            lifted
        });
        let family = self.family.clone().map(|inner| {
            let base = self.base.clone();
            let lifted: CochainFamily<_> = Arc::new(move |m, a: &crate::algebra::Matrix<R::Elem>, b: &crate::algebra::Matrix<R::Elem>| {
                let mut acc = vec![vec![base.zero(); n * n]; m];
                for i in 0..n {
                    for k in 0..n {
                        for j in 0..n {
                            let (x, y) = (a.get(i, j), b.get(j, k));
                            if base.is_zero(x) || base.is_zero(y) {
                                continue;
                            }
                            for (p, t) in inner(m, x, y).into_iter().enumerate() {
                                acc[p][i * n + k] = base.add(&acc[p][i * n + k], &t);
                            }
                        }
                    }
                }
                acc.into_iter()
                    .map(|e| crate::algebra::Matrix::from_fn(n, |i, k| e[i * n + k].clone()))
                    .collect()
            });
            lifted
        });
        let mut lifts = self.lifts.clone();
        lifts.push(n);
        Ok(StarProduct {
            base: mbase,
            kind: self.kind,
            cochain,
            family,
            order_limit: self.order_limit,
            twist: self.twist.as_ref().map(|t| t.entrywise()),
            lifts,
        })
    }

    /// ★-product in `M_n(A)`.
    pub fn matrix_star_mul(
        &self,
        a: &SeriesMatrix<R::Elem>,
        b: &SeriesMatrix<R::Elem>,
    ) -> Result<SeriesMatrix<R::Elem>> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch {
                left: a.dim(),
                right: b.dim(),
            });
        }
        let lifted = self.matrix_lift(a.dim())?;
        let prod = lifted.star_mul(&a.to_matrix_series(), &b.to_matrix_series())?;
        Ok(SeriesMatrix::from_matrix_series(&prod))
    }

    /// Provenance record for reports.
    pub fn descriptor(&self) -> Value {
        json!({
            "kind": self.kind,
            "base": self.base.describe(),
            "characteristic": self.base.field().characteristic(),
            "matrix_lifts": self.lifts,
            "max_precision": self.order_limit,
            "twist": self.twist.as_ref().map(|t| t.description().clone()),
        })
    }

    pub fn format_series(&self, a: &TruncatedSeries<R::Elem>) -> String {
        series::format(&self.base, a)
    }
}

impl StarProduct<PolynomialAlgebra> {
    /// Moyal–Weyl product on polynomial symbols, with `[x_i, p_i]_★ = ℏ`.
    ///
    /// `φ_p` carries a factor `1/(p! 2^p)`, so over `F_q` only orders `p < q`
    /// exist (and none when `q = 2`).
    pub fn moyal(alg: PolynomialAlgebra) -> Self {
        let order_limit = match alg.field().characteristic() {
            0 => None,
            2 => Some(1),
            q => Some(q as usize),
        };
        let a = alg.clone();
        let cochain: Cochain<_> = Arc::new(move |p, f, g| {
            moyal_phi(&a, p, f, g).expect("order checked against the field characteristic")
        });
        StarProduct::from_cochain(alg, StarKind::Moyal, cochain, order_limit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{CoefficientField, ScalarAlgebra};

    fn q() -> ScalarAlgebra {
        ScalarAlgebra::new(CoefficientField::rationals())
    }

    #[test]
    fn trivial_is_convolution() {
        let b = q();
        let s = StarProduct::trivial(b.clone());
        let one_minus_h = TruncatedSeries::new(vec![b.from_int(1), b.from_int(-1), b.zero()]).unwrap();
        let one_plus_h = TruncatedSeries::new(vec![b.from_int(1), b.from_int(1), b.zero()]).unwrap();
        let prod = s.star_mul(&one_minus_h, &one_plus_h).unwrap();
        let expect = TruncatedSeries::new(vec![b.from_int(1), b.zero(), b.from_int(-1)]).unwrap();
        assert_eq!(prod, expect);
        assert!(s.is_trivial());
    }

    #[test]
    fn precision_mismatch() {
        let b = q();
        let s = StarProduct::trivial(b.clone());
        let e = s
            .star_mul(&TruncatedSeries::one(&b, 2), &TruncatedSeries::one(&b, 3))
            .unwrap_err();
        assert_eq!(e, Error::PrecisionMismatch { left: 2, right: 3 });
    }

    #[test]
    fn missing_cochain_is_reported() {
        let f3 = CoefficientField::prime(3).unwrap();
        let alg = PolynomialAlgebra::new(f3, 1).unwrap();
        let s = StarProduct::moyal(alg.clone());
        let x = TruncatedSeries::constant(&alg, alg.x(1), 3);
        assert!(s.star_mul(&x, &x).is_ok());
        let x4 = x.extend_by_zero(&alg, 4).unwrap();
        assert_eq!(s.star_mul(&x4, &x4), Err(Error::MissingCochain { order: 3 }));
        assert_eq!(s.phi(3, &alg.x(1), &alg.x(1)), Err(Error::MissingCochain { order: 3 }));
    }

    #[test]
    fn matrix_lift_of_size_one_agrees() {
        let alg = PolynomialAlgebra::new(CoefficientField::rationals(), 1).unwrap();
        let s = StarProduct::moyal(alg.clone());
        let f = TruncatedSeries::new(vec![alg.parse("x^2 + p").unwrap(), alg.x(1), alg.zero()]).unwrap();
        let g = TruncatedSeries::new(vec![alg.parse("p^2").unwrap(), alg.zero(), alg.p(1)]).unwrap();
        let direct = s.star_mul(&f, &g).unwrap();
        let fm = SeriesMatrix::from_entries(1, vec![f]).unwrap();
        let gm = SeriesMatrix::from_entries(1, vec![g]).unwrap();
        let lifted = s.matrix_star_mul(&fm, &gm).unwrap();
        assert_eq!(lifted.get(0, 0), &direct);
    }
}

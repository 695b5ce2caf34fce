//! Constructive lifting through the truncation tower `A/(ℏ^j)`.
//!
//! * ★-inversion: `a` is invertible iff `e_0(a)` is, with the inverse built
//!   coefficient by coefficient from `b_0 = a_0⁻¹`.
//! * Idempotent lifting: an idempotent modulo `ℏ^j` lifts to one modulo
//!   `ℏ^{j+1}` via `x = (2a − 1)⁻¹ ★ (a − a★a)`.
//! * Invertible matrices lift across truncations.
//! * The kernel of `GL_n(A/ℏ^{j+1}) → GL_n(A/ℏ^j)` is the additive group of
//!   `M_n(ℏ^j A_0)`.

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{BaseAlgebra, Matrix};
use crate::error::{Error, Result};
use crate::series::{self, SeriesMatrix, TruncatedSeries};
use crate::star::StarProduct;

/// Residual data for `b = a⁻¹` at precision `N`.
#[derive(Clone, Debug, PartialEq)]
pub struct InversionCertificate<E> {
    pub input: TruncatedSeries<E>,
    pub inverse: TruncatedSeries<E>,
    /// `a ★ b − 1`
    pub right_residual: TruncatedSeries<E>,
    /// `b ★ a − 1`
    pub left_residual: TruncatedSeries<E>,
    /// The left-seeded recursion produced the same series.
    pub left_right_agree: bool,
}

impl<E: Clone + PartialEq> InversionCertificate<E> {
    pub fn precision(&self) -> usize {
        self.input.precision()
    }

    pub fn is_valid<R: BaseAlgebra<Elem = E>>(&self, base: &R) -> bool {
        series::is_zero(base, &self.right_residual)
            && series::is_zero(base, &self.left_residual)
            && self.left_right_agree
    }

    pub fn to_json<R: BaseAlgebra<Elem = E>>(&self, base: &R) -> Value {
        json!({
            "identity": "a*b = b*a = 1",
            "precision": self.precision(),
            "input": series::to_json(base, &self.input),
            "inverse": series::to_json(base, &self.inverse),
            "right_residual_zero": series::is_zero(base, &self.right_residual),
            "left_residual_zero": series::is_zero(base, &self.left_residual),
            "left_right_agree": self.left_right_agree,
        })
    }
}

/// Result of lifting a classical idempotent `e` to precision `N`.
#[derive(Clone, Debug, PartialEq)]
pub struct IdempotentCertificate<E> {
    pub classical: E,
    pub lift: TruncatedSeries<E>,
    /// `E ★ E − E`
    pub residual: TruncatedSeries<E>,
    /// `e_0(E) = e`
    pub classical_roundtrip: bool,
    /// `truncate(E, j)` is idempotent for every `j ≤ N`.
    pub truncations_idempotent: bool,
}

impl<E: Clone + PartialEq> IdempotentCertificate<E> {
    pub fn precision(&self) -> usize {
        self.lift.precision()
    }

    pub fn is_valid<R: BaseAlgebra<Elem = E>>(&self, base: &R) -> bool {
        series::is_zero(base, &self.residual)
            && self.classical_roundtrip
            && self.truncations_idempotent
    }

    pub fn to_json<R: BaseAlgebra<Elem = E>>(&self, base: &R) -> Value {
        json!({
            "identity": "E*E = E, e0(E) = e",
            "precision": self.precision(),
            "classical": base.encode(&self.classical),
            "lift": series::to_json(base, &self.lift),
            "residual_zero": series::is_zero(base, &self.residual),
            "classical_roundtrip": self.classical_roundtrip,
            "truncations_idempotent": self.truncations_idempotent,
        })
    }
}

/// A lift of an invertible matrix to a higher truncation, with its inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct InvertibleLift<E> {
    pub lifted: SeriesMatrix<E>,
    pub inverse: SeriesMatrix<E>,
}

/// `z = E★F + (1−E)★(1−F)` with `z ★ F ★ z⁻¹ = E`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjugacyCertificate<E> {
    pub conjugator: TruncatedSeries<E>,
    pub inverse: TruncatedSeries<E>,
    pub classical_limit_is_one: bool,
    /// `z ★ F = E ★ z`
    pub intertwines: bool,
    /// `z ★ F ★ z⁻¹ = E`
    pub conjugates: bool,
}

impl<E: Clone + PartialEq> ConjugacyCertificate<E> {
    pub fn is_valid(&self) -> bool {
        self.classical_limit_is_one && self.intertwines && self.conjugates
    }

    pub fn to_json<R: BaseAlgebra<Elem = E>>(&self, base: &R) -> Value {
        json!({
            "identity": "z*F*z^-1 = E",
            "conjugator": series::to_json(base, &self.conjugator),
            "classical_limit_is_one": self.classical_limit_is_one,
            "intertwines": self.intertwines,
            "conjugates": self.conjugates,
        })
    }
}

/// Summary of [`kernel_group_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelGroupReport {
    pub identity: &'static str,
    pub j: usize,
    pub n: usize,
    pub precision: usize,
    pub characteristic: u64,
    pub pairs_checked: usize,
    /// Indices of pairs with `(1+x)★(1+y) ≠ 1+x+y`.
    pub product_law_failures: Vec<usize>,
    pub commutativity_failures: Vec<usize>,
    /// Indices where `(1+x)★(1−x) ≠ 1`.
    pub inverse_failures: Vec<usize>,
    /// Largest `m` tested for unique `m`-th roots.
    pub max_root_order: u32,
    /// `(pair index, m)` where `1 + x/m` is not an `m`-th root or the
    /// `m`-th power map is not `1+y ↦ 1+my`.
    pub root_failures: Vec<(usize, u32)>,
    /// Over `F_p`: indices of nontrivial elements whose order is not `p`.
    pub torsion_failures: Vec<usize>,
}

impl KernelGroupReport {
    pub fn passed(&self) -> bool {
        self.product_law_failures.is_empty()
            && self.commutativity_failures.is_empty()
            && self.inverse_failures.is_empty()
            && self.root_failures.is_empty()
            && self.torsion_failures.is_empty()
    }
}

fn classical_inverse<R: BaseAlgebra>(s: &StarProduct<R>, a: &TruncatedSeries<R::Elem>) -> Result<R::Elem> {
    s.base()
        .try_invert(a.classical_limit())
        .map_err(|_| Error::NotInvertibleAtClassicalLimit)
}

/// The right ★-inverse, from
/// `b_q = −a_0⁻¹ · Σ_{j+l+p=q, l<q} φ_p(a_j, b_l)`.
pub fn star_invert<R: BaseAlgebra>(
    s: &StarProduct<R>,
    a: &TruncatedSeries<R::Elem>,
) -> Result<TruncatedSeries<R::Elem>> {
    invert_with(s, a, Side::Right)
}

/// The left ★-inverse, from `c_q = −(Σ_{l+j+p=q, l<q} φ_p(c_l, a_j)) · a_0⁻¹`.
pub fn star_invert_left<R: BaseAlgebra>(
    s: &StarProduct<R>,
    a: &TruncatedSeries<R::Elem>,
) -> Result<TruncatedSeries<R::Elem>> {
    invert_with(s, a, Side::Left)
}

#[derive(Clone, Copy)]
enum Side {
    Left,
    Right,
}

fn invert_with<R: BaseAlgebra>(
    s: &StarProduct<R>,
    a: &TruncatedSeries<R::Elem>,
    side: Side,
) -> Result<TruncatedSeries<R::Elem>> {
    let n = a.precision();
    s.ensure_precision(n)?;
    let base = s.base();
    let a0_inv = classical_inverse(s, a)?;
    // pending[q] collects Σ φ_p over the terms whose unknown index l is already solved
    let mut pending = vec![base.zero(); n];
    let mut out: Vec<R::Elem> = Vec::with_capacity(n);
    for q in 0..n {
        let bq = if q == 0 {
            a0_inv.clone()
        } else {
            match side {
                Side::Right => base.neg(&base.mul(&a0_inv, &pending[q])),
                Side::Left => base.neg(&base.mul(&pending[q], &a0_inv)),
            }
        };
        if !base.is_zero(&bq) {
            for j in 0..n - q {
                let aj = a.coeff(j);
                if base.is_zero(aj) {
                    continue;
                }
                let terms = match side {
                    Side::Right => s.phis(n - 1 - q - j, aj, &bq)?,
                    Side::Left => s.phis(n - 1 - q - j, &bq, aj)?,
                };
                for (p, t) in terms.iter().enumerate() {
                    pending[q + j + p] = base.add(&pending[q + j + p], t);
                }
            }
        }
        out.push(bq);
    }
    TruncatedSeries::new(out)
}

/// Inverts `a` and records both residuals and the left/right agreement.
pub fn certify_inverse<R: BaseAlgebra>(
    s: &StarProduct<R>,
    a: &TruncatedSeries<R::Elem>,
) -> Result<InversionCertificate<R::Elem>> {
    let base = s.base();
    let b = star_invert(s, a)?;
    let c = star_invert_left(s, a)?;
    let one = TruncatedSeries::one(base, a.precision());
    let right_residual = series::sub(base, &s.star_mul(a, &b)?, &one)?;
    let left_residual = series::sub(base, &s.star_mul(&b, a)?, &one)?;
    Ok(InversionCertificate {
        input: a.clone(),
        left_right_agree: b == c,
        inverse: b,
        right_residual,
        left_residual,
    })
}

pub fn is_idempotent<R: BaseAlgebra>(s: &StarProduct<R>, a: &TruncatedSeries<R::Elem>) -> Result<bool> {
    Ok(&s.star_mul(a, a)? == a)
}

fn reject_characteristic_two<R: BaseAlgebra>(s: &StarProduct<R>) -> Result<()> {
    if s.base().field().characteristic() == 2 {
        return Err(Error::CharacteristicTwo);
    }
    Ok(())
}

/// One Hensel step: `a` at precision `j+1` whose truncation to `j` is
/// idempotent becomes `a + x`, `x = (2a−1)⁻¹ ★ (a − a★a) ∈ ℏ^j A_0`.
pub fn lift_idempotent_step<R: BaseAlgebra>(
    s: &StarProduct<R>,
    a: &TruncatedSeries<R::Elem>,
) -> Result<TruncatedSeries<R::Elem>> {
    reject_characteristic_two(s)?;
    let base = s.base();
    let top = a.precision();
    if top < 2 {
        return Err(Error::PrecisionOutOfRange {
            requested: top,
            max: 2,
        });
    }
    let j = top - 1;
    if !is_idempotent(s, &a.truncate(j)?)? {
        return Err(Error::NotIdempotent { precision: j });
    }
    let defect = series::sub(base, a, &s.star_mul(a, a)?)?;
    let one = TruncatedSeries::one(base, top);
    let two = base.field().from_int(2);
    let u = series::sub(base, &series::scalar_mul(base, &two, a), &one)?;
    let x = s.star_mul(&star_invert(s, &u)?, &defect)?;
    debug_assert!(x.valuation(base).is_none_or(|v| v >= j), "x lies in ℏ^j A_0");
    series::add(base, a, &x)
}

/// Lifts a classical idempotent `e` to a ★-idempotent at `precision`.
pub fn lift_idempotent<R: BaseAlgebra>(
    s: &StarProduct<R>,
    e: &R::Elem,
    precision: usize,
) -> Result<IdempotentCertificate<R::Elem>> {
    reject_characteristic_two(s)?;
    let base = s.base();
    if precision == 0 {
        return Err(Error::PrecisionOutOfRange {
            requested: 0,
            max: usize::MAX,
        });
    }
    s.ensure_precision(precision)?;
    if &base.mul(e, e) != e {
        return Err(Error::NotIdempotent { precision: 1 });
    }
    let mut lift = TruncatedSeries::constant(base, e.clone(), 1);
    for j in 1..precision {
        lift = lift_idempotent_step(s, &lift.extend_by_zero(base, j + 1)?)?;
    }
    let residual = series::sub(base, &s.star_mul(&lift, &lift)?, &lift)?;
    let mut truncations_idempotent = true;
    for j in 1..=precision {
        truncations_idempotent &= is_idempotent(s, &lift.truncate(j)?)?;
    }
    Ok(IdempotentCertificate {
        classical: e.clone(),
        classical_roundtrip: lift.classical_limit() == e,
        lift,
        residual,
        truncations_idempotent,
    })
}

/// Lifts `u ∈ GL_n(A/ℏ^j)` to `GL_n(A/ℏ^target)` by extending with zeros;
/// invertibility of the lift is certified by computing its inverse.
pub fn lift_invertible<R: BaseAlgebra>(
    s: &StarProduct<R>,
    u: &SeriesMatrix<R::Elem>,
    target: usize,
) -> Result<InvertibleLift<R::Elem>> {
    let lifted_star = s.matrix_lift(u.dim())?;
    let mbase = lifted_star.base();
    let lifted = u.to_matrix_series().extend_by_zero(mbase, target)?;
    let cert = certify_inverse(&lifted_star, &lifted)?;
    if !cert.is_valid(mbase) {
        return Err(Error::NotInvertible);
    }
    Ok(InvertibleLift {
        lifted: SeriesMatrix::from_matrix_series(&lifted),
        inverse: SeriesMatrix::from_matrix_series(&cert.inverse),
    })
}

/// Checks the group law of `K = ker(GL_n(A/ℏ^{j+1}) → GL_n(A/ℏ^j))` on
/// elements `1 + ℏ^j m` built from the sample pairs.
///
/// Unique divisibility is tested for `2 ≤ m ≤ max_root_order` with `m`
/// prime to the characteristic; over `F_p` every nontrivial element must
/// have order exactly `p`.
pub fn kernel_group_check<R: BaseAlgebra>(
    s: &StarProduct<R>,
    j: usize,
    samples: &[(Matrix<R::Elem>, Matrix<R::Elem>)],
    max_root_order: u32,
) -> Result<KernelGroupReport> {
    if j == 0 {
        return Err(Error::Invalid("kernel group needs j ≥ 1".into()));
    }
    let n = samples.first().map(|(m, _)| m.dim()).unwrap_or(1);
    let ms = s.matrix_lift(n)?;
    let mbase = ms.base();
    let field = *mbase.field();
    let char = field.characteristic();
    let precision = j + 1;
    let one = TruncatedSeries::one(mbase, precision);
    let embed = |m: &Matrix<R::Elem>| -> Result<TruncatedSeries<Matrix<R::Elem>>> {
        if m.dim() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: m.dim(),
            });
        }
        Ok(series::hbar_shift(
            mbase,
            &TruncatedSeries::constant(mbase, m.clone(), precision),
            j,
        ))
    };

    let mut report = KernelGroupReport {
        identity: "(1+x)*(1+y) = 1+x+y",
        j,
        n,
        precision,
        characteristic: char,
        pairs_checked: samples.len(),
        product_law_failures: Vec::new(),
        commutativity_failures: Vec::new(),
        inverse_failures: Vec::new(),
        max_root_order,
        root_failures: Vec::new(),
        torsion_failures: Vec::new(),
    };

    for (idx, (m1, m2)) in samples.iter().enumerate() {
        let x = embed(m1)?;
        let y = embed(m2)?;
        let u = series::add(mbase, &one, &x)?;
        let v = series::add(mbase, &one, &y)?;
        let uv = ms.star_mul(&u, &v)?;
        if uv != series::add(mbase, &u, &y)? {
            report.product_law_failures.push(idx);
        }
        if uv != ms.star_mul(&v, &u)? {
            report.commutativity_failures.push(idx);
        }
        let u_inv = series::sub(mbase, &one, &x)?;
        if ms.star_mul(&u, &u_inv)? != one {
            report.inverse_failures.push(idx);
        }

        for m in 2..=max_root_order {
            if char != 0 && (m as u64).is_multiple_of(char) {
                continue;
            }
            let m_scalar = field.from_int(m as i64);
            let root = series::add(
                mbase,
                &one,
                &series::scalar_mul(mbase, &field.inv(&m_scalar)?, &x),
            )?;
            let is_root = ms.star_pow(&root, m)? == u;
            // the m-th power map is 1+w ↦ 1+mw on K, injective since m is a unit
            let power_law = ms.star_pow(&v, m)?
                == series::add(mbase, &one, &series::scalar_mul(mbase, &m_scalar, &y))?;
            if !(is_root && power_law) {
                report.root_failures.push((idx, m));
            }
        }

        if char != 0 && !series::is_zero(mbase, &x) {
            let mut acc = u.clone();
            let mut order = 1u64;
            while acc != one && order <= char {
                acc = ms.star_mul(&acc, &u)?;
                order += 1;
            }
            if order != char {
                report.torsion_failures.push(idx);
            }
        }
    }
    Ok(report)
}

/// Builds a conjugator between two ★-idempotents with the same classical
/// limit and certifies `z ★ F ★ z⁻¹ = E`.
pub fn conjugate_idempotents<R: BaseAlgebra>(
    s: &StarProduct<R>,
    e: &TruncatedSeries<R::Elem>,
    f: &TruncatedSeries<R::Elem>,
) -> Result<ConjugacyCertificate<R::Elem>> {
    let base = s.base();
    let precision = e.precision();
    if f.precision() != precision {
        return Err(Error::PrecisionMismatch {
            left: precision,
            right: f.precision(),
        });
    }
    if !is_idempotent(s, e)? || !is_idempotent(s, f)? {
        return Err(Error::NotIdempotent { precision });
    }
    if e.classical_limit() != f.classical_limit() {
        return Err(Error::ClassicalLimitMismatch);
    }
    let one = TruncatedSeries::one(base, precision);
    let not_e = series::sub(base, &one, e)?;
    let not_f = series::sub(base, &one, f)?;
    let z = series::add(base, &s.star_mul(e, f)?, &s.star_mul(&not_e, &not_f)?)?;
    let z_inv = star_invert(s, &z)?;
    let zf = s.star_mul(&z, f)?;
    let intertwines = zf == s.star_mul(e, &z)?;
    let conjugates = &s.star_mul(&zf, &z_inv)? == e;
    Ok(ConjugacyCertificate {
        classical_limit_is_one: base.is_one(z.classical_limit()),
        conjugator: z,
        inverse: z_inv,
        intertwines,
        conjugates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{CoefficientField, MatrixAlgebra, ScalarAlgebra};
    use serde_json::json;

    fn q() -> ScalarAlgebra {
        ScalarAlgebra::new(CoefficientField::rationals())
    }

    fn ints(b: &ScalarAlgebra, v: &[i64]) -> TruncatedSeries<crate::algebra::Scalar> {
        TruncatedSeries::new(v.iter().map(|&c| b.from_int(c)).collect()).unwrap()
    }

    #[test]
    fn geometric_series() {
        let b = q();
        let s = StarProduct::trivial(b.clone());
        assert_eq!(star_invert(&s, &TruncatedSeries::one(&b, 4)).unwrap(), TruncatedSeries::one(&b, 4));
        let inv = star_invert(&s, &ints(&b, &[1, -1, 0, 0, 0])).unwrap();
        assert_eq!(inv, ints(&b, &[1, 1, 1, 1, 1]));
        assert_eq!(
            star_invert(&s, &ints(&b, &[0, 1])),
            Err(Error::NotInvertibleAtClassicalLimit)
        );
    }

    #[test]
    fn already_idempotent_is_fixed() {
        let m2 = MatrixAlgebra::new(q(), 2).unwrap();
        let s = StarProduct::trivial(m2.clone());
        let e = m2.decode(&json!([[1, 0], [0, 0]])).unwrap();
        let a = TruncatedSeries::constant(&m2, e.clone(), 3);
        assert_eq!(lift_idempotent_step(&s, &a).unwrap(), a);
        let cert = lift_idempotent(&s, &e, 5).unwrap();
        assert!(cert.is_valid(&m2));
        assert_eq!(cert.lift, TruncatedSeries::constant(&m2, e, 5));
    }

    #[test]
    fn lifting_preconditions() {
        let m2 = MatrixAlgebra::new(q(), 2).unwrap();
        let s = StarProduct::trivial(m2.clone());
        let not_idem = m2.decode(&json!([[2, 0], [0, 0]])).unwrap();
        assert_eq!(
            lift_idempotent(&s, &not_idem, 3),
            Err(Error::NotIdempotent { precision: 1 })
        );
        let f2 = CoefficientField::prime(2).unwrap();
        let m2f2 = MatrixAlgebra::new(ScalarAlgebra::new(f2), 2).unwrap();
        let s2 = StarProduct::trivial(m2f2.clone());
        assert_eq!(
            lift_idempotent(&s2, &m2f2.one(), 3),
            Err(Error::CharacteristicTwo)
        );
    }

    #[test]
    fn unipotent_lift_is_invertible() {
        let b = q();
        let s = StarProduct::trivial(b.clone());
        let u = SeriesMatrix::from_entries(1, vec![ints(&b, &[1, -1])]).unwrap();
        let lift = lift_invertible(&s, &u, 3).unwrap();
        assert_eq!(lift.lifted.get(0, 0), &ints(&b, &[1, -1, 0]));
        assert_eq!(lift.inverse.get(0, 0), &ints(&b, &[1, 1, 1]));
    }

    #[test]
    fn kernel_elements_square_additively() {
        let b = q();
        let s = StarProduct::trivial(b.clone());
        let m2 = MatrixAlgebra::new(b.clone(), 2).unwrap();
        let e12 = m2.elementary(0, 1, b.one());
        let report = kernel_group_check(&s, 1, &[(e12.clone(), e12)], 6).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.precision, 2);
    }

    #[test]
    fn kernel_torsion_over_f5() {
        let f5 = ScalarAlgebra::new(CoefficientField::prime(5).unwrap());
        let s = StarProduct::trivial(f5.clone());
        let m2 = MatrixAlgebra::new(f5.clone(), 2).unwrap();
        let x = m2.decode(&json!([[1, 2], [3, 4]])).unwrap();
        let report = kernel_group_check(&s, 1, &[(x.clone(), x)], 6).unwrap();
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn trivial_conjugator_is_one() {
        let m2 = MatrixAlgebra::new(q(), 2).unwrap();
        let s = StarProduct::trivial(m2.clone());
        let e = m2.decode(&json!([[1, 0], [0, 0]])).unwrap();
        let lift = TruncatedSeries::constant(&m2, e, 3);
        let cert = conjugate_idempotents(&s, &lift, &lift).unwrap();
        assert!(cert.is_valid());
        assert_eq!(cert.conjugator, TruncatedSeries::one(&m2, 3));
    }
}

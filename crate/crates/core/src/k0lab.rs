//! Idempotent-level evidence that the classical limit induces a bijection on
//! `K_0`: classical idempotents lift, independent lifts of the same classical
//! idempotent are conjugate, and the trace of the classical limit is kept.

use serde_json::{json, Value};

use crate::algebra::{
    BaseAlgebra, CoefficientField, Matrix, MatrixAlgebra, PointEvaluation, PolynomialAlgebra,
    Scalar, ScalarAlgebra,
};
use crate::error::{Error, Result};
use crate::hensel::{self, ConjugacyCertificate};
use crate::sample::{RandomElement, Sampler};
use crate::series::{self, TruncatedSeries};
use crate::star::StarProduct;

/// Scalar trace of a classical element, used as the rank invariant.
pub trait ClassicalTrace: BaseAlgebra {
    fn classical_trace(&self, a: &Self::Elem) -> Scalar;
}

impl ClassicalTrace for ScalarAlgebra {
    fn classical_trace(&self, a: &Scalar) -> Scalar {
        self.evaluate_at_origin(a)
    }
}

impl ClassicalTrace for PolynomialAlgebra {
    fn classical_trace(&self, a: &crate::algebra::Polynomial) -> Scalar {
        self.evaluate_at_origin(a)
    }
}

impl<R: PointEvaluation> ClassicalTrace for MatrixAlgebra<R> {
    fn classical_trace(&self, a: &Matrix<R::Elem>) -> Scalar {
        self.scalar_trace(a)
    }
}

/// Trace of a classical idempotent; over `Q` this is its rank.
pub fn idempotent_trace<R: ClassicalTrace>(alg: &R, e: &R::Elem) -> Result<Scalar> {
    if &alg.mul(e, e) != e {
        return Err(Error::NotIdempotent { precision: 1 });
    }
    Ok(alg.classical_trace(e))
}

/// A second lift `F` of the same classical idempotent, compared with the
/// primary lift `E`.
#[derive(Clone, Debug, PartialEq)]
pub struct Conjugacy<E> {
    pub method: &'static str,
    pub other: TruncatedSeries<E>,
    pub trace_matches: bool,
    pub certificate: std::result::Result<ConjugacyCertificate<E>, String>,
}

impl<E: Clone + PartialEq> Conjugacy<E> {
    pub fn is_valid(&self) -> bool {
        self.trace_matches && matches!(&self.certificate, Ok(c) if c.is_valid())
    }

    fn to_json<R: BaseAlgebra<Elem = E>>(&self, base: &R) -> Value {
        let mut v = json!({
            "method": self.method,
            "other": series::to_json(base, &self.other),
            "trace_matches": self.trace_matches,
            "valid": self.is_valid(),
        });
        match &self.certificate {
            Ok(c) => v["certificate"] = c.to_json(base),
            Err(msg) => v["error"] = Value::String(msg.clone()),
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentEntry<E> {
    pub index: usize,
    pub input: E,
    pub lift: TruncatedSeries<E>,
    pub residual_zero: bool,
    pub classical_roundtrip: bool,
    pub truncations_idempotent: bool,
    pub trace: Scalar,
    pub conjugacies: Vec<Conjugacy<E>>,
}

impl<E: Clone + PartialEq> ExperimentEntry<E> {
    pub fn passed(&self) -> bool {
        self.residual_zero
            && self.classical_roundtrip
            && self.truncations_idempotent
            && self.conjugacies.iter().all(Conjugacy::is_valid)
    }

    fn to_json<R: BaseAlgebra<Elem = E>>(&self, base: &R) -> Value {
        json!({
            "index": self.index,
            "input": base.encode(&self.input),
            "lift": series::to_json(base, &self.lift),
            "residual_zero": self.residual_zero,
            "classical_roundtrip": self.classical_roundtrip,
            "truncations_idempotent": self.truncations_idempotent,
            "trace": self.trace.to_string(),
            "conjugacies": self.conjugacies.iter().map(|c| c.to_json(base)).collect::<Vec<_>>(),
            "passed": self.passed(),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentReport<E> {
    pub star: Value,
    pub precision: usize,
    pub seed: Option<u64>,
    pub entries: Vec<ExperimentEntry<E>>,
}

impl<E: Clone + PartialEq> ExperimentReport<E> {
    pub fn passed_count(&self) -> usize {
        self.entries.iter().filter(|e| e.passed()).count()
    }

    pub fn failed_count(&self) -> usize {
        self.entries.len() - self.passed_count()
    }

    pub fn passed(&self) -> bool {
        self.failed_count() == 0
    }

    pub fn to_json<R: BaseAlgebra<Elem = E>>(&self, base: &R) -> Value {
        json!({
            "identity": "E*E = E, e0(E) = e, z*F*z^-1 = E",
            "star": self.star,
            "precision": self.precision,
            "seed": self.seed,
            "entries": self.entries.iter().map(|e| e.to_json(base)).collect::<Vec<_>>(),
            "summary": { "passed": self.passed_count(), "failed": self.failed_count() },
        })
    }
}

fn lift_entry<R: ClassicalTrace>(
    s: &StarProduct<R>,
    index: usize,
    e: &R::Elem,
    precision: usize,
) -> Result<ExperimentEntry<R::Elem>> {
    let trace = idempotent_trace(s.base(), e)?;
    let cert = hensel::lift_idempotent(s, e, precision)?;
    Ok(ExperimentEntry {
        index,
        input: e.clone(),
        residual_zero: series::is_zero(s.base(), &cert.residual),
        classical_roundtrip: cert.classical_roundtrip,
        truncations_idempotent: cert.truncations_idempotent,
        lift: cert.lift,
        trace,
        conjugacies: Vec::new(),
    })
}

fn compare<R: ClassicalTrace>(
    s: &StarProduct<R>,
    method: &'static str,
    lift: &TruncatedSeries<R::Elem>,
    other: TruncatedSeries<R::Elem>,
) -> Conjugacy<R::Elem> {
    let base = s.base();
    let trace_matches =
        base.classical_trace(other.classical_limit()) == base.classical_trace(lift.classical_limit());
    Conjugacy {
        method,
        trace_matches,
        certificate: hensel::conjugate_idempotents(s, lift, &other).map_err(|e| e.to_string()),
        other,
    }
}

/// Lifts every classical idempotent to `precision` and records the
/// certificates.
pub fn surjectivity_experiment<R: ClassicalTrace>(
    s: &StarProduct<R>,
    idempotents: &[R::Elem],
    precision: usize,
) -> Result<ExperimentReport<R::Elem>> {
    let entries = idempotents
        .iter()
        .enumerate()
        .map(|(i, e)| lift_entry(s, i, e, precision))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExperimentReport {
        star: s.descriptor(),
        precision,
        seed: None,
        entries,
    })
}

/// Certifies a conjugator for every pair `(E, F)` of ★-idempotents with equal
/// classical limits.
pub fn injectivity_experiment<R: ClassicalTrace>(
    s: &StarProduct<R>,
    pairs: &[(TruncatedSeries<R::Elem>, TruncatedSeries<R::Elem>)],
) -> Result<ExperimentReport<R::Elem>> {
    let precision = pairs.first().map_or(1, |(e, _)| e.precision());
    let mut entries = Vec::new();
    for (index, (e, f)) in pairs.iter().enumerate() {
        // surface precondition violations as errors rather than report rows
        let cert = hensel::conjugate_idempotents(s, e, f)?;
        let mut truncations_idempotent = true;
        for j in 1..=e.precision() {
            truncations_idempotent &= hensel::is_idempotent(s, &e.truncate(j)?)?;
        }
        let input = e.classical_limit().clone();
        let trace = s.base().classical_trace(&input);
        entries.push(ExperimentEntry {
            index,
            trace,
            residual_zero: true,
            classical_roundtrip: true,
            truncations_idempotent,
            lift: e.clone(),
            conjugacies: vec![Conjugacy {
                method: "given",
                other: f.clone(),
                trace_matches: true,
                certificate: Ok(cert),
            }],
            input,
        });
    }
    Ok(ExperimentReport {
        star: s.descriptor(),
        precision,
        seed: None,
        entries,
    })
}

/// Independent lifts of `e(E)`: `E` itself, `v ★ E ★ v⁻¹` for a seeded
/// `v = 1 + ℏw`, and `T⁻¹(e)` when the product is a gauge twist.
pub fn alternative_lifts<R: ClassicalTrace + RandomElement>(
    s: &StarProduct<R>,
    lift: &TruncatedSeries<R::Elem>,
    sampler: &mut Sampler,
) -> Result<Vec<(&'static str, TruncatedSeries<R::Elem>)>> {
    let base = s.base();
    let n = lift.precision();
    let mut out = vec![("self", lift.clone())];

    let w = TruncatedSeries::constant(base, sampler.element(base), n);
    let v = series::add(base, &TruncatedSeries::one(base, n), &series::hbar_shift(base, &w, 1))?;
    let v_inv = hensel::star_invert(s, &v)?;
    out.push(("inner-conjugate", s.star_mul(&s.star_mul(&v, lift)?, &v_inv)?));

    if let Some(t) = s.twist() {
        let e = TruncatedSeries::constant(base, lift.classical_limit().clone(), n);
        out.push(("twist-inverse", t.apply_inverse(base, &e)));
    }
    Ok(out)
}

/// Lifts each idempotent, builds alternative lifts from a seed derived from
/// `seed` and the entry index, and certifies every conjugacy.
pub fn k0_experiment<R: ClassicalTrace + RandomElement>(
    s: &StarProduct<R>,
    idempotents: &[R::Elem],
    precision: usize,
    seed: u64,
) -> Result<ExperimentReport<R::Elem>> {
    let mut entries = Vec::with_capacity(idempotents.len());
    for (i, e) in idempotents.iter().enumerate() {
        let mut entry = lift_entry(s, i, e, precision)?;
        let mut sampler = Sampler::seeded(seed.wrapping_add(i as u64)).with_max_degree(1);
        for (method, other) in alternative_lifts(s, &entry.lift, &mut sampler)? {
            entry.conjugacies.push(compare(s, method, &entry.lift, other));
        }
        entries.push(entry);
    }
    Ok(ExperimentReport {
        star: s.descriptor(),
        precision,
        seed: Some(seed),
        entries,
    })
}

/// All diagonal 0/1 matrices in `M_n(k)`, followed by `conjugates` seeded
/// conjugates `u e u⁻¹` of the proper nonzero ones.
pub fn default_corpus(field: CoefficientField, n: usize, conjugates: usize, seed: u64) -> Result<Vec<Matrix<Scalar>>> {
    let alg = MatrixAlgebra::new(ScalarAlgebra::new(field), n)?;
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let diag: Vec<Scalar> = (0..n)
            .map(|i| if mask >> i & 1 == 1 { field.one() } else { field.zero() })
            .collect();
        out.push(alg.diagonal(&diag)?);
    }
    let proper: Vec<Matrix<Scalar>> = out[1..out.len() - 1].to_vec();
    if proper.is_empty() {
        return Ok(out);
    }
    let mut sampler = Sampler::seeded(seed);
    for k in 0..conjugates {
        let e = &proper[k % proper.len()];
        let u = sampler.invertible_matrix(&alg);
        let u_inv = alg.try_invert(&u)?;
        out.push(alg.mul(&alg.mul(&u, e), &u_inv));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::star::GaugeTwist;

    fn q() -> CoefficientField {
        CoefficientField::rationals()
    }

    fn m(n: usize) -> MatrixAlgebra<ScalarAlgebra> {
        MatrixAlgebra::new(ScalarAlgebra::new(q()), n).unwrap()
    }

    #[test]
    fn traces_are_ranks() {
        let a = m(3);
        assert_eq!(idempotent_trace(&a, &a.identity()).unwrap(), q().from_int(3));
        assert_eq!(idempotent_trace(&a, &a.zero()).unwrap(), q().from_int(0));
        let a2 = m(2);
        let e = a2.diagonal(&[q().one(), q().zero()]).unwrap();
        assert_eq!(idempotent_trace(&a2, &e).unwrap(), q().one());
        assert!(idempotent_trace(&a2, &a2.from_int(2)).is_err());
    }

    #[test]
    fn corpus_is_idempotent() {
        let corpus = default_corpus(q(), 3, 4, 9).unwrap();
        assert_eq!(corpus.len(), 12);
        let a = m(3);
        for e in &corpus {
            assert_eq!(&a.mul(e, e), e);
        }
    }

    #[test]
    fn trivial_star_lifts_are_constant() {
        let a = m(2);
        let s = StarProduct::trivial(a.clone());
        let e = a.diagonal(&[q().one(), q().zero()]).unwrap();
        let r = surjectivity_experiment(&s, &[e.clone(), a.zero(), a.one()], 4).unwrap();
        assert!(r.passed());
        assert_eq!(r.entries[0].lift, TruncatedSeries::constant(&a, e, 4));
        assert_eq!(r.entries[0].trace, q().one());
    }

    #[test]
    fn gauge_twist_experiment_passes() {
        let a = m(2);
        let mut sampler = Sampler::seeded(5);
        let twist: GaugeTwist<_> = sampler.matrix_twist(&a, 2).unwrap();
        let s = StarProduct::gauge_twist(a.clone(), twist);
        let corpus = default_corpus(q(), 2, 2, 1).unwrap();
        let r = k0_experiment(&s, &corpus, 5, 3).unwrap();
        assert!(r.passed(), "{}", r.to_json(&a));
        assert!(r.entries.iter().all(|e| e.conjugacies.len() == 3));
    }

    #[test]
    fn zero_pair_has_unit_conjugator() {
        let a = m(2);
        let s = StarProduct::trivial(a.clone());
        let z = TruncatedSeries::zero(&a, 3);
        let r = injectivity_experiment(&s, &[(z.clone(), z)]).unwrap();
        let c = r.entries[0].conjugacies[0].certificate.as_ref().unwrap();
        assert_eq!(c.conjugator, TruncatedSeries::one(&a, 3));
    }
}

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::algebra::{
    BaseAlgebra, MatrixAlgebra, Monomial, Polynomial, PolynomialAlgebra, ScalarAlgebra,
};
use crate::error::Error;
use crate::hensel;
use crate::k0lab::{self, ClassicalTrace};
use crate::sample::{RandomElement, Sampler};
use crate::series::{self, TruncatedSeries};
use crate::star::{moyal_phi, StarProduct};

use super::config::{BaseSpec, RunConfig, Setup, StarSpec};
use super::{Failure, Outcome};

/// What the commands need from a base algebra beyond arithmetic.
pub trait CliBase: ClassicalTrace + RandomElement {
    /// A random element with invertible classical value.
    fn random_unit(&self, s: &mut Sampler) -> Self::Elem;

    /// Idempotents used when the config lists none.
    fn default_idempotents(&self, seed: u64) -> crate::Result<Vec<Self::Elem>>;
}

impl CliBase for ScalarAlgebra {
    fn random_unit(&self, s: &mut Sampler) -> Self::Elem {
        s.nonzero_scalar(self.field())
    }

    fn default_idempotents(&self, _seed: u64) -> crate::Result<Vec<Self::Elem>> {
        Ok(vec![self.zero(), self.one()])
    }
}

impl CliBase for PolynomialAlgebra {
    fn random_unit(&self, s: &mut Sampler) -> Self::Elem {
        self.constant(s.nonzero_scalar(self.field()))
    }

    fn default_idempotents(&self, _seed: u64) -> crate::Result<Vec<Self::Elem>> {
        Ok(vec![self.zero(), self.one()])
    }
}

impl CliBase for MatrixAlgebra<ScalarAlgebra> {
    fn random_unit(&self, s: &mut Sampler) -> Self::Elem {
        s.invertible_matrix(self)
    }

    fn default_idempotents(&self, seed: u64) -> crate::Result<Vec<Self::Elem>> {
        k0lab::default_corpus(*self.field(), self.dim(), 2, seed)
    }
}

impl CliBase for MatrixAlgebra<PolynomialAlgebra> {
    fn random_unit(&self, s: &mut Sampler) -> Self::Elem {
        let scalars = MatrixAlgebra::new(ScalarAlgebra::new(*self.field()), self.dim()).expect("dim ≥ 1");
        let entry = self.entry_algebra();
        s.invertible_matrix(&scalars).map(|c| entry.constant(c.clone()))
    }

    fn default_idempotents(&self, seed: u64) -> crate::Result<Vec<Self::Elem>> {
        let entry = self.entry_algebra();
        Ok(k0lab::default_corpus(*self.field(), self.dim(), 2, seed)?
            .into_iter()
            .map(|m| m.map(|c| entry.constant(c.clone())))
            .collect())
    }
}

macro_rules! with_setup {
    ($setup:expr, $s:ident => $body:expr) => {
        match $setup {
            Setup::Scalar($s) => $body,
            Setup::Matrix($s) => $body,
            Setup::Polynomial($s) => $body,
            Setup::MatrixPolynomial($s) => $body,
        }
    };
}

fn header<R: BaseAlgebra>(command: &str, s: &StarProduct<R>, cfg: &RunConfig, passed: bool) -> Value {
    json!({
        "command": command,
        "star": s.descriptor(),
        "precision": cfg.precision,
        "seed": cfg.seed,
        "passed": passed,
    })
}

fn extend(mut report: Value, extra: Value) -> Value {
    if let (Value::Object(r), Value::Object(e)) = (&mut report, extra) {
        r.extend(e);
    }
    report
}

fn list_input<'a>(cfg: &'a RunConfig, single: &str, many: &str) -> Result<Option<Vec<&'a Value>>, Failure> {
    match (cfg.input(single), cfg.input(many)) {
        (Some(_), Some(_)) => Err(Failure::config(format!("give inputs.{single} or inputs.{many}, not both"))),
        (Some(v), None) => Ok(Some(vec![v])),
        (None, Some(Value::Array(items))) => Ok(Some(items.iter().collect())),
        (None, Some(_)) => Err(Failure::config(format!("inputs.{many} must be a list"))),
        (None, None) => Ok(None),
    }
}

fn decode_series<R: BaseAlgebra>(base: &R, v: &Value, precision: usize) -> Result<TruncatedSeries<R::Elem>, Failure> {
    series::from_json(base, v, Some(precision)).map_err(Failure::from_config)
}

fn reject_characteristic_two(cfg: &RunConfig) -> Result<(), Failure> {
    if cfg.field()?.characteristic() == 2 {
        return Err(Failure::from_config(Error::CharacteristicTwo));
    }
    Ok(())
}

fn sampler(cfg: &RunConfig) -> Result<Sampler, Failure> {
    let degree = cfg.input_usize("max_degree", 2, 6)? as u32;
    Ok(Sampler::seeded(cfg.seed).with_max_degree(degree).with_max_terms(3))
}

pub fn moyal_table(cfg: &RunConfig) -> Result<Outcome, Failure> {
    if !matches!(cfg.base, BaseSpec::Polynomial { .. }) {
        return Err(Failure::config("moyal-table needs a polynomial base"));
    }
    if !matches!(cfg.star, None | Some(StarSpec::Moyal)) {
        return Err(Failure::config("moyal-table uses the moyal star; drop the star entry or set kind moyal"));
    }
    let setup = Setup::build(cfg, &StarSpec::Moyal)?;
    let Setup::Polynomial(s) = setup else {
        return Err(Failure::config("moyal-table needs a polynomial base"));
    };
    let alg = s.base().clone();
    let max_degree = cfg.input_usize("max_degree", 2, 4)? as u32;
    let n = cfg.precision;

    let mut monomials = BTreeSet::new();
    for d in 0..=max_degree {
        collect_monomials(alg.nvars(), d, &mut Vec::new(), &mut monomials);
    }
    let monomials: Vec<Polynomial> = monomials
        .into_iter()
        .map(|m| alg.monomial(m, alg.field().one()))
        .collect();

    let antisymmetry_available = s.max_precision().is_none_or(|l| l > 1);
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    let mut all_ok = true;
    for f in &monomials {
        for g in &monomials {
            let prod = s.star_mul_classical(f, g, n).map_err(Failure::from_run)?;
            let antisymmetry = if antisymmetry_available {
                let lhs = alg.sub(
                    &moyal_phi(&alg, 1, f, g).map_err(Failure::from_run)?,
                    &moyal_phi(&alg, 1, g, f).map_err(Failure::from_run)?,
                );
                let ok = lhs == alg.poisson_bracket(f, g).map_err(Failure::from_run)?;
                all_ok &= ok;
                Value::Bool(ok)
            } else {
                Value::Null
            };
            let text = series::format(&alg, &prod);
            lines.push(format!("{} * {} = {}", alg.format(f), alg.format(g), text));
            rows.push(json!({
                "f": alg.format(f),
                "g": alg.format(g),
                "product": series::to_json(&alg, &prod),
                "product_text": text,
                "phi1_antisymmetry": antisymmetry,
            }));
        }
    }
    lines.push(format!(
        "moyal-table: {} pairs, phi1(f,g) - phi1(g,f) = {{f,g}} {}",
        rows.len(),
        if all_ok { "on every pair" } else { "FAILS on some pair" }
    ));
    let report = extend(
        header("moyal-table", &s, cfg, all_ok),
        json!({
            "identity": "phi1(f,g) - phi1(g,f) = {f,g}",
            "max_degree": max_degree,
            "rows": rows,
        }),
    );
    Ok(Outcome {
        passed: all_ok,
        report,
        lines,
    })
}

fn collect_monomials(nvars: usize, degree: u32, prefix: &mut Vec<u32>, out: &mut BTreeSet<Monomial>) {
    if prefix.len() + 1 == nvars {
        prefix.push(degree);
        out.insert(Monomial::new(prefix.clone()));
        prefix.pop();
        return;
    }
    for k in 0..=degree {
        prefix.push(k);
        collect_monomials(nvars, degree - k, prefix, out);
        prefix.pop();
    }
}

pub fn assoc_check(cfg: &RunConfig) -> Result<Outcome, Failure> {
    let setup = Setup::build(cfg, &StarSpec::Trivial)?;
    with_setup!(setup, s => assoc_check_with(&s, cfg))
}

fn assoc_check_with<R: CliBase>(s: &StarProduct<R>, cfg: &RunConfig) -> Result<Outcome, Failure> {
    let base = s.base();
    let n = cfg.precision;
    let triples = match cfg.input("triples") {
        Some(Value::Array(items)) => items
            .iter()
            .map(|t| match t.as_array().map(Vec::as_slice) {
                Some([a, b, c]) => Ok((
                    decode_series(base, a, n)?,
                    decode_series(base, b, n)?,
                    decode_series(base, c, n)?,
                )),
                _ => Err(Failure::config(format!("a triple must be a list of three series, got {t}"))),
            })
            .collect::<Result<Vec<_>, _>>()?,
        Some(_) => return Err(Failure::config("inputs.triples must be a list")),
        None => {
            let count = cfg.input_usize("samples", 20, 10_000)?;
            let mut sampler = sampler(cfg)?;
            (0..count)
                .map(|_| {
                    (
                        sampler.series(base, n),
                        sampler.series(base, n),
                        sampler.series(base, n),
                    )
                })
                .collect()
        }
    };
    let report = s.check_associativity(&triples, n).map_err(Failure::from_run)?;
    let passed = report.passed();
    let mut lines = vec![format!(
        "assoc-check: {} triples at precision {n}, {} failures",
        report.checked,
        report.failures.len()
    )];
    for f in &report.failures {
        let (a, b, c) = &triples[f.index];
        lines.push(format!(
            "  triple {}: a = {}, b = {}, c = {}; first difference at h^{}: (a*b)*c has {}, a*(b*c) has {}",
            f.index,
            series::format(base, a),
            series::format(base, b),
            series::format(base, c),
            f.order,
            f.left,
            f.right
        ));
    }
    let failing: Vec<Value> = report
        .failures
        .iter()
        .map(|f| {
            let (a, b, c) = &triples[f.index];
            json!({
                "index": f.index,
                "order": f.order,
                "left": f.left,
                "right": f.right,
                "triple": [series::to_json(base, a), series::to_json(base, b), series::to_json(base, c)],
            })
        })
        .collect();
    let out = extend(
        header("assoc-check", s, cfg, passed),
        json!({
            "identity": report.identity,
            "checked": report.checked,
            "failures": failing,
        }),
    );
    Ok(Outcome {
        passed,
        report: out,
        lines,
    })
}

pub fn invert(cfg: &RunConfig) -> Result<Outcome, Failure> {
    let setup = Setup::build(cfg, &StarSpec::Trivial)?;
    with_setup!(setup, s => invert_with(&s, cfg))
}

fn invert_with<R: CliBase>(s: &StarProduct<R>, cfg: &RunConfig) -> Result<Outcome, Failure> {
    let base = s.base();
    let n = cfg.precision;
    let inputs: Vec<TruncatedSeries<R::Elem>> = match list_input(cfg, "a", "elements")? {
        Some(items) => items
            .into_iter()
            .map(|v| decode_series(base, v, n))
            .collect::<Result<_, _>>()?,
        None => {
            let count = cfg.input_usize("samples", 8, 10_000)?;
            let mut sampler = sampler(cfg)?;
            (0..count)
                .map(|_| {
                    let a0 = base.random_unit(&mut sampler);
                    sampler.series_over(base, a0, n)
                })
                .collect()
        }
    };
    let mut entries = Vec::new();
    let mut lines = Vec::new();
    let mut passed = true;
    for (i, a) in inputs.iter().enumerate() {
        match hensel::certify_inverse(s, a) {
            Ok(cert) => {
                let ok = cert.is_valid(base);
                passed &= ok;
                lines.push(format!(
                    "a[{i}] = {}\n  inverse = {}\n  a*b = b*a = 1: {ok}",
                    series::format(base, a),
                    series::format(base, &cert.inverse)
                ));
                entries.push(extend(cert.to_json(base), json!({ "valid": ok })));
            }
            Err(e @ Error::NotInvertibleAtClassicalLimit) => {
                passed = false;
                lines.push(format!("a[{i}] = {}\n  {e}", series::format(base, a)));
                entries.push(json!({
                    "input": series::to_json(base, a),
                    "error": e.to_string(),
                    "valid": false,
                }));
            }
            Err(e) => return Err(Failure::from_run(e)),
        }
    }
    let report = extend(header("invert", s, cfg, passed), json!({ "entries": entries }));
    Ok(Outcome {
        passed,
        report,
        lines,
    })
}

fn idempotent_inputs<R: CliBase>(base: &R, cfg: &RunConfig) -> Result<Vec<R::Elem>, Failure> {
    match list_input(cfg, "e", "idempotents")? {
        Some(items) => items
            .into_iter()
            .map(|v| base.decode(v).map_err(Failure::from_config))
            .collect(),
        None => base.default_idempotents(cfg.seed).map_err(Failure::from_config),
    }
}

pub fn lift_idempotent(cfg: &RunConfig) -> Result<Outcome, Failure> {
    reject_characteristic_two(cfg)?;
    let setup = Setup::build(cfg, &StarSpec::Trivial)?;
    with_setup!(setup, s => lift_idempotent_with(&s, cfg))
}

fn lift_idempotent_with<R: CliBase>(s: &StarProduct<R>, cfg: &RunConfig) -> Result<Outcome, Failure> {
    let base = s.base();
    let n = cfg.precision;
    let mut entries = Vec::new();
    let mut lines = Vec::new();
    let mut passed = true;
    for (i, e) in idempotent_inputs(base, cfg)?.iter().enumerate() {
        if &base.mul(e, e) != e {
            return Err(Failure::config(format!("input {i} ({}) is not idempotent", base.format(e))));
        }
        let cert = hensel::lift_idempotent(s, e, n).map_err(Failure::from_run)?;
        let ok = cert.is_valid(base);
        passed &= ok;
        lines.push(format!(
            "e[{i}] = {}\n  E = {}\n  E*E = E, e0(E) = e: {ok}",
            base.format(e),
            series::format(base, &cert.lift)
        ));
        entries.push(extend(cert.to_json(base), json!({ "valid": ok })));
    }
    let report = extend(header("lift-idempotent", s, cfg, passed), json!({ "entries": entries }));
    Ok(Outcome {
        passed,
        report,
        lines,
    })
}

pub fn k0_experiment(cfg: &RunConfig) -> Result<Outcome, Failure> {
    reject_characteristic_two(cfg)?;
    let setup = Setup::build(cfg, &StarSpec::Trivial)?;
    with_setup!(setup, s => k0_experiment_with(&s, cfg))
}

fn k0_experiment_with<R: CliBase>(s: &StarProduct<R>, cfg: &RunConfig) -> Result<Outcome, Failure> {
    let base = s.base();
    let corpus = idempotent_inputs(base, cfg)?;
    for (i, e) in corpus.iter().enumerate() {
        if &base.mul(e, e) != e {
            return Err(Failure::config(format!("input {i} ({}) is not idempotent", base.format(e))));
        }
    }
    let report = k0lab::k0_experiment(s, &corpus, cfg.precision, cfg.seed).map_err(Failure::from_run)?;
    let passed = report.passed();
    let mut lines: Vec<String> = report
        .entries
        .iter()
        .map(|e| {
            format!(
                "e[{}] = {}: trace {}, lift ok {}, conjugacies {}/{}",
                e.index,
                base.format(&e.input),
                e.trace,
                e.residual_zero && e.classical_roundtrip && e.truncations_idempotent,
                e.conjugacies.iter().filter(|c| c.is_valid()).count(),
                e.conjugacies.len()
            )
        })
        .collect();
    lines.push(format!(
        "k0-experiment: {} passed, {} failed",
        report.passed_count(),
        report.failed_count()
    ));
    let out = extend(json!({ "command": "k0-experiment", "passed": passed }), report.to_json(base));
    Ok(Outcome {
        passed,
        report: out,
        lines,
    })
}

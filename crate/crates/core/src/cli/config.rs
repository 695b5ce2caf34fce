//! The JSON run configuration and the star products it describes.

use std::sync::Arc;

use serde::Deserialize;
use serde_json::Value;

use crate::algebra::{
    BaseAlgebra, CoefficientField, Matrix, MatrixAlgebra, Monomial, Polynomial, PolynomialAlgebra,
    Scalar, ScalarAlgebra,
};
use crate::sample::Sampler;
use crate::star::{BilinearMap, DifferentialOperator, GaugeTwist, StarProduct};

use super::Failure;

pub const MAX_PRECISION: usize = 32;
const MAX_MATRIX_DIM: usize = 8;
const MAX_DOF: usize = 4;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub field: Option<FieldSpec>,
    pub base: BaseSpec,
    #[serde(default)]
    pub star: Option<StarSpec>,
    #[serde(default = "default_precision")]
    pub precision: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub inputs: serde_json::Map<String, Value>,
}

fn default_precision() -> usize {
    4
}

/// `"Q"` or `{"prime": p}`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Name(String),
    Prime { prime: u64 },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum BaseSpec {
    Scalar,
    Matrix { n: usize },
    Polynomial { dof: usize },
    MatrixPolynomial { n: usize, dof: usize },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum StarSpec {
    Trivial,
    Moyal,
    GaugeTwist {
        #[serde(default)]
        maps: Option<Vec<Value>>,
        #[serde(default)]
        random_orders: Option<usize>,
    },
    User { cochains: Vec<Value> },
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, Failure> {
        serde_json::from_str(text).map_err(|e| Failure::config(format!("invalid config: {e}")))
    }

    pub fn field(&self) -> Result<CoefficientField, Failure> {
        match &self.field {
            None => Ok(CoefficientField::rationals()),
            Some(FieldSpec::Name(name)) => match name.as_str() {
                "Q" | "QQ" | "rationals" => Ok(CoefficientField::rationals()),
                other => match other.strip_prefix("F_").or_else(|| other.strip_prefix("GF")) {
                    Some(p) => {
                        let p: u64 = p
                            .parse()
                            .map_err(|_| Failure::config(format!("unknown field `{name}`")))?;
                        CoefficientField::prime(p).map_err(Failure::from_config)
                    }
                    None => Err(Failure::config(format!("unknown field `{name}`"))),
                },
            },
            Some(FieldSpec::Prime { prime }) => CoefficientField::prime(*prime).map_err(Failure::from_config),
        }
    }

    pub fn validate(&self) -> Result<(), Failure> {
        if !(1..=MAX_PRECISION).contains(&self.precision) {
            return Err(Failure::config(format!(
                "precision {} out of range 1..={MAX_PRECISION}",
                self.precision
            )));
        }
        let (n, dof) = match self.base {
            BaseSpec::Scalar => (1, 1),
            BaseSpec::Matrix { n } => (n, 1),
            BaseSpec::Polynomial { dof } => (1, dof),
            BaseSpec::MatrixPolynomial { n, dof } => (n, dof),
        };
        if !(1..=MAX_MATRIX_DIM).contains(&n) {
            return Err(Failure::config(format!("matrix size {n} out of range 1..={MAX_MATRIX_DIM}")));
        }
        if !(1..=MAX_DOF).contains(&dof) {
            return Err(Failure::config(format!("degrees of freedom {dof} out of range 1..={MAX_DOF}")));
        }
        self.field()?;
        Ok(())
    }

    pub fn input(&self, key: &str) -> Option<&Value> {
        self.inputs.get(key)
    }

    pub fn input_usize(&self, key: &str, default: usize, max: usize) -> Result<usize, Failure> {
        match self.inputs.get(key) {
            None => Ok(default),
            Some(v) => match v.as_u64() {
                Some(k) if (k as usize) <= max => Ok(k as usize),
                _ => Err(Failure::config(format!("inputs.{key} must be an integer in 0..={max}"))),
            },
        }
    }
}

/// A star product over one of the supported base algebras.
pub enum Setup {
    Scalar(StarProduct<ScalarAlgebra>),
    Matrix(StarProduct<MatrixAlgebra<ScalarAlgebra>>),
    Polynomial(StarProduct<PolynomialAlgebra>),
    MatrixPolynomial(StarProduct<MatrixAlgebra<PolynomialAlgebra>>),
}

fn need_polynomial(kind: &str) -> Failure {
    Failure::config(format!("star kind `{kind}` needs a polynomial or matrix-polynomial base"))
}

impl Setup {
    /// Builds the configured star product; `default_star` applies when the
    /// config names none.
    pub fn build(cfg: &RunConfig, default_star: &StarSpec) -> Result<Setup, Failure> {
        cfg.validate()?;
        let field = cfg.field()?;
        let star = cfg.star.as_ref().unwrap_or(default_star);
        let mut sampler = Sampler::seeded(cfg.seed);
        let setup = match (&cfg.base, star) {
            (BaseSpec::Scalar, StarSpec::Trivial) => Setup::Scalar(StarProduct::trivial(ScalarAlgebra::new(field))),
            (BaseSpec::Scalar, StarSpec::GaugeTwist { .. }) => {
                return Err(Failure::config(
                    "a gauge twist on the scalar base must fix 1 and is therefore zero; use a matrix base",
                ))
            }
            (BaseSpec::Scalar | BaseSpec::Matrix { .. }, StarSpec::Moyal) => return Err(need_polynomial("moyal")),
            (BaseSpec::Scalar | BaseSpec::Matrix { .. }, StarSpec::User { .. }) => return Err(need_polynomial("user")),
            (BaseSpec::Matrix { n }, StarSpec::Trivial) => Setup::Matrix(StarProduct::trivial(matrix_alg(field, *n)?)),
            (BaseSpec::Matrix { n }, StarSpec::GaugeTwist { maps, random_orders }) => {
                let alg = matrix_alg(field, *n)?;
                let twist = match (maps, random_orders) {
                    (Some(maps), None) => {
                        let coords = matrix_alg(field, n * n)?;
                        let mats = maps
                            .iter()
                            .map(|m| coords.decode(m))
                            .collect::<crate::Result<Vec<Matrix<Scalar>>>>()
                            .map_err(Failure::from_config)?;
                        GaugeTwist::from_matrices(&alg, mats)
                    }
                    (None, Some(k)) => sampler.matrix_twist(&alg, *k),
                    _ => return Err(twist_spec_error()),
                }
                .map_err(Failure::from_config)?;
                Setup::Matrix(StarProduct::gauge_twist(alg, twist))
            }
            (BaseSpec::Polynomial { dof }, star) => Setup::Polynomial(polynomial_star(field, *dof, star, &mut sampler)?),
            (BaseSpec::MatrixPolynomial { n, dof }, star) => {
                let s = polynomial_star(field, *dof, star, &mut sampler)?;
                Setup::MatrixPolynomial(s.matrix_lift(*n).map_err(Failure::from_config)?)
            }
        };
        let ok = match &setup {
            Setup::Scalar(s) => s.ensure_precision(cfg.precision),
            Setup::Matrix(s) => s.ensure_precision(cfg.precision),
            Setup::Polynomial(s) => s.ensure_precision(cfg.precision),
            Setup::MatrixPolynomial(s) => s.ensure_precision(cfg.precision),
        };
        ok.map_err(|e| Failure::config(format!("{e}; lower the precision or change the field")))?;
        Ok(setup)
    }
}

fn twist_spec_error() -> Failure {
    Failure::config("gauge-twist needs exactly one of `maps` or `random_orders`")
}

fn matrix_alg(field: CoefficientField, n: usize) -> Result<MatrixAlgebra<ScalarAlgebra>, Failure> {
    MatrixAlgebra::new(ScalarAlgebra::new(field), n).map_err(Failure::from_config)
}

fn polynomial_star(
    field: CoefficientField,
    dof: usize,
    star: &StarSpec,
    sampler: &mut Sampler,
) -> Result<StarProduct<PolynomialAlgebra>, Failure> {
    let alg = PolynomialAlgebra::new(field, dof).map_err(Failure::from_config)?;
    Ok(match star {
        StarSpec::Trivial => StarProduct::trivial(alg),
        StarSpec::Moyal => StarProduct::moyal(alg),
        StarSpec::GaugeTwist { maps, random_orders } => {
            let twist = match (maps, random_orders) {
                (Some(maps), None) => maps
                    .iter()
                    .map(|m| DifferentialOperator::from_json(&alg, m))
                    .collect::<crate::Result<Vec<_>>>()
                    .and_then(|ops| GaugeTwist::from_differential_operators(&alg, ops)),
                (None, Some(k)) => sampler.polynomial_twist(&alg, *k),
                _ => return Err(twist_spec_error()),
            }
            .map_err(Failure::from_config)?;
            StarProduct::gauge_twist(alg, twist)
        }
        StarSpec::User { cochains } => {
            let phis = cochains
                .iter()
                .map(|c| user_cochain(&alg, c))
                .collect::<Result<Vec<_>, _>>()?;
            StarProduct::from_cochains(alg, phis)
        }
    })
}

/// `{"builtin": "x_projection"}` or `{"terms": [{"coeff", "left", "right"}]}`
/// for `φ(f, g) = Σ c · ∂^left f · ∂^right g`.
fn user_cochain(alg: &PolynomialAlgebra, v: &Value) -> Result<BilinearMap<Polynomial>, Failure> {
    let a = alg.clone();
    if let Some(name) = v.get("builtin").and_then(Value::as_str) {
        return match name {
            "x_projection" => Ok(Arc::new(move |f: &Polynomial, g: &Polynomial| {
                let coeff = x_coefficient(&a, f);
                a.mul(&coeff, g)
            })),
            other => Err(Failure::config(format!("unknown builtin cochain `{other}`"))),
        };
    }
    let bad = || Failure::config(format!("invalid user cochain {v}"));
    let items = v.get("terms").and_then(Value::as_array).ok_or_else(bad)?;
    let exps = |item: &Value, key: &str| -> Result<Vec<u32>, Failure> {
        let e = item
            .get(key)
            .and_then(Value::as_array)
            .ok_or_else(bad)?
            .iter()
            .map(|e| e.as_u64().and_then(|e| u32::try_from(e).ok()))
            .collect::<Option<Vec<u32>>>()
            .ok_or_else(bad)?;
        if e.len() != alg.nvars() {
            return Err(Failure::config(format!(
                "derivative multi-index {key} needs {} entries",
                alg.nvars()
            )));
        }
        Ok(e)
    };
    let mut terms = Vec::new();
    for item in items {
        let c = alg.decode(item.get("coeff").ok_or_else(bad)?).map_err(Failure::from_config)?;
        terms.push((c, exps(item, "left")?, exps(item, "right")?));
    }
    Ok(Arc::new(move |f: &Polynomial, g: &Polynomial| {
        let mut acc = a.zero();
        for (c, l, r) in &terms {
            let (df, dg) = (a.diff_multi(f, l), a.diff_multi(g, r));
            if df.is_zero() || dg.is_zero() {
                continue;
            }
            acc = a.add(&acc, &a.mul(c, &a.mul(&df, &dg)));
        }
        acc
    }))
}

/// Coefficient of `x1` in `f`, as a polynomial in the other variables.
pub fn x_coefficient(alg: &PolynomialAlgebra, f: &Polynomial) -> Polynomial {
    let mut alpha = vec![0u32; alg.nvars()];
    alpha[0] = 1;
    let d = alg.diff_multi(f, &alpha);
    let mut out = alg.zero();
    for (m, c) in d.terms() {
        if m.exponents()[0] == 0 {
            out = alg.add(&out, &alg.monomial(Monomial::new(m.exponents().to_vec()), c.clone()));
        }
    }
    out
}

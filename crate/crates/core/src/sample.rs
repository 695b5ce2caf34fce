//! Seeded random elements for experiments and property checks.
//!
//! Everything is driven by a `ChaCha8Rng`, so a seed pins the output on
//! every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    BaseAlgebra, CoefficientField, Matrix, MatrixAlgebra, Monomial, Polynomial, PolynomialAlgebra,
    Scalar, ScalarAlgebra,
};
use crate::error::Result;
use crate::series::TruncatedSeries;
use crate::star::{DifferentialOperator, GaugeTwist};

/// Seeded generator with size bounds for polynomials and coefficients.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
    max_degree: u32,
    max_terms: usize,
    height: i64,
}

impl Sampler {
    pub fn seeded(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_degree: 3,
            max_terms: 4,
            height: 3,
        }
    }

    pub fn with_max_degree(mut self, d: u32) -> Self {
        self.max_degree = d;
        self
    }

    pub fn with_max_terms(mut self, t: usize) -> Self {
        self.max_terms = t.max(1);
        self
    }

    /// Bound on numerators and denominators of sampled rationals.
    pub fn with_height(mut self, h: i64) -> Self {
        self.height = h.max(1);
        self
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// Small rational `a/b` with `|a|, b ≤ height`, or a uniform element of `F_p`.
    pub fn scalar(&mut self, field: &CoefficientField) -> Scalar {
        match field {
            CoefficientField::Rational => {
                let num = self.rng.gen_range(-self.height..=self.height);
                let den = self.rng.gen_range(1..=self.height);
                field.from_ratio(num, den).expect("nonzero denominator")
            }
            CoefficientField::Prime(p) => {
                let v = self.rng.gen_range(0..*p);
                field.from_int(v as i64)
            }
        }
    }

    pub fn nonzero_scalar(&mut self, field: &CoefficientField) -> Scalar {
        loop {
            let c = self.scalar(field);
            if !c.is_zero() {
                return c;
            }
        }
    }

    /// Random polynomial of degree at most `max_degree` with up to `max_terms` terms.
    pub fn polynomial(&mut self, alg: &PolynomialAlgebra) -> Polynomial {
        let terms = self.rng.gen_range(1..=self.max_terms);
        let mut f = alg.zero();
        for _ in 0..terms {
            let m = self.monomial(alg.nvars(), self.max_degree);
            let c = self.scalar(alg.field());
            f = alg.add(&f, &alg.monomial(m, c));
        }
        f
    }

    fn monomial(&mut self, nvars: usize, max_degree: u32) -> Monomial {
        let degree = self.rng.gen_range(0..=max_degree);
        let mut exps = vec![0u32; nvars];
        for _ in 0..degree {
            exps[self.rng.gen_range(0..nvars)] += 1;
        }
        Monomial::new(exps)
    }

    pub fn element<R: RandomElement>(&mut self, base: &R) -> R::Elem {
        base.random_element(self)
    }

    /// Series with every coefficient drawn independently.
    pub fn series<R: RandomElement>(&mut self, base: &R, precision: usize) -> TruncatedSeries<R::Elem> {
        let coeffs = (0..precision).map(|_| base.random_element(self)).collect();
        TruncatedSeries::new(coeffs).expect("precision ≥ 1")
    }

    /// Series whose classical limit is a given element.
    pub fn series_over<R: RandomElement>(
        &mut self,
        base: &R,
        a0: R::Elem,
        precision: usize,
    ) -> TruncatedSeries<R::Elem> {
        let mut coeffs = vec![a0];
        coeffs.extend((1..precision).map(|_| base.random_element(self)));
        TruncatedSeries::new(coeffs).expect("precision ≥ 1")
    }

    /// `L·U` with unit-diagonal `L` and nonzero-diagonal `U`, hence invertible.
    pub fn invertible_matrix(&mut self, alg: &MatrixAlgebra<ScalarAlgebra>) -> Matrix<Scalar> {
        let n = alg.dim();
        let field = *alg.field();
        let lower = Matrix::from_fn(n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Greater => self.scalar(&field),
            std::cmp::Ordering::Equal => field.one(),
            std::cmp::Ordering::Less => field.zero(),
        });
        let upper = Matrix::from_fn(n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Less => self.scalar(&field),
            std::cmp::Ordering::Equal => self.nonzero_scalar(&field),
            std::cmp::Ordering::Greater => field.zero(),
        });
        alg.mul(&lower, &upper)
    }

    /// `n² × n²` matrices `M` with `M · vec(1) = 0`, so each fixes the unit
    /// of `M_n(k)` at zero.
    pub fn unital_twist_matrices(&mut self, field: &CoefficientField, n: usize, order: usize) -> Vec<Matrix<Scalar>> {
        let d = n * n;
        let diag: Vec<usize> = (0..n).map(|i| i * n + i).collect();
        (0..order)
            .map(|_| {
                let mut m = Matrix::from_fn(d, |_, _| self.scalar(field));
                // column 0 cancels the other diagonal columns
                for row in 0..d {
                    let mut c = field.zero();
                    for &col in &diag[1..] {
                        c = field.sub(&c, m.get(row, col));
                    }
                    m.set(row, 0, c);
                }
                m
            })
            .collect()
    }

    /// Random twist `T = 1 + Σ_{k ≤ order} ℏ^k T_k` on `M_n(k)`.
    pub fn matrix_twist(
        &mut self,
        alg: &MatrixAlgebra<ScalarAlgebra>,
        order: usize,
    ) -> Result<GaugeTwist<Matrix<Scalar>>> {
        let mats = self.unital_twist_matrices(alg.field(), alg.dim(), order);
        GaugeTwist::from_matrices(alg, mats)
    }

    /// Random differential operators of order 1..=2 with polynomial
    /// coefficients; they kill constants.
    pub fn differential_operator(&mut self, alg: &PolynomialAlgebra) -> Result<DifferentialOperator> {
        let nterms = self.rng.gen_range(1..=2);
        let bounds = (self.max_degree, self.max_terms);
        let mut terms = Vec::new();
        for _ in 0..nterms {
            let order = self.rng.gen_range(1..=2);
            let mut alpha = vec![0u32; alg.nvars()];
            for _ in 0..order {
                alpha[self.rng.gen_range(0..alg.nvars())] += 1;
            }
            (self.max_degree, self.max_terms) = (1, 2);
            let c = self.polynomial(alg);
            (self.max_degree, self.max_terms) = bounds;
            terms.push((c, alpha));
        }
        DifferentialOperator::new(alg, terms)
    }

    pub fn polynomial_twist(&mut self, alg: &PolynomialAlgebra, order: usize) -> Result<GaugeTwist<Polynomial>> {
        let ops = (0..order)
            .map(|_| self.differential_operator(alg))
            .collect::<Result<Vec<_>>>()?;
        GaugeTwist::from_differential_operators(alg, ops)
    }
}

/// Base algebras with a seeded random element generator.
pub trait RandomElement: BaseAlgebra {
    fn random_element(&self, s: &mut Sampler) -> Self::Elem;
}

impl RandomElement for ScalarAlgebra {
    fn random_element(&self, s: &mut Sampler) -> Scalar {
        s.scalar(self.field())
    }
}

impl RandomElement for PolynomialAlgebra {
    fn random_element(&self, s: &mut Sampler) -> Polynomial {
        s.polynomial(self)
    }
}

impl<R: RandomElement> RandomElement for MatrixAlgebra<R> {
    fn random_element(&self, s: &mut Sampler) -> Matrix<R::Elem> {
        let entry = self.entry_algebra();
        Matrix::from_fn(self.dim(), |_, _| entry.random_element(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let alg = PolynomialAlgebra::new(CoefficientField::rationals(), 2).unwrap();
        let mut s1 = Sampler::seeded(7);
        let mut s2 = Sampler::seeded(7);
        for _ in 0..5 {
            assert_eq!(s1.polynomial(&alg), s2.polynomial(&alg));
        }
    }

    #[test]
    fn degree_bound_holds() {
        let alg = PolynomialAlgebra::new(CoefficientField::rationals(), 2).unwrap();
        let mut s = Sampler::seeded(1).with_max_degree(4);
        for _ in 0..50 {
            assert!(s.polynomial(&alg).degree().unwrap_or(0) <= 4);
        }
    }

    #[test]
    fn invertible_matrices_invert() {
        let alg = MatrixAlgebra::new(ScalarAlgebra::new(CoefficientField::rationals()), 3).unwrap();
        let mut s = Sampler::seeded(3);
        for _ in 0..10 {
            let m = s.invertible_matrix(&alg);
            let inv = alg.try_invert(&m).unwrap();
            assert!(alg.is_one(&alg.mul(&m, &inv)));
        }
    }

    #[test]
    fn twists_fix_the_unit() {
        let alg = MatrixAlgebra::new(ScalarAlgebra::new(CoefficientField::rationals()), 2).unwrap();
        let mut s = Sampler::seeded(11);
        assert!(s.matrix_twist(&alg, 3).is_ok());
        let palg = PolynomialAlgebra::new(CoefficientField::rationals(), 1).unwrap();
        assert!(s.polynomial_twist(&palg, 2).is_ok());
    }
}

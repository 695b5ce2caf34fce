//! Associativity checks: Moyal passes, a hand-written first-order cochain
//! that is not a Hochschild cocycle fails at order 1.
//!
//!     cargo run --example associativity

use std::sync::Arc;

use defq::algebra::{BaseAlgebra, CoefficientField, Polynomial, PolynomialAlgebra};
use defq::sample::Sampler;
use defq::series::TruncatedSeries;
use defq::star::{BilinearMap, StarProduct};

fn main() -> defq::Result<()> {
    let alg = PolynomialAlgebra::new(CoefficientField::rationals(), 2)?;
    let moyal = StarProduct::moyal(alg.clone());
    let mut sampler = Sampler::seeded(7).with_max_degree(3);
    let n = 5;
    let triples: Vec<_> = (0..10)
        .map(|_| (sampler.series(&alg, n), sampler.series(&alg, n), sampler.series(&alg, n)))
        .collect();
    let report = moyal.check_associativity(&triples, n)?;
    println!("moyal: {} triples, {} failures", report.checked, report.failures.len());

    // φ_1(f, g) = (∂f/∂x1 at x1 = 0) · g
    let a1 = PolynomialAlgebra::new(CoefficientField::rationals(), 1)?;
    let inner = a1.clone();
    let phi1: BilinearMap<Polynomial> = Arc::new(move |f: &Polynomial, g: &Polynomial| {
        let d = inner.diff_multi(f, &[1, 0]);
        let mut c = inner.zero();
        for (m, k) in d.terms() {
            if m.exponents()[0] == 0 {
                c = inner.add(&c, &inner.monomial(m.clone(), k.clone()));
            }
        }
        inner.mul(&c, g)
    });
    let broken = StarProduct::from_cochains(a1.clone(), vec![phi1]);
    let c = |t: &str| a1.parse(t).map(|f| TruncatedSeries::constant(&a1, f, 2));
    let report = broken.check_associativity(&[(c("x")?, c("p")?, c("x")?)], 2)?;
    for f in &report.failures {
        println!(
            "x_projection: triple {} differs at h^{}: {} vs {}",
            f.index, f.order, f.left, f.right
        );
    }
    Ok(())
}

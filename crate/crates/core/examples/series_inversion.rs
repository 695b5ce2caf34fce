//! Star inversion of truncated series, with both residuals certified.
//!
//!     cargo run --example series_inversion

use defq::algebra::{BaseAlgebra, CoefficientField, MatrixAlgebra, PolynomialAlgebra, ScalarAlgebra};
use defq::hensel;
use defq::sample::Sampler;
use defq::series::TruncatedSeries;
use defq::star::StarProduct;
use defq::Error;

fn main() -> defq::Result<()> {
    let q = CoefficientField::rationals();
    let k = ScalarAlgebra::new(q);
    let trivial = StarProduct::trivial(k.clone());
    let a = TruncatedSeries::new(vec![q.one(), q.from_int(-1), q.zero(), q.zero(), q.zero()])?;
    let cert = hensel::certify_inverse(&trivial, &a)?;
    println!("(1 - h)^-1 = {}  valid: {}", trivial.format_series(&cert.inverse), cert.is_valid(&k));

    let alg = PolynomialAlgebra::new(q, 1)?;
    let moyal = StarProduct::moyal(alg.clone());
    let u = TruncatedSeries::new(vec![alg.one(), alg.parse("x p")?, alg.parse("p^2")?, alg.zero()])?;
    let cert = hensel::certify_inverse(&moyal, &u)?;
    println!("u = {}", moyal.format_series(&u));
    println!("u^-1 = {}  valid: {}", moyal.format_series(&cert.inverse), cert.is_valid(&alg));

    let m = MatrixAlgebra::new(k, 3)?;
    let star = StarProduct::trivial(m.clone());
    let mut sampler = Sampler::seeded(3);
    let a0 = sampler.invertible_matrix(&m);
    let x = sampler.series_over(&m, a0, 4);
    let cert = hensel::certify_inverse(&star, &x)?;
    println!("random 3x3 series: inverse valid: {}", cert.is_valid(&m));

    let singular = TruncatedSeries::new(vec![alg.x(1), alg.one()])?;
    match hensel::star_invert(&moyal, &singular) {
        Err(Error::NotInvertibleAtClassicalLimit) => println!("x + h: classical limit not invertible"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}

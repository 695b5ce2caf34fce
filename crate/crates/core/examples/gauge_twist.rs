//! A star product obtained by conjugating the plain product with a formal
//! series of linear maps, and its agreement with the conjugated product.
//!
//!     cargo run --example gauge_twist

use defq::algebra::{BaseAlgebra, CoefficientField, MatrixAlgebra, ScalarAlgebra};
use defq::hensel;
use defq::sample::Sampler;
use defq::star::StarProduct;

fn main() -> defq::Result<()> {
    let m2 = MatrixAlgebra::new(ScalarAlgebra::new(CoefficientField::rationals()), 2)?;
    let mut sampler = Sampler::seeded(11);
    let twist = sampler.matrix_twist(&m2, 2)?;
    let star = StarProduct::gauge_twist(m2.clone(), twist.clone());
    let plain = StarProduct::trivial(m2.clone());
    let n = 4;

    let a = sampler.series(&m2, n);
    let b = sampler.series(&m2, n);
    let ab = star.star_mul(&a, &b)?;
    // T⁻¹(T(a) T(b))
    let via = twist.apply_inverse(&m2, &plain.star_mul(&twist.apply(&m2, &a), &twist.apply(&m2, &b))?);
    println!("a * b = {}", star.format_series(&ab));
    println!("matches conjugated product: {}", ab == via);

    let x = sampler.element(&m2);
    let y = sampler.element(&m2);
    for p in 1..n {
        println!("phi{p}(x, y) = {}", m2.format(&star.phi(p, &x, &y)?));
    }

    let triples: Vec<_> = (0..5).map(|_| (sampler.series(&m2, n), sampler.series(&m2, n), sampler.series(&m2, n))).collect();
    let report = star.check_associativity(&triples, n)?;
    println!("associativity: {} triples, passed: {}", report.checked, report.passed());

    let a0 = sampler.invertible_matrix(&m2);
    let u = sampler.series_over(&m2, a0, n);
    println!("twisted inverse valid: {}", hensel::certify_inverse(&star, &u)?.is_valid(&m2));
    Ok(())
}

//! The kernel of reduction GL_n(A/h^{j+1}) -> GL_n(A/h^j) is abelian and
//! isomorphic to M_n(A) under addition.
//!
//!     cargo run --example kernel_group

use defq::algebra::{CoefficientField, MatrixAlgebra, PolynomialAlgebra, ScalarAlgebra};
use defq::hensel::kernel_group_check;
use defq::sample::Sampler;
use defq::star::StarProduct;

fn main() -> defq::Result<()> {
    let alg = PolynomialAlgebra::new(CoefficientField::rationals(), 1)?;
    let moyal = StarProduct::moyal(alg.clone());
    let mat = MatrixAlgebra::new(alg, 2)?;
    let mut sampler = Sampler::seeded(9).with_max_degree(2);
    let pairs: Vec<_> = (0..6).map(|_| (sampler.element(&mat), sampler.element(&mat))).collect();
    for j in 1..=2 {
        let report = kernel_group_check(&moyal, j, &pairs, 6)?;
        println!("Moyal M_2, j = {j}: passed {}", report.passed());
    }

    let f5 = CoefficientField::prime(5)?;
    let m = MatrixAlgebra::new(ScalarAlgebra::new(f5), 2)?;
    let pairs: Vec<_> = (0..6).map(|_| (sampler.element(&m), sampler.element(&m))).collect();
    let report = kernel_group_check(&StarProduct::trivial(ScalarAlgebra::new(f5)), 1, &pairs, 6)?;
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    Ok(())
}

//! Lifting invertible matrices over a truncation to a finer truncation.
//!
//!     cargo run --example invertible_lifting

use defq::algebra::{CoefficientField, PolynomialAlgebra};
use defq::hensel;
use defq::series::{SeriesMatrix, TruncatedSeries};
use defq::star::StarProduct;

fn main() -> defq::Result<()> {
    let alg = PolynomialAlgebra::new(CoefficientField::rationals(), 1)?;
    let star = StarProduct::moyal(alg.clone());
    let s = |coeffs: &[&str]| -> defq::Result<TruncatedSeries<_>> {
        TruncatedSeries::new(coeffs.iter().map(|t| alg.parse(t)).collect::<defq::Result<_>>()?)
    };
    // an element of GL_2 over A/h^2
    let u = SeriesMatrix::from_entries(2, vec![s(&["1", "x"])?, s(&["p", "1 + x p"])?, s(&["0", "1"])?, s(&["1", "0"])?])?;
    let lift = hensel::lift_invertible(&star, &u, 4)?;
    for i in 0..2 {
        for j in 0..2 {
            println!("inverse[{i}][{j}] = {}", star.format_series(lift.inverse.get(i, j)));
        }
    }
    Ok(())
}

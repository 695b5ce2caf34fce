//! Newton lifting of a classical idempotent to a star idempotent.
//!
//!     cargo run --example idempotent_lifting

use defq::algebra::{BaseAlgebra, CoefficientField, MatrixAlgebra, ScalarAlgebra};
use defq::hensel;
use defq::sample::Sampler;
use defq::star::StarProduct;

fn main() -> defq::Result<()> {
    let q = CoefficientField::rationals();
    let m2 = MatrixAlgebra::new(ScalarAlgebra::new(q), 2)?;
    let mut sampler = Sampler::seeded(5);
    let star = StarProduct::gauge_twist(m2.clone(), sampler.matrix_twist(&m2, 2)?);

    let e = m2.diagonal(&[q.one(), q.zero()])?;
    let cert = hensel::lift_idempotent(&star, &e, 6)?;
    println!("e = {}", m2.format(&e));
    println!("lift = {}", star.format_series(&cert.lift));
    println!("residual zero: {}  every truncation idempotent: {}", cert.is_valid(&m2), cert.truncations_idempotent);

    let f2 = CoefficientField::prime(2)?;
    let m2_f2 = MatrixAlgebra::new(ScalarAlgebra::new(f2), 2)?;
    match hensel::lift_idempotent(&StarProduct::trivial(m2_f2.clone()), &m2_f2.one(), 3) {
        Err(err) => println!("over F_2: {err}"),
        Ok(_) => println!("over F_2: unexpectedly lifted"),
    }
    Ok(())
}

//! The Moyal product on Q[x, p]: a few products, the canonical commutator,
//! and the first cochain against the Poisson bracket.
//!
//!     cargo run --example moyal_commutator

use defq::algebra::{BaseAlgebra, CoefficientField, PolynomialAlgebra};
use defq::series;
use defq::star::StarProduct;

fn main() -> defq::Result<()> {
    let alg = PolynomialAlgebra::new(CoefficientField::rationals(), 1)?;
    let star = StarProduct::moyal(alg.clone());
    let n = 4;

    for (f, g) in [("x", "p"), ("p", "x"), ("x^2", "p^2"), ("x p", "x p")] {
        let prod = star.star_mul_classical(&alg.parse(f)?, &alg.parse(g)?, n)?;
        println!("{f} * {g} = {}", star.format_series(&prod));
    }

    let x = alg.x(1);
    let p = alg.p(1);
    let xp = star.star_mul_classical(&x, &p, n)?;
    let px = star.star_mul_classical(&p, &x, n)?;
    println!("[x, p] = {}", star.format_series(&series::sub(&alg, &xp, &px)?));

    let f = alg.parse("x^2 p + 3 x")?;
    let g = alg.parse("p^3")?;
    let antisym = alg.sub(&star.phi(1, &f, &g)?, &star.phi(1, &g, &f)?);
    println!("phi1(f,g) - phi1(g,f) = {}", alg.format(&antisym));
    println!("{{f, g}}               = {}", alg.format(&alg.poisson_bracket(&f, &g)?));
    Ok(())
}

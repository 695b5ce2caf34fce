//! Lift a corpus of idempotents under a twisted product, build alternative
//! lifts, and certify that each is conjugate to the first.
//!
//!     cargo run --example k0_experiment

use defq::algebra::{CoefficientField, MatrixAlgebra, ScalarAlgebra};
use defq::cli::render_report;
use defq::k0lab;
use defq::sample::Sampler;
use defq::star::StarProduct;

fn main() -> defq::Result<()> {
    let q = CoefficientField::rationals();
    let m3 = MatrixAlgebra::new(ScalarAlgebra::new(q), 3)?;
    let seed = 2024;
    let star = StarProduct::gauge_twist(m3.clone(), Sampler::seeded(seed).matrix_twist(&m3, 2)?);
    let corpus = k0lab::default_corpus(q, 3, 2, seed)?;
    let report = k0lab::k0_experiment(&star, &corpus, 5, seed)?;
    for entry in &report.entries {
        let methods: Vec<_> = entry.conjugacies.iter().map(|c| format!("{}={}", c.method, c.is_valid())).collect();
        println!("entry {}: trace {}  {}", entry.index, entry.trace, methods.join(" "));
    }
    println!("passed {} of {}", report.passed_count(), report.entries.len());
    if std::env::args().any(|a| a == "--json") {
        print!("{}", render_report(&report.to_json(&m3)));
    }
    Ok(())
}

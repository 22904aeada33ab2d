// Betti table of the twisted cubic, computed from its three quadrics.

use std::error::Error;
use syzygy::field::PrimeFieldConfig;
use syzygy::gring::quotient_module;
use syzygy::koszul::{betti_diagram_with, hilbert_from_diagram, BettiOptions, BettiRun};
use syzygy::models::twisted_cubic_ideal;

pub fn run_example() -> Result<BettiRun, Box<dyn Error>> {
    let field = PrimeFieldConfig::default_for_level(1);
    // degree 3 is needed for the q = 2 row
    let m = quotient_module(&twisted_cubic_ideal(&field), 3)?;
    let run = betti_diagram_with(&m, 3, 2, &BettiOptions { check_complex: true })?;
    print!("{}", run.diagram.to_text());
    for d in 0..=2 {
        println!("dim M_{d} = {}, from the table {}", m.dim(d as i64), hilbert_from_diagram(&run.diagram, d)?);
    }
    Ok(run)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}

// The Koszul complex of the residue field is exact: `b_{p,0} = C(r+1, p)`.

use std::error::Error;
use syzygy::field::PrimeFieldConfig;
use syzygy::gring::{residue_field_module, RingSpec};
use syzygy::koszul::{betti_diagram_with, BettiDiagram, BettiOptions};

/// Diagram of `S/(x_0..x_r)` over the full window `p <= r + 1`, `q <= 1`.
pub fn residue_diagram(r: usize) -> Result<(BettiDiagram, bool), Box<dyn Error>> {
    let ring = RingSpec::new(r + 1, PrimeFieldConfig::default_for_level(1))?;
    let k = residue_field_module(&ring);
    let run = betti_diagram_with(&k, r + 1, 1, &BettiOptions { check_complex: true })?;
    Ok((run.diagram.clone(), run.all_complexes_hold()))
}

pub fn run_example() -> Result<Vec<BettiDiagram>, Box<dyn Error>> {
    let mut out = Vec::new();
    for r in 0..=5 {
        let (d, _) = residue_diagram(r)?;
        println!("r = {r}: {:?}", d.row(0));
        out.push(d);
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}

// Nodal plane curves in their adjoint-canonical embedding: a trigonal
// genus-5 quintic and a genus-7 sextic with three nodes.

use std::error::Error;
use syzygy::koszul::{betti_diagram_with, BettiOptions, BettiRun};
use syzygy::models::{build_model, BuiltModel, ModelSpec};

pub fn plane(degree: usize, nodes: usize, seed: u64) -> Result<(BuiltModel, BettiRun), Box<dyn Error>> {
    let model = build_model(ModelSpec::Plane { degree, nodes }, None, seed, 3)?;
    let (p_max, q_max) = model.default_window();
    let run = betti_diagram_with(&model.module, p_max, q_max, &BettiOptions { check_complex: true })?;
    Ok((model, run))
}

pub fn run_example() -> Result<Vec<(BuiltModel, BettiRun)>, Box<dyn Error>> {
    let mut out = Vec::new();
    for (degree, nodes, seed) in [(5, 1, 0), (6, 3, 2)] {
        let (m, run) = plane(degree, nodes, seed)?;
        println!("degree {degree}, {nodes} nodes, genus {}", m.genus);
        print!("{}", run.diagram.to_text());
        out.push((m, run));
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}

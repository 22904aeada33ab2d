// Property (N_p) for bundles of degree `2g + 1 + p`, and the diagonal
// identity of a nonspecial embedding.

use std::error::Error;
use syzygy::conjectures::{diagonal_identity_check, np_property, CheckOutcome};
use syzygy::koszul::{betti_diagram_with, BettiOptions, BettiRun};
use syzygy::models::{build_model, BuiltModel, BundleChoice, ModelSpec};

pub struct NpRun {
    pub p: usize,
    pub model: BuiltModel,
    pub run: BettiRun,
    pub np: CheckOutcome,
    pub diagonal: CheckOutcome,
}

pub fn np_case(genus: usize, p: usize, seed: u64) -> Result<NpRun, Box<dyn Error>> {
    let spec = ModelSpec::RationalNodal { genus, bundle: BundleChoice::Twist { degree: 2 * genus + 1 + p } };
    let model = build_model(spec, None, seed, 3)?;
    let (p_max, q_max) = model.default_window();
    let run = betti_diagram_with(&model.module, p_max, q_max, &BettiOptions { check_complex: true })?;
    let np = np_property(&run.diagram, &model.audit, p)?;
    let diagonal = diagonal_identity_check(&run.diagram, model.degree, genus)?;
    Ok(NpRun { p, model, run, np, diagonal })
}

pub fn run_example() -> Result<Vec<NpRun>, Box<dyn Error>> {
    let mut out = Vec::new();
    for p in [1, 2] {
        let c = np_case(4, p, 0)?;
        println!("g = 4, deg L = {}", c.model.degree);
        print!("{}", c.run.diagram.to_text());
        println!("N_{p}: {}\ndiagonal: {}", c.np.detail, c.diagonal.detail);
        out.push(c);
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}

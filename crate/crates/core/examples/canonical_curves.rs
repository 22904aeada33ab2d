// Canonical rational nodal curves of genus 5 and 7: tables, duality and
// Green's prediction with the general Clifford index.

use std::error::Error;
use syzygy::conjectures::{duality_check, green_predicate, CheckOutcome};
use syzygy::koszul::{betti_diagram_with, BettiOptions, BettiRun};
use syzygy::models::{build_model, BuiltModel, BundleChoice, ModelSpec};

pub struct CanonicalRun {
    pub model: BuiltModel,
    pub run: BettiRun,
    pub duality: CheckOutcome,
    pub green: CheckOutcome,
}

pub fn canonical(genus: usize, seed: u64) -> Result<CanonicalRun, Box<dyn Error>> {
    let spec = ModelSpec::RationalNodal { genus, bundle: BundleChoice::Canonical };
    let model = build_model(spec, None, seed, 3)?;
    let (p_max, q_max) = model.default_window();
    let run = betti_diagram_with(&model.module, p_max, q_max, &BettiOptions { check_complex: true })?;
    let duality = duality_check(&run.diagram, genus);
    let green = green_predicate(&run.diagram, (genus - 1) / 2)?;
    Ok(CanonicalRun { model, run, duality, green })
}

pub fn run_example() -> Result<Vec<CanonicalRun>, Box<dyn Error>> {
    let mut out = Vec::new();
    for g in [5, 7] {
        let c = canonical(g, 1)?;
        println!("genus {g}, seed {}", c.model.seed_used);
        print!("{}", c.run.diagram.to_text());
        println!("duality: {}\ngreen: {}", c.duality.detail, c.green.detail);
        out.push(c);
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}

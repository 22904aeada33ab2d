// Paracanonical curves `ω ⊗ η` with `η` of order `ℓ`: the quadrics map in
// genus 6, the level-3 table in genus 7, and the level-2 failure in genus 8.

use std::error::Error;
use syzygy::conjectures::{expected_table, Family};
use syzygy::curves::sym_map_rank;
use syzygy::koszul::{betti_diagram_with, BettiDiagram, BettiOptions, BettiRun};
use syzygy::models::{build_model, BuiltModel, BundleChoice, ModelSpec};

fn spec(genus: usize, level: u32) -> ModelSpec {
    ModelSpec::RationalNodal { genus, bundle: BundleChoice::Paracanonical { level } }
}

/// `(rank, dim Sym^2 H^0(L), h^0(L^2))` for the multiplication map.
pub fn sym2(genus: usize, level: u32, seed: u64) -> Result<(usize, usize, usize), Box<dyn Error>> {
    let model = build_model(spec(genus, level), None, seed, 1)?;
    let l = model.bundle.as_ref().expect("curve models carry their bundle");
    let n = l.h0();
    Ok((sym_map_rank(l, 2)?, n * (n + 1) / 2, l.expected_h0(2)))
}

pub fn prym_table(genus: usize, level: u32, seed: u64) -> Result<(BuiltModel, BettiRun), Box<dyn Error>> {
    let model = build_model(spec(genus, level), None, seed, 3)?;
    let (p_max, q_max) = model.default_window();
    let run = betti_diagram_with(&model.module, p_max, q_max, &BettiOptions { check_complex: true })?;
    Ok((model, run))
}

pub fn expected(genus: usize) -> BettiDiagram {
    expected_table(Family::for_genus(false, genus), genus).expect("genus >= 5").diagram
}

pub fn run_example() -> Result<Vec<(BuiltModel, BettiRun)>, Box<dyn Error>> {
    for level in [2, 3] {
        let (rank, src, dst) = sym2(6, level, 0)?;
        println!("g = 6, level {level}: Sym^2 map {src} -> {dst} has rank {rank}");
    }
    let mut out = Vec::new();
    for (g, level, seed) in [(7, 3, 0), (8, 2, 3)] {
        let (m, run) = prym_table(g, level, seed)?;
        println!("g = {g}, level {level}, seed {}", m.seed_used);
        print!("{}", run.diagram.to_text());
        println!("predicted:\n{}", expected(g).to_text());
        out.push((m, run));
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}

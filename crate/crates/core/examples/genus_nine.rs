// Full canonical table in genus 9, with per-strand timings.

use std::error::Error;
use std::time::{Duration, Instant};
use syzygy::koszul::{betti_diagram_with, BettiOptions, BettiRun};
use syzygy::models::{build_model, BundleChoice, ModelSpec};

pub fn run_example() -> Result<(BettiRun, Duration), Box<dyn Error>> {
    let t = Instant::now();
    let spec = ModelSpec::RationalNodal { genus: 9, bundle: BundleChoice::Canonical };
    let model = build_model(spec, None, 0, 3)?;
    let run = betti_diagram_with(&model.module, 7, 3, &BettiOptions { check_complex: true })?;
    let elapsed = t.elapsed();
    print!("{}", run.diagram.to_text());
    let slowest = run.timings.iter().max_by_key(|s| s.build_ms + s.rank_ms).expect("some strand");
    println!(
        "{:?} total; slowest d_{{{},{}}} {}x{} rank {} in {} ms",
        elapsed, slowest.p, slowest.q, slowest.rows, slowest.cols, slowest.rank, slowest.rank_ms
    );
    Ok((run, elapsed))
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}

// Explicit syzygies of split bundles `L_1 ⊗ L_2`: rational normal curves,
// and two degree-2 pencils on a genus-1 curve giving a rank-4 quadric.

use std::error::Error;
use syzygy::models::{split_witness, SplitWitness};

pub fn run_example() -> Result<Vec<SplitWitness>, Box<dyn Error>> {
    let mut out = Vec::new();
    for (genus, d1, d2) in [(0, 1, 2), (0, 2, 1), (0, 2, 2), (1, 2, 2)] {
        let w = split_witness(genus, d1, d2, None, 0)?;
        println!(
            "genus {genus}, degrees ({d1}, {d2}): certified in K_{{{},1}}, dim K = {}, quadric rank {:?}",
            w.witness.p, w.koszul_dim, w.quadric_rank
        );
        out.push(w);
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}

// Predicted Betti tables of general canonical and paracanonical curves.

use std::error::Error;
use syzygy::conjectures::{expected_table, ExpectedTable, Family};

pub fn run_example() -> Result<Vec<ExpectedTable>, Box<dyn Error>> {
    let mut out = Vec::new();
    for g in 5..=13 {
        for canonical in [true, false] {
            let t = expected_table(Family::for_genus(canonical, g), g)?;
            if g <= 8 {
                println!("{} g = {g}", t.family);
                print!("{}", t.diagram.to_text());
            }
            out.push(t);
        }
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}

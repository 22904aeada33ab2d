// Driving the command-line interface in-process and reading its JSON report.

use std::error::Error;
use syzygy::cli::run;

pub fn run_example() -> Result<serde_json::Value, Box<dyn Error>> {
    let args = ["syzygy", "check", "duality", "--genus", "7", "--seed", "1", "--format", "json"];
    let out = run(args);
    if out.code != 0 {
        return Err(format!("exit {}: {}", out.code, out.stderr).into());
    }
    let report: serde_json::Value = serde_json::from_str(&out.stdout)?;
    println!("duality: {}", report["predicates"]["duality"]["status"]);
    Ok(report)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}

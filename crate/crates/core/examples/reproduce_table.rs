//! Reproduces one of the numbered experiments and prints it as CSV.
//!
//! `cargo run --release --example reproduce_table -- 5`

use std::io;

use oscquad::bench::{run_example, write_csv};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let id = std::env::args()
        .nth(1)
        .map(|s| s.parse::<u32>())
        .transpose()?
        .unwrap_or(1);
    let records = run_example(id)?;
    write_csv(&records, io::stdout().lock(), None)?;
    Ok(())
}

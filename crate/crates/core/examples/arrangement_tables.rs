//! Reproduces the bundled tables of restricted root systems for one
//! exceptional type (default `F4`): `|𝒜^J|`, `|𝒞^J|`, `|W^J|`, `|𝒦_J|`,
//! `h^J` and the exponents, row by row.
//!
//! Run with `cargo run --release --example arrangement_tables -- E6`.

use lie_gradings::cli::{tables_report, Status, TablesScope};
use lie_gradings::restrict::Budget;
use lie_gradings::rootsys::parse_type;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let system = std::env::args().nth(1).unwrap_or_else(|| "F4".into());
    let scope = TablesScope { system: Some(parse_type(&system)?), row: None, max_chambers: 100_000 };
    let report = tables_report(&scope, Budget::default(), false);
    for row in &report.rows {
        println!("{row}");
    }
    println!(
        "{} of {} rows reproduced",
        report.count(Status::Pass),
        report.rows.len()
    );
    Ok(())
}

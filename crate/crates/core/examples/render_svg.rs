//! Draws the two-dimensional good-grading polytopes of `E₇ A₃+A₂` and of
//! `sl₈ (3,3,2)` as SVG, with the affine root hyperplanes and the integral
//! points marked.
//!
//! Run with `cargo run --release --example render_svg -- OUTDIR`.

use std::path::PathBuf;

use lie_gradings::cli::{run, JobSpec, Mode};
use lie_gradings::pyramids::ClassicalType;
use lie_gradings::rootsys::CartanType;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let jobs = [
        ("e7_a3_a2.svg", JobSpec::root(Mode::Render, CartanType::E, 7, &[1, 3, 5, 6, 7])),
        ("sl8_332.svg", JobSpec { mode: Mode::Render, ..JobSpec::classical(ClassicalType::Sl, &[3, 3, 2]) }),
    ];
    for (file, spec) in jobs {
        let outcome = run(&spec)?;
        let path = dir.join(file);
        std::fs::write(&path, outcome.svg.expect("render jobs draw a picture"))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

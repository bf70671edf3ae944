//! Runs a job described by a flat config file, the way the command-line
//! tool does, and prints the resulting JSON document.
//!
//! Run with `cargo run --example job_spec`.

use lie_gradings::cli::{run, Flags, JobSpec, Mode};

const CONFIG: &str = "
# E7 with Levi A3+A2, nodes numbered 3 4 2 5 6 7 / 1 along the diagram.
type = E7
order = 3,4,2,5,6,7,1
J = 3,4,5,6,7
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let flags = Flags::from_config(CONFIG)?;
    let spec = JobSpec::from_flags(Mode::Restrict, &flags)?;
    let outcome = run(&spec)?;
    for line in &outcome.summary {
        eprintln!("{line}");
    }
    print!("{}", outcome.document.to_json());
    Ok(())
}

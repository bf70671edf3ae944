//! Good gradings for the nilpotent `A₃+A₂` of `E₇`: the `sl₂` multiplicities
//! of the restricted roots, the good-grading polytope, its integral points
//! and the component group.
//!
//! Run with `cargo run --release --example good_gradings`.

use lie_gradings::exact::fmt_q;
use lie_gradings::grading::{Characteristic, GradingAnalysis, NilpotentDatum};
use lie_gradings::restrict::Budget;
use lie_gradings::rootsys::{CartanType, RootSystem};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rs = RootSystem::build(CartanType::E, 7)?;
    let datum = NilpotentDatum::principal(7, &[0, 2, 4, 5, 6])?.with_name("A3+A2");
    let g = GradingAnalysis::compute(&rs, &datum, Budget::default())?;

    println!("labelled diagram: {}", Characteristic(g.h_labels.clone()).display_commas(CartanType::E));
    println!("positive restricted roots (coordinates on β2, β4), m(α,i) sequences and d(α):");
    for k in 0..g.rrs.num_positive() {
        println!("  {:?}  {:?}  d = {}", g.rrs.root(k), g.decomposition.sequence(k), g.decomposition.d[k]);
    }
    println!("irredundant facets of the polytope:");
    for f in &g.polytope.facets {
        println!("  |{:?}·p| < {}", f.functional, fmt_q(&f.bound));
    }
    let pts: Vec<Vec<String>> = g.integral_points.iter().map(|p| p.iter().map(fmt_q).collect()).collect();
    println!("integral points: {pts:?}");
    println!(
        "|W_e| = {}, |W_e°| = {}, |Z_e| = {}",
        g.components.we_order, g.components.circ_weyl_order, g.components.z_order
    );
    Ok(())
}

//! The adjacency graph of integral good gradings for the nilpotent `A₃` of
//! `E₆` (principal in the Levi of nodes 1,3,4), printed as Graphviz DOT.
//!
//! Run with `cargo run --example adjacency_graph | dot -Tsvg > a3.svg`.

use lie_gradings::cli::graph_to_dot;
use lie_gradings::grading::{GradingAnalysis, NilpotentDatum};
use lie_gradings::restrict::Budget;
use lie_gradings::rootsys::{CartanType, RootSystem};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rs = RootSystem::build(CartanType::E, 6)?;
    let datum = NilpotentDatum::principal(6, &[0, 2, 3])?;
    let g = GradingAnalysis::compute(&rs, &datum, Budget::default())?;
    for n in &g.graph.nodes {
        eprintln!(
            "{}{}",
            n.characteristic.display(CartanType::E),
            if n.dynkin { "  (Dynkin grading)" } else { "" }
        );
    }
    eprintln!("{} nodes, {} edges, connected: {}", g.graph.nodes.len(), g.graph.edges.len(), g.graph.is_connected());
    print!("{}", graph_to_dot("E6 A3", &g.graph, CartanType::E));
    Ok(())
}

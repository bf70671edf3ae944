//! Integral good gradings, adjacency graphs and component groups checked
//! against bundled published data.

use lie_gradings::exact::{q, qi, Rational};
use lie_gradings::fixtures::{component_group_order, named_nilpotent, ADJACENCY_FIXTURES};
use lie_gradings::grading::{GradingAnalysis, NilpotentDatum};
use lie_gradings::restrict::Budget;
use lie_gradings::rootsys::{CartanType, RootSystem};

fn datum(rank: usize, j: &[usize], labels: &[i64]) -> NilpotentDatum {
    let j0: Vec<usize> = j.iter().map(|x| x - 1).collect();
    NilpotentDatum::new(rank, &j0, labels).unwrap()
}

#[test]
fn adjacency_graphs_match_published_pictures() {
    for fx in ADJACENCY_FIXTURES {
        let rs = RootSystem::build(fx.kind, fx.rank).unwrap();
        let g = GradingAnalysis::compute(&rs, &datum(fx.rank, fx.j, fx.labels), Budget::default()).unwrap();
        let (nodes, edges) = g.graph.canonical(fx.kind);
        let mut want_nodes: Vec<String> = fx.nodes.iter().map(|s| s.to_string()).collect();
        want_nodes.sort();
        let mut want_edges: Vec<(String, String)> = fx
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (fx.nodes[a].to_string(), fx.nodes[b].to_string());
                if x <= y { (x, y) } else { (y, x) }
            })
            .collect();
        want_edges.sort();
        assert_eq!(nodes, want_nodes, "{} nodes", fx.name);
        assert_eq!(edges, want_edges, "{} edges", fx.name);
        let dyn_node = g.graph.nodes.iter().find(|n| n.dynkin).unwrap();
        assert_eq!(dyn_node.characteristic.display(fx.kind), fx.nodes[fx.dynkin], "{} Dynkin node", fx.name);
    }
}

#[test]
fn e7_a3_plus_a2_polytope_and_components() {
    let rs = RootSystem::build(CartanType::E, 7).unwrap();
    let g = GradingAnalysis::compute(&rs, &datum(7, &[1, 3, 5, 6, 7], &[2; 5]), Budget::default()).unwrap();
    let h: Vec<Rational> = [2, 0, 2, -5, 2, 2, 2].iter().map(|&x| qi(x)).collect();
    assert_eq!(g.h_labels, h);
    // Positive restricted roots in coordinates (α_2, α_4).
    let bounds = [([1, 0], 1), ([0, 1], 2), ([1, 1], 2), ([1, 2], 3), ([1, 3], 4), ([2, 3], 4), ([2, 4], 3)];
    for (root, d) in bounds {
        let k = g.rrs.index_of(&root).unwrap();
        assert_eq!(g.decomposition.d[k], d, "{root:?}");
    }
    let facets: Vec<(Vec<i64>, Rational)> =
        g.polytope.facets.iter().map(|f| (f.functional.clone(), f.bound.clone())).collect();
    assert_eq!(facets.len(), 2);
    assert!(facets.contains(&(vec![1, 0], qi(1))));
    assert!(facets.contains(&(vec![1, 2], q(3, 2))));
    assert_eq!(g.integral_points, vec![vec![qi(0), qi(0)]]);
    assert_eq!(g.components.simple_circ, vec![g.rrs.index_of(&[1, 0]).unwrap()]);
    assert_eq!(g.components.circ_weyl_order, 2);
    assert_eq!(g.components.z_order, 2);
    assert_eq!(g.components.we_order, 4);
}

#[test]
fn component_groups_of_exceptional_orbits() {
    let cases = [
        (CartanType::G, 2, "A1"),
        (CartanType::G, 2, "~A1"),
        (CartanType::F, 4, "A1"),
        (CartanType::F, 4, "~A1"),
        (CartanType::F, 4, "B2"),
        (CartanType::F, 4, "A1+~A1"),
        (CartanType::E, 6, "A1"),
        (CartanType::E, 6, "A2"),
        (CartanType::E, 6, "A3"),
        (CartanType::E, 6, "D4"),
        (CartanType::E, 6, "D4(a1)"),
        (CartanType::E, 6, "D5(a1)"),
    ];
    for (kind, rank, name) in cases {
        let n = named_nilpotent(kind, rank, name).unwrap();
        let rs = RootSystem::build(kind, rank).unwrap();
        let g = GradingAnalysis::compute(&rs, &datum(rank, n.j, n.labels), Budget::default()).unwrap();
        let c = &g.components;
        assert_eq!(c.z_order * c.circ_weyl_order, c.we_order, "{kind}{rank} {name}");
        assert_eq!(c.z_order, component_group_order(kind, rank, name), "{kind}{rank} {name}");
    }
}

//! Classical nilpotents via pyramids: published examples, matrix invariants,
//! the direct rank test and agreement with the general machinery in type A.

use lie_gradings::exact::{q, qi, Rational};
use lie_gradings::grading::{Characteristic, GradingAnalysis};
use lie_gradings::pyramids::{
    classical_oracle, expected_component_group_order, jordan_type, parse_matrix_units, build_pyramid,
    ClassicalAnalysis, ClassicalNilpotent, ClassicalType, Partition,
};
use lie_gradings::restrict::Budget;
use lie_gradings::rootsys::{CartanType, RootSystem};

fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

fn ch(v: &[i64]) -> Characteristic {
    Characteristic(v.iter().map(|&x| qi(x)).collect())
}

fn all_cases(max_sl: usize, max_n: usize) -> Vec<(ClassicalType, Partition)> {
    let mut out = Vec::new();
    for n in 2..=max_sl {
        for p in Partition::all(n) {
            out.push((ClassicalType::Sl, p));
        }
    }
    for n in 2..=max_n {
        for kind in [ClassicalType::Sp, ClassicalType::So] {
            if kind == ClassicalType::So && n < 3 {
                continue;
            }
            for p in Partition::all(n) {
                if p.validate(kind).is_ok() {
                    out.push((kind, p));
                }
            }
        }
    }
    out
}

#[test]
fn sl_332_example() {
    let a = ClassicalAnalysis::compute(ClassicalType::Sl, &part("3,3,2"), Budget::default()).unwrap();
    assert_eq!(a.integral_points.len(), 3);
    assert_eq!(a.classes.len(), 3);
    let mut got = a.characteristics.clone();
    got.sort();
    let mut want = vec![ch(&[0, 2, 0, 0, 2, 0, 0]), ch(&[0, 1, 1, 0, 1, 1, 0]), ch(&[0, 0, 2, 0, 0, 2, 0])];
    want.sort();
    assert_eq!(got, want);
    // Bounds |p_i - p_j| < 1 + λ_i - λ_j on the plane 3p₁+3p₂+2p₃ = 0.
    let cn = &a.nilpotent;
    assert!(cn.contains(&[q(1, 4), q(1, 4), q(-3, 4)]).unwrap());
    assert!(!cn.contains(&[q(1, 2), q(-1, 2), qi(0)]).unwrap());
    assert!(cn.contains(&[q(1, 2), q(-1, 2), qi(0)]).is_ok());
    assert!(cn.contains(&[qi(1), qi(0), qi(0)]).is_err());
}

#[test]
fn sp_2211_example() {
    let a = ClassicalAnalysis::compute(ClassicalType::Sp, &part("2,2,1,1"), Budget::default()).unwrap();
    let pts: Vec<Vec<Rational>> = vec![vec![qi(-1), qi(0)], vec![qi(0), qi(0)], vec![qi(1), qi(0)]];
    assert_eq!(a.integral_points, pts);
    assert_eq!(a.characteristics, vec![ch(&[2, 0, 0]), ch(&[0, 1, 0]), ch(&[2, 0, 0])]);
    assert_eq!(a.classes.len(), 2);
    let cn = &a.nilpotent;
    let facets: Vec<(Vec<i64>, Rational)> = cn.polytope.facets.iter().map(|f| (f.functional.clone(), f.bound.clone())).collect();
    assert_eq!(facets.len(), 2);
    assert!(facets.contains(&(vec![1, 0], q(3, 2))));
    assert!(facets.contains(&(vec![0, 1], q(1, 2))));
    assert!(!classical_oracle(cn, &[q(3, 2), qi(0)]).unwrap().good);
    assert!(classical_oracle(cn, &[qi(1), qi(0)]).unwrap().good);
}

#[test]
fn published_e_matrices() {
    let cases = [
        (ClassicalType::Sl, "3,3,2", "e_{8,7}+e_{6,5}+e_{5,4}+e_{3,2}+e_{2,1}"),
        (ClassicalType::Sp, "4,2,1,1", "e_{3,-3}+e_{2,1}+e_{1,-1}-e_{-1,-2}"),
    ];
    for (kind, p, e) in cases {
        let pyr = build_pyramid(kind, &part(p)).unwrap();
        assert_eq!(pyr.e_entries(), parse_matrix_units(e).unwrap());
    }
}

#[test]
fn matrices_are_valid_sl2_data() {
    for (kind, p) in all_cases(7, 10) {
        let pyr = build_pyramid(kind, &p).unwrap();
        let e = pyr.e_matrix();
        assert_eq!(jordan_type(&e), p.0, "{kind} {p}");
        let h = pyr.h_diagonal();
        let n = e.len();
        for i in 0..n {
            for j in 0..n {
                assert_eq!((h[i] - h[j]) * e[i][j], 2 * e[i][j], "[h,e] = 2e for {kind} {p}");
            }
        }
        if let Some(g) = pyr.form() {
            for i in 0..n {
                for j in 0..n {
                    let a: i64 = (0..n).map(|k| e[k][i] * g[k][j] + g[i][k] * e[k][j]).sum();
                    assert_eq!(a, 0, "e preserves the form for {kind} {p}");
                }
            }
        }
    }
}

#[test]
fn oracle_agrees_with_polytope() {
    for (kind, p) in all_cases(6, 8) {
        let cn = ClassicalNilpotent::new(kind, &p).unwrap();
        if cn.polytope.dim > 0 && cn.polytope.functionals.is_empty() {
            continue;
        }
        let samples = cn.polytope.sample_points(7, 50, 150).unwrap();
        assert!(samples.len() >= 50 || cn.polytope.dim == 0);
        for y in samples {
            let pt = cn.from_coords(&y);
            let member = cn.polytope.contains(&y);
            let r = classical_oracle(&cn, &pt).unwrap();
            assert_eq!(member, r.good, "{kind} {p} at {pt:?}");
            if r.good {
                assert_eq!(r.centralizer_dim, r.low_degree_dim, "{kind} {p}");
            }
        }
    }
}

#[test]
fn component_groups_follow_the_parity_rules() {
    for (kind, p) in all_cases(6, 12) {
        let cn = ClassicalNilpotent::new(kind, &p).unwrap();
        let (we, circ, z) = cn.component_group_order();
        assert_eq!(z * circ, we, "{kind} {p}");
        assert_eq!(z, expected_component_group_order(kind, &p), "{kind} {p}");
    }
}

#[test]
fn characteristics_classify_classes() {
    for (kind, p) in all_cases(7, 10) {
        let a = ClassicalAnalysis::compute(kind, &p, Budget::default()).unwrap();
        for c in &a.characteristics {
            assert!(c.is_good_range(), "{kind} {p}: {c:?}");
        }
        let mut seen = std::collections::HashMap::new();
        for (k, cl) in a.classes.iter().enumerate() {
            let first = &a.characteristics[cl.members[0]];
            for &m in &cl.members {
                assert_eq!(&a.characteristics[m], first, "{kind} {p}: class with two characteristics");
                if let Some(prev) = seen.insert(a.characteristics[m].clone(), k) {
                    assert_eq!(prev, k, "{kind} {p}: classes share a characteristic");
                }
            }
        }
        let zero = vec![qi(0); a.nilpotent.m()];
        assert!(a.integral_points.contains(&zero));
    }
}

#[test]
fn type_a_agrees_with_general_machinery() {
    for n in 2..=7 {
        let rs = RootSystem::build(CartanType::A, n - 1).unwrap();
        for p in Partition::all(n) {
            let a = ClassicalAnalysis::compute(ClassicalType::Sl, &p, Budget::default()).unwrap();
            let datum = a.nilpotent.type_a_datum().unwrap();
            let g = GradingAnalysis::compute(&rs, &datum, Budget::default()).unwrap();
            let mut x: Vec<Characteristic> = a.characteristics.clone();
            let mut y: Vec<Characteristic> =
                g.integral_points.iter().map(|pt| g.characteristic_of(pt).unwrap()).collect();
            x.sort();
            y.sort();
            assert_eq!(x, y, "sl{n} {p}");
            assert_eq!(a.classes.len(), g.classes.len(), "sl{n} {p}");
            assert_eq!(a.graph.edges.len(), g.graph.edges.len(), "sl{n} {p}");
        }
    }
}

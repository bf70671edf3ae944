//! Acceptance checks: one line per criterion, `PASS`/`FAIL`, with the
//! tolerance (always exact equality) and the elapsed time.
//!
//! A criterion that cannot be met as stated is reported as `FAIL` with the
//! reason; such known deviations are listed in `KNOWN_DEVIATIONS` and do not
//! change the exit status. Any other failure makes the run fail.

use std::collections::{HashMap, HashSet};
use std::time::Instant;

use lie_gradings::arrange::{arrangement_stats, ArrangementStats};
use lie_gradings::cli::{check_adjacency_fixture, check_table_row, run, Flags, JobSpec, Mode, RowReport, Status};
use lie_gradings::exact::{fmt_q, q, qi, Rational};
use lie_gradings::fixtures::{self, adjacency_fixture};
use lie_gradings::grading::{
    oracle_check, restricted_polytope, sl2_multiplicities, solve_h, Characteristic, GradingAnalysis, NilpotentDatum,
};
use lie_gradings::pyramids::{
    build_pyramid, classical_oracle, parse_matrix_units, ClassicalAnalysis, ClassicalNilpotent, ClassicalType,
    Partition,
};
use lie_gradings::restrict::{restricted_weyl, Budget, RestrictedRootSystem};
use lie_gradings::rootsys::{CartanType, ChevalleyAlgebra, RootSystem};

/// Criteria that are reported as failing for a documented reason.
const KNOWN_DEVIATIONS: &[(u32, &str)] = &[(
    8,
    "the printed so(5,3,1) matrix has coefficient 1 on e_{1,0}; the stated Chevalley basis \
     (2e_{k,0} - e_{0,-k}, form with (v0,v0) = 2) forces 2, and the printed matrix does not preserve the form",
)];

enum Verdict {
    Pass(String),
    Fail(String),
}

use Verdict::{Fail, Pass};

struct Harness {
    unexpected: usize,
    /// Arrangement statistics computed along the way, reused by the
    /// identity checks.
    stats: Vec<(String, ArrangementStats)>,
    /// Characteristics-vs-classes checks gathered from every grading run.
    class_checks: usize,
    class_violations: Vec<String>,
    range_violations: Vec<String>,
}

impl Harness {
    fn criterion(&mut self, id: u32, title: &str, f: impl FnOnce(&mut Harness) -> Verdict) {
        let start = Instant::now();
        let verdict = f(self);
        let secs = start.elapsed().as_secs_f64();
        let (status, detail) = match verdict {
            Pass(d) => ("PASS", d),
            Fail(d) => {
                match KNOWN_DEVIATIONS.iter().find(|(k, _)| *k == id) {
                    Some((_, why)) => println!("      criterion {id} is a known deviation: {why}"),
                    None => self.unexpected += 1,
                }
                ("FAIL", d)
            }
        };
        println!("{status} {id:>2}. {title} [exact] ({secs:.1} s): {detail}");
    }

    /// Records whether `W_e`-classes and characteristics determine each other
    /// and whether every characteristic lies in `[0,2]^r`.
    fn record_classes(&mut self, name: &str, members: &[Vec<usize>], chars: &[Characteristic]) {
        self.class_checks += 1;
        let mut owner: HashMap<&Characteristic, usize> = HashMap::new();
        for (k, cl) in members.iter().enumerate() {
            for &m in cl {
                if chars[m] != chars[cl[0]] {
                    self.class_violations.push(format!("{name}: class {k} has two characteristics"));
                }
                if let Some(prev) = owner.insert(&chars[m], k) {
                    if prev != k {
                        self.class_violations.push(format!("{name}: classes {prev} and {k} share a characteristic"));
                    }
                }
            }
        }
        for c in chars {
            if !c.is_good_range() {
                self.range_violations.push(format!("{name}: {c:?}"));
            }
        }
    }

    fn record_grading(&mut self, name: &str, g: &GradingAnalysis) {
        let chars: Vec<Characteristic> = g.integral_points.iter().map(|p| g.characteristic_of(p).unwrap()).collect();
        let members: Vec<Vec<usize>> = g.classes.iter().map(|c| c.members.clone()).collect();
        self.record_classes(name, &members, &chars);
    }
}

fn table_rows(h: &mut Harness, kind: CartanType, rank: usize, max_chambers: u64) -> Vec<RowReport> {
    let rs = RootSystem::build(kind, rank).unwrap();
    let mut out = Vec::new();
    for row in fixtures::table(kind, rank).unwrap() {
        if row.chambers > max_chambers {
            continue;
        }
        let report = check_table_row(kind, rank, row, Budget::default());
        let j0: Vec<usize> = row.j.iter().map(|x| x - 1).collect();
        if let Ok(s) = arrangement_stats(&rs, &j0, Budget::default()) {
            h.stats.push((format!("{kind}{rank} {}", row.levi), s));
        }
        out.push(report);
    }
    out
}

fn all_rows_pass(rows: &[RowReport], expected: usize) -> Verdict {
    let passed = rows.iter().filter(|r| r.status == Status::Pass).count();
    let failed: Vec<String> = rows.iter().filter(|r| r.status != Status::Pass).map(|r| r.to_string()).collect();
    if passed == expected && failed.is_empty() {
        Pass(format!("{passed}/{expected} rows match"))
    } else {
        Fail(format!("{passed}/{expected} rows match; {}", failed.join("; ")))
    }
}

fn criterion_4(h: &mut Harness) -> Verdict {
    let rs = RootSystem::build(CartanType::E, 7).unwrap();
    let mut problems = Vec::new();
    for (levi, want) in [("A3+A2", "(6,12,4,3,6,{1,5})"), ("2A2", "(13,96,24,4,8,{1,5,7})")] {
        let row = fixtures::table(CartanType::E, 7).unwrap().iter().find(|r| r.levi == levi).unwrap();
        let rep = check_table_row(CartanType::E, 7, row, Budget::default());
        let got = rep.computed.as_ref().map(|c| c.to_string()).unwrap_or_default();
        if rep.status != Status::Pass || got != want {
            problems.push(format!("{levi}: got {got}, want {want}"));
        }
    }
    let rrs = RestrictedRootSystem::new(&rs, &[0, 2, 4, 5, 6]).unwrap();
    let w = restricted_weyl(&rrs, Budget::default()).unwrap();
    if w.order != 4 || w.orbit_size != Some(725_760) {
        problems.push(format!("W^J order {} from orbit {:?}", w.order, w.orbit_size));
    }
    // Everything else at desk scale: E7 rows up to 10^4 chambers and E8 rows
    // up to 10^4 chambers (a published row that violates the counting
    // identities is reported separately).
    let mut e7 = table_rows(h, CartanType::E, 7, 10_000);
    e7.retain(|r| r.levi != "A3+A2" && r.levi != "2A2");
    let e8 = table_rows(h, CartanType::E, 8, 10_000);
    let mismatched: Vec<&RowReport> = e7.iter().chain(&e8).filter(|r| r.status != Status::Pass).collect();
    let misprints: Vec<String> = mismatched
        .iter()
        .filter(|r| !r.published.inconsistencies().is_empty())
        .map(|r| format!("{} {} published {} violates {}", r.system, r.levi, r.published, r.published.inconsistencies().join(", ")))
        .collect();
    for r in &mismatched {
        if r.published.inconsistencies().is_empty() {
            problems.push(r.to_string());
        }
    }
    let e8_pass = e8.iter().filter(|r| r.status == Status::Pass).count();
    let e7_pass = e7.iter().filter(|r| r.status == Status::Pass).count();
    let detail = format!(
        "A3+A2 (6,12,4,3,6,{{1,5}}) and 2A2 (13,96,24,4,8,{{1,5,7}}) match; W^J order 4 from a 725760-state orbit; \
         other E7 rows ≤10^4 chambers {e7_pass}/{}; E8 rows ≤10^4 chambers {e8_pass}/{}{}",
        e7.len(),
        e8.len(),
        if misprints.is_empty() { String::new() } else { format!(" (misprint: {})", misprints.join("; ")) }
    );
    if problems.is_empty() {
        Pass(detail)
    } else {
        Fail(problems.join("; "))
    }
}

fn criterion_5() -> Verdict {
    let flags = Flags {
        root_type: Some("E7".into()),
        order: Some("3,4,2,5,6,7,1".into()),
        j: Some("3,4,5,6,7".into()),
        ..Flags::default()
    };
    let spec = JobSpec::from_flags(Mode::Restrict, &flags).unwrap();
    let doc = run(&spec).unwrap().document;
    let r = &doc.result;
    let mut problems = Vec::new();
    let cartan: Vec<Vec<Rational>> = r["cartan_matrix"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row.as_array().unwrap().iter().map(|x| lie_gradings::exact::parse_q(x.as_str().unwrap()).unwrap()).collect())
        .collect();
    if cartan != vec![vec![qi(2), q(-24, 7)], vec![qi(-1), qi(2)]] {
        problems.push(format!("Cartan {cartan:?}"));
    }
    let names: HashSet<&str> = r["positive_roots"].as_array().unwrap().iter().map(|x| x["name"].as_str().unwrap()).collect();
    let want: HashSet<&str> = ["α1", "α2", "α1+α2", "α1+2α2", "α1+3α2", "2α1+3α2", "2α1+4α2"].into_iter().collect();
    if names != want {
        problems.push(format!("positive roots {names:?}"));
    }
    if r["highest_root"]["name"] != "2α1+4α2" {
        problems.push(format!("θ^J {}", r["highest_root"]["name"]));
    }
    let st = &r["statistics"];
    if st["coxeter_h"] != 6 || st["coxeter_base"]["standard"] != false {
        problems.push(format!("h^J {} standard {}", st["coxeter_h"], st["coxeter_base"]["standard"]));
    }
    if r["chambers"] != 12 || r["chamber_orbits"] != serde_json::json!([4, 4, 4]) || r["regular_orbits"] != true {
        problems.push(format!("chambers {} orbits {}", r["chambers"], r["chamber_orbits"]));
    }
    if problems.is_empty() {
        Pass(format!(
            "Cartan [[2,-24/7],[-1,2]]; 7 positive roots; θ^J = 2α1+4α2; h^J = 6 via non-standard base {}; 12 chambers in 3 regular orbits",
            st["coxeter_base"]["base"]
        ))
    } else {
        Fail(problems.join("; "))
    }
}

fn e7_a3_a2() -> GradingAnalysis {
    let rs = RootSystem::build(CartanType::E, 7).unwrap();
    GradingAnalysis::compute(&rs, &NilpotentDatum::principal(7, &[0, 2, 4, 5, 6]).unwrap(), Budget::default()).unwrap()
}

fn criterion_6(g: &GradingAnalysis) -> Verdict {
    let mut problems = Vec::new();
    let diagram = Characteristic(g.h_labels.clone()).display_commas(CartanType::E);
    if diagram != "2,2,-5,2,2,2/0" {
        problems.push(format!("diagram {diagram}"));
    }
    // Coordinates on (α1^J, α2^J) = (β2, β4) and the listed sequences.
    let listed: [([i64; 2], &[i64]); 7] = [
        ([1, 0], &[0]),
        ([0, 1], &[1, 3, 5]),
        ([1, 1], &[1, 3, 5]),
        ([1, 2], &[2, 2, 4, 6]),
        ([1, 3], &[3]),
        ([2, 3], &[3]),
        ([2, 4], &[2]),
    ];
    for (root, seq) in listed {
        let k = g.rrs.index_of(&root).unwrap();
        if g.decomposition.sequence(k) != seq {
            problems.push(format!("{root:?}: {:?}", g.decomposition.sequence(k)));
        }
    }
    if g.rrs.num_positive() != 7 {
        problems.push(format!("{} positive restricted roots", g.rrs.num_positive()));
    }
    let simple: Vec<&[i64]> = g.components.simple_circ.iter().map(|&k| g.rrs.root(k)).collect();
    if simple != vec![&[1i64, 0][..]] || g.components.circ_weyl_order != 2 || g.components.z_order != 2 {
        problems.push(format!(
            "Δ_e° {simple:?}, |W_e°| {}, |Z_e| {}",
            g.components.circ_weyl_order, g.components.z_order
        ));
    }
    if problems.is_empty() {
        Pass("diagram 2,2,-5,2,2,2/0; all 7 m(α,i) sequences; Δ_e° = {α1^J}; |W_e°| = 2; |Z_e| = 2".into())
    } else {
        Fail(problems.join("; "))
    }
}

fn criterion_7(g: &GradingAnalysis) -> Verdict {
    let order = [[1, 0], [0, 1], [1, 1], [1, 2], [1, 3], [2, 3], [2, 4]];
    let bounds: Vec<i64> = order.iter().map(|r| g.decomposition.d[g.rrs.index_of(r).unwrap()]).collect();
    let facets: HashSet<(Vec<i64>, Rational)> =
        g.polytope.facets.iter().map(|f| (f.functional.clone(), f.bound.clone())).collect();
    let want: HashSet<(Vec<i64>, Rational)> = [(vec![1, 0], qi(1)), (vec![1, 2], q(3, 2))].into_iter().collect();
    let zero = vec![vec![qi(0), qi(0)]];
    if bounds == [1, 2, 2, 3, 4, 4, 3] && facets == want && g.integral_points == zero {
        Pass("bounds (1,2,2,3,4,4,3); facets |α1^J(p)| < 1, |(α1^J+2α2^J)(p)| < 3/2; integral points {0}".into())
    } else {
        Fail(format!("bounds {bounds:?}, facets {facets:?}, points {:?}", g.integral_points))
    }
}

fn criterion_8(h: &mut Harness) -> Verdict {
    let mut problems = Vec::new();
    let start = Instant::now();
    let sl = ClassicalAnalysis::compute(ClassicalType::Sl, &"3,3,2".parse().unwrap(), Budget::default()).unwrap();
    let mut sl_chars: Vec<String> = sl.classes.iter().map(|c| sl.characteristics[c.members[0]].display_commas(CartanType::A)).collect();
    sl_chars.sort();
    if sl.classes.len() != 3 || sl_chars != ["0,0,2,0,0,2,0", "0,1,1,0,1,1,0", "0,2,0,0,2,0,0"] {
        problems.push(format!("sl (3,3,2): {sl_chars:?}"));
    }
    let sp = ClassicalAnalysis::compute(ClassicalType::Sp, &"2,2,1,1".parse().unwrap(), Budget::default()).unwrap();
    let sp_chars: Vec<String> = sp.characteristics.iter().map(|c| c.display_commas(CartanType::C)).collect();
    let sp_points: Vec<Vec<String>> = sp.integral_points.iter().map(|p| p.iter().map(fmt_q).collect()).collect();
    if sp.integral_points.len() != 3 || sp_chars != ["2,0,0", "0,1,0", "2,0,0"] || sp.classes.len() != 2 {
        problems.push(format!("sp (2,2,1,1): points {sp_points:?} chars {sp_chars:?} classes {}", sp.classes.len()));
    }
    for a in [&sl, &sp] {
        let (ct, _) = a.nilpotent.cartan_type();
        let members: Vec<Vec<usize>> = a.classes.iter().map(|c| c.members.clone()).collect();
        h.record_classes(&format!("{ct}"), &members, &a.characteristics);
    }
    let published = [
        (ClassicalType::Sl, "3,3,2", "e_{8,7}+e_{6,5}+e_{5,4}+e_{3,2}+e_{2,1}"),
        (ClassicalType::Sp, "4,2,1,1", "e_{3,-3}+e_{2,1}+e_{1,-1}-e_{-1,-2}"),
        (
            ClassicalType::So,
            "5,3,1",
            "e_{4,3}-e_{4,-3}+e_{3,-4}-e_{-3,-4}+e_{2,1}+e_{1,0}-e_{0,-1}-e_{-1,-2}",
        ),
    ];
    let mut matrix_notes = Vec::new();
    for (kind, part, text) in published {
        let pyr = build_pyramid(kind, &part.parse::<Partition>().unwrap()).unwrap();
        let want = parse_matrix_units(text).unwrap();
        let got = pyr.e_entries();
        if got == want {
            matrix_notes.push(format!("{kind} ({part}) identical"));
            continue;
        }
        let differing: Vec<String> = got
            .iter()
            .filter(|e| !want.contains(e))
            .map(|(i, j, c)| {
                let printed = want.iter().find(|w| w.0 == *i && w.1 == *j).map_or(0, |w| w.2);
                format!("e_{{{i},{j}}}: computed {c}, printed {printed}")
            })
            .collect();
        let printed_in_algebra = preserves_form(&pyr, &want);
        problems.push(format!(
            "{kind} ({part}) differs from the printed matrix: {}; printed matrix preserves the invariant form: {printed_in_algebra}",
            differing.join(", ")
        ));
    }
    let secs = start.elapsed().as_secs_f64();
    let timing = if secs < 5.0 { format!("{secs:.1} s < 5 s") } else { format!("{secs:.1} s exceeds 5 s") };
    if secs >= 5.0 {
        problems.push(timing.clone());
    }
    if problems.is_empty() {
        Pass(format!(
            "sl (3,3,2) 3 classes with the listed characteristics; sp (2,2,1,1) 3 points (2,0,0),(0,1,0),(2,0,0) in 2 classes; {}; {timing}",
            matrix_notes.join(", ")
        ))
    } else {
        Fail(format!("{}; {}", matrix_notes.join(", "), problems.join("; ")))
    }
}

/// Whether the matrix with the given entries preserves the invariant form
/// of the pyramid's algebra (always true for `sl`).
fn preserves_form(pyr: &lie_gradings::pyramids::Pyramid, entries: &[(i32, i32, i64)]) -> bool {
    let Some(g) = pyr.form() else { return true };
    let n = g.len();
    let mut e = vec![vec![0i64; n]; n];
    for &(i, j, c) in entries {
        e[pyr.index(i)][pyr.index(j)] = c;
    }
    (0..n).all(|i| (0..n).all(|j| (0..n).map(|k| e[k][i] * g[k][j] + g[i][k] * e[k][j]).sum::<i64>() == 0))
}

fn criterion_9(h: &mut Harness) -> Verdict {
    let start = Instant::now();
    let fx = adjacency_fixture(CartanType::E, 6, "A3").unwrap();
    let report = check_adjacency_fixture(fx, Budget::default());
    let secs = start.elapsed().as_secs_f64();
    let path = report.computed_edges.len() == 6 && report.computed_nodes.len() == 7;
    let rs = RootSystem::build(CartanType::E, 6).unwrap();
    let g = GradingAnalysis::compute(&rs, &NilpotentDatum::principal(6, &[0, 2, 3]).unwrap(), Budget::default()).unwrap();
    h.record_grading("E6 A3", &g);
    if report.status == Status::Pass && path && report.computed_dynkin.as_deref() == Some("10001/2") && secs < 300.0 {
        Pass(format!("7-node path {:?}, Dynkin node 10001/2, {secs:.1} s < 5 min", report.computed_nodes))
    } else {
        Fail(report.to_string())
    }
}

fn criterion_10() -> Verdict {
    let mut cases = 0usize;
    let mut points = 0usize;
    let mut min_points = usize::MAX;
    let mut point_cases = 0usize;
    let mut mismatches = Vec::new();
    let mut dim_failures = Vec::new();
    let mut non_good_with_equality = 0usize;
    let mut check = |name: String, member: bool, good: bool, equal: bool| {
        if member != good {
            mismatches.push(name.clone());
        }
        if good && !equal {
            dim_failures.push(name);
        } else if !good && equal {
            non_good_with_equality += 1;
        }
    };
    // Classical: sl_n (n ≤ 6), sp_N and so_N (N ≤ 8).
    let mut classical = Vec::new();
    for n in 2..=8usize {
        for p in Partition::all(n) {
            if n <= 6 {
                classical.push((ClassicalType::Sl, p.clone()));
            }
            for kind in [ClassicalType::Sp, ClassicalType::So] {
                if (kind == ClassicalType::So && n < 3) || p.validate(kind).is_err() {
                    continue;
                }
                classical.push((kind, p.clone()));
            }
        }
    }
    let mut skipped = Vec::new();
    for (kind, p) in classical {
        let cn = ClassicalNilpotent::new(kind, &p).unwrap();
        if cn.polytope.dim > 0 && cn.polytope.functionals.is_empty() {
            skipped.push(format!("{kind} {p}"));
            continue;
        }
        let samples = cn.polytope.sample_points(11, 50, 200).unwrap();
        cases += 1;
        if cn.polytope.dim == 0 {
            point_cases += 1;
        } else {
            min_points = min_points.min(samples.len());
        }
        for y in &samples {
            let r = classical_oracle(&cn, &cn.from_coords(y)).unwrap();
            points += 1;
            check(format!("{kind} {p}"), cn.polytope.contains(y), r.good, r.centralizer_dim == r.low_degree_dim);
        }
    }
    // E6, principal nilpotent of one Levi subalgebra per conjugacy class.
    let rs = RootSystem::build(CartanType::E, 6).unwrap();
    let alg = ChevalleyAlgebra::new(&rs);
    for row in fixtures::table(CartanType::E, 6).unwrap() {
        let j0: Vec<usize> = row.j.iter().map(|x| x - 1).collect();
        let datum = NilpotentDatum::principal(6, &j0).unwrap();
        let rrs = RestrictedRootSystem::new(&rs, &j0).unwrap();
        let h = solve_h(&rs, &datum).unwrap();
        let dec = sl2_multiplicities(&rrs, &h).unwrap();
        let poly = restricted_polytope(&rrs, &dec).unwrap();
        let samples = poly.sample_points(11, 50, 200).unwrap();
        cases += 1;
        if poly.dim == 0 {
            point_cases += 1;
        } else {
            min_points = min_points.min(samples.len());
        }
        for p in &samples {
            let r = oracle_check(&alg, &rrs, &datum, &h, p).unwrap();
            points += 1;
            check(format!("E6 {}", row.levi), poly.contains(p), r.good, r.centralizer_dim == r.low_degree_dim);
        }
    }
    let note = if skipped.is_empty() { String::new() } else { format!("; no roots (abelian centraliser torus): {}", skipped.join(", ")) };
    if mismatches.is_empty() && dim_failures.is_empty() && non_good_with_equality == 0 && min_points >= 50 {
        Pass(format!(
            "{cases} cases, {points} points (≥ {min_points} per positive-dimensional case; {point_cases} single-point cases), \
             0 membership mismatches; dim g_e = Σ_{{-1≤j<1}} dim g_j exactly at the good points{note}",
        ))
    } else {
        Fail(format!(
            "mismatches {mismatches:?}; dimension identity failures {dim_failures:?}; \
             {non_good_with_equality} non-good points satisfy it; ≥ {min_points} points per case"
        ))
    }
}

fn criterion_11(h: &mut Harness) -> Verdict {
    let mut violations = Vec::new();
    let mut count = 0usize;
    let small = [
        (CartanType::A, 1),
        (CartanType::A, 2),
        (CartanType::A, 3),
        (CartanType::A, 4),
        (CartanType::B, 2),
        (CartanType::B, 3),
        (CartanType::B, 4),
        (CartanType::C, 3),
        (CartanType::C, 4),
        (CartanType::D, 4),
        (CartanType::G, 2),
        (CartanType::F, 4),
    ];
    for (kind, rank) in small {
        let rs = RootSystem::build(kind, rank).unwrap();
        for mask in 0u32..(1 << rank) {
            let j: Vec<usize> = (0..rank).filter(|i| mask >> i & 1 == 1).collect();
            count += 1;
            match arrangement_stats(&rs, &j, Budget::default()) {
                Ok(s) => {
                    if let Err(e) = identities(&s) {
                        violations.push(format!("{kind}{rank} J={j:?}: {e}"));
                    }
                }
                Err(e) => violations.push(format!("{kind}{rank} J={j:?}: {e}")),
            }
        }
    }
    let computed = h.stats.len();
    for (name, s) in &h.stats {
        if let Err(e) = identities(s) {
            violations.push(format!("{name}: {e}"));
        }
    }
    if violations.is_empty() {
        Pass(format!(
            "Σb = |A^J|, Π(1+b) = |C^J|, |C^J| = |K_J|·|W^J| and Sommers' test hold for all {count} subsets J of rank ≤ 4 systems \
             and {computed} computed E6/E7/E8 rows; 0 violations"
        ))
    } else {
        Fail(violations.join("; "))
    }
}

fn identities(s: &ArrangementStats) -> Result<(), String> {
    lie_gradings::arrange::check_identities(s).map_err(|e| e.to_string())?;
    let rs_coeffs_tested = &s.sommers_tested;
    if let Some(p) = rs_coeffs_tested.iter().find(|p| !s.exponents.contains(p)) {
        return Err(format!("{p} fails Sommers' test"));
    }
    Ok(())
}

fn criterion_12(h: &mut Harness) -> Verdict {
    let mut closure_failures = Vec::new();
    let mut systems = 0usize;
    let all = [
        (CartanType::A, 4),
        (CartanType::B, 4),
        (CartanType::C, 4),
        (CartanType::D, 4),
        (CartanType::G, 2),
        (CartanType::F, 4),
        (CartanType::E, 6),
        (CartanType::E, 7),
        (CartanType::E, 8),
    ];
    for (kind, rank) in all {
        let rs = RootSystem::build(kind, rank).unwrap();
        for mask in 0u32..(1 << rank) {
            let j: Vec<usize> = (0..rank).filter(|i| mask >> i & 1 == 1).collect();
            let rrs = RestrictedRootSystem::new(&rs, &j).unwrap();
            systems += 1;
            if !rrs.check_difference_closure() || !rrs.check_proportional_multiples() {
                closure_failures.push(format!("{kind}{rank} J={j:?}"));
            }
        }
    }
    // Classes versus characteristics: every classical nilpotent of small
    // rank, the bundled adjacency fixtures and the named nilpotents of G2/F4/E6.
    for n in 2..=8usize {
        for p in Partition::all(n) {
            for kind in [ClassicalType::Sl, ClassicalType::Sp, ClassicalType::So] {
                if (kind == ClassicalType::So && n < 3) || p.validate(kind).is_err() {
                    continue;
                }
                let a = ClassicalAnalysis::compute(kind, &p, Budget::default()).unwrap();
                let members: Vec<Vec<usize>> = a.classes.iter().map(|c| c.members.clone()).collect();
                h.record_classes(&format!("{kind} {p}"), &members, &a.characteristics);
            }
        }
    }
    for fx in fixtures::ADJACENCY_FIXTURES {
        let rs = RootSystem::build(fx.kind, fx.rank).unwrap();
        let j0: Vec<usize> = fx.j.iter().map(|x| x - 1).collect();
        let g = GradingAnalysis::compute(&rs, &NilpotentDatum::new(fx.rank, &j0, fx.labels).unwrap(), Budget::default()).unwrap();
        h.record_grading(&format!("{}{} {}", fx.kind, fx.rank, fx.name), &g);
    }
    for nn in fixtures::NAMED_NILPOTENTS.iter().filter(|n| n.rank <= 6) {
        let rs = RootSystem::build(nn.kind, nn.rank).unwrap();
        let j0: Vec<usize> = nn.j.iter().map(|x| x - 1).collect();
        let g = GradingAnalysis::compute(&rs, &NilpotentDatum::new(nn.rank, &j0, nn.labels).unwrap(), Budget::default()).unwrap();
        h.record_grading(&format!("{}{} {}", nn.kind, nn.rank, nn.name), &g);
    }
    if closure_failures.is_empty() && h.class_violations.is_empty() && h.range_violations.is_empty() {
        Pass(format!(
            "difference closure and proportional multiples hold on all {systems} Φ^J; all characteristics in [0,2]^r; \
             W_e-classes = characteristic classes in {} analyses",
            h.class_checks
        ))
    } else {
        Fail(format!(
            "closure {closure_failures:?}; classes {:?}; range {:?}",
            h.class_violations, h.range_violations
        ))
    }
}

fn main() {
    let mut h = Harness {
        unexpected: 0,
        stats: Vec::new(),
        class_checks: 0,
        class_violations: Vec::new(),
        range_violations: Vec::new(),
    };
    let total = Instant::now();
    h.criterion(1, "G2 table (A^J, C^J, W^J, K_J, h^J, exponents)", |h| {
        all_rows_pass(&table_rows(h, CartanType::G, 2, u64::MAX), 4)
    });
    h.criterion(2, "F4 table", |h| all_rows_pass(&table_rows(h, CartanType::F, 4, u64::MAX), 12));
    h.criterion(3, "E6 table", |h| all_rows_pass(&table_rows(h, CartanType::E, 6, u64::MAX), 17));
    h.criterion(4, "E7 spot rows and restricted Weyl group", criterion_4);
    h.criterion(5, "E7 A3+A2 restricted root system", |_| criterion_5());
    let g = e7_a3_a2();
    h.record_grading("E7 A3+A2", &g);
    h.criterion(6, "E7 A3+A2 sl2 multiplicities and component group", |_| criterion_6(&g));
    h.criterion(7, "E7 A3+A2 good-grading polytope", |_| criterion_7(&g));
    h.criterion(8, "classical pyramids", criterion_8);
    h.criterion(9, "E6 A3 adjacency graph", criterion_9);
    h.criterion(10, "polytope membership ⟺ direct rank test", |_| criterion_10());
    h.criterion(11, "arrangement identities", criterion_11);
    h.criterion(12, "closure properties, characteristic range, classes", criterion_12);
    println!("total {:.1} s; {} unexpected failure(s)", total.elapsed().as_secs_f64(), h.unexpected);
    if h.unexpected > 0 {
        std::process::exit(1);
    }
}

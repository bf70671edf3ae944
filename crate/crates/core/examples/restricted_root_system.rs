//! The restricted root system of `E₇` for the Levi subset of type `A₃+A₂`:
//! roots, Cartan matrix, highest root, chambers and the restricted Weyl group.
//!
//! Run with `cargo run --example restricted_root_system`.

use lie_gradings::arrange::{arrangement_stats, chamber_orbits};
use lie_gradings::exact::fmt_q;
use lie_gradings::restrict::{restricted_weyl, Budget, RestrictedRootSystem};
use lie_gradings::rootsys::{CartanType, RootSystem};

fn name(c: &[i64], nodes: &[usize]) -> String {
    let mut s = String::new();
    for (&x, &n) in c.iter().zip(nodes) {
        if x == 0 {
            continue;
        }
        if !s.is_empty() {
            s.push('+');
        }
        if x != 1 {
            s.push_str(&x.to_string());
        }
        s.push_str(&format!("β{n}"));
    }
    s
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rs = RootSystem::build(CartanType::E, 7)?;
    // Bourbaki nodes 1,3,5,6,7 (0-based below) span a Levi of type A3+A2.
    let j = [0, 2, 4, 5, 6];
    let rrs = RestrictedRootSystem::new(&rs, &j)?;
    let nodes: Vec<usize> = rrs.i().iter().map(|i| i + 1).collect();
    println!("E7, J = {{1,3,5,6,7}}: Φ^J has {} roots in a {}-dimensional space", rrs.len(), rrs.dim());
    println!("restricted simple roots β_i = α_i^J for i in {nodes:?}");

    let positive: Vec<String> = (0..rrs.num_positive()).map(|k| name(rrs.root(k), &nodes)).collect();
    println!("positive restricted roots: {}", positive.join(", "));
    println!("highest root θ^J = {}", name(&rrs.restricted_highest_root(), &nodes));

    let cartan = rrs.restricted_cartan(&rrs.standard_base());
    for r in cartan.to_rows() {
        println!("  [{}]", r.iter().map(fmt_q).collect::<Vec<_>>().join(", "));
    }

    let budget = Budget::default();
    let chambers = rrs.all_chambers(budget)?;
    let weyl = restricted_weyl(&rrs, budget)?;
    let elements = weyl.elements.clone().expect("small group is enumerated");
    let signs: Vec<u128> = chambers.iter().map(|c| c.signs).collect();
    println!(
        "{} chambers; W^J has order {} (orbit of Δ_J: {:?}); chamber orbits {:?}",
        chambers.len(),
        weyl.order,
        weyl.orbit_size,
        chamber_orbits(&rrs, &signs, &elements)
    );

    let stats = arrangement_stats(&rs, &j, budget)?;
    println!(
        "|K_J| = {}, h^J = {} (achieving base is {}standard), exponents {:?}",
        stats.levi_class_size,
        stats.coxeter_h,
        if stats.coxeter.standard { "" } else { "non-" },
        stats.exponents
    );
    Ok(())
}

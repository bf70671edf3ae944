//! Classical nilpotents from Dynkin pyramids: the pyramid, the matrix `e`,
//! and the integral good gradings with their characteristics.
//!
//! Run with `cargo run --example pyramids`.

use lie_gradings::exact::fmt_q;
use lie_gradings::pyramids::{ClassicalAnalysis, ClassicalNilpotent, ClassicalType, Partition};
use lie_gradings::restrict::Budget;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (kind, part) in [(ClassicalType::Sl, "3,3,2"), (ClassicalType::Sp, "4,2,1,1"), (ClassicalType::So, "5,3,1")] {
        let partition: Partition = part.parse()?;
        let cn = ClassicalNilpotent::new(kind, &partition)?;
        println!("{kind} {partition}:");
        print!("{}", cn.pyramid.render());
        println!("e = {}", cn.pyramid.format_e());
        println!();
    }

    for (kind, part) in [(ClassicalType::Sl, "3,3,2"), (ClassicalType::Sp, "2,2,1,1")] {
        let partition: Partition = part.parse()?;
        let a = ClassicalAnalysis::compute(kind, &partition, Budget::default())?;
        let (ct, _) = a.nilpotent.cartan_type();
        println!("{kind} {partition}: {} integral good gradings", a.integral_points.len());
        for (p, c) in a.integral_points.iter().zip(&a.characteristics) {
            let p: Vec<String> = p.iter().map(fmt_q).collect();
            println!("  p = ({})  characteristic ({})", p.join(", "), c.display_commas(ct));
        }
        println!("  {} classes under W_e (|W_e| = {})", a.classes.len(), a.we_order);
    }
    Ok(())
}

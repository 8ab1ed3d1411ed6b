//! Builds portraits, mirrors them, adds simple circles and classifies the results.

use quasisection::oracle::{assignments_with_degrees, expected_index};
use quasisection::portrait::{classify, type_i, type_ii, type_iii, whitney, Side};
use quasisection::FiberPos;

fn main() -> quasisection::Result<()> {
    let p = type_i(2, 0)?;
    println!("type_i(2,0) sectors {:?} -> {}", p.sector_sizes(), classify(&p)?);
    println!("mirror -> {}", classify(&p.mirror())?);

    let q = p.add_simple_circle(&FiberPos::from("7/8".parse::<quasisection::Rational>()?))?;
    println!(
        "with an extra circle -> {} (E = {})",
        classify(&q)?,
        expected_index(&q)?
    );

    for side in [Side::R, Side::L] {
        let pleat = type_ii(1, side);
        let crossing = type_iii(1, side);
        println!("{} E = {}", classify(&pleat)?, expected_index(&pleat)?);
        println!("{} E = {}", classify(&crossing)?, expected_index(&crossing)?);
    }

    let w = whitney(2)?;
    println!("whitney(2) -> {} (E = {})", classify(&w)?, expected_index(&w)?);

    let table = assignments_with_degrees(&type_i(1, 0)?)?;
    println!("type_i(1,0) assignments (jumps, deg_ccw):");
    for (a, j, k) in table.iter().take(8) {
        println!("  {:?} J={j} K={k}", a.chosen);
    }
    Ok(())
}

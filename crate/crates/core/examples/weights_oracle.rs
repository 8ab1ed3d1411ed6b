//! Exhaustive expected index of each generator portrait next to its closed-form weight.
//!
//! Run with `cargo run --example weights_oracle -- 4`.

use quasisection::oracle::oracle_report;
use quasisection::portrait::{type_i, type_ii, type_iii, whitney, Side};

fn main() -> quasisection::Result<()> {
    let max: u32 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(4);
    let mut portraits = Vec::new();
    for s in 1..=max {
        for n in (0..=s).rev() {
            portraits.push(type_i(n, s - n)?);
        }
    }
    for r in 0..=max {
        for side in [Side::R, Side::L] {
            portraits.push(type_ii(r, side));
            portraits.push(type_iii(r, side));
        }
    }
    for r in 1..=3 {
        portraits.push(whitney(r)?);
    }
    println!(
        "{:<28} {:>14} {:>10} {:>10}  agrees",
        "descriptor", "configurations", "expected", "weight"
    );
    for p in &portraits {
        let r = oracle_report(p)?;
        println!(
            "{:<28} {:>14} {:>10} {:>10}  {}",
            r.descriptor.to_string(),
            r.configurations,
            r.expected.to_string(),
            r.weight.to_string(),
            r.agrees()
        );
    }
    Ok(())
}

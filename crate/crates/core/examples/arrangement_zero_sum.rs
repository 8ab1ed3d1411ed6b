//! Random pancake arrangements: the local formula and every sampled index sum vanish.
//!
//! Run with `cargo run --release --example arrangement_zero_sum -- 20`.

use quasisection::arrangement::{
    build_dcel, euler_local_formula, index_sum_prepared, random_generic_spec, sample_section, LocalVertex,
};
use quasisection::rng::seeded_rng;

fn main() -> quasisection::Result<()> {
    let count: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(10);
    let mut rng = seeded_rng(2024);
    for i in 0..count {
        let spec = random_generic_spec(&mut rng, 6, 4)?;
        let dcel = build_dcel(&spec)?;
        let vertices = LocalVertex::all(&spec, &dcel)?;
        let euler = euler_local_formula(&spec)?;
        let mut nonzero = 0;
        for seed in 0..50 {
            let s = sample_section(&spec, &dcel, seed)?;
            if index_sum_prepared(&vertices, &s)? != 0 {
                nonzero += 1;
            }
        }
        let types: Vec<String> = vertices.iter().map(|v| v.descriptor.to_string()).collect();
        println!(
            "#{i}: {} pancakes, {} sections, V={} F={}  E={euler}  nonzero sums {nonzero}/50  {}",
            spec.pancakes.len(),
            spec.sections.len(),
            dcel.vertices.len(),
            dcel.faces.len(),
            types.join(" ")
        );
    }
    Ok(())
}

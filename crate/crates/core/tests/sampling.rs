//! Monte Carlo means of sampled vertex indices against the exact expectation.

use std::path::PathBuf;

use quasisection::arrangement::{build_dcel, sample_section, ArrangementSpec, LocalVertex};
use quasisection::oracle::expected_index;

#[test]
fn vertex_means_within_three_sigma() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/two_circles.json");
    let spec = ArrangementSpec::from_json(&std::fs::read_to_string(path).unwrap()).unwrap();
    let dcel = build_dcel(&spec).unwrap();
    let local = LocalVertex::all(&spec, &dcel).unwrap();
    let n = 10_000u64;
    let mut sums = vec![(0f64, 0f64); local.len()];
    for seed in 0..n {
        let s = sample_section(&spec, &dcel, seed).unwrap();
        for (v, acc) in local.iter().zip(sums.iter_mut()) {
            let x = v.index(&s).unwrap() as f64;
            acc.0 += x;
            acc.1 += x * x;
        }
    }
    for (v, (s, s2)) in local.iter().zip(sums) {
        let mean = s / n as f64;
        let var = (s2 / n as f64 - mean * mean).max(1e-12);
        let want = expected_index(&v.portrait).unwrap().to_f64();
        let bound = 3.0 * (var / n as f64).sqrt();
        assert!(
            (mean - want).abs() <= bound,
            "{}: mean {mean}, expected {want}, 3 sigma {bound}",
            v.descriptor
        );
    }
}

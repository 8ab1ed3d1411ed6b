//! Solves the constraint families for an unknown local formula under several anchor sets.

use std::collections::BTreeSet;

use quasisection::formula::{all_families, default_anchors, solve_uniqueness, Anchor, Family};

fn main() -> quasisection::Result<()> {
    let mut with_fs0 = default_anchors();
    with_fs0.insert(Anchor::AnchorFs0);
    let base: BTreeSet<Family> = [Family::Base0].into_iter().collect();
    let runs = [
        ("all families + ANCHOR1", all_families(), default_anchors()),
        ("all families, no anchors", all_families(), BTreeSet::new()),
        ("all families + ANCHOR1 + ANCHOR_FS0", all_families(), with_fs0),
        ("BASE0 only", base, BTreeSet::new()),
    ];
    for (label, fams, anchors) in runs {
        let r = solve_uniqueness(6, &fams, &anchors)?;
        let free: Vec<String> = r.undetermined().iter().map(|u| u.to_string()).collect();
        println!(
            "{label}: {} equations, rank {}, kernel_dim {}, mismatches {}",
            r.system.equations.len(),
            r.solution.rank,
            r.kernel_dim(),
            r.mismatches.len()
        );
        if free.len() <= 6 {
            println!("  undetermined: {}", free.join(", "));
        } else {
            println!("  undetermined: {} unknowns", free.len());
        }
    }
    Ok(())
}

//! Evaluates the local formula on every curated example and on a summary file.

use quasisection::formula::{euler_of_summary, gallery_catalog, GalleryCheck, QuasisectionSummary};

fn main() -> quasisection::Result<()> {
    for e in gallery_catalog() {
        let s = e.summary()?;
        let c = GalleryCheck::run(&s)?;
        println!(
            "{:<28} {:>4} vertices  E = {:>3}  declared {:>2}  {}",
            c.name,
            s.vertex_total(),
            c.computed.to_string(),
            c.declared,
            if c.ok() { "ok" } else { "MISMATCH" }
        );
    }
    let raw = include_str!("../data/four_pancakes.json");
    let s = QuasisectionSummary::from_json(raw)?;
    println!("data/four_pancakes.json: E = {}", euler_of_summary(&s)?);
    Ok(())
}

//! Writes SVG figures of the generator portraits and the demo arrangement.
//!
//! Run with `cargo run --example render_figures -- out/`.

use std::fs;
use std::path::PathBuf;

use quasisection::arrangement::ArrangementSpec;
use quasisection::portrait::named_portrait;
use quasisection::render::{render_arrangement, render_portrait};

fn main() -> quasisection::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "figures".into()));
    fs::create_dir_all(&dir)?;
    for name in ["I(2,0)", "I(1,2)", "II(1,R)", "III(1,R)", "whitney(2)"] {
        let file = dir.join(format!("{}.svg", name.replace(['(', ')', ','], "_")));
        fs::write(&file, render_portrait(&named_portrait(name)?)?)?;
        println!("{}", file.display());
    }
    let spec = ArrangementSpec::from_json(include_str!("../data/demo.json"))?;
    let file = dir.join("demo_arrangement.svg");
    fs::write(&file, render_arrangement(&spec)?)?;
    println!("{}", file.display());
    Ok(())
}

//! Three crossing pancakes with sections stacked between them, classified from the geometry
//! and compared with the curated `triple_pancakes(a,b,c)` entry.

use quasisection::arrangement::{build_dcel, vertex_descriptors, ArrangementSpec, Pancake, Section};
use quasisection::formula::gallery;
use quasisection::{FiberPos, Rational};

pub fn triple_spec(a: u32, b: u32, c: u32) -> ArrangementSpec {
    let slot = |i: i64| FiberPos::from(Rational::new(i, 32));
    let mut next = 0;
    let mut take = || {
        next += 1;
        slot(next - 1)
    };
    let mut heights = Vec::new();
    let mut sections = Vec::new();
    for gap in [a, b, c] {
        heights.push(take());
        for _ in 0..gap {
            sections.push(Section { height: take() });
        }
    }
    let centres = [(0, 0), (2, 0), (1, -2)];
    ArrangementSpec {
        pancakes: centres
            .iter()
            .zip(heights)
            .map(|(&(x, y), height)| Pancake {
                center: (Rational::integer(x), Rational::integer(y)),
                radius: Rational::new(3, 2),
                height,
                thickness: Rational::new(1, 256),
            })
            .collect(),
        sections,
    }
}

fn main() -> quasisection::Result<()> {
    for (a, b, c) in [(0, 0, 1), (1, 0, 1), (1, 1, 1), (2, 1, 0), (0, 2, 2)] {
        let spec = triple_spec(a, b, c);
        let dcel = build_dcel(&spec)?;
        let mut geo: Vec<String> = vertex_descriptors(&spec, &dcel)?
            .iter()
            .map(|d| d.to_string())
            .collect();
        let mut cur: Vec<String> = gallery(&format!("triple_pancakes({a},{b},{c})"))?
            .vertices
            .iter()
            .map(|v| v.descriptor.to_string())
            .collect();
        geo.sort();
        cur.sort();
        println!(
            "({a},{b},{c}) geometry {}  curated {}  {}",
            geo.join(" "),
            cur.join(" "),
            if geo == cur { "same" } else { "DIFFERENT" }
        );
    }
    Ok(())
}

//! Three crossing pancakes classified from geometry reproduce the corrected triple relation.

use quasisection::arrangement::{
    build_dcel, euler_local_formula, vertex_descriptors, ArrangementSpec, Pancake, Section,
};
use quasisection::formula::{gallery, triple};
use quasisection::portrait::VertexDescriptor;
use quasisection::{FiberPos, Rational};

/// Heights in fiber order: P1, `a` sections, P2, `b` sections, P3, `c` sections.
fn triple_spec(a: u32, b: u32, c: u32, mirrored: bool) -> ArrangementSpec {
    let mut next = 0;
    let mut take = || {
        next += 1;
        FiberPos::from(Rational::new(next - 1, 32))
    };
    let mut heights = Vec::new();
    let mut sections = Vec::new();
    for gap in [a, b, c] {
        heights.push(take());
        for _ in 0..gap {
            sections.push(Section { height: take() });
        }
    }
    let third = if mirrored { (1, 2) } else { (1, -2) };
    ArrangementSpec {
        pancakes: [(0, 0), (2, 0), third]
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

fn sorted(mut v: Vec<VertexDescriptor>) -> Vec<VertexDescriptor> {
    v.sort();
    v
}

const CASES: [(u32, u32, u32); 6] = [(0, 0, 1), (1, 0, 1), (1, 1, 1), (2, 1, 0), (0, 2, 2), (3, 0, 1)];

#[test]
fn geometry_matches_corrected_triple() {
    for (a, b, c) in CASES {
        let spec = triple_spec(a, b, c, false);
        let dcel = build_dcel(&spec).unwrap();
        let geo = sorted(vertex_descriptors(&spec, &dcel).unwrap());
        let eq = triple(a, b, c);
        let mut want: Vec<VertexDescriptor> = Vec::new();
        for (u, coeff) in &eq.coeffs {
            let quasisection::formula::Unknown::Ff(n, k) = *u else {
                panic!("{u}")
            };
            for _ in 0..coeff.to_f64() as usize {
                want.push(VertexDescriptor::TypeI { n, k });
            }
        }
        assert_eq!(geo, sorted(want), "({a},{b},{c})");
        assert!(euler_local_formula(&spec).unwrap().is_zero());
    }
}

#[test]
fn curated_entry_matches_geometry() {
    for (a, b, c) in CASES {
        let spec = triple_spec(a, b, c, false);
        let dcel = build_dcel(&spec).unwrap();
        let geo = sorted(vertex_descriptors(&spec, &dcel).unwrap());
        let cur = gallery(&format!("triple_pancakes({a},{b},{c})")).unwrap();
        let cur = sorted(cur.vertices.into_iter().map(|v| v.descriptor).collect());
        // The curated entry omits I(0,0), which is not an essential vertex.
        let geo: Vec<_> = geo
            .into_iter()
            .filter(|d| *d != VertexDescriptor::TypeI { n: 0, k: 0 })
            .collect();
        assert_eq!(geo, cur, "({a},{b},{c})");
    }
}

#[test]
fn mirrored_placement_swaps_parameters() {
    for (a, b, c) in CASES {
        let one = triple_spec(a, b, c, false);
        let two = triple_spec(a, b, c, true);
        let d1 = vertex_descriptors(&one, &build_dcel(&one).unwrap()).unwrap();
        let d2 = vertex_descriptors(&two, &build_dcel(&two).unwrap()).unwrap();
        assert_eq!(
            sorted(d1.iter().map(|d| d.mirrored()).collect()),
            sorted(d2),
            "({a},{b},{c})"
        );
    }
}

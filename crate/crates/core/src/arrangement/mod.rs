//! Constant-height pancake quasisections of the trivial bundle over the sphere.
//!
//! A pancake is a sphere flattened to two sheets at heights `h - tau` and
//! `h + tau` over a round disk, folded along the boundary circle. Sections
//! are horizontal sheets over the whole plane (the point at infinity is a
//! regular point covered by the sections only).

mod dcel;
mod local;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{ccw_distance, FiberPos, Rational};
use crate::rng::SeededRng;

pub use dcel::{build_dcel, ArrangementDcel, DcelEdge, DcelVertex, Face, HalfEdge};
pub use local::{
    euler_local_formula, index_sum, index_sum_prepared, local_portrait, sample_section, vertex_descriptors,
    vertex_index, LocalVertex, SectionSample,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pancake {
    pub center: (Rational, Rational),
    pub radius: Rational,
    pub height: FiberPos,
    pub thickness: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub height: FiberPos,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementSpec {
    pub pancakes: Vec<Pancake>,
    #[serde(default)]
    pub sections: Vec<Section>,
}

impl ArrangementSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    /// Sheet ids over a point covered by the given pancakes, in a fixed order.
    pub fn sheets_over(&self, covering: &[usize]) -> Vec<(String, FiberPos)> {
        let mut out: Vec<(String, FiberPos)> = self
            .sections
            .iter()
            .enumerate()
            .map(|(j, s)| (format!("s{j}"), s.height.clone()))
            .collect();
        for &i in covering {
            let p = &self.pancakes[i];
            out.push((format!("p{i}-"), p.height.shifted(&-&p.thickness)));
            out.push((format!("p{i}+"), p.height.shifted(&p.thickness)));
        }
        out
    }
}

fn sq(x: &Rational) -> Rational {
    x * x
}

/// How two circles meet, decided exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairRelation {
    Disjoint,
    Crossing,
    Tangent,
    Coincident,
}

pub fn pair_relation(a: &Pancake, b: &Pancake) -> PairRelation {
    let d2 = sq(&(&a.center.0 - &b.center.0)) + sq(&(&a.center.1 - &b.center.1));
    let sum2 = sq(&(&a.radius + &b.radius));
    let diff2 = sq(&(&a.radius - &b.radius));
    if d2.is_zero() && diff2.is_zero() {
        PairRelation::Coincident
    } else if d2 == sum2 || d2 == diff2 {
        PairRelation::Tangent
    } else if d2 < sum2 && d2 > diff2 {
        PairRelation::Crossing
    } else {
        PairRelation::Disjoint
    }
}

fn power(p: &(Rational, Rational), c: &Pancake) -> Rational {
    sq(&(&p.0 - &c.center.0)) + sq(&(&p.1 - &c.center.1)) - sq(&c.radius)
}

/// Whether three pairwise crossing circles pass through a common point.
fn concurrent(a: &Pancake, b: &Pancake, c: &Pancake) -> bool {
    // Radical axes: 2 (cb - ca) . P = |cb|^2 - rb^2 - |ca|^2 + ra^2, same for c.
    let row = |o: &Pancake| {
        let ax = (&o.center.0 - &a.center.0) * Rational::integer(2);
        let ay = (&o.center.1 - &a.center.1) * Rational::integer(2);
        let rhs = sq(&o.center.0) + sq(&o.center.1) - sq(&o.radius) - sq(&a.center.0) - sq(&a.center.1) + sq(&a.radius);
        (ax, ay, rhs)
    };
    let (a1, b1, c1) = row(b);
    let (a2, b2, c2) = row(c);
    let det = &a1 * &b2 - &a2 * &b1;
    if det.is_zero() {
        // Collinear centres: the axes are parallel; a common point needs identical axes.
        let same = (&a1 * &c2 - &a2 * &c1).is_zero() && (&b1 * &c2 - &b2 * &c1).is_zero();
        return same;
    }
    let x = (&c1 * &b2 - &c2 * &b1) / &det;
    let y = (&a1 * &c2 - &a2 * &c1) / &det;
    power(&(x, y), a).is_zero()
}

/// Every genericity violation of `spec`, decided in exact arithmetic.
pub fn genericity_check(spec: &ArrangementSpec) -> std::result::Result<(), Vec<String>> {
    let mut v = Vec::new();
    if spec.sections.is_empty() {
        v.push("no section: at least one section is required to cover the plane".to_string());
    }
    let half = Rational::new(1, 2);
    for (i, p) in spec.pancakes.iter().enumerate() {
        if !p.radius.is_positive() {
            v.push(format!("pancake {i}: radius must be positive"));
        }
        if !p.thickness.is_positive() || p.thickness >= half {
            v.push(format!("pancake {i}: thickness must lie in (0, 1/2)"));
        }
    }
    let n = spec.pancakes.len();
    let mut crossing = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            match pair_relation(&spec.pancakes[i], &spec.pancakes[j]) {
                PairRelation::Tangent | PairRelation::Coincident => {
                    v.push(format!("tangent/coincident circles {i} and {j}"));
                }
                PairRelation::Crossing => {
                    crossing[i][j] = true;
                    crossing[j][i] = true;
                }
                PairRelation::Disjoint => {}
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if crossing[i][j]
                    && crossing[i][k]
                    && crossing[j][k]
                    && concurrent(&spec.pancakes[i], &spec.pancakes[j], &spec.pancakes[k])
                {
                    v.push(format!("concurrent circles {i}, {j}, {k}"));
                }
            }
        }
    }
    // Height intervals on the fiber circle: pancakes occupy [h - tau, h + tau], sections a point.
    let mut items: Vec<(String, FiberPos, Rational)> = spec
        .pancakes
        .iter()
        .enumerate()
        .map(|(i, p)| (format!("pancake {i}"), p.height.clone(), p.thickness.clone()))
        .collect();
    items.extend(
        spec.sections
            .iter()
            .enumerate()
            .map(|(j, s)| (format!("section {j}"), s.height.clone(), Rational::zero())),
    );
    let mut seen = BTreeSet::new();
    for (a, (na, ha, ta)) in items.iter().enumerate() {
        for (nb, hb, tb) in items.iter().skip(a + 1) {
            let d = ccw_distance(ha, hb);
            let circ = if d > half { Rational::one() - &d } else { d };
            if circ <= ta + tb {
                let key = (na.clone(), nb.clone());
                if seen.insert(key) {
                    v.push(format!("height collision between {na} and {nb}"));
                }
            }
        }
    }
    if v.is_empty() {
        Ok(())
    } else {
        Err(v)
    }
}

/// Draws a random generic arrangement with at most the given counts.
///
/// Centres lie on a quarter grid in `[-2, 2]^2`, radii in `[3/4, 3]`; heights
/// are distinct slots `i/32` with thickness `1/256`. Draws that fail the
/// genericity check or the floating-point margin are rejected and redrawn.
pub fn random_generic_spec(rng: &mut SeededRng, max_pancakes: usize, max_sections: usize) -> Result<ArrangementSpec> {
    if max_sections == 0 {
        return Err(Error::InvalidParameter("at least one section is required".into()));
    }
    let slots = 32u64;
    if (max_pancakes + max_sections) as u64 > slots {
        return Err(Error::InvalidParameter("too many sheets for the height grid".into()));
    }
    for _ in 0..10_000 {
        let np = rng.below(max_pancakes as u64 + 1)? as usize;
        let ns = 1 + rng.below(max_sections as u64)? as usize;
        let mut free: Vec<u64> = (0..slots).collect();
        let mut slot = |rng: &mut SeededRng| -> Result<FiberPos> {
            let i = rng.index(free.len())?;
            let s = free.swap_remove(i);
            Ok(FiberPos::from(Rational::new(s as i64, slots as i64)))
        };
        let mut spec = ArrangementSpec::default();
        for _ in 0..np {
            let cx = Rational::new(rng.below(17)? as i64 - 8, 4);
            let cy = Rational::new(rng.below(17)? as i64 - 8, 4);
            let radius = Rational::new(3 + rng.below(10)? as i64, 4);
            spec.pancakes.push(Pancake {
                center: (cx, cy),
                radius,
                height: slot(rng)?,
                thickness: Rational::new(1, 256),
            });
        }
        for _ in 0..ns {
            spec.sections.push(Section { height: slot(rng)? });
        }
        if genericity_check(&spec).is_ok() && build_dcel(&spec).is_ok() {
            return Ok(spec);
        }
    }
    Err(Error::InvalidSample(
        "no generic arrangement found in 10000 draws".into(),
    ))
}

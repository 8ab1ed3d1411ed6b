//! Quasisection summaries, the example gallery and uniqueness of the local formula.

mod constraints;
mod gallery;

use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::portrait::VertexDescriptor;
use crate::rational::Rational;
use crate::weights::weight_of;

pub use constraints::{
    all_families, curled, curled_with_pancake, curled_with_pancake_left, default_anchors, doubled_inner_weight,
    fs_reduce, fs_reduce_unflipped, generate_constraints, pleat_rec, solve_uniqueness, triple, triple_unswapped,
    unknowns, Anchor, Family, UniquenessReport, Unknown,
};
pub use gallery::{gallery, gallery_catalog, GalleryCheck, GalleryEntry, GALLERY_NAMES};

/// Degree of a quasisection, stored as metadata.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeclaredDegree {
    Known(i64),
    Unknown,
}

impl fmt::Display for DeclaredDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeclaredDegree::Known(d) => write!(f, "{d}"),
            DeclaredDegree::Unknown => f.write_str("UNKNOWN"),
        }
    }
}

impl Serialize for DeclaredDegree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            DeclaredDegree::Known(d) => s.serialize_i64(*d),
            DeclaredDegree::Unknown => s.serialize_str("UNKNOWN"),
        }
    }
}

impl<'de> Deserialize<'de> for DeclaredDegree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(DeclaredDegree::Known)
                .ok_or_else(|| de::Error::custom("degree must be an integer")),
            serde_json::Value::String(s) if s == "UNKNOWN" => Ok(DeclaredDegree::Unknown),
            serde_json::Value::Null => Ok(DeclaredDegree::Unknown),
            other => Err(de::Error::custom(format!(
                "degree must be an integer or \"UNKNOWN\", got {other}"
            ))),
        }
    }
}

fn unknown_degree() -> DeclaredDegree {
    DeclaredDegree::Unknown
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexCount {
    #[serde(flatten)]
    pub descriptor: VertexDescriptor,
    pub count: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasisectionSummary {
    pub name: String,
    pub base: String,
    #[serde(rename = "euler")]
    pub declared_euler: i64,
    #[serde(rename = "degree", default = "unknown_degree")]
    pub declared_degree: DeclaredDegree,
    pub vertices: Vec<VertexCount>,
}

impl QuasisectionSummary {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }

    pub fn vertex_total(&self) -> u32 {
        self.vertices.iter().map(|v| v.count).sum()
    }
}

/// Sum of weights over the vertex multiset.
pub fn euler_of_summary(s: &QuasisectionSummary) -> Result<Rational> {
    let mut total = Rational::zero();
    for v in &s.vertices {
        total += weight_of(&v.descriptor)? * Rational::integer(v.count as i64);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::portrait::Side;

    #[test]
    fn summary_json() {
        let raw = r#"{"name":"four_pancakes","base":"S2","euler":2,"degree":0,"vertices":[{"type":"I","n":2,"k":0,"count":12}]}"#;
        let s = QuasisectionSummary::from_json(raw).unwrap();
        assert_eq!(s.vertices[0].descriptor, VertexDescriptor::TypeI { n: 2, k: 0 });
        assert_eq!(s.declared_degree, DeclaredDegree::Known(0));
        assert_eq!(euler_of_summary(&s).unwrap(), Rational::integer(2));
        assert_eq!(QuasisectionSummary::from_json(&s.to_json()).unwrap(), s);
        let odd = r#"{"name":"x","base":"S2","euler":0,"degree":"UNKNOWN","vertices":[{"type":"II","r":2,"side":"L","count":1}]}"#;
        let t = QuasisectionSummary::from_json(odd).unwrap();
        assert_eq!(t.declared_degree, DeclaredDegree::Unknown);
        assert_eq!(
            t.vertices[0].descriptor,
            VertexDescriptor::TypeII { r: 2, side: Side::L }
        );
        assert!(
            QuasisectionSummary::from_json(r#"{"name":"x","base":"S2","euler":0,"degree":1.5,"vertices":[]}"#).is_err()
        );
    }
}

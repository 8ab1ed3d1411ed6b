//! Vertex portraits, sampled sections and the index sum.

use std::collections::BTreeMap;

use super::{build_dcel, genericity_check, ArrangementDcel, ArrangementSpec};
use crate::error::{Error, Result};
use crate::oracle::{configuration_degree_compiled, jump_boundaries_compiled, Extension, ExtensionChoice};
use crate::portrait::{classify, Boundary, CompiledPortrait, Match, Portrait, Strand, VertexDescriptor};
use crate::rational::{Rational, Winding};
use crate::rng::seeded_rng;
use crate::weights::weight_of;

/// A DCEL vertex with its portrait and the faces and edges it sees.
#[derive(Clone, Debug)]
pub struct LocalVertex {
    pub vertex: usize,
    pub portrait: Portrait,
    pub compiled: CompiledPortrait,
    pub descriptor: VertexDescriptor,
    pub weight: Rational,
    /// Face of each sector.
    pub faces: Vec<usize>,
    /// Edge crossed by each boundary, and whether the crossing leaves the edge's circle.
    pub edges: Vec<(usize, bool)>,
}

impl LocalVertex {
    pub fn build(spec: &ArrangementSpec, dcel: &ArrangementDcel, vertex: usize) -> Result<LocalVertex> {
        let v = dcel
            .vertices
            .get(vertex)
            .ok_or_else(|| Error::InvalidParameter(format!("vertex {vertex} out of range")))?;
        let out = &v.outgoing;
        let m = out.len();
        let faces: Vec<usize> = out.iter().map(|&h| dcel.half_edges[h].face).collect();
        let mut sectors = Vec::with_capacity(m);
        for &f in &faces {
            let mut strands: Vec<Strand> = spec
                .sheets_over(&dcel.faces[f].covering)
                .into_iter()
                .map(|(id, pos)| Strand::new(id, pos))
                .collect();
            strands.sort_by(|a, b| a.pos.cmp(&b.pos));
            sectors.push(strands);
        }
        let mut boundaries = Vec::with_capacity(m);
        let mut edges = Vec::with_capacity(m);
        for t in 0..m {
            let he = &dcel.half_edges[out[(t + 1) % m]];
            let c = he.circle;
            let (left, right) = (&dcel.faces[faces[t]].covering, &dcel.faces[faces[(t + 1) % m]].covering);
            let leaving = left.contains(&c) && !right.contains(&c);
            let entering = right.contains(&c) && !left.contains(&c);
            if leaving == entering {
                return Err(Error::DegenerateArrangement(format!(
                    "boundary {t} at vertex {vertex} does not cross circle {c}"
                )));
            }
            let pair = (format!("p{c}-"), format!("p{c}+"));
            let mut b = Boundary::default();
            for s in &sectors[t] {
                if s.id != pair.0 && s.id != pair.1 {
                    b.matches.push(Match::new(s.id.clone(), s.id.clone(), Winding::zero()));
                }
            }
            if leaving {
                b.deaths.push(pair);
            } else {
                b.births.push(pair);
            }
            boundaries.push(b);
            edges.push((he.edge, leaving));
        }
        let portrait = Portrait::new(sectors, boundaries);
        let compiled = portrait.compile()?;
        let descriptor = classify(&portrait)?;
        let weight = weight_of(&descriptor)?;
        Ok(LocalVertex {
            vertex,
            portrait,
            compiled,
            descriptor,
            weight,
            faces,
            edges,
        })
    }

    pub fn all(spec: &ArrangementSpec, dcel: &ArrangementDcel) -> Result<Vec<LocalVertex>> {
        (0..dcel.vertices.len())
            .map(|v| LocalVertex::build(spec, dcel, v))
            .collect()
    }

    /// Degree of the sample restricted to the vertex.
    pub fn index(&self, sample: &SectionSample) -> Result<i64> {
        let idx = self
            .faces
            .iter()
            .enumerate()
            .map(|(s, &f)| {
                let id = sample
                    .face_sheet
                    .get(f)
                    .ok_or_else(|| Error::InvalidSample(format!("no sheet for face {f}")))?;
                self.compiled.ids[s]
                    .iter()
                    .position(|x| x == id)
                    .ok_or_else(|| Error::InvalidSample(format!("sheet {id:?} is not over face {f}")))
            })
            .collect::<Result<Vec<usize>>>()?;
        let mut ext = ExtensionChoice::default();
        for b in jump_boundaries_compiled(&self.compiled, &idx) {
            let (e, leaving) = self.edges[b];
            let flag = *sample
                .edge_flags
                .get(&e)
                .ok_or_else(|| Error::InvalidSample(format!("missing flag on edge {e}")))?;
            let local = match (flag, leaving) {
                (f, true) => f,
                (Extension::Ccw, false) => Extension::Cw,
                (Extension::Cw, false) => Extension::Ccw,
            };
            ext.flags.insert(b, local);
        }
        Ok(configuration_degree_compiled(&self.compiled, &idx, &ext)?.degree)
    }
}

/// Walks a small loop around `vertex` and records the sheets over each sector.
pub fn local_portrait(spec: &ArrangementSpec, dcel: &ArrangementDcel, vertex: usize) -> Result<Portrait> {
    Ok(LocalVertex::build(spec, dcel, vertex)?.portrait)
}

pub fn vertex_descriptors(spec: &ArrangementSpec, dcel: &ArrangementDcel) -> Result<Vec<VertexDescriptor>> {
    Ok(LocalVertex::all(spec, dcel)?
        .into_iter()
        .map(|v| v.descriptor)
        .collect())
}

/// Sum of vertex weights; zero for every generic spec.
pub fn euler_local_formula(spec: &ArrangementSpec) -> Result<Rational> {
    genericity_check(spec).map_err(Error::NonGeneric)?;
    let dcel = build_dcel(spec)?;
    Ok(LocalVertex::all(spec, &dcel)?.iter().map(|v| &v.weight).sum())
}

/// A sheet per face and an extension flag per disagreement edge.
///
/// Flags are oriented from the inside of the edge's circle to the outside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionSample {
    pub face_sheet: Vec<String>,
    pub edge_flags: BTreeMap<usize, Extension>,
}

pub fn sample_section(spec: &ArrangementSpec, dcel: &ArrangementDcel, seed: u64) -> Result<SectionSample> {
    let mut rng = seeded_rng(seed);
    let mut face_sheet = Vec::with_capacity(dcel.faces.len());
    for f in &dcel.faces {
        let sheets = spec.sheets_over(&f.covering);
        let i = rng.index(sheets.len())?;
        face_sheet.push(sheets[i].0.clone());
    }
    let mut edge_flags = BTreeMap::new();
    for (e, _) in dcel.edges.iter().enumerate() {
        let (inner, outer) = dcel.edge_faces(e);
        if face_sheet[inner] != face_sheet[outer] {
            let flag = if rng.coin() { Extension::Cw } else { Extension::Ccw };
            edge_flags.insert(e, flag);
        }
    }
    Ok(SectionSample { face_sheet, edge_flags })
}

pub fn vertex_index(
    spec: &ArrangementSpec,
    dcel: &ArrangementDcel,
    vertex: usize,
    sample: &SectionSample,
) -> Result<i64> {
    LocalVertex::build(spec, dcel, vertex)?.index(sample)
}

pub fn index_sum(spec: &ArrangementSpec, dcel: &ArrangementDcel, sample: &SectionSample) -> Result<i64> {
    index_sum_prepared(&LocalVertex::all(spec, dcel)?, sample)
}

/// [`index_sum`] over vertices prepared once with [`LocalVertex::all`].
pub fn index_sum_prepared(vertices: &[LocalVertex], sample: &SectionSample) -> Result<i64> {
    vertices.iter().map(|v| v.index(sample)).sum()
}

#[cfg(test)]
mod tests {
    use super::super::tests::pancake;
    use super::super::{random_generic_spec, Section};
    use super::*;
    use crate::oracle::expected_index;
    use crate::rational::FiberPos;
    use crate::rng::seeded_rng;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn two_circles() -> ArrangementSpec {
        ArrangementSpec {
            pancakes: vec![pancake("0", "0", "1", "1/4"), pancake("1", "0", "1", "3/4")],
            sections: vec![Section {
                height: FiberPos::from(q("1/2")),
            }],
        }
    }

    #[test]
    fn two_circle_vertices_are_antisymmetric() {
        let spec = two_circles();
        let dcel = build_dcel(&spec).unwrap();
        let vs = LocalVertex::all(&spec, &dcel).unwrap();
        assert_eq!(vs.len(), 2);
        for v in &vs {
            assert_eq!(v.portrait.sectors.len(), 4);
            assert!(v.portrait.validate().is_ok());
            assert_eq!(expected_index(&v.portrait).unwrap(), v.weight);
        }
        match (&vs[0].descriptor, &vs[1].descriptor) {
            (VertexDescriptor::TypeI { n: a, k: b }, VertexDescriptor::TypeI { n: c, k: d }) => {
                assert_eq!((a, b), (d, c));
            }
            other => panic!("unexpected descriptors {other:?}"),
        }
        assert!(euler_local_formula(&spec).unwrap().is_zero());
    }

    #[test]
    fn disjoint_pancakes_have_no_vertices() {
        let spec = ArrangementSpec {
            pancakes: vec![pancake("0", "0", "1", "1/4"), pancake("5", "0", "1", "3/4")],
            sections: vec![Section {
                height: FiberPos::from(q("0")),
            }],
        };
        assert!(euler_local_formula(&spec).unwrap().is_zero());
        let dcel = build_dcel(&spec).unwrap();
        assert!(dcel.vertices.is_empty());
    }

    #[test]
    fn unique_section_sample() {
        let spec = ArrangementSpec {
            pancakes: vec![],
            sections: vec![Section {
                height: FiberPos::from(q("0")),
            }],
        };
        let dcel = build_dcel(&spec).unwrap();
        let s = sample_section(&spec, &dcel, 3).unwrap();
        assert_eq!(s.face_sheet, vec!["s0".to_string()]);
        assert!(s.edge_flags.is_empty());
        assert_eq!(index_sum(&spec, &dcel, &s).unwrap(), 0);
    }

    #[test]
    fn samples_are_deterministic_and_sum_to_zero() {
        let spec = two_circles();
        let dcel = build_dcel(&spec).unwrap();
        let vs = LocalVertex::all(&spec, &dcel).unwrap();
        for seed in 0..50 {
            let s = sample_section(&spec, &dcel, seed).unwrap();
            assert_eq!(s, sample_section(&spec, &dcel, seed).unwrap());
            for (e, _) in dcel.edges.iter().enumerate() {
                let (i, o) = dcel.edge_faces(e);
                assert_eq!(s.edge_flags.contains_key(&e), s.face_sheet[i] != s.face_sheet[o]);
            }
            assert_eq!(index_sum_prepared(&vs, &s).unwrap(), 0, "seed {seed}");
        }
    }

    #[test]
    fn face_marginal_is_uniform() {
        let spec = ArrangementSpec {
            pancakes: vec![pancake("0", "0", "1", "1/4")],
            sections: vec![Section {
                height: FiberPos::from(q("0")),
            }],
        };
        let dcel = build_dcel(&spec).unwrap();
        let inside = dcel.faces.iter().position(|f| f.sheet_count == 3).unwrap();
        let mut counts = BTreeMap::new();
        let draws = 10_000;
        for seed in 0..draws {
            let s = sample_section(&spec, &dcel, seed).unwrap();
            *counts.entry(s.face_sheet[inside].clone()).or_insert(0u32) += 1;
        }
        assert_eq!(counts.len(), 3);
        for c in counts.values() {
            let frac = *c as f64 / draws as f64;
            assert!((frac * 3.0 - 1.0).abs() < 0.05, "{counts:?}");
        }
    }

    #[test]
    fn random_specs_vanish() {
        let mut rng = seeded_rng(11);
        for _ in 0..10 {
            let spec = random_generic_spec(&mut rng, 5, 3).unwrap();
            assert!(euler_local_formula(&spec).unwrap().is_zero(), "{}", spec.to_json());
            let dcel = build_dcel(&spec).unwrap();
            let vs = LocalVertex::all(&spec, &dcel).unwrap();
            for seed in 0..10 {
                let s = sample_section(&spec, &dcel, seed).unwrap();
                assert_eq!(index_sum_prepared(&vs, &s).unwrap(), 0);
            }
        }
    }
}

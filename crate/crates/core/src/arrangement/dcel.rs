//! Planar subdivision induced by the fold circles.
//!
//! Coordinates are `f64`; every predicate that feeds a combinatorial
//! decision must clear a separation margin of `1e-9` times the coordinate
//! scale, and inputs that do not are rejected as degenerate.

use std::f64::consts::{PI, TAU};

use super::{genericity_check, pair_relation, ArrangementSpec, PairRelation};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct DcelVertex {
    pub circles: (usize, usize),
    pub point: (f64, f64),
    /// Outgoing half-edges sorted counterclockwise by tangent direction.
    pub outgoing: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct HalfEdge {
    pub circle: usize,
    /// Traverses its circle counterclockwise, so the circle's inside is on the left.
    pub ccw: bool,
    pub origin: Option<usize>,
    pub twin: usize,
    pub next: usize,
    pub edge: usize,
    pub face: usize,
    pub start_angle: f64,
    /// Signed angular extent.
    pub sweep: f64,
}

#[derive(Clone, Debug)]
pub struct DcelEdge {
    pub circle: usize,
    /// Half-edge with the circle's inside on its left.
    pub inner: usize,
    pub outer: usize,
    pub is_loop: bool,
}

#[derive(Clone, Debug)]
pub struct Face {
    /// Pancakes covering the face, ascending.
    pub covering: Vec<usize>,
    pub sheet_count: usize,
    /// One half-edge per boundary cycle; the first is the outer cycle of a bounded face.
    pub cycles: Vec<usize>,
    pub unbounded: bool,
    pub area: f64,
}

#[derive(Clone, Debug)]
pub struct ArrangementDcel {
    pub vertices: Vec<DcelVertex>,
    pub half_edges: Vec<HalfEdge>,
    pub edges: Vec<DcelEdge>,
    pub faces: Vec<Face>,
    /// Connected components of the circle intersection graph.
    pub components: usize,
    /// Circles without vertices, each a closed edge.
    pub loops: usize,
    pub margin: f64,
}

impl ArrangementDcel {
    /// `V - E + F`, which is 2 for a connected arrangement.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// `V + L - E + F = 1 + C`, the Euler relation for a possibly disconnected arrangement.
    pub fn euler_relation_holds(&self) -> bool {
        self.euler_characteristic() + self.loops as i64 == 1 + self.components as i64
    }

    pub fn face_of(&self, h: usize) -> usize {
        self.half_edges[h].face
    }

    /// The face on the inside and on the outside of an edge.
    pub fn edge_faces(&self, e: usize) -> (usize, usize) {
        let edge = &self.edges[e];
        (self.half_edges[edge.inner].face, self.half_edges[edge.outer].face)
    }
}

struct Circle {
    cx: f64,
    cy: f64,
    r: f64,
}

impl Circle {
    fn at(&self, theta: f64) -> (f64, f64) {
        (self.cx + self.r * theta.cos(), self.cy + self.r * theta.sin())
    }

    fn angle_of(&self, p: (f64, f64)) -> f64 {
        (p.1 - self.cy).atan2(p.0 - self.cx).rem_euclid(TAU)
    }

    /// Signed area contribution of the arc from `t0` sweeping `sw`.
    fn arc_area(&self, t0: f64, sw: f64) -> f64 {
        let t1 = t0 + sw;
        0.5 * (self.r * self.r * sw + self.r * self.cx * (t1.sin() - t0.sin())
            - self.r * self.cy * (t1.cos() - t0.cos()))
    }
}

fn degenerate(msg: String) -> Error {
    Error::DegenerateArrangement(msg)
}

fn angle_in_arc(phi: f64, start: f64, sweep: f64) -> bool {
    if sweep >= 0.0 {
        (phi - start).rem_euclid(TAU) < sweep
    } else {
        (start - phi).rem_euclid(TAU) < -sweep
    }
}

pub fn build_dcel(spec: &ArrangementSpec) -> Result<ArrangementDcel> {
    genericity_check(spec).map_err(Error::NonGeneric)?;
    let circles: Vec<Circle> = spec
        .pancakes
        .iter()
        .map(|p| Circle {
            cx: p.center.0.to_f64(),
            cy: p.center.1.to_f64(),
            r: p.radius.to_f64(),
        })
        .collect();
    let n = circles.len();
    let scale = circles
        .iter()
        .map(|c| c.cx.abs() + c.cy.abs() + c.r)
        .fold(1.0, f64::max);
    let margin = 1e-9 * scale;

    // Vertices and components.
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut vertices: Vec<DcelVertex> = Vec::new();
    let mut on_circle: Vec<Vec<(f64, usize)>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (&circles[i], &circles[j]);
            let (dx, dy) = (b.cx - a.cx, b.cy - a.cy);
            let d = dx.hypot(dy);
            if (d - (a.r + b.r)).abs() <= margin || (d - (a.r - b.r).abs()).abs() <= margin {
                return Err(degenerate(format!(
                    "circles {i} and {j} are within the margin of tangency"
                )));
            }
            if pair_relation(&spec.pancakes[i], &spec.pancakes[j]) != PairRelation::Crossing {
                continue;
            }
            let (ri, rj) = (root(&mut parent, i), root(&mut parent, j));
            parent[ri.max(rj)] = ri.min(rj);
            let along = (a.r * a.r - b.r * b.r + d * d) / (2.0 * d);
            let h = (a.r * a.r - along * along).max(0.0).sqrt();
            let (mx, my) = (a.cx + along * dx / d, a.cy + along * dy / d);
            let (px, py) = (-dy / d, dx / d);
            for sgn in [1.0, -1.0] {
                let p = (mx + sgn * h * px, my + sgn * h * py);
                let v = vertices.len();
                on_circle[i].push((a.angle_of(p), v));
                on_circle[j].push((b.angle_of(p), v));
                vertices.push(DcelVertex {
                    circles: (i, j),
                    point: p,
                    outgoing: Vec::new(),
                });
            }
        }
    }
    for (v, vx) in vertices.iter().enumerate() {
        for (k, c) in circles.iter().enumerate() {
            if k == vx.circles.0 || k == vx.circles.1 {
                continue;
            }
            let dist = (vx.point.0 - c.cx).hypot(vx.point.1 - c.cy);
            if (dist - c.r).abs() <= margin {
                return Err(degenerate(format!("vertex {v} is within the margin of circle {k}")));
            }
        }
    }
    let components = {
        let mut roots: Vec<usize> = (0..n).map(|i| root(&mut parent, i)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    };

    // Edges and half-edges.
    let mut half_edges: Vec<HalfEdge> = Vec::new();
    let mut edges: Vec<DcelEdge> = Vec::new();
    // (circle, vertex) -> (ccw half-edge leaving v, cw half-edge leaving v)
    let mut leaving: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); vertices.len()];
    let mut loops = 0;
    for (c, list) in on_circle.iter_mut().enumerate() {
        list.sort_by(|a, b| a.0.total_cmp(&b.0));
        for w in 0..list.len() {
            let next = (w + 1) % list.len();
            let gap = if list.len() == 1 {
                TAU
            } else {
                (list[next].0 - list[w].0).rem_euclid(TAU)
            };
            if gap * circles[c].r <= margin {
                return Err(degenerate(format!("two vertices on circle {c} are within the margin")));
            }
        }
        if list.is_empty() {
            loops += 1;
            let (h, t, e) = (half_edges.len(), half_edges.len() + 1, edges.len());
            half_edges.push(HalfEdge {
                circle: c,
                ccw: true,
                origin: None,
                twin: t,
                next: h,
                edge: e,
                face: usize::MAX,
                start_angle: 0.0,
                sweep: TAU,
            });
            half_edges.push(HalfEdge {
                circle: c,
                ccw: false,
                origin: None,
                twin: h,
                next: t,
                edge: e,
                face: usize::MAX,
                start_angle: 0.0,
                sweep: -TAU,
            });
            edges.push(DcelEdge {
                circle: c,
                inner: h,
                outer: t,
                is_loop: true,
            });
            continue;
        }
        let mut ccw_from = vec![0usize; list.len()];
        let mut cw_from = vec![0usize; list.len()];
        for w in 0..list.len() {
            let next = (w + 1) % list.len();
            let (t0, t1) = (list[w].0, list[next].0);
            let sweep = (t1 - t0).rem_euclid(TAU);
            let (h, t, e) = (half_edges.len(), half_edges.len() + 1, edges.len());
            half_edges.push(HalfEdge {
                circle: c,
                ccw: true,
                origin: Some(list[w].1),
                twin: t,
                next: usize::MAX,
                edge: e,
                face: usize::MAX,
                start_angle: t0,
                sweep,
            });
            half_edges.push(HalfEdge {
                circle: c,
                ccw: false,
                origin: Some(list[next].1),
                twin: h,
                next: usize::MAX,
                edge: e,
                face: usize::MAX,
                start_angle: t1,
                sweep: -sweep,
            });
            edges.push(DcelEdge {
                circle: c,
                inner: h,
                outer: t,
                is_loop: false,
            });
            ccw_from[w] = h;
            cw_from[next] = t;
        }
        for (w, &(_, v)) in list.iter().enumerate() {
            leaving[v].push((c, ccw_from[w], cw_from[w]));
        }
    }
    for (v, vx) in vertices.iter_mut().enumerate() {
        let mut dirs: Vec<(f64, usize)> = Vec::with_capacity(4);
        for &(c, h_ccw, h_cw) in &leaving[v] {
            let theta = circles[c].angle_of(vx.point);
            dirs.push(((theta + PI / 2.0).rem_euclid(TAU), h_ccw));
            dirs.push(((theta - PI / 2.0).rem_euclid(TAU), h_cw));
        }
        dirs.sort_by(|a, b| a.0.total_cmp(&b.0));
        vx.outgoing = dirs.into_iter().map(|d| d.1).collect();
    }
    for h in 0..half_edges.len() {
        if half_edges[h].origin.is_none() {
            continue;
        }
        let twin = half_edges[h].twin;
        let end = half_edges[twin].origin.expect("arc has endpoints");
        let out = &vertices[end].outgoing;
        let q = out.iter().position(|&x| x == twin).expect("twin leaves the end vertex");
        half_edges[h].next = out[(q + out.len() - 1) % out.len()];
    }

    // Boundary cycles.
    let mut cycle_of = vec![usize::MAX; half_edges.len()];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for h in 0..half_edges.len() {
        if cycle_of[h] != usize::MAX {
            continue;
        }
        let id = cycles.len();
        let mut cyc = Vec::new();
        let mut x = h;
        loop {
            cycle_of[x] = id;
            cyc.push(x);
            x = half_edges[x].next;
            if x == h {
                break;
            }
            if cyc.len() > half_edges.len() {
                return Err(degenerate("half-edge cycle does not close".into()));
            }
        }
        cycles.push(cyc);
    }
    let area: Vec<f64> = cycles
        .iter()
        .map(|cyc| {
            cyc.iter()
                .map(|&h| {
                    let he = &half_edges[h];
                    circles[he.circle].arc_area(he.start_angle, he.sweep)
                })
                .sum()
        })
        .collect();
    let comp_of_circle: Vec<usize> = (0..n).map(|i| root(&mut parent, i)).collect();
    let comp_of_cycle = |id: usize| comp_of_circle[half_edges[cycles[id][0]].circle];

    let winding = |id: usize, p: (f64, f64)| -> i64 {
        let alpha: f64 = 0.739_085_133_215_160_6;
        let (ux, uy) = (alpha.cos(), alpha.sin());
        let mut w = 0i64;
        for &h in &cycles[id] {
            let he = &half_edges[h];
            let c = &circles[he.circle];
            let (qx, qy) = (p.0 - c.cx, p.1 - c.cy);
            let b = ux * qx + uy * qy;
            let disc = b * b - (qx * qx + qy * qy - c.r * c.r);
            if disc <= 0.0 {
                continue;
            }
            for s in [-b - disc.sqrt(), -b + disc.sqrt()] {
                if s <= 0.0 {
                    continue;
                }
                let x = (p.0 + s * ux, p.1 + s * uy);
                let phi = c.angle_of(x);
                if !angle_in_arc(phi, he.start_angle, he.sweep) {
                    continue;
                }
                let (tx, ty) = if he.ccw {
                    (-phi.sin(), phi.cos())
                } else {
                    (phi.sin(), -phi.cos())
                };
                w += if ux * ty - uy * tx > 0.0 { 1 } else { -1 };
            }
        }
        w
    };

    // Faces: one per positive cycle, plus the unbounded face.
    let mut faces: Vec<Face> = Vec::new();
    let mut face_of_cycle = vec![usize::MAX; cycles.len()];
    for (id, a) in area.iter().enumerate() {
        if *a > 0.0 {
            face_of_cycle[id] = faces.len();
            faces.push(Face {
                covering: Vec::new(),
                sheet_count: 0,
                cycles: vec![cycles[id][0]],
                unbounded: false,
                area: *a,
            });
        }
    }
    let unbounded = faces.len();
    faces.push(Face {
        covering: Vec::new(),
        sheet_count: 0,
        cycles: Vec::new(),
        unbounded: true,
        area: f64::INFINITY,
    });
    for (id, a) in area.iter().enumerate() {
        if *a > 0.0 {
            continue;
        }
        let he = &half_edges[cycles[id][0]];
        let probe = circles[he.circle].at(he.start_angle + he.sweep / 2.0);
        let mut best: Option<(f64, usize)> = None;
        for (other, oa) in area.iter().enumerate() {
            if *oa <= 0.0 || comp_of_cycle(other) == comp_of_cycle(id) {
                continue;
            }
            if winding(other, probe) != 0 && best.is_none_or(|(ba, _)| *oa < ba) {
                best = Some((*oa, other));
            }
        }
        let f = best.map_or(unbounded, |(_, other)| face_of_cycle[other]);
        face_of_cycle[id] = f;
        faces[f].cycles.push(cycles[id][0]);
    }
    for (id, cyc) in cycles.iter().enumerate() {
        for &h in cyc {
            half_edges[h].face = face_of_cycle[id];
        }
    }

    // Coverage from the left side of every half-edge; all half-edges of a face must agree.
    let left_cover = |h: usize| -> Result<Vec<usize>> {
        let he = &half_edges[h];
        let p = circles[he.circle].at(he.start_angle + he.sweep / 2.0);
        let mut cov = Vec::new();
        for (k, c) in circles.iter().enumerate() {
            if k == he.circle {
                if he.ccw {
                    cov.push(k);
                }
                continue;
            }
            let dist = (p.0 - c.cx).hypot(p.1 - c.cy);
            if (dist - c.r).abs() <= margin {
                return Err(degenerate(format!("arc midpoint within the margin of circle {k}")));
            }
            if dist < c.r {
                cov.push(k);
            }
        }
        Ok(cov)
    };
    let mut assigned = vec![false; faces.len()];
    for h in 0..half_edges.len() {
        let f = half_edges[h].face;
        let cov = left_cover(h)?;
        if !assigned[f] {
            faces[f].covering = cov;
            assigned[f] = true;
        } else if faces[f].covering != cov {
            return Err(degenerate(format!("inconsistent coverage on face {f}")));
        }
    }
    if !faces[unbounded].covering.is_empty() {
        return Err(degenerate("unbounded face is covered by a pancake".into()));
    }
    for f in faces.iter_mut() {
        f.sheet_count = spec.sections.len() + 2 * f.covering.len();
    }

    let dcel = ArrangementDcel {
        vertices,
        half_edges,
        edges,
        faces,
        components,
        loops,
        margin,
    };
    if !dcel.euler_relation_holds() {
        return Err(degenerate(format!(
            "Euler relation fails: V={} E={} F={} loops={} components={}",
            dcel.vertices.len(),
            dcel.edges.len(),
            dcel.faces.len(),
            dcel.loops,
            dcel.components
        )));
    }
    Ok(dcel)
}

#[cfg(test)]
mod tests {
    use super::super::tests::pancake;
    use super::super::{ArrangementSpec, Section};
    use super::*;
    use crate::rational::{FiberPos, Rational};

    fn spec(pancakes: Vec<super::super::Pancake>) -> ArrangementSpec {
        ArrangementSpec {
            pancakes,
            sections: vec![Section {
                height: FiberPos::from(Rational::zero()),
            }],
        }
    }

    #[test]
    fn two_crossing_circles() {
        let d = build_dcel(&spec(vec![
            pancake("0", "0", "1", "1/4"),
            pancake("1", "0", "1", "1/2"),
        ]))
        .unwrap();
        assert_eq!((d.vertices.len(), d.edges.len(), d.faces.len()), (2, 4, 4));
        assert_eq!(d.euler_characteristic(), 2);
        let mut sheets: Vec<usize> = d.faces.iter().map(|f| f.sheet_count).collect();
        sheets.sort();
        assert_eq!(sheets, vec![1, 3, 3, 5]);
    }

    #[test]
    fn single_circle() {
        let d = build_dcel(&spec(vec![pancake("0", "0", "2", "1/4")])).unwrap();
        assert_eq!((d.vertices.len(), d.edges.len(), d.faces.len()), (0, 1, 2));
        assert!(d.euler_relation_holds());
        let inside = d.faces.iter().find(|f| !f.unbounded).unwrap();
        assert_eq!(inside.sheet_count, 3);
        assert_eq!(d.faces.iter().find(|f| f.unbounded).unwrap().sheet_count, 1);
    }

    #[test]
    fn four_pairwise_crossing_circles() {
        let d = build_dcel(&spec(vec![
            pancake("0", "0", "2", "1/8"),
            pancake("1", "0", "2", "3/8"),
            pancake("0", "1", "2", "5/8"),
            pancake("1", "11/10", "2", "7/8"),
        ]))
        .unwrap();
        assert_eq!(d.vertices.len(), 12);
        assert_eq!(d.euler_characteristic(), 2);
    }

    #[test]
    fn nested_and_disjoint_components() {
        let d = build_dcel(&spec(vec![
            pancake("0", "0", "10", "1/8"),
            pancake("-3", "0", "1", "3/8"),
            pancake("-2", "0", "1", "5/8"),
            pancake("4", "0", "1", "7/8"),
            pancake("20", "0", "1", "1/16"),
        ]))
        .unwrap();
        assert_eq!(d.components, 4);
        assert!(d.euler_relation_holds());
        // The lens of circles 1 and 2 sits inside the big disk: 1 (section) + 2 * 3 sheets.
        assert!(d.faces.iter().any(|f| f.sheet_count == 7));
        let big = d.faces.iter().find(|f| f.covering == vec![0]).unwrap();
        assert_eq!(big.cycles.len(), 3, "outer boundary plus two holes");
    }

    #[test]
    fn near_tangent_is_degenerate() {
        let s = spec(vec![
            pancake("0", "0", "1", "1/4"),
            pancake("2", "0", "1000000000001/1000000000000", "1/2"),
        ]);
        assert!(matches!(build_dcel(&s), Err(Error::DegenerateArrangement(_))));
    }
}

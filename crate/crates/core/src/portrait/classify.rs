//! Recognition of vertex shapes up to sector rotation, fiber rotation,
//! position perturbation and simple circles.

use super::{CompiledPortrait, Portrait, Side, VertexDescriptor};
use crate::error::Result;
use crate::rational::{ccw_distance, FiberPos, Rational};

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[derive(Default, Clone)]
struct Component {
    per_sector: Vec<usize>,
    /// (boundary, lower, upper) in the right sector.
    births: Vec<(usize, usize, usize)>,
    /// (boundary, lower, upper) in the left sector.
    deaths: Vec<(usize, usize, usize)>,
    winding: Rational,
    crossings: usize,
}

struct Crossing {
    boundary: usize,
    x: usize,
    y: usize,
}

struct Analysis<'a> {
    c: &'a CompiledPortrait,
    offset: Vec<usize>,
    comp_of: Vec<usize>,
    comps: Vec<Component>,
    crossings: Vec<Crossing>,
}

impl<'a> Analysis<'a> {
    fn new(c: &'a CompiledPortrait) -> Self {
        let m = c.sector_count();
        let mut offset = vec![0usize; m + 1];
        for s in 0..m {
            offset[s + 1] = offset[s] + c.pos[s].len();
        }
        let total = offset[m];
        let mut dsu = Dsu((0..total).collect());
        let mut crossings = Vec::new();
        for (b, bd) in c.boundaries.iter().enumerate() {
            let r = c.right_of(b);
            for (x, f) in bd.fwd.iter().enumerate() {
                if let Some((y, _)) = f {
                    dsu.union(offset[b] + x, offset[r] + y);
                }
            }
            for &(lo, hi) in &bd.births {
                dsu.union(offset[r] + lo, offset[r] + hi);
            }
            for &(lo, hi) in &bd.deaths {
                dsu.union(offset[b] + lo, offset[b] + hi);
            }
            let moving: Vec<usize> = (0..bd.fwd.len()).filter(|&x| bd.fwd[x].is_some()).collect();
            for (i, &x) in moving.iter().enumerate() {
                for &y in &moving[i + 1..] {
                    if c.crossing(b, x, y).is_some() {
                        crossings.push(Crossing { boundary: b, x, y });
                    }
                }
            }
        }
        let roots: Vec<usize> = (0..total).map(|v| dsu.find(v)).collect();
        let mut comp_ids: Vec<usize> = roots.clone();
        comp_ids.sort_unstable();
        comp_ids.dedup();
        let comp_of: Vec<usize> = roots.iter().map(|r| comp_ids.binary_search(r).unwrap()).collect();
        let mut comps = vec![
            Component {
                per_sector: vec![0; m],
                winding: Rational::zero(),
                ..Default::default()
            };
            comp_ids.len()
        ];
        for s in 0..m {
            for i in 0..c.pos[s].len() {
                comps[comp_of[offset[s] + i]].per_sector[s] += 1;
            }
        }
        for (b, bd) in c.boundaries.iter().enumerate() {
            let r = c.right_of(b);
            for (x, f) in bd.fwd.iter().enumerate() {
                if let Some((_, w)) = f {
                    comps[comp_of[offset[b] + x]].winding += w;
                }
            }
            for &(lo, hi) in &bd.births {
                comps[comp_of[offset[r] + lo]].births.push((b, lo, hi));
            }
            for &(lo, hi) in &bd.deaths {
                comps[comp_of[offset[b] + lo]].deaths.push((b, lo, hi));
            }
        }
        for cr in &crossings {
            let (a, z) = (comp_of[offset[cr.boundary] + cr.x], comp_of[offset[cr.boundary] + cr.y]);
            comps[a].crossings += 1;
            if z != a {
                comps[z].crossings += 1;
            }
        }
        Analysis {
            c,
            offset,
            comp_of,
            comps,
            crossings,
        }
    }

    fn comp(&self, s: usize, i: usize) -> usize {
        self.comp_of[self.offset[s] + i]
    }

    fn is_circle_like(&self, k: usize) -> bool {
        let comp = &self.comps[k];
        comp.births.is_empty()
            && comp.deaths.is_empty()
            && comp.per_sector.iter().all(|&n| n == 1)
            && comp.winding.is_zero()
    }

    fn is_simple(&self, k: usize) -> bool {
        self.is_circle_like(k) && self.comps[k].crossings == 0
    }

    fn is_fold(&self, k: usize) -> bool {
        let comp = &self.comps[k];
        comp.births.len() == 1 && comp.deaths.len() == 1
    }

    /// Follows a strand forward from sector `s` until it dies, labeling visited nodes.
    /// Returns the number of boundaries crossed before the death and the visited nodes.
    fn trace(&self, mut s: usize, mut i: usize) -> Option<(usize, Vec<(usize, usize)>)> {
        let limit = *self.offset.last().unwrap() + 1;
        let mut visited = vec![(s, i)];
        for step in 0..limit {
            let bd = &self.c.boundaries[s];
            if bd.deaths.iter().any(|&(lo, hi)| lo == i || hi == i) {
                return Some((step, visited));
            }
            let (j, _) = bd.fwd[i].as_ref()?;
            s = self.c.right_of(s);
            i = *j;
            visited.push((s, i));
        }
        None
    }

    fn simple_count(&self) -> u32 {
        (0..self.comps.len()).filter(|&k| self.is_simple(k)).count() as u32
    }

    fn simples_in_arc(&self, s: usize, from: &FiberPos, to: &FiberPos) -> u32 {
        let span = ccw_distance(from, to);
        (0..self.c.pos[s].len())
            .filter(|&i| self.is_simple(self.comp(s, i)))
            .filter(|&i| {
                let d = ccw_distance(from, &self.c.pos[s][i]);
                d.is_positive() && d < span
            })
            .count() as u32
    }
}

fn unrecognized() -> VertexDescriptor {
    inessential("unrecognized")
}

fn inessential(reason: &str) -> VertexDescriptor {
    VertexDescriptor::Inessential {
        reason: reason.to_string(),
    }
}

pub fn classify(p: &Portrait) -> Result<VertexDescriptor> {
    let c = p.compile()?;
    let a = Analysis::new(&c);
    let core: Vec<usize> = (0..a.comps.len()).filter(|&k| !a.is_simple(k)).collect();
    Ok(match core.as_slice() {
        [] => inessential("regular point"),
        [f] if a.is_fold(*f) => single_fold(&a, *f),
        [x, y] if a.is_fold(*x) && a.is_fold(*y) => two_folds(&a, *x, *y),
        [x, y] if a.is_fold(*x) && a.is_circle_like(*y) => fold_and_sheet(&a, *x, *y),
        [x, y] if a.is_circle_like(*x) && a.is_fold(*y) => fold_and_sheet(&a, *y, *x),
        _ => unrecognized(),
    })
}

fn single_fold(a: &Analysis, f: usize) -> VertexDescriptor {
    let comp = &a.comps[f];
    if comp.crossings > 0 {
        let own = a
            .crossings
            .iter()
            .filter(|cr| a.comp(cr.boundary, cr.x) == f && a.comp(cr.boundary, cr.y) == f)
            .count();
        return if own == 1 && comp.crossings == 1 {
            inessential("line-symmetric")
        } else {
            unrecognized()
        };
    }
    if comp.per_sector.contains(&0) {
        return inessential("fold edge");
    }
    let (bb, lo, hi) = comp.births[0];
    let s = a.c.right_of(bb);
    let (Some((lo_steps, _)), Some((hi_steps, _))) = (a.trace(s, lo), a.trace(s, hi)) else {
        return unrecognized();
    };
    let side = match lo_steps.cmp(&hi_steps) {
        std::cmp::Ordering::Greater => Side::R,
        std::cmp::Ordering::Less => Side::L,
        std::cmp::Ordering::Equal => return unrecognized(),
    };
    VertexDescriptor::TypeII {
        r: a.simple_count(),
        side,
    }
}

fn two_folds(a: &Analysis, f: usize, g: usize) -> VertexDescriptor {
    if a.comps[f].crossings > 0 || a.comps[g].crossings > 0 {
        return unrecognized();
    }
    let m = a.c.sector_count();
    let Some(free) = (0..m).find(|&s| a.comps[f].per_sector[s] == 0 && a.comps[g].per_sector[s] == 0) else {
        return unrecognized();
    };
    // Events in ccw order starting at the fold-free sector: (fold, is_birth).
    let mut events = Vec::new();
    for step in 0..m {
        let b = (free + step) % m;
        for k in [f, g] {
            let comp = &a.comps[k];
            let births = comp.births.iter().filter(|e| e.0 == b).count();
            let deaths = comp.deaths.iter().filter(|e| e.0 == b).count();
            if births + deaths > 0 {
                events.push((k, births > 0, b));
            }
        }
    }
    if events.len() != 4 || events.windows(2).any(|w| w[0].2 == w[1].2) {
        return unrecognized();
    }
    let first = events[0].0;
    let second = if first == f { g } else { f };
    let pattern: Vec<(usize, bool)> = events.iter().map(|e| (e.0, e.1)).collect();
    if pattern != vec![(first, true), (second, true), (first, false), (second, false)] {
        return inessential("non-interleaved folds");
    }
    let both = a.c.right_of(events[1].2);
    let Some((lo1, hi1)) = branches_in(a, first, both) else {
        return unrecognized();
    };
    let Some((lo2, hi2)) = branches_in(a, second, both) else {
        return unrecognized();
    };
    let pos = &a.c.pos[both];
    let n = a.simples_in_arc(both, &pos[hi1], &pos[lo2]);
    let k = a.simples_in_arc(both, &pos[hi2], &pos[lo1]);
    if n + k == 0 || n + k != a.simple_count() {
        return unrecognized();
    }
    VertexDescriptor::TypeI { n, k }
}

/// The (lower, upper) descendants of a fold's birth pair in sector `s`.
fn branches_in(a: &Analysis, fold: usize, s: usize) -> Option<(usize, usize)> {
    let (bb, lo, hi) = a.comps[fold].births[0];
    let start = a.c.right_of(bb);
    let find = |i: usize| {
        a.trace(start, i)
            .and_then(|(_, nodes)| nodes.into_iter().find(|&(ss, _)| ss == s).map(|(_, j)| j))
    };
    Some((find(lo)?, find(hi)?))
}

fn fold_and_sheet(a: &Analysis, f: usize, x: usize) -> VertexDescriptor {
    let (bb, lo, hi) = a.comps[f].births[0];
    let start = a.c.right_of(bb);
    let (Some((_, lo_nodes)), Some((_, hi_nodes))) = (a.trace(start, lo), a.trace(start, hi)) else {
        return unrecognized();
    };
    if a.comps[f].crossings != 2 || a.comps[x].crossings != 2 {
        return unrecognized();
    }
    let m = a.c.sector_count();
    // (steps after the birth boundary, crossed the upper branch)
    let mut hits = Vec::new();
    for cr in &a.crossings {
        let (cx, cy) = (a.comp(cr.boundary, cr.x), a.comp(cr.boundary, cr.y));
        let branch = if cx == x && cy == f {
            cr.y
        } else if cy == x && cx == f {
            cr.x
        } else {
            return unrecognized();
        };
        let node = (cr.boundary, branch);
        let upper = if hi_nodes.contains(&node) {
            true
        } else if lo_nodes.contains(&node) {
            false
        } else {
            return unrecognized();
        };
        hits.push(((cr.boundary + m - start) % m, upper));
    }
    hits.sort();
    if hits[0].0 == hits[1].0 || hits[0].1 == hits[1].1 {
        return unrecognized();
    }
    VertexDescriptor::TypeIII {
        r: a.simple_count(),
        side: if hits[0].1 { Side::R } else { Side::L },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::portrait::{type_i, type_ii, type_iii, whitney};

    #[test]
    fn round_trips() {
        for n in 0..=6u32 {
            for k in 0..=6u32 {
                if n + k >= 1 && n + k <= 6 {
                    assert_eq!(
                        classify(&type_i(n, k).unwrap()).unwrap(),
                        VertexDescriptor::TypeI { n, k }
                    );
                }
            }
        }
        for r in 0..=6 {
            for side in [Side::L, Side::R] {
                assert_eq!(
                    classify(&type_ii(r, side)).unwrap(),
                    VertexDescriptor::TypeII { r, side }
                );
                assert_eq!(
                    classify(&type_iii(r, side)).unwrap(),
                    VertexDescriptor::TypeIII { r, side }
                );
            }
        }
    }

    #[test]
    fn mirror_swaps_parameters() {
        let p = type_i(3, 1).unwrap();
        assert_eq!(classify(&p.mirror()).unwrap(), VertexDescriptor::TypeI { n: 1, k: 3 });
        assert_eq!(
            classify(&type_i(1, 1).unwrap().mirror()).unwrap(),
            VertexDescriptor::TypeI { n: 1, k: 1 }
        );
        assert_eq!(
            classify(&type_ii(2, Side::R).mirror()).unwrap(),
            VertexDescriptor::TypeII { r: 2, side: Side::L }
        );
    }

    #[test]
    fn whitney_is_inessential() {
        for r in 1..=3 {
            let w = whitney(r).unwrap();
            let d = classify(&w).unwrap();
            assert_eq!(
                d,
                VertexDescriptor::Inessential {
                    reason: "line-symmetric".into()
                }
            );
            assert_eq!(classify(&w.mirror()).unwrap(), d);
        }
    }

    #[test]
    fn invariant_under_rotations() {
        let shift: Rational = "1/7".parse().unwrap();
        let p = type_iii(1, Side::R);
        assert_eq!(
            classify(&p.rotate_fiber(&shift)).unwrap(),
            VertexDescriptor::TypeIII { r: 1, side: Side::R }
        );
        for k in 0..4 {
            assert_eq!(
                classify(&type_i(2, 1).unwrap().rotate_sectors(k)).unwrap(),
                VertexDescriptor::TypeI { n: 2, k: 1 }
            );
            assert_eq!(
                classify(&p.rotate_sectors(k)).unwrap(),
                VertexDescriptor::TypeIII { r: 1, side: Side::R }
            );
        }
        let q = type_ii(1, Side::L);
        assert_eq!(
            classify(&q.rotate_sectors(1)).unwrap(),
            VertexDescriptor::TypeII { r: 1, side: Side::L }
        );
    }

    #[test]
    fn added_circle_increments_r() {
        let p = type_ii(0, Side::R)
            .add_simple_circle(&FiberPos::from("1/2".parse::<Rational>().unwrap()))
            .unwrap();
        assert_eq!(classify(&p).unwrap(), VertexDescriptor::TypeII { r: 1, side: Side::R });
    }

    #[test]
    fn regular_point_and_fold_edge() {
        let p = Portrait::from_json(
            r#"{"sectors":[[{"id":"a","pos":"0"}],[{"id":"a","pos":"0"}]],
                "boundaries":[{"matches":[["a","a","0"]]},{"matches":[["a","a","0"]]}]}"#,
        )
        .unwrap();
        assert_eq!(classify(&p).unwrap(), inessential("regular point"));
        let edge = Portrait::from_json(
            r#"{"sectors":[[{"id":"a","pos":"0"}],[{"id":"a","pos":"0"},{"id":"u","pos":"1/4"},{"id":"v","pos":"1/2"}]],
                "boundaries":[{"matches":[["a","a","0"]],"births":[["u","v"]]},{"matches":[["a","a","0"]],"deaths":[["u","v"]]}]}"#,
        )
        .unwrap();
        assert_eq!(classify(&edge).unwrap(), inessential("fold edge"));
    }
}

//! Combinatorial portraits of a base point.
//!
//! A portrait is a cyclic list of sectors, each holding the strands (fiber
//! positions of sheets) over one incident domain, and one boundary between
//! consecutive sectors. A boundary matches left strands to right strands with
//! a lifted displacement (winding), and may create or destroy adjacent pairs.

mod classify;
mod generators;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{ccw_distance, FiberPos, Rational, Winding};

pub use classify::classify;
pub use generators::{named_portrait, type_i, type_ii, type_iii, whitney};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Strand {
    pub id: String,
    pub pos: FiberPos,
}

impl Strand {
    pub fn new(id: impl Into<String>, pos: FiberPos) -> Self {
        Strand { id: id.into(), pos }
    }
}

/// Left strand continued by right strand, `pos_right = pos_left + winding (mod 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "(String, String, Winding)", into = "(String, String, Winding)")]
pub struct Match {
    pub left: String,
    pub right: String,
    pub winding: Winding,
}

impl Match {
    pub fn new(left: impl Into<String>, right: impl Into<String>, winding: Winding) -> Self {
        Match {
            left: left.into(),
            right: right.into(),
            winding,
        }
    }
}

impl From<(String, String, Winding)> for Match {
    fn from((left, right, winding): (String, String, Winding)) -> Self {
        Match { left, right, winding }
    }
}

impl From<Match> for (String, String, Winding) {
    fn from(m: Match) -> Self {
        (m.left, m.right, m.winding)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Boundary {
    pub matches: Vec<Match>,
    #[serde(default)]
    pub births: Vec<(String, String)>,
    #[serde(default)]
    pub deaths: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Portrait {
    pub sectors: Vec<Vec<Strand>>,
    pub boundaries: Vec<Boundary>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    L,
    R,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::L => Side::R,
            Side::R => Side::L,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::L => "L",
            Side::R => "R",
        })
    }
}

impl FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Side> {
        match s {
            "L" | "l" => Ok(Side::L),
            "R" | "r" => Ok(Side::R),
            _ => Err(Error::InvalidParameter(format!("side must be L or R, got {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum VertexDescriptor {
    #[serde(rename = "I")]
    TypeI { n: u32, k: u32 },
    #[serde(rename = "II")]
    TypeII { r: u32, side: Side },
    #[serde(rename = "III")]
    TypeIII { r: u32, side: Side },
    #[serde(rename = "inessential")]
    Inessential { reason: String },
}

impl VertexDescriptor {
    pub fn is_essential(&self) -> bool {
        !matches!(self, VertexDescriptor::Inessential { .. })
    }

    /// The descriptor of the line-symmetric image.
    pub fn mirrored(&self) -> VertexDescriptor {
        match self {
            VertexDescriptor::TypeI { n, k } => VertexDescriptor::TypeI { n: *k, k: *n },
            VertexDescriptor::TypeII { r, side } => VertexDescriptor::TypeII {
                r: *r,
                side: side.flip(),
            },
            VertexDescriptor::TypeIII { r, side } => VertexDescriptor::TypeIII {
                r: *r,
                side: side.flip(),
            },
            other => other.clone(),
        }
    }
}

impl fmt::Display for VertexDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexDescriptor::TypeI { n, k } => write!(f, "I({n},{k})"),
            VertexDescriptor::TypeII { r, side } => write!(f, "II({r},{side})"),
            VertexDescriptor::TypeIII { r, side } => write!(f, "III({r},{side})"),
            VertexDescriptor::Inessential { reason } => write!(f, "inessential({reason})"),
        }
    }
}

/// Parses `I(n,k)`, `II(r,S)`, `III(r,S)` or `inessential(reason)`.
impl FromStr for VertexDescriptor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("cannot parse vertex descriptor {s:?}"));
        let s = s.trim();
        let open = s.find('(').ok_or_else(bad)?;
        let body = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let head = &s[..open];
        if head == "inessential" {
            return Ok(VertexDescriptor::Inessential {
                reason: body.to_string(),
            });
        }
        let (a, b) = body.split_once(',').ok_or_else(bad)?;
        let a: u32 = a.trim().parse().map_err(|_| bad())?;
        match head {
            "I" => {
                let k: u32 = b.trim().parse().map_err(|_| bad())?;
                if a + k == 0 {
                    return Err(Error::InvalidParameter("type I requires n + k >= 1".into()));
                }
                Ok(VertexDescriptor::TypeI { n: a, k })
            }
            "II" => Ok(VertexDescriptor::TypeII {
                r: a,
                side: b.trim().parse()?,
            }),
            "III" => Ok(VertexDescriptor::TypeIII {
                r: a,
                side: b.trim().parse()?,
            }),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    NoSectors,
    BoundaryCount,
    EmptySector,
    DuplicateId,
    DuplicatePosition,
    UnknownStrand,
    LeftStrandUsage,
    RightStrandUsage,
    WindingMismatch,
    WindingTooLarge,
    NonAdjacentBirth,
    NonAdjacentDeath,
    MixedBirthDeath,
    RepeatedCrossing,
    BirthDeathImbalance,
}

impl ViolationKind {
    pub fn label(self) -> &'static str {
        match self {
            ViolationKind::NoSectors => "no sectors",
            ViolationKind::BoundaryCount => "boundary count",
            ViolationKind::EmptySector => "empty sector",
            ViolationKind::DuplicateId => "duplicate strand id",
            ViolationKind::DuplicatePosition => "duplicate position",
            ViolationKind::UnknownStrand => "unknown strand",
            ViolationKind::LeftStrandUsage => "left strand not accounted exactly once",
            ViolationKind::RightStrandUsage => "right strand not accounted exactly once",
            ViolationKind::WindingMismatch => "winding mismatch",
            ViolationKind::WindingTooLarge => "winding too large",
            ViolationKind::NonAdjacentBirth => "non-adjacent birth",
            ViolationKind::NonAdjacentDeath => "non-adjacent death",
            ViolationKind::MixedBirthDeath => "births and deaths on one boundary",
            ViolationKind::RepeatedCrossing => "repeated crossing",
            ViolationKind::BirthDeathImbalance => "birth/death imbalance",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

impl Violation {
    fn new(kind: ViolationKind, detail: impl Into<String>) -> Self {
        Violation {
            kind,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind.label(), self.detail)
    }
}

/// Times `t` in `(0, 1)` at which `a + t*wa` and `b + t*wb` meet on the circle.
pub(crate) fn crossing_times(a: &FiberPos, wa: &Rational, b: &FiberPos, wb: &Rational) -> Vec<Rational> {
    let dw = wa - wb;
    if dw.is_zero() {
        return Vec::new();
    }
    let base = b.value() - a.value();
    let zero = Rational::zero();
    let one = Rational::one();
    (-3i64..=3)
        .filter_map(|m| {
            let t = (&base + Rational::integer(m)) / &dw;
            (t > zero && t < one).then_some(t)
        })
        .collect()
}

/// Orders a pair so that the ccw-open arc from the first to the second holds no strand of `sector`.
///
/// `None` when neither arc is empty. With exactly two strands both arcs are
/// empty and the shorter arc wins.
pub(crate) fn normalize_pair(sector: &[FiberPos], a: usize, b: usize) -> Option<(usize, usize)> {
    let empty = |lo: usize, hi: usize| {
        sector
            .iter()
            .enumerate()
            .all(|(i, p)| i == lo || i == hi || !open_arc(&sector[lo], &sector[hi], p))
    };
    match (empty(a, b), empty(b, a)) {
        (true, true) => {
            if ccw_distance(&sector[a], &sector[b]) <= ccw_distance(&sector[b], &sector[a]) {
                Some((a, b))
            } else {
                Some((b, a))
            }
        }
        (true, false) => Some((a, b)),
        (false, true) => Some((b, a)),
        (false, false) => None,
    }
}

fn open_arc(a: &FiberPos, b: &FiberPos, c: &FiberPos) -> bool {
    let to_b = ccw_distance(a, b);
    let to_c = ccw_distance(a, c);
    to_c.is_positive() && to_c < to_b
}

/// Index-based view of a valid portrait.
#[derive(Clone, Debug)]
pub struct CompiledPortrait {
    pub ids: Vec<Vec<String>>,
    pub pos: Vec<Vec<FiberPos>>,
    pub boundaries: Vec<CompiledBoundary>,
}

#[derive(Clone, Debug)]
pub struct CompiledBoundary {
    /// Left index to (right index, winding).
    pub fwd: Vec<Option<(usize, Winding)>>,
    /// Right index to (left index, winding).
    pub inv: Vec<Option<(usize, Winding)>>,
    /// Normalized (lower, upper) pairs in the right sector.
    pub births: Vec<(usize, usize)>,
    /// Normalized (lower, upper) pairs in the left sector.
    pub deaths: Vec<(usize, usize)>,
}

impl CompiledPortrait {
    pub fn sector_count(&self) -> usize {
        self.pos.len()
    }

    pub fn right_of(&self, b: usize) -> usize {
        (b + 1) % self.pos.len()
    }

    /// Crossing time of two matched left strands at boundary `b`, if they cross.
    pub fn crossing(&self, b: usize, x: usize, y: usize) -> Option<Rational> {
        let bd = &self.boundaries[b];
        let (_, wx) = bd.fwd[x].as_ref()?;
        let (_, wy) = bd.fwd[y].as_ref()?;
        crossing_times(&self.pos[b][x], wx, &self.pos[b][y], wy)
            .into_iter()
            .next()
    }
}

impl Portrait {
    pub fn new(sectors: Vec<Vec<Strand>>, boundaries: Vec<Boundary>) -> Self {
        Portrait { sectors, boundaries }
    }

    pub fn sector_sizes(&self) -> Vec<usize> {
        self.sectors.iter().map(Vec::len).collect()
    }

    pub fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        validate(self)
    }

    pub fn compile(&self) -> Result<CompiledPortrait> {
        self.validate().map_err(Error::InvalidPortrait)?;
        Ok(compile_unchecked(self))
    }

    pub fn from_json(s: &str) -> Result<Portrait> {
        let p: Portrait = serde_json::from_str(s)?;
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("portrait serializes")
    }

    /// The image under a line symmetry of the annulus: sector order reversed,
    /// windings negated, births and deaths exchanged, fiber positions kept.
    pub fn mirror(&self) -> Portrait {
        let m = self.sectors.len() as isize;
        let idx = |j: isize| j.rem_euclid(m) as usize;
        let sectors = (0..m).map(|j| self.sectors[idx(-j)].clone()).collect();
        let boundaries = (0..m)
            .map(|j| {
                let old = &self.boundaries[idx(-j - 1)];
                Boundary {
                    matches: old
                        .matches
                        .iter()
                        .map(|mt| Match::new(mt.right.clone(), mt.left.clone(), -&mt.winding))
                        .collect(),
                    births: old.deaths.clone(),
                    deaths: old.births.clone(),
                }
            })
            .collect();
        Portrait { sectors, boundaries }
    }

    /// Adds a strand at `pos` in every sector, matched around with winding 0.
    pub fn add_simple_circle(&self, pos: &FiberPos) -> Result<Portrait> {
        let c = self.compile()?;
        let conflict = |msg: String| Error::StrandConflict(msg);
        for (s, sector) in c.pos.iter().enumerate() {
            if sector.contains(pos) {
                return Err(conflict(format!("position {pos} is occupied in sector {s}")));
            }
        }
        for (b, bd) in c.boundaries.iter().enumerate() {
            let r = c.right_of(b);
            for &(lo, hi) in &bd.births {
                if open_arc(&c.pos[r][lo], &c.pos[r][hi], pos) {
                    return Err(conflict(format!("position {pos} splits a birth pair at boundary {b}")));
                }
            }
            for &(lo, hi) in &bd.deaths {
                if open_arc(&c.pos[b][lo], &c.pos[b][hi], pos) {
                    return Err(conflict(format!("position {pos} splits a death pair at boundary {b}")));
                }
            }
            for (x, f) in bd.fwd.iter().enumerate() {
                if let Some((_, w)) = f {
                    if !crossing_times(&c.pos[b][x], w, pos, &Rational::zero()).is_empty() {
                        return Err(conflict(format!(
                            "position {pos} is crossed by moving strand {} at boundary {b}",
                            c.ids[b][x]
                        )));
                    }
                }
            }
        }
        let mut n = 0;
        let id = loop {
            let cand = format!("c{n}");
            if self.sectors.iter().all(|s| s.iter().all(|t| t.id != cand)) {
                break cand;
            }
            n += 1;
        };
        let mut out = self.clone();
        for sector in out.sectors.iter_mut() {
            sector.push(Strand::new(id.clone(), pos.clone()));
            sector.sort_by(|a, b| a.pos.cmp(&b.pos));
        }
        for bd in out.boundaries.iter_mut() {
            bd.matches.push(Match::new(id.clone(), id.clone(), Rational::zero()));
        }
        Ok(out)
    }

    /// Rotates every fiber position by `by`.
    pub fn rotate_fiber(&self, by: &Rational) -> Portrait {
        let mut out = self.clone();
        for sector in out.sectors.iter_mut() {
            for s in sector.iter_mut() {
                s.pos = s.pos.shifted(by);
            }
        }
        out
    }

    /// Re-indexes sectors so that old sector `k` becomes sector 0.
    pub fn rotate_sectors(&self, k: usize) -> Portrait {
        let m = self.sectors.len();
        let mut out = self.clone();
        out.sectors.rotate_left(k % m.max(1));
        out.boundaries.rotate_left(k % m.max(1));
        out
    }

    /// Renames strands by their rank within each sector and sorts all lists.
    pub fn canonical(&self) -> Portrait {
        let m = self.sectors.len();
        let mut names: Vec<HashMap<&str, String>> = Vec::with_capacity(m);
        let mut sectors = Vec::with_capacity(m);
        for sector in &self.sectors {
            let mut sorted: Vec<&Strand> = sector.iter().collect();
            sorted.sort_by(|a, b| a.pos.cmp(&b.pos));
            let map: HashMap<&str, String> = sorted
                .iter()
                .enumerate()
                .map(|(i, s)| (s.id.as_str(), format!("s{i}")))
                .collect();
            sectors.push(
                sorted
                    .iter()
                    .map(|s| Strand::new(map[s.id.as_str()].clone(), s.pos.clone()))
                    .collect(),
            );
            names.push(map);
        }
        let rename = |s: usize, id: &str| {
            names
                .get(s)
                .and_then(|m| m.get(id))
                .cloned()
                .unwrap_or_else(|| id.to_string())
        };
        let boundaries = self
            .boundaries
            .iter()
            .enumerate()
            .map(|(b, bd)| {
                let r = (b + 1) % m.max(1);
                let mut matches: Vec<Match> = bd
                    .matches
                    .iter()
                    .map(|mt| Match::new(rename(b, &mt.left), rename(r, &mt.right), mt.winding.clone()))
                    .collect();
                matches.sort_by(|a, b| a.left.cmp(&b.left));
                let pairs = |v: &[(String, String)], s: usize| {
                    let mut out: Vec<(String, String)> = v
                        .iter()
                        .map(|(x, y)| {
                            let (x, y) = (rename(s, x), rename(s, y));
                            if x <= y {
                                (x, y)
                            } else {
                                (y, x)
                            }
                        })
                        .collect();
                    out.sort();
                    out
                };
                Boundary {
                    matches,
                    births: pairs(&bd.births, r),
                    deaths: pairs(&bd.deaths, b),
                }
            })
            .collect();
        Portrait { sectors, boundaries }
    }

    /// Equality after renaming strands, allowing any rotation of the sector indexing.
    pub fn same_up_to_relabeling(&self, other: &Portrait) -> bool {
        if self.sectors.len() != other.sectors.len() {
            return false;
        }
        let a = self.canonical();
        (0..other.sectors.len().max(1)).any(|k| other.rotate_sectors(k).canonical() == a)
    }
}

pub fn validate(p: &Portrait) -> std::result::Result<(), Vec<Violation>> {
    use ViolationKind as K;
    let mut v = Vec::new();
    let m = p.sectors.len();
    if m == 0 {
        v.push(Violation::new(K::NoSectors, "portrait has no sectors"));
        return Err(v);
    }
    if p.boundaries.len() != m {
        v.push(Violation::new(
            K::BoundaryCount,
            format!("{} boundaries for {m} sectors", p.boundaries.len()),
        ));
    }
    let mut lookup: Vec<HashMap<&str, usize>> = Vec::with_capacity(m);
    for (s, sector) in p.sectors.iter().enumerate() {
        if sector.is_empty() {
            v.push(Violation::new(K::EmptySector, format!("sector {s}")));
        }
        let mut ids = HashMap::new();
        let mut seen_pos = BTreeSet::new();
        for (i, st) in sector.iter().enumerate() {
            if ids.insert(st.id.as_str(), i).is_some() {
                v.push(Violation::new(K::DuplicateId, format!("{:?} in sector {s}", st.id)));
            }
            if !seen_pos.insert(&st.pos) {
                v.push(Violation::new(
                    K::DuplicatePosition,
                    format!("{} in sector {s}", st.pos),
                ));
            }
        }
        lookup.push(ids);
    }
    let mut births = 0usize;
    let mut deaths = 0usize;
    for (b, bd) in p.boundaries.iter().enumerate().take(m) {
        let r = (b + 1) % m;
        let (ls, rs) = (&p.sectors[b], &p.sectors[r]);
        let mut left_use = vec![0usize; ls.len()];
        let mut right_use = vec![0usize; rs.len()];
        let find = |v: &mut Vec<Violation>, s: usize, id: &str, role: &str| -> Option<usize> {
            let found = lookup[s].get(id).copied();
            if found.is_none() {
                v.push(Violation::new(
                    K::UnknownStrand,
                    format!("{role} {id:?} at boundary {b} not in sector {s}"),
                ));
            }
            found
        };
        let mut moving: Vec<(usize, Winding)> = Vec::new();
        for mt in &bd.matches {
            let l = find(&mut v, b, &mt.left, "left strand");
            let rr = find(&mut v, r, &mt.right, "right strand");
            if let Some(l) = l {
                left_use[l] += 1;
            }
            if let Some(rr) = rr {
                right_use[rr] += 1;
            }
            if mt.winding.abs() >= Rational::one() {
                v.push(Violation::new(
                    K::WindingTooLarge,
                    format!("{} -> {} at boundary {b} has winding {}", mt.left, mt.right, mt.winding),
                ));
            }
            if let (Some(l), Some(rr)) = (l, rr) {
                if ls[l].pos.shifted(&mt.winding) != rs[rr].pos {
                    v.push(Violation::new(
                        K::WindingMismatch,
                        format!(
                            "{} at {} plus {} is not {} at {} (boundary {b})",
                            mt.left, ls[l].pos, mt.winding, mt.right, rs[rr].pos
                        ),
                    ));
                }
                moving.push((l, mt.winding.clone()));
            }
        }
        let pair_check = |v: &mut Vec<Violation>,
                          pairs: &[(String, String)],
                          s: usize,
                          usage: &mut Vec<usize>,
                          kind: ViolationKind| {
            let positions: Vec<FiberPos> = p.sectors[s].iter().map(|t| t.pos.clone()).collect();
            for (x, y) in pairs {
                let xi = find(v, s, x, "paired strand");
                let yi = find(v, s, y, "paired strand");
                if let Some(xi) = xi {
                    usage[xi] += 1;
                }
                if let Some(yi) = yi {
                    usage[yi] += 1;
                }
                if let (Some(xi), Some(yi)) = (xi, yi) {
                    if xi == yi || normalize_pair(&positions, xi, yi).is_none() {
                        v.push(Violation::new(kind, format!("({x}, {y}) at boundary {b}")));
                    }
                }
            }
        };
        pair_check(&mut v, &bd.births, r, &mut right_use, K::NonAdjacentBirth);
        pair_check(&mut v, &bd.deaths, b, &mut left_use, K::NonAdjacentDeath);
        for (i, c) in left_use.iter().enumerate() {
            if *c != 1 {
                v.push(Violation::new(
                    K::LeftStrandUsage,
                    format!("{:?} used {c} times at boundary {b}", ls[i].id),
                ));
            }
        }
        for (i, c) in right_use.iter().enumerate() {
            if *c != 1 {
                v.push(Violation::new(
                    K::RightStrandUsage,
                    format!("{:?} used {c} times at boundary {b}", rs[i].id),
                ));
            }
        }
        if !bd.births.is_empty() && !bd.deaths.is_empty() {
            v.push(Violation::new(K::MixedBirthDeath, format!("boundary {b}")));
        }
        for (i, (x, wx)) in moving.iter().enumerate() {
            for (y, wy) in &moving[i + 1..] {
                let n = crossing_times(&ls[*x].pos, wx, &ls[*y].pos, wy).len();
                if n > 1 {
                    v.push(Violation::new(
                        K::RepeatedCrossing,
                        format!("{} and {} cross {n} times at boundary {b}", ls[*x].id, ls[*y].id),
                    ));
                }
            }
        }
        births += bd.births.len();
        deaths += bd.deaths.len();
    }
    if births != deaths {
        v.push(Violation::new(
            K::BirthDeathImbalance,
            format!("{births} births, {deaths} deaths"),
        ));
    }
    if v.is_empty() {
        Ok(())
    } else {
        Err(v)
    }
}

fn compile_unchecked(p: &Portrait) -> CompiledPortrait {
    let m = p.sectors.len();
    let ids: Vec<Vec<String>> = p
        .sectors
        .iter()
        .map(|s| s.iter().map(|t| t.id.clone()).collect())
        .collect();
    let pos: Vec<Vec<FiberPos>> = p
        .sectors
        .iter()
        .map(|s| s.iter().map(|t| t.pos.clone()).collect())
        .collect();
    let index: Vec<BTreeMap<&str, usize>> = ids
        .iter()
        .map(|s| s.iter().enumerate().map(|(i, id)| (id.as_str(), i)).collect())
        .collect();
    let boundaries = p
        .boundaries
        .iter()
        .enumerate()
        .map(|(b, bd)| {
            let r = (b + 1) % m;
            let mut fwd = vec![None; pos[b].len()];
            let mut inv = vec![None; pos[r].len()];
            for mt in &bd.matches {
                let l = index[b][mt.left.as_str()];
                let rr = index[r][mt.right.as_str()];
                fwd[l] = Some((rr, mt.winding.clone()));
                inv[rr] = Some((l, mt.winding.clone()));
            }
            let pairs = |v: &[(String, String)], s: usize| -> Vec<(usize, usize)> {
                v.iter()
                    .map(|(x, y)| {
                        normalize_pair(&pos[s], index[s][x.as_str()], index[s][y.as_str()]).expect("validated")
                    })
                    .collect()
            };
            CompiledBoundary {
                fwd,
                inv,
                births: pairs(&bd.births, r),
                deaths: pairs(&bd.deaths, b),
            }
        })
        .collect();
    CompiledPortrait { ids, pos, boundaries }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn fp(s: &str) -> FiberPos {
        FiberPos::from(q(s))
    }

    #[test]
    fn generators_validate() {
        for n in 0..=4 {
            for k in 0..=4 {
                if n + k > 0 {
                    type_i(n, k).unwrap().validate().unwrap();
                }
            }
        }
        for r in 0..=4 {
            for side in [Side::L, Side::R] {
                type_ii(r, side).validate().unwrap();
                type_iii(r, side).validate().unwrap();
            }
        }
        for r in 1..=4 {
            whitney(r).unwrap().validate().unwrap();
        }
    }

    #[test]
    fn empty_sector_is_reported() {
        let mut p = type_i(2, 0).unwrap();
        p.sectors[0].clear();
        let v = p.validate().unwrap_err();
        assert!(v.iter().any(|x| x.kind == ViolationKind::EmptySector), "{v:?}");
        assert!(v.len() > 1, "all violations, not just the first");
    }

    #[test]
    fn non_adjacent_birth_is_reported() {
        let mut p = type_i(2, 0).unwrap();
        // a+ lies on one arc between a- and s1, s2 on the other.
        p.boundaries[0].births = vec![("a-".into(), "s1".into())];
        let v = p.validate().unwrap_err();
        assert!(v.iter().any(|x| x.kind == ViolationKind::NonAdjacentBirth), "{v:?}");
        assert_eq!(
            v.iter()
                .find(|x| x.kind == ViolationKind::NonAdjacentBirth)
                .unwrap()
                .kind
                .label(),
            "non-adjacent birth"
        );
    }

    #[test]
    fn winding_mismatch_is_reported() {
        let mut p = type_i(1, 0).unwrap();
        p.boundaries[0].matches[0].winding = q("1/7");
        let v = p.validate().unwrap_err();
        assert!(v.iter().any(|x| x.kind == ViolationKind::WindingMismatch));
    }

    #[test]
    fn sector_sizes_of_generators() {
        assert_eq!(type_i(2, 0).unwrap().sector_sizes(), vec![2, 4, 6, 4]);
        assert_eq!(type_ii(0, Side::R).sector_sizes(), vec![1, 3]);
        assert_eq!(type_ii(1, Side::R).sector_sizes(), vec![2, 4]);
        assert_eq!(type_iii(0, Side::R).sector_sizes(), vec![1, 3, 3, 3]);
        assert_eq!(whitney(1).unwrap().sector_sizes(), vec![1, 3, 3]);
        assert!(type_i(0, 0).is_err());
        assert!(whitney(0).is_err());
    }

    #[test]
    fn mirror_is_an_involution() {
        let p = type_i(2, 1).unwrap();
        assert_eq!(p.mirror().mirror(), p);
        let p = type_iii(2, Side::R);
        assert_eq!(p.mirror().mirror(), p);
        p.mirror().validate().unwrap();
    }

    #[test]
    fn left_side_is_mirror_of_right() {
        for r in 0..=4 {
            assert!(type_ii(r, Side::L).same_up_to_relabeling(&type_ii(r, Side::R).mirror()));
            assert!(type_iii(r, Side::L).same_up_to_relabeling(&type_iii(r, Side::R).mirror()));
        }
    }

    #[test]
    fn whitney_is_line_symmetric() {
        for r in 1..=3 {
            let w = whitney(r).unwrap();
            assert!(w.mirror().same_up_to_relabeling(&w));
        }
        assert!(!type_i(2, 0)
            .unwrap()
            .mirror()
            .same_up_to_relabeling(&type_i(2, 0).unwrap()));
    }

    #[test]
    fn add_simple_circle_errors() {
        let p = type_ii(0, Side::R);
        let occupied = p.sectors[0][0].pos.clone();
        assert!(matches!(p.add_simple_circle(&occupied), Err(Error::StrandConflict(_))));
        let q1 = type_ii(0, Side::R).add_simple_circle(&fp("1/2")).unwrap();
        q1.validate().unwrap();
        assert_eq!(q1.sector_sizes(), vec![2, 4]);
        // Inside the pleat region the pair and moving strand forbid insertion.
        let inside = fp("1/48");
        assert!(p.add_simple_circle(&inside).is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = type_iii(1, Side::R);
        let back = Portrait::from_json(&p.to_json()).unwrap();
        assert_eq!(back, p);
        let raw = r#"{"sectors":[[{"id":"a","pos":"1/4"}]],"boundaries":[{"matches":[["a","a","0"]],"births":[],"deaths":[]}]}"#;
        let one = Portrait::from_json(raw).unwrap();
        one.validate().unwrap();
        assert!(Portrait::from_json(r#"{"sectors":[[{"id":"a","pos":"1/0"}]],"boundaries":[]}"#).is_err());
    }

    #[test]
    fn descriptor_text_round_trip() {
        for d in [
            VertexDescriptor::TypeI { n: 3, k: 1 },
            VertexDescriptor::TypeII { r: 2, side: Side::L },
            VertexDescriptor::TypeIII { r: 0, side: Side::R },
            VertexDescriptor::Inessential {
                reason: "line-symmetric".into(),
            },
        ] {
            assert_eq!(d.to_string().parse::<VertexDescriptor>().unwrap(), d);
        }
        assert!("I(0,0)".parse::<VertexDescriptor>().is_err());
    }

    #[test]
    fn crossing_times_basic() {
        let t = crossing_times(&fp("3/40"), &q("-1/20"), &fp("1/40"), &q("1/20"));
        assert_eq!(t, vec![q("1/2")]);
        assert!(crossing_times(&fp("0"), &q("1/10"), &fp("1/2"), &q("1/10")).is_empty());
    }
}

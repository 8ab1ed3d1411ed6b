//! Exact expectation of the index of a random partial section.
//!
//! One sheet is chosen uniformly in every sector. Across a boundary the
//! chosen sheets either continue each other (a matched pair, or two strands
//! meeting at a crossing point of that boundary) or the section jumps, and a
//! jump is extended along the fiber counterclockwise or clockwise with
//! probability 1/2 each. The lifted displacement of a jump extended
//! counterclockwise is measured in the sector where the strands are at rest:
//! the right sector if the boundary creates strands, the left one otherwise.
//! Extending clockwise subtracts one full turn.
//!
//! `K` and `M` in [`ConfigurationReport`] follow the convention
//! `K = deg_ccw`, `M = J - K`. With moving strands `K` may exceed `J`, so
//! they are bookkeeping values rather than counts.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::portrait::{classify, CompiledPortrait, Portrait, VertexDescriptor};
use crate::rational::{ccw_distance, Rational};
use crate::weights::weight_of;

pub const DEFAULT_CAP: u128 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extension {
    Ccw,
    Cw,
}

/// One chosen strand id per sector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionAssignment {
    pub chosen: Vec<String>,
}

impl SectionAssignment {
    pub fn new<S: Into<String>>(ids: impl IntoIterator<Item = S>) -> Self {
        SectionAssignment {
            chosen: ids.into_iter().map(Into::into).collect(),
        }
    }

    pub fn indices(&self, c: &CompiledPortrait) -> Result<Vec<usize>> {
        if self.chosen.len() != c.sector_count() {
            return Err(Error::InvalidParameter(format!(
                "assignment has {} entries for {} sectors",
                self.chosen.len(),
                c.sector_count()
            )));
        }
        self.chosen
            .iter()
            .enumerate()
            .map(|(s, id)| {
                c.ids[s]
                    .iter()
                    .position(|x| x == id)
                    .ok_or_else(|| Error::InvalidParameter(format!("strand {id:?} is not in sector {s}")))
            })
            .collect()
    }

    fn from_indices(c: &CompiledPortrait, idx: &[usize]) -> Self {
        SectionAssignment {
            chosen: idx.iter().enumerate().map(|(s, &i)| c.ids[s][i].clone()).collect(),
        }
    }
}

/// Extension flags keyed by boundary index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtensionChoice {
    pub flags: BTreeMap<usize, Extension>,
}

impl ExtensionChoice {
    pub fn uniform(boundaries: impl IntoIterator<Item = usize>, e: Extension) -> Self {
        ExtensionChoice {
            flags: boundaries.into_iter().map(|b| (b, e)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigurationReport {
    pub degree: i64,
    pub jump_count: usize,
    /// `M = J - K`.
    pub forward_jumps: i64,
    /// `K = deg_ccw`.
    pub backward_jumps: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Step {
    Continuous(Rational),
    Jump(Rational),
}

/// Per-boundary contribution tables, indexed `[left][right]`.
struct Tables {
    sizes: Vec<usize>,
    steps: Vec<Vec<Vec<Step>>>,
}

fn step(c: &CompiledPortrait, b: usize, l: usize, r: usize) -> Step {
    let bd = &c.boundaries[b];
    let rs = c.right_of(b);
    if let Some((img, w)) = &bd.fwd[l] {
        if *img == r {
            return Step::Continuous(w.clone());
        }
        if let Some((pre, wy)) = &bd.inv[r] {
            if let Some(t) = c.crossing(b, l, *pre) {
                let one = Rational::one();
                return Step::Continuous(&t * w + (&one - &t) * wy);
            }
        }
    }
    if !bd.births.is_empty() {
        let (img, w) = bd.fwd[l].as_ref().expect("validated: no deaths beside births");
        Step::Jump(w + ccw_distance(&c.pos[rs][*img], &c.pos[rs][r]))
    } else {
        let (pre, w) = bd.inv[r]
            .as_ref()
            .expect("validated: right strands matched without births");
        Step::Jump(ccw_distance(&c.pos[b][l], &c.pos[b][*pre]) + w)
    }
}

impl Tables {
    fn new(c: &CompiledPortrait) -> Self {
        let m = c.sector_count();
        let sizes: Vec<usize> = c.pos.iter().map(Vec::len).collect();
        let steps = (0..m)
            .map(|b| {
                let r = c.right_of(b);
                (0..sizes[b])
                    .map(|l| (0..sizes[r]).map(|rr| step(c, b, l, rr)).collect())
                    .collect()
            })
            .collect();
        Tables { sizes, steps }
    }

    fn at(&self, b: usize, a: &[usize]) -> &Step {
        let m = self.sizes.len();
        &self.steps[b][a[b]][a[(b + 1) % m]]
    }

    fn assignments(&self) -> u128 {
        self.sizes.iter().fold(1u128, |acc, &n| acc.saturating_mul(n as u128))
    }

    /// Exact number of (assignment, flags) configurations: trace of the product
    /// of transfer matrices with entry 2 at jumps and 1 otherwise.
    fn configurations(&self) -> u128 {
        let m = self.sizes.len();
        let mut total = 0u128;
        for start in 0..self.sizes[0] {
            let mut row = vec![0u128; self.sizes[0]];
            row[start] = 1;
            for b in 0..m {
                let r = (b + 1) % m;
                let mut next = vec![0u128; self.sizes[r]];
                for (l, &v) in row.iter().enumerate() {
                    if v == 0 {
                        continue;
                    }
                    for (rr, slot) in next.iter_mut().enumerate() {
                        let w = match &self.steps[b][l][rr] {
                            Step::Continuous(_) => 1,
                            Step::Jump(_) => 2,
                        };
                        *slot = slot.saturating_add(v.saturating_mul(w));
                    }
                }
                row = next;
            }
            total = total.saturating_add(row[start]);
        }
        total
    }

    /// Common denominator of every step value, for integer accumulation.
    fn denominator(&self) -> BigInt {
        let mut d = BigInt::one();
        for b in &self.steps {
            for row in b {
                for s in row {
                    let v = match s {
                        Step::Continuous(v) | Step::Jump(v) => v,
                    };
                    d = d.lcm(v.denom());
                }
            }
        }
        d
    }
}

/// Calls `f` on every assignment in mixed-radix order.
fn for_each_assignment(sizes: &[usize], mut f: impl FnMut(&[usize]) -> Result<()>) -> Result<()> {
    if sizes.contains(&0) {
        return Ok(());
    }
    let mut cur = vec![0usize; sizes.len()];
    loop {
        f(&cur)?;
        let mut i = 0;
        loop {
            if i == cur.len() {
                return Ok(());
            }
            cur[i] += 1;
            if cur[i] < sizes[i] {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

fn scaled(v: &Rational, den: &BigInt) -> i128 {
    (v.as_big() * den)
        .to_integer()
        .to_i128()
        .expect("scaled step fits in i128")
}

fn to_integer(v: Rational) -> Result<i64> {
    if !v.is_integer() {
        return Err(Error::NonIntegralDegree(v.to_string()));
    }
    v.to_i64().ok_or_else(|| Error::NonIntegralDegree(v.to_string()))
}

/// Whether the chosen sheets fail to continue each other across boundary `b`.
///
/// Two strands that meet at a crossing point of the boundary continue each
/// other through that point and are not a jump.
pub fn is_jump(p: &Portrait, a: &SectionAssignment, b: usize) -> Result<bool> {
    let c = p.compile()?;
    let idx = a.indices(&c)?;
    if b >= c.sector_count() {
        return Err(Error::InvalidParameter(format!("boundary {b} out of range")));
    }
    Ok(matches!(step(&c, b, idx[b], idx[c.right_of(b)]), Step::Jump(_)))
}

/// Boundaries at which `a` jumps.
pub fn jump_boundaries(p: &Portrait, a: &SectionAssignment) -> Result<Vec<usize>> {
    let c = p.compile()?;
    let idx = a.indices(&c)?;
    Ok(jump_boundaries_compiled(&c, &idx))
}

/// [`jump_boundaries`] on a compiled portrait with strand indices.
pub fn jump_boundaries_compiled(c: &CompiledPortrait, idx: &[usize]) -> Vec<usize> {
    (0..c.sector_count())
        .filter(|&b| matches!(step(c, b, idx[b], idx[c.right_of(b)]), Step::Jump(_)))
        .collect()
}

pub fn configuration_degree(p: &Portrait, a: &SectionAssignment, ext: &ExtensionChoice) -> Result<ConfigurationReport> {
    let c = p.compile()?;
    let idx = a.indices(&c)?;
    configuration_degree_compiled(&c, &idx, ext)
}

/// [`configuration_degree`] on a compiled portrait with strand indices.
pub fn configuration_degree_compiled(
    c: &CompiledPortrait,
    idx: &[usize],
    ext: &ExtensionChoice,
) -> Result<ConfigurationReport> {
    let m = c.sector_count();
    let mut total = Rational::zero();
    let mut ccw = Rational::zero();
    let mut jumps = Vec::new();
    for b in 0..m {
        match step(c, b, idx[b], idx[c.right_of(b)]) {
            Step::Continuous(v) => {
                total += &v;
                ccw += &v;
            }
            Step::Jump(v) => {
                jumps.push(b);
                ccw += &v;
                total += &v;
                if ext.flags.get(&b) == Some(&Extension::Cw) {
                    total -= &Rational::one();
                }
            }
        }
    }
    let keys: Vec<usize> = ext.flags.keys().copied().collect();
    if jumps != keys {
        return Err(Error::ExtensionMismatch(format!(
            "jumps at {jumps:?}, flags at {keys:?}"
        )));
    }
    let degree = to_integer(total)?;
    let k = to_integer(ccw)?;
    Ok(ConfigurationReport {
        degree,
        jump_count: jumps.len(),
        forward_jumps: jumps.len() as i64 - k,
        backward_jumps: k,
    })
}

/// Degree with every jump extended counterclockwise.
pub fn deg_ccw(p: &Portrait, a: &SectionAssignment) -> Result<i64> {
    let jumps = jump_boundaries(p, a)?;
    Ok(configuration_degree(p, a, &ExtensionChoice::uniform(jumps, Extension::Ccw))?.degree)
}

pub fn assignment_count(p: &Portrait) -> Result<u128> {
    Ok(Tables::new(&p.compile()?).assignments())
}

pub fn configuration_count(p: &Portrait) -> Result<u128> {
    Ok(Tables::new(&p.compile()?).configurations())
}

pub fn expected_index(p: &Portrait) -> Result<Rational> {
    expected_index_with_cap(p, DEFAULT_CAP)
}

/// Average of the configuration degree over every assignment and every
/// extension choice, enumerated one configuration at a time.
pub fn expected_index_with_cap(p: &Portrait, cap: u128) -> Result<Rational> {
    let c = p.compile()?;
    let t = Tables::new(&c);
    let configurations = t.configurations();
    if configurations > cap {
        return Err(Error::EnumerationTooLarge { configurations, cap });
    }
    let den = t.denominator();
    let den_i = den
        .to_i128()
        .ok_or_else(|| Error::InvalidParameter("position denominators too large".into()))?;
    let m = t.sizes.len();
    let mut sum: i128 = 0;
    let mut count: u128 = 0;
    let mut jumps: Vec<i128> = Vec::with_capacity(m);
    for_each_assignment(&t.sizes, |a| {
        jumps.clear();
        let mut fixed: i128 = 0;
        for b in 0..m {
            match t.at(b, a) {
                Step::Continuous(v) => fixed += scaled(v, &den),
                Step::Jump(v) => jumps.push(scaled(v, &den)),
            }
        }
        // Each assignment has probability 1/#assignments, split evenly over its 2^J flag choices.
        let weight: i128 = 1 << (m - jumps.len());
        for mask in 0u32..(1u32 << jumps.len()) {
            let mut deg = fixed;
            for (j, v) in jumps.iter().enumerate() {
                deg += v;
                if mask >> j & 1 == 1 {
                    deg -= den_i;
                }
            }
            if deg % den_i != 0 {
                return Err(Error::NonIntegralDegree(
                    Rational::from_bigints(deg.into(), den.clone())?.to_string(),
                ));
            }
            sum += weight * (deg / den_i);
            count += 1;
        }
        Ok(())
    })?;
    debug_assert_eq!(count, configurations);
    Rational::from_bigints(sum.into(), BigInt::from(t.assignments()) * (BigInt::one() << m))
}

/// Average over assignments of `deg_ccw - J/2`.
pub fn expected_index_shortcut(p: &Portrait) -> Result<Rational> {
    expected_index_shortcut_with_cap(p, DEFAULT_CAP)
}

pub fn expected_index_shortcut_with_cap(p: &Portrait, cap: u128) -> Result<Rational> {
    let c = p.compile()?;
    let t = Tables::new(&c);
    let assignments = t.assignments();
    if assignments > cap {
        return Err(Error::EnumerationTooLarge {
            configurations: assignments,
            cap,
        });
    }
    let den = t.denominator();
    let den_i = den
        .to_i128()
        .ok_or_else(|| Error::InvalidParameter("position denominators too large".into()))?;
    let m = t.sizes.len();
    let mut twice: i128 = 0;
    for_each_assignment(&t.sizes, |a| {
        let mut deg: i128 = 0;
        let mut jumps: i128 = 0;
        for b in 0..m {
            match t.at(b, a) {
                Step::Continuous(v) => deg += scaled(v, &den),
                Step::Jump(v) => {
                    deg += scaled(v, &den);
                    jumps += 1;
                }
            }
        }
        if deg % den_i != 0 {
            return Err(Error::NonIntegralDegree(
                Rational::from_bigints(deg.into(), den.clone())?.to_string(),
            ));
        }
        twice += 2 * (deg / den_i) - jumps;
        Ok(())
    })?;
    Rational::from_bigints(twice.into(), BigInt::from(assignments) * 2)
}

/// Every assignment with its jump count and counterclockwise degree.
pub fn assignments_with_degrees(p: &Portrait) -> Result<Vec<(SectionAssignment, usize, i64)>> {
    let c = p.compile()?;
    let t = Tables::new(&c);
    let mut out = Vec::new();
    for_each_assignment(&t.sizes, |a| {
        let mut v = Rational::zero();
        let mut j = 0;
        for b in 0..t.sizes.len() {
            match t.at(b, a) {
                Step::Continuous(x) => v += x,
                Step::Jump(x) => {
                    v += x;
                    j += 1;
                }
            }
        }
        out.push((SectionAssignment::from_indices(&c, a), j, to_integer(v)?));
        Ok(())
    })?;
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub descriptor: VertexDescriptor,
    pub sector_sizes: Vec<usize>,
    pub assignments: u128,
    pub configurations: u128,
    pub expected: Rational,
    pub shortcut: Rational,
    pub weight: Rational,
}

impl OracleReport {
    pub fn agrees(&self) -> bool {
        self.expected == self.shortcut && self.expected == self.weight
    }
}

pub fn oracle_report(p: &Portrait) -> Result<OracleReport> {
    let descriptor = classify(p)?;
    Ok(OracleReport {
        weight: weight_of(&descriptor)?,
        descriptor,
        sector_sizes: p.sector_sizes(),
        assignments: assignment_count(p)?,
        configurations: configuration_count(p)?,
        expected: expected_index(p)?,
        shortcut: expected_index_shortcut(p)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::portrait::{type_i, type_ii, type_iii, whitney, Side};
    use crate::weights::{weight_ff, weight_p};

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn continuous_assignment_has_no_jumps() {
        let p = type_i(1, 0).unwrap();
        let a = SectionAssignment::new(["s1", "s1", "s1", "s1"]);
        for b in 0..4 {
            assert!(!is_jump(&p, &a, b).unwrap());
        }
        let p2 = type_i(2, 0).unwrap();
        let a2 = SectionAssignment::new(["s1", "s1", "s1", "s1"]);
        let r = configuration_degree(&p2, &a2, &ExtensionChoice::default()).unwrap();
        assert_eq!((r.degree, r.jump_count), (0, 0));
        assert_eq!(deg_ccw(&p2, &a2).unwrap(), 0);
    }

    #[test]
    fn pleat_jumps() {
        let p = type_ii(0, Side::R);
        // The small-sector strand above the pleat sheet is not its continuation.
        let a = SectionAssignment::new(["t", "p+"]);
        assert!(is_jump(&p, &a, 0).unwrap());
        // The death boundary forces a jump for a dying strand.
        assert!(is_jump(&p, &a, 1).unwrap());
        let both_cw = ExtensionChoice::uniform([0, 1], Extension::Cw);
        let r = configuration_degree(&p, &a, &both_cw).unwrap();
        assert_eq!(r.degree, 0);
        assert_eq!(r.jump_count, 2);
        let l = configuration_degree(&type_ii(0, Side::L), &a, &both_cw).unwrap();
        assert_eq!(l.degree, -2);
        let mismatch = ExtensionChoice::uniform([0], Extension::Cw);
        assert!(matches!(
            configuration_degree(&p, &a, &mismatch),
            Err(Error::ExtensionMismatch(_))
        ));
    }

    #[test]
    fn flips_shift_degree_by_jump_count() {
        let p = type_iii(1, Side::R);
        for (a, j, k) in assignments_with_degrees(&p).unwrap() {
            let jumps = jump_boundaries(&p, &a).unwrap();
            assert_eq!(jumps.len(), j);
            let ccw = configuration_degree(&p, &a, &ExtensionChoice::uniform(jumps.clone(), Extension::Ccw)).unwrap();
            let cw = configuration_degree(&p, &a, &ExtensionChoice::uniform(jumps.clone(), Extension::Cw)).unwrap();
            assert_eq!(ccw.degree, k);
            assert_eq!(ccw.degree - cw.degree, j as i64);
            assert_eq!(ccw.forward_jumps + ccw.backward_jumps, j as i64);
            if let Some(&first) = jumps.first() {
                let mut one = ExtensionChoice::uniform(jumps.clone(), Extension::Ccw);
                one.flags.insert(first, Extension::Cw);
                assert_eq!(configuration_degree(&p, &a, &one).unwrap().degree, k - 1);
            }
        }
    }

    #[test]
    fn three_downward_jumps_on_type_i() {
        let p = type_i(2, 0).unwrap();
        let all = assignments_with_degrees(&p).unwrap();
        let three: Vec<i64> = all.iter().filter(|(_, j, _)| *j == 3).map(|(_, _, k)| *k).collect();
        assert_eq!(three.len(), 80);
        // Static strands: every jump adds a value strictly inside (0, 1).
        assert_eq!(three.iter().max(), Some(&2));
        assert!(all.iter().all(|(_, j, k)| *k >= 0 && (*j == 0 || *k < *j as i64)));
    }

    #[test]
    fn anchored_values() {
        assert_eq!(expected_index(&type_i(2, 0).unwrap()).unwrap(), q("1/6"));
        assert_eq!(expected_index(&type_i(1, 0).unwrap()).unwrap(), q("4/15"));
        assert_eq!(expected_index(&type_ii(0, Side::R)).unwrap(), q("2/3"));
        assert_eq!(expected_index(&type_iii(0, Side::R)).unwrap(), q("2/3"));
        assert_eq!(expected_index(&whitney(2).unwrap()).unwrap(), q("0"));
        assert_eq!(expected_index_shortcut(&type_ii(1, Side::R)).unwrap(), q("1/4"));
        assert_eq!(expected_index_shortcut(&type_iii(1, Side::R)).unwrap(), q("1/4"));
    }

    #[test]
    fn upgrading_pleat_changes_value() {
        let p = type_ii(0, Side::R);
        let up = p.add_simple_circle(&crate::rational::frac(&q("1/2"))).unwrap();
        assert_eq!(expected_index(&p).unwrap(), q("2/3"));
        assert_eq!(expected_index(&up).unwrap(), q("1/4"));
    }

    #[test]
    fn oracle_matches_closed_forms_small() {
        for s in 1..=4u32 {
            for n in 0..=s {
                let p = type_i(n, s - n).unwrap();
                assert_eq!(
                    expected_index(&p).unwrap(),
                    weight_ff(n, s - n).unwrap(),
                    "I({n},{})",
                    s - n
                );
            }
        }
        for r in 0..=3 {
            for side in [Side::L, Side::R] {
                assert_eq!(expected_index(&type_ii(r, side)).unwrap(), weight_p(r, side));
                assert_eq!(expected_index(&type_iii(r, side)).unwrap(), weight_p(r, side));
            }
        }
    }

    #[test]
    fn assignment_count_of_pleat() {
        for r in 0..=5u32 {
            let n = ((r + 1) * (r + 3)) as u128;
            assert_eq!(assignment_count(&type_ii(r, Side::R)).unwrap(), n);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let p = type_i(3, 2).unwrap();
        assert!(matches!(
            expected_index_with_cap(&p, 10),
            Err(Error::EnumerationTooLarge { .. })
        ));
    }

    #[test]
    fn configuration_count_matches_enumeration() {
        let p = type_iii(1, Side::L);
        let direct: u128 = assignments_with_degrees(&p)
            .unwrap()
            .iter()
            .map(|(_, j, _)| 1u128 << j)
            .sum();
        assert_eq!(configuration_count(&p).unwrap(), direct);
    }

    #[test]
    fn report_agrees() {
        let r = oracle_report(&type_iii(2, Side::L)).unwrap();
        assert!(r.agrees());
        assert_eq!(r.descriptor, VertexDescriptor::TypeIII { r: 2, side: Side::L });
    }
}

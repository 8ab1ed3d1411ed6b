//! Constraint families on an arbitrary local formula and the uniqueness solver.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linsolve::{solve_exact, Equation, LinearSystem, Solution};
use crate::portrait::Side;
use crate::rational::Rational;
use crate::weights::{weight_ff, weight_fs, weight_p};

/// A value of the unknown local formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Unknown {
    Ff(u32, u32),
    P(u32, Side),
    Fs(u32, Side),
}

impl Unknown {
    pub fn closed_form(&self) -> Rational {
        match *self {
            Unknown::Ff(n, k) => weight_ff(n, k).expect("unknowns exclude (0,0)"),
            Unknown::P(r, s) => weight_p(r, s),
            Unknown::Fs(r, s) => weight_fs(r, s),
        }
    }

    fn within(&self, cutoff: u32) -> bool {
        match *self {
            Unknown::Ff(n, k) => n + k >= 1 && n + k <= cutoff,
            Unknown::P(r, _) | Unknown::Fs(r, _) => r <= cutoff,
        }
    }
}

impl fmt::Display for Unknown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Unknown::Ff(n, k) => write!(f, "F_ff({n},{k})"),
            Unknown::P(r, s) => write!(f, "F_p({r},{s})"),
            Unknown::Fs(r, s) => write!(f, "F_fs({r},{s})"),
        }
    }
}

/// All unknowns with `n + k <= cutoff` and `r <= cutoff`.
pub fn unknowns(cutoff: u32) -> Vec<Unknown> {
    let mut out = Vec::new();
    for s in 1..=cutoff {
        for n in 0..=s {
            out.push(Unknown::Ff(n, s - n));
        }
    }
    for r in 0..=cutoff {
        for side in [Side::R, Side::L] {
            out.push(Unknown::P(r, side));
        }
    }
    for r in 0..=cutoff {
        for side in [Side::R, Side::L] {
            out.push(Unknown::Fs(r, side));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Antisym,
    Triple,
    PleatRec,
    FsReduce,
    Curled,
    Base0,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Antisym,
        Family::Triple,
        Family::PleatRec,
        Family::FsReduce,
        Family::Curled,
        Family::Base0,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Antisym => "ANTISYM",
            Family::Triple => "TRIPLE",
            Family::PleatRec => "PLEAT_REC",
            Family::FsReduce => "FS_REDUCE",
            Family::Curled => "CURLED",
            Family::Base0 => "BASE0",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown constraint family {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Anchor {
    /// `F_ff(1,0) = 4/15`.
    Anchor1,
    /// `F_fs(0,R) = 2/3`, off by default.
    AnchorFs0,
}

impl Anchor {
    pub const ALL: [Anchor; 2] = [Anchor::Anchor1, Anchor::AnchorFs0];

    pub fn name(self) -> &'static str {
        match self {
            Anchor::Anchor1 => "ANCHOR1",
            Anchor::AnchorFs0 => "ANCHOR_FS0",
        }
    }
}

impl fmt::Display for Anchor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Anchor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Anchor> {
        Anchor::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown anchor {s:?}")))
    }
}

pub fn all_families() -> BTreeSet<Family> {
    Family::ALL.into_iter().collect()
}

pub fn default_anchors() -> BTreeSet<Anchor> {
    [Anchor::Anchor1].into_iter().collect()
}

fn int(n: i64) -> Rational {
    Rational::integer(n)
}

fn eq(tag: String, terms: &[(i64, Unknown)]) -> Equation<Unknown> {
    terms.iter().fold(Equation::new(tag), |e, (c, u)| e.term(int(*c), *u))
}

/// The corrected TRIPLE relation for three crossing pancakes with `a`, `b`, `c` sheets between them.
pub fn triple(a: u32, b: u32, c: u32) -> Equation<Unknown> {
    use Unknown::Ff;
    eq(
        format!("TRIPLE(a={a},b={b},c={c}) [corrected: inner triple reads F_ff(c,a+b), F_ff(a,b+c), F_ff(b,c+a)]"),
        &[
            (1, Ff(a + b + 2, c)),
            (1, Ff(b + c + 2, a)),
            (1, Ff(c + a + 2, b)),
            (1, Ff(c, a + b)),
            (1, Ff(a, b + c)),
            (1, Ff(b, c + a)),
        ],
    )
}

/// TRIPLE with the inner triple unswapped, `F_ff(a+b,c) + F_ff(b+c,a) + F_ff(c+a,b)`.
pub fn triple_unswapped(a: u32, b: u32, c: u32) -> Equation<Unknown> {
    use Unknown::Ff;
    eq(
        format!("TRIPLE(a={a},b={b},c={c}) unswapped inner triple"),
        &[
            (1, Ff(a + b + 2, c)),
            (1, Ff(b + c + 2, a)),
            (1, Ff(c + a + 2, b)),
            (1, Ff(a + b, c)),
            (1, Ff(b + c, a)),
            (1, Ff(c + a, b)),
        ],
    )
}

pub fn pleat_rec(n: u32) -> Equation<Unknown> {
    use Unknown::{Ff, P};
    eq(
        format!("PLEAT_REC(n={n})"),
        &[
            (1, P(n + 2, Side::R)),
            (-1, P(n, Side::R)),
            (1, Ff(n + 1, 0)),
            (-1, Ff(n, 1)),
        ],
    )
}

/// `2 F_ff(n,0) + 4 F_fs(n+1,L) = 0`.
pub fn fs_reduce(n: u32) -> Equation<Unknown> {
    use Unknown::{Ff, Fs};
    eq(
        format!("FS_REDUCE(n={n}) [sign-corrected: F_ff(n,0) in place of F_ff(0,n)]"),
        &[(2, Ff(n, 0)), (4, Fs(n + 1, Side::L))],
    )
}

/// `2 F_ff(0,n) + 4 F_fs(n+1,L) = 0`, the uncorrected sign.
pub fn fs_reduce_unflipped(n: u32) -> Equation<Unknown> {
    use Unknown::{Ff, Fs};
    eq(
        format!("FS_REDUCE(n={n}) uncorrected"),
        &[(2, Ff(0, n)), (4, Fs(n + 1, Side::L))],
    )
}

/// Curled pancake with a small pancake over one pleat.
pub fn curled_with_pancake() -> Equation<Unknown> {
    use Unknown::{Ff, P};
    eq(
        "CURLED(small pancake) [corrected: pleats on side R]".into(),
        &[(1, P(2, Side::R)), (1, P(4, Side::R)), (1, Ff(0, 1)), (2, Ff(2, 1))],
    )
}

pub fn curled_with_pancake_left() -> Equation<Unknown> {
    use Unknown::{Ff, P};
    eq(
        "CURLED(small pancake) pleats on side L".into(),
        &[(1, P(2, Side::L)), (1, P(4, Side::L)), (1, Ff(0, 1)), (2, Ff(2, 1))],
    )
}

/// `2 F_p(N,R) + F_ff(0,N-1) = 0`.
pub fn curled(n: u32) -> Equation<Unknown> {
    use Unknown::{Ff, P};
    eq(format!("CURLED(N={n})"), &[(2, P(n, Side::R)), (1, Ff(0, n - 1))])
}

/// Twice `2(n-k)/((n+k)(n+k+1)(n+k+2))`, a candidate type I weight the oracle rejects.
pub fn doubled_inner_weight(n: u32, k: u32) -> Result<Rational> {
    if n + k == 0 {
        return Err(Error::InvalidParameter("n + k must be positive".into()));
    }
    let (n, k) = (n as i64, k as i64);
    let s = n + k;
    Ok(Rational::new(2 * (n - k), s * (s + 1) * (s + 2)) * int(2))
}

fn antisym(a: Unknown, b: Unknown) -> Equation<Unknown> {
    eq(format!("ANTISYM {a} + {b}"), &[(1, a), (1, b)])
}

fn base0() -> Vec<Equation<Unknown>> {
    use Unknown::{Ff, Fs, P};
    vec![
        eq("BASE0 four_pancakes".into(), &[(12, Ff(2, 0))]).equals(int(2)),
        eq("BASE0 crossing_pancakes_A(1)".into(), &[(4, Fs(1, Side::R))]).equals(int(1)),
        eq(
            "BASE0 boy_plus_sections(1)".into(),
            &[(3, P(2, Side::R)), (3, Fs(2, Side::R)), (-3, Ff(1, 0))],
        ),
        eq(
            "BASE0 boy_plus_sections(2)".into(),
            &[(3, P(3, Side::R)), (3, Fs(3, Side::R)), (-3, Ff(2, 0))],
        ),
    ]
}

/// Instantiates the families within `cutoff`, dropping equations that mention unknowns beyond it.
///
/// Every kept equation is checked against the closed-form weights.
pub fn generate_constraints(
    cutoff: u32,
    families: &BTreeSet<Family>,
    anchors: &BTreeSet<Anchor>,
) -> Result<LinearSystem<Unknown>> {
    if cutoff < 4 {
        return Err(Error::InvalidParameter(format!(
            "cutoff must be at least 4, got {cutoff}"
        )));
    }
    let mut candidates: Vec<Equation<Unknown>> = Vec::new();
    for fam in families {
        match fam {
            Family::Antisym => {
                for s in 1..=cutoff {
                    for n in 0..=s / 2 {
                        if 2 * n != s {
                            candidates.push(antisym(Unknown::Ff(n, s - n), Unknown::Ff(s - n, n)));
                        } else {
                            candidates.push(eq(format!("ANTISYM F_ff({n},{n})"), &[(1, Unknown::Ff(n, n))]));
                        }
                    }
                }
                for r in 0..=cutoff {
                    candidates.push(antisym(Unknown::P(r, Side::R), Unknown::P(r, Side::L)));
                    candidates.push(antisym(Unknown::Fs(r, Side::R), Unknown::Fs(r, Side::L)));
                }
            }
            Family::Triple => {
                for m in 1..=cutoff.saturating_sub(2) {
                    for a in 0..=m {
                        for b in 0..=m - a {
                            candidates.push(triple(a, b, m - a - b));
                        }
                    }
                }
            }
            Family::PleatRec => {
                for n in 0..=cutoff.saturating_sub(2) {
                    candidates.push(pleat_rec(n));
                }
            }
            Family::FsReduce => {
                for n in 1..cutoff {
                    candidates.push(fs_reduce(n));
                }
            }
            Family::Curled => {
                candidates.push(curled_with_pancake());
                for n in 2..=cutoff {
                    candidates.push(curled(n));
                }
            }
            Family::Base0 => candidates.extend(base0()),
        }
    }
    for a in anchors {
        candidates.push(match a {
            Anchor::Anchor1 => eq("ANCHOR1".into(), &[(1, Unknown::Ff(1, 0))]).equals(Rational::new(4, 15)),
            Anchor::AnchorFs0 => eq("ANCHOR_FS0".into(), &[(1, Unknown::Fs(0, Side::R))]).equals(Rational::new(2, 3)),
        });
    }
    let mut system = LinearSystem::new(unknowns(cutoff));
    for e in candidates {
        if !e.coeffs.keys().all(|u| u.within(cutoff)) {
            continue;
        }
        let residual = e.residual_with(Unknown::closed_form);
        if !residual.is_zero() {
            return Err(Error::SelfCheck {
                tag: e.tag,
                residual: residual.to_string(),
            });
        }
        system.push(e);
    }
    Ok(system)
}

#[derive(Clone, Debug)]
pub struct UniquenessReport {
    pub cutoff: u32,
    pub families: BTreeSet<Family>,
    pub anchors: BTreeSet<Anchor>,
    pub system: LinearSystem<Unknown>,
    pub solution: Solution<Unknown>,
    /// Unknowns pinned by the system, with the solved value.
    pub determined: BTreeMap<Unknown, Rational>,
    /// Determined unknowns whose value differs from the closed form: (unknown, solved, closed form).
    pub mismatches: Vec<(Unknown, Rational, Rational)>,
}

impl UniquenessReport {
    pub fn kernel_dim(&self) -> usize {
        self.solution.kernel_dim()
    }

    pub fn is_unique(&self) -> bool {
        self.solution.is_consistent() && self.kernel_dim() == 0
    }

    /// Unique and equal to the closed forms on every unknown.
    pub fn verified(&self) -> bool {
        self.is_unique() && self.mismatches.is_empty()
    }

    pub fn undetermined(&self) -> Vec<Unknown> {
        self.system
            .unknowns
            .iter()
            .filter(|u| !self.determined.contains_key(u))
            .copied()
            .collect()
    }
}

impl fmt::Display for UniquenessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fams: Vec<&str> = self.families.iter().map(|x| x.name()).collect();
        let anchors: Vec<&str> = self.anchors.iter().map(|x| x.name()).collect();
        writeln!(f, "cutoff: {}", self.cutoff)?;
        writeln!(
            f,
            "families: {}",
            if fams.is_empty() { "none".into() } else { fams.join(",") }
        )?;
        writeln!(
            f,
            "anchors: {}",
            if anchors.is_empty() {
                "none".into()
            } else {
                anchors.join(",")
            }
        )?;
        writeln!(f, "unknowns: {}", self.system.unknowns.len())?;
        writeln!(f, "equations: {}", self.system.equations.len())?;
        for e in &self.system.equations {
            writeln!(f, "  [{}] {}", e.tag, e)?;
        }
        writeln!(f, "rank: {}", self.solution.rank)?;
        writeln!(f, "kernel_dim: {}", self.kernel_dim())?;
        for t in &self.solution.inconsistent {
            writeln!(f, "inconsistent: {t}")?;
        }
        writeln!(f, "solution:")?;
        for u in &self.system.unknowns {
            let w = u.closed_form();
            match self.determined.get(u) {
                Some(v) => {
                    let flag = if *v == w { "ok" } else { "MISMATCH" };
                    writeln!(f, "  {u} = {v}  (closed form {w}) {flag}")?;
                }
                None => writeln!(f, "  {u} undetermined  (closed form {w})")?,
            }
        }
        for (i, k) in self.solution.kernel.iter().enumerate() {
            let terms: Vec<String> = k.iter().map(|(u, c)| format!("{c}*{u}")).collect();
            writeln!(f, "kernel[{i}]: {}", terms.join(" + "))?;
        }
        let status = if self.verified() {
            "unique, matches closed form"
        } else if !self.solution.is_consistent() {
            "inconsistent"
        } else if self.mismatches.is_empty() {
            "underdetermined"
        } else {
            "mismatch"
        };
        write!(f, "status: {status}")
    }
}

pub fn solve_uniqueness(
    cutoff: u32,
    families: &BTreeSet<Family>,
    anchors: &BTreeSet<Anchor>,
) -> Result<UniquenessReport> {
    let system = generate_constraints(cutoff, families, anchors)?;
    let solution = solve_exact(&system);
    let mut determined = BTreeMap::new();
    let mut mismatches = Vec::new();
    if let Some(part) = &solution.particular {
        for u in &system.unknowns {
            if solution.kernel.iter().any(|k| k.contains_key(u)) {
                continue;
            }
            let v = part.get(u).cloned().unwrap_or_else(Rational::zero);
            let w = u.closed_form();
            if v != w {
                mismatches.push((*u, v.clone(), w));
            }
            determined.insert(*u, v);
        }
    }
    Ok(UniquenessReport {
        cutoff,
        families: families.clone(),
        anchors: anchors.clone(),
        system,
        solution,
        determined,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(e: &Equation<Unknown>) -> Rational {
        e.residual_with(Unknown::closed_form)
    }

    #[test]
    fn worked_residuals() {
        assert!(w(&triple(0, 0, 1)).is_zero());
        assert!(w(&pleat_rec(0)).is_zero());
        let four = base0().remove(0);
        assert_eq!(four.coeffs.get(&Unknown::Ff(2, 0)), Some(&int(12)));
        assert!(w(&four).is_zero());
    }

    #[test]
    fn uncorrected_variants_fail() {
        assert!(!w(&triple_unswapped(0, 0, 1)).is_zero());
        for n in 1..6 {
            assert!(w(&fs_reduce(n)).is_zero());
            assert!(!w(&fs_reduce_unflipped(n)).is_zero());
        }
        assert!(w(&curled_with_pancake()).is_zero());
        assert!(!w(&curled_with_pancake_left()).is_zero());
        assert_eq!(doubled_inner_weight(2, 0).unwrap(), Rational::new(1, 3));
    }

    #[test]
    fn cutoff_bound() {
        assert!(generate_constraints(3, &all_families(), &default_anchors()).is_err());
    }

    #[test]
    fn base_only_is_underdetermined() {
        let fams = [Family::Base0].into_iter().collect();
        let r = solve_uniqueness(6, &fams, &BTreeSet::new()).unwrap();
        assert!(r.kernel_dim() > 0);
        assert!(r.mismatches.is_empty());
    }

    #[test]
    fn full_system_kernel() {
        let r = solve_uniqueness(6, &all_families(), &default_anchors()).unwrap();
        assert!(r.mismatches.is_empty());
        assert_eq!(r.kernel_dim(), 1);
        assert_eq!(r.undetermined(), vec![Unknown::Fs(0, Side::R), Unknown::Fs(0, Side::L)]);
        let mut anchors = default_anchors();
        anchors.insert(Anchor::AnchorFs0);
        assert!(solve_uniqueness(6, &all_families(), &anchors).unwrap().verified());
        let free = solve_uniqueness(6, &all_families(), &BTreeSet::new()).unwrap();
        assert_eq!(free.kernel_dim(), 2);
        for (u, v) in &free.determined {
            if let Unknown::Ff(n, k) = u {
                assert_eq!((n + k) % 2, 0, "{u} = {v}");
            }
        }
    }

    #[test]
    fn names_parse() {
        assert_eq!("pleat_rec".parse::<Family>().unwrap(), Family::PleatRec);
        assert_eq!("ANCHOR_FS0".parse::<Anchor>().unwrap(), Anchor::AnchorFs0);
        assert!("nope".parse::<Family>().is_err());
    }
}

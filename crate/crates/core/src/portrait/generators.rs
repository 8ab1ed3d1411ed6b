//! Canonical portraits for every vertex shape.
//!
//! Offsets are fixed rationals derived from the strand count so that output
//! is byte-stable: type I uses `eps = 1/(4D)` with `D = n+k+2`; the pleat,
//! fold-crossing and umbrella shapes use `1/(8D)` with `D = r+1`. Simple
//! strands sit at `i/D`.

use super::{Boundary, Match, Portrait, Side, Strand};
use crate::error::{Error, Result};
use crate::rational::{FiberPos, Rational};

fn at(x: Rational) -> FiberPos {
    FiberPos::from(x)
}

fn simples(indices: impl IntoIterator<Item = u32>, d: u32) -> Vec<Strand> {
    indices
        .into_iter()
        .map(|i| Strand::new(format!("s{i}"), at(Rational::new(i as i64, d as i64))))
        .collect()
}

fn sector(base: &[Strand], extra: &[(&str, FiberPos)]) -> Vec<Strand> {
    let mut s = base.to_vec();
    s.extend(extra.iter().map(|(id, p)| Strand::new(*id, p.clone())));
    s.sort_by(|a, b| a.pos.cmp(&b.pos));
    s
}

fn identity(base: &[Strand], extra: &[(&str, &str, Rational)]) -> Vec<Match> {
    let mut m: Vec<Match> = base
        .iter()
        .map(|s| Match::new(s.id.clone(), s.id.clone(), Rational::zero()))
        .collect();
    m.extend(extra.iter().map(|(l, r, w)| Match::new(*l, *r, w.clone())));
    m
}

fn pair(a: &str, b: &str) -> Vec<(String, String)> {
    vec![(a.to_string(), b.to_string())]
}

/// Two transversal folds: fold A born first (going ccw from the fold-free
/// sector S0), with `n` simple strands between the upper branch of A and the
/// lower branch of B in the fiber direction, and `k` on the other side.
pub fn type_i(n: u32, k: u32) -> Result<Portrait> {
    if n + k == 0 {
        return Err(Error::InvalidParameter("type I requires n + k >= 1".into()));
    }
    let d = n + k + 2;
    let eps = Rational::new(1, 4 * d as i64);
    let base = simples((1..=n).chain(n + 2..=n + k + 1), d);
    let b_mid = Rational::new((n + 1) as i64, d as i64);
    let a = [("a-", at(-&eps)), ("a+", at(eps.clone()))];
    let b = [("b-", at(&b_mid - &eps)), ("b+", at(&b_mid + &eps))];
    let s0 = sector(&base, &[]);
    let s1 = sector(&base, &a);
    let s2 = sector(&base, &[a[0].clone(), a[1].clone(), b[0].clone(), b[1].clone()]);
    let s3 = sector(&base, &b);
    let z = Rational::zero;
    let boundaries = vec![
        Boundary {
            matches: identity(&base, &[]),
            births: pair("a-", "a+"),
            deaths: vec![],
        },
        Boundary {
            matches: identity(&base, &[("a-", "a-", z()), ("a+", "a+", z())]),
            births: pair("b-", "b+"),
            deaths: vec![],
        },
        Boundary {
            matches: identity(&base, &[("b-", "b-", z()), ("b+", "b+", z())]),
            births: vec![],
            deaths: pair("a-", "a+"),
        },
        Boundary {
            matches: identity(&base, &[]),
            births: vec![],
            deaths: pair("b-", "b+"),
        },
    ];
    Ok(Portrait::new(vec![s0, s1, s2, s3], boundaries))
}

/// A pleat with `r` simple strands. The big sector holds the pleat sheet
/// `t`; entering the small sector a pair is born just below it, and leaving
/// it the upper born branch dies together with `t` while the lower branch
/// continues as `t`.
pub fn type_ii(r: u32, side: Side) -> Portrait {
    let d = r + 1;
    let delta = Rational::new(1, 8 * d as i64);
    let two = &delta * Rational::integer(2);
    let base = simples(1..=r, d);
    let s0 = sector(&base, &[("t", at(two.clone()))]);
    let s1 = sector(
        &base,
        &[
            ("p-", FiberPos::zero()),
            ("p+", at(delta.clone())),
            ("t", at(two.clone())),
        ],
    );
    let boundaries = vec![
        Boundary {
            matches: identity(&base, &[("t", "t", Rational::zero())]),
            births: pair("p-", "p+"),
            deaths: vec![],
        },
        Boundary {
            matches: identity(&base, &[("p-", "t", two)]),
            births: vec![],
            deaths: pair("p+", "t"),
        },
    ];
    let right = Portrait::new(vec![s0, s1], boundaries);
    match side {
        Side::R => right,
        Side::L => right.mirror(),
    }
}

/// A fold crossed by a regular sheet `x`: the fold pair `f-`, `f+` is born
/// above `x`, then `x` passes the upper branch and then the lower one, and
/// the pair dies below `x`.
pub fn type_iii(r: u32, side: Side) -> Portrait {
    let d = r + 1;
    let delta = Rational::new(1, 8 * d as i64);
    let k = |c: i64| &delta * Rational::integer(c);
    let base = simples(1..=r, d);
    let z = FiberPos::zero;
    let s0 = sector(&base, &[("x", z())]);
    let s1 = sector(&base, &[("f-", z()), ("f+", at(k(1))), ("x", at(k(3)))]);
    let s2 = sector(&base, &[("f-", z()), ("x", at(k(1))), ("f+", at(k(3)))]);
    let s3 = sector(&base, &[("x", z()), ("f-", at(k(1))), ("f+", at(k(3)))]);
    let boundaries = vec![
        Boundary {
            matches: identity(&base, &[("x", "x", k(3))]),
            births: pair("f-", "f+"),
            deaths: vec![],
        },
        Boundary {
            matches: identity(&base, &[("x", "x", k(-2)), ("f+", "f+", k(2)), ("f-", "f-", k(0))]),
            births: vec![],
            deaths: vec![],
        },
        Boundary {
            matches: identity(&base, &[("x", "x", k(-1)), ("f-", "f-", k(1)), ("f+", "f+", k(0))]),
            births: vec![],
            deaths: vec![],
        },
        Boundary {
            matches: identity(&base, &[("x", "x", k(0))]),
            births: vec![],
            deaths: pair("f-", "f+"),
        },
    ];
    let right = Portrait::new(vec![s0, s1, s2, s3], boundaries);
    match side {
        Side::R => right,
        Side::L => right.mirror(),
    }
}

/// The umbrella pair `u`, `v` is born at `-eps, +eps`, exchanged across the
/// handle boundary and dies at the third boundary.
pub fn whitney(r: u32) -> Result<Portrait> {
    if r == 0 {
        return Err(Error::InvalidParameter("whitney umbrella requires r >= 1".into()));
    }
    let d = r + 1;
    let eps = Rational::new(1, 8 * d as i64);
    let two = &eps * Rational::integer(2);
    let base = simples(1..=r, d);
    let s0 = sector(&base, &[]);
    let s1 = sector(&base, &[("u", at(-&eps)), ("v", at(eps.clone()))]);
    let s2 = sector(&base, &[("v", at(-&eps)), ("u", at(eps.clone()))]);
    let boundaries = vec![
        Boundary {
            matches: identity(&base, &[]),
            births: pair("u", "v"),
            deaths: vec![],
        },
        Boundary {
            matches: identity(&base, &[("u", "u", two.clone()), ("v", "v", -two)]),
            births: vec![],
            deaths: vec![],
        },
        Boundary {
            matches: identity(&base, &[]),
            births: vec![],
            deaths: pair("v", "u"),
        },
    ];
    Ok(Portrait::new(vec![s0, s1, s2], boundaries))
}

/// The generator portrait for `I(n,k)`, `II(r,S)`, `III(r,S)` or `whitney(r)`.
pub fn named_portrait(name: &str) -> Result<Portrait> {
    let name = name.trim();
    if let Some(body) = name.strip_prefix("whitney(").and_then(|b| b.strip_suffix(')')) {
        let r = body
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("cannot parse {name:?}")))?;
        return whitney(r);
    }
    match name.parse::<super::VertexDescriptor>()? {
        super::VertexDescriptor::TypeI { n, k } => type_i(n, k),
        super::VertexDescriptor::TypeII { r, side } => Ok(type_ii(r, side)),
        super::VertexDescriptor::TypeIII { r, side } => Ok(type_iii(r, side)),
        super::VertexDescriptor::Inessential { .. } => {
            Err(Error::InvalidParameter(format!("no generator for {name:?}")))
        }
    }
}

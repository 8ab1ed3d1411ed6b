//! Curated vertex data of the example quasisections.

use std::fmt;
use std::str::FromStr;

use super::{euler_of_summary, DeclaredDegree, QuasisectionSummary, VertexCount};
use crate::error::{Error, Result};
use crate::portrait::{Side, VertexDescriptor};
use crate::rational::Rational;

pub const GALLERY_NAMES: [&str; 8] = [
    "four_pancakes",
    "crossing_pancakes_A",
    "crossing_pancakes_B",
    "curled_pancake",
    "boy_plus_sections",
    "triple_pancakes",
    "wrinkle",
    "two_pancake_pair",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum GalleryEntry {
    FourPancakes,
    CrossingPancakesA(u32),
    CrossingPancakesB(u32),
    CurledPancake(u32),
    BoyPlusSections(u32),
    TriplePancakes(u32, u32, u32),
    Wrinkle(u32),
    TwoPancakePair(u32, u32),
}

impl fmt::Display for GalleryEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GalleryEntry::FourPancakes => write!(f, "four_pancakes"),
            GalleryEntry::CrossingPancakesA(e) => write!(f, "crossing_pancakes_A({e})"),
            GalleryEntry::CrossingPancakesB(n) => write!(f, "crossing_pancakes_B({n})"),
            GalleryEntry::CurledPancake(n) => write!(f, "curled_pancake({n})"),
            GalleryEntry::BoyPlusSections(m) => write!(f, "boy_plus_sections({m})"),
            GalleryEntry::TriplePancakes(a, b, c) => write!(f, "triple_pancakes({a},{b},{c})"),
            GalleryEntry::Wrinkle(r) => write!(f, "wrinkle({r})"),
            GalleryEntry::TwoPancakePair(n, k) => write!(f, "two_pancake_pair({n},{k})"),
        }
    }
}

impl FromStr for GalleryEntry {
    type Err = Error;
    fn from_str(s: &str) -> Result<GalleryEntry> {
        let s = s.trim();
        let (name, args) = match s.find('(') {
            Some(i) if s.ends_with(')') => (&s[..i], &s[i + 1..s.len() - 1]),
            Some(_) => return Err(Error::UnknownGallery(s.to_string())),
            None => (s, ""),
        };
        let params: Vec<u32> = if args.trim().is_empty() {
            Vec::new()
        } else {
            args.split(',')
                .map(|a| {
                    a.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::InvalidParameter(format!("bad gallery parameter {a:?} in {s:?}")))
                })
                .collect::<Result<_>>()?
        };
        let arity = |n: usize| -> Result<()> {
            if params.len() == n {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "{name} takes {n} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        let entry = match name {
            "four_pancakes" => {
                arity(0)?;
                GalleryEntry::FourPancakes
            }
            "crossing_pancakes_A" => {
                arity(1)?;
                GalleryEntry::CrossingPancakesA(params[0])
            }
            "crossing_pancakes_B" => {
                arity(1)?;
                GalleryEntry::CrossingPancakesB(params[0])
            }
            "curled_pancake" => {
                arity(1)?;
                GalleryEntry::CurledPancake(params[0])
            }
            "boy_plus_sections" => {
                arity(1)?;
                GalleryEntry::BoyPlusSections(params[0])
            }
            "triple_pancakes" => {
                arity(3)?;
                GalleryEntry::TriplePancakes(params[0], params[1], params[2])
            }
            "wrinkle" => {
                arity(1)?;
                GalleryEntry::Wrinkle(params[0])
            }
            "two_pancake_pair" => {
                arity(2)?;
                GalleryEntry::TwoPancakePair(params[0], params[1])
            }
            _ => return Err(Error::UnknownGallery(s.to_string())),
        };
        Ok(entry)
    }
}

fn bad(msg: &str) -> Error {
    Error::InvalidParameter(msg.to_string())
}

fn ff(n: u32, k: u32, count: u32) -> VertexCount {
    VertexCount {
        descriptor: VertexDescriptor::TypeI { n, k },
        count,
    }
}

fn pleat(r: u32, side: Side, count: u32) -> VertexCount {
    VertexCount {
        descriptor: VertexDescriptor::TypeII { r, side },
        count,
    }
}

fn fs(r: u32, side: Side, count: u32) -> VertexCount {
    VertexCount {
        descriptor: VertexDescriptor::TypeIII { r, side },
        count,
    }
}

impl GalleryEntry {
    pub fn summary(&self) -> Result<QuasisectionSummary> {
        let (euler, degree, vertices) = match *self {
            GalleryEntry::FourPancakes => (2, DeclaredDegree::Known(0), vec![ff(2, 0, 12)]),
            GalleryEntry::CrossingPancakesA(e) => {
                if e == 0 {
                    return Err(bad("crossing_pancakes_A needs e >= 1"));
                }
                (e as i64, DeclaredDegree::Unknown, vec![fs(1, Side::R, 4 * e)])
            }
            GalleryEntry::CrossingPancakesB(n) => {
                if n == 0 {
                    return Err(bad("crossing_pancakes_B needs n >= 1"));
                }
                (0, DeclaredDegree::Unknown, vec![ff(n, 0, 2), fs(n + 1, Side::L, 4)])
            }
            GalleryEntry::CurledPancake(n) => {
                if n < 2 {
                    return Err(bad("curled_pancake needs N >= 2 (I(0,0) does not exist)"));
                }
                (0, DeclaredDegree::Unknown, vec![pleat(n, Side::R, 2), ff(0, n - 1, 1)])
            }
            GalleryEntry::BoyPlusSections(m) => {
                if !(1..=2).contains(&m) {
                    return Err(bad("boy_plus_sections needs m in {1, 2}"));
                }
                (
                    0,
                    DeclaredDegree::Unknown,
                    vec![pleat(m + 1, Side::R, 3), fs(m + 1, Side::R, 3), ff(0, m, 3)],
                )
            }
            GalleryEntry::TriplePancakes(a, b, c) => {
                if a + b + c == 0 {
                    return Err(bad("triple_pancakes needs a + b + c >= 1"));
                }
                let mut v = vec![
                    ff(a + b + 2, c, 1),
                    ff(b + c + 2, a, 1),
                    ff(c + a + 2, b, 1),
                    ff(c, a + b, 1),
                    ff(a, b + c, 1),
                    ff(b, c + a, 1),
                ];
                v.retain(|x| !matches!(x.descriptor, VertexDescriptor::TypeI { n: 0, k: 0 }));
                (0, DeclaredDegree::Unknown, v)
            }
            GalleryEntry::Wrinkle(r) => (
                0,
                DeclaredDegree::Unknown,
                vec![pleat(r, Side::R, 1), pleat(r, Side::L, 1)],
            ),
            GalleryEntry::TwoPancakePair(n, k) => {
                if n + k == 0 {
                    return Err(bad("two_pancake_pair needs n + k >= 1"));
                }
                (0, DeclaredDegree::Unknown, vec![ff(n, k, 1), ff(k, n, 1)])
            }
        };
        Ok(QuasisectionSummary {
            name: self.to_string(),
            base: "S2".into(),
            declared_euler: euler,
            declared_degree: degree,
            vertices,
        })
    }
}

/// Parses `name` (with parameters, e.g. `curled_pancake(3)`) and returns its summary.
pub fn gallery(name: &str) -> Result<QuasisectionSummary> {
    name.parse::<GalleryEntry>()?.summary()
}

/// Entries shipped for `gallery list` and `gallery check`.
pub fn gallery_catalog() -> Vec<GalleryEntry> {
    use GalleryEntry::*;
    let mut v = vec![FourPancakes];
    v.extend((1..=3).map(CrossingPancakesA));
    v.extend((1..=3).map(CrossingPancakesB));
    v.extend((2..=4).map(CurledPancake));
    v.extend((1..=2).map(BoyPlusSections));
    v.extend([
        TriplePancakes(0, 0, 1),
        TriplePancakes(1, 0, 1),
        TriplePancakes(1, 1, 1),
        TriplePancakes(2, 1, 0),
    ]);
    v.extend((0..=3).map(Wrinkle));
    v.extend([TwoPancakePair(2, 1), TwoPancakePair(3, 0)]);
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GalleryCheck {
    pub name: String,
    pub computed: Rational,
    pub declared: i64,
}

impl GalleryCheck {
    pub fn run(s: &QuasisectionSummary) -> Result<GalleryCheck> {
        Ok(GalleryCheck {
            name: s.name.clone(),
            computed: euler_of_summary(s)?,
            declared: s.declared_euler,
        })
    }

    pub fn ok(&self) -> bool {
        self.computed == Rational::integer(self.declared)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn catalog_checks() {
        for e in gallery_catalog() {
            let s = e.summary().unwrap();
            let c = GalleryCheck::run(&s).unwrap();
            assert!(c.ok(), "{} gives {}", c.name, c.computed);
            assert_eq!(gallery(&e.to_string()).unwrap(), s);
        }
    }

    #[test]
    fn worked_sums() {
        let crossing_a = gallery("crossing_pancakes_A(1)").unwrap();
        assert_eq!(euler_of_summary(&crossing_a).unwrap(), q("1"));
        let curled = gallery("curled_pancake(2)").unwrap();
        assert_eq!(curled.vertex_total(), 3);
        assert!(euler_of_summary(&curled).unwrap().is_zero());
        let b = gallery("crossing_pancakes_B(1)").unwrap();
        assert_eq!(euler_of_summary(&b).unwrap(), q("0"));
    }

    #[test]
    fn section_free_triple_count() {
        // Four pancakes in general position carry four positively oriented triples.
        let s = gallery("four_pancakes").unwrap();
        let e = euler_of_summary(&s).unwrap();
        assert_eq!(e, Rational::integer(2));
        assert_eq!(e, q("4") * q("3") * q("1/6"));
    }

    #[test]
    fn bad_names() {
        assert!(matches!(gallery("nope"), Err(Error::UnknownGallery(_))));
        assert!(gallery("curled_pancake(1)").is_err());
        assert!(gallery("boy_plus_sections(3)").is_err());
        assert!(gallery("wrinkle(1,2)").is_err());
        assert!(gallery("wrinkle(x)").is_err());
    }
}

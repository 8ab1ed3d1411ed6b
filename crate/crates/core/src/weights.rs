//! Closed-form vertex weights.

use crate::error::{Error, Result};
use crate::portrait::{Side, VertexDescriptor};
use crate::rational::Rational;

/// `4(n-k) / ((n+k)(n+k+2)(n+k+4))`.
pub fn weight_ff(n: u32, k: u32) -> Result<Rational> {
    if n + k == 0 {
        return Err(Error::InvalidParameter("type I weight requires n + k >= 1".into()));
    }
    let (n, k) = (n as i64, k as i64);
    let s = n + k;
    Ok(Rational::new(4 * (n - k), s * (s + 2) * (s + 4)))
}

fn pleat_like(r: u32, side: Side) -> Rational {
    let r = r as i64;
    let v = Rational::new(2, (r + 1) * (r + 3));
    match side {
        Side::R => v,
        Side::L => -v,
    }
}

/// `±2 / ((r+1)(r+3))`, positive on the right.
pub fn weight_p(r: u32, side: Side) -> Rational {
    pleat_like(r, side)
}

/// `±2 / ((r+1)(r+3))`, positive on the right.
pub fn weight_fs(r: u32, side: Side) -> Rational {
    pleat_like(r, side)
}

pub fn weight_of(d: &VertexDescriptor) -> Result<Rational> {
    match d {
        VertexDescriptor::TypeI { n, k } => weight_ff(*n, *k),
        VertexDescriptor::TypeII { r, side } => Ok(weight_p(*r, *side)),
        VertexDescriptor::TypeIII { r, side } => Ok(weight_fs(*r, *side)),
        VertexDescriptor::Inessential { .. } => Ok(Rational::zero()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn table_values() {
        assert_eq!(weight_ff(2, 0).unwrap(), q("1/6"));
        assert_eq!(weight_ff(1, 0).unwrap(), q("4/15"));
        assert_eq!(weight_ff(3, 3).unwrap(), q("0"));
        assert_eq!(weight_ff(3, 0).unwrap(), q("4/35"));
        assert_eq!(weight_ff(3, 0).unwrap(), q("3/7") * weight_ff(1, 0).unwrap());
        assert!(weight_ff(0, 0).is_err());
        assert_eq!(weight_p(1, Side::R), q("1/4"));
        assert_eq!(weight_p(0, Side::R), q("2/3"));
        assert!((weight_p(4, Side::R) + weight_p(4, Side::L)).is_zero());
        assert_eq!(weight_fs(1, Side::R), q("1/4"));
        assert_eq!(weight_fs(0, Side::R), q("2/3"));
        assert_eq!(weight_fs(3, Side::R), q("1/12"));
    }

    #[test]
    fn dispatch() {
        let ines = VertexDescriptor::Inessential {
            reason: "line-symmetric".into(),
        };
        assert!(weight_of(&ines).unwrap().is_zero());
        assert_eq!(weight_of(&VertexDescriptor::TypeI { n: 2, k: 1 }).unwrap(), q("4/105"));
        assert_eq!(
            weight_of(&VertexDescriptor::TypeII { r: 2, side: Side::R }).unwrap(),
            q("2/15")
        );
        assert!(weight_of(&VertexDescriptor::TypeI { n: 0, k: 0 }).is_err());
    }

    #[test]
    fn boy_identity() {
        let v = q("3") * weight_p(3, Side::R) + q("3") * weight_fs(3, Side::R) - q("3") * weight_ff(2, 0).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn antisymmetry_and_bound() {
        for s in 1..=10u32 {
            for n in 0..=s {
                let k = s - n;
                let w = weight_ff(n, k).unwrap();
                assert_eq!(w, -weight_ff(k, n).unwrap());
                let bound = Rational::new(4, (s * (s + 2)) as i64);
                assert!(w.abs() <= bound);
            }
        }
    }
}

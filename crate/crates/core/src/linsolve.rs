//! Exact linear systems over the rationals.

use std::collections::BTreeMap;
use std::fmt;

use crate::rational::Rational;

/// One affine relation `sum coeff * unknown = rhs`, tagged with where it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation<U: Ord> {
    pub coeffs: BTreeMap<U, Rational>,
    pub rhs: Rational,
    pub tag: String,
}

impl<U: Ord + Clone> Equation<U> {
    pub fn new(tag: impl Into<String>) -> Self {
        Equation {
            coeffs: BTreeMap::new(),
            rhs: Rational::zero(),
            tag: tag.into(),
        }
    }

    /// Adds `c * u` to the left-hand side, merging repeated unknowns.
    pub fn term(mut self, c: Rational, u: U) -> Self {
        let slot = self.coeffs.entry(u.clone()).or_insert_with(Rational::zero);
        *slot += &c;
        if slot.is_zero() {
            self.coeffs.remove(&u);
        }
        self
    }

    pub fn equals(mut self, rhs: Rational) -> Self {
        self.rhs = rhs;
        self
    }

    /// Left-hand side minus right-hand side at `values`; unknowns missing from `values` count as zero.
    pub fn residual(&self, values: &BTreeMap<U, Rational>) -> Rational {
        let lhs: Rational = self
            .coeffs
            .iter()
            .map(|(u, c)| values.get(u).map(|v| c * v).unwrap_or_else(Rational::zero))
            .sum();
        lhs - &self.rhs
    }

    /// Residual under an arbitrary valuation.
    pub fn residual_with(&self, value: impl Fn(&U) -> Rational) -> Rational {
        let lhs: Rational = self.coeffs.iter().map(|(u, c)| c * value(u)).sum();
        lhs - &self.rhs
    }
}

impl<U: Ord + fmt::Display> fmt::Display for Equation<U> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (u, c) in &self.coeffs {
            let (sign, mag) = if c.is_negative() {
                ("-", c.abs())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mag == Rational::one() {
                write!(f, "{u}")?;
            } else {
                write!(f, "{mag}*{u}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " = {}", self.rhs)
    }
}

#[derive(Clone, Debug)]
pub struct LinearSystem<U: Ord> {
    pub unknowns: Vec<U>,
    pub equations: Vec<Equation<U>>,
}

impl<U: Ord + Clone> LinearSystem<U> {
    pub fn new(unknowns: Vec<U>) -> Self {
        LinearSystem {
            unknowns,
            equations: Vec::new(),
        }
    }

    pub fn push(&mut self, eq: Equation<U>) {
        self.equations.push(eq);
    }
}

#[derive(Clone, Debug)]
pub struct Solution<U: Ord> {
    /// A particular solution with free unknowns set to zero; `None` when inconsistent.
    pub particular: Option<BTreeMap<U, Rational>>,
    pub kernel: Vec<BTreeMap<U, Rational>>,
    pub rank: usize,
    /// Tags of equations that reduced to `0 = nonzero`.
    pub inconsistent: Vec<String>,
}

impl<U: Ord> Solution<U> {
    pub fn kernel_dim(&self) -> usize {
        self.kernel.len()
    }

    pub fn is_consistent(&self) -> bool {
        self.particular.is_some()
    }
}

/// Gauss-Jordan elimination over the rationals.
///
/// Equations mentioning an unknown that is not in `system.unknowns` are
/// rejected by panicking, since silently dropping them would change the answer.
pub fn solve_exact<U: Ord + Clone + fmt::Debug>(system: &LinearSystem<U>) -> Solution<U> {
    let col: BTreeMap<&U, usize> = system.unknowns.iter().enumerate().map(|(i, u)| (u, i)).collect();
    let n = system.unknowns.len();
    let mut rows: Vec<(Vec<Rational>, Rational, usize)> = system
        .equations
        .iter()
        .enumerate()
        .map(|(ei, eq)| {
            let mut row = vec![Rational::zero(); n];
            for (u, c) in &eq.coeffs {
                let j = *col
                    .get(u)
                    .unwrap_or_else(|| panic!("equation {:?} uses undeclared unknown {u:?}", eq.tag));
                row[j] = c.clone();
            }
            (row, eq.rhs.clone(), ei)
        })
        .collect();

    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i].0[c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r].0[c].recip();
        for x in rows[r].0.iter_mut() {
            *x *= &inv;
        }
        rows[r].1 *= &inv;
        let (pivot_row, pivot_rhs) = (rows[r].0.clone(), rows[r].1.clone());
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row.0[c].is_zero() {
                continue;
            }
            let f = row.0[c].clone();
            for (x, p) in row.0.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &(&f * p);
                }
            }
            row.1 -= &(&f * &pivot_rhs);
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }

    let inconsistent: Vec<String> = rows[r..]
        .iter()
        .filter(|(_, rhs, _)| !rhs.is_zero())
        .map(|(_, _, ei)| system.equations[*ei].tag.clone())
        .collect();

    let particular = if inconsistent.is_empty() {
        let mut sol: BTreeMap<U, Rational> = system.unknowns.iter().map(|u| (u.clone(), Rational::zero())).collect();
        for (i, &c) in pivots.iter().enumerate() {
            sol.insert(system.unknowns[c].clone(), rows[i].1.clone());
        }
        Some(sol)
    } else {
        None
    };

    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&fc| {
            let mut v: BTreeMap<U, Rational> = BTreeMap::new();
            v.insert(system.unknowns[fc].clone(), Rational::one());
            for (i, &pc) in pivots.iter().enumerate() {
                let x = -&rows[i].0[fc];
                if !x.is_zero() {
                    v.insert(system.unknowns[pc].clone(), x);
                }
            }
            v
        })
        .collect();

    Solution {
        particular,
        kernel,
        rank: pivots.len(),
        inconsistent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn square_system() {
        let mut s = LinearSystem::new(vec!["x", "y"]);
        s.push(
            Equation::new("sum")
                .term(q(1, 1), "x")
                .term(q(1, 1), "y")
                .equals(q(1, 1)),
        );
        s.push(Equation::new("diff").term(q(1, 1), "x").term(q(-1, 1), "y"));
        let sol = solve_exact(&s);
        let p = sol.particular.clone().unwrap();
        assert_eq!(p["x"], q(1, 2));
        assert_eq!(p["y"], q(1, 2));
        assert_eq!(sol.kernel_dim(), 0);
    }

    #[test]
    fn underdetermined_system() {
        let mut s = LinearSystem::new(vec!["x", "y"]);
        s.push(Equation::new("sum").term(q(1, 1), "x").term(q(1, 1), "y"));
        let sol = solve_exact(&s);
        let p = sol.particular.clone().unwrap();
        assert!(p["x"].is_zero() && p["y"].is_zero());
        assert_eq!(sol.kernel_dim(), 1);
        for eq in &s.equations {
            assert!(eq.residual(&sol.kernel[0]).is_zero());
        }
    }

    #[test]
    fn inconsistency_is_reported() {
        let mut s = LinearSystem::new(vec!["x"]);
        s.push(Equation::new("a").term(q(1, 1), "x").equals(q(1, 1)));
        s.push(Equation::new("b").term(q(2, 1), "x").equals(q(3, 1)));
        let sol = solve_exact(&s);
        assert!(sol.particular.is_none());
        assert_eq!(sol.inconsistent, vec!["b".to_string()]);
    }

    /// The homogeneous level-m system g(a)+g(b)+g(c)=0 (a+b+c=m), g(a)+g(m+2-a)=0.
    #[test]
    fn triple_recursion_homogeneous_system_m4() {
        let m = 4usize;
        let mut s = LinearSystem::new((0..=m + 2).collect::<Vec<_>>());
        for a in 0..=m {
            for b in 0..=m - a {
                let c = m - a - b;
                s.push(
                    Equation::new(format!("triple {a},{b},{c}"))
                        .term(q(1, 1), a)
                        .term(q(1, 1), b)
                        .term(q(1, 1), c),
                );
            }
        }
        for a in 0..=m + 2 {
            s.push(
                Equation::new(format!("anti {a}"))
                    .term(q(1, 1), a)
                    .term(q(1, 1), m + 2 - a),
            );
        }
        let sol = solve_exact(&s);
        assert_eq!(sol.kernel_dim(), 0);
        assert!(sol.particular.clone().unwrap().values().all(|v| v.is_zero()));
    }

    #[test]
    fn repeated_terms_merge() {
        let eq = Equation::new("t")
            .term(q(1, 2), 'x')
            .term(q(1, 2), 'x')
            .term(q(1, 1), 'y')
            .term(q(-1, 1), 'y');
        assert_eq!(eq.coeffs.len(), 1);
        assert_eq!(eq.coeffs[&'x'], q(1, 1));
    }

    proptest! {
        #[test]
        fn solutions_have_zero_residual(
            coeffs in proptest::collection::vec(-4i64..5, 12),
            rhs in proptest::collection::vec(-5i64..6, 3),
        ) {
            let mut s = LinearSystem::new(vec![0usize, 1, 2, 3]);
            for (i, r) in rhs.iter().enumerate() {
                let mut eq = Equation::new(format!("e{i}")).equals(q(*r, 1));
                for j in 0..4 {
                    eq = eq.term(q(coeffs[i * 4 + j], 1), j);
                }
                s.push(eq);
            }
            let sol = solve_exact(&s);
            prop_assert_eq!(sol.rank + sol.kernel_dim(), 4);
            if let Some(p) = &sol.particular {
                for eq in &s.equations {
                    prop_assert!(eq.residual(p).is_zero());
                }
            } else {
                prop_assert!(!sol.inconsistent.is_empty());
            }
            for k in &sol.kernel {
                for eq in &s.equations {
                    prop_assert!((eq.residual(k) + &eq.rhs).is_zero());
                }
            }
        }
    }
}

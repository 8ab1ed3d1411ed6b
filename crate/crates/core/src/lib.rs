//! Exact local formula for the Euler number of a circle bundle, evaluated on
//! the singular vertices of a quasisection.

pub mod arrangement;
pub mod cli;
pub mod error;
pub mod formula;
pub mod linsolve;
pub mod oracle;
pub mod portrait;
pub mod rational;
pub mod render;
pub mod rng;
pub mod weights;

pub use error::{Error, Result};
pub use rational::{ccw_distance, cyclic_open_contains, frac, FiberPos, Rational, Winding};

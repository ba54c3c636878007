//! Certified real and complex arithmetic on dyadic numbers.

mod complex;
mod dyadic;
mod interval;

pub use complex::{eval_poly, BallJson, CInterval, ComplexBall};
pub use dyadic::{Dyadic, Round};
pub use interval::Interval;

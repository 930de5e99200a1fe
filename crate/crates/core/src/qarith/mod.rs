//! Exact arithmetic on real quadratic irrationals.

mod cf;
mod floor;
mod surd;

pub use cf::{cf_expand, convergents, is_br, ContinuedFraction};
pub use floor::FloorStream;
pub use surd::{floor_scaled, noble_mean_adjusted, surd_arith, ArithOp, Number, QuadraticSurd, Rational};

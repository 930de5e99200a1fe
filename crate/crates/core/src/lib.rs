//! Exact arithmetic for deterministic random walks `S_n(θ) = Σ_{j≤n} (-1)^⌊jθ⌋`
//! over quadratic irrational angles.
//!
//! The crate is `no_std` (it needs `alloc`). Everything is computed with exact
//! integer arithmetic: surds are `(a + b√d)/c` with big-integer fields and floors
//! of multiples are obtained from integer square roots. Hot loops use a 64-bit
//! fixed-point accumulator whose error is certified, falling back to the exact
//! path whenever the approximation cannot decide.
//!
//! Layout:
//!
//! * [`qarith`]: quadratic surds, continued fractions, convergents, BR predicate.
//! * [`numeration`]: Ostrowski numeration (Pell numeration for `√2 − 1`).
//! * [`walk`]: brute-force and rule-based walk engines, records, zeros, the
//!   `a`/`b` step sequences and discrepancies.
//! * [`recurrences`]: the closed recurrences for records.
//! * [`automata`]: lsd digit automata for zero and record sets.
//! * [`substitution`]: substitutions and return maps for noble-mean rotations.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod automata;
mod error;
pub mod numeration;
pub mod qarith;
pub mod recurrences;
pub mod substitution;
pub mod walk;

pub use error::{Error, Result};
pub use qarith::{ContinuedFraction, Number, QuadraticSurd};

//! Implicitization of hypersurfaces from polynomial and rational
//! parametrizations.
//!
//! Given `x_i = f_i(t_1, …, t_s)` (polynomials, or rational functions with a
//! common denominator), the engines here compute a generator of the ideal of
//! all polynomial relations among the `f_i`:
//!
//! * [`elim`] — Buchberger's algorithm, the classical elimination oracle and
//!   a truncated homogeneous elimination that stops at the first
//!   parameter-free basis element;
//! * [`direct`] — a linear-algebra search for the first dependency among the
//!   images of power-products enumerated in a suitable ordering;
//! * [`ratpar`] — reduction of rational parametrizations to homogeneous
//!   polynomial ones;
//! * [`modular`] — multi-modular computation over ℚ with Chinese
//!   remaindering, fault-tolerant rational reconstruction and verification.

pub mod budget;
pub mod coeff;
pub mod direct;
pub mod elim;
pub mod modular;
pub mod parse;
pub mod ratpar;
pub mod ring;

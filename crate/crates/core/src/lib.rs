//! Exact symbolic engine for characteristic classes of bundles with
//! c-symplectic fibers.
//!
//! Everything is computed over ℚ with arbitrary-precision integers. The
//! shared currency is [`GradedPoly`], a polynomial over an evenly graded
//! generator list, together with [`RingPresentation`], which adds rewrite
//! rules and an optional Leray–Hirsch fiber basis.

pub mod bundle;
pub mod coupling;
pub mod equivariant;
mod error;
pub mod flag;
pub mod linalg;
pub mod obstruction;
pub mod poly;
pub mod presentation;
mod rational;
pub mod symfun;

pub use error::{Error, Result};
pub use poly::{GradedPoly, Monomial, Ring};
pub use presentation::{FiberBasis, RingPresentation};
pub use rational::Rational;

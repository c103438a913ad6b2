//! Double Dirichlet L-functions
//! `L₂(s₁, s₂; χ₁, χ₂) = Σ_{m,n≥1} χ₁(m)χ₂(n) m^{-s₁} (m+n)^{-s₂}`
//! and their Mordell–Tornheim interpolation `L̃₂,z`.
//!
//! The crate provides three independent evaluators (a direct lattice sum,
//! a confluent-hypergeometric series that continues `L₂` to
//! `σ₁+σ₂ > 0`, and an oscillatory-integral series), the explicit
//! approximate-functional-equation main term in the critical strip, and a
//! harness that measures growth exponents and checks the accompanying
//! bounds on parameter grids.
//!
//! Module map:
//!
//! * [`characters`] Dirichlet characters, Gauss sums, character sums.
//! * [`special_fn`] complex Γ, Kummer ₁F₁, Tricomi Ψ, Γ(a, z), the
//!   Hardy–Littlewood oscillatory integrals.
//! * [`dirichlet_l`] Hurwitz ζ, L(s, χ), truncated products of two L-functions.
//! * [`double_l`] the three evaluators, the main term, bound ratios.
//! * [`harness`] sweeps, exponent fits, bound verification, CSV I/O.

pub mod arith;
pub mod characters;
pub mod complex;
pub mod dd;
pub mod dirichlet_l;
pub mod double_l;
pub mod error;
pub mod harness;
pub mod special_fn;
pub mod sum;

pub use complex::ComplexValue;
pub use error::{Error, Result};

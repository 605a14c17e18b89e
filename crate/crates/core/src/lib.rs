//! Exact ground states of the radial Schrödinger equation with an octic
//! potential `V(r) = a r² − b r⁴ + c r⁶ − d r⁸ + e r¹⁰`, together with the
//! numerical machinery used to check them.
//!
//! The crate is organised bottom-up:
//!
//! * [`reduction`] maps an `N`-dimensional radial problem with angular
//!   momentum `ℓ` onto the channel parameter `η`.
//! * [`potential`] evaluates the octic potential and its effective form.
//! * [`ansatz`] solves the constraint system for `R = r^κ exp(½αr² − ¼βr⁴ + ⅙τr⁶)`
//!   and re-derives it by Laurent coefficient matching.
//! * [`verify`] holds the independent oracles: analytic ODE residual,
//!   finite-difference eigensolver, shooting, and adaptive quadrature.
//! * [`cli`] is the command-line front end.
//!
//! Units are `ħ = 1`, `μ = ½` throughout, so the kinetic operator is `−d²/dr²`.

// `!(x > 0.0)` guards are written that way to reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ansatz;
pub mod cli;
pub mod error;
pub mod grid;
pub mod potential;
pub mod reduction;
pub mod verify;

pub use ansatz::{
    check_solvability, match_coefficients, solve_constraints, AnsatzParams, ExactSolution,
    LaurentResidual, Wavefunction,
};
pub use error::{Error, Result};
pub use grid::{GridFunction, GridSpec};
pub use potential::{OcticPotential, ValidationReport};
pub use reduction::{reduce, ReductionParams};

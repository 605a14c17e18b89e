//! Independent numerical checks of the closed-form solutions.
//!
//! None of these use the constraint equations: the residual differentiates
//! `p` analytically, the eigensolvers only see the potential, and the
//! normalization integrates `|R|²` directly.

mod dd;
mod fd;
mod normalize;
pub mod quadrature;
mod report;
mod residual;
mod shoot;
pub mod tridiag;

pub use crate::grid::{GridFunction, GridSpec};
pub use fd::{
    convergence_study, fd_eigensolve, ConvergenceStudy, EigenResult, FdSolver, Scheme,
    SchemeDescriptor,
};
pub use normalize::{normalize, normalize_with, NormalizationOptions, NormalizationResult};
pub use report::{
    default_r_max, verify_inputs, verify_solution, CheckResult, GridPolicy, Tolerances,
    VerificationPolicy, VerificationReport,
};
pub use residual::{closed_form_residual, residual};
pub use shoot::{shoot, ShootResult};

use crate::potential::OcticPotential;
use crate::reduction::centrifugal;

/// A radial potential `V(r)` without the centrifugal term.
pub trait RadialPotential: Sync {
    fn value(&self, r: f64) -> f64;

    /// `v_j` with `V(r) = Σ v_j r^{2j}`, when `V` is an even polynomial.
    /// Lets the shooting method start from an exact power series.
    fn even_coefficients(&self) -> Option<Vec<f64>> {
        None
    }
}

impl RadialPotential for OcticPotential {
    fn value(&self, r: f64) -> f64 {
        OcticPotential::value(self, r)
    }

    fn even_coefficients(&self) -> Option<Vec<f64>> {
        Some(OcticPotential::even_coefficients(self).to_vec())
    }
}

/// `V(r) = Σ c_j r^{2j}`.
#[derive(Debug, Clone, PartialEq)]
pub struct EvenPolynomial(pub Vec<f64>);

impl RadialPotential for EvenPolynomial {
    fn value(&self, r: f64) -> f64 {
        let x = r * r;
        self.0.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    fn even_coefficients(&self) -> Option<Vec<f64>> {
        Some(self.0.clone())
    }
}

/// Any closure `r ↦ V(r)`.
pub struct FnPotential<F>(pub F);

impl<F: Fn(f64) -> f64 + Sync> RadialPotential for FnPotential<F> {
    fn value(&self, r: f64) -> f64 {
        (self.0)(r)
    }
}

/// `−u″ + [V(r) + (η² − ¼)/r²] u = E u` on `(0, r_max)`.
#[derive(Clone, Copy)]
pub struct RadialProblem<'a> {
    pub potential: &'a dyn RadialPotential,
    pub eta: f64,
}

impl<'a> RadialProblem<'a> {
    pub fn new(potential: &'a dyn RadialPotential, eta: f64) -> Self {
        Self { potential, eta }
    }

    #[inline]
    pub fn effective(&self, r: f64) -> f64 {
        self.potential.value(r) + centrifugal(self.eta, r)
    }
}

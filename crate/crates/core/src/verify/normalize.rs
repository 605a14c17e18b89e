use serde::Serialize;

use super::quadrature::{integrate, QuadOptions};
use crate::ansatz::{AnsatzParams, ExactSolution};
use crate::error::{domain, Error, Result};

/// `|R(R_trunc)|²` is at most this fraction of `max |R|²`.
const TRUNCATION_RATIO: f64 = 1e-16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizationOptions {
    pub rel_tol: f64,
    pub initial_panels: usize,
}

impl Default for NormalizationOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            initial_panels: 8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalizationResult {
    /// `ω = ∫₀^∞ |R|² dr` for the unnormalized `R`.
    pub omega: f64,
    /// `N₀ = ω^{−1/2}`.
    pub n0: f64,
    pub truncation_radius: f64,
    pub abs_error_estimate: f64,
    /// `∫_{R_t}^{2R_t} |R|² dr / ω`.
    pub doubling_change: f64,
}

/// `ω` and `N₀` for the ansatz wavefunction of `sol`.
pub fn normalize(sol: &ExactSolution, rel_tol: f64) -> Result<NormalizationResult> {
    normalize_with(
        &sol.params,
        &NormalizationOptions {
            rel_tol,
            ..Default::default()
        },
    )
}

/// Integrate `r^{2κ} exp(αr² − ½βr⁴ + ⅓τr⁶)` on `[0, R_trunc]`, where the
/// integrand has dropped below `1e−16` of its maximum, then check that the
/// slab `[R_trunc, 2R_trunc]` adds less than `rel_tol`.
pub fn normalize_with(
    params: &AnsatzParams,
    opts: &NormalizationOptions,
) -> Result<NormalizationResult> {
    if !(params.kappa > -0.5) {
        return Err(domain(
            "kappa",
            params.kappa,
            "integral diverges at the origin unless kappa > -1/2",
        ));
    }
    if !(params.tau < 0.0) {
        return Err(domain(
            "tau",
            params.tau,
            "integral diverges at infinity unless tau < 0",
        ));
    }
    if !(opts.rel_tol > 0.0) {
        return Err(domain("rel_tol", opts.rel_tol, "must be > 0"));
    }
    let r_trunc = params
        .decay_radius(TRUNCATION_RATIO.sqrt())
        .filter(|r| *r > 0.0)
        .ok_or_else(|| domain("tau", params.tau, "could not locate the decay radius"))?;

    let density = |r: f64| {
        let a = params.amplitude(r);
        a * a
    };
    let quad = QuadOptions {
        rel_tol: opts.rel_tol,
        initial_panels: opts.initial_panels,
        ..Default::default()
    };
    let body = integrate(density, 0.0, r_trunc, &quad)?;
    let omega = body.value;
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(domain(
            "omega",
            omega,
            "normalization integral is not positive and finite",
        ));
    }
    let tail = integrate(
        density,
        r_trunc,
        2.0 * r_trunc,
        &QuadOptions {
            abs_tol: 1e-3 * opts.rel_tol * omega,
            ..quad
        },
    )?;
    let doubling_change = tail.value.abs() / omega;
    if doubling_change > opts.rel_tol {
        return Err(Error::TruncationUnstable {
            change: doubling_change,
            rel_tol: opts.rel_tol,
        });
    }
    Ok(NormalizationResult {
        omega,
        n0: omega.sqrt().recip(),
        truncation_radius: r_trunc,
        abs_error_estimate: body.abs_error + tail.value.abs() + tail.abs_error,
        doubling_change,
    })
}

//! Closed-form ground state `R = exp(p)`, `p(r) = ½αr² − ¼βr⁴ + ⅙τr⁶ + κ ln r`.
//!
//! Inserting the ansatz into `R″ = (V_eff − E) R` requires
//! `p″ + p′² = V − E + (η² − ¼)/r²` identically in `r`. Matching the seven
//! Laurent coefficients gives
//!
//! ```text
//! r⁻²: κ(κ−1) = η² − ¼          r⁶: β² + 2ατ = c
//! r⁰ : α(1+2κ) = −E             r⁸: 2βτ = d
//! r² : α² − 2βκ − 3β = a        r¹⁰: τ² = e
//! r⁴ : 5τ + 2τκ − 2αβ = −b
//! ```
//!
//! [`solve_constraints`] takes `(c, d, e, η)` as free and returns the induced
//! `a`, `b` and `E`; [`match_coefficients`] expands the left-hand side from
//! scratch and reports what is left over.

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::potential::OcticPotential;

/// Tolerance for the internal closed-form vs direct-substitution cross-check.
const CLOSED_FORM_RTOL: f64 = 1e-10;

/// Laurent residuals smaller than this are treated as exact zeros.
pub const RESIDUAL_ABS_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnsatzParams {
    pub alpha: f64,
    pub beta: f64,
    pub tau: f64,
    pub kappa: f64,
}

impl AnsatzParams {
    pub fn new(alpha: f64, beta: f64, tau: f64, kappa: f64) -> Self {
        Self {
            alpha,
            beta,
            tau,
            kappa,
        }
    }

    /// Polynomial part of `p`, i.e. without `κ ln r`.
    #[inline]
    pub fn poly(&self, r: f64) -> f64 {
        let x = r * r;
        x * (0.5 * self.alpha + x * (-0.25 * self.beta + x * self.tau / 6.0))
    }

    /// `p(r)`; `−∞` at the origin when `κ > 0`.
    pub fn log_amplitude(&self, r: f64) -> f64 {
        if self.kappa == 0.0 {
            self.poly(r)
        } else {
            self.kappa * r.ln() + self.poly(r)
        }
    }

    /// `p′(r) = αr − βr³ + τr⁵ + κ/r`.
    #[inline]
    pub fn dp(&self, r: f64) -> f64 {
        let x = r * r;
        r * (self.alpha + x * (-self.beta + x * self.tau)) + self.kappa / r
    }

    /// `p″(r) = α − 3βr² + 5τr⁴ − κ/r²`.
    #[inline]
    pub fn d2p(&self, r: f64) -> f64 {
        let x = r * r;
        self.alpha + x * (-3.0 * self.beta + x * 5.0 * self.tau) - self.kappa / x
    }

    /// Unnormalized `R(r) = r^κ exp(½αr² − ¼βr⁴ + ⅙τr⁶)` for `r ≥ 0`.
    #[inline]
    pub fn amplitude(&self, r: f64) -> f64 {
        if r == 0.0 {
            return if self.kappa > 0.0 {
                0.0
            } else {
                0.0_f64.powf(self.kappa)
            };
        }
        self.log_amplitude(r).exp()
    }

    /// Positive stationary points of `p`, ascending.
    ///
    /// `r p′(r) = q(r²)` with the cubic `q(x) = κ + αx − βx² + τx³`; the
    /// cubic is split at its critical points and each monotone piece bisected.
    pub fn stationary_radii(&self) -> Vec<f64> {
        let q = |x: f64| self.kappa + x * (self.alpha + x * (-self.beta + x * self.tau));
        let bound = 1.0
            + [self.kappa, self.alpha, self.beta]
                .iter()
                .fold(0.0_f64, |m, v| m.max(v.abs()))
                / self.tau.abs().max(f64::MIN_POSITIVE);
        let mut cuts = vec![0.0];
        // q′(x) = α − 2βx + 3τx²
        for x in real_quadratic_roots(3.0 * self.tau, -2.0 * self.beta, self.alpha) {
            if x > 0.0 && x < bound {
                cuts.push(x);
            }
        }
        cuts.push(bound);
        cuts.sort_by(f64::total_cmp);

        let mut roots = Vec::new();
        for w in cuts.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let (qlo, qhi) = (q(lo), q(hi));
            if qhi == 0.0 && hi > 0.0 && hi < bound {
                roots.push(hi);
                continue;
            }
            if qlo == 0.0 || (qlo > 0.0) == (qhi > 0.0) {
                continue;
            }
            roots.push(bisect(q, lo, hi, qlo));
        }
        roots.dedup();
        roots.into_iter().map(f64::sqrt).collect()
    }

    /// Radius of the global maximum of `R` on `(0, ∞)`, if `R` has one.
    pub fn peak_radius(&self) -> Option<f64> {
        self.stationary_radii()
            .into_iter()
            .filter(|&r| self.d2p(r) < 0.0 || self.dp(r * (1.0 + 1e-9)) < 0.0)
            .max_by(|&x, &y| self.log_amplitude(x).total_cmp(&self.log_amplitude(y)))
    }

    /// Radius beyond every maximum where `R` has fallen to `ratio × max R`.
    ///
    /// Requires `τ < 0`; returns `None` otherwise.
    pub fn decay_radius(&self, ratio: f64) -> Option<f64> {
        if !(self.tau < 0.0) || !(ratio > 0.0 && ratio < 1.0) {
            return None;
        }
        let stationary = self.stationary_radii();
        let peak = self.peak_radius();
        let (start, p_max) = match (stationary.last(), peak) {
            (Some(&last), Some(pk)) => (last, self.log_amplitude(pk)),
            // no interior maximum: R is largest at the origin (κ = 0)
            _ => (0.0, self.poly(0.0)),
        };
        let target = p_max + ratio.ln();
        let g = |r: f64| {
            if r == 0.0 {
                self.poly(0.0) - target
            } else {
                self.log_amplitude(r) - target
            }
        };
        if g(start) <= 0.0 {
            return Some(start);
        }
        let mut hi = start.max(1.0);
        while g(hi) > 0.0 {
            hi *= 2.0;
        }
        Some(bisect(g, start, hi, g(start)))
    }
}

fn real_quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    if a == 0.0 {
        return if b == 0.0 { vec![] } else { vec![-c / b] };
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return vec![];
    }
    let s = disc.sqrt();
    // numerically stable pair
    let t = -0.5 * (b + b.signum() * s);
    if t == 0.0 {
        return vec![0.0];
    }
    vec![t / a, c / t]
}

/// Bisection on a bracketing interval down to adjacent floats.
pub(crate) fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, f_lo: f64) -> f64 {
    let lo_positive = f_lo > 0.0;
    for _ in 0..300 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// A closed-form eigenpair of the octic problem in one channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExactSolution {
    pub params: AnsatzParams,
    pub eta: f64,
    pub energy: f64,
    pub induced_a: f64,
    pub induced_b: f64,
    /// The full potential including the induced `a` and `b`.
    pub potential: OcticPotential,
    pub norm_constant: Option<f64>,
}

impl ExactSolution {
    pub fn wavefunction(&self) -> Wavefunction {
        build_wavefunction(self)
    }

    /// Same solution with a different claimed energy, used to probe the oracles.
    pub fn with_energy(mut self, energy: f64) -> Self {
        self.energy = energy;
        self
    }

    pub fn with_norm_constant(mut self, n0: f64) -> Self {
        self.norm_constant = Some(n0);
        self
    }
}

/// Solve the constraint system for the normalizable, origin-regular branch
/// `τ = −√e`, `κ = η + ½`.
pub fn solve_constraints(c: f64, d: f64, e: f64, eta: f64) -> Result<ExactSolution> {
    for (field, v) in [("c", c), ("d", d), ("e", e), ("eta", eta)] {
        if !v.is_finite() {
            return Err(domain(field, v, "must be finite"));
        }
    }
    if e <= 0.0 {
        return Err(domain("e", e, "e > 0 is required for confinement"));
    }
    if eta < 0.0 {
        return Err(domain("eta", eta, "channel parameter must be >= 0"));
    }

    let sqrt_e = e.sqrt();
    let tau = -sqrt_e;
    let kappa = eta + 0.5;
    let beta = d / (2.0 * tau);
    let alpha = (c - beta * beta) / (2.0 * tau);

    let induced_a = alpha * alpha - 2.0 * beta * kappa - 3.0 * beta;
    let induced_b = 2.0 * alpha * beta - tau * (5.0 + 2.0 * kappa);
    let energy = -alpha * (1.0 + 2.0 * kappa);

    let disc = d * d - 4.0 * c * e;
    let closed = [
        ("beta", -d / (2.0 * sqrt_e), beta, beta.abs()),
        (
            "alpha",
            disc / (8.0 * e * sqrt_e),
            alpha,
            (d * d + 4.0 * (c * e).abs()) / (8.0 * e * sqrt_e),
        ),
        (
            "induced_a",
            (d.powi(4) - 8.0 * c * e * d * d
                + 16.0 * c * c * e * e
                + 64.0 * d * e * e * sqrt_e * (kappa + 1.5))
                / (64.0 * e.powi(3)),
            induced_a,
            alpha * alpha + (2.0 * beta * kappa).abs() + (3.0 * beta).abs(),
        ),
        (
            "induced_b",
            (8.0 * e * e * sqrt_e * (5.0 + 2.0 * kappa) - d * (d * d - 4.0 * e * c))
                / (8.0 * e * e),
            induced_b,
            (2.0 * alpha * beta).abs() + (tau * (5.0 + 2.0 * kappa)).abs(),
        ),
        (
            "energy",
            -(1.0 + 2.0 * kappa) * disc / (8.0 * e * sqrt_e),
            energy,
            energy.abs(),
        ),
    ];
    for (quantity, closed, direct, scale) in closed {
        let scale = scale.max(closed.abs()).max(direct.abs());
        if (closed - direct).abs() > CLOSED_FORM_RTOL * scale {
            return Err(Error::Inconsistent {
                quantity,
                closed,
                direct,
            });
        }
    }

    Ok(ExactSolution {
        params: AnsatzParams::new(alpha, beta, tau, kappa),
        eta,
        energy,
        induced_a,
        induced_b,
        potential: OcticPotential::new(induced_a, induced_b, c, d, e),
        norm_constant: None,
    })
}

/// Decide whether a fully specified potential admits the ansatz in channel
/// `η`: its `a` and `b` must equal the induced values within `rel_tol`.
pub fn check_solvability(
    potential: &OcticPotential,
    eta: f64,
    rel_tol: f64,
) -> Result<ExactSolution> {
    let sol = solve_constraints(potential.c, potential.d, potential.e, eta)?;
    let p = sol.params;
    let scales = [
        p.alpha * p.alpha + (2.0 * p.beta * p.kappa).abs() + (3.0 * p.beta).abs(),
        (2.0 * p.alpha * p.beta).abs() + (p.tau * (5.0 + 2.0 * p.kappa)).abs(),
    ];
    for ((field, given, required), scale) in [
        ("a", potential.a, sol.induced_a),
        ("b", potential.b, sol.induced_b),
    ]
    .into_iter()
    .zip(scales)
    {
        let scale = scale.max(given.abs()).max(required.abs());
        if !given.is_finite() || (given - required).abs() > rel_tol * scale {
            return Err(Error::NotSolvable {
                field,
                given,
                required,
            });
        }
    }
    Ok(sol)
}

/// One Laurent coefficient of `[p″ + p′²] − [V − E + (η² − ¼)/r²]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LaurentTerm {
    pub power: i32,
    /// Coefficient of `r^power` in `p″ + p′²`.
    pub expansion: f64,
    /// Coefficient of `r^power` in `V − E + (η² − ¼)/r²`.
    pub target: f64,
    /// Sum of the magnitudes of the contributions on the larger side.
    pub scale: f64,
}

impl LaurentTerm {
    pub fn residual(&self) -> f64 {
        self.expansion - self.target
    }

    pub fn relative(&self) -> f64 {
        let res = self.residual().abs();
        if res <= RESIDUAL_ABS_FLOOR {
            0.0
        } else {
            res / self.scale
        }
    }
}

/// The seven coefficient differences for powers −2, 0, 2, …, 10.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LaurentResidual {
    pub terms: [LaurentTerm; 7],
}

impl LaurentResidual {
    pub const POWERS: [i32; 7] = [-2, 0, 2, 4, 6, 8, 10];

    pub fn coefficients(&self) -> [f64; 7] {
        self.terms.map(|t| t.residual())
    }

    pub fn term(&self, power: i32) -> Option<&LaurentTerm> {
        self.terms.iter().find(|t| t.power == power)
    }

    pub fn residual(&self, power: i32) -> Option<f64> {
        self.term(power).map(LaurentTerm::residual)
    }

    pub fn max_relative(&self) -> f64 {
        self.terms
            .iter()
            .map(LaurentTerm::relative)
            .fold(0.0, f64::max)
    }

    pub fn within(&self, rel_tol: f64) -> bool {
        self.terms.iter().all(|t| t.relative() <= rel_tol)
    }

    /// Powers whose residual exceeds `rel_tol`.
    pub fn failing(&self, rel_tol: f64) -> Vec<i32> {
        self.terms
            .iter()
            .filter(|t| t.relative() > rel_tol)
            .map(|t| t.power)
            .collect()
    }
}

/// Expand `p″ + p′²` term by term and subtract the target coefficients.
///
/// With `p′ = αr − βr³ + τr⁵ + κ r⁻¹` and `p″ = α − 3βr² + 5τr⁴ − κ r⁻²`,
/// every product of two monomials of `p′` is accumulated into its power slot,
/// so no constraint equation is used here.
pub fn match_coefficients(sol: &ExactSolution) -> LaurentResidual {
    let AnsatzParams {
        alpha,
        beta,
        tau,
        kappa,
    } = sol.params;
    // slot k holds r^(2k-2), i.e. powers -2, 0, 2, ..., 10
    let slot = |power: i32| ((power + 2) / 2) as usize;

    let mut sum = [0.0_f64; 7];
    let mut mag = [0.0_f64; 7];
    let mut add = |power: i32, v: f64| {
        sum[slot(power)] += v;
        mag[slot(power)] += v.abs();
    };

    let first: [(i32, f64); 4] = [(1, alpha), (3, -beta), (5, tau), (-1, kappa)];
    for &(pi, ci) in &first {
        for &(pj, cj) in &first {
            add(pi + pj, ci * cj);
        }
    }
    let second: [(i32, f64); 4] = [(0, alpha), (2, -3.0 * beta), (4, 5.0 * tau), (-2, -kappa)];
    for &(p, c) in &second {
        add(p, c);
    }

    let v = &sol.potential;
    let eta2 = sol.eta * sol.eta;
    let targets: [(f64, f64); 7] = [
        (eta2 - 0.25, eta2 + 0.25),
        (-sol.energy, sol.energy.abs()),
        (v.a, v.a.abs()),
        (-v.b, v.b.abs()),
        (v.c, v.c.abs()),
        (-v.d, v.d.abs()),
        (v.e, v.e.abs()),
    ];

    let terms = std::array::from_fn(|k| LaurentTerm {
        power: LaurentResidual::POWERS[k],
        expansion: sum[k],
        target: targets[k].0,
        scale: mag[k].max(targets[k].1),
    });
    LaurentResidual { terms }
}

/// The ansatz wavefunction with an optional normalization constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wavefunction {
    params: AnsatzParams,
    scale: f64,
}

/// `R(r) = r^κ exp(½αr² − ¼βr⁴ + ⅙τr⁶)`, unnormalized.
pub fn build_wavefunction(sol: &ExactSolution) -> Wavefunction {
    Wavefunction {
        params: sol.params,
        scale: 1.0,
    }
}

impl Wavefunction {
    pub fn from_params(params: AnsatzParams) -> Self {
        Self { params, scale: 1.0 }
    }

    pub fn params(&self) -> &AnsatzParams {
        &self.params
    }

    pub fn normalized(mut self, n0: f64) -> Self {
        self.scale = n0;
        self
    }

    #[inline]
    pub fn value(&self, r: f64) -> f64 {
        self.scale * self.params.amplitude(r)
    }

    pub fn eval(&self, r: f64) -> Result<f64> {
        if !(r >= 0.0) {
            return Err(domain("r", r, "wavefunction is defined for r >= 0"));
        }
        Ok(self.value(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn paper() -> ExactSolution {
        solve_constraints(1.0, -2.0, 4.0, 0.0).unwrap()
    }

    #[test]
    fn reproduces_worked_example() {
        let s = paper();
        assert_eq!(s.params.tau, -2.0);
        assert_eq!(s.params.kappa, 0.5);
        assert_eq!(s.params.beta, 0.5);
        assert_eq!(s.params.alpha, -0.1875);
        assert_eq!(s.induced_a, -1.96484375);
        assert_eq!(s.induced_b, 11.8125);
        assert_eq!(s.energy, 0.375);
    }

    #[test]
    fn first_excited_channel() {
        let s = solve_constraints(1.0, -2.0, 4.0, 1.0).unwrap();
        assert_eq!(s.params.kappa, 1.5);
        assert_eq!(s.params.alpha, -0.1875);
        assert_eq!(s.induced_a, -2.96484375);
        assert_eq!(s.induced_b, 15.8125);
        assert_eq!(s.energy, 0.75);
    }

    #[test]
    fn pure_decic_limit() {
        let s = solve_constraints(0.0, 0.0, 1.0, 0.0).unwrap();
        assert_eq!(s.params.tau, -1.0);
        assert_eq!(s.params.beta, 0.0);
        assert_eq!(s.params.alpha, 0.0);
        assert_eq!(s.energy, 0.0);
        // values established by match_coefficients, see the oracle test below
        assert_eq!(s.induced_a, 0.0);
        assert_eq!(s.induced_b, 6.0);
        assert!(match_coefficients(&s).within(0.0));
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            solve_constraints(1.0, -2.0, 0.0, 0.0),
            Err(Error::Domain { field: "e", .. })
        ));
        assert!(matches!(
            solve_constraints(1.0, -2.0, -1.0, 0.0),
            Err(Error::Domain { field: "e", .. })
        ));
        assert!(matches!(
            solve_constraints(1.0, -2.0, 4.0, -0.5),
            Err(Error::Domain { field: "eta", .. })
        ));
        assert!(solve_constraints(f64::NAN, -2.0, 4.0, 0.0).is_err());
    }

    #[test]
    fn residuals_vanish_for_worked_example() {
        let r = match_coefficients(&paper());
        for t in &r.terms {
            assert!(t.residual().abs() <= 1e-14, "{t:?}");
        }
    }

    #[test]
    fn perturbing_a_moves_only_r2() {
        let mut s = paper();
        s.potential.a += 1e-3;
        s.induced_a = s.potential.a;
        let r = match_coefficients(&s);
        assert!((r.residual(2).unwrap() + 1e-3).abs() <= 1e-15);
        for p in [-2, 0, 4, 6, 8, 10] {
            assert!(r.residual(p).unwrap().abs() <= 1e-14);
        }
        assert_eq!(r.failing(1e-11), vec![2]);
    }

    #[test]
    fn zero_solution_has_zero_residual() {
        let s = ExactSolution {
            params: AnsatzParams::new(0.0, 0.0, 0.0, 0.0),
            eta: 0.5,
            energy: 0.0,
            induced_a: 0.0,
            induced_b: 0.0,
            potential: OcticPotential::new(0.0, 0.0, 0.0, 0.0, 0.0),
            norm_constant: None,
        };
        assert_eq!(match_coefficients(&s).coefficients(), [0.0; 7]);
    }

    /// Independent oracle: the Laurent polynomial assembled from
    /// `match_coefficients` must equal `p″ + p′²` computed by central
    /// differences of `p` itself.
    #[test]
    fn expansion_matches_finite_differences_of_p() {
        let mut s = solve_constraints(0.7, 1.3, 2.1, 1.5).unwrap();
        // move off the solution manifold so residuals are non-trivial
        s.energy += 0.3;
        s.potential.b -= 0.2;
        let lr = match_coefficients(&s);
        let p = s.params;
        for &r in &[0.4, 0.8, 1.1, 1.6] {
            let hstep = 1e-4;
            let (pm, p0, pp) = (
                p.log_amplitude(r - hstep),
                p.log_amplitude(r),
                p.log_amplitude(r + hstep),
            );
            let d1 = (pp - pm) / (2.0 * hstep);
            let d2 = (pp - 2.0 * p0 + pm) / (hstep * hstep);
            let fd = d2 + d1 * d1;
            let laurent: f64 = lr.terms.iter().map(|t| t.expansion * r.powi(t.power)).sum();
            assert!(
                (fd - laurent).abs() < 1e-5 * laurent.abs().max(1.0),
                "r={r}: {fd} vs {laurent}"
            );
            let target: f64 = lr.terms.iter().map(|t| t.target * r.powi(t.power)).sum();
            let direct = s.potential.value(r) - s.energy + (s.eta * s.eta - 0.25) / (r * r);
            assert!((target - direct).abs() < 1e-12 * direct.abs().max(1.0));
        }
    }

    #[test]
    fn wavefunction_values() {
        let w = paper().wavefunction();
        assert_eq!(w.eval(0.0).unwrap(), 0.0);
        assert!(w.eval(-1.0).is_err());
        let want = (-0.5 * 0.1875 - 0.125 - 2.0 / 6.0_f64).exp();
        assert!((w.eval(1.0).unwrap() - want).abs() < 1e-15);
        assert!((w.eval(1.0).unwrap() - 0.57575).abs() < 1e-5);
        // R ~ r^{1/2} near the origin
        let r = 1e-8;
        assert!((w.eval(r).unwrap() / r.sqrt() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn worked_example_has_single_peak() {
        let p = paper().params;
        let radii = p.stationary_radii();
        assert_eq!(radii.len(), 1);
        assert!(p.dp(radii[0]).abs() < 1e-12);
        assert_eq!(p.peak_radius(), Some(radii[0]));
    }

    #[test]
    fn solvability_round_trip() {
        let s = paper();
        let back = check_solvability(&s.potential, s.eta, 1e-9).unwrap();
        assert!((back.energy - s.energy).abs() <= 1e-12);

        let mut v = s.potential;
        v.a = -1.96;
        assert!(matches!(
            check_solvability(&v, 0.0, 1e-9),
            Err(Error::NotSolvable { field: "a", .. })
        ));
        let mut v = s.potential;
        v.b = 11.8;
        assert!(matches!(
            check_solvability(&v, 0.0, 1e-9),
            Err(Error::NotSolvable { field: "b", .. })
        ));
    }

    fn random_inputs() -> impl Strategy<Value = (f64, f64, f64, f64)> {
        (
            -10.0..10.0f64,
            -10.0..10.0f64,
            0.1f64..=10.0,
            (0u32..=10).prop_map(|k| 0.5 * k as f64),
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn coefficient_match_holds((c, d, e, eta) in random_inputs()) {
            let s = solve_constraints(c, d, e, eta).unwrap();
            let lr = match_coefficients(&s);
            prop_assert!(lr.within(1e-11), "{:?}", lr);
        }

        #[test]
        fn invariants_hold((c, d, e, eta) in random_inputs()) {
            let s = solve_constraints(c, d, e, eta).unwrap();
            let p = s.params;
            prop_assert!(p.tau < 0.0);
            prop_assert!(p.kappa > 0.0);
            prop_assert!((p.tau * p.tau - e).abs() <= 1e-13 * e);
            prop_assert!((2.0 * p.beta * p.tau - d).abs() <= 1e-13 * d.abs().max(1e-300));
            let c_back = p.beta * p.beta + 2.0 * p.alpha * p.tau;
            prop_assert!((c_back - c).abs() <= 1e-13 * (p.beta * p.beta + (2.0 * p.alpha * p.tau).abs()));
            prop_assert!((p.kappa * (p.kappa - 1.0) - (eta * eta - 0.25)).abs() <= 1e-13);
            prop_assert_eq!(s.energy, -p.alpha * (1.0 + 2.0 * p.kappa));
        }

        #[test]
        fn energy_sign_follows_discriminant((c, d, e, eta) in random_inputs()) {
            let s = solve_constraints(c, d, e, eta).unwrap();
            let disc = 4.0 * c * e - d * d;
            prop_assert_eq!(s.energy.signum(), disc.signum());
        }

        #[test]
        fn closed_forms_equal_direct((c, d, e, eta) in random_inputs()) {
            let s = solve_constraints(c, d, e, eta).unwrap();
            let p = s.params;
            let k = p.kappa;
            let se = e.sqrt();
            let a16 = (d.powi(4) - 8.0 * c * e * d * d + 16.0 * c * c * e * e
                + 64.0 * d * e * e * se * (k + 1.5)) / (64.0 * e.powi(3));
            let b16 = (8.0 * e * e * se * (5.0 + 2.0 * k) - d * (d * d - 4.0 * e * c)) / (8.0 * e * e);
            let e17 = -(1.0 + 2.0 * k) * (d * d - 4.0 * c * e) / (8.0 * e * se);
            let a_scale = p.alpha * p.alpha + (2.0 * p.beta * k).abs() + (3.0 * p.beta).abs();
            let b_scale = (2.0 * p.alpha * p.beta).abs() + (p.tau * (5.0 + 2.0 * k)).abs();
            prop_assert!((a16 - s.induced_a).abs() <= 1e-12 * a_scale);
            prop_assert!((b16 - s.induced_b).abs() <= 1e-12 * b_scale);
            prop_assert!((e17 - s.energy).abs() <= 1e-12 * s.energy.abs().max(f64::MIN_POSITIVE));
        }

        #[test]
        fn wavefunction_is_nodeless_and_decays((c, d, e, eta) in random_inputs()) {
            let s = solve_constraints(c, d, e, eta).unwrap();
            let p = s.params;
            let w = s.wavefunction();
            let rstar = *p.stationary_radii().last().unwrap();
            // log-spaced grid of 10^4 points over (1e-4, 1e2)
            let mut prev: Option<(f64, f64)> = None;
            for i in 0..10_000 {
                let r = 1e-4 * 10f64.powf(6.0 * i as f64 / 9_999.0);
                let v = w.value(r);
                prop_assert!(v >= 0.0);
                if v > 0.0 {
                    prop_assert!(p.log_amplitude(r).is_finite());
                }
                // compare logs: large α overflows R itself
                let lv = p.log_amplitude(r);
                if let Some((r1, l1)) = prev {
                    if r1 > rstar {
                        prop_assert!(lv < l1, "not decreasing at r={}", r);
                    }
                }
                prev = Some((r, lv));
            }
            // positivity where representable: log amplitude is finite everywhere on (0, ∞)
            prop_assert!(w.value(1e2) < 1e-300);
        }
    }
}

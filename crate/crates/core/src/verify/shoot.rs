//! Shooting with fixed-step RK4 and a Wronskian matching condition.

use serde::Serialize;

use super::RadialProblem;
use crate::error::{domain, Error, Result};
use crate::grid::count_sign_changes;

const MAX_BISECTIONS: usize = 200;
/// Outward integration starts this many `(s + 1)` grid steps from the origin,
/// so that RK4 never steps across the `r^s` behaviour at `r ~ h`.
const START_STEPS_PER_S: f64 = 50.0;
/// The two-term start truncates at `O(r⁴)`, so it must begin nearer the origin.
const FALLBACK_START_STEPS_PER_S: f64 = 10.0;
const RESCALE_ABOVE: f64 = 1e100;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShootResult {
    pub energy: f64,
    pub nodes: usize,
    pub iterations: usize,
    pub match_radius: f64,
    pub start_radius: f64,
}

struct Shooter<'a> {
    problem: &'a RadialProblem<'a>,
    series: Option<Vec<f64>>,
    s: f64,
    h: f64,
    n: usize,
    j_start: usize,
    j_match: usize,
}

/// Bisect on `E` inside `bracket` for the eigenvalue of the radial problem on
/// `(0, r_max)` with step `h = r_max / n`, then require `target_nodes` nodes.
pub fn shoot(
    problem: &RadialProblem<'_>,
    bracket: (f64, f64),
    r_max: f64,
    n: usize,
    target_nodes: usize,
    tol: f64,
) -> Result<ShootResult> {
    let (mut lo, mut hi) = bracket;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(domain("bracket", hi - lo, "need finite lo < hi"));
    }
    if !(r_max.is_finite() && r_max > 0.0) {
        return Err(domain("r_max", r_max, "must be finite and > 0"));
    }
    if n < 50 {
        return Err(Error::Grid(format!("need n >= 50, got {n}")));
    }
    if !(problem.eta >= 0.0) {
        return Err(domain("eta", problem.eta, "channel parameter must be >= 0"));
    }
    let shooter = Shooter::new(problem, r_max, n, 0.5 * (lo + hi));

    let mut f_lo = shooter.defect(lo);
    let f_hi = shooter.defect(hi);
    if f_lo == 0.0 || f_hi == 0.0 {
        let energy = if f_lo == 0.0 { lo } else { hi };
        return shooter.finish(energy, target_nodes, 0);
    }
    if (f_lo > 0.0) == (f_hi > 0.0) {
        return Err(Error::BracketNotStraddling {
            lo,
            hi,
            defect_lo: f_lo,
            defect_hi: f_hi,
        });
    }
    let mut iterations = 0;
    while hi - lo >= tol && iterations < MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f = shooter.defect(mid);
        iterations += 1;
        if f == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if (f > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f;
        } else {
            hi = mid;
        }
    }
    shooter.finish(0.5 * (lo + hi), target_nodes, iterations)
}

impl<'a> Shooter<'a> {
    fn new(problem: &'a RadialProblem<'a>, r_max: f64, n: usize, e_mid: f64) -> Self {
        let h = r_max / n as f64;
        let s = problem.eta + 0.5;
        // outermost classical turning point for the bracket centre
        let mut j_turn = None;
        let mut j_min = 1;
        let mut v_min = f64::INFINITY;
        for j in 1..n {
            let v = problem.effective(j as f64 * h);
            if v < e_mid {
                j_turn = Some(j);
            }
            if v < v_min {
                v_min = v;
                j_min = j;
            }
        }
        let upper = n - (n / 10).max(2);
        let j_raw = j_turn.unwrap_or(j_min).min(upper);
        let series = problem.potential.even_coefficients();
        let per_s = if series.is_some() {
            START_STEPS_PER_S
        } else {
            FALLBACK_START_STEPS_PER_S
        };
        let j_start = ((per_s * (s + 1.0)).ceil() as usize).min(j_raw / 2).max(1);
        let j_match = j_raw.max(j_start + 2).min(upper);
        Self {
            problem,
            series,
            s,
            h,
            n,
            j_start,
            j_match,
        }
    }

    fn rhs(&self, r: f64, e: f64, y: [f64; 2]) -> [f64; 2] {
        [y[1], (self.problem.effective(r) - e) * y[0]]
    }

    fn rk4_step(&self, r: f64, h: f64, e: f64, y: [f64; 2]) -> [f64; 2] {
        let k1 = self.rhs(r, e, y);
        let k2 = self.rhs(
            r + 0.5 * h,
            e,
            [y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]],
        );
        let k3 = self.rhs(
            r + 0.5 * h,
            e,
            [y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]],
        );
        let k4 = self.rhs(r + h, e, [y[0] + h * k3[0], y[1] + h * k3[1]]);
        [
            y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
        ]
    }

    /// `(u, u′)` of the regular solution at `r`, from `u = r^s w(r²)`.
    fn regular_start(&self, r: f64, e: f64) -> [f64; 2] {
        let s = self.s;
        let x = r * r;
        let (w, dw) = match &self.series {
            Some(v) => {
                // (2k+2)(2k+1+2s) c_{k+1} = Σ_j v_j c_{k−j} − E c_k
                let mut c = vec![1.0];
                let (mut w, mut dw) = (1.0, 0.0);
                let mut xk = 1.0;
                for k in 0..500 {
                    let conv: f64 = (0..v.len().min(k + 1)).map(|j| v[j] * c[k - j]).sum();
                    let m = (2 * k + 2) as f64;
                    let next = (conv - e * c[k]) / (m * (m - 1.0 + 2.0 * s));
                    c.push(next);
                    xk *= x;
                    let term = next * xk;
                    let dterm = m * term / r;
                    w += term;
                    dw += dterm;
                    if k > v.len() + 2
                        && term.abs() <= 1e-18 * w.abs()
                        && dterm.abs() <= 1e-18 * dw.abs()
                    {
                        break;
                    }
                }
                (w, dw)
            }
            None => {
                let c1 = (self.problem.potential.value(r) - e) / (2.0 * (2.0 * s + 1.0));
                (1.0 + c1 * x, 2.0 * c1 * r)
            }
        };
        let rs = r.powf(s);
        [rs * w, s * rs / r * w + rs * dw]
    }

    fn outward(&self, e: f64, mut samples: Option<&mut Vec<f64>>) -> [f64; 2] {
        let r0 = self.j_start as f64 * self.h;
        let mut y = self.regular_start(r0, e);
        if let Some(buf) = samples.as_deref_mut() {
            buf.push(y[0]);
        }
        for j in self.j_start..self.j_match {
            y = self.rk4_step(j as f64 * self.h, self.h, e, y);
            y = rescale(y);
            if let Some(buf) = samples.as_deref_mut() {
                buf.push(y[0]);
            }
        }
        y
    }

    fn inward(&self, e: f64, mut samples: Option<&mut Vec<f64>>) -> [f64; 2] {
        let mut y = [0.0, -1.0];
        for j in (self.j_match + 1..=self.n).rev() {
            y = self.rk4_step(j as f64 * self.h, -self.h, e, y);
            y = rescale(y);
            if let Some(buf) = samples.as_deref_mut() {
                buf.push(y[0]);
            }
        }
        y
    }

    /// Normalized Wronskian of the outward and inward solutions at the match
    /// point; zero exactly at eigenvalues.
    fn defect(&self, e: f64) -> f64 {
        let o = self.outward(e, None);
        let i = self.inward(e, None);
        let w = o[0] * i[1] - o[1] * i[0];
        w / (o[0].hypot(o[1]) * i[0].hypot(i[1]))
    }

    fn nodes(&self, e: f64) -> usize {
        let mut out = Vec::with_capacity(self.j_match - self.j_start + 1);
        let mut inn = Vec::with_capacity(self.n - self.j_match);
        self.outward(e, Some(&mut out));
        self.inward(e, Some(&mut inn));
        count_sign_changes(&out) + count_sign_changes(&inn)
    }

    fn finish(&self, energy: f64, target_nodes: usize, iterations: usize) -> Result<ShootResult> {
        let nodes = self.nodes(energy);
        if nodes != target_nodes {
            return Err(Error::NodeMismatch {
                expected: target_nodes,
                actual: nodes,
                energy,
            });
        }
        Ok(ShootResult {
            energy,
            nodes,
            iterations,
            match_radius: self.j_match as f64 * self.h,
            start_radius: self.j_start as f64 * self.h,
        })
    }
}

fn rescale(y: [f64; 2]) -> [f64; 2] {
    let m = y[0].abs().max(y[1].abs());
    if m > RESCALE_ABOVE {
        [y[0] / m, y[1] / m]
    } else {
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{EvenPolynomial, FnPotential};
    use std::f64::consts::PI;

    #[test]
    fn box_ground_state() {
        let v = EvenPolynomial(vec![]);
        let p = RadialProblem::new(&v, 0.5);
        let res = shoot(&p, (5.0, 15.0), 1.0, 1000, 0, 1e-10).unwrap();
        assert!((res.energy - PI * PI).abs() < 1e-8, "{}", res.energy);
        assert_eq!(res.nodes, 0);
    }

    #[test]
    fn box_excited_state_counts_a_node() {
        let v = EvenPolynomial(vec![]);
        let p = RadialProblem::new(&v, 0.5);
        let res = shoot(&p, (30.0, 50.0), 1.0, 1000, 1, 1e-10).unwrap();
        assert!((res.energy - 4.0 * PI * PI).abs() < 1e-7);
    }

    #[test]
    fn oscillator_without_series_start() {
        // closure potential has no even_coefficients: two-term Frobenius start
        let v = FnPotential(|r: f64| r * r);
        let p = RadialProblem::new(&v, 0.5);
        let res = shoot(&p, (2.0, 4.0), 8.0, 4000, 0, 1e-10).unwrap();
        assert!((res.energy - 3.0).abs() < 1e-6, "{}", res.energy);
    }

    #[test]
    fn two_dimensional_oscillator_s_wave() {
        let v = EvenPolynomial(vec![0.0, 1.0]);
        let p = RadialProblem::new(&v, 0.0);
        let res = shoot(&p, (1.0, 3.0), 8.0, 4000, 0, 1e-10).unwrap();
        assert!((res.energy - 2.0).abs() < 1e-8, "{}", res.energy);
    }

    #[test]
    fn bracket_must_straddle() {
        let v = EvenPolynomial(vec![]);
        let p = RadialProblem::new(&v, 0.5);
        match shoot(&p, (1.0, 5.0), 1.0, 1000, 0, 1e-10) {
            Err(Error::BracketNotStraddling {
                defect_lo,
                defect_hi,
                ..
            }) => assert_eq!(defect_lo > 0.0, defect_hi > 0.0),
            other => panic!("{other:?}"),
        }
        assert!(shoot(&p, (5.0, 1.0), 1.0, 1000, 0, 1e-10).is_err());
    }
}

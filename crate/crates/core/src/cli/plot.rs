use serde::Serialize;

use crate::ansatz::ExactSolution;
use crate::error::{domain, Result};
use crate::verify::{normalize, NormalizationResult};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlotRow {
    pub r: f64,
    pub unnormalized: f64,
    pub normalized: f64,
    pub v_effective: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlotData {
    pub rows: Vec<PlotRow>,
    pub normalization: NormalizationResult,
    /// Interior maximum of `R`, refined by golden-section search; `None` when
    /// the sampled maximum sits on the window edge.
    pub peak_radius: Option<f64>,
}

impl PlotData {
    pub const HEADER: &'static str = "r,R_unnormalized,R_normalized,V_effective";
}

/// Sample `R`, `N₀R` and `V_eff` on `points` equally spaced radii in `[r_min, r_max]`.
pub fn plot_data(
    sol: &ExactSolution,
    r_min: f64,
    r_max: f64,
    points: usize,
    rel_tol: f64,
) -> Result<PlotData> {
    if !(r_min > 0.0 && r_min.is_finite()) {
        return Err(domain("r_min", r_min, "must be finite and > 0"));
    }
    if !(r_max > r_min && r_max.is_finite()) {
        return Err(domain("r_max", r_max, "must be finite and > r_min"));
    }
    if points < 2 {
        return Err(domain("points", points as f64, "need at least 2 points"));
    }
    let normalization = normalize(sol, rel_tol)?;
    let step = (r_max - r_min) / (points - 1) as f64;
    let p = &sol.params;
    let rows: Vec<PlotRow> = (0..points)
        .map(|i| {
            let r = if i + 1 == points {
                r_max
            } else {
                r_min + i as f64 * step
            };
            let unnormalized = p.amplitude(r);
            PlotRow {
                r,
                unnormalized,
                normalized: normalization.n0 * unnormalized,
                v_effective: sol.potential.effective_value(sol.eta, r),
            }
        })
        .collect();

    let imax = rows
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.unnormalized.total_cmp(&b.1.unnormalized))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let peak_radius = (imax > 0 && imax + 1 < rows.len())
        .then(|| golden_max(|r| p.log_amplitude(r), rows[imax - 1].r, rows[imax + 1].r));

    Ok(PlotData {
        rows,
        normalization,
        peak_radius,
    })
}

fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > 1e-13 * (1.0 + a.abs()) {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        }
        if x1 >= x2 {
            break;
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ansatz::solve_constraints;

    #[test]
    fn columns_are_consistent() {
        let sol = solve_constraints(1.0, -2.0, 4.0, 0.0).unwrap();
        let data = plot_data(&sol, 1e-3, 4.0, 2000, 1e-9).unwrap();
        assert_eq!(data.rows.len(), 2000);
        assert_eq!(data.rows[0].r, 1e-3);
        assert_eq!(data.rows[1999].r, 4.0);
        for row in &data.rows {
            assert_eq!(row.normalized, data.normalization.n0 * row.unnormalized);
            assert_eq!(
                row.v_effective,
                sol.potential.value(row.r) - 0.25 / (row.r * row.r)
            );
        }
        let peak = data.peak_radius.unwrap();
        assert!(sol.params.dp(peak).abs() < 1e-6, "{peak}");
    }

    #[test]
    fn window_without_interior_peak() {
        let sol = solve_constraints(1.0, -2.0, 4.0, 0.0).unwrap();
        let data = plot_data(&sol, 1e-3, 0.1, 50, 1e-9).unwrap();
        assert_eq!(data.peak_radius, None);
    }

    #[test]
    fn golden_section_on_parabola() {
        let x = golden_max(|x| -(x - 0.7) * (x - 0.7), 0.0, 2.0);
        assert!((x - 0.7).abs() < 1e-7);
    }
}

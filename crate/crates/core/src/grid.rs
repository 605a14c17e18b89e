//! Uniform radial grids that never touch the origin.

use crate::error::{Error, Result};

/// A uniform grid `r_i = r_min + i·h`, `i = 0..n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    r_min: f64,
    h: f64,
    n: usize,
}

impl GridSpec {
    pub fn new(r_min: f64, h: f64, n: usize) -> Result<Self> {
        if !(r_min.is_finite() && r_min > 0.0) {
            return Err(Error::Grid(format!(
                "r_min must be finite and > 0, got {r_min}"
            )));
        }
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::Grid(format!(
                "spacing must be finite and > 0, got {h}"
            )));
        }
        if n < 3 {
            return Err(Error::Grid(format!("need at least 3 points, got {n}")));
        }
        Ok(Self { r_min, h, n })
    }

    /// `n` points spread evenly over `[r_min, r_max]`, both ends included.
    pub fn spanning(r_min: f64, r_max: f64, n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Grid(format!("need at least 3 points, got {n}")));
        }
        if !(r_max > r_min) {
            return Err(Error::Grid(format!("empty interval [{r_min}, {r_max}]")));
        }
        Self::new(r_min, (r_max - r_min) / (n - 1) as f64, n)
    }

    pub fn r_min(&self) -> f64 {
        self.r_min
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn r_max(&self) -> f64 {
        self.r(self.n - 1)
    }

    #[inline]
    pub fn r(&self, i: usize) -> f64 {
        self.r_min + i as f64 * self.h
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.r(i))
    }

    pub fn sample(&self, f: impl Fn(f64) -> f64) -> Result<GridFunction> {
        GridFunction::new(*self, self.points().map(f).collect())
    }
}

/// Values sampled on a [`GridSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    grid: GridSpec,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(grid: GridSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Grid(format!(
                "{} values for a grid of {} points",
                values.len(),
                grid.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Grid(format!(
                "non-finite value {} at r = {}",
                values[i],
                grid.r(i)
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.grid.points().zip(self.values.iter().copied())
    }

    /// Discrete L² norm `sqrt(Σ v² h)`.
    pub fn l2_norm(&self) -> f64 {
        (self.values.iter().map(|v| v * v).sum::<f64>() * self.grid.h).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Number of strict sign changes, ignoring exact zeros.
    pub fn sign_changes(&self) -> usize {
        count_sign_changes(&self.values)
    }

    /// Sign changes among entries larger than `1e−10 × max |v|`. Smaller
    /// entries sit at the round-off level of a computed eigenvector, where
    /// the sign carries no information.
    pub fn nodes(&self) -> usize {
        let floor = NODE_FLOOR * self.max_abs();
        let significant: Vec<f64> = self
            .values
            .iter()
            .map(|&v| if v.abs() > floor { v } else { 0.0 })
            .collect();
        count_sign_changes(&significant)
    }
}

const NODE_FLOOR: f64 = 1e-10;

pub(crate) fn count_sign_changes(values: &[f64]) -> usize {
    let mut last = 0.0_f64;
    let mut changes = 0;
    for &v in values {
        if v == 0.0 {
            continue;
        }
        if last != 0.0 && (v > 0.0) != (last > 0.0) {
            changes += 1;
        }
        last = v;
    }
    changes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_origin_and_short_grids() {
        assert!(GridSpec::new(0.0, 0.1, 10).is_err());
        assert!(GridSpec::new(-1.0, 0.1, 10).is_err());
        assert!(GridSpec::new(0.1, 0.0, 10).is_err());
        assert!(GridSpec::new(0.1, 0.1, 2).is_err());
    }

    #[test]
    fn spanning_hits_both_ends() {
        let g = GridSpec::spanning(1e-3, 4.0, 2000).unwrap();
        assert_eq!(g.r(0), 1e-3);
        assert!((g.r_max() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_finite_values() {
        let g = GridSpec::new(0.5, 0.5, 3).unwrap();
        assert!(GridFunction::new(g, vec![1.0, f64::NAN, 0.0]).is_err());
        assert!(GridFunction::new(g, vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn nodes_ignore_round_off_tail() {
        let g = GridSpec::new(0.1, 0.1, 5).unwrap();
        let f = GridFunction::new(g, vec![0.5, 1.0, 1e-30, -1e-31, 1e-32]).unwrap();
        assert_eq!(f.sign_changes(), 2);
        assert_eq!(f.nodes(), 0);
        let f = GridFunction::new(g, vec![0.5, 1.0, 0.2, -0.3, -1e-12]).unwrap();
        assert_eq!(f.nodes(), 1);
    }

    #[test]
    fn sign_changes_skip_zeros() {
        assert_eq!(count_sign_changes(&[1.0, 0.0, -1.0, -2.0, 0.0, 3.0]), 2);
        assert_eq!(count_sign_changes(&[0.0, 0.0]), 0);
    }
}

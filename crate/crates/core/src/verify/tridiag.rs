//! Symmetric tridiagonal eigenvalues by Sturm-count bisection, eigenvectors
//! by inverse iteration.

use crate::error::{Error, Result};

const INVERSE_ITERATION_CAP: usize = 30;

#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl SymTridiagonal {
    /// `off[i]` couples rows `i` and `i + 1`.
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert!(!diag.is_empty(), "empty operator");
        assert_eq!(off.len() + 1, diag.len(), "off-diagonal length");
        Self { diag, off }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off(&self) -> &[f64] {
        &self.off
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    fn norm(&self) -> f64 {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs())
    }

    /// Number of eigenvalues strictly below `x` (negative pivots of `T − xI = LDLᵀ`).
    pub fn sturm_count(&self, x: f64) -> usize {
        let max_off2 = self.off.iter().fold(1.0_f64, |m, e| m.max(e * e));
        let pivmin = f64::MIN_POSITIVE * max_off2;
        let mut count = 0;
        let mut q = 1.0;
        for i in 0..self.dim() {
            q = if i == 0 {
                self.diag[0] - x
            } else {
                self.diag[i] - x - self.off[i - 1] * self.off[i - 1] / q
            };
            if q.abs() <= pivmin {
                q = -pivmin;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `index`-th smallest eigenvalue (0-based), bisected to adjacent floats.
    pub fn eigenvalue(&self, index: usize) -> Result<f64> {
        if index >= self.dim() {
            return Err(Error::TooManyEigenvalues {
                requested: index + 1,
                dimension: self.dim(),
            });
        }
        let (g_lo, g_hi) = self.gershgorin();
        let pad = f64::EPSILON * self.norm() * 4.0 + f64::MIN_POSITIVE;
        let (mut lo, mut hi) = (g_lo - pad, g_hi + pad);
        for _ in 0..2000 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.sturm_count(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// The `k` smallest eigenvalues, ascending.
    pub fn smallest(&self, k: usize) -> Result<Vec<f64>> {
        if k > self.dim() {
            return Err(Error::TooManyEigenvalues {
                requested: k,
                dimension: self.dim(),
            });
        }
        (0..k).map(|i| self.eigenvalue(i)).collect()
    }

    /// Unit-norm (Euclidean) eigenvector for `lambda`, orthogonalised
    /// against `previous`.
    pub fn eigenvector(&self, lambda: f64, previous: &[Vec<f64>]) -> Result<Vec<f64>> {
        let lu = ShiftedLu::factor(self, lambda);
        let n = self.dim();
        // deterministic, non-degenerate start
        let mut x: Vec<f64> = (0..n)
            .map(|i| 1.0 + 0.1 * ((i * 7919) % 13) as f64)
            .collect();
        normalize(&mut x);
        for _ in 0..INVERSE_ITERATION_CAP {
            let mut y = lu.solve(&x);
            for p in previous {
                let dot: f64 = y.iter().zip(p).map(|(a, b)| a * b).sum();
                y.iter_mut().zip(p).for_each(|(a, b)| *a -= dot * b);
            }
            let growth = normalize(&mut y);
            let dot: f64 = y.iter().zip(&x).map(|(a, b)| a * b).sum();
            if dot < 0.0 {
                y.iter_mut().for_each(|v| *v = -*v);
            }
            let change = y
                .iter()
                .zip(&x)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            x = y;
            if growth.is_finite() && change <= 1e-13 {
                return Ok(x);
            }
        }
        Err(Error::InverseIteration {
            eigenvalue: lambda,
            iterations: INVERSE_ITERATION_CAP,
        })
    }
}

fn normalize(v: &mut [f64]) -> f64 {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n > 0.0 && n.is_finite() {
        v.iter_mut().for_each(|x| *x /= n);
    }
    n
}

/// LU factorization of `T − σI` with partial pivoting; U has two superdiagonals.
struct ShiftedLu {
    u0: Vec<f64>,
    u1: Vec<f64>,
    u2: Vec<f64>,
    mult: Vec<f64>,
    swapped: Vec<bool>,
}

impl ShiftedLu {
    fn factor(t: &SymTridiagonal, sigma: f64) -> Self {
        let n = t.dim();
        let tiny = f64::EPSILON * t.norm().max(f64::MIN_POSITIVE);
        let mut d: Vec<f64> = t.diag.iter().map(|v| v - sigma).collect();
        let mut du: Vec<f64> = t.off.clone();
        let mut dl: Vec<f64> = t.off.clone();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut mult = vec![0.0; n.saturating_sub(1)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i] == 0.0 {
                    d[i] = tiny;
                }
                let m = dl[i] / d[i];
                mult[i] = m;
                d[i + 1] -= m * du[i];
            } else {
                swapped[i] = true;
                let m = d[i] / dl[i];
                mult[i] = m;
                d[i] = dl[i];
                let tmp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = tmp - m * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -m;
                }
            }
            dl[i] = 0.0;
        }
        for v in d.iter_mut() {
            if v.abs() < tiny {
                *v = if *v < 0.0 { -tiny } else { tiny };
            }
        }
        Self {
            u0: d,
            u1: du,
            u2: du2,
            mult,
            swapped,
        }
    }

    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.u0.len();
        let mut x = b.to_vec();
        for i in 0..n - 1 {
            if self.swapped[i] {
                x.swap(i, i + 1);
            }
            x[i + 1] -= self.mult[i] * x[i];
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            if i + 1 < n {
                s -= self.u1[i] * x[i + 1];
            }
            if i + 2 < n {
                s -= self.u2[i] * x[i + 2];
            }
            x[i] = s / self.u0[i];
        }
        x
    }
}

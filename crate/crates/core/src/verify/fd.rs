//! Second-order finite-difference eigensolver for the radial equation.

use serde::Serialize;

use super::tridiag::SymTridiagonal;
use super::RadialProblem;
use crate::error::{domain, Error, Result};
use crate::grid::{GridFunction, GridSpec};

/// How `−u″ + V_eff u` is discretized. Both give a symmetric tridiagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// Writes `u = r^s w` with `s = η + ½`, so that
    /// `−u″ + (η² − ¼)/r² u = −r^{−s} (r^{2s} w′)′`, and discretizes the flux
    /// form on cell centres `r_i = (i − ½) h`. The flux through the origin
    /// vanishes, which selects the regular solution for every `η ≥ 0`.
    #[default]
    Weighted,
    /// Plain `(2/h² + V_eff(r_i), −1/h²)` stencil on nodes `r_i = i h` with
    /// `u(0) = u(r_max) = 0`. Second order only when the centrifugal term is
    /// absent or repulsive; at `η = 0` it converges logarithmically.
    ThreePoint,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchemeDescriptor {
    pub scheme: Scheme,
    pub stencil_order: u32,
    pub h: f64,
    pub unknowns: usize,
    pub r_first: f64,
    pub r_max: f64,
    pub boundary: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult {
    /// Eigenvalues on the requested grid, ascending.
    pub eigenvalues: Vec<f64>,
    /// `(4 E_{h/2} − E_h)/3`; equals `eigenvalues` when Richardson is off.
    pub extrapolated: Vec<f64>,
    /// `|E_{h/2} − E_h| / 3` per eigenvalue; zero when Richardson is off.
    pub error_estimate: Vec<f64>,
    /// Unit discrete-L² eigenvectors on the requested grid.
    pub eigenvectors: Option<Vec<GridFunction>>,
    pub scheme: SchemeDescriptor,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdSolver {
    pub r_max: f64,
    /// Cells for [`Scheme::Weighted`], intervals for [`Scheme::ThreePoint`]; `h = r_max / n`.
    pub n: usize,
    pub k: usize,
    pub scheme: Scheme,
    pub eigenvectors: bool,
    pub richardson: bool,
}

impl FdSolver {
    pub fn new(r_max: f64, n: usize, k: usize) -> Self {
        Self {
            r_max,
            n,
            k,
            scheme: Scheme::Weighted,
            eigenvectors: false,
            richardson: true,
        }
    }

    pub fn scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn with_eigenvectors(mut self, on: bool) -> Self {
        self.eigenvectors = on;
        self
    }

    pub fn with_richardson(mut self, on: bool) -> Self {
        self.richardson = on;
        self
    }

    fn check(&self, problem: &RadialProblem<'_>) -> Result<()> {
        if !(self.r_max.is_finite() && self.r_max > 0.0) {
            return Err(domain("r_max", self.r_max, "must be finite and > 0"));
        }
        if self.n < 50 {
            return Err(Error::Grid(format!("need n >= 50, got {}", self.n)));
        }
        if self.k == 0 {
            return Err(domain("k", 0.0, "need at least one eigenvalue"));
        }
        if !(problem.eta >= 0.0) {
            return Err(domain("eta", problem.eta, "channel parameter must be >= 0"));
        }
        Ok(())
    }

    pub fn solve(&self, problem: &RadialProblem<'_>) -> Result<EigenResult> {
        self.check(problem)?;
        let (op, grid) = assemble(problem, self.scheme, self.r_max, self.n);
        let eigenvalues = op.smallest(self.k)?;

        let eigenvectors = if self.eigenvectors {
            let mut raw: Vec<Vec<f64>> = Vec::with_capacity(self.k);
            for &l in &eigenvalues {
                let v = op.eigenvector(l, &raw)?;
                raw.push(v);
            }
            let scale = grid.h().sqrt().recip();
            let vecs = raw
                .into_iter()
                .map(|mut v| {
                    let sign = if v.iter().sum::<f64>() < 0.0 {
                        -scale
                    } else {
                        scale
                    };
                    v.iter_mut().for_each(|x| *x *= sign);
                    GridFunction::new(grid, v)
                })
                .collect::<Result<Vec<_>>>()?;
            Some(vecs)
        } else {
            None
        };

        let (extrapolated, error_estimate) = if self.richardson {
            let (fine, _) = assemble(problem, self.scheme, self.r_max, 2 * self.n);
            let fine = fine.smallest(self.k)?;
            eigenvalues
                .iter()
                .zip(&fine)
                .map(|(c, f)| ((4.0 * f - c) / 3.0, (f - c).abs() / 3.0))
                .unzip()
        } else {
            (eigenvalues.clone(), vec![0.0; self.k])
        };

        Ok(EigenResult {
            eigenvalues,
            extrapolated,
            error_estimate,
            eigenvectors,
            scheme: SchemeDescriptor {
                scheme: self.scheme,
                stencil_order: 2,
                h: grid.h(),
                unknowns: grid.len(),
                r_first: grid.r_min(),
                r_max: self.r_max,
                boundary: match self.scheme {
                    Scheme::Weighted => "zero flux at r=0 (regular solution), u(r_max)=0",
                    Scheme::ThreePoint => "u(0)=0, u(r_max)=0",
                },
            },
        })
    }
}

/// Lowest `k` eigenvalues of the radial problem on `(0, r_max)` with `n`
/// cells, plus a Richardson estimate from a second solve at `h/2`.
pub fn fd_eigensolve(
    problem: &RadialProblem<'_>,
    r_max: f64,
    n: usize,
    k: usize,
) -> Result<EigenResult> {
    FdSolver::new(r_max, n, k).solve(problem)
}

fn assemble(
    problem: &RadialProblem<'_>,
    scheme: Scheme,
    r_max: f64,
    n: usize,
) -> (SymTridiagonal, GridSpec) {
    let h = r_max / n as f64;
    let inv_h2 = 1.0 / (h * h);
    match scheme {
        Scheme::Weighted => {
            let s2 = 2.0 * problem.eta + 1.0;
            let s = 0.5 * s2;
            let centre = |i: usize| (i as f64 - 0.5) * h;
            let mut diag = Vec::with_capacity(n);
            let mut off = Vec::with_capacity(n - 1);
            for i in 1..=n {
                let r = centre(i);
                let right = ((i as f64 * h) / r).powf(s2);
                let left = if i == 1 {
                    0.0
                } else {
                    (((i - 1) as f64 * h) / r).powf(s2)
                };
                let mut d = (right + left) * inv_h2 + problem.potential.value(r);
                if i == n {
                    // ghost cell u_{n+1} = −u_n puts the node u = 0 at r_max
                    let face = i as f64 * h;
                    d += (face * face / (r * centre(i + 1))).powf(s) * inv_h2;
                } else {
                    let face = i as f64 * h;
                    off.push(-(face * face / (r * centre(i + 1))).powf(s) * inv_h2);
                }
                diag.push(d);
            }
            let grid = GridSpec::new(0.5 * h, h, n).expect("n >= 50");
            (SymTridiagonal::new(diag, off), grid)
        }
        Scheme::ThreePoint => {
            let m = n - 1;
            let diag = (1..=m)
                .map(|i| 2.0 * inv_h2 + problem.effective(i as f64 * h))
                .collect();
            let off = vec![-inv_h2; m - 1];
            let grid = GridSpec::new(h, h, m).expect("n >= 50");
            (SymTridiagonal::new(diag, off), grid)
        }
    }
}

/// Ground-state eigenvalues over successively halved grids.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceStudy {
    pub n: Vec<usize>,
    pub eigenvalues: Vec<f64>,
    /// `log₂((E_h − E_{h/2}) / (E_{h/2} − E_{h/4}))` for each consecutive triple.
    pub self_orders: Vec<f64>,
    /// `log₂(|E_h − E*| / |E_{h/2} − E*|)` against a reference value.
    pub reference_orders: Option<Vec<f64>>,
}

pub fn convergence_study(
    problem: &RadialProblem<'_>,
    scheme: Scheme,
    r_max: f64,
    n0: usize,
    levels: usize,
    reference: Option<f64>,
) -> Result<ConvergenceStudy> {
    let mut ns = Vec::with_capacity(levels);
    let mut ev = Vec::with_capacity(levels);
    for l in 0..levels {
        let n = n0 << l;
        let res = FdSolver::new(r_max, n, 1)
            .scheme(scheme)
            .with_richardson(false)
            .solve(problem)?;
        ns.push(n);
        ev.push(res.eigenvalues[0]);
    }
    let self_orders = ev
        .windows(3)
        .map(|w| ((w[0] - w[1]) / (w[1] - w[2])).log2())
        .collect();
    let reference_orders = reference.map(|e| {
        ev.windows(2)
            .map(|w| ((w[0] - e).abs() / (w[1] - e).abs()).log2())
            .collect()
    });
    Ok(ConvergenceStudy {
        n: ns,
        eigenvalues: ev,
        self_orders,
        reference_orders,
    })
}

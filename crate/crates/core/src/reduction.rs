//! Reduction of the `N`-dimensional radial equation to a single channel.
//!
//! With `ψ = r^ρ R` and `ρ = −(N−1)/2` the first-derivative term drops out and
//! `R` obeys `R″ + [E − V − (η² − ¼)/r²] R = 0` with `η = ℓ + (N−2)/2`.

use crate::error::{domain, Result};
use crate::grid::GridFunction;

/// Channel data derived from the dimension and angular momentum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReductionParams {
    dimension: u32,
    ell: u32,
    rho: f64,
    eta: f64,
}

impl ReductionParams {
    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// Exponent of the substitution `ψ = r^ρ R`.
    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }
}

/// Map `(N, ℓ)` to `(ρ, η)`. Both are half-integers, so the arithmetic is exact.
pub fn reduce(dimension: i64, ell: i64) -> Result<ReductionParams> {
    if dimension < 2 {
        return Err(domain("N", dimension as f64, "dimension must be >= 2"));
    }
    if ell < 0 {
        return Err(domain("ell", ell as f64, "angular momentum must be >= 0"));
    }
    if dimension > u32::MAX as i64 || ell > u32::MAX as i64 {
        return Err(domain("N", dimension as f64, "value out of range"));
    }
    Ok(ReductionParams {
        dimension: dimension as u32,
        ell: ell as u32,
        rho: 0.5 * (1 - dimension) as f64,
        eta: 0.5 * (2 * ell + dimension - 2) as f64,
    })
}

#[inline]
pub(crate) fn centrifugal(eta: f64, r: f64) -> f64 {
    (eta * eta - 0.25) / (r * r)
}

/// `(η² − ¼)/r²`, the centrifugal part of the effective potential.
pub fn centrifugal_term(eta: f64, r: f64) -> Result<f64> {
    if !(r.is_finite() && r > 0.0) {
        return Err(domain("r", r, "centrifugal term is singular at r <= 0"));
    }
    Ok(centrifugal(eta, r))
}

/// Recover `ψ(r) = r^{−(N−1)/2} R(r)` on the grid of `radial`.
pub fn lift_wavefunction(radial: &GridFunction, dimension: i64) -> Result<GridFunction> {
    let params = reduce(dimension, 0)?;
    let rho = params.rho();
    let values = radial.iter().map(|(r, v)| r.powf(rho) * v).collect();
    GridFunction::new(*radial.grid(), values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridSpec;

    #[test]
    fn two_dimensions_is_the_identity_channel() {
        let p = reduce(2, 0).unwrap();
        assert_eq!(p.rho(), -0.5);
        assert_eq!(p.eta(), 0.0);
        for m in 0..20 {
            assert_eq!(reduce(2, m).unwrap().eta(), m as f64);
        }
    }

    #[test]
    fn three_dimensions_p_wave() {
        let p = reduce(3, 1).unwrap();
        assert_eq!(p.rho(), -1.0);
        assert_eq!(p.eta(), 1.5);
    }

    #[test]
    fn rejects_bad_inputs_by_field() {
        match reduce(1, 0) {
            Err(crate::Error::Domain { field, .. }) => assert_eq!(field, "N"),
            other => panic!("{other:?}"),
        }
        match reduce(3, -1) {
            Err(crate::Error::Domain { field, .. }) => assert_eq!(field, "ell"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn centrifugal_examples() {
        for r in [1e-3, 0.7, 1.0, 42.0] {
            assert_eq!(centrifugal_term(0.5, r).unwrap(), 0.0);
        }
        assert_eq!(centrifugal_term(0.0, 1.0).unwrap(), -0.25);
        assert_eq!(centrifugal_term(1.5, 2.0).unwrap(), 0.5);
        assert!(centrifugal_term(1.0, 0.0).is_err());
        assert!(centrifugal_term(1.0, -1.0).is_err());
        assert!(centrifugal_term(1.0, f64::NAN).is_err());
    }

    #[test]
    fn centrifugal_recovers_eta_squared() {
        for &eta in &[0.0, 0.5, 1.0, 2.5, 7.0] {
            let mut r: f64 = 1e-3;
            while r <= 1e3 {
                let back = centrifugal_term(eta, r).unwrap() * r * r + 0.25;
                let want = eta * eta;
                assert!(
                    (back - want).abs() <= 1e-13 * want.max(0.25),
                    "eta {eta} r {r}"
                );
                r *= 1.37;
            }
        }
    }

    #[test]
    fn lift_cancels_exponents() {
        let g = GridSpec::spanning(0.01, 3.0, 50).unwrap();
        let sqrt = g.sample(f64::sqrt).unwrap();
        for v in lift_wavefunction(&sqrt, 2).unwrap().values() {
            assert!((v - 1.0).abs() < 1e-14);
        }
        let lin = g.sample(|r| r).unwrap();
        for v in lift_wavefunction(&lin, 3).unwrap().values() {
            assert!((v - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn lift_round_trip() {
        let g = GridSpec::spanning(1e-3, 10.0, 777).unwrap();
        let radial = g.sample(|r| (1.0 + r).ln() * (-r).exp()).unwrap();
        for n in 2..=12 {
            let psi = lift_wavefunction(&radial, n).unwrap();
            let half = 0.5 * (n - 1) as f64;
            for ((r, back), orig) in psi.iter().zip(radial.values()) {
                let restored = back * r.powf(half);
                assert!((restored - orig).abs() <= 1e-14 * orig.abs().max(1e-300));
            }
        }
    }

    #[test]
    fn lift_rejects_low_dimension() {
        let g = GridSpec::spanning(0.1, 1.0, 5).unwrap();
        let f = g.sample(|r| r).unwrap();
        assert!(lift_wavefunction(&f, 1).is_err());
    }
}

//! The octic potential `V(r) = a r² − b r⁴ + c r⁶ − d r⁸ + e r¹⁰`.
//!
//! Coefficients are stored with the signs exactly as they appear in that
//! expression, so `d = −2` contributes `+2 r⁸`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::reduction::centrifugal;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OcticPotential {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
}

impl OcticPotential {
    pub fn new(a: f64, b: f64, c: f64, d: f64, e: f64) -> Self {
        Self { a, b, c, d, e }
    }

    /// Coefficients `v_j` of `V(r) = Σ v_j r^{2j}`, `j = 0..=5`.
    pub fn even_coefficients(&self) -> [f64; 6] {
        [0.0, self.a, -self.b, self.c, -self.d, self.e]
    }

    /// Horner evaluation in `r²`; no argument checks.
    #[inline]
    pub fn value(&self, r: f64) -> f64 {
        let x = r * r;
        x * (self.a + x * (-self.b + x * (self.c + x * (-self.d + x * self.e))))
    }

    pub fn evaluate(&self, r: f64) -> Result<f64> {
        if !r.is_finite() {
            return Err(domain("r", r, "must be finite"));
        }
        if r < 0.0 {
            return Err(domain("r", r, "radial coordinate must be >= 0"));
        }
        Ok(self.value(r))
    }

    #[inline]
    pub fn effective_value(&self, eta: f64, r: f64) -> f64 {
        self.value(r) + centrifugal(eta, r)
    }

    /// `V(r) + (η² − ¼)/r²`.
    pub fn effective_potential(&self, eta: f64, r: f64) -> Result<f64> {
        if !(r.is_finite() && r > 0.0) {
            return Err(domain("r", r, "effective potential is singular at r <= 0"));
        }
        Ok(self.effective_value(eta, r))
    }

    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();
        for (name, v) in [
            ("a", self.a),
            ("b", self.b),
            ("c", self.c),
            ("d", self.d),
            ("e", self.e),
        ] {
            if !v.is_finite() {
                issues.push(ValidationIssue::NonFinite {
                    field: name,
                    value: v,
                });
            }
        }
        if issues.is_empty() {
            if self.e <= 0.0 {
                issues.push(ValidationIssue::ConfinementViolated { e: self.e });
            }
            if self.d >= 0.0 {
                issues.push(ValidationIssue::PositiveD { d: self.d });
            }
        }
        let confinement_radius = if issues.iter().any(ValidationIssue::is_fatal) {
            None
        } else {
            Some(self.confinement_radius())
        };
        ValidationReport {
            issues,
            confinement_radius,
        }
    }

    /// A radius beyond which `V(r) > 0`.
    ///
    /// Uses `V(r) ≥ r² q(r²)` with `q(x) = e x⁴ − |d| x³ − |c| x² − |b| x − |a|`;
    /// `q` has a single positive root (one sign change) and is positive past it.
    /// Requires `e > 0`.
    fn confinement_radius(&self) -> f64 {
        let (a, b, c, d, e) = (
            self.a.abs(),
            self.b.abs(),
            self.c.abs(),
            self.d.abs(),
            self.e,
        );
        let q = |x: f64| x * x * x * (e * x - d) - c * x * x - b * x - a;
        if a == 0.0 && b == 0.0 && c == 0.0 && d == 0.0 {
            return 0.0;
        }
        let mut lo = 0.0;
        let mut hi = 1.0 + a.max(b).max(c).max(d) / e;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if q(mid) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi.sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ValidationIssue {
    NonFinite {
        field: &'static str,
        value: f64,
    },
    /// `e ≤ 0`: no confinement, `τ² = e` has no usable root.
    ConfinementViolated {
        e: f64,
    },
    /// `d ≥ 0` while the potential is documented with `d < 0`.
    PositiveD {
        d: f64,
    },
}

impl ValidationIssue {
    pub fn is_fatal(&self) -> bool {
        !matches!(self, ValidationIssue::PositiveD { .. })
    }
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NonFinite { field, value } => write!(f, "fatal: {field} = {value} is not finite"),
            Self::ConfinementViolated { e } => {
                write!(
                    f,
                    "fatal: confinement violated, e = {e} but e > 0 is required"
                )
            }
            Self::PositiveD { d } => {
                write!(
                    f,
                    "warning: d = {d} >= 0, the potential is documented with d < 0"
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
    /// `V(r) > 0` for every `r` beyond this radius. `None` when fatal.
    pub confinement_radius: Option<f64>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        !self.issues.iter().any(ValidationIssue::is_fatal)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &ValidationIssue> {
        self.issues.iter().filter(|i| !i.is_fatal())
    }

    pub fn fatal(&self) -> impl Iterator<Item = &ValidationIssue> {
        self.issues.iter().filter(|i| i.is_fatal())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn paper() -> OcticPotential {
        OcticPotential::new(-1.96484375, 11.8125, 1.0, -2.0, 4.0)
    }

    #[test]
    fn vanishes_at_origin() {
        assert_eq!(paper().evaluate(0.0).unwrap(), 0.0);
        assert_eq!(
            OcticPotential::new(3.0, 1.0, 2.0, 5.0, 7.0)
                .evaluate(0.0)
                .unwrap(),
            0.0
        );
    }

    #[test]
    fn monomials_at_one() {
        let v = OcticPotential::new(1.0, 0.0, 0.0, 0.0, 1.0);
        assert_eq!(v.evaluate(1.0).unwrap(), 2.0);
        assert_eq!(paper().evaluate(1.0).unwrap(), -6.77734375);
    }

    #[test]
    fn evaluate_rejects_bad_radius() {
        assert!(paper().evaluate(f64::INFINITY).is_err());
        assert!(paper().evaluate(f64::NAN).is_err());
        assert!(paper().evaluate(-0.5).is_err());
    }

    #[test]
    fn effective_potential_examples() {
        let v = paper();
        for r in [0.1, 1.0, 2.5] {
            assert_eq!(
                v.effective_potential(0.5, r).unwrap(),
                v.evaluate(r).unwrap()
            );
        }
        let zero = OcticPotential::new(0.0, 0.0, 0.0, 0.0, 0.0);
        assert_eq!(zero.effective_potential(0.0, 1.0).unwrap(), -0.25);
        assert_eq!(v.effective_potential(0.5, 1.0).unwrap(), -6.77734375);
        assert!(v.effective_potential(0.0, 0.0).is_err());
    }

    #[test]
    fn effective_minus_bare_is_centrifugal() {
        let v = paper();
        for &eta in &[0.0, 1.0, 3.5] {
            for i in 1..100 {
                let r = i as f64 * 0.037;
                let diff = v.effective_potential(eta, r).unwrap() - v.evaluate(r).unwrap();
                let cf = crate::reduction::centrifugal_term(eta, r).unwrap();
                // same expression, so only the final subtraction can round
                assert!((diff - cf).abs() <= 4.0 * f64::EPSILON * v.value(r).abs().max(cf.abs()));
            }
        }
    }

    #[test]
    fn validation_examples() {
        let ok = paper().validate();
        assert!(ok.is_valid());
        assert_eq!(ok.issues, vec![]);

        let flat = OcticPotential::new(0.0, 0.0, 1.0, -2.0, 0.0).validate();
        assert!(!flat.is_valid());
        assert!(matches!(
            flat.issues[0],
            ValidationIssue::ConfinementViolated { .. }
        ));
        assert!(flat.confinement_radius.is_none());

        let pos_d = OcticPotential::new(0.0, 0.0, 1.0, 2.0, 4.0).validate();
        assert!(pos_d.is_valid());
        assert_eq!(pos_d.warnings().count(), 1);
        assert!(pos_d.issues[0].to_string().starts_with("warning"));
    }

    #[test]
    fn confinement_radius_bounds_the_negative_region() {
        let v = paper();
        let rc = v.validate().confinement_radius.unwrap();
        assert!(rc > 0.0);
        let mut r = rc * (1.0 + 1e-12);
        while r < 10.0 * rc {
            assert!(v.value(r) > 0.0, "V({r}) = {}", v.value(r));
            r += 1e-3;
        }
        // the well really exists inside
        assert!(v.value(1.0) < 0.0);
    }

    fn naive(v: &OcticPotential, r: f64) -> (f64, f64) {
        let terms = [
            v.a * r.powi(2),
            -v.b * r.powi(4),
            v.c * r.powi(6),
            -v.d * r.powi(8),
            v.e * r.powi(10),
        ];
        (terms.iter().sum(), terms.iter().map(|t| t.abs()).sum())
    }

    proptest! {
        #[test]
        fn horner_matches_monomials(
            a in -100.0..100.0f64, b in -100.0..100.0f64, c in -100.0..100.0f64,
            d in -100.0..100.0f64, e in -100.0..100.0f64, r in 0.0..10.0f64,
        ) {
            let v = OcticPotential::new(a, b, c, d, e);
            let (sum, scale) = naive(&v, r);
            // relative to the term magnitudes; cancellation makes a bare relative bound meaningless
            prop_assert!((v.value(r) - sum).abs() <= 1e-12 * scale.max(f64::MIN_POSITIVE));
        }

        #[test]
        fn positive_beyond_confinement_radius(
            a in -100.0..100.0f64, b in -100.0..100.0f64, c in -100.0..100.0f64,
            d in -100.0..100.0f64, e in 0.01..100.0f64, t in 1.0..5.0f64,
        ) {
            let v = OcticPotential::new(a, b, c, d, e);
            let rc = v.validate().confinement_radius.unwrap();
            prop_assert!(v.value(rc * t * (1.0 + 1e-9) + 1e-12) > 0.0);
        }
    }
}

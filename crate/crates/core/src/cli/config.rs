//! JSON run-config schema.
//!
//! ```json
//! {
//!   "command": "verify",
//!   "potential": { "c": 1.0, "d": -2.0, "e": 4.0 },
//!   "channel": { "m": 0 },
//!   "overrides": {
//!     "tolerances": { "residual": 1e-11 },
//!     "grid": { "n": 4000, "r_max": 4.0 }
//!   },
//!   "output_path": "report.json"
//! }
//! ```
//!
//! `potential` may also carry `a` and `b`; they must then equal the values the
//! constraints induce. The channel is `{"m": m}` (shorthand for `N = 2`,
//! `ℓ = m`) or `{"N": N, "ell": ℓ}`. `scan` takes an extra block
//! `{"m_max": 2, "c": [...], "d": [...], "e": [...]}` whose lists replace the
//! single `potential` values. Grid keys `r_min` and `points` apply to `plot`,
//! `n` applies to the eigensolvers. Unknown keys anywhere are rejected.

use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::reduction::reduce;
use crate::verify::{GridPolicy, Tolerances, VerificationPolicy};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },

    #[error("malformed config: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{field}: {message}")]
    Field { field: String, message: String },
}

fn field_err(field: impl Into<String>, message: impl Into<String>) -> ConfigError {
    ConfigError::Field {
        field: field.into(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Solve,
    Verify,
    Scan,
    Plot,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Solve => "solve",
            Command::Verify => "verify",
            Command::Scan => "scan",
            Command::Plot => "plot",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub command: Option<Command>,
    pub potential: PotentialInputs,
    #[serde(default)]
    pub channel: Option<ChannelSpec>,
    #[serde(default)]
    pub overrides: Overrides,
    #[serde(default)]
    pub scan: Option<ScanSpec>,
    #[serde(default)]
    pub output_path: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialInputs {
    pub c: f64,
    pub d: f64,
    pub e: f64,
    #[serde(default)]
    pub a: Option<f64>,
    #[serde(default)]
    pub b: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelSpec {
    #[serde(default)]
    pub m: Option<i64>,
    #[serde(default, rename = "N")]
    pub dimension: Option<i64>,
    #[serde(default)]
    pub ell: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Overrides {
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub grid: GridOverrides,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridOverrides {
    pub n: Option<usize>,
    pub r_max: Option<f64>,
    pub r_min: Option<f64>,
    pub points: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanSpec {
    pub m_max: Option<i64>,
    pub c: Option<Vec<f64>>,
    pub d: Option<Vec<f64>>,
    pub e: Option<Vec<f64>>,
}

/// A validated angular channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Channel {
    #[serde(rename = "N")]
    pub dimension: u32,
    pub ell: u32,
    pub eta: f64,
}

impl Channel {
    pub fn new(dimension: i64, ell: i64) -> Result<Self, ConfigError> {
        let r = reduce(dimension, ell).map_err(|e| match e {
            crate::Error::Domain { field, reason, .. } => {
                field_err(format!("channel.{field}"), reason)
            }
            other => field_err("channel", other.to_string()),
        })?;
        Ok(Self {
            dimension: r.dimension(),
            ell: r.ell(),
            eta: r.eta(),
        })
    }
}

impl ChannelSpec {
    pub fn resolve(&self) -> Result<Channel, ConfigError> {
        match (self.m, self.dimension, self.ell) {
            (Some(m), None, None) => {
                if m < 0 {
                    return Err(field_err("channel.m", format!("must be >= 0, got {m}")));
                }
                Channel::new(2, m)
            }
            (None, Some(n), Some(ell)) => Channel::new(n, ell),
            (None, Some(_), None) => Err(field_err("channel.ell", "required together with N")),
            (None, None, Some(_)) => Err(field_err("channel.N", "required together with ell")),
            (None, None, None) => Err(field_err("channel", "give either {m} or {N, ell}")),
            _ => Err(field_err(
                "channel",
                "give either {m} or {N, ell}, not both",
            )),
        }
    }
}

fn check_e(field: &str, e: f64) -> Result<(), ConfigError> {
    if e.is_finite() && e > 0.0 {
        Ok(())
    } else {
        Err(field_err(field, format!("e > 0 is required, got {e}")))
    }
}

fn check_finite(field: &str, v: f64) -> Result<(), ConfigError> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(field_err(field, format!("must be finite, got {v}")))
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Field-level checks for running `command`.
    pub fn validate(&self, command: Command) -> Result<(), ConfigError> {
        if let Some(declared) = self.command {
            if declared != command {
                return Err(field_err(
                    "command",
                    format!("config declares `{declared}` but `{command}` was invoked"),
                ));
            }
        }
        let p = &self.potential;
        for (field, v) in [("potential.c", p.c), ("potential.d", p.d)] {
            check_finite(field, v)?;
        }
        for (field, v) in [("potential.a", p.a), ("potential.b", p.b)] {
            if let Some(v) = v {
                check_finite(field, v)?;
            }
        }
        let grid = &self.overrides.grid;
        if let Some(n) = grid.n {
            if n < 50 {
                return Err(field_err(
                    "overrides.grid.n",
                    format!("must be >= 50, got {n}"),
                ));
            }
        }
        if let Some(r) = grid.r_max {
            if !(r.is_finite() && r > 0.0) {
                return Err(field_err(
                    "overrides.grid.r_max",
                    format!("must be finite and > 0, got {r}"),
                ));
            }
        }
        let tol = &self.overrides.tolerances;
        for (field, v) in [
            ("coefficient", tol.coefficient),
            ("residual", tol.residual),
            ("eigenvalue", tol.eigenvalue),
            ("oracle_agreement", tol.oracle_agreement),
            ("quadrature", tol.quadrature),
            ("bisection", tol.bisection),
            ("eigenvector_l2", tol.eigenvector_l2),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(field_err(
                    format!("overrides.tolerances.{field}"),
                    format!("must be finite and >= 0, got {v}"),
                ));
            }
        }
        if matches!(command, Command::Plot) {
            if grid.n.is_some() {
                return Err(field_err(
                    "overrides.grid.n",
                    "not used by plot; use points",
                ));
            }
            if let Some(r) = grid.r_min {
                if !(r.is_finite() && r > 0.0) {
                    return Err(field_err(
                        "overrides.grid.r_min",
                        format!("must be finite and > 0, got {r}"),
                    ));
                }
            }
            if let Some(pts) = grid.points {
                if pts < 2 {
                    return Err(field_err(
                        "overrides.grid.points",
                        format!("must be >= 2, got {pts}"),
                    ));
                }
            }
        } else {
            if grid.r_min.is_some() {
                return Err(field_err(
                    "overrides.grid.r_min",
                    format!("only used by plot, not {command}"),
                ));
            }
            if grid.points.is_some() {
                return Err(field_err(
                    "overrides.grid.points",
                    format!("only used by plot, not {command}"),
                ));
            }
        }
        match command {
            Command::Scan => self.validate_scan(),
            _ => {
                if self.scan.is_some() {
                    return Err(field_err(
                        "scan",
                        format!("only used by scan, not {command}"),
                    ));
                }
                check_e("potential.e", p.e)?;
                self.channel()?;
                Ok(())
            }
        }
    }

    fn validate_scan(&self) -> Result<(), ConfigError> {
        let spec = self.scan.clone().unwrap_or_default();
        match (spec.m_max, &self.channel) {
            (Some(m), None) if m < 0 => {
                return Err(field_err("scan.m_max", format!("must be >= 0, got {m}")))
            }
            (Some(_), None) => {}
            (Some(_), Some(_)) => {
                return Err(field_err(
                    "scan.m_max",
                    "give either scan.m_max or channel, not both",
                ))
            }
            (None, _) => {
                self.channel()?;
            }
        }
        for (field, list) in [
            ("scan.c", &spec.c),
            ("scan.d", &spec.d),
            ("scan.e", &spec.e),
        ] {
            if let Some(list) = list {
                if list.is_empty() {
                    return Err(field_err(field, "must not be empty"));
                }
            }
        }
        Ok(())
    }

    /// The single channel of a solve/verify/plot run.
    pub fn channel(&self) -> Result<Channel, ConfigError> {
        self.channel
            .as_ref()
            .ok_or_else(|| field_err("channel", "missing; give either {m} or {N, ell}"))?
            .resolve()
    }

    /// Channels of a scan, in output order.
    pub fn scan_channels(&self) -> Result<Vec<Channel>, ConfigError> {
        match self.scan.as_ref().and_then(|s| s.m_max) {
            Some(m_max) => (0..=m_max).map(|m| Channel::new(2, m)).collect(),
            None => Ok(vec![self.channel()?]),
        }
    }

    /// `(c, d, e)` points of a scan: the Cartesian product of the scan lists,
    /// falling back to the single `potential` values.
    pub fn scan_points(&self) -> Vec<(f64, f64, f64)> {
        let spec = self.scan.clone().unwrap_or_default();
        let p = &self.potential;
        let cs = spec.c.unwrap_or_else(|| vec![p.c]);
        let ds = spec.d.unwrap_or_else(|| vec![p.d]);
        let es = spec.e.unwrap_or_else(|| vec![p.e]);
        let mut out = Vec::with_capacity(cs.len() * ds.len() * es.len());
        for &c in &cs {
            for &d in &ds {
                for &e in &es {
                    out.push((c, d, e));
                }
            }
        }
        out
    }

    pub fn policy(&self) -> VerificationPolicy {
        let g = &self.overrides.grid;
        let defaults = GridPolicy::default();
        VerificationPolicy {
            tolerances: self.overrides.tolerances,
            grid: GridPolicy {
                n: g.n.unwrap_or(defaults.n),
                r_max: g.r_max.or(defaults.r_max),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> RunConfig {
        RunConfig::from_json(s).unwrap()
    }

    const BASE: &str = r#"{"potential":{"c":1.0,"d":-2.0,"e":4.0},"channel":{"m":0}}"#;

    #[test]
    fn m_is_two_dimensional_alias() {
        let a = parse(BASE).channel().unwrap();
        let b = parse(r#"{"potential":{"c":1.0,"d":-2.0,"e":4.0},"channel":{"N":2,"ell":0}}"#)
            .channel()
            .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.eta, 0.0);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = RunConfig::from_json(
            r#"{"potential":{"c":1,"d":-2,"e":4},"channel":{"m":0},"overrides":{"tolerances":{"residul":1}}}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("residul"), "{err}");
    }

    #[test]
    fn field_level_messages() {
        let cfg = parse(r#"{"potential":{"c":1.0,"d":-2.0,"e":-1},"channel":{"m":0}}"#);
        let msg = cfg.validate(Command::Solve).unwrap_err().to_string();
        assert_eq!(msg, "potential.e: e > 0 is required, got -1");

        let cfg = parse(r#"{"potential":{"c":1,"d":-2,"e":4},"channel":{"m":0,"N":3}}"#);
        assert!(cfg
            .validate(Command::Solve)
            .unwrap_err()
            .to_string()
            .starts_with("channel:"));

        let cfg = parse(r#"{"potential":{"c":1,"d":-2,"e":4},"channel":{"N":1,"ell":0}}"#);
        assert!(cfg
            .validate(Command::Solve)
            .unwrap_err()
            .to_string()
            .starts_with("channel.N:"));

        let cfg = parse(r#"{"command":"plot","potential":{"c":1,"d":-2,"e":4},"channel":{"m":0}}"#);
        assert!(cfg
            .validate(Command::Solve)
            .unwrap_err()
            .to_string()
            .starts_with("command:"));
    }

    #[test]
    fn scan_points_are_a_product() {
        let cfg =
            parse(r#"{"potential":{"c":1,"d":-2,"e":4},"scan":{"m_max":1,"e":[1,0,4],"c":[1,2]}}"#);
        cfg.validate(Command::Scan).unwrap();
        assert_eq!(cfg.scan_channels().unwrap().len(), 2);
        let pts = cfg.scan_points();
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[1], (1.0, -2.0, 0.0));
    }

    #[test]
    fn overrides_reach_the_policy() {
        let cfg = parse(
            r#"{"potential":{"c":1,"d":-2,"e":4},"channel":{"m":0},
                "overrides":{"tolerances":{"residual":1e-20},"grid":{"n":800,"r_max":4}}}"#,
        );
        let p = cfg.policy();
        assert_eq!(p.tolerances.residual, 1e-20);
        assert_eq!(p.tolerances.coefficient, 1e-11);
        assert_eq!(p.grid.n, 800);
        assert_eq!(p.grid.r_max, Some(4.0));
    }
}

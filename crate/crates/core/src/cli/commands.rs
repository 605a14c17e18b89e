use rayon::prelude::*;
use serde::Serialize;

use super::config::{Channel, RunConfig};
use super::format::{csv_float, sig3};
use super::plot::{plot_data, PlotData};
use super::CliError;
use crate::ansatz::{check_solvability, solve_constraints, ExactSolution};
use crate::potential::OcticPotential;
use crate::verify::{verify_solution, VerificationReport};

const PLOT_R_MIN: f64 = 1e-3;
const PLOT_R_MAX: f64 = 4.0;
const PLOT_POINTS: usize = 2000;

/// Scan CSV columns, in order. `verified` is present only with `--verify`.
pub const SCAN_COLUMNS: [&str; 15] = [
    "N",
    "ell",
    "eta",
    "c",
    "d",
    "e",
    "kappa",
    "alpha",
    "beta",
    "tau",
    "induced_a",
    "induced_b",
    "energy",
    "verified",
    "error",
];

#[derive(Debug, Serialize)]
struct Display {
    alpha: String,
    beta: String,
    tau: String,
    kappa: String,
    induced_a: String,
    induced_b: String,
    energy: String,
}

#[derive(Debug, Serialize)]
struct SolveReport {
    channel: Channel,
    alpha: f64,
    beta: f64,
    tau: f64,
    kappa: f64,
    eta: f64,
    induced_a: f64,
    induced_b: f64,
    energy: f64,
    potential: OcticPotential,
    display: Display,
    warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<VerificationReport>,
}

#[derive(Debug, Serialize)]
struct VerifyOutput {
    channel: Channel,
    #[serde(flatten)]
    report: VerificationReport,
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

/// Solve for the configured channel, honouring explicit `a`, `b` if given.
fn solution(config: &RunConfig, channel: &Channel) -> crate::Result<ExactSolution> {
    let p = &config.potential;
    let sol = solve_constraints(p.c, p.d, p.e, channel.eta)?;
    if p.a.is_none() && p.b.is_none() {
        return Ok(sol);
    }
    let full = OcticPotential::new(
        p.a.unwrap_or(sol.induced_a),
        p.b.unwrap_or(sol.induced_b),
        p.c,
        p.d,
        p.e,
    );
    check_solvability(&full, channel.eta, config.overrides.tolerances.coefficient)
}

pub(super) fn solve(config: &RunConfig, with_verify: bool) -> Result<(String, bool), CliError> {
    let channel = config.channel()?;
    let sol = solution(config, &channel)?;
    let p = sol.params;
    let verification = with_verify.then(|| verify_solution(&sol, &config.policy()));
    let passed = verification.as_ref().is_none_or(|r| r.passed);
    let report = SolveReport {
        channel,
        alpha: p.alpha,
        beta: p.beta,
        tau: p.tau,
        kappa: p.kappa,
        eta: sol.eta,
        induced_a: sol.induced_a,
        induced_b: sol.induced_b,
        energy: sol.energy,
        potential: sol.potential,
        display: Display {
            alpha: sig3(p.alpha),
            beta: sig3(p.beta),
            tau: sig3(p.tau),
            kappa: sig3(p.kappa),
            induced_a: sig3(sol.induced_a),
            induced_b: sig3(sol.induced_b),
            energy: sig3(sol.energy),
        },
        warnings: sol
            .potential
            .validate()
            .warnings()
            .map(|w| w.to_string())
            .collect(),
        verification,
    };
    Ok((to_json(&report), passed))
}

pub(super) fn verify(config: &RunConfig) -> Result<(String, bool), CliError> {
    let channel = config.channel()?;
    let sol = solution(config, &channel)?;
    let report = verify_solution(&sol, &config.policy());
    let passed = report.passed;
    Ok((to_json(&VerifyOutput { channel, report }), passed))
}

/// One scan row: the inputs and either a solution or the error it produced.
#[derive(Debug, Clone)]
pub struct ScanRow {
    pub channel: Channel,
    pub inputs: (f64, f64, f64),
    pub outcome: Result<ExactSolution, String>,
    pub verified: Option<bool>,
}

/// Solve (and optionally verify) every channel × parameter point, in parallel,
/// returning rows in input order.
pub fn scan_rows(config: &RunConfig, with_verify: bool) -> Result<Vec<ScanRow>, CliError> {
    let channels = config.scan_channels()?;
    let points = config.scan_points();
    let policy = config.policy();
    let jobs: Vec<(Channel, (f64, f64, f64))> = channels
        .iter()
        .flat_map(|ch| points.iter().map(move |pt| (*ch, *pt)))
        .collect();
    Ok(jobs
        .into_par_iter()
        .map(|(channel, (c, d, e))| {
            let outcome = solve_constraints(c, d, e, channel.eta).map_err(|err| err.to_string());
            let verified = match (&outcome, with_verify) {
                (Ok(sol), true) => Some(verify_solution(sol, &policy).passed),
                _ => None,
            };
            ScanRow {
                channel,
                inputs: (c, d, e),
                outcome,
                verified,
            }
        })
        .collect())
}

pub(super) fn scan(config: &RunConfig, with_verify: bool) -> Result<(String, bool), CliError> {
    let rows = scan_rows(config, with_verify)?;
    let mut w = csv_writer();
    let header: Vec<&str> = SCAN_COLUMNS
        .iter()
        .copied()
        .filter(|c| with_verify || *c != "verified")
        .collect();
    w.write_record(&header).expect("in-memory write");
    for row in &rows {
        let (c, d, e) = row.inputs;
        let mut rec = vec![
            row.channel.dimension.to_string(),
            row.channel.ell.to_string(),
            csv_float(row.channel.eta),
            csv_float(c),
            csv_float(d),
            csv_float(e),
        ];
        match &row.outcome {
            Ok(sol) => {
                let p = sol.params;
                rec.extend(
                    [
                        p.kappa,
                        p.alpha,
                        p.beta,
                        p.tau,
                        sol.induced_a,
                        sol.induced_b,
                        sol.energy,
                    ]
                    .map(csv_float),
                );
            }
            Err(_) => rec.extend(std::iter::repeat_n(String::new(), 7)),
        }
        if with_verify {
            rec.push(row.verified.map(|v| v.to_string()).unwrap_or_default());
        }
        rec.push(row.outcome.as_ref().err().cloned().unwrap_or_default());
        w.write_record(&rec).expect("in-memory write");
    }
    let passed = rows.iter().all(|r| r.verified != Some(false));
    Ok((finish_csv(w), passed))
}

pub(super) fn plot(config: &RunConfig) -> Result<String, CliError> {
    let channel = config.channel()?;
    let sol = solution(config, &channel)?;
    let g = &config.overrides.grid;
    let data: PlotData = plot_data(
        &sol,
        g.r_min.unwrap_or(PLOT_R_MIN),
        g.r_max.unwrap_or(PLOT_R_MAX),
        g.points.unwrap_or(PLOT_POINTS),
        config.overrides.tolerances.quadrature,
    )?;
    let mut w = csv_writer();
    w.write_record(PlotData::HEADER.split(','))
        .expect("in-memory write");
    for row in &data.rows {
        w.write_record([row.r, row.unnormalized, row.normalized, row.v_effective].map(csv_float))
            .expect("in-memory write");
    }
    Ok(finish_csv(w))
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> String {
    let bytes = w.into_inner().expect("in-memory flush");
    String::from_utf8(bytes).expect("CSV fields are UTF-8")
}

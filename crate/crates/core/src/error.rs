use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid {field} = {value}: {reason}")]
    Domain {
        field: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("{quantity}: closed form {closed} disagrees with direct substitution {direct}")]
    Inconsistent {
        quantity: &'static str,
        closed: f64,
        direct: f64,
    },

    #[error("potential is not solvable by the ansatz: {field} = {given}, constraints require {required}")]
    NotSolvable {
        field: &'static str,
        given: f64,
        required: f64,
    },

    #[error("requested {requested} eigenvalues from an operator of dimension {dimension}")]
    TooManyEigenvalues { requested: usize, dimension: usize },

    #[error(
        "inverse iteration for eigenvalue {eigenvalue} did not converge in {iterations} iterations"
    )]
    InverseIteration { eigenvalue: f64, iterations: usize },

    #[error("bracket [{lo}, {hi}] does not straddle a sign change (defect {defect_lo:e} at lo, {defect_hi:e} at hi)")]
    BracketNotStraddling {
        lo: f64,
        hi: f64,
        defect_lo: f64,
        defect_hi: f64,
    },

    #[error("node count mismatch at E = {energy}: expected {expected}, found {actual}")]
    NodeMismatch {
        expected: usize,
        actual: usize,
        energy: f64,
    },

    #[error(
        "quadrature did not reach tolerance: estimate {estimate:e} after {intervals} intervals"
    )]
    QuadratureLimit { estimate: f64, intervals: usize },

    #[error("integral changed by {change:e} (relative) when the truncation radius was doubled; tolerance {rel_tol:e}")]
    TruncationUnstable { change: f64, rel_tol: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(field: &'static str, value: f64, reason: &'static str) -> Error {
    Error::Domain {
        field,
        value,
        reason,
    }
}

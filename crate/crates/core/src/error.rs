use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    #[error("{op}: precision target {target:e} not reached within {budget} terms (best {achieved:e})")]
    Budget {
        op: &'static str,
        target: f64,
        achieved: f64,
        budget: usize,
    },

    #[error("polynomial for h'(t) has degree {found}, expected {expected}")]
    PolynomialDegree { expected: usize, found: usize },

    #[error("root refinement stalled in [{lo}, {hi}]")]
    RootStall { lo: f64, hi: f64 },

    #[error("no admissible parameters in the search box: {0}")]
    NoAdmissible(String),

    #[error("zero table line {line}: {detail}")]
    Parse { line: usize, detail: String },

    #[error("zero table is not strictly ascending at line {line} ({prev} then {next})")]
    NotAscending { line: usize, prev: f64, next: f64 },

    #[error("T = {t} lies beyond the zero table coverage (last ordinate {last})")]
    Coverage { t: f64, last: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

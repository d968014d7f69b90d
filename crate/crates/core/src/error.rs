use thiserror::Error;

/// Errors surfaced by the numeric core.
#[derive(Debug, Error)]
pub enum Error {
    #[error("pole of the function at or too close to z = {location}")]
    Pole { location: String },

    #[error("requested tolerance {tol:e} unreachable at {digits} working digits ({context})")]
    PrecisionExhausted {
        tol: f64,
        digits: u32,
        context: String,
    },

    #[error("branch tracking step underflowed near T = {at} without resolving a phase jump")]
    BranchTracking { at: f64 },

    #[error("|xi| below tolerance at T = {at}; point is within tolerance of a zero ordinate")]
    NearZero { at: f64 },

    #[error("ambiguous zero count at T = {at}: phase residue {residue} >= 0.25")]
    AmbiguousCount { at: f64, residue: f64 },

    #[error("zero count mismatch below T = {t_max}: argument principle gives {expected}, scan found {found} (possible off-line or even-multiplicity zero)")]
    MissedZero {
        t_max: f64,
        expected: i64,
        found: i64,
    },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("ordinates not strictly increasing at line {line}")]
    Order { line: usize },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("integral cutoff {cutoff} below table height {max_height}")]
    Cutoff { cutoff: f64, max_height: f64 },

    #[error("adaptive quadrature failed to reach tolerance {tol:e} ({context})")]
    Quadrature { tol: f64, context: String },

    #[error("negative summand {value:e} at zero index {index} (numeric fault: T_m <= 1 on [-1,1])")]
    NegativeSummand { index: usize, value: f64 },

    #[error("Cauchy circle radius {radius} is at or beyond the nearest singularity bound {bound}")]
    Radius { radius: f64, bound: f64 },

    #[error("binomial resummation terms not decaying by index {index} for k_{n}")]
    Divergence { n: usize, index: usize },

    #[error("closed form only available for n in {{1, 2, 3}}, got {0}")]
    UnsupportedIndex(usize),

    #[error("argument {value} outside domain {domain}")]
    Domain { value: f64, domain: String },

    #[error("Hadamard tail estimate {estimate:e} exceeds tolerance {tol:e}; table height too small")]
    TailTooLarge { estimate: f64, tol: f64 },

    #[error("log branch winding {winding} != 0 on Cauchy circle (singularity enclosed)")]
    Winding { winding: i64 },

    #[error("invalid precision context: {0}")]
    InvalidCtx(String),
}

pub type Result<T> = std::result::Result<T, Error>;

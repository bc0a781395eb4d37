use thiserror::Error;

/// Errors raised by distribution construction, distance computation and
/// certification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("support has {support} points but mass has {mass}")]
    LengthMismatch { support: usize, mass: usize },
    #[error("negative mass {mass} at point {point}")]
    NegativeMass { point: f64, mass: f64 },
    #[error("total mass is zero")]
    ZeroTotalMass,
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("support product of {pairs} pairs exceeds the limit {limit}")]
    SupportLimit { pairs: usize, limit: usize },
    #[error("affine scale must be nonzero")]
    ZeroScale,
    #[error("probability {0} is outside the open unit interval")]
    ProbabilityOutOfRange(f64),
    #[error("law is degenerate (zero variance)")]
    Degenerate,
    #[error("law is not centered: mean {0}")]
    NotCentered(f64),
    #[error("cumulant order {order} exceeds the cap {cap}")]
    OrderAboveCap { order: usize, cap: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("tilt target {target} lies outside the open hull ({lo}, {hi})")]
    TargetOutsideHull { target: f64, lo: f64, hi: f64 },
    #[error("|h|*tau = {0} is not below 1")]
    TiltOutsideDisk(f64),
    #[error("Cauchy circle at |z| = {radius} leaves the disk of radius {limit}")]
    CircleOutsideRegion { radius: f64, limit: f64 },
    #[error("moment generating function lost its precision to cancellation near |z| = {radius}")]
    MgfCancellation { radius: f64 },
    #[error("quadrature failed to converge: estimated error {error:e} after {subdivisions} subdivisions")]
    QuadratureNonConvergence { error: f64, subdivisions: usize },
    #[error("W1 cross-check failed: cdf route {cdf_route}, quantile route {quantile_route}")]
    CrossCheckFailed { cdf_route: f64, quantile_route: f64 },
    #[error("no scale brings the Orlicz objective to 1 (last objective {0})")]
    BracketFailure(f64),
    #[error("transport problem of size {rows}x{cols} exceeds the oracle cap")]
    OracleSizeCap { rows: usize, cols: usize },
    #[error("root finder did not converge: {0}")]
    NoConvergence(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

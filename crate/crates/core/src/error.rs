use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("edge {edge}: unknown vertex {vertex:?}")]
    UnknownVertex { edge: usize, vertex: String },
    #[error("edge {edge}: shift must be an integer, got {value}")]
    NonIntegerShift { edge: usize, value: String },
    #[error("graph has no vertices")]
    EmptyVertexSet,
    #[error("vertex {0:?} declared more than once")]
    DuplicateVertex(String),
    #[error("malformed graph: {0}")]
    MalformedGraph(String),

    #[error("Laurent polynomial is not symmetric under t <-> 1/t: {0}")]
    NotSymmetric(String),
    #[error("zero denominator in rational function")]
    ZeroDenominator,
    #[error("polynomial is constant in T")]
    ConstantInT,
    #[error("discriminant vanishes identically; deflate repeated factors first")]
    NeedsDeflation,
    #[error("P_u has degree {n} in x; symbolic Omega is limited to n <= {max}, use the numeric path")]
    SymbolicDegreeTooLarge { n: usize, max: usize },

    #[error("degenerate leading coefficient: alpha(u) = 0 at u = {0}")]
    DegenerateLeadingCoefficient(Complex64),
    #[error("root finder did not converge ({0})")]
    RootsDidNotConverge(String),
    #[error("integrand singularity near theta = {theta:.6} (|det M_u(theta)| = {magnitude:.3e})")]
    IntegrandSingularity { theta: f64, magnitude: f64 },
    #[error("coincident-path failure while tracking near u = {at}: {detail}")]
    CoincidentPath { at: Complex64, detail: String },
    #[error("base sheet is ambiguous at u = {base} (two sheets within {gap:.2e}); try another base point")]
    AmbiguousBaseSheet { base: Complex64, gap: f64 },
    #[error("base point {0} coincides with a branch candidate")]
    BaseIsCandidate(Complex64),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("graph is not regular")]
    NotRegular,
    #[error("numeric failure: {0}")]
    Numeric(String),
}

impl Error {
    /// Input-validation errors, as opposed to numerical failures.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Json { .. }
                | Error::UnknownVertex { .. }
                | Error::NonIntegerShift { .. }
                | Error::EmptyVertexSet
                | Error::DuplicateVertex(_)
                | Error::MalformedGraph(_)
        )
    }
}

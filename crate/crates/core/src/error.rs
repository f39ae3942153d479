use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library reports.
///
/// Variants are grouped by what a caller can do about them: input problems
/// (`Parse`, `DimensionMismatch`), mathematical preconditions that are not met
/// by the data (`TorsionNotRational`, `ReducibleExtension`, ...) and failed
/// certifications (`CertificationFailed`, `RankNotOne`, ...).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("minimal polynomial is reducible; irreducible factor {factor}")]
    ReducibleExtension { factor: String },

    #[error("linear system has no solution")]
    NoSolution,

    #[error("point is not on the curve")]
    OffCurve,

    #[error("singular curve (discriminant is zero)")]
    SingularCurve,

    #[error("unsupported n = {0}: n must be an odd integer >= 3")]
    UnsupportedN(usize),

    #[error("torsion is not rational over the given field: found {found} of {expected}")]
    TorsionNotRational { found: usize, expected: usize },

    #[error("vertical line: the two points sum to O")]
    VerticalLine,

    #[error("function has a pole at the evaluation point")]
    PoleAtP,

    #[error("joint eigenspace for torsion index {index} has dimension {dim}, expected 1")]
    EigenspaceDimension { index: usize, dim: usize },

    #[error("degenerate sample: {0}")]
    DegenerateSample(String),

    #[error("element is not invertible: {0}")]
    NotInvertible(String),

    #[error("point is torsion: {0}")]
    TorsionPoint(String),

    #[error("rho rejected: {identity} fails at {witness:?}")]
    RhoRejected { identity: String, witness: Vec<usize> },

    #[error("certification failed: {what} (witness {witness:?})")]
    CertificationFailed { what: String, witness: Vec<usize> },

    #[error("bad base point: {0}")]
    BadBasePoint(String),

    #[error("matrix point does not have rank one (rank {0})")]
    RankNotOne(usize),

    #[error("zero matrix has no projective point")]
    ZeroMatrix,

    #[error("interpolation kernel has dimension {0}; more sample points needed")]
    KernelTooBig(usize),

    #[error("interpolation kernel is empty: the image points lie on no curve of the expected degree")]
    KernelEmpty,

    #[error("curve mismatch: artifact hash {found} does not match curve hash {expected}")]
    CurveMismatch { expected: String, found: String },
}

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Input,
    Precondition,
    Certification,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Parse(_) | Error::DimensionMismatch(_) | Error::CurveMismatch { .. } => ErrorClass::Input,
            Error::CertificationFailed { .. }
            | Error::RankNotOne(_)
            | Error::KernelEmpty
            | Error::RhoRejected { .. } => ErrorClass::Certification,
            _ => ErrorClass::Precondition,
        }
    }

    /// Process exit code for front ends: 1 input, 2 precondition, 3 certification.
    pub fn exit_code(&self) -> u8 {
        match self.class() {
            ErrorClass::Input => 1,
            ErrorClass::Precondition => 2,
            ErrorClass::Certification => 3,
        }
    }
}

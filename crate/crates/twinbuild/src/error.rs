use thiserror::Error;

/// Every failure the library reports.
///
/// Variants other than [`Error::Internal`] are precondition violations: the
/// caller asked for something the operation is not defined on.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("type {0} is not spherical")]
    NotSpherical(String),
    #[error("operands belong to different Coxeter matrices")]
    MatrixMismatch,
    #[error("chambers are not at codistance in S")]
    NotCodistanceOne,
    #[error("twin roots are not prenilpotent within radius {radius}")]
    NotPrenilpotent { radius: usize },
    #[error("residues are not parallel")]
    NotParallel,
    #[error("operation needs residues of the same sign")]
    SignMismatch,
    #[error("rank {0} exceeds the supported maximum of 12")]
    RankTooLarge(usize),
    #[error("W is finite; this operation needs a non-spherical Coxeter system")]
    NonSphericalTypeRequired,
    #[error("bound {bound} too small, need at least {needed}")]
    BoundTooSmall { bound: usize, needed: usize },
    #[error("chambers have the same sign")]
    SameSign,
    #[error("bad root index {0}")]
    BadIndex(i64),
    #[error("codistance length {0} exceeds the supported maximum of 8")]
    TooLong(usize),
    #[error("radius {radius} exceeds the supported maximum of {max}")]
    RadiusTooLarge { radius: usize, max: usize },
    #[error("field order {0} is below 4")]
    FieldTooSmall(u32),
    #[error("field order {0} exceeds 9")]
    FieldTooLarge(u32),
    #[error("unsupported field order {0}")]
    UnsupportedField(u32),
    #[error("generated group exceeds {0} elements")]
    GroupTooLarge(usize),
    #[error("no stabilized spherical residue within radius {0}")]
    NotFoundInRadius(usize),
    #[error("matrix does not have determinant 1")]
    NotUnimodular,
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// True for violations of an operation's documented preconditions.
    pub fn is_precondition(&self) -> bool {
        !matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

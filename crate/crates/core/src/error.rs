use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("-7 is not a quadratic residue mod {p}")]
    NotQuadraticResidue { p: u64 },

    #[error("inadmissible prime {p}: {reason}")]
    InadmissiblePrime { p: u64, reason: String },

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("corpus must contain exactly 84 equations, found {found}")]
    Arity { found: usize },

    #[error("eq {index} references undefined eq {target}")]
    UndefinedReference { index: usize, target: usize },

    #[error("eq {index} is defined more than once")]
    IndexCollision { index: usize },

    #[error("no entry with index {index}")]
    UnknownEntry { index: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("betti step {step} requires step {missing} first")]
    PrerequisiteMissing { step: usize, missing: usize },

    #[error("degree {degree} is out of range for this operation")]
    DegreeOutOfRange { degree: u32 },

    #[error("unsupported betti step {step}")]
    UnsupportedStep { step: usize },

    #[error("calibration needs at least one candidate")]
    EmptyCandidates,

    #[error("eq {index} has no term {term}")]
    TermNotPresent { index: usize, term: String },

    #[error("eq {index} has no ambiguity flags")]
    NoFlags { index: usize },

    #[error("eq {index} is derived from eq {seed}; calibrate the seed instead")]
    DerivedEntry { index: usize, seed: usize },

    #[error("quadratic fit failure: {0}")]
    FitFailure(String),

    #[error("inconsistent intersection numbers: {0}")]
    Inconsistent(String),

    #[error("invalid matrix dump: {0}")]
    MatrixFormat(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

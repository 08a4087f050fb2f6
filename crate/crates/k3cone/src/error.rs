use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("gram matrix is not square: row {row} has length {len}, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },

    #[error("gram matrix is not symmetric at ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },

    #[error("gram matrix is degenerate (determinant is zero)")]
    DegenerateGram,

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("unknown lattice name `{0}`")]
    UnknownLatticeName(String),

    #[error("DIAG(0) is degenerate and not allowed")]
    ZeroDiagBlock,

    #[error("matrix is not an isometry of the lattice")]
    NotIsometry,

    #[error("vector has norm {0}, expected -2 for a root")]
    NotRoot(String),

    #[error("lattice has signature ({pos}, {neg}), expected hyperbolic (1, n-1)")]
    NotHyperbolic { pos: usize, neg: usize },

    #[error("controlling vector has norm {0}, expected positive norm")]
    InvalidControllingVector(String),

    #[error("no controlling vector of norm 2..=20 found within coordinate bound 3")]
    NoControllingVectorFound,

    #[error("budget field `{0}` must be positive")]
    ZeroBudget(&'static str),

    #[error("ambient dimension {dim} exceeds the dimension guard {guard} (set K3CONE_DIM_GUARD to override)")]
    DimensionGuard { dim: usize, guard: usize },

    #[error("zero vector is not allowed among cone generators")]
    ZeroRay,

    #[error("codimension {codim} exceeds cone dimension {dim}")]
    CodimTooLarge { codim: usize, dim: usize },

    #[error("matrix is singular over the rationals")]
    SingularMatrix,

    #[error("basis vectors are linearly dependent")]
    DependentBasis,

    #[error("mori contraction type {0} is out of range 1..=8")]
    MoriTypeOutOfRange(i64),

    #[error("self-intersection {0} is odd; classes on a K3 surface have even square")]
    OddSquare(String),

    #[error("self-intersection {0} is not positive; Riemann-Roch shortcut needs a big class")]
    NotBig(String),

    #[error("class is not flagged nef and big")]
    NotNefAndBig,

    #[error("curve square {0} is below -2; no irreducible curve class exists")]
    SquareBelowMinusTwo(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("duplicate catalog label `{0}`")]
    DuplicateLabel(String),

    #[error("catalog entry `{0}` not found")]
    EntryNotFound(String),

    #[error("result was produced from a different lattice")]
    LatticeMismatch,

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("singular matrix")]
    SingularMatrix,
    #[error("not a sublattice: {0}")]
    NotSublattice(String),
    #[error("element is not in Gamma_0 (translation part outside the A-lattice)")]
    NotInGamma0,
    #[error("ill-conditioned rank decision: {0}")]
    IllConditioned(String),
    #[error("incommensurable lattices: {0}")]
    IncommensurableLattices(String),
    #[error("precision overflow: {0}")]
    PrecisionOverflow(String),
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("density obstruction: no Parseval frame exists since |det B| > 1 (|det B| = {det_b}; ell = {ell} > |det A| = {det_a})")]
    DensityObstruction { det_b: String, ell: u64, det_a: u64 },
    #[error("invalid fiber field: {0}")]
    InvalidFiberField(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

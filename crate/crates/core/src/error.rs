use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("grade mismatch: {0}")]
    GradeMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not skew-symmetric of even size")]
    NotSkewEven,
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("vectors are linearly dependent")]
    DependentVectors,
    #[error("degenerate 2-form (Pfaffian vanishes)")]
    DegenerateForm,
    #[error("point lies in the center of projection")]
    CenterHit,
    #[error("points are proportional")]
    Proportional,
    #[error("multivector is decomposable (lies on the Grassmannian)")]
    Decomposable,
    #[error("multivector is not decomposable")]
    NotDecomposable,
    #[error("zero multivector")]
    ZeroInput,
    #[error("3-form is not in the orbit O5 (found {0})")]
    NotInO5(String),
    #[error("internal consistency violated: {0}")]
    Inconsistent(String),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

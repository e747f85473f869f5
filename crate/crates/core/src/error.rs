use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge {label} -> {label} is a loop")]
    LoopEdge { label: String },

    #[error("edge {src} -> {dst} appears more than once")]
    DuplicateEdge { src: String, dst: String },

    #[error("edge {src} -> {dst} has non-positive weight {weight}")]
    NonPositiveWeight {
        src: String,
        dst: String,
        weight: String,
    },

    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),

    #[error("graph is not undirected")]
    NotUndirected,

    #[error("operation requires an unweighted graph")]
    WeightedUnsupported,

    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix shapes {0:?} and {1:?} are incompatible")]
    ShapeMismatch((usize, usize), (usize, usize)),

    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,

    #[error("polynomial matrix is singular (determinant vanishes identically)")]
    SingularPolyMatrix,

    #[error("tau = {0} is outside (0, 1]")]
    TauOutOfRange(String),

    #[error("omega = {0} is outside [0, 1]")]
    OmegaOutOfRange(String),

    #[error("walk enumeration exceeded the budget of {0} edge extensions")]
    EnumerationBudgetExceeded(u64),

    #[error("t = {0} is a pole of the generating function")]
    PoleAtT(String),

    #[error("t = {t} is not certified below the radius of convergence ({radius})")]
    AboveRadius { t: String, radius: String },

    #[error("matrix has a negative entry at ({0}, {1})")]
    NegativeEntry(usize, usize),

    #[error("power iteration did not certify the spectral radius within {0} iterations")]
    IterationBudgetExceeded(usize),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown command {0:?}")]
    UnknownCommand(String),

    #[error("bad flag: {0}")]
    BadFlag(String),
}

use crate::Q;

/// Errors raised by the tree, boundary, horosphere, inversion and spectral routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParams(String),
    #[error("word is not reduced or uses a letter outside 0..={q}: {word}")]
    NotReduced { word: String, q: u32 },
    #[error("radius {requested} exceeds truncation radius {radius}")]
    Truncation { requested: u32, radius: u32 },
    #[error("depth {depth} is too small, need at least {needed}")]
    InsufficientDepth { needed: usize, depth: usize },
    #[error("horospherical functions of different depth ({0} vs {1})")]
    DepthMismatch(usize, usize),
    #[error("arc prefix must be nonempty")]
    EmptyArc,
    #[error("malformed simplex: {0}")]
    Malformed(String),
    #[error("pair is not in the image of the joint projection: sum g_V - sum g_E = {residual}")]
    ImageCondition { residual: Q },
    #[error("Cavalieri condition violated at index {n}: residual {residual}")]
    Cavalieri { n: i64, residual: Q },
    #[error("coefficient range {available} too short, need {needed}")]
    CoefficientRange { needed: i64, available: i64 },
    #[error("custom seeds must only fix negative indices (or d_0 = 1)")]
    InconsistentSeeds,
    #[error("vertex set is not convex")]
    NotConvex,
    #[error("degenerate spectral parameter (q^(2z-1) = 1)")]
    Degenerate,
    #[error("profile is not square summable for Re z = {0}")]
    NotSquareSummable(f64),
    #[error("symbol has a pole at this parameter")]
    Pole,
    #[error("evaluation at radius {0} lies on the truncation boundary")]
    Boundary(u32),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

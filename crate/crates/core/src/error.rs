use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cyclotomic order must be positive")]
    ZeroOrder,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{what} has size {size}, above the configured bound {bound}")]
    TooLarge {
        what: &'static str,
        size: usize,
        bound: usize,
    },
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("invalid quadratic form: {0}")]
    InvalidForm(String),
    #[error("invalid ribbon data: {0}")]
    InvalidRibbon(String),
    #[error("subgroup is not isotropic: q({element:?}) = ζ^{exponent}")]
    NotIsotropic { element: Vec<u64>, exponent: u64 },
    #[error("induced form is not well defined: {0}")]
    WellDefinednessViolation(String),
    #[error("quadratic form is degenerate (radical of order {radical_order})")]
    Degenerate { radical_order: usize },
    #[error("abelian 3-cocycle construction failed: {0}")]
    ConstructionFailed(String),
    #[error("no commutative 2-cochain solves the constraints: {0}")]
    NoSolution(String),
    #[error("assertion failed: {0}")]
    AssertionFailed(String),
    #[error("module relation violated: {0}")]
    ModuleRelationViolation(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable code, used in CLI error bodies.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroOrder => "ZeroOrder",
            Error::DivisionByZero => "DivisionByZero",
            Error::TooLarge { .. } => "TooLarge",
            Error::InvalidElement(_) => "InvalidElement",
            Error::NotASubgroup(_) => "NotASubgroup",
            Error::InvalidForm(_) => "InvalidForm",
            Error::InvalidRibbon(_) => "InvalidRibbon",
            Error::NotIsotropic { .. } => "NotIsotropic",
            Error::WellDefinednessViolation(_) => "WellDefinednessViolation",
            Error::Degenerate { .. } => "Degenerate",
            Error::ConstructionFailed(_) => "ConstructionFailed",
            Error::NoSolution(_) => "NoSolution",
            Error::AssertionFailed(_) => "AssertionFailed",
            Error::ModuleRelationViolation(_) => "ModuleRelationViolation",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}

use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(&'static str),
    #[error("element has {found} coordinates, expected {expected}")]
    ElementLength { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    HomShape {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("homomorphism is not well defined on torsion generator {generator}")]
    NotWellDefined { generator: usize },
    #[error("domain and codomain do not match")]
    DomainMismatch,
    #[error("homomorphism is not surjective")]
    NotSurjective,
    #[error("group is not torsionfree")]
    NotTorsionfree,
    #[error("ring is not entire")]
    NotEntire,
    #[error("coarsening kernel has torsion; a fraction field would stop being entire")]
    TorsionKernelOnFractionField,
    #[error("not a subgroup of the grading group")]
    NotASubgroup,
    #[error("elements belong to different rings")]
    ParentMismatch,
    #[error("element is zero")]
    ZeroElement,
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("coefficient {0} is not an integer over a base-Z ring")]
    NonIntegralCoefficient(String),
    #[error("exponent is not an element of the ring's element group")]
    BadExponent,
    #[error("rings are incompatible: {0}")]
    IncompatibleRings(&'static str),
    #[error("order must be at least 2, got {0}")]
    BadOrder(i64),
    #[error("base ring is not simple")]
    NotSimpleBase,
    #[error("ring is not of the form R[Z] coarsely graded over a simple R")]
    NotLaurentExtension,
    #[error("division by zero")]
    ZeroDivisor,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(&'static str),
    #[error("map is not a section")]
    NotASection,
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
    #[error("unknown check id {0}")]
    UnknownCheckId(String),
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

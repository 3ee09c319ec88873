use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("root of unity e[{alpha}] does not live in Q(zeta_{conductor})")]
    DenominatorMismatch { alpha: String, conductor: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),

    #[error("unknown variable index {0}")]
    UnknownVariable(usize),
    #[error("polynomials live in different variable sets")]
    AmbientMismatch,
    #[error("inexact polynomial division: {0}")]
    InexactDivision(String),
    #[error("matrix is not square")]
    ShapeMismatch,

    #[error("syntax error at position {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("explicit coefficient at position {0}; coefficients must be 1")]
    NonUnitCoefficient(usize),
    #[error("{monomials} monomials in {vars} variables")]
    NotSquare { monomials: usize, vars: usize },
    #[error("exponent matrix is singular")]
    SingularExponentMatrix,
    #[error("unclassifiable shape: {0}")]
    UnclassifiableShape(String),
    #[error("weights are not positive")]
    NonPositiveWeights,
    #[error("weight of x{var} is not below the degree {degree}")]
    WeightNotBelowDegree { var: usize, degree: i64 },

    #[error("{0} is not a diagonal symmetry")]
    NotASymmetry(String),
    #[error("bad group element: {0}")]
    BadGroupElement(String),

    #[error("sector {0} has a degenerate socle")]
    DegenerateSector(String),
    #[error("socle mismatch: {0}")]
    SocleMismatch(String),
    #[error("classes are not proportional")]
    NotProportional,
    #[error("zero denominator class")]
    ZeroDenominator,

    #[error("supports {0:?} and {1:?} overlap")]
    OverlappingSupports(Vec<usize>, Vec<usize>),

    #[error("malformed JSON: {0}")]
    MalformedJson(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

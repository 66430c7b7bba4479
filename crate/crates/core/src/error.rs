use thiserror::Error;

/// Errors raised by the algebraic operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("incompatible rings: operands live in different coefficient contexts")]
    ContextMismatch,

    #[error("invalid ring context: {0}")]
    InvalidContext(String),

    #[error("unknown indeterminate `{0}`")]
    UnknownSymbol(String),

    #[error("no value assigned to indeterminate `{0}`")]
    MissingSymbol(String),

    #[error("assignment violates mu^2 = lambda*mu - kappa")]
    MuRelationViolated,

    #[error("incompatible base algebras: {0}")]
    SpecMismatch(String),

    #[error("base algebra carries no bialgebra data")]
    BialgebraDisabled,

    #[error("the zero element has no degree")]
    ZeroElement,

    #[error("tensor words must contain at least one letter")]
    EmptyWord,

    #[error("operation requires the base algebra A = k (no generators); this one has {0}")]
    RequiresScalarBase(usize),

    #[error("diagonal count r = {r} out of range 0..={max} for ({m}, {n})")]
    DiagonalOutOfRange { m: u32, n: u32, r: u32, max: u32 },

    #[error("enumeration of ({m}, {n}) exceeds the bound m + n <= {bound}; use count_e instead")]
    EnumerationBound { m: u32, n: u32, bound: u32 },

    #[error("truncation overflow: {0}")]
    Overflow(String),

    #[error("basis label {0} is outside the operator domain")]
    OutsideDomain(i64),

    #[error("operators are defined on different bases")]
    BasisMismatch,

    #[error("q = {q} has q^{n} = 1; the Jackson operators are undefined")]
    RootOfUnity { q: String, n: u32 },

    #[error("weight mismatch: {0}")]
    WeightMismatch(String),

    #[error("coefficient `{0}` is not a rational constant")]
    NonNumeric(String),

    #[error("map undefined on word {0}")]
    Undefined(String),

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn parse_at(text: &str, offset: usize, message: impl Into<String>) -> Self {
        let offset = offset.min(text.len());
        let before = &text[..offset];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

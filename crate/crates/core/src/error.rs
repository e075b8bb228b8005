use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different number fields")]
    MixedFields,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial of degree {degree} exceeds the factorization cap {cap}")]
    FactorDegreeCap { degree: usize, cap: usize },
    #[error("minimal polynomial is not irreducible over Q: {0}")]
    Reducible(String),
    #[error("unsupported field extension: {0}")]
    UnsupportedExtension(String),
    #[error("inhomogeneous input: {0}")]
    InhomogeneousInput(String),
    #[error("Euler condition fails, surviving monomial {0}")]
    EulerViolation(String),
    #[error("polynomials share a non-constant factor")]
    NotCoprime,
    #[error("polynomials have different degrees ({0} and {1})")]
    UnequalDegrees(usize, usize),
    #[error("degenerate foliation: {0}")]
    DegenerateFoliation(String),
    #[error("colength did not stabilize below jet order {cap}")]
    NonIsolated { cap: usize },
    #[error("singular Jacobian at a singular point")]
    SingularJacobian,
    #[error("integers are not coprime")]
    NotCoprimeIntegers,
    #[error("ambiguous cluster chain: {0}")]
    AmbiguousChain(String),
    #[error("germ is not reduced")]
    NotReduced,
    #[error("reduced point lies on every member of the pencil: {0}")]
    BasePointCollision(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("extension polynomial is not squarefree")]
    NotSquarefreeExtension,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division_by_zero",
            Error::MixedFields => "mixed_fields",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::FactorDegreeCap { .. } => "factor_degree_cap",
            Error::Reducible(_) => "reducible_extension",
            Error::UnsupportedExtension(_) => "unsupported_extension",
            Error::InhomogeneousInput(_) => "inhomogeneous_input",
            Error::EulerViolation(_) => "euler_violation",
            Error::NotCoprime => "not_coprime",
            Error::UnequalDegrees(..) => "unequal_degrees",
            Error::DegenerateFoliation(_) => "degenerate_foliation",
            Error::NonIsolated { .. } => "non_isolated",
            Error::SingularJacobian => "singular_jacobian",
            Error::NotCoprimeIntegers => "not_coprime_integers",
            Error::AmbiguousChain(_) => "ambiguous_chain",
            Error::NotReduced => "not_reduced",
            Error::BasePointCollision(_) => "base_point_collision",
            Error::Parse { .. } => "parse_error",
            Error::NotSquarefreeExtension => "not_squarefree_extension",
            Error::InvalidInput(_) => "invalid_input",
        }
    }

    /// CLI exit code class: 3 for invalid input, 4 for unsupported inputs and caps.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::FactorDegreeCap { .. }
            | Error::UnsupportedExtension(_)
            | Error::NonIsolated { .. }
            | Error::AmbiguousChain(_) => 4,
            _ => 3,
        }
    }
}

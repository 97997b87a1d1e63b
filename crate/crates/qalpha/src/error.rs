//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two operands belong to structurally different fields.
    #[error("field spec mismatch: {left} vs {right}")]
    SpecMismatch { left: String, right: String },

    /// Multiplicative inverse of zero.
    #[error("division by zero in GF(2^{s})")]
    DivisionByZero { s: u32 },

    /// A map parameter that must be nonzero (alpha for theta, gamma for psi) was zero.
    #[error("parameter `{name}` must be a nonzero field element")]
    ZeroParameter { name: &'static str },

    /// Discrete log of the zero element.
    #[error("discrete logarithm of zero is undefined")]
    DlogOfZero,

    /// Discrete logs need a generator on the field spec.
    #[error("field spec has no generator; discrete logs are unavailable")]
    NoGenerator,

    /// A desk-scale cap was exceeded.
    #[error("scale cap exceeded for {what}: {value} > {limit}")]
    ScaleCap {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    /// The zero polynomial is not a valid input for this operation.
    #[error("zero polynomial not allowed in {op}")]
    ZeroPolynomial { op: &'static str },

    /// A constant polynomial is not a valid input for this operation.
    #[error("constant polynomial not allowed in {op}")]
    ConstantPolynomial { op: &'static str },

    /// Division by the zero polynomial.
    #[error("polynomial division by zero")]
    PolyDivisionByZero,

    /// Input polynomial degree does not match the contract.
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    /// Operation requires a monic polynomial.
    #[error("polynomial is not monic")]
    NotMonic,

    /// Operation requires a self-reciprocal polynomial.
    #[error("polynomial is not self-reciprocal")]
    NotSelfReciprocal,

    /// Operation requires an irreducible polynomial.
    #[error("polynomial is reducible: {context}")]
    ReducibleInput { context: String },

    /// A field modulus failed irreducibility validation.
    #[error("modulus {modulus} is reducible{}", .factor.as_ref().map(|f| format!(" (divisible by {f})")).unwrap_or_default())]
    ReducibleModulus {
        modulus: String,
        factor: Option<String>,
    },

    /// Supplied generator does not generate the multiplicative group.
    #[error("generator has order {order}, expected {expected}")]
    GeneratorOrder { order: u64, expected: u64 },

    /// No bundled Conway polynomial for this extension degree.
    #[error("no Conway polynomial entry for s = {s}")]
    NoConwayEntry { s: u32 },

    /// Seed polynomial rejected by the sequence construction.
    #[error("invalid seed polynomial: {reason}")]
    InvalidSeed { reason: String },

    /// An internal contract was violated (promised split did not materialize).
    #[error("internal contract violated: {context}")]
    ContractViolation { context: String },

    /// A run contradicted the stagnation bound; signals an implementation bug.
    #[error("theorem bound violated: {context}")]
    TheoremViolation { context: String },

    /// Malformed text input.
    #[error("parse error: {0}")]
    Parse(String),

    /// Catch-all for invalid arguments not covered above.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

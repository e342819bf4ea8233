use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("p = {p} exceeds the default size guard (p <= {max}); lift the guard explicitly")]
    PrimeTooLarge { p: u32, max: u32 },
    #[error("dimension {n} exceeds the supported maximum {max}")]
    DimensionTooLarge { n: usize, max: usize },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operands live over different fields (F_{left} vs F_{right})")]
    FieldMismatch { left: u32, right: u32 },
    #[error("matrix is singular")]
    Singular,
    #[error("enumeration of {what} ({size} elements) exceeds the size guard {limit}")]
    SizeGuardExceeded {
        what: String,
        size: String,
        limit: u64,
    },
    #[error("operation requires {expected}, got p = {p}")]
    WrongCharacteristic { expected: &'static str, p: u32 },
    #[error("unsupported form degree {0}")]
    UnsupportedDegree(usize),
    #[error("index tuple {0:?} out of range or not ordered")]
    BadIndex(Vec<usize>),
    #[error("not a 2-cocycle: identity fails at {0}")]
    NotACocycle(String),
    #[error("two-dimensional class has the wrong shape: {0}")]
    WrongShape(String),
    #[error("generator {0} is not invertible")]
    GeneratorNotInvertible(usize),
    #[error("generator {0} does not stabilize the class")]
    GeneratorNotStabilizing(usize),
    #[error("closure memory guard exceeded after {elements} elements (~{bytes} bytes, limit {limit})")]
    MemoryGuardExceeded {
        elements: usize,
        bytes: u64,
        limit: u64,
    },
    #[error("unknown group '{0}'")]
    UnknownGroup(String),
    #[error("invalid group parameters: {0}")]
    BadGroupParameters(String),
    #[error("the alternating part is degenerate (radical dimension {rad_dim}); the Brauer-Picard exact sequence requires a non-degenerate alternating part")]
    NondegenerateRequired { rad_dim: usize },
    #[error("no stated identification covers {0}")]
    NotCovered(String),
    #[error("structure constants are not antisymmetric at ({i}, {j}, {k})")]
    NotAntisymmetric { i: usize, j: usize, k: usize },
    #[error("Jacobi identity fails for basis triple ({i}, {j}, {k})")]
    JacobiViolated { i: usize, j: usize, k: usize },
    #[error("bilinear form is not symmetric at ({i}, {j})")]
    FormNotSymmetric { i: usize, j: usize },
    #[error("bilinear form is not invariant: ([e{a}, e{b}], e{c}) != (e{a}, [e{b}, e{c}])")]
    FormNotInvariant { a: usize, b: usize, c: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("invalid document: {0}")]
    InvalidDocument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

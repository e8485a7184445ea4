use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("ordering violates alpha + beta + gamma = -1 (sum = {sum})")]
    InvalidOrdering { sum: f64 },

    #[error("parameter `{name}` must be {requirement}, got {value}")]
    InvalidParameter {
        name: &'static str,
        requirement: &'static str,
        value: f64,
    },

    #[error("no state with {name} = {value}")]
    NoSuchState { name: &'static str, value: i64 },

    #[error("Morse bound-state count exceeded: sqrt(D)/eps - n_z - 1/2 = {margin} <= 0")]
    BoundStateCountExceeded { n_z: u32, margin: f64 },

    #[error("state n_z = {n_z} is outside the admissible range n_z < {limit}")]
    StateOutOfRange { n_z: u32, limit: f64 },

    #[error("state n_z = {n_z} is missing from the spectrum")]
    MissingState { n_z: u32 },

    #[error("K_z^2 = 0 makes 1/K_z undefined")]
    DivisionByZero,

    #[error("grid [{x_min}, {x_max}] does not match the required domain [{want_min}, {want_max}]")]
    DomainMismatch {
        x_min: f64,
        x_max: f64,
        want_min: f64,
        want_max: f64,
    },

    #[error("operator is not real symmetric")]
    ComplexOperator,

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("requested {requested} eigenvalues from an operator of size {size}")]
    InvalidEigenCount { requested: usize, size: usize },

    #[error("operator of size {size} exceeds the dense-iteration budget of {limit}")]
    ProblemTooLarge { size: usize, limit: usize },

    #[error("eigensolver did not converge; {} eigenvalues found", found.len())]
    NonConvergence { found: Vec<Complex64> },

    #[error("mass profile is not strictly positive at ({rho}, {phi}, {z})")]
    NonPositiveMass { rho: f64, phi: f64, z: f64 },

    #[error("field shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: usize, got: usize },

    #[error("unsupported configuration: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

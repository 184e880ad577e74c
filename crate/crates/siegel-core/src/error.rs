//! Error types shared across the crate.

use thiserror::Error;

/// Errors from the exact-arithmetic kernel and file parsing.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse rational from {0:?} (expected \"p\" or \"p/q\")")]
    RationalParse(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Errors raised by structure construction and conversion.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("matrix B must be antisymmetric: entry ({i},{j}) = {val} but ({j},{i}) = {other}")]
    NotAntisymmetric {
        i: usize,
        j: usize,
        val: String,
        other: String,
    },
    #[error("structure is not simple: coefficient of a conjugate variable is nonzero at row {i}, column {l}")]
    NotSimple { i: usize, l: usize },
    #[error("matrix has wrong shape: expected {expected}x{expected}, got {rows}x{cols}")]
    BadShape {
        expected: usize,
        rows: usize,
        cols: usize,
    },
}

/// Errors raised by the Levi-form machinery.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LeviError {
    #[error("point does not lie on the boundary: rho(p) = {rho}")]
    OffBoundary { rho: String },
    #[error("field is not real (conjugate block differs from conjugated holomorphic block)")]
    NotReal,
    #[error("field is not tangent to the boundary: X(rho) does not vanish on it")]
    NotTangent,
    #[error("field does not lie in the J-invariant tangent space: (JX)(rho) does not vanish on the boundary")]
    NotJTangent,
}

/// Errors raised by map verification.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("dimension mismatch between map ({map_dim}) and structure ({structure_dim})")]
    DimensionMismatch {
        map_dim: usize,
        structure_dim: usize,
    },
    #[error("truncation order {order} is too low to decide the requested check (needs at least {needed})")]
    TruncationTooLow { order: u32, needed: u32 },
    #[error("boundary invariance fails, so the CR restriction is undefined")]
    NotBoundaryPreserving,
    #[error(
        "composing a truncated map after a map that moves the origin loses all degree information"
    )]
    TruncatedComposition,
}

/// Errors raised by automorphism construction and group operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutError {
    #[error("scaled unitarity fails: (A^t conj(A))[{i}][{j}] = {got}, expected {expected}")]
    UnitarityFailed {
        i: usize,
        j: usize,
        got: String,
        expected: String,
    },
    #[error(
        "B-compatibility fails: (A^t B A)[{i}][{j}] = {got}, expected c*B[{i}][{j}] = {expected}"
    )]
    BCompatFailed {
        i: usize,
        j: usize,
        got: String,
        expected: String,
    },
    #[error("translation parameter is off the boundary: rho(zeta) = {rho}")]
    OffBoundary { rho: String },
    #[error("scale factor must be a positive real rational, got {0}")]
    NonPositiveScale(String),
    #[error("dilation parameter must be positive, got {0}")]
    NonPositiveDilation(String),
    #[error("elements live over different structures (dimension or B mismatch)")]
    IncompatibleStructures,
    #[error("isotropy membership is only characterized for non-integrable structures; B = 0 is integrable")]
    IntegrableIsotropyUndecided,
    #[error("matrix A is singular")]
    SingularMatrix,
}

/// Errors raised by the jet extraction / reconstruction pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JetError {
    #[error("map has a nonzero constant term in component {component}: {value}")]
    NonzeroConstantTerm { component: usize, value: String },
    #[error("truncation order {order} is too low for 2-jet extraction (needs at least {needed})")]
    TruncationTooLow { order: u32, needed: u32 },
    #[error("reconstruction requires dimension at least 3, got {0}")]
    DimensionTooSmall(usize),
    #[error("reconstruction requires a non-integrable structure; B = 0 falls in the integrable regime handled by classical theory")]
    IntegrableRegime,
    #[error("base point does not lie on the boundary: rho = {rho}")]
    OffBoundary { rho: String },
    #[error("map does not send the source base point to the target base point: f(p) = {got}, expected {expected}")]
    BasePointMismatch { got: String, expected: String },
    #[error(
        "truncated maps can only be renormalized at the origin (the truncation is anchored there)"
    )]
    TruncatedOffOrigin,
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error(transparent)]
    Map(#[from] MapError),
}

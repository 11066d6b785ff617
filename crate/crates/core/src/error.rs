use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid point ({x}, {y}): need finite x and y > 1e-15")]
    InvalidPoint { x: f64, y: f64 },
    #[error("matrix entries do not define an element of PSL(2,R) (det = {det})")]
    InvalidMatrix { det: f64 },
    #[error("numeric overflow: |cz + d| vanished")]
    NumericOverflow,
    #[error("isometry is not elliptic (trace {trace})")]
    NotElliptic { trace: f64 },
    #[error("argument out of domain: {0}")]
    Domain(String),
    #[error("points coincide within the degeneracy threshold")]
    DegeneratePoint,
    #[error("index {index} out of range for {len} generators")]
    Index { index: usize, len: usize },
    #[error("word syntax error: {0}")]
    Parse(String),
    #[error("the angle sum {sum} lies in (2pi, 4pi): no representation exists")]
    EmptyVariety { sum: f64 },
    #[error("inconsistent configuration: {0}")]
    InconsistentConfiguration(String),
    #[error("angles condition fails: lambda = {lambda} must be positive")]
    InfeasibleAngles { lambda: f64 },
    #[error("infeasible triangle data: {0}")]
    InfeasibleTriangle(String),
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("zero vector has no projective class")]
    ZeroVector,
    #[error("Euler class is not an integer (residual {residual})")]
    NonIntegerEuler { residual: f64 },
    #[error("point too close to the boundary of the moment polytope (min area {min_area})")]
    BoundaryProximity { min_area: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

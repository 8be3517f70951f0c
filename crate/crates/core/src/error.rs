use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point outside the open unit disc (|z| = {0})")]
    OutsideDisc(f64),
    #[error("matrix is not in SU(1,1): |alpha|^2 - |beta|^2 = {0}")]
    NotSu11(f64),
    #[error("tensor is not positive definite")]
    NotPositiveDefinite,
    #[error("inadmissible triangle group data: {0}")]
    Inadmissible(String),
    #[error("fundamental-domain reduction did not terminate within {0} steps")]
    WrapDiverged(usize),
    #[error("group construction failed: {0}")]
    Group(String),
    #[error("table mismatch: {0}")]
    TableMismatch(String),
    #[error("mesh error: {0}")]
    Mesh(String),
    #[error("assembly error: {0}")]
    Assembly(String),
    #[error("boundary condition error: {0}")]
    BoundaryCondition(String),
    #[error("eigensolver did not converge (pair {index}, residual {residual:e})")]
    NoConvergence { index: usize, residual: f64 },
    #[error("linear algebra failure: {0}")]
    LinearAlgebra(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("image encoding failed: {0}")]
    Image(String),
}

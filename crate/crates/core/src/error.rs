use thiserror::Error;

use crate::sphere::Sphere;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A coordinate tuple is farther from the unit sphere than the construction tolerance.
    #[error("point {index} is off {sphere}: squared norm {norm_sq} (tolerance {tol:e})")]
    OffSphere {
        sphere: Sphere,
        index: usize,
        norm_sq: f64,
        tol: f64,
    },

    #[error("invalid design: {0}")]
    InvalidDesign(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The equal-weight interval solver gave up before reaching the node cap.
    #[error("no equal-weight interval {t}-design found with up to {max_nodes} nodes")]
    NoConvergence { t: usize, max_nodes: usize },

    #[error("quadrature error estimate {estimate:e} exceeds {limit:e}")]
    QuadratureFailure { estimate: f64, limit: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

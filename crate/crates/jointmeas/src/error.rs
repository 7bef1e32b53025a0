use crate::ft::FtResult;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vector has non-finite components")]
    NonFinite,
    #[error("Bloch vector norm {norm} exceeds 1")]
    NormExceeded { norm: f64 },
    #[error("Weiszfeld iteration did not converge (best residual {:.3e})", best.residual_norm)]
    NoConvergence { best: FtResult },
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
    #[error("degenerate configuration: {0}")]
    Degenerate(&'static str),
    #[error("the four points are not coplanar")]
    NotCoplanar,
    #[error("diagonals do not properly intersect")]
    NoProperIntersection,
    #[error("{name} = {value} lies outside [0, 1]")]
    OutOfRange { name: &'static str, value: f64 },
    #[error("m1 and m2 are nearly parallel; coplanar coefficients are ill-conditioned")]
    IllConditioned,
    #[error("target is too weakly incompatible for the shrink construction")]
    NotEnoughIncompatibility,
    #[error("no feasible point found by the oracle")]
    NoFeasiblePoint,
    #[error("input document: {0}")]
    Schema(&'static str),
}

impl Error {
    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Schema(_) => 2,
            Error::NonFinite | Error::NormExceeded { .. } => 3,
            Error::NoConvergence { .. } => 4,
            Error::IllConditioned => 5,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

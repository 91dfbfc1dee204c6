use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The argument is (or is numerically indistinguishable from) a
    /// non-positive integer on a path that has no regularized value there.
    #[error("pole at x = {0}")]
    Pole(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("finite part undefined: expansion remainder is not known to vanish")]
    UncontrolledRemainder,

    #[error("series truncated at order {order} leaves tail bound {bound:e} above {tolerance:e}")]
    SeriesTail {
        order: usize,
        bound: f64,
        tolerance: f64,
    },

    #[error("quadrature did not converge: estimated error {achieved:e}, requested {requested:e}")]
    Quadrature { achieved: f64, requested: f64 },

    #[error("{samples} samples cannot determine {columns} basis columns (need at least {needed})")]
    Underdetermined {
        samples: usize,
        columns: usize,
        needed: usize,
    },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("least-squares system is singular")]
    Singular,
}

pub type Result<T> = std::result::Result<T, Error>;

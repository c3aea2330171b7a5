use alloc::string::String;

/// Errors raised by the core algorithms.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("image array is not a bijection on 0..{0}")]
    NotBijection(usize),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("cycle notation parse error: {0}")]
    CycleSyntax(String),
    #[error("not a subgroup of the ambient group")]
    NotSubgroup,
    #[error("group order {order} exceeds the enumeration bound {bound}")]
    OrderBoundExceeded { order: u128, bound: u128 },
    #[error("index must be positive")]
    ZeroIndex,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("blow-up factors must be positive")]
    ZeroBlowUp,
    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),
    #[error("degree {requested} exceeds the configured cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("part sizes ({k}, {m}) need catalogue degree {k}, above the cap {cap}")]
    PartsBeyondCap { k: usize, m: usize, cap: usize },
    #[error("parameter out of range: {0}")]
    BadParameter(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

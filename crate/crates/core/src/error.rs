use crate::config::DdcClass;
use crate::grid::{GridKind, Metric};

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("metric {metric:?} is not defined on the {kind:?} grid")]
    MetricMismatch { metric: Metric, kind: GridKind },
    #[error("class {class:?} requires the {expected:?} grid, got {got:?}")]
    ClassGridMismatch {
        class: DdcClass,
        expected: GridKind,
        got: GridKind,
    },
    #[error("grid kinds differ: {0:?} vs {1:?}")]
    KindMismatch(GridKind, GridKind),
    #[error("configuration is empty")]
    EmptyConfiguration,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("{0} is not primitive")]
    NotPrimitive(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("operation requires a finite modulus")]
    InfiniteModulus,
    #[error("no optimal ruler embedded for order {0}")]
    RulerOrderOutOfRange(u32),
    #[error("modulus {n} too small: need at least {min}")]
    ModulusTooSmall { n: u64, min: u64 },
    #[error("diameter {got} exceeds {limit}")]
    DiameterExceeded { got: u64, limit: u64 },
    #[error("cost guard: {0}")]
    CostGuard(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

use crate::ring::Elem;

pub type Result<T, E = RingError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("subset belongs to a different ring")]
    RingMismatch,
    #[error("subset is not a two-sided ideal")]
    NotAnIdeal,
    #[error("element #{0} is not idempotent")]
    NotIdempotent(Elem),
    #[error("element #{0} is not central")]
    NotCentral(Elem),
    #[error("{what}: ring of size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("construction would have {0} elements (limit 2^20)")]
    SizeOverflow(u128),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("bimodule axiom fails: {0}")]
    BimoduleAxiom(String),
    #[error("not a ring homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("ring is not semisimple (J != 0)")]
    NotSemisimple,
    #[error("ring was not built as a group ring")]
    NotAGroupRing,
    #[error("construction yields the zero ring")]
    ZeroRing,
    #[error("element id #{id} out of range for ring of size {size}")]
    ElementOutOfRange { id: u64, size: usize },
    /// Two independent computations of the same object disagreed.
    #[error("engine cross-check failed: {0}")]
    EngineBug(String),
}

impl RingError {
    /// Stable machine-readable code for reports and CLI diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            RingError::RingMismatch => "ring-mismatch",
            RingError::NotAnIdeal => "not-an-ideal",
            RingError::NotIdempotent(_) => "not-idempotent",
            RingError::NotCentral(_) => "not-central",
            RingError::CapExceeded { .. } => "cap-exceeded",
            RingError::SizeOverflow(_) => "size-overflow",
            RingError::NotPrime(_) => "not-prime",
            RingError::InvalidArgument(_) => "invalid-argument",
            RingError::BimoduleAxiom(_) => "bimodule-axiom",
            RingError::NotAHomomorphism(_) => "not-a-homomorphism",
            RingError::NotSemisimple => "not-semisimple",
            RingError::NotAGroupRing => "not-a-group-ring",
            RingError::ZeroRing => "zero-ring",
            RingError::ElementOutOfRange { .. } => "element-out-of-range",
            RingError::EngineBug(_) => "engine-bug",
        }
    }

    /// Resource caps map to their own CLI exit code.
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            RingError::CapExceeded { .. } | RingError::SizeOverflow(_)
        )
    }
}

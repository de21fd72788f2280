use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ambient rank mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("submodule is not contained in the larger one")]
    NotContained,
    #[error("elements or morphisms live in different modules")]
    ModuleMismatch,
    #[error("operands are over different rings")]
    RingMismatch,
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("variable index {0} out of range")]
    BadIndex(usize),
    #[error("morphism is not injective")]
    NotInjective,
    #[error("pair is not comparable: the bottom formula does not imply the top one")]
    NotComparable,
    #[error("chain is not descending at step {index}: {witness}")]
    NotDescending { index: usize, witness: String },
    #[error("principal ideals are not descending at step {0}")]
    NotDescendingIdeals(usize),
    #[error("chain stabilized in the module at step {0}")]
    Stabilized(usize),
    #[error("chain stabilized in the lattice at step {0}; no failure evidence exists")]
    ChainStabilized(usize),
    #[error("stage {stage} out of range (system has stages 0..={last})")]
    StageOutOfRange { stage: usize, last: usize },
    #[error("module too large to enumerate")]
    TooLarge,
    #[error("ring is not finite")]
    RingNotFinite,
    #[error("chain generator failed at stage {0}: {1}")]
    Generator(usize, String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

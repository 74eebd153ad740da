use alloc::string::String;

/// Errors raised by the kernel.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// System parameters outside their domain.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    /// A residue outside `[0, p-1]`.
    #[error("residue {value} out of range for modulus {modulus}")]
    ResidueOutOfRange {
        /// Offending value.
        value: u64,
        /// Modulus it was checked against.
        modulus: u32,
    },
    /// An item whose length differs from `y`.
    #[error("item has {actual} elements, expected {expected}")]
    ItemLength {
        /// Required element count.
        expected: usize,
        /// Element count found.
        actual: usize,
    },
    /// Operands built under different parameters.
    #[error("operands use different parameters")]
    ParamsMismatch,
    /// The result would hold more than `d` items.
    #[error("rank overflow: result needs {requested} items, capacity is {capacity}")]
    RankOverflow {
        /// Items the result would need.
        requested: usize,
        /// Maximum chain rank `d`.
        capacity: usize,
    },
    /// Binding with an empty chain.
    #[error("binding is undefined for an empty operand")]
    EmptyOperand,
    /// Operation needs at least one item.
    #[error("{0} requires a non-empty input")]
    EmptyInput(&'static str),
    /// Wrong number of samples for a reducer.
    #[error("{method} needs {expected} samples, got {actual}")]
    SampleCount {
        /// Reducer name.
        method: &'static str,
        /// Required number of samples.
        expected: usize,
        /// Samples supplied.
        actual: usize,
    },
    /// Codebook name already present.
    #[error("duplicate codebook entry '{0}'")]
    DuplicateName(String),
    /// Codebook name not present.
    #[error("unknown codebook entry '{0}'")]
    UnknownName(String),
    /// Codebook would exceed `p^y` entries.
    #[error("codebook cannot hold more than p^y entries")]
    CodebookFull,
    /// Query against an empty codebook.
    #[error("codebook is empty")]
    EmptyCodebook,
    /// Numeric argument outside its domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// Simulator asked to load while an operation is in flight.
    #[error("controller busy")]
    Busy,
}

/// Shorthand result type.
pub type Result<T> = core::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by the library operations.
///
/// Structural failures of a family (not a primal, not a topology) are not
/// errors; they come back as violation values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("universe size {0} outside 1..=16")]
    InvalidUniverseSize(usize),
    #[error("element index {index} outside universe of size {size}")]
    IndexOutOfUniverse { index: usize, size: u8 },
    #[error("duplicate element index {0}")]
    DuplicateIndex(usize),
    #[error("subset code {code} outside universe of size {size}")]
    CodeOutOfUniverse { code: u32, size: u8 },
    #[error("operands live on universes of size {left} and {right}")]
    UniverseMismatch { left: u8, right: u8 },
    #[error("universe of size {size} exceeds the exhaustive scan cap of {cap}")]
    UniverseTooLargeForScan { size: u8, cap: u8 },
    #[error("scope n<={requested} exceeds the cap n<={cap} for this property")]
    ScopeTooLarge { requested: u8, cap: u8 },
    #[error("subset {0:#b} is not open in the topology")]
    NotOpen(u32),
    #[error("point map table has {got} entries, domain has {expected}")]
    MapLength { expected: usize, got: usize },
    #[error("point map sends element {element} to {target}, codomain has {size} points")]
    MapTargetOutOfRange {
        element: usize,
        target: usize,
        size: u8,
    },
    #[error("closure table has {got} entries, expected {expected}")]
    TableLength { expected: usize, got: usize },
    #[error("unknown property id `{0}`")]
    UnknownProperty(alloc::string::String),
}

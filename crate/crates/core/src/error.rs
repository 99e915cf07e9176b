use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// The instance has no edges (or a part became empty after pruning).
    #[error("degenerate instance: {0}")]
    Degenerate(String),
    /// An explicit resource budget was exceeded.
    #[error("budget exceeded: {0}")]
    Budget(String),
    /// The operation does not apply to this input.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// Two routes that a theorem asserts agree have disagreed.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Explicit limits for the operations with combinatorial growth.
/// Exceeding a limit is a deterministic `Error::Budget`, never a panic.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    /// Maximum number of generators an ideal may acquire (powers, products).
    pub max_generators: usize,
    /// Maximum number of cells in the exponent box scanned by the
    /// irreducible-decomposition and normality sweeps.
    pub max_box_cells: usize,
    /// Maximum number of tuples enumerated by the exchange / fiber checks
    /// and by branch-and-bound searches.
    pub max_tuples: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_generators: 200_000,
            max_box_cells: 64_000_000,
            max_tuples: 20_000_000,
        }
    }
}

impl Budget {
    pub fn with_max_generators(mut self, n: usize) -> Self {
        self.max_generators = n;
        self
    }
}

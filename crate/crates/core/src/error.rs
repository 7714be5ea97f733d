use thiserror::Error;

/// Errors raised while building, parsing or certifying matrices, designs and codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("entry {value} at ({row}, {col}) is not +1 or -1")]
    NotSign { row: usize, col: usize, value: i64 },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("index {index} out of range for {len} rows")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("repeated row index {0}")]
    RepeatedIndex(usize),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("sylvester exponent {exponent} exceeds cap {cap}")]
    ExponentCap { exponent: u32, cap: u32 },
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("{0} is not congruent to 3 mod 4")]
    PaleyResidue(u64),
    #[error("not a Hadamard matrix: rows {row_a} and {row_b} have inner product {dot}")]
    NotHadamard { row_a: usize, row_b: usize, dot: i64 },
    #[error("Hadamard matrix is not normalised")]
    NotNormalised,
    #[error("no Hadamard constructor available for order {0}")]
    UnsupportedOrder(usize),

    #[error("construction needs an even u >= 2, got {0}")]
    InvalidU(usize),
    #[error("row {row} of the doubled matrix is not (+1^u, -1^u)")]
    SplitRow { row: usize },
    #[error("certification failed: {0}")]
    Certification(String),

    #[error("design needs at least {needed} blocks and points, got {blocks}x{points}")]
    TooSmall { needed: usize, blocks: usize, points: usize },
    #[error("block {block} has size {size}, expected {expected}")]
    NonConstantBlockSize { block: usize, size: usize, expected: usize },
    #[error("points ({p}, {q}) lie in {count} blocks, expected {expected}")]
    NonConstantPairCount { p: usize, q: usize, count: usize, expected: usize },
    #[error("design is not symmetric")]
    NotSymmetric,
    #[error("incidence matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("duplicate codeword {0}")]
    DuplicateWord(String),
    #[error("code has no words of weight {0}")]
    NoWordsOfWeight(usize),
    #[error("code needs at least two words")]
    TooFewWords,
    #[error("code is not self-complementary")]
    NotSelfComplementary,
    #[error("code parameters need 0 < d < n, got n={n}, d={d}")]
    InvalidCodeParameters { n: usize, d: usize },
    #[error("Grey-Rankin bound not applicable for n={n}, d={d}")]
    BoundNotApplicable { n: usize, d: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Error, Debug)]
pub enum Error {
    /// A character was built from states that are not pairwise disjoint.
    #[error("malformed character {name}: taxon '{taxon}' appears in more than one state")]
    OverlappingStates { name: String, taxon: String },

    /// A precondition on an operation's arguments does not hold.
    #[error("domain error: {0}")]
    Domain(String),

    /// Two objects that must live on the same taxon set do not.
    #[error("taxon set mismatch: {0}")]
    TaxonSetMismatch(String),

    /// A verification routine was handed a tree that does not satisfy
    /// its stated hypothesis.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The vertex/edge structure handed to a tree builder is not a valid
    /// leaf-labeled tree.
    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("matrix parse error at line {line}, column {col}: {msg}")]
    MatrixParse { line: usize, col: usize, msg: String },

    #[error("newick parse error at byte {pos}: {msg}")]
    NewickParse { pos: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

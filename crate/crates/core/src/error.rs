use thiserror::Error;

/// Errors raised by the library. Negative answers (a failed membership test,
/// a violated tree condition) are data, not errors.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("letter {letter} is not in an alphabet of size {size}")]
    ForeignLetter { letter: u32, size: usize },

    #[error("unknown letter name `{0}`")]
    UnknownName(String),

    #[error("rule {rule} has an empty side")]
    EmptyRuleSide { rule: usize },

    #[error("rule id {0} out of range")]
    UnknownRule(usize),

    #[error("distinguished letter `{0}` must be the least letter (id 0)")]
    DistinguishedNotLeast(String),

    #[error("move #{index} does not apply: {reason}")]
    BadMove { index: usize, reason: String },

    #[error("boundary mismatch: bottom `{bottom}` vs top `{top}`")]
    BoundaryMismatch { bottom: String, top: String },

    #[error("diagrams are over different rewriting systems")]
    SystemMismatch,

    #[error("diagram is not spherical: top `{top}`, bottom `{bottom}`")]
    NotSpherical { top: String, bottom: String },

    #[error("not a tree rewriting system: {0}")]
    NotTreeSystem(String),

    #[error("expected a part with only expanding cells, found a reducing cell at step {0}")]
    NotExpanding(usize),

    #[error(
        "derivation path does not chain at edge {index}: expected `{expected}`, found `{found}`"
    )]
    BrokenChain {
        index: usize,
        expected: String,
        found: String,
    },

    #[error("invalid branch pairs: {0}")]
    BadBranchPairs(String),

    #[error("element does not fix {0}")]
    NotFixed(String),

    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),

    #[error("generator #{0} is not reduced")]
    UnreducedGenerator(usize),

    #[error("no generators supplied")]
    NoGenerators,

    #[error("core invariant violated: {0}")]
    CoreInvariant(String),

    #[error("vertex {0} is unreachable from the initial vertex")]
    Unreachable(usize),

    #[error("word `{0}` is not a directed path from the initial vertex to the terminal vertex")]
    OutsideComponent(String),

    #[error("no derivation from `{from}` to `{to}` within length cap {cap}")]
    CapExhausted {
        from: String,
        to: String,
        cap: usize,
    },

    #[error("unsupported degenerate core: {0}")]
    DegenerateCore(String),

    #[error("factorization check failed: {0}")]
    Factorization(String),

    #[error(
        "no positive word p has a0 = p·`{word}`: words equivalent to a0 end in one of {{{ends}}}"
    )]
    NoLeftQuotient { word: String, ends: String },

    #[error("presentation error: {0}")]
    Presentation(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

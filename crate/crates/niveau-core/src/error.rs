use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong when building or combining group elements,
/// set specifications and verification runs.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u8),

    #[error("modulus {0} too large (digit encoding supports p <= 36)")]
    ModulusTooLarge(u8),

    #[error("scale {n} too large (maximum supported is {max})")]
    ScaleTooLarge { n: u32, max: u32 },

    #[error("residue {i} out of range mod {p}")]
    ResidueOutOfRange { i: u8, p: u8 },

    #[error("mixed moduli: {a} vs {b}")]
    ModulusMismatch { a: u8, b: u8 },

    #[error("mixed scales: {a} vs {b} (embed the smaller element first)")]
    ScaleMismatch { a: u32, b: u32 },

    #[error("cannot embed from scale {from} down to scale {to}")]
    EmbedDown { from: u32, to: u32 },

    #[error("element is not constant on scale-{scale} cylinders")]
    NotBlockwiseConstant { scale: u32 },

    #[error("binary string index {index} does not fit length {len}")]
    BadStringIndex { index: u64, len: u32 },

    #[error("string length {len} exceeds the restriction scale {n}")]
    StringTooLong { len: u32, n: u32 },

    #[error("group order {order} exceeds the enumeration cap {cap}")]
    CapExceeded { order: String, cap: u64 },

    #[error("niveau chain must be non-empty")]
    EmptyChain,

    #[error("niveau chain scales must be strictly increasing")]
    ChainNotIncreasing,

    #[error("margin 0 at chain position {position} rejected in strict mode")]
    ZeroMarginStrict { position: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(
        "scale cap {n_cap} exhausted at level {level}: best density {best_density} \
         at scale {best_n} is below the target {target} (epsilon too aggressive for the cap)"
    )]
    ScaleCapExhausted {
        level: usize,
        n_cap: u32,
        best_n: u32,
        best_density: String,
        target: String,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(
        "rejection sampling found no member in {attempts} attempts \
         (empirical hit rate 0; the target set is too sparse for rejection)"
    )]
    SamplingExhausted { attempts: u64 },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

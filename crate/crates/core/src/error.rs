use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown character {ch:?} at position {pos}")]
    UnknownCharacter { ch: char, pos: usize },

    #[error("letter {ch:?} has index {index}, which exceeds rank {rank}")]
    IndexExceedsRank { ch: char, index: usize, rank: usize },

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("rank must be at least {min}, got {rank}")]
    RankTooSmall { rank: usize, min: usize },

    #[error("automorphism file lists {found} {what} for rank {rank}")]
    ImageCount {
        what: &'static str,
        rank: usize,
        found: usize,
    },

    #[error("inverse images do not invert the images: {side} composition sends generator {generator} to {image}")]
    InvalidInverse {
        side: &'static str,
        generator: String,
        image: String,
    },

    #[error("trivial seed: {0:?} reduces to the identity")]
    TrivialSeed(String),

    #[error("all seeds are trivial")]
    AllSeedsTrivial,

    #[error("character dynamics implemented for rank 2 only")]
    CharacterRank(usize),

    #[error("eigenvalue iteration did not converge within {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("invalid tolerance {0}")]
    InvalidTolerance(f64),

    #[error("polynomial variable lists differ")]
    VariableMismatch,

    #[error("cannot parse polynomial {text:?}: {reason}")]
    PolynomialSyntax { text: String, reason: String },

    #[error("change of coordinates: supplied inverse does not compose to the identity")]
    InvalidChangeInverse,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{a}^2 + {b}^2 != {p}")]
    NotSumOfSquares { p: u64, a: i64, b: i64 },

    #[error("valuation kind does not match the scalar: {0}")]
    ValuationKind(&'static str),

    #[error("matrix determinant is {0}, expected 1")]
    NotUnimodular(String),

    #[error("bad S: {0}")]
    BadS(String),

    #[error("p too small: projective points collide modulo {p}")]
    PTooSmall { p: u64 },

    #[error(
        "length certificate failed for {failures} of {checked} words (first witness {witness})"
    )]
    CertificationFailed {
        checked: usize,
        failures: usize,
        witness: String,
    },

    #[error("automorphism file: {0}")]
    Json(#[from] serde_json::Error),
}

use thiserror::Error;

/// Errors raised by the classification pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("word has an odd number of A letters and is not in the index-2 subgroup")]
    OddACount,
    #[error("word `{0}` is not a palindrome")]
    NotPalindromic(String),
    #[error("matrix with trace {0} is not hyperbolic")]
    NotHyperbolic(String),
    #[error("matrix fixes infinity (c = 0)")]
    TranslationForm,
    #[error("type ({m},{n}) has a coordinate divisible by 3")]
    DivisibleByThree { m: i64, n: i64 },
    #[error("type ({m},{n}) is not coprime")]
    NotCoprime { m: i64, n: i64 },
    #[error("type ({m},{n}) has even ell and collides")]
    CollisionType { m: i64, n: i64 },
    #[error("type ({m},{n}) is not a primitive Lissajous type")]
    NotPrimitive { m: i64, n: i64 },
    #[error("invalid level-slope label: {0}")]
    InvalidLabel(String),
    #[error("word `{0}` has no palindromic rotation")]
    NoPalindrome(String),
    #[error("word `{0}` has more than one palindromic rotation")]
    MultiplePalindromes(String),
    #[error("cyclic word consists of ones only")]
    AllOnes,
    #[error("epsilon oracle did not stabilise after {0} halvings")]
    Unstable(u32),
    #[error("equator crossing at t = {0} lies on a collision point")]
    BorderHit(f64),
    #[error("point lies on a region border")]
    OnBorder,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

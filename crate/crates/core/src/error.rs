use thiserror::Error;

/// Errors produced while constructing or parsing words, generator maps and
/// subgroup expressions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator {generator} out of rank (rank = {rank})")]
    GeneratorOutOfRank { generator: usize, rank: usize },
    #[error("unexpected symbol {symbol:?} in word")]
    UnknownSymbol { symbol: char },
    #[error("malformed exponent in {text:?}")]
    MalformedExponent { text: String },
    #[error("malformed generator map entry {entry:?}")]
    BadMapEntry { entry: String },
    #[error("no image given for generator {generator}")]
    MissingImage { generator: usize },
    #[error("more than one image given for generator {generator}")]
    DuplicateImage { generator: usize },
    #[error("word is not a member of the subgroup")]
    NotInSubgroup,
}

pub type Result<T> = std::result::Result<T, Error>;

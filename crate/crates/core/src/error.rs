use thiserror::Error;

/// A parse failure at byte `offset`, listing the tokens that would have been accepted.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: expected one of {}", expected.join(", "))]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<String>,
}

impl ParseError {
    pub fn new(offset: usize, expected: &[&str]) -> Self {
        ParseError {
            offset,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn expected_refs(&self) -> Vec<&str> {
        self.expected.iter().map(String::as_str).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("window error: degree {degree} exceeds certified degree {cert}")]
    Window { degree: usize, cert: usize },

    #[error("certification error at degree {degree}: {reason}")]
    Certification { degree: usize, reason: String },

    #[error("desuspension error: nonzero class in degree 0 ({which})")]
    Desuspension { which: &'static str },

    #[error("module is not locally finite within the window (element in degree {degree})")]
    NotLocallyFinite { degree: usize },

    #[error("rank cap exhausted: need rank {needed}, have {cap}")]
    RankExhausted { needed: usize, cap: usize },

    #[error("algebra has no coproduct")]
    NoCoproduct,

    #[error("ideal is not stable under Sq^{k} (relation {relation})")]
    IdealNotStable { k: u32, relation: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

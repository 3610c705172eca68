use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A vector, table or tuple has the wrong number of components.
    #[error("rank mismatch in {what}: expected {expected}, found {found}")]
    RankMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    /// A multiset key is larger than the degree bound of its table.
    #[error("multiset of cardinality {found} exceeds degree bound {bound}")]
    DegreeExceeded { bound: usize, found: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn rank(what: &'static str, expected: usize, found: usize) -> Self {
        Error::RankMismatch {
            what,
            expected,
            found,
        }
    }

    pub(crate) fn check_rank(what: &'static str, expected: usize, found: usize) -> Result<()> {
        if expected == found {
            Ok(())
        } else {
            Err(Error::rank(what, expected, found))
        }
    }
}

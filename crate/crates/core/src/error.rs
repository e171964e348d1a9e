use thiserror::Error;

use crate::model::PersonId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} and {1} are on the same side")]
    SameSide(PersonId, PersonId),

    #[error("{0} does not exist in this instance")]
    UnknownPerson(PersonId),

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("matching is not stable for this instance")]
    Unstable,

    #[error("mechanism requires strict lists")]
    RequiresStrictLists,

    #[error("mechanism requires strict women's lists")]
    RequiresStrictWomen,

    #[error("mechanism {mechanism} is not admissible on {instance}")]
    Inadmissible { mechanism: String, instance: String },

    #[error("instance too large for oracle: search bound {bound} exceeds cap {cap}")]
    OracleTooLarge { bound: u128, cap: u128 },

    #[error("strategy space too large: {0}")]
    SpaceTooLarge(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Whether the error is a violated mechanism precondition (as opposed to
    /// a search cap or a malformed argument).
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::RequiresStrictLists | Error::RequiresStrictWomen | Error::Inadmissible { .. }
        )
    }

    pub fn is_cap(&self) -> bool {
        matches!(self, Error::OracleTooLarge { .. } | Error::SpaceTooLarge(_))
    }
}

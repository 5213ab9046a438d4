//! Error taxonomy shared by the whole engine.
//!
//! The variants map one-to-one onto the CLI exit-code contract:
//! input errors exit 2, resource-cap errors exit 3, internal invariant
//! violations exit 4. "A checked property is false" is not an error;
//! those results are reported as ordinary values with witnesses.

use crate::commutant::CommuteWitness;

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// Malformed or inconsistent input: bad tables, carrier mismatches,
    /// arities outside the profile, unknown library names, bad documents.
    #[error("input error: {0}")]
    Input(String),

    /// A configurable cap (op cap, enumeration cap) would be exceeded.
    #[error("resource cap exceeded: {0}")]
    Resource(String),

    /// A strict pair construction or a pair-status computation was asked
    /// for on a pair that does not commute.
    #[error("algebras do not commute: {0}")]
    NotCommuting(CommuteWitness),

    /// An operation's stated precondition does not hold; the message names
    /// the failed flag.
    #[error("precondition not met: {0}")]
    Precondition(String),

    /// A required derivation witness is missing.
    #[error("missing derivation: {0}")]
    Derivation(String),

    /// Something the engine guarantees by theorem failed to hold; this
    /// signals an engine bug (or a transport target that is not a model
    /// of the required equations).
    #[error("internal invariant violation: {0}")]
    InternalInvariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    /// Exit code for the CLI contract.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotCommuting(_) => 1,
            Error::Input(_) | Error::Precondition(_) | Error::Derivation(_) => 2,
            Error::Resource(_) => 3,
            Error::InternalInvariant(_) => 4,
        }
    }
}

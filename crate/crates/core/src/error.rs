use thiserror::Error;

/// Failure modes shared by every module of the crate.
///
/// The three variants map one-to-one onto the command-line exit statuses
/// (usage = 2, resource = 3, bound violation = 4).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("resource limit exceeded: {what} (budget {budget})")]
    Resource { what: String, budget: u64 },
    #[error("bound violated: {0}")]
    BoundViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn resource(what: impl Into<String>, budget: u64) -> Self {
        Error::Resource {
            what: what.into(),
            budget,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 2,
            Error::Resource { .. } => 3,
            Error::BoundViolation(_) => 4,
        }
    }
}

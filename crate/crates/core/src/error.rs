use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid argument: {0}")]
    Usage(String),

    #[error("exhaustive limit: {what} needs {size}, limit is {limit} (use force to override)")]
    ExhaustiveLimit {
        what: &'static str,
        size: u64,
        limit: u64,
    },

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("integrity check failed: {0}")]
    Integrity(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("k-table has no entry for k({n},{d})")]
    MissingTableEntry { n: u32, d: u32 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}

/// Whether an exhaustive-size guard is enforced or explicitly bypassed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Guard {
    #[default]
    Enforce,
    Override,
}

impl Guard {
    pub fn from_force(force: bool) -> Self {
        if force {
            Guard::Override
        } else {
            Guard::Enforce
        }
    }

    pub(crate) fn check(self, what: &'static str, size: u64, limit: u64) -> Result<()> {
        if self == Guard::Enforce && size > limit {
            return Err(Error::ExhaustiveLimit { what, size, limit });
        }
        Ok(())
    }
}

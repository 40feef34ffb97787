use thiserror::Error;

/// Errors returned by the signature toolkit.
///
/// A signature that fails to verify is not an error: `verify` returns
/// `Ok(false)`. These variants cover malformed inputs and configuration.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown parameter set `{name}` (valid: {valid})")]
    UnknownParamSet { name: String, valid: String },

    #[error("unknown hash backend `{name}` (valid: {valid})")]
    UnknownBackend { name: String, valid: String },

    #[error("parameter set `{name}` is inconsistent: {reason}")]
    InconsistentParams { name: &'static str, reason: String },

    #[error("{what}: expected {expected} bytes, got {actual}")]
    Length {
        what: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("{what} = {value} is out of range (must be < {limit})")]
    Range {
        what: &'static str,
        value: u128,
        limit: u128,
    },

    #[error("start leaf {start} is not aligned to a subtree of height {height}")]
    Alignment { start: u64, height: u32 },

    #[error("mask length {requested} exceeds the MGF1 limit of {limit} bytes")]
    MaskTooLong { requested: u64, limit: u64 },

    #[error("benchmark configuration: {0}")]
    Bench(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

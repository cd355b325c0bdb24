use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{what} index {index} out of range {range}")]
    IndexOutOfRange {
        what: &'static str,
        index: i64,
        range: &'static str,
    },
    #[error("non-finite input: {0}")]
    NonFinite(String),
    #[error("reflection vector must be nonzero")]
    ZeroVector,
    #[error("group not closed within cap {cap} (enumerated {found} elements)")]
    CapExceeded { cap: usize, found: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("bilinear form needs an even number of qubits, got {0}")]
    OddQubits(usize),
    #[error("zero state")]
    ZeroState,
    #[error("local factor {slot} has determinant {det_re}{det_im:+}i, not 1")]
    NotSpecialLinear { slot: usize, det_re: f64, det_im: f64 },
    #[error("point is not critical (residual {0:e}); the sphere Hessian is only defined at critical points")]
    NotCritical(f64),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("parse error: {0}")]
    Parse(String),
}

use std::fmt;

use crate::bitstring::BitString;

/// Errors raised by the library.
///
/// Variants fall into two groups: refusals, where a request is well-formed
/// but violates a cap or precondition, and hard failures. Front ends map the
/// first group to a distinct exit status via [`Error::is_refusal`].
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid bit string {0:?}: only '0' and '1' are allowed")]
    Parse(String),

    #[error("length overflow: string of length {len} does not fit in {width} bits")]
    LengthOverflow { len: usize, width: usize },

    #[error("value {value} does not fit in {width} bits")]
    ValueOverflow { value: u64, width: usize },

    #[error("{what} of {requested} exceeds the configured cap of {cap}")]
    CapExceeded {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    #[error("program length {0} is not a multiple of 3")]
    InvalidProgramLength(usize),

    #[error("generator expects {expected} input bits, got {actual}")]
    Arity { expected: usize, actual: usize },

    #[error("generator is not total: input {input} faults ({fault})")]
    NonTotal { input: BitString, fault: Fault },

    #[error("input {0} lies outside the generator domain")]
    DomainFault(BitString),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error(
        "generator is not ideal (fixed_input={fixed_input}, total={total}, injective={injective})"
    )]
    NotIdeal {
        fixed_input: bool,
        total: bool,
        injective: bool,
    },

    #[error("cap {cap} is too small; at least {required} is required")]
    CapTooSmall { cap: usize, required: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("estimator error: {0}")]
    Estimator(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for cap and precondition refusals, false for internal failures.
    pub fn is_refusal(&self) -> bool {
        !matches!(
            self,
            Error::Io(_) | Error::Json(_) | Error::Csv(_) | Error::Estimator(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Reason a VM run produced no artefact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    EmptyOutputOperand,
    InputExhausted,
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fault::EmptyOutputOperand => f.write_str("empty-output-operand"),
            Fault::InputExhausted => f.write_str("input-exhausted"),
        }
    }
}

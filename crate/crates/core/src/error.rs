use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{what} = {value} is outside the admissible range {range}")]
    Range {
        what: &'static str,
        value: String,
        range: String,
    },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("{what} {needed} exceeds the configured cap {cap}")]
    Capacity {
        what: &'static str,
        needed: u128,
        cap: u128,
    },

    #[error(
        "subset search budget exhausted: {evaluated} of {total} candidate classes evaluated \
         (budget {budget}) without a certificate"
    )]
    BudgetExceeded {
        evaluated: u128,
        total: u128,
        budget: u128,
    },

    #[error("infeasible dimension profile: {0}")]
    InfeasibleProfile(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn range(what: &'static str, value: impl ToString, range: impl ToString) -> Self {
        Error::Range {
            what,
            value: value.to_string(),
            range: range.to_string(),
        }
    }
}

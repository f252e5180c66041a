use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at position {pos} near '{token}': {msg}")]
    Parse {
        pos: usize,
        token: String,
        msg: String,
    },

    #[error("group order {order} exceeds the cap of {cap}")]
    OrderCap { order: u128, cap: usize },

    #[error("dihedral order must be an even integer >= 4, got {0}")]
    DihedralOrder(u64),

    #[error("subgroup enumeration exceeded the cap of {cap} subgroups")]
    SubgroupCap { cap: usize },

    #[error(
        "subgroup has {t} maximal subgroups, above the inclusion-exclusion \
         cap of {cap}; use the DP method"
    )]
    IeMaximalsCap { t: usize, cap: usize },

    #[error("invalid parameter for {family}: {msg}")]
    Parameter { family: &'static str, msg: String },

    #[error(
        "non-exact division evaluating {family} at n={n}: {numerator} is not \
         divisible by {divisor} (transcription bug in the printed formula)"
    )]
    NonExactDivision {
        family: &'static str,
        n: i64,
        numerator: String,
        divisor: u32,
    },

    #[error("no formula family matches '{spec}'; known families: {known}")]
    NoMatchingFamily { spec: String, known: String },

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// True for conditions that signal a bug in this engine rather than a
    /// finding about the inputs. Verification runs exit nonzero on these.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

use thiserror::Error;

use crate::report::ValidationReport;

/// Default cap on candidates examined by any brute-force search.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A search ran out of budget before reaching a verdict.
    #[error("enumeration budget exhausted after {examined} candidates")]
    BudgetExceeded { examined: u64 },

    #[error("coset enumeration exceeded the cap of {cap} cosets")]
    CosetCapExceeded { cap: usize },

    #[error("group of order {order} is beyond the isomorphism search cap")]
    GroupTooLarge { order: usize },

    #[error("invalid input:\n{0}")]
    Invalid(ValidationReport),

    #[error("unknown object `{0}`")]
    UnknownObject(String),

    #[error("families live over different target categories")]
    TargetMismatch,

    #[error("morphisms are not composable: {0}")]
    NotComposable(String),

    #[error("the target category has no terminal object")]
    NoTerminal,

    #[error("missing limit in the target category: {0}")]
    MissingLimit(String),

    #[error("shape is not connected: objects `{from}` and `{to}` lie in different components")]
    NotConnected { from: String, to: String },

    #[error("diagram is not functorial: {0}")]
    NotFunctorial(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl Error {
    /// True for outcomes that mean "could not decide", as opposed to a refutation
    /// or misuse.
    pub fn is_indeterminate(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. } | Error::CosetCapExceeded { .. } | Error::GroupTooLarge { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Per-call enumeration cap. Every candidate examined by a search spends one
/// unit.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    spent: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, spent: 0 }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    pub fn spend(&mut self, amount: u64) -> Result<()> {
        self.spent = self.spent.saturating_add(amount);
        if self.spent > self.limit {
            Err(Error::BudgetExceeded {
                examined: self.spent,
            })
        } else {
            Ok(())
        }
    }

    pub fn spent(&self) -> u64 {
        self.spent
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}

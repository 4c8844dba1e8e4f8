//! Cooperative time budgets for long-running engines.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("time budget exceeded")]
pub struct BudgetExceeded;

/// A deadline and/or cancellation flag polled by engine main loops.
#[derive(Clone, Debug, Default)]
pub struct Budget {
    deadline: Option<Instant>,
    cancel: Option<Arc<AtomicBool>>,
}

impl Budget {
    /// No limit.
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn with_timeout(limit: Duration) -> Self {
        Budget {
            deadline: Some(Instant::now() + limit),
            cancel: None,
        }
    }

    pub fn with_cancel_flag(mut self, flag: Arc<AtomicBool>) -> Self {
        self.cancel = Some(flag);
        self
    }

    pub fn check(&self) -> Result<(), BudgetExceeded> {
        if let Some(d) = self.deadline {
            if Instant::now() >= d {
                return Err(BudgetExceeded);
            }
        }
        if let Some(c) = &self.cancel {
            if c.load(Ordering::Relaxed) {
                return Err(BudgetExceeded);
            }
        }
        Ok(())
    }
}

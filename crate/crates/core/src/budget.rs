//! A shared cap on matrix dimensions.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};

pub const DEFAULT_CAP: usize = 5_000_000;
pub const ENV_VAR: &str = "DERIFUN_BUDGET_COLS";

/// Caps the number of columns of any matrix built by the simplicial path.
/// Clones share the record of the largest size seen.
#[derive(Clone, Debug)]
pub struct Budget {
    cap: usize,
    max_seen: Arc<AtomicUsize>,
}

impl Budget {
    pub fn new(cap: usize) -> Budget {
        Budget {
            cap,
            max_seen: Arc::new(AtomicUsize::new(0)),
        }
    }

    /// The cap from `DERIFUN_BUDGET_COLS`, or the default.
    pub fn from_env() -> Budget {
        let cap = std::env::var(ENV_VAR)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_CAP);
        Budget::new(cap)
    }

    pub fn unlimited() -> Budget {
        Budget::new(usize::MAX)
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Largest dimension passed to `check`, including rejected ones.
    pub fn max_seen(&self) -> usize {
        self.max_seen.load(Ordering::Relaxed)
    }

    pub fn check(&self, needed: usize) -> Result<()> {
        self.max_seen.fetch_max(needed, Ordering::Relaxed);
        if needed > self.cap {
            Err(Error::BudgetExceeded {
                needed,
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Budget {
        Budget::from_env()
    }
}

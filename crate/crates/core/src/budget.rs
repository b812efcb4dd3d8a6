use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Limits on exhaustive searches. Exceeding either is reported as
/// [`Error::BudgetExceeded`]; results are never silently truncated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_time: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: 200_000_000,
            max_time: None,
        }
    }
}

impl Budget {
    pub fn nodes(max_nodes: u64) -> Self {
        Budget {
            max_nodes,
            max_time: None,
        }
    }

    pub fn with_time(mut self, t: Duration) -> Self {
        self.max_time = Some(t);
        self
    }

    pub fn meter(&self, what: &'static str) -> Meter {
        Meter {
            budget: *self,
            what,
            nodes: 0,
            start: Instant::now(),
        }
    }
}

/// Running node/time counter for one search.
#[derive(Debug)]
pub struct Meter {
    budget: Budget,
    what: &'static str,
    nodes: u64,
    start: Instant,
}

impl Meter {
    #[inline]
    pub fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            return Err(Error::BudgetExceeded(format!(
                "{}: more than {} nodes",
                self.what, self.budget.max_nodes
            )));
        }
        if let Some(limit) = self.budget.max_time {
            if self.nodes & 0x3ff == 0 && self.start.elapsed() > limit {
                return Err(Error::BudgetExceeded(format!(
                    "{}: more than {:.1}s",
                    self.what,
                    limit.as_secs_f64()
                )));
            }
        }
        Ok(())
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }
}

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Cooperative wall-clock budget shared by the long-running loops.
///
/// Cloning shares the expiry flag, so once any holder observes the deadline
/// every other clone reports exhaustion as well.
#[derive(Debug, Clone)]
pub struct Budget {
    deadline: Option<Instant>,
    tripped: Arc<AtomicBool>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { deadline: None, tripped: Arc::new(AtomicBool::new(false)) }
    }

    pub fn with_duration(d: Duration) -> Self {
        Budget { deadline: Some(Instant::now() + d), tripped: Arc::new(AtomicBool::new(false)) }
    }

    pub fn with_secs(secs: f64) -> Self {
        Self::with_duration(Duration::from_secs_f64(secs.max(0.0)))
    }

    pub fn is_unlimited(&self) -> bool {
        self.deadline.is_none()
    }

    pub fn expired(&self) -> bool {
        if self.tripped.load(Ordering::Relaxed) {
            return true;
        }
        match self.deadline {
            Some(d) if Instant::now() >= d => {
                self.tripped.store(true, Ordering::Relaxed);
                true
            }
            _ => false,
        }
    }

    pub fn check(&self) -> Result<()> {
        if self.expired() {
            Err(Error::BudgetExhausted)
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::unlimited()
    }
}

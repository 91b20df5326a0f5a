//! Search budgets and the shared meter that enforces them.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use serde::Serialize;

/// Limits for one pipeline invocation. `None` means unlimited.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    /// Complete diagrams (search leaves) that may be examined.
    pub max_diagrams: Option<u64>,
    #[serde(serialize_with = "serialize_secs")]
    pub time_limit: Option<Duration>,
    pub parallelism: usize,
    /// Return lexicographically least witnesses regardless of parallelism.
    pub deterministic: bool,
}

fn serialize_secs<S: serde::Serializer>(d: &Option<Duration>, s: S) -> Result<S::Ok, S::Error> {
    match d {
        Some(d) => s.serialize_some(&d.as_secs_f64()),
        None => s.serialize_none(),
    }
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        SearchBudget {
            max_diagrams: None,
            time_limit: None,
            parallelism: 1,
            deterministic: true,
        }
    }

    /// Desk-scale defaults: 10^7 diagrams, 60 seconds.
    pub fn desk() -> Self {
        SearchBudget {
            max_diagrams: Some(10_000_000),
            time_limit: Some(Duration::from_secs(60)),
            parallelism: 1,
            deterministic: true,
        }
    }

    pub fn with_max_diagrams(mut self, n: Option<u64>) -> Self {
        self.max_diagrams = n;
        self
    }

    pub fn with_time_limit(mut self, t: Option<Duration>) -> Self {
        self.time_limit = t;
        self
    }

    pub fn with_parallelism(mut self, jobs: usize) -> Self {
        self.parallelism = jobs.max(1);
        self
    }

    pub fn with_deterministic(mut self, deterministic: bool) -> Self {
        self.deterministic = deterministic;
        self
    }

    pub fn meter(&self) -> Meter {
        Meter::new(self)
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::desk()
    }
}

/// Consumption counter shared by every search run under one budget.
#[derive(Debug)]
pub struct Meter {
    diagrams: AtomicU64,
    limit: Option<u64>,
    deadline: Option<Instant>,
    stopped: AtomicBool,
    started: Instant,
}

impl Meter {
    pub fn new(budget: &SearchBudget) -> Self {
        let started = Instant::now();
        Meter {
            diagrams: AtomicU64::new(0),
            limit: budget.max_diagrams,
            deadline: budget.time_limit.map(|t| started + t),
            stopped: AtomicBool::new(false),
            started,
        }
    }

    pub fn unlimited() -> Self {
        Meter::new(&SearchBudget::unlimited())
    }

    /// Records one examined diagram. Returns `false`, without counting it,
    /// when the diagram allowance is already used up.
    pub fn charge_diagram(&self) -> bool {
        let used = self.diagrams.fetch_add(1, Ordering::Relaxed) + 1;
        match self.limit {
            Some(limit) if used > limit => {
                self.diagrams.fetch_sub(1, Ordering::Relaxed);
                self.stopped.store(true, Ordering::Relaxed);
                false
            }
            _ => true,
        }
    }

    /// Periodic check of the clock; `false` once any limit was hit.
    pub fn check(&self) -> bool {
        if self.stopped.load(Ordering::Relaxed) {
            return false;
        }
        if let Some(deadline) = self.deadline {
            if Instant::now() >= deadline {
                self.stopped.store(true, Ordering::Relaxed);
                return false;
            }
        }
        true
    }

    pub fn is_stopped(&self) -> bool {
        self.stopped.load(Ordering::Relaxed)
    }

    pub fn diagrams_examined(&self) -> u64 {
        self.diagrams.load(Ordering::Relaxed)
    }

    pub fn elapsed(&self) -> Duration {
        self.started.elapsed()
    }
}

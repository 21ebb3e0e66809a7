//! PASS/FAIL bookkeeping for the acceptance suite in `tests/acceptance.rs`.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

/// Result of checking one criterion.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub pass: bool,
    pub detail: String,
}

impl Outcome {
    pub fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

pub struct Criterion {
    pub id: u32,
    pub title: &'static str,
    /// Wall-clock limit; exceeding it fails the criterion.
    pub budget: Option<Duration>,
    pub check: fn() -> Outcome,
}

/// Runs every criterion, printing one line each. True when all pass.
pub fn run_all(criteria: &[Criterion]) -> bool {
    let mut passed = 0;
    for c in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(c.check))
            .unwrap_or_else(|e| Outcome::new(false, format!("panicked: {}", panic_message(&*e))));
        let elapsed = start.elapsed();
        let over = c.budget.filter(|b| elapsed > *b);
        let pass = outcome.pass && over.is_none();
        let mut detail = outcome.detail;
        if let Some(b) = over {
            detail.push_str(&format!("; over the {:.1} s budget", b.as_secs_f64()));
        }
        println!(
            "{} {:>2}. {}: {} ({:.2} s)",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            detail,
            elapsed.as_secs_f64()
        );
        passed += pass as usize;
    }
    println!("{passed}/{} criteria passed", criteria.len());
    passed == criteria.len()
}

fn panic_message(e: &(dyn std::any::Any + Send)) -> String {
    e.downcast_ref::<String>()
        .cloned()
        .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "unknown payload".into())
}

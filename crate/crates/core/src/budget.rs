//! Cooperative per-thread wall-clock budgets.
//!
//! Long-running loops call [`check`]; when the deadline installed by
//! [`with_deadline`] on the current thread has passed they fail with
//! [`Error::BudgetExceeded`]. Without a deadline `check` never fails.

use std::cell::Cell;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};

thread_local! {
    static DEADLINE: Cell<Option<Instant>> = const { Cell::new(None) };
}

/// Runs `f` with a deadline `limit` from now on the current thread. Nested
/// calls keep the earlier deadline.
pub fn with_deadline<T>(limit: Option<Duration>, f: impl FnOnce() -> T) -> T {
    let Some(limit) = limit else {
        return f();
    };
    let new = Instant::now() + limit;
    let previous = DEADLINE.with(|d| d.get());
    let effective = match previous {
        Some(old) if old < new => old,
        _ => new,
    };
    DEADLINE.with(|d| d.set(Some(effective)));
    let out = f();
    DEADLINE.with(|d| d.set(previous));
    out
}

pub fn check() -> Result<()> {
    DEADLINE.with(|d| match d.get() {
        Some(t) if Instant::now() >= t => Err(Error::BudgetExceeded),
        _ => Ok(()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expired_deadline_fails() {
        assert!(check().is_ok());
        let r = with_deadline(Some(Duration::ZERO), check);
        assert_eq!(r, Err(Error::BudgetExceeded));
        assert!(check().is_ok());
    }
}

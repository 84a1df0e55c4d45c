//! Resource limits shared by the enumerators and counters.
//!
//! Every limit is checked up front; an operation that would exceed one fails
//! with [`Error::Budget`] instead of returning a partial answer.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budgets {
    /// Largest group order a constructor may produce.
    pub order: usize,
    /// Candidate generator-image assignments (endomorphisms) and hom tuples.
    pub hom_search: u128,
    /// Entries of a word-map table, and tuples scanned by agreement counts.
    pub table_entries: u128,
    /// Tuples scanned by an exact solution census.
    pub census_iter: u128,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            order: 2000,
            hom_search: 10_000_000,
            table_entries: 100_000_000,
            census_iter: 1_000_000_000,
        }
    }
}

impl Budgets {
    pub fn unlimited() -> Self {
        Budgets { order: usize::MAX, hom_search: u128::MAX, table_entries: u128::MAX, census_iter: u128::MAX }
    }
}

pub(crate) fn check(what: &'static str, needed: u128, limit: u128) -> Result<()> {
    if needed > limit {
        Err(Error::Budget { what, needed, limit })
    } else {
        Ok(())
    }
}

/// `base^exp`, saturating at `u128::MAX`.
pub(crate) fn pow_sat(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

//! Mixed-radix indexing of `G^d`: the last coordinate varies fastest, so
//! index `Σ g_i · n^(d-i)` for `i = 1..d`.

use crate::budget;
use crate::error::Result;
use crate::group::Elem;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TupleSpace {
    pub n: usize,
    pub d: usize,
    size: usize,
}

impl TupleSpace {
    /// Fails when `n^d` exceeds `limit`.
    pub fn new(n: usize, d: usize, what: &'static str, limit: u128) -> Result<Self> {
        let size = budget::pow_sat(n, d);
        budget::check(what, size, limit)?;
        let size = usize::try_from(size).map_err(|_| crate::error::Error::Budget {
            what,
            needed: size,
            limit: usize::MAX as u128,
        })?;
        Ok(TupleSpace { n, d, size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn decode(&self, mut idx: usize, out: &mut [Elem]) {
        for slot in out[..self.d].iter_mut().rev() {
            *slot = (idx % self.n) as Elem;
            idx /= self.n;
        }
    }

    pub fn encode(&self, tuple: &[Elem]) -> usize {
        tuple[..self.d].iter().fold(0, |acc, &g| acc * self.n + g as usize)
    }

    /// Advance `tuple` to the next index; returns false after the last one.
    pub fn step(&self, tuple: &mut [Elem]) -> bool {
        for slot in tuple[..self.d].iter_mut().rev() {
            *slot += 1;
            if (*slot as usize) < self.n {
                return true;
            }
            *slot = 0;
        }
        false
    }
}

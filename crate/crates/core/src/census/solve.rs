//! Counting solutions of `w(x⁻¹yz) = w(x)⁻¹ w(y) w(z)` over `G^{3d}`.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::WordMapTable;
use crate::bounds::Rational;
use crate::budget::{self, Budgets};
use crate::error::{Error, Result};
use crate::freeword::Word;
use crate::group::{Elem, GroupTable};
use crate::rng;

pub const MIN_SAMPLES: u64 = 1000;

/// `1.96`, the two-sided 95% normal quantile, as an exact fraction.
fn z95() -> Rational {
    Rational::new(49, 25)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum CensusResult {
    Exact {
        #[serde(serialize_with = "crate::report::as_string")]
        count: u64,
        /// `|G|^{3d}`
        #[serde(serialize_with = "crate::report::as_string")]
        total: u128,
    },
    Estimate {
        #[serde(serialize_with = "crate::report::as_string")]
        hits: u64,
        #[serde(serialize_with = "crate::report::as_string")]
        samples: u64,
        #[serde(serialize_with = "crate::report::as_string")]
        seed: u64,
        estimate_mean: Rational,
        /// `1.96 · sqrt(p(1-p)/samples)`; display only.
        ci_half_width: f64,
        #[serde(serialize_with = "crate::report::as_string")]
        total: u128,
    },
}

impl CensusResult {
    pub fn is_exact(&self) -> bool {
        matches!(self, CensusResult::Exact { .. })
    }

    pub fn exact_count(&self) -> Option<u64> {
        match *self {
            CensusResult::Exact { count, .. } => Some(count),
            CensusResult::Estimate { .. } => None,
        }
    }

    /// Exact solution proportion, or the sample mean.
    pub fn proportion(&self) -> Rational {
        match self {
            CensusResult::Exact { count, total } => Rational::new(*count, num_bigint::BigInt::from(*total)),
            CensusResult::Estimate { estimate_mean, .. } => estimate_mean.clone(),
        }
    }

    /// Whether the 95% interval contains `p`, decided exactly as
    /// `(mean − p)² ≤ 1.96² · mean(1 − mean) / samples`.
    pub fn covers(&self, p: &Rational) -> bool {
        match self {
            CensusResult::Exact { .. } => self.proportion() == *p,
            CensusResult::Estimate { estimate_mean: m, samples, .. } => {
                let diff = m - p;
                let var = m * &(&Rational::one() - m);
                let z = z95();
                &diff * &diff <= &(&z * &z) * &(&var / &Rational::from(*samples))
            }
        }
    }
}

/// Exact count. Tabulates `w` once over `G^d`, then for every triple
/// `(s, t, u)` compares `W(s⁻¹tu)` with `W(s)⁻¹ W(t) W(u)` by lookups.
pub fn count_solutions_exact(w: &Word, g: &GroupTable, d: usize, budgets: &Budgets) -> Result<CensusResult> {
    let table = WordMapTable::new(w, g, d, budgets.table_entries)?;
    count_solutions_with_table(&table, g, budgets)
}

pub(crate) fn count_solutions_with_table(
    table: &WordMapTable,
    g: &GroupTable,
    budgets: &Budgets,
) -> Result<CensusResult> {
    let space = table.space();
    let size = space.size();
    let total = budget::pow_sat(size, 3);
    budget::check("census tuples", total, budgets.census_iter)?;
    let d = space.d;
    let values = table.values();
    // radix[i] = n^(d-1-i)
    let radix: Vec<usize> = (0..d).map(|i| space.n.pow((d - 1 - i) as u32)).collect();

    let count = (0..size)
        .into_par_iter()
        .map(|s_idx| {
            let mut s = vec![0; d];
            let mut t = vec![0; d];
            let mut u = vec![0; d];
            let mut p = vec![0; d];
            // translated[u] = index of p·u
            let mut translated = vec![0usize; size];
            space.decode(s_idx, &mut s);
            let ws_inv = g.inv(values[s_idx]);
            let mut hits = 0u64;
            for (t_idx, &wt) in values.iter().enumerate() {
                space.decode(t_idx, &mut t);
                for i in 0..d {
                    p[i] = g.mul(g.inv(s[i]), t[i]);
                }
                u.iter_mut().for_each(|x| *x = 0);
                for slot in translated.iter_mut() {
                    *slot = (0..d).map(|i| g.mul(p[i], u[i]) as usize * radix[i]).sum();
                    space.step(&mut u);
                }
                let base = g.row(g.mul(ws_inv, wt));
                hits += values
                    .iter()
                    .zip(&translated)
                    .filter(|&(&wu, &pu)| values[pu] == base[wu as usize])
                    .count() as u64;
            }
            hits
        })
        .sum();
    Ok(CensusResult::Exact { count, total })
}

/// Whether the tuple `(x, y, z)`, each in `G^d`, solves the equation.
/// Evaluates both sides directly, without any table.
pub fn solves_equation(w: &Word, g: &GroupTable, x: &[Elem], y: &[Elem], z: &[Elem]) -> bool {
    let arg: Vec<Elem> = (0..x.len()).map(|i| g.mul(g.mul(g.inv(x[i]), y[i]), z[i])).collect();
    let lhs = w.evaluate(g, &arg);
    let rhs = g.mul(g.mul(g.inv(w.evaluate(g, x)), w.evaluate(g, y)), w.evaluate(g, z));
    lhs == rhs
}

/// Monte Carlo estimate from `samples` uniform tuples of `G^{3d}`.
///
/// Deterministic in `(seed, samples)`: see [`crate::rng`] for the chunking.
pub fn estimate_solutions(
    w: &Word,
    g: &GroupTable,
    d: usize,
    samples: u64,
    seed: u64,
) -> Result<CensusResult> {
    if samples < MIN_SAMPLES {
        return Err(Error::invalid(format!("need at least {MIN_SAMPLES} samples, got {samples}")));
    }
    if d < w.arity() {
        return Err(Error::invalid(format!("d = {d} is below the word arity {}", w.arity())));
    }
    let n = g.order() as Elem;
    let chunks: Vec<(u64, u64)> = rng::chunks(samples).collect();
    let hits: u64 = chunks
        .par_iter()
        .map(|&(c, len)| {
            let mut r = rng::chunk_rng(seed, c);
            let mut draw = vec![0; 3 * d];
            let mut hits = 0;
            for _ in 0..len {
                for slot in draw.iter_mut() {
                    *slot = r.gen_range(0..n);
                }
                let (x, rest) = draw.split_at(d);
                let (y, z) = rest.split_at(d);
                if solves_equation(w, g, x, y, z) {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    let mean = Rational::new(hits, samples);
    let p = hits as f64 / samples as f64;
    Ok(CensusResult::Estimate {
        hits,
        samples,
        seed,
        estimate_mean: mean,
        ci_half_width: 1.96 * (p * (1.0 - p) / samples as f64).sqrt(),
        total: budget::pow_sat(g.order(), 3 * d),
    })
}

//! Word-map tables, solution censuses and the end-to-end verifiers.

mod solve;
mod table;
mod translate;
mod verify;

pub use solve::{count_solutions_exact, estimate_solutions, solves_equation, CensusResult, MIN_SAMPLES};
pub use table::{FiberStats, WordMapTable};
pub use translate::{translate_pair_count, triple_count, ProofChain, TranslateProfile};
pub use verify::{
    verify_commuting_corollary, verify_mann_equivalence, verify_theorem, CensusMode, CommutingReport,
    MannReport, RearrangementCheck, TheoremChecks, TheoremReport, VerifyOptions,
};

use crate::budget::Budgets;
use crate::error::Result;
use crate::freeword::Word;
use crate::group::GroupTable;

pub fn word_map_table(w: &Word, g: &GroupTable, d: usize, budgets: &Budgets) -> Result<WordMapTable> {
    WordMapTable::new(w, g, d, budgets.table_entries)
}

pub fn fiber_stats(w: &Word, g: &GroupTable, d: usize, budgets: &Budgets) -> Result<FiberStats> {
    Ok(word_map_table(w, g, d, budgets)?.fiber_stats())
}

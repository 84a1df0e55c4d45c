//! End-to-end checks: the solution bound for a word on a group, the power
//! word specialization, and the commuting-probability bound.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::solve::{count_solutions_with_table, estimate_solutions, CensusResult};
use super::translate::{ProofChain, TranslateProfile};
use super::WordMapTable;
use crate::bounds::{self, BoundTriple, Rational};
use crate::budget::{self, Budgets};
use crate::error::{Error, Result};
use crate::freeword::{derived_word_with_arity, Word};
use crate::group::{Elem, GroupTable};
use crate::homset::{self, agreement_flags, Hom};
use crate::rng;

/// How the solution census is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CensusMode {
    /// Exact when `|G|^{3d}` fits the census budget, otherwise sampled.
    Auto,
    /// Exact or a budget error.
    Exact,
    Estimate,
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub budgets: Budgets,
    pub mode: CensusMode,
    pub samples: u64,
    pub seed: u64,
    /// Use this homomorphism instead of searching for the best one.
    pub hom: Option<Hom>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            budgets: Budgets::default(),
            mode: CensusMode::Auto,
            samples: 100_000,
            seed: 0,
            hom: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremChecks {
    /// solutions ≥ f(ρ)·|G|^{3d}; statistical when the census was sampled
    pub theorem: bool,
    pub theorem_statistical: bool,
    pub pairs_meet_bound: Option<bool>,
    pub triples_dominate_pairs: Option<bool>,
    pub triples_meet_bound: Option<bool>,
    /// exact solutions ≥ triple count
    pub solutions_cover_triples: Option<bool>,
}

impl TheoremChecks {
    pub fn all_pass(&self) -> bool {
        self.theorem
            && [
                self.pairs_meet_bound,
                self.triples_dominate_pairs,
                self.triples_meet_bound,
                self.solutions_cover_triples,
            ]
            .iter()
            .all(|c| c.unwrap_or(true))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub group: String,
    #[serde(serialize_with = "crate::report::as_string")]
    pub group_order: usize,
    pub word: Word,
    pub derived_word: Word,
    pub d: usize,
    /// `|S|`, the agreement set of the witness homomorphism
    #[serde(serialize_with = "crate::report::as_string")]
    pub agreement_size: u64,
    pub witness_searched: bool,
    pub rho: Rational,
    pub bounds: BoundTriple,
    /// `f(ρ)·|G|^{3d}`
    pub required: Rational,
    pub solutions: CensusResult,
    /// Absent when the `|G|^{2d}` scan is over budget.
    pub proof_chain: Option<ProofChain>,
    /// Solutions outside `S³`, exact mode only.
    #[serde(serialize_with = "crate::report::opt_as_string")]
    pub solutions_outside_triples: Option<u128>,
    pub checks: TheoremChecks,
    pub pass: bool,
}

/// Run the full check for `w` on `G` with `d` variables.
pub fn verify_theorem(
    w: &Word,
    g: &GroupTable,
    group_name: &str,
    d: usize,
    opts: &VerifyOptions,
) -> Result<TheoremReport> {
    let budgets = &opts.budgets;
    let table = WordMapTable::new(w, g, d, budgets.table_entries)?;
    let (witness, searched) = match &opts.hom {
        Some(h) => {
            if h.d() != d {
                return Err(Error::invalid(format!("homomorphism has d = {}, expected {d}", h.d())));
            }
            (h.clone(), false)
        }
        None => (homset::best_agreement_with_table(&table, g, budgets)?.witness, true),
    };
    let members = agreement_flags(&table, g, &witness);
    let agreement_size = members.iter().filter(|&&m| m).count() as u64;
    let size = table.space().size();
    let rho = Rational::new(agreement_size, size as u64);
    let bound = bounds::f(&rho)?;
    let big_n = Rational::from(size as u64);
    let required = &(&(&bound.f * &big_n) * &big_n) * &big_n;

    let census_total = budget::pow_sat(size, 3);
    let exact_fits = census_total <= budgets.census_iter;
    let solutions = match opts.mode {
        CensusMode::Exact => count_solutions_with_table(&table, g, budgets)?,
        CensusMode::Auto if exact_fits => count_solutions_with_table(&table, g, budgets)?,
        _ => estimate_solutions(w, g, d, opts.samples, opts.seed)?,
    };

    let proof_chain = match TranslateProfile::new(g, table.space(), &members, budgets.census_iter) {
        Ok(p) => Some(ProofChain::from_profile(&p, &bound.f1, &bound.f2)),
        Err(e) if e.is_budget() => None,
        Err(e) => return Err(e),
    };

    let theorem = match &solutions {
        CensusResult::Exact { count, .. } => required.le_count(*count),
        CensusResult::Estimate { estimate_mean, .. } => *estimate_mean >= bound.f,
    };
    let exact = solutions.exact_count();
    let checks = TheoremChecks {
        theorem,
        theorem_statistical: !solutions.is_exact(),
        pairs_meet_bound: proof_chain.as_ref().map(ProofChain::pairs_meet_bound),
        triples_dominate_pairs: proof_chain.as_ref().map(ProofChain::triples_dominate_pairs),
        triples_meet_bound: proof_chain.as_ref().map(ProofChain::triples_meet_bound),
        solutions_cover_triples: match (&proof_chain, exact) {
            (Some(p), Some(c)) => Some(c as u128 >= p.triple_count),
            _ => None,
        },
    };
    let solutions_outside_triples = match (&proof_chain, exact) {
        (Some(p), Some(c)) => (c as u128).checked_sub(p.triple_count),
        _ => None,
    };
    let pass = checks.all_pass();
    Ok(TheoremReport {
        group: group_name.to_string(),
        group_order: g.order(),
        word: w.clone(),
        derived_word: derived_word_with_arity(w, d)?,
        d,
        agreement_size,
        witness_searched: searched,
        rho,
        bounds: bound,
        required,
        solutions,
        proof_chain,
        solutions_outside_triples,
        checks,
        pass,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MannReport {
    pub e: i64,
    /// Solutions of `(xyz)^e = x^e y^e z^e`.
    #[serde(serialize_with = "crate::report::as_string")]
    pub direct_count: u64,
    /// Census of the derived equation for `x1^e`.
    #[serde(serialize_with = "crate::report::as_string")]
    pub derived_count: u64,
    pub equal: bool,
}

/// Compare the solution counts of `(xyz)^e = x^e y^e z^e` and of the derived
/// equation of `x1^e`; they agree because `x ↦ x⁻¹` is a bijection of `G³`.
pub fn verify_mann_equivalence(e: i64, g: &GroupTable, budgets: &Budgets) -> Result<MannReport> {
    let n = g.order();
    budget::check("census tuples", budget::pow_sat(n, 3), budgets.census_iter)?;
    let pw: Vec<Elem> = (0..n as Elem).map(|x| g.pow(x, e)).collect();
    let direct_count: u64 = (0..n as Elem)
        .into_par_iter()
        .map(|x| {
            let mut c = 0;
            for y in 0..n as Elem {
                let xy = g.mul(x, y);
                let rhs_xy = g.mul(pw[x as usize], pw[y as usize]);
                for z in 0..n as Elem {
                    if pw[g.mul(xy, z) as usize] == g.mul(rhs_xy, pw[z as usize]) {
                        c += 1;
                    }
                }
            }
            c
        })
        .sum();
    let table = WordMapTable::new(&Word::power(1, e), g, 1, budgets.table_entries)?;
    let derived_count = count_solutions_with_table(&table, g, budgets)?.exact_count().expect("exact census");
    Ok(MannReport { e, direct_count, derived_count, equal: direct_count == derived_count })
}

/// Sextuples above this many are sampled instead of enumerated.
const SEXTUPLE_EXHAUSTIVE_LIMIT: u128 = 1_000_000;
const SEXTUPLE_SAMPLES: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RearrangementCheck {
    pub exhaustive: bool,
    #[serde(serialize_with = "crate::report::as_string")]
    pub checked: u64,
    #[serde(serialize_with = "crate::report::as_string")]
    pub solutions: u64,
    #[serde(serialize_with = "crate::report::as_string")]
    pub mismatches: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommutingReport {
    pub group: String,
    pub commuting_probability: Rational,
    #[serde(serialize_with = "crate::report::as_string")]
    pub conjugacy_classes: usize,
    /// best agreement of `x1*x2` with a homomorphism `G² → G`
    pub rho: Rational,
    pub bound: Rational,
    pub bound_holds: bool,
    pub rearrangement: RearrangementCheck,
    pub pass: bool,
}

/// `s1 s2 s1⁻¹ = t1 t2 u1 t2⁻¹ s2 u1⁻¹ t1⁻¹`
fn rearranged_holds(g: &GroupTable, t: &[Elem; 6]) -> bool {
    let [s1, s2, t1, t2, u1, _] = *t;
    let m = |a, b| g.mul(a, b);
    let lhs = m(m(s1, s2), g.inv(s1));
    let rhs = [t2, u1, g.inv(t2), s2, g.inv(u1), g.inv(t1)].iter().fold(t1, |acc, &x| m(acc, x));
    lhs == rhs
}

/// Check `cp(G) ≥ f(ρ)/(2 − f(ρ))` for the multiplication word, and that the
/// rearranged single equation agrees with the derived word of `x1*x2`.
pub fn verify_commuting_corollary(
    g: &GroupTable,
    group_name: &str,
    budgets: &Budgets,
    seed: u64,
) -> Result<CommutingReport> {
    let w: Word = Word::reduce([crate::freeword::Syllable::new(1, 1), crate::freeword::Syllable::new(2, 1)]);
    let rho = homset::best_agreement(&w, g, 2, budgets)?.rho;
    let bound = bounds::commuting_bound(&rho)?;
    let cp = g.commuting_probability();
    let bound_holds = cp >= bound;

    let v = derived_word_with_arity(&w, 2)?;
    let n = g.order();
    let check = |t: &[Elem; 6]| (v.evaluate(g, t) == 0, rearranged_holds(g, t));
    let total = budget::pow_sat(n, 6);
    let (exhaustive, checked, solutions, mismatches) = if total <= SEXTUPLE_EXHAUSTIVE_LIMIT {
        let (sol, mis) = (0..total as usize)
            .into_par_iter()
            .map(|mut idx| {
                let mut t = [0; 6];
                for slot in t.iter_mut().rev() {
                    *slot = (idx % n) as Elem;
                    idx /= n;
                }
                let (a, b) = check(&t);
                (a as u64, (a != b) as u64)
            })
            .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
        (true, total as u64, sol, mis)
    } else {
        let mut r = rng::master_rng(seed);
        let (mut sol, mut mis) = (0, 0);
        for _ in 0..SEXTUPLE_SAMPLES {
            let mut t = [0; 6];
            for slot in t.iter_mut() {
                *slot = r.gen_range(0..n as Elem);
            }
            let (a, b) = check(&t);
            sol += a as u64;
            mis += (a != b) as u64;
        }
        (false, SEXTUPLE_SAMPLES, sol, mis)
    };
    Ok(CommutingReport {
        group: group_name.to_string(),
        commuting_probability: cp,
        conjugacy_classes: g.conjugacy_class_count(),
        rho,
        bound,
        bound_holds,
        rearrangement: RearrangementCheck { exhaustive, checked, solutions, mismatches },
        pass: bound_holds && mismatches == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build;

    fn run(g: &str, w: &str) -> TheoremReport {
        let group = build(g, 2000).unwrap();
        let w: Word = w.parse().unwrap();
        verify_theorem(&w, &group, g, w.arity(), &VerifyOptions::default()).unwrap()
    }

    #[test]
    fn abelian_case() {
        let r = run("C4", "x1*x2");
        assert!(r.pass);
        assert_eq!(r.rho, Rational::one());
        assert_eq!(r.solutions.exact_count(), Some(4u64.pow(6)));
    }

    #[test]
    fn squares_in_s3() {
        let r = run("S3", "x1^2");
        assert!(r.pass, "{r:?}");
        assert_eq!(r.rho, Rational::new(2, 3));
        assert_eq!(r.required, &bounds::f(&Rational::new(2, 3)).unwrap().f * &Rational::from(216u64));
    }

    #[test]
    fn estimate_mode_is_labelled() {
        let group = build("S3", 2000).unwrap();
        let opts = VerifyOptions { mode: CensusMode::Estimate, samples: 5000, ..Default::default() };
        let r = verify_theorem(&"x1^2".parse().unwrap(), &group, "S3", 1, &opts).unwrap();
        assert!(r.checks.theorem_statistical);
        assert!(r.checks.solutions_cover_triples.is_none());
        assert!(r.pass);
    }

    #[test]
    fn exact_mode_respects_budget() {
        let group = build("S3", 2000).unwrap();
        let opts = VerifyOptions {
            mode: CensusMode::Exact,
            budgets: Budgets { census_iter: 1000, ..Budgets::default() },
            ..Default::default()
        };
        let err = verify_theorem(&"x1*x2".parse().unwrap(), &group, "S3", 2, &opts).unwrap_err();
        assert!(err.is_budget());
    }

    #[test]
    fn mann_small_cases() {
        let b = Budgets::default();
        let s3 = build("S3", 2000).unwrap();
        for e in [0, 1] {
            let r = verify_mann_equivalence(e, &s3, &b).unwrap();
            assert_eq!((r.direct_count, r.derived_count), (216, 216));
        }
        assert!(verify_mann_equivalence(2, &s3, &b).unwrap().equal);
    }

    #[test]
    fn commuting_examples() {
        let b = Budgets::default();
        let c5 = build("C5", 2000).unwrap();
        let r = verify_commuting_corollary(&c5, "C5", &b, 0).unwrap();
        assert_eq!(r.commuting_probability, Rational::one());
        assert_eq!(r.bound, Rational::new(1, 287));
        assert!(r.pass);
        let s3 = build("S3", 2000).unwrap();
        let r = verify_commuting_corollary(&s3, "S3", &b, 0).unwrap();
        assert_eq!(r.commuting_probability, Rational::new(1, 2));
        assert!(r.pass && r.rearrangement.exhaustive);
    }
}

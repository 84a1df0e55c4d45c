//! Translate intersections of an agreement set `S ⊆ G^d`.
//!
//! For `g ∈ G^d` let `c(g) = |S ∩ gS|` and `q(g) = #{(s, t) ∈ S² : s⁻¹t = g}`
//! (equivalently `|S ∩ S·g⁻¹|`). Since `|sS ∩ tS| = c(s⁻¹t)`, every pair
//! count and the triple count reduce to sums over `g` of these two profiles.

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::Rational;
use crate::budget;
use crate::error::{Error, Result};
use crate::group::{Elem, GroupTable};
use crate::tuples::TupleSpace;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslateProfile {
    space: TupleSpace,
    size_s: u64,
    /// `c(g) = |S ∩ gS|`
    pub intersections: Vec<u64>,
    /// `q(g) = #{(s, t) ∈ S² : s⁻¹t = g}`
    pub quotients: Vec<u64>,
}

impl TranslateProfile {
    /// Scans `|G|^{2d}` index pairs; fails if that exceeds `limit`.
    pub fn new(g: &GroupTable, space: TupleSpace, members: &[bool], limit: u128) -> Result<Self> {
        if members.len() != space.size() {
            return Err(Error::invalid("membership array does not match |G|^d"));
        }
        budget::check("translate scan", budget::pow_sat(space.size(), 2), limit)?;
        let d = space.d;
        let elements: Vec<Vec<Elem>> = members
            .iter()
            .enumerate()
            .filter(|&(_, &m)| m)
            .map(|(i, _)| {
                let mut t = vec![0; d];
                space.decode(i, &mut t);
                t
            })
            .collect();
        if elements.is_empty() {
            return Err(Error::invalid("agreement set is empty"));
        }
        let (intersections, quotients): (Vec<u64>, Vec<u64>) = (0..space.size())
            .into_par_iter()
            .map(|gi| {
                let mut gt = vec![0; d];
                space.decode(gi, &mut gt);
                let g_inv: Vec<Elem> = gt.iter().map(|&x| g.inv(x)).collect();
                let mut buf = vec![0; d];
                let mut c = 0;
                let mut q = 0;
                for x in &elements {
                    for i in 0..d {
                        buf[i] = g.mul(g_inv[i], x[i]);
                    }
                    if members[space.encode(&buf)] {
                        c += 1;
                    }
                    for i in 0..d {
                        buf[i] = g.mul(x[i], gt[i]);
                    }
                    if members[space.encode(&buf)] {
                        q += 1;
                    }
                }
                (c, q)
            })
            .unzip();
        Ok(TranslateProfile { space, size_s: elements.len() as u64, intersections, quotients })
    }

    pub fn set_size(&self) -> u64 {
        self.size_s
    }

    fn qualifies(&self, gi: usize, threshold: &Rational) -> bool {
        let need = threshold * &Rational::from(self.space.size() as u64);
        need.le_count(self.intersections[gi])
    }

    /// Pairs `(s, t) ∈ S²` with `|sS ∩ tS| ≥ threshold · |G|^d`.
    pub fn pair_count(&self, threshold: &Rational) -> u64 {
        (0..self.quotients.len())
            .filter(|&gi| self.qualifies(gi, threshold))
            .map(|gi| self.quotients[gi])
            .sum()
    }

    /// `Σ |sS ∩ tS|` over the qualifying pairs: the triples contributed by
    /// those pairs alone.
    pub fn pair_weight(&self, threshold: &Rational) -> u128 {
        (0..self.quotients.len())
            .filter(|&gi| self.qualifies(gi, threshold))
            .map(|gi| self.quotients[gi] as u128 * self.intersections[gi] as u128)
            .sum()
    }

    /// `#{(s, t, u) ∈ S³ : s⁻¹tu ∈ S}`. For fixed `(s, t)` with `s⁻¹t = g`
    /// the admissible `u` number `c(g)`.
    pub fn triple_count(&self) -> u128 {
        self.quotients.iter().zip(&self.intersections).map(|(&q, &c)| q as u128 * c as u128).sum()
    }
}

/// Qualifying pair count for `S` at `threshold` (a proportion of `|G|^d`).
pub fn translate_pair_count(
    g: &GroupTable,
    space: TupleSpace,
    members: &[bool],
    threshold: &Rational,
    limit: u128,
) -> Result<u64> {
    Ok(TranslateProfile::new(g, space, members, limit)?.pair_count(threshold))
}

pub fn triple_count(g: &GroupTable, space: TupleSpace, members: &[bool], limit: u128) -> Result<u128> {
    Ok(TranslateProfile::new(g, space, members, limit)?.triple_count())
}

/// Intermediate quantities from the counting argument, at `ρ = |S|/|G|^d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProofChain {
    /// `f2(ρ)·|G|^d`
    pub pair_threshold: Rational,
    #[serde(serialize_with = "crate::report::as_string")]
    pub pair_count: u64,
    /// `f1(ρ)·|G|^{2d}`
    pub pair_required: Rational,
    /// `pair_count · f2(ρ)·|G|^d`
    pub pair_lower_bound: Rational,
    #[serde(serialize_with = "crate::report::as_string")]
    pub pair_weight: u128,
    #[serde(serialize_with = "crate::report::as_string")]
    pub triple_count: u128,
    /// `f(ρ)·|G|^{3d}`
    pub triple_required: Rational,
}

impl ProofChain {
    pub fn from_profile(profile: &TranslateProfile, f1: &Rational, f2: &Rational) -> Self {
        let n = Rational::from(profile.space.size() as u64);
        let pair_threshold = f2 * &n;
        let pair_count = profile.pair_count(f2);
        ProofChain {
            pair_required: &(f1 * &n) * &n,
            pair_lower_bound: &Rational::from(pair_count) * &pair_threshold,
            pair_weight: profile.pair_weight(f2),
            triple_count: profile.triple_count(),
            triple_required: &(&(&(f1 * f2) * &n) * &n) * &n,
            pair_threshold,
            pair_count,
        }
    }

    /// The pair count meets the set-family bound.
    pub fn pairs_meet_bound(&self) -> bool {
        self.pair_required.le_count(self.pair_count)
    }

    /// `triple_count ≥ pair_weight ≥ pair_count · f2·|G|^d`.
    pub fn triples_dominate_pairs(&self) -> bool {
        self.pair_weight <= self.triple_count && self.pair_lower_bound.le_count(self.pair_weight)
    }

    pub fn triples_meet_bound(&self) -> bool {
        self.triple_required.le_count(self.triple_count)
    }
}

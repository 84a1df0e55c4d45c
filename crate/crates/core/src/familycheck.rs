//! Pair counts for families of subsets.
//!
//! Given `|M_i| ≥ ρ|X|` for every `i ∈ I` and `|I| ≥ ρ|X|`, the claim under
//! test is that at least `f1(ρ)|X|²` ordered pairs `(i1, i2) ∈ I²` (diagonal
//! included) satisfy `|M_i1 ∩ M_i2| ≥ f2(ρ)|X|`.

use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use rand::seq::index;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{self, Rational};
use crate::error::{Error, Result};
use crate::rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyInstance {
    x_size: usize,
    sets: Vec<FixedBitSet>,
    rho: Rational,
}

impl FamilyInstance {
    /// Rejects instances that violate the size hypotheses.
    pub fn new(x_size: usize, sets: Vec<FixedBitSet>, rho: Rational) -> Result<Self> {
        if !(rho.is_positive() && rho <= Rational::one()) {
            return Err(Error::Domain(format!("rho = {rho} is outside (0, 1]")));
        }
        let floor = &rho * &Rational::from(x_size as u64);
        if !floor.le_count(sets.len() as u64) {
            return Err(Error::invalid(format!("|I| = {} is below rho·|X| = {floor}", sets.len())));
        }
        for (i, m) in sets.iter().enumerate() {
            if m.len() != x_size {
                return Err(Error::invalid(format!("set {i} is not a subset of a {x_size}-set")));
            }
            if !floor.le_count(m.count_ones(..) as u64) {
                return Err(Error::invalid(format!("set {i} is smaller than rho·|X| = {floor}")));
            }
        }
        Ok(FamilyInstance { x_size, sets, rho })
    }

    /// Build from member lists.
    pub fn from_members(x_size: usize, members: &[Vec<usize>], rho: Rational) -> Result<Self> {
        let mut sets = Vec::with_capacity(members.len());
        for (i, list) in members.iter().enumerate() {
            let mut b = FixedBitSet::with_capacity(x_size);
            for &x in list {
                if x >= x_size {
                    return Err(Error::invalid(format!("set {i}: member {x} outside X")));
                }
                b.insert(x);
            }
            sets.push(b);
        }
        FamilyInstance::new(x_size, sets, rho)
    }

    pub fn x_size(&self) -> usize {
        self.x_size
    }

    pub fn sets(&self) -> &[FixedBitSet] {
        &self.sets
    }

    pub fn rho(&self) -> &Rational {
        &self.rho
    }

    /// Header `X=<n> I=<m> rho=<num>/<den>`, then one line of sorted member
    /// indices per set.
    pub fn to_text(&self) -> String {
        let mut out = format!("X={} I={} rho={}\n", self.x_size, self.sets.len(), self.rho);
        for m in &self.sets {
            let members: Vec<String> = m.ones().map(|x| x.to_string()).collect();
            writeln!(out, "{}", members.join(" ")).expect("write to string");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::parse(0, "missing header"))?;
        let mut x_size = None;
        let mut i_size = None;
        let mut rho = None;
        for field in header.split_whitespace() {
            let bad = || Error::parse(0, format!("bad header field {field:?}"));
            match field.split_once('=').ok_or_else(bad)? {
                ("X", v) => x_size = Some(v.parse::<usize>().map_err(|_| bad())?),
                ("I", v) => i_size = Some(v.parse::<usize>().map_err(|_| bad())?),
                ("rho", v) => rho = Some(v.parse::<Rational>()?),
                _ => return Err(bad()),
            }
        }
        let (x_size, i_size, rho) = match (x_size, i_size, rho) {
            (Some(x), Some(i), Some(r)) => (x, i, r),
            _ => return Err(Error::parse(0, "header needs X=, I= and rho=")),
        };
        let mut members = Vec::with_capacity(i_size);
        for (lineno, line) in lines.enumerate().take(i_size) {
            let list = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::parse(lineno + 1, "bad member index"))?;
            members.push(list);
        }
        if members.len() != i_size {
            return Err(Error::parse(members.len() + 1, format!("expected {i_size} set lines")));
        }
        FamilyInstance::from_members(x_size, &members, rho)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    #[serde(serialize_with = "crate::report::as_string")]
    pub x_size: usize,
    #[serde(serialize_with = "crate::report::as_string")]
    pub i_size: usize,
    pub rho: Rational,
    #[serde(serialize_with = "crate::report::as_string")]
    pub qualifying_pairs: u64,
    /// `f2(ρ)|X|`
    pub threshold: Rational,
    /// `f1(ρ)|X|²`
    pub required: Rational,
    pub pass: bool,
}

/// Exhaustive scan over ordered pairs `I²`.
pub fn verify_lemma(inst: &FamilyInstance) -> Result<LemmaReport> {
    let bound = bounds::f(&inst.rho)?;
    let x = Rational::from(inst.x_size as u64);
    let threshold = &bound.f2 * &x;
    let required = &(&bound.f1 * &x) * &x;
    // smallest integer intersection size that meets the threshold
    let min_meet = threshold.ceil();
    let min_meet = usize::try_from(min_meet.max(0.into())).unwrap_or(usize::MAX);
    let sets = &inst.sets;
    let qualifying_pairs: u64 = sets
        .par_iter()
        .map(|a| sets.iter().filter(|b| a.intersection_count(b) >= min_meet).count() as u64)
        .sum();
    Ok(LemmaReport {
        x_size: inst.x_size,
        i_size: sets.len(),
        rho: inst.rho.clone(),
        qualifying_pairs,
        pass: required.le_count(qualifying_pairs),
        threshold,
        required,
    })
}

/// `i_size` uniform random subsets of `X`, each of size exactly `⌈ρ|X|⌉`.
pub fn random_family(x_size: usize, i_size: usize, rho: &Rational, seed: u64) -> Result<FamilyInstance> {
    if !(rho.is_positive() && *rho <= Rational::one()) {
        return Err(Error::Domain(format!("rho = {rho} is outside (0, 1]")));
    }
    let k = (rho * &Rational::from(x_size as u64)).ceil();
    let k = usize::try_from(k).map_err(|_| Error::invalid("set size out of range"))?;
    if k > x_size || k == 0 {
        return Err(Error::invalid(format!("cannot draw sets of size {k} from {x_size} points")));
    }
    let mut r = rng::master_rng(seed);
    let sets = (0..i_size)
        .map(|_| {
            let mut b = FixedBitSet::with_capacity(x_size);
            for x in index::sample(&mut r, x_size, k) {
                b.insert(x);
            }
            b
        })
        .collect();
    FamilyInstance::new(x_size, sets, rho.clone())
        .map_err(|e| Error::invalid(format!("infeasible parameters: {e}")))
}

fn blocks(x_size: usize, block: usize, i_size: usize, rho: Rational) -> FamilyInstance {
    let count = x_size / block;
    let members: Vec<Vec<usize>> = (0..i_size)
        .map(|i| {
            let b = i % count;
            (b * block..(b + 1) * block).collect()
        })
        .collect();
    FamilyInstance::from_members(x_size, &members, rho).expect("valid block family")
}

/// Hand-built instances around `|X| = 4⌈2/ρ⌉/ρ`, where the counting
/// argument switches cases, and families with nearly disjoint sets.
pub fn adversarial_families() -> Vec<FamilyInstance> {
    let q = Rational::new;
    let mut out = vec![
        // boundary for ρ = 1/2: 4·4·2 = 32, two disjoint halves
        blocks(32, 16, 16, q(1, 2)),
        // one past the boundary: halves of 17 overlapping in two points
        FamilyInstance::from_members(
            33,
            &(0..17)
                .map(|i| if i % 2 == 0 { (0..17).collect() } else { (16..33).collect() })
                .collect::<Vec<_>>(),
            q(1, 2),
        )
        .expect("valid"),
        // just below the boundary
        blocks(30, 15, 15, q(1, 2)),
        // three disjoint singletons
        blocks(3, 1, 3, q(1, 3)),
        // ρ = 1/3 boundary: 4·6·3 = 72, three disjoint blocks
        blocks(72, 24, 24, q(1, 3)),
        blocks(75, 25, 25, q(1, 3)),
        // partition families
        blocks(100, 20, 20, q(1, 5)),
        blocks(50, 5, 5, q(1, 10)),
        blocks(800, 80, 80, q(1, 10)),
        blocks(10, 1, 1, q(1, 10)),
        // one set, everything
        blocks(7, 7, 1, q(1, 7)),
    ];
    // sliding windows: consecutive sets overlap, distant ones are disjoint
    let x = 60;
    let members: Vec<Vec<usize>> = (0..20).map(|i| (0..20).map(|k| (3 * i + k) % x).collect()).collect();
    out.push(FamilyInstance::from_members(x, &members, q(1, 3)).expect("valid"));
    out
}

/// Deterministic fuzz instance `k` of a run seeded with `seed`, cycling
/// `ρ ∈ {1, 1/2, 1/3, 1/5, 1/10}` and `|X| ∈ {10, 40, 100, 300}`.
pub fn fuzz_instance(seed: u64, k: u64) -> Result<FamilyInstance> {
    const RHOS: [(i64, i64); 5] = [(1, 1), (1, 2), (1, 3), (1, 5), (1, 10)];
    const SIZES: [usize; 4] = [10, 40, 100, 300];
    let (num, den) = RHOS[(k % 5) as usize];
    let rho = Rational::new(num, den);
    let x_size = SIZES[((k / 5) % 4) as usize];
    let min_i = usize::try_from((&rho * &Rational::from(x_size as u64)).ceil()).expect("small");
    let s = rng::chunk_seed(seed, k);
    // |I| between the minimum and twice the minimum
    let i_size = min_i + (s % (min_i as u64 + 1)) as usize;
    random_family(x_size, i_size, &rho, s)
}

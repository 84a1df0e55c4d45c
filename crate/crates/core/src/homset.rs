//! Endomorphisms, automorphisms and homomorphisms `G^d → G`.
//!
//! A homomorphism `G^d → G` is a `d`-tuple of endomorphisms whose images
//! commute elementwise; it sends `(g_1, .., g_d)` to `φ_1(g_1) ⋯ φ_d(g_d)`.
//! Every homomorphism from the direct power arises exactly once this way.

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::Rational;
use crate::budget::{self, Budgets};
use crate::census::WordMapTable;
use crate::error::{Error, Result};
use crate::freeword::Word;
use crate::group::{Elem, GroupTable};
use crate::tuples::TupleSpace;

/// Greedy generating sequence plus a BFS spanning tree expressing every
/// element as a product of generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingSequence {
    pub generators: Vec<Elem>,
    /// `parent[e] = (p, i)` means `e = p · generators[i]`; `None` for the identity.
    pub parent: Vec<Option<(Elem, usize)>>,
    /// Elements in BFS order, identity first.
    pub order: Vec<Elem>,
}

impl GeneratingSequence {
    /// Generator indices whose product (left to right) is `e`.
    pub fn expression(&self, mut e: Elem) -> Vec<usize> {
        let mut out = Vec::new();
        while let Some((p, i)) = self.parent[e as usize] {
            out.push(i);
            e = p;
        }
        out.reverse();
        out
    }

    /// Extend generator images to a map on all of `G`. The result is only a
    /// homomorphism if the images satisfy the relations.
    pub fn extend(&self, g: &GroupTable, images: &[Elem]) -> Vec<Elem> {
        let mut values = vec![0; g.order()];
        for &e in &self.order[1..] {
            let (p, i) = self.parent[e as usize].expect("non-identity has a parent");
            values[e as usize] = g.mul(values[p as usize], images[i]);
        }
        values
    }
}

fn bfs(g: &GroupTable, generators: &[Elem]) -> (Vec<Option<(Elem, usize)>>, Vec<Elem>) {
    let mut parent = vec![None; g.order()];
    let mut seen = vec![false; g.order()];
    let mut order = vec![0];
    seen[0] = true;
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for (i, &s) in generators.iter().enumerate() {
            let y = g.mul(x, s);
            if !seen[y as usize] {
                seen[y as usize] = true;
                parent[y as usize] = Some((x, i));
                order.push(y);
            }
        }
    }
    (parent, order)
}

/// Repeatedly adjoin the smallest element outside the subgroup generated so far.
pub fn generating_sequence(g: &GroupTable) -> GeneratingSequence {
    let mut generators = Vec::new();
    let (mut parent, mut order) = bfs(g, &generators);
    while order.len() < g.order() {
        let mut inside = vec![false; g.order()];
        for &e in &order {
            inside[e as usize] = true;
        }
        let next = (0..g.order() as Elem).find(|&e| !inside[e as usize]).expect("proper subgroup");
        generators.push(next);
        (parent, order) = bfs(g, &generators);
    }
    GeneratingSequence { generators, parent, order }
}

/// An endomorphism as its value table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Endo {
    pub values: Vec<Elem>,
}

impl Endo {
    pub fn identity(g: &GroupTable) -> Self {
        Endo { values: (0..g.order() as Elem).collect() }
    }

    pub fn trivial(g: &GroupTable) -> Self {
        Endo { values: vec![0; g.order()] }
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.values[x as usize]
    }

    /// Full check of `φ(ab) = φ(a)φ(b)` over all pairs.
    pub fn is_homomorphism(&self, g: &GroupTable) -> bool {
        is_hom_table(g, &self.values)
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.values.len()];
        self.values.iter().all(|&v| !std::mem::replace(&mut seen[v as usize], true))
    }

    fn image_mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.values {
            mask[v as usize] = true;
        }
        mask
    }
}

fn is_hom_table(g: &GroupTable, values: &[Elem]) -> bool {
    let n = g.order() as Elem;
    values.len() == n as usize
        && values[0] == 0
        && (0..n).all(|a| {
            let va = values[a as usize];
            let row = g.row(a);
            (0..n).all(|b| values[row[b as usize] as usize] == g.mul(va, values[b as usize]))
        })
}

/// All endomorphisms in candidate order: generator images are enumerated
/// lexicographically in element-id order, first generator most significant.
pub fn endomorphisms(g: &GroupTable, limit: u128) -> Result<Vec<Endo>> {
    let seq = generating_sequence(g);
    let n = g.order();
    let k = seq.generators.len();
    let candidates = budget::pow_sat(n, k);
    budget::check("endomorphism candidates", candidates, limit)?;
    let space = TupleSpace::new(n, k, "endomorphism candidates", limit)?;
    let orders: Vec<usize> = (0..n as Elem).map(|x| g.element_order(x)).collect();
    let gen_orders: Vec<usize> = seq.generators.iter().map(|&s| orders[s as usize]).collect();
    let found = (0..space.size())
        .into_par_iter()
        .filter_map(|idx| {
            let mut images = vec![0; k];
            space.decode(idx, &mut images);
            // the image of a generator has order dividing the generator's order
            if images.iter().zip(&gen_orders).any(|(&x, &o)| o % orders[x as usize] != 0) {
                return None;
            }
            let values = seq.extend(g, &images);
            is_hom_table(g, &values).then_some(Endo { values })
        })
        .collect();
    Ok(found)
}

pub fn automorphisms(g: &GroupTable, limit: u128) -> Result<Vec<Endo>> {
    Ok(endomorphisms(g, limit)?.into_iter().filter(Endo::is_bijective).collect())
}

/// A homomorphism `G^d → G` as `d` endomorphisms with commuting images.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hom {
    pub components: Vec<Endo>,
}

impl Hom {
    pub fn d(&self) -> usize {
        self.components.len()
    }

    pub fn apply(&self, g: &GroupTable, tuple: &[Elem]) -> Elem {
        self.components.iter().zip(tuple).fold(0, |acc, (c, &x)| g.mul(acc, c.apply(x)))
    }

    /// Every component is an endomorphism and distinct components have
    /// elementwise commuting images.
    pub fn is_valid(&self, g: &GroupTable) -> bool {
        let n = g.order();
        if !self.components.iter().all(|c| c.is_homomorphism(g)) {
            return false;
        }
        let masks: Vec<Vec<bool>> = self.components.iter().map(|c| c.image_mask(n)).collect();
        (0..masks.len()).all(|i| (i + 1..masks.len()).all(|j| images_commute(g, &masks[i], &masks[j])))
    }

    /// Build from generator images per component, validating the result.
    pub fn from_generator_images(g: &GroupTable, images: &[Vec<Elem>]) -> Result<Hom> {
        let seq = generating_sequence(g);
        let mut components = Vec::with_capacity(images.len());
        for (i, imgs) in images.iter().enumerate() {
            if imgs.len() != seq.generators.len() {
                return Err(Error::invalid(format!(
                    "component {}: expected {} generator images, got {}",
                    i + 1,
                    seq.generators.len(),
                    imgs.len()
                )));
            }
            if let Some(&bad) = imgs.iter().find(|&&x| x as usize >= g.order()) {
                return Err(Error::invalid(format!("element id {bad} out of range")));
            }
            components.push(Endo { values: seq.extend(g, imgs) });
        }
        let hom = Hom { components };
        if hom.is_valid(g) {
            Ok(hom)
        } else {
            Err(Error::invalid("generator images do not define a homomorphism G^d -> G"))
        }
    }
}

fn images_commute(g: &GroupTable, a: &[bool], b: &[bool]) -> bool {
    let n = g.order() as Elem;
    (0..n).filter(|&x| a[x as usize]).all(|x| (0..n).filter(|&y| b[y as usize]).all(|y| g.commute(x, y)))
}

/// All homomorphisms `G^d → G`, in lexicographic order of the endomorphism
/// tuple (first component most significant).
pub fn homs_power(g: &GroupTable, d: usize, limit: u128) -> Result<Vec<Hom>> {
    let endos = endomorphisms(g, limit)?;
    homs_from_endos(g, &endos, d, limit)
}

pub(crate) fn homs_from_endos(g: &GroupTable, endos: &[Endo], d: usize, limit: u128) -> Result<Vec<Hom>> {
    budget::check("homomorphism tuples", budget::pow_sat(endos.len(), d), limit)?;
    let masks: Vec<Vec<bool>> = endos.iter().map(|e| e.image_mask(g.order())).collect();
    let m = endos.len();
    let compat: Vec<Vec<bool>> = (0..m)
        .into_par_iter()
        .map(|i| (0..m).map(|j| images_commute(g, &masks[i], &masks[j])).collect())
        .collect();
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::with_capacity(d);
    extend_tuples(&compat, d, &mut stack, &mut |t| {
        out.push(Hom { components: t.iter().map(|&i| endos[i].clone()).collect() })
    });
    Ok(out)
}

fn extend_tuples(compat: &[Vec<bool>], d: usize, stack: &mut Vec<usize>, emit: &mut dyn FnMut(&[usize])) {
    if stack.len() == d {
        emit(stack);
        return;
    }
    for i in 0..compat.len() {
        if stack.iter().all(|&j| compat[j][i]) {
            stack.push(i);
            extend_tuples(compat, d, stack, emit);
            stack.pop();
        }
    }
}

/// Tuples of `G^d` where the word map and `phi` agree.
pub fn agreement_count(w: &Word, g: &GroupTable, phi: &Hom, limit: u128) -> Result<u64> {
    let table = WordMapTable::new(w, g, phi.d(), limit)?;
    Ok(agreement_count_table(&table, g, phi))
}

pub(crate) fn agreement_count_table(table: &WordMapTable, g: &GroupTable, phi: &Hom) -> u64 {
    agreement_flags(table, g, phi).iter().filter(|&&b| b).count() as u64
}

/// Membership flags of the agreement set `S ⊆ G^d`, in tuple-index order.
pub fn agreement_flags(table: &WordMapTable, g: &GroupTable, phi: &Hom) -> Vec<bool> {
    let space = table.space();
    assert_eq!(space.d, phi.d(), "homomorphism and table disagree on d");
    table
        .values()
        .par_iter()
        .enumerate()
        .map_init(
            || vec![0; space.d],
            |tuple, (idx, &w)| {
                space.decode(idx, tuple);
                phi.apply(g, tuple) == w
            },
        )
        .collect()
}

/// The best agreement proportion over all homomorphisms `G^d → G`.
#[derive(Debug, Clone, Serialize)]
pub struct Agreement {
    pub rho: Rational,
    #[serde(serialize_with = "crate::report::as_string")]
    pub count: u64,
    pub witness: Hom,
    #[serde(serialize_with = "crate::report::as_string")]
    pub homomorphisms_searched: u64,
}

pub fn best_agreement(w: &Word, g: &GroupTable, d: usize, budgets: &Budgets) -> Result<Agreement> {
    let table = WordMapTable::new(w, g, d, budgets.table_entries)?;
    best_agreement_with_table(&table, g, budgets)
}

/// [`best_agreement`] against a precomputed word-map table.
pub fn best_agreement_with_table(
    table: &WordMapTable,
    g: &GroupTable,
    budgets: &Budgets,
) -> Result<Agreement> {
    let homs = homs_power(g, table.space().d, budgets.hom_search)?;
    budget::check(
        "agreement scan",
        (homs.len() as u128).saturating_mul(table.values().len() as u128),
        budgets.census_iter,
    )?;
    best_of(table, g, homs)
}

pub(crate) fn best_of(table: &WordMapTable, g: &GroupTable, homs: Vec<Hom>) -> Result<Agreement> {
    let counts: Vec<u64> = homs.iter().map(|h| agreement_count_table(table, g, h)).collect();
    let mut best = 0;
    for (i, &c) in counts.iter().enumerate() {
        if c > counts[best] {
            best = i;
        }
    }
    let total = table.values().len() as u64;
    let searched = homs.len() as u64;
    let witness = homs.into_iter().nth(best).ok_or_else(|| Error::invalid("no homomorphisms"))?;
    Ok(Agreement {
        rho: Rational::new(counts[best], total),
        count: counts[best],
        witness,
        homomorphisms_searched: searched,
    })
}

/// Largest proportion of `x` with `φ(x) = x^e` over all endomorphisms
/// (or only automorphisms), with the first maximizing map.
pub fn power_agreement_profile(
    g: &GroupTable,
    e: i64,
    automorphisms_only: bool,
    limit: u128,
) -> Result<(Rational, Endo)> {
    let maps = if automorphisms_only { automorphisms(g, limit)? } else { endomorphisms(g, limit)? };
    let powers: Vec<Elem> = (0..g.order() as Elem).map(|x| g.pow(x, e)).collect();
    let mut best: Option<(usize, Endo)> = None;
    for m in maps {
        let c = powers.iter().enumerate().filter(|&(x, &p)| m.values[x] == p).count();
        if best.as_ref().is_none_or(|(b, _)| c > *b) {
            best = Some((c, m));
        }
    }
    let (c, m) = best.expect("the identity automorphism always exists");
    Ok((Rational::new(c as u64, g.order() as u64), m))
}

//! Finite groups as explicit Cayley tables.
//!
//! Element `0` is always the identity. Tables are validated on construction
//! and immutable afterwards.

mod perm;
mod spec;

pub use perm::{parse_cycles, Permutation, MAX_DEGREE};
pub use spec::{build, Atom, GroupSpec};

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::bounds::Rational;
use crate::budget;
use crate::error::{Error, Result};

/// Element id inside a [`GroupTable`].
pub type Elem = u32;

/// Full associativity check up to this order; random triples above it.
const FULL_ASSOC_LIMIT: usize = 64;
const SAMPLED_ASSOC_TRIPLES: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    n: usize,
    mul: Vec<Elem>,
    inv: Vec<Elem>,
    labels: Vec<String>,
}

impl GroupTable {
    /// Build from a row-major multiplication table and validate it.
    pub fn from_table(n: usize, mul: Vec<Elem>, labels: Vec<String>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("a group has at least one element"));
        }
        if mul.len() != n * n || labels.len() != n {
            return Err(Error::invalid("table dimensions do not match the order"));
        }
        if mul.iter().any(|&x| x as usize >= n) {
            return Err(Error::invalid("table entry out of range"));
        }
        let mut inv = vec![Elem::MAX; n];
        for (g, slot) in inv.iter_mut().enumerate() {
            if let Some(h) = (0..n).find(|&h| mul[g * n + h] == 0) {
                *slot = h as Elem;
            } else {
                return Err(Error::invalid(format!("element {g} has no right inverse")));
            }
        }
        let g = GroupTable { n, mul, inv, labels };
        g.validate()?;
        Ok(g)
    }

    /// Check the group axioms for the stored table.
    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        for g in 0..n {
            if self.mul(0, g as Elem) != g as Elem || self.mul(g as Elem, 0) != g as Elem {
                return Err(Error::invalid("element 0 is not the identity"));
            }
            if self.mul(g as Elem, self.inv(g as Elem)) != 0 {
                return Err(Error::invalid(format!("bad inverse for {g}")));
            }
        }
        let mut seen_row = vec![usize::MAX; n];
        let mut seen_col = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                let r = self.mul[a * n + b] as usize;
                let c = self.mul[b * n + a] as usize;
                if seen_row[r] == a || seen_col[c] == a {
                    return Err(Error::invalid("table is not a Latin square"));
                }
                seen_row[r] = a;
                seen_col[c] = a;
            }
        }
        let assoc = |a: Elem, b: Elem, c: Elem| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        if n <= FULL_ASSOC_LIMIT {
            for a in 0..n as Elem {
                for b in 0..n as Elem {
                    for c in 0..n as Elem {
                        if !assoc(a, b, c) {
                            return Err(Error::invalid(format!("({a}{b}){c} != {a}({b}{c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = Xoshiro256PlusPlus::seed_from_u64(0x6173_736f_6369_6174);
            for _ in 0..SAMPLED_ASSOC_TRIPLES {
                let a = rng.gen_range(0..n as Elem);
                let b = rng.gen_range(0..n as Elem);
                let c = rng.gen_range(0..n as Elem);
                if !assoc(a, b, c) {
                    return Err(Error::invalid(format!("({a}{b}){c} != {a}({b}{c})")));
                }
            }
        }
        for g in 0..n as Elem {
            if !n.is_multiple_of(self.element_order(g)) {
                return Err(Error::invalid(format!("order of {g} does not divide {n}")));
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }

    /// Row `a` of the table: `row(a)[b] = a·b`.
    #[inline]
    pub fn row(&self, a: Elem) -> &[Elem] {
        let start = a as usize * self.n;
        &self.mul[start..start + self.n]
    }

    pub fn inverses(&self) -> &[Elem] {
        &self.inv
    }

    pub fn label(&self, a: Elem) -> &str {
        &self.labels[a as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn pow(&self, a: Elem, e: i64) -> Elem {
        let mut base = if e < 0 { self.inv(a) } else { a };
        let mut k = e.unsigned_abs();
        let mut acc = 0;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
            if k > self.n {
                break;
            }
        }
        k
    }

    pub fn commute(&self, a: Elem, b: Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n as Elem).all(|a| (a + 1..self.n as Elem).all(|b| self.commute(a, b)))
    }

    pub fn centralizer_size(&self, g: Elem) -> usize {
        (0..self.n as Elem).filter(|&h| self.commute(g, h)).count()
    }

    /// `|{(g, h) : gh = hg}|`, summed over centralizers.
    pub fn commuting_pairs(&self) -> u64 {
        (0..self.n as Elem).map(|h| self.centralizer_size(h) as u64).sum()
    }

    pub fn commuting_probability(&self) -> Rational {
        Rational::new(self.commuting_pairs(), (self.n as u64) * (self.n as u64))
    }

    /// Number of orbits of the conjugation action.
    pub fn conjugacy_class_count(&self) -> usize {
        let mut seen = vec![false; self.n];
        let mut classes = 0;
        for x in 0..self.n as Elem {
            if seen[x as usize] {
                continue;
            }
            classes += 1;
            for g in 0..self.n as Elem {
                let y = self.mul(self.mul(g, x), self.inv(g));
                seen[y as usize] = true;
            }
        }
        classes
    }

    /// `A × B` with id `a·|B| + b`.
    pub fn direct_product(a: &GroupTable, b: &GroupTable, order_budget: usize) -> Result<Self> {
        let n = a.n.saturating_mul(b.n);
        budget::check("group order", n as u128, order_budget as u128)?;
        let mut mul = Vec::with_capacity(n * n);
        for x in 0..n {
            let (xa, xb) = ((x / b.n) as Elem, (x % b.n) as Elem);
            for y in 0..n {
                let (ya, yb) = ((y / b.n) as Elem, (y % b.n) as Elem);
                let za = a.mul(xa, ya) as usize;
                let zb = b.mul(xb, yb) as usize;
                mul.push((za * b.n + zb) as Elem);
            }
        }
        let labels = (0..n).map(|x| format!("({},{})", a.labels[x / b.n], b.labels[x % b.n])).collect();
        GroupTable::from_table(n, mul, labels)
    }

    /// Rename elements: old id `g` becomes `perm[g]`. `perm[0]` must be `0`.
    pub fn relabeled(&self, perm: &[Elem]) -> Result<Self> {
        let n = self.n;
        if perm.len() != n || perm.first() != Some(&0) {
            return Err(Error::invalid("relabeling must be a permutation fixing 0"));
        }
        let mut back = vec![Elem::MAX; n];
        for (old, &new) in perm.iter().enumerate() {
            match back.get_mut(new as usize) {
                Some(slot) if *slot == Elem::MAX => *slot = old as Elem,
                _ => return Err(Error::invalid("relabeling is not a permutation")),
            }
        }
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let c = self.mul[back[a] as usize * n + back[b] as usize];
                mul[a * n + b] = perm[c as usize];
            }
        }
        let labels = (0..n).map(|a| self.labels[back[a] as usize].clone()).collect();
        GroupTable::from_table(n, mul, labels)
    }

    pub fn cyclic(n: usize, order_budget: usize) -> Result<Self> {
        budget::check("group order", n as u128, order_budget as u128)?;
        if n == 0 {
            return Err(Error::invalid("C0 is not a group"));
        }
        let mul = (0..n).flat_map(|a| (0..n).map(move |b| ((a + b) % n) as Elem)).collect();
        let labels = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "a".to_string(),
                _ => format!("a^{k}"),
            })
            .collect();
        GroupTable::from_table(n, mul, labels)
    }

    /// Dihedral group of order `2m`: ids `0..m` are `r^i`, ids `m..2m` are `s·r^i`.
    pub fn dihedral(m: usize, order_budget: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("D0 is not a group"));
        }
        budget::check("group order", 2 * m as u128, order_budget as u128)?;
        let n = 2 * m;
        let mut mul = Vec::with_capacity(n * n);
        for x in 0..n {
            let (xs, xi) = (x >= m, x % m);
            for y in 0..n {
                let (ys, yi) = (y >= m, y % m);
                // r^i s = s r^-i
                let i = if ys { (m - xi) % m } else { xi };
                let k = (i + yi) % m;
                mul.push(if xs != ys { m + k } else { k } as Elem);
            }
        }
        let rot = |i: usize| match i {
            0 => String::new(),
            1 => "r".to_string(),
            _ => format!("r^{i}"),
        };
        let labels = (0..n)
            .map(|x| match (x >= m, x % m) {
                (false, 0) => "e".to_string(),
                (false, i) => rot(i),
                (true, i) => format!("s{}", rot(i)),
            })
            .collect();
        GroupTable::from_table(n, mul, labels)
    }

    /// Quaternion group; ids are `1, -1, i, -i, j, -j, k, -k`.
    pub fn quaternion() -> Result<Self> {
        // unit products for 1, i, j, k as (sign, unit)
        const UNIT: [[(bool, usize); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        let mut mul = Vec::with_capacity(64);
        for x in 0..8 {
            for y in 0..8 {
                let (neg, u) = UNIT[x / 2][y / 2];
                let sign = neg ^ (x % 2 == 1) ^ (y % 2 == 1);
                mul.push((2 * u + sign as usize) as Elem);
            }
        }
        let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].iter().map(|s| s.to_string()).collect();
        GroupTable::from_table(8, mul, labels)
    }

    /// Subgroup of `Sym(k)` generated by `generators`, ids in BFS discovery
    /// order from the identity (right multiplication by generators in order).
    pub fn closure(generators: &[Permutation], order_budget: usize) -> Result<Self> {
        let degree = generators.iter().map(Permutation::degree).max().unwrap_or(0);
        if degree > MAX_DEGREE {
            return Err(Error::invalid(format!("degree {degree} exceeds {MAX_DEGREE}")));
        }
        let gens: Vec<Permutation> = generators.iter().map(|g| g.padded(degree)).collect();
        let mut elements = vec![Permutation::identity(degree)];
        let mut index: HashMap<Permutation, Elem> = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut head = 0;
        while head < elements.len() {
            let current = elements[head].clone();
            head += 1;
            for g in &gens {
                let next = current.then(g);
                if !index.contains_key(&next) {
                    budget::check("group order", elements.len() as u128 + 1, order_budget as u128)?;
                    index.insert(next.clone(), elements.len() as Elem);
                    elements.push(next);
                }
            }
        }
        let n = elements.len();
        let mut mul = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                mul.push(index[&a.then(b)]);
            }
        }
        let labels = elements.iter().map(|p| p.to_string()).collect();
        GroupTable::from_table(n, mul, labels)
    }

    pub fn symmetric(k: usize, order_budget: usize) -> Result<Self> {
        budget::check("group order", factorial(k), order_budget as u128)?;
        let mut gens = Vec::new();
        if k >= 2 {
            gens.push(Permutation::from_cycles(k, &[vec![1, 2]])?);
        }
        if k >= 3 {
            gens.push(Permutation::from_cycles(k, &[(1..=k).collect()])?);
        }
        GroupTable::closure(&gens, order_budget)
    }

    pub fn alternating(k: usize, order_budget: usize) -> Result<Self> {
        let n = if k >= 2 { factorial(k) / 2 } else { 1 };
        budget::check("group order", n, order_budget as u128)?;
        let gens =
            (3..=k).map(|c| Permutation::from_cycles(k, &[vec![1, 2, c]])).collect::<Result<Vec<_>>>()?;
        GroupTable::closure(&gens, order_budget)
    }
}

fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

//! Independent reference computations shared by the integration tests.
//! Nothing here goes through word-map tables or derived words.

#![allow(dead_code)]

use wordmap_lab::group::build;
use wordmap_lab::{Elem, GroupTable, Word};

pub const BATTERY_GROUPS: &[&str] =
    &["C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C2xC2", "C2xC4", "S3", "D4", "Q8", "A4"];

pub const BATTERY_WORDS: &[&str] = &["x1^2", "x1^3", "x1^-1", "x1^5", "x1*x2", "x1*x2*x1^-1*x2^-1"];

pub fn group(spec: &str) -> GroupTable {
    build(spec, 2000).unwrap()
}

pub fn word(s: &str) -> Word {
    s.parse().unwrap()
}

/// Letter-by-letter evaluation, one multiplication per letter.
pub fn naive_eval(w: &Word, g: &GroupTable, args: &[Elem]) -> Elem {
    let mut acc = 0;
    for s in w.syllables() {
        let x = args[s.var as usize - 1];
        let letter = if s.exp > 0 { x } else { g.inv(x) };
        for _ in 0..s.exp.unsigned_abs() {
            acc = g.mul(acc, letter);
        }
    }
    acc
}

/// Calls `f` on every tuple of `G^k`, last coordinate fastest.
pub fn for_each_tuple(n: usize, k: usize, mut f: impl FnMut(&[Elem])) {
    let mut t = vec![0 as Elem; k];
    loop {
        f(&t);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            t[i] += 1;
            if (t[i] as usize) < n {
                break;
            }
            t[i] = 0;
        }
    }
}

/// Both sides of `w(x⁻¹yz) = w(x)⁻¹ w(y) w(z)` evaluated directly.
pub fn equation_holds(w: &Word, g: &GroupTable, d: usize, t: &[Elem]) -> bool {
    let (x, rest) = t.split_at(d);
    let (y, z) = rest.split_at(d);
    let arg: Vec<Elem> = (0..d).map(|i| g.mul(g.mul(g.inv(x[i]), y[i]), z[i])).collect();
    let lhs = naive_eval(w, g, &arg);
    let rhs = g.mul(g.mul(g.inv(naive_eval(w, g, x)), naive_eval(w, g, y)), naive_eval(w, g, z));
    lhs == rhs
}

pub fn naive_census(w: &Word, g: &GroupTable, d: usize) -> u64 {
    let mut c = 0;
    for_each_tuple(g.order(), 3 * d, |t| {
        if equation_holds(w, g, d, t) {
            c += 1;
        }
    });
    c
}

/// All functions `G^d → G` satisfying the homomorphism condition on the
/// direct power, as value tables over tuple indices.
pub fn brute_force_homs(g: &GroupTable, d: usize) -> Vec<Vec<Elem>> {
    let n = g.order();
    let size = n.pow(d as u32);
    let mut tuples = Vec::with_capacity(size);
    for_each_tuple(n, d, |t| tuples.push(t.to_vec()));
    let index = |t: &[Elem]| t.iter().fold(0usize, |a, &x| a * n + x as usize);
    let mut out = Vec::new();
    for_each_tuple(n, size, |f| {
        let ok = tuples.iter().all(|a| {
            tuples.iter().all(|b| {
                let ab: Vec<Elem> = a.iter().zip(b).map(|(&x, &y)| g.mul(x, y)).collect();
                f[index(&ab)] == g.mul(f[index(a)], f[index(b)])
            })
        });
        if ok {
            out.push(f.to_vec());
        }
    });
    out
}

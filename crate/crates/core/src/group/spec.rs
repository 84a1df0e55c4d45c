//! Textual group descriptions: `C6`, `D4`, `S3xC2`, `perm:(1 2 3),(1 2)`.
//!
//! `D n` has order `2n`. `S n` and `A n` accept `n <= 8`; the order budget
//! still applies.

use std::fmt;
use std::str::FromStr;

use super::perm::{parse_cycles, Permutation};
use super::GroupTable;
use crate::error::{Error, Result};

const MAX_SYM_DEGREE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Quaternion,
    /// Cycles of each generator; degree is the largest point mentioned.
    Perm(Vec<Vec<Vec<usize>>>),
}

/// A direct product of atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub factors: Vec<Atom>,
}

impl GroupSpec {
    pub fn build(&self, order_budget: usize) -> Result<GroupTable> {
        let mut acc: Option<GroupTable> = None;
        for atom in &self.factors {
            let g = atom.build(order_budget)?;
            acc = Some(match acc {
                None => g,
                Some(a) => GroupTable::direct_product(&a, &g, order_budget)?,
            });
        }
        acc.ok_or_else(|| Error::invalid("empty group spec"))
    }
}

impl Atom {
    fn build(&self, order_budget: usize) -> Result<GroupTable> {
        match *self {
            Atom::Cyclic(n) => GroupTable::cyclic(n, order_budget),
            Atom::Dihedral(n) => GroupTable::dihedral(n, order_budget),
            Atom::Symmetric(n) => GroupTable::symmetric(n, order_budget),
            Atom::Alternating(n) => GroupTable::alternating(n, order_budget),
            Atom::Quaternion => GroupTable::quaternion(),
            Atom::Perm(ref gens) => {
                let degree = gens.iter().flatten().flatten().copied().max().unwrap_or(0);
                let perms = gens
                    .iter()
                    .map(|cycles| Permutation::from_cycles(degree, cycles))
                    .collect::<Result<Vec<_>>>()?;
                GroupTable::closure(&perms, order_budget)
            }
        }
    }
}

fn parse_atom(text: &str, offset: usize) -> Result<Atom> {
    let lead = text.len() - text.trim_start().len();
    let t = text.trim();
    let offset = offset + lead;
    if t.is_empty() {
        return Err(Error::parse(offset, "expected a group atom"));
    }
    if let Some(rest) = t.strip_prefix("perm:") {
        let mut gens = Vec::new();
        let mut at = offset + 5;
        for piece in rest.split(',') {
            let (cycles, _) = parse_cycles(piece, at)?;
            gens.push(cycles);
            at += piece.len() + 1;
        }
        return Ok(Atom::Perm(gens));
    }
    if t == "Q8" {
        return Ok(Atom::Quaternion);
    }
    if !t.is_char_boundary(1) {
        return Err(Error::parse(offset, format!("unknown group atom {t:?}")));
    }
    let (kind, digits) = t.split_at(1);
    let n: usize =
        digits.parse().map_err(|_| Error::parse(offset + 1, format!("expected a size after {kind:?}")))?;
    if n == 0 {
        return Err(Error::parse(offset + 1, "size must be positive"));
    }
    let sym_degree = |n: usize| {
        if n > MAX_SYM_DEGREE {
            Err(Error::parse(offset + 1, format!("degree {n} exceeds {MAX_SYM_DEGREE}")))
        } else {
            Ok(n)
        }
    };
    match kind {
        "C" => Ok(Atom::Cyclic(n)),
        "D" => Ok(Atom::Dihedral(n)),
        "S" => Ok(Atom::Symmetric(sym_degree(n)?)),
        "A" => Ok(Atom::Alternating(sym_degree(n)?)),
        _ => Err(Error::parse(offset, format!("unknown group atom {t:?}"))),
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut factors = Vec::new();
        let mut offset = 0;
        for piece in s.split('x') {
            factors.push(parse_atom(piece, offset)?);
            offset += piece.len() + 1;
        }
        Ok(GroupSpec { factors })
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Cyclic(n) => write!(f, "C{n}"),
            Atom::Dihedral(n) => write!(f, "D{n}"),
            Atom::Symmetric(n) => write!(f, "S{n}"),
            Atom::Alternating(n) => write!(f, "A{n}"),
            Atom::Quaternion => f.write_str("Q8"),
            Atom::Perm(gens) => {
                f.write_str("perm:")?;
                for (i, cycles) in gens.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    for c in cycles {
                        let parts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
                        write!(f, "({})", parts.join(" "))?;
                    }
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// Parse and build in one step.
pub fn build(spec: &str, order_budget: usize) -> Result<GroupTable> {
    spec.parse::<GroupSpec>()?.build(order_budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(s: &str) -> usize {
        build(s, 2000).unwrap().order()
    }

    #[test]
    fn builds_examples() {
        assert_eq!(order("C1"), 1);
        assert_eq!(order("S3"), 6);
        assert!(!build("S3", 2000).unwrap().is_abelian());
        let v4 = build("C2xC2", 2000).unwrap();
        assert!(v4.is_abelian() && (1..4).all(|g| v4.element_order(g) == 2));
        assert_eq!(order("C2xC2xC2x C2"), 16);
        assert_eq!(order("D8"), 16);
        assert_eq!(order("perm:(1 2 3 4),(1 3)"), 8);
        assert_eq!(order("perm:(1 2)(3 4),(1 3)(2 4)"), 4);
        assert_eq!(order("A5xC2"), 120);
    }

    #[test]
    fn spec_round_trips_through_display() {
        for s in ["C4xD3", "Q8xS3", "perm:(1 2 3),(1 2)", "A4"] {
            let spec: GroupSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("C0".parse::<GroupSpec>(), Err(Error::Parse { .. })));
        assert!(matches!("S9".parse::<GroupSpec>(), Err(Error::Parse { .. })));
        assert!(matches!("Z5".parse::<GroupSpec>(), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!("C2x".parse::<GroupSpec>(), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!("perm:(1 2".parse::<GroupSpec>(), Err(Error::Parse { .. })));
        assert!(matches!("C2xQ7".parse::<GroupSpec>(), Err(Error::Parse { pos: 3, .. })));
    }

    #[test]
    fn budget_errors() {
        assert!(build("S7", 2000).unwrap_err().is_budget());
        assert!(build("C50xC50", 2000).unwrap_err().is_budget());
        assert!(build("C2001", 2000).unwrap_err().is_budget());
    }
}

//! Permutations of `{1..k}` in cycle notation, `k <= 12`.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 12;

/// A permutation of `0..degree`, stored as its image list.
///
/// Products act on the right: in `p.then(q)` first `p` is applied, then `q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u8).collect())
    }

    pub fn from_images(images: Vec<u8>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            match seen.get_mut(i as usize) {
                Some(s) if !*s => *s = true,
                _ => return Err(Error::invalid("image list is not a permutation")),
            }
        }
        Ok(Permutation(images))
    }

    /// Build from 1-based cycles on `{1..degree}`.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<u8> = (0..degree as u8).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &p) in cycle.iter().enumerate() {
                if p == 0 || p > degree {
                    return Err(Error::invalid(format!("point {p} outside 1..={degree}")));
                }
                if std::mem::replace(&mut touched[p - 1], true) {
                    return Err(Error::invalid(format!("point {p} appears twice")));
                }
                let next = cycle[(i + 1) % cycle.len()];
                images[p - 1] = (next - 1) as u8;
            }
        }
        Ok(Permutation(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    /// Extend to a larger degree by fixing the new points.
    pub fn padded(&self, degree: usize) -> Permutation {
        let mut v = self.0.clone();
        v.extend(self.0.len() as u8..degree as u8);
        Permutation(v)
    }

    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.0[p] as usize;
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Parse `"(1 2 3)(4 5)"`. Returns the cycles and the largest point seen.
pub fn parse_cycles(text: &str, offset: usize) -> Result<(Vec<Vec<usize>>, usize)> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut cycles = Vec::new();
    let mut max_point = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    skip_ws(&mut pos);
    if pos == bytes.len() {
        return Err(Error::parse(offset + pos, "expected a cycle"));
    }
    while pos < bytes.len() {
        if bytes[pos] != b'(' {
            return Err(Error::parse(offset + pos, "expected '('"));
        }
        pos += 1;
        let mut cycle = Vec::new();
        loop {
            skip_ws(&mut pos);
            match bytes.get(pos) {
                Some(b')') => {
                    pos += 1;
                    break;
                }
                Some(b) if b.is_ascii_digit() => {
                    let start = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let p: usize =
                        text[start..pos].parse().map_err(|_| Error::parse(offset + start, "bad point"))?;
                    if p == 0 || p > MAX_DEGREE {
                        return Err(Error::parse(
                            offset + start,
                            format!("point {p} outside 1..={MAX_DEGREE}"),
                        ));
                    }
                    max_point = max_point.max(p);
                    cycle.push(p);
                }
                Some(_) => return Err(Error::parse(offset + pos, "expected a point or ')'")),
                None => return Err(Error::parse(offset + pos, "unterminated cycle")),
            }
        }
        cycles.push(cycle);
        skip_ws(&mut pos);
    }
    Ok((cycles, max_point))
}

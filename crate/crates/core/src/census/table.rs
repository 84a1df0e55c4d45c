use std::collections::BTreeMap;
use std::io::{Read, Write};

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::Rational;
use crate::error::{Error, Result};
use crate::freeword::Word;
use crate::group::{Elem, GroupTable};
use crate::tuples::TupleSpace;

const DUMP_MAGIC: &[u8; 4] = b"WMT1";

/// The word map `G^d → G` tabulated over all tuples in mixed-radix order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordMapTable {
    space: TupleSpace,
    values: Vec<Elem>,
}

impl WordMapTable {
    /// Fails when `|G|^d` exceeds `limit` entries or `d` is below the arity.
    pub fn new(w: &Word, g: &GroupTable, d: usize, limit: u128) -> Result<Self> {
        if d < w.arity() {
            return Err(Error::invalid(format!("d = {d} is below the word arity {}", w.arity())));
        }
        let space = TupleSpace::new(g.order(), d, "word map table entries", limit)?;
        let values = (0..space.size())
            .into_par_iter()
            .map_init(
                || vec![0; d],
                |tuple, idx| {
                    space.decode(idx, tuple);
                    w.evaluate(g, tuple)
                },
            )
            .collect();
        Ok(WordMapTable { space, values })
    }

    pub fn space(&self) -> TupleSpace {
        self.space
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn get(&self, tuple: &[Elem]) -> Elem {
        self.values[self.space.encode(tuple)]
    }

    /// Per-target fiber sizes plus their histogram.
    pub fn fiber_stats(&self) -> FiberStats {
        let mut fibers = vec![0u64; self.space.n];
        for &v in &self.values {
            fibers[v as usize] += 1;
        }
        let mut histogram = BTreeMap::new();
        for &f in &fibers {
            *histogram.entry(f).or_insert(0u64) += 1;
        }
        let max_fiber = fibers.iter().copied().max().unwrap_or(0);
        FiberStats {
            max_proportion: Rational::new(max_fiber, self.values.len() as u64),
            fibers,
            histogram,
            max_fiber,
        }
    }

    /// Binary dump: `WMT1`, `d` and `n` as little-endian u16, then one
    /// little-endian u32 element id per tuple in index order.
    pub fn write_dump(&self, mut out: impl Write) -> Result<()> {
        let d = u16::try_from(self.space.d).map_err(|_| Error::invalid("d too large to dump"))?;
        let n = u16::try_from(self.space.n).map_err(|_| Error::invalid("n too large to dump"))?;
        out.write_all(DUMP_MAGIC)?;
        out.write_all(&d.to_le_bytes())?;
        out.write_all(&n.to_le_bytes())?;
        for &v in &self.values {
            out.write_all(&v.to_le_bytes())?;
        }
        Ok(())
    }

    /// Read a dump back as `(d, n, values)`.
    pub fn read_dump(mut input: impl Read) -> Result<(usize, usize, Vec<Elem>)> {
        let mut header = [0u8; 8];
        input.read_exact(&mut header)?;
        if &header[..4] != DUMP_MAGIC {
            return Err(Error::invalid("not a WMT1 table dump"));
        }
        let d = u16::from_le_bytes([header[4], header[5]]) as usize;
        let n = u16::from_le_bytes([header[6], header[7]]) as usize;
        let mut body = Vec::new();
        input.read_to_end(&mut body)?;
        if body.len() % 4 != 0 {
            return Err(Error::invalid("truncated table dump"));
        }
        let values: Vec<Elem> =
            body.chunks_exact(4).map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]])).collect();
        let expected = crate::budget::pow_sat(n, d);
        if values.len() as u128 != expected {
            return Err(Error::invalid(format!("dump has {} entries, expected {expected}", values.len())));
        }
        Ok((d, n, values))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberStats {
    /// `fibers[g]` is the number of tuples mapped to `g`.
    pub fibers: Vec<u64>,
    /// fiber size -> number of group elements with a fiber of that size
    pub histogram: BTreeMap<u64, u64>,
    pub max_fiber: u64,
    pub max_proportion: Rational,
}

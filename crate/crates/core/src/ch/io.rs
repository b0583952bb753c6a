//! Binary hierarchy files.
//!
//! All integers little-endian:
//!
//! ```text
//! "CHR1"
//! u32 node_count
//! u32 level[node_count]
//! u32 edge_count
//!   { u32 tail, u32 head, u64 weight, u8 flags } * edge_count
//!     flags: bit0 shortcut, bit1 upward, bit2 downward
//! u32 shortcut_count
//!   { u32 tail, u32 head, u32 middle, u8 first_is_shortcut, u8 second_is_shortcut } * shortcut_count
//! ```
//!
//! Edge records list every original edge and every shortcut. The middle-node
//! table has one entry per shortcut record. Loading re-validates all
//! hierarchy invariants.

use std::collections::HashMap;
use std::io::{Read, Write};

use crate::ch::{ChEdge, Hierarchy, Shortcut};
use crate::error::HierarchyFormatError;
use crate::graph::EdgeRef;
use crate::weight::Weight;

pub const HIERARCHY_MAGIC: &[u8; 4] = b"CHR1";

const FLAG_SHORTCUT: u8 = 1;
const FLAG_UP: u8 = 2;
const FLAG_DOWN: u8 = 4;

pub fn write_hierarchy<W: Weight, Wr: Write>(
    h: &Hierarchy<W>,
    mut out: Wr,
) -> Result<(), HierarchyFormatError> {
    let mut buf = Vec::new();
    buf.extend_from_slice(HIERARCHY_MAGIC);
    buf.extend_from_slice(&(h.node_count() as u32).to_le_bytes());
    for &l in h.levels() {
        buf.extend_from_slice(&l.to_le_bytes());
    }
    let edge_count = h.original_edges().len() + h.shortcuts().len();
    buf.extend_from_slice(&(edge_count as u32).to_le_bytes());
    let records = h
        .original_edges()
        .iter()
        .map(|&(e, w)| (e, w, false))
        .chain(h.shortcuts().iter().map(|s| (s.edge, s.weight, true)));
    for (e, w, shortcut) in records {
        let up = h.level(e.tail) < h.level(e.head);
        let flags = if shortcut { FLAG_SHORTCUT } else { 0 } | if up { FLAG_UP } else { FLAG_DOWN };
        buf.extend_from_slice(&e.tail.to_le_bytes());
        buf.extend_from_slice(&e.head.to_le_bytes());
        let w = w.to_u64().expect("unsigned weight fits in u64");
        buf.extend_from_slice(&w.to_le_bytes());
        buf.push(flags);
    }
    buf.extend_from_slice(&(h.shortcuts().len() as u32).to_le_bytes());
    for s in h.shortcuts() {
        buf.extend_from_slice(&s.edge.tail.to_le_bytes());
        buf.extend_from_slice(&s.edge.head.to_le_bytes());
        buf.extend_from_slice(&s.middle.to_le_bytes());
        buf.push(s.first.shortcut as u8);
        buf.push(s.second.shortcut as u8);
    }
    out.write_all(&buf)?;
    out.flush()?;
    Ok(())
}

struct Reader<'a> {
    data: &'a [u8],
}

impl Reader<'_> {
    fn take<const N: usize>(&mut self) -> Result<[u8; N], HierarchyFormatError> {
        if self.data.len() < N {
            return Err(HierarchyFormatError::Truncated);
        }
        let (head, rest) = self.data.split_at(N);
        self.data = rest;
        Ok(head.try_into().expect("length checked"))
    }

    fn u8(&mut self) -> Result<u8, HierarchyFormatError> {
        Ok(self.take::<1>()?[0])
    }

    fn u32(&mut self) -> Result<u32, HierarchyFormatError> {
        Ok(u32::from_le_bytes(self.take()?))
    }

    fn u64(&mut self) -> Result<u64, HierarchyFormatError> {
        Ok(u64::from_le_bytes(self.take()?))
    }

    /// Guards allocations driven by untrusted counts.
    fn check_room(&self, count: u32, record: usize) -> Result<(), HierarchyFormatError> {
        if (count as usize).saturating_mul(record) > self.data.len() {
            Err(HierarchyFormatError::Truncated)
        } else {
            Ok(())
        }
    }
}

fn invalid(msg: impl Into<String>) -> HierarchyFormatError {
    HierarchyFormatError::Invalid(msg.into())
}

pub fn read_hierarchy<W: Weight, R: Read>(mut input: R) -> Result<Hierarchy<W>, HierarchyFormatError> {
    let mut data = Vec::new();
    input.read_to_end(&mut data)?;
    let mut r = Reader { data: &data };
    if &r.take::<4>()? != HIERARCHY_MAGIC {
        return Err(HierarchyFormatError::BadMagic);
    }
    let n = r.u32()?;
    r.check_room(n, 4)?;
    let levels = (0..n).map(|_| r.u32()).collect::<Result<Vec<_>, _>>()?;
    if levels.iter().any(|&l| l >= n) {
        return Err(invalid("level out of range"));
    }

    let edge_count = r.u32()?;
    r.check_room(edge_count, 17)?;
    let mut original = Vec::new();
    let mut shortcut_weights: HashMap<EdgeRef, W> = HashMap::new();
    for _ in 0..edge_count {
        let e = EdgeRef::new(r.u32()?, r.u32()?);
        let raw = r.u64()?;
        let flags = r.u8()?;
        let w: W = W::from(raw).ok_or(HierarchyFormatError::WeightRange(raw))?;
        if e.tail >= n || e.head >= n {
            return Err(invalid(format!("edge {e:?} out of range")));
        }
        if flags & !(FLAG_SHORTCUT | FLAG_UP | FLAG_DOWN) != 0 {
            return Err(invalid(format!("unknown flag bits on {e:?}")));
        }
        let up = levels[e.tail as usize] < levels[e.head as usize];
        let expected = if up { FLAG_UP } else { FLAG_DOWN };
        if flags & (FLAG_UP | FLAG_DOWN) != expected {
            return Err(invalid(format!("direction flag of {e:?} disagrees with levels")));
        }
        if flags & FLAG_SHORTCUT != 0 {
            if shortcut_weights.insert(e, w).is_some() {
                return Err(invalid(format!("duplicate shortcut {e:?}")));
            }
        } else {
            original.push((e, w));
        }
    }

    let shortcut_count = r.u32()?;
    r.check_room(shortcut_count, 14)?;
    if shortcut_count as usize != shortcut_weights.len() {
        return Err(invalid("middle-node table does not match shortcut records"));
    }
    let mut shortcuts = Vec::with_capacity(shortcut_count as usize);
    for _ in 0..shortcut_count {
        let edge = EdgeRef::new(r.u32()?, r.u32()?);
        let middle = r.u32()?;
        let (a, b) = (r.u8()?, r.u8()?);
        if a > 1 || b > 1 {
            return Err(invalid("bad constituent kind"));
        }
        let weight = shortcut_weights
            .remove(&edge)
            .ok_or_else(|| invalid(format!("middle entry for unknown shortcut {edge:?}")))?;
        shortcuts.push(Shortcut {
            edge,
            weight,
            middle,
            first: ChEdge {
                tail: edge.tail,
                head: middle,
                shortcut: a == 1,
            },
            second: ChEdge {
                tail: middle,
                head: edge.head,
                shortcut: b == 1,
            },
        });
    }
    if !r.data.is_empty() {
        return Err(HierarchyFormatError::TrailingBytes);
    }
    Hierarchy::from_parts(levels, original, shortcuts).map_err(HierarchyFormatError::Invalid)
}

//! Byte encoding of compressed routes.
//!
//! ```text
//! "RTC1"                      4 bytes
//! map_version                 u64 little-endian
//! method tag                  1 byte: 0 via edges, 1 via nodes, 2 ch path, 3 combined
//! source, target              unsigned LEB128
//! count                       unsigned LEB128
//! body                        see below
//! ```
//!
//! Node ids in the body are zigzag-LEB128 deltas against an anchor that
//! starts at `source`:
//!
//! * via edges, ch path, combined: per edge `tail - anchor`, `head - anchor`,
//!   then the anchor becomes `head`;
//! * via nodes: per node `node - anchor`, then the anchor becomes `node`.
//!
//! Ch-path and combined bodies are followed by a shortcut bitmap of
//! `ceil(count / 8)` bytes, bit `i % 8` of byte `i / 8` (LSB first) set when
//! edge `i` is a shortcut. Padding bits are zero.

use crate::ch::ChEdge;
use crate::error::CodecError;
use crate::graph::{EdgeRef, NodeId};

pub const MESSAGE_MAGIC: &[u8; 4] = b"RTC1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum Method {
    ViaEdges = 0,
    ViaNodes = 1,
    ChPath = 2,
    Combined = 3,
}

impl TryFrom<u8> for Method {
    type Error = CodecError;

    fn try_from(tag: u8) -> Result<Self, CodecError> {
        match tag {
            0 => Ok(Method::ViaEdges),
            1 => Ok(Method::ViaNodes),
            2 => Ok(Method::ChPath),
            3 => Ok(Method::Combined),
            other => Err(CodecError::UnknownMethod(other)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RouteBody {
    ViaEdges(Vec<EdgeRef>),
    ViaNodes(Vec<NodeId>),
    /// Every edge of a CH-compressed path.
    ChPath(Vec<ChEdge>),
    /// Via edges of a CH-compressed path.
    Combined(Vec<ChEdge>),
}

impl RouteBody {
    pub fn method(&self) -> Method {
        match self {
            RouteBody::ViaEdges(_) => Method::ViaEdges,
            RouteBody::ViaNodes(_) => Method::ViaNodes,
            RouteBody::ChPath(_) => Method::ChPath,
            RouteBody::Combined(_) => Method::Combined,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            RouteBody::ViaEdges(v) => v.len(),
            RouteBody::ViaNodes(v) => v.len(),
            RouteBody::ChPath(v) | RouteBody::Combined(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RouteMessage {
    /// Opaque identifier of the map both sides must share.
    pub map_version: u64,
    pub source: NodeId,
    pub target: NodeId,
    pub body: RouteBody,
}

impl RouteMessage {
    pub fn method(&self) -> Method {
        self.body.method()
    }
}

pub(crate) fn write_uleb(out: &mut Vec<u8>, mut v: u64) {
    loop {
        let byte = (v & 0x7f) as u8;
        v >>= 7;
        if v == 0 {
            out.push(byte);
            return;
        }
        out.push(byte | 0x80);
    }
}

pub(crate) fn zigzag(v: i64) -> u64 {
    ((v << 1) ^ (v >> 63)) as u64
}

pub(crate) fn unzigzag(v: u64) -> i64 {
    ((v >> 1) as i64) ^ -((v & 1) as i64)
}

fn write_delta(out: &mut Vec<u8>, anchor: NodeId, v: NodeId) {
    write_uleb(out, zigzag(v as i64 - anchor as i64));
}

pub fn encode(m: &RouteMessage) -> Vec<u8> {
    let mut out = Vec::with_capacity(24 + 4 * m.body.len());
    out.extend_from_slice(MESSAGE_MAGIC);
    out.extend_from_slice(&m.map_version.to_le_bytes());
    out.push(m.method() as u8);
    write_uleb(&mut out, m.source as u64);
    write_uleb(&mut out, m.target as u64);
    write_uleb(&mut out, m.body.len() as u64);
    let mut anchor = m.source;
    let mut edges = |out: &mut Vec<u8>, it: &mut dyn Iterator<Item = (NodeId, NodeId)>| {
        for (tail, head) in it {
            write_delta(out, anchor, tail);
            write_delta(out, anchor, head);
            anchor = head;
        }
    };
    match &m.body {
        RouteBody::ViaEdges(v) => edges(&mut out, &mut v.iter().map(|e| (e.tail, e.head))),
        RouteBody::ViaNodes(v) => {
            for &node in v {
                write_delta(&mut out, anchor, node);
                anchor = node;
            }
        }
        RouteBody::ChPath(v) | RouteBody::Combined(v) => {
            edges(&mut out, &mut v.iter().map(|e| (e.tail, e.head)));
            let mut bitmap = vec![0u8; v.len().div_ceil(8)];
            for (i, e) in v.iter().enumerate() {
                if e.shortcut {
                    bitmap[i / 8] |= 1 << (i % 8);
                }
            }
            out.extend_from_slice(&bitmap);
        }
    }
    out
}

struct Cursor<'a> {
    data: &'a [u8],
}

impl Cursor<'_> {
    fn bytes(&mut self, n: usize) -> Result<&[u8], CodecError> {
        if self.data.len() < n {
            return Err(CodecError::Truncated);
        }
        let (head, rest) = self.data.split_at(n);
        self.data = rest;
        Ok(head)
    }

    fn uleb(&mut self) -> Result<u64, CodecError> {
        let mut value = 0u64;
        for i in 0..10 {
            let &byte = self.data.first().ok_or(CodecError::Truncated)?;
            self.data = &self.data[1..];
            let payload = (byte & 0x7f) as u64;
            // the tenth byte may only carry the top bit of a u64
            if i == 9 && payload > 1 {
                return Err(CodecError::VarintOverflow);
            }
            value |= payload << (7 * i);
            if byte & 0x80 == 0 {
                return Ok(value);
            }
        }
        Err(CodecError::VarintOverflow)
    }

    fn node(&mut self) -> Result<NodeId, CodecError> {
        NodeId::try_from(self.uleb()?).map_err(|_| CodecError::NodeRange)
    }

    fn delta(&mut self, anchor: NodeId) -> Result<NodeId, CodecError> {
        let d = unzigzag(self.uleb()?);
        (anchor as i64)
            .checked_add(d)
            .and_then(|v| NodeId::try_from(v).ok())
            .ok_or(CodecError::NodeRange)
    }
}

pub fn decode(bytes: &[u8]) -> Result<RouteMessage, CodecError> {
    let mut c = Cursor { data: bytes };
    if c.data.len() >= 4 && &c.data[..4] != MESSAGE_MAGIC {
        return Err(CodecError::BadMagic);
    }
    c.bytes(4)?;
    let map_version = u64::from_le_bytes(c.bytes(8)?.try_into().expect("8 bytes"));
    let method = Method::try_from(c.bytes(1)?[0])?;
    let source = c.node()?;
    let target = c.node()?;
    let count = c.uleb()?;
    // each element needs at least one byte; refuse counts the input cannot hold
    if count > c.data.len() as u64 {
        return Err(CodecError::Truncated);
    }
    let count = count as usize;
    let mut anchor = source;
    let mut pairs = |c: &mut Cursor| -> Result<Vec<(NodeId, NodeId)>, CodecError> {
        let mut v = Vec::with_capacity(count);
        for _ in 0..count {
            let tail = c.delta(anchor)?;
            let head = c.delta(anchor)?;
            anchor = head;
            v.push((tail, head));
        }
        Ok(v)
    };
    let body = match method {
        Method::ViaEdges => RouteBody::ViaEdges(
            pairs(&mut c)?
                .into_iter()
                .map(|(t, h)| EdgeRef::new(t, h))
                .collect(),
        ),
        Method::ViaNodes => {
            let mut v = Vec::with_capacity(count);
            for _ in 0..count {
                let node = c.delta(anchor)?;
                anchor = node;
                v.push(node);
            }
            RouteBody::ViaNodes(v)
        }
        Method::ChPath | Method::Combined => {
            let list = pairs(&mut c)?;
            let bitmap = c.bytes(count.div_ceil(8))?;
            if !count.is_multiple_of(8) && bitmap[count / 8] >> (count % 8) != 0 {
                return Err(CodecError::BadPadding);
            }
            let edges = list
                .into_iter()
                .enumerate()
                .map(|(i, (tail, head))| ChEdge {
                    tail,
                    head,
                    shortcut: bitmap[i / 8] & (1 << (i % 8)) != 0,
                })
                .collect();
            if method == Method::ChPath {
                RouteBody::ChPath(edges)
            } else {
                RouteBody::Combined(edges)
            }
        }
    };
    if !c.data.is_empty() {
        return Err(CodecError::TrailingBytes(c.data.len()));
    }
    Ok(RouteMessage {
        map_version,
        source,
        target,
        body,
    })
}

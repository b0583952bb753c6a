//! DIMACS `.gr` graphs and the companion `.path` format.
//!
//! Both formats use 1-based node ids on disk; everything in memory is 0-based.
//!
//! ```text
//! c comment
//! p sp <nodes> <arcs>
//! a <tail> <head> <weight>
//! ```
//!
//! A `.path` file is `q <k>` followed by `k` lines `e <tail> <head>`.

use std::io::{BufRead, Write};

use crate::error::{DimacsError, GraphError};
use crate::graph::{EdgeRef, Graph, NodeId, Path};
use crate::weight::Weight;

fn parse_err(line: usize, message: impl Into<String>) -> DimacsError {
    DimacsError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_count(line: usize, tok: Option<&str>, what: &str) -> Result<u64, DimacsError> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse::<u64>()
        .map_err(|_| parse_err(line, format!("bad {what} `{tok}`")))
}

fn parse_node(line: usize, tok: Option<&str>, node_count: usize) -> Result<NodeId, DimacsError> {
    let raw = parse_count(line, tok, "node id")?;
    if raw == 0 || raw > node_count as u64 {
        return Err(DimacsError::Range {
            line,
            node: raw,
            node_count,
        });
    }
    Ok((raw - 1) as NodeId)
}

fn parse_weight<W: Weight>(line: usize, tok: Option<&str>) -> Result<W, DimacsError> {
    let tok = tok.ok_or_else(|| parse_err(line, "missing weight"))?;
    if tok.starts_with('-') {
        return Err(DimacsError::Domain { line });
    }
    let w: W = tok
        .parse()
        .map_err(|_| parse_err(line, format!("bad weight `{tok}`")))?;
    if w.is_zero() {
        return Err(DimacsError::Domain { line });
    }
    Ok(w)
}

fn expect_end<'a>(line: usize, mut toks: impl Iterator<Item = &'a str>) -> Result<(), DimacsError> {
    match toks.next() {
        Some(extra) => Err(parse_err(line, format!("unexpected token `{extra}`"))),
        None => Ok(()),
    }
}

/// Reads a DIMACS shortest-path graph. Parallel arcs collapse to the
/// minimum weight (see [`Graph::duplicates_dropped`]).
pub fn load_dimacs<W: Weight, R: BufRead>(reader: R) -> Result<Graph<W>, DimacsError> {
    let mut node_count: Option<usize> = None;
    let mut arcs: Vec<(NodeId, NodeId, W)> = Vec::new();

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let mut toks = line.split_whitespace();
        match toks.next() {
            None | Some("c") => {}
            Some("p") => {
                if node_count.is_some() {
                    return Err(parse_err(line_no, "duplicate problem line"));
                }
                if toks.next() != Some("sp") {
                    return Err(parse_err(line_no, "expected `p sp <nodes> <arcs>`"));
                }
                let n = parse_count(line_no, toks.next(), "node count")?;
                let declared_arcs = parse_count(line_no, toks.next(), "arc count")?;
                expect_end(line_no, toks)?;
                if n > NodeId::MAX as u64 {
                    return Err(parse_err(line_no, "node count too large"));
                }
                node_count = Some(n as usize);
                arcs.reserve(declared_arcs.min(1 << 24) as usize);
            }
            Some("a") => {
                let (tail_tok, head_tok) = (toks.next(), toks.next());
                let w = parse_weight::<W>(line_no, toks.next())?;
                expect_end(line_no, toks)?;
                let n = node_count.ok_or_else(|| parse_err(line_no, "arc before problem line"))?;
                let tail = parse_node(line_no, tail_tok, n)?;
                let head = parse_node(line_no, head_tok, n)?;
                if tail == head {
                    return Err(DimacsError::Graph {
                        line: line_no,
                        source: GraphError::SelfLoop(tail),
                    });
                }
                arcs.push((tail, head, w));
            }
            Some(other) if other.starts_with('c') => {}
            Some(other) => return Err(parse_err(line_no, format!("unknown line type `{other}`"))),
        }
    }

    let n = node_count.ok_or_else(|| parse_err(0, "missing problem line"))?;
    // The declared arc count is not enforced; many published files get it wrong.
    Graph::from_edges(n, arcs).map_err(|source| DimacsError::Graph { line: 0, source })
}

/// Writes `g` as DIMACS with arcs in `(tail, head)` order.
pub fn write_dimacs<W: Weight, Wr: Write>(g: &Graph<W>, mut out: Wr) -> std::io::Result<()> {
    writeln!(out, "p sp {} {}", g.node_count(), g.edge_count())?;
    for (e, w) in g.edges() {
        writeln!(out, "a {} {} {}", e.tail + 1, e.head + 1, w)?;
    }
    out.flush()
}

/// Identifier of a graph for route messages: the first eight bytes
/// (little-endian) of the SHA-256 digest of its canonical DIMACS text as
/// produced by [`write_dimacs`].
pub fn map_version<W: Weight>(g: &Graph<W>) -> u64 {
    use sha2::{Digest, Sha256};
    let mut text = Vec::new();
    write_dimacs(g, &mut text).expect("writing to memory cannot fail");
    let digest = Sha256::digest(&text);
    u64::from_le_bytes(digest[..8].try_into().expect("digest has 32 bytes"))
}

pub fn read_path<R: BufRead>(reader: R) -> Result<Path, DimacsError> {
    let mut expected: Option<u64> = None;
    let mut edges = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let mut toks = line.split_whitespace();
        match toks.next() {
            None | Some("c") => {}
            Some("q") => {
                if expected.is_some() {
                    return Err(parse_err(line_no, "duplicate header"));
                }
                expected = Some(parse_count(line_no, toks.next(), "edge count")?);
                expect_end(line_no, toks)?;
            }
            Some("e") => {
                if expected.is_none() {
                    return Err(parse_err(line_no, "edge before header"));
                }
                let tail = parse_node(line_no, toks.next(), NodeId::MAX as usize)?;
                let head = parse_node(line_no, toks.next(), NodeId::MAX as usize)?;
                expect_end(line_no, toks)?;
                edges.push(EdgeRef::new(tail, head));
            }
            Some(other) => return Err(parse_err(line_no, format!("unknown line type `{other}`"))),
        }
    }
    let k = expected.ok_or_else(|| parse_err(0, "missing `q` header"))?;
    if k != edges.len() as u64 {
        return Err(parse_err(
            0,
            format!("header announces {k} edges, found {}", edges.len()),
        ));
    }
    Ok(Path::from_edges(edges))
}

pub fn write_path<Wr: Write>(p: &Path, mut out: Wr) -> std::io::Result<()> {
    writeln!(out, "q {}", p.len())?;
    for e in p.edges() {
        writeln!(out, "e {} {}", e.tail + 1, e.head + 1)?;
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(s: &str) -> Result<Graph<u32>, DimacsError> {
        load_dimacs(s.as_bytes())
    }

    #[test]
    fn map_version_hashes_canonical_text() {
        // computed with an external sha256 over "p sp 2 1\na 1 2 3\n"
        let g = load("c any comment\np sp 2 1\na 1 2 3\n").unwrap();
        assert_eq!(map_version(&g), 0x6f84_dbbe_3236_ee52);
        let h = load("p sp 2 1\na 1 2 4\n").unwrap();
        assert_ne!(map_version(&g), map_version(&h));
    }

    #[test]
    fn smallest_file() {
        let g = load("p sp 2 1\na 1 2 5").unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.weight(0, 1), Some(5));
    }

    #[test]
    fn duplicates_reduce_to_minimum() {
        let g = load("p sp 2 2\na 1 2 5\na 1 2 3").unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.weight(0, 1), Some(3));
        assert_eq!(g.duplicates_dropped(), 1);
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = load("c hello\n\np sp 3 2\nc mid\na 1 2 1\na 2 3 1\n").unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn non_positive_weight_is_domain_error() {
        assert!(matches!(
            load("p sp 2 1\na 1 2 0"),
            Err(DimacsError::Domain { line: 2 })
        ));
        assert!(matches!(
            load("p sp 2 1\na 1 2 -4"),
            Err(DimacsError::Domain { line: 2 })
        ));
        assert!(matches!(load("a 1 2 0"), Err(DimacsError::Domain { line: 1 })));
        assert!(matches!(load("a 1 2 1"), Err(DimacsError::Parse { line: 1, .. })));
    }

    #[test]
    fn out_of_range_node() {
        assert!(matches!(
            load("p sp 2 1\na 1 3 1"),
            Err(DimacsError::Range { line: 2, node: 3, .. })
        ));
        assert!(matches!(
            load("p sp 2 1\na 0 1 1"),
            Err(DimacsError::Range { line: 2, node: 0, .. })
        ));
    }

    #[test]
    fn malformed_lines_name_the_line() {
        assert!(matches!(
            load("p sp 2 1\na 1 x 1"),
            Err(DimacsError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            load("p sp 2 1\n\nz"),
            Err(DimacsError::Parse { line: 3, .. })
        ));
        assert!(matches!(
            load("p sp 2 1\na 1 2 1 9"),
            Err(DimacsError::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn dimacs_roundtrip() {
        let g = load("p sp 4 5\na 2 1 7\na 1 2 3\na 3 4 1\na 1 2 9\na 4 1 2").unwrap();
        let mut buf = Vec::new();
        write_dimacs(&g, &mut buf).unwrap();
        let again: Graph<u32> = load_dimacs(buf.as_slice()).unwrap();
        assert_eq!(again.node_count(), g.node_count());
        assert_eq!(again.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
        let mut buf2 = Vec::new();
        write_dimacs(&again, &mut buf2).unwrap();
        assert_eq!(buf, buf2);
    }

    #[test]
    fn path_file_roundtrip() {
        let p = Path::from_nodes(&[0, 4, 2, 9]);
        let mut buf = Vec::new();
        write_path(&p, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "q 3\ne 1 5\ne 5 3\ne 3 10\n");
        assert_eq!(read_path(buf.as_slice()).unwrap(), p);
    }

    #[test]
    fn path_file_count_mismatch() {
        assert!(read_path("q 2\ne 1 2\n".as_bytes()).is_err());
        assert!(read_path("e 1 2\n".as_bytes()).is_err());
        assert_eq!(read_path("q 0\n".as_bytes()).unwrap(), Path::new());
    }
}

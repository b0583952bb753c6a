mod common;

use proptest::prelude::*;
use routezip::codec::{decode, encode, RouteBody, RouteMessage};
use routezip::{ChEdge, CodecError, EdgeRef, NodeId};

use common::{fixture, golden_messages};

#[test]
fn golden_files() {
    for (file, m) in golden_messages() {
        let bytes = fixture(file);
        assert_eq!(encode(&m), bytes, "{file}");
        assert_eq!(decode(&bytes).unwrap(), m, "{file}");
    }
    // two of them spelled out
    assert_eq!(
        fixture("via_edges_empty.bin"),
        [0x52, 0x54, 0x43, 0x31, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 5, 0]
    );
    assert_eq!(
        fixture("via_nodes.bin"),
        [
            0x52, 0x54, 0x43, 0x31, 42, 0, 0, 0, 0, 0, 0, 0, // magic, version
            1, 10, 3, 3, // tag, source, target, count
            0x0b, // 4 - 10 = -6
            0xd0, 0x04, // 300 - 4 = 296
            0xd3, 0x04, // 2 - 300 = -298
        ]
    );
}

#[test]
fn compressed_diamond_is_smaller_than_every_edge() {
    let compressed = RouteMessage {
        map_version: 1,
        source: 0,
        target: 3,
        body: RouteBody::ViaEdges(vec![EdgeRef::new(1, 3)]),
    };
    let full = RouteMessage {
        body: RouteBody::ViaEdges(vec![EdgeRef::new(0, 1), EdgeRef::new(1, 3)]),
        ..compressed.clone()
    };
    assert!(encode(&compressed).len() < encode(&full).len());
}

#[test]
fn truncated_after_tag() {
    let bytes = fixture("via_edges_diamond.bin");
    assert_eq!(decode(&bytes[..13]), Err(CodecError::Truncated));
    let mut magic = bytes.clone();
    magic[..4].copy_from_slice(b"XXXX");
    assert_eq!(decode(&magic), Err(CodecError::BadMagic));
}

fn node(wide: bool) -> BoxedStrategy<NodeId> {
    if wide {
        any::<NodeId>().boxed()
    } else {
        (0..1u32 << 14).boxed()
    }
}

fn message(wide: bool) -> impl Strategy<Value = RouteMessage> {
    let n = node(wide);
    let edges = prop::collection::vec((n.clone(), n.clone()), 0..60);
    let ch_edges = prop::collection::vec((n.clone(), n.clone(), any::<bool>()), 0..60)
        .prop_map(|v| v.into_iter().map(|(tail, head, shortcut)| ChEdge { tail, head, shortcut }).collect::<Vec<_>>());
    let body = prop_oneof![
        edges.prop_map(|v| RouteBody::ViaEdges(v.into_iter().map(|(t, h)| EdgeRef::new(t, h)).collect())),
        prop::collection::vec(n.clone(), 0..60).prop_map(RouteBody::ViaNodes),
        ch_edges.clone().prop_map(RouteBody::ChPath),
        ch_edges.prop_map(RouteBody::Combined),
    ];
    (any::<u64>(), n.clone(), n, body).prop_map(|(map_version, source, target, body)| RouteMessage {
        map_version,
        source,
        target,
        body,
    })
}

fn bitmap_len(m: &RouteMessage) -> usize {
    match m.body {
        RouteBody::ChPath(_) | RouteBody::Combined(_) => m.body.len().div_ceil(8),
        _ => 0,
    }
}

fn truncate(m: &RouteMessage, k: usize) -> RouteMessage {
    let mut m = m.clone();
    match &mut m.body {
        RouteBody::ViaEdges(v) => v.truncate(k),
        RouteBody::ViaNodes(v) => v.truncate(k),
        RouteBody::ChPath(v) | RouteBody::Combined(v) => v.truncate(k),
    }
    m
}

proptest! {
    #[test]
    fn roundtrip(m in prop_oneof![message(false), message(true)]) {
        let bytes = encode(&m);
        prop_assert_eq!(decode(&bytes).unwrap(), m.clone());
        prop_assert_eq!(encode(&decode(&bytes).unwrap()), bytes);
    }

    #[test]
    fn size_bound_for_small_ids(m in message(false)) {
        let k = m.body.len();
        prop_assert!(encode(&m).len() <= 15 + 5 + 10 * k + bitmap_len(&m));
    }

    #[test]
    fn size_bound_for_any_ids(m in message(true)) {
        let k = m.body.len();
        prop_assert!(encode(&m).len() <= 28 + 10 * k + bitmap_len(&m));
    }

    #[test]
    fn size_is_monotone_in_via_count(m in prop_oneof![message(false), message(true)]) {
        let sizes: Vec<usize> = (0..=m.body.len()).map(|k| encode(&truncate(&m, k)).len()).collect();
        prop_assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn arbitrary_bytes_never_panic(bytes in prop::collection::vec(any::<u8>(), 0..80)) {
        let _ = decode(&bytes);
        let mut tagged = b"RTC1".to_vec();
        tagged.extend_from_slice(&bytes);
        let _ = decode(&tagged);
    }

    #[test]
    fn mutated_messages_never_panic(
        m in message(true),
        edits in prop::collection::vec((any::<prop::sample::Index>(), any::<u8>(), 0..3u8), 1..5),
    ) {
        let mut bytes = encode(&m);
        for (at, byte, op) in edits {
            match op {
                0 if !bytes.is_empty() => { let i = at.index(bytes.len()); bytes[i] = byte; }
                1 if !bytes.is_empty() => { let i = at.index(bytes.len()); bytes.truncate(i); }
                _ => { let i = at.index(bytes.len() + 1); bytes.insert(i, byte); }
            }
        }
        if let Ok(back) = decode(&bytes) {
            // anything accepted must re-encode to a decodable message
            prop_assert_eq!(decode(&encode(&back)).unwrap(), back);
        }
    }
}

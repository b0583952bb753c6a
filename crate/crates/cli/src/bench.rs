use std::io::Write;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use routezip::codec::{decode, encode};
use routezip::{Path, RouteContext, RouteError, Scheme};

#[derive(Clone, Debug)]
pub struct BenchRow {
    pub path_id: usize,
    pub method: Scheme,
    pub path_len: usize,
    /// Via edges, via nodes or shortcut-path edges, depending on the method.
    pub repr_len: usize,
    pub payload_bytes: usize,
    pub compress_queries: u64,
    pub decompress_queries: u64,
    pub compress_time: Duration,
    pub decompress_time: Duration,
    pub roundtrip: bool,
}

pub const HEADER: &str = "path\tmethod\tpath_len\trepr_len\tpayload_bytes\tcompress_queries\tdecompress_queries\tcompress_us\tdecompress_us\troundtrip";

impl BenchRow {
    pub fn write_tsv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.path_id,
            self.method,
            self.path_len,
            self.repr_len,
            self.payload_bytes,
            self.compress_queries,
            self.decompress_queries,
            self.compress_time.as_micros(),
            self.decompress_time.as_micros(),
            self.roundtrip
        )
    }
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("path {path_id}, {method}: {source}")]
    Route {
        path_id: usize,
        method: Scheme,
        source: RouteError,
    },
    #[error("path {path_id}, {method}: decompressed path differs from the input")]
    Roundtrip { path_id: usize, method: Scheme },
}

impl BenchError {
    pub fn is_usage(&self) -> bool {
        matches!(self, BenchError::Route { source, .. } if source.is_usage())
    }
}

fn measure(
    ctx: &RouteContext<'_, u64>,
    path_id: usize,
    method: Scheme,
    p: &Path,
) -> Result<BenchRow, BenchError> {
    let route_err = |source| BenchError::Route { path_id, method, source };
    let before = ctx.query_count();
    let t = Instant::now();
    let msg = ctx.compress(method, p.edges()).map_err(route_err)?;
    let bytes = encode(&msg);
    let compress_time = t.elapsed();
    let compress_queries = ctx.query_count() - before;

    let before = ctx.query_count();
    let t = Instant::now();
    let decoded = decode(&bytes).expect("freshly encoded message decodes");
    let back = ctx.decompress(&decoded).map_err(route_err)?;
    let decompress_time = t.elapsed();
    let decompress_queries = ctx.query_count() - before;

    if back != *p {
        return Err(BenchError::Roundtrip { path_id, method });
    }
    Ok(BenchRow {
        path_id,
        method,
        path_len: p.len(),
        repr_len: msg.body.len(),
        payload_bytes: bytes.len(),
        compress_queries,
        decompress_queries,
        compress_time,
        decompress_time,
        roundtrip: true,
    })
}

/// Runs every method on every path. Paths are spread over the rayon pool,
/// each worker with its own context from `make_ctx`; rows come back in
/// input order (path, then method).
pub fn run<'g, F>(paths: &[Path], methods: &[Scheme], make_ctx: F) -> Result<Vec<BenchRow>, BenchError>
where
    F: Fn() -> RouteContext<'g, u64> + Sync,
{
    let per_path: Vec<Result<Vec<BenchRow>, BenchError>> = paths
        .par_iter()
        .enumerate()
        .map_init(&make_ctx, |ctx, (path_id, p)| {
            methods.iter().map(|&m| measure(ctx, path_id, m, p)).collect()
        })
        .collect();
    let mut rows = Vec::with_capacity(paths.len() * methods.len());
    for r in per_path {
        rows.extend(r?);
    }
    Ok(rows)
}

//! `exact`: exhaustive small-n component law, exported as JSON.

use clap::Args as ClapArgs;
use rayon::prelude::*;
use serde_json::json;

use giantscope_core::exact::{edge_slots, enumerate_chunk, finish, PartialTable, MAX_EXACT_N};

use crate::commands::check;
use crate::error::CliError;
use crate::jsonio::write_json;
use crate::meta::Meta;
use crate::Cli;

#[derive(ClapArgs, Debug)]
pub struct Args {
    /// Vertex count (at most 8)
    #[arg(long)]
    pub n: usize,

    /// Edge probability
    #[arg(long)]
    pub p: f64,
}

/// Fixed shard count: the merge order (and hence the bitwise result) does
/// not depend on how many workers happen to run.
const SHARDS: u64 = 64;

pub fn run(cli: &Cli, args: &Args) -> Result<(), CliError> {
    check(
        args.n >= 1 && args.n <= MAX_EXACT_N,
        "exact enumeration needs 1 <= n <= 8",
    )?;
    check((0.0..=1.0).contains(&args.p), "p must lie in [0, 1]")?;

    let total = 1u64 << edge_slots(args.n);
    let shards = SHARDS.min(total);
    let parts: Vec<PartialTable> = (0..shards)
        .into_par_iter()
        .map(|s| {
            let lo = s * (total / shards) + (s).min(total % shards);
            let hi = lo + total / shards + u64::from(s < total % shards);
            enumerate_chunk(args.n, args.p, lo, hi).expect("n validated")
        })
        .collect();
    let mut merged = PartialTable::default();
    for part in parts {
        merged.merge(part);
    }
    let dist = finish(args.n, args.p, merged);

    let entries: Vec<serde_json::Value> = dist
        .table()
        .iter()
        .map(|(key, &prob)| {
            json!({
                "count": key.count(),
                "sizes": key.sizes().collect::<Vec<u32>>(),
                "excess": key.0.iter().map(|p| p.1).collect::<Vec<u32>>(),
                "prob": prob,
            })
        })
        .collect();

    let mut meta = Meta::new("exact");
    meta.push("n", args.n).push("p", args.p);
    write_json(
        &cli.out.join("exact.json"),
        &meta,
        json!({
            "n": dist.n(),
            "p": dist.p(),
            "total_mass": dist.total_mass(),
            "mean_count": dist.mean_count(),
            "mean_total_excess": dist.mean_total_excess(),
            "entries": entries,
        }),
    )
}

//! `simulate`: Monte Carlo over the saturation process (or the direct
//! pair sampler), exporting the component spectra.

use clap::Args as ClapArgs;

use giantscope_core::exploration::{components, explore, sample_direct, ComponentSpectrum, GraphParams};
use giantscope_core::RngSeed;

use crate::commands::check;
use crate::csvio::CsvWriter;
use crate::error::CliError;
use crate::harness::par_replications;
use crate::meta::Meta;
use crate::{forbid_seedless, Cli};

#[derive(ClapArgs, Debug)]
pub struct Args {
    /// Vertex count
    #[arg(long)]
    pub n: usize,

    /// Edge intensity; the edge probability is c/n
    #[arg(long)]
    pub c: f64,

    /// Number of replications
    #[arg(long, default_value_t = 1000)]
    pub reps: u64,

    /// Master seed; replication r uses stream (seed, r)
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Sample by flipping all n(n-1)/2 edge coins instead of exploring
    #[arg(long)]
    pub direct: bool,

    /// Also export the full trace of replication 0 (saturation process only)
    #[arg(long)]
    pub trace: bool,
}

pub fn run(cli: &Cli, args: &Args) -> Result<(), CliError> {
    forbid_seedless(cli)?;
    check(args.reps >= 1, "need at least one replication")?;
    let params = GraphParams::new(args.n, args.c)
        .map_err(|e| CliError::validation(e.to_string()))?;
    check(
        !(args.direct && args.n > 100_000),
        "the direct sampler is limited to n <= 100000",
    )?;
    check(
        !(args.direct && args.trace),
        "--trace requires the saturation process (drop --direct)",
    )?;

    let mut meta = Meta::new("simulate");
    meta.push("n", args.n)
        .push("c", args.c)
        .push("reps", args.reps)
        .push("seed", args.seed)
        .push("sampler", if args.direct { "direct" } else { "explore" });

    let specs: Vec<ComponentSpectrum> = if args.direct {
        par_replications(args.reps, args.seed, |seed| {
            sample_direct(&params, seed).expect("capacity checked above")
        })
    } else {
        par_replications(args.reps, args.seed, |seed| {
            components(&explore(&params, seed)).expect("explore yields valid traces")
        })
    };

    let mut spectrum = CsvWriter::create(
        &cli.out.join("spectrum.csv"),
        &meta,
        &["replication", "rank", "size", "excess"],
    )?;
    let mut summary = CsvWriter::create(
        &cli.out.join("summary.csv"),
        &meta,
        &["replication", "count", "largest", "largest_excess"],
    )?;
    for (r, spec) in specs.iter().enumerate() {
        for (rank, (&s, &e)) in spec.sizes().iter().zip(spec.excess()).enumerate() {
            spectrum.row(&[r.to_string(), rank.to_string(), s.to_string(), e.to_string()])?;
        }
        summary.row(&[
            r.to_string(),
            spec.count().to_string(),
            spec.largest().to_string(),
            spec.largest_excess().to_string(),
        ])?;
    }
    spectrum.finish()?;
    summary.finish()?;

    if args.trace {
        let trace = explore(&params, RngSeed::new(args.seed, 0));
        let mut out = CsvWriter::create(
            &cli.out.join("trace.csv"),
            &meta,
            &["i", "v", "q", "e", "phi", "s"],
        )?;
        for i in 0..=trace.n() {
            out.row(&[
                i.to_string(),
                trace.v()[i].to_string(),
                trace.q()[i].to_string(),
                trace.e()[i].to_string(),
                trace.phi()[i].to_string(),
                trace.s()[i].to_string(),
            ])?;
        }
        out.finish()?;
    }
    Ok(())
}

//! `clt-check`: empirical fluctuation moments of (count, largest, excess)
//! against the Gaussian limit parameters, as a JSON report.

use clap::Args as ClapArgs;
use serde_json::json;

use giantscope_core::exploration::{components, explore, GraphParams};
use giantscope_core::limits::clt_params;
use giantscope_core::rates::lln_constants;

use crate::commands::check;
use crate::error::CliError;
use crate::harness::mc_harness;
use crate::jsonio::write_json;
use crate::meta::Meta;
use crate::{forbid_seedless, Cli};

#[derive(ClapArgs, Debug)]
pub struct Args {
    /// Limiting intensity c
    #[arg(long)]
    pub c: f64,

    /// Vertex count per replication
    #[arg(long, default_value_t = 100_000)]
    pub n: usize,

    /// Replications
    #[arg(long, default_value_t = 10_000)]
    pub reps: u64,

    /// Master seed
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Drift: the run uses c_n = c + theta / sqrt(n)
    #[arg(long, default_value_t = 0.0)]
    pub theta: f64,
}

pub fn run(cli: &Cli, args: &Args) -> Result<(), CliError> {
    forbid_seedless(cli)?;
    check(args.c > 0.0 && args.c.is_finite(), "--c must be positive")?;
    check(args.n >= 10, "--n too small for a fluctuation check")?;
    check(args.reps >= 2, "need at least two replications")?;

    let n = args.n;
    let sqrt_n = (n as f64).sqrt();
    let c_n = args.c + args.theta / sqrt_n;
    check(c_n >= 0.0, "drifted intensity became negative")?;
    let params = GraphParams::new(n, c_n).map_err(|e| CliError::validation(e.to_string()))?;
    let (alpha, beta, gamma) = lln_constants(args.c);
    let limit = clt_params(args.c, args.theta);

    let names = ["alpha_fluct", "beta_fluct", "gamma_fluct"];
    let summary = mc_harness(&names, args.reps, args.seed, |seed| {
        let spec = components(&explore(&params, seed)).expect("valid trace");
        vec![
            sqrt_n * (spec.count() as f64 / n as f64 - alpha),
            sqrt_n * (spec.largest() as f64 / n as f64 - beta),
            sqrt_n * (spec.largest_excess() as f64 / n as f64 - gamma),
        ]
    });

    let mut rows = Vec::new();
    for (i, stat) in summary.stats.iter().enumerate() {
        let limit_var = limit.cov[i][i];
        rows.push(json!({
            "statistic": stat.statistic,
            "empirical_mean": stat.mean,
            "limit_mean": limit.mean[i],
            "stderr": stat.stderr,
            "z_score": if stat.stderr > 0.0 { (stat.mean - limit.mean[i]) / stat.stderr } else { 0.0 },
            "empirical_var": stat.var,
            "limit_var": limit_var,
            "var_ratio": if limit_var > 0.0 { stat.var / limit_var } else { f64::NAN },
        }));
    }
    let corr_emp = summary.correlation(0, 1);
    let corr_limit = if limit.valid_beta_gamma {
        limit.cov[0][1] / (limit.cov[0][0] * limit.cov[1][1]).sqrt()
    } else {
        f64::NAN
    };

    let mut meta = Meta::new("clt-check");
    meta.push("c", args.c)
        .push("n", args.n)
        .push("reps", args.reps)
        .push("seed", args.seed)
        .push("theta", args.theta);
    write_json(
        &cli.out.join("clt_check.json"),
        &meta,
        json!({
            "reps": summary.reps,
            "seed": summary.seed,
            "valid_beta_gamma": limit.valid_beta_gamma,
            "statistics": rows,
            "corr_alpha_beta": { "empirical": corr_emp, "limit": corr_limit },
        }),
    )
}

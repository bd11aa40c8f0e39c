//! `rates`: evaluate a named rate function over a one-dimensional grid
//! (CSV), with the solver-backed entries cross-checked against their
//! independent grid-scan twins.

use clap::Args as ClapArgs;

use giantscope_core::critical as crit;
use giantscope_core::rates::{self, RateParams, SpectrumQuery};

use crate::commands::{check, require, GridSpec};
use crate::csvio::CsvWriter;
use crate::error::CliError;
use crate::meta::Meta;
use crate::svg::{line_plot, Series, PALETTE};
use crate::Cli;

#[derive(ClapArgs, Debug)]
pub struct Args {
    /// Which function to evaluate (see README for the list)
    #[arg(long = "fn")]
    pub function: String,

    /// Edge intensity c
    #[arg(long)]
    pub c: Option<f64>,

    /// Evaluation grid for the running variable
    #[arg(long)]
    pub grid: Option<GridSpec>,

    /// Component sizes (comma list, non-increasing)
    #[arg(long, value_delimiter = ',')]
    pub u: Option<Vec<f64>>,

    /// Excess-edge densities aligned with --u (comma list)
    #[arg(long, value_delimiter = ',')]
    pub r: Option<Vec<f64>>,

    /// Component-count density
    #[arg(long)]
    pub a: Option<f64>,

    /// Drift parameter for the critical-window functions
    #[arg(long)]
    pub theta: Option<f64>,

    /// Exploration intensity for the K kernel
    #[arg(long)]
    pub rho: Option<f64>,
}

fn params(args: &Args, cli: &Cli) -> Result<RateParams, CliError> {
    let c = require(args.c, "--c")?;
    check(c > 0.0 && c.is_finite(), "--c must be positive")?;
    let mut p = RateParams::new(c);
    if let Some(tol) = cli.tol {
        check(tol > 0.0, "--tol must be positive")?;
        p = p.with_tol(tol);
    }
    Ok(p)
}

fn grid_in(args: &Args, lo: f64, hi: f64, what: &str) -> Result<Vec<f64>, CliError> {
    let g = require(args.grid, "--grid")?;
    check(
        g.lo >= lo && g.hi <= hi,
        &format!("--grid must lie within [{lo}, {hi}] for {what}"),
    )?;
    Ok(g.points())
}

fn single(v: &Option<Vec<f64>>, what: &str) -> Result<f64, CliError> {
    match v.as_deref() {
        Some([x]) => Ok(*x),
        _ => Err(CliError::validation(format!("{what} needs exactly one value"))),
    }
}

fn internal(e: rates::SelfCheckError) -> CliError {
    CliError::internal(e.to_string())
}

pub fn run(cli: &Cli, args: &Args) -> Result<(), CliError> {
    // (grid variable name, value column names, rows)
    let (var, cols, rows): (&str, Vec<String>, Vec<Vec<f64>>) = match args.function.as_str() {
        "pi" => {
            let g = grid_in(args, 0.0, f64::INFINITY, "pi")?;
            evaluate(g, "pi", |x| Ok(vec![rates::pi_fn(x)]))?
        }
        "k_rho" => {
            let rho = require(args.rho, "--rho")?;
            check(rho >= 0.0, "--rho must be non-negative")?;
            let g = grid_in(args, 0.0, 1.0, "k_rho")?;
            evaluate(g, "k_rho", |u| Ok(vec![rates::k_rho(u, rho)]))?
        }
        "l_c" => {
            let p = params(args, cli)?;
            let g = grid_in(args, 0.0, 1.0, "l_c")?;
            evaluate(g, "l_c", |u| Ok(vec![rates::l_c(u, p.c())]))?
        }
        "beta" => {
            let g = grid_in(args, 1e-9, f64::INFINITY, "beta")?;
            evaluate(g, "beta", |c| Ok(vec![rates::beta_fp(c)]))?
        }
        "lln" => {
            let g = grid_in(args, 1e-9, f64::INFINITY, "lln")?;
            let mut rows = Vec::with_capacity(g.len());
            for &c in &g {
                let (a, b, gm) = rates::lln_constants(c);
                rows.push(vec![c, a, b, gm]);
            }
            ("c", vec!["alpha".into(), "beta".into(), "gamma".into()], rows)
        }
        "r_star" => {
            let p = params(args, cli)?;
            let g = grid_in(args, 0.0, 1.0, "r_star")?;
            evaluate(g, "r_star", |u| Ok(vec![rates::r_star(u, p.c())]))?
        }
        "k_star" => {
            let p = params(args, cli)?;
            let r = single(&args.r, "--r")?;
            check(r >= 0.0, "--r must be non-negative")?;
            let g = grid_in(args, 0.0, 1.0, "k_star")?;
            evaluate(g, "k_star", |u| {
                rates::k_star_checked(u, r, &p).map(|v| vec![v]).map_err(internal)
            })?
        }
        "i_alpha" => {
            let p = params(args, cli)?;
            let g = grid_in(args, 0.0, 1.0, "i_alpha")?;
            evaluate(g, "i_alpha", |a| {
                rates::i_alpha_checked(a, &p).map(|v| vec![v]).map_err(internal)
            })?
        }
        "tau_star" => {
            let p = params(args, cli)?;
            let g = grid_in(args, 0.0, 1.0, "tau_star")?;
            evaluate(g, "tau_star", |a| Ok(vec![rates::tau_star_with(a, &p)]))?
        }
        "i_beta" => {
            let p = params(args, cli)?;
            let g = grid_in(args, 0.0, 1.0, "i_beta")?;
            evaluate(g, "i_beta", |u| Ok(vec![rates::i_beta_with(u, &p)]))?
        }
        "i_beta_oconnell" => {
            let p = params(args, cli)?;
            check(p.c() > 1.0, "O'Connell's form needs c > 1")?;
            let g = grid_in(args, 1e-9, 1.0, "i_beta_oconnell")?;
            evaluate(g, "i_beta", |u| Ok(vec![rates::i_beta_oconnell(u, &p)]))?
        }
        "i_beta_gamma" => {
            let p = params(args, cli)?;
            let r = single(&args.r, "--r")?;
            check(r >= 0.0, "--r must be non-negative")?;
            let g = grid_in(args, 0.0, 1.0, "i_beta_gamma")?;
            evaluate(g, "i_beta_gamma", |u| Ok(vec![rates::i_beta_gamma_with(u, r, &p)]))?
        }
        "i_alpha_beta_gamma" => {
            let p = params(args, cli)?;
            let u = single(&args.u, "--u")?;
            let r = single(&args.r, "--r")?;
            check((0.0..=1.0).contains(&u) && r >= 0.0, "--u in [0,1], --r >= 0")?;
            let g = grid_in(args, 0.0, 1.0, "i_alpha_beta_gamma")?;
            evaluate(g, "i_alpha_beta_gamma", |a| {
                Ok(vec![rates::i_alpha_beta_gamma_with(a, u, r, &p)])
            })?
        }
        "i_joint" => {
            let p = params(args, cli)?;
            let u = args.u.clone().unwrap_or_default();
            let r = args.r.clone().unwrap_or_default();
            check(r.len() <= u.len(), "--r longer than --u")?;
            let g = grid_in(args, 0.0, 1.0, "i_joint")?;
            evaluate(g, "i_joint", |a| {
                let q = SpectrumQuery::new(a, u.clone(), r.clone());
                Ok(vec![rates::i_joint_with(&q, &p)])
            })?
        }
        "i_u" => {
            let p = params(args, cli)?;
            let u = args.u.clone().unwrap_or_default();
            let total: f64 = u.iter().sum();
            check(total <= 1.0, "sum of --u exceeds 1")?;
            ("row", vec!["i_u".into()], vec![vec![0.0, rates::i_u(&u, p.c())]])
        }
        "i_ur" => {
            let p = params(args, cli)?;
            let u = args.u.clone().unwrap_or_default();
            let r = args.r.clone().unwrap_or_default();
            check(u.len() == r.len(), "--u and --r must align")?;
            check(u.iter().sum::<f64>() <= 1.0, "sum of --u exceeds 1")?;
            ("row", vec!["i_ur".into()], vec![vec![0.0, rates::i_ur_with(&u, &r, &p)]])
        }
        "stepanov" => {
            let p = params(args, cli)?;
            let g = require(args.grid, "--grid")?.points();
            evaluate(g, "stepanov_s", |lam| Ok(vec![rates::stepanov_s_with(lam, &p)]))?
        }
        "legendre" => {
            let p = params(args, cli)?;
            let g = require(args.grid, "--grid")?.points();
            evaluate(g, "legendre_of_i_alpha", |lam| {
                Ok(vec![rates::i_alpha_legendre(lam, &p)])
            })?
        }
        "bidual" => {
            let p = params(args, cli)?;
            let g = grid_in(args, 0.0, 1.0, "bidual")?;
            evaluate(g, "bidual_of_stepanov", |a| {
                Ok(vec![rates::stepanov_bidual(a, -25.0, 25.0, &p)])
            })?
        }
        "breve_i_beta" => {
            let theta = require(args.theta, "--theta")?;
            let g = grid_in(args, 0.0, f64::INFINITY, "breve_i_beta")?;
            evaluate(g, "breve_i_beta", |u| Ok(vec![crit::breve_i_beta(u, theta)]))?
        }
        "breve_i_u" => {
            let theta = require(args.theta, "--theta")?;
            let u = args.u.clone().unwrap_or_default();
            ("row", vec!["breve_i_u".into()], vec![vec![0.0, crit::breve_i_u(&u, theta)]])
        }
        "breve_i_ur" => {
            let theta = require(args.theta, "--theta")?;
            let u = args.u.clone().unwrap_or_default();
            let r = args.r.clone().unwrap_or_default();
            check(u.len() == r.len(), "--u and --r must align")?;
            (
                "row",
                vec!["breve_i_ur".into()],
                vec![vec![0.0, crit::breve_i_ur(&u, &r, theta)]],
            )
        }
        other => {
            return Err(CliError::validation(format!(
                "unknown rate function `{other}` (see README for the list)"
            )))
        }
    };

    let mut meta = Meta::new("rates");
    meta.push("fn", &args.function);
    if let Some(c) = args.c {
        meta.push("c", c);
    }
    if let Some(g) = args.grid {
        meta.push("grid", format!("{}:{}:{}", g.lo, g.hi, g.step));
    }
    if let Some(u) = &args.u {
        meta.push("u", format!("{u:?}"));
    }
    if let Some(r) = &args.r {
        meta.push("r", format!("{r:?}"));
    }
    if let Some(t) = args.theta {
        meta.push("theta", t);
    }
    if let Some(rho) = args.rho {
        meta.push("rho", rho);
    }

    let mut header: Vec<&str> = vec![var];
    header.extend(cols.iter().map(|s| s.as_str()));
    let path = cli.out.join(format!("rates_{}.csv", args.function));
    let mut out = CsvWriter::create(&path, &meta, &header)?;
    for row in &rows {
        out.row_f64(row)?;
    }
    out.finish()?;

    if cli.svg && rows.len() > 1 {
        let series: Vec<Series> = cols
            .iter()
            .enumerate()
            .map(|(j, label)| Series {
                label: label.clone(),
                points: rows.iter().map(|row| (row[0], row[j + 1])).collect(),
                color: PALETTE[j % PALETTE.len()],
            })
            .collect();
        let svg = line_plot(&format!("{} ({})", args.function, meta_c(args)), var, "value", &series);
        std::fs::write(cli.out.join(format!("rates_{}.svg", args.function)), svg)?;
    }
    Ok(())
}

fn meta_c(args: &Args) -> String {
    match (args.c, args.theta) {
        (Some(c), _) => format!("c = {c}"),
        (None, Some(t)) => format!("theta = {t}"),
        _ => String::new(),
    }
}

type Table = (&'static str, Vec<String>, Vec<Vec<f64>>);

fn evaluate<F>(grid: Vec<f64>, col: &str, mut f: F) -> Result<Table, CliError>
where
    F: FnMut(f64) -> Result<Vec<f64>, CliError>,
{
    let mut rows = Vec::with_capacity(grid.len());
    for &x in &grid {
        let mut row = vec![x];
        row.extend(f(x)?);
        rows.push(row);
    }
    Ok(("x", vec![col.to_string()], rows))
}

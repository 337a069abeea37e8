use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};

use netquench::enumeration::{
    bollobas_regular_count_log, catalan_asymptotic_log, catalan_coefficient,
    connected_counts_harary, connected_counts_riordan, connected_labeled_egf_log,
    count_all_labeled_graphs, count_labeled_graphs_with_edges, ln_labeled_graphs, pairs,
    rarity_ratio_log, unlabeled_regular_count_log, wright_condition_value, LogValue,
};

use crate::Sink;

#[derive(Clone, Copy, ValueEnum)]
pub enum Table {
    /// `p,C_p`: connected labeled graphs.
    Connected,
    /// `p,G_p`: all labeled graphs.
    All,
    /// `k,count`: labeled graphs on `--p` vertices with `k` edges.
    Edges,
    /// `n,ln_L,ln_U`: asymptotic labeled and unlabeled `--r`-regular counts.
    RegularAsym,
    /// `n,ln_L,ln_G,ln_ratio`: fraction of labeled graphs that are `--r`-regular.
    Rarity,
    /// `n,f_n,ln_exact,ln_asym,ratio`: Catalan numbers against their asymptotic form.
    Catalan,
    /// `q,value`: Wright's condition value for `--n` vertices and `q` edges.
    Wright,
}

#[derive(Clone, Copy, ValueEnum, Default)]
pub enum Method {
    #[default]
    Harary,
    Riordan,
    Egf,
}

#[derive(Args)]
pub struct EnumArgs {
    table: Table,
    #[arg(long)]
    pmin: Option<u64>,
    #[arg(long)]
    pmax: Option<u64>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    r: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    nmin: Option<u64>,
    #[arg(long)]
    nmax: Option<u64>,
    #[arg(long)]
    qmin: Option<u64>,
    #[arg(long)]
    qmax: Option<u64>,
    /// Route for `connected`.
    #[arg(long, value_enum, default_value_t)]
    method: Method,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn range(lo: u64, hi: u64, what: &str) -> Result<std::ops::RangeInclusive<u64>> {
    if lo > hi {
        bail!("empty {what} range {lo}..={hi}");
    }
    Ok(lo..=hi)
}

pub fn run(args: &EnumArgs, sink: &Sink) -> Result<ExitCode> {
    let body = match args.table {
        Table::Connected => connected(args)?,
        Table::All => all(args)?,
        Table::Edges => edges(args)?,
        Table::RegularAsym => regular_asym(args)?,
        Table::Rarity => rarity(args)?,
        Table::Catalan => catalan(args)?,
        Table::Wright => wright(args)?,
    };
    sink.emit(args.out.as_deref(), &body)?;
    Ok(ExitCode::SUCCESS)
}

fn connected(args: &EnumArgs) -> Result<String> {
    let pmax = args.pmax.unwrap_or(20);
    let ps = range(args.pmin.unwrap_or(1).max(1), pmax, "p")?;
    let counts = match args.method {
        Method::Harary => connected_counts_harary(pmax)?,
        Method::Riordan => connected_counts_riordan(pmax),
        Method::Egf => connected_labeled_egf_log(pmax as usize)?,
    };
    let mut out = String::from("p,C_p\n");
    for p in ps {
        writeln!(out, "{p},{}", counts[p as usize - 1])?;
    }
    Ok(out)
}

fn all(args: &EnumArgs) -> Result<String> {
    let mut out = String::from("p,G_p\n");
    for p in range(args.pmin.unwrap_or(1), args.pmax.unwrap_or(20), "p")? {
        writeln!(out, "{p},{}", count_all_labeled_graphs(p))?;
    }
    Ok(out)
}

fn edges(args: &EnumArgs) -> Result<String> {
    let p = args.p.context("--p is required for edges")?;
    let mut out = String::from("k,count\n");
    for k in 0..=pairs(p) {
        writeln!(out, "{k},{}", count_labeled_graphs_with_edges(p, k)?)?;
    }
    Ok(out)
}

fn regular_ns(args: &EnumArgs, r: u64) -> Result<impl Iterator<Item = u64>> {
    let ns = range(
        args.nmin.unwrap_or(r + 1).max(r + 1),
        args.nmax.unwrap_or(60),
        "n",
    )?;
    Ok(ns.filter(move |n| (n * r).is_multiple_of(2)))
}

fn regular_asym(args: &EnumArgs) -> Result<String> {
    let r = args.r.context("--r is required for regular-asym")?;
    let mut out = String::from("n,ln_L,ln_U\n");
    for n in regular_ns(args, r)? {
        let labeled = bollobas_regular_count_log(n, r)?;
        // the unlabeled estimate needs degree at least 3
        let unlabeled = unlabeled_regular_count_log(n, r)
            .map(|u| u.ln().to_string())
            .unwrap_or_default();
        writeln!(out, "{n},{},{unlabeled}", labeled.ln())?;
    }
    Ok(out)
}

fn rarity(args: &EnumArgs) -> Result<String> {
    let r = args.r.context("--r is required for rarity")?;
    let mut out = String::from("n,ln_L,ln_G,ln_ratio\n");
    for n in regular_ns(args, r)? {
        let ln_l = bollobas_regular_count_log(n, r)?.ln();
        writeln!(
            out,
            "{n},{ln_l},{},{}",
            ln_labeled_graphs(n),
            rarity_ratio_log(n, r)?
        )?;
    }
    Ok(out)
}

fn catalan(args: &EnumArgs) -> Result<String> {
    let mut out = String::from("n,f_n,ln_exact,ln_asym,ratio\n");
    for n in range(args.nmin.unwrap_or(2).max(2), args.nmax.unwrap_or(200), "n")? {
        let exact = catalan_coefficient(n)?;
        let ln_exact = LogValue::of_biguint(&exact).context("zero Catalan number")?;
        let asym = catalan_asymptotic_log(n)?;
        let ratio = (ln_exact / asym).exp();
        writeln!(out, "{n},{exact},{},{},{ratio}", ln_exact.ln(), asym.ln())?;
    }
    Ok(out)
}

fn wright(args: &EnumArgs) -> Result<String> {
    let n = args.n.context("--n is required for wright")?;
    let q_all = pairs(n);
    let mut out = String::from("q,value\n");
    for q in range(args.qmin.unwrap_or(0), args.qmax.unwrap_or(q_all), "q")? {
        writeln!(out, "{q},{}", wright_condition_value(n, q)?)?;
    }
    Ok(out)
}

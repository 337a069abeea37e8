use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use netquench::generate::{barabasi_albert, erdos_renyi, random_regular, ring};
use netquench::oracle::Budget;
use netquench::{
    io, select_nodes, simulate, spectral_radius, threshold_check, tune_betas, verify,
    verify_stabilization, EpidemicState, EstimateKind, Graph, NodeParams, SimulationConfig,
    SpectralOptions, Stability, Verdict, DEFAULT_KAPPA, DEFAULT_MARGINAL_BAND,
};

mod enumerate;

#[derive(Parser)]
#[command(
    name = "netquench",
    version,
    about = "SIS epidemic thresholds, control-node selection and graph enumeration"
)]
struct Cli {
    /// Omit the timestamp header line from generated files.
    #[arg(long, global = true)]
    reproducible: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph as an edge list.
    Generate(GenerateArgs),
    /// Spectral radius, threshold verdict and Gerschgorin margins as JSON.
    Analyze(AnalyzeArgs),
    /// Tune beta on flagged nodes and report the resulting spectral radius.
    Control(ControlArgs),
    /// Run the SIS dynamics and report extinct / endemic / undecided.
    Simulate(SimulateArgs),
    /// Exact and asymptotic graph counts as CSV.
    #[command(name = "enum")]
    Enumerate(enumerate::EnumArgs),
    /// Cross-check fast routines against brute-force oracles.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphKind {
    Ring,
    Regular,
    Ba,
    Er,
}

#[derive(Args)]
struct GenerateArgs {
    kind: GraphKind,
    #[arg(long)]
    n: usize,
    /// Degree for `regular`.
    #[arg(long)]
    r: Option<usize>,
    /// Seed clique size for `ba`.
    #[arg(long)]
    m0: Option<usize>,
    /// Edges per arriving vertex for `ba`.
    #[arg(long)]
    m: Option<usize>,
    /// Edge probability for `er`.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpectralArgs {
    /// Convergence tolerance on successive spectral estimates.
    #[arg(long, default_value_t = SpectralOptions::default().tol)]
    spectral_tol: f64,
    #[arg(long = "max-iter", default_value_t = SpectralOptions::default().max_iter)]
    max_iter: usize,
    /// Half-width of the marginal band around sigma = 1.
    #[arg(long, default_value_t = DEFAULT_MARGINAL_BAND)]
    band: f64,
}

impl SpectralArgs {
    fn options(&self) -> SpectralOptions {
        SpectralOptions {
            tol: self.spectral_tol,
            max_iter: self.max_iter,
        }
    }
}

#[derive(Args)]
struct InputArgs {
    /// Edge-list file.
    #[arg(long)]
    graph: PathBuf,
    /// Params CSV (`node,mu,beta,r`) or `homogeneous:<mu>:<beta>:<r>`.
    #[arg(long)]
    params: String,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    spectral: SpectralArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ControlArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = DEFAULT_KAPPA)]
    kappa: f64,
    /// Where to write the tuned params CSV.
    #[arg(long)]
    out_params: Option<PathBuf>,
    /// Where to write the plan CSV (`node,beta_old,beta_new`).
    #[arg(long)]
    out_plan: Option<PathBuf>,
    /// Where to write the selection CSV for the original params.
    #[arg(long)]
    out_selection: Option<PathBuf>,
    #[command(flatten)]
    spectral: SpectralArgs,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    input: InputArgs,
    /// `uniform:<v>`, `single:<node>:<v>`, or a CSV path with `node,p`.
    #[arg(long, default_value = "uniform:0.2")]
    p0: String,
    #[arg(long, default_value_t = SimulationConfig::default().max_steps)]
    max_steps: usize,
    /// Extinction threshold on max_i p_i.
    #[arg(long, default_value_t = SimulationConfig::default().extinct_tol)]
    tol: f64,
    /// Plateau length for an endemic verdict.
    #[arg(long, default_value_t = SimulationConfig::default().endemic_window)]
    window: usize,
    /// Trajectory CSV (`t,node,p`); omitted when not given.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Summary CSV (`verdict,steps,sigma`); always also printed.
    #[arg(long)]
    summary: Option<PathBuf>,
    #[command(flatten)]
    spectral: SpectralArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Raise the brute-force caps.
    #[arg(long)]
    expensive: bool,
}

/// Destination for generated text, adding a timestamp line unless reproducible.
pub struct Sink {
    reproducible: bool,
}

impl Sink {
    fn header(&self) -> String {
        if self.reproducible {
            return String::new();
        }
        let secs = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        format!(
            "# generated by netquench {} at unix time {secs}\n",
            env!("CARGO_PKG_VERSION")
        )
    }

    /// Writes `body` to `path`, or stdout when `path` is `None`.
    pub fn emit(&self, path: Option<&Path>, body: &str) -> Result<()> {
        let text = format!("{}{body}", self.header());
        match path {
            Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn to_text(write: impl FnOnce(&mut Vec<u8>) -> netquench::Result<()>) -> Result<String> {
    let mut buf = Vec::new();
    write(&mut buf)?;
    Ok(String::from_utf8(buf)?)
}

fn load_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Graph::parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_params(spec: &str, n: usize) -> Result<NodeParams> {
    let params = if let Some(rest) = spec.strip_prefix("homogeneous:") {
        let v: Vec<f64> = rest
            .split(':')
            .map(str::parse)
            .collect::<Result<_, _>>()
            .with_context(|| format!("bad params spec {spec:?}"))?;
        let [mu, beta, r] = v[..] else {
            bail!("params spec needs homogeneous:<mu>:<beta>:<r>, got {spec:?}");
        };
        NodeParams::homogeneous(n, mu, beta, r)?
    } else {
        let file = fs::File::open(spec).with_context(|| format!("opening {spec}"))?;
        io::read_params(file).with_context(|| format!("reading {spec}"))?
    };
    if params.len() != n {
        bail!("params cover {} nodes but the graph has {n}", params.len());
    }
    Ok(params)
}

fn load_inputs(input: &InputArgs) -> Result<(Graph, NodeParams)> {
    let g = load_graph(&input.graph)?;
    let params = load_params(&input.params, g.order())?;
    Ok((g, params))
}

fn parse_p0(spec: &str, n: usize) -> Result<EpidemicState> {
    let parts: Vec<&str> = spec.split(':').collect();
    let state = match parts[..] {
        ["uniform", v] => EpidemicState::uniform(n, v.parse()?)?,
        ["single", node, v] => EpidemicState::single(n, node.parse()?, v.parse()?)?,
        _ => {
            let file = fs::File::open(spec).with_context(|| {
                format!("p0 spec {spec:?} is neither uniform:, single: nor a readable file")
            })?;
            io::read_state(file, n)?
        }
    };
    Ok(state)
}

fn cmd_generate(args: &GenerateArgs, sink: &Sink) -> Result<ExitCode> {
    let need = |v: Option<usize>, flag: &str| {
        v.with_context(|| format!("--{flag} is required for this kind"))
    };
    let g = match args.kind {
        GraphKind::Ring => ring(args.n)?,
        GraphKind::Regular => random_regular(args.n, need(args.r, "r")?, args.seed)?,
        GraphKind::Ba => {
            barabasi_albert(args.n, need(args.m0, "m0")?, need(args.m, "m")?, args.seed)?
        }
        GraphKind::Er => erdos_renyi(args.n, args.p.context("--p is required for er")?, args.seed)?,
    };
    sink.emit(args.out.as_deref(), &g.to_edge_list())?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct NodeReport {
    node: usize,
    degree: usize,
    center: f64,
    radius: f64,
    margin: f64,
    flagged: bool,
}

#[derive(Serialize)]
struct AnalyzeReport {
    order: usize,
    edges: usize,
    sigma: f64,
    iterations: usize,
    estimate: &'static str,
    stability: Stability,
    flagged: Vec<usize>,
    ranked: Vec<usize>,
    nodes: Vec<NodeReport>,
}

fn estimate_name(kind: EstimateKind) -> &'static str {
    match kind {
        EstimateKind::WeightedRayleigh => "weighted-rayleigh",
        EstimateKind::SumRatio => "sum-ratio",
        EstimateKind::Exact => "exact",
    }
}

fn cmd_analyze(args: &AnalyzeArgs) -> Result<ExitCode> {
    let (g, params) = load_inputs(&args.input)?;
    let opts = args.spectral.options();
    let est = spectral_radius(&g, &params, &opts)?;
    let kind = est.kind;
    let threshold = threshold_check(&g, &params, args.spectral.band, &opts)?;
    let selection = select_nodes(&g, &params)?;
    let nodes = selection
        .discs
        .iter()
        .map(|d| NodeReport {
            node: d.node,
            degree: g.neighbors(d.node).len(),
            center: d.center,
            radius: d.radius,
            margin: selection.margins[d.node],
            flagged: selection.is_flagged(d.node),
        })
        .collect();
    let report = AnalyzeReport {
        order: g.order(),
        edges: g.edge_count(),
        sigma: threshold.sigma,
        iterations: threshold.iterations,
        estimate: estimate_name(kind),
        stability: threshold.stability,
        ranked: selection.ranked(),
        flagged: selection.flagged.clone(),
        nodes,
    };
    let json = serde_json::to_string_pretty(&report)? + "\n";
    match &args.out {
        Some(p) => fs::write(p, json).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{json}"),
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ControlSummary {
    kappa: f64,
    flagged: Vec<usize>,
    adjusted: usize,
    sigma_before: f64,
    sigma_after: f64,
    flagged_after: Vec<usize>,
    stable: bool,
}

fn cmd_control(args: &ControlArgs, sink: &Sink) -> Result<ExitCode> {
    let (g, params) = load_inputs(&args.input)?;
    let opts = args.spectral.options();
    let sigma_before = spectral_radius(&g, &params, &opts)?.require_converged()?;
    let selection = select_nodes(&g, &params)?;
    let (tuned, plan) = tune_betas(&g, &params, &selection, args.kappa)?;
    let check = verify_stabilization(&g, &tuned, &opts)?;
    let after = select_nodes(&g, &tuned)?;

    if let Some(p) = &args.out_params {
        sink.emit(Some(p), &to_text(|w| io::write_params(w, &tuned))?)?;
    }
    if let Some(p) = &args.out_plan {
        sink.emit(Some(p), &to_text(|w| io::write_plan(w, &plan))?)?;
    }
    if let Some(p) = &args.out_selection {
        sink.emit(
            Some(p),
            &to_text(|w| io::write_selection(w, &g, &params, &selection))?,
        )?;
    }
    let summary = ControlSummary {
        kappa: args.kappa,
        flagged: selection.flagged.clone(),
        adjusted: plan.adjustments.len(),
        sigma_before,
        sigma_after: check.sigma,
        flagged_after: after.flagged.clone(),
        stable: check.stable,
    };
    println!("{}", serde_json::to_string_pretty(&summary)?);
    if !check.stable || !after.flagged.is_empty() {
        eprintln!("tuned parameters are not stable (sigma = {})", check.sigma);
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_simulate(args: &SimulateArgs, sink: &Sink) -> Result<ExitCode> {
    let (g, params) = load_inputs(&args.input)?;
    let p0 = parse_p0(&args.p0, g.order())?;
    let config = SimulationConfig {
        max_steps: args.max_steps,
        extinct_tol: args.tol,
        endemic_window: args.window,
    };
    config.validate()?;
    let sigma = spectral_radius(&g, &params, &args.spectral.options())?.require_converged()?;
    let traj = simulate(&g, &params, p0, &config)?;
    if let Some(p) = &args.out {
        sink.emit(Some(p), &to_text(|w| io::write_trajectory(w, &traj))?)?;
    }
    let summary = to_text(|w| io::write_summary(w, traj.verdict, traj.steps_to_verdict, sigma))?;
    if let Some(p) = &args.summary {
        sink.emit(Some(p), &summary)?;
    }
    print!("{summary}");
    if traj.verdict == Verdict::Undecided {
        eprintln!("no verdict within {} steps", args.max_steps);
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode> {
    let budget = if args.expensive {
        Budget::Expensive
    } else {
        Budget::Standard
    };
    let start = Instant::now();
    let outcomes = verify::run_all(budget);
    let mut failed = 0;
    for c in &outcomes {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        println!("{tag} {}: {}", c.name, c.detail);
        failed += usize::from(!c.passed);
    }
    println!(
        "{} of {} checks passed in {:.2} s",
        outcomes.len() - failed,
        outcomes.len(),
        start.elapsed().as_secs_f64()
    );
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("NETQUENCH_THREADS") {
        let n: usize =
            v.parse().ok().filter(|&n| n > 0).with_context(|| {
                format!("NETQUENCH_THREADS must be a positive integer, got {v:?}")
            })?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    configure_threads()?;
    let sink = Sink {
        reproducible: cli.reproducible,
    };
    match &cli.command {
        Command::Generate(a) => cmd_generate(a, &sink),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Control(a) => cmd_control(a, &sink),
        Command::Simulate(a) => cmd_simulate(a, &sink),
        Command::Enumerate(a) => enumerate::run(a, &sink),
        Command::Verify(a) => cmd_verify(a),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

//! `alpp`: solve, kernelize, generate, reduce and check (A, l)-path packing instances.
//!
//! Exit status is 0 whenever the command ran (the answer is in the output) and 2 on usage,
//! parse or configuration errors.

mod bench;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::mpsc;
use std::thread;
use std::time::Duration;

use alpp::format::{
    parse_certificate, parse_instance, serialize_certificate, serialize_instance_with_comments,
};
use alpp::generate::{
    gen_cluster, gen_planted, gen_random, gen_terminal_cluster, gen_vc_structured, ClusterParams,
    TerminalClusterParams, VcParams,
};
use alpp::hardness::{construct_alpp, parse_family, planted_packing, structural_audit};
use alpp::instance::validate_packing;
use alpp::kernel_vc::{kernelize_vc, RuleOrder, VcKernelOptions};
use alpp::modulator::CoverMode;
use alpp::solve::{solve, SolveConfig, SolveReport, Strategy};
use alpp::trace::TraceEvent;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "alpp",
    version,
    about = "Solvers for packing vertex-disjoint terminal paths of fixed order"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Clone)]
struct SolveFlags {
    /// auto, oracle, colorcode, cvd-ell or cvd-a.
    #[arg(long, default_value = "auto")]
    strategy: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random trials for colorcode (total) and cvd-a (per guess).
    #[arg(long)]
    trials: Option<usize>,
    /// Give up after this many milliseconds and report TIMEOUT.
    #[arg(long)]
    timeout_ms: Option<u64>,
    /// Largest modulator cvd-a accepts.
    #[arg(long)]
    guess_cap: Option<usize>,
    /// Largest path catalog the exact solver builds.
    #[arg(long)]
    catalog_cap: Option<usize>,
}

impl SolveFlags {
    fn config(&self) -> Result<SolveConfig, String> {
        let strategy: Strategy = self
            .strategy
            .parse()
            .map_err(|e: alpp::error::Error| e.to_string())?;
        let mut cfg = SolveConfig {
            strategy,
            seed: self.seed,
            trials: self.trials,
            ..SolveConfig::default()
        };
        if let Some(g) = self.guess_cap {
            cfg.guess_cap = g;
        }
        if let Some(c) = self.catalog_cap {
            cfg.catalog_cap = c;
        }
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide an instance and print the answer with a certificate when YES.
    Solve {
        instance: PathBuf,
        #[command(flatten)]
        flags: SolveFlags,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Shrink an instance with the vertex-cover kernel and print it with its trace.
    Kernelize {
        instance: PathBuf,
        /// Structural parameter; only `vc` is supported.
        #[arg(long, default_value = "vc")]
        param: String,
        /// Compute the cover exactly instead of by 2-approximation.
        #[arg(long)]
        exact_cover: bool,
        /// Compress internal vertices before terminals.
        #[arg(long)]
        internals_first: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate a random instance.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Generate an instance with planted disjoint paths (always YES).
    Plant {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long, default_value_t = 0.0)]
        noise: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Where to write the planted certificate.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Build the path-packing instance of a 2-interval family.
    Reduce {
        family: PathBuf,
        #[arg(long)]
        k: usize,
        /// Cloud size bound N; 0 selects 3·C(n⁴, 2).
        #[arg(long = "scale", default_value_t = 0)]
        scale: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated 1-based items of a disjoint selection to plant.
        #[arg(long, value_delimiter = ',')]
        plant: Option<Vec<usize>>,
        /// Where to write the planted certificate (requires --plant).
        #[arg(long)]
        cert: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a certificate against an instance.
    Verify {
        instance: PathBuf,
        certificate: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run strategies over every instance file in a directory.
    Bench {
        corpus: PathBuf,
        /// Comma-separated strategies.
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "oracle,colorcode,cvd-ell,cvd-a"
        )]
        strategies: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        trials: Option<usize>,
        /// Per-run budget.
        #[arg(long, default_value_t = 10_000)]
        timeout_ms: u64,
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Erdős–Rényi graph with uniformly sampled terminals.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        edge_prob: f64,
        #[arg(long)]
        terminals: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Graph with a small hidden vertex cover.
    Vc {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        cover: usize,
        #[arg(long, default_value_t = 0.5)]
        edge_prob: f64,
        #[arg(long, default_value_t = 0.3)]
        terminal_prob: f64,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Cluster graph plus a declared cvd modulator.
    Cluster {
        #[arg(long)]
        cliques: usize,
        #[arg(long)]
        max_clique: usize,
        #[arg(long, default_value_t = 1)]
        modulator: usize,
        #[arg(long, default_value_t = 0.5)]
        attach_prob: f64,
        #[arg(long, default_value_t = 0.3)]
        terminal_prob: f64,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Terminals and a deletion set over a cluster graph, declared as a cvda modulator.
    Cvda {
        #[arg(long)]
        terminals: usize,
        #[arg(long, default_value_t = 1)]
        deletion: usize,
        #[arg(long)]
        cliques: usize,
        #[arg(long)]
        max_clique: usize,
        #[arg(long, default_value_t = 0.2)]
        edge_prob: f64,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

type CmdResult = Result<(), String>;

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(output: Option<&Path>, text: &str) -> CmdResult {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_instance(path: &Path) -> Result<alpp::instance::Instance, String> {
    parse_instance(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

/// Runs `job` on a worker thread; `None` when it does not finish within `timeout`.
pub fn with_timeout<T: Send + 'static>(
    timeout: Option<Duration>,
    job: impl FnOnce() -> T + Send + 'static,
) -> Option<T> {
    let Some(limit) = timeout else {
        return Some(job());
    };
    let (tx, rx) = mpsc::channel();
    thread::spawn(move || {
        let _ = tx.send(job());
    });
    rx.recv_timeout(limit).ok()
}

fn cmd_solve(path: &Path, flags: &SolveFlags, format: Format) -> CmdResult {
    let inst = load_instance(path)?;
    let cfg = flags.config()?;
    let timeout = flags.timeout_ms.map(Duration::from_millis);
    let worker = inst.clone();
    let result: Option<alpp::error::Result<SolveReport>> =
        with_timeout(timeout, move || solve(&worker, &cfg));
    match result {
        None => print!("{}", report::timeout(&cfg, format)),
        Some(Err(e)) => return Err(e.to_string()),
        Some(Ok(rep)) => print!("{}", report::solve(&rep, &cfg, format)),
    }
    Ok(())
}

fn bound_line(kernel: &alpp::kernel_vc::VcKernel) -> String {
    let n = kernel.instance.vertex_count();
    let bound = kernel.vertex_bound();
    format!(
        "bound: |V| = {n} ≤ |M| + 2|M| + 2·C(|M|,2) = {bound} ({})",
        if n <= bound { "ok" } else { "violated" }
    )
}

fn cmd_kernelize(
    path: &Path,
    param: &str,
    exact: bool,
    internals_first: bool,
    output: Option<&Path>,
) -> CmdResult {
    if param != "vc" {
        return Err(format!("unsupported parameter `{param}` (only `vc`)"));
    }
    let text = read(path)?;
    let inst = parse_instance(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let opts = VcKernelOptions {
        cover_mode: if exact {
            CoverMode::Exact
        } else {
            CoverMode::Approx2
        },
        order: if internals_first {
            RuleOrder::InternalsFirst
        } else {
            RuleOrder::TerminalsFirst
        },
        ..VcKernelOptions::default()
    };
    let kernel = kernelize_vc(&inst, &opts).map_err(|e| e.to_string())?;
    let mut comments: Vec<String> = kernel
        .trace
        .lines()
        .into_iter()
        .map(|l| format!("trace: {l}"))
        .collect();
    let changed = kernel
        .trace
        .events()
        .iter()
        .any(|e| matches!(e, TraceEvent::Applied { .. }))
        || kernel.instance.vertex_count() != inst.vertex_count()
        || kernel.instance.demand() != inst.demand();
    comments.push(bound_line(&kernel));
    let body = if changed {
        serialize_instance_with_comments(&kernel.instance, &comments)
    } else {
        let mut out: String = comments.iter().map(|c| format!("c {c}\n")).collect();
        out.push_str(&text);
        if !text.ends_with('\n') {
            out.push('\n');
        }
        out
    };
    emit(output, &body)
}

fn cmd_gen(cmd: &GenCommand) -> CmdResult {
    let (inst, output, comment) = match cmd {
        GenCommand::Random { n, edge_prob, terminals, k, ell, seed, output } => (
            gen_random(*n, *edge_prob, *terminals, *k, *ell, *seed),
            output,
            format!("gen random n={n} edge_prob={edge_prob} terminals={terminals} k={k} ell={ell} seed={seed}"),
        ),
        GenCommand::Vc { n, cover, edge_prob, terminal_prob, k, ell, seed, output } => (
            gen_vc_structured(
                &VcParams {
                    n: *n,
                    cover: *cover,
                    edge_prob: *edge_prob,
                    terminal_prob: *terminal_prob,
                    path_order: *ell,
                    demand: *k,
                },
                *seed,
            ),
            output,
            format!("gen vc n={n} cover={cover} k={k} ell={ell} seed={seed}"),
        ),
        GenCommand::Cluster { cliques, max_clique, modulator, attach_prob, terminal_prob, k, ell, seed, output } => (
            gen_cluster(
                &ClusterParams {
                    cliques: *cliques,
                    max_clique: *max_clique,
                    modulator: *modulator,
                    attach_prob: *attach_prob,
                    terminal_prob: *terminal_prob,
                    path_order: *ell,
                    demand: *k,
                },
                *seed,
            ),
            output,
            format!("gen cluster cliques={cliques} max_clique={max_clique} modulator={modulator} k={k} ell={ell} seed={seed}"),
        ),
        GenCommand::Cvda { terminals, deletion, cliques, max_clique, edge_prob, k, ell, seed, output } => (
            gen_terminal_cluster(
                &TerminalClusterParams {
                    terminals: *terminals,
                    deletion: *deletion,
                    cliques: *cliques,
                    max_clique: *max_clique,
                    edge_prob: *edge_prob,
                    path_order: *ell,
                    demand: *k,
                },
                *seed,
            ),
            output,
            format!("gen cvda terminals={terminals} deletion={deletion} cliques={cliques} k={k} ell={ell} seed={seed}"),
        ),
    };
    let inst = inst.map_err(|e| e.to_string())?;
    emit(
        output.as_deref(),
        &serialize_instance_with_comments(&inst, &[comment]),
    )
}

#[allow(clippy::too_many_arguments)]
fn cmd_plant(
    n: usize,
    k: usize,
    ell: usize,
    noise: f64,
    seed: u64,
    output: Option<&Path>,
    cert: Option<&Path>,
) -> CmdResult {
    let planted = gen_planted(n, k, ell, noise, seed).map_err(|e| e.to_string())?;
    let comment = format!("plant n={n} k={k} ell={ell} noise={noise} seed={seed}");
    emit(
        output,
        &serialize_instance_with_comments(&planted.instance, &[comment]),
    )?;
    if let Some(c) = cert {
        fs::write(c, serialize_certificate(&planted.packing))
            .map_err(|e| format!("{}: {e}", c.display()))?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_reduce(
    family: &Path,
    k: usize,
    scale: usize,
    seed: u64,
    plant: Option<&[usize]>,
    cert: Option<&Path>,
    output: Option<&Path>,
) -> CmdResult {
    let fam = parse_family(&read(family)?).map_err(|e| format!("{}: {e}", family.display()))?;
    if cert.is_some() && plant.is_none() {
        return Err("--cert needs --plant".into());
    }
    let selection: Option<Vec<usize>> = match plant {
        Some(items) => Some(
            items
                .iter()
                .map(|&i| {
                    if i == 0 {
                        Err("items are numbered from 1".to_string())
                    } else {
                        Ok(i - 1)
                    }
                })
                .collect::<Result<_, _>>()?,
        ),
        None => None,
    };
    let out = construct_alpp(&fam, k, scale, seed).map_err(|e| e.to_string())?;
    let packing = match &selection {
        Some(sel) => Some(planted_packing(&out, sel).map_err(|e| e.to_string())?),
        None => None,
    };
    let mut comments = vec![format!(
        "reduce n={} k={k} N={} seed={seed} ell={}",
        fam.len(),
        out.scale,
        out.instance.path_order()
    )];
    comments.extend(
        structural_audit(&out)
            .lines()
            .into_iter()
            .map(|l| format!("audit: {l}")),
    );
    if let Some(p) = &packing {
        let report = validate_packing(&out.instance, p);
        comments.push(format!(
            "audit: planted-packing {}",
            if report.is_ok() {
                "ok".to_string()
            } else {
                format!("FAIL ({:?})", report.violations)
            }
        ));
    }
    emit(
        output,
        &serialize_instance_with_comments(&out.instance, &comments),
    )?;
    if let (Some(c), Some(p)) = (cert, &packing) {
        fs::write(c, serialize_certificate(p)).map_err(|e| format!("{}: {e}", c.display()))?;
    }
    Ok(())
}

fn cmd_verify(instance: &Path, certificate: &Path, format: Format) -> CmdResult {
    let inst = load_instance(instance)?;
    let packing = parse_certificate(&read(certificate)?)
        .map_err(|e| format!("{}: {e}", certificate.display()))?;
    let report = validate_packing(&inst, &packing);
    print!("{}", report::verify(&report, format));
    Ok(())
}

fn dispatch(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Solve {
            instance,
            flags,
            format,
        } => cmd_solve(&instance, &flags, format),
        Command::Kernelize {
            instance,
            param,
            exact_cover,
            internals_first,
            output,
        } => cmd_kernelize(
            &instance,
            &param,
            exact_cover,
            internals_first,
            output.as_deref(),
        ),
        Command::Gen(g) => cmd_gen(&g),
        Command::Plant {
            n,
            k,
            ell,
            noise,
            seed,
            output,
            cert,
        } => cmd_plant(n, k, ell, noise, seed, output.as_deref(), cert.as_deref()),
        Command::Reduce {
            family,
            k,
            scale,
            seed,
            plant,
            cert,
            output,
        } => cmd_reduce(
            &family,
            k,
            scale,
            seed,
            plant.as_deref(),
            cert.as_deref(),
            output.as_deref(),
        ),
        Command::Verify {
            instance,
            certificate,
            format,
        } => cmd_verify(&instance, &certificate, format),
        Command::Bench {
            corpus,
            strategies,
            seed,
            trials,
            timeout_ms,
            csv,
        } => {
            let strategies = strategies
                .iter()
                .map(|s| s.parse::<Strategy>().map_err(|e| e.to_string()))
                .collect::<Result<Vec<_>, _>>()?;
            let table = bench::run(
                &corpus,
                &strategies,
                seed,
                trials,
                Duration::from_millis(timeout_ms),
            )?;
            print!("{}", if csv { table.csv() } else { table.text() });
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("alpp: {msg}");
            ExitCode::from(2)
        }
    }
}

//! Command-line surface: instance generation, partitioning, certificate
//! verification, and direct access to the crown, path-cover, block-grouping,
//! transversal, scan and power-reduction machinery.
//!
//! Exit codes: 0 success/accept, 1 reject or not-found, 2 internal
//! verification failure, 64 malformed input, 65 size limit exceeded.

use tightcycle_cli::{format, gen};

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tightcycle::driver::{
    self, verify_certificate, verify_power_certificate, DriverConfig, PartitionCertificate,
};
use tightcycle::error::Error as CoreError;
use tightcycle::hypergraph::Vertex;
use tightcycle::lemmas::{
    cycle_cover_is_valid, group_blocks, independent_transversal, posa_cycle_cover,
    TransversalOutcome,
};
use tightcycle::oracle::colouring_scan;
use tightcycle::search::{find_mono_crown, SearchBudget};
use tightcycle::tight::{build_crown, Conventions};

use format::{parse_ratio, Instance, ParseError};

const EXIT_REJECT: u8 = 1;
const EXIT_INTERNAL: u8 = 2;
const EXIT_PARSE: u8 = 64;
const EXIT_SIZE: u8 = 65;

struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn new(code: u8, msg: impl Into<String>) -> Self {
        Failure {
            code,
            msg: msg.into(),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::new(EXIT_PARSE, e.to_string())
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::SizeLimit { .. } => Failure::new(EXIT_SIZE, e.to_string()),
            CoreError::Internal(_) => Failure::new(EXIT_INTERNAL, e.to_string()),
            other => Failure::new(EXIT_PARSE, other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "tightcycle", version, about = "Monochromatic tight cycle partitioning")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a random instance.
    Gen(GenArgs),
    /// Partition an instance into monochromatic tight cycles.
    Partition(PartitionArgs),
    /// Verify a certificate against an instance.
    Verify(VerifyArgs),
    /// Build a crown, or embed one monochromatically into an instance.
    Crown(CrownArgs),
    /// Cover a graph's vertices by at most independence-number many cycles.
    Posa(PosaArgs),
    /// Group a subset family into 4-blocks with large common intersection.
    Blocks(BlocksArgs),
    /// Find an independent transversal of disjoint vertex blocks.
    Transversal(TransversalArgs),
    /// Exhaustively scan all colourings at tiny scale.
    Scan(ScanArgs),
    /// Power reduction: partition into p-th powers of tight cycles.
    Power(PowerArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    /// `complete-random` or `density` (with --density).
    #[arg(long, default_value = "complete-random")]
    model: String,
    #[arg(long)]
    density: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    alpha: Option<usize>,
    /// Admit single edges as cycles (graphs only).
    #[arg(long)]
    lehel: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PartitionArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    alpha: Option<usize>,
    /// Threshold overrides, one `key value` pair per line.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    cert: PathBuf,
}

#[derive(Args)]
struct CrownArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    t: usize,
    #[arg(long = "embed-in")]
    embed_in: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct PosaArgs {
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Args)]
struct BlocksArgs {
    #[arg(long)]
    family: PathBuf,
    /// Size floor as a rational, e.g. 1/4.
    #[arg(long)]
    eps: String,
}

#[derive(Args)]
struct TransversalArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Inclusive vertex ranges, one per block: `0-4,5-9,10-14`.
    #[arg(long)]
    blocks: String,
    /// Skip the link-density hypothesis check.
    #[arg(long)]
    unchecked: bool,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    n: usize,
    /// Solve one representative per isomorphism class.
    #[arg(long)]
    prune: bool,
    #[arg(long)]
    lehel: bool,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Args)]
struct PowerArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    p: usize,
    /// `reduce` emits the reduced instance; `partition` emits a power
    /// certificate.
    action: String,
    #[arg(long)]
    alpha: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("cannot read {}: {}", path.display(), e)))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::new(EXIT_INTERNAL, format!("cannot write {}: {}", path.display(), e))),
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}

fn load_instance(path: &PathBuf) -> Result<Instance, Failure> {
    Ok(format::parse_instance(&read_file(path)?)?)
}

fn apply_config(cfg: &mut DriverConfig, text: &str) -> Result<(), Failure> {
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let key = it.next().unwrap();
        let val = it
            .next()
            .ok_or_else(|| Failure::new(EXIT_PARSE, format!("config line {}: missing value", i + 1)))?;
        let ratio = |v: &str| {
            parse_ratio(v).ok_or_else(|| {
                Failure::new(EXIT_PARSE, format!("config line {}: bad rational `{}`", i + 1, v))
            })
        };
        let int = |v: &str| {
            v.parse::<u64>().map_err(|_| {
                Failure::new(EXIT_PARSE, format!("config line {}: bad integer `{}`", i + 1, v))
            })
        };
        match key {
            "eps" => cfg.eps = ratio(val)?,
            "beta" => cfg.beta = ratio(val)?,
            "gamma" => cfg.gamma = ratio(val)?,
            "absorb_eps" => cfg.absorption.eps = ratio(val)?,
            "delta1" => cfg.absorption.delta1 = ratio(val)?,
            "delta2" => cfg.absorption.delta2 = ratio(val)?,
            "delta3" => cfg.absorption.delta3 = ratio(val)?,
            "absorb_gamma" => cfg.absorption.gamma = ratio(val)?,
            "split_retries" => cfg.absorption.split_retries = int(val)? as u32,
            "node_limit" => cfg.budget.node_limit = int(val)?,
            "time_limit_ms" => cfg.budget.time_limit_ms = int(val)?,
            "exact_cycle_bound" => cfg.exact_cycle_bound = int(val)? as usize,
            "fallback_bound" => cfg.fallback_bound = int(val)? as usize,
            other => {
                return Err(Failure::new(
                    EXIT_PARSE,
                    format!("config line {}: unknown key `{}`", i + 1, other),
                ))
            }
        }
    }
    Ok(())
}

fn parse_block_spec(spec: &str) -> Result<Vec<Vec<Vertex>>, Failure> {
    let mut blocks = Vec::new();
    for part in spec.split(',') {
        let part = part.trim();
        let (a, b) = part
            .split_once('-')
            .ok_or_else(|| Failure::new(EXIT_PARSE, format!("bad block range `{}`", part)))?;
        let lo: usize = a
            .trim()
            .parse()
            .map_err(|_| Failure::new(EXIT_PARSE, format!("bad block range `{}`", part)))?;
        let hi: usize = b
            .trim()
            .parse()
            .map_err(|_| Failure::new(EXIT_PARSE, format!("bad block range `{}`", part)))?;
        if hi < lo {
            return Err(Failure::new(EXIT_PARSE, format!("empty block range `{}`", part)));
        }
        blocks.push((lo..=hi).collect());
    }
    Ok(blocks)
}

fn cmd_gen(args: GenArgs) -> Result<(), Failure> {
    let model = match args.model.as_str() {
        "complete-random" => gen::Model::CompleteRandom,
        "density" => {
            let p = args.density.ok_or_else(|| {
                Failure::new(EXIT_PARSE, "--model density requires --density")
            })?;
            if !(0.0..=1.0).contains(&p) {
                return Err(Failure::new(EXIT_PARSE, "--density must lie in [0, 1]"));
            }
            gen::Model::Density(p)
        }
        other => {
            return Err(Failure::new(
                EXIT_PARSE,
                format!("unknown model `{}` (complete-random | density)", other),
            ))
        }
    };
    let inst = gen::generate(args.k, args.n, args.r, model, args.seed, args.alpha, args.lehel)?;
    emit(&args.out, &format::write_instance(&inst))
}

fn cmd_partition(args: PartitionArgs) -> Result<(), Failure> {
    if args.threads == 0 {
        return Err(Failure::new(EXIT_PARSE, "--threads must be positive"));
    }
    let inst = load_instance(&args.input)?;
    let g = &inst.graph;
    let mut cfg = DriverConfig::defaults_for(g.k(), g.r());
    cfg.seed = args.seed;
    cfg.budget.seed = args.seed;
    if let Some(path) = &args.config {
        apply_config(&mut cfg, &read_file(path)?)?;
    }
    let alpha = args.alpha.or(inst.alpha);
    let report = driver::partition(g, alpha, &cfg, &inst.conventions())?;
    // the driver verifies internally; re-check through the public verifier
    if let Err(reason) = verify_certificate(g, &report.certificate, &inst.conventions()) {
        return Err(Failure::new(
            EXIT_INTERNAL,
            format!("emitted certificate failed verification: {}", reason),
        ));
    }
    let hist = report.certificate.provenance_histogram();
    eprintln!(
        "partitioned {} vertices into {} cycles ({})",
        g.n(),
        report.certificate.cycles.len(),
        hist.iter()
            .map(|(k, v)| format!("{} {}", v, k))
            .collect::<Vec<_>>()
            .join(", ")
    );
    for d in &report.diagnostics {
        eprintln!("  {}", d);
    }
    if let Some(w) = &report.contradiction_witness {
        eprintln!("  independent transversal witness: {:?}", w);
    }
    emit(&args.out, &format::write_certificate(&report.certificate))
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let inst = load_instance(&args.input)?;
    let cert: PartitionCertificate =
        format::parse_certificate(&read_file(&args.cert)?, inst.graph.k())?;
    match verify_certificate(&inst.graph, &cert, &inst.conventions()) {
        Ok(()) => {
            println!("accept: {} cycles partition {} vertices", cert.cycles.len(), inst.graph.n());
            Ok(())
        }
        Err(reason) => Err(Failure::new(EXIT_REJECT, format!("reject: {}", reason))),
    }
}

fn cmd_crown(args: CrownArgs) -> Result<(), Failure> {
    let crown = build_crown(args.k, args.t)?;
    match &args.embed_in {
        None => {
            println!(
                "crown k={} t={}: {} vertices ({} base + {} rim), {} edges",
                args.k,
                args.t,
                crown.vertex_count(),
                crown.base.len(),
                crown.rim.len(),
                crown.edge_count()
            );
            for e in &crown.edges {
                println!(
                    "edge {}",
                    e.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
                );
            }
            Ok(())
        }
        Some(path) => {
            let inst = load_instance(path)?;
            let budget = SearchBudget::with_seed(args.seed);
            match find_mono_crown(&inst.graph, args.t, &BTreeSet::new(), &budget)? {
                Some(embedded) => {
                    if !embedded.verify(&inst.graph) {
                        return Err(Failure::new(
                            EXIT_INTERNAL,
                            "embedding failed re-verification",
                        ));
                    }
                    println!("colour {}", embedded.colour);
                    println!(
                        "base {}",
                        embedded.base.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
                    );
                    println!(
                        "rim {}",
                        embedded.rim.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
                    );
                    Ok(())
                }
                None => Err(Failure::new(EXIT_REJECT, "no monochromatic crown found")),
            }
        }
    }
}

fn cmd_posa(args: PosaArgs) -> Result<(), Failure> {
    let inst = load_instance(&args.graph)?;
    if inst.graph.k() != 2 {
        return Err(Failure::new(EXIT_PARSE, "posa expects a graph instance (k = 2)"));
    }
    let host = inst.graph.host();
    let cover = posa_cycle_cover(host)?;
    if !cycle_cover_is_valid(host, &cover) {
        return Err(Failure::new(EXIT_INTERNAL, "cover failed re-validation"));
    }
    println!("cycles {}", cover.len());
    for c in &cover {
        println!(
            "cycle {}",
            c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
        );
    }
    Ok(())
}

fn cmd_blocks(args: BlocksArgs) -> Result<(), Failure> {
    let family = format::parse_family(&read_file(&args.family)?)?;
    let eps = parse_ratio(&args.eps)
        .ok_or_else(|| Failure::new(EXIT_PARSE, format!("bad rational `{}`", args.eps)))?;
    let grouping = group_blocks(&family, eps)?;
    if !grouping.validate(&family, eps) {
        return Err(Failure::new(EXIT_INTERNAL, "grouping failed re-validation"));
    }
    println!("blocks {}", grouping.blocks.len());
    for b in &grouping.blocks {
        println!(
            "block {} : intersection {}",
            b.owners.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(" "),
            b.intersection.len()
        );
    }
    println!(
        "leftover {}",
        grouping
            .leftover
            .iter()
            .map(|o| o.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    );
    Ok(())
}

fn cmd_transversal(args: TransversalArgs) -> Result<(), Failure> {
    let inst = load_instance(&args.input)?;
    let blocks = parse_block_spec(&args.blocks)?;
    match independent_transversal(inst.graph.host(), &blocks, !args.unchecked)? {
        TransversalOutcome::Found(t) => {
            println!(
                "transversal {}",
                t.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
            );
            Ok(())
        }
        TransversalOutcome::HypothesisViolation {
            block,
            lower_blocks,
            vertex,
            link_count,
        } => Err(Failure::new(
            EXIT_REJECT,
            format!(
                "hypothesis violation: vertex {} of block {} has link count {} over blocks {:?}",
                vertex, block, link_count, lower_blocks
            ),
        )),
        TransversalOutcome::Stuck { block } => Err(Failure::new(
            EXIT_REJECT,
            format!("greedy stuck at block {}", block),
        )),
    }
}

fn cmd_scan(args: ScanArgs) -> Result<(), Failure> {
    if args.threads == 0 {
        return Err(Failure::new(EXIT_PARSE, "--threads must be positive"));
    }
    let conv = if args.lehel {
        Conventions::lehel()
    } else {
        Conventions::strict()
    };
    let report = colouring_scan(args.k, args.r, args.n, &conv, args.prune, args.threads, u64::MAX)?;
    println!(
        "scan k={} r={} n={} lehel={} pruned={}",
        report.k, report.r, report.n, report.lehel, report.pruned
    );
    println!("colourings {}", report.total_colourings);
    println!("classes {}", report.classes_scanned);
    println!("worst {}", report.worst_case);
    println!(
        "witness {}",
        report
            .witness
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    );
    println!("complete {}", report.complete);
    Ok(())
}

fn cmd_power(args: PowerArgs) -> Result<(), Failure> {
    let inst = load_instance(&args.input)?;
    let g = &inst.graph;
    match args.action.as_str() {
        "reduce" => {
            let reduced = driver::power_reduce(g, args.p)?;
            let out = Instance {
                graph: reduced,
                alpha: None,
                lehel: false,
            };
            emit(&args.out, &format::write_instance(&out))
        }
        "partition" => {
            let mut cfg = DriverConfig::defaults_for(g.k(), g.r());
            cfg.seed = args.seed;
            cfg.budget.seed = args.seed;
            let alpha = args.alpha;
            let (items, report) = driver::power_partition(g, args.p, alpha, &cfg)?;
            if let Err(e) = verify_power_certificate(g, args.p, &items) {
                return Err(Failure::new(EXIT_INTERNAL, e));
            }
            eprintln!(
                "partitioned into {} powers of tight cycles ({} reduced cycles)",
                items.len(),
                report.certificate.cycles.len()
            );
            emit(
                &args.out,
                &format::write_power_certificate(&g.digest(), args.p, &items),
            )
        }
        other => Err(Failure::new(
            EXIT_PARSE,
            format!("unknown power action `{}` (reduce | partition)", other),
        )),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Gen(a) => cmd_gen(a),
        Cmd::Partition(a) => cmd_partition(a),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Crown(a) => cmd_crown(a),
        Cmd::Posa(a) => cmd_posa(a),
        Cmd::Blocks(a) => cmd_blocks(a),
        Cmd::Transversal(a) => cmd_transversal(a),
        Cmd::Scan(a) => cmd_scan(a),
        Cmd::Power(a) => cmd_power(a),
    }
}

/// Die quietly when the read end of a pipe goes away.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() -> ExitCode {
    reset_sigpipe();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{}", e);
                return ExitCode::SUCCESS;
            }
            eprintln!("{}", e);
            return ExitCode::from(EXIT_PARSE);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

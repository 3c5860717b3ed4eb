//! Command-line surface over the census library: group inspection, graph
//! construction, automorphism groups, censuses, bound evaluation, and the
//! verification suite. Machine output goes to stdout as JSON (or edge/DOT
//! streams for `graph`); diagnostics go to stderr; exit code 0 means every
//! requested check or command succeeded.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use haarcensus::bits::Bitset;
use haarcensus::bounds;
use haarcensus::census::{
    exhaustive_census, monte_carlo_census, CensusOptions, FamilyKind, FamilySpec, Predicate,
};
use haarcensus::checks::{self, CheckRequest};
use haarcensus::graph::{cayley_digraph, haar_graph, haar_graph_colored, m_cayley_digraph, ColoredDigraph, SetMatrix};
use haarcensus::group::{c_of_group, classify_group, make_group, ElementSet, GroupTable};
use serde::Serialize;
use serde_json::json;
use std::io::Write;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "haarcensus", version, about = "Censuses of graph representations of finite groups")]
struct Cli {
    /// Worker threads for census loops (counts never depend on this).
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect a group: order, exponent, class flags, c(G), involutions.
    Group {
        #[command(subcommand)]
        sub: GroupSub,
    },
    /// Emit a constructed graph as an edge list or DOT.
    Graph(GraphArgs),
    /// Automorphism group of a constructed graph.
    Aut(AutArgs),
    /// Exhaustive or Monte-Carlo censuses over connection-set families.
    Census {
        #[command(subcommand)]
        sub: CensusSub,
    },
    /// Evaluate bound formulas, or locate the threshold n_eps.
    Bounds(BoundsArgs),
    /// Run verification checks by lemma id (or --all).
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum GroupSub {
    /// Structural summary of a group given by its spec string.
    Info { spec: String },
}

#[derive(Args)]
struct GraphArgs {
    /// cayley | haar | mcayley
    kind: String,
    /// Group spec, e.g. C4, Q8, D6, C2^3, Dic(C6,3), C2xS3.
    spec: String,
    /// Connection set as a hex bitmask (cayley, haar).
    #[arg(long)]
    set: Option<String>,
    /// Block count for mcayley.
    #[arg(long)]
    m: Option<usize>,
    /// Set-matrix as JSON rows of hex bitmasks (mcayley).
    #[arg(long)]
    matrix: Option<String>,
    /// edges | dot
    #[arg(long, default_value = "edges")]
    format: String,
}

#[derive(Args)]
struct AutArgs {
    /// cayley | haar | mcayley
    kind: String,
    spec: String,
    #[arg(long)]
    set: Option<String>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    matrix: Option<String>,
    /// Part-preserving group of a Haar graph (haar only).
    #[arg(long)]
    plus: bool,
}

#[derive(Subcommand)]
enum CensusSub {
    /// Evaluate the predicate on every family member.
    Exhaustive(CensusArgs),
    /// Sample the family with a counter-based stream.
    Mc(McArgs),
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long)]
    group: String,
    /// subsets | inverse-closed | matrices | inverse-closed-matrices | skew
    #[arg(long)]
    family: String,
    #[arg(long)]
    m: Option<usize>,
    /// drr | grr | hgr | haar-optimal | dmsr | gmsr | mpgsr
    #[arg(long)]
    predicate: String,
    /// Write one CSV row per evaluation to this path.
    #[arg(long)]
    trace: Option<std::path::PathBuf>,
    /// Lift the exhaustive bit cap.
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct McArgs {
    #[command(flatten)]
    base: CensusArgs,
    #[arg(long)]
    samples: u64,
    /// Decimal or 0x-hex 64-bit seed; echoed verbatim in the report.
    #[arg(long, default_value = "0")]
    seed: String,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(subcommand)]
    sub: Option<BoundsSub>,
    #[arg(long)]
    n: Option<u128>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long, default_value_t = 2)]
    m: u64,
}

#[derive(Subcommand)]
enum BoundsSub {
    /// Locate 1 + the largest n at which the threshold inequality fails.
    FindNeps {
        #[arg(long)]
        eps: f64,
        /// Scan ceiling as a power of two (8..=126).
        #[arg(long, default_value_t = 96)]
        max_log2: u32,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Lemma ids, e.g. L2.2 L5.1.
    ids: Vec<String>,
    /// Run every lemma on its default grid.
    #[arg(long)]
    all: bool,
    #[arg(long)]
    group: Option<String>,
    /// Connection set parameter (hex), where a lemma takes one.
    #[arg(long)]
    set: Option<String>,
    /// Normal-subgroup parameter (hex), where a lemma takes one.
    #[arg(long)]
    core: Option<String>,
    /// Size parameter, where a lemma takes one.
    #[arg(long)]
    k: Option<u32>,
}

#[derive(Serialize)]
struct Manifest {
    command: Vec<String>,
    version: &'static str,
    workers: usize,
    caps: Caps,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<String>,
    wall_ms: f64,
}

#[derive(Serialize)]
struct Caps {
    max_group_order: usize,
    subgroup_enumeration: usize,
    group_automorphism_enumeration: usize,
    exhaustive_bits: u64,
}

fn manifest(workers: usize, seed: Option<String>, wall_ms: f64) -> Manifest {
    Manifest {
        command: std::env::args().collect(),
        version: env!("CARGO_PKG_VERSION"),
        workers,
        caps: Caps {
            max_group_order: haarcensus::group::MAX_ORDER,
            subgroup_enumeration: haarcensus::group::SUBGROUP_ENUM_MAX,
            group_automorphism_enumeration: haarcensus::group::AUT_ENUM_MAX,
            exhaustive_bits: haarcensus::census::EXHAUSTIVE_BIT_CAP,
        },
        seed,
        wall_ms,
    }
}

fn main() {
    let cli = Cli::parse();
    let workers = cli.workers.max(1);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build();
    let pool = match pool {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    };
    let outcome = pool.install(|| run(cli.command, workers));
    match outcome {
        Ok(all_passed) => std::process::exit(if all_passed { 0 } else { 1 }),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}

fn run(command: Command, workers: usize) -> Result<bool> {
    let start = Instant::now();
    match command {
        Command::Group { sub: GroupSub::Info { spec } } => {
            let g = make_group(&spec)?;
            let cls = classify_group(&g);
            let out = json!({
                "spec": spec,
                "name": g.name(),
                "order": g.order(),
                "exponent": cls.exponent,
                "abelian": cls.is_abelian,
                "elementary_abelian_2": cls.is_elementary_abelian_2,
                "abelian_exponent_gt_2": cls.is_abelian_exp_gt_2,
                "generalized_dicyclic": cls.is_generalized_dicyclic,
                "q8_times_e2": cls.is_q8_times_e2,
                "q8_e2_rank": cls.q8e2_witness.as_ref().map(|w| w.e2_basis.len()),
                "c_of_group": c_of_group(&g),
                "involutions": g.involution_count(),
                "manifest": manifest(workers, None, start.elapsed().as_secs_f64() * 1e3),
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(true)
        }
        Command::Graph(args) => {
            let (d, _g) = build_graph(&args.kind, &args.spec, &args.set, args.m, &args.matrix)?;
            match args.format.as_str() {
                "edges" => {
                    let stdout = std::io::stdout();
                    let mut w = stdout.lock();
                    for (u, v) in d.edge_list() {
                        writeln!(w, "{u} {v}")?;
                    }
                }
                "dot" => print!("{}", d.to_dot()),
                other => bail!("unknown format {other:?} (expected edges or dot)"),
            }
            Ok(true)
        }
        Command::Aut(args) => {
            let group = if args.plus {
                if args.kind != "haar" {
                    bail!("--plus applies to haar graphs only");
                }
                let g = make_group(&args.spec)?;
                let s = parse_set(&g, args.set.as_deref())?;
                haarcensus::aut::automorphism_group(&haar_graph_colored(&g, &s))
            } else {
                let (d, _) = build_graph(&args.kind, &args.spec, &args.set, args.m, &args.matrix)?;
                haarcensus::aut::automorphism_group(&d)
            };
            let out = json!({
                "order": group.order().to_string(),
                "degree": group.degree(),
                "generators": group.generators().iter().map(|p| p.cycle_notation()).collect::<Vec<_>>(),
                "part_preserving": args.plus,
                "manifest": manifest(workers, None, start.elapsed().as_secs_f64() * 1e3),
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(true)
        }
        Command::Census { sub } => {
            let (base, mode_mc) = match &sub {
                CensusSub::Exhaustive(a) => (a, None),
                CensusSub::Mc(a) => (&a.base, Some((a.samples, a.seed.clone()))),
            };
            let g = make_group(&base.group)?;
            let kind = FamilyKind::from_name(&base.family)?;
            let m = base.m.unwrap_or(if kind.is_matrix() { 2 } else { 1 });
            let family = FamilySpec::new(kind, g, m)?;
            let predicate = Predicate::from_name(&base.predicate)?;

            let trace_file = base
                .trace
                .as_ref()
                .map(|p| std::fs::File::create(p).with_context(|| format!("creating {}", p.display())))
                .transpose()?;
            let trace_writer = trace_file.map(|f| {
                let mut w = std::io::BufWriter::new(f);
                writeln!(w, "family_index,predicate,aut_order").expect("trace header");
                std::sync::Mutex::new(w)
            });
            let trace_writer = std::sync::Arc::new(trace_writer);
            let sink = trace_writer.clone();

            let mut opts = CensusOptions {
                force: base.force,
                seed_echo: mode_mc.as_ref().map(|(_, s)| s.clone()),
                trace: if trace_writer.is_some() {
                    Some(Box::new(move |row| {
                        if let Some(w) = sink.as_ref() {
                            let mut w = w.lock().unwrap();
                            writeln!(w, "{},{},{}", row.family_index, row.predicate, row.aut_order)
                                .expect("trace row");
                        }
                    }))
                } else {
                    None
                },
            };
            let seed_text = mode_mc.as_ref().map(|(_, s)| s.clone());
            let report = match mode_mc {
                None => exhaustive_census(&family, predicate, &mut opts)?,
                Some((samples, seed)) => {
                    let seed_value = parse_seed(&seed)?;
                    monte_carlo_census(&family, predicate, samples, seed_value, &mut opts)?
                }
            };
            drop(opts);
            if let Some(w) = std::sync::Arc::try_unwrap(trace_writer).ok().flatten() {
                w.into_inner().unwrap().flush()?;
            }
            let out = json!({
                "report": report,
                "manifest": manifest(workers, seed_text, start.elapsed().as_secs_f64() * 1e3),
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(true)
        }
        Command::Bounds(args) => {
            let out = match args.sub {
                Some(BoundsSub::FindNeps { eps, max_log2 }) => {
                    let r = bounds::find_n_eps(eps, max_log2)?;
                    json!({
                        "find_neps": r,
                        "manifest": manifest(workers, None, start.elapsed().as_secs_f64() * 1e3),
                    })
                }
                None => {
                    let n = args.n.ok_or_else(|| anyhow!("--n is required (or use find-neps)"))?;
                    let eps = args.eps.ok_or_else(|| anyhow!("--eps is required"))?;
                    let r = bounds::eval_bounds(n, eps, args.m)?;
                    json!({
                        "bounds": r,
                        "manifest": manifest(workers, None, start.elapsed().as_secs_f64() * 1e3),
                    })
                }
            };
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(true)
        }
        Command::Verify(args) => {
            let ids: Vec<String> = if args.all {
                checks::LEMMA_IDS.iter().map(|s| s.to_string()).collect()
            } else if args.ids.is_empty() {
                bail!("give lemma ids or --all");
            } else {
                args.ids.clone()
            };
            let req = CheckRequest {
                group: args.group.clone(),
                set: args.set.clone(),
                core: args.core.clone(),
                k: args.k,
            };
            let stdout = std::io::stdout();
            let mut w = stdout.lock();
            let mut total = 0usize;
            let mut failed = 0usize;
            for id in &ids {
                for result in checks::run_lemma(id, &req)? {
                    total += 1;
                    if !result.pass {
                        failed += 1;
                    }
                    writeln!(w, "{}", serde_json::to_string(&result)?)?;
                }
            }
            let summary = json!({
                "summary": {"checks": total, "failed": failed},
                "manifest": manifest(workers, None, start.elapsed().as_secs_f64() * 1e3),
            });
            writeln!(w, "{}", serde_json::to_string(&summary)?)?;
            Ok(failed == 0)
        }
    }
}

fn parse_seed(text: &str) -> Result<u64> {
    let t = text.trim();
    if let Some(hex) = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        u64::from_str_radix(hex, 16).with_context(|| format!("bad hex seed {text:?}"))
    } else {
        t.parse().with_context(|| format!("bad seed {text:?}"))
    }
}

fn parse_set(g: &GroupTable, text: Option<&str>) -> Result<ElementSet> {
    let text = text.ok_or_else(|| anyhow!("--set <hex> is required for this graph kind"))?;
    Bitset::from_hex(g.order(), text).map_err(|e| anyhow!(e))
}

fn parse_matrix(g: &GroupTable, m: usize, text: &str) -> Result<SetMatrix> {
    let rows: Vec<Vec<String>> = serde_json::from_str(text).context("matrix must be JSON rows of hex masks")?;
    if rows.len() != m || rows.iter().any(|r| r.len() != m) {
        bail!("matrix must be {m}x{m}");
    }
    let mut entries = Vec::with_capacity(m * m);
    for row in &rows {
        for cell in row {
            entries.push(Bitset::from_hex(g.order(), cell).map_err(|e| anyhow!(e))?);
        }
    }
    Ok(SetMatrix::new(m, entries)?)
}

fn build_graph(
    kind: &str,
    spec: &str,
    set: &Option<String>,
    m: Option<usize>,
    matrix: &Option<String>,
) -> Result<(ColoredDigraph, GroupTable)> {
    let g = make_group(spec)?;
    let d = match kind {
        "cayley" => cayley_digraph(&g, &parse_set(&g, set.as_deref())?),
        "haar" => haar_graph(&g, &parse_set(&g, set.as_deref())?),
        "mcayley" => {
            let m = m.ok_or_else(|| anyhow!("--m is required for mcayley"))?;
            let text = matrix.as_ref().ok_or_else(|| anyhow!("--matrix is required for mcayley"))?;
            m_cayley_digraph(&g, &parse_matrix(&g, m, text)?)
        }
        other => bail!("unknown graph kind {other:?} (expected cayley, haar, or mcayley)"),
    };
    Ok((d, g))
}

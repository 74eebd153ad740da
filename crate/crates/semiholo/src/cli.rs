//! Command-line driver.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use semiholo_core::algebra::{bind, bind_inverse, superpose_with, CompressorRegistry};
use semiholo_core::capacity::{mc_ambiguity, CapacityReport};
use semiholo_core::copu::{estimate_transistors, worst_case_activity, CopuConfig, CopuState, OpCommand, OpKind};
use semiholo_core::memory::{cleanup_query, unbind_query};
use semiholo_core::metric::{chain_dist, denoise_item, DenoiseMethod};
use semiholo_core::{BaseItem, Chain, Codebook, HandlerId, OverflowPolicy, Superposition, SystemParams};
use serde::Serialize;

use crate::codebook::{read_codebook, redcar};
use crate::config::ExperimentConfig;
use crate::error::{CliError, Result};
use crate::expr;
use crate::literal::{format_chain, format_item, parse_chain};
use crate::report::*;
use crate::script::parse_script;

const DEFAULT_D: usize = 8;
const DEFAULT_GAMMA: u32 = 2;
const DEFAULT_TRIALS: u64 = 10_000;
const REDCAR_EXPR: &str = "obj*car + col*red";
const REDCAR_ROLE: &str = "col";

#[derive(Debug, Parser)]
#[command(name = "semiholo", version, about = "Semi-holographic algebra, cleanup memory, capacity and CoPU tools")]
struct Cli {
    /// Emit JSON reports.
    #[arg(long, global = true)]
    json: bool,
    /// RNG seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Experiment config file.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Algebra on literal or named operands.
    Algebra {
        #[command(subcommand)]
        op: AlgebraCmd,
    },
    /// Evaluate an expression and look it up in a codebook.
    Query(QueryArgs),
    /// Capacity bound, derivable items and Monte-Carlo rates.
    Capacity(CapacityArgs),
    /// CoPU simulator.
    Copu {
        #[command(subcommand)]
        op: CopuCmd,
    },
}

#[derive(Debug, Args)]
struct ParamArgs {
    /// Modulus.
    #[arg(long)]
    p: Option<u32>,
    /// Elements per item.
    #[arg(long)]
    y: Option<usize>,
    /// Maximum chain rank [default: 8].
    #[arg(long)]
    d: Option<usize>,
    /// Codebook for named operands; also supplies the parameters.
    #[arg(long, value_name = "FILE")]
    codebook: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Policy {
    Reject,
    Truncate,
    Handoff,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Avg,
    Vote,
    Median,
}

#[derive(Debug, Subcommand)]
enum AlgebraCmd {
    /// Concatenate two chains.
    Superpose {
        #[command(flatten)]
        params: ParamArgs,
        /// Overflow policy.
        #[arg(long, value_enum, default_value = "reject")]
        policy: Policy,
        /// Handler id for `--policy handoff`.
        #[arg(long, default_value_t = 0)]
        handler: u32,
        a: String,
        b: String,
    },
    /// Bind two chains.
    Bind {
        #[command(flatten)]
        params: ParamArgs,
        /// Bind `a` with the inverse of `b`.
        #[arg(long)]
        inverse: bool,
        a: String,
        b: String,
    },
    /// Element-wise inverse of an item.
    Inverse {
        #[command(flatten)]
        params: ParamArgs,
        a: String,
    },
    /// Distance from an item to the nearest item of a chain.
    Dist {
        #[command(flatten)]
        params: ParamArgs,
        a: String,
        b: String,
    },
    /// Collapse a chain to one item.
    Compress {
        #[command(flatten)]
        params: ParamArgs,
        /// Registered compressor.
        #[arg(long, default_value = "mod-sum")]
        compressor: String,
        a: String,
    },
    /// Reduce noisy samples of an item.
    Denoise {
        #[command(flatten)]
        params: ParamArgs,
        /// Reducer.
        #[arg(long, value_enum, default_value = "vote")]
        method: Method,
        #[arg(required = true)]
        samples: Vec<String>,
    },
}

#[derive(Debug, Args)]
struct QueryArgs {
    /// Codebook file.
    #[arg(long, value_name = "FILE", required_unless_present = "demo_redcar")]
    codebook: Option<PathBuf>,
    /// Run the built-in red-car scenario.
    #[arg(long, conflicts_with = "codebook")]
    demo_redcar: bool,
    /// Role to unbind before the lookup.
    #[arg(long, value_name = "NAME")]
    unbind: Option<String>,
    /// Expression over codebook names.
    #[arg(required_unless_present = "demo_redcar")]
    expr: Option<String>,
}

#[derive(Debug, Args)]
struct CapacityArgs {
    /// Modulus.
    #[arg(long)]
    p: Option<u32>,
    /// Elements per item.
    #[arg(long)]
    y: Option<usize>,
    /// Maximum chain rank [default: 8].
    #[arg(long)]
    d: Option<usize>,
    /// Binding depths: a list such as `1,2,20` or a range such as `1-40`.
    #[arg(long, value_name = "LIST")]
    gamma: Option<String>,
    /// Run the Monte-Carlo probe as well.
    #[arg(long)]
    mc: bool,
    /// Vocabulary sizes for the probe.
    #[arg(long, value_name = "LIST")]
    vocab: Option<String>,
    /// Trials per vocabulary size.
    #[arg(long)]
    trials: Option<u64>,
    /// Emit CSV.
    #[arg(long, conflicts_with = "json")]
    csv: bool,
}

#[derive(Debug, Args)]
struct CopuArgs {
    /// Bits per element [default: 8].
    #[arg(long)]
    l: Option<u32>,
    /// Elements per item [default: 1].
    #[arg(long)]
    y: Option<usize>,
    /// Items per operand [default: 8].
    #[arg(long)]
    d: Option<usize>,
}

#[derive(Debug, Args)]
#[group(multiple = false)]
struct OpArgs {
    /// Superpose two chains.
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    superpose: Option<Vec<String>>,
    /// Bind two chains.
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    bind: Option<Vec<String>>,
    /// Bind A with the inverse of B on the subtract path.
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    bind_inverse: Option<Vec<String>>,
    /// Command script, one command per line. Falls back to the config file.
    #[arg(long, value_name = "FILE")]
    script: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum WorstKind {
    Superpose,
    Bind,
    All,
}

#[derive(Debug, Subcommand)]
enum CopuCmd {
    /// Execute commands and report results, cycles and toggles.
    Run {
        #[command(flatten)]
        cfg: CopuArgs,
        #[command(flatten)]
        ops: OpArgs,
    },
    /// Execute commands and print one line per clock cycle.
    Trace {
        #[command(flatten)]
        cfg: CopuArgs,
        #[command(flatten)]
        ops: OpArgs,
    },
    /// Worst-case switching activity.
    WorstCase {
        #[command(flatten)]
        cfg: CopuArgs,
        /// Operation to stress.
        #[arg(long, value_enum, default_value = "all")]
        kind: WorstKind,
    },
    /// Transistor-count estimate.
    Estimate {
        #[command(flatten)]
        cfg: CopuArgs,
    },
}

struct Ctx {
    json: bool,
    seed: u64,
    config: ExperimentConfig,
}

impl Ctx {
    fn emit<T: Serialize>(&self, doc: &T, text: String) -> Result<String> {
        if self.json {
            let mut s = serde_json::to_string_pretty(doc).expect("reports serialize");
            s.push('\n');
            Ok(s)
        } else {
            Ok(text)
        }
    }
}

fn resolve_params(args: &ParamArgs, ctx: &Ctx) -> Result<(SystemParams, Option<Codebook>)> {
    if let Some(path) = &args.codebook {
        let cb = read_codebook(path)?;
        let p = *cb.params();
        let clash = args.p.is_some_and(|v| v != p.p())
            || args.y.is_some_and(|v| v != p.y())
            || args.d.is_some_and(|v| v != p.d());
        if clash {
            return Err(CliError::Config("flags disagree with the codebook parameters".into()));
        }
        return Ok((p, Some(cb)));
    }
    let from_cfg = ctx.config.params;
    let p = args.p.or(from_cfg.map(|c| c.p)).ok_or_else(|| CliError::Config("missing --p".into()))?;
    let y = args.y.or(from_cfg.map(|c| c.y)).ok_or_else(|| CliError::Config("missing --y".into()))?;
    let d = args.d.or(from_cfg.map(|c| c.d)).unwrap_or(DEFAULT_D);
    let params = SystemParams::new(p, y, d).map_err(|e| CliError::Config(e.to_string()))?;
    Ok((params, None))
}

// Literals start with '['; anything else is an expression over the codebook.
fn operand(params: &SystemParams, cb: Option<&Codebook>, text: &str) -> Result<Chain> {
    if text.trim_start().starts_with('[') {
        return parse_chain(params, text);
    }
    let cb = cb.ok_or_else(|| CliError::Config(format!("{text:?} is not a literal and no --codebook was given")))?;
    expr::eval(&expr::parse(text)?, cb)
}

fn single_item(c: &Chain, what: &str) -> Result<BaseItem> {
    match c.items() {
        [one] => Ok(one.clone()),
        _ => Err(CliError::Parse(format!("{what}: expected a single item, found rank {}", c.rank()))),
    }
}

fn chain_text(c: &Chain) -> String {
    format!("{}\nrank {}\n", format_chain(c), c.rank())
}

fn cmd_algebra(op: &AlgebraCmd, ctx: &Ctx, err: &mut dyn Write) -> Result<String> {
    match op {
        AlgebraCmd::Superpose { params, policy, handler, a, b } => {
            let (p, cb) = resolve_params(params, ctx)?;
            let (a, b) = (operand(&p, cb.as_ref(), a)?, operand(&p, cb.as_ref(), b)?);
            let policy = match policy {
                Policy::Reject => OverflowPolicy::Reject,
                Policy::Truncate => OverflowPolicy::TruncateWithWarning,
                Policy::Handoff => OverflowPolicy::HandlerFlag(HandlerId(*handler)),
            };
            match superpose_with(&a, &b, policy)? {
                Superposition::Complete(c) => ctx.emit(&ChainReport::new("superpose", &c), chain_text(&c)),
                Superposition::Truncated { chain, dropped } => {
                    writeln!(err, "warning: rank limit {} reached, dropped {dropped} item(s)", p.d())?;
                    let mut doc = ChainReport::new("superpose", &chain);
                    doc.dropped = Some(dropped);
                    ctx.emit(&doc, chain_text(&chain))
                }
                Superposition::Handoff { handler, requested } => {
                    let mut doc = ChainReport::new("superpose", &Chain::empty(p));
                    doc.handler = Some(handler.0);
                    ctx.emit(&doc, format!("handoff handler={} requested_rank={requested}\n", handler.0))
                }
            }
        }
        AlgebraCmd::Bind { params, inverse, a, b } => {
            let (p, cb) = resolve_params(params, ctx)?;
            let (a, b) = (operand(&p, cb.as_ref(), a)?, operand(&p, cb.as_ref(), b)?);
            let (c, name) = if *inverse { (bind_inverse(&a, &b)?, "bind-inverse") } else { (bind(&a, &b)?, "bind") };
            ctx.emit(&ChainReport::new(name, &c), chain_text(&c))
        }
        AlgebraCmd::Inverse { params, a } => {
            let (p, cb) = resolve_params(params, ctx)?;
            let a = single_item(&operand(&p, cb.as_ref(), a)?, "operand")?;
            let c = Chain::singleton(p, a.inverse())?;
            ctx.emit(&ChainReport::new("inverse", &c), format!("{}\n", format_item(&a.inverse())))
        }
        AlgebraCmd::Dist { params, a, b } => {
            let (p, cb) = resolve_params(params, ctx)?;
            let a = single_item(&operand(&p, cb.as_ref(), a)?, "first operand")?;
            let b = operand(&p, cb.as_ref(), b)?;
            let distance = chain_dist(&a, &b)?;
            ctx.emit(&DistReport { params: (&p).into(), distance }, format!("{distance}\n"))
        }
        AlgebraCmd::Compress { params, compressor, a } => {
            let (p, cb) = resolve_params(params, ctx)?;
            let a = operand(&p, cb.as_ref(), a)?;
            let reg = CompressorRegistry::default();
            if reg.get(compressor).is_none() {
                return Err(CliError::Config(format!(
                    "unknown compressor {compressor:?}; available: {}",
                    reg.names().join(", ")
                )));
            }
            let item = reg.compress(compressor, &a)?;
            let c = Chain::singleton(p, item.clone())?;
            ctx.emit(&ChainReport::new("compress", &c), format!("{}\n", format_item(&item)))
        }
        AlgebraCmd::Denoise { params, method, samples } => {
            let (p, cb) = resolve_params(params, ctx)?;
            let items = samples
                .iter()
                .map(|s| single_item(&operand(&p, cb.as_ref(), s)?, s))
                .collect::<Result<Vec<_>>>()?;
            let method = match method {
                Method::Avg => DenoiseMethod::GeodesicPairAvg,
                Method::Vote => DenoiseMethod::MajorityVote,
                Method::Median => DenoiseMethod::Median,
            };
            let item = denoise_item(&items, method)?;
            let c = Chain::singleton(p, item.clone())?;
            ctx.emit(&ChainReport::new("denoise", &c), format!("{}\n", format_item(&item)))
        }
    }
}

fn cmd_query(args: &QueryArgs, ctx: &Ctx) -> Result<String> {
    let (cb, text, role) = if args.demo_redcar {
        let text = args.expr.clone().unwrap_or_else(|| REDCAR_EXPR.to_owned());
        let role = args.unbind.clone().or_else(|| args.expr.is_none().then(|| REDCAR_ROLE.to_owned()));
        (redcar(), text, role)
    } else {
        let path = args.codebook.as_ref().expect("clap enforces --codebook");
        (read_codebook(path)?, args.expr.clone().expect("clap enforces the expression"), args.unbind.clone())
    };
    let s = expr::eval(&expr::parse(&text)?, &cb)?;
    let (res, probe) = match &role {
        Some(r) => {
            let res = unbind_query(&cb, &s, r)?;
            let inv = Chain::singleton(*cb.params(), cb.get(r).expect("role exists").inverse())?;
            (res, bind(&inv, &s)?)
        }
        None => (cleanup_query(&cb, &s)?, s),
    };
    let doc = QueryReport::new(&text, role.as_deref(), &res, &probe);
    let mut line = format!("{} distance={} ambiguous={}", res.name, res.distance, res.ambiguous);
    if let Some((n, d)) = &res.runner_up {
        let _ = write!(line, " runner_up={n}:{d}");
    }
    line.push('\n');
    ctx.emit(&doc, line)
}

fn parse_list(text: &str, what: &str) -> Result<Vec<u64>> {
    let bad = || CliError::Config(format!("--{what}: cannot parse {text:?}"));
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim) {
        match part.split_once('-') {
            Some((a, b)) => {
                let (a, b): (u64, u64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
                if a > b {
                    return Err(bad());
                }
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|_| bad())?),
        }
    }
    Ok(out)
}

fn cmd_capacity(args: &CapacityArgs, ctx: &Ctx) -> Result<String> {
    let cfg = &ctx.config;
    let pp = ParamArgs { p: args.p, y: args.y, d: args.d, codebook: None };
    let (params, _) = resolve_params(&pp, ctx)?;
    let gammas: Vec<u32> = match &args.gamma {
        Some(t) => parse_list(t, "gamma")?
            .into_iter()
            .map(|g| u32::try_from(g).map_err(|_| CliError::Config(format!("gamma {g} too large"))))
            .collect::<Result<_>>()?,
        None => cfg.capacity.as_ref().map(|c| c.gammas.clone()).unwrap_or_else(|| vec![DEFAULT_GAMMA]),
    };
    if gammas.is_empty() || gammas.contains(&0) {
        return Err(CliError::Config("gamma values must be at least 1".into()));
    }
    let rows = gammas
        .iter()
        .map(|&g| Ok(CapacityRow::new(&params, &CapacityReport::new(&params, g)?)))
        .collect::<Result<Vec<_>>>()?;

    let mut mc = Vec::new();
    if args.mc {
        let mcw = cfg.mc.clone().unwrap_or_default();
        let vocab: Vec<usize> = match &args.vocab {
            Some(t) => parse_list(t, "vocab")?.into_iter().map(|v| v as usize).collect(),
            None if !mcw.vocab.is_empty() => mcw.vocab.clone(),
            None => return Err(CliError::Config("--mc needs --vocab".into())),
        };
        let trials = args.trials.or(mcw.trials).unwrap_or(DEFAULT_TRIALS);
        let mc_gammas = if args.gamma.is_none() { mcw.gamma.map_or(gammas.clone(), |g| vec![g]) } else { gammas.clone() };
        for &g in &mc_gammas {
            for &v in &vocab {
                let r = mc_ambiguity(&params, v, g, trials, ctx.seed).map_err(|e| match e {
                    semiholo_core::Error::InvalidArgument(m) => CliError::Config(m),
                    other => other.into(),
                })?;
                mc.push(McRow::new(&params, &r));
            }
        }
    }

    let doc = CapacityDoc { rows, mc };
    let text = if args.csv { capacity_csv(&doc) } else { capacity_table(&doc) };
    ctx.emit(&doc, text)
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "inf".to_owned(), |v| format!("{v:.6e}"))
}

fn capacity_csv(doc: &CapacityDoc) -> String {
    let mut s = String::from("p,y,gamma,q,ln_q,sparsity,bound,ln_bound,safe_vocab,derived,ln_derived,ln_derived_dominant,dominant_valid\n");
    for r in &doc.rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.p,
            r.y,
            r.gamma,
            r.q,
            r.ln_q,
            opt(r.sparsity),
            opt(r.bound),
            r.ln_bound,
            opt(r.safe_vocab),
            opt(r.derived),
            r.ln_derived,
            r.ln_derived_dominant,
            r.dominant_valid
        );
    }
    if !doc.mc.is_empty() {
        s.push_str("\np,y,vocab_size,gamma,trials,seed,collisions,collision_rate,collision_lo,collision_hi,failed_queries,ambiguous_query_rate,ambiguous_lo,ambiguous_hi\n");
        for m in &doc.mc {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                m.params.p,
                m.params.y,
                m.vocab_size,
                m.gamma,
                m.trials,
                m.seed,
                m.collisions,
                m.collision_rate,
                m.collision_ci[0],
                m.collision_ci[1],
                m.failed_queries,
                m.ambiguous_query_rate,
                m.ambiguous_ci[0],
                m.ambiguous_ci[1]
            );
        }
    }
    s
}

fn capacity_table(doc: &CapacityDoc) -> String {
    let mut s = String::new();
    if let Some(r) = doc.rows.first() {
        let _ = writeln!(s, "p={} y={} Q={}", r.p, r.y, r.q);
    }
    let _ = writeln!(s, "{:>6} {:>13} {:>10} {:>13} {:>10} {:>9}", "gamma", "bound", "ln_bound", "sparsity", "ln_J", "dominant");
    for r in &doc.rows {
        let _ = writeln!(
            s,
            "{:>6} {:>13} {:>10.4} {:>13} {:>10.4} {:>9}",
            r.gamma,
            opt(r.bound).replace("e", "e+").replace("e+-", "e-"),
            r.ln_bound,
            opt(r.sparsity).replace("e", "e+").replace("e+-", "e-"),
            r.ln_derived,
            if r.dominant_valid { "valid" } else { "-" }
        );
    }
    if !doc.mc.is_empty() {
        let _ = writeln!(s, "\n{:>8} {:>6} {:>8} {:>10} {:>19} {:>10} {:>19}", "vocab", "gamma", "trials", "collision", "95% ci", "query_fail", "95% ci");
        for m in &doc.mc {
            let _ = writeln!(
                s,
                "{:>8} {:>6} {:>8} {:>10.6} [{:.6}, {:.6}] {:>10.6} [{:.6}, {:.6}]",
                m.vocab_size,
                m.gamma,
                m.trials,
                m.collision_rate,
                m.collision_ci[0],
                m.collision_ci[1],
                m.ambiguous_query_rate,
                m.ambiguous_ci[0],
                m.ambiguous_ci[1]
            );
        }
        if let Some(m) = doc.mc.first() {
            let _ = writeln!(s, "seed {}", m.seed);
        }
    }
    s
}

fn copu_config(args: &CopuArgs, ctx: &Ctx) -> Result<CopuConfig> {
    let w = ctx.config.copu.clone().unwrap_or_default();
    let l = args.l.or(w.l).unwrap_or(8);
    let y = args.y.or(w.y).unwrap_or(1);
    let d = args.d.or(w.d).unwrap_or(8);
    CopuConfig::from_bits(l, y, d).map_err(|e| CliError::Config(e.to_string()))
}

fn read_ops(cfg: &CopuConfig, ops: &OpArgs, ctx: &Ctx) -> Result<Vec<OpCommand>> {
    let p = cfg.params();
    let pair = |kind: OpKind, v: &Vec<String>| -> Result<Vec<OpCommand>> {
        Ok(vec![OpCommand::new(kind, parse_chain(p, &v[0])?, parse_chain(p, &v[1])?)])
    };
    if let Some(v) = &ops.superpose {
        return pair(OpKind::Superpose, v);
    }
    if let Some(v) = &ops.bind {
        return pair(OpKind::Bind, v);
    }
    if let Some(v) = &ops.bind_inverse {
        return pair(OpKind::BindInverse, v);
    }
    let path = ops.script.clone().or_else(|| ctx.config.copu.as_ref().and_then(|c| c.script.clone()));
    let path = path.ok_or_else(|| CliError::Config("no command given; use --superpose, --bind, --bind-inverse or --script".into()))?;
    let text = std::fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
    parse_script(p, &text)
}

fn cmd_copu_run(cfg: &CopuConfig, cmds: &[OpCommand], traced: bool, ctx: &Ctx) -> Result<String> {
    let mut state = CopuState::new(*cfg);
    let mut docs = Vec::new();
    let mut lines = Vec::new();
    for cmd in cmds {
        let (out, stats, trace) = state.run_traced(cmd)?;
        docs.push(OpDoc::new(cfg, cmd.kind, &out, &stats));
        lines.extend(trace.iter().map(ToString::to_string));
    }
    let doc = CopuRunDoc { config: cfg.into(), ops: docs, trace: traced.then(|| lines.clone()) };
    let mut text = String::new();
    if traced {
        for l in &lines {
            let _ = writeln!(text, "{l}");
        }
    } else {
        for op in &doc.ops {
            let _ = writeln!(
                text,
                "{} {} rank={} cycles={} eq={} in={} dp={} reg={} total={} proxy={:.1}",
                op.kind,
                format_rows(&op.result),
                op.rank,
                op.cycles,
                u8::from(op.eq),
                op.activity.input_driver,
                op.activity.datapath,
                op.activity.register,
                op.activity.total,
                op.energy_proxy
            );
        }
    }
    ctx.emit(&doc, text)
}

fn format_rows(rows: &[Vec<u32>]) -> String {
    let items: Vec<String> = rows
        .iter()
        .map(|r| format!("[{}]", r.iter().map(u32::to_string).collect::<Vec<_>>().join(",")))
        .collect();
    match items.as_slice() {
        [one] => one.clone(),
        _ => format!("[{}]", items.join(",")),
    }
}

fn cmd_copu(op: &CopuCmd, ctx: &Ctx) -> Result<String> {
    match op {
        CopuCmd::Run { cfg, ops } | CopuCmd::Trace { cfg, ops } => {
            let cfg = copu_config(cfg, ctx)?;
            let cmds = read_ops(&cfg, ops, ctx)?;
            cmd_copu_run(&cfg, &cmds, matches!(op, CopuCmd::Trace { .. }), ctx)
        }
        CopuCmd::WorstCase { cfg, kind } => {
            let cfg = copu_config(cfg, ctx)?;
            let kinds: &[OpKind] = match kind {
                WorstKind::Superpose => &[OpKind::Superpose],
                WorstKind::Bind => &[OpKind::Bind],
                WorstKind::All => &[OpKind::Superpose, OpKind::Bind],
            };
            let docs = kinds
                .iter()
                .map(|&k| Ok(WorstCaseDoc::new(&cfg, &worst_case_activity(&cfg, k)?)))
                .collect::<Result<Vec<_>>>()?;
            let mut text = String::new();
            for w in &docs {
                let _ = writeln!(
                    text,
                    "{} ranks={}x{} cycles={} in={} dp={} reg={} total={} output_bits={} register_share={:.3} proxy={:.1}",
                    w.kind,
                    w.rank_a,
                    w.rank_b,
                    w.cycles,
                    w.activity.input_driver,
                    w.activity.datapath,
                    w.activity.register,
                    w.activity.total,
                    w.output_bits,
                    w.register_share,
                    w.energy_proxy
                );
            }
            if let [s, b] = docs.as_slice() {
                let _ = writeln!(text, "proxy ratio superpose/bind = {:.3}", s.energy_proxy / b.energy_proxy);
            }
            ctx.emit(&docs, text)
        }
        CopuCmd::Estimate { cfg } => {
            let cfg = copu_config(cfg, ctx)?;
            let t = estimate_transistors(&cfg);
            let doc = EstimateDoc::new(&cfg, &t);
            let mut text = String::new();
            let _ = writeln!(text, "datapath   {:>6}  (alu {}, mux/demux {})", t.datapath, t.alu, t.mux_demux);
            let _ = writeln!(text, "control    {:>6}", t.control);
            let _ = writeln!(text, "registers  {:>6}", t.registers);
            let _ = writeln!(text, "total      {:>6}", t.total);
            if t.extrapolated {
                text.push_str("note: mux/demux term extrapolated from the 8-item design\n");
            } else if !t.reference {
                text.push_str("note: scaled linearly from the reference bit-width\n");
            }
            ctx.emit(&doc, text)
        }
    }
}

fn write_out(path: &Path, body: &str) -> Result<()> {
    std::fs::write(path, body).map_err(|e| CliError::io(path, e))
}

fn run_cli(cli: &Cli, err: &mut dyn Write) -> Result<(String, Option<PathBuf>)> {
    let config = match &cli.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    let ctx = Ctx { json: cli.json, seed: cli.seed.or(config.seed).unwrap_or(0), config };
    let body = match &cli.command {
        Command::Algebra { op } => cmd_algebra(op, &ctx, err)?,
        Command::Query(a) => cmd_query(a, &ctx)?,
        Command::Capacity(a) => cmd_capacity(a, &ctx)?,
        Command::Copu { op } => cmd_copu(op, &ctx)?,
    };
    Ok((body, cli.out.clone().or_else(|| ctx.config.out.clone())))
}

/// Runs the tool on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = run_cli(&cli, err).and_then(|(body, path)| match path {
        Some(p) => write_out(&p, &body),
        None => out.write_all(body.as_bytes()).map_err(CliError::from),
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

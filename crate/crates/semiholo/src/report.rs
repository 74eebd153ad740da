//! Machine-readable reports written with `--json`.
//!
//! Every report deserializes back into its own type with unknown fields
//! rejected, which is how the schema is checked. Big integers are decimal
//! strings; reals that overflow `f64` are `null` and the matching `ln_*`
//! field carries the value.

use semiholo_core::capacity::{ln_biguint, CapacityReport, McAmbiguityResult};
use semiholo_core::copu::{energy_proxy, Activity, ActivityReport, CopuConfig, CopuStats, OpKind, TransistorReport};
use semiholo_core::{Chain, QueryResult, SystemParams};
use serde::{Deserialize, Serialize};

use crate::literal::chain_rows;

/// System parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsDoc {
    /// Modulus.
    pub p: u32,
    /// Elements per item.
    pub y: usize,
    /// Maximum rank.
    pub d: usize,
}

impl From<&SystemParams> for ParamsDoc {
    fn from(p: &SystemParams) -> Self {
        Self { p: p.p(), y: p.y(), d: p.d() }
    }
}

impl ParamsDoc {
    /// Validated parameters.
    pub fn to_params(self) -> semiholo_core::Result<SystemParams> {
        SystemParams::new(self.p, self.y, self.d)
    }
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

/// Result of an algebra command returning a chain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainReport {
    /// Command name.
    pub op: String,
    /// Parameters used.
    pub params: ParamsDoc,
    /// Result rank.
    pub rank: usize,
    /// Result items.
    pub chain: Vec<Vec<u32>>,
    /// Items dropped by a truncating superposition.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dropped: Option<usize>,
    /// Handler taking over an overflowing superposition.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub handler: Option<u32>,
}

impl ChainReport {
    /// Report for `chain` produced by `op`.
    pub fn new(op: &str, chain: &Chain) -> Self {
        Self {
            op: op.to_owned(),
            params: chain.params().into(),
            rank: chain.rank(),
            chain: chain_rows(chain),
            dropped: None,
            handler: None,
        }
    }
}

/// Result of `algebra dist`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistReport {
    /// Parameters used.
    pub params: ParamsDoc,
    /// Distance from the item to the nearest chain item.
    pub distance: u64,
}

/// Result of a codebook query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QueryReport {
    /// Expression queried.
    pub expr: String,
    /// Role unbound before the lookup, if any.
    pub unbind: Option<String>,
    /// Nearest entry.
    pub name: String,
    /// Its distance.
    pub distance: u64,
    /// Second-nearest entry.
    pub runner_up: Option<String>,
    /// Its distance.
    pub runner_up_distance: Option<u64>,
    /// Nearest and runner-up tie.
    pub ambiguous: bool,
    /// Chain that was looked up.
    pub probe: Vec<Vec<u32>>,
}

impl QueryReport {
    /// Report for `res` given the probe chain.
    pub fn new(expr: &str, unbind: Option<&str>, res: &QueryResult, probe: &Chain) -> Self {
        Self {
            expr: expr.to_owned(),
            unbind: unbind.map(str::to_owned),
            name: res.name.clone(),
            distance: res.distance,
            runner_up: res.runner_up.as_ref().map(|r| r.0.clone()),
            runner_up_distance: res.runner_up.as_ref().map(|r| r.1),
            ambiguous: res.ambiguous,
            probe: chain_rows(probe),
        }
    }
}

/// Capacity figures for one binding depth.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapacityRow {
    /// Modulus.
    pub p: u32,
    /// Elements per item.
    pub y: usize,
    /// Binding depth.
    pub gamma: u32,
    /// `p^y`, decimal.
    pub q: String,
    /// `ln p^y`.
    pub ln_q: f64,
    /// Sparsity factor `Q / Q_s`.
    pub sparsity: Option<f64>,
    /// Bound on the safe vocabulary.
    pub bound: Option<f64>,
    /// `ln` of the bound.
    pub ln_bound: f64,
    /// Safe vocabulary `Q / s`.
    pub safe_vocab: Option<f64>,
    /// Derivable items `J`.
    pub derived: Option<f64>,
    /// `ln J`.
    pub ln_derived: f64,
    /// `ln` of the dominant term of `J`.
    pub ln_derived_dominant: f64,
    /// Whether `Q_s / Gamma >= 10`, which justifies the dominant term.
    pub dominant_valid: bool,
}

impl CapacityRow {
    /// Row for `params` from a computed report.
    pub fn new(params: &SystemParams, r: &CapacityReport) -> Self {
        Self {
            p: params.p(),
            y: params.y(),
            gamma: r.gamma,
            q: r.max_capacity.to_string(),
            ln_q: ln_biguint(&r.max_capacity),
            sparsity: finite(r.sparsity),
            bound: finite(r.bound()),
            ln_bound: r.ln_bound,
            safe_vocab: finite(r.safe_vocab()),
            derived: finite(r.derived.total()),
            ln_derived: r.derived.ln_total,
            ln_derived_dominant: r.derived.ln_dominant,
            dominant_valid: r.derived.dominant_valid,
        }
    }
}

/// Monte-Carlo collision and query-failure rates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McRow {
    /// Parameters used.
    pub params: ParamsDoc,
    /// Vocabulary size.
    pub vocab_size: usize,
    /// Binding depth.
    pub gamma: u32,
    /// Trials run.
    pub trials: u64,
    /// Seed.
    pub seed: u64,
    /// Derived items landing on a vocabulary entry.
    pub collisions: u64,
    /// `collisions / trials`.
    pub collision_rate: f64,
    /// 95% Wilson interval.
    pub collision_ci: [f64; 2],
    /// Unbind queries returning a wrong entry or a tie.
    pub failed_queries: u64,
    /// `failed_queries / trials`.
    pub ambiguous_query_rate: f64,
    /// 95% Wilson interval.
    pub ambiguous_ci: [f64; 2],
}

impl McRow {
    /// Row for a Monte-Carlo result.
    pub fn new(params: &SystemParams, r: &McAmbiguityResult) -> Self {
        Self {
            params: params.into(),
            vocab_size: r.vocab_size,
            gamma: r.gamma,
            trials: r.trials,
            seed: r.seed,
            collisions: r.collisions,
            collision_rate: r.collision_rate,
            collision_ci: [r.collision_ci.0, r.collision_ci.1],
            failed_queries: r.failed_queries,
            ambiguous_query_rate: r.ambiguous_query_rate,
            ambiguous_ci: [r.ambiguous_ci.0, r.ambiguous_ci.1],
        }
    }
}

/// Output of `capacity`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapacityDoc {
    /// One row per binding depth.
    pub rows: Vec<CapacityRow>,
    /// Monte-Carlo rows, when requested.
    pub mc: Vec<McRow>,
}

/// CoPU dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CopuDoc {
    /// Bits per element.
    pub l: u32,
    /// Elements per item.
    pub y: usize,
    /// Items per operand.
    pub d: usize,
    /// Clock period.
    pub clock_period_ns: f64,
}

impl From<&CopuConfig> for CopuDoc {
    fn from(c: &CopuConfig) -> Self {
        Self { l: c.l(), y: c.params().y(), d: c.params().d(), clock_period_ns: c.clock_period_ns }
    }
}

/// Toggle counts by class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActivityDoc {
    /// Operand input drivers.
    pub input_driver: u64,
    /// Datapath bus.
    pub datapath: u64,
    /// Output register nodes.
    pub register: u64,
    /// Sum of the three.
    pub total: u64,
}

impl From<Activity> for ActivityDoc {
    fn from(a: Activity) -> Self {
        Self { input_driver: a.input_driver, datapath: a.datapath, register: a.register, total: a.total() }
    }
}

/// One simulated operation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpDoc {
    /// `superpose`, `bind` or `bind-inverse`.
    pub kind: String,
    /// Result items.
    pub result: Vec<Vec<u32>>,
    /// Result rank.
    pub rank: usize,
    /// Clock cycles.
    pub cycles: u64,
    /// Final EQ flag.
    pub eq: bool,
    /// Toggles by class.
    pub activity: ActivityDoc,
    /// Output data bits flipped.
    pub output_bits: u64,
    /// Lumped controller toggles.
    pub controller: u64,
    /// Weighted toggle sum, arbitrary units.
    pub energy_proxy: f64,
}

impl OpDoc {
    /// Report for one operation.
    pub fn new(cfg: &CopuConfig, kind: OpKind, result: &Chain, stats: &CopuStats) -> Self {
        Self {
            kind: kind.label().to_owned(),
            result: chain_rows(result),
            rank: result.rank(),
            cycles: stats.cycles,
            eq: stats.eq,
            activity: stats.activity.into(),
            output_bits: stats.output_bits,
            controller: stats.controller,
            energy_proxy: energy_proxy(stats, cfg),
        }
    }
}

/// Output of `copu run` and `copu trace`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CopuRunDoc {
    /// Machine used.
    pub config: CopuDoc,
    /// Operations in order.
    pub ops: Vec<OpDoc>,
    /// Cycle trace lines, for `copu trace`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trace: Option<Vec<String>>,
}

/// Output of `copu worst-case`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorstCaseDoc {
    /// Machine used.
    pub config: CopuDoc,
    /// Operation exercised.
    pub kind: String,
    /// Rank of operand A.
    pub rank_a: usize,
    /// Rank of operand B.
    pub rank_b: usize,
    /// Clock cycles.
    pub cycles: u64,
    /// Toggles by class.
    pub activity: ActivityDoc,
    /// Output data bits flipped.
    pub output_bits: u64,
    /// Register share of all toggles.
    pub register_share: f64,
    /// Weighted toggle sum, arbitrary units.
    pub energy_proxy: f64,
}

impl WorstCaseDoc {
    /// Report for one worst-case stimulus.
    pub fn new(cfg: &CopuConfig, r: &ActivityReport) -> Self {
        Self {
            config: cfg.into(),
            kind: r.kind.label().to_owned(),
            rank_a: r.rank_a,
            rank_b: r.rank_b,
            cycles: r.cycles,
            activity: r.activity.into(),
            output_bits: r.output_bits,
            register_share: r.register_share(),
            energy_proxy: energy_proxy(&r.stats(), cfg),
        }
    }
}

/// Output of `copu estimate`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EstimateDoc {
    /// Machine used.
    pub config: CopuDoc,
    /// ALU share of the datapath.
    pub alu: u64,
    /// MUX/DEMUX share.
    pub mux_demux: u64,
    /// Datapath.
    pub datapath: u64,
    /// Control module.
    pub control: u64,
    /// Registers.
    pub registers: u64,
    /// Total.
    pub total: u64,
    /// Matches the reference machine.
    pub reference: bool,
    /// MUX/DEMUX term scaled to another tree depth.
    pub extrapolated: bool,
}

impl EstimateDoc {
    /// Report for a transistor estimate.
    pub fn new(cfg: &CopuConfig, t: &TransistorReport) -> Self {
        Self {
            config: cfg.into(),
            alu: t.alu,
            mux_demux: t.mux_demux,
            datapath: t.datapath,
            control: t.control,
            registers: t.registers,
            total: t.total,
            reference: t.reference,
            extrapolated: t.extrapolated,
        }
    }
}

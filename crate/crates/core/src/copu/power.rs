use super::state::{Activity, CopuState, CopuStats};
use super::{CopuConfig, OpCommand, OpKind};
use crate::algebra::{BaseItem, Chain};
use crate::{Error, Result};

/// Switching activity for a worst-case stimulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ActivityReport {
    /// Operation exercised.
    pub kind: OpKind,
    /// Rank of operand A.
    pub rank_a: usize,
    /// Rank of operand B.
    pub rank_b: usize,
    /// Toggles by node class.
    pub activity: Activity,
    /// Data bits flipped in the output buffer.
    pub output_bits: u64,
    /// Cycles taken.
    pub cycles: u64,
}

impl ActivityReport {
    /// Share of all toggles that landed in output registers.
    pub fn register_share(&self) -> f64 {
        let total = self.activity.total();
        if total == 0 {
            0.0
        } else {
            self.activity.register as f64 / total as f64
        }
    }

    /// Per-op stats view for [`energy_proxy`].
    pub fn stats(&self) -> CopuStats {
        CopuStats {
            cycles: self.cycles,
            activity: self.activity,
            output_bits: self.output_bits,
            ..CopuStats::default()
        }
    }
}

fn ones_chain(cfg: &CopuConfig, rank: usize) -> Chain {
    let params = *cfg.params();
    let item = BaseItem::new(&params, alloc::vec![params.p() - 1; params.y()]).expect("p-1 is a residue");
    Chain::new(params, alloc::vec![item; rank]).expect("rank <= d")
}

/// Operand ranks of the worst-case stimulus: the widest superposition
/// (`ceil(d/2) + floor(d/2)`) or the `d/2 x 2` binding (`1 x 1` when `d = 1`).
pub fn worst_case_ranks(cfg: &CopuConfig, kind: OpKind) -> (usize, usize) {
    let d = cfg.params().d();
    match kind {
        OpKind::Superpose => (d.div_ceil(2), d / 2),
        OpKind::Bind | OpKind::BindInverse => {
            let rb = d.min(2);
            (d / rb, rb)
        }
    }
}

/// Runs the worst-case stimulus from a power-on (all-zero) state: every
/// operand item all-ones, so every driven line rises.
///
/// For binding the ALU computes `1..1 + 1..1 = 1..10`, flipping all but one
/// output bit per element.
pub fn worst_case_activity(cfg: &CopuConfig, kind: OpKind) -> Result<ActivityReport> {
    if kind == OpKind::BindInverse {
        return Err(Error::InvalidArgument("worst case is defined for superpose and bind".into()));
    }
    let (ra, rb) = worst_case_ranks(cfg, kind);
    let cmd = OpCommand::new(kind, ones_chain(cfg, ra), ones_chain(cfg, rb));
    run_stimulus(cfg, &cmd)
}

/// Runs `cmd` on a power-on state and reports its activity.
pub fn run_stimulus(cfg: &CopuConfig, cmd: &OpCommand) -> Result<ActivityReport> {
    let mut state = CopuState::new(*cfg);
    let (_, stats) = state.run_op(cmd)?;
    Ok(ActivityReport {
        kind: cmd.kind,
        rank_a: cmd.a.rank(),
        rank_b: cmd.b.rank(),
        activity: stats.activity,
        output_bits: stats.output_bits,
        cycles: stats.cycles,
    })
}

/// Weighted toggle sum in arbitrary energy units.
pub fn energy_proxy(stats: &CopuStats, cfg: &CopuConfig) -> f64 {
    let w = cfg.toggle_weights;
    let a = stats.activity;
    a.input_driver as f64 * w.input_driver + a.datapath as f64 * w.datapath + a.register as f64 * w.register
}

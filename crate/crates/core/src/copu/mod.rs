//! Cycle-accurate model of the cognitive processing unit (CoPU).
//!
//! The datapath has two `d`-item operand registers with rank flags, a
//! MUX/DEMUX pair that routes one item per cycle, an `l`-bit ripple-carry
//! ADD/SUB ALU per element and a shift-register output buffer. The controller
//! spends one cycle decoding the request and doing flag arithmetic, then one
//! cycle per result item, raising `done` on the last one. An 8-item result
//! therefore takes 9 cycles.
//!
//! Switching activity is counted on three node classes: input drivers,
//! the datapath bus after the MUX, and output register data cells. Flag
//! lines belong to the controller, whose activity is a fixed per-cycle charge
//! reported separately.

mod alu;
mod power;
mod state;
mod trace;
mod transistors;

pub use alu::{add_sub, AluResult};
pub use power::{energy_proxy, worst_case_activity, ActivityReport};
pub use state::{Activity, CopuState, CopuStats, Phase, Signals};
pub use trace::{CycleRecord, PhaseLabel, RegisterSnapshot};
pub use transistors::{estimate_transistors, TransistorReport};

use alloc::format;

use crate::algebra::{Chain, SystemParams};
use crate::{Error, Result};

/// Relative energy per toggle for each activity class. Arbitrary units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToggleWeights {
    /// Inverters driving the operand inputs.
    pub input_driver: f64,
    /// Datapath bus after the MUX.
    pub datapath: f64,
    /// Output register cells.
    pub register: f64,
}

impl Default for ToggleWeights {
    fn default() -> Self {
        Self {
            input_driver: 1.0,
            datapath: 1.0,
            register: 1.0,
        }
    }
}

/// A CoPU instance: power-of-two `(p, y, d)` plus clocking and energy weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CopuConfig {
    params: SystemParams,
    /// Clock period in nanoseconds.
    pub clock_period_ns: f64,
    /// Energy weights for [`energy_proxy`].
    pub toggle_weights: ToggleWeights,
}

impl CopuConfig {
    /// Requires `p`, `y` and `d` to be powers of two.
    pub fn new(params: SystemParams) -> Result<Self> {
        if !params.is_power_of_two() {
            return Err(Error::InvalidParams(format!(
                "CoPU needs power-of-two p, y, d; got p={}, y={}, d={}",
                params.p(),
                params.y(),
                params.d()
            )));
        }
        Ok(Self {
            params,
            clock_period_ns: 20.0,
            toggle_weights: ToggleWeights::default(),
        })
    }

    /// Builds a config from element bit-width `l` (`p = 2^l`).
    pub fn from_bits(l: u32, y: usize, d: usize) -> Result<Self> {
        if l == 0 || l > 31 {
            return Err(Error::InvalidParams(format!("l must be in 1..=31, got {l}")));
        }
        Self::new(SystemParams::new(1 << l, y, d)?)
    }

    /// The reference design: `l = 8`, `y = 1`, `d = 8`, 64-bit operands.
    pub fn reference() -> Self {
        Self::from_bits(8, 1, 8).expect("reference params are valid")
    }

    /// Algebra parameters.
    pub fn params(&self) -> &SystemParams {
        &self.params
    }

    /// Bits per element.
    pub fn l(&self) -> u32 {
        self.params.l().expect("checked in constructor")
    }

    /// Bits per item, `l * y`.
    pub fn item_bits(&self) -> u64 {
        u64::from(self.l()) * self.params.y() as u64
    }

    /// Operand register width in bits, `l * y * d`.
    pub fn operand_bits(&self) -> u64 {
        self.item_bits() * self.params.d() as u64
    }

    /// Clock frequency in MHz.
    pub fn clock_mhz(&self) -> f64 {
        1_000.0 / self.clock_period_ns
    }
}

/// Operation requested from the CoPU.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OpKind {
    /// Concatenation via MUX/DEMUX routing.
    Superpose,
    /// Pairwise element-wise ADD.
    Bind,
    /// Pairwise element-wise SUB: binding with the inverse of the second operand.
    BindInverse,
}

impl OpKind {
    /// Lower-case label used in traces and the CLI.
    pub fn label(self) -> &'static str {
        match self {
            Self::Superpose => "superpose",
            Self::Bind => "bind",
            Self::BindInverse => "bind-inverse",
        }
    }
}

/// An operation with its two operand chains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpCommand {
    /// Operation.
    pub kind: OpKind,
    /// First operand (register A).
    pub a: Chain,
    /// Second operand (register B).
    pub b: Chain,
}

impl OpCommand {
    /// Bundles an operation with its operands.
    pub fn new(kind: OpKind, a: Chain, b: Chain) -> Self {
        Self { kind, a, b }
    }

    /// Rank of the result, or the error the algebra would raise.
    pub fn result_rank(&self) -> Result<usize> {
        if self.a.params() != self.b.params() {
            return Err(Error::ParamsMismatch);
        }
        let d = self.a.params().d();
        let requested = match self.kind {
            OpKind::Superpose => self.a.rank() + self.b.rank(),
            OpKind::Bind | OpKind::BindInverse => {
                if self.a.is_empty() || self.b.is_empty() {
                    return Err(Error::EmptyOperand);
                }
                self.a.rank().saturating_mul(self.b.rank())
            }
        };
        if requested > d {
            return Err(Error::RankOverflow {
                requested,
                capacity: d,
            });
        }
        Ok(requested)
    }

    /// The algebra's result for this command.
    pub fn golden(&self) -> Result<Chain> {
        match self.kind {
            OpKind::Superpose => crate::algebra::superpose(&self.a, &self.b),
            OpKind::Bind => crate::algebra::bind(&self.a, &self.b),
            OpKind::BindInverse => crate::algebra::bind_inverse(&self.a, &self.b),
        }
    }
}

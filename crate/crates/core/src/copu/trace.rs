use alloc::vec::Vec;
use core::fmt;

use super::state::{Activity, Signals};

/// What the controller did in a cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhaseLabel {
    /// Nothing.
    Idle,
    /// Request decode and flag arithmetic.
    Decode,
    /// Sub-operation for a result slot.
    Execute(usize),
}

impl fmt::Display for PhaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Idle => f.write_str("idle"),
            Self::Decode => f.write_str("decode"),
            Self::Execute(k) => write!(f, "exec{k}"),
        }
    }
}

/// Register contents captured at the end of a cycle.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RegisterSnapshot {
    words: Vec<u32>,
    bits: u32,
    y: usize,
}

impl RegisterSnapshot {
    pub(crate) fn new(words: &[u32], bits: u32, y: usize) -> Self {
        Self {
            words: words.to_vec(),
            bits,
            y,
        }
    }

    /// Element words, item-major.
    pub fn words(&self) -> &[u32] {
        &self.words
    }
}

/// Items as fixed-width hex, slot 0 first, separated by `_`.
impl fmt::Display for RegisterSnapshot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.bits.div_ceil(4) as usize;
        for (k, item) in self.words.chunks(self.y).enumerate() {
            if k > 0 {
                f.write_str("_")?;
            }
            for w in item {
                write!(f, "{w:0width$x}")?;
            }
        }
        Ok(())
    }
}

/// One line of a cycle trace.
///
/// Rendered as space-separated `key=value` fields in a fixed order:
/// `cycle phase rq en addsub eq done a b out flags d_in d_dp d_reg`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleRecord {
    /// Cycle index since power-on, starting at 1.
    pub cycle: u64,
    /// Controller action.
    pub phase: PhaseLabel,
    /// Signals at the end of the cycle.
    pub signals: Signals,
    /// Operand A register.
    pub op_a: RegisterSnapshot,
    /// Operand B register.
    pub op_b: RegisterSnapshot,
    /// Output buffer.
    pub out: RegisterSnapshot,
    /// Rank flags: A, B, output.
    pub flags: (u32, u32, u32),
    /// Toggles in this cycle (the decode cycle carries the operand load).
    pub delta: Activity,
}

impl fmt::Display for CycleRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = |v: bool| u8::from(v);
        let s = &self.signals;
        write!(
            f,
            "cycle={} phase={} rq={} en={} addsub={} eq={} done={} a={} b={} out={} flags={},{},{} d_in={} d_dp={} d_reg={}",
            self.cycle,
            self.phase,
            b(s.rq),
            b(s.en),
            b(s.addsub),
            b(s.eq),
            b(s.done),
            self.op_a,
            self.op_b,
            self.out,
            self.flags.0,
            self.flags.1,
            self.flags.2,
            self.delta.input_driver,
            self.delta.datapath,
            self.delta.register,
        )
    }
}

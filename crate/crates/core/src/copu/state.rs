use alloc::vec::Vec;
use core::ops::{Add, AddAssign};

use super::alu::add_sub;
use super::trace::{CycleRecord, PhaseLabel, RegisterSnapshot};
use super::{CopuConfig, OpCommand, OpKind};
use crate::algebra::{BaseItem, Chain};
use crate::{Error, Result};

/// Node toggles per stored bit change in a master-slave flip-flop.
pub const REGISTER_NODES_PER_BIT: u64 = 2;

/// Controller-internal toggles charged per active cycle (a Gray-coded step
/// counter flips one bit per cycle). Flag arithmetic is folded in here.
pub const CONTROLLER_TOGGLES_PER_CYCLE: u64 = 1;

fn hamming(a: &[u32], b: &[u32]) -> u64 {
    a.iter().zip(b).map(|(x, y)| u64::from((x ^ y).count_ones())).sum()
}

/// Toggle counts per node class.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Activity {
    /// Operand input lines.
    pub input_driver: u64,
    /// Bus after the MUX (routed item or ALU output).
    pub datapath: u64,
    /// Output register data nodes.
    pub register: u64,
}

impl Activity {
    /// Sum over all classes.
    pub fn total(&self) -> u64 {
        self.input_driver + self.datapath + self.register
    }
}

impl Add for Activity {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self {
            input_driver: self.input_driver + rhs.input_driver,
            datapath: self.datapath + rhs.datapath,
            register: self.register + rhs.register,
        }
    }
}

impl AddAssign for Activity {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

/// Controller FSM state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    /// Waiting; a raised RQ starts the decode cycle on the next step.
    Idle,
    /// Next step executes the sub-operation producing result slot `slot`.
    Execute {
        /// Result item index.
        slot: usize,
    },
}

/// Control signals observed during the last cycle.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Signals {
    /// Request pending.
    pub rq: bool,
    /// ALU enabled.
    pub en: bool,
    /// ALU subtracting.
    pub addsub: bool,
    /// Operands equal (latched AND across sub-operations).
    pub eq: bool,
    /// Operation finished this cycle.
    pub done: bool,
}

/// Totals for one completed operation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct CopuStats {
    /// Clock cycles from request to `done`, inclusive.
    pub cycles: u64,
    /// Toggles by class, including the operand load.
    pub activity: Activity,
    /// Data bits that changed in the output buffer.
    pub output_bits: u64,
    /// Lumped controller toggles; not part of [`Activity`].
    pub controller: u64,
    /// Final EQ flag.
    pub eq: bool,
    /// Result rank written to the output flag bits.
    pub result_rank: usize,
}

impl Add for CopuStats {
    type Output = Self;

    /// Merges counters; `eq` and `result_rank` are taken from `rhs`.
    fn add(self, rhs: Self) -> Self {
        Self {
            cycles: self.cycles + rhs.cycles,
            activity: self.activity + rhs.activity,
            output_bits: self.output_bits + rhs.output_bits,
            controller: self.controller + rhs.controller,
            eq: rhs.eq,
            result_rank: rhs.result_rank,
        }
    }
}

/// Registers, flags, controller state and counters of one CoPU.
#[derive(Debug, Clone, PartialEq)]
pub struct CopuState {
    cfg: CopuConfig,
    op_a: Vec<u32>,
    op_b: Vec<u32>,
    flag_a: u32,
    flag_b: u32,
    out: Vec<u32>,
    out_flag: u32,
    bus: Vec<u32>,
    kind: OpKind,
    result_rank: usize,
    phase: Phase,
    signals: Signals,
    cycle_count: u64,
    activity: Activity,
    output_bits: u64,
    controller: u64,
}

impl CopuState {
    /// Power-on state: every node at 0.
    pub fn new(cfg: CopuConfig) -> Self {
        let n = cfg.params().n();
        let y = cfg.params().y();
        Self {
            cfg,
            op_a: alloc::vec![0; n],
            op_b: alloc::vec![0; n],
            flag_a: 0,
            flag_b: 0,
            out: alloc::vec![0; n],
            out_flag: 0,
            bus: alloc::vec![0; y],
            kind: OpKind::Superpose,
            result_rank: 0,
            phase: Phase::Idle,
            signals: Signals::default(),
            cycle_count: 0,
            activity: Activity::default(),
            output_bits: 0,
            controller: 0,
        }
    }

    /// Configuration.
    pub fn config(&self) -> &CopuConfig {
        &self.cfg
    }

    /// Controller phase.
    pub fn phase(&self) -> Phase {
        self.phase
    }

    /// Signals of the last cycle (RQ reflects a pending request).
    pub fn signals(&self) -> Signals {
        self.signals
    }

    /// Cycles stepped since power-on.
    pub fn cycle_count(&self) -> u64 {
        self.cycle_count
    }

    /// Toggles accumulated since power-on.
    pub fn activity(&self) -> Activity {
        self.activity
    }

    /// Rank flags of operands A and B and of the output buffer.
    pub fn flags(&self) -> (u32, u32, u32) {
        (self.flag_a, self.flag_b, self.out_flag)
    }

    /// True while a request is pending or executing.
    pub fn is_busy(&self) -> bool {
        self.signals.rq || self.phase != Phase::Idle
    }

    /// Raw register contents: operand A, operand B, output buffer.
    pub fn registers(&self) -> (&[u32], &[u32], &[u32]) {
        (&self.op_a, &self.op_b, &self.out)
    }

    fn flatten(&self, chain: &Chain) -> Vec<u32> {
        let mut words = Vec::with_capacity(self.cfg.params().n());
        for item in chain.items() {
            words.extend_from_slice(item.elems());
        }
        words.resize(self.cfg.params().n(), 0);
        words
    }

    /// Stages operands and flags and raises RQ.
    ///
    /// Input-driver toggles grow by the Hamming distance between old and new
    /// operand data; flag lines are not counted.
    pub fn load(&mut self, cmd: &OpCommand) -> Result<()> {
        if self.is_busy() {
            return Err(Error::Busy);
        }
        if cmd.a.params() != self.cfg.params() {
            return Err(Error::ParamsMismatch);
        }
        let rank = cmd.result_rank()?;
        let a = self.flatten(&cmd.a);
        let b = self.flatten(&cmd.b);
        self.activity.input_driver += hamming(&self.op_a, &a) + hamming(&self.op_b, &b);
        self.op_a = a;
        self.op_b = b;
        self.flag_a = cmd.a.rank() as u32;
        self.flag_b = cmd.b.rank() as u32;
        self.kind = cmd.kind;
        self.result_rank = rank;
        self.signals = Signals {
            rq: true,
            ..Signals::default()
        };
        Ok(())
    }

    fn item(words: &[u32], y: usize, k: usize) -> &[u32] {
        &words[k * y..(k + 1) * y]
    }

    fn charge_register(&mut self, flips: u64) {
        self.activity.register += REGISTER_NODES_PER_BIT * flips;
    }

    /// Advances one clock cycle and reports what happened in it.
    pub fn step(&mut self) -> CycleRecord {
        self.cycle_count += 1;
        let before = self.activity;
        let y = self.cfg.params().y();
        let mut label = None;
        // The record shows RQ as sampled at the start of the cycle.
        let rq_seen = self.signals.rq;
        self.signals.done = false;
        self.signals.en = false;
        self.signals.addsub = false;

        match self.phase {
            Phase::Idle if self.signals.rq => {
                // Decode: flag arithmetic and EQ comparator setup.
                label = Some(PhaseLabel::Decode);
                self.signals.rq = false;
                self.controller += CONTROLLER_TOGGLES_PER_CYCLE;
                self.out_flag = self.result_rank as u32;
                self.signals.eq = self.operands_equal();
                if self.result_rank == 0 {
                    self.signals.done = true;
                } else {
                    self.phase = Phase::Execute { slot: 0 };
                }
            }
            Phase::Idle => {
                self.signals.eq = false;
            }
            Phase::Execute { slot } => {
                label = Some(PhaseLabel::Execute(slot));
                self.controller += CONTROLLER_TOGGLES_PER_CYCLE;
                let value: Vec<u32> = match self.kind {
                    OpKind::Superpose => {
                        let ra = self.flag_a as usize;
                        if slot < ra {
                            Self::item(&self.op_a, y, slot).to_vec()
                        } else {
                            Self::item(&self.op_b, y, slot - ra).to_vec()
                        }
                    }
                    OpKind::Bind | OpKind::BindInverse => {
                        let sub = self.kind == OpKind::BindInverse;
                        self.signals.en = true;
                        self.signals.addsub = sub;
                        let ra = self.flag_a as usize;
                        let (i, j) = (slot % ra, slot / ra);
                        let bits = self.cfg.l();
                        Self::item(&self.op_a, y, i)
                            .iter()
                            .zip(Self::item(&self.op_b, y, j))
                            .map(|(&x, &z)| add_sub(x, z, bits, sub).value)
                            .collect()
                    }
                };
                self.signals.eq &= self.operands_equal();
                self.activity.datapath += hamming(&self.bus, &value);
                self.bus.copy_from_slice(&value);
                let dst = &mut self.out[slot * y..(slot + 1) * y];
                let flips = hamming(dst, &value);
                dst.copy_from_slice(&value);
                self.output_bits += flips;
                self.charge_register(flips);
                if slot + 1 == self.result_rank {
                    self.signals.done = true;
                    self.phase = Phase::Idle;
                } else {
                    self.phase = Phase::Execute { slot: slot + 1 };
                }
            }
        }

        let delta = Activity {
            input_driver: 0,
            datapath: self.activity.datapath - before.datapath,
            register: self.activity.register - before.register,
        };
        CycleRecord {
            cycle: self.cycle_count,
            phase: label.unwrap_or(PhaseLabel::Idle),
            signals: Signals { rq: rq_seen, ..self.signals },
            op_a: RegisterSnapshot::new(&self.op_a, self.cfg.l(), y),
            op_b: RegisterSnapshot::new(&self.op_b, self.cfg.l(), y),
            out: RegisterSnapshot::new(&self.out, self.cfg.l(), y),
            flags: (self.flag_a, self.flag_b, self.out_flag),
            delta,
        }
    }

    fn operands_equal(&self) -> bool {
        self.flag_a == self.flag_b && self.op_a == self.op_b
    }

    /// The chain held in the output buffer, sized by its flag bits.
    pub fn output_chain(&self) -> Chain {
        let params = *self.cfg.params();
        let y = params.y();
        let items = (0..self.out_flag as usize)
            .map(|k| BaseItem::new(&params, Self::item(&self.out, y, k).to_vec()).expect("register holds l-bit words"))
            .collect();
        Chain::new(params, items).expect("flag never exceeds d")
    }

    /// Loads `cmd` and steps until `done`, returning the result and per-op totals.
    pub fn run_op(&mut self, cmd: &OpCommand) -> Result<(Chain, CopuStats)> {
        self.run_inner(cmd, |_| {})
    }

    /// Like [`run_op`](Self::run_op), also returning one record per cycle.
    pub fn run_traced(&mut self, cmd: &OpCommand) -> Result<(Chain, CopuStats, Vec<CycleRecord>)> {
        let mut trace = Vec::new();
        let (chain, stats) = self.run_inner(cmd, |r| trace.push(r))?;
        Ok((chain, stats, trace))
    }

    fn run_inner(&mut self, cmd: &OpCommand, mut sink: impl FnMut(CycleRecord)) -> Result<(Chain, CopuStats)> {
        let start = self.activity;
        let (bits0, ctrl0) = (self.output_bits, self.controller);
        self.load(cmd)?;
        let mut cycles = 0;
        loop {
            let mut rec = self.step();
            cycles += 1;
            if cycles == 1 {
                rec.delta.input_driver = self.activity.input_driver - start.input_driver;
            }
            let done = rec.signals.done;
            sink(rec);
            if done {
                break;
            }
        }
        let stats = CopuStats {
            cycles,
            activity: Activity {
                input_driver: self.activity.input_driver - start.input_driver,
                datapath: self.activity.datapath - start.datapath,
                register: self.activity.register - start.register,
            },
            output_bits: self.output_bits - bits0,
            controller: self.controller - ctrl0,
            eq: self.signals.eq,
            result_rank: self.result_rank,
        };
        Ok((self.output_chain(), stats))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::SystemParams;

    fn cfg() -> CopuConfig {
        CopuConfig::reference()
    }

    fn chain_of(params: SystemParams, values: &[u32]) -> Chain {
        Chain::new(
            params,
            values.iter().map(|&v| BaseItem::new(&params, [v]).unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn eight_item_superposition_takes_nine_cycles() {
        let p = *cfg().params();
        let cmd = OpCommand::new(
            OpKind::Superpose,
            chain_of(p, &[1, 2, 3, 4]),
            chain_of(p, &[5, 6, 7, 8]),
        );
        let mut s = CopuState::new(cfg());
        let (out, stats) = s.run_op(&cmd).unwrap();
        assert_eq!(stats.cycles, 9);
        assert_eq!(out, cmd.golden().unwrap());
        assert_eq!(s.phase(), Phase::Idle);
        assert!(s.signals().done);
    }

    #[test]
    fn four_by_two_binding_takes_nine_cycles() {
        let p = *cfg().params();
        let cmd = OpCommand::new(OpKind::Bind, chain_of(p, &[10, 20, 30, 250]), chain_of(p, &[7, 9]));
        let mut s = CopuState::new(cfg());
        let (out, stats) = s.run_op(&cmd).unwrap();
        assert_eq!(stats.cycles, 9);
        assert_eq!(out, cmd.golden().unwrap());
        assert_eq!(out.items()[3].elems(), &[1]);
    }

    #[test]
    fn load_toggles_hamming_distance() {
        // 64-bit operands as one 8-element item each, so both can be all-ones.
        let cfg = CopuConfig::from_bits(8, 8, 1).unwrap();
        let p = *cfg.params();
        let ones = Chain::singleton(p, BaseItem::new(&p, [255u32; 8]).unwrap()).unwrap();
        let mut s = CopuState::new(cfg);
        s.load(&OpCommand::new(OpKind::Bind, ones.clone(), ones)).unwrap();
        assert_eq!(s.activity().input_driver, 128);

        let mut s = CopuState::new(CopuConfig::reference());
        let p = *CopuConfig::reference().params();
        s.load(&OpCommand::new(OpKind::Superpose, chain_of(p, &[255; 8]), Chain::empty(p)))
            .unwrap();
        assert_eq!(s.activity().input_driver, 64);
    }

    #[test]
    fn reload_identical_operands_is_free() {
        let p = *cfg().params();
        let cmd = OpCommand::new(OpKind::Bind, chain_of(p, &[3, 4]), chain_of(p, &[5]));
        let mut s = CopuState::new(cfg());
        s.run_op(&cmd).unwrap();
        let before = s.activity().input_driver;
        s.load(&cmd).unwrap();
        assert_eq!(s.activity().input_driver, before);
    }

    #[test]
    fn busy_and_rank_errors() {
        let p = *cfg().params();
        let mut s = CopuState::new(cfg());
        let over = OpCommand::new(
            OpKind::Superpose,
            chain_of(p, &[1, 1, 1, 1, 1]),
            chain_of(p, &[2, 2, 2, 2]),
        );
        assert_eq!(
            s.load(&over),
            Err(Error::RankOverflow { requested: 9, capacity: 8 })
        );
        let ok = OpCommand::new(OpKind::Bind, chain_of(p, &[1]), chain_of(p, &[2]));
        s.load(&ok).unwrap();
        assert_eq!(s.load(&ok), Err(Error::Busy));
        s.step();
        assert_eq!(s.load(&ok), Err(Error::Busy));
        s.step();
        assert!(s.signals().done);
        assert!(s.load(&ok).is_ok());
    }

    #[test]
    fn idle_step_changes_nothing_but_the_clock() {
        let mut s = CopuState::new(cfg());
        let p = *cfg().params();
        s.run_op(&OpCommand::new(OpKind::Bind, chain_of(p, &[1]), chain_of(p, &[2])))
            .unwrap();
        let snapshot = s.clone();
        let rec = s.step();
        assert_eq!(s.registers(), snapshot.registers());
        assert_eq!(s.activity(), snapshot.activity());
        assert_eq!(s.cycle_count(), snapshot.cycle_count() + 1);
        assert_eq!(rec.phase, PhaseLabel::Idle);
        assert!(!rec.signals.done);
    }

    #[test]
    fn eq_tracks_operand_equality() {
        let p = *cfg().params();
        let a = chain_of(p, &[9, 8]);
        let mut s = CopuState::new(cfg());
        let (_, st) = s
            .run_op(&OpCommand::new(OpKind::Superpose, a.clone(), a.clone()))
            .unwrap();
        assert!(st.eq);
        let (_, st) = s
            .run_op(&OpCommand::new(OpKind::Superpose, a.clone(), chain_of(p, &[9, 7])))
            .unwrap();
        assert!(!st.eq);
        let (_, st) = s
            .run_op(&OpCommand::new(OpKind::Bind, chain_of(p, &[4]), chain_of(p, &[4, 4])))
            .unwrap();
        assert!(!st.eq);
    }

    #[test]
    fn inverse_path_matches_golden() {
        let p = *cfg().params();
        let cmd = OpCommand::new(OpKind::BindInverse, chain_of(p, &[5, 200]), chain_of(p, &[7]));
        let mut s = CopuState::new(cfg());
        let (out, _) = s.run_op(&cmd).unwrap();
        assert_eq!(out, cmd.golden().unwrap());
        assert_eq!(out.items()[0].elems(), &[254]);
    }

    #[test]
    fn empty_superposition_is_decode_only() {
        let p = *cfg().params();
        let mut s = CopuState::new(cfg());
        let (out, st) = s
            .run_op(&OpCommand::new(OpKind::Superpose, Chain::empty(p), Chain::empty(p)))
            .unwrap();
        assert_eq!(out.rank(), 0);
        assert_eq!(st.cycles, 1);
    }

    #[test]
    fn stats_merge_is_associative() {
        let a = CopuStats { cycles: 1, output_bits: 2, ..Default::default() };
        let b = CopuStats { cycles: 3, controller: 4, ..Default::default() };
        let c = CopuStats { cycles: 5, output_bits: 6, ..Default::default() };
        assert_eq!((a + b) + c, a + (b + c));
    }
}

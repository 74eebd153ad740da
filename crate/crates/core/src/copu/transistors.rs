use super::CopuConfig;

/// ALU transistors per bit of item width in the reference design.
pub const ALU_PER_BIT: u64 = 42;
/// MUX/DEMUX transistors per bit of item width at the reference tree depth.
pub const MUX_DEMUX_PER_BIT: u64 = 68;
/// Control module of the reference design.
pub const CONTROL: u64 = 2304;
/// Register bank of the reference design.
pub const REGISTERS: u64 = 1198;
/// MUX tree depth of the reference design, `log2(8)`.
const REFERENCE_DEPTH: u64 = 3;

/// Transistor-count estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransistorReport {
    /// ALU share of the datapath.
    pub alu: u64,
    /// MUX/DEMUX share of the datapath.
    pub mux_demux: u64,
    /// `alu + mux_demux`.
    pub datapath: u64,
    /// Control module.
    pub control: u64,
    /// Registers.
    pub registers: u64,
    /// Sum of datapath, control and registers.
    pub total: u64,
    /// True only for `l = 8, y = 1, d = 8`.
    pub reference: bool,
    /// True when the MUX/DEMUX term was scaled to a different tree depth.
    pub extrapolated: bool,
}

/// Datapath cost is linear in item bit-width; the MUX/DEMUX share also scales
/// with tree depth `log2(d)` relative to the 8-item reference. Control and
/// register counts are the reference figures.
pub fn estimate_transistors(cfg: &CopuConfig) -> TransistorReport {
    let bits = cfg.item_bits();
    let depth = u64::from(cfg.params().m().expect("power-of-two d"));
    let alu = ALU_PER_BIT * bits;
    let mux_demux = (MUX_DEMUX_PER_BIT * bits * depth + REFERENCE_DEPTH / 2) / REFERENCE_DEPTH;
    let datapath = alu + mux_demux;
    TransistorReport {
        alu,
        mux_demux,
        datapath,
        control: CONTROL,
        registers: REGISTERS,
        total: datapath + CONTROL + REGISTERS,
        reference: cfg.l() == 8 && cfg.params().y() == 1 && cfg.params().d() == 8,
        extrapolated: depth != REFERENCE_DEPTH,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_table() {
        let r = estimate_transistors(&CopuConfig::reference());
        assert_eq!((r.datapath, r.control, r.registers, r.total), (880, 2304, 1198, 4382));
        assert_eq!((r.alu, r.mux_demux), (336, 544));
        assert!(r.reference && !r.extrapolated);
    }

    #[test]
    fn narrower_datapath() {
        let r = estimate_transistors(&CopuConfig::from_bits(4, 1, 8).unwrap());
        assert_eq!(r.datapath, 440);
        assert!(!r.reference && !r.extrapolated);
    }

    #[test]
    fn deeper_tree_is_extrapolated() {
        let r = estimate_transistors(&CopuConfig::from_bits(8, 1, 16).unwrap());
        assert!(r.extrapolated);
        // 68 * 8 * 4 / 3 = 725.33
        assert_eq!(r.mux_demux, 725);
        assert_eq!(r.alu, 336);
    }
}

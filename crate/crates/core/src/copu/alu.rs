/// Output of one ALU lane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AluResult {
    /// The low `l` bits of the sum or difference.
    pub value: u32,
    /// Carry out of the top bit; never stored.
    pub carry_out: bool,
}

/// `l`-bit ripple-carry adder/subtractor.
///
/// With `subtract` set, each bit of `b` goes through the inverter instead of
/// the bypass and the carry-in is 1, forming `a + !b + 1`. The carry out of
/// the top bit is discarded, which is exactly arithmetic mod `2^l`.
pub fn add_sub(a: u32, b: u32, bits: u32, subtract: bool) -> AluResult {
    debug_assert!((1..=31).contains(&bits));
    let mut carry = subtract;
    let mut value = 0u32;
    for i in 0..bits {
        let x = (a >> i) & 1 == 1;
        let y = ((b >> i) & 1 == 1) ^ subtract;
        let sum = x ^ y ^ carry;
        carry = (x & y) | (carry & (x ^ y));
        value |= u32::from(sum) << i;
    }
    AluResult {
        value,
        carry_out: carry,
    }
}

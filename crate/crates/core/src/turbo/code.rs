//! The `(1, 15/13)` recursive systematic convolutional code.
//!
//! Octal generators are expanded MSB-first onto increasing powers of `D`:
//! `15 = 1101b` is the feedforward polynomial `1 + D + D^3` and
//! `13 = 1011b` the feedback polynomial `1 + D^2 + D^3`. With register
//! contents `a_{k-1}, a_{k-2}, a_{k-3}`:
//!
//! ```text
//! a_k = u_k ^ a_{k-2} ^ a_{k-3}
//! p_k = a_k ^ a_{k-1} ^ a_{k-3}
//! ```
//!
//! The state index packs `a_{k-1}` in bit 0, `a_{k-2}` in bit 1 and
//! `a_{k-3}` in bit 2.

/// Memory-3 RSC code with one feedforward and one feedback polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrellisCode {
    feedforward: [u8; 4],
    feedback: [u8; 4],
    next: [[usize; 2]; 8],
    parity: [[u8; 2]; 8],
    tail_input: [u8; 8],
}

impl Default for TrellisCode {
    fn default() -> Self {
        Self::from_octal(0o15, 0o13)
    }
}

impl TrellisCode {
    pub const MEMORY: usize = 3;
    pub const STATES: usize = 8;

    /// Builds the code from 4-bit octal generators, e.g. `(0o15, 0o13)`.
    ///
    /// Panics unless both fit in four bits and the feedback has a
    /// non-zero constant term.
    pub fn from_octal(feedforward: u32, feedback: u32) -> Self {
        assert!(feedforward < 16 && feedback < 16, "memory-3 generators only");
        let expand = |g: u32| -> [u8; 4] { std::array::from_fn(|i| ((g >> (3 - i)) & 1) as u8) };
        let (ff, fb) = (expand(feedforward), expand(feedback));
        assert_eq!(fb[0], 1, "feedback polynomial needs a constant term");

        let mut next = [[0; 2]; 8];
        let mut parity = [[0; 2]; 8];
        let mut tail_input = [0; 8];
        for state in 0..8 {
            let reg = [(state & 1) as u8, ((state >> 1) & 1) as u8, ((state >> 2) & 1) as u8];
            let fb_sum = fb[1] & reg[0] ^ fb[2] & reg[1] ^ fb[3] & reg[2];
            tail_input[state] = fb_sum;
            for u in 0..2u8 {
                let a = u ^ fb_sum;
                parity[state][u as usize] = ff[0] & a ^ ff[1] & reg[0] ^ ff[2] & reg[1] ^ ff[3] & reg[2];
                next[state][u as usize] = (a as usize) | ((state << 1) & 0b110);
            }
        }
        Self {
            feedforward: ff,
            feedback: fb,
            next,
            parity,
            tail_input,
        }
    }

    /// Feedforward coefficients of `1, D, D^2, D^3`.
    pub fn feedforward(&self) -> [u8; 4] {
        self.feedforward
    }

    /// Feedback coefficients of `1, D, D^2, D^3`.
    pub fn feedback(&self) -> [u8; 4] {
        self.feedback
    }

    #[inline]
    pub fn next_state(&self, state: usize, input: u8) -> usize {
        self.next[state][input as usize]
    }

    #[inline]
    pub fn parity(&self, state: usize, input: u8) -> u8 {
        self.parity[state][input as usize]
    }

    /// Input that clears the feedback sum, driving the register towards zero.
    #[inline]
    pub fn tail_input(&self, state: usize) -> u8 {
        self.tail_input[state]
    }
}

/// Output of [`rsc_encode`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RscOutput {
    pub systematic: Vec<u8>,
    pub parity: Vec<u8>,
    /// `(systematic, parity)` tail pairs; empty when unterminated.
    pub tail: Vec<(u8, u8)>,
    pub final_state: usize,
}

/// Encodes `bits` from the zero state; with `terminate`, appends
/// [`TrellisCode::MEMORY`] tail pairs that return the encoder to zero.
pub fn rsc_encode(bits: &[u8], code: &TrellisCode, terminate: bool) -> RscOutput {
    let mut state = 0;
    let mut parity = Vec::with_capacity(bits.len());
    for &b in bits {
        parity.push(code.parity(state, b));
        state = code.next_state(state, b);
    }
    let mut tail = Vec::new();
    if terminate {
        for _ in 0..TrellisCode::MEMORY {
            let u = code.tail_input(state);
            tail.push((u, code.parity(state, u)));
            state = code.next_state(state, u);
        }
    }
    RscOutput {
        systematic: bits.to_vec(),
        parity,
        tail,
        final_state: state,
    }
}

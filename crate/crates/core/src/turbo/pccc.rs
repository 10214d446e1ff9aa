//! Rate-1/3 parallel concatenation of two `(1, 15/13)` encoders and its
//! iterative decoder.
//!
//! Channel layout: `N` triples `(u_k, p1_k, p2_k)` followed by the three
//! `(u, p1)` tail pairs of the first encoder, `3N + 6` bits in total. The
//! second encoder sees `u_{π(k)}` at step `k` and is not terminated.

use crate::error::{Error, Result};
use crate::permcore::Permutation;
use crate::turbo::bcjr::LogMap;
use crate::turbo::code::{rsc_encode, TrellisCode};

const TAIL: usize = TrellisCode::MEMORY;

/// Number of channel bits for `n` information bits.
pub fn codeword_len(n: usize) -> usize {
    3 * n + 2 * TAIL
}

/// Information bits per channel bit.
pub fn code_rate(n: usize) -> f64 {
    n as f64 / codeword_len(n) as f64
}

/// Interleave/de-interleave pair. For an involution both directions read
/// the same table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interleaver {
    forward: Vec<usize>,
    inverse: Option<Vec<usize>>,
}

impl Interleaver {
    pub fn new(p: &Permutation) -> Self {
        let inverse = (!p.is_involution()).then(|| p.invert().into_vec());
        Self {
            forward: p.as_slice().to_vec(),
            inverse,
        }
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    /// True when de-interleaving reuses the forward table.
    pub fn is_self_inverse(&self) -> bool {
        self.inverse.is_none()
    }

    fn inverse_table(&self) -> &[usize] {
        self.inverse.as_deref().unwrap_or(&self.forward)
    }

    /// `out[k] = x[π(k)]`.
    pub fn interleave_into<T: Copy>(&self, x: &[T], out: &mut [T]) {
        for (o, &src) in out.iter_mut().zip(&self.forward) {
            *o = x[src];
        }
    }

    /// `out[π(k)] = y[k]`, computed as `out[j] = y[π⁻¹(j)]`.
    pub fn deinterleave_into<T: Copy>(&self, y: &[T], out: &mut [T]) {
        for (o, &src) in out.iter_mut().zip(self.inverse_table()) {
            *o = y[src];
        }
    }

    pub fn interleave<T: Copy + Default>(&self, x: &[T]) -> Vec<T> {
        let mut out = vec![T::default(); self.len()];
        self.interleave_into(x, &mut out);
        out
    }

    pub fn deinterleave<T: Copy + Default>(&self, y: &[T]) -> Vec<T> {
        let mut out = vec![T::default(); self.len()];
        self.deinterleave_into(y, &mut out);
        out
    }
}

/// Encodes `bits` into the multiplexed channel sequence.
pub fn pccc_encode(bits: &[u8], interleaver: &Interleaver, code: &TrellisCode) -> Result<Vec<u8>> {
    let n = interleaver.len();
    if bits.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: bits.len(),
        });
    }
    let first = rsc_encode(bits, code, true);
    let second = rsc_encode(&interleaver.interleave(bits), code, false);
    let mut out = Vec::with_capacity(codeword_len(n));
    for k in 0..n {
        out.extend([bits[k], first.parity[k], second.parity[k]]);
    }
    for (u, p) in first.tail {
        out.extend([u, p]);
    }
    Ok(out)
}

/// Channel LLRs split per constituent decoder.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Demuxed {
    /// Systematic LLRs including the `TAIL` tail steps.
    pub sys: Vec<f64>,
    /// First-encoder parity including tail.
    pub parity1: Vec<f64>,
    /// Second-encoder parity, `N` values.
    pub parity2: Vec<f64>,
}

pub fn demux(llr: &[f64], n: usize) -> Result<Demuxed> {
    if llr.len() != codeword_len(n) {
        return Err(Error::LengthMismatch {
            expected: codeword_len(n),
            found: llr.len(),
        });
    }
    let mut d = Demuxed {
        sys: Vec::with_capacity(n + TAIL),
        parity1: Vec::with_capacity(n + TAIL),
        parity2: Vec::with_capacity(n),
    };
    for triple in llr[..3 * n].chunks_exact(3) {
        d.sys.push(triple[0]);
        d.parity1.push(triple[1]);
        d.parity2.push(triple[2]);
    }
    for pair in llr[3 * n..].chunks_exact(2) {
        d.sys.push(pair[0]);
        d.parity1.push(pair[1]);
    }
    Ok(d)
}

/// Iterative decoder with reusable buffers.
#[derive(Debug, Clone)]
pub struct TurboDecoder {
    interleaver: Interleaver,
    map: LogMap,
    sys2: Vec<f64>,
    prior1: Vec<f64>,
    prior2: Vec<f64>,
    post: Vec<f64>,
    ext: Vec<f64>,
    decisions: Vec<u8>,
}

impl TurboDecoder {
    pub fn new(interleaver: Interleaver, code: TrellisCode) -> Self {
        let n = interleaver.len();
        Self {
            interleaver,
            map: LogMap::new(code),
            sys2: vec![0.0; n],
            prior1: vec![0.0; n],
            prior2: vec![0.0; n],
            post: vec![0.0; n],
            ext: vec![0.0; n],
            decisions: vec![0; n],
        }
    }

    pub fn interleaver(&self) -> &Interleaver {
        &self.interleaver
    }

    /// Decodes one block, calling `on_iteration(i, bits)` with the hard
    /// decisions after every iteration `i = 1..=iterations`. Returns the
    /// final decisions.
    ///
    /// Each iteration runs decoder 1 on the terminated trellis, interleaves
    /// its extrinsics as priors for decoder 2, and de-interleaves decoder 2's
    /// extrinsics as the next priors for decoder 1. Decisions are the signs
    /// of decoder 2's posteriors mapped back through the interleaver.
    pub fn decode_with<F: FnMut(usize, &[u8])>(
        &mut self,
        llr: &[f64],
        iterations: usize,
        mut on_iteration: F,
    ) -> Result<&[u8]> {
        if iterations == 0 {
            return Err(Error::InvalidParameter("at least one iteration is required".into()));
        }
        let n = self.interleaver.len();
        let d = demux(llr, n)?;
        self.interleaver.interleave_into(&d.sys[..n], &mut self.sys2);
        self.prior1.iter_mut().for_each(|x| *x = 0.0);
        for it in 1..=iterations {
            self.map
                .decode_into(&d.sys, &d.parity1, &self.prior1, true, &mut self.post, &mut self.ext)?;
            self.interleaver.interleave_into(&self.ext, &mut self.prior2);
            self.map
                .decode_into(&self.sys2, &d.parity2, &self.prior2, false, &mut self.post, &mut self.ext)?;
            self.interleaver.deinterleave_into(&self.ext, &mut self.prior1);
            // reuse `ext` as scratch for the de-interleaved posterior
            self.interleaver.deinterleave_into(&self.post, &mut self.ext);
            for (b, &l) in self.decisions.iter_mut().zip(&self.ext) {
                *b = u8::from(l < 0.0);
            }
            on_iteration(it, &self.decisions);
        }
        Ok(&self.decisions)
    }

    pub fn decode(&mut self, llr: &[f64], iterations: usize) -> Result<Vec<u8>> {
        self.decode_with(llr, iterations, |_, _| {}).map(<[u8]>::to_vec)
    }
}

/// One-shot turbo decode with the default constituent code.
pub fn turbo_decode(llr: &[f64], interleaver: &Permutation, iterations: usize) -> Result<Vec<u8>> {
    TurboDecoder::new(Interleaver::new(interleaver), TrellisCode::default()).decode(llr, iterations)
}

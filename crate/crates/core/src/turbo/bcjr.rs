//! Log-domain BCJR (log-MAP) decoding of the 8-state RSC trellis.

use crate::error::{Error, Result};
use crate::turbo::code::TrellisCode;

const NEG: f64 = f64::NEG_INFINITY;
const STATES: usize = TrellisCode::STATES;

/// `ln(e^a + e^b)` as `max(a, b) + ln(1 + e^−|a−b|)`.
///
/// The correction is skipped beyond a gap of 50, where it is below `2e−22`.
#[inline]
pub fn max_star(a: f64, b: f64) -> f64 {
    let m = a.max(b);
    if m == NEG {
        return NEG;
    }
    let d = (a - b).abs();
    if d > 50.0 {
        m
    } else {
        m + (-d).exp().ln_1p()
    }
}

/// Posterior and extrinsic LLRs for the information bits.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MapOutput {
    pub posterior: Vec<f64>,
    pub extrinsic: Vec<f64>,
}

/// Reusable forward-backward workspace.
#[derive(Debug, Clone)]
pub struct LogMap {
    code: TrellisCode,
    alpha: Vec<[f64; STATES]>,
}

impl LogMap {
    pub fn new(code: TrellisCode) -> Self {
        Self {
            code,
            alpha: Vec::new(),
        }
    }

    pub fn code(&self) -> &TrellisCode {
        &self.code
    }

    /// Runs forward-backward over `sys.len()` trellis steps.
    ///
    /// `prior` covers the information bits. When `terminated`, `sys` and
    /// `parity` carry [`TrellisCode::MEMORY`] extra tail steps on which only
    /// the zero-forcing input is allowed, and the trellis must end in state
    /// zero. All LLRs are `ln P(0)/P(1)`.
    pub fn decode_into(
        &mut self,
        sys: &[f64],
        parity: &[f64],
        prior: &[f64],
        terminated: bool,
        posterior: &mut [f64],
        extrinsic: &mut [f64],
    ) -> Result<()> {
        let n = prior.len();
        let t = n + if terminated { TrellisCode::MEMORY } else { 0 };
        for len in [sys.len(), parity.len()] {
            if len != t {
                return Err(Error::LengthMismatch { expected: t, found: len });
            }
        }
        for len in [posterior.len(), extrinsic.len()] {
            if len != n {
                return Err(Error::LengthMismatch { expected: n, found: len });
            }
        }
        let code = &self.code;

        self.alpha.clear();
        self.alpha.resize(t + 1, [NEG; STATES]);
        self.alpha[0][0] = 0.0;
        for k in 0..t {
            let half_u = 0.5 * (sys[k] + if k < n { prior[k] } else { 0.0 });
            let half_p = 0.5 * parity[k];
            let cur = self.alpha[k];
            let mut next = [NEG; STATES];
            for (s, &a) in cur.iter().enumerate() {
                if a == NEG {
                    continue;
                }
                for u in branch_inputs(code, s, k < n) {
                    let ns = code.next_state(s, u);
                    let m = a + gamma(half_u, half_p, u, code.parity(s, u));
                    next[ns] = max_star(next[ns], m);
                }
            }
            normalize(&mut next);
            self.alpha[k + 1] = next;
        }

        let mut beta = if terminated {
            let mut b = [NEG; STATES];
            b[0] = 0.0;
            b
        } else {
            [0.0; STATES]
        };
        for k in (0..t).rev() {
            let half_u = 0.5 * (sys[k] + if k < n { prior[k] } else { 0.0 });
            let half_p = 0.5 * parity[k];
            let alpha = &self.alpha[k];
            let mut prev = [NEG; STATES];
            // branch metrics alpha + gamma + beta, split by input bit
            let mut full = [[NEG; STATES]; 2];
            for s in 0..STATES {
                for u in branch_inputs(code, s, k < n) {
                    let ns = code.next_state(s, u);
                    let gb = gamma(half_u, half_p, u, code.parity(s, u)) + beta[ns];
                    prev[s] = max_star(prev[s], gb);
                    full[u as usize][s] = alpha[s] + gb;
                }
            }
            if k < n {
                posterior[k] = log_sum_exp(&full[0]) - log_sum_exp(&full[1]);
                extrinsic[k] = posterior[k] - prior[k] - sys[k];
            }
            normalize(&mut prev);
            beta = prev;
        }
        Ok(())
    }
}

/// `ln Σ e^x` over the terms, factored about the largest one.
#[inline]
fn log_sum_exp(terms: &[f64; STATES]) -> f64 {
    let m = terms.iter().copied().fold(NEG, f64::max);
    if m == NEG {
        return NEG;
    }
    let sum: f64 = terms.iter().map(|&x| if m - x > 50.0 { 0.0 } else { (x - m).exp() }).sum();
    m + sum.ln()
}

#[inline]
fn branch_inputs(code: &TrellisCode, state: usize, free: bool) -> impl Iterator<Item = u8> {
    let forced = code.tail_input(state);
    let (lo, hi) = if free { (0, 1) } else { (forced, forced) };
    lo..=hi
}

#[inline]
fn gamma(half_u: f64, half_p: f64, u: u8, p: u8) -> f64 {
    let gu = if u == 0 { half_u } else { -half_u };
    let gp = if p == 0 { half_p } else { -half_p };
    gu + gp
}

#[inline]
fn normalize(metrics: &mut [f64; STATES]) {
    let m = metrics.iter().copied().fold(NEG, f64::max);
    if m != NEG {
        metrics.iter_mut().for_each(|x| *x -= m);
    }
}

/// One-shot log-MAP decode; see [`LogMap::decode_into`].
pub fn bcjr_log_map(
    sys: &[f64],
    parity: &[f64],
    prior: &[f64],
    code: &TrellisCode,
    terminated: bool,
) -> Result<MapOutput> {
    let n = prior.len();
    let mut out = MapOutput {
        posterior: vec![0.0; n],
        extrinsic: vec![0.0; n],
    };
    LogMap::new(code.clone()).decode_into(sys, parity, prior, terminated, &mut out.posterior, &mut out.extrinsic)?;
    Ok(out)
}

//! Baseline interleavers: quadratic and S-random.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::permcore::Permutation;

/// Default restart budget for [`srandom_interleaver`].
pub const DEFAULT_SRANDOM_ATTEMPTS: usize = 1000;

/// `π(m) = k · m(m+1)/2 mod n` for `n` a power of two and odd `k`.
pub fn quadratic_interleaver(n: usize, k: usize) -> Result<Permutation> {
    if !n.is_power_of_two() || n < 2 {
        return Err(Error::InvalidParameter(format!(
            "quadratic interleaver length {n} is not a power of two"
        )));
    }
    if k % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "quadratic multiplier {k} must be odd"
        )));
    }
    let (n64, k64) = (n as u128, k as u128);
    let table = (0..n as u128)
        .map(|m| ((k64 * (m * (m + 1) / 2)) % n64) as usize)
        .collect();
    Permutation::new(table)
}

/// Conventional spread `⌊√(n/2)⌋`.
pub fn default_spread(n: usize) -> usize {
    ((n as f64 / 2.0).sqrt().floor() as usize).max(1)
}

/// First pair `(j, i)` with `0 < i − j ≤ spread` and `|π(i) − π(j)| < spread`.
pub fn spread_violation(p: &Permutation, spread: usize) -> Option<(usize, usize)> {
    let v = p.as_slice();
    (0..v.len()).find_map(|i| {
        (i.saturating_sub(spread)..i)
            .find(|&j| v[i].abs_diff(v[j]) < spread)
            .map(|j| (j, i))
    })
}

/// Random permutation in which every value is at least `spread` away from
/// the values at the `spread` preceding positions.
///
/// Each attempt assigns positions in order from a shuffled pool, taking the
/// first admissible value. When no pooled value fits at position `i`, an
/// earlier position `j` is looked for whose value can move to `i` while a
/// pooled value takes its place at `j`. If that fails too, the attempt
/// restarts with fresh randomness, up to `attempts` times.
pub fn srandom_interleaver(n: usize, spread: usize, seed: u64, attempts: usize) -> Result<Permutation> {
    if spread == 0 {
        return Err(Error::InvalidParameter("spread must be at least 1".into()));
    }
    if n < 2 {
        return Err(Error::TooSmall { n, min: 2 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<usize> = Vec::with_capacity(n);
    let mut out: Vec<usize> = Vec::with_capacity(n);
    let mut order: Vec<usize> = Vec::with_capacity(n);
    'attempt: for _ in 0..attempts.max(1) {
        pool.clear();
        pool.extend(0..n);
        pool.shuffle(&mut rng);
        out.clear();
        for i in 0..n {
            let window = &out[i.saturating_sub(spread)..i];
            if let Some(pos) = pool
                .iter()
                .position(|&cand| window.iter().all(|&prev| cand.abs_diff(prev) >= spread))
            {
                out.push(pool.swap_remove(pos));
                continue;
            }
            order.clear();
            order.extend(0..i);
            order.shuffle(&mut rng);
            if !repair(&mut out, &mut pool, &order, spread) {
                continue 'attempt;
            }
        }
        let p = Permutation::new(out.clone())?;
        debug_assert!(spread_violation(&p, spread).is_none());
        return Ok(p);
    }
    Err(Error::SpreadConstruction {
        spread,
        attempts: attempts.max(1),
    })
}

/// Moves `out[j]` to the end (position `i = out.len()`) and fills `j` from
/// the pool, for the first `j` in `order` where both placements respect the
/// spread.
fn repair(out: &mut Vec<usize>, pool: &mut Vec<usize>, order: &[usize], spread: usize) -> bool {
    let i = out.len();
    for &j in order {
        let moved = out[j];
        let fits_at_i = |replacement: usize| {
            (i.saturating_sub(spread)..i).all(|t| {
                let v = if t == j { replacement } else { out[t] };
                moved.abs_diff(v) >= spread
            })
        };
        let fits_at_j = |v: usize| {
            (j.saturating_sub(spread)..(j + spread + 1).min(i))
                .filter(|&t| t != j)
                .all(|t| v.abs_diff(out[t]) >= spread)
        };
        if let Some(k) = pool.iter().position(|&v| fits_at_j(v) && fits_at_i(v)) {
            out[j] = pool.swap_remove(k);
            out.push(moved);
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_examples() {
        assert_eq!(quadratic_interleaver(8, 1).unwrap().as_slice(), &[0, 1, 3, 6, 2, 7, 5, 4]);
        assert_eq!(quadratic_interleaver(2, 1).unwrap().as_slice(), &[0, 1]);
        assert!(quadratic_interleaver(12, 1).is_err());
        assert!(quadratic_interleaver(16, 2).is_err());
    }

    #[test]
    fn quadratic_bijective_up_to_2_14() {
        for j in 1..=14 {
            for k in [1, 3, 5] {
                assert!(quadratic_interleaver(1 << j, k).is_ok(), "n=2^{j} k={k}");
            }
        }
    }

    #[test]
    fn spread_validator() {
        for n in 4..20 {
            let id = Permutation::identity(n).unwrap();
            assert_eq!(spread_violation(&id, 2), Some((0, 1)));
            assert_eq!(spread_violation(&id, 1), None);
        }
    }

    #[test]
    fn srandom_examples() {
        let p = srandom_interleaver(64, 1, 3, 10).unwrap();
        assert_eq!(p.len(), 64);
        let s = default_spread(1024);
        assert_eq!(s, 22);
        let p = srandom_interleaver(1024, s, 11, DEFAULT_SRANDOM_ATTEMPTS).unwrap();
        assert_eq!(spread_violation(&p, s), None);
        assert!(srandom_interleaver(1024, s, 11, DEFAULT_SRANDOM_ATTEMPTS).unwrap() == p);
        let err = srandom_interleaver(64, 40, 1, 5).unwrap_err();
        assert!(err.is_resource());
    }
}

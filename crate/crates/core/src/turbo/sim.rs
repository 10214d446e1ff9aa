//! Monte-Carlo BER measurement.
//!
//! Every block draws from its own ChaCha stream, seeded from the master
//! seed, the grid-point index and the block index. Blocks are decoded in
//! fixed-size batches and their results are consumed in block order, so the
//! stop rule fires at the same block whatever the worker count.

use std::fmt::Write as _;
use std::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::permcore::Permutation;
use crate::turbo::channel::channel;
use crate::turbo::code::TrellisCode;
use crate::turbo::pccc::{code_rate, pccc_encode, Interleaver, TurboDecoder};

/// Blocks per parallel batch. Fixed so results never depend on scheduling.
const BATCH: u64 = 32;

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub interleaver: Permutation,
    pub ebn0_db: Vec<f64>,
    pub iterations: usize,
    pub seed: u64,
    /// Stop a point once this many bit errors are counted...
    pub min_bit_errors: u64,
    /// ...or this many blocks are simulated, whichever comes first.
    pub max_blocks: u64,
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
}

impl SimConfig {
    pub const DEFAULT_ITERATIONS: usize = 10;
    pub const DEFAULT_MIN_BIT_ERRORS: u64 = 100;
    pub const DEFAULT_MAX_BLOCKS: u64 = 100_000;

    pub fn new(interleaver: Permutation, ebn0_db: Vec<f64>, seed: u64) -> Self {
        Self {
            interleaver,
            ebn0_db,
            iterations: Self::DEFAULT_ITERATIONS,
            seed,
            min_bit_errors: Self::DEFAULT_MIN_BIT_ERRORS,
            max_blocks: Self::DEFAULT_MAX_BLOCKS,
            workers: None,
        }
    }

    pub fn block_len(&self) -> usize {
        self.interleaver.len()
    }

    fn validate(&self) -> Result<()> {
        if self.iterations == 0 {
            return Err(Error::InvalidParameter("iterations must be at least 1".into()));
        }
        if self.max_blocks == 0 {
            return Err(Error::InvalidParameter("max blocks must be at least 1".into()));
        }
        Ok(())
    }
}

/// One measured grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct BerPoint {
    pub ebn0_db: f64,
    pub blocks: u64,
    pub info_bits: u64,
    pub bit_errors: u64,
    pub frame_errors: u64,
}

impl BerPoint {
    pub fn ber(&self) -> f64 {
        self.bit_errors as f64 / self.info_bits as f64
    }

    pub fn fer(&self) -> f64 {
        self.frame_errors as f64 / self.blocks as f64
    }
}

/// Bit errors after each decoder iteration for one block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockOutcome {
    pub errors_by_iteration: Vec<u32>,
}

impl BlockOutcome {
    pub fn final_errors(&self) -> u32 {
        *self.errors_by_iteration.last().expect("at least one iteration")
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of block `block` at grid point `point`.
pub fn block_seed(master: u64, point: u64, block: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(master) ^ point) ^ block)
}

/// Simulates the blocks in `blocks` at one Eb/N0 value, in parallel,
/// returning outcomes in block order.
pub fn simulate_blocks(
    interleaver: &Permutation,
    ebn0_db: f64,
    iterations: usize,
    seed: u64,
    point: u64,
    blocks: Range<u64>,
) -> Result<Vec<BlockOutcome>> {
    if iterations == 0 {
        return Err(Error::InvalidParameter("iterations must be at least 1".into()));
    }
    let il = Interleaver::new(interleaver);
    let code = TrellisCode::default();
    let n = il.len();
    let rate = code_rate(n);
    blocks
        .into_par_iter()
        .map_init(
            || TurboDecoder::new(il.clone(), code.clone()),
            |decoder, b| {
                let mut rng = ChaCha8Rng::seed_from_u64(block_seed(seed, point, b));
                let bits: Vec<u8> = (0..n).map(|_| u8::from(rng.random::<bool>())).collect();
                let cw = pccc_encode(&bits, decoder.interleaver(), &code)?;
                let llr = channel(&cw, ebn0_db, rate, &mut rng);
                let mut errors_by_iteration = Vec::with_capacity(iterations);
                decoder.decode_with(&llr, iterations, |_, dec| {
                    let e = dec.iter().zip(&bits).filter(|(a, b)| a != b).count();
                    errors_by_iteration.push(e as u32);
                })?;
                Ok(BlockOutcome { errors_by_iteration })
            },
        )
        .collect()
}

/// Runs the BER sweep described by `cfg`.
pub fn simulate_ber(cfg: &SimConfig) -> Result<Vec<BerPoint>> {
    cfg.validate()?;
    let run = || -> Result<Vec<BerPoint>> {
        cfg.ebn0_db
            .iter()
            .enumerate()
            .map(|(idx, &ebn0)| simulate_point(cfg, idx as u64, ebn0))
            .collect()
    };
    match cfg.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    }
}

fn simulate_point(cfg: &SimConfig, point: u64, ebn0: f64) -> Result<BerPoint> {
    let n = cfg.block_len() as u64;
    let mut acc = BerPoint {
        ebn0_db: ebn0,
        blocks: 0,
        info_bits: 0,
        bit_errors: 0,
        frame_errors: 0,
    };
    let mut next = 0;
    while next < cfg.max_blocks {
        let end = (next + BATCH).min(cfg.max_blocks);
        let outcomes = simulate_blocks(&cfg.interleaver, ebn0, cfg.iterations, cfg.seed, point, next..end)?;
        for o in outcomes {
            let e = u64::from(o.final_errors());
            acc.blocks += 1;
            acc.info_bits += n;
            acc.bit_errors += e;
            acc.frame_errors += u64::from(e > 0);
            if acc.bit_errors >= cfg.min_bit_errors {
                return Ok(acc);
            }
        }
        next = end;
    }
    Ok(acc)
}

pub const CSV_HEADER: &str = "ebn0_db,info_bits,bit_errors,frame_errors,ber,fer";

pub fn to_csv(points: &[BerPoint]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{CSV_HEADER}");
    for p in points {
        let _ = writeln!(
            out,
            "{},{},{},{},{:.6e},{:.6e}",
            p.ebn0_db,
            p.info_bits,
            p.bit_errors,
            p.frame_errors,
            p.ber(),
            p.fer()
        );
    }
    out
}

/// Gnuplot script plotting BER against Eb/N0 from one or more CSV files.
pub fn gnuplot_script(csv_files: &[(&str, &str)], output_png: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "set datafile separator ','");
    let _ = writeln!(out, "set terminal pngcairo size 800,600");
    let _ = writeln!(out, "set output '{output_png}'");
    let _ = writeln!(out, "set logscale y");
    let _ = writeln!(out, "set format y '10^{{%L}}'");
    let _ = writeln!(out, "set xlabel 'Eb/N0 (dB)'");
    let _ = writeln!(out, "set ylabel 'BER'");
    let _ = writeln!(out, "set grid");
    let plots: Vec<String> = csv_files
        .iter()
        .map(|(file, title)| format!("'{file}' using 1:($5>0?$5:1/0) skip 1 with linespoints title '{title}'"))
        .collect();
    let _ = writeln!(out, "plot {}", plots.join(", \\\n     "));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heawood() -> Permutation {
        Permutation::new((0..14).map(|i| (i + [5, 9][i % 2]) % 14).collect()).unwrap()
    }

    #[test]
    fn stop_rule_honoured() {
        let mut cfg = SimConfig::new(heawood(), vec![-2.0, 30.0], 5);
        cfg.min_bit_errors = 10;
        cfg.max_blocks = 200;
        cfg.iterations = 2;
        let pts = simulate_ber(&cfg).unwrap();
        // low SNR: stops on errors well before the block cap
        assert!(pts[0].bit_errors >= 10 && pts[0].blocks < 200);
        // high SNR: runs to the block cap with no errors
        assert_eq!((pts[1].blocks, pts[1].bit_errors), (200, 0));
        assert_eq!(pts[1].info_bits, 200 * 14);
    }

    #[test]
    fn identical_seeds_identical_points() {
        let mut cfg = SimConfig::new(heawood(), vec![0.0, 1.0], 99);
        cfg.max_blocks = 70;
        cfg.iterations = 3;
        let a = simulate_ber(&cfg).unwrap();
        cfg.workers = Some(3);
        let b = simulate_ber(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(to_csv(&a), to_csv(&b));
    }

    #[test]
    fn noiseless_blocks_are_error_free() {
        let outs = simulate_blocks(&heawood(), f64::INFINITY, 1, 0, 0, 0..20).unwrap();
        assert!(outs.iter().all(|o| o.errors_by_iteration == vec![0]));
    }

    #[test]
    fn csv_layout() {
        let p = BerPoint {
            ebn0_db: 1.5,
            blocks: 10,
            info_bits: 1000,
            bit_errors: 5,
            frame_errors: 2,
        };
        let csv = to_csv(&[p]);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        assert_eq!(lines.next(), Some("1.5,1000,5,2,5.000000e-3,2.000000e-1"));
        assert!(gnuplot_script(&[("a.csv", "graph")], "a.png").contains("'a.csv' using 1"));
    }
}

//! Rate-1/3 turbo code with `(1, 15/13)` constituents, BPSK/AWGN channel,
//! iterative log-MAP decoding and BER measurement.

pub mod bcjr;
pub mod channel;
pub mod code;
pub mod interleavers;
pub mod pccc;
pub mod sim;

pub use bcjr::{bcjr_log_map, max_star, LogMap, MapOutput};
pub use channel::{channel, noise_variance, NOISELESS_LLR};
pub use code::{rsc_encode, RscOutput, TrellisCode};
pub use interleavers::{default_spread, quadratic_interleaver, spread_violation, srandom_interleaver};
pub use pccc::{code_rate, codeword_len, demux, pccc_encode, turbo_decode, Interleaver, TurboDecoder};
pub use sim::{simulate_ber, simulate_blocks, to_csv, BerPoint, BlockOutcome, SimConfig};

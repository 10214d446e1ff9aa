//! Turbo-code interleavers built from cubic Hamiltonian graphs.
//!
//! A cubic graph on the ring `0 … N-1` whose remaining edges are chords
//! `i - π(i)` yields an interleaver `π` that is its own inverse. Chords are
//! generated from a short spoke vector `(c0, …, c_{s-1})` via
//! `π(i) = (i + c_{i mod s}) mod N`, and the vector is searched for maximum
//! graph girth, which drives up the interleaver's summary distance.
//!
//! * [`permcore`] – permutations, Lee distance, permutation cycles
//! * [`cubic`] – ring-plus-chord cubic graphs and their girth
//! * [`spokes`] – spoke-vector validity, counting, search and extension
//! * [`ig`] – interleaver graphs and exact summary distance
//! * [`turbo`] – rate-1/3 turbo code simulation with baseline interleavers

pub mod cubic;
pub mod error;
pub mod ig;
pub mod permcore;
pub mod spokes;
pub mod turbo;

pub use error::{Error, Result};
pub use permcore::Permutation;
pub use spokes::SpokeVector;

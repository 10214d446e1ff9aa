//! Spoke vectors.
//!
//! A spoke vector `N_s(c0, …, c_{s-1})` joins vertex `i` of the ring
//! `0 … N-1` to vertex `(i + c_{i mod s}) mod N`. It describes a cubic
//! Hamiltonian graph iff `s | N` and `c_i = N − c_{(i + c_i) mod s}` for
//! every `i`, and the chord map is then an interleaver that is its own
//! inverse.
//!
//! Choosing `c_i` forces the entry at `(i + c_i) mod s`, so valid vectors are
//! in bijection with involutions on the `s` indices plus a value per orbit.
//! [`enumerate_valid`] walks that structure directly.

use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::cubic::{girth_through, CubicGraph};
use crate::error::{Error, Result};
use crate::ig::{build_ig, nonchain_girth_through, summary_distance_through};
use crate::permcore::Permutation;

/// Default ceiling on the search-space estimate `N^⌈s/2⌉`.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// Why a candidate spoke vector is rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyVector,
    WrongLength { s: usize, found: usize },
    /// `N mod s ≠ 0`.
    NotDivisible { n: usize, s: usize },
    /// Entry outside `{1, …, N-1}`.
    OutOfRange { index: usize, value: usize },
    /// `c_i ≠ N − c_j` where `j = (i + c_i) mod s`; `required` is `N − c_i`.
    Complement {
        index: usize,
        partner: usize,
        required: usize,
        found: usize,
    },
    /// Entry `1` or `N-1` gives a chord parallel to a ring edge.
    NotSimple { index: usize, value: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyVector => write!(f, "spoke vector is empty"),
            Violation::WrongLength { s, found } => {
                write!(f, "expected {s} entries, found {found}")
            }
            Violation::NotDivisible { n, s } => write!(f, "N mod s = {n} mod {s} ≠ 0"),
            Violation::OutOfRange { index, value } => {
                write!(f, "c{index} = {value} is outside 1..N-1")
            }
            Violation::Complement {
                index,
                partner,
                required,
                found,
            } => write!(
                f,
                "complement condition fails at i={index}: needs c{partner} = {required}, found {found}"
            ),
            Violation::NotSimple { index, value } => {
                write!(f, "c{index} = {value} duplicates a ring edge")
            }
        }
    }
}

/// Outcome of [`validate_spoke_vector`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject(Violation),
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }

    pub fn into_result(self) -> std::result::Result<(), Violation> {
        match self {
            Verdict::Accept => Ok(()),
            Verdict::Reject(v) => Err(v),
        }
    }
}

/// Checks divisibility, the entry range, the complement condition and,
/// when `simple_only` is set, the absence of ring-parallel chords. Reports
/// the first violated condition in that order.
pub fn validate_spoke_vector(n: usize, s: usize, c: &[usize], simple_only: bool) -> Verdict {
    use Verdict::Reject;
    if s == 0 {
        return Reject(Violation::EmptyVector);
    }
    if c.len() != s {
        return Reject(Violation::WrongLength { s, found: c.len() });
    }
    if n % s != 0 {
        return Reject(Violation::NotDivisible { n, s });
    }
    if let Some((index, &value)) = c.iter().enumerate().find(|(_, &v)| v == 0 || v >= n) {
        return Reject(Violation::OutOfRange { index, value });
    }
    for (index, &ci) in c.iter().enumerate() {
        let partner = (index + ci) % s;
        if c[partner] != n - ci {
            return Reject(Violation::Complement {
                index,
                partner,
                required: n - ci,
                found: c[partner],
            });
        }
    }
    if simple_only {
        if let Some((index, &value)) = c.iter().enumerate().find(|(_, &v)| v == 1 || v == n - 1) {
            return Reject(Violation::NotSimple { index, value });
        }
    }
    Verdict::Accept
}

/// A spoke vector satisfying divisibility and the complement condition.
///
/// Ordering is by block length, then lexicographic on the entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpokeVector {
    n: usize,
    c: Vec<usize>,
}

impl SpokeVector {
    pub fn new(n: usize, c: Vec<usize>) -> Result<Self> {
        validate_spoke_vector(n, c.len(), &c, false)
            .into_result()
            .map_err(Error::InvalidSpokes)?;
        Ok(Self { n, c })
    }

    pub fn block_len(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.c.len()
    }

    pub fn entries(&self) -> &[usize] {
        &self.c
    }

    /// No entry equals `1` or `N-1`, so the graph has no parallel edges.
    pub fn is_simple(&self) -> bool {
        self.c.iter().all(|&v| v != 1 && v != self.n - 1)
    }

    /// Index paired with `i` by the complement condition.
    pub fn partner(&self, i: usize) -> usize {
        (i + self.c[i]) % self.size()
    }

    pub fn interleaver(&self) -> Permutation {
        interleaver_from_spokes(self)
    }

    /// The cubic graph; fails for non-simple vectors.
    pub fn graph(&self) -> Result<CubicGraph> {
        CubicGraph::from_permutation(&self.interleaver())
    }

    /// Girth of the graph. Rotating by `s` positions is an automorphism, so
    /// only the roots `0..s` are searched.
    pub fn girth(&self) -> Result<usize> {
        Ok(girth_through(&self.graph()?, 0..self.size()))
    }

    /// Non-chain girth and summary distance of the interleaver graph, using
    /// the same rotation symmetry on the dotted edges.
    pub fn ig_metrics(&self) -> Result<(usize, usize)> {
        let ig = build_ig(&self.interleaver())?;
        let reps = 0..self.size();
        Ok((nonchain_girth_through(&ig, reps.clone()), summary_distance_through(&ig, reps)))
    }

    /// Text form: `N s` on line 1, the entries on line 2.
    pub fn to_text(&self) -> String {
        format!("{} {}\n{}\n", self.n, self.size(), join(&self.c, " "))
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let head = lines
            .next()
            .ok_or_else(|| Error::Parse("empty spoke-vector file".into()))?;
        let nums = |line: &str| -> Result<Vec<usize>> {
            line.split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad number `{t}`"))))
                .collect()
        };
        let head = nums(head)?;
        let [n, s] = head[..] else {
            return Err(Error::Parse("first line must be `N s`".into()));
        };
        let c = nums(lines.next().unwrap_or(""))?;
        if c.len() != s {
            return Err(Error::LengthMismatch { expected: s, found: c.len() });
        }
        Self::new(n, c)
    }
}

impl fmt::Display for SpokeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}({})", self.n, self.size(), join(&self.c, ", "))
    }
}

fn join(values: &[usize], sep: &str) -> String {
    values.iter().map(usize::to_string).collect::<Vec<_>>().join(sep)
}

/// `π(i) = (i + c_{i mod s}) mod N`.
pub fn interleaver_from_spokes(v: &SpokeVector) -> Permutation {
    let (n, s) = (v.n, v.size());
    Permutation::new((0..n).map(|i| (i + v.c[i % s]) % n).collect())
        .expect("a valid spoke vector defines an involution")
}

fn check_divisible(n: usize, s: usize) -> Result<()> {
    if s == 0 {
        return Err(Error::InvalidSpokes(Violation::EmptyVector));
    }
    if n % s != 0 {
        return Err(Error::InvalidSpokes(Violation::NotDivisible { n, s }));
    }
    if n % 2 != 0 {
        return Err(Error::OddOrder(n));
    }
    Ok(())
}

/// Closed-form count of valid spoke vectors of size `s` for order `N`,
/// evaluated term by term:
///
/// * even `s`: `Σ_{k=0}^{s/2} C(s, 2k) · (N/s)^{s/2−k} · (1·3·…·(s−2k−1))`
/// * odd `s`: `Σ_{k=0}^{(s−1)/2} C(s, 2k+1) · (N/s)^{(s−1)/2−k} · (2·4·…·(s−2k−1))`
///
/// Empty products are 1. The even branch agrees with exhaustive counting
/// whenever `2s | N`. The odd branch overcounts: it multiplies by
/// `2·4·…·(s−2k−1)` where the number of pairings of the remaining
/// `s−2k−1` indices is `1·3·…·(s−2k−2)`. For example `(24, 3)` gives 49
/// against 25 valid vectors.
pub fn count_valid_formula(n: usize, s: usize) -> Result<BigUint> {
    check_divisible(n, s)?;
    let q = BigUint::from(n / s);
    let mut total = BigUint::from(0u32);
    if s % 2 == 0 {
        for k in 0..=s / 2 {
            total += binomial(s, 2 * k) * q.pow((s / 2 - k) as u32) * step_product(1, s - 2 * k);
        }
    } else {
        for k in 0..=(s - 1) / 2 {
            total += binomial(s, 2 * k + 1)
                * q.pow(((s - 1) / 2 - k) as u32)
                * step_product(2, s - 2 * k);
        }
    }
    Ok(total)
}

fn binomial(n: usize, k: usize) -> BigUint {
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

/// `first · (first+2) · …` over the terms below `below`; 1 when empty.
fn step_product(first: usize, below: usize) -> BigUint {
    (first..below)
        .step_by(2)
        .fold(BigUint::from(1u32), |acc, x| acc * x)
}

/// Counts valid vectors by testing every tuple in `{1, …, N-1}^s`.
///
/// Independent of [`enumerate_valid`]; refuses when `(N-1)^s` exceeds
/// `budget`.
pub fn count_valid_bruteforce(n: usize, s: usize, simple_only: bool, budget: u128) -> Result<u64> {
    check_divisible(n, s)?;
    let space = ((n - 1) as u128).checked_pow(s as u32).unwrap_or(u128::MAX);
    if space > budget {
        return Err(Error::BudgetExceeded {
            n,
            s,
            estimate: space,
            budget,
            predicted: count_valid_formula(n, s)?.to_string(),
        });
    }
    let mut c = vec![1usize; s];
    let mut count = 0;
    loop {
        if validate_spoke_vector(n, s, &c, simple_only).is_accept() {
            count += 1;
        }
        let mut pos = 0;
        loop {
            if pos == s {
                return Ok(count);
            }
            c[pos] += 1;
            if c[pos] < n {
                break;
            }
            c[pos] = 1;
            pos += 1;
        }
    }
}

/// Search-space estimate `N^⌈s/2⌉` used for budget checks.
pub fn search_space_estimate(n: usize, s: usize) -> u128 {
    (n as u128).checked_pow(s.div_ceil(2) as u32).unwrap_or(u128::MAX)
}

#[derive(Debug, Clone, Copy)]
struct Frame {
    pos: usize,
    value: usize,
    forced: Option<usize>,
}

/// Lexicographic stream of valid spoke vectors; see [`enumerate_valid`].
#[derive(Debug, Clone)]
pub struct ValidSpokes {
    n: usize,
    simple_only: bool,
    c: Vec<usize>,
    stack: Vec<Frame>,
    started: bool,
    done: bool,
}

/// Streams every valid vector of size `s` once, in lexicographic order.
///
/// Free positions are assigned left to right; each assignment `c_i = v`
/// also fixes `c_{(i+v) mod s} = N − v`, so only involution-compatible
/// tuples are ever visited.
pub fn enumerate_valid(n: usize, s: usize, simple_only: bool, budget: u128) -> Result<ValidSpokes> {
    check_divisible(n, s)?;
    let estimate = search_space_estimate(n, s);
    if estimate > budget {
        return Err(Error::BudgetExceeded {
            n,
            s,
            estimate,
            budget,
            predicted: count_valid_formula(n, s)?.to_string(),
        });
    }
    Ok(ValidSpokes {
        n,
        simple_only,
        c: vec![0; s],
        stack: Vec::with_capacity(s),
        started: false,
        done: false,
    })
}

impl ValidSpokes {
    fn allowed(&self, v: usize) -> bool {
        !(self.simple_only && (v == 1 || v == self.n - 1))
    }

    /// Assigns the smallest feasible value `≥ from` to `pos`.
    fn assign(&mut self, pos: usize, from: usize) -> bool {
        let (n, s) = (self.n, self.c.len());
        for v in from.max(1)..n {
            if !self.allowed(v) {
                continue;
            }
            let partner = (pos + v) % s;
            let forced = if partner == pos {
                if 2 * v != n {
                    continue;
                }
                None
            } else if self.c[partner] != 0 {
                continue;
            } else {
                Some(partner)
            };
            self.c[pos] = v;
            if let Some(j) = forced {
                self.c[j] = n - v;
            }
            self.stack.push(Frame { pos, value: v, forced });
            return true;
        }
        false
    }

    fn search(&mut self, mut backtrack: bool) -> bool {
        loop {
            if backtrack {
                let Some(frame) = self.stack.pop() else {
                    return false;
                };
                self.c[frame.pos] = 0;
                if let Some(j) = frame.forced {
                    self.c[j] = 0;
                }
                backtrack = !self.assign(frame.pos, frame.value + 1);
            } else {
                match self.c.iter().position(|&v| v == 0) {
                    None => return true,
                    Some(pos) => backtrack = !self.assign(pos, 1),
                }
            }
        }
    }
}

impl Iterator for ValidSpokes {
    type Item = SpokeVector;

    fn next(&mut self) -> Option<SpokeVector> {
        if self.done {
            return None;
        }
        let found = self.search(self.started);
        self.started = true;
        if found {
            Some(SpokeVector {
                n: self.n,
                c: self.c.clone(),
            })
        } else {
            self.done = true;
            None
        }
    }
}

/// Smallest spoke-vector size that can reach girth `g`: `⌈(g−2)/2⌉`.
///
/// A size-`s` graph always contains a cycle of length `2s + 2`.
pub fn min_spoke_size_for_girth(g: usize) -> usize {
    g.saturating_sub(2).div_ceil(2)
}

/// Rule for choosing among the girth maximizers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// Largest interleaver summary distance, then lexicographically smallest.
    #[default]
    MaxSummaryDistance,
    /// Lexicographically smallest.
    Lexicographic,
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub tie_break: TieBreak,
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
    pub budget: u128,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            tie_break: TieBreak::default(),
            workers: None,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// A girth maximizer with its interleaver-graph figures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub vector: SpokeVector,
    pub girth: usize,
    pub ig_girth: usize,
    pub dsum: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub n: usize,
    pub s: usize,
    pub examined: u64,
    /// `None` when there were no candidates.
    pub best_girth: Option<usize>,
    /// Lexicographic order.
    pub winners: Vec<Candidate>,
    pub chosen: Option<Candidate>,
}

impl SearchReport {
    fn empty(n: usize, s: usize) -> Self {
        Self {
            n,
            s,
            examined: 0,
            best_girth: None,
            winners: Vec::new(),
            chosen: None,
        }
    }

    pub fn winner_vectors(&self) -> Vec<&SpokeVector> {
        self.winners.iter().map(|c| &c.vector).collect()
    }
}

/// Smallest order for which the search runs; below it the report is empty.
pub const MIN_SEARCH_ORDER: usize = 6;

/// Scans every simple valid vector, keeps those of maximum girth and picks
/// one by `opts.tie_break`.
///
/// Girths are evaluated in parallel; the reduction is order-independent, so
/// the report does not depend on the worker count.
pub fn search_best_girth(n: usize, s: usize, opts: &SearchOptions) -> Result<SearchReport> {
    check_divisible(n, s)?;
    if n < MIN_SEARCH_ORDER {
        return Ok(SearchReport::empty(n, s));
    }
    let candidates: Vec<SpokeVector> = enumerate_valid(n, s, true, opts.budget)?.collect();
    if candidates.is_empty() {
        return Ok(SearchReport::empty(n, s));
    }
    let run = || scan(n, s, candidates, opts.tie_break);
    match opts.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    }
}

fn scan(n: usize, s: usize, candidates: Vec<SpokeVector>, tie: TieBreak) -> Result<SearchReport> {
    let girths: Vec<usize> = candidates
        .par_iter()
        .map(SpokeVector::girth)
        .collect::<Result<_>>()?;
    let best = *girths.iter().max().expect("non-empty");
    let winners: Vec<Candidate> = candidates
        .iter()
        .zip(&girths)
        .filter(|(_, &g)| g == best)
        .map(|(v, _)| v.clone())
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|vector| {
            let (ig_girth, dsum) = vector.ig_metrics()?;
            Ok(Candidate {
                girth: best,
                ig_girth,
                dsum,
                vector,
            })
        })
        .collect::<Result<_>>()?;
    let chosen = match tie {
        TieBreak::Lexicographic => winners.first().cloned(),
        TieBreak::MaxSummaryDistance => {
            let top = winners.iter().map(|c| c.dsum).max();
            winners.iter().find(|c| Some(c.dsum) == top).cloned()
        }
    };
    Ok(SearchReport {
        n,
        s,
        examined: candidates.len() as u64,
        best_girth: Some(best),
        winners,
        chosen,
    })
}

/// One entry of a signed spoke description.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignedEntry {
    /// Kept as is.
    Positive(usize),
    /// Written `−x`, meaning `N − x` at whatever order is realized.
    Negative(usize),
    /// The diameter chord `N / 2`.
    Half,
}

/// A spoke vector with each complementary pair written as `+x, −x` and
/// diameters marked, so it can be re-read at a larger order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedSpokeDescription {
    n: usize,
    entries: Vec<SignedEntry>,
}

impl SignedSpokeDescription {
    /// In each complementary pair the entry below `N/2` stays positive and
    /// its partner is written as the negation; entries equal to `N/2` are
    /// half-entries.
    pub fn from_vector(v: &SpokeVector) -> Self {
        let n = v.n;
        let entries = v
            .c
            .iter()
            .map(|&c| {
                if 2 * c == n {
                    SignedEntry::Half
                } else if 2 * c < n {
                    SignedEntry::Positive(c)
                } else {
                    SignedEntry::Negative(n - c)
                }
            })
            .collect();
        Self { n, entries }
    }

    pub fn entries(&self) -> &[SignedEntry] {
        &self.entries
    }

    pub fn block_len(&self) -> usize {
        self.n
    }

    /// Signed integer values at the description's own order.
    pub fn signed_values(&self) -> Vec<i64> {
        self.entries
            .iter()
            .map(|e| match *e {
                SignedEntry::Positive(x) => x as i64,
                SignedEntry::Negative(x) => -(x as i64),
                SignedEntry::Half => (self.n / 2) as i64,
            })
            .collect()
    }

    /// Reads the description at order `order`, checking the result.
    pub fn realize(&self, order: usize) -> Result<SpokeVector> {
        let c = self
            .entries
            .iter()
            .map(|e| match *e {
                SignedEntry::Positive(x) => x,
                SignedEntry::Negative(x) => order - x,
                SignedEntry::Half => order / 2,
            })
            .collect();
        SpokeVector::new(order, c)
    }

    /// The same description at another order.
    pub fn at_order(&self, order: usize) -> Self {
        Self {
            n: order,
            entries: self.entries.clone(),
        }
    }
}

/// Order of the `k`-step extension: `N + k·s` for even `s`, `N + 2k·s` for
/// odd `s`.
pub fn extended_order(n: usize, s: usize, k: usize) -> usize {
    if s % 2 == 0 {
        n + k * s
    } else {
        n + 2 * k * s
    }
}

/// Derives a spoke vector of larger order without searching.
///
/// Positive entries are kept, negated entries `−x` become `N_G − x`, and
/// half-entries become `N_G / 2`. When `s` is even and `k` odd, a diameter
/// at position `l` moves its partner to `l + s/2`; if that position is not
/// a diameter too the result violates the complement condition and an
/// error is returned.
pub fn extend_description(v: &SpokeVector, k: usize) -> Result<SpokeVector> {
    let order = extended_order(v.n, v.size(), k);
    SignedSpokeDescription::from_vector(v).realize(order)
}

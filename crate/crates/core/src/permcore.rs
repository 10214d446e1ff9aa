//! Permutations on `{0, …, N-1}`, the Lee metric, permutation cycles and a
//! brute-force summary-distance oracle.
//!
//! A permutation cycle of even length `l` is the alternating sequence
//! `i1, i2, j2, j3, i3, i4, …, jl, j1` with distinct `ik` and `jk = π(ik)`.
//! Its summary distance adds the Lee distances `d(i1,i2) + d(j2,j3) +
//! d(i3,i4) + … + d(jl,j1)`; the summary distance of the permutation is the
//! minimum over all cycles.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Circular distance `min(|i-j|, n-|i-j|)` on `{0, …, n-1}`.
pub fn lee_distance(i: usize, j: usize, n: usize) -> Result<usize> {
    for index in [i, j] {
        if index >= n {
            return Err(Error::IndexOutOfRange { index, n });
        }
    }
    Ok(lee(i, j, n))
}

/// Unchecked Lee distance for callers that already hold valid indices.
#[inline]
pub(crate) fn lee(i: usize, j: usize, n: usize) -> usize {
    let d = i.abs_diff(j);
    d.min(n - d)
}

/// A validated bijection on `{0, …, n-1}` with `n ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    /// Validates `table` as a permutation; entry `i` is `π(i)`.
    ///
    /// The error names the first index whose entry is out of range or
    /// repeats an earlier value.
    pub fn new(table: Vec<usize>) -> Result<Self> {
        let n = table.len();
        if n < 2 {
            return Err(Error::TooSmall { n, min: 2 });
        }
        let mut seen = vec![false; n];
        for (index, &value) in table.iter().enumerate() {
            if value >= n {
                return Err(Error::NotBijection {
                    index,
                    value,
                    reason: "out of range",
                });
            }
            if std::mem::replace(&mut seen[value], true) {
                return Err(Error::NotBijection {
                    index,
                    value,
                    reason: "a duplicate",
                });
            }
        }
        Ok(Self { map: table })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new((0..n).collect())
    }

    /// Block length `N`.
    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// `π(i)`. Panics if `i ≥ N`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.map
    }

    /// The permutation `q` with `q(π(i)) = i`.
    pub fn invert(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v] = i;
        }
        Self { map: inv }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(Self {
            map: other.map.iter().map(|&v| self.map[v]).collect(),
        })
    }

    pub fn is_involution(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| self.map[v] == i)
    }

    pub fn fixed_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.map.iter().enumerate().filter(|(i, v)| *i == **v).map(|(i, _)| i)
    }

    /// Text form: `N` on the first line, then `π(i)` one per line.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.len() * 6);
        let _ = writeln!(out, "{}", self.len());
        for v in &self.map {
            let _ = writeln!(out, "{v}");
        }
        out
    }

    /// Parses the format written by [`Permutation::to_text`].
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty interleaver file".into()))?;
        let n: usize = header
            .parse()
            .map_err(|_| Error::Parse(format!("bad block length line `{header}`")))?;
        let table = lines
            .map(|l| {
                l.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad entry `{l}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        if table.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: table.len(),
            });
        }
        Self::new(table)
    }
}

/// A cycle in a permutation: `l` distinct indices `i_k` and their images.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PermCycle {
    i_seq: Vec<usize>,
    j_seq: Vec<usize>,
}

impl PermCycle {
    /// Builds the cycle through `indices` under `p`.
    pub fn new(p: &Permutation, indices: Vec<usize>) -> Result<Self> {
        let l = indices.len();
        if l < 2 || l % 2 != 0 {
            return Err(Error::BadCycleLength(l));
        }
        let mut seen = vec![false; p.len()];
        for (index, &i) in indices.iter().enumerate() {
            if i >= p.len() {
                return Err(Error::IndexOutOfRange { index: i, n: p.len() });
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::NotBijection {
                    index,
                    value: i,
                    reason: "a repeated cycle index",
                });
            }
        }
        let j_seq = indices.iter().map(|&i| p.apply(i)).collect();
        Ok(Self {
            i_seq: indices,
            j_seq,
        })
    }

    pub fn len(&self) -> usize {
        self.i_seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.i_seq.is_empty()
    }

    pub fn i_seq(&self) -> &[usize] {
        &self.i_seq
    }

    pub fn j_seq(&self) -> &[usize] {
        &self.j_seq
    }
}

/// Summary distance of one cycle over a block of length `n`.
pub fn cycle_summary_distance(c: &PermCycle, n: usize) -> usize {
    let l = c.len();
    (0..l)
        .map(|k| {
            let next = (k + 1) % l;
            if k % 2 == 0 {
                lee(c.i_seq[k], c.i_seq[next], n)
            } else {
                lee(c.j_seq[k], c.j_seq[next], n)
            }
        })
        .sum()
}

/// Iterator over canonical permutation cycles of even length `2..=max_l`.
///
/// Two index sequences describe the same cycle when one is a rotation by an
/// even number of places or the pair-preserving reversal
/// `(i2, i1, il, …, i3)` of the other. Exactly one member of each class
/// starts with its smallest index, and that member is the one yielded.
#[derive(Debug, Clone)]
pub struct PermCycles<'a> {
    p: &'a Permutation,
    max_l: usize,
    seq: Vec<usize>,
    used: Vec<bool>,
    fresh: bool,
}

/// Streams every cycle with `l ≤ max_l` once, shortest first and
/// lexicographically within each length.
pub fn enumerate_perm_cycles(p: &Permutation, max_l: usize) -> Result<PermCycles<'_>> {
    if max_l < 2 || max_l % 2 != 0 {
        return Err(Error::BadCycleLength(max_l));
    }
    if max_l > p.len() {
        return Err(Error::InvalidParameter(format!(
            "max cycle length {max_l} exceeds block length {}",
            p.len()
        )));
    }
    let mut it = PermCycles {
        p,
        max_l,
        seq: Vec::new(),
        used: vec![false; p.len()],
        fresh: true,
    };
    it.start_length(2);
    Ok(it)
}

impl PermCycles<'_> {
    fn start_length(&mut self, l: usize) {
        self.used.iter_mut().for_each(|u| *u = false);
        self.seq = (0..l).collect();
        for &i in &self.seq {
            self.used[i] = true;
        }
        self.fresh = true;
    }

    /// Lexicographic successor among injective sequences whose first entry is
    /// their minimum.
    fn advance(&mut self) -> bool {
        let n = self.p.len();
        let l = self.seq.len();
        let mut pos = l;
        while pos > 0 {
            pos -= 1;
            let cur = self.seq[pos];
            self.used[cur] = false;
            let floor = if pos == 0 { cur + 1 } else { (cur + 1).max(self.seq[0] + 1) };
            if pos == 0 && n - floor < l {
                return false;
            }
            if let Some(v) = (floor..n).find(|&v| !self.used[v]) {
                self.seq[pos] = v;
                self.used[v] = true;
                let base = self.seq[0];
                let mut cand = base + 1;
                for slot in pos + 1..l {
                    while self.used[cand] {
                        cand += 1;
                    }
                    self.seq[slot] = cand;
                    self.used[cand] = true;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for PermCycles<'_> {
    type Item = PermCycle;

    fn next(&mut self) -> Option<PermCycle> {
        if self.fresh {
            self.fresh = false;
        } else if !self.advance() {
            let l = self.seq.len() + 2;
            if l > self.max_l {
                return None;
            }
            self.start_length(l);
            self.fresh = false;
        }
        let j_seq = self.seq.iter().map(|&i| self.p.apply(i)).collect();
        Some(PermCycle {
            i_seq: self.seq.clone(),
            j_seq,
        })
    }
}

/// Minimum summary distance over all cycles of length at most `max_l`.
///
/// This is an upper bound on the summary distance of `p`; it is exact once
/// `max_l` reaches the length of a minimizing cycle. The exact value is
/// computed in polynomial time by [`crate::ig::summary_distance_exact`].
pub fn summary_distance_bruteforce(p: &Permutation, max_l: usize) -> Result<usize> {
    Ok(enumerate_perm_cycles(p, max_l)?
        .map(|c| cycle_summary_distance(&c, p.len()))
        .min()
        .expect("at least one 2-cycle exists for n >= 2"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn shift(n: usize, k: usize) -> Permutation {
        Permutation::new((0..n).map(|i| (i + k) % n).collect()).unwrap()
    }

    #[test]
    fn lee_examples() {
        assert_eq!(lee_distance(0, 8, 9).unwrap(), 1);
        assert_eq!(lee_distance(5, 5, 14).unwrap(), 0);
        assert_eq!(lee_distance(2, 12, 14).unwrap(), 4);
        assert_eq!(
            lee_distance(3, 14, 14),
            Err(Error::IndexOutOfRange { index: 14, n: 14 })
        );
    }

    #[test]
    fn lee_triangle_exhaustive() {
        for n in 1..=20 {
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(lee(i, j, n), lee(j, i, n));
                    assert!(lee(i, j, n) <= n / 2);
                    for k in 0..n {
                        assert!(lee(i, k, n) <= lee(i, j, n) + lee(j, k, n));
                    }
                }
            }
        }
    }

    #[test]
    fn make_permutation_examples() {
        let p = Permutation::new(vec![4, 7, 1, 5, 8, 2, 6, 0, 3]).unwrap();
        assert_eq!(p.len(), 9);
        assert_eq!(p.fixed_points().collect::<Vec<_>>(), vec![6]);
        assert!(Permutation::new(vec![0, 1, 2]).is_ok());
        match Permutation::new(vec![0, 0, 2]) {
            Err(Error::NotBijection { index, .. }) => assert_eq!(index, 1),
            other => panic!("unexpected {other:?}"),
        }
        match Permutation::new(vec![0, 3, 1]) {
            Err(Error::NotBijection { index, .. }) => assert_eq!(index, 1),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Permutation::new(vec![0]).is_err());
    }

    #[test]
    fn invert_examples() {
        let p = Permutation::new(vec![1, 2, 0]).unwrap();
        assert_eq!(p.invert().as_slice(), &[2, 0, 1]);
        let id = Permutation::identity(5).unwrap();
        assert_eq!(id.invert(), id);
        // 14_2(5,9): i -> i+5 on even i, i+9 on odd i
        let heawood = Permutation::new(
            (0..14).map(|i| (i + if i % 2 == 0 { 5 } else { 9 }) % 14).collect(),
        )
        .unwrap();
        assert_eq!(heawood.invert(), heawood);
        assert_eq!(heawood.compose(&heawood).unwrap(), Permutation::identity(14).unwrap());
    }

    #[test]
    fn text_format_roundtrip() {
        let p = Permutation::new(vec![4, 7, 1, 5, 8, 2, 6, 0, 3]).unwrap();
        let text = p.to_text();
        assert!(text.starts_with("9\n4\n7\n"));
        assert_eq!(Permutation::from_text(&text).unwrap(), p);
        assert!(Permutation::from_text("3\n0\n1\n").is_err());
        assert!(Permutation::from_text("2\n0\nx\n").is_err());
    }

    #[test]
    fn enumeration_examples() {
        let id = Permutation::identity(4).unwrap();
        let cycles: Vec<_> = enumerate_perm_cycles(&id, 2).unwrap().collect();
        assert!(cycles.iter().any(|c| c.i_seq() == [0, 1] && c.j_seq() == [0, 1]));

        let p = Permutation::new(vec![1, 0, 3, 2]).unwrap();
        let c = enumerate_perm_cycles(&p, 2)
            .unwrap()
            .find(|c| c.i_seq() == [0, 1])
            .unwrap();
        assert_eq!(c.j_seq(), &[1, 0]);

        for n in 2..=12 {
            let p = shift(n, 3 % n);
            assert_eq!(enumerate_perm_cycles(&p, 2).unwrap().count(), n * (n - 1) / 2);
        }
        assert_eq!(enumerate_perm_cycles(&id, 3).unwrap_err(), Error::BadCycleLength(3));
    }

    #[test]
    fn enumeration_counts_classes() {
        // every l-sequence of distinct indices lies in a class of size l
        for n in 4..=9 {
            let p = shift(n, 1);
            let c4 = enumerate_perm_cycles(&p, 4).unwrap().filter(|c| c.len() == 4).count();
            assert_eq!(c4, n * (n - 1) * (n - 2) * (n - 3) / 4);
        }
    }

    #[test]
    fn enumeration_yields_canonical_representatives_once() {
        let p = Permutation::new(vec![3, 5, 0, 1, 4, 2]).unwrap();
        let mut seen = std::collections::HashSet::new();
        for c in enumerate_perm_cycles(&p, 6).unwrap() {
            let s = c.i_seq();
            assert!(s[1..].iter().all(|&x| x > s[0]));
            let l = s.len();
            // all rotations by even steps and pair-preserving reversals
            let mut class = Vec::new();
            for r in (0..l).step_by(2) {
                let rot: Vec<_> = (0..l).map(|k| s[(k + r) % l]).collect();
                let rev: Vec<_> = (0..l).map(|k| rot[(l + 1 - k) % l]).collect();
                class.push(rot);
                class.push(rev);
            }
            let key = class.iter().min().unwrap().clone();
            assert!(seen.insert(key), "duplicate class for {s:?}");
            let d = cycle_summary_distance(&c, 6);
            for member in class {
                let other = PermCycle::new(&p, member).unwrap();
                assert_eq!(cycle_summary_distance(&other, 6), d);
            }
        }
    }

    #[test]
    fn cycle_distance_examples() {
        let id = Permutation::identity(8).unwrap();
        let c = PermCycle::new(&id, vec![0, 1]).unwrap();
        assert_eq!(cycle_summary_distance(&c, 8), 2);
        let p = shift(14, 7);
        assert_eq!(cycle_summary_distance(&PermCycle::new(&p, vec![0, 1]).unwrap(), 14), 2);
        assert_eq!(cycle_summary_distance(&PermCycle::new(&p, vec![0, 7]).unwrap(), 14), 14);
        assert!(PermCycle::new(&p, vec![0, 1, 2]).is_err());
        assert!(PermCycle::new(&p, vec![0, 0]).is_err());
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(summary_distance_bruteforce(&shift(14, 7), 2).unwrap(), 2);
        assert_eq!(summary_distance_bruteforce(&Permutation::identity(8).unwrap(), 2).unwrap(), 2);
        let heawood = Permutation::new(
            (0..14).map(|i| (i + if i % 2 == 0 { 5 } else { 9 }) % 14).collect(),
        )
        .unwrap();
        let d = summary_distance_bruteforce(&heawood, 4).unwrap();
        assert!((3..=4).contains(&d), "d_sum {d}");
    }

    #[test]
    fn cycle_distance_at_least_two_exhaustive() {
        for n in 2..=12 {
            let p = shift(n, n / 2);
            let max_l = if n >= 4 { 4 } else { 2 };
            for c in enumerate_perm_cycles(&p, max_l).unwrap() {
                assert!(cycle_summary_distance(&c, n) >= 2);
            }
        }
    }

    fn arb_perm() -> impl Strategy<Value = Permutation> {
        (4usize..14)
            .prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|v| Permutation::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn invert_is_involutive(p in arb_perm()) {
            prop_assert_eq!(p.invert().invert(), p.clone());
            let id = Permutation::identity(p.len()).unwrap();
            prop_assert_eq!(p.invert().compose(&p).unwrap(), id);
        }

        #[test]
        fn longer_search_never_raises_minimum(p in arb_perm()) {
            let d2 = summary_distance_bruteforce(&p, 2).unwrap();
            let d4 = summary_distance_bruteforce(&p, 4).unwrap();
            prop_assert!(d4 <= d2);
        }
    }
}

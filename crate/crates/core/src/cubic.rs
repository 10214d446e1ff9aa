//! Cubic graphs with a fixed Hamiltonian ring `0 - 1 - … - (n-1) - 0`.
//!
//! Each vertex has its two ring neighbours plus one chord. The chord table
//! is a fixed-point-free involution, which is exactly an interleaver that
//! acts as its own de-interleaver.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::permcore::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CubicGraph {
    chord: Vec<usize>,
}

impl CubicGraph {
    /// Validates `chord` as the non-ring neighbour table of an `n`-vertex
    /// cubic graph with the ring as Hamiltonian cycle.
    pub fn from_chord_involution(n: usize, chord: Vec<usize>) -> Result<Self> {
        if n % 2 != 0 {
            return Err(Error::OddOrder(n));
        }
        if n < 4 {
            return Err(Error::TooSmall { n, min: 4 });
        }
        if chord.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: chord.len(),
            });
        }
        for (vertex, &c) in chord.iter().enumerate() {
            let reason = if c >= n {
                "chord endpoint out of range"
            } else if c == vertex {
                "chord is a self-loop"
            } else if c == (vertex + 1) % n || c == (vertex + n - 1) % n {
                "chord parallels a ring edge"
            } else if chord[c] != vertex {
                "chord table is not an involution"
            } else {
                continue;
            };
            return Err(Error::InvalidGraph { vertex, reason });
        }
        Ok(Self { chord })
    }

    pub fn from_permutation(p: &Permutation) -> Result<Self> {
        Self::from_chord_involution(p.len(), p.as_slice().to_vec())
    }

    pub fn order(&self) -> usize {
        self.chord.len()
    }

    pub fn chord(&self, v: usize) -> usize {
        self.chord[v]
    }

    pub fn chords(&self) -> &[usize] {
        &self.chord
    }

    /// Ring predecessor, ring successor, chord.
    #[inline]
    pub fn neighbors(&self, v: usize) -> [usize; 3] {
        let n = self.order();
        [(v + n - 1) % n, (v + 1) % n, self.chord[v]]
    }

    /// Edge list, one `u v` pair per line: ring edges first, then each chord
    /// once with `u < v`.
    pub fn to_edge_list(&self) -> String {
        let n = self.order();
        let mut out = String::new();
        for i in 0..n {
            let _ = writeln!(out, "{} {}", i, (i + 1) % n);
        }
        for (u, &v) in self.chord.iter().enumerate() {
            if u < v {
                let _ = writeln!(out, "{u} {v}");
            }
        }
        out
    }
}

/// Length of the shortest cycle.
///
/// Runs a BFS from every vertex; a non-tree edge `(u, w)` met from root `r`
/// closes a cycle of length at most `d(u) + d(w) + 1`, and the minimum over
/// all roots is attained by a root lying on a shortest cycle. Each BFS is
/// cut off once its frontier can no longer beat the best cycle found so far.
pub fn girth_bfs(g: &CubicGraph) -> usize {
    girth_through(g, 0..g.order())
}

/// Shortest cycle through any of `roots`, or `usize::MAX` when none exists.
///
/// Equals the girth whenever every cycle can be mapped by an automorphism
/// onto one through a root, e.g. the roots `0..s` of a spoke graph.
pub fn girth_through(g: &CubicGraph, roots: impl IntoIterator<Item = usize>) -> usize {
    let n = g.order();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::with_capacity(n);
    let mut touched = Vec::with_capacity(n);

    for root in roots {
        for &v in &touched {
            dist[v] = usize::MAX;
        }
        touched.clear();
        queue.clear();
        dist[root] = 0;
        parent[root] = usize::MAX;
        touched.push(root);
        queue.push_back(root);

        'bfs: while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    touched.push(w);
                    queue.push_back(w);
                } else if w != parent[u] {
                    best = best.min(dist[u] + dist[w] + 1);
                    if best == 3 {
                        break 'bfs;
                    }
                }
            }
        }
        if best == 3 {
            break;
        }
    }
    best
}

/// Upper bound `2·log2(v + 2) − 2` on the girth of a cubic graph with `v`
/// vertices. For an interleaver graph on `2N` vertices this is
/// `2·log2(N + 1)`.
pub fn girth_upper_bound(vertex_count: usize) -> f64 {
    2.0 * ((vertex_count + 2) as f64).log2() - 2.0
}

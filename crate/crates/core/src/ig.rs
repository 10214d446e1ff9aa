//! Interleaver graphs.
//!
//! The graph of an interleaver `π` on `N` positions has an upper and a lower
//! chain, each a ring of `N` vertices joined by solid edges (including the
//! wrap edge `0 - N-1`), and one dotted edge `(upper i) - (lower π(i))` per
//! position. Every cycle other than the two chains passes through a dotted
//! edge and corresponds to a permutation cycle; its count of solid edges is
//! that cycle's summary distance.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::permcore::Permutation;

/// Largest vertex count accepted by [`min_solid_cycle_bruteforce`].
pub const ORACLE_VERTEX_LIMIT: usize = 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chain {
    Upper,
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub chain: Chain,
    pub index: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    Solid,
    Dotted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterleaverGraph {
    perm: Permutation,
    inverse: Vec<usize>,
}

/// Builds the interleaver graph of any permutation with `N ≥ 3`.
pub fn build_ig(p: &Permutation) -> Result<InterleaverGraph> {
    if p.len() < 3 {
        return Err(Error::TooSmall { n: p.len(), min: 3 });
    }
    Ok(InterleaverGraph {
        perm: p.clone(),
        inverse: p.invert().into_vec(),
    })
}

impl InterleaverGraph {
    /// Block length `N`; the graph has `2N` vertices.
    pub fn block_len(&self) -> usize {
        self.perm.len()
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.block_len()
    }

    pub fn edge_count(&self) -> usize {
        3 * self.block_len()
    }

    pub fn permutation(&self) -> &Permutation {
        &self.perm
    }

    /// Flat id: upper `i` is `i`, lower `j` is `N + j`.
    pub fn id(&self, v: Vertex) -> usize {
        match v.chain {
            Chain::Upper => v.index,
            Chain::Lower => self.block_len() + v.index,
        }
    }

    pub fn vertex(&self, id: usize) -> Vertex {
        let n = self.block_len();
        if id < n {
            Vertex { chain: Chain::Upper, index: id }
        } else {
            Vertex { chain: Chain::Lower, index: id - n }
        }
    }

    /// The three neighbours of a flat vertex id with the connecting edge kind.
    #[inline]
    pub fn neighbors(&self, id: usize) -> [(usize, EdgeKind); 3] {
        let n = self.block_len();
        let (base, i) = if id < n { (0, id) } else { (n, id - n) };
        let across = if id < n {
            n + self.perm.apply(i)
        } else {
            self.inverse[i]
        };
        [
            (base + (i + n - 1) % n, EdgeKind::Solid),
            (base + (i + 1) % n, EdgeKind::Solid),
            (across, EdgeKind::Dotted),
        ]
    }

    /// Dotted edges as `(upper i, lower π(i))` flat-id pairs.
    pub fn dotted_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.block_len();
        (0..n).map(move |i| (i, n + self.perm.apply(i)))
    }

    /// Edge list with a `solid|dotted` column; upper chain, lower chain,
    /// then dotted edges.
    pub fn to_edge_list(&self) -> String {
        let n = self.block_len();
        let mut out = String::new();
        for base in [0, n] {
            for i in 0..n {
                let _ = writeln!(out, "{} {} solid", base + i, base + (i + 1) % n);
            }
        }
        for (u, v) in self.dotted_edges() {
            let _ = writeln!(out, "{u} {v} dotted");
        }
        out
    }
}

/// Shortest non-chain cycle length, `min over σ of L(σ)`.
///
/// For each dotted edge `(u, v)`, a BFS from `u` to `v` that never uses that
/// edge gives the shortest cycle through it.
pub fn nonchain_girth(g: &InterleaverGraph) -> usize {
    nonchain_girth_through(g, 0..g.block_len())
}

/// Shortest cycle through one of the dotted edges at `positions`.
pub fn nonchain_girth_through(g: &InterleaverGraph, positions: impl IntoIterator<Item = usize>) -> usize {
    let nv = g.vertex_count();
    let n = g.block_len();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; nv];
    let mut touched = Vec::with_capacity(nv);
    let mut queue = VecDeque::with_capacity(nv);

    for (src, dst) in positions.into_iter().map(|i| (i, n + g.perm.apply(i))) {
        for &v in &touched {
            dist[v] = usize::MAX;
        }
        touched.clear();
        queue.clear();
        dist[src] = 0;
        touched.push(src);
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            // a path of length d closes a cycle of length d + 1
            if dist[u] + 2 >= best {
                break;
            }
            for (w, _) in g.neighbors(u) {
                if u == src && w == dst {
                    continue;
                }
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    if w == dst {
                        best = best.min(dist[w] + 1);
                        break;
                    }
                    touched.push(w);
                    queue.push_back(w);
                }
            }
            if dist[dst] != usize::MAX {
                break;
            }
        }
        dist[dst] = usize::MAX;
    }
    best
}

/// Exact summary distance: the fewest solid edges on any non-chain cycle.
///
/// For each dotted edge `(u, v)`, a deque-based 0-1 shortest-path search
/// (dotted edges cost 0, solid edges cost 1) finds the cheapest `u`–`v`
/// path avoiding that edge.
pub fn summary_distance_exact(g: &InterleaverGraph) -> usize {
    summary_distance_through(g, 0..g.block_len())
}

/// Fewest solid edges on a cycle through one of the dotted edges at
/// `positions`.
pub fn summary_distance_through(g: &InterleaverGraph, positions: impl IntoIterator<Item = usize>) -> usize {
    let nv = g.vertex_count();
    let n = g.block_len();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; nv];
    let mut touched = Vec::with_capacity(nv);
    let mut deque = VecDeque::with_capacity(nv);

    for (src, dst) in positions.into_iter().map(|i| (i, n + g.perm.apply(i))) {
        for &v in &touched {
            dist[v] = usize::MAX;
        }
        touched.clear();
        deque.clear();
        dist[src] = 0;
        touched.push(src);
        deque.push_back((src, 0));
        while let Some((u, d)) = deque.pop_front() {
            if d > dist[u] {
                continue;
            }
            if u == dst || d >= best {
                break;
            }
            for (w, kind) in g.neighbors(u) {
                if u == src && w == dst {
                    continue;
                }
                let cost = match kind {
                    EdgeKind::Solid => 1,
                    EdgeKind::Dotted => 0,
                };
                let nd = d + cost;
                if nd < dist[w] {
                    if dist[w] == usize::MAX {
                        touched.push(w);
                    }
                    dist[w] = nd;
                    if cost == 0 {
                        deque.push_front((w, nd));
                    } else {
                        deque.push_back((w, nd));
                    }
                }
            }
        }
        best = best.min(dist[dst]);
    }
    best
}

/// Bounds `(⌈g/2⌉, g − 2)` on the summary distance given the non-chain
/// girth `g`.
pub fn dsum_bounds(nonchain_girth: usize) -> Result<(usize, usize)> {
    if nonchain_girth < 4 {
        return Err(Error::InvalidParameter(format!(
            "non-chain girth {nonchain_girth} is below 4; every permutation cycle has at least two dotted and two solid edges"
        )));
    }
    Ok((nonchain_girth.div_ceil(2), nonchain_girth - 2))
}

/// Length and dotted-edge count of one simple cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CycleShape {
    pub length: usize,
    pub dotted: usize,
}

impl CycleShape {
    pub fn solid(&self) -> usize {
        self.length - self.dotted
    }
}

/// Every simple cycle of the graph, each reported once per direction.
///
/// Exponential; refuses graphs above [`ORACLE_VERTEX_LIMIT`] vertices.
pub fn simple_cycles(g: &InterleaverGraph) -> Result<Vec<CycleShape>> {
    let nv = g.vertex_count();
    if nv > ORACLE_VERTEX_LIMIT {
        return Err(Error::OracleLimit {
            vertices: nv,
            limit: ORACLE_VERTEX_LIMIT,
        });
    }
    let mut out = Vec::new();
    let mut on_path = vec![false; nv];
    for start in 0..nv {
        on_path[start] = true;
        walk(g, start, start, 0, 0, &mut on_path, &mut out);
        on_path[start] = false;
    }
    Ok(out)
}

fn walk(
    g: &InterleaverGraph,
    start: usize,
    u: usize,
    len: usize,
    dotted: usize,
    on_path: &mut [bool],
    out: &mut Vec<CycleShape>,
) {
    for (w, kind) in g.neighbors(u) {
        let d = dotted + usize::from(kind == EdgeKind::Dotted);
        if w == start && len >= 2 {
            out.push(CycleShape { length: len + 1, dotted: d });
        } else if w > start && !on_path[w] {
            on_path[w] = true;
            walk(g, start, w, len + 1, d, on_path, out);
            on_path[w] = false;
        }
    }
}

/// Brute-force summary distance over all simple cycles, skipping the two
/// chains. Only for graphs of at most [`ORACLE_VERTEX_LIMIT`] vertices.
pub fn min_solid_cycle_bruteforce(g: &InterleaverGraph) -> Result<usize> {
    Ok(simple_cycles(g)?
        .into_iter()
        .filter(|c| c.dotted > 0)
        .map(|c| c.solid())
        .min()
        .expect("every dotted edge lies on a cycle"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shift(n: usize, k: usize) -> Permutation {
        Permutation::new((0..n).map(|i| (i + k) % n).collect()).unwrap()
    }

    fn heawood() -> Permutation {
        Permutation::new((0..14).map(|i| (i + [5, 9][i % 2]) % 14).collect()).unwrap()
    }

    #[test]
    fn build_examples() {
        let p = Permutation::new(vec![4, 7, 1, 5, 8, 2, 6, 0, 3]).unwrap();
        let g = build_ig(&p).unwrap();
        assert_eq!(g.vertex_count(), 18);
        assert_eq!(g.edge_count(), 27);
        let edges = g.to_edge_list();
        assert_eq!(edges.lines().count(), 27);
        assert_eq!(edges.lines().filter(|l| l.ends_with("dotted")).count(), 9);
        let mut deg = vec![0; 18];
        for l in edges.lines() {
            let f: Vec<&str> = l.split(' ').collect();
            deg[f[0].parse::<usize>().unwrap()] += 1;
            deg[f[1].parse::<usize>().unwrap()] += 1;
        }
        assert!(deg.iter().all(|&d| d == 3));
        for id in 0..18 {
            for (w, _) in g.neighbors(id) {
                assert!(g.neighbors(w).iter().any(|&(x, _)| x == id));
            }
            assert_eq!(g.id(g.vertex(id)), id);
        }

        let id = build_ig(&Permutation::identity(4).unwrap()).unwrap();
        assert!(id.dotted_edges().all(|(u, v)| v == u + 4));
        assert_eq!(build_ig(&heawood()).unwrap().vertex_count(), 28);
        assert!(build_ig(&Permutation::identity(2).unwrap()).is_err());
    }

    #[test]
    fn girth_and_dsum_examples() {
        let g = build_ig(&shift(14, 7)).unwrap();
        assert_eq!(nonchain_girth(&g), 4);
        assert_eq!(summary_distance_exact(&g), 2);
        for n in 5..10 {
            let g = build_ig(&Permutation::identity(n).unwrap()).unwrap();
            assert_eq!(nonchain_girth(&g), 4);
            assert_eq!(summary_distance_exact(&g), 2);
        }
        let g = build_ig(&heawood()).unwrap();
        assert!(nonchain_girth(&g) >= 6);
        let d = summary_distance_exact(&g);
        assert!((3..=4).contains(&d));
        assert_eq!(d, crate::permcore::summary_distance_bruteforce(&heawood(), 4).unwrap());
    }

    #[test]
    fn bounds_examples() {
        assert_eq!(dsum_bounds(6).unwrap(), (3, 4));
        assert_eq!(dsum_bounds(4).unwrap(), (2, 2));
        assert_eq!(dsum_bounds(17).unwrap(), (9, 15));
        assert!(dsum_bounds(3).is_err());
    }

    #[test]
    fn oracle_examples() {
        let g = build_ig(&Permutation::identity(5).unwrap()).unwrap();
        assert_eq!(min_solid_cycle_bruteforce(&g).unwrap(), 2);
        let g = build_ig(&shift(6, 3)).unwrap();
        assert_eq!(min_solid_cycle_bruteforce(&g).unwrap(), summary_distance_exact(&g));
        let p = Permutation::new(vec![4, 7, 1, 5, 8, 2, 6, 0, 3]).unwrap();
        let g = build_ig(&p).unwrap();
        assert_eq!(min_solid_cycle_bruteforce(&g).unwrap(), summary_distance_exact(&g));
        let big = build_ig(&Permutation::identity(14).unwrap()).unwrap();
        assert_eq!(
            min_solid_cycle_bruteforce(&big),
            Err(Error::OracleLimit { vertices: 28, limit: 26 })
        );
    }

    #[test]
    fn chains_are_the_only_dotless_cycles() {
        let p = Permutation::new(vec![4, 7, 1, 5, 8, 2, 6, 0, 3]).unwrap();
        let cycles = simple_cycles(&build_ig(&p).unwrap()).unwrap();
        let chains: Vec<_> = cycles.iter().filter(|c| c.dotted == 0).collect();
        // two chains, each found in both directions
        assert_eq!(chains.len(), 4);
        assert!(chains.iter().all(|c| c.length == 9));
        assert!(cycles
            .iter()
            .filter(|c| c.dotted > 0)
            .all(|c| c.dotted % 2 == 0 && c.dotted >= 2));
    }
}

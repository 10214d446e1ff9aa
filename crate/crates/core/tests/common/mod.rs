//! Reference implementations for the integration tests.
//!
//! Everything here works from first principles (raw permutations, adjacency
//! lists, full codebook enumeration) and shares no code with the library
//! paths it is used to check.

#![allow(dead_code)]

/// `i -> (i + c[i mod s]) mod n`.
pub fn spoke_table(n: usize, c: &[usize]) -> Vec<usize> {
    (0..n).map(|i| (i + c[i % c.len()]) % n).collect()
}

/// A spoke vector is valid when its table is a fixed-point-free involution,
/// and simple when additionally no chord joins ring neighbours.
pub fn spoke_ok(n: usize, c: &[usize], simple: bool) -> bool {
    if c.is_empty() || n % c.len() != 0 || c.iter().any(|&x| x == 0 || x >= n) {
        return false;
    }
    let t = spoke_table(n, c);
    (0..n).all(|i| {
        let j = t[i];
        j != i && t[j] == i && (!simple || (j != (i + 1) % n && (j + 1) % n != i))
    })
}

/// Every valid (or simple) spoke vector of size `s`, lexicographic.
pub fn all_spokes(n: usize, s: usize, simple: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if s == 0 || n < 2 || n % s != 0 {
        return out;
    }
    let mut c = vec![1; s];
    loop {
        if spoke_ok(n, &c, simple) {
            out.push(c.clone());
        }
        let mut pos = s;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if c[pos] + 1 < n {
                c[pos] += 1;
                break;
            }
            c[pos] = 1;
        }
    }
}

/// Adjacency lists of the ring `0..n` plus the chords in `table`.
pub fn cubic_adjacency(table: &[usize]) -> Vec<Vec<usize>> {
    let n = table.len();
    (0..n).map(|i| vec![(i + n - 1) % n, (i + 1) % n, table[i]]).collect()
}

/// Interleaver graph with edge labels: upper `i` is vertex `i`, lower `j` is
/// `n + j`; `true` marks a dotted edge.
pub fn ig_adjacency(perm: &[usize]) -> Vec<Vec<(usize, bool)>> {
    let n = perm.len();
    let mut adj = vec![Vec::new(); 2 * n];
    for base in [0, n] {
        for i in 0..n {
            let (a, b) = (base + i, base + (i + 1) % n);
            adj[a].push((b, false));
            adj[b].push((a, false));
        }
    }
    for (i, &j) in perm.iter().enumerate() {
        adj[i].push((n + j, true));
        adj[n + j].push((i, true));
    }
    adj
}

/// Visits every simple cycle once per direction, rooted at its smallest
/// vertex, calling `f(length, dotted_edges)`.
fn for_each_cycle(adj: &[Vec<(usize, bool)>], mut f: impl FnMut(usize, usize)) {
    let nv = adj.len();
    let mut on_path = vec![false; nv];
    fn walk(
        adj: &[Vec<(usize, bool)>],
        root: usize,
        u: usize,
        len: usize,
        dotted: usize,
        on_path: &mut [bool],
        f: &mut dyn FnMut(usize, usize),
    ) {
        for &(w, d) in &adj[u] {
            let dotted = dotted + usize::from(d);
            if w == root && len >= 2 {
                f(len + 1, dotted);
            } else if w > root && !on_path[w] {
                on_path[w] = true;
                walk(adj, root, w, len + 1, dotted, on_path, f);
                on_path[w] = false;
            }
        }
    }
    for root in 0..nv {
        on_path[root] = true;
        walk(adj, root, root, 0, 0, &mut on_path, &mut f);
        on_path[root] = false;
    }
}

fn unlabeled(adj: &[Vec<usize>]) -> Vec<Vec<(usize, bool)>> {
    adj.iter().map(|l| l.iter().map(|&w| (w, false)).collect()).collect()
}

/// Shortest simple cycle, by listing all of them.
pub fn girth_naive(adj: &[Vec<usize>]) -> Option<usize> {
    let mut best = None::<usize>;
    for_each_cycle(&unlabeled(adj), |len, _| best = Some(best.map_or(len, |b| b.min(len))));
    best
}

/// `(shortest cycle with a dotted edge, fewest solid edges on such a cycle)`.
pub fn ig_naive(perm: &[usize]) -> (usize, usize) {
    let (mut girth, mut solid) = (usize::MAX, usize::MAX);
    for_each_cycle(&ig_adjacency(perm), |len, dotted| {
        if dotted > 0 {
            girth = girth.min(len);
            solid = solid.min(len - dotted);
        }
    });
    (girth, solid)
}

/// Register update of the `(1, 15/13)` code written straight from the
/// polynomials: feedback `1 + D^2 + D^3`, feedforward `1 + D + D^3`.
/// Returns `(parity, next register)` with `reg = [a_{k-1}, a_{k-2}, a_{k-3}]`.
pub fn rsc_step(reg: [u8; 3], u: u8) -> (u8, [u8; 3]) {
    let a = u ^ reg[1] ^ reg[2];
    let p = a ^ reg[0] ^ reg[2];
    (p, [a, reg[0], reg[1]])
}

/// Encodes `bits`, appending three zero-forcing tail steps when asked.
/// Returns `(systematic, parity)` including the tail.
pub fn rsc_naive(bits: &[u8], terminate: bool) -> (Vec<u8>, Vec<u8>) {
    let mut reg = [0u8; 3];
    let (mut sys, mut par) = (Vec::new(), Vec::new());
    for &u in bits {
        let (p, next) = rsc_step(reg, u);
        sys.push(u);
        par.push(p);
        reg = next;
    }
    if terminate {
        for _ in 0..3 {
            let u = reg[1] ^ reg[2];
            let (p, next) = rsc_step(reg, u);
            sys.push(u);
            par.push(p);
            reg = next;
        }
        assert_eq!(reg, [0, 0, 0]);
    }
    (sys, par)
}

/// Impulse response of `(1 + D + D^3) / (1 + D^2 + D^3)` by long division
/// over GF(2).
pub fn impulse_response(len: usize) -> Vec<u8> {
    let num = [1u8, 1, 0, 1];
    let den = [1u8, 0, 1, 1];
    let mut rem: Vec<u8> = (0..len + 3).map(|i| num.get(i).copied().unwrap_or(0)).collect();
    let mut q = Vec::with_capacity(len);
    for k in 0..len {
        let bit = rem[k];
        q.push(bit);
        if bit == 1 {
            for (d, &g) in den.iter().enumerate() {
                rem[k + d] ^= g;
            }
        }
    }
    q
}

fn lse(xs: &[f64]) -> f64 {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// Bit posteriors `ln P(u_k = 0 | y) / P(u_k = 1 | y)` by summing over every
/// information word. LLRs are `ln P(0)/P(1)` so a transmitted bit `b`
/// contributes `±L/2`.
pub fn map_naive(sys: &[f64], par: &[f64], prior: &[f64], terminate: bool) -> Vec<f64> {
    let n = prior.len();
    let mut zero = vec![Vec::new(); n];
    let mut one = vec![Vec::new(); n];
    for word in 0..1u32 << n {
        let bits: Vec<u8> = (0..n).map(|k| ((word >> k) & 1) as u8).collect();
        let (s, p) = rsc_naive(&bits, terminate);
        let half = |l: f64, b: u8| if b == 0 { 0.5 * l } else { -0.5 * l };
        let mut metric = 0.0;
        for k in 0..s.len() {
            metric += half(sys[k], s[k]) + half(par[k], p[k]);
            if k < n {
                metric += half(prior[k], s[k]);
            }
        }
        for k in 0..n {
            if bits[k] == 0 {
                zero[k].push(metric);
            } else {
                one[k].push(metric);
            }
        }
    }
    (0..n).map(|k| lse(&zero[k]) - lse(&one[k])).collect()
}

/// Sample mean and unbiased standard deviation.
pub fn mean_sd(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

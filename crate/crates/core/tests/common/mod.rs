//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use geobound::complex::PairingComplex;
use geobound::graphs::SimpleGraph;

pub type Adj = Vec<Vec<bool>>;

/// Every labeled 4-regular graph on `n` vertices, by backtracking over vertex
/// pairs in lexicographic order.
pub fn labeled_regular(n: usize) -> Vec<Adj> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    let mut adj = vec![vec![false; n]; n];
    let mut deg = vec![0usize; n];
    fn rec(k: usize, pairs: &[(usize, usize)], n: usize, adj: &mut Adj, deg: &mut [usize], out: &mut Vec<Adj>) {
        if k == pairs.len() {
            if deg.iter().all(|&d| d == 4) {
                out.push(adj.clone());
            }
            return;
        }
        let (i, j) = pairs[k];
        // once the last pair of row i is decided, vertex i must be full
        let closes_row = j == n - 1;
        if deg[i] < 4 && deg[j] < 4 {
            adj[i][j] = true;
            adj[j][i] = true;
            deg[i] += 1;
            deg[j] += 1;
            if !closes_row || deg[i] == 4 {
                rec(k + 1, pairs, n, adj, deg, out);
            }
            deg[i] -= 1;
            deg[j] -= 1;
            adj[i][j] = false;
            adj[j][i] = false;
        }
        if !closes_row || deg[i] == 4 {
            rec(k + 1, pairs, n, adj, deg, out);
        }
    }
    rec(0, &pairs, n, &mut adj, &mut deg, &mut out);
    out
}

/// Number of adjacency-preserving bijections `a → b`, by plain backtracking.
pub fn count_isomorphisms(a: &Adj, b: &Adj, stop_at_first: bool) -> usize {
    let n = a.len();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(v: usize, a: &Adj, b: &Adj, map: &mut [usize], used: &mut [bool], stop: bool) -> usize {
        let n = a.len();
        if v == n {
            return 1;
        }
        let mut total = 0;
        for w in 0..n {
            if used[w] || (0..v).any(|u| a[v][u] != b[w][map[u]]) {
                continue;
            }
            map[v] = w;
            used[w] = true;
            total += rec(v + 1, a, b, map, used, stop);
            used[w] = false;
            map[v] = usize::MAX;
            if stop && total > 0 {
                return total;
            }
        }
        total
    }
    rec(0, a, b, &mut map, &mut used, stop_at_first)
}

pub fn to_adj(g: &SimpleGraph) -> Adj {
    (0..g.n()).map(|i| (0..g.n()).map(|j| g.has_edge(i, j)).collect()).collect()
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Cusps found by union-find on (cell, ideal vertex) pairs: returns the tile
/// count of each cusp and whether it meets a boundary facet.
pub fn cusp_oracle(x: &PairingComplex) -> BTreeMap<(usize, bool), usize> {
    let p = x.polytope();
    let ideal: Vec<usize> = (0..p.faces().len()).filter(|&k| p.face(k).ideal).collect();
    let m = ideal.len();
    let mut parent: Vec<usize> = (0..x.num_cells() * m).collect();
    fn find(parent: &mut [usize], mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    let mut open = vec![false; x.num_cells() * m];
    for c in 0..x.num_cells() {
        for (i, &k) in ideal.iter().enumerate() {
            for &f in &p.face(k).facets {
                match x.partner(c, f) {
                    Some(d) => {
                        let (a, b) = (find(&mut parent, c * m + i), find(&mut parent, d * m + i));
                        parent[a] = b;
                    }
                    None => open[c * m + i] = true,
                }
            }
        }
    }
    let mut tiles: BTreeMap<usize, (usize, bool)> = BTreeMap::new();
    for node in 0..x.num_cells() * m {
        let r = find(&mut parent, node);
        let e = tiles.entry(r).or_insert((0, false));
        e.0 += 1;
        e.1 |= open[node];
    }
    let mut out = BTreeMap::new();
    for (_, key) in tiles {
        *out.entry(key).or_insert(0) += 1;
    }
    out
}

/// Λ(θ) = −∫₀^θ log|2 sin t| dt for 0 < θ ≤ π/2 by composite Simpson. The
/// singular part log(2t) is integrated in closed form; log(sin t / t) is smooth.
pub fn lobachevsky_quadrature(theta: f64) -> f64 {
    let smooth = |t: f64| if t == 0.0 { 0.0 } else { (t.sin() / t).ln() };
    let n = 20_000;
    let h = theta / n as f64;
    let mut s = smooth(0.0) + smooth(theta);
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        s += w * smooth(k as f64 * h);
    }
    let singular = theta * (2.0 * theta).ln() - theta;
    -(singular + s * h / 3.0)
}

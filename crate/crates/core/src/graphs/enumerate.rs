//! Isomorph-free enumeration of connected 4-regular simple graphs and the
//! factorable-graph count table.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use super::{canonical_form, one_factorization, GraphCode, SimpleGraph};

const DEGREE: usize = 4;

/// Partial labeled graph grown in breadth-first label order: vertices are
/// completed in increasing order and a vertex seen for the first time always
/// receives the smallest unused label.
#[derive(Clone)]
struct Partial {
    n: usize,
    adj: Vec<u64>,
    deg: Vec<usize>,
    /// Smallest label not yet attached to anything.
    fresh: usize,
}

impl Partial {
    fn new(n: usize) -> Self {
        Self { n, adj: vec![0; n], deg: vec![0; n], fresh: 1 }
    }

    fn add(&mut self, a: usize, b: usize) {
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
        self.deg[a] += 1;
        self.deg[b] += 1;
        if b == self.fresh {
            self.fresh += 1;
        }
    }

    /// Every way to complete vertex `v` to full degree, as successor states.
    fn children(&self, v: usize) -> Vec<Partial> {
        if v >= self.fresh {
            // v was never reached: the graph would be disconnected
            return Vec::new();
        }
        let need = DEGREE - self.deg[v];
        let old: Vec<usize> =
            ((v + 1)..self.fresh).filter(|&w| self.deg[w] < DEGREE && self.adj[v] >> w & 1 == 0).collect();
        let mut out = Vec::new();
        // choose k old neighbours and need - k fresh ones
        for k in 0..=need.min(old.len()) {
            let fresh_needed = need - k;
            if self.fresh + fresh_needed > self.n {
                continue;
            }
            for combo in combinations(&old, k) {
                let mut s = self.clone();
                for &w in &combo {
                    s.add(v, w);
                }
                for _ in 0..fresh_needed {
                    let w = s.fresh;
                    s.add(v, w);
                }
                out.push(s);
            }
        }
        out
    }

    fn into_graph(self) -> SimpleGraph {
        let mut g = SimpleGraph::new(self.n).expect("size checked");
        for a in 0..self.n {
            for b in super::bits(self.adj[a]) {
                if a < b {
                    g.add_edge(a, b).expect("valid edge");
                }
            }
        }
        g
    }
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

fn complete(state: Partial, v: usize, found: &mut BTreeSet<GraphCode>) {
    if v == state.n {
        if state.fresh == state.n && state.deg.iter().all(|&d| d == DEGREE) {
            found.insert(canonical_form(&state.into_graph()));
        }
        return;
    }
    for child in state.children(v) {
        complete(child, v + 1, found);
    }
}

/// One canonical representative per isomorphism class of connected 4-regular
/// simple graphs on `n` vertices, sorted by code. Empty for `n < 5`.
pub fn enumerate_regular(n: usize) -> Vec<SimpleGraph> {
    if !(DEGREE + 1..=super::MAX_VERTICES).contains(&n) {
        return Vec::new();
    }
    // expand the first levels serially, then finish the subtrees in parallel
    let mut frontier = vec![(Partial::new(n), 0usize)];
    while frontier.len() < 64 && frontier.iter().all(|(_, v)| *v < n) {
        frontier = frontier.into_iter().flat_map(|(s, v)| s.children(v).into_iter().map(move |c| (c, v + 1))).collect();
        if frontier.is_empty() {
            return Vec::new();
        }
    }
    let found: BTreeSet<GraphCode> = frontier
        .into_par_iter()
        .fold(BTreeSet::new, |mut acc, (s, v)| {
            complete(s, v, &mut acc);
            acc
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    found.into_iter().map(|c| c.graph()).collect()
}

/// One row of the count table: `R(n)` connected 4-regular graphs, how many of
/// them admit a 1-factorization, and the fraction.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountRow {
    pub n: usize,
    pub regular: usize,
    pub factorable: usize,
    pub fraction: f64,
}

pub fn count_table(max_n: usize) -> Vec<CountRow> {
    (DEGREE + 1..=max_n)
        .map(|n| {
            let graphs = enumerate_regular(n);
            let factorable = graphs.par_iter().filter(|g| one_factorization(g).is_some()).count();
            let regular = graphs.len();
            let fraction = if regular == 0 { 0.0 } else { factorable as f64 / regular as f64 };
            CountRow { n, regular, factorable, fraction }
        })
        .collect()
}

//! Simple 4-regular graphs: isomorph-free enumeration, canonical forms,
//! 1-factorizations into four perfect matchings, alternating cycles and the
//! factorable-graph count table.

mod canon;
mod enumerate;
mod factor;

use std::fmt;

use serde::Serialize;

pub use canon::{canonical_form, canonical_labeling, GraphCode};
pub use enumerate::{count_table, enumerate_regular, CountRow};
pub use factor::{alternating_cycles, one_factorization, AlternatingCycle, FactorGraph};

/// Largest vertex count a [`SimpleGraph`] can hold.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("graph has {0} vertices, more than {MAX_VERTICES}")]
    TooLarge(usize),
    #[error("invalid edge {0}-{1}")]
    InvalidEdge(usize, usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid factor: {0}")]
    InvalidFactor(String),
}

/// A simple undirected graph on `0..n` stored as neighbour bitsets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<u64>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        Ok(Self { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::new(n)?;
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Self::new(n)?;
        for a in 0..n {
            for b in (a + 1)..n {
                g.add_edge(a, b)?;
            }
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds edge `{a, b}`; loops and out-of-range ends are rejected, repeated
    /// edges are ignored.
    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<(), GraphError> {
        if a == b || a >= self.n || b >= self.n {
            return Err(GraphError::InvalidEdge(a, b));
        }
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
        Ok(())
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) {
        if a < self.n && b < self.n {
            self.adj[a] &= !(1 << b);
            self.adj[b] &= !(1 << a);
        }
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && self.adj[a] >> b & 1 == 1
    }

    pub fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        bits(self.adj[v]).collect()
    }

    /// Edges `(a, b)` with `a < b` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|a| bits(self.adj[a] >> a >> 1).map(move |k| (a, a + 1 + k))).collect()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn is_regular(&self, k: usize) -> bool {
        (0..self.n).all(|v| self.degree(v) == k)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen.count_ones() as usize == self.n
    }

    /// The graph with vertex `v` renamed `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut adj = vec![0u64; self.n];
        for v in 0..self.n {
            for w in bits(self.adj[v]) {
                adj[perm[v]] |= 1 << perm[w];
            }
        }
        Self { n: self.n, adj }
    }

    /// Adjacency list text: one line `v: a b c …` per vertex.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for v in 0..self.n {
            let nb: Vec<String> = self.neighbours(v).iter().map(|w| w.to_string()).collect();
            s.push_str(&format!("{v}: {}\n", nb.join(" ")));
        }
        s
    }

    /// Parses [`SimpleGraph::to_text`] output; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let rows = parse_rows(text)?;
        let mut g = Self::new(rows.len())?;
        for (v, (line, nb)) in rows.iter().enumerate() {
            for &w in nb {
                g.add_edge(v, w).map_err(|e| GraphError::Parse { line: *line, message: e.to_string() })?;
            }
        }
        for v in 0..g.n {
            if g.degree(v) != rows[v].1.len() {
                return Err(GraphError::Parse {
                    line: rows[v].0,
                    message: format!("adjacency of {v} is not symmetric"),
                });
            }
        }
        Ok(g)
    }
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleGraph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Serialize for SimpleGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.edges().serialize(s)
    }
}

/// Rows `v: a b …` with their line numbers, checked to list vertices in order.
fn parse_rows(text: &str) -> Result<Vec<(usize, Vec<usize>)>, GraphError> {
    let mut rows = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = |message: String| GraphError::Parse { line, message };
        let (head, tail) = body.split_once(':').ok_or_else(|| err("expected `v: neighbours`".into()))?;
        let v: usize = head.trim().parse().map_err(|_| err(format!("bad vertex `{}`", head.trim())))?;
        if v != rows.len() {
            return Err(err(format!("expected vertex {}, found {v}", rows.len())));
        }
        let nb = tail
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| err(format!("bad neighbour `{t}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push((line, nb));
    }
    Ok(rows)
}

/// Indices of the set bits of `x`, ascending.
pub(crate) fn bits(mut x: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            None
        } else {
            let k = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(k)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_roundtrip() {
        let g = SimpleGraph::complete(5).unwrap();
        assert_eq!(SimpleGraph::parse(&g.to_text()).unwrap(), g);
        assert!(g.is_regular(4) && g.is_connected());
        assert_eq!(g.num_edges(), 10);
    }

    #[test]
    fn asymmetric_text_is_rejected() {
        assert!(SimpleGraph::parse("0: 1\n1:\n").is_err());
    }
}

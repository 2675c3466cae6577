//! 4-factors: 4-regular graphs with a proper 4-edge-coloring, whose color
//! classes are perfect matchings.

use serde::Serialize;

use super::{GraphError, SimpleGraph};

/// A 4-regular simple graph with a proper edge coloring in colors `0..4`
/// (printed as `1..4`). `mate[v][c]` is the neighbour of `v` along color `c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorGraph {
    pub graph: SimpleGraph,
    pub mate: Vec<[usize; 4]>,
}

impl FactorGraph {
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Builds and validates a factor from its mate table.
    pub fn from_mates(mate: Vec<[usize; 4]>) -> Result<Self, GraphError> {
        let n = mate.len();
        let mut graph = SimpleGraph::new(n)?;
        for (v, m) in mate.iter().enumerate() {
            for &w in m {
                if w >= n || w == v {
                    return Err(GraphError::InvalidEdge(v, w));
                }
                graph.add_edge(v, w)?;
            }
        }
        let f = FactorGraph { graph, mate };
        f.validate()?;
        Ok(f)
    }

    /// The same factor with vertex `v` renamed `perm[v]`; colors are kept.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, GraphError> {
        let mut mate = vec![[0; 4]; self.n()];
        for (v, m) in self.mate.iter().enumerate() {
            mate[perm[v]] = m.map(|w| perm[w]);
        }
        Self::from_mates(mate)
    }

    /// Color of edge `{a, b}`, if it is an edge.
    pub fn color(&self, a: usize, b: usize) -> Option<usize> {
        self.mate.get(a)?.iter().position(|&w| w == b)
    }

    /// Edges `(a, b, color)` with `a < b`.
    pub fn colored_edges(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (a, m) in self.mate.iter().enumerate() {
            for (c, &b) in m.iter().enumerate() {
                if a < b {
                    out.push((a, b, c));
                }
            }
        }
        out
    }

    /// Checks simplicity, 4-regularity, connectivity and that each color
    /// class is a perfect matching.
    pub fn validate(&self) -> Result<(), GraphError> {
        let n = self.n();
        if n % 2 == 1 {
            return Err(GraphError::InvalidFactor(format!("odd vertex count {n}")));
        }
        if !self.graph.is_regular(4) {
            return Err(GraphError::InvalidFactor("not simple 4-regular".into()));
        }
        if !self.graph.is_connected() {
            return Err(GraphError::InvalidFactor("not connected".into()));
        }
        for (v, m) in self.mate.iter().enumerate() {
            for (c, &w) in m.iter().enumerate() {
                if self.mate[w][c] != v {
                    return Err(GraphError::InvalidFactor(format!("color {} is not a matching at {v}", c + 1)));
                }
            }
        }
        Ok(())
    }

    /// Adjacency text with neighbours listed in color order `1..4`.
    pub fn to_text(&self) -> String {
        let mut s = String::from("# factor: neighbours in color order 1 2 3 4\n");
        for (v, m) in self.mate.iter().enumerate() {
            s.push_str(&format!("{v}: {} {} {} {}\n", m[0], m[1], m[2], m[3]));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let rows = super::parse_rows(text)?;
        let mate = rows
            .iter()
            .map(|(line, nb)| {
                <[usize; 4]>::try_from(nb.as_slice())
                    .map_err(|_| GraphError::Parse { line: *line, message: "expected four neighbours".into() })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_mates(mate)
    }
}

/// A proper 4-edge-coloring found by backtracking over edges in lexicographic
/// order with the lowest free color first, or `None` when none exists. The
/// four edges at vertex 0 take colors `0..4` in order.
pub fn one_factorization(g: &SimpleGraph) -> Option<FactorGraph> {
    let n = g.n();
    if n % 2 == 1 || !g.is_regular(4) || !g.is_connected() {
        return None;
    }
    let edges = g.edges();
    let mut used = vec![0u8; n];
    let mut color = vec![0usize; edges.len()];
    fn rec(k: usize, edges: &[(usize, usize)], used: &mut [u8], color: &mut [usize]) -> bool {
        let Some(&(a, b)) = edges.get(k) else {
            return true;
        };
        let free = !(used[a] | used[b]) & 0b1111;
        let choices: u8 = if a == 0 { free & (1 << k) } else { free };
        for c in 0..4 {
            if choices >> c & 1 == 0 {
                continue;
            }
            used[a] |= 1 << c;
            used[b] |= 1 << c;
            color[k] = c;
            if rec(k + 1, edges, used, color) {
                return true;
            }
            used[a] &= !(1 << c);
            used[b] &= !(1 << c);
        }
        false
    }
    if !rec(0, &edges, &mut used, &mut color) {
        return None;
    }
    let mut mate = vec![[usize::MAX; 4]; n];
    for (&(a, b), &c) in edges.iter().zip(&color) {
        mate[a][c] = b;
        mate[b][c] = a;
    }
    Some(FactorGraph { graph: g.clone(), mate })
}

/// A cycle of the union of two color classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlternatingCycle {
    /// Colors printed `1..4`, `first < second`.
    pub colors: (usize, usize),
    pub length: usize,
    pub vertices: Vec<usize>,
}

/// Decomposes the union of every pair of color classes into cycles. Each
/// length must be even and at least 4.
pub fn alternating_cycles(f: &FactorGraph) -> Result<Vec<AlternatingCycle>, GraphError> {
    let n = f.n();
    let mut out = Vec::new();
    for i in 0..4 {
        for j in (i + 1)..4 {
            let mut seen = vec![false; n];
            for s in 0..n {
                if seen[s] {
                    continue;
                }
                let mut vertices = Vec::new();
                let mut v = s;
                let mut step = 0;
                loop {
                    if seen[v] {
                        break;
                    }
                    seen[v] = true;
                    vertices.push(v);
                    v = f.mate[v][if step % 2 == 0 { i } else { j }];
                    step += 1;
                }
                if v != s || vertices.len() < 4 || vertices.len() % 2 == 1 {
                    return Err(GraphError::InvalidFactor(format!(
                        "colors {} and {} give a cycle of length {} through {s}",
                        i + 1,
                        j + 1,
                        vertices.len()
                    )));
                }
                out.push(AlternatingCycle { colors: (i + 1, j + 1), length: vertices.len(), vertices });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k5_has_no_factorization() {
        assert!(one_factorization(&SimpleGraph::complete(5).unwrap()).is_none());
    }

    #[test]
    fn octahedron_graph_factorizes() {
        let mut g = SimpleGraph::complete(6).unwrap();
        for (a, b) in [(0, 1), (2, 3), (4, 5)] {
            g.remove_edge(a, b);
        }
        let f = one_factorization(&g).expect("K_{2,2,2} is class one");
        f.validate().unwrap();
        let cycles = alternating_cycles(&f).unwrap();
        for pair in cycles.chunk_by(|a, b| a.colors == b.colors) {
            assert_eq!(pair.iter().map(|c| c.length).sum::<usize>(), 6);
        }
        assert_eq!(FactorGraph::parse(&f.to_text()).unwrap(), f);
    }
}

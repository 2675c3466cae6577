//! Canonical labeling by equitable refinement and individualization.

use std::fmt;

use serde::Serialize;

use super::{bits, SimpleGraph};

/// Relabeling-invariant code: the adjacency rows of the canonically labeled
/// graph. Equal codes hold exactly for isomorphic graphs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraphCode {
    pub n: usize,
    pub rows: Vec<u64>,
}

impl GraphCode {
    /// The graph with the canonical labeling.
    pub fn graph(&self) -> SimpleGraph {
        let mut g = SimpleGraph::new(self.n).expect("code of a valid graph");
        for (a, &r) in self.rows.iter().enumerate() {
            for b in bits(r) {
                if a < b {
                    g.add_edge(a, b).expect("valid edge");
                }
            }
        }
        g
    }
}

/// `n` followed by the upper-triangle adjacency bits, packed in hex.
impl fmt::Display for GraphCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut bitvec = Vec::new();
        for a in 0..self.n {
            for b in (a + 1)..self.n {
                bitvec.push(self.rows[a] >> b & 1 == 1);
            }
        }
        write!(f, "{}-", self.n)?;
        if bitvec.is_empty() {
            return f.write_str("0");
        }
        for chunk in bitvec.chunks(4) {
            let nibble = chunk.iter().enumerate().fold(0u8, |acc, (i, &b)| acc | (u8::from(b) << (3 - i)));
            write!(f, "{nibble:x}")?;
        }
        Ok(())
    }
}

impl Serialize for GraphCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

type Partition = Vec<Vec<usize>>;

/// Refines an ordered partition until every cell has a constant neighbour
/// count into every other cell. Cells split in place, ordered by count.
fn refine(g: &SimpleGraph, mut p: Partition) -> Partition {
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < p.len() {
            let mask: u64 = p[s].iter().fold(0, |m, &v| m | 1 << v);
            let mut next: Partition = Vec::with_capacity(p.len());
            for cell in &p {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(u32, usize)> = cell.iter().map(|&v| ((g.row(v) & mask).count_ones(), v)).collect();
                keyed.sort_unstable();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|x| x.1).collect());
                        start = i;
                    }
                }
            }
            if next.len() != p.len() {
                changed = true;
                p = next;
                s = 0;
            } else {
                s += 1;
            }
        }
        if !changed {
            return p;
        }
    }
}

fn certificate(g: &SimpleGraph, p: &Partition) -> (Vec<u64>, Vec<usize>) {
    let mut perm = vec![0usize; g.n()];
    for (k, cell) in p.iter().enumerate() {
        perm[cell[0]] = k;
    }
    (g.relabel(&perm).adj, perm)
}

fn search(g: &SimpleGraph, p: Partition, best: &mut Option<(Vec<u64>, Vec<usize>)>) {
    let target = p.iter().enumerate().filter(|(_, c)| c.len() > 1).min_by_key(|(k, c)| (c.len(), *k)).map(|(k, _)| k);
    let Some(k) = target else {
        let cand = certificate(g, &p);
        if best.as_ref().is_none_or(|b| cand.0 < b.0) {
            *best = Some(cand);
        }
        return;
    };
    for &v in &p[k] {
        let mut q = p.clone();
        let rest: Vec<usize> = q[k].iter().copied().filter(|&w| w != v).collect();
        q[k] = vec![v];
        q.insert(k + 1, rest);
        search(g, refine(g, q), best);
    }
}

/// A canonical labeling: `perm[v]` is the canonical name of vertex `v`.
pub fn canonical_labeling(g: &SimpleGraph) -> Vec<usize> {
    if g.n() == 0 {
        return Vec::new();
    }
    let start = refine(g, vec![(0..g.n()).collect()]);
    let mut best = None;
    search(g, start, &mut best);
    best.expect("at least one leaf").1
}

pub fn canonical_form(g: &SimpleGraph) -> GraphCode {
    let perm = canonical_labeling(g);
    GraphCode { n: g.n(), rows: g.relabel(&perm).adj }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> SimpleGraph {
        SimpleGraph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn relabeling_invariance() {
        let g = SimpleGraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5)]).unwrap();
        let h = g.relabel(&[5, 3, 1, 0, 2, 4]);
        assert_eq!(canonical_form(&g), canonical_form(&h));
        assert_eq!(canonical_form(&g).graph(), canonical_form(&h).graph());
    }

    #[test]
    fn distinguishes_regular_graphs() {
        let two_triangles = SimpleGraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_ne!(canonical_form(&cycle(6)), canonical_form(&two_triangles));
    }

    #[test]
    fn display_packs_upper_triangle() {
        assert_eq!(canonical_form(&SimpleGraph::complete(3).unwrap()).to_string(), "3-e");
    }
}

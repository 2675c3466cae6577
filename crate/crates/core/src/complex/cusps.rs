//! Cusp cross-sections of 3-dimensional complexes with quadrilateral vertex links.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::pairing::PairingComplex;
use super::ComplexError;

/// Shape of a tiled cusp section.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CuspShape {
    /// Closed torus tiled as a 2 × h grid.
    Torus {
        h: usize,
    },
    /// Annulus: closed direction of length 2, open direction of length h.
    Annulus {
        h: usize,
    },
    Other {
        tiles: usize,
    },
}

impl fmt::Display for CuspShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CuspShape::Torus { h } => write!(f, "T2x{h}"),
            CuspShape::Annulus { h } => write!(f, "A2x{h}"),
            CuspShape::Other { tiles } => write!(f, "other({tiles})"),
        }
    }
}

/// A line of tiles in one direction: its length and whether it closes up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TileLine {
    pub length: usize,
    pub closed: bool,
}

/// One cusp section: tiles `(cell, ideal vertex face)`, the lines of the two
/// directions, the derived shape and the shortest closed line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CuspSection {
    pub tiles: Vec<(usize, usize)>,
    pub lines: [Vec<TileLine>; 2],
    pub shape: CuspShape,
    pub systole: Option<usize>,
}

/// The facets at an ideal vertex split into two opposite pairs; each pair
/// gives one direction of the square link.
fn opposite_pairs(x: &PairingComplex, facets: &[usize]) -> Result<[[usize; 2]; 2], ComplexError> {
    let p = x.polytope();
    if facets.len() != 4 {
        return Err(ComplexError::Mismatch(format!("ideal vertex link has {} sides", facets.len())));
    }
    let a = facets[0];
    let opp: Vec<usize> = facets[1..].iter().copied().filter(|&g| !p.adjacent(a, g)).collect();
    if opp.len() != 1 {
        return Err(ComplexError::Mismatch("ideal vertex link is not a quadrilateral".into()));
    }
    let rest: Vec<usize> = facets[1..].iter().copied().filter(|&g| g != opp[0]).collect();
    if p.adjacent(rest[0], rest[1]) {
        return Err(ComplexError::Mismatch("ideal vertex link is not a quadrilateral".into()));
    }
    Ok([[a, opp[0]], [rest[0], rest[1]]])
}

/// Cusp sections of a 3-dimensional complex whose ideal vertices have
/// quadrilateral links.
pub fn cusp_links(x: &PairingComplex) -> Result<Vec<CuspSection>, ComplexError> {
    let p = x.polytope();
    if p.dim() != 3 {
        return Err(ComplexError::Mismatch("cusp sections need a 3-dimensional cell type".into()));
    }
    let verts: Vec<(usize, [[usize; 2]; 2])> = p
        .faces_of_dim(0)
        .filter(|(_, f)| f.ideal)
        .map(|(k, f)| opposite_pairs(x, &f.facets).map(|d| (k, d)))
        .collect::<Result<_, _>>()?;
    let nv = verts.len();
    let tile = |c: usize, v: usize| c * nv + v;
    let total = x.num_cells() * nv;
    // neighbours[dir][t] = tiles across the two sides of direction dir
    let mut nbr = vec![vec![[None, None]; total]; 2];
    for c in 0..x.num_cells() {
        for (v, (_, dirs)) in verts.iter().enumerate() {
            for d in 0..2 {
                for s in 0..2 {
                    nbr[d][tile(c, v)][s] = x.partner(c, dirs[d][s]).map(|e| tile(e, v));
                }
            }
        }
    }
    let mut section_of = vec![usize::MAX; total];
    let mut sections: Vec<Vec<usize>> = Vec::new();
    for t in 0..total {
        if section_of[t] != usize::MAX {
            continue;
        }
        let id = sections.len();
        section_of[t] = id;
        let mut members = vec![t];
        let mut stack = vec![t];
        while let Some(u) = stack.pop() {
            for d in 0..2 {
                for w in nbr[d][u].iter().flatten() {
                    if section_of[*w] == usize::MAX {
                        section_of[*w] = id;
                        members.push(*w);
                        stack.push(*w);
                    }
                }
            }
        }
        members.sort_unstable();
        sections.push(members);
    }
    let mut out = Vec::with_capacity(sections.len());
    for members in sections {
        let mut lines: [Vec<TileLine>; 2] = [Vec::new(), Vec::new()];
        for d in 0..2 {
            let mut line_of: BTreeMap<usize, usize> = BTreeMap::new();
            for &t in &members {
                if line_of.contains_key(&t) {
                    continue;
                }
                let id = lines[d].len();
                line_of.insert(t, id);
                let mut stack = vec![t];
                let mut length = 0;
                let mut closed = true;
                while let Some(u) = stack.pop() {
                    length += 1;
                    for w in nbr[d][u] {
                        match w {
                            None => closed = false,
                            Some(w) => {
                                if let std::collections::btree_map::Entry::Vacant(e) = line_of.entry(w) {
                                    e.insert(id);
                                    stack.push(w);
                                }
                            }
                        }
                    }
                }
                lines[d].push(TileLine { length, closed });
            }
        }
        let tiles = members.len();
        let shape = classify(&lines, tiles);
        let systole = lines.iter().flatten().filter(|l| l.closed).map(|l| l.length).min();
        out.push(CuspSection {
            tiles: members.iter().map(|&t| (t / nv, verts[t % nv].0)).collect(),
            lines,
            shape,
            systole,
        });
    }
    Ok(out)
}

fn classify(lines: &[Vec<TileLine>; 2], tiles: usize) -> CuspShape {
    let all = |d: usize, closed: bool, len: usize| lines[d].iter().all(|l| l.closed == closed && l.length == len);
    if tiles.is_multiple_of(2) {
        let h = tiles / 2;
        for (a, b) in [(0, 1), (1, 0)] {
            if all(a, true, 2) && all(b, true, h) {
                return CuspShape::Torus { h };
            }
            if all(a, true, 2) && all(b, false, h) {
                return CuspShape::Annulus { h };
            }
        }
    }
    CuspShape::Other { tiles }
}

/// Counts of sections by shape.
pub fn cusp_census(sections: &[CuspSection]) -> BTreeMap<CuspShape, usize> {
    let mut m = BTreeMap::new();
    for s in sections {
        *m.entry(s.shape.clone()).or_insert(0) += 1;
    }
    m
}

/// Census rendered as `shape:count` pairs, e.g. `T2x4:6,A2x2:12`.
pub fn census_string(census: &BTreeMap<CuspShape, usize>) -> String {
    census.iter().map(|(s, n)| format!("{s}:{n}")).collect::<Vec<_>>().join(",")
}

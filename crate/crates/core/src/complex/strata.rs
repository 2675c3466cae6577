//! Boundary strata, Euler characteristics and orientations of pairing complexes.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::pairing::{CellType, PairingComplex};
use super::ComplexError;

/// Where the boundary continues from facet slot `(c, a)` across its ridge
/// with facet `b`: walking around the ridge through glued cells until the
/// first unpaired slot. The end slot has facet `a` when the boundary is smooth
/// there and facet `b` at a corner.
pub fn walk_ridge(x: &PairingComplex, c: usize, a: usize, b: usize) -> (usize, usize) {
    let (mut cell, mut cross, mut other) = (c, b, a);
    loop {
        match x.partner(cell, cross) {
            None => return (cell, cross),
            Some(next) => {
                cell = next;
                std::mem::swap(&mut cross, &mut other);
            }
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Connected boundary components, joined across smooth boundary ridges only.
/// Each component lists its facet slots in lexicographic order; components are
/// ordered by their first slot.
pub fn boundary_components(x: &PairingComplex) -> Vec<Vec<(usize, usize)>> {
    let slots = x.boundary_facets();
    let pos: BTreeMap<(usize, usize), usize> = slots.iter().enumerate().map(|(k, &s)| (s, k)).collect();
    let mut uf = UnionFind::new(slots.len());
    let p = x.polytope();
    for (k, &(c, a)) in slots.iter().enumerate() {
        for b in p.neighbours(a) {
            let end = walk_ridge(x, c, a, b);
            if end.1 == a {
                uf.union(k, pos[&end]);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (k, &s) in slots.iter().enumerate() {
        let r = uf.find(k);
        groups.entry(r).or_default().push(s);
    }
    groups.into_values().collect()
}

/// True iff some boundary ridge is a corner (the boundary bends between two
/// facet classes there).
pub fn has_corners(x: &PairingComplex) -> bool {
    let p = x.polytope();
    x.boundary_facets().into_iter().any(|(c, a)| p.neighbours(a).into_iter().any(|b| walk_ridge(x, c, a, b).1 != a))
}

/// A boundary component made of copies of one facet `f` of the cell type, as a
/// complex of one dimension less. Returns the complex, the cell of `x` under
/// each new cell, and the map from the new cell type's facets to `x`'s facets.
pub fn facet_complex(
    x: &PairingComplex,
    component: &[(usize, usize)],
) -> Result<(PairingComplex, Vec<usize>, Vec<usize>), ComplexError> {
    let f = component.first().ok_or_else(|| ComplexError::Mismatch("empty component".into()))?.1;
    if component.iter().any(|s| s.1 != f) {
        return Err(ComplexError::Mismatch("component mixes facet classes".into()));
    }
    let (poly, nbrs) = x.polytope().facet_polytope(f).map_err(|e| ComplexError::Mismatch(e.to_string()))?;
    let cells: Vec<usize> = component.iter().map(|s| s.0).collect();
    let index: BTreeMap<usize, usize> = cells.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let mut out = PairingComplex::new(CellType::new(poly), cells.len());
    for (k, &c) in cells.iter().enumerate() {
        for (g_local, &g) in nbrs.iter().enumerate() {
            let (d, facet) = walk_ridge(x, c, f, g);
            if facet != f {
                continue;
            }
            let j = *index.get(&d).ok_or_else(|| ComplexError::Mismatch("walk left the component".into()))?;
            if j == k {
                return Err(ComplexError::FixedPoint { cell: k, facet: g_local });
            }
            if k < j {
                out.pair(k, j, g_local)?;
            }
        }
    }
    Ok((out, cells, nbrs))
}

/// Same as [`facet_complex`] with the result expressed over `target`, a cell
/// type isomorphic to the facet polytope via `iso` (facet of the facet
/// polytope ↦ facet of `target`).
pub fn facet_complex_over(
    x: &PairingComplex,
    component: &[(usize, usize)],
    target: &Arc<CellType>,
    iso: &[usize],
) -> Result<PairingComplex, ComplexError> {
    let (fc, _, _) = facet_complex(x, component)?;
    fc.transport(target.clone(), iso)
}

/// Euler characteristics of a complex and of its boundary, counting
/// identified finite faces with the open cells and excluding ideal vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EulerData {
    pub total: i64,
    pub boundary: i64,
    /// Identified faces by dimension (ideal vertices excluded), cells last.
    pub counts: [usize; 5],
}

/// Classes of `(cell, finite proper face)` under the gluing, as a union-find
/// index per pair, with face indices of the cell type.
pub struct FaceClasses {
    pub class_of: Vec<usize>,
    pub faces: Vec<usize>,
    pub num_classes: usize,
}

impl FaceClasses {
    pub fn new(x: &PairingComplex) -> Self {
        let p = x.polytope();
        let faces: Vec<usize> = p.faces().iter().enumerate().filter(|(_, f)| !f.ideal).map(|(k, _)| k).collect();
        let local: BTreeMap<usize, usize> = faces.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let m = faces.len();
        let mut uf = UnionFind::new(x.num_cells() * m);
        for c in 0..x.num_cells() {
            for (i, &k) in faces.iter().enumerate() {
                for &f in &p.face(k).facets {
                    if let Some(d) = x.partner(c, f) {
                        uf.union(c * m + i, d * m + local[&k]);
                    }
                }
            }
        }
        let mut renumber = BTreeMap::new();
        let class_of: Vec<usize> = (0..x.num_cells() * m)
            .map(|i| {
                let r = uf.find(i);
                let next = renumber.len();
                *renumber.entry(r).or_insert(next)
            })
            .collect();
        FaceClasses { class_of, faces, num_classes: renumber.len() }
    }

    pub fn class(&self, cell: usize, local_face: usize) -> usize {
        self.class_of[cell * self.faces.len() + local_face]
    }
}

pub fn euler_characteristic(x: &PairingComplex) -> EulerData {
    let p = x.polytope();
    let classes = FaceClasses::new(x);
    let m = classes.faces.len();
    let mut dim_of = vec![0usize; classes.num_classes];
    let mut on_boundary = vec![false; classes.num_classes];
    for c in 0..x.num_cells() {
        for (i, &k) in classes.faces.iter().enumerate() {
            let face = p.face(k);
            let cl = classes.class_of[c * m + i];
            dim_of[cl] = face.dim;
            if face.facets.iter().any(|&f| x.partner(c, f).is_none()) {
                on_boundary[cl] = true;
            }
        }
    }
    let sign = |d: usize| if d.is_multiple_of(2) { 1i64 } else { -1 };
    let mut counts = [0usize; 5];
    let mut total = 0i64;
    let mut boundary = 0i64;
    for cl in 0..classes.num_classes {
        counts[dim_of[cl].min(4)] += 1;
        total += sign(dim_of[cl]);
        if on_boundary[cl] {
            boundary += sign(dim_of[cl]);
        }
    }
    total += sign(p.dim()) * x.num_cells() as i64;
    counts[p.dim().min(4)] += x.num_cells();
    EulerData { total, boundary, counts }
}

/// Orientation data: cell signs that flip across every gluing, or an odd cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orientation {
    pub orientable: bool,
    pub signs: Vec<i8>,
    pub odd_cycle: Option<Vec<usize>>,
}

/// Identity gluings of mirror copies reverse orientation, so the complex is
/// orientable iff its dual gluing graph is bipartite.
pub fn orientability(x: &PairingComplex) -> Orientation {
    let n = x.num_cells();
    let mut sign = vec![0i8; n];
    let mut parent = vec![usize::MAX; n];
    for s in 0..n {
        if sign[s] != 0 {
            continue;
        }
        sign[s] = 1;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(c) = queue.pop_front() {
            for f in 0..x.num_facets() {
                let Some(d) = x.partner(c, f) else { continue };
                if sign[d] == 0 {
                    sign[d] = -sign[c];
                    parent[d] = c;
                    queue.push_back(d);
                } else if sign[d] == sign[c] {
                    let cycle = odd_cycle(c, d, &parent);
                    return Orientation { orientable: false, signs: Vec::new(), odd_cycle: Some(cycle) };
                }
            }
        }
    }
    Orientation { orientable: true, signs: sign, odd_cycle: None }
}

fn odd_cycle(a: usize, b: usize, parent: &[usize]) -> Vec<usize> {
    let path = |mut x: usize| {
        let mut p = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            p.push(x);
        }
        p
    };
    let (pa, pb) = (path(a), path(b));
    let lca = *pa.iter().find(|v| pb.contains(v)).expect("same tree");
    let mut cycle: Vec<usize> = pa.iter().copied().take_while(|&v| v != lca).collect();
    cycle.push(lca);
    let mut back: Vec<usize> = pb.iter().copied().take_while(|&v| v != lca).collect();
    back.reverse();
    cycle.extend(back);
    cycle
}

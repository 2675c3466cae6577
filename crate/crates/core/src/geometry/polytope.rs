//! Combinatorial polytopes: face lattices keyed by the facets containing each
//! face, with ideal-vertex flags and per-ridge dihedral angles.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use super::GeometryError;
use crate::coxeter::{is_parabolic_of_rank, is_spherical, CoxeterDiagram};

/// A face, identified by the sorted list of facets that contain it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Face {
    pub dim: usize,
    pub facets: Vec<usize>,
    pub ideal: bool,
}

/// A polytope given by its face lattice. Faces `0..num_facets()` are the facets
/// themselves, in facet order; the rest follow by decreasing dimension.
/// Ridge angles are stored as `m` for a dihedral angle `π/m`; `0` marks an
/// angle that is not recorded.
#[derive(Clone, Debug, Serialize)]
pub struct Polytope {
    pub name: String,
    dim: usize,
    facet_labels: Vec<String>,
    facet_tags: Vec<String>,
    faces: Vec<Face>,
    #[serde(skip)]
    index: HashMap<Vec<usize>, usize>,
    #[serde(serialize_with = "serialize_angles")]
    ridge_angles: BTreeMap<(usize, usize), u32>,
}

fn serialize_angles<S: serde::Serializer>(angles: &BTreeMap<(usize, usize), u32>, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(angles.len()))?;
    for (&(a, b), &m) in angles {
        seq.serialize_element(&[a, b, m as usize])?;
    }
    seq.end()
}

fn polyhedron_name(v: usize, e: usize, f: usize) -> String {
    match (v, e, f) {
        (4, 6, 4) => "tetrahedron".into(),
        (6, 12, 8) => "octahedron".into(),
        (8, 12, 6) => "cube".into(),
        (6, 9, 5) => "triangular-prism".into(),
        (5, 8, 5) => "square-pyramid".into(),
        _ => format!("polyhedron(v={v},e={e},f={f})"),
    }
}

fn polygon_name(k: usize) -> String {
    match k {
        3 => "triangle".into(),
        4 => "quadrilateral".into(),
        5 => "pentagon".into(),
        6 => "hexagon".into(),
        _ => format!("{k}-gon"),
    }
}

impl Polytope {
    /// Builds a polytope from its proper faces. Facets are the faces whose facet
    /// list is a single index; they must be exactly `0..num_facets`. Missing
    /// ridge angles default to `π/2`.
    pub fn from_faces(
        name: &str,
        dim: usize,
        facet_labels: Vec<String>,
        faces: Vec<Face>,
        angles: BTreeMap<(usize, usize), u32>,
    ) -> Result<Self, GeometryError> {
        let nf = facet_labels.len();
        let mut facets: Vec<Option<Face>> = vec![None; nf];
        let mut rest: Vec<Face> = Vec::new();
        let mut seen = BTreeSet::new();
        for mut f in faces {
            f.facets.sort_unstable();
            f.facets.dedup();
            if f.facets.iter().any(|&i| i >= nf) {
                return Err(GeometryError::InvalidLattice(format!("facet index out of range in {:?}", f.facets)));
            }
            if !seen.insert(f.facets.clone()) {
                return Err(GeometryError::InvalidLattice(format!("duplicate face {:?}", f.facets)));
            }
            if f.facets.len() == 1 {
                if f.dim + 1 != dim || f.ideal {
                    return Err(GeometryError::InvalidLattice(format!(
                        "facet {} has dimension {}",
                        f.facets[0], f.dim
                    )));
                }
                let i = f.facets[0];
                facets[i] = Some(f);
            } else {
                rest.push(f);
            }
        }
        let mut all: Vec<Face> = Vec::with_capacity(nf + rest.len());
        for (i, f) in facets.into_iter().enumerate() {
            all.push(f.ok_or_else(|| GeometryError::InvalidLattice(format!("facet {i} missing")))?);
        }
        rest.sort_by(|a, b| b.dim.cmp(&a.dim).then_with(|| a.facets.cmp(&b.facets)));
        all.extend(rest);
        let index = all.iter().enumerate().map(|(k, f)| (f.facets.clone(), k)).collect();
        let mut p = Polytope {
            name: name.to_string(),
            dim,
            facet_labels,
            facet_tags: Vec::new(),
            faces: all,
            index,
            ridge_angles: BTreeMap::new(),
        };
        for f in p.faces.iter().filter(|f| f.dim + 2 == dim) {
            if f.facets.len() != 2 {
                return Err(GeometryError::InvalidLattice(format!(
                    "ridge {:?} does not lie in exactly two facets",
                    f.facets
                )));
            }
            let key = (f.facets[0], f.facets[1]);
            let m = angles.get(&key).copied().unwrap_or(2);
            p.ridge_angles.insert(key, m);
        }
        p.facet_tags = (0..nf).map(|i| p.shape_of_facet(i)).collect();
        Ok(p)
    }

    /// Builds a polytope from the vertex sets of its facets; every other face is
    /// a non-empty intersection of facets. Vertex `v` is ideal iff `ideal[v]`.
    pub fn from_vertex_sets(
        name: &str,
        dim: usize,
        facet_labels: Vec<String>,
        facet_vertices: &[Vec<usize>],
        ideal: &[bool],
        angles: BTreeMap<(usize, usize), u32>,
    ) -> Result<Self, GeometryError> {
        let sets: Vec<BTreeSet<usize>> = facet_vertices.iter().map(|v| v.iter().copied().collect()).collect();
        let mut found: BTreeSet<BTreeSet<usize>> = sets.iter().cloned().collect();
        let mut frontier: Vec<BTreeSet<usize>> = sets.clone();
        while let Some(s) = frontier.pop() {
            for t in &sets {
                let i: BTreeSet<usize> = s.intersection(t).copied().collect();
                if !i.is_empty() && found.insert(i.clone()) {
                    frontier.push(i);
                }
            }
        }
        let mut by_size: Vec<BTreeSet<usize>> = found.into_iter().collect();
        by_size.sort_by_key(|s| s.len());
        let mut dims: Vec<usize> = Vec::with_capacity(by_size.len());
        for (k, s) in by_size.iter().enumerate() {
            let d = (0..k)
                .filter(|&j| by_size[j].len() < s.len() && by_size[j].is_subset(s))
                .map(|j| dims[j] + 1)
                .max()
                .unwrap_or(0);
            dims.push(d);
        }
        let faces = by_size
            .iter()
            .zip(&dims)
            .map(|(s, &d)| Face {
                dim: d,
                facets: (0..sets.len()).filter(|&f| s.is_subset(&sets[f])).collect(),
                ideal: d == 0 && s.len() == 1 && ideal[*s.iter().next().expect("non-empty")],
            })
            .collect();
        Self::from_faces(name, dim, facet_labels, faces, angles)
    }

    /// The Coxeter polytope of `d` in dimension `n`: faces are the spherical
    /// subdiagrams, ideal vertices the parabolic subdiagrams of rank `n - 1`.
    pub fn from_coxeter(name: &str, d: &CoxeterDiagram, n: usize) -> Result<Self, GeometryError> {
        let k = d.len();
        if k >= usize::BITS as usize - 1 {
            return Err(GeometryError::InvalidLattice("diagram too large".into()));
        }
        let mut faces = Vec::new();
        let mut angles = BTreeMap::new();
        for mask in 1usize..(1 << k) {
            let subset: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
            if subset.len() <= n && is_spherical(d, &subset) {
                faces.push(Face { dim: n - subset.len(), facets: subset.clone(), ideal: false });
                if subset.len() == 2 {
                    let m = match d.weight(subset[0], subset[1]) {
                        None => 2,
                        Some(crate::coxeter::EdgeWeight::Label(m)) => *m,
                        Some(_) => 0,
                    };
                    angles.insert((subset[0], subset[1]), m);
                }
            } else if n >= 1 && subset.len() >= n && is_parabolic_of_rank(d, &subset, n - 1) {
                faces.push(Face { dim: 0, facets: subset, ideal: true });
            }
        }
        Self::from_faces(name, n, d.nodes().to_vec(), faces, angles)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_facets(&self) -> usize {
        self.facet_labels.len()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, k: usize) -> &Face {
        &self.faces[k]
    }

    pub fn facet_labels(&self) -> &[String] {
        &self.facet_labels
    }

    pub fn facet_tags(&self) -> &[String] {
        &self.facet_tags
    }

    pub fn set_facet_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.num_facets());
        self.facet_labels = labels;
    }

    /// Index of the face with exactly this (unsorted) facet set.
    pub fn face_index(&self, facets: &[usize]) -> Option<usize> {
        let mut key = facets.to_vec();
        key.sort_unstable();
        self.index.get(&key).copied()
    }

    pub fn faces_of_dim(&self, d: usize) -> impl Iterator<Item = (usize, &Face)> {
        self.faces.iter().enumerate().filter(move |(_, f)| f.dim == d)
    }

    pub fn count_faces(&self, d: usize) -> usize {
        self.faces_of_dim(d).count()
    }

    pub fn finite_vertex_count(&self) -> usize {
        self.faces_of_dim(0).filter(|(_, f)| !f.ideal).count()
    }

    pub fn ideal_vertex_count(&self) -> usize {
        self.faces_of_dim(0).filter(|(_, f)| f.ideal).count()
    }

    /// f-vector `(f_0, …, f_{n-1})`, ideal vertices included in `f_0`.
    pub fn f_vector(&self) -> Vec<usize> {
        (0..self.dim).map(|d| self.count_faces(d)).collect()
    }

    pub fn ridge_angle(&self, i: usize, j: usize) -> Option<u32> {
        self.ridge_angles.get(&(i.min(j), i.max(j))).copied()
    }

    pub fn ridges(&self) -> impl Iterator<Item = ((usize, usize), u32)> + '_ {
        self.ridge_angles.iter().map(|(&k, &m)| (k, m))
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.ridge_angles.contains_key(&(i.min(j), i.max(j)))
    }

    /// Facets sharing a ridge with `f`, in increasing order.
    pub fn neighbours(&self, f: usize) -> Vec<usize> {
        (0..self.num_facets()).filter(|&g| self.adjacent(f, g)).collect()
    }

    pub fn is_right_angled(&self) -> bool {
        self.ridge_angles.values().all(|&m| m == 2)
    }

    /// Faces contained in facet `f` (excluding `f` itself).
    pub fn faces_in_facet(&self, f: usize) -> impl Iterator<Item = (usize, &Face)> {
        self.faces.iter().enumerate().filter(move |(_, x)| x.facets.len() > 1 && x.facets.contains(&f))
    }

    /// Shape of facet `f` read off its face lattice.
    fn shape_of_facet(&self, f: usize) -> String {
        let counts: Vec<usize> = (0..self.dim.saturating_sub(1))
            .map(|d| self.faces_in_facet(f).filter(|(_, x)| x.dim == d).count())
            .collect();
        match self.dim {
            0 | 1 => "point".into(),
            2 => "edge".into(),
            3 => polygon_name(counts[0]),
            4 => polyhedron_name(counts[0], counts[1], counts[2]),
            _ => format!("facet{counts:?}"),
        }
    }

    /// The facet `f` as a polytope of one dimension less, together with the map
    /// from its facets to the neighbouring facets of `self` that cut them out.
    /// Angles inside the facet are recorded as right where all three ambient
    /// angles at the face are right, and left unrecorded otherwise.
    pub fn facet_polytope(&self, f: usize) -> Result<(Polytope, Vec<usize>), GeometryError> {
        let nbrs = self.neighbours(f);
        let local: HashMap<usize, usize> = nbrs.iter().enumerate().map(|(k, &g)| (g, k)).collect();
        let mut faces = Vec::new();
        let mut angles = BTreeMap::new();
        for (_, face) in self.faces_in_facet(f) {
            let facets: Vec<usize> = face.facets.iter().filter_map(|g| local.get(g).copied()).collect();
            if facets.is_empty() {
                continue;
            }
            if face.dim + 3 == self.dim && facets.len() == 2 {
                let (g, h) = (nbrs[facets[0]], nbrs[facets[1]]);
                let right = [(f, g), (f, h), (g, h)].iter().all(|&(a, b)| self.ridge_angle(a, b) == Some(2));
                angles.insert((facets[0].min(facets[1]), facets[0].max(facets[1])), if right { 2 } else { 0 });
            }
            faces.push(Face { dim: face.dim, facets, ideal: face.ideal });
        }
        let labels = nbrs.iter().map(|&g| self.facet_labels[g].clone()).collect();
        let p = Polytope::from_faces(&format!("{}:facet{}", self.name, f), self.dim - 1, labels, faces, angles)?;
        Ok((p, nbrs))
    }

    /// Proper 2-coloring of the facets by the adjacency graph, if one exists;
    /// facet 0 gets `true`.
    pub fn facet_two_coloring(&self) -> Option<Vec<bool>> {
        let n = self.num_facets();
        let mut color: Vec<Option<bool>> = vec![None; n];
        for s in 0..n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(true);
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                let cx = color[x].expect("colored");
                for y in self.neighbours(x) {
                    match color[y] {
                        None => {
                            color[y] = Some(!cx);
                            stack.push(y);
                        }
                        Some(cy) if cy == cx => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.expect("all visited")).collect())
    }

    /// Euler characteristic of the boundary sphere, ideal vertices counted.
    pub fn boundary_euler(&self) -> i64 {
        (0..self.dim).map(|d| if d % 2 == 0 { 1 } else { -1 } * self.count_faces(d) as i64).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("polytope serializes")
    }
}

/// What an isomorphism search must preserve besides the face lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsoOptions {
    pub ideal_flags: bool,
    pub angles: bool,
    pub tags: bool,
}

impl IsoOptions {
    pub const STRICT: IsoOptions = IsoOptions { ideal_flags: true, angles: true, tags: true };
    pub const LATTICE: IsoOptions = IsoOptions { ideal_flags: false, angles: false, tags: false };
}

/// Facet bijections `p → q` inducing face-lattice isomorphisms, at most `limit`.
pub fn isomorphisms(p: &Polytope, q: &Polytope, opts: IsoOptions, limit: usize) -> Vec<Vec<usize>> {
    let n = p.num_facets();
    if n != q.num_facets() || p.dim != q.dim || p.faces.len() != q.faces.len() || p.f_vector() != q.f_vector() {
        return Vec::new();
    }
    let pn: Vec<Vec<usize>> = (0..n).map(|f| p.neighbours(f)).collect();
    let qn: Vec<Vec<usize>> = (0..n).map(|f| q.neighbours(f)).collect();
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for s in 0..n {
        if placed[s] {
            continue;
        }
        placed[s] = true;
        let mut head = order.len();
        order.push(s);
        while head < order.len() {
            let x = order[head];
            head += 1;
            for &y in &pn[x] {
                if !placed[y] {
                    placed[y] = true;
                    order.push(y);
                }
            }
        }
    }
    let mut search =
        IsoSearch { p, q, opts, pn, qn, order, map: vec![usize::MAX; n], used: vec![false; n], out: Vec::new(), limit };
    search.extend(0);
    search.out
}

struct IsoSearch<'a> {
    p: &'a Polytope,
    q: &'a Polytope,
    opts: IsoOptions,
    pn: Vec<Vec<usize>>,
    qn: Vec<Vec<usize>>,
    order: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
    out: Vec<Vec<usize>>,
    limit: usize,
}

impl IsoSearch<'_> {
    fn extend(&mut self, k: usize) {
        if self.out.len() >= self.limit {
            return;
        }
        if k == self.order.len() {
            if self.faces_match() {
                self.out.push(self.map.clone());
            }
            return;
        }
        let f = self.order[k];
        for t in 0..self.map.len() {
            if self.used[t] || !self.compatible(f, t, k) {
                continue;
            }
            self.map[f] = t;
            self.used[t] = true;
            self.extend(k + 1);
            self.used[t] = false;
            self.map[f] = usize::MAX;
            if self.out.len() >= self.limit {
                return;
            }
        }
    }

    fn compatible(&self, f: usize, t: usize, k: usize) -> bool {
        if self.pn[f].len() != self.qn[t].len() {
            return false;
        }
        if self.opts.tags && self.p.facet_tags[f] != self.q.facet_tags[t] {
            return false;
        }
        for &a in &self.order[..k] {
            let b = self.map[a];
            let pa = self.p.adjacent(f, a);
            if pa != self.q.adjacent(t, b) {
                return false;
            }
            if pa && self.opts.angles && self.p.ridge_angle(f, a) != self.q.ridge_angle(t, b) {
                return false;
            }
        }
        true
    }

    fn faces_match(&self) -> bool {
        self.p.faces.iter().all(|face| {
            let image: Vec<usize> = face.facets.iter().map(|&f| self.map[f]).collect();
            match self.q.face_index(&image) {
                Some(k) => {
                    let g = &self.q.faces[k];
                    g.dim == face.dim && (!self.opts.ideal_flags || g.ideal == face.ideal)
                }
                None => false,
            }
        })
    }
}

/// Automorphisms of a polytope and the facet orbits they generate.
#[derive(Clone, Debug, Serialize)]
pub struct SymmetryReport {
    pub order: usize,
    pub automorphisms: Vec<Vec<usize>>,
    pub facet_orbits: Vec<Vec<usize>>,
}

/// All face-lattice automorphisms preserving ideal flags, facet shapes and
/// dihedral angles.
pub fn symmetry_group(p: &Polytope) -> SymmetryReport {
    symmetry_group_with(p, IsoOptions::STRICT)
}

pub fn symmetry_group_with(p: &Polytope, opts: IsoOptions) -> SymmetryReport {
    let automorphisms = isomorphisms(p, p, opts, usize::MAX);
    let n = p.num_facets();
    let mut orbit_of = vec![usize::MAX; n];
    let mut facet_orbits: Vec<Vec<usize>> = Vec::new();
    for f in 0..n {
        if orbit_of[f] != usize::MAX {
            continue;
        }
        let members: BTreeSet<usize> = automorphisms.iter().map(|a| a[f]).collect();
        for &m in &members {
            orbit_of[m] = facet_orbits.len();
        }
        facet_orbits.push(members.into_iter().collect());
    }
    SymmetryReport { order: automorphisms.len(), automorphisms, facet_orbits }
}

//! Hyperplane systems in Minkowski space, finite reflection groups, and the
//! union of a Coxeter polytope's copies under a finite vertex stabilizer.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::Serialize;

use super::polytope::{Face, Polytope};
use super::GeometryError;
use crate::kernel::{FloatMatrix, SIGNATURE_TOL};

/// Unit space-like normals in ℝ^{n,1} with product `⟨x, y⟩ = Σ x_i y_i - x_n y_n`.
#[derive(Clone, Debug)]
pub struct HyperplaneSystem {
    pub n: usize,
    pub labels: Vec<String>,
    pub normals: Vec<DVector<f64>>,
}

/// Minkowski product on ℝ^{n,1}; the last coordinate is time-like.
pub fn minkowski(x: &DVector<f64>, y: &DVector<f64>) -> f64 {
    let k = x.len() - 1;
    x.rows(0, k).dot(&y.rows(0, k)) - x[k] * y[k]
}

/// Matrix of the reflection `x ↦ x - 2⟨x, e⟩e` for a unit space-like `e`.
pub fn reflection_matrix(e: &DVector<f64>) -> DMatrix<f64> {
    let dim = e.len();
    let mut je = e.clone();
    je[dim - 1] = -je[dim - 1];
    DMatrix::identity(dim, dim) - 2.0 * e * je.transpose()
}

impl HyperplaneSystem {
    pub fn ambient_dim(&self) -> usize {
        self.n + 1
    }

    pub fn reflection(&self, i: usize) -> DMatrix<f64> {
        reflection_matrix(&self.normals[i])
    }

    pub fn gram(&self) -> FloatMatrix {
        FloatMatrix::from_fn(self.normals.len(), |i, j| minkowski(&self.normals[i], &self.normals[j]))
    }

    /// Largest deviation of the pairwise products from `g`.
    pub fn max_gram_error(&self, g: &FloatMatrix) -> f64 {
        let mine = self.gram();
        let mut worst = 0.0f64;
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                worst = worst.max((mine.get(i, j) - g.get(i, j)).abs());
            }
        }
        worst
    }
}

/// Realizes a Gram matrix of signature `(n, 1)` (zero eigenvalues allowed) as
/// normals in ℝ^{n,1}. A positive semidefinite matrix is realized with zero time
/// coordinate, which covers the single-hyperplane case.
pub fn realize(g: &FloatMatrix, labels: Vec<String>) -> Result<HyperplaneSystem, GeometryError> {
    let sig = g.signature(SIGNATURE_TOL)?;
    if sig.neg > 1 {
        return Err(GeometryError::NotHyperbolic(sig.to_string()));
    }
    let eig = SymmetricEigen::new(g.to_nalgebra());
    let mut pos: Vec<usize> = (0..g.dim()).filter(|&k| eig.eigenvalues[k] > SIGNATURE_TOL).collect();
    pos.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let neg: Option<usize> = (0..g.dim()).find(|&k| eig.eigenvalues[k] < -SIGNATURE_TOL);
    let n = pos.len();
    let normals = (0..g.dim())
        .map(|i| {
            let mut v = DVector::zeros(n + 1);
            for (c, &k) in pos.iter().enumerate() {
                v[c] = eig.eigenvectors[(i, k)] * eig.eigenvalues[k].sqrt();
            }
            if let Some(k) = neg {
                v[n] = eig.eigenvectors[(i, k)] * (-eig.eigenvalues[k]).sqrt();
            }
            v
        })
        .collect();
    Ok(HyperplaneSystem { n, labels, normals })
}

/// A finite group of isometries with a shortest generator word for each element.
#[derive(Clone, Debug)]
pub struct OrbitGroup {
    pub generators: Vec<usize>,
    pub elements: Vec<DMatrix<f64>>,
    pub words: Vec<Vec<usize>>,
}

pub const MATRIX_TOL: f64 = 1e-7;
pub const DEFAULT_GROUP_CAP: usize = 10_000;

fn max_abs_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

impl OrbitGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Index of the listed element equal to `m` within tolerance.
    pub fn find(&self, m: &DMatrix<f64>) -> Option<usize> {
        self.elements.iter().position(|e| max_abs_diff(e, m) < MATRIX_TOL)
    }
}

/// The group generated by the reflections in `generators`, by breadth-first
/// closure; element `γ` with word `w` is `r_{w_1} r_{w_2} ⋯ r_{w_k}`.
pub fn orbit_group(sys: &HyperplaneSystem, generators: &[usize], cap: usize) -> Result<OrbitGroup, GeometryError> {
    let gens: Vec<DMatrix<f64>> = generators.iter().map(|&i| sys.reflection(i)).collect();
    let dim = sys.ambient_dim();
    let mut group = OrbitGroup {
        generators: generators.to_vec(),
        elements: vec![DMatrix::identity(dim, dim)],
        words: vec![Vec::new()],
    };
    let mut head = 0;
    while head < group.elements.len() {
        for (k, r) in gens.iter().enumerate() {
            let m = &group.elements[head] * r;
            if group.find(&m).is_none() {
                if group.elements.len() >= cap {
                    return Err(GeometryError::InfiniteGroup { cap });
                }
                let mut w = group.words[head].clone();
                w.push(generators[k]);
                group.elements.push(m);
                group.words.push(w);
            }
        }
        head += 1;
    }
    Ok(group)
}

/// The union of the copies `γ(Q)`, `γ` in a finite reflection group fixing a
/// vertex of `Q`, with its merged facet normals.
#[derive(Clone, Debug)]
pub struct OrbitPolytope {
    pub polytope: Polytope,
    pub normals: Vec<DVector<f64>>,
    /// For each vertex of the union, a seed face it comes from (seed face index).
    pub vertex_origins: BTreeMap<usize, usize>,
    pub group_order: usize,
}

const MERGE_TOL: f64 = 1e-7;
const SEPARATION_TOL: f64 = 1e-4;

fn vec_dist(a: &DVector<f64>, b: &DVector<f64>) -> f64 {
    (a - b).amax()
}

/// Assembles the orbit polytope of `seed` under `group`. Seed facet `i` has
/// normal `sys.normals[i]`; the group is generated by reflections in seed facets
/// through a common vertex, and the remaining seed facets become facets of the
/// union. Faces are read off the glued complex of seed copies: the face of copy
/// `γ` over a seed face with facets `S` lies in the union's facets
/// `γ w H_t` for `w` in the group generated by `S ∩ generators` and
/// `t ∈ S \ generators`.
pub fn assemble_orbit_polytope(
    name: &str,
    seed: &Polytope,
    sys: &HyperplaneSystem,
    group: &OrbitGroup,
) -> Result<OrbitPolytope, GeometryError> {
    let mirrors = &group.generators;
    let boundary: Vec<usize> = (0..seed.num_facets()).filter(|i| !mirrors.contains(i)).collect();
    let mut normals: Vec<DVector<f64>> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    let lookup = |normals: &[DVector<f64>], v: &DVector<f64>| -> Result<Option<usize>, GeometryError> {
        let mut hit = None;
        for (k, u) in normals.iter().enumerate() {
            let d = vec_dist(u, v);
            if d < MERGE_TOL {
                hit = Some(k);
            } else if d < SEPARATION_TOL {
                return Err(GeometryError::MergeAmbiguity { first: k, distance: d });
            }
        }
        Ok(hit)
    };
    for (g, word) in group.elements.iter().zip(&group.words) {
        for &t in &boundary {
            let v = g * &sys.normals[t];
            if lookup(&normals, &v)?.is_none() {
                normals.push(v);
                let mut parts: Vec<&str> = word.iter().map(|&i| sys.labels[i].as_str()).collect();
                parts.push(&sys.labels[t]);
                labels.push(parts.join("."));
            }
        }
    }
    // facet set -> (dimension, ideal, seed origin)
    let mut found: HashMap<Vec<usize>, (usize, bool, usize)> = HashMap::new();
    for (fi, face) in seed.faces().iter().enumerate() {
        let local_mirrors: Vec<usize> = face.facets.iter().copied().filter(|i| mirrors.contains(i)).collect();
        let outer: Vec<usize> = face.facets.iter().copied().filter(|i| !mirrors.contains(i)).collect();
        if outer.is_empty() {
            continue;
        }
        let refl: Vec<DMatrix<f64>> = local_mirrors.iter().map(|&m| sys.reflection(m)).collect();
        let mut orbit: Vec<DVector<f64>> = outer.iter().map(|&t| sys.normals[t].clone()).collect();
        let mut head = 0;
        while head < orbit.len() {
            for r in &refl {
                let v = r * &orbit[head];
                if !orbit.iter().any(|u| vec_dist(u, &v) < MERGE_TOL) {
                    orbit.push(v);
                }
            }
            head += 1;
        }
        for g in &group.elements {
            let mut facets = Vec::with_capacity(orbit.len());
            for x in &orbit {
                let v = g * x;
                let k = lookup(&normals, &v)?.ok_or_else(|| {
                    GeometryError::InvalidLattice("image of a boundary hyperplane is not a facet".into())
                })?;
                facets.push(k);
            }
            facets.sort_unstable();
            facets.dedup();
            let entry = found.entry(facets.clone()).or_insert((face.dim, face.ideal, fi));
            if entry.1 != face.ideal {
                return Err(GeometryError::InvalidLattice(format!("face {facets:?} is both ideal and finite")));
            }
            if face.dim > entry.0 {
                *entry = (face.dim, face.ideal, fi);
            }
        }
    }
    let mut faces: Vec<Face> =
        found.iter().map(|(f, &(dim, ideal, _))| Face { dim, facets: f.clone(), ideal }).collect();
    faces.sort_by(|a, b| a.facets.cmp(&b.facets));
    let n = seed.dim();
    let mut angles = BTreeMap::new();
    for f in faces.iter().filter(|f| f.dim + 2 == n && f.facets.len() == 2) {
        let (i, j) = (f.facets[0], f.facets[1]);
        let c = -minkowski(&normals[i], &normals[j]);
        let m = PI / c.clamp(-1.0, 1.0).acos();
        let rounded = m.round();
        angles.insert((i, j), if (m - rounded).abs() < 1e-6 { rounded as u32 } else { 0 });
    }
    let polytope = Polytope::from_faces(name, n, labels, faces, angles)?;
    let vertex_origins = polytope.faces_of_dim(0).map(|(k, f)| (k, found[&f.facets].2)).collect();
    Ok(OrbitPolytope { polytope, normals, vertex_origins, group_order: group.order() })
}

/// Classification of facet pairs by the product of their normals.
#[derive(Clone, Debug, Serialize)]
pub struct RightAngleReport {
    pub adjacent: usize,
    pub max_adjacent_product: f64,
    pub non_orthogonal_adjacent: Vec<(usize, usize, f64)>,
    pub tangent: Vec<(usize, usize)>,
    pub ultraparallel: Vec<(usize, usize)>,
    /// Non-adjacent pairs whose hyperplanes would intersect.
    pub inconsistent: Vec<(usize, usize, f64)>,
    pub passed: bool,
}

/// Checks every adjacent facet pair for orthogonality and classifies the rest.
pub fn verify_right_angled(p: &Polytope, normals: &[DVector<f64>]) -> RightAngleReport {
    const TOL: f64 = 1e-9;
    let mut r = RightAngleReport {
        adjacent: 0,
        max_adjacent_product: 0.0,
        non_orthogonal_adjacent: Vec::new(),
        tangent: Vec::new(),
        ultraparallel: Vec::new(),
        inconsistent: Vec::new(),
        passed: true,
    };
    for i in 0..p.num_facets() {
        for j in (i + 1)..p.num_facets() {
            let x = minkowski(&normals[i], &normals[j]);
            if p.adjacent(i, j) {
                r.adjacent += 1;
                r.max_adjacent_product = r.max_adjacent_product.max(x.abs());
                if x.abs() >= TOL {
                    r.non_orthogonal_adjacent.push((i, j, x));
                }
            } else if (x + 1.0).abs() < TOL {
                r.tangent.push((i, j));
            } else if x < -1.0 {
                r.ultraparallel.push((i, j));
            } else {
                r.inconsistent.push((i, j, x));
            }
        }
    }
    r.passed = r.non_orthogonal_adjacent.is_empty() && r.inconsistent.is_empty();
    r
}

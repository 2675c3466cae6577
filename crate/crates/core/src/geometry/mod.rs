//! Realization of Coxeter diagrams in Minkowski space, finite reflection-group
//! orbits, and the right-angled polytopes used as cell types.

mod orbit;
mod polytope;

pub use orbit::{
    assemble_orbit_polytope, minkowski, orbit_group, realize, reflection_matrix, verify_right_angled, HyperplaneSystem,
    OrbitGroup, OrbitPolytope, RightAngleReport, DEFAULT_GROUP_CAP, MATRIX_TOL,
};
pub use polytope::{isomorphisms, symmetry_group, symmetry_group_with, Face, IsoOptions, Polytope, SymmetryReport};

use std::collections::BTreeMap;

use crate::coxeter::{builtin_diagram, CoxeterError};
use crate::kernel::KernelError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("Gram matrix has signature {0}, not hyperbolic")]
    NotHyperbolic(String),
    #[error("group exceeds {cap} elements")]
    InfiniteGroup { cap: usize },
    #[error("normal is {distance:e} from facet {first}: too close to merge or separate")]
    MergeAmbiguity { first: usize, distance: f64 },
    #[error("invalid face lattice: {0}")]
    InvalidLattice(String),
    #[error("unknown polytope `{0}` (known: octahedron, 24-cell, p3, p4)")]
    UnknownPolytope(String),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

pub const BUILTIN_POLYTOPES: [&str; 4] = ["octahedron", "24-cell", "p3", "p4"];

/// The ideal right-angled octahedron with vertices `±e_i`. Facet `k` has sign
/// vector `s` with `s_i = -1` iff bit `i` of `k` is set.
pub fn octahedron() -> Polytope {
    let mut sets = Vec::new();
    let mut labels = Vec::new();
    for k in 0..8usize {
        let signs: Vec<bool> = (0..3).map(|i| k >> i & 1 == 0).collect();
        // vertex 2i is +e_i, vertex 2i+1 is -e_i
        sets.push((0..3).map(|i| 2 * i + usize::from(!signs[i])).collect::<Vec<_>>());
        labels.push(signs.iter().map(|&s| if s { '+' } else { '-' }).collect());
    }
    Polytope::from_vertex_sets("octahedron", 3, labels, &sets, &[true; 6], BTreeMap::new()).expect("octahedron lattice")
}

/// Checkerboard classes of the octahedron: facet `k` is white iff its sign
/// vector has product `+1`.
pub fn octahedron_is_white(k: usize) -> bool {
    (k as u32).count_ones().is_multiple_of(2)
}

/// The ideal right-angled 24-cell: vertices `±e_i` and `(±½, ±½, ±½, ±½)`,
/// facets `{v : ⟨u, v⟩ = 1}` for the 24 roots `u` of the form `±e_i ± e_j`.
pub fn cell24() -> Polytope {
    let mut verts: Vec<[f64; 4]> = Vec::new();
    for i in 0..4 {
        for s in [1.0, -1.0] {
            let mut v = [0.0; 4];
            v[i] = s;
            verts.push(v);
        }
    }
    for k in 0..16 {
        verts.push(std::array::from_fn(|i| if k >> i & 1 == 0 { 0.5 } else { -0.5 }));
    }
    let mut sets = Vec::new();
    let mut labels = Vec::new();
    for i in 0..4 {
        for j in (i + 1)..4 {
            for (si, sj) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                let mut u = [0.0; 4];
                u[i] = si;
                u[j] = sj;
                let set: Vec<usize> = (0..verts.len())
                    .filter(|&v| (verts[v].iter().zip(&u).map(|(a, b)| a * b).sum::<f64>() - 1.0).abs() < 1e-12)
                    .collect();
                sets.push(set);
                let sign = |s: f64| if s > 0.0 { '+' } else { '-' };
                labels.push(format!("{}e{}{}e{}", sign(si), i + 1, sign(sj), j + 1));
            }
        }
    }
    Polytope::from_vertex_sets("24-cell", 4, labels, &sets, &[true; 24], BTreeMap::new()).expect("24-cell lattice")
}

/// Orbit polytope of a built-in pyramid: `p3` from `q3-fig6` under `⟨C,D,E⟩`,
/// `p4` from `q4-fig4` under `⟨B,C,D,E⟩`.
pub fn orbit_polytope(name: &str) -> Result<OrbitPolytope, GeometryError> {
    let (diagram, n, gens): (&str, usize, &[&str]) = match name {
        "p3" => ("q3-fig6", 3, &["C", "D", "E"]),
        "p4" => ("q4-fig4", 4, &["B", "C", "D", "E"]),
        _ => return Err(GeometryError::UnknownPolytope(name.to_string())),
    };
    let d = builtin_diagram(diagram)?;
    let seed = Polytope::from_coxeter(diagram, &d, n)?;
    let sys = realize(&d.gram_f64(), d.nodes().to_vec())?;
    let gens = d.subset(gens)?;
    let group = orbit_group(&sys, &gens, DEFAULT_GROUP_CAP)?;
    assemble_orbit_polytope(name, &seed, &sys, &group)
}

/// One of `octahedron`, `24-cell`, `p3`, `p4`.
pub fn builtin_polytope(name: &str) -> Result<Polytope, GeometryError> {
    match name {
        "octahedron" => Ok(octahedron()),
        "24-cell" => Ok(cell24()),
        "p3" | "p4" => Ok(orbit_polytope(name)?.polytope),
        _ => Err(GeometryError::UnknownPolytope(name.to_string())),
    }
}

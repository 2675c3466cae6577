//! Vinberg's vertex test: spherical and Euclidean subdiagrams.

use serde::Serialize;

use super::diagram::CoxeterDiagram;
use crate::kernel::SIGNATURE_TOL;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Finite,
    Ideal,
    None,
}

/// Outcome of testing a node subset as a vertex of the polytope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexVerdict {
    pub kind: VertexKind,
    pub witness: Vec<usize>,
}

/// True iff the subdiagram on `subset` is spherical (Gram submatrix positive
/// definite). Exact whenever the entries lie in ℚ(√2, √3).
pub fn is_spherical(d: &CoxeterDiagram, subset: &[usize]) -> bool {
    if subset.is_empty() {
        return true;
    }
    match d.principal_exact(subset) {
        Some(m) => m.is_positive_definite(),
        None => {
            let m = d.gram_f64().principal(subset);
            m.eigenvalues()[0] > SIGNATURE_TOL
        }
    }
}

/// True iff the connected subdiagram `comp` is Euclidean: singular, with every
/// one-node deletion spherical. By eigenvalue interlacing this is exactly
/// positive semidefinite of corank one.
pub fn is_euclidean_component(d: &CoxeterDiagram, comp: &[usize]) -> bool {
    if comp.len() < 2 {
        return false;
    }
    let singular = match d.principal_exact(comp) {
        Some(m) => m.determinant().is_zero(),
        None => d.gram_f64().principal(comp).eigenvalues()[0].abs() <= SIGNATURE_TOL,
    };
    singular
        && (0..comp.len()).all(|k| {
            let rest: Vec<usize> = comp.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &v)| v).collect();
            is_spherical(d, &rest)
        })
}

/// True iff `subset` is parabolic of rank `rank`: every component Euclidean and
/// the Gram submatrix of rank `rank`.
pub fn is_parabolic_of_rank(d: &CoxeterDiagram, subset: &[usize], rank: usize) -> bool {
    let comps = d.components(subset);
    comps.iter().all(|c| is_euclidean_component(d, c)) && subset.len() - comps.len() == rank
}

/// Classifies `subset` as a finite vertex (spherical of size `n`), an ideal
/// vertex (parabolic of rank `n - 1`), or neither, in dimension `n`.
pub fn vertex_type(d: &CoxeterDiagram, subset: &[usize], n: usize) -> VertexVerdict {
    let mut witness = subset.to_vec();
    witness.sort_unstable();
    witness.dedup();
    let kind = if witness.len() == n && is_spherical(d, &witness) {
        VertexKind::Finite
    } else if n >= 1 && is_parabolic_of_rank(d, &witness, n - 1) {
        VertexKind::Ideal
    } else {
        VertexKind::None
    };
    VertexVerdict { kind, witness }
}

/// All finite and ideal vertices of the polytope of `d` in dimension `dim`,
/// found by testing every node subset of the admissible sizes.
pub fn polytope_vertices(d: &CoxeterDiagram, dim: usize) -> Vec<VertexVerdict> {
    let n = d.len();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << n) {
        let subset: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if subset.len() < dim.saturating_sub(1) {
            continue;
        }
        let v = vertex_type(d, &subset, dim);
        if v.kind != VertexKind::None {
            out.push(v);
        }
    }
    out.sort_by(|a, b| (a.witness.len(), &a.witness).cmp(&(b.witness.len(), &b.witness)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::parse_diagram;

    #[test]
    fn affine_and_spherical_basics() {
        let d = parse_diagram("A B inf\nB C 4\nC D 4\nD E 3").unwrap();
        assert!(is_euclidean_component(&d, &[0, 1]));
        assert!(is_euclidean_component(&d, &[1, 2, 3]));
        assert!(!is_spherical(&d, &[1, 2, 3]));
        assert!(is_spherical(&d, &[2, 3, 4]));
        assert!(!is_euclidean_component(&d, &[2, 3, 4]));
    }

    #[test]
    fn ideal_needs_full_rank() {
        let d = parse_diagram("A B inf\nnode C").unwrap();
        assert_eq!(vertex_type(&d, &[0, 1], 2).kind, VertexKind::Ideal);
        assert_eq!(vertex_type(&d, &[0, 1], 3).kind, VertexKind::None);
        assert_eq!(vertex_type(&d, &[0, 2], 2).kind, VertexKind::Finite);
    }

    #[test]
    fn square_has_four_finite_vertices() {
        let d = parse_diagram("node A\nnode B\nnode C\nnode D\nA C inf\nB D inf").unwrap();
        let v = polytope_vertices(&d, 2);
        assert_eq!(v.iter().filter(|v| v.kind == VertexKind::Finite).count(), 4);
        assert_eq!(v.iter().filter(|v| v.kind == VertexKind::Ideal).count(), 2);
    }

    #[test]
    fn golden_label_uses_float_fallback() {
        let d = parse_diagram("A B 5\nB C 3").unwrap();
        assert!(is_spherical(&d, &[0, 1, 2]));
    }
}

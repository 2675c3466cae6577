//! Independent checks that pin down the transcription of the Q⁴ diagram.

use std::collections::BTreeMap;

use serde::Serialize;

use super::diagram::{CoxeterDiagram, EdgeWeight};
use super::restrict::restrict_to_facet;
use super::vertex::is_spherical;
use crate::geometry::{isomorphisms, IsoOptions, Polytope};
use crate::kernel::SIGNATURE_TOL;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstraintCheck {
    pub name: String,
    /// The geometric fact the check encodes.
    pub reason: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstraintReport {
    pub checks: Vec<ConstraintCheck>,
}

impl ConstraintReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConstraintCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// The 4-dimensional pyramid over a triangular prism, apex ideal.
pub fn prism_pyramid() -> Polytope {
    // prism vertices 0,1,2 (bottom) and 3,4,5 (top); apex 6
    let prism_facets: [&[usize]; 5] = [&[0, 1, 2], &[3, 4, 5], &[0, 1, 4, 3], &[1, 2, 5, 4], &[2, 0, 3, 5]];
    let mut sets: Vec<Vec<usize>> = vec![(0..6).collect()];
    for f in prism_facets {
        let mut s = f.to_vec();
        s.push(6);
        sets.push(s);
    }
    let labels = (0..sets.len()).map(|k| format!("f{k}")).collect();
    let ideal = [false, false, false, false, false, false, true];
    Polytope::from_vertex_sets("prism-pyramid", 4, labels, &sets, &ideal, BTreeMap::new()).expect("pyramid lattice")
}

/// Checks a candidate Q⁴ diagram on nodes A–F against the constraints that
/// determine it: the orthogonality pattern of A and B, the two order-6
/// dihedral subgroups, sphericity of the vertex stabilizer, the signature,
/// tangency of B and C inside H_A, and the combinatorial type.
pub fn validate_q4_constraints(d: &CoxeterDiagram) -> ConstraintReport {
    let mut checks = Vec::new();
    let mut push = |name: String, reason: &str, passed: bool, detail: String| {
        checks.push(ConstraintCheck { name, reason: reason.to_string(), passed, detail });
    };
    let idx: BTreeMap<&str, Option<usize>> =
        ["A", "B", "C", "D", "E", "F"].iter().map(|&n| (n, d.index_of(n))).collect();
    let missing: Vec<&str> = idx.iter().filter(|(_, v)| v.is_none()).map(|(k, _)| *k).collect();
    if !missing.is_empty() || d.len() != 6 {
        push(
            "nodes A..F".into(),
            "the pyramid has six facets named A to F",
            false,
            format!("missing {missing:?}, {} nodes", d.len()),
        );
        return ConstraintReport { checks };
    }
    let i = |n: &str| idx[n].expect("checked");
    let describe = |a: &str, b: &str| match d.weight(i(a), i(b)) {
        None => "label 2".to_string(),
        Some(EdgeWeight::Label(m)) => format!("label {m}"),
        Some(EdgeWeight::Infinite) => "label inf".to_string(),
        Some(EdgeWeight::Dashed { weight, .. }) => format!("dashed {weight}"),
    };
    for x in ["C", "D", "E", "F"] {
        push(
            format!("A orthogonal to {x}"),
            "H_A meets the facets C, D, E, F at right angles",
            d.weight(i("A"), i(x)).is_none(),
            describe("A", x),
        );
    }
    push(
        "A not orthogonal to B".into(),
        "H_A and H_B are not perpendicular",
        d.weight(i("A"), i("B")).is_some(),
        describe("A", "B"),
    );
    for x in ["D", "E", "F"] {
        push(
            format!("B orthogonal to {x}"),
            "H_B meets D, E, F at right angles",
            d.weight(i("B"), i(x)).is_none(),
            describe("B", x),
        );
    }
    push(
        "B not orthogonal to C".into(),
        "H_B and H_C are not perpendicular",
        d.weight(i("B"), i("C")).is_some(),
        describe("B", "C"),
    );
    for (a, b) in [("C", "D"), ("D", "E")] {
        push(
            format!("<r_{a}, r_{b}> dihedral of order 6"),
            "the reflections generate a dihedral group of order 6",
            d.weight(i(a), i(b)) == Some(&EdgeWeight::Label(3)),
            describe(a, b),
        );
    }
    let v = [i("B"), i("C"), i("D"), i("E")];
    push(
        "{B,C,D,E} spherical".into(),
        "H_B, H_C, H_D, H_E meet in a finite vertex",
        is_spherical(d, &v),
        String::new(),
    );
    let sig = d.gram_f64().signature(SIGNATURE_TOL).expect("positive tolerance");
    push(
        "signature (4,1)".into(),
        "the diagram is a polytope in hyperbolic 4-space",
        sig.pos == 4 && sig.neg == 1,
        format!("signature {sig}"),
    );
    let (tangent, detail) = match restrict_to_facet(d, "A") {
        Ok(r) => {
            let w = r.weight(r.require("B").expect("kept"), r.require("C").expect("kept"));
            (w == Some(&EdgeWeight::Infinite), format!("facet diagram {r}"))
        }
        Err(e) => (false, e.to_string()),
    };
    push(
        "B tangent to C inside H_A".into(),
        "in the facet H_A the planes B and C are tangent at infinity",
        tangent,
        detail,
    );
    let (same_type, detail) = match Polytope::from_coxeter("q4", d, 4) {
        Ok(p) => {
            let iso = !isomorphisms(&p, &prism_pyramid(), IsoOptions::LATTICE, 1).is_empty();
            (iso, format!("f-vector {:?}", p.f_vector()))
        }
        Err(e) => (false, e.to_string()),
    };
    push("pyramid over a triangular prism".into(), "the combinatorial type of Q4", same_type, detail);
    ConstraintReport { checks }
}

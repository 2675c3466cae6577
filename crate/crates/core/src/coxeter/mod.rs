//! Coxeter diagrams of hyperbolic polytopes: Gram matrices, Vinberg's vertex
//! test, facet diagrams and the arithmeticity criterion.

mod arith;
mod constraints;
mod diagram;
mod restrict;
mod vertex;

pub use arith::{arithmeticity, simple_cycles, ArithmeticityReport, CycleCertificate, Verdict, Violation};
pub use constraints::{validate_q4_constraints, ConstraintCheck, ConstraintReport};
pub use diagram::{parse_diagram, CoxeterDiagram, EdgeWeight};
pub use restrict::restrict_to_facet;
pub use vertex::{
    is_euclidean_component, is_parabolic_of_rank, is_spherical, polytope_vertices, vertex_type, VertexKind,
    VertexVerdict,
};

use crate::kernel::{ExactMatrix, KernelError, Signature, SIGNATURE_TOL};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CoxeterError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: self-edge at node {node}")]
    SelfEdge { line: usize, node: String },
    #[error("line {line}: edge {a}-{b} already given on line {first}")]
    DuplicateEdge { line: usize, first: usize, a: String, b: String },
    #[error("line {line}: unsupported label `{label}`")]
    UnsupportedLabel { line: usize, label: String },
    #[error("unknown node {0}")]
    UnknownNode(String),
    #[error("label {label} on {a}-{b} has a cosine outside Q(sqrt2, sqrt3)")]
    UnsupportedField { a: String, b: String, label: String },
    #[error("restriction to facet {facet} degenerates at node {node}")]
    FacetDegeneracy { facet: String, node: String },
    #[error("restricted product {value} on {a}-{b} is not a Coxeter weight")]
    NotCoxeter { a: String, b: String, value: String },
    #[error("unknown built-in diagram `{0}`")]
    UnknownBuiltin(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// Names of the diagrams shipped with the crate.
pub const BUILTIN_DIAGRAMS: [&str; 4] = ["q4-fig4", "q3-fig6", "orthoscheme-434", "orthoscheme-4334"];

/// Source text of a built-in diagram.
pub fn builtin_diagram_text(name: &str) -> Option<&'static str> {
    match name {
        "q4-fig4" => Some(include_str!("../../data/q4-fig4.txt")),
        "q3-fig6" => Some(include_str!("../../data/q3-fig6.txt")),
        "orthoscheme-434" => Some(include_str!("../../data/orthoscheme-434.txt")),
        "orthoscheme-4334" => Some(include_str!("../../data/orthoscheme-4334.txt")),
        _ => None,
    }
}

/// Parses a built-in diagram.
pub fn builtin_diagram(name: &str) -> Result<CoxeterDiagram, CoxeterError> {
    parse_diagram(builtin_diagram_text(name).ok_or_else(|| CoxeterError::UnknownBuiltin(name.to_string()))?)
}

/// The exact Gram matrix of `d`.
pub fn gram_matrix(d: &CoxeterDiagram) -> Result<ExactMatrix, CoxeterError> {
    d.gram_exact()
}

/// Floating signature of the Gram matrix at the default tolerance.
pub fn gram_signature(d: &CoxeterDiagram) -> Signature {
    d.gram_f64().signature(SIGNATURE_TOL).expect("positive default tolerance")
}

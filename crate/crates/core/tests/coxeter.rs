use std::collections::BTreeMap;
use std::time::Instant;

use geobound::coxeter::{
    arithmeticity, builtin_diagram, gram_signature, is_spherical, parse_diagram, polytope_vertices, restrict_to_facet,
    validate_q4_constraints, CoxeterDiagram, CoxeterError, Verdict, VertexKind,
};
use proptest::prelude::*;

fn named_edges(d: &CoxeterDiagram) -> BTreeMap<(String, String), String> {
    d.edges()
        .map(|(a, b, w)| {
            let (x, y) = (d.nodes()[a].clone(), d.nodes()[b].clone());
            ((x.clone().min(y.clone()), x.max(y)), format!("{w:?}"))
        })
        .collect()
}

#[test]
fn q4_gram_signature_and_vertex() {
    let start = Instant::now();
    let q4 = builtin_diagram("q4-fig4").unwrap();
    let sig = gram_signature(&q4);
    assert_eq!((sig.pos, sig.neg), (4, 1));
    let bcde = q4.subset(&["B", "C", "D", "E"]).unwrap();
    assert!(is_spherical(&q4, &bcde));
    assert!(validate_q4_constraints(&q4).passed());
    assert!(start.elapsed().as_secs_f64() < 1.0);
}

#[test]
fn facet_a_restriction_is_the_q3_diagram() {
    let q4 = builtin_diagram("q4-fig4").unwrap();
    let q3 = builtin_diagram("q3-fig6").unwrap();
    let r = restrict_to_facet(&q4, "A").unwrap();
    let mut nodes: Vec<&String> = r.nodes().iter().collect();
    nodes.sort();
    let mut expected: Vec<&String> = q3.nodes().iter().collect();
    expected.sort();
    assert_eq!(nodes, expected);
    assert_eq!(named_edges(&r), named_edges(&q3));
    let bc = r.weight(r.require("B").unwrap(), r.require("C").unwrap()).unwrap();
    assert_eq!(format!("{bc:?}"), format!("{:?}", q3.weight(0, 1).unwrap()));
    let sig = gram_signature(&r);
    assert_eq!((sig.pos, sig.neg), (3, 1));
}

#[test]
fn arithmeticity_verdicts() {
    let q3 = arithmeticity(&builtin_diagram("q3-fig6").unwrap());
    assert_eq!(q3.verdict, Verdict::NonArithmetic);
    assert!(q3.certificate.is_some());
    assert_eq!(arithmeticity(&builtin_diagram("orthoscheme-434").unwrap()).verdict, Verdict::Arithmetic);
    assert_eq!(arithmeticity(&builtin_diagram("orthoscheme-4334").unwrap()).verdict, Verdict::Arithmetic);
}

#[test]
fn orthoscheme_vertices() {
    let d = builtin_diagram("orthoscheme-434").unwrap();
    let v = polytope_vertices(&d, 3);
    let finite = v.iter().filter(|v| v.kind == VertexKind::Finite).count();
    let ideal = v.iter().filter(|v| v.kind == VertexKind::Ideal).count();
    // a tetrahedron whose vertex opposite A spans the affine chain 4-4
    assert_eq!((finite, ideal), (3, 1));
}

#[test]
fn parse_errors_carry_line_numbers() {
    match parse_diagram("A B 4\nB C 4\nA B 3") {
        Err(CoxeterError::DuplicateEdge { line, first, .. }) => assert_eq!((line, first), (3, 1)),
        other => panic!("{other:?}"),
    }
    match parse_diagram("A B 4\nA A 3") {
        Err(CoxeterError::SelfEdge { line, .. }) => assert_eq!(line, 2),
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse_diagram("A B 2"), Err(CoxeterError::UnsupportedLabel { line: 1, .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn invariants_survive_node_permutations(seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for name in ["q4-fig4", "q3-fig6"] {
            let d = builtin_diagram(name).unwrap();
            let mut perm: Vec<usize> = (0..d.len()).collect();
            perm.shuffle(&mut rng);
            let p = d.permuted(&perm);
            prop_assert_eq!(gram_signature(&p), gram_signature(&d));
            prop_assert_eq!(arithmeticity(&p).verdict, arithmeticity(&d).verdict);
            prop_assert_eq!(named_edges(&p), named_edges(&d));
            let dim = gram_signature(&d).pos;
            prop_assert_eq!(polytope_vertices(&p, dim).len(), polytope_vertices(&d, dim).len());
        }
    }
}

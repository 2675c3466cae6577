use std::time::Instant;

use geobound::geometry::{minkowski, orbit_polytope, symmetry_group, verify_right_angled};

#[test]
fn p3_combinatorics() {
    let start = Instant::now();
    let p3 = orbit_polytope("p3").unwrap();
    let p = &p3.polytope;
    let tags = p.facet_tags();
    assert_eq!(tags.iter().filter(|t| t.as_str() == "hexagon").count(), 4);
    assert_eq!(tags.iter().filter(|t| t.as_str() == "quadrilateral").count(), 12);
    assert_eq!(p.ideal_vertex_count(), 6);
    assert_eq!(symmetry_group(p).order, 24);
    assert!(p.is_right_angled());
    assert_eq!(p.f_vector(), vec![22, 36, 16]);
    assert!(start.elapsed().as_secs_f64() < 10.0);
}

#[test]
fn p3_hexagons_are_pairwise_tangent() {
    let p3 = orbit_polytope("p3").unwrap();
    let p = &p3.polytope;
    let hex: Vec<usize> = (0..p.num_facets()).filter(|&f| p.facet_tags()[f] == "hexagon").collect();
    for (k, &a) in hex.iter().enumerate() {
        for &b in &hex[k + 1..] {
            assert!(!p.adjacent(a, b));
            let x = minkowski(&p3.normals[a], &p3.normals[b]);
            assert!((x + 1.0).abs() < 1e-9, "hexagons {a}, {b}: {x}");
        }
    }
    assert!(verify_right_angled(p, &p3.normals).passed);
}

#[test]
fn p4_is_right_angled() {
    let start = Instant::now();
    let p4 = orbit_polytope("p4").unwrap();
    let r = verify_right_angled(&p4.polytope, &p4.normals);
    assert!(r.passed, "{r:?}");
    assert!(r.max_adjacent_product < 1e-9);
    assert!(r.inconsistent.is_empty());
    assert_eq!(p4.polytope.f_vector(), vec![192, 448, 320, 64]);
    for &(i, j) in &r.tangent {
        assert!((minkowski(&p4.normals[i], &p4.normals[j]) + 1.0).abs() < 1e-9);
    }
    assert!(start.elapsed().as_secs_f64() < 10.0);
}

use std::collections::BTreeMap;
use std::time::Instant;

use geobound::blocks::{
    block_cusp_census, boundary_component_codes, build_block, torus_cusp_components, verify_involution,
    verify_involution_map, Family,
};
use geobound::complex::{euler_characteristic, CuspShape};

mod common;
use common::cusp_oracle;

#[test]
fn arithmetic_block_invariants() {
    let start = Instant::now();
    let b = build_block(Family::Arithmetic).unwrap();
    let census = block_cusp_census(&b).unwrap();
    let expected: BTreeMap<CuspShape, usize> =
        [(CuspShape::Torus { h: 4 }, 6), (CuspShape::Annulus { h: 2 }, 12)].into_iter().collect();
    assert_eq!(census, expected);
    let oracle = cusp_oracle(&b.complex);
    assert_eq!(oracle.get(&(8, false)), Some(&6), "{oracle:?}");
    assert_eq!(oracle.values().sum::<usize>(), 18, "{oracle:?}");
    assert_eq!(oracle.iter().filter(|(k, _)| k.1).map(|(_, v)| v).sum::<usize>(), 12);
    assert_eq!(torus_cusp_components(&b.complex).unwrap().len(), 1);
    assert_eq!(b.complex.num_cells(), 16);
    assert_eq!(euler_characteristic(&b.complex).total, -4);
    assert!(start.elapsed().as_secs_f64() < 5.0);
}

#[test]
fn both_families_have_eight_isomorphic_components_and_a_free_involution() {
    let start = Instant::now();
    for family in [Family::Arithmetic, Family::NonArithmetic] {
        let b = build_block(family).unwrap();
        let codes = boundary_component_codes(&b).unwrap();
        assert_eq!(codes.len(), 8);
        assert!(codes.iter().all(|c| c == &codes[0]), "{family}");
        let r = verify_involution(&b);
        assert!(r.passed(), "{family}: {r:?}");
        for (j, comp) in b.components.iter().enumerate() {
            let image: Vec<(usize, usize)> = comp.iter().map(|&(c, f)| (b.iota[c], f)).collect();
            let target = &b.components[(j + 4) % 8];
            let mut a = image.clone();
            a.sort_unstable();
            let mut t = target.clone();
            t.sort_unstable();
            assert_eq!(a, t, "{family}: iota(C_{j})");
        }
    }
    assert!(start.elapsed().as_secs_f64() < 5.0);
}

#[test]
fn a_single_mirror_is_not_free() {
    for family in [Family::Arithmetic, Family::NonArithmetic] {
        let b = build_block(family).unwrap();
        for r in &b.mirrors {
            let report = verify_involution_map(&b, r);
            assert!(report.involution && report.automorphism && report.orientation_reversing);
            assert!(!report.fixed_point_free, "{family}");
        }
    }
}

#[test]
fn non_arithmetic_block_cusps() {
    let b = build_block(Family::NonArithmetic).unwrap();
    let census = block_cusp_census(&b).unwrap();
    assert!(census.keys().all(|s| !matches!(s, CuspShape::Other { .. })));
    let tori: usize = census.iter().filter(|(s, _)| matches!(s, CuspShape::Torus { .. })).map(|(_, n)| n).sum();
    let annuli: usize = census.iter().filter(|(s, _)| matches!(s, CuspShape::Annulus { .. })).map(|(_, n)| n).sum();
    let oracle = cusp_oracle(&b.complex);
    let closed: usize = oracle.iter().filter(|(k, _)| !k.1).map(|(_, v)| v).sum();
    let open: usize = oracle.iter().filter(|(k, _)| k.1).map(|(_, v)| v).sum();
    assert_eq!((tori, annuli), (closed, open), "{census:?} vs {oracle:?}");
    assert_eq!(b.complex.num_cells(), 64);
    assert_eq!(torus_cusp_components(&b.complex).unwrap().len(), 1);
}

//! Named verification suites, one per structural fact the census relies on.

use num_bigint::BigInt;
use serde::Serialize;

use crate::blocks::{
    block_cusp_census, boundary_component_codes, build_block, torus_cusp_components, verify_involution,
    verify_involution_map, Family,
};
use crate::complex::{census_string, cusp_census, cusp_links, CuspShape};
use crate::geometry::{orbit_polytope, symmetry_group, verify_right_angled};

use super::{run_census, CensusContext, CensusError};

pub const VERIFY_IDS: [&str; 7] =
    ["cusps-B", "cusps-MG", "involution", "recovery", "right-angled-P4", "combinatorics-P3", "volume-ratio"];

/// Census range used by the census-backed suites.
const VERIFY_MAX_N: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> VerifyCheck {
    VerifyCheck { name: name.into(), passed, detail: detail.into() }
}

/// Runs one suite by id.
pub fn verify(id: &str) -> Result<Vec<VerifyCheck>, CensusError> {
    match id {
        "cusps-B" => cusps_b(),
        "cusps-MG" => census_suite(Family::Arithmetic, |s, recs| {
            let bad = recs.iter().filter(|r| !r.flags.cusp_shapes).count();
            vec![
                check("records", !recs.is_empty(), format!("{} records, n <= {VERIFY_MAX_N}", recs.len())),
                check("cusp shapes", bad == 0, format!("{bad} records violate the torus shape rule")),
                check("all accepted", s.passed(), format!("{}/{} accepted", s.accepted, s.records)),
            ]
        }),
        "involution" => involution(),
        "recovery" => census_suite(Family::Arithmetic, |s, recs| {
            let bad = recs.iter().filter(|r| r.flags.recovery != Some(true)).count();
            vec![
                check("roundtrip", bad == 0 && !recs.is_empty(), format!("{} records, {bad} mismatches", recs.len())),
                check("distinct codes", s.injective, format!("{} codes for {} graphs", s.distinct_codes, s.accepted)),
            ]
        }),
        "right-angled-P4" => {
            let p4 = orbit_polytope("p4")?;
            let r = verify_right_angled(&p4.polytope, &p4.normals);
            Ok(vec![
                check(
                    "adjacent normals orthogonal",
                    r.passed,
                    format!("{} adjacent pairs, max |product| {:.3e}", r.adjacent, r.max_adjacent_product),
                ),
                check("f-vector", true, format!("{:?}", p4.polytope.f_vector())),
            ])
        }
        "combinatorics-P3" => {
            let p = orbit_polytope("p3")?.polytope;
            let count = |t: &str| p.facet_tags().iter().filter(|x| x.as_str() == t).count();
            let sym = symmetry_group(&p);
            Ok(vec![
                check("hexagons", count("hexagon") == 4, format!("{}", count("hexagon"))),
                check("quadrilaterals", count("quadrilateral") == 12, format!("{}", count("quadrilateral"))),
                check("ideal vertices", p.ideal_vertex_count() == 6, format!("{}", p.ideal_vertex_count())),
                check("symmetry order", sym.order == 24, format!("{}", sym.order)),
                check("right-angled", p.is_right_angled(), format!("f-vector {:?}", p.f_vector())),
            ])
        }
        "volume-ratio" => {
            let mut out = census_suite(Family::Arithmetic, volume_checks)?;
            out.extend(census_suite(Family::NonArithmetic, volume_checks)?);
            Ok(out)
        }
        other => Err(CensusError::UnknownCheck { id: other.to_string(), available: VERIFY_IDS.join(", ") }),
    }
}

fn volume_checks(s: &super::CensusSummary, recs: &[super::CensusRecord]) -> Vec<VerifyCheck> {
    let fam = &s.family;
    let doubling = recs.iter().all(|r| {
        let (w, d) = (r.chi4.parse::<BigInt>(), r.chi_double.parse::<BigInt>());
        matches!((w, d), (Ok(w), Ok(d)) if d == &w * 2) && r.vol_double.relative_diff(r.vol4.scale(2.0)) < 1e-9
    });
    let chi3 = recs.iter().all(|r| r.chi3 == 0);
    let bmatch = recs.iter().all(|r| r.flags.boundary_match && r.flags.corner_free);
    vec![
        check(
            format!("{fam}: K constant"),
            s.k_constant && !recs.is_empty(),
            format!("chi(W_G)/n = {}", s.chi_per_vertex.clone().unwrap_or_default()),
        ),
        check(format!("{fam}: chi(M_G) = 0"), chi3, ""),
        check(format!("{fam}: Vol(D) = 2 Vol(W)"), doubling, ""),
        check(format!("{fam}: boundary is M_G"), bmatch, ""),
    ]
}

fn census_suite(
    family: Family,
    f: impl Fn(&super::CensusSummary, &[super::CensusRecord]) -> Vec<VerifyCheck>,
) -> Result<Vec<VerifyCheck>, CensusError> {
    let ctx = CensusContext::new(family)?;
    let max_n = match family {
        Family::Arithmetic => VERIFY_MAX_N,
        Family::NonArithmetic => 6,
    };
    let mut recs = Vec::new();
    let summary = run_census(&ctx, max_n, &[], |r| recs.push(r.clone()));
    Ok(f(&summary, &recs))
}

fn cusps_b() -> Result<Vec<VerifyCheck>, CensusError> {
    let mut out = Vec::new();
    let a = build_block(Family::Arithmetic)?;
    let census = block_cusp_census(&a)?;
    let expected = [(CuspShape::Torus { h: 4 }, 6), (CuspShape::Annulus { h: 2 }, 12)].into_iter().collect();
    out.push(check("arithmetic B", census == expected, census_string(&census)));
    let prime = cusp_census(&cusp_links(&a.prime)?);
    let expected_prime = [(CuspShape::Annulus { h: 1 }, 6)].into_iter().collect();
    out.push(check("arithmetic B'", prime == expected_prime, census_string(&prime)));
    let groups = torus_cusp_components(&a.complex)?;
    out.push(check("torus incidence connected", groups.len() == 1, format!("{} components", groups.len())));
    let na = build_block(Family::NonArithmetic)?;
    let census = block_cusp_census(&na)?;
    let other = census.keys().any(|s| matches!(s, CuspShape::Other { .. }));
    out.push(check("non-arithmetic B", !other, census_string(&census)));
    Ok(out)
}

fn involution() -> Result<Vec<VerifyCheck>, CensusError> {
    let mut out = Vec::new();
    for family in [Family::Arithmetic, Family::NonArithmetic] {
        let b = build_block(family)?;
        let r = verify_involution(&b);
        out.push(check(format!("{family}: involution"), r.passed(), format!("{r:?}")));
        let codes = boundary_component_codes(&b)?;
        let same = codes.len() == 8 && codes.iter().all(|c| c == &codes[0]);
        out.push(check(format!("{family}: 8 isomorphic boundary components"), same, ""));
        let mirror = verify_involution_map(&b, &b.mirrors[0]);
        out.push(check(
            format!("{family}: a single mirror is not free"),
            !mirror.fixed_point_free,
            format!("{mirror:?}"),
        ));
    }
    Ok(out)
}

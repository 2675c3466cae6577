use std::f64::consts::PI;

use geobound::kernel::{
    ideal_octahedron_volume, is_positive_definite, lobachevsky, signature, ExactScalar, FloatMatrix, SymMatrix,
    LOBACHEVSKY_TOL,
};
use proptest::prelude::*;

mod common;
use common::lobachevsky_quadrature;

#[test]
fn octahedron_volume_matches_quadrature() {
    let v = ideal_octahedron_volume();
    assert!((v - 3.663862376).abs() < 1e-8, "{v}");
    assert!((v - 8.0 * lobachevsky_quadrature(PI / 4.0)).abs() < 1e-10);
}

#[test]
fn lobachevsky_special_values() {
    assert_eq!(lobachevsky(0.0, LOBACHEVSKY_TOL).unwrap(), 0.0);
    assert!(lobachevsky(PI / 2.0, LOBACHEVSKY_TOL).unwrap().abs() < 1e-14);
    // Λ(π/6) = (3/2) Λ(π/3) from the duplication identity
    let a = lobachevsky(PI / 6.0, LOBACHEVSKY_TOL).unwrap();
    let b = lobachevsky(PI / 3.0, LOBACHEVSKY_TOL).unwrap();
    assert!((a - 1.5 * b).abs() < 1e-12);
    assert!(lobachevsky(1.0, 0.0).is_err());
}

proptest! {
    #[test]
    fn duplication_identity(theta in -3.0f64..3.0) {
        let l = |t: f64| lobachevsky(t, LOBACHEVSKY_TOL).unwrap();
        prop_assert!((l(2.0 * theta) - 2.0 * l(theta) - 2.0 * l(theta + PI / 2.0)).abs() < 1e-10);
    }

    #[test]
    fn odd_and_periodic(theta in -3.0f64..3.0) {
        let l = |t: f64| lobachevsky(t, LOBACHEVSKY_TOL).unwrap();
        prop_assert!((l(-theta) + l(theta)).abs() < 1e-12);
        prop_assert!((l(theta + PI) - l(theta)).abs() < 1e-10);
    }

    #[test]
    fn series_matches_quadrature(theta in 0.05f64..1.5) {
        let s = lobachevsky(theta, LOBACHEVSKY_TOL).unwrap();
        prop_assert!((s - lobachevsky_quadrature(theta)).abs() < 1e-9);
    }

    #[test]
    fn exact_definiteness_agrees_with_eigenvalues(entries in prop::collection::vec(-4i64..=4, 10), diag in 0i64..8) {
        let n = 4;
        let mut k = 0;
        let mut rows = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in i..n {
                let v = if i == j { entries[k] + diag } else { entries[k] };
                rows[i][j] = v;
                rows[j][i] = v;
                k += 1;
            }
        }
        let exact = SymMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| ExactScalar::from_int(x)).collect()).collect(),
        ).unwrap();
        let float: FloatMatrix = exact.to_f64();
        let ev = float.eigenvalues();
        prop_assume!(ev.iter().all(|e| e.abs() > 1e-6));
        let sig = signature(&float, 1e-9).unwrap();
        prop_assert_eq!(is_positive_definite(&exact), sig.pos == n);
        prop_assert_eq!(sig.pos + sig.neg + sig.zero, n);
    }

    #[test]
    fn field_arithmetic(a in -20i64..20, b in -20i64..20, c in 1i64..20) {
        let s2 = ExactScalar::sqrt2();
        let s3 = ExactScalar::sqrt3();
        let x = &ExactScalar::from_int(a) + &(&ExactScalar::from_ratio(b, c) * &s2);
        let conj = &ExactScalar::from_int(a) - &(&ExactScalar::from_ratio(b, c) * &s2);
        let norm = &x * &conj;
        prop_assert!(norm.is_rational());
        prop_assert!((norm.to_f64() - x.to_f64() * conj.to_f64()).abs() < 1e-9);
        prop_assert_eq!(&s2 * &s3, &(&s3 * &s2) * &ExactScalar::one());
        prop_assert!((&(&s2 * &s3) * &(&s2 * &s3)).is_integer());
    }
}

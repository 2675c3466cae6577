//! The Lobachevsky function Λ(θ) = -∫₀^θ log|2 sin t| dt.

use std::f64::consts::PI;

use super::KernelError;

pub const DEFAULT_TOL: f64 = 1e-12;

/// ζ(2k) for k ≥ 1.
fn zeta_even(k: u32) -> f64 {
    match k {
        1 => PI * PI / 6.0,
        2 => PI.powi(4) / 90.0,
        _ => {
            // direct sum plus Euler–Maclaurin tail; error O(M^{-2k-3})
            let s = 2 * k as i32;
            let m = 64f64;
            let head: f64 = (1..64).map(|n| (n as f64).powi(-s)).sum();
            let sf = s as f64;
            head + m.powi(1 - s) / (sf - 1.0) + 0.5 * m.powi(-s) + sf * m.powi(-s - 1) / 12.0
        }
    }
}

/// Λ(θ), odd and π-periodic, with truncation error below `tol`.
///
/// Λ(θ) = ½ Cl₂(2θ) with Clausen's Cl₂ evaluated, after reduction of `x = 2θ`
/// to (-π, π], from `Cl₂(x) = x - x log|x| + x Σ_{k≥1} ζ(2k) / (k(2k+1)) · (x/2π)^{2k}`.
/// The ratio `(x/2π)² ≤ 1/4` makes the tail geometric, so the loop stops once the
/// bound on everything left over drops below `tol`.
pub fn lobachevsky(theta: f64, tol: f64) -> Result<f64, KernelError> {
    if !(tol > 0.0) {
        return Err(KernelError::NonPositiveTolerance(tol));
    }
    let mut x = (2.0 * theta) % (2.0 * PI);
    if x > PI {
        x -= 2.0 * PI;
    } else if x <= -PI {
        x += 2.0 * PI;
    }
    if x == 0.0 || x.abs() == PI {
        return Ok(0.0);
    }
    let r = (x / (2.0 * PI)).powi(2);
    let mut sum = 0.0;
    let mut pow = 1.0;
    let mut k = 1u32;
    loop {
        pow *= r;
        let kf = k as f64;
        sum += zeta_even(k) / (kf * (2.0 * kf + 1.0)) * pow;
        // tail ≤ |x| ζ(2) r^{k+1} / ((k+1)(2k+3)(1-r)), halved for Λ = Cl₂/2
        let tail = x.abs() * zeta_even(1) * pow * r / ((kf + 1.0) * (2.0 * kf + 3.0) * (1.0 - r)) / 2.0;
        if tail < tol || k > 400 {
            break;
        }
        k += 1;
    }
    let clausen = x - x * x.abs().ln() + x * sum;
    Ok(0.5 * clausen)
}

/// Volume of the ideal regular (right-angled) octahedron, `8 Λ(π/4)`.
pub fn ideal_octahedron_volume() -> f64 {
    8.0 * lobachevsky(PI / 4.0, DEFAULT_TOL).expect("positive tolerance")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_zeros() {
        assert_eq!(lobachevsky(0.0, 1e-12).unwrap(), 0.0);
        assert!(lobachevsky(PI / 2.0, 1e-12).unwrap().abs() < 1e-15);
        assert!(lobachevsky(PI, 1e-12).unwrap().abs() < 1e-15);
    }

    #[test]
    fn rejects_nonpositive_tolerance() {
        assert!(lobachevsky(1.0, 0.0).is_err());
        assert!(lobachevsky(1.0, -1.0).is_err());
    }

    #[test]
    fn known_maximum_at_pi_over_six() {
        // Λ(π/6) = (3/2) Λ(π/3), and the maximum Λ(π/6) ≈ 0.50747080320...
        let a = lobachevsky(PI / 6.0, 1e-14).unwrap();
        let b = lobachevsky(PI / 3.0, 1e-14).unwrap();
        assert!((a - 1.5 * b).abs() < 1e-12);
        assert!((a - 0.507_470_803_204_827_3).abs() < 1e-12);
    }

    #[test]
    fn odd_and_periodic() {
        for t in [0.1, 0.7, 1.3, 2.9] {
            let v = lobachevsky(t, 1e-13).unwrap();
            assert!((lobachevsky(-t, 1e-13).unwrap() + v).abs() < 1e-12);
            assert!((lobachevsky(t + PI, 1e-13).unwrap() - v).abs() < 1e-12);
        }
    }
}

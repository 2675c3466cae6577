//! Exact arithmetic in the biquadratic field ℚ(√2, √3).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An element `a + b√2 + c√3 + d√6` of ℚ(√2, √3) with rational coordinates.
///
/// Equality is exact. All Gram-matrix entries `-cos(π/m)` for `m ∈ {2, 3, 4, 6}`
/// and tangency (`-1`) live here.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub d: BigRational,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl ExactScalar {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        Self { a, b, c, d }
    }

    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(a: BigRational) -> Self {
        Self { a, b: BigRational::zero(), c: BigRational::zero(), d: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n, 1))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    /// Builds `a + b√2 + c√3 + d√6` from small integer fractions `(num, den)`.
    pub fn from_parts(a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64)) -> Self {
        Self { a: rat(a.0, a.1), b: rat(b.0, b.1), c: rat(c.0, c.1), d: rat(d.0, d.1) }
    }

    pub fn sqrt2() -> Self {
        Self::from_parts((0, 1), (1, 1), (0, 1), (0, 1))
    }

    pub fn sqrt3() -> Self {
        Self::from_parts((0, 1), (0, 1), (1, 1), (0, 1))
    }

    /// `cos(π/m)` for the labels whose cosines lie in this field.
    pub fn cos_pi_over(m: u32) -> Option<Self> {
        match m {
            2 => Some(Self::zero()),
            3 => Some(Self::from_ratio(1, 2)),
            4 => Some(Self::from_parts((0, 1), (1, 2), (0, 1), (0, 1))),
            6 => Some(Self::from_parts((0, 1), (0, 1), (1, 2), (0, 1))),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// The rational value, if the element is rational.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.a.is_integer()
    }

    pub fn to_f64(&self) -> f64 {
        let f = |q: &BigRational| q.to_f64().unwrap_or(f64::NAN);
        f(&self.a) + f(&self.b) * std::f64::consts::SQRT_2 + f(&self.c) * 3f64.sqrt() + f(&self.d) * 6f64.sqrt()
    }

    /// Splits `x = p + q√3` with `p, q ∈ ℚ(√2)` given as `(rational, √2-coefficient)`.
    fn split3(&self) -> (Quad2, Quad2) {
        (Quad2 { r: self.a.clone(), s: self.b.clone() }, Quad2 { r: self.c.clone(), s: self.d.clone() })
    }

    fn join3(p: Quad2, q: Quad2) -> Self {
        Self { a: p.r, b: p.s, c: q.r, d: q.s }
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let (p, q) = self.split3();
        // sign(p + q√3) from sign(p), sign(q) and sign(p² - 3q²).
        let sp = p.signum();
        let sq = q.signum();
        if sq == 0 {
            return sp;
        }
        if sp == 0 || sp == sq {
            return if sp == 0 { sq } else { sp };
        }
        let diff = p.mul(&p).sub(&q.mul(&q).scale(&rat(3, 1)));
        sp * diff.signum()
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // (p + q√3)^{-1} = (p - q√3) / (p² - 3q²), then invert in ℚ(√2).
        let (p, q) = self.split3();
        let norm = p.mul(&p).sub(&q.mul(&q).scale(&rat(3, 1)));
        let inv = norm.inverse()?;
        Some(Self::join3(p.mul(&inv), q.neg().mul(&inv)))
    }

    /// The parity vector of a monomial `r·√2^i·√3^j`, `r ≠ 0`: `(i, j)`.
    /// `None` if the element is zero or not a monomial.
    pub fn monomial_parity(&self) -> Option<(u8, u8)> {
        let nz = [!self.a.is_zero(), !self.b.is_zero(), !self.c.is_zero(), !self.d.is_zero()];
        match nz {
            [true, false, false, false] => Some((0, 0)),
            [false, true, false, false] => Some((1, 0)),
            [false, false, true, false] => Some((0, 1)),
            [false, false, false, true] => Some((1, 1)),
            _ => None,
        }
    }

    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        match (self - other).signum() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

/// Element `r + s√2` of ℚ(√2).
#[derive(Clone)]
struct Quad2 {
    r: BigRational,
    s: BigRational,
}

impl Quad2 {
    fn signum(&self) -> i32 {
        let sr = sign_rat(&self.r);
        let ss = sign_rat(&self.s);
        if ss == 0 {
            return sr;
        }
        if sr == 0 || sr == ss {
            return if sr == 0 { ss } else { sr };
        }
        let diff = &self.r * &self.r - &self.s * &self.s * rat(2, 1);
        sr * sign_rat(&diff)
    }

    fn mul(&self, o: &Quad2) -> Quad2 {
        Quad2 { r: &self.r * &o.r + &self.s * &o.s * rat(2, 1), s: &self.r * &o.s + &self.s * &o.r }
    }

    fn sub(&self, o: &Quad2) -> Quad2 {
        Quad2 { r: &self.r - &o.r, s: &self.s - &o.s }
    }

    fn neg(&self) -> Quad2 {
        Quad2 { r: -&self.r, s: -&self.s }
    }

    fn scale(&self, k: &BigRational) -> Quad2 {
        Quad2 { r: &self.r * k, s: &self.s * k }
    }

    fn inverse(&self) -> Option<Quad2> {
        let n = &self.r * &self.r - &self.s * &self.s * rat(2, 1);
        if n.is_zero() {
            return None;
        }
        Some(Quad2 { r: &self.r / &n, s: -&self.s / &n })
    }
}

fn sign_rat(q: &BigRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (q, unit) in [(&self.a, ""), (&self.b, "√2"), (&self.c, "√3"), (&self.d, "√6")] {
            if q.is_zero() {
                continue;
            }
            if unit.is_empty() {
                terms.push(q.to_string());
            } else if q.is_one() {
                terms.push(unit.to_string());
            } else if *q == -BigRational::one() {
                terms.push(format!("-{unit}"));
            } else {
                terms.push(format!("{q}{unit}"));
            }
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = terms[0].clone();
        for t in &terms[1..] {
            if let Some(rest) = t.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(t);
            }
        }
        write!(f, "{out}")
    }
}

impl Add<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, o: &ExactScalar) -> ExactScalar {
        ExactScalar { a: &self.a + &o.a, b: &self.b + &o.b, c: &self.c + &o.c, d: &self.d + &o.d }
    }
}

impl Sub<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, o: &ExactScalar) -> ExactScalar {
        ExactScalar { a: &self.a - &o.a, b: &self.b - &o.b, c: &self.c - &o.c, d: &self.d - &o.d }
    }
}

impl Mul<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, o: &ExactScalar) -> ExactScalar {
        let (x, y) = (self, o);
        let two = rat(2, 1);
        let three = rat(3, 1);
        let six = rat(6, 1);
        // basis products: √2√2 = 2, √3√3 = 3, √6√6 = 6, √2√3 = √6, √2√6 = 2√3, √3√6 = 3√2
        let a = &x.a * &y.a + &x.b * &y.b * &two + &x.c * &y.c * &three + &x.d * &y.d * &six;
        let b = &x.a * &y.b + &x.b * &y.a + (&x.c * &y.d + &x.d * &y.c) * &three;
        let c = &x.a * &y.c + &x.c * &y.a + (&x.b * &y.d + &x.d * &y.b) * &two;
        let d = &x.a * &y.d + &x.d * &y.a + &x.b * &y.c + &x.c * &y.b;
        ExactScalar { a, b, c, d }
    }
}

impl Div<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    /// Panics on division by zero, like integer division.
    fn div(self, o: &ExactScalar) -> ExactScalar {
        let inv = o.inverse().expect("division by zero in ℚ(√2,√3)");
        self * &inv
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar { a: -&self.a, b: -&self.b, c: -&self.c, d: -&self.d }
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, o: ExactScalar) -> ExactScalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, o: &ExactScalar) -> ExactScalar {
                (&self).$m(o)
            }
        }
        impl $tr<ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $m(self, o: ExactScalar) -> ExactScalar {
                self.$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, o: &ExactScalar) {
        *self = &*self + o;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosines_square_to_expected_rationals() {
        for (m, sq) in [(2, (0, 1)), (3, (1, 4)), (4, (1, 2)), (6, (3, 4))] {
            let c = ExactScalar::cos_pi_over(m).unwrap();
            assert_eq!(&c * &c, ExactScalar::from_ratio(sq.0, sq.1), "m = {m}");
            assert!((c.to_f64() - (std::f64::consts::PI / m as f64).cos()).abs() < 1e-15);
        }
        assert!(ExactScalar::cos_pi_over(5).is_none());
    }

    #[test]
    fn exact_sign_of_near_cancellation() {
        // 577/408 - √2 > 0 and 1.41421356 - √2 < 0
        let x = ExactScalar::from_ratio(577, 408) - ExactScalar::sqrt2();
        assert_eq!(x.signum(), 1);
        let y = ExactScalar::from_ratio(141421356, 100000000) - ExactScalar::sqrt2();
        assert_eq!(y.signum(), -1);
        // √2 + √3 - √6 - 1/2 ≈ 0.1966
        let z = ExactScalar::from_parts((-1, 2), (1, 1), (1, 1), (-1, 1));
        assert_eq!(z.signum(), 1);
        assert_eq!(ExactScalar::zero().signum(), 0);
    }

    #[test]
    fn inverse_of_general_element() {
        let x = ExactScalar::from_parts((1, 1), (2, 3), (-1, 5), (7, 2));
        let inv = x.inverse().unwrap();
        assert_eq!(&x * &inv, ExactScalar::one());
        assert!(ExactScalar::zero().inverse().is_none());
    }

    #[test]
    fn monomial_parities() {
        assert_eq!(ExactScalar::from_int(-2).monomial_parity(), Some((0, 0)));
        assert_eq!(ExactScalar::sqrt2().monomial_parity(), Some((1, 0)));
        assert_eq!((ExactScalar::sqrt2() * ExactScalar::sqrt3()).monomial_parity(), Some((1, 1)));
        assert_eq!((ExactScalar::sqrt2() + ExactScalar::one()).monomial_parity(), None);
    }

    #[test]
    fn display_is_readable() {
        let x = ExactScalar::from_parts((0, 1), (-1, 2), (0, 1), (0, 1));
        assert_eq!(x.to_string(), "-1/2√2");
        assert_eq!(ExactScalar::from_parts((1, 1), (0, 1), (-1, 1), (0, 1)).to_string(), "1 - √3");
    }
}

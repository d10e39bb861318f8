//! Exact complex-rational scalars and the float conversions used at the
//! numeric boundary.

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

/// Exact complex number with arbitrary-precision rational parts.
pub type ComplexRational = Complex<BigRational>;

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `re_num/re_den + i im_num/im_den`.
pub fn cq(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> ComplexRational {
    Complex::new(rat(re_num, re_den), rat(im_num, im_den))
}

pub fn real(r: BigRational) -> ComplexRational {
    Complex::new(r, BigRational::zero())
}

pub fn imag_unit() -> ComplexRational {
    Complex::new(BigRational::zero(), BigRational::one())
}

pub fn cq_int(n: i64) -> ComplexRational {
    real(int(n))
}

pub fn rat_to_f64(r: &BigRational) -> f64 {
    // BigRational::to_f64 handles huge numerators/denominators without overflow.
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn to_c64(z: &ComplexRational) -> Complex64 {
    Complex64::new(rat_to_f64(&z.re), rat_to_f64(&z.im))
}

/// Total order on exact complex numbers: real part first, then imaginary part.
pub fn cmp_cq(a: &ComplexRational, b: &ComplexRational) -> Ordering {
    a.re.cmp(&b.re).then_with(|| a.im.cmp(&b.im))
}

/// Renders a rational as `a` or `a/b`.
pub fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Renders a complex rational compactly, e.g. `3`, `-1/2*i`, `(1 - 1/2*i)`.
pub fn fmt_cq(z: &ComplexRational) -> String {
    let re0 = z.re.is_zero();
    let im0 = z.im.is_zero();
    let imag = |v: &BigRational| {
        if v.is_one() {
            "i".to_string()
        } else if (-v.clone()).is_one() {
            "-i".to_string()
        } else {
            format!("{}*i", fmt_rat(v))
        }
    };
    match (re0, im0) {
        (true, true) => "0".to_string(),
        (false, true) => fmt_rat(&z.re),
        (true, false) => imag(&z.im),
        (false, false) => {
            let sign = if z.im.is_negative() { "-" } else { "+" };
            format!("({} {} {})", fmt_rat(&z.re), sign, imag(&z.im.abs()))
        }
    }
}

/// A complex value with its exact form when one is known.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexScalar {
    pub approx: Complex64,
    pub exact: Option<ComplexRational>,
}

impl ComplexScalar {
    pub fn exact(z: ComplexRational) -> Self {
        ComplexScalar { approx: to_c64(&z), exact: Some(z) }
    }

    pub fn approximate(z: Complex64) -> Self {
        ComplexScalar { approx: z, exact: None }
    }
}

impl std::fmt::Display for ComplexScalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.exact {
            Some(z) => f.write_str(&fmt_cq(z)),
            None => write!(f, "{}", self.approx),
        }
    }
}

/// Exact binary value of a float, as a complex rational.
pub fn c64_to_cq(z: Complex64) -> Option<ComplexRational> {
    Some(Complex::new(BigRational::from_float(z.re)?, BigRational::from_float(z.im)?))
}

/// Four-integer tuple `[re_num, re_den, im_num, im_den]`.
pub fn cq_tuple(z: &ComplexRational) -> [BigInt; 4] {
    [
        z.re.numer().clone(),
        z.re.denom().clone(),
        z.im.numer().clone(),
        z.im.denom().clone(),
    ]
}

/// Parses `a`, `a/b` or a decimal such as `-0.25` into an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let t = text.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let n: BigInt = digits.parse().ok()?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let r = BigRational::new(n, d);
        return Some(if negative { -r } else { r });
    }
    t.parse::<BigInt>().ok().map(BigRational::from_integer)
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// by continued-fraction convergents. Stops early once the convergent is
/// within `1e-12 * max(1, |x|)`.
pub fn rationalize(x: f64, max_den: i64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let target_tol = 1e-12 * x.abs().max(1.0);
    let (mut h_prev, mut h) = (0i128, 1i128);
    let (mut k_prev, mut k) = (1i128, 0i128);
    let mut rest = x;
    for _ in 0..64 {
        let a = rest.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a_i = a as i128;
        let h_next = a_i * h + h_prev;
        let k_next = a_i * k + k_prev;
        if k_next > max_den as i128 {
            break;
        }
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
        if (x - h as f64 / k as f64).abs() <= target_tol {
            break;
        }
        let frac = rest - a;
        if frac.abs() < 1e-300 {
            break;
        }
        rest = 1.0 / frac;
    }
    if k == 0 {
        return None;
    }
    Some(BigRational::new(BigInt::from(h), BigInt::from(k)))
}

pub fn rationalize_complex(z: Complex64, max_den: i64) -> Option<ComplexRational> {
    Some(Complex::new(
        rationalize(z.re, max_den)?,
        rationalize(z.im, max_den)?,
    ))
}

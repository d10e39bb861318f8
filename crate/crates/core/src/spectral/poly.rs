//! Exact univariate polynomials over complex rationals, coefficients stored
//! in ascending degree.

use crate::adjoint::ComplexMatrix;
use crate::scalar::{int, real, to_c64, ComplexRational};
use num_complex::Complex64;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<ComplexRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<ComplexRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[ComplexRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&ComplexRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, z: &ComplexRational) -> ComplexRational {
        self.coeffs
            .iter()
            .rev()
            .fold(ComplexRational::zero(), |acc, c| acc * z + c)
    }

    pub fn to_c64(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(to_c64).collect()
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * real(int(k as i64)))
                .collect(),
        )
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => self.clone(),
            Some(lead) => {
                let inv = ComplexRational::one() / lead;
                UniPoly::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![ComplexRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let factor = rem.last().unwrap() / &lead;
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] = &rem[shift + j] - &factor * c;
            }
            quot[shift] = factor;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's square-free factorisation: `(factor, multiplicity)` pairs whose
    /// product (up to a constant) is `self`. Constant factors are dropped.
    pub fn square_free_factors(&self) -> Vec<(UniPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.div_rem(&a).0;
        let c = df.div_rem(&a).0;
        let mut d = &c - &b.derivative();
        let mut mult = 1;
        loop {
            let g = b.gcd(&d);
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), mult));
            }
            b = b.div_rem(&g).0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            let c = d.div_rem(&g).0;
            d = &c - &b.derivative();
            mult += 1;
        }
        out
    }
}

impl std::ops::Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = ComplexRational::zero();
        UniPoly::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&zero) - rhs.coeffs.get(k).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl std::ops::Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::new(vec![]);
        }
        let mut out = vec![ComplexRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + a * b;
            }
        }
        UniPoly::new(out)
    }
}

/// Characteristic polynomial `p(λ) = det(M − λI)`.
#[derive(Clone, Debug, PartialEq)]
pub enum CharPoly {
    Exact(UniPoly),
    /// Float Leverrier fallback when the matrix carries no exact mirror.
    Approximate(Vec<Complex64>),
}

impl CharPoly {
    pub fn is_exact(&self) -> bool {
        matches!(self, CharPoly::Exact(_))
    }

    pub fn exact(&self) -> Option<&UniPoly> {
        match self {
            CharPoly::Exact(p) => Some(p),
            CharPoly::Approximate(_) => None,
        }
    }

    pub fn to_c64(&self) -> Vec<Complex64> {
        match self {
            CharPoly::Exact(p) => p.to_c64(),
            CharPoly::Approximate(c) => c.clone(),
        }
    }
}

/// Faddeev–LeVerrier recurrence. Returns ascending coefficients of
/// `det(M − λI)`; exact when `m` has an exact mirror.
pub fn characteristic_polynomial(m: &ComplexMatrix) -> CharPoly {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    let n = m.rows();
    let sign_flip = n % 2 == 1;
    match m.exact() {
        Some(a) => {
            // det(λI − A) = λ^n + c_{n-1} λ^{n-1} + ... + c_0
            let mut c = vec![ComplexRational::zero(); n + 1];
            c[n] = ComplexRational::one();
            let mut mk = vec![ComplexRational::zero(); n * n];
            for k in 1..=n {
                // M_k = A M_{k-1} + c_{n-k+1} I
                let mut next = vec![ComplexRational::zero(); n * n];
                for i in 0..n {
                    for j in 0..n {
                        let mut acc = ComplexRational::zero();
                        for l in 0..n {
                            if !a[i * n + l].is_zero() && !mk[l * n + j].is_zero() {
                                acc += &a[i * n + l] * &mk[l * n + j];
                            }
                        }
                        next[i * n + j] = acc;
                    }
                    next[i * n + i] = &next[i * n + i] + &c[n - k + 1];
                }
                mk = next;
                // c_{n-k} = -tr(A M_k) / k
                let mut tr = ComplexRational::zero();
                for i in 0..n {
                    for l in 0..n {
                        tr += &a[i * n + l] * &mk[l * n + i];
                    }
                }
                c[n - k] = -tr / real(int(k as i64));
            }
            if sign_flip {
                c.iter_mut().for_each(|v| *v = -v.clone());
            }
            CharPoly::Exact(UniPoly::new(c))
        }
        None => {
            let a = m.entries();
            let mut c = vec![Complex64::new(0.0, 0.0); n + 1];
            c[n] = Complex64::new(1.0, 0.0);
            let mut mk = vec![Complex64::new(0.0, 0.0); n * n];
            for k in 1..=n {
                let mut next = vec![Complex64::new(0.0, 0.0); n * n];
                for i in 0..n {
                    for j in 0..n {
                        next[i * n + j] = (0..n).map(|l| a[i * n + l] * mk[l * n + j]).sum();
                    }
                    next[i * n + i] += c[n - k + 1];
                }
                mk = next;
                let tr: Complex64 = (0..n)
                    .flat_map(|i| (0..n).map(move |l| (i, l)))
                    .map(|(i, l)| a[i * n + l] * mk[l * n + i])
                    .sum();
                c[n - k] = -tr / k as f64;
            }
            if sign_flip {
                c.iter_mut().for_each(|v| *v = -*v);
            }
            CharPoly::Approximate(c)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{cq, cq_int};

    fn poly(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&v| cq_int(v)).collect())
    }

    #[test]
    fn identity_and_zero() {
        let p = characteristic_polynomial(&ComplexMatrix::identity(2));
        assert_eq!(p, CharPoly::Exact(poly(&[1, -2, 1])));
        let z = characteristic_polynomial(&ComplexMatrix::zeros(2));
        assert_eq!(z, CharPoly::Exact(poly(&[0, 0, 1])));
    }

    #[test]
    fn odd_dimension_has_negative_leading_coefficient() {
        let p = characteristic_polynomial(&ComplexMatrix::identity(3));
        // det(I − λI) = (1 − λ)^3
        assert_eq!(p, CharPoly::Exact(poly(&[1, -3, 3, -1])));
    }

    #[test]
    fn float_fallback_matches_exact() {
        let m = ComplexMatrix::from_exact_rows(vec![
            vec![cq(1, 1, 0, 1), cq(0, 1, 2, 1)],
            vec![cq(-1, 2, 0, 1), cq(3, 1, 1, 1)],
        ]);
        let exact = characteristic_polynomial(&m).to_c64();
        let float = characteristic_polynomial(&ComplexMatrix::from_floats(2, 2, m.entries().to_vec()));
        assert!(!float.is_exact());
        for (a, b) in exact.iter().zip(float.to_c64()) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn square_free_split() {
        // (λ − 1)^2 (λ + 2)
        let f = &(&poly(&[-1, 1]) * &poly(&[-1, 1])) * &poly(&[2, 1]);
        let parts = f.square_free_factors();
        assert_eq!(parts, vec![(poly(&[2, 1]), 1), (poly(&[-1, 1]), 2)]);
        // λ^2 alone
        assert_eq!(poly(&[0, 0, 1]).square_free_factors(), vec![(poly(&[0, 1]), 2)]);
        assert!(poly(&[5]).square_free_factors().is_empty());
    }

    #[test]
    fn division() {
        let f = poly(&[-1, 0, 1]);
        let (q, r) = f.div_rem(&poly(&[1, 1]));
        assert_eq!(q, poly(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(f.eval(&cq_int(3)), cq_int(8));
    }
}

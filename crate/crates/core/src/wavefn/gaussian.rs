//! Integrals `∫ P(x) exp(xᵀAx + bᵀx) dx` over ℝᴷ for complex symmetric `A`
//! with negative definite real part.
//!
//! Writing `M = −2A`, the integral is
//! `Π_k sqrt(2π/d_k) · exp(½ bᵀM⁻¹b) · E[P]` where `d_k` are the pivots of the
//! unpivoted LDLᵀ factorisation of `M` (integrating one variable at a time
//! fixes the square-root branch) and `E[x^α]` follows the Gaussian moment
//! recursion `E[x_j x^β] = μ_j E[x^β] + Σ_l C_jl β_l E[x^(β−e_l)]` with
//! `C = M⁻¹`, `μ = Cb`.

use super::poly::CommPoly;
use crate::scalar::{to_c64, ComplexRational};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::collections::HashMap;

/// Exact test that the symmetric rational matrix `r` is negative definite:
/// every leading principal minor of `−r` is positive.
pub fn is_negative_definite(k: usize, r: &[BigRational]) -> bool {
    let neg: Vec<BigRational> = r.iter().map(|v| -v.clone()).collect();
    (1..=k).all(|size| {
        let sub: Vec<BigRational> = (0..size)
            .flat_map(|i| (0..size).map(move |j| (i, j)))
            .map(|(i, j)| neg[i * k + j].clone())
            .collect();
        determinant(size, sub).is_positive()
    })
}

fn determinant(n: usize, mut a: Vec<BigRational>) -> BigRational {
    let mut det = BigRational::from_integer(BigInt::from(1));
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r * n + c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            for j in 0..n {
                a.swap(c * n + j, p * n + j);
            }
            det = -det;
        }
        let pivot = a[c * n + c].clone();
        det *= &pivot;
        for r in c + 1..n {
            let f = &a[r * n + c] / &pivot;
            if f.is_zero() {
                continue;
            }
            for j in c..n {
                let delta = &f * &a[c * n + j];
                a[r * n + j] -= delta;
            }
        }
    }
    det
}

/// Real part of a complex-rational matrix.
pub fn real_part(a: &[ComplexRational]) -> Vec<BigRational> {
    a.iter().map(|z| z.re.clone()).collect()
}

/// `∫ P(x) exp(xᵀAx + bᵀx) dx`. The caller guarantees `Re A` is negative
/// definite.
pub fn gaussian_integral(k: usize, poly: &CommPoly, quad: &[ComplexRational], lin: &[ComplexRational]) -> Complex64 {
    if poly.is_zero() {
        return Complex64::new(0.0, 0.0);
    }
    let m: Vec<Complex64> = quad.iter().map(|z| to_c64(z) * -2.0).collect();
    let b: Vec<Complex64> = lin.iter().map(to_c64).collect();

    // Unpivoted LDLᵀ; pivots of an accretive symmetric matrix stay accretive.
    let mut work = m.clone();
    let mut norm = Complex64::new(1.0, 0.0);
    for c in 0..k {
        let d = work[c * k + c];
        norm *= (Complex64::new(2.0 * std::f64::consts::PI, 0.0) / d).sqrt();
        for r in c + 1..k {
            let f = work[r * k + c] / d;
            for j in c..k {
                let delta = f * work[c * k + j];
                work[r * k + j] -= delta;
            }
        }
    }
    let cov = invert(k, &m);
    let mu: Vec<Complex64> = (0..k).map(|i| (0..k).map(|j| cov[i * k + j] * b[j]).sum()).collect();
    let shift: Complex64 = (0..k).map(|i| b[i] * mu[i]).sum::<Complex64>() * 0.5;
    norm *= shift.exp();

    let mut memo: HashMap<Vec<u32>, Complex64> = HashMap::new();
    let mut total = Complex64::new(0.0, 0.0);
    for (e, c) in poly.terms() {
        total += to_c64(c) * moment(e, &mu, &cov, k, &mut memo);
    }
    total * norm
}

fn moment(alpha: &[u32], mu: &[Complex64], cov: &[Complex64], k: usize, memo: &mut HashMap<Vec<u32>, Complex64>) -> Complex64 {
    let Some(j) = alpha.iter().position(|&a| a > 0) else {
        return Complex64::new(1.0, 0.0);
    };
    if let Some(v) = memo.get(alpha) {
        return *v;
    }
    let mut beta = alpha.to_vec();
    beta[j] -= 1;
    let mut value = mu[j] * moment(&beta, mu, cov, k, memo);
    for l in 0..k {
        if beta[l] > 0 {
            let mut gamma = beta.clone();
            gamma[l] -= 1;
            value += cov[j * k + l] * beta[l] as f64 * moment(&gamma, mu, cov, k, memo);
        }
    }
    memo.insert(alpha.to_vec(), value);
    value
}

/// Gauss–Jordan inverse with partial pivoting.
fn invert(k: usize, m: &[Complex64]) -> Vec<Complex64> {
    let mut a = m.to_vec();
    let mut inv = vec![Complex64::new(0.0, 0.0); k * k];
    for i in 0..k {
        inv[i * k + i] = Complex64::new(1.0, 0.0);
    }
    for c in 0..k {
        let p = (c..k)
            .max_by(|&x, &y| a[x * k + c].norm().partial_cmp(&a[y * k + c].norm()).unwrap())
            .unwrap();
        for j in 0..k {
            a.swap(c * k + j, p * k + j);
            inv.swap(c * k + j, p * k + j);
        }
        let d = a[c * k + c].inv();
        for j in 0..k {
            a[c * k + j] *= d;
            inv[c * k + j] *= d;
        }
        for r in 0..k {
            if r != c {
                let f = a[r * k + c];
                for j in 0..k {
                    let (da, di) = (f * a[c * k + j], f * inv[c * k + j]);
                    a[r * k + j] -= da;
                    inv[r * k + j] -= di;
                }
            }
        }
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{cq, rat};

    #[test]
    fn definiteness() {
        assert!(is_negative_definite(2, &[rat(-1, 1), rat(0, 1), rat(0, 1), rat(-1, 1)]));
        assert!(!is_negative_definite(2, &[rat(-1, 1), rat(0, 1), rat(0, 1), rat(0, 1)]));
        assert!(!is_negative_definite(2, &[rat(-1, 1), rat(0, 1), rat(0, 1), rat(1, 1)]));
        assert!(!is_negative_definite(2, &[rat(-1, 1), rat(2, 1), rat(2, 1), rat(-1, 1)]));
    }

    #[test]
    fn one_dimensional_closed_forms() {
        // ∫ exp(−x²) = sqrt(π); ∫ x² exp(−x²) = sqrt(π)/2
        let quad = [cq(-1, 1, 0, 1)];
        let lin = [cq(0, 1, 0, 1)];
        let sp = std::f64::consts::PI.sqrt();
        let v0 = gaussian_integral(1, &CommPoly::one(1), &quad, &lin);
        assert!((v0 - sp).norm() < 1e-14);
        let x2 = CommPoly::var(1, 1).mul(&CommPoly::var(1, 1));
        let v2 = gaussian_integral(1, &x2, &quad, &lin);
        assert!((v2 - sp / 2.0).norm() < 1e-14);
        // ∫ exp(−x² + x) = sqrt(π) e^{1/4}
        let v = gaussian_integral(1, &CommPoly::one(1), &quad, &[cq(1, 1, 0, 1)]);
        assert!((v - sp * 0.25f64.exp()).norm() < 1e-13);
    }

    #[test]
    fn complex_width_uses_principal_branch() {
        // ∫ exp(−(1 + i) x²) = sqrt(π / (1 + i))
        let v = gaussian_integral(1, &CommPoly::one(1), &[cq(-1, 1, -1, 1)], &[cq(0, 1, 0, 1)]);
        let expected = (Complex64::new(std::f64::consts::PI, 0.0) / Complex64::new(1.0, 1.0)).sqrt();
        assert!((v - expected).norm() < 1e-14);
    }
}

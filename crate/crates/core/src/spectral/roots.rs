//! Simultaneous polynomial root iteration (Aberth–Ehrlich) with a
//! deterministic starting circle.

use super::poly::UniPoly;
use crate::error::{Error, Result};
use num_complex::Complex64;

pub const MAX_SWEEPS: usize = 500;

/// Horner evaluation of `p` and `p'` at `z` (ascending coefficients).
fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

pub fn eval(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    eval_with_derivative(coeffs, z).0
}

/// `Σ |a_k| |z|^k`, the natural scale of rounding error in `p(z)`.
pub fn eval_scale(coeffs: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

fn trim(coeffs: &[Complex64]) -> &[Complex64] {
    let mut n = coeffs.len();
    while n > 0 && coeffs[n - 1] == Complex64::new(0.0, 0.0) {
        n -= 1;
    }
    &coeffs[..n]
}

/// All roots of a float polynomial, each listed once per multiplicity.
pub fn aberth(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let coeffs = trim(coeffs);
    if coeffs.len() < 2 {
        return Err(Error::NumericFailure("root finding needs a polynomial of degree >= 1".into()));
    }
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();

    // Fujiwara-style radius; every root lies within twice this bound.
    let radius = (0..n)
        .map(|k| monic[k].norm().powf(1.0 / (n - k) as f64))
        .fold(0.0, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();

    let mut converged = vec![false; n];
    for _ in 0..MAX_SWEEPS {
        for k in 0..n {
            if converged[k] {
                continue;
            }
            let (p, dp) = eval_with_derivative(&monic, z[k]);
            if p.norm() <= f64::EPSILON * eval_scale(&monic, z[k]) {
                converged[k] = true;
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.is_finite() {
                // Nudge off a critical point.
                let nudge = Complex64::new(1e-7, 1e-7) * (1.0 + z[k].norm());
                z[k] += nudge;
                continue;
            }
            z[k] -= step;
            if step.norm() <= 4.0 * f64::EPSILON * z[k].norm().max(f64::MIN_POSITIVE) {
                converged[k] = true;
            }
        }
        if converged.iter().all(|&c| c) {
            return Ok(z);
        }
    }
    let residuals: Vec<String> = z
        .iter()
        .map(|&r| format!("{:.3e}", eval(&monic, r).norm()))
        .collect();
    Err(Error::NumericFailure(format!(
        "root iteration did not converge after {MAX_SWEEPS} sweeps; residuals [{}]",
        residuals.join(", ")
    )))
}

/// Newton refinement against the full polynomial.
fn polish(coeffs: &[Complex64], mut z: Complex64) -> Complex64 {
    for _ in 0..3 {
        let (p, dp) = eval_with_derivative(coeffs, z);
        if dp.norm() == 0.0 {
            break;
        }
        let next = z - p / dp;
        if !next.is_finite() || eval(coeffs, next).norm() >= p.norm() {
            break;
        }
        z = next;
    }
    z
}

/// Merges roots closer than `tol · max(1, |r|)` into one root with summed
/// multiplicity.
pub fn cluster(roots: Vec<(Complex64, usize)>, tol: f64) -> Vec<(Complex64, usize)> {
    let mut out: Vec<(Complex64, usize)> = Vec::new();
    for (r, m) in roots {
        match out
            .iter_mut()
            .find(|(c, _)| (c - r).norm() <= tol * c.norm().max(r.norm()).max(1.0))
        {
            Some(slot) => {
                let total = slot.1 + m;
                slot.0 = (slot.0 * slot.1 as f64 + r * m as f64) / total as f64;
                slot.1 = total;
            }
            None => out.push((r, m)),
        }
    }
    out
}

/// Distinct roots with multiplicities of an exact polynomial.
///
/// The polynomial is first split into square-free factors so that each
/// iteration only sees simple roots; the results are then clustered at
/// `cluster_tol`.
pub fn roots(poly: &UniPoly, cluster_tol: f64) -> Result<Vec<(Complex64, usize)>> {
    if poly.degree().unwrap_or(0) < 1 {
        return Err(Error::NumericFailure("root finding needs a polynomial of degree >= 1".into()));
    }
    let full = poly.to_c64();
    let mut found = Vec::new();
    for (factor, mult) in poly.square_free_factors() {
        let fc = factor.to_c64();
        let simple = if fc.len() == 2 {
            vec![-fc[0] / fc[1]]
        } else {
            aberth(&fc)?.into_iter().map(|r| polish(&fc, r)).collect()
        };
        found.extend(simple.into_iter().map(|r| (r, mult)));
    }
    let merged = cluster(found, cluster_tol);
    check_residuals(&full, &merged)?;
    Ok(merged)
}

/// Root finding for a float-only polynomial; multiplicities come from
/// clustering alone.
pub fn roots_approximate(coeffs: &[Complex64], cluster_tol: f64) -> Result<Vec<(Complex64, usize)>> {
    let simple = aberth(coeffs)?;
    let merged = cluster(simple.into_iter().map(|r| (r, 1)).collect(), cluster_tol);
    Ok(merged)
}

fn check_residuals(coeffs: &[Complex64], roots: &[(Complex64, usize)]) -> Result<()> {
    for (r, _) in roots {
        let res = eval(coeffs, *r).norm();
        let scale = eval_scale(coeffs, *r);
        if res > 1e-9 * scale {
            return Err(Error::NumericFailure(format!(
                "root {r} has residual {res:.3e} above 1e-9 x scale {scale:.3e}"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{cq, cq_int};

    fn sorted(mut v: Vec<(Complex64, usize)>) -> Vec<(Complex64, usize)> {
        v.sort_by(|a, b| a.0.re.partial_cmp(&b.0.re).unwrap().then(a.0.im.partial_cmp(&b.0.im).unwrap()));
        v
    }

    #[test]
    fn lambda_squared() {
        let p = UniPoly::new(vec![cq_int(0), cq_int(0), cq_int(1)]);
        let r = roots(&p, 1e-8).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].1, 2);
        assert!(r[0].0.norm() < 1e-15);
    }

    #[test]
    fn quartic_with_complex_roots() {
        // (λ^2 + 1)(λ − 2)(λ + 1/2)
        let p = UniPoly::new(vec![cq_int(1), cq_int(0), cq_int(1)]);
        let q = &p * &UniPoly::new(vec![cq_int(-2), cq_int(1)]);
        let q = &q * &UniPoly::new(vec![cq(1, 2, 0, 1), cq_int(1)]);
        let r = sorted(roots(&q, 1e-8).unwrap());
        let expected = [
            Complex64::new(-0.5, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(2.0, 0.0),
        ];
        assert_eq!(r.len(), 4);
        for ((z, m), e) in r.iter().zip(expected) {
            assert_eq!(*m, 1);
            assert!((z - e).norm() < 1e-13, "{z} vs {e}");
        }
    }

    #[test]
    fn approximate_path_clusters_nothing_for_simple_roots() {
        let c = [Complex64::new(-1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        let r = sorted(roots_approximate(&c, 1e-8).unwrap());
        assert_eq!(r.len(), 2);
        assert!((r[0].0 + 1.0).norm() < 1e-14);
    }

    #[test]
    fn constant_polynomial_is_rejected() {
        assert!(roots(&UniPoly::new(vec![cq_int(3)]), 1e-8).is_err());
        assert!(aberth(&[Complex64::new(1.0, 0.0)]).is_err());
    }
}

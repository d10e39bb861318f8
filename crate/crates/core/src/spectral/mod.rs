//! Natural frequencies of an adjoint matrix: eigenvalues with multiplicities,
//! eigenvectors, defect detection and exact reconstruction of rational
//! eigen-data.
//!
//! The characteristic polynomial is computed exactly, its roots numerically.
//! A root is accepted as exact only when the continued-fraction candidate
//! annihilates the exact polynomial; its eigenvectors then come from exact
//! elimination on `M − λI`.

mod nullspace;
mod poly;
mod roots;

pub use nullspace::{nullspace_exact, nullspace_float};
pub use poly::{characteristic_polynomial, CharPoly, UniPoly};
pub use roots::{aberth, roots, roots_approximate, MAX_SWEEPS};

use crate::adjoint::{exact_json, ComplexMatrix};
use crate::error::{Error, Result};
use crate::scalar::{rationalize_complex, to_c64, ComplexRational};
use num_complex::Complex64;
use num_traits::Zero;
use serde_json::{json, Value};
use std::cmp::Ordering;

pub const DEFAULT_CLUSTER_TOL: f64 = 1e-8;
pub const DEFAULT_RANK_TOL: f64 = 1e-10;
pub const MAX_RECONSTRUCTION_DENOMINATOR: i64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Relative distance under which two roots are merged.
    pub cluster: f64,
    /// Relative pivot size under which a column is treated as dependent.
    pub rank: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { cluster: DEFAULT_CLUSTER_TOL, rank: DEFAULT_RANK_TOL }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NaturalFrequency {
    pub lambda: Complex64,
    pub lambda_exact: Option<ComplexRational>,
    pub algebraic_multiplicity: usize,
    pub geometric_multiplicity: usize,
    /// Eigenvector columns in basis order.
    pub eigenvectors: Vec<Vec<Complex64>>,
    /// Exact eigenvectors, present exactly when `lambda_exact` is.
    pub eigenvectors_exact: Option<Vec<Vec<ComplexRational>>>,
}

impl NaturalFrequency {
    pub fn is_defective(&self) -> bool {
        self.geometric_multiplicity < self.algebraic_multiplicity
    }

    pub fn to_json(&self) -> Value {
        let vecs: Vec<Value> = self
            .eigenvectors
            .iter()
            .map(|v| Value::Array(v.iter().map(|z| json!([z.re, z.im])).collect()))
            .collect();
        let mut out = json!({
            "lambda": [self.lambda.re, self.lambda.im],
            "lambda_exact": self.lambda_exact.as_ref().map(exact_json),
            "algebraic_multiplicity": self.algebraic_multiplicity,
            "geometric_multiplicity": self.geometric_multiplicity,
            "eigenvectors": vecs,
        });
        if let Some(ex) = &self.eigenvectors_exact {
            out["eigenvectors_exact"] = Value::Array(
                ex.iter()
                    .map(|v| Value::Array(v.iter().map(exact_json).collect()))
                    .collect(),
            );
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralResult {
    pub frequencies: Vec<NaturalFrequency>,
    pub char_poly: CharPoly,
    pub defective: bool,
}

impl SpectralResult {
    pub fn total_multiplicity(&self) -> usize {
        self.frequencies.iter().map(|f| f.algebraic_multiplicity).sum()
    }

    /// Largest distance from any `−λ*` to its nearest frequency. Adjoint
    /// matrices of Hermitian operators have this at rounding level.
    pub fn pairing_defect(&self) -> f64 {
        self.frequencies
            .iter()
            .map(|f| {
                let target = -f.lambda.conj();
                self.frequencies
                    .iter()
                    .map(|g| (g.lambda - target).norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    }

    pub fn has_pairing(&self, tol: f64) -> bool {
        self.pairing_defect() < tol
    }

    /// `Σ λ` counted with algebraic multiplicity.
    pub fn frequency_sum(&self) -> Complex64 {
        self.frequencies
            .iter()
            .map(|f| f.lambda * f.algebraic_multiplicity as f64)
            .sum()
    }

    pub fn all_exact(&self) -> bool {
        self.frequencies.iter().all(|f| f.lambda_exact.is_some())
    }

    pub fn to_json(&self) -> Value {
        let cp = match &self.char_poly {
            CharPoly::Exact(p) => json!({
                "exact": true,
                "coefficients": p.coeffs().iter().map(exact_json).collect::<Vec<_>>(),
            }),
            CharPoly::Approximate(c) => json!({
                "exact": false,
                "coefficients": c.iter().map(|z| json!([z.re, z.im])).collect::<Vec<_>>(),
            }),
        };
        json!({
            "characteristic_polynomial": cp,
            "defective": self.defective,
            "frequencies": self.frequencies.iter().map(NaturalFrequency::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Orders complex numbers by real part, then imaginary part; real parts
/// closer than `tol` relative are treated as equal.
pub fn cmp_frequency(a: Complex64, b: Complex64, tol: f64) -> Ordering {
    let scale = a.norm().max(b.norm()).max(1.0);
    if (a.re - b.re).abs() > tol * scale {
        a.re.partial_cmp(&b.re).unwrap_or(Ordering::Equal)
    } else {
        a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal)
    }
}

pub fn eigen_decompose(m: &ComplexMatrix) -> Result<SpectralResult> {
    eigen_decompose_with(m, Tolerances::default())
}

pub fn eigen_decompose_with(m: &ComplexMatrix, tol: Tolerances) -> Result<SpectralResult> {
    if !m.is_square() {
        return Err(Error::MatrixShape { left: m.rows(), right: m.cols() });
    }
    let n = m.rows();
    let char_poly = characteristic_polynomial(m);
    let found = match &char_poly {
        CharPoly::Exact(p) => roots(p, tol.cluster)?,
        CharPoly::Approximate(c) => roots_approximate(c, tol.cluster)?,
    };
    let norm = m.norm_inf();

    let mut frequencies = Vec::with_capacity(found.len());
    for (approx, algebraic) in found {
        let exact = match (&char_poly, m.exact()) {
            (CharPoly::Exact(p), Some(entries)) => reconstruct(p, entries, n, approx),
            _ => None,
        };
        let freq = match exact {
            Some((lambda_q, vectors)) => NaturalFrequency {
                lambda: to_c64(&lambda_q),
                lambda_exact: Some(lambda_q),
                algebraic_multiplicity: algebraic,
                geometric_multiplicity: vectors.len(),
                eigenvectors: vectors.iter().map(|v| v.iter().map(to_c64).collect()).collect(),
                eigenvectors_exact: Some(vectors),
            },
            None => {
                let shifted: Vec<Complex64> = (0..n * n)
                    .map(|idx| {
                        let z = m.entries()[idx];
                        if idx / n == idx % n { z - approx } else { z }
                    })
                    .collect();
                let vectors = nullspace_float(n, n, &shifted, tol.rank);
                let bound = 1e-10 * norm.max(f64::MIN_POSITIVE);
                for v in &vectors {
                    let r = m.apply(v);
                    let residual = r
                        .iter()
                        .zip(v)
                        .map(|(mv, vi)| (mv - approx * vi).norm())
                        .fold(0.0, f64::max);
                    if residual >= bound {
                        return Err(Error::NumericFailure(format!(
                            "eigenvector residual {residual:.3e} at lambda = {approx} exceeds {bound:.3e}"
                        )));
                    }
                }
                NaturalFrequency {
                    lambda: approx,
                    lambda_exact: None,
                    algebraic_multiplicity: algebraic,
                    geometric_multiplicity: vectors.len(),
                    eigenvectors: vectors,
                    eigenvectors_exact: None,
                }
            }
        };
        if freq.geometric_multiplicity == 0 || freq.geometric_multiplicity > freq.algebraic_multiplicity {
            return Err(Error::NumericFailure(format!(
                "inconsistent multiplicities at lambda = {}: algebraic {}, geometric {}",
                freq.lambda, freq.algebraic_multiplicity, freq.geometric_multiplicity
            )));
        }
        frequencies.push(freq);
    }
    frequencies.sort_by(|a, b| cmp_frequency(a.lambda, b.lambda, tol.cluster));
    let defective = frequencies.iter().any(NaturalFrequency::is_defective);
    Ok(SpectralResult { frequencies, char_poly, defective })
}

/// Exact eigenvalue and eigenvectors near `approx`, if a small-denominator
/// rational candidate is an exact root.
fn reconstruct(
    p: &UniPoly,
    entries: &[ComplexRational],
    n: usize,
    approx: Complex64,
) -> Option<(ComplexRational, Vec<Vec<ComplexRational>>)> {
    let candidate = rationalize_complex(approx, MAX_RECONSTRUCTION_DENOMINATOR)?;
    if !p.eval(&candidate).is_zero() {
        return None;
    }
    let mut shifted = entries.to_vec();
    for i in 0..n {
        shifted[i * n + i] = &shifted[i * n + i] - &candidate;
    }
    let vectors = nullspace_exact(n, n, &shifted);
    if vectors.is_empty() {
        return None;
    }
    Some((candidate, vectors))
}

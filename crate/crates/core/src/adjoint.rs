//! Adjoint (regular) matrix representation of quadratic Hamiltonians.
//!
//! For a quadratic `H` and basis `O = [x_1..x_K, p_1..p_K]` the commutator
//! `[H, O_i]` is again linear, `[H, O_i] = Σ_j H_ji O_j`. The coefficient of
//! `O_j` lands in row `j`, column `i`, so `(𝐇 − λ𝐈)𝐂 = 0` acts directly on the
//! coefficient column of `Z = Σ c_i O_i`.

use crate::error::{Error, Result};
use crate::scalar::{cq_tuple, to_c64, ComplexRational};
use crate::weyl::{BasisIndex, WeylPolynomial};
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde_json::{json, Value};

/// Dense row-major complex matrix, optionally carrying the exact
/// complex-rational entries it was converted from.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
    exact: Option<Vec<ComplexRational>>,
}

impl ComplexMatrix {
    pub fn from_exact(rows: usize, cols: usize, exact: Vec<ComplexRational>) -> Self {
        assert_eq!(exact.len(), rows * cols);
        let entries = exact.iter().map(to_c64).collect();
        ComplexMatrix { rows, cols, entries, exact: Some(exact) }
    }

    pub fn from_floats(rows: usize, cols: usize, entries: Vec<Complex64>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        ComplexMatrix { rows, cols, entries, exact: None }
    }

    pub fn from_exact_rows(rows: Vec<Vec<ComplexRational>>) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == m), "ragged matrix");
        ComplexMatrix::from_exact(n, m, rows.into_iter().flatten().collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut e = vec![ComplexRational::zero(); n * n];
        for i in 0..n {
            e[i * n + i] = ComplexRational::one();
        }
        ComplexMatrix::from_exact(n, n, e)
    }

    pub fn zeros(n: usize) -> Self {
        ComplexMatrix::from_exact(n, n, vec![ComplexRational::zero(); n * n])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn exact(&self) -> Option<&[ComplexRational]> {
        self.exact.as_deref()
    }

    pub fn exact_get(&self, i: usize, j: usize) -> Option<&ComplexRational> {
        self.exact.as_ref().map(|e| &e[i * self.cols + j])
    }

    /// Infinity norm (maximum absolute row sum).
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn trace_exact(&self) -> Option<ComplexRational> {
        let e = self.exact.as_ref()?;
        Some(
            (0..self.rows.min(self.cols))
                .map(|i| e[i * self.cols + i].clone())
                .fold(ComplexRational::zero(), |a, b| a + b),
        )
    }

    /// `self · v` in floating point.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn apply_exact(&self, v: &[ComplexRational]) -> Option<Vec<ComplexRational>> {
        let e = self.exact.as_ref()?;
        assert_eq!(v.len(), self.cols);
        Some(
            (0..self.rows)
                .map(|i| {
                    (0..self.cols)
                        .map(|j| &e[i * self.cols + j] * &v[j])
                        .fold(ComplexRational::zero(), |a, b| a + b)
                })
                .collect(),
        )
    }

    /// Product, exact when both operands are exact.
    pub fn multiply(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != other.rows {
            return Err(Error::MatrixShape { left: self.cols, right: other.rows });
        }
        let (n, m, p) = (self.rows, self.cols, other.cols);
        if let (Some(a), Some(b)) = (&self.exact, &other.exact) {
            let mut out = Vec::with_capacity(n * p);
            for i in 0..n {
                for j in 0..p {
                    let mut acc = ComplexRational::zero();
                    for k in 0..m {
                        acc += &a[i * m + k] * &b[k * p + j];
                    }
                    out.push(acc);
                }
            }
            return Ok(ComplexMatrix::from_exact(n, p, out));
        }
        let mut out = Vec::with_capacity(n * p);
        for i in 0..n {
            for j in 0..p {
                out.push((0..m).map(|k| self.get(i, k) * other.get(k, j)).sum());
            }
        }
        Ok(ComplexMatrix::from_floats(n, p, out))
    }

    pub fn subtract(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::MatrixShape { left: self.rows, right: other.rows });
        }
        if let (Some(a), Some(b)) = (&self.exact, &other.exact) {
            let e = a.iter().zip(b).map(|(x, y)| x - y).collect();
            return Ok(ComplexMatrix::from_exact(self.rows, self.cols, e));
        }
        let e = self.entries.iter().zip(&other.entries).map(|(x, y)| x - y).collect();
        Ok(ComplexMatrix::from_floats(self.rows, self.cols, e))
    }

    /// `{"dim": n, "entries": [[re, im], ...]}`, row-major.
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self.entries.iter().map(|z| json!([z.re, z.im])).collect();
        let mut v = json!({ "dim": self.rows, "entries": entries });
        if let Some(e) = &self.exact {
            let exact: Vec<Value> = e.iter().map(exact_json).collect();
            v["exact"] = Value::Array(exact);
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<ComplexMatrix> {
        let bad = || Error::Input("matrix JSON must be {\"dim\": n, \"entries\": [[re, im], ...]}".into());
        let dim = v["dim"].as_u64().ok_or_else(bad)? as usize;
        let raw = v["entries"].as_array().ok_or_else(bad)?;
        if raw.len() != dim * dim {
            return Err(bad());
        }
        let entries = raw
            .iter()
            .map(|pair| {
                let re = pair.get(0).and_then(Value::as_f64).ok_or_else(bad)?;
                let im = pair.get(1).and_then(Value::as_f64).ok_or_else(bad)?;
                Ok(Complex64::new(re, im))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ComplexMatrix::from_floats(dim, dim, entries))
    }
}

/// Exact scalar as `[re_num, re_den, im_num, im_den]`; integers that do not
/// fit in 64 bits are emitted as decimal strings.
pub fn exact_json(z: &ComplexRational) -> Value {
    let parts: Vec<Value> = cq_tuple(z)
        .iter()
        .map(|n| match i64::try_from(n) {
            Ok(v) => json!(v),
            Err(_) => json!(n.to_string()),
        })
        .collect();
    Value::Array(parts)
}

/// A validated Hermitian operator with only degree-2 and degree-0 terms.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticHamiltonian {
    op: WeylPolynomial,
    offset: ComplexRational,
}

impl QuadraticHamiltonian {
    pub fn op(&self) -> &WeylPolynomial {
        &self.op
    }

    pub fn num_modes(&self) -> usize {
        self.op.num_modes()
    }

    /// Degree-0 part; shifts every energy but no frequency.
    pub fn offset(&self) -> &ComplexRational {
        &self.offset
    }
}

pub fn validate_quadratic(op: WeylPolynomial) -> Result<QuadraticHamiltonian> {
    let offending: Vec<String> = op
        .terms()
        .filter(|(m, _)| !matches!(m.degree(), 0 | 2))
        .map(|(m, c)| WeylPolynomial::from_terms(op.num_modes(), [(m.clone(), c.clone())]).to_string())
        .collect();
    if !offending.is_empty() {
        return Err(Error::NotQuadratic { terms: offending.join(", ") });
    }
    let residual = &op - &op.dagger();
    if !residual.is_zero() {
        return Err(Error::NotHermitian { residual: residual.to_string() });
    }
    let offset = op.constant_term();
    Ok(QuadraticHamiltonian { op, offset })
}

/// Exact adjoint matrix of `h`: column `i` holds the coefficients of `[H, O_i]`.
pub fn adjoint_matrix(h: &QuadraticHamiltonian) -> Result<ComplexMatrix> {
    adjoint_of_operator(h.op())
}

/// Adjoint matrix of any operator whose commutators with the basis stay
/// linear (used for symmetry operators that need not be Hermitian).
pub fn adjoint_of_operator(op: &WeylPolynomial) -> Result<ComplexMatrix> {
    let k = op.num_modes();
    let n = 2 * k;
    let mut exact = vec![ComplexRational::zero(); n * n];
    for (i, b) in BasisIndex::all(k).into_iter().enumerate() {
        let comm = op.commutator(&WeylPolynomial::generator(k, b))?;
        if comm.terms().any(|(m, _)| m.degree() != 1) {
            return Err(Error::Verification {
                stage: "adjoint",
                detail: format!("[H, {}] = {} is not linear in the basis", b.name(Default::default()), comm),
            });
        }
        for (j, c) in comm.linear_coefficients().into_iter().enumerate() {
            exact[j * n + i] = c;
        }
    }
    Ok(ComplexMatrix::from_exact(n, n, exact))
}

/// Whether `AB − BA` vanishes: exactly when both carry exact entries,
/// otherwise to a max-abs entry below `1e-12`.
pub fn matrices_commute(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<bool> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::MatrixShape { left: a.rows(), right: b.rows() });
    }
    let diff = a.multiply(b)?.subtract(&b.multiply(a)?)?;
    Ok(match diff.exact() {
        Some(e) => e.iter().all(Zero::is_zero),
        None => diff.entries().iter().all(|z| z.norm() < 1e-12),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{cq, imag_unit};

    fn oscillator() -> WeylPolynomial {
        let half = cq(1, 2, 0, 1);
        (&WeylPolynomial::p(1, 1).pow(2) + &WeylPolynomial::x(1, 1).pow(2)).scale(&half)
    }

    #[test]
    fn oscillator_adjoint_matrix() {
        // [H, x] = -i p, [H, p] = i x
        let h = validate_quadratic(oscillator()).unwrap();
        let m = adjoint_matrix(&h).unwrap();
        let i = imag_unit();
        let expected = ComplexMatrix::from_exact_rows(vec![
            vec![ComplexRational::zero(), i.clone()],
            vec![-i, ComplexRational::zero()],
        ]);
        assert_eq!(m, expected);
    }

    #[test]
    fn free_particle_is_nilpotent() {
        let h = validate_quadratic(WeylPolynomial::p(1, 1).pow(2).scale(&cq(1, 2, 0, 1))).unwrap();
        let m = adjoint_matrix(&h).unwrap();
        let expected = ComplexMatrix::from_exact_rows(vec![
            vec![ComplexRational::zero(), ComplexRational::zero()],
            vec![-imag_unit(), ComplexRational::zero()],
        ]);
        assert_eq!(m, expected);
        let sq = m.multiply(&m).unwrap();
        assert!(sq.exact().unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn rejects_non_quadratic_and_non_hermitian() {
        let x = WeylPolynomial::x(1, 1);
        match validate_quadratic(x.pow(3)) {
            Err(Error::NotQuadratic { terms }) => assert_eq!(terms, "x1^3"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(validate_quadratic(x.clone()), Err(Error::NotQuadratic { .. })));
        let xp = &x * &WeylPolynomial::p(1, 1);
        assert!(matches!(validate_quadratic(xp), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn constant_offset_is_recorded_not_represented() {
        let shifted = &oscillator() + &WeylPolynomial::scalar(1, cq(3, 1, 0, 1));
        let h = validate_quadratic(shifted).unwrap();
        assert_eq!(h.offset(), &cq(3, 1, 0, 1));
        let base = adjoint_matrix(&validate_quadratic(oscillator()).unwrap()).unwrap();
        assert_eq!(adjoint_matrix(&h).unwrap(), base);
    }

    #[test]
    fn commuting_matrices() {
        let n = ComplexMatrix::from_exact_rows(vec![
            vec![ComplexRational::zero(), ComplexRational::one()],
            vec![ComplexRational::zero(), ComplexRational::zero()],
        ]);
        let t = ComplexMatrix::from_exact_rows(vec![
            vec![ComplexRational::zero(), ComplexRational::zero()],
            vec![ComplexRational::one(), ComplexRational::zero()],
        ]);
        assert!(!matrices_commute(&n, &t).unwrap());
        assert!(matrices_commute(&n, &ComplexMatrix::identity(2)).unwrap());
        assert!(matrices_commute(&n, &ComplexMatrix::identity(3)).is_err());
        let nf = ComplexMatrix::from_floats(2, 2, n.entries().to_vec());
        assert!(!matrices_commute(&nf, &t).unwrap());
    }

    #[test]
    fn json_round_trip_of_float_entries() {
        let m = adjoint_matrix(&validate_quadratic(oscillator()).unwrap()).unwrap();
        let v = m.to_json();
        assert_eq!(v["dim"], 2);
        assert_eq!(v["entries"][1], json!([0.0, 1.0]));
        assert_eq!(v["exact"][1], json!([0, 1, 1, 1]));
        let back = ComplexMatrix::from_json(&v).unwrap();
        assert_eq!(back.entries(), m.entries());
    }
}

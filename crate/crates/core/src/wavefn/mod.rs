//! Gaussian-polynomial wavefunctions and the Schrödinger action of Weyl
//! operators on them (`x_j` multiplies, `p_j = −i ∂/∂x_j`).
//!
//! A function is a finite sum `Σ P_t(x) exp(xᵀS_t x + ℓ_tᵀx)` with distinct
//! exponents. Derivatives never leave a term's exponent, so the class is
//! closed under every normal-ordered monomial.

mod gaussian;
mod poly;

pub use gaussian::{gaussian_integral, is_negative_definite};
pub use poly::CommPoly;

use crate::adjoint::{exact_json, QuadraticHamiltonian};
use crate::error::{Error, Result};
use crate::ladders::LadderOperator;
use crate::scalar::{cmp_cq, fmt_cq, int, real, ComplexRational};
use crate::weyl::WeylPolynomial;
use num_complex::{Complex, Complex64};
use num_traits::{One, Zero};
use serde_json::{json, Value};
use std::cmp::Ordering;
use std::fmt;

/// Exponent `xᵀSx + ℓᵀx` with symmetric `S` (row-major, `K × K`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exponent {
    pub quad: Vec<ComplexRational>,
    pub lin: Vec<ComplexRational>,
}

impl Exponent {
    pub fn num_modes(&self) -> usize {
        self.lin.len()
    }

    pub fn diagonal(entries: &[ComplexRational]) -> Self {
        let k = entries.len();
        let mut quad = vec![ComplexRational::zero(); k * k];
        for (i, e) in entries.iter().enumerate() {
            quad[i * k + i] = e.clone();
        }
        Exponent { quad, lin: vec![ComplexRational::zero(); k] }
    }

    fn is_symmetric(&self) -> bool {
        let k = self.num_modes();
        self.quad.len() == k * k && (0..k).all(|i| (0..k).all(|j| self.quad[i * k + j] == self.quad[j * k + i]))
    }

    /// `∂Q/∂x_j = 2(Sx)_j + ℓ_j` as a polynomial.
    fn gradient(&self, j: usize) -> CommPoly {
        let k = self.num_modes();
        let mut g = CommPoly::constant(k, self.lin[j].clone());
        let two = real(int(2));
        for l in 0..k {
            g.add_assign(&CommPoly::var(k, l + 1).scale(&(&self.quad[j * k + l] * &two)));
        }
        g
    }

    fn conj(&self) -> Exponent {
        Exponent {
            quad: self.quad.iter().map(|z| z.conj()).collect(),
            lin: self.lin.iter().map(|z| z.conj()).collect(),
        }
    }

    fn plus(&self, other: &Exponent) -> Exponent {
        Exponent {
            quad: self.quad.iter().zip(&other.quad).map(|(a, b)| a + b).collect(),
            lin: self.lin.iter().zip(&other.lin).map(|(a, b)| a + b).collect(),
        }
    }

    fn cmp_key(&self, other: &Exponent) -> Ordering {
        self.quad
            .iter()
            .chain(&self.lin)
            .zip(other.quad.iter().chain(&other.lin))
            .map(|(a, b)| cmp_cq(a, b))
            .find(|o| *o != Ordering::Equal)
            .unwrap_or(Ordering::Equal)
    }

    /// `|exp(Q)|²` decays in every direction.
    fn is_decaying(&self) -> bool {
        let k = self.num_modes();
        let doubled: Vec<_> = self.quad.iter().map(|z| &z.re + &z.re).collect();
        is_negative_definite(k, &doubled)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "S": self.quad.iter().map(exact_json).collect::<Vec<_>>(),
            "l": self.lin.iter().map(exact_json).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianTerm {
    pub poly: CommPoly,
    pub exponent: Exponent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianPolyFunction {
    num_modes: usize,
    terms: Vec<GaussianTerm>,
}

impl GaussianPolyFunction {
    pub fn zero(num_modes: usize) -> Self {
        GaussianPolyFunction { num_modes, terms: Vec::new() }
    }

    /// `poly(x) · exp(xᵀSx + ℓᵀx)`; `S` must be symmetric.
    pub fn new(poly: CommPoly, exponent: Exponent) -> Result<Self> {
        let k = exponent.num_modes();
        if !exponent.is_symmetric() {
            return Err(Error::Precondition("exponent matrix S must be symmetric and K x K".into()));
        }
        if poly.num_vars() != k {
            return Err(Error::Dimension { left: k, right: poly.num_vars() });
        }
        let mut f = GaussianPolyFunction::zero(k);
        f.push(GaussianTerm { poly, exponent });
        Ok(f)
    }

    /// Pure Gaussian `exp(xᵀSx + ℓᵀx)`.
    pub fn gaussian(exponent: Exponent) -> Result<Self> {
        let k = exponent.num_modes();
        GaussianPolyFunction::new(CommPoly::one(k), exponent)
    }

    pub fn num_modes(&self) -> usize {
        self.num_modes
    }

    pub fn terms(&self) -> &[GaussianTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn push(&mut self, t: GaussianTerm) {
        if t.poly.is_zero() {
            return;
        }
        match self.terms.binary_search_by(|e| e.exponent.cmp_key(&t.exponent)) {
            Ok(i) => {
                self.terms[i].poly.add_assign(&t.poly);
                if self.terms[i].poly.is_zero() {
                    self.terms.remove(i);
                }
            }
            Err(i) => self.terms.insert(i, t),
        }
    }

    pub fn add(&self, other: &GaussianPolyFunction) -> Result<GaussianPolyFunction> {
        if self.num_modes != other.num_modes {
            return Err(Error::Dimension { left: self.num_modes, right: other.num_modes });
        }
        let mut out = self.clone();
        for t in &other.terms {
            out.push(t.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &ComplexRational) -> GaussianPolyFunction {
        let mut out = GaussianPolyFunction::zero(self.num_modes);
        for t in &self.terms {
            out.push(GaussianTerm { poly: t.poly.scale(c), exponent: t.exponent.clone() });
        }
        out
    }

    /// The scalar `c` with `self == c · other`, if one exists.
    pub fn ratio_to(&self, other: &GaussianPolyFunction) -> Option<ComplexRational> {
        let first = other.terms.first()?;
        let (e, c) = first.poly.first_term()?;
        let mine = self
            .terms
            .iter()
            .find(|t| t.exponent == first.exponent)
            .map(|t| t.poly.coeff(e))
            .unwrap_or_else(ComplexRational::zero);
        let ratio = mine / c;
        (other.scale(&ratio) == *self).then_some(ratio)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|t| {
                let poly: Vec<Value> = t
                    .poly
                    .terms()
                    .map(|(e, c)| json!({ "exponents": e, "coeff": exact_json(c) }))
                    .collect();
                let mut v = t.exponent.to_json();
                v["poly"] = Value::Array(poly);
                v
            })
            .collect();
        json!({ "num_modes": self.num_modes, "terms": terms })
    }
}

impl fmt::Display for GaussianPolyFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let k = self.num_modes;
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let mut q = Vec::new();
                for i in 0..k {
                    for j in i..k {
                        let mut c = t.exponent.quad[i * k + j].clone();
                        if i != j {
                            c = &c + &t.exponent.quad[j * k + i];
                        }
                        if !c.is_zero() {
                            let mono = if i == j { format!("x{}^2", i + 1) } else { format!("x{}*x{}", i + 1, j + 1) };
                            q.push(format!("{}*{}", fmt_cq(&c), mono));
                        }
                    }
                }
                for (j, c) in t.exponent.lin.iter().enumerate() {
                    if !c.is_zero() {
                        q.push(format!("{}*x{}", fmt_cq(c), j + 1));
                    }
                }
                let exp = if q.is_empty() { "0".to_string() } else { q.join(" + ") };
                format!("({})*exp({})", t.poly, exp)
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `(−i)^n`
fn minus_i_pow(n: u32) -> ComplexRational {
    let (o, z) = (num_rational::BigRational::one, num_rational::BigRational::zero);
    match n % 4 {
        0 => Complex::new(o(), z()),
        1 => Complex::new(z(), -o()),
        2 => Complex::new(-o(), z()),
        _ => Complex::new(z(), o()),
    }
}

fn differentiate(poly: &CommPoly, exponent: &Exponent, j: usize) -> CommPoly {
    let mut out = poly.derivative(j);
    out.add_assign(&poly.mul(&exponent.gradient(j)));
    out
}

/// Schrödinger action of a normal-ordered operator: each monomial
/// `x^a p^b` acts as multiplication by `x^a` after `(−i∂)^b`.
pub fn apply(op: &WeylPolynomial, f: &GaussianPolyFunction) -> Result<GaussianPolyFunction> {
    if op.num_modes() != f.num_modes() {
        return Err(Error::Dimension { left: op.num_modes(), right: f.num_modes() });
    }
    let k = f.num_modes();
    let mut out = GaussianPolyFunction::zero(k);
    for (mono, c) in op.terms() {
        let momenta = mono.momentum_exponents();
        let order: u32 = momenta.iter().sum();
        let factor = c * minus_i_pow(order);
        for t in &f.terms {
            let mut poly = t.poly.clone();
            for (j, &b) in momenta.iter().enumerate() {
                for _ in 0..b {
                    poly = differentiate(&poly, &t.exponent, j);
                }
            }
            let poly = poly.shift(mono.position_exponents()).scale(&factor);
            out.push(GaussianTerm { poly, exponent: t.exponent.clone() });
        }
    }
    Ok(out)
}

/// `E` with `H f = E f` exactly, or `None` if `f` is not an eigenfunction
/// (or is zero).
pub fn eigencheck(h: &QuadraticHamiltonian, f: &GaussianPolyFunction) -> Option<ComplexRational> {
    if f.is_zero() {
        return None;
    }
    apply(h.op(), f).ok()?.ratio_to(f)
}

/// `true` iff `z` maps `f` to the zero function, exactly.
pub fn annihilation_check(z: &LadderOperator, f: &GaussianPolyFunction) -> Result<bool> {
    Ok(apply(&z.as_polynomial(), f)?.is_zero())
}

/// Finite `∫|f|²`: every exponent has `S + S*` negative definite.
pub fn is_square_integrable(f: &GaussianPolyFunction) -> bool {
    f.terms.iter().all(|t| t.exponent.is_decaying())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum InnerProduct {
    Value(Complex64),
    Divergent,
}

impl InnerProduct {
    pub fn value(self) -> Option<Complex64> {
        match self {
            InnerProduct::Value(v) => Some(v),
            InnerProduct::Divergent => None,
        }
    }
}

/// `⟨f|g⟩ = ∫ conj(f) g` over ℝᴷ.
pub fn inner_product(f: &GaussianPolyFunction, g: &GaussianPolyFunction) -> Result<InnerProduct> {
    if f.num_modes != g.num_modes {
        return Err(Error::Dimension { left: f.num_modes, right: g.num_modes });
    }
    let k = f.num_modes;
    let mut total = Complex64::new(0.0, 0.0);
    for a in &f.terms {
        for b in &g.terms {
            let e = a.exponent.conj().plus(&b.exponent);
            if !is_negative_definite(k, &gaussian::real_part(&e.quad)) {
                return Ok(InnerProduct::Divergent);
            }
            let poly = a.poly.conj().mul(&b.poly);
            total += gaussian_integral(k, &poly, &e.quad, &e.lin);
        }
    }
    Ok(InnerProduct::Value(total))
}

/// `|⟨f|Hg⟩ − ⟨Hf|g⟩|` for square-integrable `f`, `g`.
pub fn hermiticity_witness(h: &QuadraticHamiltonian, f: &GaussianPolyFunction, g: &GaussianPolyFunction) -> Result<f64> {
    if !is_square_integrable(f) || !is_square_integrable(g) {
        return Err(Error::Precondition("hermiticity witness needs square-integrable functions".into()));
    }
    let hg = apply(h.op(), g)?;
    let hf = apply(h.op(), f)?;
    let lhs = inner_product(f, &hg)?.value();
    let rhs = inner_product(&hf, g)?.value();
    match (lhs, rhs) {
        (Some(a), Some(b)) => Ok((a - b).norm()),
        _ => Err(Error::Precondition("inner product diverged".into())),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumEntry {
    pub n: u32,
    pub m: u32,
    pub energy: ComplexRational,
    pub function: GaussianPolyFunction,
    pub square_integrable: bool,
}

/// One ladder family `ψ_nm = Z_aⁿ Z_bᵐ ψ_vac`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumFamily {
    pub label: String,
    pub vacuum_energy: ComplexRational,
    pub entries: Vec<SpectrumEntry>,
    /// `(n, m)` grid points where the ladder produced the zero function.
    pub annihilated: Vec<(u32, u32)>,
}

impl SpectrumFamily {
    pub fn to_json(&self) -> Value {
        json!({
            "family": self.label,
            "vacuum_energy": exact_json(&self.vacuum_energy),
            "entries": self.entries.iter().map(|e| json!({
                "n": e.n,
                "m": e.m,
                "energy": [crate::scalar::rat_to_f64(&e.energy.re), crate::scalar::rat_to_f64(&e.energy.im)],
                "energy_exact": exact_json(&e.energy),
                "square_integrable": e.square_integrable,
            })).collect::<Vec<_>>(),
            "annihilated": self.annihilated.iter().map(|(n, m)| json!([n, m])).collect::<Vec<_>>(),
        })
    }
}

/// Generates `Z_aⁿ Z_bᵐ ψ_vac` for `n ≤ n_max`, `m ≤ m_max`, checking every
/// nonzero state is an eigenfunction with energy `E_vac + nλ_a + mλ_b`.
pub fn ladder_spectrum(
    label: &str,
    h: &QuadraticHamiltonian,
    vacuum: &GaussianPolyFunction,
    raise_a: &LadderOperator,
    raise_b: &LadderOperator,
    n_max: u32,
    m_max: u32,
) -> Result<SpectrumFamily> {
    let vacuum_energy = eigencheck(h, vacuum)
        .ok_or_else(|| Error::Precondition("vacuum is not an eigenfunction".into()))?;
    let (Some(za), Some(zb)) = (raise_a.z(), raise_b.z()) else {
        return Err(Error::Precondition("ladder spectra need exact ladder operators".into()));
    };
    let (Some(la), Some(lb)) = (raise_a.lambda().exact.clone(), raise_b.lambda().exact.clone()) else {
        return Err(Error::Precondition("ladder spectra need exact frequencies".into()));
    };
    let mut entries = Vec::new();
    let mut annihilated = Vec::new();
    let mut column = vacuum.clone();
    for m in 0..=m_max {
        let mut state = column.clone();
        for n in 0..=n_max {
            if state.is_zero() {
                annihilated.push((n, m));
            } else {
                let expected = &vacuum_energy + &la * real(int(n as i64)) + &lb * real(int(m as i64));
                let energy = eigencheck(h, &state).ok_or_else(|| Error::Verification {
                    stage: "wavefn",
                    detail: format!("{label}: psi_({n},{m}) is not an eigenfunction"),
                })?;
                if energy != expected {
                    return Err(Error::Verification {
                        stage: "wavefn",
                        detail: format!(
                            "{label}: psi_({n},{m}) has energy {} but the ladder predicts {}",
                            fmt_cq(&energy),
                            fmt_cq(&expected)
                        ),
                    });
                }
                entries.push(SpectrumEntry {
                    n,
                    m,
                    energy,
                    square_integrable: is_square_integrable(&state),
                    function: state.clone(),
                });
            }
            if n < n_max {
                state = apply(za, &state)?;
            }
        }
        if m < m_max {
            column = apply(zb, &column)?;
        }
    }
    entries.sort_by_key(|e| (e.n, e.m));
    annihilated.sort();
    Ok(SpectrumFamily { label: label.to_string(), vacuum_energy, entries, annihilated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adjoint::validate_quadratic;
    use crate::scalar::{cq, cq_int, imag_unit};

    fn std_gaussian(k: usize) -> GaussianPolyFunction {
        GaussianPolyFunction::gaussian(Exponent::diagonal(&vec![cq(-1, 2, 0, 1); k])).unwrap()
    }

    #[test]
    fn oscillator_ground_state() {
        let h = validate_quadratic(
            (&WeylPolynomial::p(1, 1).pow(2) + &WeylPolynomial::x(1, 1).pow(2)).scale(&cq(1, 2, 0, 1)),
        )
        .unwrap();
        let g = std_gaussian(1);
        assert_eq!(eigencheck(&h, &g), Some(cq(1, 2, 0, 1)));
        // x − ip raises by one quantum: (x − ip) e^{−x²/2} = 2x e^{−x²/2}
        let raise = &WeylPolynomial::x(1, 1) - &WeylPolynomial::p(1, 1).scale(&imag_unit());
        let excited = apply(&raise, &g).unwrap();
        assert_eq!(excited, GaussianPolyFunction::new(CommPoly::var(1, 1).scale(&cq_int(2)), Exponent::diagonal(&[cq(-1, 2, 0, 1)])).unwrap());
        assert_eq!(eigencheck(&h, &excited), Some(cq(3, 2, 0, 1)));
        let lower = &WeylPolynomial::x(1, 1) + &WeylPolynomial::p(1, 1).scale(&imag_unit());
        assert!(apply(&lower, &g).unwrap().is_zero());
    }

    #[test]
    fn sums_of_distinct_exponents_stay_separate() {
        let a = std_gaussian(1);
        let b = GaussianPolyFunction::gaussian(Exponent::diagonal(&[cq(-1, 1, 0, 1)])).unwrap();
        let s = a.add(&b).unwrap();
        assert_eq!(s.terms().len(), 2);
        assert!(s.add(&a.scale(&cq_int(-1))).unwrap() == b);
        assert_eq!(s.ratio_to(&a), None);
    }

    #[test]
    fn asymmetric_exponent_rejected() {
        let e = Exponent {
            quad: vec![cq_int(-1), cq_int(1), cq_int(0), cq_int(-1)],
            lin: vec![cq_int(0), cq_int(0)],
        };
        assert!(GaussianPolyFunction::gaussian(e).is_err());
    }

    #[test]
    fn integrability_verdicts() {
        assert!(is_square_integrable(&std_gaussian(2)));
        let flat = GaussianPolyFunction::gaussian(Exponent::diagonal(&[cq(-1, 2, 0, 1), cq_int(0)])).unwrap();
        assert!(!is_square_integrable(&flat));
        assert_eq!(inner_product(&flat, &flat).unwrap(), InnerProduct::Divergent);
        // an imaginary exponent part does not help
        let chirp = GaussianPolyFunction::gaussian(Exponent::diagonal(&[cq(0, 1, 5, 1)])).unwrap();
        assert!(!is_square_integrable(&chirp));
    }

    #[test]
    fn norm_of_standard_gaussian() {
        let g = std_gaussian(2);
        let v = inner_product(&g, &g).unwrap().value().unwrap();
        assert!((v - std::f64::consts::PI).norm() < 1e-12);
        let xg = apply(&WeylPolynomial::x(2, 1), &g).unwrap();
        assert!(inner_product(&xg, &g).unwrap().value().unwrap().norm() < 1e-15);
    }

    #[test]
    fn witness_rejects_divergent_inputs() {
        let h = validate_quadratic(WeylPolynomial::x(1, 1).pow(2)).unwrap();
        let bad = GaussianPolyFunction::gaussian(Exponent::diagonal(&[cq(1, 2, 0, 1)])).unwrap();
        assert!(hermiticity_witness(&h, &bad, &std_gaussian(1)).is_err());
        assert!(hermiticity_witness(&h, &std_gaussian(1), &std_gaussian(1)).unwrap() < 1e-14);
    }
}

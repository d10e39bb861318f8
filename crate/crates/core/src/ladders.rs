//! Ladder operators `Z = Σ c_i O_i` with `[H, Z] = λZ`, built from the
//! eigenvectors of the adjoint matrix.
//!
//! Each eigenvector is scaled so its first nonzero coefficient in basis
//! order is 1. Ladders are listed in frequency order (real part, then
//! imaginary part) and, within a degenerate frequency, in null-space order.

use crate::adjoint::{exact_json, QuadraticHamiltonian};
use crate::error::{Error, Result};
use crate::scalar::{c64_to_cq, to_c64, ComplexRational, ComplexScalar};
use crate::spectral::{NaturalFrequency, SpectralResult, DEFAULT_CLUSTER_TOL};
use crate::weyl::{BasisIndex, Kind, SymbolStyle, WeylPolynomial};
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde_json::{json, Value};

/// Coefficient-wise residual allowed when a ladder has no exact form.
pub const FLOAT_VERIFY_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct LadderOperator {
    num_modes: usize,
    coeffs: Vec<Complex64>,
    exact: Option<WeylPolynomial>,
    lambda: ComplexScalar,
    /// Index of the source frequency in the spectral result.
    pub frequency: usize,
}

impl LadderOperator {
    /// Ladder from an exact coefficient column; used for hand-built
    /// operators as well as by [`build_ladders`].
    pub fn from_exact(z: WeylPolynomial, lambda: ComplexRational) -> Self {
        let coeffs = z.linear_coefficients().iter().map(to_c64).collect();
        LadderOperator {
            num_modes: z.num_modes(),
            coeffs,
            exact: Some(z),
            lambda: ComplexScalar::exact(lambda),
            frequency: 0,
        }
    }

    pub fn num_modes(&self) -> usize {
        self.num_modes
    }

    /// The exact operator, when the eigen-data was reconstructed exactly.
    pub fn z(&self) -> Option<&WeylPolynomial> {
        self.exact.as_ref()
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn lambda(&self) -> &ComplexScalar {
        &self.lambda
    }

    /// Exact operator, or the exact binary image of the float coefficients.
    pub fn as_polynomial(&self) -> WeylPolynomial {
        match &self.exact {
            Some(z) => z.clone(),
            None => {
                let q: Vec<ComplexRational> = self
                    .coeffs
                    .iter()
                    .map(|c| c64_to_cq(*c).expect("finite ladder coefficient"))
                    .collect();
                WeylPolynomial::linear(self.num_modes, &q)
            }
        }
    }

    pub fn render(&self, style: SymbolStyle) -> String {
        match &self.exact {
            Some(z) => z.render(style),
            None => BasisIndex::all(self.num_modes)
                .iter()
                .zip(&self.coeffs)
                .filter(|(_, c)| c.norm() > 0.0)
                .map(|(b, c)| format!("({:e}{:+e}i)*{}", c.re, c.im, b.name(style)))
                .collect::<Vec<_>>()
                .join(" + "),
        }
    }

    pub fn to_json(&self, style: SymbolStyle) -> Value {
        json!({
            "lambda": [self.lambda.approx.re, self.lambda.approx.im],
            "lambda_exact": self.lambda.exact.as_ref().map(exact_json),
            "coefficients": self.coeffs.iter().map(|c| json!([c.re, c.im])).collect::<Vec<_>>(),
            "coefficients_exact": self.exact.as_ref().map(|z| {
                z.linear_coefficients().iter().map(exact_json).collect::<Vec<_>>()
            }),
            "operator": self.render(style),
        })
    }
}

fn normalize_exact(v: &[ComplexRational]) -> Vec<ComplexRational> {
    let lead = v.iter().find(|c| !c.is_zero()).cloned().unwrap_or_else(ComplexRational::one);
    let inv = ComplexRational::one() / lead;
    v.iter().map(|c| c * &inv).collect()
}

fn normalize_float(v: &[Complex64]) -> Vec<Complex64> {
    let big = v.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let lead = v
        .iter()
        .copied()
        .find(|c| c.norm() > 1e-10 * big)
        .unwrap_or(Complex64::new(1.0, 0.0));
    v.iter().map(|c| c / lead).collect()
}

/// One ladder per eigenvector of a non-defective spectrum, each verified
/// against `[H, Z] = λZ` and against its dagger partner at `−λ*`.
pub fn build_ladders(h: &QuadraticHamiltonian, s: &SpectralResult) -> Result<Vec<LadderOperator>> {
    if let Some(f) = s.frequencies.iter().find(|f| f.is_defective()) {
        return Err(Error::UnsupportedDefective {
            lambda: format!("{}", f.lambda),
            algebraic: f.algebraic_multiplicity,
            geometric: f.geometric_multiplicity,
        });
    }
    let k = h.num_modes();
    let mut ladders = Vec::new();
    for (fi, f) in s.frequencies.iter().enumerate() {
        if f.eigenvectors.first().is_some_and(|v| v.len() != 2 * k) {
            return Err(Error::Dimension { left: 2 * k, right: f.eigenvectors[0].len() });
        }
        match (&f.lambda_exact, &f.eigenvectors_exact) {
            (Some(lam), Some(vectors)) => {
                for v in vectors {
                    let z = WeylPolynomial::linear(k, &normalize_exact(v));
                    let mut ladder = LadderOperator::from_exact(z, lam.clone());
                    ladder.frequency = fi;
                    ladders.push(ladder);
                }
            }
            _ => {
                for v in &f.eigenvectors {
                    ladders.push(LadderOperator {
                        num_modes: k,
                        coeffs: normalize_float(v),
                        exact: None,
                        lambda: ComplexScalar::approximate(f.lambda),
                        frequency: fi,
                    });
                }
            }
        }
    }
    for ladder in &ladders {
        ladder_shift_check(h, ladder)?;
    }
    for ladder in &ladders {
        check_dagger_partner(h, ladder, &ladders, &s.frequencies)?;
    }
    Ok(ladders)
}

/// Recomputes `[H, Z]` symbolically and returns the scalar `μ` with
/// `[H, Z] = μZ`, which must match the ladder's own frequency.
pub fn ladder_shift_check(h: &QuadraticHamiltonian, z: &LadderOperator) -> Result<ComplexScalar> {
    let shift = shift_of(h.op(), z)?;
    let agrees = match (&shift.exact, &z.lambda.exact) {
        (Some(a), Some(b)) => a == b,
        _ => (shift.approx - z.lambda.approx).norm() < FLOAT_VERIFY_TOL * z.lambda.approx.norm().max(1.0),
    };
    if !agrees {
        return Err(Error::Verification {
            stage: "ladders",
            detail: format!("[H, Z] = {} Z but the ladder claims lambda = {}", shift, z.lambda),
        });
    }
    Ok(shift)
}

fn shift_of(op: &WeylPolynomial, z: &LadderOperator) -> Result<ComplexScalar> {
    let zop = z.as_polynomial();
    if zop.is_zero() {
        return Err(Error::Verification { stage: "ladders", detail: "zero ladder operator".into() });
    }
    let comm = op.commutator(&zop)?;
    if z.exact.is_some() {
        return match comm.proportionality(&zop) {
            Some(mu) => Ok(ComplexScalar::exact(mu)),
            None => Err(Error::Verification {
                stage: "ladders",
                detail: format!("[H, Z] = {comm} is not proportional to Z = {zop}"),
            }),
        };
    }
    // Least-squares ratio, then a coefficient-wise residual bound.
    let zc = &z.coeffs;
    let rc: Vec<Complex64> = comm.linear_coefficients().iter().map(to_c64).collect();
    let stray = comm.terms().any(|(m, _)| m.degree() != 1);
    let num: Complex64 = zc.iter().zip(&rc).map(|(a, b)| a.conj() * b).sum();
    let den: f64 = zc.iter().map(|a| a.norm_sqr()).sum();
    let mu = num / den;
    let residual = zc.iter().zip(&rc).map(|(a, b)| (b - mu * a).norm()).fold(0.0, f64::max);
    if stray || residual >= FLOAT_VERIFY_TOL {
        return Err(Error::Verification {
            stage: "ladders",
            detail: format!("[H, Z] - mu Z has residual {residual:.3e} (mu = {mu})"),
        });
    }
    Ok(ComplexScalar::approximate(mu))
}

/// `Z†` must be a ladder at `−λ*`; when that eigenspace is one-dimensional
/// it must also be a scalar multiple of the ladder built there.
fn check_dagger_partner(
    h: &QuadraticHamiltonian,
    z: &LadderOperator,
    all: &[LadderOperator],
    freqs: &[NaturalFrequency],
) -> Result<()> {
    let target = -z.lambda.approx.conj();
    let partner_freq = freqs.iter().position(|f| {
        (f.lambda - target).norm() < DEFAULT_CLUSTER_TOL * f.lambda.norm().max(1.0)
    });
    let Some(pf) = partner_freq else {
        return Err(Error::Verification {
            stage: "ladders",
            detail: format!("no frequency at -conj(lambda) = {target} for the dagger of {}", z.render(Default::default())),
        });
    };
    let zd = z.as_polynomial().dagger();
    let dagger_ladder = LadderOperator {
        num_modes: z.num_modes,
        coeffs: zd.linear_coefficients().iter().map(to_c64).collect(),
        exact: z.exact.as_ref().map(|_| zd.clone()),
        lambda: match &z.lambda.exact {
            Some(l) => ComplexScalar::exact(-l.conj()),
            None => ComplexScalar::approximate(target),
        },
        frequency: pf,
    };
    ladder_shift_check(h, &dagger_ladder)?;
    let partners: Vec<&LadderOperator> = all.iter().filter(|l| l.frequency == pf).collect();
    if let [only] = partners.as_slice() {
        let ok = match (&dagger_ladder.exact, &only.exact) {
            (Some(a), Some(b)) => a.proportionality(b).is_some(),
            _ => float_proportional(&dagger_ladder.coeffs, &only.coeffs),
        };
        if !ok {
            return Err(Error::Verification {
                stage: "ladders",
                detail: format!(
                    "dagger of {} is not a multiple of the ladder {} at -conj(lambda)",
                    z.render(Default::default()),
                    only.render(Default::default())
                ),
            });
        }
    }
    Ok(())
}

fn float_proportional(a: &[Complex64], b: &[Complex64]) -> bool {
    let num: Complex64 = b.iter().zip(a).map(|(x, y)| x.conj() * y).sum();
    let den: f64 = b.iter().map(|x| x.norm_sqr()).sum();
    let ratio = num / den;
    let scale = a.iter().map(|x| x.norm()).fold(0.0, f64::max).max(1.0);
    a.iter().zip(b).all(|(x, y)| (x - ratio * y).norm() < 1e-8 * scale)
}

/// Pairwise commutators `[Z_a, Z_b]` of linear ladders; always scalars.
#[derive(Clone, Debug, PartialEq)]
pub struct CommutatorTable {
    size: usize,
    entries: Vec<ComplexScalar>,
}

impl CommutatorTable {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, a: usize, b: usize) -> &ComplexScalar {
        &self.entries[a * self.size + b]
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.size).all(|a| {
            (0..self.size).all(|b| {
                let (x, y) = (self.get(a, b), self.get(b, a));
                match (&x.exact, &y.exact) {
                    (Some(p), Some(q)) => *p == -q.clone(),
                    _ => (x.approx + y.approx).norm() < 1e-12,
                }
            })
        })
    }

    /// `(a, b, value)` for every nonzero entry with `a < b`.
    pub fn nonzero_upper(&self) -> Vec<(usize, usize, ComplexScalar)> {
        let mut out = Vec::new();
        for a in 0..self.size {
            for b in a + 1..self.size {
                let e = self.get(a, b);
                let zero = match &e.exact {
                    Some(z) => z.is_zero(),
                    None => e.approx.norm() < 1e-12,
                };
                if !zero {
                    out.push((a, b, e.clone()));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = (0..self.size)
            .map(|a| {
                Value::Array(
                    (0..self.size)
                        .map(|b| {
                            let e = self.get(a, b);
                            json!({
                                "value": [e.approx.re, e.approx.im],
                                "exact": e.exact.as_ref().map(exact_json),
                            })
                        })
                        .collect(),
                )
            })
            .collect();
        json!({ "size": self.size, "entries": rows })
    }
}

/// `[O_i, O_j]` for basis slots: `[x_m, p_m] = i`, `[p_m, x_m] = −i`.
fn basis_bracket(i: usize, j: usize, k: usize) -> Complex64 {
    let (a, b) = (BasisIndex::from_slot(i, k), BasisIndex::from_slot(j, k));
    if a.mode != b.mode {
        return Complex64::new(0.0, 0.0);
    }
    match (a.kind, b.kind) {
        (Kind::Position, Kind::Momentum) => Complex64::new(0.0, 1.0),
        (Kind::Momentum, Kind::Position) => Complex64::new(0.0, -1.0),
        _ => Complex64::new(0.0, 0.0),
    }
}

pub fn commutator_table(ladders: &[LadderOperator]) -> Result<CommutatorTable> {
    let n = ladders.len();
    if let Some(first) = ladders.first() {
        if let Some(bad) = ladders.iter().find(|l| l.num_modes != first.num_modes) {
            return Err(Error::Dimension { left: first.num_modes, right: bad.num_modes });
        }
    }
    let mut entries = Vec::with_capacity(n * n);
    for a in ladders {
        for b in ladders {
            let entry = match (&a.exact, &b.exact) {
                (Some(za), Some(zb)) => {
                    let c = za.commutator(zb)?;
                    let scalar = c.as_scalar().ok_or_else(|| Error::Verification {
                        stage: "ladders",
                        detail: format!("commutator of ladders is not a scalar: {c}"),
                    })?;
                    ComplexScalar::exact(scalar)
                }
                _ => {
                    let k = a.num_modes;
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (i, ca) in a.coeffs.iter().enumerate() {
                        for (j, cb) in b.coeffs.iter().enumerate() {
                            acc += ca * cb * basis_bracket(i, j, k);
                        }
                    }
                    ComplexScalar::approximate(acc)
                }
            };
            entries.push(entry);
        }
    }
    Ok(CommutatorTable { size: n, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adjoint::{adjoint_matrix, validate_quadratic};
    use crate::scalar::{cq, cq_int, imag_unit};
    use crate::spectral::eigen_decompose;

    fn oscillator() -> QuadraticHamiltonian {
        let h = (&WeylPolynomial::p(1, 1).pow(2) + &WeylPolynomial::x(1, 1).pow(2)).scale(&cq(1, 2, 0, 1));
        validate_quadratic(h).unwrap()
    }

    #[test]
    fn oscillator_ladders_are_normalized() {
        let h = oscillator();
        let s = eigen_decompose(&adjoint_matrix(&h).unwrap()).unwrap();
        let ladders = build_ladders(&h, &s).unwrap();
        assert_eq!(ladders.len(), 2);
        let x = WeylPolynomial::x(1, 1);
        let p = WeylPolynomial::p(1, 1);
        // λ = −1: x + i p, λ = +1: x − i p
        assert_eq!(ladders[0].z().unwrap(), &(&x + &p.scale(&imag_unit())));
        assert_eq!(ladders[1].z().unwrap(), &(&x - &p.scale(&imag_unit())));
        assert_eq!(ladders[1].lambda().exact, Some(cq_int(1)));
        let t = commutator_table(&ladders).unwrap();
        assert!(t.is_antisymmetric());
        // [x + ip, x − ip] = −i[x,p] + i[p,x] = 2
        assert_eq!(t.get(0, 1).exact, Some(cq_int(2)));
    }

    #[test]
    fn shift_check_on_hand_built_ladder() {
        let h = oscillator();
        let x = WeylPolynomial::x(1, 1);
        let p = WeylPolynomial::p(1, 1);
        let z = LadderOperator::from_exact(&x - &p.scale(&imag_unit()), cq_int(1));
        assert_eq!(ladder_shift_check(&h, &z).unwrap().exact, Some(cq_int(1)));
        let wrong = LadderOperator::from_exact(x.clone(), cq_int(1));
        assert!(matches!(ladder_shift_check(&h, &wrong), Err(Error::Verification { .. })));
    }

    #[test]
    fn defective_spectrum_is_rejected() {
        let h = validate_quadratic(WeylPolynomial::p(1, 1).pow(2).scale(&cq(1, 2, 0, 1))).unwrap();
        let s = eigen_decompose(&adjoint_matrix(&h).unwrap()).unwrap();
        match build_ladders(&h, &s) {
            Err(Error::UnsupportedDefective { algebraic, geometric, .. }) => {
                assert_eq!((algebraic, geometric), (2, 1))
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn float_ladders_verify_by_residual() {
        // x^2/2 + p^2: frequencies ±sqrt(2), not rational.
        let h = &WeylPolynomial::x(1, 1).pow(2).scale(&cq(1, 2, 0, 1)) + &WeylPolynomial::p(1, 1).pow(2);
        let h = validate_quadratic(h).unwrap();
        let s = eigen_decompose(&adjoint_matrix(&h).unwrap()).unwrap();
        assert!(s.frequencies.iter().all(|f| f.lambda_exact.is_none()));
        let ladders = build_ladders(&h, &s).unwrap();
        assert_eq!(ladders.len(), 2);
        assert!((ladders[1].lambda().approx.re - 2f64.sqrt()).abs() < 1e-12);
        let t = commutator_table(&ladders).unwrap();
        assert!(t.is_antisymmetric());
        assert_eq!(t.nonzero_upper().len(), 1);
    }

    #[test]
    fn empty_table() {
        let t = commutator_table(&[]).unwrap();
        assert_eq!(t.size(), 0);
        assert!(t.is_antisymmetric());
    }
}

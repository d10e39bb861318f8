//! The Bateman dual oscillator in dimensionless form,
//!
//! `H_d = ½(p_x² − p_y²) + ½(x² − y²) − (b/2)(x p_y + y p_x)`,
//!
//! obtained from the physical model by `x_j → α x_j`, `p_j → (ħ/α) p_j` with
//! `α² = ħ/(mω)`, which leaves `H = ħω H_d` and `b = γ/(mω)`.

use crate::adjoint::{validate_quadratic, QuadraticHamiltonian};
use crate::error::{Error, Result};
use crate::scalar::{cq, real, ComplexRational};
use crate::wavefn::{Exponent, GaussianPolyFunction};
use crate::weyl::WeylPolynomial;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub struct BatemanParams {
    pub m: BigRational,
    pub gamma: BigRational,
    pub omega: BigRational,
    pub hbar: BigRational,
}

impl BatemanParams {
    /// Physical parameters with `ħ = 1`. `γ = 0` is accepted as the
    /// undamped limit.
    pub fn new(m: BigRational, gamma: BigRational, omega: BigRational) -> Result<Self> {
        BatemanParams::with_hbar(m, gamma, omega, BigRational::one())
    }

    pub fn with_hbar(m: BigRational, gamma: BigRational, omega: BigRational, hbar: BigRational) -> Result<Self> {
        let p = BatemanParams { m, gamma, omega, hbar };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        if !self.m.is_positive() {
            return Err(Error::InvalidParams(format!("mass must be positive, got {}", self.m)));
        }
        if !self.omega.is_positive() {
            return Err(Error::InvalidParams(format!("omega must be positive, got {}", self.omega)));
        }
        if self.gamma.is_negative() {
            return Err(Error::InvalidParams(format!("gamma must be non-negative, got {}", self.gamma)));
        }
        if !self.hbar.is_positive() {
            return Err(Error::InvalidParams(format!("hbar must be positive, got {}", self.hbar)));
        }
        Ok(())
    }

    /// `α² = ħ/(mω)`, the squared length scale.
    pub fn alpha_squared(&self) -> BigRational {
        &self.hbar / (&self.m * &self.omega)
    }

    /// `ħω`, the energy unit of `H_d`.
    pub fn energy_unit(&self) -> BigRational {
        &self.hbar * &self.omega
    }
}

/// `b = γ/(mω)`.
pub fn dimensionless_b(p: &BatemanParams) -> Result<BigRational> {
    p.validate()?;
    Ok(&p.gamma / (&p.m * &p.omega))
}

fn h0_op() -> WeylPolynomial {
    let k = 2;
    let half = cq(1, 2, 0, 1);
    let (x, y) = (WeylPolynomial::x(k, 1), WeylPolynomial::x(k, 2));
    let (px, py) = (WeylPolynomial::p(k, 1), WeylPolynomial::p(k, 2));
    let kinetic = &px.pow(2) - &py.pow(2);
    let potential = &x.pow(2) - &y.pow(2);
    (&kinetic + &potential).scale(&half)
}

fn h1_op(b: &BigRational) -> WeylPolynomial {
    let k = 2;
    let (x, y) = (WeylPolynomial::x(k, 1), WeylPolynomial::x(k, 2));
    let (px, py) = (WeylPolynomial::p(k, 1), WeylPolynomial::p(k, 2));
    let coupling = &(&x * &py) + &(&y * &px);
    let factor: ComplexRational = real(-b.clone() / BigRational::from_integer(2.into()));
    coupling.scale(&factor)
}

pub fn build_hd(b: &BigRational) -> QuadraticHamiltonian {
    validate_quadratic(&h0_op() + &h1_op(b)).expect("the Bateman Hamiltonian is Hermitian and quadratic")
}

/// `H_0 = H_d(b = 0)` and `H_1 = H_d − H_0`.
pub fn split_h0_h1(b: &BigRational) -> (QuadraticHamiltonian, QuadraticHamiltonian) {
    let h0 = validate_quadratic(h0_op()).expect("H_0 is Hermitian and quadratic");
    let h1 = validate_quadratic(h1_op(b)).expect("H_1 is Hermitian and quadratic");
    (h0, h1)
}

/// `exp(−x²/2 + y²/2)`
pub fn psi0() -> GaussianPolyFunction {
    GaussianPolyFunction::gaussian(Exponent::diagonal(&[cq(-1, 2, 0, 1), cq(1, 2, 0, 1)]))
        .expect("diagonal exponent is symmetric")
}

/// `exp(x²/2 − y²/2)`
pub fn psi1() -> GaussianPolyFunction {
    GaussianPolyFunction::gaussian(Exponent::diagonal(&[cq(1, 2, 0, 1), cq(-1, 2, 0, 1)]))
        .expect("diagonal exponent is symmetric")
}

/// Whether `b` is zero, i.e. the model is the undamped `H_0`.
pub fn is_undamped(b: &BigRational) -> bool {
    b.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn dimensionless_parameter() {
        let b = |m, g, w| dimensionless_b(&BatemanParams::new(m, g, w).unwrap()).unwrap();
        assert_eq!(b(int(1), int(1), int(1)), int(1));
        assert_eq!(b(int(2), int(3), rat(1, 2)), int(3));
        assert_eq!(b(int(1), int(0), int(1)), int(0));
    }

    #[test]
    fn invalid_parameters() {
        assert!(BatemanParams::new(int(0), int(1), int(1)).is_err());
        assert!(BatemanParams::new(int(1), int(1), int(-1)).is_err());
        assert!(BatemanParams::new(int(1), int(-1), int(1)).is_err());
        assert!(BatemanParams::with_hbar(int(1), int(1), int(1), int(0)).is_err());
    }

    #[test]
    fn scaling_bookkeeping() {
        let p = BatemanParams::with_hbar(int(2), int(1), int(3), rat(1, 2)).unwrap();
        assert_eq!(p.alpha_squared(), rat(1, 12));
        assert_eq!(p.energy_unit(), rat(3, 2));
    }

    #[test]
    fn split_sums_to_hd() {
        let b = rat(3, 2);
        let (h0, h1) = split_h0_h1(&b);
        assert_eq!(&(h0.op() + h1.op()), build_hd(&b).op());
        assert!(split_h0_h1(&int(0)).1.op().is_zero());
        assert!(build_hd(&b).op().is_hermitian());
    }

    #[test]
    fn rendered_form() {
        assert_eq!(
            build_hd(&int(1)).op().render(crate::weyl::SymbolStyle::Alias),
            "(1/2)*x^2 - (1/2)*x*py - (1/2)*y^2 - (1/2)*y*px + (1/2)*px^2 - (1/2)*py^2"
        );
    }
}

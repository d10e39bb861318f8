//! Square integrability, closed-form Gaussian inner products and the
//! hermiticity witness ⟨f|Hg⟩ = ⟨Hf|g⟩.

use quadladder::bateman::{build_hd, psi0};
use quadladder::scalar::{cq, rat};
use quadladder::wavefn::{hermiticity_witness, inner_product, is_square_integrable, CommPoly, Exponent, GaussianPolyFunction};

fn main() -> quadladder::error::Result<()> {
    let ground = GaussianPolyFunction::gaussian(Exponent::diagonal(&[cq(-1, 2, 0, 1), cq(-1, 2, 0, 1)]))?;
    println!("exp(-(x^2+y^2)/2) square integrable: {}", is_square_integrable(&ground));
    println!("psi0 = exp(-x^2/2 + y^2/2) square integrable: {}", is_square_integrable(&psi0()));
    // ∫ e^{-x²-y²} = π
    println!("<g|g> = {}  (pi = {})", inner_product(&ground, &ground)?.value().unwrap(), std::f64::consts::PI);
    println!("<psi0|psi0> = {:?}", inner_product(&psi0(), &psi0())?);

    let x_ground = GaussianPolyFunction::new(CommPoly::var(2, 1), Exponent::diagonal(&[cq(-1, 2, 0, 1), cq(-1, 2, 0, 1)]))?;
    let tilted = GaussianPolyFunction::new(
        CommPoly::var(2, 2).mul(&CommPoly::var(2, 2)),
        Exponent { quad: vec![cq(-1, 1, 1, 3), cq(0, 1, 0, 1), cq(0, 1, 0, 1), cq(-3, 4, 0, 1)], lin: vec![cq(1, 2, 0, 1), cq(0, 1, -1, 1)] },
    )?;
    for b in [rat(0, 1), rat(1, 1), rat(3, 1)] {
        let w = hermiticity_witness(&build_hd(&b), &x_ground, &tilted)?;
        println!("b = {b}: |<f|Hg> - <Hf|g>| = {w:.2e}");
    }
    Ok(())
}

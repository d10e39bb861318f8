//! Characteristic polynomial, roots, multiplicities and exact reconstruction.

use quadladder::adjoint::{adjoint_matrix, validate_quadratic};
use quadladder::bateman::build_hd;
use quadladder::dsl::parse_polynomial;
use quadladder::scalar::{fmt_cq, rat};
use quadladder::spectral::eigen_decompose;

fn show(label: &str, h: &quadladder::adjoint::QuadraticHamiltonian) -> quadladder::error::Result<()> {
    let s = eigen_decompose(&adjoint_matrix(h)?)?;
    println!("{label}");
    if let Some(p) = s.char_poly.exact() {
        let coeffs: Vec<_> = p.coeffs().iter().map(fmt_cq).collect();
        println!("  det(M - lambda I), ascending: [{}]", coeffs.join(", "));
    }
    for f in &s.frequencies {
        let exact = f.lambda_exact.as_ref().map(fmt_cq).unwrap_or_else(|| "-".into());
        println!(
            "  lambda = {:.6}  exact {exact}  algebraic {} geometric {}",
            f.lambda, f.algebraic_multiplicity, f.geometric_multiplicity
        );
    }
    println!("  defective: {}, lambda <-> -conj(lambda) pairing defect {:.1e}", s.defective, s.pairing_defect());
    Ok(())
}

fn main() -> quadladder::error::Result<()> {
    show("Bateman, b = 1", &build_hd(&rat(1, 1)))?;
    show("Bateman, b = 0 (degenerate)", &build_hd(&rat(0, 1)))?;
    let free = validate_quadratic(parse_polynomial("1/2*p1^2").unwrap())?;
    show("free particle (defective)", &free)?;
    let irrational = validate_quadratic(parse_polynomial("p1^2 + 2*x1^2").unwrap())?;
    show("p^2 + 2x^2 (irrational frequencies stay floating point)", &irrational)?;
    Ok(())
}

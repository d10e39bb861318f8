//! Eigenfunctions generated by ladder operators from the two Gaussian vacua,
//! including the states the lowering ladders annihilate.

use quadladder::adjoint::adjoint_matrix;
use quadladder::bateman::{build_hd, psi0, psi1};
use quadladder::ladders::build_ladders;
use quadladder::scalar::{fmt_cq, rat};
use quadladder::spectral::eigen_decompose;
use quadladder::wavefn::{annihilation_check, apply, eigencheck, ladder_spectrum};

fn main() -> quadladder::error::Result<()> {
    let h = build_hd(&rat(1, 2));
    let z = build_ladders(&h, &eigen_decompose(&adjoint_matrix(&h)?)?)?;

    println!("H psi0 = {} psi0,  H psi1 = {} psi1", fmt_cq(&eigencheck(&h, &psi0()).unwrap()), fmt_cq(&eigencheck(&h, &psi1()).unwrap()));

    let family = ladder_spectrum("psi0 raised by Z3, Z4", &h, &psi0(), &z[2], &z[3], 2, 2)?;
    println!("{}", family.label);
    for e in &family.entries {
        println!("  n={} m={}  E={:<14} psi = {}", e.n, e.m, fmt_cq(&e.energy), e.function);
    }

    // Z1 commutes with Z3, so it kills the whole Z3 tower above psi0.
    let mut state = psi0();
    for n in 0..4 {
        println!("Z1 Z3^{n} psi0 = 0: {}", annihilation_check(&z[0], &state)?);
        state = apply(z[2].z().unwrap(), &state)?;
    }
    Ok(())
}

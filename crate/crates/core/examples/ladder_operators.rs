//! Ladder operators [H, Z] = λZ and their commutator table.

use quadladder::adjoint::adjoint_matrix;
use quadladder::bateman::build_hd;
use quadladder::ladders::{build_ladders, commutator_table, ladder_shift_check};
use quadladder::scalar::rat;
use quadladder::spectral::eigen_decompose;
use quadladder::weyl::SymbolStyle;

fn main() -> quadladder::error::Result<()> {
    let h = build_hd(&rat(1, 1));
    let spectrum = eigen_decompose(&adjoint_matrix(&h)?)?;
    let ladders = build_ladders(&h, &spectrum)?;

    for (i, z) in ladders.iter().enumerate() {
        let shift = ladder_shift_check(&h, z)?;
        println!("Z{} = {:<24} lambda = {}   [H, Z] / Z = {}", i + 1, z.render(SymbolStyle::Alias), z.lambda(), shift);
    }
    let z1 = ladders[0].z().unwrap();
    println!("Z1^dagger = {}", z1.dagger().render(SymbolStyle::Alias));

    let table = commutator_table(&ladders)?;
    println!("antisymmetric: {}", table.is_antisymmetric());
    for (a, b, v) in table.nonzero_upper() {
        println!("[Z{}, Z{}] = {}", a + 1, b + 1, v);
    }
    Ok(())
}

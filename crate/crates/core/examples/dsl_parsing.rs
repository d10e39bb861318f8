//! The Hamiltonian expression language: parsing, errors and round trips.

use quadladder::dsl::{parse_hamiltonian, parse_polynomial};
use quadladder::weyl::SymbolStyle;

fn main() {
    let text = "1/2*px^2 - 1/2*py^2 + 1/2*x^2 - 1/2*y^2 - 1/2*(x*py + y*px)";
    let ast = parse_hamiltonian(text).unwrap();
    println!("modes: {}, style: {:?}", ast.num_modes, ast.style);
    println!("rendered AST: {ast}");
    println!("polynomial:   {}", ast.to_polynomial().render(SymbolStyle::Alias));
    assert_eq!(parse_hamiltonian(&ast.to_string()).unwrap(), ast);

    // operator order is kept: p1*x1 normal-orders to x1*p1 - i
    println!("p1*x1 -> {}", parse_polynomial("p1*x1").unwrap());

    for bad in ["2*x1^2 + ", "x*p1", "2 x1", "x1^-1", "q3"] {
        match parse_hamiltonian(bad) {
            Ok(_) => println!("{bad:>12}: accepted"),
            Err(e) => println!("{bad:>12}: {e}"),
        }
    }
}

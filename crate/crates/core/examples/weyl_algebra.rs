//! Normal ordering, commutators and adjoints in the two-mode Weyl algebra.

use quadladder::weyl::{SymbolStyle, WeylPolynomial};

fn main() {
    let (x, p) = (WeylPolynomial::x(2, 1), WeylPolynomial::p(2, 1));
    let y = WeylPolynomial::x(2, 2);

    // p·x is rewritten with positions first: x·p − i
    let px = p.multiply(&x).unwrap();
    println!("p1*x1           = {px}");
    println!("[x1, p1]        = {}", x.commutator(&p).unwrap());
    println!("[x1, x2]        = {}", x.commutator(&y).unwrap());

    let cube = (x.clone() + p.clone()).pow(3);
    println!("(x1 + p1)^3     = {cube}");

    let op = x.multiply(&p).unwrap();
    println!("(x1*p1)^dagger  = {}", op.dagger());
    println!("x1*p1 Hermitian? {}", op.is_hermitian());
    let sym = op.clone() + op.dagger();
    println!("x1*p1 + h.c.    = {}  (Hermitian: {})", sym, sym.is_hermitian());

    for (deg, part) in cube.degree_decompose() {
        println!("  degree {deg}: {}", part.render(SymbolStyle::Alias));
    }
}

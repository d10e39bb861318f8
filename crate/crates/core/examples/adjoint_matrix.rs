//! Adjoint matrix of a quadratic Hamiltonian: [H, O_i] = Σ_j M_ji O_j.

use quadladder::adjoint::{adjoint_matrix, validate_quadratic};
use quadladder::bateman::build_hd;
use quadladder::dsl::parse_polynomial;
use quadladder::scalar::{fmt_cq, rat};
use quadladder::weyl::{BasisIndex, SymbolStyle, WeylPolynomial};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h = build_hd(&rat(1, 2));
    println!("H = {}", h.op().render(SymbolStyle::Alias));
    let m = adjoint_matrix(&h)?;
    for i in 0..m.rows() {
        let row: Vec<_> = (0..m.cols()).map(|j| fmt_cq(m.exact_get(i, j).unwrap())).collect();
        println!("  [{}]", row.join(", "));
    }

    // each column is read off a commutator
    for (i, o) in BasisIndex::all(2).into_iter().enumerate() {
        let bracket = h.op().commutator(&WeylPolynomial::generator(2, o))?;
        println!("[H, {}] = {}   (column {i})", o.name(SymbolStyle::Alias), bracket.render(SymbolStyle::Alias));
    }
    println!("trace = {}", fmt_cq(&m.trace_exact().unwrap()));
    println!("{}", serde_json::to_string(&m.to_json())?);

    // validation rejects anything that is not a Hermitian quadratic
    for text in ["x1^3", "x1*p1", "x1^2 + p1^2 + 5"] {
        match validate_quadratic(parse_polynomial(text)?) {
            Ok(q) => println!("{text}: accepted, offset {}", fmt_cq(q.offset())),
            Err(e) => println!("{text}: {e}"),
        }
    }
    Ok(())
}

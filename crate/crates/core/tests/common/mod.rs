#![allow(dead_code)]

use num_complex::Complex64;
use num_rational::BigRational;
use quadladder::adjoint::{validate_quadratic, QuadraticHamiltonian};
use quadladder::scalar::{real, ComplexRational};
use quadladder::wavefn::{CommPoly, Exponent, GaussianPolyFunction};
use quadladder::weyl::{BasisIndex, Monomial, WeylPolynomial};
use rand::Rng;
use std::collections::BTreeMap;

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn c(re: (i64, i64), im: (i64, i64)) -> ComplexRational {
    ComplexRational::new(q(re.0, re.1), q(im.0, im.1))
}

pub fn cf(z: &ComplexRational) -> Complex64 {
    use num_traits::ToPrimitive;
    Complex64::new(z.re.to_f64().unwrap(), z.im.to_f64().unwrap())
}

/// A rational in [−2, 2] with denominator ≤ 4.
pub fn small_rational<R: Rng>(rng: &mut R) -> BigRational {
    let d = rng.gen_range(1..=4);
    q(rng.gen_range(-2 * d..=2 * d), d)
}

/// Word-rewriting oracle for products in the Weyl algebra. A word is a
/// sequence of basis slots (`0..K` positions, `K..2K` momenta); adjacent
/// `p_j x_j` is rewritten as `x_j p_j − i` until every position precedes
/// every momentum.
pub fn normal_order_word(k: usize, word: Vec<usize>, coeff: ComplexRational, out: &mut BTreeMap<Vec<u32>, ComplexRational>) {
    let bad = word.windows(2).position(|w| w[0] >= k && w[1] < k);
    match bad {
        None => {
            let mut exps = vec![0u32; 2 * k];
            for s in word {
                exps[s] += 1;
            }
            *out.entry(exps).or_insert_with(|| real(q(0, 1))) += coeff;
        }
        Some(at) => {
            let (pj, xk) = (word[at] - k, word[at + 1]);
            let mut swapped = word.clone();
            swapped.swap(at, at + 1);
            normal_order_word(k, swapped, coeff.clone(), out);
            if pj == xk {
                let mut shorter = word;
                shorter.drain(at..at + 2);
                normal_order_word(k, shorter, coeff * ComplexRational::new(q(0, 1), q(-1, 1)), out);
            }
        }
    }
}

pub fn word_of(m: &Monomial) -> Vec<usize> {
    m.exponents()
        .iter()
        .enumerate()
        .flat_map(|(slot, &e)| std::iter::repeat_n(slot, e as usize))
        .collect()
}

/// `a · b` computed by the rewriting oracle.
pub fn oracle_product(a: &WeylPolynomial, b: &WeylPolynomial) -> WeylPolynomial {
    let k = a.num_modes();
    let mut out = BTreeMap::new();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let mut w = word_of(ma);
            w.extend(word_of(mb));
            normal_order_word(k, w, ca * cb, &mut out);
        }
    }
    WeylPolynomial::from_terms(k, out.into_iter().map(|(e, c)| (Monomial::from_exponents(e), c)))
}

/// `Σ_{a≤b} c_ab (O_a O_b + O_b O_a)/2` with rational `c_ab ∈ [−2, 2]`:
/// the general Hermitian quadratic.
pub fn random_hermitian_quadratic<R: Rng>(rng: &mut R, k: usize) -> QuadraticHamiltonian {
    let basis = BasisIndex::all(k);
    let mut h = WeylPolynomial::zero(k);
    for a in 0..2 * k {
        for b in a..2 * k {
            let coeff = small_rational(rng);
            if coeff == q(0, 1) {
                continue;
            }
            let oa = WeylPolynomial::generator(k, basis[a]);
            let ob = WeylPolynomial::generator(k, basis[b]);
            let sym = (oa.multiply(&ob).unwrap() + ob.multiply(&oa).unwrap()).scale(&real(coeff / q(2, 1)));
            h = h + sym;
        }
    }
    validate_quadratic(h).expect("symmetrised real quadratic is Hermitian")
}

/// A square-integrable `P(x)·exp(xᵀSx + ℓᵀx)` with `Re S` safely negative
/// definite (diagonally dominant).
pub fn random_decaying_function<R: Rng>(rng: &mut R, k: usize, max_degree: u32) -> GaussianPolyFunction {
    let mut quad = vec![real(q(0, 1)); k * k];
    for i in 0..k {
        for j in i..k {
            let entry = if i == j {
                ComplexRational::new(q(-rng.gen_range(2..=8), 4) - q(k as i64 - 1, 4), q(rng.gen_range(-4..=4), 4))
            } else {
                ComplexRational::new(q(rng.gen_range(-1..=1), 8), q(rng.gen_range(-2..=2), 8))
            };
            quad[i * k + j] = entry.clone();
            quad[j * k + i] = entry;
        }
    }
    let lin = (0..k)
        .map(|_| ComplexRational::new(q(rng.gen_range(-4..=4), 4), q(rng.gen_range(-4..=4), 4)))
        .collect();
    let mut poly = CommPoly::zero(k);
    for _ in 0..rng.gen_range(1..=3) {
        let mut exps = vec![0u32; k];
        for e in exps.iter_mut() {
            *e = rng.gen_range(0..=max_degree);
        }
        let coeff = ComplexRational::new(small_rational(rng), small_rational(rng));
        poly.add_assign(&CommPoly::from_terms(k, [(exps, coeff)]));
    }
    if poly.is_zero() {
        poly = CommPoly::one(k);
    }
    GaussianPolyFunction::new(poly, Exponent { quad, lin }).expect("symmetric exponent")
}

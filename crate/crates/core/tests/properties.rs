mod common;

use common::*;
use num_complex::Complex64;
use proptest::prelude::*;
use quadladder::adjoint::adjoint_matrix;
use quadladder::scalar::ComplexRational;
use quadladder::wavefn::{apply, inner_product, CommPoly, Exponent, GaussianPolyFunction, InnerProduct};
use quadladder::weyl::{BasisIndex, Monomial, WeylPolynomial};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn coeff() -> impl Strategy<Value = ComplexRational> {
    (-3i64..=3, 1i64..=3, -3i64..=3, 1i64..=3).prop_map(|(a, b, c, d)| common::c((a, b), (c, d)))
}

fn poly(k: usize, max_exp: u32) -> impl Strategy<Value = WeylPolynomial> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, 2 * k), coeff()), 1..=3).prop_map(move |terms| {
        WeylPolynomial::from_terms(k, terms.into_iter().map(|(e, c)| (Monomial::from_exponents(e), c)))
    })
}

fn polys(n: usize) -> impl Strategy<Value = Vec<WeylPolynomial>> {
    (1usize..=2).prop_flat_map(move |k| prop::collection::vec(poly(k, 2), n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_matches_rewriting_oracle(ps in polys(2)) {
        prop_assert_eq!(ps[0].multiply(&ps[1]).unwrap(), oracle_product(&ps[0], &ps[1]));
    }

    #[test]
    fn product_is_associative(ps in polys(3)) {
        let left = ps[0].multiply(&ps[1]).unwrap().multiply(&ps[2]).unwrap();
        let right = ps[0].multiply(&ps[1].multiply(&ps[2]).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn jacobi_identity(ps in polys(3)) {
        let (a, b, c) = (&ps[0], &ps[1], &ps[2]);
        let t1 = a.commutator(&b.commutator(c).unwrap()).unwrap();
        let t2 = b.commutator(&c.commutator(a).unwrap()).unwrap();
        let t3 = c.commutator(&a.commutator(b).unwrap()).unwrap();
        prop_assert!((t1 + t2 + t3).is_zero());
    }

    #[test]
    fn dagger_reverses_products(ps in polys(2)) {
        let lhs = ps[0].multiply(&ps[1]).unwrap().dagger();
        let rhs = ps[1].dagger().multiply(&ps[0].dagger()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(ps[0].dagger().dagger(), ps[0].clone());
    }

    #[test]
    fn adjoint_matrix_reproduces_commutators(seed in any::<u64>(), k in 1usize..=3) {
        let h = random_hermitian_quadratic(&mut StdRng::seed_from_u64(seed), k);
        let m = adjoint_matrix(&h).unwrap();
        let basis = BasisIndex::all(k);
        for (i, &oi) in basis.iter().enumerate() {
            let lhs = h.op().commutator(&WeylPolynomial::generator(k, oi)).unwrap();
            let mut rhs = WeylPolynomial::zero(k);
            for (j, &oj) in basis.iter().enumerate() {
                rhs = rhs + WeylPolynomial::generator(k, oj).scale(m.exact_get(j, i).unwrap());
            }
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn schrodinger_action_is_a_homomorphism(ps in (1usize..=2).prop_flat_map(|k| prop::collection::vec(poly(k, 1), 2)), seed in any::<u64>()) {
        let k = ps[0].num_modes();
        let f = random_decaying_function(&mut StdRng::seed_from_u64(seed), k, 2);
        let lhs = apply(&ps[0].multiply(&ps[1]).unwrap(), &f).unwrap();
        let rhs = apply(&ps[0], &apply(&ps[1], &f).unwrap()).unwrap();
        prop_assert!(lhs.add(&rhs.scale(&common::c((-1, 1), (0, 1)))).unwrap().is_zero());
    }
}

/// Composite Simpson on [−L, L] of conj(f)·g for one mode.
fn quadrature(f: impl Fn(f64) -> Complex64, g: impl Fn(f64) -> Complex64) -> Complex64 {
    let (l, n) = (14.0, 6000usize);
    let h = 2.0 * l / n as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for i in 0..=n {
        let x = -l + i as f64 * h;
        let w = if i == 0 || i == n { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
        total += f(x).conj() * g(x) * w;
    }
    total * h / 3.0
}

fn eval_1d(poly: &[(u32, ComplexRational)], s: &ComplexRational, l: &ComplexRational, x: f64) -> Complex64 {
    let p: Complex64 = poly.iter().map(|(e, c)| cf(c) * x.powi(*e as i32)).sum();
    p * (cf(s) * x * x + cf(l) * x).exp()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn inner_product_matches_quadrature(
        fp in prop::collection::vec((0u32..=3, coeff()), 1..=3),
        gp in prop::collection::vec((0u32..=3, coeff()), 1..=3),
        (fa, fb, ga, gb) in (2i64..=8, -4i64..=4, 2i64..=8, -4i64..=4),
        (fl, gl) in (coeff(), coeff()),
    ) {
        let fs = common::c((-fa, 4), (fb, 4));
        let gs = common::c((-ga, 4), (gb, 4));
        let build = |terms: &[(u32, ComplexRational)], s: &ComplexRational, l: &ComplexRational| {
            let poly = CommPoly::from_terms(1, terms.iter().map(|(e, c)| (vec![*e], c.clone())));
            if poly.is_zero() {
                return None;
            }
            Some(GaussianPolyFunction::new(poly, Exponent { quad: vec![s.clone()], lin: vec![l.clone()] }).unwrap())
        };
        let (Some(f), Some(g)) = (build(&fp, &fs, &fl), build(&gp, &gs, &gl)) else { return Ok(()) };
        let InnerProduct::Value(got) = inner_product(&f, &g).unwrap() else {
            return Err(TestCaseError::fail("decaying pair reported divergent"));
        };
        let want = quadrature(|x| eval_1d(&fp, &fs, &fl, x), |x| eval_1d(&gp, &gs, &gl, x));
        prop_assert!((got - want).norm() <= 1e-8 * (1.0 + want.norm()), "{got} vs {want}");
    }
}

#[test]
fn inner_product_of_growing_functions_diverges() {
    let grow = GaussianPolyFunction::gaussian(Exponent::diagonal(&[common::c((1, 2), (0, 1))])).unwrap();
    let decay = GaussianPolyFunction::gaussian(Exponent::diagonal(&[common::c((-1, 4), (0, 1))])).unwrap();
    assert_eq!(inner_product(&grow, &decay).unwrap(), InnerProduct::Divergent);
}

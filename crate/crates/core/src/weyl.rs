//! Normal-ordered polynomials in the Weyl algebra generated by
//! `x_1..x_K, p_1..p_K` with `[x_m, p_n] = i δ_mn`.
//!
//! Every monomial is stored as `x_1^a1 .. x_K^aK p_1^b1 .. p_K^bK` (positions
//! to the left of momenta, ascending mode within each kind), so two equal
//! operators always have identical term maps.

use crate::error::{Error, Result};
use crate::scalar::{fmt_rat, imag_unit, real, ComplexRational};
use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Position,
    Momentum,
}

/// One canonical generator. Ordering is positions by ascending mode, then
/// momenta by ascending mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisIndex {
    pub kind: Kind,
    /// 1-based mode number.
    pub mode: usize,
}

impl BasisIndex {
    pub fn position(mode: usize) -> Self {
        BasisIndex { kind: Kind::Position, mode }
    }

    pub fn momentum(mode: usize) -> Self {
        BasisIndex { kind: Kind::Momentum, mode }
    }

    /// 0-based slot in `[x_1..x_K, p_1..p_K]`.
    pub fn slot(&self, num_modes: usize) -> usize {
        match self.kind {
            Kind::Position => self.mode - 1,
            Kind::Momentum => num_modes + self.mode - 1,
        }
    }

    pub fn from_slot(slot: usize, num_modes: usize) -> Self {
        if slot < num_modes {
            BasisIndex::position(slot + 1)
        } else {
            BasisIndex::momentum(slot - num_modes + 1)
        }
    }

    /// All `2K` generators in basis order.
    pub fn all(num_modes: usize) -> Vec<BasisIndex> {
        (0..2 * num_modes)
            .map(|s| BasisIndex::from_slot(s, num_modes))
            .collect()
    }

    pub fn name(&self, style: SymbolStyle) -> String {
        match (style, self.kind, self.mode) {
            (SymbolStyle::Alias, Kind::Position, 1) => "x".into(),
            (SymbolStyle::Alias, Kind::Position, 2) => "y".into(),
            (SymbolStyle::Alias, Kind::Momentum, 1) => "px".into(),
            (SymbolStyle::Alias, Kind::Momentum, 2) => "py".into(),
            (_, Kind::Position, m) => format!("x{m}"),
            (_, Kind::Momentum, m) => format!("p{m}"),
        }
    }
}

/// How generators are spelled when rendering: `x1, p2` or the two-mode
/// aliases `x, y, px, py`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SymbolStyle {
    #[default]
    Indexed,
    Alias,
}

/// Exponent vector over `[x_1..x_K, p_1..p_K]`.
///
/// Ordered graded-lexicographically with the highest degree first, so a
/// `BTreeMap<Monomial, _>` iterates in rendering order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(num_modes: usize) -> Self {
        Monomial { exps: vec![0; 2 * num_modes] }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        assert!(exps.len().is_multiple_of(2), "exponent vector must have length 2K");
        Monomial { exps }
    }

    pub fn generator(b: BasisIndex, num_modes: usize) -> Self {
        let mut m = Monomial::one(num_modes);
        m.exps[b.slot(num_modes)] = 1;
        m
    }

    pub fn num_modes(&self) -> usize {
        self.exps.len() / 2
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn position_exponents(&self) -> &[u32] {
        &self.exps[..self.num_modes()]
    }

    pub fn momentum_exponents(&self) -> &[u32] {
        &self.exps[self.num_modes()..]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// The single generator this monomial equals, if it has degree one.
    pub fn as_generator(&self) -> Option<BasisIndex> {
        if self.degree() != 1 {
            return None;
        }
        let slot = self.exps.iter().position(|&e| e == 1)?;
        Some(BasisIndex::from_slot(slot, self.num_modes()))
    }

    fn render(&self, style: SymbolStyle) -> String {
        let k = self.num_modes();
        let mut factors = Vec::new();
        for (slot, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let name = BasisIndex::from_slot(slot, k).name(style);
            if e == 1 {
                factors.push(name);
            } else {
                factors.push(format!("{name}^{e}"));
            }
        }
        factors.join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact normal-ordered element of the Weyl algebra over complex rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylPolynomial {
    num_modes: usize,
    terms: BTreeMap<Monomial, ComplexRational>,
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// `(-i)^k`
fn minus_i_pow(k: u32) -> ComplexRational {
    let z = BigRational::zero;
    let o = BigRational::one;
    match k % 4 {
        0 => Complex::new(o(), z()),
        1 => Complex::new(z(), -o()),
        2 => Complex::new(-o(), z()),
        _ => Complex::new(z(), o()),
    }
}

/// `p^n x^m = Σ_s s! C(n,s) C(m,s) (-i)^s x^(m-s) p^(n-s)` for one mode.
fn reorder_coefficients(n: u32, m: u32) -> Vec<(u32, ComplexRational)> {
    (0..=n.min(m))
        .map(|s| {
            let c = factorial(s) * binomial(n, s) * binomial(m, s);
            (s, minus_i_pow(s) * real(BigRational::from_integer(c)))
        })
        .collect()
}

impl WeylPolynomial {
    pub fn zero(num_modes: usize) -> Self {
        WeylPolynomial { num_modes, terms: BTreeMap::new() }
    }

    pub fn scalar(num_modes: usize, c: ComplexRational) -> Self {
        let mut p = WeylPolynomial::zero(num_modes);
        p.add_term(Monomial::one(num_modes), c);
        p
    }

    pub fn one(num_modes: usize) -> Self {
        WeylPolynomial::scalar(num_modes, ComplexRational::one())
    }

    pub fn generator(num_modes: usize, b: BasisIndex) -> Self {
        assert!(b.mode >= 1 && b.mode <= num_modes, "mode out of range");
        let mut p = WeylPolynomial::zero(num_modes);
        p.add_term(Monomial::generator(b, num_modes), ComplexRational::one());
        p
    }

    /// `x_mode`
    pub fn x(num_modes: usize, mode: usize) -> Self {
        WeylPolynomial::generator(num_modes, BasisIndex::position(mode))
    }

    /// `p_mode`
    pub fn p(num_modes: usize, mode: usize) -> Self {
        WeylPolynomial::generator(num_modes, BasisIndex::momentum(mode))
    }

    /// `Σ_i c_i O_i` for a coefficient column in basis order.
    pub fn linear(num_modes: usize, coeffs: &[ComplexRational]) -> Self {
        assert_eq!(coeffs.len(), 2 * num_modes);
        let mut p = WeylPolynomial::zero(num_modes);
        for (slot, c) in coeffs.iter().enumerate() {
            let b = BasisIndex::from_slot(slot, num_modes);
            p.add_term(Monomial::generator(b, num_modes), c.clone());
        }
        p
    }

    pub fn from_terms<I>(num_modes: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, ComplexRational)>,
    {
        let mut p = WeylPolynomial::zero(num_modes);
        for (m, c) in terms {
            assert_eq!(m.num_modes(), num_modes);
            p.add_term(m, c);
        }
        p
    }

    pub fn num_modes(&self) -> usize {
        self.num_modes
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ComplexRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> ComplexRational {
        self.terms.get(m).cloned().unwrap_or_else(ComplexRational::zero)
    }

    /// Highest total degree present; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Coefficient of the identity monomial.
    pub fn constant_term(&self) -> ComplexRational {
        self.coeff(&Monomial::one(self.num_modes))
    }

    /// The scalar value if this polynomial has no terms of positive degree.
    pub fn as_scalar(&self) -> Option<ComplexRational> {
        match self.degree() {
            None => Some(ComplexRational::zero()),
            Some(0) => Some(self.constant_term()),
            _ => None,
        }
    }

    /// Coefficients of the degree-one part in basis order.
    pub fn linear_coefficients(&self) -> Vec<ComplexRational> {
        BasisIndex::all(self.num_modes)
            .into_iter()
            .map(|b| self.coeff(&Monomial::generator(b, self.num_modes)))
            .collect()
    }

    fn add_term(&mut self, m: Monomial, c: ComplexRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_modes(&self, other: &WeylPolynomial) -> Result<()> {
        if self.num_modes != other.num_modes {
            return Err(Error::Dimension {
                left: self.num_modes,
                right: other.num_modes,
            });
        }
        Ok(())
    }

    pub fn scale(&self, c: &ComplexRational) -> WeylPolynomial {
        if c.is_zero() {
            return WeylPolynomial::zero(self.num_modes);
        }
        WeylPolynomial {
            num_modes: self.num_modes,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn try_add(&self, other: &WeylPolynomial) -> Result<WeylPolynomial> {
        self.check_modes(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &WeylPolynomial) -> Result<WeylPolynomial> {
        self.check_modes(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Operator product `self · other`, reduced to normal order.
    pub fn multiply(&self, other: &WeylPolynomial) -> Result<WeylPolynomial> {
        self.check_modes(other)?;
        let k = self.num_modes;
        let mut out = WeylPolynomial::zero(k);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let coeff = ca * cb;
                for (m, c) in monomial_product(ma, mb) {
                    out.add_term(m, &coeff * c);
                }
            }
        }
        Ok(out)
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &WeylPolynomial) -> Result<WeylPolynomial> {
        self.multiply(other)?.try_sub(&other.multiply(self)?)
    }

    pub fn pow(&self, n: u32) -> WeylPolynomial {
        let mut acc = WeylPolynomial::one(self.num_modes);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Hermitian adjoint: conjugated coefficients with each monomial's
    /// factor order reversed and re-normal-ordered.
    pub fn dagger(&self) -> WeylPolynomial {
        let k = self.num_modes;
        let mut out = WeylPolynomial::zero(k);
        for (m, c) in &self.terms {
            // (x^a p^b)^† = p^b x^a
            let mut p_part = vec![0; 2 * k];
            let mut x_part = vec![0; 2 * k];
            p_part[k..].copy_from_slice(m.momentum_exponents());
            x_part[..k].copy_from_slice(m.position_exponents());
            let conj = c.conj();
            for (mm, cc) in
                monomial_product(&Monomial::from_exponents(p_part), &Monomial::from_exponents(x_part))
            {
                out.add_term(mm, &conj * cc);
            }
        }
        out
    }

    pub fn is_hermitian(&self) -> bool {
        self.dagger() == *self
    }

    /// Partition of the terms by total degree.
    pub fn degree_decompose(&self) -> BTreeMap<u32, WeylPolynomial> {
        let mut parts: BTreeMap<u32, WeylPolynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts
                .entry(m.degree())
                .or_insert_with(|| WeylPolynomial::zero(self.num_modes))
                .add_term(m.clone(), c.clone());
        }
        parts
    }

    /// If `self == c · other` for a single scalar `c`, returns `c`.
    pub fn proportionality(&self, other: &WeylPolynomial) -> Option<ComplexRational> {
        if self.num_modes != other.num_modes {
            return None;
        }
        if other.is_zero() {
            return if self.is_zero() { Some(ComplexRational::zero()) } else { None };
        }
        let (m0, c0) = other.terms.iter().next()?;
        let ratio = self.coeff(m0) / c0;
        if other.scale(&ratio) == *self {
            Some(ratio)
        } else {
            None
        }
    }

    pub fn render(&self, style: SymbolStyle) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let (negative, magnitude) = split_sign(c);
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = m.render(style);
            let coef = render_coefficient(&magnitude);
            match (coef.as_str(), mono.is_empty()) {
                (_, true) => out.push_str(&coef),
                ("1", false) => out.push_str(&mono),
                (_, false) => {
                    out.push_str(&coef);
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }
}

/// Pulls an overall minus sign out of purely real or purely imaginary
/// coefficients so rendering reads `a - b` rather than `a + -b`.
fn split_sign(c: &ComplexRational) -> (bool, ComplexRational) {
    let negative = if c.im.is_zero() {
        c.re.is_negative()
    } else if c.re.is_zero() {
        c.im.is_negative()
    } else {
        false
    };
    if negative {
        (true, -c.clone())
    } else {
        (false, c.clone())
    }
}

fn render_coefficient(c: &ComplexRational) -> String {
    let paren = |r: &BigRational| {
        if r.denom().is_one() {
            fmt_rat(r)
        } else {
            format!("({})", fmt_rat(r))
        }
    };
    if c.im.is_zero() {
        paren(&c.re)
    } else if c.re.is_zero() {
        if c.im.is_one() {
            "i".into()
        } else {
            format!("{}*i", paren(&c.im))
        }
    } else {
        let sign = if c.im.is_negative() { "-" } else { "+" };
        let im = c.im.abs();
        let im_s = if im.is_one() { "i".into() } else { format!("{}*i", fmt_rat(&im)) };
        format!("({} {} {})", fmt_rat(&c.re), sign, im_s)
    }
}

/// Normal-ordered expansion of `ma · mb` for normal-ordered monomials.
fn monomial_product(ma: &Monomial, mb: &Monomial) -> Vec<(Monomial, ComplexRational)> {
    let k = ma.num_modes();
    // Only the middle `p^b x^c` block needs reordering, and modes commute.
    let mut acc: Vec<(Vec<u32>, ComplexRational)> = vec![(vec![0; k], ComplexRational::one())];
    for j in 0..k {
        let n = ma.exps[k + j];
        let m = mb.exps[j];
        if n == 0 || m == 0 {
            continue;
        }
        let expansion = reorder_coefficients(n, m);
        let mut next = Vec::with_capacity(acc.len() * expansion.len());
        for (contractions, c) in &acc {
            for (s, cs) in &expansion {
                let mut contr = contractions.clone();
                contr[j] = *s;
                next.push((contr, c * cs));
            }
        }
        acc = next;
    }
    acc.into_iter()
        .map(|(contr, c)| {
            let mut exps = vec![0; 2 * k];
            for j in 0..k {
                exps[j] = ma.exps[j] + mb.exps[j] - contr[j];
                exps[k + j] = ma.exps[k + j] + mb.exps[k + j] - contr[j];
            }
            (Monomial { exps }, c)
        })
        .collect()
}

impl fmt::Display for WeylPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(SymbolStyle::Indexed))
    }
}

impl Add for &WeylPolynomial {
    type Output = WeylPolynomial;
    fn add(self, rhs: &WeylPolynomial) -> WeylPolynomial {
        self.try_add(rhs).expect("mode-count mismatch in WeylPolynomial addition")
    }
}

impl Sub for &WeylPolynomial {
    type Output = WeylPolynomial;
    fn sub(self, rhs: &WeylPolynomial) -> WeylPolynomial {
        self.try_sub(rhs).expect("mode-count mismatch in WeylPolynomial subtraction")
    }
}

impl Mul for &WeylPolynomial {
    type Output = WeylPolynomial;
    fn mul(self, rhs: &WeylPolynomial) -> WeylPolynomial {
        self.multiply(rhs).expect("mode-count mismatch in WeylPolynomial product")
    }
}

impl Add for WeylPolynomial {
    type Output = WeylPolynomial;
    fn add(self, rhs: WeylPolynomial) -> WeylPolynomial {
        &self + &rhs
    }
}

impl Sub for WeylPolynomial {
    type Output = WeylPolynomial;
    fn sub(self, rhs: WeylPolynomial) -> WeylPolynomial {
        &self - &rhs
    }
}

impl Mul for WeylPolynomial {
    type Output = WeylPolynomial;
    fn mul(self, rhs: WeylPolynomial) -> WeylPolynomial {
        &self * &rhs
    }
}

impl Neg for &WeylPolynomial {
    type Output = WeylPolynomial;
    fn neg(self) -> WeylPolynomial {
        self.scale(&-ComplexRational::one())
    }
}

impl Neg for WeylPolynomial {
    type Output = WeylPolynomial;
    fn neg(self) -> WeylPolynomial {
        -&self
    }
}

impl Mul<&WeylPolynomial> for &ComplexRational {
    type Output = WeylPolynomial;
    fn mul(self, rhs: &WeylPolynomial) -> WeylPolynomial {
        rhs.scale(self)
    }
}

impl Mul<WeylPolynomial> for ComplexRational {
    type Output = WeylPolynomial;
    fn mul(self, rhs: WeylPolynomial) -> WeylPolynomial {
        rhs.scale(&self)
    }
}

/// Shorthand for `i` times a polynomial.
pub fn times_i(p: &WeylPolynomial) -> WeylPolynomial {
    p.scale(&imag_unit())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{cq, cq_int};

    fn x1() -> WeylPolynomial {
        WeylPolynomial::x(1, 1)
    }
    fn p1() -> WeylPolynomial {
        WeylPolynomial::p(1, 1)
    }

    #[test]
    fn single_swap() {
        let expected = &(&x1() * &p1()) - &WeylPolynomial::scalar(1, imag_unit());
        assert_eq!(&p1() * &x1(), expected);
        assert_eq!(&x1() * &p1(), (&x1() * &p1()));
        assert_eq!((&x1() * &p1()).len(), 1);
    }

    #[test]
    fn p_squared_times_x() {
        // p^2 x = x p^2 - 2i p
        let lhs = &p1().pow(2) * &x1();
        let rhs = &(&x1() * &p1().pow(2)) - &p1().scale(&cq(0, 1, 2, 1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn canonical_commutators() {
        let k = 2;
        let x = WeylPolynomial::x(k, 1);
        let y = WeylPolynomial::x(k, 2);
        let px = WeylPolynomial::p(k, 1);
        let py = WeylPolynomial::p(k, 2);
        assert_eq!(x.commutator(&px).unwrap(), WeylPolynomial::scalar(k, imag_unit()));
        assert!(x.commutator(&y).unwrap().is_zero());
        assert!(x.commutator(&py).unwrap().is_zero());
        assert!(px.commutator(&py).unwrap().is_zero());
    }

    #[test]
    fn mode_mismatch_is_an_error() {
        let a = WeylPolynomial::x(1, 1);
        let b = WeylPolynomial::x(2, 2);
        assert!(matches!(a.multiply(&b), Err(Error::Dimension { left: 1, right: 2 })));
        assert!(a.commutator(&b).is_err());
    }

    #[test]
    fn dagger_of_xp() {
        let xp = &x1() * &p1();
        let expected = &xp - &WeylPolynomial::scalar(1, imag_unit());
        assert_eq!(xp.dagger(), expected);
        assert!(!xp.is_hermitian());
        let sym = &xp + &(&p1() * &x1());
        assert!(sym.is_hermitian());
    }

    #[test]
    fn degree_decomposition() {
        let x = x1();
        let p = &(&x.pow(2) + &x) + &WeylPolynomial::one(1);
        let parts = p.degree_decompose();
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[&2], x.pow(2));
        assert_eq!(parts[&1], x);
        assert_eq!(parts[&0], WeylPolynomial::one(1));
        assert!(WeylPolynomial::zero(1).degree_decompose().is_empty());
    }

    #[test]
    fn rendering_is_graded() {
        let k = 2;
        let x = WeylPolynomial::x(k, 1);
        let py = WeylPolynomial::p(k, 2);
        let p = &(&py.pow(2).scale(&cq(1, 2, 0, 1)) - &x) + &WeylPolynomial::scalar(k, cq_int(3));
        assert_eq!(p.render(SymbolStyle::Indexed), "(1/2)*p2^2 - x1 + 3");
        assert_eq!(p.render(SymbolStyle::Alias), "(1/2)*py^2 - x + 3");
        let q = x.scale(&cq(1, 1, -1, 2));
        assert_eq!(q.to_string(), "(1 - 1/2*i)*x1");
        assert_eq!(WeylPolynomial::zero(2).to_string(), "0");
    }

    #[test]
    fn proportionality_detects_scalar_multiples() {
        let x = WeylPolynomial::x(2, 1);
        let px = WeylPolynomial::p(2, 1);
        let z = &x + &times_i(&px);
        let c = cq(1, 1, 1, 2);
        assert_eq!(z.scale(&c).proportionality(&z), Some(c));
        assert_eq!(x.proportionality(&z), None);
    }
}

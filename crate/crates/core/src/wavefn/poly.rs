//! Commutative polynomials in `x_1..x_K` with complex-rational coefficients.

use crate::scalar::{fmt_cq, int, real, ComplexRational};
use num_traits::{One, Signed, Zero};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommPoly {
    num_vars: usize,
    terms: BTreeMap<Vec<u32>, ComplexRational>,
}

impl CommPoly {
    pub fn zero(num_vars: usize) -> Self {
        CommPoly { num_vars, terms: BTreeMap::new() }
    }

    pub fn constant(num_vars: usize, c: ComplexRational) -> Self {
        let mut p = CommPoly::zero(num_vars);
        p.add_term(vec![0; num_vars], c);
        p
    }

    pub fn one(num_vars: usize) -> Self {
        CommPoly::constant(num_vars, ComplexRational::one())
    }

    /// `x_j` with 1-based `j`.
    pub fn var(num_vars: usize, j: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[j - 1] = 1;
        let mut p = CommPoly::zero(num_vars);
        p.add_term(e, ComplexRational::one());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, ComplexRational)>>(num_vars: usize, terms: I) -> Self {
        let mut p = CommPoly::zero(num_vars);
        for (e, c) in terms {
            assert_eq!(e.len(), num_vars);
            p.add_term(e, c);
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &ComplexRational)> {
        self.terms.iter()
    }

    pub fn first_term(&self) -> Option<(&Vec<u32>, &ComplexRational)> {
        self.terms.iter().next()
    }

    pub fn coeff(&self, e: &[u32]) -> ComplexRational {
        self.terms.get(e).cloned().unwrap_or_else(ComplexRational::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub(crate) fn add_term(&mut self, e: Vec<u32>, c: ComplexRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &CommPoly) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &ComplexRational) -> CommPoly {
        if c.is_zero() {
            return CommPoly::zero(self.num_vars);
        }
        CommPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &CommPoly) -> CommPoly {
        let mut out = CommPoly::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// Multiplies by the monomial `x^exps`.
    pub fn shift(&self, exps: &[u32]) -> CommPoly {
        CommPoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// `∂/∂x_j`, 0-based `j`.
    pub fn derivative(&self, j: usize) -> CommPoly {
        let mut out = CommPoly::zero(self.num_vars);
        for (e, c) in &self.terms {
            if e[j] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[j] -= 1;
            out.add_term(d, c * real(int(e[j] as i64)));
        }
        out
    }

    pub fn conj(&self) -> CommPoly {
        CommPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.conj())).collect(),
        }
    }

    fn monomial_name(e: &[u32]) -> String {
        e.iter()
            .enumerate()
            .filter(|(_, &p)| p > 0)
            .map(|(j, &p)| if p == 1 { format!("x{}", j + 1) } else { format!("x{}^{}", j + 1, p) })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // highest degree first
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        let mut out = String::new();
        for (e, c) in terms {
            // real negative coefficients print as subtraction
            let negative = c.im.is_zero() && c.re.is_negative();
            let c = if negative { -c.clone() } else { c.clone() };
            let name = CommPoly::monomial_name(e);
            let body = match (name.is_empty(), c.is_one()) {
                (true, _) => fmt_cq(&c),
                (false, true) => name,
                (false, false) => format!("{}*{}", fmt_cq(&c), name),
            };
            out.push_str(match (out.is_empty(), negative) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            });
            out.push_str(&body);
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cq_int;

    #[test]
    fn product_and_derivative() {
        let x = CommPoly::var(2, 1);
        let y = CommPoly::var(2, 2);
        let mut s = x.clone();
        s.add_assign(&y);
        let sq = s.mul(&s);
        assert_eq!(sq.coeff(&[1, 1]), cq_int(2));
        assert_eq!(sq.derivative(0).coeff(&[1, 0]), cq_int(2));
        assert_eq!(sq.derivative(0).coeff(&[0, 1]), cq_int(2));
        let mut cancel = x.clone();
        cancel.add_assign(&x.scale(&cq_int(-1)));
        assert!(cancel.is_zero());
    }

    #[test]
    fn display_subtracts_negative_terms() {
        let p = CommPoly::from_terms(2, [(vec![1, 0], cq_int(2)), (vec![0, 1], cq_int(-2)), (vec![0, 0], cq_int(-4))]);
        assert_eq!(p.to_string(), "2*x1 - 2*x2 - 4");
        assert_eq!(p.scale(&cq_int(-1)).to_string(), "-2*x1 + 2*x2 + 4");
    }
}

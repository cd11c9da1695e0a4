//! Multivariate polynomials `Q[x_1, ..., x_m]` with exact rational
//! coefficients, and the divided difference operators on them.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::ring::Rational;

/// Exponent vector of a monomial.
pub type Exponents = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], Rational::one())
    }

    pub fn monomial(exps: Exponents, c: Rational) -> Self {
        let mut p = Poly::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// The variable `x_k` (0-based).
    pub fn var(nvars: usize, k: usize) -> Self {
        let mut e = vec![0; nvars];
        e[k] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, exps: Exponents, c: Rational) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiplication by the monomial `x^a`.
    pub fn mul_monomial(&self, a: &[u32]) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(a).map(|(x, y)| x + y).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn mul_var(&self, k: usize) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[k] += 1;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// `s_k f`: swap `x_k` and `x_{k+1}`.
    pub fn swap_vars(&self, k: usize) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.swap(k, k + 1);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// `d_k f = (f - s_k f) / (x_k - x_{k+1})`.
    pub fn divided_difference(&self, k: usize) -> Self {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            for (mono, sign) in divided_difference_monomial(e, k) {
                let c = if sign > 0 { c.clone() } else { -c.clone() };
                out.add_term(mono, c);
            }
        }
        out
    }

    /// Evaluates `d_w` for `w` given by a word `[k1, ..., kr]`, applying `d_{kr}` first.
    pub fn divided_difference_word(&self, word: &[usize]) -> Self {
        word.iter().rev().fold(self.clone(), |f, &k| f.divided_difference(k))
    }
}

/// `d_k(x^a)` as a list of `(monomial, +-1)`; every coefficient is `+-1`.
pub fn divided_difference_monomial(a: &[u32], k: usize) -> Vec<(Exponents, i8)> {
    let (p, q) = (a[k], a[k + 1]);
    if p == q {
        return Vec::new();
    }
    // (x_k x_{k+1})^low * d(x_k^n), with the sign flipped when x_{k+1} dominates.
    let (low, n, sign) = if p > q { (q, p - q, 1) } else { (p, q - p, -1) };
    (0..n)
        .map(|i| {
            let mut e = a.to_vec();
            e[k] = low + i;
            e[k + 1] = low + n - 1 - i;
            (e, sign)
        })
        .collect()
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

// Exponents add when monomials multiply.
#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea.iter().zip(eb).map(|(x, y)| x + y).collect(), ca * cb);
            }
        }
        out
    }
}

/// All exponent vectors in `nvars` variables of total degree exactly `degree`.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Exponents> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Exponents>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            rec(pos + 1, left - e, cur, out);
        }
    }
    if nvars == 0 {
        if degree == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, degree, &mut cur, &mut out);
    out
}

/// All exponent vectors of total degree `<= max_degree`.
pub fn monomials_up_to(nvars: usize, max_degree: u32) -> Vec<Exponents> {
    (0..=max_degree).flat_map(|d| monomials_of_degree(nvars, d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn divided_difference_basics() {
        let x1 = Poly::var(2, 0);
        let x2 = Poly::var(2, 1);
        assert_eq!(x1.divided_difference(0), Poly::one(2));
        assert_eq!(x2.divided_difference(0), Poly::one(2).scale(&rat(-1)));
        // d(x1^2) = x1 + x2
        let sq = &x1 * &x1;
        assert_eq!(sq.divided_difference(0), &x1 + &x2);
        let sym = &(&x1 * &x2) + &(&x1 + &x2);
        assert!(sym.divided_difference(0).is_zero());
    }

    #[test]
    fn divided_difference_matches_definition() {
        // (f - s f) = (x_k - x_{k+1}) d f on every monomial of degree <= 6.
        for e in monomials_up_to(3, 6) {
            let f = Poly::monomial(e, rat(1));
            for k in 0..2 {
                let lhs = &f - &f.swap_vars(k);
                let diff = &Poly::var(3, k) - &Poly::var(3, k + 1);
                assert_eq!(lhs, &diff * &f.divided_difference(k));
            }
        }
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_up_to(4, 10).len(), 1001);
        assert_eq!(monomials_up_to(0, 3).len(), 1);
    }
}

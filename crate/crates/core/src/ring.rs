//! Exact arithmetic in `Z[q, q^-1]` and graded dimensions of the form
//! `p(q) / prod (1 - q^d)`.
//!
//! The same [`LaurentPoly`] type is used for the Hecke algebra, where the
//! variable is read as `t` with `q = t^2`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::RingError;

/// Exact rational coefficient used by the linear algebra and the algebras.
pub type Rational = BigRational;

/// A Laurent polynomial with integer coefficients.
///
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c)
    }

    /// `c * q^exp`
    pub fn monomial(exp: i64, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        Self { coeffs }
    }

    /// The variable itself.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    /// `q^exp`
    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(exp, 1)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Keeps only the terms with exponent `<= cutoff`.
    pub fn truncate(&self, cutoff: i64) -> Self {
        Self {
            coeffs: self.coeffs.range(..=cutoff).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    /// Substitutes `q -> q^k` (`k` may be negative).
    pub fn substitute_power(&self, k: i64) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(e, c)| (e * k, c.clone())))
    }

    /// Exact division in `Z[q, q^-1]`; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (d_lead_exp, d_lead) = divisor.terms().next_back()?;
        let d_low = divisor.min_exp()?;
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        loop {
            let lead = rem.terms().next_back().map(|(e, c)| (e, c.clone()));
            let Some((r_exp, r_lead)) = lead else { break };
            // Remaining span narrower than the divisor: not divisible.
            if r_exp - rem.min_exp()? < d_lead_exp - d_low {
                return None;
            }
            let (factor, check) = (&r_lead / d_lead, &r_lead % d_lead);
            if !check.is_zero() {
                return None;
            }
            let term = LaurentPoly::monomial(r_exp - d_lead_exp, factor);
            rem = &rem - &(&term * divisor);
            quot = &quot + &term;
        }
        Some(quot)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, -c.clone());
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &rhs.coeffs {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl LaurentPoly {
    /// Formats with an explicit variable name (`q` or `t`).
    pub fn display_with<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        DisplayPoly { poly: self, var }
    }
}

struct DisplayPoly<'a> {
    poly: &'a LaurentPoly,
    var: &'a str,
}

impl fmt::Display for DisplayPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        // Highest power first, the usual way to write polynomials.
        for (n, (e, c)) in self.poly.terms().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let unit = abs.is_one();
            if e == 0 {
                write!(f, "{abs}")?;
                continue;
            }
            if !unit {
                write!(f, "{abs}*")?;
            }
            if e == 1 {
                write!(f, "{}", self.var)?;
            } else {
                write!(f, "{}^{}", self.var, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.display_with("q"), f)
    }
}

/// The balanced quantum integer `[n] = q^{n-1} + q^{n-3} + ... + q^{1-n}`.
pub fn qint(n: i64) -> Result<LaurentPoly, RingError> {
    if n <= 0 {
        return Err(RingError::NonPositiveQuantumInteger(n));
    }
    Ok(LaurentPoly::from_terms(
        (0..n).map(|k| (n - 1 - 2 * k, BigInt::one())),
    ))
}

/// `[n]! = [1][2]...[n]`, with `[0]! = 1`.
pub fn qfactorial(n: u32) -> LaurentPoly {
    (1..=i64::from(n)).fold(LaurentPoly::one(), |acc, k| {
        &acc * &qint(k).expect("k >= 1")
    })
}

/// A graded dimension `numerator / prod_{d in den} (1 - q^d)`.
///
/// Denominator factors are positive even integers kept as a sorted multiset;
/// equality is decided by cross-multiplication, so no canonical form exists.
#[derive(Clone)]
pub struct RationalGraded {
    num: LaurentPoly,
    den: Vec<u32>,
}

impl RationalGraded {
    /// # Panics
    /// If a denominator entry is zero or odd.
    pub fn new(num: LaurentPoly, mut den: Vec<u32>) -> Self {
        assert!(
            den.iter().all(|d| *d > 0 && d % 2 == 0),
            "denominator factors must be positive even integers: {den:?}"
        );
        den.sort_unstable();
        Self { num, den }
    }

    pub fn polynomial(num: LaurentPoly) -> Self {
        Self { num, den: Vec::new() }
    }

    pub fn zero() -> Self {
        Self::polynomial(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::polynomial(LaurentPoly::one())
    }

    /// `num / (1 - q^2)^m`, the shape of every KLR hom space.
    pub fn over_dots(num: LaurentPoly, m: usize) -> Self {
        Self::new(num, vec![2; m])
    }

    /// `prod_{k=1}^{m} 1/(1 - q^{2k})`, the graded dimension of symmetric polynomials.
    pub fn symmetric_polys(m: u32) -> Self {
        Self::new(LaurentPoly::one(), (1..=m).map(|k| 2 * k).collect())
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &[u32] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The product `prod (1 - q^d)` as a polynomial.
    pub fn denominator_poly(&self) -> LaurentPoly {
        den_poly(&self.den)
    }

    pub fn shift(&self, k: i64) -> Self {
        Self { num: self.num.shift(k), den: self.den.clone() }
    }

    pub fn scale(&self, p: &LaurentPoly) -> Self {
        Self { num: &self.num * p, den: self.den.clone() }
    }

    /// Lowest degree of the power series, if nonzero.
    pub fn lowest_degree(&self) -> Option<i64> {
        // Every factor 1/(1 - q^d) starts with 1.
        self.num.min_exp()
    }

    /// Shifts so the series starts in degree 0.
    pub fn normalize_lowest(&self) -> Self {
        match self.lowest_degree() {
            Some(low) => self.shift(-low),
            None => self.clone(),
        }
    }

    /// Power series expansion truncated to exponents `<= cutoff`.
    pub fn expand(&self, cutoff: i64) -> LaurentPoly {
        let Some(low) = self.num.min_exp() else {
            return LaurentPoly::zero();
        };
        if low > cutoff {
            return LaurentPoly::zero();
        }
        let len = usize::try_from(cutoff - low + 1).expect("cutoff >= low");
        let mut series: Vec<BigInt> = vec![BigInt::zero(); len];
        for (e, c) in self.num.terms() {
            if e <= cutoff {
                series[usize::try_from(e - low).expect("e >= low")] = c.clone();
            }
        }
        for &d in &self.den {
            let d = d as usize;
            for idx in d..len {
                let prev = series[idx - d].clone();
                series[idx] += prev;
            }
        }
        LaurentPoly::from_terms(
            series.into_iter().enumerate().map(|(i, c)| (low + i as i64, c)),
        )
    }

    /// `a/D_a == b/D_b` iff `a * D_b == b * D_a`.
    pub fn rg_equal(&self, other: &RationalGraded) -> bool {
        let lhs = &self.num * &other.denominator_poly();
        let rhs = &other.num * &self.denominator_poly();
        lhs == rhs
    }
}

fn den_poly(den: &[u32]) -> LaurentPoly {
    den.iter().fold(LaurentPoly::one(), |acc, d| {
        &acc * &LaurentPoly::from_terms([(0, 1), (i64::from(*d), -1)])
    })
}

/// Multiset difference `a \ b`, assuming `b` is a sub-multiset of `a`.
fn multiset_minus(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    let mut j = 0;
    for &x in a {
        if j < b.len() && b[j] == x {
            j += 1;
        } else {
            out.push(x);
        }
    }
    out
}

/// Smallest multiset containing both `a` and `b`.
fn multiset_union(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len().max(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) if x == y => {
                out.push(*x);
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push(*x);
                i += 1;
            }
            (Some(_), Some(y)) => {
                out.push(*y);
                j += 1;
            }
            (Some(x), None) => {
                out.push(*x);
                i += 1;
            }
            (None, Some(y)) => {
                out.push(*y);
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

impl PartialEq for RationalGraded {
    fn eq(&self, other: &Self) -> bool {
        self.rg_equal(other)
    }
}

impl Eq for RationalGraded {}

impl Add for &RationalGraded {
    type Output = RationalGraded;
    fn add(self, rhs: &RationalGraded) -> RationalGraded {
        let den = multiset_union(&self.den, &rhs.den);
        let a = &self.num * &den_poly(&multiset_minus(&den, &self.den));
        let b = &rhs.num * &den_poly(&multiset_minus(&den, &rhs.den));
        RationalGraded { num: a + b, den }
    }
}

impl Add for RationalGraded {
    type Output = RationalGraded;
    fn add(self, rhs: RationalGraded) -> RationalGraded {
        &self + &rhs
    }
}

impl Neg for &RationalGraded {
    type Output = RationalGraded;
    fn neg(self) -> RationalGraded {
        RationalGraded { num: -&self.num, den: self.den.clone() }
    }
}

impl Sub for &RationalGraded {
    type Output = RationalGraded;
    fn sub(self, rhs: &RationalGraded) -> RationalGraded {
        self + &(-rhs)
    }
}

impl Mul for &RationalGraded {
    type Output = RationalGraded;
    fn mul(self, rhs: &RationalGraded) -> RationalGraded {
        let mut den = self.den.clone();
        den.extend_from_slice(&rhs.den);
        RationalGraded::new(&self.num * &rhs.num, den)
    }
}

impl fmt::Debug for RationalGraded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalGraded({self})")
    }
}

impl fmt::Display for RationalGraded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.num)?;
        if !self.den.is_empty() {
            f.write_str(" / (")?;
            for (n, d) in self.den.iter().enumerate() {
                if n > 0 {
                    f.write_str(")(")?;
                }
                write!(f, "1 - q^{d}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Rebuilds `series = num / den` from a truncated series when the numerator
/// provably fits in the window: the product `series * den` must vanish on
/// `(cutoff - guard, cutoff]`.
pub fn reconstruct_from_series(
    series: &LaurentPoly,
    cutoff: i64,
    den: Vec<u32>,
    guard: i64,
) -> Option<RationalGraded> {
    let num = (series * &den_poly(&den)).truncate(cutoff);
    if num.terms().any(|(e, _)| e > cutoff - guard) {
        return None;
    }
    Some(RationalGraded::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn laurent_products() {
        let a = lp(&[(1, 1), (-1, 1)]);
        let b = lp(&[(1, 1), (-1, -1)]);
        assert_eq!(&a * &b, lp(&[(2, 1), (-2, -1)]));
        assert_eq!(&LaurentPoly::one() * &a, a);
        let c = lp(&[(0, 1), (1, 1)]);
        assert_eq!(&c * &c, lp(&[(0, 1), (1, 2), (2, 1)]));
    }

    #[test]
    fn quantum_integers() {
        assert_eq!(qint(1).unwrap(), LaurentPoly::one());
        assert_eq!(qint(2).unwrap(), lp(&[(1, 1), (-1, 1)]));
        assert_eq!(qint(3).unwrap(), lp(&[(2, 1), (0, 1), (-2, 1)]));
        assert!(matches!(qint(0), Err(RingError::NonPositiveQuantumInteger(0))));
        assert!(qint(-2).is_err());
        assert_eq!(qfactorial(3), &qint(2).unwrap() * &qint(3).unwrap());
    }

    #[test]
    fn graded_equality() {
        let a = RationalGraded::new(LaurentPoly::one(), vec![2]);
        let b = RationalGraded::new(lp(&[(0, 1), (2, 1)]), vec![4]);
        assert!(a.rg_equal(&b));
        let c = RationalGraded::new(LaurentPoly::q(), vec![2, 2]);
        let d = RationalGraded::new(LaurentPoly::one(), vec![2, 2]);
        assert!(!c.rg_equal(&d));
        let z1 = RationalGraded::new(LaurentPoly::zero(), vec![2]);
        let z2 = RationalGraded::new(LaurentPoly::zero(), vec![4]);
        assert!(z1.rg_equal(&z2));
    }

    #[test]
    fn series_expansion() {
        let a = RationalGraded::new(LaurentPoly::one(), vec![2]);
        assert_eq!(a.expand(6), lp(&[(0, 1), (2, 1), (4, 1), (6, 1)]));
        let b = RationalGraded::new(LaurentPoly::q(), vec![2]);
        assert_eq!(b.expand(5), lp(&[(1, 1), (3, 1), (5, 1)]));
        // Product of two geometric series, multiplied out by hand.
        let c = RationalGraded::new(LaurentPoly::one(), vec![2, 2]);
        assert_eq!(c.expand(4), lp(&[(0, 1), (2, 2), (4, 3)]));
        let neg = RationalGraded::new(lp(&[(-2, 1), (0, 1)]), vec![2, 2]);
        assert_eq!(neg.expand(0), lp(&[(-2, 1), (0, 3)]));
    }

    #[test]
    fn exact_division() {
        let a = lp(&[(0, 1), (1, 1)]);
        let b = lp(&[(0, 1), (1, -1), (3, 2)]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.shift(-5).div_exact(&b.shift(2)), Some(a.shift(-7)));
        assert_eq!(lp(&[(0, 1), (1, 1)]).div_exact(&lp(&[(0, 2)])), None);
        assert_eq!(lp(&[(0, 1), (2, 1)]).div_exact(&a), None);
    }

    #[test]
    fn addition_uses_common_denominator() {
        let a = RationalGraded::new(LaurentPoly::one(), vec![2]);
        let b = RationalGraded::new(LaurentPoly::one(), vec![4]);
        let sum = &a + &b;
        assert_eq!(sum.expand(8), &a.expand(8) + &b.expand(8));
    }

    #[test]
    fn reconstruction_roundtrip() {
        let sym = RationalGraded::symmetric_polys(3);
        let series = sym.expand(30);
        let rebuilt = reconstruct_from_series(&series, 30, vec![2, 4, 6], 8).unwrap();
        assert!(rebuilt.rg_equal(&sym));
    }

    #[test]
    fn display() {
        assert_eq!(alloc::format!("{}", lp(&[(2, 1), (-2, -1)])), "q^2 - q^-2");
        assert_eq!(alloc::format!("{}", lp(&[(0, -3), (1, 2)])), "2*q - 3");
    }
}

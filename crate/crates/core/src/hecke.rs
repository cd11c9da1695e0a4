//! The Iwahori-Hecke algebra `H_n` over `Z[t, t^-1]`, `q = t^2`, in the
//! `T`-basis, with the generators `b_i = t^-1 (T_i + 1)`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::HeckeError;
use crate::perm::Permutation;
use crate::ring::LaurentPoly;

/// `q = t^2`
pub fn q() -> LaurentPoly {
    LaurentPoly::q_pow(2)
}

/// An element `sum_w c_w T_w` of `H_n`; coefficients are Laurent polynomials in `t`.
#[derive(Clone, PartialEq, Eq)]
pub struct HeckeElt {
    n: usize,
    terms: BTreeMap<Permutation, LaurentPoly>,
}

impl HeckeElt {
    pub fn zero(n: usize) -> Self {
        HeckeElt { n, terms: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::basis(Permutation::identity(n))
    }

    /// `T_w`
    pub fn basis(w: Permutation) -> Self {
        let mut e = Self::zero(w.len());
        e.add_term(w, LaurentPoly::one());
        e
    }

    /// `T_i` for a 1-based index `i`.
    pub fn t_gen(i: usize, n: usize) -> Result<Self, HeckeError> {
        if i == 0 || i >= n {
            return Err(HeckeError::IndexOutOfRange { index: i, rank: n });
        }
        Ok(Self::basis(Permutation::identity(n).right_mul_simple(i - 1)))
    }

    /// `b_i = t^-1 (T_i + 1)` for a 1-based index `i`.
    pub fn b_gen(i: usize, n: usize) -> Result<Self, HeckeError> {
        let t = Self::t_gen(i, n)?;
        Ok((&t + &Self::identity(n)).scale(&LaurentPoly::q_pow(-1)))
    }

    pub fn constant(n: usize, c: LaurentPoly) -> Self {
        Self::identity(n).scale(&c)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Permutation) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn add_term(&mut self, w: Permutation, c: LaurentPoly) {
        debug_assert_eq!(w.len(), self.n);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_insert_with(LaurentPoly::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.n);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    /// `self * T_{s_k}` (0-based `k`).
    fn mul_simple(&self, k: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (w, c) in &self.terms {
            let ws = w.right_mul_simple(k);
            if !w.is_right_descent(k) {
                out.add_term(ws, c.clone());
            } else {
                // T_w T_s = (q - 1) T_w + q T_{ws} when l(ws) < l(w)
                out.add_term(w.clone(), c * &(&q() - &LaurentPoly::one()));
                out.add_term(ws, c * &q());
            }
        }
        out
    }

    pub fn mul(&self, other: &HeckeElt) -> Result<HeckeElt, HeckeError> {
        if self.n != other.n {
            return Err(HeckeError::RankMismatch(self.n, other.n));
        }
        let mut out = Self::zero(self.n);
        for (v, c) in &other.terms {
            let mut acc = self.scale(c);
            for k in v.canonical_word() {
                acc = acc.mul_simple(k);
            }
            out = &out + &acc;
        }
        Ok(out)
    }
}

impl Add for &HeckeElt {
    type Output = HeckeElt;
    fn add(self, rhs: &HeckeElt) -> HeckeElt {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Neg for &HeckeElt {
    type Output = HeckeElt;
    fn neg(self) -> HeckeElt {
        self.scale(&-LaurentPoly::one())
    }
}

impl Sub for &HeckeElt {
    type Output = HeckeElt;
    fn sub(self, rhs: &HeckeElt) -> HeckeElt {
        self + &(-rhs)
    }
}

/// # Panics
/// On rank mismatch; use [`HeckeElt::mul`] to get an error instead.
impl Mul for &HeckeElt {
    type Output = HeckeElt;
    fn mul(self, rhs: &HeckeElt) -> HeckeElt {
        HeckeElt::mul(self, rhs).expect("same rank")
    }
}

impl core::fmt::Debug for HeckeElt {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "HeckeElt({self})")
    }
}

impl core::fmt::Display for HeckeElt {
    /// `(c)*T[i]*T[j]*...` terms, `T_w` written along the canonical word of
    /// `w` with 1-based indices; `T_e` terms print as `(c)` alone.
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (w, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({})", c.display_with("t"))?;
            for k in w.canonical_word() {
                write!(f, "*T[{}]", k + 1)?;
            }
        }
        Ok(())
    }
}

/// The support reached from `T_e` by right multiplication with the `T_i`;
/// its size is the rank of `H_n`.
pub fn t_basis_closure(n: usize) -> usize {
    let mut seen: BTreeSet<Permutation> = BTreeSet::new();
    let mut frontier = Vec::from([Permutation::identity(n)]);
    seen.insert(Permutation::identity(n));
    while let Some(w) = frontier.pop() {
        let e = HeckeElt::basis(w);
        for k in 0..n.saturating_sub(1) {
            for (v, _) in e.mul_simple(k).terms() {
                if seen.insert(v.clone()) {
                    frontier.push(v.clone());
                }
            }
        }
    }
    seen.len()
}

/// One failed identity, by name and 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationFailure {
    pub relation: &'static str,
    pub i: usize,
    pub j: usize,
}

/// `T_i^2 = (q-1) T_i + q`, braid and far commutation relations in `H_n`.
pub fn check_t_relations(n: usize) -> Vec<RelationFailure> {
    let q_minus_one = &q() - &LaurentPoly::one();
    let q_one = HeckeElt::constant(n, q());
    check_relations(n, HeckeElt::t_gen, |x| x * x == &x.scale(&q_minus_one) + &q_one, true)
}

/// `b_i^2 = (t + t^-1) b_i`, far commutation, and
/// `b_i b_{i+1} b_i + b_{i+1} = b_{i+1} b_i b_{i+1} + b_i` in `H_n`.
pub fn check_b_relations(n: usize) -> Vec<RelationFailure> {
    let delta = LaurentPoly::from_terms([(1, 1), (-1, 1)]);
    check_relations(n, HeckeElt::b_gen, |x| x * x == x.scale(&delta), false)
}

fn check_relations(
    n: usize,
    gen: fn(usize, usize) -> Result<HeckeElt, HeckeError>,
    quadratic: impl Fn(&HeckeElt) -> bool,
    braid_exact: bool,
) -> Vec<RelationFailure> {
    let mut failures = Vec::new();
    let g = |i| gen(i, n).expect("index in range");
    for i in 1..n {
        if !quadratic(&g(i)) {
            failures.push(RelationFailure { relation: "quadratic", i, j: i });
        }
        for j in 1..n {
            if i.abs_diff(j) >= 2 && &g(i) * &g(j) != &g(j) * &g(i) {
                failures.push(RelationFailure { relation: "commute", i, j });
            }
        }
        if i + 1 < n {
            let (a, b) = (g(i), g(i + 1));
            let aba = &(&a * &b) * &a;
            let bab = &(&b * &a) * &b;
            let ok = if braid_exact { aba == bab } else { &aba + &b == &bab + &a };
            if !ok {
                failures.push(RelationFailure { relation: "braid", i, j: i + 1 });
            }
        }
    }
    failures
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(i: usize, n: usize) -> HeckeElt {
        HeckeElt::t_gen(i, n).unwrap()
    }

    fn b(i: usize, n: usize) -> HeckeElt {
        HeckeElt::b_gen(i, n).unwrap()
    }

    #[test]
    fn quadratic_relation() {
        let sq = &t(1, 2) * &t(1, 2);
        let mut expected = t(1, 2).scale(&(&q() - &LaurentPoly::one()));
        expected.add_term(Permutation::identity(2), q());
        assert_eq!(sq, expected);
    }

    #[test]
    fn braid_and_commutation() {
        assert_eq!(&(&t(1, 3) * &t(2, 3)) * &t(1, 3), &(&t(2, 3) * &t(1, 3)) * &t(2, 3));
        assert_eq!(&t(1, 4) * &t(3, 4), &t(3, 4) * &t(1, 4));
        assert_ne!(&t(1, 3) * &t(2, 3), &t(2, 3) * &t(1, 3));
    }

    #[test]
    fn b_generators() {
        let b1 = b(1, 2);
        assert_eq!(b1.coeff(&Permutation::identity(2)), LaurentPoly::q_pow(-1));
        let delta = LaurentPoly::from_terms([(1, 1), (-1, 1)]);
        assert_eq!(&b1 * &b1, b1.scale(&delta));
        let lhs = &(&(&b(1, 3) * &b(2, 3)) * &b(1, 3)) + &b(2, 3);
        let rhs = &(&(&b(2, 3) * &b(1, 3)) * &b(2, 3)) + &b(1, 3);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn relations_up_to_rank_five() {
        for n in 1..=5 {
            assert!(check_t_relations(n).is_empty(), "n = {n}");
            assert!(check_b_relations(n).is_empty(), "n = {n}");
        }
    }

    #[test]
    fn rank_is_n_factorial() {
        for (n, f) in [(1, 1), (2, 2), (3, 6), (4, 24), (5, 120)] {
            assert_eq!(t_basis_closure(n), f);
        }
    }

    #[test]
    fn errors() {
        assert!(HeckeElt::t_gen(0, 3).is_err());
        assert!(HeckeElt::b_gen(3, 3).is_err());
        assert!(matches!(t(1, 2).mul(&t(1, 3)), Err(HeckeError::RankMismatch(2, 3))));
    }

    #[test]
    fn associativity_on_basis() {
        let all = Permutation::all(4);
        for a in all.iter().step_by(5) {
            for b in all.iter().step_by(7) {
                for c in all.iter().step_by(3) {
                    let (a, b, c) = (HeckeElt::basis(a.clone()), HeckeElt::basis(b.clone()), HeckeElt::basis(c.clone()));
                    assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                }
            }
        }
    }
}

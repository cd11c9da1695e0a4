//! The nilHecke algebra `R(m i)`: one colour, crossings acting as divided
//! differences.
//!
//! `R(m i)` is the algebra of `m! x m!` matrices over the symmetric
//! polynomials. The column idempotent `e_m = x^delta psi_{w0}` cuts out the
//! indecomposable projective, and matrix units come from a monomial basis of
//! the polynomials over the symmetric ones together with its dual under the
//! pairing `(f, g) -> d_{w0}(f g)`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use crate::cartan::{Graph, Seq, Weight};
use crate::error::NilHeckeError;
use crate::klr::{BasisDiagram, Element, KlrAlgebra};
use crate::linalg::{solve, Equation};
use crate::perm::Permutation;
use crate::poly::{monomials_of_degree, Exponents, Poly};
use crate::ring::{qfactorial, LaurentPoly, Rational, RationalGraded};

/// Series cutoff used to rebuild graded dimensions from ranks.
pub const DEFAULT_CUTOFF: i64 = 20;
const GUARD: i64 = 8;

/// `R(m i)` on the one-vertex graph.
#[derive(Clone, Debug)]
pub struct NilHecke {
    m: usize,
    alg: KlrAlgebra,
}

impl NilHecke {
    pub fn new(m: usize) -> Result<Self, NilHeckeError> {
        if m < 1 {
            return Err(NilHeckeError::RankTooSmall(m));
        }
        let alg = KlrAlgebra::new(Graph::single(), Weight(vec![m as u32])).expect("one-vertex weight");
        Ok(NilHecke { m, alg })
    }

    pub fn rank(&self) -> usize {
        self.m
    }

    pub fn algebra(&self) -> &KlrAlgebra {
        &self.alg
    }

    /// The only sequence `i^m`.
    pub fn seq(&self) -> Seq {
        Seq(vec![0; self.m])
    }

    /// `1 = 1_{i^m}`
    pub fn one(&self) -> Element {
        self.alg.unit()
    }

    /// `d_{w0} = psi_{w0} 1`
    pub fn longest_word_dd(&self) -> Element {
        let d = BasisDiagram::new(self.seq(), Permutation::longest(self.m), vec![0; self.m]);
        self.alg.basis_element(d)
    }

    /// `x^delta`, `delta = (m-1, m-2, ..., 0)`.
    pub fn staircase(&self) -> Vec<u32> {
        (0..self.m as u32).rev().collect()
    }

    /// `e_m = x_1^{m-1} x_2^{m-2} ... x_{m-1} d_{w0}`, of degree 0.
    pub fn column_idempotent(&self) -> Element {
        let d = BasisDiagram::new(self.seq(), Permutation::longest(self.m), self.staircase());
        self.alg.basis_element(d)
    }

    /// A polynomial as an element sitting on `1_{i^m}`.
    pub fn poly_element(&self, f: &Poly) -> Element {
        let mut e = self.alg.zero();
        for (a, c) in f.terms() {
            e.add_term(BasisDiagram::new(self.seq(), Permutation::identity(self.m), a.clone()), c.clone());
        }
        e
    }

    /// Truncated graded dimension of `e_m R e_m`.
    pub fn column_end_series(&self, cutoff: i64) -> LaurentPoly {
        let e = self.column_idempotent();
        let s = self.seq();
        self.alg.sandwich_series(&e, &e, &s, &s, cutoff).expect("same algebra")
    }

    /// Truncated graded dimension of `e_m R 1`.
    pub fn column_module_series(&self, cutoff: i64) -> LaurentPoly {
        let e = self.column_idempotent();
        let s = self.seq();
        self.alg.sandwich_series(&e, &self.one(), &s, &s, cutoff).expect("same algebra")
    }

    /// Graded dimension of `End(P_{i^(m)}) = e_m R e_m`, normalized to start
    /// in degree 0, rebuilt from degreewise ranks.
    ///
    /// The centre contains the symmetric polynomials and `e R e` is a finite
    /// module over them, so `prod_k (1 - q^{2k})` clears the denominator;
    /// the numerator is accepted only once the series has stabilized.
    pub fn gdim_column_end(&self) -> Result<RationalGraded, NilHeckeError> {
        self.gdim_column_end_with_cutoff(DEFAULT_CUTOFF)
    }

    pub fn gdim_column_end_with_cutoff(&self, cutoff: i64) -> Result<RationalGraded, NilHeckeError> {
        let series = self.column_end_series(cutoff);
        let den = (1..=self.m as u32).map(|k| 2 * k).collect();
        let rg = crate::ring::reconstruct_from_series(&series, cutoff, den, GUARD)
            .ok_or(NilHeckeError::Unstable { m: self.m, cutoff })?;
        Ok(rg.normalize_lowest())
    }

    /// The monomials `x^a` with `a_k <= m - 1 - k`, a basis of the
    /// polynomials over the symmetric ones; the staircase comes first.
    pub fn sub_staircase_monomials(&self) -> Vec<Exponents> {
        let delta = self.staircase();
        let mut out: Vec<Exponents> = vec![Vec::new()];
        for &bound in &delta {
            out = out
                .into_iter()
                .flat_map(|a| {
                    (0..=bound).map(move |x| {
                        let mut b = a.clone();
                        b.push(x);
                        b
                    })
                })
                .collect();
        }
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    /// Dual basis `b*_v` with `d_{w0}(b*_v x^{a_u}) = delta_{uv}`.
    fn dual_basis(&self, basis: &[Exponents]) -> Result<Vec<Poly>, NilHeckeError> {
        let m = self.m;
        let n = m * (m - 1) / 2;
        let w0 = Permutation::longest(m).canonical_word();
        let mut duals = Vec::with_capacity(basis.len());
        for (v, av) in basis.iter().enumerate() {
            let deg_v: u32 = av.iter().sum();
            let unknowns = monomials_of_degree(m, n as u32 - deg_v);
            let mut equations = Vec::new();
            for (u, au) in basis.iter().enumerate() {
                // Row-by-row: each output monomial of d_{w0}(b* x^{a_u}) is one equation.
                let images: Vec<Poly> = unknowns
                    .iter()
                    .map(|b| {
                        Poly::monomial(b.clone(), Rational::one())
                            .mul_monomial(au)
                            .divided_difference_word(&w0)
                    })
                    .collect();
                let mut rows: alloc::collections::BTreeMap<Exponents, Equation> = alloc::collections::BTreeMap::new();
                if u == v {
                    rows.insert(vec![0; m], Equation { coeffs: Default::default(), rhs: Rational::one() });
                }
                for (j, img) in images.iter().enumerate() {
                    for (mono, c) in img.terms() {
                        rows.entry(mono.clone()).or_default().coeffs.insert(j, c.clone());
                    }
                }
                equations.extend(rows.into_values());
            }
            let x = solve(&equations, unknowns.len()).ok_or(NilHeckeError::SolverFailure(m))?;
            let mut dual = Poly::zero(m);
            for (b, c) in unknowns.into_iter().zip(x) {
                dual.add_term(b, c);
            }
            duals.push(dual);
        }
        Ok(duals)
    }

    /// Matrix units `E_{uv} = x^{a_u} d_{w0} b*_v`, an `m! x m!` array with
    /// `E_{uv} E_{u'v'} = delta_{vu'} E_{uv'}` and `sum_u E_{uu} = 1`.
    pub fn matrix_units(&self) -> Result<Vec<Vec<Element>>, NilHeckeError> {
        if self.m > 3 {
            return Err(NilHeckeError::RankTooLarge(self.m));
        }
        let basis = self.sub_staircase_monomials();
        let duals = self.dual_basis(&basis)?;
        let w0 = Permutation::longest(self.m);
        let mut units = Vec::with_capacity(basis.len());
        for au in &basis {
            let top = self.alg.basis_element(BasisDiagram::new(self.seq(), w0.clone(), au.clone()));
            let row = duals
                .iter()
                .map(|d| self.alg.mul(&top, &self.poly_element(d)).expect("same algebra"))
                .collect();
            units.push(row);
        }
        Ok(units)
    }

    /// Checks the matrix-unit relations and completeness by multiplication.
    pub fn check_matrix_units(&self, units: &[Vec<Element>]) -> bool {
        let n = units.len();
        if units.iter().any(|row| row.len() != n) {
            return false;
        }
        for (u, row) in units.iter().enumerate() {
            for (v, a) in row.iter().enumerate() {
                for (u2, row2) in units.iter().enumerate() {
                    for (v2, b) in row2.iter().enumerate() {
                        let expected = if v == u2 { units[u][v2].clone() } else { self.alg.zero() };
                        if self.alg.mul(a, b).expect("same algebra") != expected {
                            return false;
                        }
                    }
                }
            }
        }
        let mut sum = self.alg.zero();
        for (u, row) in units.iter().enumerate() {
            sum += &row[u];
        }
        sum == self.one()
    }

    /// `gdim 1 R(m i) 1 = ([m]!)^2 gdim End(P_{i^(m)})`: the free module is
    /// `[m]!` copies of the column module.
    pub fn check_copies(&self) -> Result<bool, NilHeckeError> {
        let s = self.seq();
        let full = self.alg.gdim_hom_closed(&s, &s).expect("same algebra");
        let f = qfactorial(self.m as u32);
        let column = self.gdim_column_end()?;
        Ok(full.rg_equal(&column.scale(&(&f * &f))))
    }

    /// `gdim 1 R 1 = [m]! gdim e_m R 1 {-m(m-1)/2}`: `P_{i^m}` is `[m]!` shifted
    /// copies of `P_{i^(m)}`, the latter shifted so its endomorphisms start in
    /// degree 0.
    pub fn check_column_decomposition(&self) -> Result<bool, NilHeckeError> {
        let s = self.seq();
        let full = self.alg.gdim_hom_closed(&s, &s).expect("same algebra");
        let series = self.column_module_series(DEFAULT_CUTOFF);
        let rg = crate::ring::reconstruct_from_series(&series, DEFAULT_CUTOFF, vec![2; self.m], GUARD)
            .ok_or(NilHeckeError::Unstable { m: self.m, cutoff: DEFAULT_CUTOFF })?;
        let shift = -((self.m * (self.m - 1) / 2) as i64);
        Ok(full.rg_equal(&rg.shift(shift).scale(&qfactorial(self.m as u32))))
    }
}

/// Whether `e * e == e`.
pub fn is_idempotent(alg: &KlrAlgebra, e: &Element) -> bool {
    alg.mul(e, e).map(|p| &p == e).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn rank_must_be_positive() {
        assert!(matches!(NilHecke::new(0), Err(NilHeckeError::RankTooSmall(0))));
    }

    #[test]
    fn longest_words() {
        let one = NilHecke::new(1).unwrap();
        assert_eq!(one.longest_word_dd(), one.one());
        let two = NilHecke::new(2).unwrap();
        assert_eq!(two.longest_word_dd().terms().next().unwrap().0.perm.canonical_word(), vec![0]);
        let three = NilHecke::new(3).unwrap();
        assert_eq!(three.longest_word_dd().terms().next().unwrap().0.perm.canonical_word(), vec![0, 1, 0]);
    }

    #[test]
    fn column_idempotents() {
        assert_eq!(NilHecke::new(1).unwrap().column_idempotent(), NilHecke::new(1).unwrap().one());
        for m in 1..=4 {
            let nh = NilHecke::new(m).unwrap();
            let e = nh.column_idempotent();
            assert!(is_idempotent(nh.algebra(), &e), "m = {m}");
            assert_eq!(e.homogeneous_degree(nh.algebra().graph()), Some(Some(0)));
        }
    }

    #[test]
    fn column_ends() {
        for m in 1..=3 {
            let nh = NilHecke::new(m).unwrap();
            let expected = RationalGraded::symmetric_polys(m as u32);
            assert_eq!(nh.gdim_column_end().unwrap(), expected, "m = {m}");
            assert_eq!(nh.column_end_series(20), expected.expand(20));
        }
    }

    #[test]
    fn matrix_units_m2() {
        let nh = NilHecke::new(2).unwrap();
        let units = nh.matrix_units().unwrap();
        assert_eq!(units.len(), 2);
        assert_eq!(units[0][0], nh.column_idempotent());
        assert!(nh.check_matrix_units(&units));
        let one = NilHecke::new(1).unwrap();
        let u = one.matrix_units().unwrap();
        assert_eq!(u, vec![vec![one.one()]]);
        assert!(matches!(NilHecke::new(4).unwrap().matrix_units(), Err(NilHeckeError::RankTooLarge(4))));
    }

    #[test]
    fn matrix_units_m3() {
        let nh = NilHecke::new(3).unwrap();
        let units = nh.matrix_units().unwrap();
        assert_eq!(units.len(), 6);
        assert_eq!(units[0][0], nh.column_idempotent());
        assert!(nh.check_matrix_units(&units));
    }

    #[test]
    fn broken_units_are_rejected() {
        let nh = NilHecke::new(2).unwrap();
        let mut units = nh.matrix_units().unwrap();
        units[1][0] = units[1][0].scale(&rat(2));
        assert!(!nh.check_matrix_units(&units));
    }

    #[test]
    fn copies_of_the_column_module() {
        for m in 1..=3 {
            let nh = NilHecke::new(m).unwrap();
            assert!(nh.check_copies().unwrap(), "m = {m}");
        }
        for m in 1..=3 {
            assert!(NilHecke::new(m).unwrap().check_column_decomposition().unwrap(), "m = {m}");
        }
    }
}

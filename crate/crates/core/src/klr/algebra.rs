use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use num_traits::{One, Zero};

use super::diagram::{crossing_degree, BasisDiagram, Element, Generator, GeneratorWord};
use crate::cartan::{seqs, Graph, Seq, Weight};
use crate::error::KlrError;
use crate::linalg::rat;
use crate::perm::Permutation;
use crate::poly::divided_difference_monomial;
use crate::ring::{LaurentPoly, Rational, RationalGraded};

/// Choices in the defining relations that are conventions rather than facts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LedgerOptions {
    /// Sign `s` in `psi_k psi_{k+1} psi_k - psi_{k+1} psi_k psi_{k+1} = s * 1`
    /// on `i j i` with `i.j = -1`. The polynomial representation forces `+1`.
    pub r7_sign: i64,
}

impl Default for LedgerOptions {
    fn default() -> Self {
        LedgerOptions { r7_sign: 1 }
    }
}

type MemoKey = (Seq, Permutation, usize);

/// The algebra `R(nu)` of a graph, with a reduction cache.
///
/// The cache lives in a `RefCell`, so an `KlrAlgebra` is `Send` but not
/// `Sync`: give each worker thread its own instance. Results do not depend
/// on the cache state.
pub struct KlrAlgebra {
    graph: Graph,
    weight: Weight,
    ledger: LedgerOptions,
    memo: RefCell<BTreeMap<MemoKey, Element>>,
}

impl KlrAlgebra {
    pub fn new(graph: Graph, weight: Weight) -> Result<Self, KlrError> {
        Self::with_ledger(graph, weight, LedgerOptions::default())
    }

    pub fn with_ledger(graph: Graph, weight: Weight, ledger: LedgerOptions) -> Result<Self, KlrError> {
        if weight.0.len() != graph.num_vertices() {
            return Err(crate::error::GraphError::WeightLength {
                expected: graph.num_vertices(),
                got: weight.0.len(),
            }
            .into());
        }
        Ok(KlrAlgebra { graph, weight, ledger, memo: RefCell::new(BTreeMap::new()) })
    }

    /// The algebra containing `1_seq`.
    pub fn for_seq(graph: Graph, seq: &Seq) -> Self {
        let weight = seq.weight(graph.num_vertices());
        Self::new(graph, weight).expect("weight built from the graph")
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn ledger(&self) -> LedgerOptions {
        self.ledger
    }

    /// Number of strands `m`.
    pub fn strands(&self) -> usize {
        self.weight.total()
    }

    pub fn seqs(&self) -> Vec<Seq> {
        seqs(&self.weight)
    }

    pub fn cache_size(&self) -> usize {
        self.memo.borrow().len()
    }

    fn check_seq(&self, seq: &Seq) -> Result<(), KlrError> {
        if seq.iter().any(|v| *v >= self.graph.num_vertices())
            || seq.weight(self.graph.num_vertices()) != self.weight
        {
            return Err(KlrError::SequenceWeight(seq.0.clone()));
        }
        Ok(())
    }

    fn check_element(&self, e: &Element) -> Result<(), KlrError> {
        if e.weight() != &self.weight {
            return Err(KlrError::WeightMismatch {
                expected: self.weight.0.clone(),
                got: e.weight().0.clone(),
            });
        }
        Ok(())
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.weight.clone())
    }

    /// The single diagram `d` with coefficient 1.
    pub fn basis_element(&self, d: BasisDiagram) -> Element {
        Element::from_diagram(self.weight.clone(), d, Rational::one())
    }

    /// `1_seq`
    pub fn idempotent(&self, seq: &Seq) -> Result<Element, KlrError> {
        self.check_seq(seq)?;
        Ok(self.basis_element(BasisDiagram::idempotent(seq.clone())))
    }

    /// `1 = sum_{seq} 1_seq`
    pub fn unit(&self) -> Element {
        let mut e = self.zero();
        for s in self.seqs() {
            e.add_term(BasisDiagram::idempotent(s), Rational::one());
        }
        e
    }

    /// `x^dots 1_seq`
    pub fn dots_on(&self, seq: &Seq, dots: &[u32]) -> Result<Element, KlrError> {
        self.check_seq(seq)?;
        let mut d = BasisDiagram::idempotent(seq.clone());
        d.dots.copy_from_slice(dots);
        Ok(self.basis_element(d))
    }

    /// The generator `x_k` summed over all idempotents.
    pub fn dot(&self, k: usize) -> Result<Element, KlrError> {
        self.check_index(k, 0)?;
        let mut e = self.zero();
        for s in self.seqs() {
            let mut d = BasisDiagram::idempotent(s);
            d.dots[k] = 1;
            e.add_term(d, Rational::one());
        }
        Ok(e)
    }

    /// The generator `psi_k` summed over all idempotents.
    pub fn cross(&self, k: usize) -> Result<Element, KlrError> {
        self.check_index(k, 1)?;
        let mut e = self.zero();
        for s in self.seqs() {
            let m = s.len();
            let d = BasisDiagram::new(s, Permutation::identity(m).left_mul_simple(k), vec![0; m]);
            e.add_term(d, Rational::one());
        }
        Ok(e)
    }

    fn check_index(&self, k: usize, width: usize) -> Result<(), KlrError> {
        let m = self.strands();
        if k + width >= m {
            return Err(KlrError::IndexOutOfRange { index: k, strands: m });
        }
        Ok(())
    }

    pub fn degree(&self, d: &BasisDiagram) -> i64 {
        d.degree(&self.graph)
    }

    /// Expands a generator word in the normal-form basis.
    pub fn normalize(&self, word: &GeneratorWord) -> Result<Element, KlrError> {
        self.check_seq(&word.bottom)?;
        let m = word.bottom.len();
        if let Some(bad) = word.factors.iter().find(|g| match **g {
            Generator::Dot(k) => k >= m,
            Generator::Cross(k) => k + 1 >= m,
        }) {
            let index = match *bad {
                Generator::Dot(k) | Generator::Cross(k) => k,
            };
            return Err(KlrError::IndexOutOfRange { index, strands: m });
        }
        let mut e = self.basis_element(BasisDiagram::idempotent(word.bottom.clone()));
        for g in &word.factors {
            e = match *g {
                Generator::Dot(k) => e.add_dots(&unit_vec(m, k)),
                Generator::Cross(k) => self.left_mul_cross(k, &e),
            };
        }
        Ok(e)
    }

    /// `a * b`: `a` stacked on top of `b`.
    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element, KlrError> {
        self.check_element(a)?;
        self.check_element(b)?;
        let mut out = self.zero();
        // Group the lower factor by its top labels.
        let mut by_top: BTreeMap<Seq, Vec<(&BasisDiagram, &Rational)>> = BTreeMap::new();
        for (d, c) in b.terms() {
            by_top.entry(d.top()).or_default().push((d, c));
        }
        for (da, ca) in a.terms() {
            let Some(lower) = by_top.get(&da.bottom) else { continue };
            let word = da.perm.canonical_word();
            for (db, cb) in lower {
                let mut e = self.basis_element((*db).clone());
                for &k in word.iter().rev() {
                    e = self.left_mul_cross(k, &e);
                }
                let e = e.add_dots(&da.dots);
                out.add_scaled(&(ca * *cb), &e);
            }
        }
        Ok(out)
    }

    /// `psi_k * e`
    pub(crate) fn left_mul_cross(&self, k: usize, e: &Element) -> Element {
        let mut out = self.zero();
        for (d, c) in e.terms() {
            out.add_scaled(c, &self.cross_on_diagram(k, d));
        }
        out
    }

    /// `psi_k x^a psi_w 1_i` in normal form.
    ///
    /// Sliding `psi_k` through the dots gives `(s_k x^a) psi_k` plus, for equal
    /// labels, the correction `d_k(x^a)` left below the crossing.
    fn cross_on_diagram(&self, k: usize, d: &BasisDiagram) -> Element {
        let top = d.top();
        let mut out = self.zero();
        if top[k] == top[k + 1] {
            for (mono, sign) in divided_difference_monomial(&d.dots, k) {
                let nd = BasisDiagram::new(d.bottom.clone(), d.perm.clone(), mono);
                out.add_term(nd, rat(i64::from(sign)));
            }
        }
        let mut swapped = d.dots.clone();
        swapped.swap(k, k + 1);
        let base = self.cross_on_crossings(&d.bottom, &d.perm, k);
        out += &base.add_dots(&swapped);
        out
    }

    /// `psi_k psi_{canonical(w)} 1_bottom` in normal form (memoized).
    fn cross_on_crossings(&self, bottom: &Seq, w: &Permutation, k: usize) -> Element {
        let key = (bottom.clone(), w.clone(), k);
        if let Some(hit) = self.memo.borrow().get(&key) {
            return hit.clone();
        }
        let result = self.compute_cross_on_crossings(bottom, w, k);
        self.memo.borrow_mut().insert(key, result.clone());
        result
    }

    fn compute_cross_on_crossings(&self, bottom: &Seq, w: &Permutation, k: usize) -> Element {
        let m = bottom.len();
        let word = w.canonical_word();
        if !w.is_left_descent(k) {
            let mut full = Vec::with_capacity(word.len() + 1);
            full.push(k);
            full.extend_from_slice(&word);
            return self.reduced_word_to_normal(bottom, &full);
        }
        // Bring a psi_k to the top of the word, then square it away.
        let (moved, corrections) = self.start_with(bottom, &word, k);
        let rest = &moved[1..];
        let below = Permutation::from_word(m, rest).apply_to_seq(bottom);
        let mut out = self.zero();
        match self.graph.inner(below[k], below[k + 1]) {
            2 => {}
            0 => out += &self.reduced_word_to_normal(bottom, rest),
            _ => {
                let base = self.reduced_word_to_normal(bottom, rest);
                out += &base.add_dots(&unit_vec(m, k));
                out += &base.add_dots(&unit_vec(m, k + 1));
            }
        }
        for (sign, cw) in corrections {
            let mut full = Vec::with_capacity(cw.len() + 1);
            full.push(k);
            full.extend_from_slice(&cw);
            out.add_scaled(&rat(sign), &self.crossing_word(bottom, &full));
        }
        out
    }

    /// Normal form of an arbitrary crossing word (top letter first).
    fn crossing_word(&self, bottom: &Seq, word: &[usize]) -> Element {
        let mut e = self.basis_element(BasisDiagram::idempotent(bottom.clone()));
        for &k in word.iter().rev() {
            e = self.left_mul_cross(k, &e);
        }
        e
    }

    /// Normal form of `psi_word 1_bottom` for a reduced `word`: the canonical
    /// diagram plus the braid corrections picked up on the way.
    fn reduced_word_to_normal(&self, bottom: &Seq, word: &[usize]) -> Element {
        let m = bottom.len();
        let w = Permutation::from_word(m, word);
        let canon = w.canonical_word();
        let mut cur = word.to_vec();
        let mut corrections: Vec<(i64, Vec<usize>)> = Vec::new();
        for idx in 0..canon.len() {
            let (tail, corr) = self.start_with(bottom, &cur[idx..], canon[idx]);
            for (sign, cw) in corr {
                let mut full = canon[..idx].to_vec();
                full.extend_from_slice(&cw);
                corrections.push((sign, full));
            }
            cur.truncate(idx);
            cur.extend_from_slice(&tail);
        }
        debug_assert_eq!(cur, canon);
        let mut out = self.basis_element(BasisDiagram::new(bottom.clone(), w, vec![0; m]));
        for (sign, cw) in corrections {
            out.add_scaled(&rat(sign), &self.crossing_word(bottom, &cw));
        }
        out
    }

    /// Rewrites a reduced word having `b` as a left descent into one starting
    /// with `b`, using commutations and braid moves.
    ///
    /// Returns the new word and the correction terms `(sign, word)` with
    /// `psi_word = psi_new + sum sign * psi_correction` on `1_bottom`.
    fn start_with(&self, bottom: &Seq, word: &[usize], b: usize) -> (Vec<usize>, Vec<(i64, Vec<usize>)>) {
        let a = word[0];
        if a == b {
            return (word.to_vec(), Vec::new());
        }
        let (rest, corr) = self.start_with(bottom, &word[1..], b);
        let mut corrections: Vec<(i64, Vec<usize>)> = corr
            .into_iter()
            .map(|(s, cw)| (s, prepend(&[a], &cw)))
            .collect();
        if a.abs_diff(b) > 1 {
            let mut out = vec![b, a];
            out.extend_from_slice(&rest[1..]);
            return (out, corrections);
        }
        let (rest2, corr2) = self.start_with(bottom, &rest[1..], a);
        corrections.extend(corr2.into_iter().map(|(s, cw)| (s, prepend(&[a, b], &cw))));
        let tail = &rest2[1..];
        let labels = Permutation::from_word(bottom.len(), tail).apply_to_seq(bottom);
        let lo = a.min(b);
        let (i, j, i2) = (labels[lo], labels[lo + 1], labels[lo + 2]);
        if i == i2 && self.graph.inner(i, j) == -1 {
            // psi_k psi_{k+1} psi_k = psi_{k+1} psi_k psi_{k+1} + r7 on these labels.
            let sign = if a == lo { self.ledger.r7_sign } else { -self.ledger.r7_sign };
            corrections.push((sign, tail.to_vec()));
        }
        let mut out = vec![b, a, b];
        out.extend_from_slice(tail);
        (out, corrections)
    }

    /// Basis diagrams from `bottom` to `top` of degree `<= max_degree`.
    pub fn enumerate_basis(&self, bottom: &Seq, top: &Seq, max_degree: i64) -> Result<Vec<BasisDiagram>, KlrError> {
        self.check_seq(bottom)?;
        self.check_seq(top)?;
        let m = bottom.len();
        let mut out = Vec::new();
        for w in Permutation::transporting(bottom, top) {
            let c = crossing_degree(&self.graph, bottom, &w);
            if c > max_degree {
                continue;
            }
            let budget = u32::try_from((max_degree - c) / 2).expect("non-negative");
            for total in 0..=budget {
                for dots in crate::poly::monomials_of_degree(m, total) {
                    out.push(BasisDiagram::new(bottom.clone(), w.clone(), dots));
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Basis diagrams from `bottom` to `top` of degree exactly `degree`.
    pub fn basis_of_degree(&self, bottom: &Seq, top: &Seq, degree: i64) -> Result<Vec<BasisDiagram>, KlrError> {
        self.check_seq(bottom)?;
        self.check_seq(top)?;
        let mut out = Vec::new();
        for w in Permutation::transporting(bottom, top) {
            let rest = degree - crossing_degree(&self.graph, bottom, &w);
            if rest < 0 || rest % 2 != 0 {
                continue;
            }
            let total = u32::try_from(rest / 2).expect("non-negative");
            for dots in crate::poly::monomials_of_degree(bottom.len(), total) {
                out.push(BasisDiagram::new(bottom.clone(), w.clone(), dots));
            }
        }
        out.sort();
        Ok(out)
    }

    /// `gdim 1_top R 1_bottom = (1 - q^2)^{-m} sum_{w(bottom) = top} q^{deg w}`.
    pub fn gdim_hom_closed(&self, bottom: &Seq, top: &Seq) -> Result<RationalGraded, KlrError> {
        self.check_seq(bottom)?;
        self.check_seq(top)?;
        let num = LaurentPoly::from_terms(
            Permutation::transporting(bottom, top)
                .iter()
                .map(|w| (crossing_degree(&self.graph, bottom, w), 1)),
        );
        Ok(RationalGraded::over_dots(num, bottom.len()))
    }

    /// Graded dimension, truncated at `cutoff`, of `left * (1_top R 1_bottom) * right`
    /// for homogeneous `left`, `right`: degreewise rank of `{left b right}`
    /// over the basis diagrams `b`. Exponents are degrees of the products.
    pub fn sandwich_series(
        &self,
        left: &Element,
        right: &Element,
        bottom: &Seq,
        top: &Seq,
        cutoff: i64,
    ) -> Result<LaurentPoly, KlrError> {
        self.check_element(left)?;
        self.check_element(right)?;
        let shift = left.homogeneous_degree(&self.graph).flatten().unwrap_or(0)
            + right.homogeneous_degree(&self.graph).flatten().unwrap_or(0);
        let mut out = LaurentPoly::zero();
        let Some(lo) = self.min_degree(bottom, top) else { return Ok(out) };
        for d in lo..=cutoff - shift {
            let mut ech = crate::linalg::Echelon::new();
            for b in self.basis_of_degree(bottom, top, d)? {
                let lb = self.mul(left, &self.basis_element(b))?;
                if lb.is_zero() {
                    continue;
                }
                ech.insert(self.mul(&lb, right)?.to_sparse());
            }
            if ech.rank() > 0 {
                out.add_term(d + shift, ech.rank().into());
            }
        }
        Ok(out)
    }

    /// Smallest degree occurring in `1_top R 1_bottom`.
    pub fn min_degree(&self, bottom: &Seq, top: &Seq) -> Option<i64> {
        Permutation::transporting(bottom, top)
            .iter()
            .map(|w| crossing_degree(&self.graph, bottom, w))
            .min()
    }

    /// Whether `e` is a combination of integer-coefficient terms.
    pub fn is_integral(&self, e: &Element) -> bool {
        e.is_integral()
    }
}

fn unit_vec(m: usize, k: usize) -> Vec<u32> {
    let mut v = vec![0; m];
    v[k] = 1;
    v
}

fn prepend(prefix: &[usize], word: &[usize]) -> Vec<usize> {
    let mut out = prefix.to_vec();
    out.extend_from_slice(word);
    out
}

impl core::fmt::Debug for KlrAlgebra {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("KlrAlgebra")
            .field("graph", &self.graph)
            .field("weight", &self.weight)
            .field("ledger", &self.ledger)
            .finish_non_exhaustive()
    }
}

impl Clone for KlrAlgebra {
    /// Clones the context with an empty cache.
    fn clone(&self) -> Self {
        KlrAlgebra {
            graph: self.graph.clone(),
            weight: self.weight.clone(),
            ledger: self.ledger,
            memo: RefCell::new(BTreeMap::new()),
        }
    }
}

#[allow(dead_code)]
fn assert_send() {
    fn is_send<T: Send>() {}
    is_send::<KlrAlgebra>();
}

impl Element {
    /// Convenience for tests and callers holding integer coefficients.
    pub fn from_int_terms(weight: Weight, terms: impl IntoIterator<Item = (BasisDiagram, i64)>) -> Self {
        let mut e = Element::zero(weight);
        for (d, c) in terms {
            e.add_term(d, rat(c));
        }
        e
    }

    pub fn is_zero_element(&self) -> bool {
        self.is_zero() || self.terms().all(|(_, c)| c.is_zero())
    }
}

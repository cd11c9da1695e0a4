//! The polynomial representation `Pol_nu = (+)_{seq} Q[x_1..x_m]` of `R(nu)`.
//!
//! Generators act directly by multiplication, variable swaps and divided
//! differences, never through the rewriting engine, so agreement between the
//! two is a genuine consistency check.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::cartan::{seqs, Graph, Seq, Weight};
use crate::klr::{Element, Generator, GeneratorWord, LedgerOptions};
use crate::linalg::rat;
use crate::poly::{monomials_up_to, Poly};
use crate::ring::Rational;

/// An element of `Pol_nu`; zero components are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyVector {
    strands: usize,
    components: BTreeMap<Seq, Poly>,
}

impl PolyVector {
    pub fn zero(strands: usize) -> Self {
        PolyVector { strands, components: BTreeMap::new() }
    }

    /// `f` placed in component `seq`.
    pub fn single(seq: Seq, f: Poly) -> Self {
        let mut v = PolyVector::zero(seq.len());
        v.add(seq, &f);
        v
    }

    /// The monomial `x^a` in component `seq`.
    pub fn monomial(seq: Seq, a: Vec<u32>) -> Self {
        Self::single(seq, Poly::monomial(a, Rational::one()))
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component(&self, seq: &Seq) -> Option<&Poly> {
        self.components.get(seq)
    }

    pub fn components(&self) -> impl Iterator<Item = (&Seq, &Poly)> {
        self.components.iter()
    }

    pub fn add(&mut self, seq: Seq, f: &Poly) {
        if f.is_zero() {
            return;
        }
        let slot = self.components.entry(seq.clone()).or_insert_with(|| Poly::zero(self.strands));
        *slot += f;
        if slot.is_zero() {
            self.components.remove(&seq);
        }
    }

    pub fn add_scaled(&mut self, c: &Rational, other: &PolyVector) {
        for (s, f) in &other.components {
            self.add(s.clone(), &f.scale(c));
        }
    }

    /// `1_seq v`
    pub fn project(&self, seq: &Seq) -> PolyVector {
        match self.components.get(seq) {
            Some(f) => PolyVector::single(seq.clone(), f.clone()),
            None => PolyVector::zero(self.strands),
        }
    }
}

/// `g v`
pub fn act_generator(graph: &Graph, g: Generator, v: &PolyVector) -> PolyVector {
    let mut out = PolyVector::zero(v.strands);
    for (seq, f) in &v.components {
        match g {
            Generator::Dot(k) => out.add(seq.clone(), &f.mul_var(k)),
            Generator::Cross(k) => {
                let (i, j) = (seq[k], seq[k + 1]);
                let image = if i == j {
                    f.divided_difference(k)
                } else if graph.inner(i, j) == 0 || graph.is_oriented(i, j) {
                    f.swap_vars(k)
                } else {
                    let s = f.swap_vars(k);
                    &s.mul_var(k) + &s.mul_var(k + 1)
                };
                out.add(seq.swapped(k), &image);
            }
        }
    }
    out
}

/// `word v`: project onto the bottom idempotent, then apply the factors
/// bottom to top.
pub fn act_word(graph: &Graph, word: &GeneratorWord, v: &PolyVector) -> PolyVector {
    word.factors
        .iter()
        .fold(v.project(&word.bottom), |acc, g| act_generator(graph, *g, &acc))
}

/// `a v` for an element in normal form.
pub fn act_element(graph: &Graph, a: &Element, v: &PolyVector) -> PolyVector {
    let mut out = PolyVector::zero(v.strands);
    for (d, c) in a.terms() {
        let mut cur = v.project(&d.bottom);
        if cur.is_zero() {
            continue;
        }
        for &k in d.perm.canonical_word().iter().rev() {
            cur = act_generator(graph, Generator::Cross(k), &cur);
        }
        for (k, &e) in d.dots.iter().enumerate() {
            for _ in 0..e {
                cur = act_generator(graph, Generator::Dot(k), &cur);
            }
        }
        out.add_scaled(c, &cur);
    }
    out
}

/// Every monomial test vector of degree `<= max_degree` in every component.
pub fn test_vectors(weight: &Weight, max_degree: u32) -> Vec<PolyVector> {
    let m = weight.total();
    let monos = monomials_up_to(m, max_degree);
    seqs(weight)
        .into_iter()
        .flat_map(|s| monos.iter().map(move |a| PolyVector::monomial(s.clone(), a.clone())))
        .collect()
}

/// Whether `a` and `b` act identically on all monomials of degree `<= max_degree`.
pub fn oracle_eq(graph: &Graph, a: &Element, b: &Element, max_degree: u32) -> bool {
    if a.weight() != b.weight() {
        return false;
    }
    let diff = a - b;
    test_vectors(a.weight(), max_degree)
        .iter()
        .all(|v| act_element(graph, &diff, v).is_zero())
}

/// A linear combination of generator words, all on the same bottom sequence.
#[derive(Clone, Debug)]
pub struct Operator {
    pub terms: Vec<(Rational, GeneratorWord)>,
}

impl Operator {
    pub fn act(&self, graph: &Graph, v: &PolyVector) -> PolyVector {
        let mut out = PolyVector::zero(v.strands);
        for (c, w) in &self.terms {
            out.add_scaled(c, &act_word(graph, w, v));
        }
        out
    }
}

/// One defining relation `lhs = 0` instantiated on a bottom sequence.
#[derive(Clone, Debug)]
pub struct Relation {
    /// `R1` .. `R7`.
    pub family: &'static str,
    /// The 0-based generator index the relation is anchored at.
    pub index: usize,
    pub operator: Operator,
}

/// The defining relations of `R(nu)` on `1_seq`, each written as an operator
/// that must vanish.
pub fn relations(graph: &Graph, seq: &Seq, ledger: LedgerOptions) -> Vec<Relation> {
    let m = seq.len();
    let w = || GeneratorWord::new(seq.clone());
    let one = Rational::one;
    let mut out = Vec::new();
    let mut push = |family, index, terms: Vec<(Rational, GeneratorWord)>| {
        out.push(Relation { family, index, operator: Operator { terms } });
    };
    for k in 0..m.saturating_sub(1) {
        let (i, j) = (seq[k], seq[k + 1]);
        let sq = w().cross(k).cross(k);
        match graph.inner(i, j) {
            2 => push("R1", k, vec![(one(), sq)]),
            0 => push("R2", k, vec![(one(), sq), (-one(), w())]),
            _ => push("R3", k, vec![(one(), sq), (-one(), w().dot(k)), (-one(), w().dot(k + 1))]),
        }
    }
    for k in 0..m {
        for l in 0..m {
            if k < l {
                push("R4", k, vec![(one(), w().dot(l).dot(k)), (-one(), w().dot(k).dot(l))]);
            }
            if k + 1 < m && l != k && l != k + 1 {
                push("R4", k, vec![(one(), w().dot(l).cross(k)), (-one(), w().cross(k).dot(l))]);
            }
            if k + 1 < m && l + 1 < m && l > k + 1 {
                push("R4", k, vec![(one(), w().cross(l).cross(k)), (-one(), w().cross(k).cross(l))]);
            }
        }
    }
    for k in 0..m.saturating_sub(1) {
        let delta = if seq[k] == seq[k + 1] { one() } else { Rational::zero() };
        // psi_k x_k = x_{k+1} psi_k + delta;  psi_k x_{k+1} = x_k psi_k - delta
        push("R5", k, vec![
            (one(), w().dot(k).cross(k)),
            (-one(), w().cross(k).dot(k + 1)),
            (-delta.clone(), w()),
        ]);
        push("R5", k, vec![
            (one(), w().dot(k + 1).cross(k)),
            (-one(), w().cross(k).dot(k)),
            (delta, w()),
        ]);
    }
    for k in 0..m.saturating_sub(2) {
        let lower = w().cross(k).cross(k + 1).cross(k); // psi_k psi_{k+1} psi_k
        let upper = w().cross(k + 1).cross(k).cross(k + 1);
        let excluded = seq[k] == seq[k + 2] && graph.inner(seq[k], seq[k + 1]) == -1;
        if excluded {
            push("R7", k, vec![(one(), lower), (-one(), upper), (-rat(ledger.r7_sign), w())]);
        } else {
            push("R6", k, vec![(one(), lower), (-one(), upper)]);
        }
    }
    out
}

/// A relation that failed on a particular monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationFailure {
    pub family: &'static str,
    pub seq: Seq,
    pub index: usize,
    pub monomial: Vec<u32>,
    pub description: String,
}

/// Checks every defining relation on `1_seq` against all monomials of
/// degree `<= max_degree`; returns the first failure of each relation.
pub fn check_relations(graph: &Graph, seq: &Seq, max_degree: u32, ledger: LedgerOptions) -> Vec<RelationFailure> {
    let monos = monomials_up_to(seq.len(), max_degree);
    let mut failures = Vec::new();
    for rel in relations(graph, seq, ledger) {
        let bad = monos.iter().find(|a| {
            let v = PolyVector::monomial(seq.clone(), (*a).clone());
            !rel.operator.act(graph, &v).is_zero()
        });
        if let Some(a) = bad {
            failures.push(RelationFailure {
                family: rel.family,
                seq: seq.clone(),
                index: rel.index,
                monomial: a.clone(),
                description: alloc::format!(
                    "{} at k={} fails on x^{:?} in component {}",
                    rel.family,
                    rel.index + 1,
                    a,
                    graph.format_seq(seq)
                ),
            });
        }
    }
    failures
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::klr::KlrAlgebra;

    fn seq(v: &[usize]) -> Seq {
        Seq(v.to_vec())
    }

    #[test]
    fn crossing_on_equal_labels_is_divided_difference() {
        let g = Graph::single();
        let v = PolyVector::monomial(seq(&[0, 0]), vec![1, 0]);
        let out = act_generator(&g, Generator::Cross(0), &v);
        assert_eq!(out, PolyVector::single(seq(&[0, 0]), Poly::one(2)));
    }

    #[test]
    fn idempotent_projects() {
        let g = Graph::a2();
        let v = PolyVector::monomial(seq(&[1, 0]), vec![2, 1]);
        assert!(act_word(&g, &GeneratorWord::new(seq(&[0, 1])), &v).is_zero());
    }

    #[test]
    fn square_on_adjacent_labels() {
        let g = Graph::a2(); // edge written i-j
        let f = PolyVector::monomial(seq(&[0, 1]), vec![2, 1]);
        let out = act_word(&g, &GeneratorWord::new(seq(&[0, 1])).cross(0).cross(0), &f);
        let x = Poly::monomial(vec![2, 1], rat(1));
        let expected = &x.mul_var(0) + &x.mul_var(1);
        assert_eq!(out, PolyVector::single(seq(&[0, 1]), expected));
    }

    #[test]
    fn oracle_eq_examples() {
        let g = Graph::single();
        let alg = KlrAlgebra::for_seq(g.clone(), &seq(&[0, 0]));
        let ii = seq(&[0, 0]);
        let sq = alg.normalize(&GeneratorWord::new(ii.clone()).cross(0).cross(0)).unwrap();
        assert!(oracle_eq(&g, &sq, &alg.zero(), 10));
        // psi x_1 and x_2 psi differ by the identity on 1_ii.
        let a = alg.normalize(&GeneratorWord::new(ii.clone()).dot(0).cross(0)).unwrap();
        let b = alg.normalize(&GeneratorWord::new(ii.clone()).cross(0).dot(1)).unwrap();
        assert!(!oracle_eq(&g, &a, &b, 10));
        let one = alg.idempotent(&ii).unwrap();
        assert!(oracle_eq(&g, &(&a - &b), &one, 10));
        assert!(oracle_eq(&g, &a, &a, 10));
    }

    #[test]
    fn divided_difference_identities() {
        for a in monomials_up_to(3, 10) {
            let f = Poly::monomial(a.clone(), rat(1));
            for k in 0..2 {
                assert!(f.divided_difference(k).divided_difference(k).is_zero());
            }
            assert_eq!(f.divided_difference_word(&[0, 1, 0]), f.divided_difference_word(&[1, 0, 1]));
        }
        // Twisted Leibniz rule on products of pairs of low-degree monomials.
        let small = monomials_up_to(3, 5);
        for a in &small {
            for b in small.iter().step_by(3) {
                let f = Poly::monomial(a.clone(), rat(1));
                let g = Poly::monomial(b.clone(), rat(1));
                for k in 0..2 {
                    let lhs = (&f * &g).divided_difference(k);
                    let rhs = &(&f.divided_difference(k) * &g) + &(&f.swap_vars(k) * &g.divided_difference(k));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn relations_hold_small() {
        for g in [Graph::a2(), Graph::edgeless2()] {
            for s in [seq(&[0, 1, 0]), seq(&[0, 0, 1]), seq(&[1, 0, 0])] {
                let f = check_relations(&g, &s, 6, LedgerOptions::default());
                assert!(f.is_empty(), "{f:?}");
            }
        }
    }

    #[test]
    fn flipped_r7_sign_is_detected() {
        let g = Graph::a2();
        let f = check_relations(&g, &seq(&[0, 1, 0]), 4, LedgerOptions { r7_sign: -1 });
        assert!(f.iter().any(|x| x.family == "R7"));
        // The reversed edge orientation still needs +1.
        let rev = Graph::new(&["i", "j"], &[("j", "i")]).unwrap();
        assert!(check_relations(&rev, &seq(&[0, 1, 0]), 4, LedgerOptions::default()).is_empty());
        assert!(check_relations(&rev, &seq(&[1, 0, 1]), 4, LedgerOptions::default()).is_empty());
    }
}

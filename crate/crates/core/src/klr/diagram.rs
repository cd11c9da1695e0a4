use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, AddAssign, Neg, Sub};

use num_traits::{One, Zero};

use crate::cartan::{Graph, Seq, Weight};
use crate::perm::Permutation;
use crate::ring::Rational;

/// A normal-form basis vector `x^dots * psi_{w} * 1_bottom`.
///
/// Dots sit above all crossings and are indexed by top positions; the
/// crossings follow the canonical reduced word of `perm`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisDiagram {
    pub bottom: Seq,
    pub perm: Permutation,
    pub dots: Vec<u32>,
}

impl BasisDiagram {
    pub fn idempotent(bottom: Seq) -> Self {
        let m = bottom.len();
        BasisDiagram { bottom, perm: Permutation::identity(m), dots: vec![0; m] }
    }

    pub fn new(bottom: Seq, perm: Permutation, dots: Vec<u32>) -> Self {
        debug_assert_eq!(bottom.len(), perm.len());
        debug_assert_eq!(bottom.len(), dots.len());
        BasisDiagram { bottom, perm, dots }
    }

    pub fn strands(&self) -> usize {
        self.bottom.len()
    }

    /// Labels along the top edge.
    pub fn top(&self) -> Seq {
        self.perm.apply_to_seq(&self.bottom)
    }

    /// Degree contributed by the crossings alone.
    pub fn crossing_degree(&self, graph: &Graph) -> i64 {
        crossing_degree(graph, &self.bottom, &self.perm)
    }

    /// `2 * #dots + sum over crossing pairs of -(i_a . i_b)`.
    pub fn degree(&self, graph: &Graph) -> i64 {
        let dots: i64 = self.dots.iter().map(|d| i64::from(*d)).sum();
        2 * dots + self.crossing_degree(graph)
    }
}

/// Sum of `-(i_a . i_b)` over the inversion pairs of `w`.
pub fn crossing_degree(graph: &Graph, bottom: &Seq, w: &Permutation) -> i64 {
    w.inversions().map(|(a, b)| -graph.inner(bottom[a], bottom[b])).sum()
}

/// A finite rational combination of basis diagrams in one `R(nu)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    weight: Weight,
    terms: BTreeMap<BasisDiagram, Rational>,
}

impl Element {
    pub fn zero(weight: Weight) -> Self {
        Element { weight, terms: BTreeMap::new() }
    }

    pub fn from_diagram(weight: Weight, d: BasisDiagram, c: Rational) -> Self {
        let mut e = Self::zero(weight);
        e.add_term(d, c);
        e
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
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

    pub fn terms(&self) -> impl Iterator<Item = (&BasisDiagram, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, d: &BasisDiagram) -> Rational {
        self.terms.get(d).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, d: BasisDiagram, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(d) {
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

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &Rational, other: &Element) {
        for (d, x) in &other.terms {
            self.add_term(d.clone(), c * x);
        }
    }

    pub fn scale(&self, c: &Rational) -> Element {
        let mut out = Element::zero(self.weight.clone());
        out.add_scaled(c, self);
        out
    }

    /// Whether every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// The common degree of all terms; `None` if inhomogeneous. Zero is
    /// homogeneous of every degree and reports `Some(None)`.
    pub fn homogeneous_degree(&self, graph: &Graph) -> Option<Option<i64>> {
        let mut degs = self.terms.keys().map(|d| d.degree(graph));
        match degs.next() {
            None => Some(None),
            Some(first) => degs.all(|d| d == first).then_some(Some(first)),
        }
    }

    /// Coordinates in the diagram basis.
    pub fn to_sparse(&self) -> BTreeMap<BasisDiagram, Rational> {
        self.terms.clone()
    }

    /// Moves every term by adding `extra` to its dot exponents.
    pub(crate) fn add_dots(&self, extra: &[u32]) -> Element {
        let mut out = Element::zero(self.weight.clone());
        for (d, c) in &self.terms {
            let mut nd = d.clone();
            for (x, y) in nd.dots.iter_mut().zip(extra) {
                *x += y;
            }
            out.add_term(nd, c.clone());
        }
        out
    }
}

impl AddAssign<&Element> for Element {
    fn add_assign(&mut self, rhs: &Element) {
        self.add_scaled(&Rational::one(), rhs);
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(&-Rational::one(), rhs);
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&-Rational::one())
    }
}

/// One generator of `R(nu)`; indices are 0-based strand positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    /// `x_k`, a dot on strand `k`.
    Dot(usize),
    /// `psi_k`, the crossing of strands `k` and `k + 1`.
    Cross(usize),
}

/// A product of generators on top of `1_bottom`, listed bottom to top.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorWord {
    pub bottom: Seq,
    pub factors: Vec<Generator>,
}

impl GeneratorWord {
    pub fn new(bottom: Seq) -> Self {
        GeneratorWord { bottom, factors: Vec::new() }
    }

    /// Appends a dot above everything so far.
    pub fn dot(mut self, k: usize) -> Self {
        self.factors.push(Generator::Dot(k));
        self
    }

    /// Appends a crossing above everything so far.
    pub fn cross(mut self, k: usize) -> Self {
        self.factors.push(Generator::Cross(k));
        self
    }

    /// `self` stacked on top of `below`; `None` if the labels do not match.
    pub fn stack_on(&self, below: &GeneratorWord) -> Option<GeneratorWord> {
        if below.top() != self.bottom {
            return None;
        }
        let mut factors = below.factors.clone();
        factors.extend_from_slice(&self.factors);
        Some(GeneratorWord { bottom: below.bottom.clone(), factors })
    }

    /// Labels along the top edge.
    pub fn top(&self) -> Seq {
        let mut s = self.bottom.clone();
        for g in &self.factors {
            if let Generator::Cross(k) = g {
                s = s.swapped(*k);
            }
        }
        s
    }

    /// Sum of generator degrees, crossings weighted by the labels they meet.
    pub fn degree(&self, graph: &Graph) -> i64 {
        let mut s = self.bottom.clone();
        let mut deg = 0;
        for g in &self.factors {
            match *g {
                Generator::Dot(_) => deg += 2,
                Generator::Cross(k) => {
                    deg -= graph.inner(s[k], s[k + 1]);
                    s = s.swapped(k);
                }
            }
        }
        deg
    }

    pub fn is_valid(&self) -> bool {
        let m = self.bottom.len();
        self.factors.iter().all(|g| match *g {
            Generator::Dot(k) => k < m,
            Generator::Cross(k) => k + 1 < m,
        })
    }
}

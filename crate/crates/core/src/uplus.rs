//! `U+` through its bilinear form.
//!
//! A word `E_seq = E_{i_1} ... E_{i_m}` is the class of the projective
//! `P_seq`. The form is determined by `(E_i, E_j) = delta_ij / (1 - q^2)` and
//! the twisted coproduct `Delta(E_i) = E_i (x) 1 + 1 (x) E_i`, with
//! `(x1 (x) x2)(x1' (x) x2') = q^{-|x2|.|x1'|} x1 x1' (x) x2 x2'`.
//! Weight spaces are modelled by pairing vectors against all words.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::cartan::{seqs, Graph, Seq, Vertex, Weight};
use crate::error::UplusError;
use crate::linalg::rank_laurent;
use crate::perm::Permutation;
use crate::ring::{qfactorial, qint, LaurentPoly, RationalGraded};

fn weight_of(graph: &Graph, s: &Seq) -> Weight {
    s.weight(graph.num_vertices())
}

/// Numerator of `(E_u, E_v)` over `(1 - q^2)^m`, by deleting the first
/// letter of `u` from every matching position of `v`.
pub fn pair_numerator(graph: &Graph, u: &[Vertex], v: &[Vertex]) -> LaurentPoly {
    if u.len() != v.len() {
        return LaurentPoly::zero();
    }
    let Some((&i, rest)) = u.split_first() else {
        return LaurentPoly::one();
    };
    let mut out = LaurentPoly::zero();
    let mut before = 0i64; // i . (v_1 + ... + v_{p-1})
    for (p, &vp) in v.iter().enumerate() {
        if vp == i {
            let mut shorter = v.to_vec();
            shorter.remove(p);
            let sub = pair_numerator(graph, rest, &shorter);
            if !sub.is_zero() {
                out += &sub.shift(-before);
            }
        }
        before += graph.inner(i, vp);
    }
    out
}

/// `(E_u, E_v)` via the coproduct recursion.
pub fn pair_recursive(graph: &Graph, u: &Seq, v: &Seq) -> RationalGraded {
    if weight_of(graph, u) != weight_of(graph, v) {
        return RationalGraded::zero();
    }
    RationalGraded::over_dots(pair_numerator(graph, u, v), u.len())
}

/// `(E_u, E_v) = (1 - q^2)^{-m} sum_{w(u) = v} q^{-sum_{inversions} u_a . u_b}`.
pub fn pair_closed(graph: &Graph, u: &Seq, v: &Seq) -> RationalGraded {
    if u.len() != v.len() {
        return RationalGraded::zero();
    }
    let num = LaurentPoly::from_terms(Permutation::transporting(u, v).iter().map(|w| {
        let exp: i64 = w.inversions().map(|(a, b)| -graph.inner(u[a], u[b])).sum();
        (exp, 1)
    }));
    RationalGraded::over_dots(num, u.len())
}

/// `[Ind]`: `E_u E_v = E_{uv}`.
pub fn k0_ind(u: &Seq, v: &Seq) -> Seq {
    u.concat(v)
}

/// One term `(w1, w2, twist)` of `Delta(E_w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoproductTerm {
    pub left: Seq,
    pub right: Seq,
    pub twist: LaurentPoly,
}

/// `[Res]`: the component of `Delta(E_w)` in weights `(nu1, nu2)`. Each term
/// sends a subset of the letters left, keeping their order, with twist
/// `q^{-sum w_a . w_b}` over `b < a`, `b` sent right and `a` sent left.
pub fn k0_res(graph: &Graph, w: &Seq, split: (&Weight, &Weight)) -> Result<Vec<CoproductTerm>, UplusError> {
    let (nu1, nu2) = split;
    if nu1.0.len() != graph.num_vertices() || nu1.add(nu2) != weight_of(graph, w) {
        return Err(UplusError::SplitMismatch);
    }
    let m = w.len();
    let k = nu1.total();
    let mut out = Vec::new();
    for mask in 0u32..(1 << m) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let left: Vec<Vertex> = (0..m).filter(|a| mask >> a & 1 == 1).map(|a| w[a]).collect();
        let left = Seq(left);
        if &weight_of(graph, &left) != nu1 {
            continue;
        }
        let right = Seq((0..m).filter(|a| mask >> a & 1 == 0).map(|a| w[a]).collect());
        let mut exp = 0i64;
        for a in 0..m {
            if mask >> a & 1 == 1 {
                for b in 0..a {
                    if mask >> b & 1 == 0 {
                        exp -= graph.inner(w[a], w[b]);
                    }
                }
            }
        }
        out.push(CoproductTerm { left, right, twist: LaurentPoly::q_pow(exp) });
    }
    Ok(out)
}

/// The coefficient `c` in `c E_i E_j E_i = E_i^2 E_j + E_j E_i^2` for adjacent
/// vertices (`q + q^-1`), or in `c E_i E_j = E_j E_i` otherwise (`1`).
pub fn serre_coefficient(graph: &Graph, i: Vertex, j: Vertex) -> LaurentPoly {
    if graph.is_edge(i, j) {
        qint(2).expect("2 >= 1")
    } else {
        LaurentPoly::one()
    }
}

/// Checks the quantum Serre relation between `i` and `j` by pairing both
/// sides against every word of the relevant weight.
pub fn serre_check(graph: &Graph, i: Vertex, j: Vertex) -> Result<bool, UplusError> {
    serre_check_with(graph, i, j, &serre_coefficient(graph, i, j))
}

/// [`serre_check`] with the coefficient `c` supplied by the caller.
pub fn serre_check_with(graph: &Graph, i: Vertex, j: Vertex, c: &LaurentPoly) -> Result<bool, UplusError> {
    let n = graph.num_vertices();
    if i >= n || j >= n {
        return Err(UplusError::Graph(crate::error::GraphError::UnknownVertex(alloc::format!("{}", i.max(j)))));
    }
    if i == j {
        return Err(UplusError::SameVertex);
    }
    let (lhs, rhs): (Vec<Seq>, Vec<Seq>) = if graph.is_edge(i, j) {
        (vec![Seq(vec![i, j, i])], vec![Seq(vec![i, i, j]), Seq(vec![j, i, i])])
    } else {
        (vec![Seq(vec![i, j])], vec![Seq(vec![j, i])])
    };
    let weight = weight_of(graph, &lhs[0]);
    for w in seqs(&weight) {
        let left = lhs.iter().fold(LaurentPoly::zero(), |acc, u| acc + pair_numerator(graph, u, &w));
        let right = rhs.iter().fold(LaurentPoly::zero(), |acc, u| acc + pair_numerator(graph, u, &w));
        if &left * c != right {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `dim U+(nu)`: rank over `Q(q)` of the Gram matrix of the words of weight `nu`.
///
/// All entries share the denominator `(1 - q^2)^m`, so the numerators form a
/// matrix over `Z[q, q^-1]` of the same rank.
pub fn weight_dim(graph: &Graph, nu: &Weight) -> usize {
    let words = seqs(nu);
    let gram: Vec<Vec<LaurentPoly>> = words
        .iter()
        .map(|u| words.iter().map(|v| pair_numerator(graph, u, v)).collect())
        .collect();
    rank_laurent(&gram)
}

/// `(E_i^(n), E_i^(n)) = (E_i^n, E_i^n) / ([n]!)^2`, shifted to start in degree 0.
pub fn divided_power_pair(graph: &Graph, i: Vertex, n: usize) -> RationalGraded {
    let word = Seq(vec![i; n]);
    let pair = pair_recursive(graph, &word, &word);
    // 1/[n]! = q^{n(n-1)/2} (1 - q^2)^n / prod_k (1 - q^{2k})
    let mut den: Vec<u32> = pair.denominator().to_vec();
    for _ in 0..2 {
        den.extend((1..=n as u32).map(|k| 2 * k));
    }
    let one_minus_q2 = LaurentPoly::from_terms([(0, 1), (2, -1)]);
    let num = pair.numerator() * &one_minus_q2.pow(2 * n as u32);
    let num = num.shift((n * (n - 1)) as i64);
    debug_assert!(RationalGraded::new(num.clone(), den.clone())
        .scale(&(&qfactorial(n as u32) * &qfactorial(n as u32)))
        .rg_equal(&pair));
    RationalGraded::new(num, den).normalize_lowest()
}

/// An element of `U+(nu)` recorded by its pairings with every word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualVector {
    pub weight: Weight,
    pub values: BTreeMap<Seq, RationalGraded>,
}

impl DualVector {
    /// The functional `(E_u, -)`.
    pub fn of_word(graph: &Graph, u: &Seq) -> Self {
        let weight = weight_of(graph, u);
        let values = seqs(&weight).into_iter().map(|w| {
            let p = pair_recursive(graph, u, &w);
            (w, p)
        });
        DualVector { weight: weight.clone(), values: values.collect() }
    }

    pub fn zero(weight: Weight) -> Self {
        let values = seqs(&weight).into_iter().map(|w| (w, RationalGraded::zero())).collect();
        DualVector { weight, values }
    }

    /// Multiplication by a Laurent polynomial; `q` is a grading shift by 1.
    pub fn scale(&self, c: &LaurentPoly) -> Self {
        DualVector {
            weight: self.weight.clone(),
            values: self.values.iter().map(|(k, v)| (k.clone(), v.scale(c))).collect(),
        }
    }

    pub fn add(&self, other: &DualVector) -> Self {
        DualVector {
            weight: self.weight.clone(),
            values: self
                .values
                .iter()
                .map(|(k, v)| {
                    let o = other.values.get(k).cloned().unwrap_or_else(RationalGraded::zero);
                    (k.clone(), v + &o)
                })
                .collect(),
        }
    }

    /// `(self, E_w)`
    pub fn pair_with_word(&self, w: &Seq) -> RationalGraded {
        self.values.get(w).cloned().unwrap_or_else(RationalGraded::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(RationalGraded::is_zero)
    }
}

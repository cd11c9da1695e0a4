//! Exact linear algebra: sparse rational echelon forms and linear solves,
//! and fraction-free (Bareiss) rank over `Z[q, q^-1]`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::ring::{LaurentPoly, Rational};

/// A sparse vector with exact rational entries; zero entries are not stored.
pub type SparseVec<K> = BTreeMap<K, Rational>;

/// `dst += c * src`, dropping cancelled entries.
pub fn axpy<K: Ord + Clone>(dst: &mut SparseVec<K>, c: &Rational, src: &SparseVec<K>) {
    for (k, v) in src {
        let e = dst.entry(k.clone()).or_insert_with(Rational::zero);
        *e += c * v;
        if e.is_zero() {
            dst.remove(k);
        }
    }
}

/// Incrementally built row echelon form: every stored row has a distinct
/// leading key, hence the rows are linearly independent.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Self { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows until its leading key is new.
    pub fn reduce(&self, mut v: SparseVec<K>) -> SparseVec<K> {
        while let Some((lead, coef)) = v.iter().next().map(|(k, c)| (k.clone(), c.clone())) {
            match self.rows.get(&lead) {
                Some(row) => {
                    let factor = -(coef / &row[&lead]);
                    axpy(&mut v, &factor, row);
                }
                None => break,
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, v: SparseVec<K>) -> bool {
        let v = self.reduce(v);
        match v.keys().next().cloned() {
            Some(lead) => {
                self.rows.insert(lead, v);
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, v: SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Rank of a family of sparse vectors.
pub fn rank<K: Ord + Clone, I: IntoIterator<Item = SparseVec<K>>>(vectors: I) -> usize {
    let mut ech = Echelon::new();
    for v in vectors {
        ech.insert(v);
    }
    ech.rank()
}

/// One linear equation `sum_j a_j x_j = rhs` over unknowns `0..n`.
#[derive(Clone, Debug, Default)]
pub struct Equation {
    pub coeffs: SparseVec<usize>,
    pub rhs: Rational,
}

/// Solves a linear system exactly. Free unknowns are set to zero; `None`
/// when the system is inconsistent.
pub fn solve(equations: &[Equation], num_unknowns: usize) -> Option<Vec<Rational>> {
    // The right-hand side rides along as the largest key.
    let rhs_key = num_unknowns;
    let mut ech: Echelon<usize> = Echelon::new();
    for eq in equations {
        let mut row = eq.coeffs.clone();
        debug_assert!(row.keys().all(|k| *k < num_unknowns));
        if !eq.rhs.is_zero() {
            row.insert(rhs_key, eq.rhs.clone());
        }
        let reduced = ech.reduce(row);
        match reduced.keys().next() {
            None => {}
            Some(&k) if k == rhs_key => return None,
            Some(_) => {
                ech.insert(reduced);
            }
        }
    }
    let mut x = vec![Rational::zero(); num_unknowns];
    for (&pivot, row) in ech.rows.iter().rev() {
        let mut acc = row.get(&rhs_key).cloned().unwrap_or_else(Rational::zero);
        for (&j, a) in row.range(pivot + 1..rhs_key) {
            acc -= a * &x[j];
        }
        x[pivot] = acc / &row[&pivot];
    }
    Some(x)
}

/// Rank of a matrix over `Z[q, q^-1]` (equivalently over `Q(q)`) by
/// fraction-free Bareiss elimination with full pivoting.
pub fn rank_laurent(matrix: &[Vec<LaurentPoly>]) -> usize {
    let mut a: Vec<Vec<LaurentPoly>> = matrix.to_vec();
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut prev = LaurentPoly::one();
    let mut rank = 0;
    for k in 0..rows.min(cols) {
        // Find a nonzero pivot in the trailing block.
        let pivot = (k..rows)
            .flat_map(|i| (k..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero());
        let Some((pi, pj)) = pivot else { break };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        rank += 1;
        let piv = a[k][k].clone();
        for i in k + 1..rows {
            for j in k + 1..cols {
                let num = &(&piv * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = LaurentPoly::zero();
        }
        prev = piv;
    }
    rank
}

/// Exact rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn rat_one() -> Rational {
    Rational::one()
}

//! Isomorphisms between sums of graded projectives `P_seq{s} = R 1_seq {s}`.
//!
//! A morphism `P_src{s} -> P_tgt{t}` is right multiplication by an element
//! of `1_src R 1_tgt` of degree `s - t`. Inverse pairs are found by fixing a
//! candidate for one matrix and solving the (then linear) system for the other.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cartan::{Graph, Seq, Vertex};
use crate::error::ProjError;
use crate::klr::{BasisDiagram, Element, KlrAlgebra};
use crate::linalg::{rat, solve, Equation};
use crate::ring::{reconstruct_from_series, Rational, RationalGraded};

/// `P_seq{shift}`
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjObject {
    pub seq: Seq,
    pub shift: i64,
}

impl ProjObject {
    pub fn new(seq: Seq, shift: i64) -> Self {
        ProjObject { seq, shift }
    }
}

/// A morphism `(+) sources -> (+) targets`; `entries[a][b]` maps source `b`
/// to target `a` and lies in `1_{source_b} R 1_{target_a}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorMatrix {
    pub sources: Vec<ProjObject>,
    pub targets: Vec<ProjObject>,
    pub entries: Vec<Vec<Element>>,
}

impl MorMatrix {
    pub fn identity(alg: &KlrAlgebra, objects: &[ProjObject]) -> Result<Self, ProjError> {
        let mut entries = Vec::with_capacity(objects.len());
        for (a, _) in objects.iter().enumerate() {
            let mut row = Vec::with_capacity(objects.len());
            for (b, ob) in objects.iter().enumerate() {
                row.push(if a == b { alg.idempotent(&ob.seq)? } else { alg.zero() });
            }
            entries.push(row);
        }
        Ok(MorMatrix { sources: objects.to_vec(), targets: objects.to_vec(), entries })
    }

    /// Whether every entry is homogeneous of its required degree and sits
    /// between the right idempotents.
    pub fn is_well_formed(&self, alg: &KlrAlgebra) -> bool {
        self.entries.len() == self.targets.len()
            && self.entries.iter().zip(&self.targets).all(|(row, t)| {
                row.len() == self.sources.len()
                    && row.iter().zip(&self.sources).all(|(e, s)| {
                        let degree_ok = match e.homogeneous_degree(alg.graph()) {
                            Some(Some(d)) => d == s.shift - t.shift,
                            Some(None) => true,
                            None => false,
                        };
                        degree_ok && e.terms().all(|(d, _)| d.bottom == t.seq && d.top() == s.seq)
                    })
            })
    }
}

/// `second o first`: entry `(c, a)` is `sum_b first[b][a] * second[c][b]`.
pub fn compose(alg: &KlrAlgebra, first: &MorMatrix, second: &MorMatrix) -> Result<MorMatrix, ProjError> {
    if first.targets != second.sources {
        return Err(ProjError::WeightMismatch);
    }
    let mut entries = Vec::with_capacity(second.targets.len());
    for row2 in &second.entries {
        let mut row = Vec::with_capacity(first.sources.len());
        for a in 0..first.sources.len() {
            let mut acc = alg.zero();
            for (b, v) in row2.iter().enumerate() {
                acc += &alg.mul(&first.entries[b][a], v)?;
            }
            row.push(acc);
        }
        entries.push(row);
    }
    Ok(MorMatrix { sources: first.sources.clone(), targets: second.targets.clone(), entries })
}

/// A basis of `Hom(P_src{s}, P_tgt{t})`: the degree `s - t` part of `1_src R 1_tgt`.
pub fn hom_basis(alg: &KlrAlgebra, src: &ProjObject, tgt: &ProjObject) -> Result<Vec<Element>, ProjError> {
    let diagrams = alg.basis_of_degree(&tgt.seq, &src.seq, src.shift - tgt.shift)?;
    Ok(diagrams.into_iter().map(|d| alg.basis_element(d)).collect())
}

type Bases = Vec<Vec<Vec<Element>>>;

fn bases(alg: &KlrAlgebra, from: &[ProjObject], to: &[ProjObject]) -> Result<Bases, ProjError> {
    to.iter()
        .map(|t| from.iter().map(|s| hom_basis(alg, s, t)).collect())
        .collect()
}

fn assemble(alg: &KlrAlgebra, from: &[ProjObject], to: &[ProjObject], basis: &Bases, coeffs: &[Rational]) -> MorMatrix {
    let mut it = coeffs.iter();
    let entries = basis
        .iter()
        .map(|row| {
            row.iter()
                .map(|cell| {
                    let mut e = alg.zero();
                    for b in cell {
                        e.add_scaled(it.next().expect("enough coefficients"), b);
                    }
                    e
                })
                .collect()
        })
        .collect();
    MorMatrix { sources: from.to_vec(), targets: to.to_vec(), entries }
}

/// Solves for `V` with `V o U = 1_A` and `U o V = 1_B`, given `U`.
fn solve_inverse(alg: &KlrAlgebra, u: &MorMatrix, v_basis: &Bases) -> Result<Option<MorMatrix>, ProjError> {
    let (a_objs, b_objs) = (&u.sources, &u.targets);
    // Unknown index for every basis element of every V entry.
    let mut index = Vec::new();
    let mut n = 0usize;
    for row in v_basis {
        let mut r = Vec::new();
        for cell in row {
            r.push((n..n + cell.len()).collect::<Vec<_>>());
            n += cell.len();
        }
        index.push(r);
    }
    let mut rows: BTreeMap<(u8, usize, usize, BasisDiagram), Equation> = BTreeMap::new();
    // (V o U)(a2, a) = sum_b U[b][a] * V[a2][b]
    for a2 in 0..a_objs.len() {
        for a in 0..a_objs.len() {
            if a == a2 {
                let d = BasisDiagram::idempotent(a_objs[a].seq.clone());
                rows.entry((0, a2, a, d)).or_default().rhs = Rational::one();
            }
            for b in 0..b_objs.len() {
                for (k, basis_el) in v_basis[a2][b].iter().enumerate() {
                    let prod = alg.mul(&u.entries[b][a], basis_el)?;
                    for (d, c) in prod.terms() {
                        let eq = rows.entry((0, a2, a, d.clone())).or_default();
                        *eq.coeffs.entry(index[a2][b][k]).or_insert_with(Rational::zero) += c;
                    }
                }
            }
        }
    }
    // (U o V)(b2, b) = sum_a V[a][b] * U[b2][a]
    for b2 in 0..b_objs.len() {
        for b in 0..b_objs.len() {
            if b == b2 {
                let d = BasisDiagram::idempotent(b_objs[b].seq.clone());
                rows.entry((1, b2, b, d)).or_default().rhs = Rational::one();
            }
            for a in 0..a_objs.len() {
                for (k, basis_el) in v_basis[a][b].iter().enumerate() {
                    let prod = alg.mul(basis_el, &u.entries[b2][a])?;
                    for (d, c) in prod.terms() {
                        let eq = rows.entry((1, b2, b, d.clone())).or_default();
                        *eq.coeffs.entry(index[a][b][k]).or_insert_with(Rational::zero) += c;
                    }
                }
            }
        }
    }
    let equations: Vec<Equation> = rows
        .into_values()
        .map(|mut e| {
            e.coeffs.retain(|_, c| !c.is_zero());
            e
        })
        .collect();
    Ok(solve(&equations, n).map(|x| assemble(alg, b_objs, a_objs, v_basis, &x)))
}

/// How many candidate matrices `U` to try before giving up.
#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub seed: u64,
    pub random_tries: usize,
    /// Exhaustive search over `[-3, 3]^n` is used when `n` is at most this.
    pub exhaustive_max_unknowns: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { seed: 0x5eed, random_tries: 24, exhaustive_max_unknowns: 4 }
    }
}

/// Finds `U: (+)A -> (+)B` and `V: (+)B -> (+)A` with `V o U = 1` and `U o V = 1`.
pub fn find_inverse_pair(
    alg: &KlrAlgebra,
    a_objs: &[ProjObject],
    b_objs: &[ProjObject],
) -> Result<(MorMatrix, MorMatrix), ProjError> {
    find_inverse_pair_with(alg, a_objs, b_objs, SearchOptions::default())
}

pub fn find_inverse_pair_with(
    alg: &KlrAlgebra,
    a_objs: &[ProjObject],
    b_objs: &[ProjObject],
    opts: SearchOptions,
) -> Result<(MorMatrix, MorMatrix), ProjError> {
    let weight = alg.weight();
    let n = alg.graph().num_vertices();
    if a_objs.iter().chain(b_objs).any(|o| &o.seq.weight(n) != weight) {
        return Err(ProjError::WeightMismatch);
    }
    let u_basis = bases(alg, a_objs, b_objs)?;
    let v_basis = bases(alg, b_objs, a_objs)?;
    let unknowns: usize = u_basis.iter().flatten().map(Vec::len).sum();

    let mut candidates: Vec<Vec<Rational>> = vec![vec![Rational::one(); unknowns]];
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.random_tries {
        candidates.push((0..unknowns).map(|_| rat(rng.random_range(-3..=3))).collect());
    }
    let try_candidate = |c: &[Rational]| -> Result<Option<(MorMatrix, MorMatrix)>, ProjError> {
        let u = assemble(alg, a_objs, b_objs, &u_basis, c);
        Ok(solve_inverse(alg, &u, &v_basis)?.map(|v| (u, v)))
    };
    for c in &candidates {
        if let Some(pair) = try_candidate(c)? {
            return Ok(pair);
        }
    }
    if unknowns <= opts.exhaustive_max_unknowns {
        let total = 7usize.pow(unknowns as u32);
        for code in 0..total {
            let mut c = Vec::with_capacity(unknowns);
            let mut x = code;
            for _ in 0..unknowns {
                c.push(rat((x % 7) as i64 - 3));
                x /= 7;
            }
            if let Some(pair) = try_candidate(&c)? {
                return Ok(pair);
            }
        }
    }
    Err(ProjError::NoIsomorphism)
}

/// Recomputes both composites and checks they are identities, and that
/// every entry has the required degree.
pub fn verify_inverse_pair(alg: &KlrAlgebra, u: &MorMatrix, v: &MorMatrix) -> Result<bool, ProjError> {
    if !u.is_well_formed(alg) || !v.is_well_formed(alg) {
        return Ok(false);
    }
    let vu = compose(alg, u, v)?;
    let uv = compose(alg, v, u)?;
    Ok(vu == MorMatrix::identity(alg, &u.sources)? && uv == MorMatrix::identity(alg, &u.targets)?)
}

/// `sum_A q^s gdim(1_x R 1_seq) == sum_B q^s gdim(1_x R 1_seq)` for every `x`:
/// the two sides have the same class in `K_0`.
pub fn k0_shadow(alg: &KlrAlgebra, a_objs: &[ProjObject], b_objs: &[ProjObject]) -> Result<bool, ProjError> {
    let side = |objs: &[ProjObject], x: &Seq| -> Result<RationalGraded, ProjError> {
        let mut acc = RationalGraded::zero();
        for o in objs {
            acc = &acc + &alg.gdim_hom_closed(x, &o.seq)?.shift(o.shift);
        }
        Ok(acc)
    };
    for x in alg.seqs() {
        if !side(a_objs, &x)?.rg_equal(&side(b_objs, &x)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

const REFINED_CUTOFF: i64 = 20;
const REFINED_GUARD: i64 = 8;

/// `P_{iji} = P_{i^(2) j} (+) P_{j i^(2)}` for adjacent `i`, `j`, checked on
/// graded dimensions of endomorphism rings. The summands are cut out by
/// `x_1 psi_1 1_{iij}` and `x_2 psi_2 1_{jii}`.
pub fn refined_decomposition_check(graph: &Graph, i: Vertex, j: Vertex) -> Result<bool, ProjError> {
    refined_decomposition_check_with_shifts(graph, i, j, (0, 0))
}

/// As [`refined_decomposition_check`], with the two summands shifted by `shifts`.
pub fn refined_decomposition_check_with_shifts(
    graph: &Graph,
    i: Vertex,
    j: Vertex,
    shifts: (i64, i64),
) -> Result<bool, ProjError> {
    if graph.inner(i, j) != -1 {
        return Err(ProjError::NotAdjacent(i, j));
    }
    let iji = Seq(vec![i, j, i]);
    let alg = KlrAlgebra::for_seq(graph.clone(), &iji);
    let iij = Seq(vec![i, i, j]);
    let jii = Seq(vec![j, i, i]);
    let e1 = alg.basis_element(BasisDiagram::new(
        iij.clone(),
        crate::perm::Permutation::from_one_line(&[2, 1, 3]).expect("valid"),
        vec![1, 0, 0],
    ));
    let e2 = alg.basis_element(BasisDiagram::new(
        jii.clone(),
        crate::perm::Permutation::from_one_line(&[1, 3, 2]).expect("valid"),
        vec![0, 1, 0],
    ));
    let summands = [(e1, iij, shifts.0), (e2, jii, shifts.1)];
    let mut total = RationalGraded::zero();
    for (ea, sa, ta) in &summands {
        for (eb, sb, tb) in &summands {
            // Hom from summand a to summand b: e_a R e_b, bottom sb, top sa.
            let series = alg.sandwich_series(ea, eb, sb, sa, REFINED_CUTOFF)?;
            let block = reconstruct_from_series(&series, REFINED_CUTOFF, vec![2, 2, 4], REFINED_GUARD)
                .ok_or(ProjError::Unstable(REFINED_CUTOFF))?;
            total = &total + &block.shift(ta - tb);
        }
    }
    let end = alg.gdim_hom_closed(&iji, &iji)?;
    Ok(end.rg_equal(&total))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[usize]) -> Seq {
        Seq(v.to_vec())
    }

    fn obj(v: &[usize], shift: i64) -> ProjObject {
        ProjObject::new(s(v), shift)
    }

    #[test]
    fn hom_basis_examples() {
        let one = KlrAlgebra::for_seq(Graph::single(), &s(&[0]));
        let b = hom_basis(&one, &obj(&[0], 0), &obj(&[0], 0)).unwrap();
        assert_eq!(b, vec![one.idempotent(&s(&[0])).unwrap()]);

        let a2 = KlrAlgebra::for_seq(Graph::a2(), &s(&[0, 1]));
        let b = hom_basis(&a2, &obj(&[0, 1], 0), &obj(&[1, 0], -1)).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].homogeneous_degree(a2.graph()), Some(Some(1)));

        let ii = KlrAlgebra::for_seq(Graph::single(), &s(&[0, 0]));
        // Degree 2: x1, x2 and the three x^a psi1 with |a| = 2.
        let deg2 = hom_basis(&ii, &obj(&[0, 0], 2), &obj(&[0, 0], 0)).unwrap();
        assert_eq!(deg2.len(), 5);
        let series = ii.gdim_hom_closed(&s(&[0, 0]), &s(&[0, 0])).unwrap().expand(2);
        assert_eq!(series.coeff(2), 5.into());
        assert_eq!(hom_basis(&ii, &obj(&[0, 0], 0), &obj(&[0, 0], 2)).unwrap().len(), 1);
    }

    #[test]
    fn distant_labels_commute() {
        let g = Graph::edgeless2();
        let alg = KlrAlgebra::for_seq(g, &s(&[0, 1]));
        let a = [obj(&[0, 1], 0)];
        let b = [obj(&[1, 0], 0)];
        let (u, v) = find_inverse_pair(&alg, &a, &b).unwrap();
        assert!(verify_inverse_pair(&alg, &u, &v).unwrap());
        assert!(k0_shadow(&alg, &a, &b).unwrap());
    }

    #[test]
    fn adjacent_labels_split() {
        let g = Graph::a2();
        let alg = KlrAlgebra::for_seq(g, &s(&[0, 1, 0]));
        let a = [obj(&[0, 1, 0], 1), obj(&[0, 1, 0], -1)];
        let b = [obj(&[0, 0, 1], 0), obj(&[1, 0, 0], 0)];
        let (u, v) = find_inverse_pair(&alg, &a, &b).unwrap();
        assert!(verify_inverse_pair(&alg, &u, &v).unwrap());
        assert!(k0_shadow(&alg, &a, &b).unwrap());
        // Reversed roles also work.
        let (u2, v2) = find_inverse_pair(&alg, &b, &a).unwrap();
        assert!(verify_inverse_pair(&alg, &u2, &v2).unwrap());
    }

    #[test]
    fn adjacent_labels_do_not_commute() {
        let alg = KlrAlgebra::for_seq(Graph::a2(), &s(&[0, 1]));
        let a = [obj(&[0, 1], 0)];
        let b = [obj(&[1, 0], 0)];
        assert!(matches!(find_inverse_pair(&alg, &a, &b), Err(ProjError::NoIsomorphism)));
        assert!(!k0_shadow(&alg, &a, &b).unwrap());
    }

    #[test]
    fn wrong_shifts_fail() {
        let alg = KlrAlgebra::for_seq(Graph::a2(), &s(&[0, 1, 0]));
        let a = [obj(&[0, 1, 0], 1), obj(&[0, 1, 0], 1)];
        let b = [obj(&[0, 0, 1], 0), obj(&[1, 0, 0], 0)];
        assert!(find_inverse_pair(&alg, &a, &b).is_err());
        assert!(!k0_shadow(&alg, &a, &b).unwrap());
    }

    #[test]
    fn refined_decomposition() {
        assert!(refined_decomposition_check(&Graph::a2(), 0, 1).unwrap());
        assert!(!refined_decomposition_check_with_shifts(&Graph::a2(), 0, 1, (1, 0)).unwrap());
        assert!(matches!(
            refined_decomposition_check(&Graph::edgeless2(), 0, 1),
            Err(ProjError::NotAdjacent(0, 1))
        ));
    }

    #[test]
    fn composites_detect_errors() {
        let alg = KlrAlgebra::for_seq(Graph::edgeless2(), &s(&[0, 1]));
        let a = [obj(&[0, 1], 0)];
        let b = [obj(&[1, 0], 0)];
        let (u, mut v) = find_inverse_pair(&alg, &a, &b).unwrap();
        v.entries[0][0] = v.entries[0][0].scale(&rat(2));
        assert!(!verify_inverse_pair(&alg, &u, &v).unwrap());
    }
}

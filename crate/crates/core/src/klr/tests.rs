use alloc::vec;
use alloc::vec::Vec;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::cartan::{Graph, Seq};
use crate::linalg::rat;
use crate::oracle::{act_element, act_word, PolyVector};
use crate::perm::Permutation;
use crate::poly::monomials_up_to;
use crate::ring::{LaurentPoly, RationalGraded};

fn seq(v: &[usize]) -> Seq {
    Seq(v.to_vec())
}

fn diagram(bottom: &[usize], perm: &[usize], dots: &[u32]) -> BasisDiagram {
    BasisDiagram::new(seq(bottom), Permutation::from_one_line(perm).unwrap(), dots.to_vec())
}

#[test]
fn degree_examples() {
    let single = Graph::single();
    let a2 = Graph::a2();
    assert_eq!(diagram(&[0, 0], &[1, 2], &[1, 0]).degree(&single), 2);
    assert_eq!(diagram(&[0, 0], &[2, 1], &[0, 0]).degree(&single), -2);
    assert_eq!(diagram(&[0, 1], &[2, 1], &[0, 0]).degree(&a2), 1);
}

#[test]
fn idempotents_are_orthogonal() {
    for g in [Graph::a2(), Graph::a3(), Graph::edgeless2()] {
        for nu in [vec![1, 1], vec![2, 1], vec![2, 2]] {
            let mut w = nu.clone();
            w.resize(g.num_vertices(), 0);
            let alg = KlrAlgebra::new(g.clone(), crate::cartan::Weight(w)).unwrap();
            let ss = alg.seqs();
            for a in &ss {
                for b in &ss {
                    let p = alg.mul(&alg.idempotent(a).unwrap(), &alg.idempotent(b).unwrap()).unwrap();
                    if a == b {
                        assert_eq!(p, alg.idempotent(a).unwrap());
                    } else {
                        assert!(p.is_zero());
                    }
                }
            }
        }
    }
}

#[test]
fn unit_acts_as_identity() {
    let g = Graph::a2();
    let alg = KlrAlgebra::for_seq(g, &seq(&[0, 1, 0]));
    let one = alg.unit();
    let e = alg.normalize(&GeneratorWord::new(seq(&[0, 1, 0])).dot(1).cross(0).cross(1)).unwrap();
    assert_eq!(alg.mul(&one, &e).unwrap(), e);
    assert_eq!(alg.mul(&e, &one).unwrap(), e);
}

#[test]
fn normalize_examples() {
    let ii = seq(&[0, 0]);
    let single = KlrAlgebra::for_seq(Graph::single(), &ii);
    let sq = single.normalize(&GeneratorWord::new(ii.clone()).cross(0).cross(0)).unwrap();
    assert!(sq.is_zero());

    let ij = seq(&[0, 1]);
    let far = KlrAlgebra::for_seq(Graph::edgeless2(), &ij);
    let sq = far.normalize(&GeneratorWord::new(ij.clone()).cross(0).cross(0)).unwrap();
    assert_eq!(sq, far.idempotent(&ij).unwrap());

    let near = KlrAlgebra::for_seq(Graph::a2(), &ij);
    let sq = near.normalize(&GeneratorWord::new(ij.clone()).cross(0).cross(0)).unwrap();
    let expected = &near.dots_on(&ij, &[1, 0]).unwrap() + &near.dots_on(&ij, &[0, 1]).unwrap();
    assert_eq!(sq, expected);

    // psi_1 x_1 - x_2 psi_1 on 1_ii
    let a = single.normalize(&GeneratorWord::new(ii.clone()).dot(0).cross(0)).unwrap();
    let b = single.normalize(&GeneratorWord::new(ii.clone()).cross(0).dot(1)).unwrap();
    assert_eq!(&a - &b, single.idempotent(&ii).unwrap());
}

#[test]
fn mul_examples() {
    let iji = seq(&[0, 1, 0]);
    let a2 = KlrAlgebra::for_seq(Graph::a2(), &iji);
    let e = a2.idempotent(&iji).unwrap();
    assert_eq!(a2.mul(&e, &e).unwrap(), e);

    let ii = seq(&[0, 0]);
    let nil = KlrAlgebra::for_seq(Graph::single(), &ii);
    let x1 = nil.dots_on(&ii, &[1, 0]).unwrap();
    assert_eq!(nil.mul(&x1, &x1).unwrap(), nil.dots_on(&ii, &[2, 0]).unwrap());

    let psi = nil.basis_element(diagram(&[0, 0], &[2, 1], &[0, 0]));
    let got = nil.mul(&psi, &x1).unwrap();
    let mut expected = nil.basis_element(diagram(&[0, 0], &[2, 1], &[0, 1]));
    expected.add_term(BasisDiagram::idempotent(ii), rat(1));
    assert_eq!(got, expected);
}

#[test]
fn enumerate_basis_examples() {
    let one = KlrAlgebra::for_seq(Graph::single(), &seq(&[0]));
    let b = one.enumerate_basis(&seq(&[0]), &seq(&[0]), 4).unwrap();
    assert_eq!(b.len(), 3);
    assert!(b.iter().all(|d| d.perm.is_identity()));

    let ii = seq(&[0, 0]);
    let two = KlrAlgebra::for_seq(Graph::single(), &ii);
    let b = two.enumerate_basis(&ii, &ii, 0).unwrap();
    // 1, psi, x1 psi, x2 psi
    assert_eq!(b.len(), 4);
    assert!(b.iter().all(|d| two.degree(d) <= 0));

    let ij = seq(&[0, 1]);
    let a2 = KlrAlgebra::for_seq(Graph::a2(), &ij);
    let b = a2.enumerate_basis(&ij, &seq(&[1, 0]), 1).unwrap();
    assert_eq!(b, vec![diagram(&[0, 1], &[2, 1], &[0, 0])]);
}

#[test]
fn gdim_examples() {
    let single = KlrAlgebra::for_seq(Graph::single(), &seq(&[0]));
    assert_eq!(single.gdim_hom_closed(&seq(&[0]), &seq(&[0])).unwrap(), RationalGraded::over_dots(LaurentPoly::one(), 1));
    let ii = seq(&[0, 0]);
    let two = KlrAlgebra::for_seq(Graph::single(), &ii);
    let num = LaurentPoly::from_terms([(0, 1), (-2, 1)]);
    assert_eq!(two.gdim_hom_closed(&ii, &ii).unwrap(), RationalGraded::over_dots(num, 2));
    let a2 = KlrAlgebra::for_seq(Graph::a2(), &seq(&[0, 1]));
    assert_eq!(
        a2.gdim_hom_closed(&seq(&[0, 1]), &seq(&[1, 0])).unwrap(),
        RationalGraded::over_dots(LaurentPoly::q(), 2)
    );
}

#[test]
fn gdim_matches_basis_count() {
    for g in [Graph::a2(), Graph::edgeless2(), Graph::a3()] {
        for nu in [vec![1, 1], vec![2, 1], vec![2, 2], vec![1, 1, 1]] {
            if nu.len() > g.num_vertices() {
                continue;
            }
            let mut w = nu.clone();
            w.resize(g.num_vertices(), 0);
            let alg = KlrAlgebra::new(g.clone(), crate::cartan::Weight(w)).unwrap();
            for a in alg.seqs() {
                for b in alg.seqs() {
                    let series = alg.gdim_hom_closed(&a, &b).unwrap().expand(10);
                    let mut count = LaurentPoly::zero();
                    for d in alg.enumerate_basis(&a, &b, 10).unwrap() {
                        count.add_term(alg.degree(&d), 1.into());
                    }
                    assert_eq!(series, count, "{a:?} -> {b:?}");
                }
            }
        }
    }
}

#[test]
fn normalizing_a_normal_form_word_is_the_identity() {
    for g in [Graph::a2(), Graph::a3(), Graph::edgeless2()] {
        for s in [seq(&[0, 1, 0]), seq(&[0, 0, 1, 1]), seq(&[1, 0, 1, 0])] {
            let alg = KlrAlgebra::for_seq(g.clone(), &s);
            for w in Permutation::all(s.len()) {
                let dots: Vec<u32> = (0..s.len() as u32).map(|k| k % 2).collect();
                let mut word = GeneratorWord::new(s.clone());
                for &k in w.canonical_word().iter().rev() {
                    word = word.cross(k);
                }
                for (k, &e) in dots.iter().enumerate() {
                    for _ in 0..e {
                        word = word.dot(k);
                    }
                }
                let d = BasisDiagram::new(s.clone(), w, dots.clone());
                assert_eq!(alg.normalize(&word).unwrap(), alg.basis_element(d));
            }
        }
    }
}

fn random_word(rng: &mut ChaCha8Rng, bottom: Seq, len: usize) -> GeneratorWord {
    let m = bottom.len();
    let mut w = GeneratorWord::new(bottom);
    for _ in 0..len {
        if m > 1 && rng.random_bool(0.6) {
            w = w.cross(rng.random_range(0..m - 1));
        } else {
            w = w.dot(rng.random_range(0..m));
        }
    }
    w
}

fn random_seq(rng: &mut ChaCha8Rng, g: &Graph, m: usize) -> Seq {
    Seq((0..m).map(|_| rng.random_range(0..g.num_vertices())).collect())
}

#[test]
fn oracle_soundness_sampled() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for g in [Graph::a2(), Graph::a3(), Graph::edgeless2()] {
        for _ in 0..12 {
            let m = rng.random_range(2..=4);
            let bottom = random_seq(&mut rng, &g, m);
            let len = rng.random_range(1..=5);
            let word = random_word(&mut rng, bottom.clone(), len);
            let alg = KlrAlgebra::for_seq(g.clone(), &bottom);
            let e = alg.normalize(&word).unwrap();
            for a in monomials_up_to(m, 6) {
                let v = PolyVector::monomial(bottom.clone(), a);
                assert_eq!(act_element(&g, &e, &v), act_word(&g, &word, &v), "{word:?}");
            }
        }
    }
}

#[test]
fn associativity_sampled() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for g in [Graph::a2(), Graph::a3(), Graph::edgeless2()] {
        for _ in 0..20 {
            let m = rng.random_range(2..=4);
            let s = random_seq(&mut rng, &g, m);
            let alg = KlrAlgebra::for_seq(g.clone(), &s);
            let c = random_diagram(&mut rng, s);
            let b = random_diagram(&mut rng, c.top());
            let a = random_diagram(&mut rng, b.top());
            let (a, b, c) = (alg.basis_element(a), alg.basis_element(b), alg.basis_element(c));
            let left = alg.mul(&alg.mul(&a, &b).unwrap(), &c).unwrap();
            let right = alg.mul(&a, &alg.mul(&b, &c).unwrap()).unwrap();
            assert_eq!(left, right);
        }
    }
}

fn random_diagram(rng: &mut ChaCha8Rng, bottom: Seq) -> BasisDiagram {
    let m = bottom.len();
    let perms = Permutation::all(m);
    let w = perms[rng.random_range(0..perms.len())].clone();
    let mut dots = vec![0; m];
    for _ in 0..rng.random_range(0..=2) {
        dots[rng.random_range(0..m)] += 1;
    }
    BasisDiagram::new(bottom, w, dots)
}

#[test]
fn errors_are_reported() {
    let alg = KlrAlgebra::for_seq(Graph::a2(), &seq(&[0, 1]));
    assert!(alg.idempotent(&seq(&[0, 0])).is_err());
    assert!(alg.cross(1).is_err());
    assert!(alg.normalize(&GeneratorWord::new(seq(&[0, 1])).dot(5)).is_err());
    let other = KlrAlgebra::for_seq(Graph::a2(), &seq(&[0, 0]));
    assert!(alg.mul(&alg.unit(), &other.unit()).is_err());
}

#[test]
fn cache_does_not_change_results() {
    let s = seq(&[0, 1, 0, 1]);
    let word = GeneratorWord::new(s.clone()).cross(1).cross(0).cross(2).cross(1).cross(0).dot(2).cross(1);
    let warm = KlrAlgebra::for_seq(Graph::a2(), &s);
    let first = warm.normalize(&word).unwrap();
    assert!(warm.cache_size() > 0);
    assert_eq!(warm.normalize(&word).unwrap(), first);
    assert_eq!(warm.clone().normalize(&word).unwrap(), first);
}

fn arb_word() -> impl Strategy<Value = (usize, Vec<usize>, Vec<(bool, usize)>)> {
    (0usize..3, prop::collection::vec(0usize..2, 2..=4), prop::collection::vec((any::<bool>(), 0usize..4), 0..=6))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalize_is_homogeneous_and_integral((gi, labels, gens) in arb_word()) {
        let g = [Graph::a2(), Graph::edgeless2(), Graph::single()][gi].clone();
        let labels: Vec<usize> = labels.iter().map(|v| v % g.num_vertices()).collect();
        let m = labels.len();
        let mut word = GeneratorWord::new(Seq(labels.clone()));
        for (cross, k) in gens {
            word = if cross { word.cross(k % (m - 1)) } else { word.dot(k % m) };
        }
        let alg = KlrAlgebra::for_seq(g.clone(), &Seq(labels));
        let e = alg.normalize(&word).unwrap();
        prop_assert!(e.is_integral());
        match e.homogeneous_degree(&g) {
            Some(Some(d)) => prop_assert_eq!(d, word.degree(&g)),
            Some(None) => {}
            None => prop_assert!(false, "inhomogeneous result"),
        }
    }
}

//! Worked examples and error paths across the public API.

use qhecke_core::hecke::{check_b_relations, check_t_relations, HeckeElt};
use qhecke_core::nilhecke::NilHecke;
use qhecke_core::projiso::{find_inverse_pair, verify_inverse_pair, ProjObject};
use qhecke_core::uplus::{self, pair_recursive};
use qhecke_core::{
    BasisDiagram, Generator, GeneratorWord, Graph, GraphError, HeckeError, KlrAlgebra, KlrError, LaurentPoly,
    LedgerOptions, NilHeckeError, Permutation, ProjError, RationalGraded, Seq, Weight,
};

fn seq(v: &[usize]) -> Seq {
    Seq(v.to_vec())
}

#[test]
fn graph_construction_errors() {
    assert_eq!(Graph::new(&["i", "i"], &[]), Err(GraphError::DuplicateVertex("i".into())));
    assert_eq!(Graph::new(&["i"], &[("i", "i")]), Err(GraphError::Loop("i".into())));
    assert_eq!(Graph::new(&["i", "j"], &[("i", "k")]), Err(GraphError::UnknownVertex("k".into())));
    assert!(matches!(Graph::new(&["i", "j"], &[("i", "j"), ("j", "i")]), Err(GraphError::MultipleEdge(..))));
    let a2 = Graph::a2();
    assert_eq!((a2.inner(0, 0), a2.inner(0, 1)), (2, -1));
    assert!(!a2.has_odd_cycle());
    let triangle = Graph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]).unwrap();
    assert!(triangle.has_odd_cycle());
}

#[test]
fn dot_slides_through_equal_crossing() {
    // psi x_1 = x_2 psi + 1 on 1_ii
    let alg = KlrAlgebra::new(Graph::single(), Weight(vec![2])).unwrap();
    let (psi, x1, x2) = (alg.cross(0).unwrap(), alg.dot(0).unwrap(), alg.dot(1).unwrap());
    let lhs = alg.mul(&psi, &x1).unwrap();
    let mut rhs = alg.mul(&x2, &psi).unwrap();
    rhs += &alg.unit();
    assert_eq!(lhs, rhs);
    assert!(alg.mul(&psi, &psi).unwrap().is_zero());
}

#[test]
fn adjacent_braid_and_double_crossing() {
    let alg = KlrAlgebra::for_seq(Graph::a2(), &seq(&[0, 1, 0]));
    let w = |f: &[usize]| f.iter().fold(GeneratorWord::new(seq(&[0, 1, 0])), |w, &k| w.cross(k));
    let lhs = alg.normalize(&w(&[0, 1, 0])).unwrap();
    let rhs = alg.normalize(&w(&[1, 0, 1])).unwrap();
    assert_eq!(&lhs - &rhs, alg.idempotent(&seq(&[0, 1, 0])).unwrap());
    // psi^2 1_ij = x_1 + x_2 (sign convention +1, i -> j)
    let alg = KlrAlgebra::for_seq(Graph::a2(), &seq(&[0, 1]));
    let sq = alg.normalize(&GeneratorWord::new(seq(&[0, 1])).cross(0).cross(0)).unwrap();
    let mut want = alg.dots_on(&seq(&[0, 1]), &[1, 0]).unwrap();
    want += &alg.dots_on(&seq(&[0, 1]), &[0, 1]).unwrap();
    assert_eq!(sq, want);
    assert_eq!(alg.ledger(), LedgerOptions::default());
}

#[test]
fn klr_error_paths() {
    let alg = KlrAlgebra::for_seq(Graph::a2(), &seq(&[0, 1]));
    assert!(matches!(alg.dot(2), Err(KlrError::IndexOutOfRange { index: 2, strands: 2 })));
    assert!(matches!(alg.cross(1), Err(KlrError::IndexOutOfRange { .. })));
    assert!(matches!(alg.idempotent(&seq(&[0, 0])), Err(KlrError::SequenceWeight(_))));
    let other = KlrAlgebra::for_seq(Graph::a2(), &seq(&[0, 0]));
    assert!(matches!(alg.mul(&alg.unit(), &other.unit()), Err(KlrError::WeightMismatch { .. })));
    assert!(matches!(KlrAlgebra::new(Graph::a2(), Weight(vec![1])), Err(KlrError::Graph(GraphError::WeightLength { .. }))));
}

#[test]
fn basis_and_degrees() {
    let g = Graph::a2();
    let alg = KlrAlgebra::for_seq(g.clone(), &seq(&[0, 1]));
    let d = BasisDiagram::new(seq(&[0, 1]), Permutation::from_one_line(&[2, 1]).unwrap(), vec![0, 0]);
    assert_eq!(d.top(), seq(&[1, 0]));
    assert_eq!(alg.degree(&d), 1);
    let basis = alg.enumerate_basis(&seq(&[0, 1]), &seq(&[1, 0]), 5).unwrap();
    // one crossing with dots of total degree <= 2 (each dot has degree 2)
    assert_eq!(basis.len(), 1 + 2 + 3);
    assert_eq!(alg.min_degree(&seq(&[0, 1]), &seq(&[1, 0])), Some(1));
    assert_eq!(alg.gdim_hom_closed(&seq(&[0, 1]), &seq(&[1, 0])).unwrap(), RationalGraded::new(LaurentPoly::q(), vec![2, 2]));
    let w = GeneratorWord::new(seq(&[0, 1])).dot(0).cross(0);
    assert_eq!(w.factors, vec![Generator::Dot(0), Generator::Cross(0)]);
    assert_eq!(w.degree(&g), 3);
    assert_eq!(w.top(), seq(&[1, 0]));
}

#[test]
fn pairing_examples() {
    let g = Graph::a2();
    let v = pair_recursive(&g, &seq(&[0, 0]), &seq(&[0, 0]));
    // (E_i E_i, E_i E_i) = (1 + q^-2) / (1 - q^2)^2: the crossing has degree -2
    assert!(v.rg_equal(&RationalGraded::new(LaurentPoly::from_terms([(-2, 1), (0, 1)]), vec![2, 2])));
    assert_eq!(uplus::weight_dim(&g, &Weight(vec![1, 1])), 2);
    assert_eq!(uplus::serre_check(&g, 0, 0), Err(qhecke_core::UplusError::SameVertex));
}

#[test]
fn nilhecke_errors_and_small_ranks() {
    assert_eq!(NilHecke::new(0).err(), Some(NilHeckeError::RankTooSmall(0)));
    assert_eq!(NilHecke::new(4).unwrap().matrix_units().err(), Some(NilHeckeError::RankTooLarge(4)));
    let nh = NilHecke::new(1).unwrap();
    assert_eq!(nh.column_idempotent(), nh.one());
    assert_eq!(nh.gdim_column_end().unwrap(), RationalGraded::symmetric_polys(1));
    assert!(nh.check_copies().unwrap());
}

#[test]
fn hecke_generators_and_errors() {
    assert!(check_t_relations(4).is_empty());
    assert!(check_b_relations(4).is_empty());
    assert_eq!(HeckeElt::t_gen(0, 3).err(), Some(HeckeError::IndexOutOfRange { index: 0, rank: 3 }));
    assert_eq!(HeckeElt::t_gen(3, 3).err(), Some(HeckeError::IndexOutOfRange { index: 3, rank: 3 }));
    let a = HeckeElt::identity(2);
    let b = HeckeElt::identity(3);
    assert_eq!(a.mul(&b).err(), Some(HeckeError::RankMismatch(2, 3)));
    assert_eq!(HeckeElt::t_gen(1, 2).unwrap().to_string(), "(1)*T[1]");
}

#[test]
fn projective_isomorphism_search_fails_on_wrong_shifts() {
    let g = Graph::a2();
    let alg = KlrAlgebra::for_seq(g, &seq(&[0, 1, 0]));
    let a = [ProjObject::new(seq(&[0, 1, 0]), 0), ProjObject::new(seq(&[0, 1, 0]), 0)];
    let b = [ProjObject::new(seq(&[0, 0, 1]), 0), ProjObject::new(seq(&[1, 0, 0]), 0)];
    assert_eq!(find_inverse_pair(&alg, &a, &b).err(), Some(ProjError::NoIsomorphism));
    let far = Graph::edgeless2();
    let alg = KlrAlgebra::for_seq(far, &seq(&[0, 1]));
    let (u, v) = find_inverse_pair(&alg, &[ProjObject::new(seq(&[0, 1]), 0)], &[ProjObject::new(seq(&[1, 0]), 0)]).unwrap();
    assert!(verify_inverse_pair(&alg, &u, &v).unwrap());
    let other = [ProjObject::new(seq(&[0, 0]), 0)];
    assert_eq!(find_inverse_pair(&alg, &[ProjObject::new(seq(&[0, 1]), 0)], &other).err(), Some(ProjError::WeightMismatch));
}

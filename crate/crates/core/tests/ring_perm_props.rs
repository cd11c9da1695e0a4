//! Property tests for the coefficient ring, permutations and polynomials.

use num_bigint::BigInt;
use proptest::prelude::*;
use qhecke_core::poly::Poly;
use qhecke_core::ring::qfactorial;
use qhecke_core::{LaurentPoly, Permutation, Rational, RationalGraded};

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i64..=6, -20i64..=20), 0..6).prop_map(LaurentPoly::from_terms)
}

fn perm(m: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=m).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::from_one_line(&v).unwrap())
}

fn poly3() -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0u32..4, 3), -5i64..=5), 0..6).prop_map(|terms| {
        let mut p = Poly::zero(3);
        for (a, c) in terms {
            p.add_term(a, Rational::from_integer(BigInt::from(c)));
        }
        p
    })
}

proptest! {
    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn exact_division_recovers_factor(a in laurent(), b in laurent()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
    }

    #[test]
    fn bar_involution_is_multiplicative(a in laurent(), b in laurent()) {
        let bar = |p: &LaurentPoly| p.substitute_power(-1);
        prop_assert_eq!(bar(&(&a * &b)), &bar(&a) * &bar(&b));
        prop_assert_eq!(bar(&bar(&a)), a);
    }

    #[test]
    fn rational_graded_sums_expand_termwise(a in laurent(), b in laurent(), k in -3i64..=3) {
        let x = RationalGraded::new(a, vec![2]);
        let y = RationalGraded::new(b, vec![2, 4]);
        let s = &x + &y;
        let cutoff = 12;
        prop_assert_eq!(s.expand(cutoff), &x.expand(cutoff) + &y.expand(cutoff));
        prop_assert_eq!(x.shift(k).expand(cutoff), x.expand(cutoff - k).shift(k).truncate(cutoff));
    }

    #[test]
    fn permutation_group_laws(u in perm(5), v in perm(5)) {
        let e = Permutation::identity(5);
        prop_assert_eq!(u.compose(&u.inverse()), e.clone());
        prop_assert_eq!(u.inverse().length(), u.length());
        prop_assert!(u.compose(&v).length() <= u.length() + v.length());
        prop_assert!(u.length() <= Permutation::longest(5).length());
    }

    #[test]
    fn canonical_word_is_reduced(u in perm(5)) {
        let w = u.canonical_word();
        prop_assert_eq!(w.len(), u.length());
        prop_assert_eq!(Permutation::from_word(5, &w), u);
    }

    #[test]
    fn divided_differences_satisfy_nilhecke_relations(f in poly3(), g in poly3()) {
        prop_assert!(f.divided_difference(0).divided_difference(0).is_zero());
        prop_assert_eq!(
            f.divided_difference_word(&[0, 1, 0]),
            f.divided_difference_word(&[1, 0, 1])
        );
        // Twisted Leibniz rule.
        let lhs = (&f * &g).divided_difference(0);
        let rhs = &(&f.divided_difference(0) * &g) + &(&f.swap_vars(0) * &g.divided_difference(0));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn quantum_factorials() {
    assert_eq!(qfactorial(0), LaurentPoly::one());
    assert_eq!(qfactorial(2), LaurentPoly::from_terms([(-1, 1), (1, 1)]));
    assert_eq!(qfactorial(3), LaurentPoly::from_terms([(-3, 1), (-1, 2), (1, 2), (3, 1)]));
}

#[test]
fn non_divisors_are_rejected() {
    let p = LaurentPoly::from_terms([(0, 1), (2, 1)]);
    let d = LaurentPoly::from_terms([(0, 1), (1, 1)]);
    assert_eq!(p.div_exact(&d), None);
    assert_eq!(p.div_exact(&LaurentPoly::zero()), None);
    assert_eq!(LaurentPoly::from_terms([(0, 2)]).div_exact(&LaurentPoly::constant(3)), None);
}

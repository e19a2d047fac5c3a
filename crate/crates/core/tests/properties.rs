//! Randomized property checks: ring axioms, homomorphisms, λ-additivity,
//! power-structure axioms in both modes, factorization round-trips, and
//! trivial-group collapse.

use num_bigint::BigInt;
use proptest::prelude::*;

use orbispec_core::hodge::MixedHodgeEigenDatum;
use orbispec_core::lambda::{
    factorize, lambda_series, power_direct_formula, power_expand, Mode,
};
use orbispec_core::orbifold::{Dimension, TripleNode};
use orbispec_core::ring::EffectiveMapClass;
use orbispec_core::series::TruncatedSeries;
use orbispec_core::{
    CyclicRational, EquivariantHd, FiniteGroup, GradingGroup, GroupElementTuple, GroupRingElement,
    Rat,
};

fn rat_strategy() -> impl Strategy<Value = Rat> {
    (-24i64..=24, 1i64..=12).prop_map(|(n, d)| Rat::new(n, d))
}

fn pair_tuple_strategy() -> impl Strategy<Value = GroupElementTuple> {
    (rat_strategy(), rat_strategy()).prop_map(|(a, b)| {
        GroupElementTuple::new(vec![
            orbispec_core::Coord::Cyclic(CyclicRational::new(a)),
            orbispec_core::Coord::Rational(b),
        ])
    })
}

/// A random pair-ring element with at most 5 terms, denominators ≤ 12.
fn element_strategy() -> impl Strategy<Value = GroupRingElement> {
    proptest::collection::vec((pair_tuple_strategy(), -4i64..=4), 0..=5).prop_map(|terms| {
        GroupRingElement::from_terms(
            GradingGroup::pair(),
            terms.into_iter().map(|(t, c)| (t, BigInt::from(c))),
        )
        .unwrap()
    })
}

/// A random effective pair-ring element with support ≤ 2.
fn effective_strategy() -> impl Strategy<Value = GroupRingElement> {
    proptest::collection::vec((pair_tuple_strategy(), 0i64..=2), 0..=2).prop_map(|terms| {
        GroupRingElement::from_terms(
            GradingGroup::pair(),
            terms.into_iter().map(|(t, c)| (t, BigInt::from(c))),
        )
        .unwrap()
    })
}

/// A random one-plus series with effective coefficients, truncation 5.
fn effective_series_strategy() -> impl Strategy<Value = TruncatedSeries> {
    proptest::collection::vec(effective_strategy(), 5).prop_map(|tail| {
        let sig = GradingGroup::pair();
        let mut coeffs = vec![GroupRingElement::one(sig.clone())];
        coeffs.extend(tail);
        TruncatedSeries::from_coeffs(sig, coeffs).unwrap()
    })
}

/// A random one-plus series with arbitrary (virtual) coefficients.
fn series_strategy() -> impl Strategy<Value = TruncatedSeries> {
    proptest::collection::vec(element_strategy(), 5).prop_map(|tail| {
        let sig = GradingGroup::pair();
        let mut coeffs = vec![GroupRingElement::one(sig.clone())];
        coeffs.extend(tail);
        TruncatedSeries::from_coeffs(sig, coeffs).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(x in element_strategy(), y in element_strategy(), z in element_strategy()) {
        let one = GroupRingElement::one(GradingGroup::pair());
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &one, x.clone());
        prop_assert_eq!(&x - &x, GroupRingElement::zero(GradingGroup::pair()));
    }

    #[test]
    fn augmentation_and_project_are_homomorphisms(x in element_strategy(), y in element_strategy()) {
        prop_assert_eq!((&x * &y).augmentation(), x.augmentation() * y.augmentation());
        prop_assert_eq!((&x + &y).augmentation(), x.augmentation() + y.augmentation());
        let px = x.project(&[0]).unwrap();
        let py = y.project(&[0]).unwrap();
        prop_assert_eq!((&x * &y).project(&[0]).unwrap(), &px * &py);
        prop_assert_eq!((&x + &y).project(&[0]).unwrap(), &px + &py);
    }

    #[test]
    fn adams_twist_is_an_endomorphism(x in element_strategy(), y in element_strategy(), s in 1i64..=6, t in 1i64..=6) {
        prop_assert_eq!((&x * &y).adams_twist(s), &x.adams_twist(s) * &y.adams_twist(s));
        prop_assert_eq!((&x + &y).adams_twist(s), &x.adams_twist(s) + &y.adams_twist(s));
        prop_assert_eq!(x.adams_twist(s).adams_twist(t), x.adams_twist(s * t));
        prop_assert_eq!(x.adams_twist(1), x);
    }

    #[test]
    fn canonical_form_is_insertion_order_independent(
        terms in proptest::collection::vec((pair_tuple_strategy(), -4i64..=4), 0..=5)
    ) {
        let forward = GroupRingElement::from_terms(
            GradingGroup::pair(),
            terms.iter().map(|(t, c)| (t.clone(), BigInt::from(*c))),
        )
        .unwrap();
        let backward = GroupRingElement::from_terms(
            GradingGroup::pair(),
            terms.iter().rev().map(|(t, c)| (t.clone(), BigInt::from(*c))),
        )
        .unwrap();
        prop_assert_eq!(&forward, &backward);
        prop_assert_eq!(forward.to_string(), backward.to_string());
    }

    #[test]
    fn lambda_is_additive(a in element_strategy(), b in element_strategy()) {
        let sum = a.try_add(&b).unwrap();
        prop_assert_eq!(
            lambda_series(&sum, 5),
            &lambda_series(&a, 5) * &lambda_series(&b, 5)
        );
    }

    #[test]
    fn power_axioms_both_modes(
        a in effective_series_strategy(),
        b in effective_series_strategy(),
        m1 in effective_strategy(),
        m2 in effective_strategy(),
    ) {
        let sig = GradingGroup::pair();
        let one_elt = GroupRingElement::one(sig.clone());
        let one_series = TruncatedSeries::one(sig.clone(), 5);
        for mode in [Mode::Substitution, Mode::Geometric] {
            // A^{m+m'} = A^m · A^{m'}
            let sum = m1.try_add(&m2).unwrap();
            prop_assert_eq!(
                power_expand(&a, &sum, mode, 5),
                &power_expand(&a, &m1, mode, 5) * &power_expand(&a, &m2, mode, 5)
            );
            // (A·B)^m = A^m · B^m
            prop_assert_eq!(
                power_expand(&(&a * &b), &m1, mode, 5),
                &power_expand(&a, &m1, mode, 5) * &power_expand(&b, &m1, mode, 5)
            );
            // A^0 = 1, A^{unit} = A, 1^m = 1
            prop_assert!(power_expand(&a, &GroupRingElement::zero(sig.clone()), mode, 5).is_one());
            prop_assert_eq!(power_expand(&a, &one_elt, mode, 5), a.clone());
            prop_assert!(power_expand(&one_series, &m1, mode, 5).is_one());
            // A^m ≡ 1 + a₁·m·T mod T²
            let powered = power_expand(&a, &m1, mode, 5);
            prop_assert_eq!(powered.coeff(1), &a.coeff(1).try_mul(&m1).unwrap());
        }
    }

    #[test]
    fn factorize_recompose_round_trip(a in series_strategy()) {
        prop_assert_eq!(factorize(&a).recompose(), a);
    }

    #[test]
    fn direct_formula_matches_geometric_mode(
        coeffs in proptest::collection::vec(
            proptest::collection::vec((pair_tuple_strategy(), 1i64..=2), 0..=2),
            0..=3
        ),
        m_terms in proptest::collection::vec((pair_tuple_strategy(), 1i64..=1), 0..=3),
    ) {
        let sig = GradingGroup::pair();
        let to_effective = |terms: &[(GroupElementTuple, i64)]| {
            EffectiveMapClass::new(
                GroupRingElement::from_terms(
                    sig.clone(),
                    terms.iter().map(|(t, c)| (t.clone(), BigInt::from(*c))),
                )
                .unwrap(),
            )
            .unwrap()
        };
        let levels: Vec<EffectiveMapClass> = coeffs
            .iter()
            .map(|terms| to_effective(terms))
            .collect();
        let m = to_effective(&m_terms);
        prop_assume!(m.points().len() <= 3);
        prop_assume!(levels.iter().all(|l| l.points().len() <= 2));
        let mut series = TruncatedSeries::one(sig.clone(), 4);
        for (i, level) in levels.iter().enumerate() {
            series.set_coeff(i + 1, level.as_ring().clone());
        }
        prop_assert_eq!(
            power_direct_formula(&levels, &m, 4),
            power_expand(&series, m.as_ring(), Mode::Geometric, 4)
        );
    }

    #[test]
    fn modes_agree_with_only_level_one(a1 in element_strategy(), m in element_strategy()) {
        // a series 1 + a₁T (higher coefficients determined by level 1 alone)
        let series = lambda_series(&a1, 5);
        prop_assert_eq!(
            power_expand(&series, &m, Mode::Substitution, 5),
            power_expand(&series, &m, Mode::Geometric, 5)
        );
    }

    #[test]
    fn trivial_group_collapse_on_random_data(
        rows in proptest::collection::vec(
            (0u32..=3, 0u32..=3, 0u32..=3, rat_strategy(), 1u64..=3),
            1..=4
        )
    ) {
        let data: Vec<MixedHodgeEigenDatum> = rows
            .into_iter()
            .map(|(k, p, q, a, dim)| MixedHodgeEigenDatum::new(k, p, q, CyclicRational::new(a), dim))
            .collect();
        let e = EquivariantHd::from_data(&data);
        let node = TripleNode::new(
            Dimension::Mixed,
            FiniteGroup::trivial(),
            e.clone(),
            Default::default(),
            3,
        )
        .unwrap();
        for k in 0..=3 {
            prop_assert_eq!(node.e_k(k).unwrap(), e.clone());
            prop_assert_eq!(node.hsp_k(k).unwrap(), e.to_hsp());
        }
    }
}

/// Associativity of exponentiation on singleton effective classes in
/// geometric mode: `(A^m)^{m'} = A^{m·m'}`.
#[test]
fn exponent_associativity_singletons() {
    let sig = GradingGroup::pair();
    let tuple = |a: Rat, b: Rat| {
        GroupElementTuple::new(vec![
            orbispec_core::Coord::Cyclic(CyclicRational::new(a)),
            orbispec_core::Coord::Rational(b),
        ])
    };
    let half = GroupRingElement::single(sig.clone(), tuple(Rat::new(1, 2), Rat::new(0, 1))).unwrap();
    let third = GroupRingElement::single(sig.clone(), tuple(Rat::new(1, 3), Rat::new(1, 1))).unwrap();
    for a1 in [half.clone(), third.clone()] {
        let base = TruncatedSeries::binomial(
            sig.clone(),
            &a1.terms().next().unwrap().0.clone(),
            1,
            false,
            4,
        );
        for (m1, m2) in [(half.clone(), third.clone()), (third.clone(), half.clone())] {
            let step = power_expand(&base, &m1, Mode::Geometric, 4);
            let twice = power_expand(&step, &m2, Mode::Geometric, 4);
            let direct = power_expand(&base, &m1.try_mul(&m2).unwrap(), Mode::Geometric, 4);
            assert_eq!(twice, direct);
        }
    }
}

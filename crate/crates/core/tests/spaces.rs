mod common;

use common::{points_above, profile, profile_rank, successors_below_w4, Count};
use proptest::prelude::*;
use scattered::families::{corpus, raw_corpus};
use scattered::ordinal::cb_rank_of_ordinal;
use scattered::spacexpr::{
    derivative, derivative_iter, is_compact, normalize, ord_to_expr,
    parse_expr, point_count, rank, rank_by_derivative, Mult, PointCount, Ring, SpaceExpr,
};

fn mult() -> impl Strategy<Value = Mult> {
    prop_oneof![Just(Mult::ONE), Just(Mult::Finite(2)), Just(Mult::Finite(3)), Just(Mult::Omega)]
}

fn ring(inner: impl Strategy<Value = SpaceExpr> + Clone) -> impl Strategy<Value = Ring> {
    prop::collection::vec((inner, mult()), 1..3).prop_map(Ring::new)
}

/// Unnormalized expressions, including empty members and nested sums.
fn space() -> impl Strategy<Value = SpaceExpr> {
    let leaf = prop_oneof![Just(SpaceExpr::Point), Just(SpaceExpr::Point), Just(SpaceExpr::Empty)];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            prop::collection::vec((inner.clone(), mult()), 1..3).prop_map(SpaceExpr::Sum),
            (prop::collection::vec(ring(inner.clone()), 0..2), ring(inner.clone()))
                .prop_map(|(p, t)| SpaceExpr::lim(p, t)),
            inner.clone().prop_map(SpaceExpr::g),
            inner.prop_map(SpaceExpr::i),
        ]
    })
}

fn counts_agree(e: &SpaceExpr) -> Result<(), TestCaseError> {
    for k in 0..=rank(e) {
        let want = points_above(e, k);
        let got = point_count(&derivative_iter(e, k));
        prop_assert!(want.matches(got), "|{}^({})|: profile {:?}, library {}", e, k, want, got);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn normalize_is_idempotent(e in space()) {
        let n = normalize(&e);
        prop_assert_eq!(normalize(&n), n);
    }

    #[test]
    fn normalize_keeps_point_profile(e in space()) {
        prop_assert_eq!(profile(&normalize(&e)), trim(profile(&e)));
        prop_assert_eq!(is_compact(&normalize(&e)), is_compact(&e));
    }

    #[test]
    fn derivative_commutes_with_normalize(e in space()) {
        prop_assert_eq!(normalize(&derivative(&normalize(&e))), normalize(&derivative(&e)));
    }

    #[test]
    fn ranks_agree(e in space()) {
        let r = rank(&e);
        prop_assert_eq!(rank_by_derivative(&e), r);
        prop_assert_eq!(profile_rank(&e), r);
        prop_assert!(normalize(&derivative_iter(&e, r)).is_empty());
        if r > 0 {
            prop_assert!(!normalize(&derivative_iter(&e, r - 1)).is_empty());
        }
    }

    #[test]
    fn derivative_sizes_match_profile(e in space()) {
        counts_agree(&e)?;
    }

    #[test]
    fn printed_normal_forms_parse_back(e in space()) {
        let n = normalize(&e);
        prop_assert_eq!(parse_expr(&n.to_string()), Ok(n));
    }

    #[test]
    fn derivative_never_adds_points(e in space()) {
        let a = point_count(&e);
        let b = point_count(&derivative(&e));
        prop_assert!(b <= a);
        if let PointCount::Finite(n) = a {
            prop_assert!(n == 0 || b < a);
        }
    }
}

fn trim(mut p: Vec<Count>) -> Vec<Count> {
    while p.last() == Some(&Count::Fin(0)) {
        p.pop();
    }
    p
}

#[test]
fn corpus_wide_invariants() {
    for e in raw_corpus(6) {
        assert_eq!(normalize(&e), e, "corpus entries are normal forms");
        let r = rank(&e);
        assert_eq!(rank_by_derivative(&e), r, "{e}");
        assert!(derivative_iter(&e, r).is_empty(), "{e}");
        if r > 0 {
            assert!(!derivative_iter(&e, r - 1).is_empty(), "{e}");
        }
        for k in 0..=r {
            assert!(points_above(&e, k).matches(point_count(&derivative_iter(&e, k))), "{e} at {k}");
        }
        assert_eq!(parse_expr(&e.to_string()), Ok(e.clone()));
    }
}

#[test]
fn successor_ordinals_as_spaces() {
    for a in successors_below_w4() {
        let e = ord_to_expr(&a).unwrap();
        let r = cb_rank_of_ordinal(&a).unwrap();
        assert_eq!(r.as_nat(), Some(rank(&e) as u64), "{a}");
        assert!(is_compact(&e), "{a}");
        let lead = a.leading_coefficient().unwrap();
        assert!(points_above(&e, rank(&e) - 1).matches(PointCount::Finite(lead)), "{a}");
    }
}

#[test]
fn corpus_deduplicates_low_ranks() {
    let all = raw_corpus(6);
    let kept = corpus(6);
    assert!(kept.len() <= all.len());
    assert!(kept.iter().all(|e| all.contains(e)));
    assert!(all.iter().filter(|e| rank(e) > 2).all(|e| kept.contains(e)));
}

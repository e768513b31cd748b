mod common;

use std::sync::OnceLock;

use common::{leading, points_above, profile_rank, successor_embeds, Count};
use proptest::prelude::*;
use scattered::embed::{
    capacity, check_homeomorphism_obstruction, check_obstruction, check_schema, decide_embed,
    decide_homeomorphic, decide_same_type, ku_compactify, ms_canonical, Budget, Engine,
    ObstructionKind, Verdict,
};
use scattered::families::corpus;
use scattered::ordinal::parse_ordinal;
use scattered::spacexpr::{expr, is_compact, normalize, ord_to_expr, rank, Mult, Ring, SpaceExpr};

fn pool() -> &'static [SpaceExpr] {
    static POOL: OnceLock<Vec<SpaceExpr>> = OnceLock::new();
    POOL.get_or_init(|| corpus(5).into_iter().filter(|e| !e.is_empty()).collect())
}

fn member() -> impl Strategy<Value = SpaceExpr> {
    (0..pool().len()).prop_map(|i| pool()[i].clone())
}

fn certified(x: &SpaceExpr, y: &SpaceExpr, v: &Verdict) -> bool {
    match (v.schema(), &v.obstruction) {
        (Some(s), None) => v.is_yes() && check_schema(x, y, s),
        (None, Some(ob)) => v.is_no() && check_obstruction(x, y, ob),
        (None, None) => v.is_unknown(),
        _ => false,
    }
}

/// Subspaces obtained by dropping one entry or lowering one multiplicity.
fn thinnings(e: &SpaceExpr) -> Vec<SpaceExpr> {
    fn entries(v: &[(SpaceExpr, Mult)]) -> Vec<Vec<(SpaceExpr, Mult)>> {
        let mut out = Vec::new();
        for i in 0..v.len() {
            let mut w = v.to_vec();
            w.remove(i);
            out.push(w);
            if v[i].1 != Mult::ONE {
                let mut w = v.to_vec();
                w[i].1 = Mult::ONE;
                out.push(w);
            }
            for t in thinnings(&v[i].0) {
                let mut w = v.to_vec();
                w[i].0 = t;
                out.push(w);
            }
        }
        out
    }
    match e {
        SpaceExpr::Empty | SpaceExpr::Point => vec![SpaceExpr::Empty],
        SpaceExpr::Sum(v) => entries(v).into_iter().map(SpaceExpr::Sum).collect(),
        SpaceExpr::Lim { prefix, tail } => {
            let mut out = Vec::new();
            for (i, r) in prefix.iter().enumerate() {
                for w in entries(&r.entries) {
                    let mut p = prefix.clone();
                    p[i] = Ring::new(w);
                    out.push(SpaceExpr::lim(p, tail.clone()));
                }
            }
            for w in entries(&tail.entries) {
                if !w.is_empty() {
                    out.push(SpaceExpr::lim(prefix.clone(), Ring::new(w)));
                }
            }
            out
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn verdicts_carry_checkable_certificates(x in member(), y in member()) {
        let v = decide_embed(&x, &y, None);
        prop_assert!(certified(&x, &y, &v), "{} into {}: {:?}", x, y, v.answer);
        if v.is_yes() {
            prop_assert!(rank(&x) <= rank(&y));
            for k in 0..rank(&x) {
                prop_assert!(points_above(&x, k) <= points_above(&y, k));
            }
        }
    }

    #[test]
    fn preorder(x in member(), y in member(), z in member()) {
        let mut e = Engine::default();
        prop_assert!(e.embeds(&x, &x));
        if e.embeds(&x, &y) && e.embeds(&y, &z) {
            prop_assert!(e.embeds(&x, &z), "{} <= {} <= {}", x, y, z);
        }
    }

    #[test]
    fn constructors_are_monotone(x in member(), y in member(), z in member()) {
        let mut e = Engine::default();
        prop_assert!(e.embeds(&x, &SpaceExpr::g(x.clone())));
        prop_assert!(e.embeds(&SpaceExpr::g(x.clone()), &SpaceExpr::i(x.clone())));
        if e.embeds(&x, &y) {
            let sum = |a: &SpaceExpr| normalize(&SpaceExpr::sum(vec![(a.clone(), Mult::ONE), (z.clone(), Mult::ONE)]));
            prop_assert!(e.embeds(&sum(&x), &sum(&y)));
            prop_assert!(e.embeds(&SpaceExpr::g(x.clone()), &SpaceExpr::g(y.clone())));
            prop_assert!(e.embeds(&SpaceExpr::i(x.clone()), &SpaceExpr::i(y.clone())));
        }
    }

    #[test]
    fn subspaces_embed(x in member()) {
        let mut e = Engine::default();
        for t in thinnings(&x) {
            let t = normalize(&t);
            let v = e.decide_embed(&t, &x);
            prop_assert!(v.is_yes() && check_schema(&t, &x, v.schema().unwrap()), "{} in {}", t, x);
        }
    }

    #[test]
    fn homeomorphic_implies_same_type(x in member(), y in member()) {
        let h = decide_homeomorphic(&x, &y);
        if let Some(ob) = &h.obstruction {
            prop_assert!(check_homeomorphism_obstruction(&x, &y, ob));
        }
        if h.is_yes() {
            prop_assert!(decide_same_type(&x, &y, None).is_yes());
        }
    }

    #[test]
    fn compactification_contains_the_space(x in member()) {
        let k = ku_compactify(&x);
        prop_assert!(is_compact(&k));
        prop_assert!(rank(&x) <= rank(&k));
        if is_compact(&x) {
            prop_assert_eq!(&k, &x);
        }
        let v = decide_embed(&x, &k, None);
        prop_assert!(v.is_yes() && check_schema(&x, &k, v.schema().unwrap()));
    }
}

#[test]
fn canonical_form_matches_point_profile() {
    for e in corpus(6) {
        if e.is_empty() || !is_compact(&e) {
            continue;
        }
        let c = ms_canonical(&e).unwrap();
        let top = profile_rank(&e) - 1;
        assert_eq!(c.alpha, top, "{e}");
        assert_eq!(Count::Fin(c.n), points_above(&e, top), "{e}");
    }
}

#[test]
fn successor_ordinals_embed_by_leading_term() {
    let ords: Vec<_> = ["1", "3", "w+1", "w*2+1", "w*3+2", "w^2+1", "w^2+w*3+1", "w^2*2+1", "w^3+1", "w^3*2+w^2+1"]
        .iter()
        .map(|s| parse_ordinal(s).unwrap())
        .collect();
    let mut e = Engine::default();
    for a in &ords {
        for b in &ords {
            let (x, y) = (ord_to_expr(a).unwrap(), ord_to_expr(b).unwrap());
            let v = e.decide_embed(&x, &y);
            assert_eq!(v.is_yes(), successor_embeds(leading(a), leading(b)), "{a} into {b}");
            assert!(!v.is_unknown());
        }
    }
}

#[test]
fn capacities() {
    assert_eq!(capacity(&expr("G(1)"), &expr("I(1)")), Mult::ONE);
    assert_eq!(capacity(&expr("G(1)"), &expr("G(G(1))")), Mult::Omega);
    assert_eq!(capacity(&expr("G(1)"), &expr("sum{3*G(1)}")), Mult::Finite(3));
    assert_eq!(capacity(&expr("I(1)"), &expr("G(1)")), Mult::Finite(0));
}

#[test]
fn obstruction_kinds() {
    let v = decide_embed(&expr("I(1)"), &expr("G(1)"), None);
    assert_eq!(v.obstruction.unwrap().kind, ObstructionKind::CompactLocal);
    let v = decide_embed(&expr("lim(;{w*G(1),1*I(1)})"), &expr("G(I(1))"), None);
    assert_eq!(v.obstruction.unwrap().kind, ObstructionKind::RingSpill);
    let v = decide_embed(&expr("G(G(1))"), &expr("I(1)"), None);
    assert_eq!(v.obstruction.unwrap().kind, ObstructionKind::Rank);
}

#[test]
fn larger_budgets_only_add_answers() {
    let wide = Budget { slope: 8, width: 8, depth: None };
    for x in pool().iter().take(40) {
        for y in pool().iter().take(40) {
            let a = decide_embed(x, y, None);
            let b = decide_embed(x, y, Some(&wide));
            if !a.is_unknown() {
                assert_eq!(a.answer, b.answer, "{x} into {y}");
            }
        }
    }
}

//! Normalization by a fixed set of homeomorphism-preserving rewrites.
//!
//! * nested sums flatten, multiplying multiplicities (`n·ω = ω·ω = ω`);
//! * identical members of a sum or ring merge, adding multiplicities;
//! * a sum of a single copy collapses to its member, an empty sum to `0`;
//! * finitely many isolated points next to an infinite sibling vanish: an
//!   infinite scattered space `X` has an infinite sequence of isolated points
//!   and shifting along it gives `X ⊕ 1 ≅ X`;
//! * the same holds for isolated points in prefix rings of a `Lim`, which is
//!   always infinite;
//! * finite tail multiplicities become 1: regrouping the neighborhood base
//!   so that each ring holds one copy does not change the space;
//! * a trailing prefix ring whose members already occur in the tail (with `ω`
//!   only where the tail has `ω`) merges into the first tail ring;
//! * a `Lim` whose tail vanishes has an isolated glue point and becomes a sum.

use super::{Mult, Ring, SpaceExpr};

pub fn normalize(e: &SpaceExpr) -> SpaceExpr {
    match e {
        SpaceExpr::Empty | SpaceExpr::Point => e.clone(),
        SpaceExpr::Sum(entries) => build_sum(normalize_items(entries)),
        SpaceExpr::Lim { prefix, tail } => {
            let tail: Vec<(SpaceExpr, Mult)> = normalize_items(&tail.entries)
                .into_iter()
                .map(|(x, m)| (x, if m.is_omega() { Mult::Omega } else { Mult::ONE }))
                .collect();
            let rings = prefix.iter().map(|r| normalize_items(&r.entries));
            if tail.is_empty() {
                let mut all: Vec<(SpaceExpr, Mult)> = rings.flatten().collect();
                all.push((SpaceExpr::Point, Mult::ONE));
                return build_sum(merge(all));
            }
            let mut rings: Vec<Vec<(SpaceExpr, Mult)>> = rings
                .map(drop_finite_points)
                .filter(|r| !r.is_empty())
                .collect();
            while rings.last().is_some_and(|r| absorbed_by_tail(r, &tail)) {
                rings.pop();
            }
            SpaceExpr::Lim {
                prefix: rings.into_iter().map(Ring::new).collect(),
                tail: Ring::new(tail),
            }
        }
    }
}

/// Normalizes members, flattens nested sums, drops empties and merges.
fn normalize_items(entries: &[(SpaceExpr, Mult)]) -> Vec<(SpaceExpr, Mult)> {
    let mut out = Vec::with_capacity(entries.len());
    for (x, m) in entries {
        match normalize(x) {
            SpaceExpr::Empty => {}
            SpaceExpr::Sum(inner) => {
                out.extend(inner.into_iter().map(|(y, k)| (y, k.mul(*m))));
            }
            nx => out.push((nx, *m)),
        }
    }
    merge(out)
}

fn is_infinite(x: &SpaceExpr, m: Mult) -> bool {
    m.is_omega() || matches!(x, SpaceExpr::Lim { .. })
}

/// Sorts, merges equal members and absorbs finitely many isolated points into
/// an infinite sibling.
fn merge(mut items: Vec<(SpaceExpr, Mult)>) -> Vec<(SpaceExpr, Mult)> {
    items.sort();
    let mut out: Vec<(SpaceExpr, Mult)> = Vec::with_capacity(items.len());
    for (x, m) in items {
        match out.last_mut() {
            Some((y, k)) if *y == x => *k = k.add(m),
            _ => out.push((x, m)),
        }
    }
    let infinite_sibling = out
        .iter()
        .any(|(x, m)| *x != SpaceExpr::Point && is_infinite(x, *m));
    if infinite_sibling {
        out.retain(|(x, m)| !(*x == SpaceExpr::Point && m.is_finite()));
    }
    out
}

fn drop_finite_points(mut ring: Vec<(SpaceExpr, Mult)>) -> Vec<(SpaceExpr, Mult)> {
    ring.retain(|(x, m)| !(*x == SpaceExpr::Point && m.is_finite()));
    ring
}

fn build_sum(mut items: Vec<(SpaceExpr, Mult)>) -> SpaceExpr {
    match items.len() {
        0 => SpaceExpr::Empty,
        1 if items[0].1 == Mult::ONE => items.pop().expect("one item").0,
        _ => SpaceExpr::Sum(items),
    }
}

fn absorbed_by_tail(ring: &[(SpaceExpr, Mult)], tail: &[(SpaceExpr, Mult)]) -> bool {
    ring.iter().all(|(x, m)| {
        tail.iter()
            .any(|(y, tm)| y == x && (m.is_finite() || tm.is_omega()))
    })
}

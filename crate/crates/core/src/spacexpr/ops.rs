//! Structural Cantor–Bendixson operations on expressions.

use serde::{Deserialize, Serialize};

use super::{normalize, Mult, Ring, SpaceExpr};
use crate::error::ScatteredError;
use crate::ordinal::Ordinal;

/// Cardinality of a countable space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PointCount {
    Finite(u64),
    Infinite,
}

impl PointCount {
    fn add(self, other: PointCount) -> PointCount {
        match (self, other) {
            (PointCount::Finite(a), PointCount::Finite(b)) => {
                a.checked_add(b).map_or(PointCount::Infinite, PointCount::Finite)
            }
            _ => PointCount::Infinite,
        }
    }

    fn times(self, m: Mult) -> PointCount {
        match (self, m) {
            (PointCount::Finite(0), _) => PointCount::Finite(0),
            (PointCount::Finite(a), Mult::Finite(k)) => {
                a.checked_mul(k).map_or(PointCount::Infinite, PointCount::Finite)
            }
            _ => PointCount::Infinite,
        }
    }
}

impl std::fmt::Display for PointCount {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PointCount::Finite(n) => write!(f, "{n}"),
            PointCount::Infinite => f.write_str("w"),
        }
    }
}

fn map_items(entries: &[(SpaceExpr, Mult)], f: impl Fn(&SpaceExpr) -> SpaceExpr) -> Vec<(SpaceExpr, Mult)> {
    entries
        .iter()
        .map(|(x, m)| (f(x), *m))
        .filter(|(x, _)| !x.is_empty())
        .collect()
}

fn sum_or_empty(items: Vec<(SpaceExpr, Mult)>) -> SpaceExpr {
    if items.is_empty() {
        SpaceExpr::Empty
    } else {
        SpaceExpr::Sum(items)
    }
}

/// The subspace of non-isolated points.
///
/// A `Lim` whose derived tail is empty keeps its glue point, now isolated,
/// as a `Point` summand next to the derived prefix rings.
pub fn derivative(e: &SpaceExpr) -> SpaceExpr {
    match e {
        SpaceExpr::Empty | SpaceExpr::Point => SpaceExpr::Empty,
        SpaceExpr::Sum(entries) => sum_or_empty(map_items(entries, derivative)),
        SpaceExpr::Lim { prefix, tail } => {
            let dprefix: Vec<Ring> = prefix
                .iter()
                .map(|r| Ring::new(map_items(&r.entries, derivative)))
                .filter(|r| !r.is_empty())
                .collect();
            let dtail = map_items(&tail.entries, derivative);
            if tail.entries.iter().all(|(x, _)| rank(x) == 0) {
                return sum_or_empty(dprefix.into_iter().flat_map(|r| r.entries).collect());
            }
            if dtail.is_empty() {
                let mut items: Vec<(SpaceExpr, Mult)> =
                    dprefix.into_iter().flat_map(|r| r.entries).collect();
                items.push((SpaceExpr::Point, Mult::ONE));
                SpaceExpr::Sum(items)
            } else {
                SpaceExpr::Lim {
                    prefix: dprefix,
                    tail: Ring::new(dtail),
                }
            }
        }
    }
}

/// `k`-fold derivative.
pub fn derivative_iter(e: &SpaceExpr, k: usize) -> SpaceExpr {
    (0..k).fold(e.clone(), |acc, _| derivative(&acc))
}

/// Cantor–Bendixson rank by direct recursion.
pub fn rank(e: &SpaceExpr) -> usize {
    match e {
        SpaceExpr::Empty => 0,
        SpaceExpr::Point => 1,
        SpaceExpr::Sum(entries) => entries.iter().map(|(x, _)| rank(x)).max().unwrap_or(0),
        SpaceExpr::Lim { prefix, tail } => {
            let p = prefix
                .iter()
                .flat_map(|r| r.entries.iter())
                .map(|(x, _)| rank(x))
                .max()
                .unwrap_or(0);
            let t = tail.entries.iter().map(|(x, _)| rank(x)).max().unwrap_or(0);
            p.max(1 + t)
        }
    }
}

/// Least `k` with an empty `k`-th derivative, by iterating [`derivative`].
pub fn rank_by_derivative(e: &SpaceExpr) -> usize {
    let mut cur = normalize(e);
    let mut k = 0;
    while !cur.is_empty() {
        cur = normalize(&derivative(&cur));
        k += 1;
    }
    k
}

pub fn is_compact(e: &SpaceExpr) -> bool {
    let entries_ok = |entries: &[(SpaceExpr, Mult)]| {
        entries
            .iter()
            .all(|(x, m)| rank(x) == 0 || (m.is_finite() && is_compact(x)))
    };
    match e {
        SpaceExpr::Empty | SpaceExpr::Point => true,
        SpaceExpr::Sum(entries) => entries_ok(entries),
        SpaceExpr::Lim { prefix, tail } => {
            prefix.iter().all(|r| entries_ok(&r.entries)) && entries_ok(&tail.entries)
        }
    }
}

pub fn point_count(e: &SpaceExpr) -> PointCount {
    match e {
        SpaceExpr::Empty => PointCount::Finite(0),
        SpaceExpr::Point => PointCount::Finite(1),
        SpaceExpr::Sum(entries) => entries
            .iter()
            .fold(PointCount::Finite(0), |acc, (x, m)| acc.add(point_count(x).times(*m))),
        SpaceExpr::Lim { tail, .. } => {
            if tail.entries.iter().all(|(x, _)| point_count(x) == PointCount::Finite(0)) {
                // degenerate tail: only the glue point and the prefix survive
                let SpaceExpr::Lim { prefix, .. } = e else { unreachable!() };
                prefix
                    .iter()
                    .flat_map(|r| r.entries.iter())
                    .fold(PointCount::Finite(1), |acc, (x, m)| acc.add(point_count(x).times(*m)))
            } else {
                PointCount::Infinite
            }
        }
    }
}

/// The space `[0, a)` for `0 < a < ω^ω`, as a normalized expression.
///
/// Each CNF term `ω^k·n` contributes `n` blocks `G^k(1) ≅ ω^k + 1`; for a
/// limit ordinal the final block is opened up into `ω` copies of the block
/// one level down.
pub fn ord_to_expr(a: &Ordinal) -> Result<SpaceExpr, ScatteredError> {
    if a.is_zero() {
        return Err(ScatteredError::ZeroOrdinal);
    }
    let mut items: Vec<(SpaceExpr, Mult)> = Vec::new();
    let terms = a.terms();
    for (i, t) in terms.iter().enumerate() {
        let k = t
            .exp
            .as_nat()
            .ok_or_else(|| ScatteredError::ExponentTooLarge(a.to_string()))? as usize;
        let last = i + 1 == terms.len();
        if last && k > 0 {
            if t.coeff > 1 {
                items.push((SpaceExpr::g_tower(k), Mult::Finite(t.coeff - 1)));
            }
            items.push((SpaceExpr::g_tower(k - 1), Mult::Omega));
        } else {
            items.push((SpaceExpr::g_tower(k), Mult::Finite(t.coeff)));
        }
    }
    Ok(normalize(&SpaceExpr::Sum(items)))
}

/// Local Cantor–Bendixson rank of the glue point of a `Lim`.
fn glue_rank(tail: &Ring) -> usize {
    1 + tail.entries.iter().map(|(x, _)| rank(x)).max().unwrap_or(0)
}

/// The subspace of points whose local rank lies in `lo..=hi`, normalized.
///
/// Members of rings are clopen, so the restriction is computed member by
/// member with the same bounds.
pub fn restrict_local_rank(e: &SpaceExpr, lo: usize, hi: usize) -> SpaceExpr {
    normalize(&restrict(e, lo, hi))
}

fn restrict(e: &SpaceExpr, lo: usize, hi: usize) -> SpaceExpr {
    let keep = |r: usize| lo <= r && r <= hi;
    match e {
        SpaceExpr::Empty => SpaceExpr::Empty,
        SpaceExpr::Point => {
            if keep(1) {
                SpaceExpr::Point
            } else {
                SpaceExpr::Empty
            }
        }
        SpaceExpr::Sum(entries) => sum_or_empty(map_items(entries, |x| restrict(x, lo, hi))),
        SpaceExpr::Lim { prefix, tail } => {
            let rprefix: Vec<Ring> = prefix
                .iter()
                .map(|r| Ring::new(map_items(&r.entries, |x| restrict(x, lo, hi))))
                .filter(|r| !r.is_empty())
                .collect();
            let rtail = map_items(&tail.entries, |x| restrict(x, lo, hi));
            if keep(glue_rank(tail)) && !rtail.is_empty() {
                return SpaceExpr::Lim {
                    prefix: rprefix,
                    tail: Ring::new(rtail),
                };
            }
            let mut items: Vec<(SpaceExpr, Mult)> =
                rprefix.into_iter().flat_map(|r| r.entries).collect();
            // the tail ring repeats forever
            items.extend(rtail.into_iter().map(|(x, _)| (x, Mult::Omega)));
            if keep(glue_rank(tail)) {
                items.push((SpaceExpr::Point, Mult::ONE));
            }
            sum_or_empty(items)
        }
    }
}

/// `X^(k-1) ∖ X^(k+1)`: the points of local rank `k` or `k + 1`.
pub fn layer(e: &SpaceExpr, k: usize) -> Result<SpaceExpr, ScatteredError> {
    let r = rank(e);
    if k == 0 || k > r {
        return Err(ScatteredError::LayerOutOfRange { k, rank: r });
    }
    Ok(restrict_local_rank(e, k, k + 1))
}

/// Whether a space of rank at most 2 has a nonempty clopen subset
/// homeomorphic to a convergent sequence.
///
/// A clopen set around a glue point contains a whole neighborhood `U_n`, so
/// it is a convergent sequence exactly when the rings are finite; clopen sets
/// missing every glue point are discrete.
pub fn has_clopen_convergent(e: &SpaceExpr) -> Result<bool, ScatteredError> {
    let e = normalize(e);
    let r = rank(&e);
    if r > 2 {
        return Err(ScatteredError::RankTooLarge(r));
    }
    fn walk(e: &SpaceExpr) -> bool {
        match e {
            SpaceExpr::Empty | SpaceExpr::Point => false,
            SpaceExpr::Sum(entries) => entries.iter().any(|(x, _)| walk(x)),
            SpaceExpr::Lim { prefix, tail } => {
                tail.entries.iter().all(|(_, m)| m.is_finite())
                    || prefix.iter().flat_map(|r| r.entries.iter()).any(|(x, _)| walk(x))
            }
        }
    }
    Ok(walk(&e))
}

/// Entry `k - 1` answers [`has_clopen_convergent`] for `layer(e, k)`,
/// `1 ≤ k < rank(e)`.
pub fn layer_signature(e: &SpaceExpr) -> Vec<bool> {
    let r = rank(e);
    (1..r)
        .map(|k| {
            let l = layer(e, k).expect("k within rank");
            has_clopen_convergent(&l).expect("layers have rank at most 2")
        })
        .collect()
}

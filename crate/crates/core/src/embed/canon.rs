use crate::error::ScatteredError;
use crate::spacexpr::{
    derivative_iter, is_compact, normalize, point_count, rank, CanonicalCompact, Mult, PointCount,
    Ring, SpaceExpr,
};

/// The pair `(alpha, n)` with `e ≅ ω^alpha·n + 1`.
pub fn ms_canonical(e: &SpaceExpr) -> Result<CanonicalCompact, ScatteredError> {
    let e = normalize(e);
    if e.is_empty() {
        return Err(ScatteredError::EmptySpace);
    }
    if !is_compact(&e) {
        return Err(ScatteredError::NotCompact(non_compact_part(&e).unwrap_or_else(|| e.to_string())));
    }
    let alpha = rank(&e) - 1;
    match point_count(&derivative_iter(&e, alpha)) {
        PointCount::Finite(n) => Ok(CanonicalCompact { alpha, n }),
        PointCount::Infinite => unreachable!("compact spaces have finite top derivatives"),
    }
}

/// The first entry repeated infinitely often, printed with its context.
fn non_compact_part(e: &SpaceExpr) -> Option<String> {
    let scan = |entries: &[(SpaceExpr, Mult)], ring: bool| -> Option<String> {
        for (x, m) in entries {
            if m.is_omega() {
                return Some(if ring {
                    format!("ring entry w*{x}")
                } else {
                    format!("sum entry w*{x}")
                });
            }
            if let Some(s) = non_compact_part(x) {
                return Some(s);
            }
        }
        None
    };
    match e {
        SpaceExpr::Empty | SpaceExpr::Point => None,
        SpaceExpr::Sum(entries) => scan(entries, false),
        SpaceExpr::Lim { prefix, tail } => prefix
            .iter()
            .chain(std::iter::once(tail))
            .find_map(|r| scan(&r.entries, true)),
    }
}

/// A compact space containing `e`: every `ω`-fold entry `X` becomes one
/// convergent block `G(X)`.
pub fn ku_compactify(e: &SpaceExpr) -> SpaceExpr {
    normalize(&close(&normalize(e)))
}

fn close_entries(entries: &[(SpaceExpr, Mult)]) -> Vec<(SpaceExpr, Mult)> {
    entries
        .iter()
        .map(|(x, m)| {
            let cx = close(x);
            if m.is_omega() {
                (SpaceExpr::g(cx), Mult::ONE)
            } else {
                (cx, *m)
            }
        })
        .collect()
}

fn close(e: &SpaceExpr) -> SpaceExpr {
    match e {
        SpaceExpr::Empty | SpaceExpr::Point => e.clone(),
        SpaceExpr::Sum(entries) => SpaceExpr::Sum(close_entries(entries)),
        SpaceExpr::Lim { prefix, tail } => SpaceExpr::Lim {
            prefix: prefix.iter().map(|r| Ring::new(close_entries(&r.entries))).collect(),
            tail: Ring::new(close_entries(&tail.entries)),
        },
    }
}

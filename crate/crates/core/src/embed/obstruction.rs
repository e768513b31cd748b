//! Certificates of non-embeddability.

use serde::{Deserialize, Serialize};

use super::germ::{flatten, Germ, Mode, Pieces};
use super::oracle::{Id, Oracle};
use crate::spacexpr::{
    derivative_iter, has_clopen_convergent, is_compact, layer, normalize, parse_expr, point_count,
    rank, Mult, PointCount, SpaceExpr,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObstructionKind {
    /// `rank(x) > rank(y)`.
    Rank,
    /// `|x^(k)| > |y^(k)|` at some level `k`.
    TopPointCount,
    /// A piece needs infinitely many copies inside finitely many rings, and
    /// every point of sufficient rank has compact neighborhoods.
    CompactLocal,
    /// Pieces fit one at a time but not all together, or not as often as
    /// required.
    Capacity,
    /// A piece needs infinitely many copies inside finitely many rings, and
    /// no candidate host provides them.
    RingSpill,
    /// Layers differ in carrying a clopen convergent sequence.
    LayerSignature,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub claim: String,
    pub lhs: String,
    pub rhs: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obstruction {
    pub kind: ObstructionKind,
    pub evidence: Evidence,
    /// Derivative or layer index the evidence refers to.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
    /// The source piece that does not fit, with the number of copies needed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub piece: Option<(String, Mult)>,
    /// Refutes `y ≤ x` instead of `x ≤ y`.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub swapped: bool,
}

impl Obstruction {
    fn new(kind: ObstructionKind, claim: impl Into<String>, lhs: impl Into<String>, rhs: impl Into<String>, detail: impl Into<String>) -> Self {
        Obstruction {
            kind,
            evidence: Evidence {
                claim: claim.into(),
                lhs: lhs.into(),
                rhs: rhs.into(),
                detail: detail.into(),
            },
            level: None,
            piece: None,
            swapped: false,
        }
    }
}

/// First level where `x` has more points than `y`.
fn count_gap(x: &SpaceExpr, y: &SpaceExpr) -> Option<(usize, PointCount, PointCount)> {
    (0..rank(x)).find_map(|k| {
        let a = point_count(&derivative_iter(x, k));
        let b = point_count(&derivative_iter(y, k));
        (a > b).then_some((k, a, b))
    })
}

/// Every glue germ occurring anywhere in `p`.
fn all_germs(p: &Pieces) -> Vec<Germ> {
    fn walk(g: &Germ, out: &mut Vec<Germ>) {
        if let Germ::Glue(s) = g {
            if !out.contains(g) {
                out.push(g.clone());
            }
            for (c, _) in s {
                walk(c, out);
            }
        }
    }
    let mut out = Vec::new();
    for (g, _) in p {
        walk(g, &mut out);
    }
    out
}

/// How the glue of `a` fails at each candidate host point of `y`:
/// `Some(compact)` if every candidate fails on an `ω` entry, with whether
/// all candidates have compact germs.
fn omega_failure(o: &mut Oracle, a: &Germ, y: &Pieces) -> Option<bool> {
    let ia = o.intern(a);
    let t = o.entries(ia);
    let candidates: Vec<Germ> = all_germs(y).into_iter().filter(|b| b.rank() >= a.rank()).collect();
    if candidates.is_empty() {
        return None;
    }
    let mut all_compact = true;
    for b in &candidates {
        let ib = o.intern(b);
        let s = o.entries(ib);
        let omega_fails = t
            .iter()
            .any(|&(c, m)| m == Mode::Omega && !o.ring_hosts(&s, c, m));
        if !omega_fails {
            return None;
        }
        all_compact &= b.is_compact();
    }
    Some(all_compact)
}

fn fits(o: &mut Oracle, y: &Pieces, r: &[(Germ, Mult)]) -> bool {
    let iy = o.intern_pieces(y);
    let ir: Vec<(Id, Mult)> = r.iter().map(|(g, m)| (o.intern(g), *m)).collect();
    o.sat_space(&iy, &ir)
}

/// A sound reason why `x` does not embed in `y`, if there is one.
pub fn refute(o: &mut Oracle, x: &SpaceExpr, y: &SpaceExpr) -> Option<Obstruction> {
    let (rx, ry) = (rank(x), rank(y));
    if rx > ry {
        return Some(Obstruction::new(
            ObstructionKind::Rank,
            "rank(x) <= rank(y)",
            format!("rank(x) = {rx}"),
            format!("rank(y) = {ry}"),
            "subspaces have no larger Cantor-Bendixson rank",
        ));
    }
    if let Some((k, a, b)) = count_gap(x, y) {
        let mut ob = Obstruction::new(
            ObstructionKind::TopPointCount,
            format!("|x^({k})| <= |y^({k})|"),
            format!("|x^({k})| = {a}"),
            format!("|y^({k})| = {b}"),
            "derivatives of a subspace lie in the derivatives of the space",
        );
        ob.level = Some(k);
        return Some(ob);
    }
    let px = flatten(x);
    let py = flatten(y);
    if fits(o, &py, &px) {
        return None;
    }
    for (a, m) in &px {
        if fits(o, &py, &[(a.clone(), *m)]) {
            continue;
        }
        let once = fits(o, &py, &[(a.clone(), Mult::ONE)]);
        let text = a.to_expr().to_string();
        let mut ob = match (once, omega_failure(o, a, &py)) {
            (false, Some(true)) => Obstruction::new(
                ObstructionKind::CompactLocal,
                format!("{text} embeds in y"),
                format!("{text} needs infinitely many copies of a piece in one ring"),
                "every candidate host point has compact neighborhoods".to_string(),
                "inside compact neighborhoods a ring must spread over infinitely many rings",
            ),
            (false, Some(false)) => Obstruction::new(
                ObstructionKind::RingSpill,
                format!("{text} embeds in y"),
                format!("{text} needs infinitely many copies of a piece in one ring"),
                "no candidate host has finitely many rings holding them".to_string(),
                "a ring missing the glue point lies in finitely many target rings",
            ),
            _ => Obstruction::new(
                ObstructionKind::Capacity,
                format!("{m} copies of {text} embed in y"),
                format!("needed: {m}"),
                if once { "available: finitely many".to_string() } else { "available: 0".to_string() },
                "disjoint copies need distinct host points of sufficient rank",
            ),
        };
        ob.piece = Some((text, if once { *m } else { Mult::ONE }));
        return Some(ob);
    }
    Some(Obstruction::new(
        ObstructionKind::Capacity,
        "all pieces of x embed disjointly in y",
        format!("x = {x}"),
        format!("y = {y}"),
        "each piece fits alone but the pieces do not fit together",
    ))
}

fn piece_germ(text: &str) -> Option<Germ> {
    match flatten(&parse_expr(text).ok()?).as_slice() {
        [(g, m)] if *m == Mult::ONE => Some(g.clone()),
        _ => None,
    }
}

/// Re-derives an obstruction against `x ≤ y` (or `y ≤ x` when swapped).
pub fn check_obstruction(x: &SpaceExpr, y: &SpaceExpr, ob: &Obstruction) -> bool {
    let (x, y) = (normalize(x), normalize(y));
    let (x, y) = if ob.swapped { (y, x) } else { (x, y) };
    let mut o = Oracle::new();
    let px = flatten(&x);
    let py = flatten(&y);
    match ob.kind {
        ObstructionKind::Rank => rank(&x) > rank(&y),
        ObstructionKind::TopPointCount => ob.level.is_some_and(|k| {
            point_count(&derivative_iter(&x, k)) > point_count(&derivative_iter(&y, k))
        }),
        ObstructionKind::CompactLocal | ObstructionKind::RingSpill => {
            let Some((text, _)) = &ob.piece else { return false };
            let Some(a) = piece_germ(text) else { return false };
            let want = ob.kind == ObstructionKind::CompactLocal;
            px.iter().any(|(g, _)| *g == a)
                && !fits(&mut o, &py, &[(a.clone(), Mult::ONE)])
                && omega_failure(&mut o, &a, &py) == Some(want)
        }
        ObstructionKind::Capacity => match &ob.piece {
            Some((text, m)) => {
                let Some(a) = piece_germ(text) else { return false };
                px.iter().any(|(g, n)| *g == a && n >= m) && !fits(&mut o, &py, &[(a, *m)])
            }
            None => !fits(&mut o, &py, &px),
        },
        ObstructionKind::LayerSignature => false,
    }
}

/// Invariants that separate homeomorphism types without an embedding
/// question: rank, compactness, derivative sizes, layer signatures.
pub fn homeomorphism_invariant_gap(x: &SpaceExpr, y: &SpaceExpr) -> Option<Obstruction> {
    let (rx, ry) = (rank(x), rank(y));
    if rx != ry {
        return Some(Obstruction::new(
            ObstructionKind::Rank,
            "rank(x) = rank(y)",
            format!("rank(x) = {rx}"),
            format!("rank(y) = {ry}"),
            "rank is a topological invariant",
        ));
    }
    let (cx, cy) = (is_compact(x), is_compact(y));
    if cx != cy {
        return Some(Obstruction::new(
            ObstructionKind::CompactLocal,
            "compact(x) = compact(y)",
            format!("compact(x) = {cx}"),
            format!("compact(y) = {cy}"),
            "compactness is a topological invariant",
        ));
    }
    for k in 0..rx {
        let a = point_count(&derivative_iter(x, k));
        let b = point_count(&derivative_iter(y, k));
        if a != b {
            let mut ob = Obstruction::new(
                ObstructionKind::TopPointCount,
                format!("|x^({k})| = |y^({k})|"),
                format!("|x^({k})| = {a}"),
                format!("|y^({k})| = {b}"),
                "homeomorphisms preserve every derivative",
            );
            ob.level = Some(k);
            return Some(ob);
        }
    }
    for k in 1..rx {
        let a = signature_bit(x, k);
        let b = signature_bit(y, k);
        if a != b {
            let mut ob = Obstruction::new(
                ObstructionKind::LayerSignature,
                format!("layer {k} of x and y agree on clopen convergent sequences"),
                format!("x: {a}"),
                format!("y: {b}"),
                "layers are defined from derivatives and so are preserved",
            );
            ob.level = Some(k);
            return Some(ob);
        }
    }
    None
}

fn signature_bit(e: &SpaceExpr, k: usize) -> bool {
    let l = layer(e, k).expect("level below rank");
    has_clopen_convergent(&l).expect("layers have rank at most 2")
}

/// Re-derives an obstruction against `x ≅ y`.
pub fn check_homeomorphism_obstruction(x: &SpaceExpr, y: &SpaceExpr, ob: &Obstruction) -> bool {
    let (x, y) = (normalize(x), normalize(y));
    match ob.kind {
        ObstructionKind::Rank => rank(&x) != rank(&y),
        ObstructionKind::CompactLocal if ob.piece.is_none() => is_compact(&x) != is_compact(&y),
        ObstructionKind::TopPointCount => ob
            .level
            .is_some_and(|k| point_count(&derivative_iter(&x, k)) != point_count(&derivative_iter(&y, k))),
        ObstructionKind::LayerSignature => ob
            .level
            .is_some_and(|k| k >= 1 && k < rank(&x) && k < rank(&y) && signature_bit(&x, k) != signature_bit(&y, k)),
        _ => check_obstruction(&x, &y, ob),
    }
}

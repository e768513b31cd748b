//! Flattened form: a space as a sum of tail-only pieces.
//!
//! Prefix rings of a `Lim` are clopen, so `Lim(prefix, tail)` splits as the
//! sum of its prefix members and `Lim([], tail)`. A tail-only `Lim` is
//! determined by its glue germ: which pieces occur in every ring, once or
//! infinitely often.

use serde::{Deserialize, Serialize};

use crate::spacexpr::{Mult, SpaceExpr};

/// How often a piece occurs in each ring around a glue point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    One,
    Omega,
}

/// The local structure at a point: isolated, or a glue point whose rings
/// each hold the listed pieces.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Germ {
    Point,
    Glue(Vec<(Germ, Mode)>),
}

impl Germ {
    pub fn rank(&self) -> usize {
        match self {
            Germ::Point => 1,
            Germ::Glue(s) => 1 + s.iter().map(|(c, _)| c.rank()).max().unwrap_or(0),
        }
    }

    /// Compact neighborhoods all the way down.
    pub fn is_compact(&self) -> bool {
        match self {
            Germ::Point => true,
            Germ::Glue(s) => s.iter().all(|(c, m)| *m == Mode::One && c.is_compact()),
        }
    }

    pub fn entries(&self) -> &[(Germ, Mode)] {
        match self {
            Germ::Point => &[],
            Germ::Glue(s) => s,
        }
    }

    /// The tail-only expression with this germ.
    pub fn to_expr(&self) -> SpaceExpr {
        match self {
            Germ::Point => SpaceExpr::Point,
            Germ::Glue(s) => SpaceExpr::lim(
                Vec::new(),
                crate::spacexpr::Ring::new(
                    s.iter()
                        .map(|(c, m)| {
                            let mult = match m {
                                Mode::One => Mult::ONE,
                                Mode::Omega => Mult::Omega,
                            };
                            (c.to_expr(), mult)
                        })
                        .collect(),
                ),
            ),
        }
    }
}

impl std::fmt::Display for Germ {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}

/// A space as a multiset of pieces.
pub type Pieces = Vec<(Germ, Mult)>;

pub fn flatten(e: &SpaceExpr) -> Pieces {
    let mut out = Vec::new();
    push_pieces(e, Mult::ONE, &mut out);
    merge_pieces(out)
}

fn push_pieces(e: &SpaceExpr, times: Mult, out: &mut Pieces) {
    match e {
        SpaceExpr::Empty => {}
        SpaceExpr::Point => out.push((Germ::Point, times)),
        SpaceExpr::Sum(entries) => {
            for (x, m) in entries {
                push_pieces(x, times.mul(*m), out);
            }
        }
        SpaceExpr::Lim { prefix, tail } => {
            for r in prefix {
                for (x, m) in &r.entries {
                    push_pieces(x, times.mul(*m), out);
                }
            }
            let mut ring = Vec::new();
            for (x, m) in &tail.entries {
                for (g, k) in flatten(x) {
                    let mode = if m.is_omega() || k.is_omega() {
                        Mode::Omega
                    } else {
                        Mode::One
                    };
                    ring.push((g, mode));
                }
            }
            out.push((glue(ring), times));
        }
    }
}

/// Builds a glue germ, merging repeated pieces; an empty ring list is an
/// isolated point.
pub fn glue(mut ring: Vec<(Germ, Mode)>) -> Germ {
    if ring.is_empty() {
        return Germ::Point;
    }
    ring.sort();
    let mut out: Vec<(Germ, Mode)> = Vec::with_capacity(ring.len());
    for (g, m) in ring {
        match out.last_mut() {
            Some((h, k)) if *h == g => *k = (*k).max(m),
            _ => out.push((g, m)),
        }
    }
    Germ::Glue(out)
}

fn merge_pieces(mut items: Pieces) -> Pieces {
    items.sort();
    let mut out: Pieces = Vec::with_capacity(items.len());
    for (g, m) in items {
        match out.last_mut() {
            Some((h, k)) if *h == g => *k = k.add(m),
            _ => out.push((g, m)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spacexpr::expr;

    #[test]
    fn prefix_rings_split_off() {
        let p = flatten(&expr("lim({1*I(1)};{1*G(1)})"));
        assert_eq!(p.len(), 2);
        assert!(p.contains(&(Germ::Glue(vec![(Germ::Point, Mode::Omega)]), Mult::ONE)));
        assert!(p.contains(&(
            Germ::Glue(vec![(Germ::Glue(vec![(Germ::Point, Mode::One)]), Mode::One)]),
            Mult::ONE
        )));
    }

    #[test]
    fn sums_in_rings_become_entries() {
        let a = flatten(&expr("G(sum{2*G(1),1*D})"));
        let b = flatten(&expr("lim(;{1*G(1),w*1})"));
        assert_eq!(a, b);
        assert_eq!(flatten(&expr("sum{2*G(1),w*1}")).len(), 2);
        assert!(flatten(&expr("0")).is_empty());
    }

    #[test]
    fn ranks_and_compactness() {
        let g = |s: &str| flatten(&expr(s)).pop().unwrap().0;
        assert_eq!(g("I(G(1))").rank(), 3);
        assert!(g("G(G(1))").is_compact());
        assert!(!g("G(I(1))").is_compact());
        assert_eq!(g("I(G(1))").to_expr().to_string(), "I(G(1))");
    }
}

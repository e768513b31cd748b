//! A term algebra for countable scattered spaces of finite Cantor–Bendixson
//! rank.
//!
//! Every [`SpaceExpr`] denotes a concrete space:
//!
//! * `Empty` and `Point` are what they say;
//! * `Sum` is a disjoint topological sum, each member repeated by its
//!   [`Mult`];
//! * `Lim { prefix, tail }` is a sequence of rings (the prefix rings, then the
//!   tail ring repeated forever) together with one glue point `g` whose
//!   neighborhoods are `g` plus all rings from some index on.
//!
//! `G(x)` and `I(x)` are `Lim` with a single tail entry of multiplicity one or
//! `ω`; `D` is the countable discrete space.

mod normalize;
mod ops;
mod parse;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ParseError;

pub use normalize::normalize;
pub use ops::{
    derivative, derivative_iter, has_clopen_convergent, is_compact, layer, layer_signature,
    ord_to_expr, point_count, rank, rank_by_derivative, restrict_local_rank, PointCount,
};
pub use parse::parse_expr;

pub fn format_expr(e: &SpaceExpr) -> String {
    e.to_string()
}

/// Multiplicity of a ring or sum entry: a positive integer or `ω`.
///
/// Serializes as a JSON number or the string `"w"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "MultRepr", into = "MultRepr")]
pub enum Mult {
    Finite(u64),
    Omega,
}

impl Mult {
    pub const ONE: Mult = Mult::Finite(1);

    pub fn is_omega(self) -> bool {
        matches!(self, Mult::Omega)
    }

    pub fn is_finite(self) -> bool {
        !self.is_omega()
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Mult::Finite(n) => Some(n),
            Mult::Omega => None,
        }
    }

    /// Cardinal sum; overflow saturates to `ω`.
    pub fn add(self, other: Mult) -> Mult {
        match (self, other) {
            (Mult::Finite(a), Mult::Finite(b)) => a.checked_add(b).map_or(Mult::Omega, Mult::Finite),
            _ => Mult::Omega,
        }
    }

    /// Cardinal product of two positive multiplicities.
    pub fn mul(self, other: Mult) -> Mult {
        match (self, other) {
            (Mult::Finite(a), Mult::Finite(b)) => a.checked_mul(b).map_or(Mult::Omega, Mult::Finite),
            _ => Mult::Omega,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum MultRepr {
    Finite(u64),
    Omega(String),
}

impl From<Mult> for MultRepr {
    fn from(m: Mult) -> Self {
        match m {
            Mult::Finite(n) => MultRepr::Finite(n),
            Mult::Omega => MultRepr::Omega("w".into()),
        }
    }
}

impl TryFrom<MultRepr> for Mult {
    type Error = String;

    fn try_from(r: MultRepr) -> Result<Self, String> {
        match r {
            MultRepr::Finite(n) => Ok(Mult::Finite(n)),
            MultRepr::Omega(s) if s == "w" => Ok(Mult::Omega),
            MultRepr::Omega(s) => Err(format!("bad multiplicity {s:?}")),
        }
    }
}

impl fmt::Display for Mult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mult::Finite(n) => write!(f, "{n}"),
            Mult::Omega => f.write_str("w"),
        }
    }
}

/// One neighborhood difference layer `U_n ∖ U_{n+1}` of a glue point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ring {
    pub entries: Vec<(SpaceExpr, Mult)>,
}

impl Ring {
    pub fn new(entries: Vec<(SpaceExpr, Mult)>) -> Self {
        Ring { entries }
    }

    pub fn single(member: SpaceExpr, mult: Mult) -> Self {
        Ring {
            entries: vec![(member, mult)],
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpaceExpr {
    Empty,
    Point,
    Sum(Vec<(SpaceExpr, Mult)>),
    Lim { prefix: Vec<Ring>, tail: Ring },
}

impl SpaceExpr {
    /// `G(x)`: one copy of `x` per ring.
    pub fn g(x: SpaceExpr) -> Self {
        SpaceExpr::Lim {
            prefix: Vec::new(),
            tail: Ring::single(x, Mult::ONE),
        }
    }

    /// `I(x)`: infinitely many copies of `x` per ring.
    pub fn i(x: SpaceExpr) -> Self {
        SpaceExpr::Lim {
            prefix: Vec::new(),
            tail: Ring::single(x, Mult::Omega),
        }
    }

    /// The countable discrete space.
    pub fn d() -> Self {
        SpaceExpr::Sum(vec![(SpaceExpr::Point, Mult::Omega)])
    }

    pub fn sum(entries: Vec<(SpaceExpr, Mult)>) -> Self {
        SpaceExpr::Sum(entries)
    }

    pub fn lim(prefix: Vec<Ring>, tail: Ring) -> Self {
        SpaceExpr::Lim { prefix, tail }
    }

    /// `x` glued once per ring, `n` times over: `G^n(1)` realizes `ω^n + 1`.
    pub fn g_tower(n: usize) -> Self {
        (0..n).fold(SpaceExpr::Point, |acc, _| SpaceExpr::g(acc))
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, SpaceExpr::Empty)
    }

    /// Number of expression nodes; multiplicities are not counted.
    pub fn size(&self) -> usize {
        match self {
            SpaceExpr::Empty | SpaceExpr::Point => 1,
            SpaceExpr::Sum(entries) => 1 + entries.iter().map(|(x, _)| x.size()).sum::<usize>(),
            SpaceExpr::Lim { prefix, tail } => {
                1 + prefix
                    .iter()
                    .chain(std::iter::once(tail))
                    .flat_map(|r| r.entries.iter())
                    .map(|(x, _)| x.size())
                    .sum::<usize>()
            }
        }
    }

    /// The tail-only space `Lim([], tail)`; other expressions are returned
    /// unchanged.
    pub fn tail_only(&self) -> SpaceExpr {
        match self {
            SpaceExpr::Lim { tail, .. } => SpaceExpr::Lim {
                prefix: Vec::new(),
                tail: tail.clone(),
            },
            other => other.clone(),
        }
    }
}

fn write_items(f: &mut fmt::Formatter<'_>, entries: &[(SpaceExpr, Mult)]) -> fmt::Result {
    for (i, (x, m)) in entries.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{m}*{x}")?;
    }
    Ok(())
}

impl fmt::Display for SpaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceExpr::Empty => f.write_str("0"),
            SpaceExpr::Point => f.write_str("1"),
            SpaceExpr::Sum(entries) => {
                if let [(SpaceExpr::Point, Mult::Omega)] = entries.as_slice() {
                    return f.write_str("D");
                }
                f.write_str("sum{")?;
                write_items(f, entries)?;
                f.write_str("}")
            }
            SpaceExpr::Lim { prefix, tail } => {
                if prefix.is_empty() {
                    match tail.entries.as_slice() {
                        [(x, Mult::Finite(1))] => return write!(f, "G({x})"),
                        [(x, Mult::Omega)] => return write!(f, "I({x})"),
                        _ => {}
                    }
                }
                f.write_str("lim(")?;
                for (i, r) in prefix.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    f.write_str("{")?;
                    write_items(f, &r.entries)?;
                    f.write_str("}")?;
                }
                f.write_str(";{")?;
                write_items(f, &tail.entries)?;
                f.write_str("})")
            }
        }
    }
}

impl FromStr for SpaceExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_expr(s)
    }
}

/// `ω^alpha·n + 1`, the canonical form of a nonempty compact space.
///
/// For `alpha = 0` the space is `n` isolated points, the ordinal `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalCompact {
    pub alpha: usize,
    pub n: u64,
}

impl CanonicalCompact {
    /// The ordinal `a` with `[0, a)` homeomorphic to the space.
    pub fn to_ordinal(self) -> crate::ordinal::Ordinal {
        use crate::ordinal::Ordinal;
        if self.alpha == 0 {
            return Ordinal::nat(self.n);
        }
        Ordinal::monomial(Ordinal::nat(self.alpha as u64), self.n).add(&Ordinal::one())
    }
}

impl fmt::Display for CanonicalCompact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_ordinal())
    }
}

/// Parses and normalizes; convenience for tests and examples.
pub fn expr(text: &str) -> SpaceExpr {
    normalize(&parse_expr(text).unwrap_or_else(|e| panic!("bad expression {text:?}: {e}")))
}

//! Witness spaces, the binary family `X_f` at finite prefixes, and a bounded
//! exhaustive corpus of expressions.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::embed::Engine;
use crate::error::ScatteredError;
use crate::spacexpr::{normalize, rank, Mult, Ring, SpaceExpr};

pub const DEFAULT_DEPTH_CAP: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitPrefix {
    bits: Vec<bool>,
}

impl BitPrefix {
    pub fn new(bits: Vec<bool>) -> Result<Self, ScatteredError> {
        Self::with_cap(bits, DEFAULT_DEPTH_CAP)
    }

    pub fn with_cap(bits: Vec<bool>, cap: usize) -> Result<Self, ScatteredError> {
        if bits.is_empty() {
            return Err(ScatteredError::EmptyPrefix);
        }
        if bits.len() > cap {
            return Err(ScatteredError::PrefixTooLong(cap));
        }
        Ok(BitPrefix { bits })
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// All prefixes of length `n`, in binary counting order.
    pub fn all_of_length(n: usize) -> Vec<BitPrefix> {
        (0..1u64 << n)
            .map(|code| BitPrefix {
                bits: (0..n).map(|i| code >> (n - 1 - i) & 1 == 1).collect(),
            })
            .collect()
    }
}

impl FromStr for BitPrefix {
    type Err = ScatteredError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = s
            .trim()
            .chars()
            .filter(|c| *c != ',' && !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(ScatteredError::Parse(crate::error::ParseError::new(0, format!("bad bit {c:?}")))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        BitPrefix::new(bits)
    }
}

impl fmt::Display for BitPrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            f.write_str(if *b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// `X(0) = 1`, `X(m) = I(X(m-1))`.
pub fn witness_x(m: usize) -> SpaceExpr {
    (0..m).fold(SpaceExpr::Point, |acc, _| SpaceExpr::i(acc))
}

/// `X([0]) = G(1)`, `X([1]) = I(1)`; each further bit adds the previous
/// space to a ring in which every earlier entry recurs infinitely often,
/// once for `0` and infinitely often for `1`.
pub fn family_xf(p: &BitPrefix) -> SpaceExpr {
    let mut x = if p.bits[0] {
        SpaceExpr::i(SpaceExpr::Point)
    } else {
        SpaceExpr::g(SpaceExpr::Point)
    };
    for &bit in &p.bits[1..] {
        let SpaceExpr::Lim { tail, .. } = &x else {
            unreachable!("family members are tail-only limits")
        };
        let mut ring: Vec<(SpaceExpr, Mult)> = tail.entries.iter().map(|(e, _)| (e.clone(), Mult::Omega)).collect();
        ring.push((x.clone(), if bit { Mult::Omega } else { Mult::ONE }));
        x = normalize(&SpaceExpr::lim(Vec::new(), Ring::new(ring)));
    }
    x
}

/// Normalized expressions of size at most `size_cap`, ordered by size and
/// printed form, with one representative per dimensional type among those
/// of rank at most 2.
pub fn corpus(size_cap: usize) -> Vec<SpaceExpr> {
    let all = raw_corpus(size_cap);
    let mut engine = Engine::default();
    let mut kept_low: Vec<Vec<SpaceExpr>> = vec![Vec::new(); 3];
    let mut out = Vec::with_capacity(all.len());
    for e in all {
        let r = rank(&e);
        if r <= 2 {
            if kept_low[r].iter().any(|k| engine.same_type(k, &e)) {
                continue;
            }
            kept_low[r].push(e.clone());
        }
        out.push(e);
    }
    out
}

/// Every normalized expression of size at most `size_cap`, without type
/// deduplication.
pub fn raw_corpus(size_cap: usize) -> Vec<SpaceExpr> {
    // by_size[s]: nonempty normalized expressions of size exactly s
    let mut by_size: Vec<BTreeSet<SpaceExpr>> = vec![BTreeSet::new(); size_cap + 1];
    let mut seen: BTreeSet<SpaceExpr> = BTreeSet::new();
    if size_cap >= 1 {
        by_size[1].insert(SpaceExpr::Point);
    }
    for s in 2..=size_cap {
        let members: Vec<Vec<SpaceExpr>> = by_size.iter().map(|b| b.iter().cloned().collect()).collect();
        let mut fresh = Vec::new();
        for entries in multisets(&members, s - 1, &[Mult::ONE, Mult::Finite(2), Mult::Omega]) {
            fresh.push(SpaceExpr::sum(entries));
        }
        let ring_mults = [Mult::ONE, Mult::Omega];
        for tail_budget in 1..=s - 1 {
            let tails = multisets(&members, tail_budget, &ring_mults);
            let prefix_budget = s - 1 - tail_budget;
            let prefixes: Vec<Vec<Ring>> = if prefix_budget == 0 {
                vec![Vec::new()]
            } else {
                multisets(&members, prefix_budget, &ring_mults)
                    .into_iter()
                    .map(|r| vec![Ring::new(r)])
                    .collect()
            };
            for t in &tails {
                for p in &prefixes {
                    fresh.push(SpaceExpr::lim(p.clone(), Ring::new(t.clone())));
                }
            }
        }
        for e in fresh {
            let n = normalize(&e);
            if n.is_empty() || n.size() > s || seen.contains(&n) {
                continue;
            }
            seen.insert(n.clone());
            let k = n.size();
            by_size[k].insert(n);
        }
        seen.insert(SpaceExpr::Point);
    }
    let mut out: Vec<SpaceExpr> = vec![SpaceExpr::Empty];
    out.extend(by_size.into_iter().flatten());
    out.sort_by_cached_key(|e| (e.size(), e.to_string()));
    out.dedup();
    out
}

/// Multisets of `(member, mult)` with distinct members whose sizes add up
/// to `budget`.
fn multisets(members: &[Vec<SpaceExpr>], budget: usize, mults: &[Mult]) -> Vec<Vec<(SpaceExpr, Mult)>> {
    let flat: Vec<&SpaceExpr> = members.iter().flatten().filter(|e| e.size() <= budget).collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(
        flat: &[&SpaceExpr],
        from: usize,
        left: usize,
        mults: &[Mult],
        cur: &mut Vec<(SpaceExpr, Mult)>,
        out: &mut Vec<Vec<(SpaceExpr, Mult)>>,
    ) {
        if left == 0 {
            if !cur.is_empty() {
                out.push(cur.clone());
            }
            return;
        }
        for i in from..flat.len() {
            let sz = flat[i].size();
            if sz > left {
                continue;
            }
            for &m in mults {
                cur.push((flat[i].clone(), m));
                go(flat, i + 1, left - sz, mults, cur, out);
                cur.pop();
            }
        }
    }
    go(&flat, 0, budget, mults, &mut cur, &mut out);
    out
}

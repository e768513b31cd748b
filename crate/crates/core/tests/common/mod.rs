//! Reference computations that do not go through the library's own
//! algorithms.

#![allow(dead_code)]

use std::cmp::Ordering;

use scattered::ordinal::Ordinal;
use scattered::spacexpr::{Mult, PointCount, SpaceExpr};

/// Point count that saturates at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Count {
    Fin(u64),
    Inf,
}

impl Count {
    fn add(self, o: Count) -> Count {
        match (self, o) {
            (Count::Fin(a), Count::Fin(b)) => Count::Fin(a + b),
            _ => Count::Inf,
        }
    }

    fn scale(self, m: Mult) -> Count {
        match (self, m) {
            (Count::Fin(0), _) => Count::Fin(0),
            (Count::Fin(a), Mult::Finite(n)) => Count::Fin(a * n),
            _ => Count::Inf,
        }
    }

    pub fn matches(self, p: PointCount) -> bool {
        match (self, p) {
            (Count::Fin(a), PointCount::Finite(b)) => a == b,
            (Count::Inf, PointCount::Infinite) => true,
            _ => false,
        }
    }
}

/// `profile(e)[k]`: number of points whose local rank is `k + 1`, read off
/// the expression tree by counting glue points and ring copies.
pub fn profile(e: &SpaceExpr) -> Vec<Count> {
    fn merge(acc: &mut Vec<Count>, p: &[Count], m: Mult) {
        if acc.len() < p.len() {
            acc.resize(p.len(), Count::Fin(0));
        }
        for (k, c) in p.iter().enumerate() {
            acc[k] = acc[k].add(c.scale(m));
        }
    }
    match e {
        SpaceExpr::Empty => Vec::new(),
        SpaceExpr::Point => vec![Count::Fin(1)],
        SpaceExpr::Sum(entries) => {
            let mut acc = Vec::new();
            for (x, m) in entries {
                merge(&mut acc, &profile(x), *m);
            }
            acc
        }
        SpaceExpr::Lim { prefix, tail } => {
            let mut acc = Vec::new();
            for r in prefix {
                for (x, m) in &r.entries {
                    merge(&mut acc, &profile(x), *m);
                }
            }
            let mut glue_level = 0;
            for (x, _) in &tail.entries {
                let p = profile(x);
                glue_level = glue_level.max(p.len());
                // the tail ring repeats in infinitely many rings
                merge(&mut acc, &p, Mult::Omega);
            }
            merge(&mut acc, &level_point(glue_level), Mult::ONE);
            acc
        }
    }
}

fn level_point(k: usize) -> Vec<Count> {
    let mut v = vec![Count::Fin(0); k + 1];
    v[k] = Count::Fin(1);
    v
}

/// Rank from the profile: one more than the highest occupied level.
pub fn profile_rank(e: &SpaceExpr) -> usize {
    let p = profile(e);
    p.iter().rposition(|c| *c != Count::Fin(0)).map_or(0, |k| k + 1)
}

/// Points of local rank above `k`, that is, the size of the `k`-th derivative.
pub fn points_above(e: &SpaceExpr, k: usize) -> Count {
    profile(e).iter().skip(k).fold(Count::Fin(0), |a, c| a.add(*c))
}

/// Ordinals below `w^w` as coefficient vectors indexed by exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Small(pub Vec<u64>);

impl Small {
    pub fn from_ordinal(a: &Ordinal) -> Option<Small> {
        let mut v = Vec::new();
        for t in a.terms() {
            let e = t.exp.as_nat()? as usize;
            if v.len() <= e {
                v.resize(e + 1, 0);
            }
            v[e] = t.coeff;
        }
        Some(Small(v).trimmed())
    }

    pub fn to_ordinal(&self) -> Ordinal {
        let mut out = Ordinal::zero();
        for (e, &c) in self.0.iter().enumerate().rev() {
            out = out.add(&Ordinal::monomial(Ordinal::nat(e as u64), c));
        }
        out
    }

    fn trimmed(mut self) -> Small {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    fn lead(&self) -> Option<usize> {
        self.0.iter().rposition(|&c| c != 0)
    }

    pub fn cmp(&self, o: &Small) -> Ordering {
        let n = self.0.len().max(o.0.len());
        for e in (0..n).rev() {
            let a = self.0.get(e).copied().unwrap_or(0);
            let b = o.0.get(e).copied().unwrap_or(0);
            if a != b {
                return a.cmp(&b);
            }
        }
        Ordering::Equal
    }

    /// Terms of `self` below the leading exponent of `o` are absorbed.
    pub fn add(&self, o: &Small) -> Small {
        let Some(k) = o.lead() else { return self.clone() };
        let mut v = vec![0; self.0.len().max(o.0.len())];
        for (e, slot) in v.iter_mut().enumerate() {
            let a = self.0.get(e).copied().unwrap_or(0);
            let b = o.0.get(e).copied().unwrap_or(0);
            *slot = match e.cmp(&k) {
                Ordering::Greater => a,
                Ordering::Equal => a + b,
                Ordering::Less => b,
            };
        }
        Small(v).trimmed()
    }

    /// Distributes over the terms of `o`, largest first.
    pub fn mul(&self, o: &Small) -> Small {
        let Some(lead) = self.lead() else { return Small(Vec::new()) };
        let mut out = Small(Vec::new());
        for (k, &c) in o.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let part = if k == 0 {
                let mut v = self.0.clone();
                v[lead] *= c;
                Small(v)
            } else {
                let mut v = vec![0; lead + k + 1];
                v[lead + k] = c;
                Small(v)
            };
            out = out.add(&part);
        }
        out
    }
}

/// `w^a*n+1 <=_E w^b*m+1`.
pub fn successor_embeds(a: (usize, u64), b: (usize, u64)) -> bool {
    a.0 < b.0 || (a.0 == b.0 && a.1 <= b.1)
}

/// Successor ordinals below `w^4` with every coefficient at most 3.
pub fn successors_below_w4() -> Vec<Ordinal> {
    let mut out = Vec::new();
    for c3 in 0..=3u64 {
        for c2 in 0..=3 {
            for c1 in 0..=3 {
                for c0 in 1..=3 {
                    out.push(Small(vec![c0, c1, c2, c3]).trimmed().to_ordinal());
                }
            }
        }
    }
    out
}

/// Leading exponent and coefficient of a nonzero ordinal below `w^w`.
pub fn leading(a: &Ordinal) -> (usize, u64) {
    let s = Small::from_ordinal(a).expect("below w^w");
    let k = s.lead().expect("nonzero");
    (k, s.0[k])
}

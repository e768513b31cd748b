//! Exact embeddability on flattened forms.
//!
//! A tail-only piece `A` is homeomorphic to each of its glue neighborhoods,
//! so `A` embeds in a space iff it embeds into every neighborhood of a single
//! point there, i.e. iff the germ at that point dominates `A`. Domination of
//! glue germs compares rings: each ring of `A` has to land in finitely many
//! rings of the host (it misses the glue point), one copy per ring for a
//! `One` entry, infinitely many copies inside finitely many rings for an
//! `Omega` entry.

use std::collections::HashMap;

use super::germ::{Germ, Mode, Pieces};
use crate::spacexpr::Mult;

pub type Id = u32;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Node {
    Point,
    Glue(Vec<(Id, Mode)>),
}

/// Requirement multiset: piece ids with counts.
pub type Req = Vec<(Id, Mult)>;

/// How the finite copies of target pieces are loaded.
#[derive(Clone, Debug, Default)]
pub struct Assignment {
    /// `(requirement index, target piece index)`: served one per copy by a
    /// target piece of multiplicity `ω`.
    pub spread: Vec<(usize, usize)>,
    /// `(target piece index, load)` for single copies of finite pieces.
    pub copies: Vec<(usize, Req)>,
}

#[derive(Default)]
pub struct Oracle {
    nodes: Vec<Node>,
    ranks: Vec<usize>,
    index: HashMap<Node, Id>,
    le: HashMap<(Id, Id), bool>,
    host: HashMap<(Id, Id), bool>,
    piece: HashMap<(Id, Req), bool>,
}

impl Oracle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, g: &Germ) -> Id {
        let node = match g {
            Germ::Point => Node::Point,
            Germ::Glue(s) => Node::Glue(s.iter().map(|(c, m)| (self.intern(c), *m)).collect()),
        };
        self.intern_node(node)
    }

    fn intern_node(&mut self, node: Node) -> Id {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let rank = match &node {
            Node::Point => 1,
            Node::Glue(s) => 1 + s.iter().map(|(c, _)| self.ranks[*c as usize]).max().unwrap_or(0),
        };
        let id = self.nodes.len() as Id;
        self.nodes.push(node.clone());
        self.ranks.push(rank);
        self.index.insert(node, id);
        id
    }

    /// Interns a piece list, keeping its order.
    pub fn intern_pieces(&mut self, p: &Pieces) -> Req {
        p.iter().map(|(g, m)| (self.intern(g), *m)).collect()
    }

    pub fn rank(&self, a: Id) -> usize {
        self.ranks[a as usize]
    }

    pub fn is_point(&self, a: Id) -> bool {
        matches!(self.nodes[a as usize], Node::Point)
    }

    pub fn entries(&self, a: Id) -> Vec<(Id, Mode)> {
        match &self.nodes[a as usize] {
            Node::Point => Vec::new(),
            Node::Glue(s) => s.clone(),
        }
    }

    /// The germ at the glue of `b` dominates `a`.
    pub fn germ_le(&mut self, a: Id, b: Id) -> bool {
        if a == b || self.is_point(a) {
            return true;
        }
        if self.is_point(b) || self.rank(a) > self.rank(b) {
            return false;
        }
        if let Some(&v) = self.le.get(&(a, b)) {
            return v;
        }
        let t = self.entries(a);
        let s = self.entries(b);
        let v = t.iter().all(|&(c, m)| self.ring_hosts(&s, c, m));
        self.le.insert((a, b), v);
        v
    }

    /// Some point of the piece `b` has a germ dominating `a`.
    pub fn host1(&mut self, b: Id, a: Id) -> bool {
        if a == b || self.is_point(a) {
            return true;
        }
        if self.is_point(b) || self.rank(a) > self.rank(b) {
            return false;
        }
        if let Some(&v) = self.host.get(&(b, a)) {
            return v;
        }
        let v = self.germ_le(a, b) || self.entries(b).iter().any(|&(c, _)| self.host1(c, a));
        self.host.insert((b, a), v);
        v
    }

    /// One copy of `b` holds infinitely many disjoint copies of `a` that
    /// accumulate only at the glue of `b`.
    pub fn host_omega(&mut self, b: Id, a: Id) -> bool {
        self.entries(b).iter().any(|&(c, _)| self.host1(c, a))
    }

    /// Finitely many rings with entries `s` hold one copy of `c` (mode
    /// `One`) or infinitely many (mode `Omega`).
    pub fn ring_hosts(&mut self, s: &[(Id, Mode)], c: Id, mode: Mode) -> bool {
        match mode {
            Mode::One => s.iter().any(|&(d, _)| self.host1(d, c)),
            Mode::Omega => s.iter().any(|&(d, dm)| {
                (dm == Mode::Omega && self.host1(d, c)) || self.host_omega(d, c)
            }),
        }
    }

    /// A single copy of piece `b` holds the requirement `r`.
    pub fn sat_piece(&mut self, b: Id, r: &Req) -> bool {
        if r.is_empty() {
            return true;
        }
        if self.is_point(b) {
            return r.len() == 1 && self.is_point(r[0].0) && r[0].1 == Mult::ONE;
        }
        let key = (b, r.clone());
        if let Some(&v) = self.piece.get(&key) {
            return v;
        }
        let v = self.spread_ok(b, r) || self.top_choice(b, r).is_some();
        self.piece.insert(key, v);
        v
    }

    /// Everything goes inside ring members, one copy per ring.
    pub fn spread_ok(&mut self, b: Id, r: &Req) -> bool {
        let s = self.entries(b);
        r.iter().all(|&(a, _)| s.iter().any(|&(c, _)| self.host1(c, a)))
    }

    /// Index into `r` of a piece that can sit at the glue of `b` with the
    /// rest confined to finitely many rings.
    pub fn top_choice(&mut self, b: Id, r: &Req) -> Option<usize> {
        let s = self.entries(b);
        (0..r.len()).find(|&i| {
            self.germ_le(r[i].0, b)
                && residual(r, i)
                    .into_iter()
                    .all(|(a, m)| self.ring_hosts(&s, a, mode_of(m)))
        })
    }

    pub fn sat_space(&mut self, y: &Req, r: &Req) -> bool {
        self.assign(y, r).is_some()
    }

    /// Distributes the requirement over the pieces of `y`.
    pub fn assign(&mut self, y: &Req, r: &Req) -> Option<Assignment> {
        let mut out = Assignment::default();
        let mut units: Vec<(Id, Mult)> = Vec::new();
        for (i, &(a, m)) in r.iter().enumerate() {
            let spread = y
                .iter()
                .position(|&(b, bm)| bm.is_omega() && self.host1(b, a));
            match spread {
                Some(j) => out.spread.push((i, j)),
                None => match m {
                    Mult::Omega => units.push((a, Mult::Omega)),
                    Mult::Finite(n) => units.extend((0..n).map(|_| (a, Mult::ONE))),
                },
            }
        }
        if units.is_empty() {
            return Some(out);
        }
        let mut slots: Vec<(usize, Req)> = Vec::new();
        for (j, &(_, bm)) in y.iter().enumerate() {
            if let Mult::Finite(n) = bm {
                // more copies than units cannot help
                for _ in 0..n.min(units.len() as u64) {
                    slots.push((j, Vec::new()));
                }
            }
        }
        if !units.iter().all(|&(a, _)| slots.iter().any(|&(j, _)| self.host1(y[j].0, a))) {
            return None;
        }
        if self.fill(y, &units, 0, &mut slots, 0) {
            out.copies = slots.into_iter().filter(|(_, load)| !load.is_empty()).collect();
            Some(out)
        } else {
            None
        }
    }

    fn fill(&mut self, y: &Req, units: &[(Id, Mult)], k: usize, slots: &mut Vec<(usize, Req)>, from: usize) -> bool {
        if k == units.len() {
            return true;
        }
        let (a, m) = units[k];
        let mut tried: Vec<(usize, Req)> = Vec::new();
        for i in from..slots.len() {
            if tried.iter().any(|t| *t == slots[i]) {
                continue;
            }
            tried.push(slots[i].clone());
            let b = y[slots[i].0].0;
            let mut load = slots[i].1.clone();
            add_unit(&mut load, a, m);
            if !self.sat_piece(b, &load) {
                continue;
            }
            let old = std::mem::replace(&mut slots[i].1, load);
            let next_from = if k + 1 < units.len() && units[k + 1].0 == a { i } else { 0 };
            if self.fill(y, units, k + 1, slots, next_from) {
                return true;
            }
            slots[i].1 = old;
        }
        false
    }
}

pub fn mode_of(m: Mult) -> Mode {
    if m.is_omega() {
        Mode::Omega
    } else {
        Mode::One
    }
}

/// `r` with one copy of entry `i` removed; zero counts dropped.
pub fn residual(r: &Req, i: usize) -> Req {
    r.iter()
        .enumerate()
        .filter_map(|(j, &(a, m))| {
            if j != i {
                return Some((a, m));
            }
            match m {
                Mult::Omega => Some((a, Mult::Omega)),
                Mult::Finite(1) => None,
                Mult::Finite(n) => Some((a, Mult::Finite(n - 1))),
            }
        })
        .collect()
}

fn add_unit(load: &mut Req, a: Id, m: Mult) {
    match load.iter_mut().find(|(b, _)| *b == a) {
        Some((_, k)) => *k = k.add(m),
        None => {
            load.push((a, m));
            load.sort();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::germ::flatten;
    use crate::spacexpr::expr;

    fn le(x: &str, y: &str) -> bool {
        let mut o = Oracle::new();
        let rx = o.intern_pieces(&flatten(&expr(x)));
        let ry = o.intern_pieces(&flatten(&expr(y)));
        o.sat_space(&ry, &rx)
    }

    #[test]
    fn rank_one_types() {
        assert!(le("G(1)", "I(1)"));
        assert!(!le("I(1)", "G(1)"));
        assert!(le("1", "G(1)"));
        assert!(!le("G(1)", "1"));
        assert!(le("D", "G(1)"));
        assert!(!le("G(1)", "D"));
        assert!(le("sum{3*1}", "D"));
        assert!(!le("sum{3*1}", "sum{2*1}"));
    }

    #[test]
    fn level_two_order() {
        let mixed = "lim(;{w*G(1),1*I(1)})";
        assert!(le("G(G(1))", "I(G(1))"));
        assert!(le("G(G(1))", "G(I(1))"));
        assert!(!le("I(G(1))", "G(I(1))"));
        assert!(!le("G(I(1))", "I(G(1))"));
        assert!(le("G(I(1))", mixed));
        assert!(le("I(G(1))", mixed));
        assert!(!le(mixed, "I(G(1))"));
        assert!(!le(mixed, "G(I(1))"));
        assert!(le(mixed, "I(I(1))"));
        assert!(!le("I(I(1))", mixed));
    }

    #[test]
    fn sums_and_prefixes() {
        assert!(!le("sum{1*G(1),1*D}", "G(1)"));
        assert!(le("sum{1*G(1),1*D}", "G(G(1))"));
        assert!(le("I(1)", "G(G(1))"));
        assert!(!le("lim({1*I(1)};{1*G(1)})", "G(G(1))"));
        assert!(le("sum{2*G(1)}", "sum{1*G(1),1*I(1)}"));
        assert!(!le("sum{3*G(1)}", "sum{1*G(1),1*I(1)}"));
        assert!(le("sum{w*G(1)}", "G(G(1))"));
        assert!(!le("sum{w*G(1)}", "sum{5*G(1)}"));
    }

    #[test]
    fn witness_spaces_in_ordinals() {
        assert!(!le("I(I(1))", "G(G(G(1)))"));
        assert!(le("I(I(1))", "G(G(G(G(1))))"));
        assert!(le("I(1)", "G(G(1))"));
        assert!(!le("I(1)", "sum{9*G(1)}"));
    }
}

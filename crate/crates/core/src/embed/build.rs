//! Witness construction guided by the oracle.

use super::oracle::{residual, Id, Oracle, Req};
use super::schema::{
    claim_fits, Claim, EmbeddingSchema, EntryHost, EntryPlan, GermPlan, HostPlan, Hosted, PiecePlan, Placement,
    RingAssignment, RingSlot,
};
use super::germ::Mode;
use super::Budget;
use crate::spacexpr::Mult;

pub struct Builder<'a> {
    pub oracle: &'a mut Oracle,
    pub slope: u64,
    pub width: u64,
    pub depth: usize,
}

impl<'a> Builder<'a> {
    pub fn new(oracle: &'a mut Oracle, budget: &Budget, depth: usize) -> Self {
        Builder {
            oracle,
            slope: budget.slope,
            width: budget.width,
            depth,
        }
    }

    /// A schema for `r` into `y`, or `None` if there is none within the
    /// budget.
    pub fn space(&mut self, y: &Req, r: &Req) -> Option<EmbeddingSchema> {
        let asg = self.oracle.assign(y, r)?;
        let mut placements = Vec::new();
        for (i, j) in asg.spread {
            let load = vec![(r[i].0, Mult::ONE)];
            placements.push(Placement {
                target: j,
                copies: r[i].1,
                hosted: vec![Hosted { source: i, count: Mult::ONE }],
                plan: self.piece(y[j].0, &load)?,
            });
        }
        for (j, load) in asg.copies {
            let hosted = load
                .iter()
                .map(|&(a, m)| Hosted {
                    source: r.iter().position(|&(b, _)| b == a).expect("load comes from r"),
                    count: m,
                })
                .collect();
            placements.push(Placement {
                target: j,
                copies: Mult::ONE,
                hosted,
                plan: self.piece(y[j].0, &load)?,
            });
        }
        Some(EmbeddingSchema { placements })
    }

    fn piece(&mut self, b: Id, load: &Req) -> Option<PiecePlan> {
        if self.oracle.is_point(b) {
            return Some(PiecePlan::Point);
        }
        let s = self.oracle.entries(b);
        if self.oracle.spread_ok(b, load) {
            let mut hosts = Vec::new();
            for &(a, _) in load {
                let j = (0..s.len()).find(|&j| self.oracle.host1(s[j].0, a))?;
                hosts.push((j, self.host(s[j].0, a, 1)?));
            }
            return Some(PiecePlan::Spread { hosts });
        }
        let top = self.oracle.top_choice(b, load)?;
        let mut germ = self.germ(load[top].0, b, 1)?;
        let left = residual(load, top);
        let mut rest = Vec::with_capacity(load.len());
        let mut cursor = 0;
        for &(a, _) in load {
            let Some(&(_, m)) = left.iter().find(|(c, _)| *c == a) else {
                rest.push(None);
                continue;
            };
            let (member, host, rings) = self.entry(&s, a, m, 1)?;
            rest.push(Some(RingSlot { ring: cursor, member, host }));
            cursor += rings;
        }
        if let GermPlan::Glue { assignment, .. } = &mut germ {
            assignment.base = cursor;
        }
        Some(PiecePlan::Glue { top, germ, rest })
    }

    /// Places `count` copies of `a` in finitely many rings with entries `s`;
    /// returns the member, the host and the number of rings used.
    fn entry(&mut self, s: &[(Id, Mode)], a: Id, count: Mult, depth: usize) -> Option<(usize, EntryHost, u64)> {
        let omega_member = (0..s.len()).find(|&j| s[j].1 == Mode::Omega && self.oracle.host1(s[j].0, a));
        match count {
            Mult::Omega => {
                if let Some(j) = omega_member {
                    let plan = self.host(s[j].0, a, depth)?;
                    return Some((j, EntryHost::Copies { plan }, 1));
                }
                for (j, &(d, _)) in s.iter().enumerate() {
                    let inner = self.oracle.entries(d);
                    if let Some(k) = (0..inner.len()).find(|&k| self.oracle.host1(inner[k].0, a)) {
                        let plan = self.host(inner[k].0, a, depth)?;
                        return Some((j, EntryHost::Accumulate { inner: k, plan }, 1));
                    }
                }
                None
            }
            Mult::Finite(n) => {
                if let Some(j) = omega_member {
                    let plan = self.host(s[j].0, a, depth)?;
                    return Some((j, EntryHost::Single { plan }, 1));
                }
                let j = (0..s.len()).find(|&j| self.oracle.host1(s[j].0, a))?;
                let plan = self.host(s[j].0, a, depth)?;
                Some((j, EntryHost::Single { plan }, n))
            }
        }
    }

    fn host(&mut self, b: Id, a: Id, depth: usize) -> Option<HostPlan> {
        if self.oracle.germ_le(a, b) {
            return Some(HostPlan::AtGlue {
                germ: self.germ(a, b, depth)?,
            });
        }
        let s = self.oracle.entries(b);
        let j = (0..s.len()).find(|&j| self.oracle.host1(s[j].0, a))?;
        Some(HostPlan::Inside {
            member: j,
            plan: Box::new(self.host(s[j].0, a, depth)?),
        })
    }

    /// Glue of `a` onto glue of `b`, with offsets packed greedily.
    fn germ(&mut self, a: Id, b: Id, depth: usize) -> Option<GermPlan> {
        if self.oracle.is_point(a) {
            return Some(GermPlan::Point);
        }
        if depth > self.depth {
            return None;
        }
        let t = self.oracle.entries(a);
        let s = self.oracle.entries(b);
        let limit = self.width.min(self.slope);
        let mut claims: Vec<((u64, usize), Claim)> = Vec::new();
        let mut entries = Vec::with_capacity(t.len());
        for &(c, mode) in &t {
            let candidates = self.candidates(&s, c, mode);
            let mut placed = None;
            'search: for offset in 0..limit {
                for &(member, kind) in &candidates {
                    let here: Vec<Claim> = if s[member].1 == Mode::One {
                        claims.iter().filter(|(k, _)| *k == (offset, member)).map(|(_, c)| *c).collect()
                    } else {
                        Vec::new()
                    };
                    if let Some(host) = self.entry_host(s[member].0, c, kind, &here, depth + 1) {
                        placed = Some(EntryPlan { offset, member, host });
                        break 'search;
                    }
                }
            }
            let plan = placed?;
            if s[plan.member].1 == Mode::One {
                claims.extend(plan.host.claim().map(|c| ((plan.offset, plan.member), c)));
            }
            entries.push(plan);
        }
        let width = entries.iter().map(|e| e.offset + 1).max().unwrap_or(1);
        Some(GermPlan::Glue {
            assignment: RingAssignment { base: 0, slope: width, width },
            entries,
        })
    }

    /// Host for entry `c` in member `d`, preferring a single ring of `d`,
    /// compatible with the `claims` already on this copy of `d`.
    fn entry_host(&mut self, d: Id, c: Id, kind: Kind, claims: &[Claim], depth: usize) -> Option<EntryHost> {
        let host = match kind {
            Kind::Single => {
                let plan = match self.host_inside(d, c, depth) {
                    Some(p) => p,
                    None => self.host(d, c, depth)?,
                };
                EntryHost::Single { plan }
            }
            Kind::Copies => EntryHost::Copies { plan: self.host(d, c, depth)? },
            Kind::Accumulate(k) => {
                let e = self.oracle.entries(d)[k].0;
                EntryHost::Accumulate { inner: k, plan: self.host(e, c, depth)? }
            }
        };
        claim_fits(claims, host.claim()).then_some(host)
    }

    fn host_inside(&mut self, b: Id, a: Id, depth: usize) -> Option<HostPlan> {
        if self.oracle.is_point(b) {
            return None;
        }
        let s = self.oracle.entries(b);
        for (j, &(d, _)) in s.iter().enumerate() {
            if self.oracle.host1(d, a) {
                if let Some(plan) = self.host(d, a, depth) {
                    return Some(HostPlan::Inside { member: j, plan: Box::new(plan) });
                }
            }
        }
        None
    }

    /// Every member able to host one ring entry `(c, mode)`.
    fn candidates(&mut self, s: &[(Id, Mode)], c: Id, mode: Mode) -> Vec<(usize, Kind)> {
        let mut out = Vec::new();
        for (j, &(d, dm)) in s.iter().enumerate() {
            match mode {
                Mode::One => {
                    if self.oracle.host1(d, c) {
                        out.push((j, Kind::Single));
                    }
                }
                Mode::Omega => {
                    if dm == Mode::Omega && self.oracle.host1(d, c) {
                        out.push((j, Kind::Copies));
                    } else {
                        let inner = self.oracle.entries(d);
                        if let Some(k) = (0..inner.len()).find(|&k| self.oracle.host1(inner[k].0, c)) {
                            out.push((j, Kind::Accumulate(k)));
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy)]
enum Kind {
    Single,
    Copies,
    Accumulate(usize),
}

//! Finite witnesses for embeddings and their validity check.
//!
//! Indices refer to the flattened forms of source and target: `source` and
//! `target` index the piece lists, `member` indexes the ring entries of a
//! glue germ. Validity is checked structurally and never consults the
//! decision procedure.

use serde::{Deserialize, Serialize};

use super::germ::{flatten, Germ, Mode, Pieces};
use crate::spacexpr::{normalize, Mult, SpaceExpr};

/// Source ring `n` goes to target rings `base + slope·n .. base + slope·n + width`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingAssignment {
    pub base: u64,
    pub slope: u64,
    pub width: u64,
}

/// Glue to glue.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GermPlan {
    /// The source germ is an isolated point.
    Point,
    Glue {
        assignment: RingAssignment,
        /// One per source ring entry, in order.
        entries: Vec<EntryPlan>,
    },
}

/// Where a source ring entry lives inside its assigned target rings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryPlan {
    /// Which of the `width` target rings.
    pub offset: u64,
    pub member: usize,
    pub host: EntryHost,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EntryHost {
    /// One copy in one copy of the member.
    Single { plan: HostPlan },
    /// One copy in each of infinitely many copies of an `ω` member.
    Copies { plan: HostPlan },
    /// Infinitely many copies inside one copy of the member, one per ring of
    /// its entry `inner`.
    Accumulate { inner: usize, plan: HostPlan },
}

/// How an entry host uses its copy of a target member.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    /// The glue point and a cofinite set of its rings.
    Glue,
    /// An infinite set of its rings, which may be split with other such claims.
    Rings,
}

impl EntryHost {
    /// Hosts without a claim sit in one ring and share the copy freely.
    pub fn claim(&self) -> Option<Claim> {
        match self {
            EntryHost::Single { plan } | EntryHost::Copies { plan } => {
                matches!(plan, HostPlan::AtGlue { .. }).then_some(Claim::Glue)
            }
            EntryHost::Accumulate { .. } => Some(Claim::Rings),
        }
    }
}

/// Whether `c` can join a member copy that already carries `claims`.
pub fn claim_fits(claims: &[Claim], c: Option<Claim>) -> bool {
    match c {
        None => true,
        Some(Claim::Glue) => claims.is_empty(),
        Some(Claim::Rings) => !claims.contains(&Claim::Glue),
    }
}

/// Places a germ at some point of a target piece.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HostPlan {
    AtGlue { germ: GermPlan },
    Inside { member: usize, plan: Box<HostPlan> },
}

/// Placement of a residual requirement inside rings that precede the
/// assignment of the top piece.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSlot {
    /// First ring used; a finite count on a single-copy member occupies
    /// consecutive rings from here.
    pub ring: u64,
    pub member: usize,
    pub host: EntryHost,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PiecePlan {
    /// The target piece is a point holding a single point.
    Point,
    /// Every hosted copy goes into its own ring, inside the given member.
    Spread { hosts: Vec<(usize, HostPlan)> },
    /// Hosted entry `top` takes the glue point; the rest stays in finitely
    /// many rings (`None` when nothing of that entry is left).
    Glue {
        top: usize,
        germ: GermPlan,
        rest: Vec<Option<RingSlot>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hosted {
    pub source: usize,
    /// Copies per target copy.
    pub count: Mult,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Placement {
    pub target: usize,
    pub copies: Mult,
    pub hosted: Vec<Hosted>,
    pub plan: PiecePlan,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingSchema {
    pub placements: Vec<Placement>,
}

impl EmbeddingSchema {
    /// Widest interval, largest slope and deepest glue nesting used.
    pub fn dimensions(&self) -> (u64, u64, usize) {
        let mut acc = (0, 0, 0);
        for p in &self.placements {
            match &p.plan {
                PiecePlan::Point => {}
                PiecePlan::Spread { hosts } => {
                    for (_, h) in hosts {
                        host_dims(h, 0, &mut acc);
                    }
                }
                PiecePlan::Glue { germ, rest, .. } => {
                    germ_dims(germ, 1, &mut acc);
                    for s in rest.iter().flatten() {
                        entry_dims(&s.host, 0, &mut acc);
                    }
                }
            }
        }
        (acc.0, acc.1, acc.2)
    }
}

fn germ_dims(g: &GermPlan, depth: usize, acc: &mut (u64, u64, usize)) {
    acc.2 = acc.2.max(depth);
    if let GermPlan::Glue { assignment, entries } = g {
        acc.0 = acc.0.max(assignment.width);
        acc.1 = acc.1.max(assignment.slope);
        for e in entries {
            entry_dims(&e.host, depth, acc);
        }
    }
}

fn entry_dims(h: &EntryHost, depth: usize, acc: &mut (u64, u64, usize)) {
    match h {
        EntryHost::Single { plan } | EntryHost::Copies { plan } | EntryHost::Accumulate { plan, .. } => {
            host_dims(plan, depth, acc)
        }
    }
}

fn host_dims(h: &HostPlan, depth: usize, acc: &mut (u64, u64, usize)) {
    match h {
        HostPlan::AtGlue { germ } => germ_dims(germ, depth + 1, acc),
        HostPlan::Inside { plan, .. } => host_dims(plan, depth, acc),
    }
}

/// Rejection reason of an invalid schema.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invalid(pub String);

type Check = Result<(), Invalid>;

fn fail<T>(msg: impl Into<String>) -> Result<T, Invalid> {
    Err(Invalid(msg.into()))
}

/// Whether `s` witnesses an embedding of `x` into `y`.
pub fn check_schema(x: &SpaceExpr, y: &SpaceExpr, s: &EmbeddingSchema) -> bool {
    validate(x, y, s).is_ok()
}

/// As [`check_schema`], reporting the first violated condition.
pub fn validate(x: &SpaceExpr, y: &SpaceExpr, s: &EmbeddingSchema) -> Check {
    let src = flatten(&normalize(x));
    let dst = flatten(&normalize(y));
    validate_pieces(&src, &dst, s)
}

pub fn validate_pieces(src: &Pieces, dst: &Pieces, s: &EmbeddingSchema) -> Check {
    let mut used = vec![Mult::Finite(0); dst.len()];
    let mut covered = vec![Mult::Finite(0); src.len()];
    for p in &s.placements {
        let Some((b, bm)) = dst.get(p.target) else {
            return fail(format!("no target piece {}", p.target));
        };
        if p.copies == Mult::Finite(0) {
            return fail("placement with zero copies");
        }
        used[p.target] = used[p.target].add(p.copies);
        let mut load = Vec::new();
        for h in &p.hosted {
            let Some((a, _)) = src.get(h.source) else {
                return fail(format!("no source piece {}", h.source));
            };
            if h.count == Mult::Finite(0) {
                return fail("hosted entry with zero count");
            }
            covered[h.source] = covered[h.source].add(times(p.copies, h.count));
            load.push((a, h.count));
        }
        check_piece(b, &load, &p.plan)?;
        if used[p.target] > *bm {
            return fail(format!("target piece {} used {} times, has {}", p.target, used[p.target], bm));
        }
    }
    for (i, (a, m)) in src.iter().enumerate() {
        if covered[i] < *m {
            return fail(format!("source piece {a} covered {} of {} times", covered[i], m));
        }
    }
    Ok(())
}

fn times(a: Mult, b: Mult) -> Mult {
    a.mul(b)
}

fn check_piece(b: &Germ, load: &[(&Germ, Mult)], plan: &PiecePlan) -> Check {
    match plan {
        PiecePlan::Point => {
            if *b != Germ::Point || load.len() != 1 || *load[0].0 != Germ::Point || load[0].1 != Mult::ONE {
                return fail("point plan needs a point hosting a point");
            }
            Ok(())
        }
        PiecePlan::Spread { hosts } => {
            let Germ::Glue(s) = b else {
                return fail("spread into a point");
            };
            if hosts.len() != load.len() {
                return fail("spread hosts misaligned");
            }
            for ((a, _), (member, h)) in load.iter().zip(hosts) {
                let Some((c, _)) = s.get(*member) else {
                    return fail("spread member out of range");
                };
                check_host(c, a, h)?;
            }
            Ok(())
        }
        PiecePlan::Glue { top, germ, rest } => {
            let Germ::Glue(s) = b else {
                return fail("glue plan into a point");
            };
            let Some((a0, _)) = load.get(*top) else {
                return fail("top entry out of range");
            };
            check_germ(a0, b, germ)?;
            if rest.len() != load.len() {
                return fail("residual slots misaligned");
            }
            let mut taken: Vec<(u64, usize)> = Vec::new();
            let mut end = 0u64;
            for (i, ((a, m), slot)) in load.iter().zip(rest).enumerate() {
                let left = if i == *top { minus_one(*m) } else { *m };
                match (left, slot) {
                    (Mult::Finite(0), None) => {}
                    (Mult::Finite(0), Some(_)) => return fail("slot for an exhausted entry"),
                    (_, None) => return fail("residual entry without a slot"),
                    (left, Some(slot)) => {
                        let Some((d, dm)) = s.get(slot.member) else {
                            return fail("slot member out of range");
                        };
                        let rings = check_entry(d, *dm, a, left, &slot.host)?;
                        for k in slot.ring..slot.ring + rings {
                            if *dm == Mode::One {
                                if taken.contains(&(k, slot.member)) {
                                    return fail("ring member used twice");
                                }
                                taken.push((k, slot.member));
                            }
                        }
                        end = end.max(slot.ring + rings);
                    }
                }
            }
            if let GermPlan::Glue { assignment, .. } = germ {
                if assignment.base < end {
                    return fail("top assignment overlaps residual rings");
                }
            }
            Ok(())
        }
    }
}

fn minus_one(m: Mult) -> Mult {
    match m {
        Mult::Finite(n) => Mult::Finite(n.saturating_sub(1)),
        Mult::Omega => Mult::Omega,
    }
}

/// Checks that `count` copies of `a` fit in member `d` (of mode `dm`) as
/// described, returning how many consecutive rings are used.
fn check_entry(d: &Germ, dm: Mode, a: &Germ, count: Mult, host: &EntryHost) -> Result<u64, Invalid> {
    match host {
        EntryHost::Single { plan } => {
            check_host(d, a, plan)?;
            match (count, dm) {
                (Mult::Omega, _) => fail("infinitely many copies need an accumulating host"),
                (Mult::Finite(_), Mode::Omega) => Ok(1),
                (Mult::Finite(n), Mode::One) => Ok(n),
            }
        }
        EntryHost::Copies { plan } => {
            if dm != Mode::Omega {
                return fail("copies need a member repeated infinitely often");
            }
            check_host(d, a, plan)?;
            Ok(1)
        }
        EntryHost::Accumulate { inner, plan } => {
            let Germ::Glue(s) = d else {
                return fail("accumulation inside a point");
            };
            let Some((e, _)) = s.get(*inner) else {
                return fail("inner member out of range");
            };
            check_host(e, a, plan)?;
            Ok(1)
        }
    }
}

fn check_host(b: &Germ, a: &Germ, h: &HostPlan) -> Check {
    match h {
        HostPlan::AtGlue { germ } => check_germ(a, b, germ),
        HostPlan::Inside { member, plan } => {
            let Germ::Glue(s) = b else {
                return fail("inside a point");
            };
            let Some((c, _)) = s.get(*member) else {
                return fail("member out of range");
            };
            check_host(c, a, plan)
        }
    }
}

/// Glue of `a` to glue of `b`.
fn check_germ(a: &Germ, b: &Germ, plan: &GermPlan) -> Check {
    match (a, plan) {
        (Germ::Point, GermPlan::Point) => Ok(()),
        (Germ::Point, _) => fail("glue plan for a point"),
        (Germ::Glue(_), GermPlan::Point) => fail("point plan for a glue germ"),
        (Germ::Glue(t), GermPlan::Glue { assignment, entries }) => {
            let Germ::Glue(s) = b else {
                return fail("glue point sent to an isolated point");
            };
            if a.rank() > b.rank() {
                return fail(format!("local rank {} sent to local rank {}", a.rank(), b.rank()));
            }
            let RingAssignment { slope, width, .. } = *assignment;
            if width == 0 {
                return fail("empty ring interval");
            }
            if slope < width {
                return fail("ring intervals overlap");
            }
            if entries.len() != t.len() {
                return fail("entry plans misaligned");
            }
            let mut claims: Vec<((u64, usize), Claim)> = Vec::new();
            for ((c, mode), e) in t.iter().zip(entries) {
                if e.offset >= width {
                    return fail("entry outside its ring interval");
                }
                let Some((d, dm)) = s.get(e.member) else {
                    return fail("entry member out of range");
                };
                let count = match mode {
                    Mode::One => Mult::ONE,
                    Mode::Omega => Mult::Omega,
                };
                check_entry(d, *dm, c, count, &e.host)?;
                if *dm == Mode::One {
                    let slot = (e.offset, e.member);
                    let here: Vec<Claim> = claims.iter().filter(|(k, _)| *k == slot).map(|(_, c)| *c).collect();
                    let claim = e.host.claim();
                    if !claim_fits(&here, claim) {
                        return fail("ring member used twice");
                    }
                    claims.extend(claim.map(|c| (slot, c)));
                }
            }
            Ok(())
        }
    }
}

//! The embeddability preorder `x ≤_E y` on expressions.
//!
//! Questions are answered by an exact procedure on flattened forms; answers
//! come with a witness schema or an obstruction, both checkable without the
//! procedure. Schema construction is bounded by a [`Budget`]; a yes that
//! does not fit the budget is reported as unknown.

mod build;
mod canon;
mod germ;
mod obstruction;
mod oracle;
mod schema;

use serde::{Deserialize, Serialize};

pub use canon::{ku_compactify, ms_canonical};
pub use germ::{flatten, glue, Germ, Mode, Pieces};
pub use obstruction::{
    check_homeomorphism_obstruction, check_obstruction, Evidence, Obstruction, ObstructionKind,
};
pub use schema::{
    check_schema, validate, EmbeddingSchema, EntryHost, EntryPlan, GermPlan, HostPlan, Hosted,
    Invalid, PiecePlan, Placement, RingAssignment, RingSlot,
};

use crate::ordinal::Ordinal;
use crate::spacexpr::{normalize, ord_to_expr, point_count, rank, Mult, PointCount, SpaceExpr};
use build::Builder;
use oracle::Oracle;

/// Bounds on witness schemas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub slope: u64,
    pub width: u64,
    /// Glue nesting; `None` means the larger rank of the two inputs.
    pub depth: Option<usize>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            slope: 4,
            width: 4,
            depth: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Witness {
    Schema(EmbeddingSchema),
    Pair {
        forward: EmbeddingSchema,
        backward: EmbeddingSchema,
    },
    Canonical {
        canonical: crate::spacexpr::CanonicalCompact,
    },
    Identical {
        normal_form: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub answer: Answer,
    pub witness: Option<Witness>,
    pub obstruction: Option<Obstruction>,
    pub budget: Budget,
}

impl Verdict {
    fn yes(witness: Witness, budget: Budget) -> Self {
        Verdict {
            answer: Answer::Yes,
            witness: Some(witness),
            obstruction: None,
            budget,
        }
    }

    fn no(obstruction: Obstruction, budget: Budget) -> Self {
        Verdict {
            answer: Answer::No,
            witness: None,
            obstruction: Some(obstruction),
            budget,
        }
    }

    fn unknown(budget: Budget) -> Self {
        Verdict {
            answer: Answer::Unknown,
            witness: None,
            obstruction: None,
            budget,
        }
    }

    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }

    pub fn is_no(&self) -> bool {
        self.answer == Answer::No
    }

    pub fn is_unknown(&self) -> bool {
        self.answer == Answer::Unknown
    }

    pub fn schema(&self) -> Option<&EmbeddingSchema> {
        match &self.witness {
            Some(Witness::Schema(s)) => Some(s),
            _ => None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("verdicts serialize")
    }
}

/// Decision engine with caches shared across queries.
#[derive(Default)]
pub struct Engine {
    oracle: Oracle,
    budget: Budget,
}

impl Engine {
    pub fn new(budget: Budget) -> Self {
        Engine {
            oracle: Oracle::new(),
            budget,
        }
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    /// `x ≤_E y`, without a certificate.
    pub fn embeds(&mut self, x: &SpaceExpr, y: &SpaceExpr) -> bool {
        let rx = self.oracle.intern_pieces(&flatten(x));
        let ry = self.oracle.intern_pieces(&flatten(y));
        self.oracle.sat_space(&ry, &rx)
    }

    pub fn same_type(&mut self, x: &SpaceExpr, y: &SpaceExpr) -> bool {
        self.embeds(x, y) && self.embeds(y, x)
    }

    /// Largest number of disjoint copies of `a` inside `b`; `Finite(0)` if
    /// none fits.
    pub fn capacity(&mut self, a: &SpaceExpr, b: &SpaceExpr) -> Mult {
        let pa = self.oracle.intern_pieces(&flatten(a));
        let pb = self.oracle.intern_pieces(&flatten(b));
        let times = |m: Mult| -> Vec<(oracle::Id, Mult)> { pa.iter().map(|&(g, k)| (g, k.mul(m))).collect() };
        if self.oracle.sat_space(&pb, &times(Mult::Omega)) {
            return Mult::Omega;
        }
        let slots: u64 = pb.iter().filter_map(|(_, m)| m.finite()).sum();
        let mut best = 0;
        for m in 1..=slots + 1 {
            if !self.oracle.sat_space(&pb, &times(Mult::Finite(m))) {
                break;
            }
            best = m;
        }
        Mult::Finite(best)
    }

    fn depth_for(&self, x: &SpaceExpr, y: &SpaceExpr) -> usize {
        self.budget.depth.unwrap_or_else(|| rank(x).max(rank(y)))
    }

    /// A witness within the budget, if `x ≤_E y` has one.
    pub fn search_embedding(&mut self, x: &SpaceExpr, y: &SpaceExpr) -> Option<EmbeddingSchema> {
        let (x, y) = (normalize(x), normalize(y));
        let depth = self.depth_for(&x, &y);
        let rx = self.oracle.intern_pieces(&flatten(&x));
        let ry = self.oracle.intern_pieces(&flatten(&y));
        let budget = self.budget;
        let s = Builder::new(&mut self.oracle, &budget, depth).space(&ry, &rx)?;
        debug_assert_eq!(validate(&x, &y, &s), Ok(()), "{x} into {y}");
        Some(s)
    }

    pub fn refute_embedding(&mut self, x: &SpaceExpr, y: &SpaceExpr) -> Option<Obstruction> {
        obstruction::refute(&mut self.oracle, &normalize(x), &normalize(y))
    }

    pub fn decide_embed(&mut self, x: &SpaceExpr, y: &SpaceExpr) -> Verdict {
        let (x, y) = (normalize(x), normalize(y));
        if let Some(ob) = self.refute_embedding(&x, &y) {
            return Verdict::no(ob, self.budget);
        }
        match self.search_embedding(&x, &y) {
            Some(s) => Verdict::yes(Witness::Schema(s), self.budget),
            None => Verdict::unknown(self.budget),
        }
    }

    pub fn decide_same_type(&mut self, x: &SpaceExpr, y: &SpaceExpr) -> Verdict {
        let forward = self.decide_embed(x, y);
        let backward = self.decide_embed(y, x);
        if let Some(ob) = forward.obstruction {
            return Verdict::no(ob, self.budget);
        }
        if let Some(mut ob) = backward.obstruction {
            ob.swapped = true;
            return Verdict::no(ob, self.budget);
        }
        match (forward.witness, backward.witness) {
            (Some(Witness::Schema(forward)), Some(Witness::Schema(backward))) => {
                Verdict::yes(Witness::Pair { forward, backward }, self.budget)
            }
            _ => Verdict::unknown(self.budget),
        }
    }

    /// Sound in both directions; complete on compact inputs.
    pub fn decide_homeomorphic(&mut self, x: &SpaceExpr, y: &SpaceExpr) -> Verdict {
        let (x, y) = (normalize(x), normalize(y));
        if x == y || flatten(&x) == flatten(&y) {
            return Verdict::yes(
                Witness::Identical {
                    normal_form: x.to_string(),
                },
                self.budget,
            );
        }
        if let Some(ob) = obstruction::homeomorphism_invariant_gap(&x, &y) {
            return Verdict::no(ob, self.budget);
        }
        if let (Ok(a), Ok(b)) = (ms_canonical(&x), ms_canonical(&y)) {
            // equal ranks and derivative sizes were checked above
            debug_assert_eq!(a, b);
            return Verdict::yes(Witness::Canonical { canonical: a }, self.budget);
        }
        let v = self.decide_same_type(&x, &y);
        if v.is_no() {
            return v;
        }
        Verdict::unknown(self.budget)
    }

    /// Least `ω^c·n + 1` (an ordinal `n` for finite spaces) containing `e`,
    /// with a witness.
    pub fn ordinal_embedding_upper(&mut self, e: &SpaceExpr) -> (Ordinal, EmbeddingSchema) {
        let e = normalize(e);
        let r = rank(&e);
        if r <= 1 {
            if let PointCount::Finite(n) = point_count(&e) {
                let a = Ordinal::nat(n.max(1));
                let target = ord_to_expr(&a).expect("positive finite ordinal");
                let s = self.search_embedding(&e, &target).expect("finite sets embed in larger ones");
                return (a, s);
            }
        }
        let pieces = flatten(&e);
        let blocks: u64 = pieces
            .iter()
            .map(|(_, m)| m.finite().unwrap_or(1))
            .sum::<u64>()
            .max(1);
        let at = |c: usize, n: u64| {
            let a = Ordinal::monomial(Ordinal::nat(c as u64), n).add(&Ordinal::one());
            let t = ord_to_expr(&a).expect("exponent is finite");
            (a, t)
        };
        for c in r.max(2) - 1.. {
            if !self.embeds(&e, &at(c, blocks).1) {
                continue;
            }
            let (mut lo, mut hi) = (1, blocks);
            while lo < hi {
                let mid = (lo + hi) / 2;
                if self.embeds(&e, &at(c, mid).1) {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            let (a, t) = at(c, lo);
            let s = self
                .search_embedding(&e, &t)
                .unwrap_or_default();
            return (a, s);
        }
        unreachable!("every finite-rank expression embeds in some ordinal below w^w")
    }

    /// Whether `ω^k + 1` embeds in `e`.
    pub fn check_omega_alpha_copy(&mut self, e: &SpaceExpr, k: usize) -> bool {
        self.decide_embed(&SpaceExpr::g_tower(k), e).is_yes()
    }
}

pub fn capacity(a: &SpaceExpr, b: &SpaceExpr) -> Mult {
    Engine::default().capacity(&normalize(a), &normalize(b))
}

pub fn search_embedding(x: &SpaceExpr, y: &SpaceExpr, budget: &Budget) -> Option<EmbeddingSchema> {
    Engine::new(*budget).search_embedding(x, y)
}

pub fn refute_embedding(x: &SpaceExpr, y: &SpaceExpr) -> Option<Obstruction> {
    Engine::default().refute_embedding(x, y)
}

pub fn decide_embed(x: &SpaceExpr, y: &SpaceExpr, budget: Option<&Budget>) -> Verdict {
    Engine::new(budget.copied().unwrap_or_default()).decide_embed(x, y)
}

pub fn decide_same_type(x: &SpaceExpr, y: &SpaceExpr, budget: Option<&Budget>) -> Verdict {
    Engine::new(budget.copied().unwrap_or_default()).decide_same_type(x, y)
}

pub fn decide_homeomorphic(x: &SpaceExpr, y: &SpaceExpr) -> Verdict {
    Engine::default().decide_homeomorphic(x, y)
}

pub fn ordinal_embedding_upper(e: &SpaceExpr) -> Ordinal {
    Engine::default().ordinal_embedding_upper(e).0
}

pub fn check_omega_alpha_copy(e: &SpaceExpr, k: usize) -> bool {
    Engine::default().check_omega_alpha_copy(e, k)
}

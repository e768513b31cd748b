//! Stable dimensional types.
//!
//! A space with a one-point top derivative is stable when removing a clopen
//! set that misses the top point never lowers its type. A clopen set missing
//! the glue point of a `Lim` lies in finitely many rings, so the smallest
//! such complement is the tail-only space and stability reduces to
//! `e ≤_E tail_only(e)`. Stable types of level `n` are therefore tail-only
//! spaces whose ring holds lower-level stable types once or infinitely
//! often.

use serde::{Deserialize, Serialize};

use crate::embed::{flatten, Engine, Mode, Verdict};
use crate::error::ScatteredError;
use crate::spacexpr::{derivative_iter, normalize, point_count, rank, Mult, PointCount, Ring, SpaceExpr};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ClassId {
    pub level: usize,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableDescriptor {
    pub class: ClassId,
    /// Lower-level classes in the ring, with how often they occur.
    pub tail_spec: Vec<(ClassId, Mode)>,
    pub representative: String,
}

/// Class representatives per level; a level is complete once enumerated.
#[derive(Clone, Debug, Default)]
pub struct TypeClassTable {
    levels: Vec<Vec<SpaceExpr>>,
    complete: Vec<bool>,
}

impl TypeClassTable {
    pub fn new() -> Self {
        TypeClassTable {
            levels: vec![vec![SpaceExpr::Point]],
            complete: vec![true],
        }
    }

    pub fn level(&self, n: usize) -> &[SpaceExpr] {
        self.levels.get(n).map_or(&[], |v| v.as_slice())
    }

    pub fn is_complete(&self, n: usize) -> bool {
        self.complete.get(n).copied().unwrap_or(false)
    }

    pub fn get(&self, id: ClassId) -> &SpaceExpr {
        &self.levels[id.level][id.index]
    }

    /// Enumerates every level up to `n`.
    pub fn ensure(&mut self, engine: &mut Engine, n: usize) -> Result<(), ScatteredError> {
        for k in 1..=n {
            if !self.is_complete(k) {
                let reps = enumerate_level(engine, self, k)?;
                self.set_level(k, reps, true);
            }
        }
        Ok(())
    }

    fn set_level(&mut self, k: usize, reps: Vec<SpaceExpr>, complete: bool) {
        while self.levels.len() <= k {
            self.levels.push(Vec::new());
            self.complete.push(false);
        }
        self.levels[k] = reps;
        self.complete[k] = complete;
    }

    /// The class of a stable piece, adding it to an incomplete level if new.
    pub fn classify(&mut self, engine: &mut Engine, e: &SpaceExpr) -> Result<ClassId, ScatteredError> {
        let level = rank(e).saturating_sub(1);
        if let Some(index) = self.level(level).iter().position(|r| engine.same_type(r, e)) {
            return Ok(ClassId { level, index });
        }
        if self.is_complete(level) {
            return Err(ScatteredError::Undecided(e.to_string(), format!("level {level} classes")));
        }
        let mut reps = self.level(level).to_vec();
        reps.push(e.clone());
        let index = reps.len() - 1;
        self.set_level(level, reps, false);
        Ok(ClassId { level, index })
    }

    pub fn descriptor(&mut self, engine: &mut Engine, e: &SpaceExpr) -> Result<StableDescriptor, ScatteredError> {
        let class = self.classify(engine, e)?;
        let rep = self.get(class).clone();
        let mut tail_spec = Vec::new();
        if let SpaceExpr::Lim { tail, .. } = &rep {
            for (x, m) in &tail.entries {
                for (g, k) in flatten(x) {
                    let mode = if m.is_omega() || k.is_omega() { Mode::Omega } else { Mode::One };
                    tail_spec.push((self.classify(engine, &g.to_expr())?, mode));
                }
            }
        }
        tail_spec.sort();
        tail_spec.dedup_by(|b, a| a.0 == b.0 && {
            a.1 = a.1.max(b.1);
            true
        });
        Ok(StableDescriptor {
            class,
            tail_spec,
            representative: rep.to_string(),
        })
    }
}

fn has_single_top(e: &SpaceExpr) -> bool {
    let r = rank(e);
    r >= 1 && point_count(&derivative_iter(e, r - 1)) == PointCount::Finite(1)
}

/// Whether `e` is stable; `e` must be a point or a `Lim` with a one-point
/// top derivative.
pub fn is_stable(e: &SpaceExpr) -> Result<Verdict, ScatteredError> {
    is_stable_with(&mut Engine::default(), e)
}

pub fn is_stable_with(engine: &mut Engine, e: &SpaceExpr) -> Result<Verdict, ScatteredError> {
    let e = normalize(e);
    let shaped = matches!(e, SpaceExpr::Point | SpaceExpr::Lim { .. });
    if !shaped || !has_single_top(&e) {
        return Err(ScatteredError::NoSingleTop(e.to_string()));
    }
    Ok(engine.decide_embed(&e, &e.tail_only()))
}

/// Candidate rings over all lower classes: each absent, once or `ω`, with
/// at least one class of level `n - 1`. Levels below `n` must be complete
/// in `table`.
pub fn candidates(table: &TypeClassTable, n: usize) -> Vec<SpaceExpr> {
    let below: Vec<(usize, &SpaceExpr)> = (0..n)
        .flat_map(|k| table.level(k).iter().map(move |r| (k, r)))
        .collect();
    let total = 3usize.pow(below.len() as u32);
    let mut out: Vec<SpaceExpr> = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut ring = Vec::new();
        let mut top = false;
        for &(k, r) in &below {
            match c % 3 {
                1 => ring.push((r.clone(), Mult::ONE)),
                2 => ring.push((r.clone(), Mult::Omega)),
                _ => {}
            }
            top |= c % 3 != 0 && k + 1 == n;
            c /= 3;
        }
        if top {
            out.push(normalize(&SpaceExpr::lim(Vec::new(), Ring::new(ring))));
        }
    }
    out.sort_by_cached_key(|e| (e.size(), e.to_string()));
    out.dedup();
    out
}

fn enumerate_level(engine: &mut Engine, table: &TypeClassTable, n: usize) -> Result<Vec<SpaceExpr>, ScatteredError> {
    if n == 0 {
        return Ok(vec![SpaceExpr::Point]);
    }
    let cands = candidates(table, n);
    let mut reps: Vec<SpaceExpr> = Vec::new();
    for c in cands {
        if !engine.embeds(&c, &c.tail_only()) {
            continue;
        }
        if !reps.iter().any(|r| engine.same_type(r, &c)) {
            reps.push(c);
        }
    }
    for (i, a) in reps.iter().enumerate() {
        for b in &reps[i + 1..] {
            let v = engine.decide_same_type(a, b);
            if !v.is_no() {
                return Err(ScatteredError::Undecided(a.to_string(), b.to_string()));
            }
        }
    }
    Ok(reps)
}

/// Class representatives of level `n`.
pub fn enumerate_stable(n: usize) -> Result<Vec<SpaceExpr>, ScatteredError> {
    let mut engine = Engine::default();
    let mut table = TypeClassTable::new();
    table.ensure(&mut engine, n)?;
    Ok(table.level(n).to_vec())
}

/// Splits `e` into stable clopen parts and drops parts that do not change
/// the type of the sum.
pub fn stable_decompose(e: &SpaceExpr) -> Result<Vec<(StableDescriptor, Mult)>, ScatteredError> {
    let mut engine = Engine::default();
    let mut table = TypeClassTable::new();
    stable_decompose_with(&mut engine, &mut table, e)
}

pub fn stable_decompose_with(
    engine: &mut Engine,
    table: &mut TypeClassTable,
    e: &SpaceExpr,
) -> Result<Vec<(StableDescriptor, Mult)>, ScatteredError> {
    let e = normalize(e);
    let pieces = flatten(&e);
    let top = pieces.iter().map(|(g, _)| g.rank()).max().unwrap_or(0);
    table.ensure(engine, top.saturating_sub(1).min(2))?;
    let mut parts: Vec<(StableDescriptor, Mult)> = Vec::new();
    for (g, m) in &pieces {
        let d = table.descriptor(engine, &g.to_expr())?;
        match parts.iter_mut().find(|(p, _)| p.class == d.class) {
            Some((_, k)) => *k = k.add(*m),
            None => parts.push((d, *m)),
        }
    }
    parts.sort_by_key(|(d, _)| d.class);
    let realize = |parts: &[(StableDescriptor, Mult)], table: &TypeClassTable| {
        normalize(&SpaceExpr::sum(
            parts.iter().map(|(d, m)| (table.get(d.class).clone(), *m)).collect(),
        ))
    };
    let mut i = 0;
    while i < parts.len() && parts.len() > 1 {
        let mut rest = parts.clone();
        rest.remove(i);
        if engine.same_type(&realize(&rest, table), &e) {
            parts = rest;
        } else {
            i += 1;
        }
    }
    let v = engine.decide_same_type(&realize(&parts, table), &e);
    if !v.is_yes() {
        return Err(ScatteredError::Undecided(realize(&parts, table).to_string(), e.to_string()));
    }
    Ok(parts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PosetFormat {
    Dot,
    Json,
}

#[derive(Serialize)]
struct PosetJson {
    level: usize,
    classes: Vec<ClassJson>,
    edges: Vec<[usize; 2]>,
}

#[derive(Serialize)]
struct ClassJson {
    id: usize,
    level: usize,
    expr: String,
}

/// Classes as `(level, representative)` and Hasse edges between their indices.
pub type Poset = (Vec<(usize, SpaceExpr)>, Vec<[usize; 2]>);

/// Classes of level `≤ n` ordered by level, size and printed form, with the
/// covering pairs of `≤_E`.
pub fn poset(engine: &mut Engine, table: &mut TypeClassTable, n: usize) -> Result<Poset, ScatteredError> {
    table.ensure(engine, n)?;
    let mut nodes: Vec<(usize, SpaceExpr)> = (0..=n)
        .flat_map(|k| table.level(k).iter().map(move |r| (k, r.clone())))
        .collect();
    nodes.sort_by_cached_key(|(k, e)| (*k, e.size(), e.to_string()));
    let len = nodes.len();
    let mut le = vec![vec![false; len]; len];
    for i in 0..len {
        for j in 0..len {
            if i == j {
                le[i][j] = true;
                continue;
            }
            let v = engine.decide_embed(&nodes[i].1, &nodes[j].1);
            if v.is_unknown() {
                return Err(ScatteredError::Undecided(nodes[i].1.to_string(), nodes[j].1.to_string()));
            }
            le[i][j] = v.is_yes();
        }
    }
    let lt = |i: usize, j: usize| i != j && le[i][j] && !le[j][i];
    let mut edges = Vec::new();
    for i in 0..len {
        for j in 0..len {
            if lt(i, j) && !(0..len).any(|k| lt(i, k) && lt(k, j)) {
                edges.push([i, j]);
            }
        }
    }
    Ok((nodes, edges))
}

pub fn poset_export(n: usize, format: PosetFormat) -> Result<String, ScatteredError> {
    let mut engine = Engine::default();
    let mut table = TypeClassTable::new();
    let (nodes, edges) = poset(&mut engine, &mut table, n)?;
    Ok(match format {
        PosetFormat::Dot => {
            let mut s = String::from("digraph stable {\n");
            for (i, (_, e)) in nodes.iter().enumerate() {
                s.push_str(&format!("  n{i} [label=\"{e}\"];\n"));
            }
            for [i, j] in &edges {
                s.push_str(&format!("  n{i} -> n{j};\n"));
            }
            s.push_str("}\n");
            s
        }
        PosetFormat::Json => serde_json::to_string(&PosetJson {
            level: n,
            classes: nodes
                .iter()
                .enumerate()
                .map(|(id, (level, e))| ClassJson { id, level: *level, expr: e.to_string() })
                .collect(),
            edges,
        })
        .expect("poset serializes"),
    })
}

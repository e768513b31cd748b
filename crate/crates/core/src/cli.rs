//! Command-line front end.
//!
//! Exit codes: 0 yes or success, 1 no, 2 unknown, 3 usage or parse error,
//! 4 domain error.

use std::fmt::Write as _;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::embed::{
    check_homeomorphism_obstruction, check_obstruction, check_schema, ku_compactify, ms_canonical,
    Answer, Budget, Engine, Verdict, Witness,
};
use crate::error::ScatteredError;
use crate::families::{corpus, family_xf, witness_x, BitPrefix};
use crate::ordinal::{cb_rank_of_ordinal, embed_bound_e, parse_ordinal, Ordinal};
use crate::spacexpr::{
    derivative_iter, is_compact, layer_signature, normalize, parse_expr, rank, rank_by_derivative,
    SpaceExpr,
};
use crate::stable::{poset_export, stable_decompose_with, PosetFormat, TypeClassTable};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 3;
pub const EXIT_ERROR: i32 = 4;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// `slope,width[,depth]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BudgetArg(pub Budget);

impl FromStr for BudgetArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if !(2..=3).contains(&parts.len()) {
            return Err("expected slope,width[,depth]".into());
        }
        let num = |t: &str| t.parse::<u64>().map_err(|e| format!("{t:?}: {e}"));
        let slope = num(parts[0])?;
        let width = num(parts[1])?;
        if width == 0 || slope < width {
            return Err("need 1 <= width <= slope".into());
        }
        let depth = parts.get(2).map(|t| num(t).map(|d| d as usize)).transpose()?;
        Ok(BudgetArg(Budget { slope, width, depth }))
    }
}

#[derive(Debug, Parser)]
#[command(name = "scattered", version, about = "Countable scattered spaces and their dimensional types")]
pub struct Cli {
    /// Schema search bounds.
    #[arg(long, global = true, value_name = "SLOPE,WIDTH[,DEPTH]", default_value = "4,4")]
    pub budget: BudgetArg,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form of an expression.
    Norm { expr: String },
    /// Iterated derivative.
    Deriv {
        expr: String,
        #[arg(short = 'k', long = "times", default_value_t = 1)]
        times: usize,
    },
    /// Cantor-Bendixson rank.
    Rank { expr: String },
    /// Compactness; exits 1 when not compact.
    Compact { expr: String },
    /// The ordinal `w^a*n+1` homeomorphic to a compact expression.
    Canon { expr: String },
    /// Decide `A` embeds in `B`.
    Embed { a: String, b: String },
    /// Decide mutual embeddability.
    Sametype { a: String, b: String },
    /// Decide homeomorphism.
    Homeo { a: String, b: String },
    /// A compact expression containing the input.
    Compactify { expr: String },
    /// Ordinal sum `a + b`.
    OrdAdd { a: String, b: String },
    /// Ordinal product `a * b`.
    OrdMul { a: String, b: String },
    /// Prints `less`, `equal` or `greater`.
    OrdCmp { a: String, b: String },
    /// Cantor-Bendixson rank of the ordinal space `[0, a)`.
    OrdRank { a: String },
    /// Least ordinal containing every space with one-point `a`-th derivative.
    #[command(name = "E-bound")]
    EBound { a: String },
    /// `X(0) = 1`, `X(m) = I(X(m-1))`.
    WitnessX { m: usize },
    /// Member of the binary family at a finite prefix.
    FamilyXf { bits: String },
    /// Stable classes with one-point `n`-th derivative.
    StableEnum { n: usize },
    /// Decomposition into stable clopen parts.
    Decompose { expr: String },
    /// Embeddability order on stable classes up to level `n`.
    Poset {
        n: usize,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run a built-in check suite.
    Suite { name: String },
}

/// Collected output of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_YES, stdout, stderr: String::new() }
    }

    fn with_code(code: i32, stdout: String) -> Self {
        Outcome { code, stdout, stderr: String::new() }
    }

    fn error(code: i32, msg: impl std::fmt::Display) -> Self {
        Outcome { code, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<ScatteredError> for Failure {
    fn from(e: ScatteredError) -> Self {
        match e {
            ScatteredError::Parse(p) => Failure::Usage(p.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

type Run = Result<Outcome, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match dispatch(&cli) {
        Ok(o) => o,
        Err(Failure::Usage(m)) => Outcome::error(EXIT_USAGE, m),
        Err(Failure::Domain(m)) => Outcome::error(EXIT_ERROR, m),
    }
}

fn space(text: &str) -> Result<SpaceExpr, Failure> {
    parse_expr(text)
        .map(|e| normalize(&e))
        .map_err(|e| Failure::Usage(format!("{text:?}: {e}")))
}

fn ordinal(text: &str) -> Result<Ordinal, Failure> {
    parse_ordinal(text).map_err(|e| Failure::Usage(format!("{text:?}: {e}")))
}

fn line(s: impl std::fmt::Display) -> String {
    format!("{s}\n")
}

fn value(format: Format, text: String, j: serde_json::Value) -> Outcome {
    match format {
        Format::Text => Outcome::ok(line(text)),
        Format::Json => Outcome::ok(line(j)),
    }
}

fn dispatch(cli: &Cli) -> Run {
    let f = cli.format;
    let budget = cli.budget.0;
    match &cli.command {
        Command::Norm { expr } => {
            let e = space(expr)?;
            Ok(value(f, e.to_string(), json!({ "expr": e.to_string(), "size": e.size() })))
        }
        Command::Deriv { expr, times } => {
            let d = normalize(&derivative_iter(&space(expr)?, *times));
            Ok(value(f, d.to_string(), json!({ "expr": d.to_string(), "times": times })))
        }
        Command::Rank { expr } => {
            let r = rank(&space(expr)?);
            Ok(value(f, r.to_string(), json!({ "rank": r })))
        }
        Command::Compact { expr } => {
            let c = is_compact(&space(expr)?);
            let mut o = value(f, c.to_string(), json!({ "compact": c }));
            o.code = if c { EXIT_YES } else { EXIT_NO };
            Ok(o)
        }
        Command::Canon { expr } => {
            let k = ms_canonical(&space(expr)?)?;
            Ok(value(f, k.to_string(), json!({ "alpha": k.alpha, "n": k.n, "ordinal": k.to_string() })))
        }
        Command::Embed { a, b } => {
            let v = Engine::new(budget).decide_embed(&space(a)?, &space(b)?);
            Ok(verdict(f, &v))
        }
        Command::Sametype { a, b } => {
            let v = Engine::new(budget).decide_same_type(&space(a)?, &space(b)?);
            Ok(verdict(f, &v))
        }
        Command::Homeo { a, b } => {
            let v = Engine::new(budget).decide_homeomorphic(&space(a)?, &space(b)?);
            Ok(verdict(f, &v))
        }
        Command::Compactify { expr } => {
            let k = ku_compactify(&space(expr)?);
            Ok(value(f, k.to_string(), json!({ "expr": k.to_string() })))
        }
        Command::OrdAdd { a, b } => {
            let r = ordinal(a)?.add(&ordinal(b)?);
            Ok(value(f, r.to_string(), json!({ "ordinal": r.to_string() })))
        }
        Command::OrdMul { a, b } => {
            let r = ordinal(a)?.mul(&ordinal(b)?);
            Ok(value(f, r.to_string(), json!({ "ordinal": r.to_string() })))
        }
        Command::OrdCmp { a, b } => {
            let word = match ordinal(a)?.cmp(&ordinal(b)?) {
                std::cmp::Ordering::Less => "less",
                std::cmp::Ordering::Equal => "equal",
                std::cmp::Ordering::Greater => "greater",
            };
            Ok(value(f, word.to_string(), json!({ "order": word })))
        }
        Command::OrdRank { a } => {
            let r = cb_rank_of_ordinal(&ordinal(a)?)?;
            Ok(value(f, r.to_string(), json!({ "rank": r.to_string() })))
        }
        Command::EBound { a } => {
            let r = embed_bound_e(&ordinal(a)?);
            Ok(value(f, r.to_string(), json!({ "ordinal": r.to_string() })))
        }
        Command::WitnessX { m } => {
            let x = witness_x(*m);
            Ok(value(f, x.to_string(), json!({ "m": m, "expr": x.to_string() })))
        }
        Command::FamilyXf { bits } => {
            let p: BitPrefix = bits.parse()?;
            let x = family_xf(&p);
            let sig = layer_signature(&x);
            let text = format!(
                "{x}\nlayers: {}",
                sig.iter().map(|b| if *b { "1" } else { "0" }).collect::<String>()
            );
            Ok(value(f, text, json!({ "bits": p.to_string(), "expr": x.to_string(), "layer_signature": sig })))
        }
        Command::StableEnum { n } => {
            let mut engine = Engine::new(budget);
            let mut table = TypeClassTable::new();
            table.ensure(&mut engine, *n)?;
            let reps: Vec<String> = table.level(*n).iter().map(|e| e.to_string()).collect();
            Ok(match f {
                Format::Text => {
                    let mut s = format!("{} classes\n", reps.len());
                    for r in &reps {
                        s.push_str(&line(r));
                    }
                    Outcome::ok(s)
                }
                Format::Json => Outcome::ok(line(json!({ "level": n, "count": reps.len(), "classes": reps }))),
            })
        }
        Command::Decompose { expr } => {
            let mut engine = Engine::new(budget);
            let mut table = TypeClassTable::new();
            let parts = stable_decompose_with(&mut engine, &mut table, &space(expr)?)?;
            Ok(match f {
                Format::Text => {
                    let mut s = String::new();
                    for (d, m) in &parts {
                        let _ = writeln!(s, "{m} * {} [{}.{}]", d.representative, d.class.level, d.class.index);
                    }
                    Outcome::ok(s)
                }
                Format::Json => {
                    let items: Vec<_> = parts
                        .iter()
                        .map(|(d, m)| json!({ "descriptor": d, "mult": m }))
                        .collect();
                    Outcome::ok(line(serde_json::Value::Array(items)))
                }
            })
        }
        Command::Poset { n, dot, json } => {
            let format = match (dot, json, f) {
                (true, _, _) => PosetFormat::Dot,
                (_, true, _) | (_, _, Format::Json) => PosetFormat::Json,
                _ => PosetFormat::Dot,
            };
            let doc = poset_export(*n, format)?;
            Ok(Outcome::ok(if doc.ends_with('\n') { doc } else { line(doc) }))
        }
        Command::Suite { name } => run_suite(name, cli.seed, budget, f),
    }
}

fn verdict(f: Format, v: &Verdict) -> Outcome {
    let code = match v.answer {
        Answer::Yes => EXIT_YES,
        Answer::No => EXIT_NO,
        Answer::Unknown => EXIT_UNKNOWN,
    };
    let text = match f {
        Format::Json => line(v.to_json()),
        Format::Text => {
            let mut s = String::new();
            match v.answer {
                Answer::Yes => {
                    s.push_str("yes\n");
                    match &v.witness {
                        Some(Witness::Schema(w)) => {
                            let (width, slope, depth) = w.dimensions();
                            let _ = writeln!(s, "schema: {} placements, width {width}, slope {slope}, depth {depth}", w.placements.len());
                        }
                        Some(Witness::Pair { .. }) => s.push_str("schemas in both directions\n"),
                        Some(Witness::Canonical { canonical }) => {
                            let _ = writeln!(s, "both homeomorphic to {canonical}");
                        }
                        Some(Witness::Identical { normal_form }) => {
                            let _ = writeln!(s, "same normal form {normal_form}");
                        }
                        None => {}
                    }
                }
                Answer::No => {
                    s.push_str("no\n");
                    if let Some(ob) = &v.obstruction {
                        let kind = serde_json::to_value(ob.kind).expect("kind serializes");
                        let _ = writeln!(s, "{}: {}", kind.as_str().unwrap_or_default(), ob.evidence.claim);
                        let _ = writeln!(s, "  {}; {}", ob.evidence.lhs, ob.evidence.rhs);
                    }
                }
                Answer::Unknown => {
                    let b = v.budget;
                    let depth = b.depth.map_or("rank".to_string(), |d| d.to_string());
                    let _ = writeln!(s, "unknown\nno witness within slope {}, width {}, depth {depth}", b.slope, b.width);
                }
            }
            s
        }
    };
    Outcome::with_code(code, text)
}

pub const SUITES: [&str; 5] = ["ordinal-laws", "derivative-rank", "embed-corpus", "stable-counts", "family-xf"];

struct Tally {
    name: &'static str,
    passed: usize,
    total: usize,
    notes: Vec<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, passed: 0, total: 0, notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.total += 1;
        if ok {
            self.passed += 1;
        } else if self.notes.len() < 10 {
            self.notes.push(what());
        }
    }
}

fn run_suite(name: &str, seed: u64, budget: Budget, f: Format) -> Run {
    let (tally, summary) = match name {
        "ordinal-laws" => {
            let t = ordinal_laws(seed);
            let s = format!("{}/{} checks passed (seed {seed})", t.passed, t.total);
            (t, s)
        }
        "derivative-rank" => {
            let t = derivative_rank();
            let s = format!("{}/{} checks passed", t.passed, t.total);
            (t, s)
        }
        "embed-corpus" => embed_corpus(budget),
        "stable-counts" => {
            let t = stable_counts(budget)?;
            let s = format!("{}/{} expected counts matched", t.passed, t.total);
            (t, s)
        }
        "family-xf" => {
            let t = family_pairs(budget);
            let s = format!("{}/{} checks passed: all prefix pairs answered no", t.passed, t.total);
            (t, s)
        }
        other => {
            return Err(Failure::Usage(format!("unknown suite {other:?}; known: {}", SUITES.join(", "))));
        }
    };
    let ok = tally.passed == tally.total;
    let text = match f {
        Format::Text => {
            let mut s = format!("{}: {summary}\n", tally.name);
            for n in &tally.notes {
                let _ = writeln!(s, "  FAIL {n}");
            }
            s
        }
        Format::Json => line(json!({
            "suite": tally.name,
            "passed": tally.passed,
            "total": tally.total,
            "summary": summary,
            "failures": tally.notes,
        })),
    };
    Ok(Outcome::with_code(if ok { EXIT_YES } else { EXIT_NO }, text))
}

/// A random ordinal with exponents nested at most `depth` deep.
pub fn random_ordinal(rng: &mut impl Rng, depth: usize) -> Ordinal {
    let terms = rng.gen_range(0..=3);
    Ordinal::from_terms((0..terms).map(|_| {
        let exp = if depth == 0 {
            Ordinal::nat(rng.gen_range(0..=3))
        } else {
            random_ordinal(rng, depth - 1)
        };
        (exp, rng.gen_range(1..=4))
    }))
}

fn ordinal_laws(seed: u64) -> Tally {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tally::new("ordinal-laws");
    let zero = Ordinal::zero();
    let one = Ordinal::one();
    for _ in 0..500 {
        let a = random_ordinal(&mut rng, 2);
        let b = random_ordinal(&mut rng, 2);
        let c = random_ordinal(&mut rng, 1);
        let show = || format!("a={a} b={b} c={c}");
        t.check(a.add(&b).add(&c) == a.add(&b.add(&c)), || format!("addition associative: {}", show()));
        t.check(a.mul(&b).mul(&c) == a.mul(&b.mul(&c)), || format!("multiplication associative: {}", show()));
        t.check(a.mul(&b.add(&c)) == a.mul(&b).add(&a.mul(&c)), || format!("left distributive: {}", show()));
        t.check(a.add(&zero) == a && zero.add(&a) == a, || format!("additive identity: {a}"));
        t.check(a.mul(&one) == a && one.mul(&a) == a, || format!("multiplicative identity: {a}"));
        t.check(a.add(&b) >= b && a.add(&b) >= a, || format!("sums dominate summands: {}", show()));
        if b < c {
            t.check(a.add(&b) < a.add(&c), || format!("addition strictly monotone on the right: {}", show()));
        }
        t.check(parse_ordinal(&a.to_string()).as_ref() == Ok(&a), || format!("print then parse: {a}"));
    }
    t
}

fn derivative_rank() -> Tally {
    let mut t = Tally::new("derivative-rank");
    for e in corpus(6) {
        let r = rank(&e);
        t.check(rank_by_derivative(&e) == r, || format!("rank agreement on {e}"));
        t.check(derivative_iter(&e, r).is_empty(), || format!("derivative^rank empty on {e}"));
        t.check(normalize(&e) == e, || format!("normalize idempotent on {e}"));
    }
    for a in successors_below_w4() {
        let e = crate::spacexpr::ord_to_expr(&a).expect("finite exponents");
        let r = cb_rank_of_ordinal(&a).expect("nonzero");
        t.check(r == Ordinal::nat(rank(&e) as u64), || format!("ordinal rank of {a}"));
    }
    t
}

/// Successor ordinals below `w^4` with coefficients at most 3.
pub fn successors_below_w4() -> Vec<Ordinal> {
    let mut out = Vec::new();
    for c3 in 0..=3u64 {
        for c2 in 0..=3 {
            for c1 in 0..=3 {
                for c0 in 1..=3 {
                    out.push(Ordinal::from_terms(
                        [(3, c3), (2, c2), (1, c1), (0, c0)].map(|(e, c)| (Ordinal::nat(e), c)),
                    ));
                }
            }
        }
    }
    out
}

fn embed_corpus(budget: Budget) -> (Tally, String) {
    let mut t = Tally::new("embed-corpus");
    let items = corpus(4);
    let mut engine = Engine::new(budget);
    let (mut yes, mut no, mut unknown) = (0, 0, 0);
    for x in &items {
        for y in &items {
            let v = engine.decide_embed(x, y);
            match v.answer {
                Answer::Yes => yes += 1,
                Answer::No => no += 1,
                Answer::Unknown => unknown += 1,
            }
            if x == y {
                t.check(v.is_yes(), || format!("reflexive on {x}"));
            }
            if let Some(s) = v.schema() {
                t.check(check_schema(x, y, s), || format!("schema for {x} into {y}"));
            }
            if let Some(ob) = &v.obstruction {
                t.check(check_obstruction(x, y, ob), || format!("obstruction for {x} into {y}"));
                t.check(rank(x) > rank(y) || ob.kind != crate::embed::ObstructionKind::Rank, || {
                    format!("rank obstruction for {x} into {y}")
                });
            }
            if v.is_yes() {
                t.check(rank(x) <= rank(y), || format!("rank monotone for {x} into {y}"));
            }
        }
    }
    let s = format!(
        "{} expressions, {} pairs: {yes} yes, {no} no, {unknown} unknown; {}/{} checks passed",
        items.len(),
        items.len() * items.len(),
        t.passed,
        t.total
    );
    (t, s)
}

fn stable_counts(budget: Budget) -> Result<Tally, Failure> {
    let mut t = Tally::new("stable-counts");
    let mut engine = Engine::new(budget);
    let mut table = TypeClassTable::new();
    for (n, want) in [(1usize, 2usize), (2, 5)] {
        table.ensure(&mut engine, n)?;
        let got = table.level(n).len();
        t.check(got == want, || format!("level {n}: {got} classes, expected {want}"));
    }
    Ok(t)
}

fn family_pairs(budget: Budget) -> Tally {
    let mut t = Tally::new("family-xf");
    let prefixes = BitPrefix::all_of_length(6);
    let spaces: Vec<SpaceExpr> = prefixes.iter().map(family_xf).collect();
    let mut engine = Engine::new(budget);
    for (i, x) in spaces.iter().enumerate() {
        let sig = layer_signature(x);
        let want: Vec<bool> = prefixes[i].bits().iter().map(|b| !b).collect();
        t.check(sig.starts_with(&want), || format!("layer signature of {}", prefixes[i]));
        for (j, y) in spaces.iter().enumerate().skip(i + 1) {
            let v = engine.decide_homeomorphic(x, y);
            let certified = v.obstruction.as_ref().is_some_and(|ob| check_homeomorphism_obstruction(x, y, ob));
            t.check(v.is_no() && certified, || format!("{} vs {}: {:?}", prefixes[i], prefixes[j], v.answer));
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> Outcome {
        run(std::iter::once("scattered").chain(args.iter().copied()))
    }

    #[test]
    fn embed_exit_codes() {
        assert_eq!(call(&["embed", "G(1)", "I(1)"]).code, EXIT_YES);
        assert_eq!(call(&["embed", "I(1)", "G(1)"]).code, EXIT_NO);
        assert_eq!(call(&["embed", "G(", "I(1)"]).code, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).code, EXIT_USAGE);
        assert_eq!(call(&["--help"]).code, EXIT_YES);
    }

    #[test]
    fn canon_prints_ordinal() {
        let o = call(&["canon", "sum{3*G(1),1*1}"]);
        assert_eq!((o.code, o.stdout.as_str()), (EXIT_YES, "w*3+1\n"));
        assert_eq!(call(&["canon", "I(1)"]).code, EXIT_ERROR);
    }

    #[test]
    fn ordinal_commands() {
        assert_eq!(call(&["ord-add", "1", "w"]).stdout, "w\n");
        assert_eq!(call(&["ord-mul", "w", "2"]).stdout, "w*2\n");
        assert_eq!(call(&["ord-cmp", "w^w", "w^3*9"]).stdout, "greater\n");
        assert_eq!(call(&["ord-rank", "w^3+1"]).stdout, "4\n");
        assert_eq!(call(&["E-bound", "2"]).stdout, "w^4+1\n");
    }

    #[test]
    fn stable_enum_json() {
        let o = call(&["stable-enum", "2", "--format", "json"]);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!((o.code, v["count"].as_u64()), (EXIT_YES, Some(5)));
    }

    #[test]
    fn budget_flag() {
        assert_eq!(
            "5,3,2".parse::<BudgetArg>(),
            Ok(BudgetArg(Budget { slope: 5, width: 3, depth: Some(2) }))
        );
        assert!("3,5".parse::<BudgetArg>().is_err());
        let x = "lim(;{1*G(G(1)),1*I(G(1)),1*G(I(1)),1*I(I(1)),1*lim(;{w*G(1),1*I(1)})})";
        assert_eq!(call(&["embed", x, "G(I(I(1)))"]).code, EXIT_UNKNOWN);
        assert_eq!(call(&["--budget", "5,5", "embed", x, "G(I(I(1)))"]).code, EXIT_YES);
    }

    #[test]
    fn suites() {
        let o = call(&["suite", "stable-counts"]);
        assert_eq!((o.code, o.stdout.as_str()), (EXIT_YES, "stable-counts: 2/2 expected counts matched\n"));
        let a = call(&["suite", "ordinal-laws", "--seed", "7"]);
        assert_eq!(a.code, EXIT_YES);
        assert_eq!(a, call(&["suite", "ordinal-laws", "--seed", "7"]));
        assert_eq!(call(&["suite", "nope"]).code, EXIT_USAGE);
    }
}

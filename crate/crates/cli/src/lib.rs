//! Command-line front end: argument parsing, report assembly, JSON and text
//! rendering.

use clap::{Args, Parser, Subcommand, ValueEnum};
use kdyn_core::bounds::{bound_report, BoundConfig, BoundExpr, DigitEstimate, Variant};
use kdyn_core::dynamics::{improve_reduction, isotriviality_diagnostic, EndoMap, Improvement, Isotriviality};
use kdyn_core::field::Place;
use kdyn_core::orbits::{
    classify, orbit, periodic_points, preimages, preper_set, Classification, OrbitCaps, OrbitStatus, PreperCaps,
    DEFAULT_COMPOSITION_CAP, DEFAULT_HEIGHT_CAP, DEFAULT_MAX_ITER, DEFAULT_PERIOD_CAP,
};
use kdyn_core::parse::{parse_funcelem, parse_map, parse_place, parse_places, parse_point};
use kdyn_core::sunits::{nondegenerate_count, solve_unit_equation, PlaceSet};
use kdyn_core::verify::{run_root_oracle, run_suite};
use kdyn_core::{Error, ErrorKind, Result};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::fmt::Write as _;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_CAP: i32 = 4;

/// Exact values up to this many digits are always printed.
const SHORT_DIGITS: usize = 64;

/// Largest number of monomial pairs `sunit-solve` will enumerate.
const UNIT_PAIR_CAP: u128 = 1 << 24;

#[derive(Parser, Debug)]
#[command(name = "kdyn", version, about = "Arithmetic dynamics over k(t)")]
pub struct Cli {
    #[command(flatten)]
    pub global: Globals,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Globals {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for random suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ITER)]
    pub max_iter: usize,
    /// Naive height (degree or coefficient bits) treated as escape.
    #[arg(long, global = true, default_value_t = DEFAULT_HEIGHT_CAP)]
    pub height_cap: u64,
    /// Exponent box `E` for S-unit enumeration.
    #[arg(long = "box", global = true, default_value_t = 2)]
    pub box_bound: u32,
    /// Largest period used to seed the preperiodic closure.
    #[arg(long, global = true, default_value_t = DEFAULT_PERIOD_CAP)]
    pub period_cap: usize,
    /// Place set S, e.g. `0,1,inf`.
    #[arg(long, global = true)]
    pub places: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduction, isotriviality and bounds for a map.
    Analyze {
        #[arg(long, allow_hyphen_values = true)]
        map: String,
        /// Also compute the preperiodic graph.
        #[arg(long)]
        preper: bool,
    },
    /// Forward orbit of a point.
    Orbit {
        #[arg(long, allow_hyphen_values = true)]
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Preperiodicity of a point.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Preperiodic points by backward closure of small cycles.
    Preper {
        #[arg(long, allow_hyphen_values = true)]
        map: String,
    },
    /// Points of exact period n.
    Periodic {
        #[arg(long, allow_hyphen_values = true)]
        map: String,
        #[arg(long, short)]
        n: usize,
    },
    /// K-rational preimages of a point.
    Preimages {
        #[arg(long, allow_hyphen_values = true)]
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// The explicit period and orbit-size bounds.
    Bounds {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        s: u64,
        /// Print N in full when it is materialized.
        #[arg(long, conflicts_with = "digits")]
        exact: bool,
        /// Only digit counts for N and B.
        #[arg(long)]
        digits: bool,
        #[arg(long, value_enum, default_value_t = VariantArg::Statement)]
        variant: VariantArg,
    },
    /// Solutions of `λx + μy = 1` in S-units within the exponent box.
    SunitSolve {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Search for a conjugation lowering the resultant valuation at a place.
    ImproveReduction {
        #[arg(long, allow_hyphen_values = true)]
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        place: String,
    },
    /// Run a seeded property suite.
    Verify {
        /// One of the property suites, or `roots` for the root-finder oracle.
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum VariantArg {
    Statement,
    Proof,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Statement => Variant::Statement,
            VariantArg::Proof => Variant::Proof,
        }
    }
}

/// A command result in both views.
#[derive(Clone, Debug)]
pub struct Rendered {
    pub json: Value,
    pub text: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DigitsBlock {
    /// 1: bounds on the number of digits; 2: bounds on the number of digits
    /// of that number.
    pub level: u32,
    pub low: String,
    pub high: String,
}

impl From<DigitEstimate> for DigitsBlock {
    fn from(d: DigitEstimate) -> Self {
        DigitsBlock {
            level: d.level,
            low: d.low.to_string(),
            high: d.high.to_string(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ExprBlock {
    pub formula: String,
    pub exact: Option<String>,
    pub digits: DigitsBlock,
}

impl ExprBlock {
    fn new(e: &BoundExpr, with_exact: bool) -> Self {
        let formula = match e {
            BoundExpr::Structured { formula, .. } => formula.clone(),
            BoundExpr::Exact(_) => "exact".into(),
        };
        ExprBlock {
            formula,
            exact: e
                .exact()
                .map(|v| v.to_string())
                .filter(|v| with_exact || v.len() <= SHORT_DIGITS),
            digits: e.digits().into(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BoundsBlock {
    pub d: u64,
    pub s: u64,
    pub variant: String,
    pub b: String,
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "C")]
    pub c: String,
    #[serde(rename = "M")]
    pub m: String,
    #[serde(rename = "D")]
    pub d_bound: String,
    #[serde(rename = "N")]
    pub n: ExprBlock,
    #[serde(rename = "B")]
    pub big_b: ExprBlock,
}

pub fn bounds_block(d: u64, s: u64, variant: Variant, with_exact: bool) -> Result<BoundsBlock> {
    let cfg = BoundConfig {
        variant,
        ..Default::default()
    };
    let r = bound_report(d, s, &cfg)?;
    Ok(BoundsBlock {
        d,
        s,
        variant: variant.label().into(),
        b: r.b.to_string(),
        a: r.a.to_string(),
        c: r.c.to_string(),
        m: r.m.to_string(),
        d_bound: r.d_bound.to_string(),
        n: ExprBlock::new(&r.n, with_exact),
        big_b: ExprBlock::new(&r.big_b, with_exact),
    })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ImprovementEntry {
    pub place: String,
    pub witness: String,
    pub conjugate: String,
    pub valuation_before: i64,
    pub valuation_after: i64,
}

impl ImprovementEntry {
    fn new(p: &Place, imp: &Improvement) -> Self {
        ImprovementEntry {
            place: p.to_string(),
            witness: imp.witness.to_string(),
            conjugate: imp.map.to_string(),
            valuation_before: imp.valuation_before,
            valuation_after: imp.valuation_after,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Verdict {
    pub verdict: String,
    pub detail: String,
}

impl From<&Isotriviality> for Verdict {
    fn from(v: &Isotriviality) -> Self {
        let detail = match v {
            Isotriviality::IsotrivialOverK { witness } => format!("constant coefficients after conjugating by {witness}"),
            Isotriviality::LikelyNonIsotrivial {
                rational_pairs,
                closure_pairs,
                pair_bound,
            } => format!(
                "{closure_pairs} constant pairs over the closure ({rational_pairs} rational), bound {pair_bound}"
            ),
            Isotriviality::Inconclusive { reason } => reason.clone(),
        };
        Verdict {
            verdict: v.label().into(),
            detail,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PreperReport {
    pub count: usize,
    pub vertices: Vec<String>,
    /// Index pairs `(i, j)` with `φ(v_i) = v_j`.
    pub edges: Vec<(usize, usize)>,
    pub cycles: Vec<Vec<String>>,
    pub incomplete: bool,
    pub s: usize,
    pub count_bound: Option<String>,
    pub within_bound: Option<bool>,
    pub notes: Vec<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub map: String,
    pub degree: usize,
    pub resultant: String,
    /// Rational bad places, infinity last.
    pub bad_places: Vec<String>,
    /// Product of the remaining bad finite places, when some are irrational.
    pub bad_irrational: Option<String>,
    /// Number of bad places over the algebraic closure.
    pub minimal_s: usize,
    pub places: Option<Vec<String>>,
    pub good_reduction_outside_places: Option<bool>,
    pub improvements: Vec<ImprovementEntry>,
    pub isotriviality: Verdict,
    pub bounds: Option<BoundsBlock>,
    pub bounds_note: Option<String>,
    pub preper: Option<PreperReport>,
}

fn preper_report(phi: &EndoMap, caps: PreperCaps) -> Result<PreperReport> {
    let g = preper_set(phi, caps)?;
    let index = |p| g.vertices.binary_search(p).expect("edge endpoints are vertices");
    Ok(PreperReport {
        count: g.vertices.len(),
        vertices: g.vertices.iter().map(|p| p.to_string()).collect(),
        edges: g.edges.iter().map(|(a, b)| (index(a), index(b))).collect(),
        cycles: g.cycles.iter().map(|c| c.iter().map(|p| p.to_string()).collect()).collect(),
        incomplete: g.incomplete,
        s: g.s,
        count_bound: g.count_bound.as_ref().map(|b| b.to_string()),
        within_bound: g.within_bound,
        notes: g.notes.clone(),
    })
}

/// Full report for a map and an optional place set.
pub fn analyze(map_text: &str, s_text: Option<&str>) -> Result<AnalysisReport> {
    analyze_with(map_text, s_text, None)
}

pub fn analyze_with(map_text: &str, s_text: Option<&str>, preper: Option<PreperCaps>) -> Result<AnalysisReport> {
    let phi = parse_map(map_text)?;
    let s = s_text.map(parse_places).transpose()?;
    let bad = phi.bad_places()?;
    let rational = bad.rational_places();
    let mut improvements = Vec::new();
    for p in &rational {
        if let Some(imp) = improve_reduction(&phi, p)? {
            improvements.push(ImprovementEntry::new(p, &imp));
        }
    }
    let minimal_s = bad.count_over_closure();
    let s_used = s.as_ref().map_or(minimal_s.max(1), |s| s.s()) as u64;
    let (bounds, bounds_note) = match bounds_block(phi.degree() as u64, s_used, Variant::Statement, false) {
        Ok(b) => (Some(b), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let irr = &bad.finite.irrational;
    Ok(AnalysisReport {
        map: phi.to_string(),
        degree: phi.degree(),
        resultant: phi.resultant().to_string(),
        bad_places: rational.iter().map(|p| p.to_string()).collect(),
        bad_irrational: (!irr.is_constant()).then(|| irr.to_string()),
        minimal_s,
        places: s.as_ref().map(|s| s.places().iter().map(|p| p.to_string()).collect()),
        good_reduction_outside_places: s.as_ref().map(|s| phi.has_simple_good_reduction_outside(s)).transpose()?,
        improvements,
        isotriviality: (&isotriviality_diagnostic(&phi)?).into(),
        bounds,
        bounds_note,
        preper: preper.map(|caps| preper_report(&phi, caps)).transpose()?,
    })
}

impl AnalysisReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "map          {}", self.map);
        let _ = writeln!(out, "degree       {}", self.degree);
        let _ = writeln!(out, "resultant    {}", self.resultant);
        let mut bad = self.bad_places.join(", ");
        if let Some(irr) = &self.bad_irrational {
            if !bad.is_empty() {
                bad.push_str(", ");
            }
            let _ = write!(bad, "roots of {irr}");
        }
        let _ = writeln!(out, "bad places   {{{bad}}} ({} over the closure)", self.minimal_s);
        if let (Some(s), Some(good)) = (&self.places, self.good_reduction_outside_places) {
            let verdict = if good { "good" } else { "bad" };
            let _ = writeln!(out, "outside S    {verdict} reduction, S = {{{}}}", s.join(", "));
        }
        for imp in &self.improvements {
            let _ = writeln!(
                out,
                "improvement  at {}: A = {}, valuation {} -> {}, conjugate {}",
                imp.place, imp.witness, imp.valuation_before, imp.valuation_after, imp.conjugate
            );
        }
        let _ = writeln!(out, "isotrivial   {} ({})", self.isotriviality.verdict, self.isotriviality.detail);
        match &self.bounds {
            Some(b) => out.push_str(&bounds_text(b)),
            None => {
                let _ = writeln!(out, "bounds       unavailable: {}", self.bounds_note.as_deref().unwrap_or(""));
            }
        }
        if let Some(p) = &self.preper {
            out.push_str(&preper_text(p));
        }
        out
    }
}

/// Long decimals as leading digits and length.
fn abbrev(s: &str) -> String {
    if s.len() <= SHORT_DIGITS {
        s.to_string()
    } else {
        format!("{}... ({}-digit number)", &s[..20], s.len())
    }
}

fn expr_text(e: &ExprBlock) -> String {
    let (low, high) = (abbrev(&e.digits.low), abbrev(&e.digits.high));
    match (&e.exact, e.digits.level) {
        (Some(v), _) => v.clone(),
        (None, 1) if low == high => format!("{} ({low} digits)", e.formula),
        (None, 1) => format!("{} ({low} to {high} digits)", e.formula),
        (None, _) => format!("{} (digit count has {low} to {high} digits)", e.formula),
    }
}

fn bounds_text(b: &BoundsBlock) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "bounds       d = {}, s = {}, {} variant", b.d, b.s, b.variant);
    for (k, v) in [("b", &b.b), ("A", &b.a), ("C", &b.c), ("M", &b.m), ("D", &b.d_bound)] {
        let _ = writeln!(out, "  {k:<2} {v}");
    }
    let _ = writeln!(out, "  N  {}", expr_text(&b.n));
    let _ = writeln!(out, "  B  {}", expr_text(&b.big_b));
    out
}

fn preper_text(p: &PreperReport) -> String {
    let mut out = String::new();
    let flag = if p.incomplete { " (incomplete)" } else { "" };
    let _ = writeln!(out, "preperiodic  {} points{flag}", p.count);
    for (i, j) in &p.edges {
        let _ = writeln!(out, "  {} -> {}", p.vertices[*i], p.vertices[*j]);
    }
    for c in &p.cycles {
        let _ = writeln!(out, "  cycle [{}]", c.join(", "));
    }
    if let Some(b) = &p.count_bound {
        let within = match p.within_bound {
            Some(true) => "within",
            Some(false) => "NOT within",
            None => "not compared with",
        };
        let _ = writeln!(out, "  count {within} bound {b}");
    }
    for n in &p.notes {
        let _ = writeln!(out, "  note: {n}");
    }
    out
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

fn require_places(g: &Globals) -> Result<PlaceSet> {
    match &g.places {
        Some(s) => parse_places(s),
        None => Err(Error::InvalidArgument("--places is required".into())),
    }
}

pub fn run(cli: &Cli) -> Result<Rendered> {
    let g = &cli.global;
    let caps = OrbitCaps {
        max_iter: g.max_iter,
        height_cap: g.height_cap,
    };
    let preper_caps = PreperCaps {
        period_cap: g.period_cap,
        ..Default::default()
    };
    Ok(match &cli.command {
        Command::Analyze { map, preper } => {
            let r = analyze_with(map, g.places.as_deref(), preper.then_some(preper_caps))?;
            Rendered {
                json: to_json(&r),
                text: r.to_text(),
            }
        }
        Command::Orbit { map, point } => {
            let phi = parse_map(map)?;
            let p = parse_point(point)?;
            let rec = orbit(&phi, &p, caps.max_iter, caps.height_cap);
            let status = match rec.status {
                OrbitStatus::Cycle => "cycle",
                OrbitStatus::HeightEscape => "height-escape",
                OrbitStatus::CapReached => "cap-reached",
            };
            let points: Vec<String> = rec.points.iter().map(|q| q.to_string()).collect();
            let mut text = String::new();
            for (i, q) in points.iter().enumerate() {
                let _ = writeln!(text, "{i:>3}  {q}");
            }
            match rec.period {
                Some(n) => {
                    let _ = writeln!(text, "cycle: tail {}, period {n}", rec.tail);
                }
                None => {
                    let _ = writeln!(text, "{status}");
                }
            }
            Rendered {
                json: json!({
                    "map": phi.to_string(),
                    "point": p.to_string(),
                    "points": points,
                    "status": status,
                    "tail": rec.period.map(|_| rec.tail),
                    "period": rec.period,
                }),
                text,
            }
        }
        Command::Classify { map, point } => {
            let phi = parse_map(map)?;
            let p = parse_point(point)?;
            let c = classify(&phi, &p, caps);
            let (m, n) = match c {
                Classification::Preperiodic { m, n } => (Some(m), Some(n)),
                _ => (None, None),
            };
            let text = match c {
                Classification::Preperiodic { m, n } => format!("Preperiodic: tail {m}, period {n}\n"),
                Classification::NotPreperiodicHeuristic => {
                    format!("NotPreperiodicHeuristic: height exceeded {} within {} steps\n", caps.height_cap, caps.max_iter)
                }
                Classification::Unknown => format!("Unknown: no repeat within {} steps\n", caps.max_iter),
            };
            Rendered {
                json: json!({
                    "map": phi.to_string(),
                    "point": p.to_string(),
                    "classification": c.label(),
                    "m": m,
                    "n": n,
                }),
                text,
            }
        }
        Command::Preper { map } => {
            let phi = parse_map(map)?;
            let r = preper_report(&phi, preper_caps)?;
            let mut json = to_json(&r);
            json["map"] = json!(phi.to_string());
            Rendered {
                json,
                text: preper_text(&r),
            }
        }
        Command::Periodic { map, n } => {
            let phi = parse_map(map)?;
            let pts: Vec<String> = periodic_points(&phi, *n, DEFAULT_COMPOSITION_CAP)?
                .iter()
                .map(|p| p.to_string())
                .collect();
            let text = if pts.is_empty() {
                format!("no K-rational points of exact period {n}\n")
            } else {
                pts.iter().map(|p| format!("{p}\n")).collect()
            };
            Rendered {
                json: json!({ "map": phi.to_string(), "n": n, "points": pts }),
                text,
            }
        }
        Command::Preimages { map, point } => {
            let phi = parse_map(map)?;
            let p = parse_point(point)?;
            let pts: Vec<String> = preimages(&phi, &p)?.iter().map(|q| q.to_string()).collect();
            let text = if pts.is_empty() {
                "no K-rational preimages\n".to_string()
            } else {
                pts.iter().map(|q| format!("{q}\n")).collect()
            };
            Rendered {
                json: json!({ "map": phi.to_string(), "point": p.to_string(), "preimages": pts }),
                text,
            }
        }
        Command::Bounds {
            d,
            s,
            exact,
            digits,
            variant,
        } => {
            let b = bounds_block(*d, *s, (*variant).into(), *exact && !*digits)?;
            Rendered {
                json: to_json(&b),
                text: bounds_text(&b),
            }
        }
        Command::SunitSolve { lambda, mu } => {
            let s = require_places(g)?;
            let l = parse_funcelem(lambda)?;
            let m = parse_funcelem(mu)?;
            let sols = solve_unit_equation(&l, &m, &s, g.box_bound, UNIT_PAIR_CAP)?;
            let nondeg = nondegenerate_count(&sols);
            let bound = 9u128.pow(s.s() as u32 - 1);
            let mut text = String::new();
            let rows: Vec<Value> = sols
                .iter()
                .map(|sol| {
                    let tag = if sol.degenerate { " (degenerate)" } else { "" };
                    let _ = writeln!(text, "x = {}, y = {}{tag}", sol.x.value, sol.y.value);
                    json!({
                        "x": sol.x.value.to_string(),
                        "y": sol.y.value.to_string(),
                        "x_exponents": sol.x.exponents,
                        "y_exponents": sol.y.exponents,
                        "degenerate": sol.degenerate,
                    })
                })
                .collect();
            let _ = writeln!(text, "{nondeg} nondegenerate (bound 9^(s-1) = {bound})");
            Rendered {
                json: json!({
                    "lambda": l.to_string(),
                    "mu": m.to_string(),
                    "places": s.places().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                    "box": g.box_bound,
                    "solutions": rows,
                    "nondegenerate": nondeg,
                    "bound": bound.to_string(),
                }),
                text,
            }
        }
        Command::ImproveReduction { map, place } => {
            let phi = parse_map(map)?;
            let p = parse_place(place)?;
            let before = phi.resultant_valuation(&p)?;
            match improve_reduction(&phi, &p)? {
                Some(imp) => {
                    let e = ImprovementEntry::new(&p, &imp);
                    Rendered {
                        text: format!(
                            "A = {}\nconjugate {}\nvaluation {} -> {}\n",
                            e.witness, e.conjugate, e.valuation_before, e.valuation_after
                        ),
                        json: json!({
                            "map": phi.to_string(),
                            "place": e.place,
                            "improved": true,
                            "witness": e.witness,
                            "conjugate": e.conjugate,
                            "valuation_before": e.valuation_before,
                            "valuation_after": e.valuation_after,
                        }),
                    }
                }
                None => Rendered {
                    text: format!("no improvement found (valuation {before})\n"),
                    json: json!({
                        "map": phi.to_string(),
                        "place": p.to_string(),
                        "improved": false,
                        "valuation_before": before,
                    }),
                },
            }
        }
        Command::Verify { suite, count } => {
            if suite == "roots" {
                let r = run_root_oracle(*count, g.seed)?;
                let mut text = format!(
                    "roots: {} instances, {} disagreements, seed {}\n",
                    r.instances, r.disagreements, r.seed
                );
                if let Some(f) = &r.first_disagreement {
                    let _ = writeln!(text, "first disagreement: {f}");
                }
                Rendered { json: to_json(&r), text }
            } else {
                let r = run_suite(suite, *count, g.seed)?;
                let mut text = format!(
                    "{}: {} instances, {} passes, {} failures, seed {}\n",
                    r.suite, r.instances, r.passes, r.failures, r.seed
                );
                if let Some(f) = &r.first_failure {
                    let _ = writeln!(text, "first failure: {f}");
                }
                Rendered { json: to_json(&r), text }
            }
        }
    })
}

pub fn exit_code(e: &Error) -> i32 {
    match e.kind() {
        ErrorKind::Parse => EXIT_PARSE,
        ErrorKind::Precondition => EXIT_PRECONDITION,
        ErrorKind::CapExceeded => EXIT_CAP,
    }
}

pub fn error_json(e: &Error) -> Value {
    let kind = match e.kind() {
        ErrorKind::Parse => "parse",
        ErrorKind::Precondition => "precondition",
        ErrorKind::CapExceeded => "cap",
    };
    let position = match e {
        Error::Parse { pos, .. } => Some(*pos),
        _ => None,
    };
    json!({ "error": { "kind": kind, "message": e.to_string(), "position": position } })
}

/// Runs a parsed command line, returning the exit code and what to print on
/// stdout and stderr.
pub fn execute(cli: &Cli) -> (i32, String, String) {
    match run(cli) {
        Ok(r) if cli.global.json => (EXIT_OK, format!("{}\n", r.json), String::new()),
        Ok(r) => (EXIT_OK, r.text, String::new()),
        Err(e) if cli.global.json => (exit_code(&e), format!("{}\n", error_json(&e)), String::new()),
        Err(e) => (exit_code(&e), String::new(), format!("error: {e}\n")),
    }
}

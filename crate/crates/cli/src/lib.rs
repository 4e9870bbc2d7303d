//! Command-line front end: parses a [`CommandConfig`], dispatches to
//! `dynint-core`, and renders the report document as JSON or a table.

use std::time::{SystemTime, UNIX_EPOCH};

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use dynint_core::divisors::{diagonal_critical_intersections, leading_form_check, multi_intersection_probe, BiForm, DivisorTower};
use dynint_core::integrality::IntegralityWitness;
use dynint_core::ratmap::{
    certify_wandering, critical_data, critical_period_lcm, escape_constant, exceptional_points, is_powering_conjugate,
    OrbitVerdict, PoweringKind, PoweringPair, PoweringWitness,
};
use dynint_core::report::elide_integer;
use dynint_core::search::{
    detect_coset_structure, exceptional_case_enlarge, find_integral_pairs, orbit_cap, orbit_with_budget,
    powering_pair_analysis, Cell, PairReport, SearchOptions,
};
use dynint_core::{Error, PairWindow, PlaceSet, ProjPoint, RatMap};

pub use dynint_core::parse_map_expression;

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_TRUNCATED: i32 = 3;

pub const DEFAULT_WINDOW: PairWindow = PairWindow { m_max: 6, n_max: 6 };
pub const DEFAULT_ORBIT_LENGTH: usize = 10;
pub const DEFAULT_DIVISOR_DEPTH: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Analyze,
    Orbit,
    Pairs,
    Divisor,
    Certify,
    Powering,
    Exceptional,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Orbit => "orbit",
            Command::Pairs => "pairs",
            Command::Divisor => "divisor",
            Command::Certify => "certify",
            Command::Powering => "powering",
            Command::Exceptional => "exceptional",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Table,
}

#[derive(Debug, Clone)]
pub struct CommandConfig {
    pub command: Command,
    pub map_spec: String,
    /// `[u, w]` for pair commands, `[point]` for orbit and certify, and an
    /// optional probe pair for divisor.
    pub points: Vec<String>,
    pub s: String,
    pub window: Option<PairWindow>,
    /// Orbit length, divisor depth, or certification iterations.
    pub n: Option<usize>,
    pub format: Format,
    pub timestamp: bool,
    pub digit_budget: usize,
    pub degree_cap: usize,
}

impl CommandConfig {
    pub fn new(command: Command, map_spec: impl Into<String>) -> Self {
        CommandConfig {
            command,
            map_spec: map_spec.into(),
            points: Vec::new(),
            s: String::new(),
            window: None,
            n: None,
            format: Format::Json,
            timestamp: true,
            digit_budget: dynint_core::search::DEFAULT_DIGIT_BUDGET,
            degree_cap: dynint_core::ratmap::DEFAULT_DEGREE_CAP,
        }
    }
}

/// Exit status and the report document.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub exit_code: i32,
    pub document: Value,
    /// Cell rows for the tabular export, when the command has a grid.
    pub cells: Option<Vec<Cell>>,
}

impl Outcome {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.document).expect("serializable");
                s.push('\n');
                s
            }
            Format::Table => render_table(&self.document, self.cells.as_deref()),
        }
    }
}

/// A map given either in the coefficient format or as an expression.
pub fn parse_map_spec(spec: &str) -> dynint_core::Result<RatMap> {
    if spec.contains("num=") {
        RatMap::from_coefficient_string(spec)
    } else {
        parse_map_expression(spec)
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::ValuationOfZero => "valuation_of_zero",
        Error::NotPrime(_) => "not_prime",
        Error::NotProjectivePoint => "not_projective_point",
        Error::DegreeBelowTwo => "degree_below_two",
        Error::NotCoprime => "not_coprime",
        Error::DegreeCap { .. } => "degree_cap",
        Error::MissingBadPrime(_) => "missing_bad_prime",
        Error::NotPolynomial => "not_polynomial",
        Error::NotPowering => "not_powering",
        Error::IrrationalPoweringPair => "irrational_powering_pair",
        Error::OnPoweringPair(_) => "on_powering_pair",
        Error::NoExceptionalPoint => "no_exceptional_point",
        Error::NotExceptional(_) => "not_exceptional",
        Error::HitsExceptional => "hits_exceptional",
        Error::WindowCap { .. } => "window_cap",
        Error::Unfactored(_) => "unfactored",
        Error::Syntax { .. } => "syntax",
        Error::Parse(_) => "parse",
        Error::DivisionByZero => "division_by_zero",
        Error::Invariant(_) => "invariant",
    }
}

pub fn run(config: &CommandConfig) -> Outcome {
    let mut doc = Map::new();
    doc.insert("schema_version".into(), json!(SCHEMA_VERSION));
    doc.insert("command".into(), json!(config.command.name()));
    if config.timestamp {
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        doc.insert("generated_at".into(), json!(secs));
    }
    let mut cells = None;
    let result = dispatch(config, &mut doc, &mut cells);
    let exit_code = match result {
        Ok(truncated) => {
            doc.insert("status".into(), json!(if truncated { "truncated" } else { "ok" }));
            if truncated {
                EXIT_TRUNCATED
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            doc.insert("status".into(), json!("error"));
            doc.insert("error".into(), json!({ "kind": error_kind(&e), "message": e.to_string() }));
            EXIT_PRECONDITION
        }
    };
    Outcome { exit_code, document: Value::Object(doc), cells }
}

fn point_arg<'a>(config: &'a CommandConfig, i: usize, flag: &str) -> dynint_core::Result<ProjPoint> {
    let text: &'a String = config
        .points
        .get(i)
        .ok_or_else(|| Error::Parse(format!("{} requires {flag}", config.command.name())))?;
    text.parse()
}

/// Fills `doc`; `Ok(true)` means a resource cap truncated the output.
fn dispatch(config: &CommandConfig, doc: &mut Map<String, Value>, cells: &mut Option<Vec<Cell>>) -> dynint_core::Result<bool> {
    let f = parse_map_spec(&config.map_spec)?.with_degree_cap(config.degree_cap);
    doc.insert("map".into(), json!(f.to_coefficient_string()));
    let s: PlaceSet = config.s.parse()?;
    let opts = SearchOptions { digit_budget: config.digit_budget, ..SearchOptions::default() };
    match config.command {
        Command::Analyze => {
            doc.insert("analysis".into(), analyze(&f)?);
            Ok(false)
        }
        Command::Orbit => {
            let p = point_arg(config, 0, "--point")?;
            let n = config.n.unwrap_or(DEFAULT_ORBIT_LENGTH);
            let (orbit, trunc) = orbit_with_budget(&f, &p, n, config.digit_budget);
            let points: Vec<Value> = orbit
                .iter()
                .enumerate()
                .map(|(i, q)| json!({ "index": i, "point": point_text(q), "digits": q.digits() }))
                .collect();
            doc.insert("point".into(), json!(point_text(&p)));
            doc.insert("orbit".into(), Value::Array(points));
            doc.insert(
                "truncation".into(),
                match trunc {
                    Some(digits) => json!([{ "orbit": "point", "index": orbit.len(), "digits": digits }]),
                    None => json!([]),
                },
            );
            Ok(trunc.is_some())
        }
        Command::Certify => {
            let p = point_arg(config, 0, "--point")?;
            let n = config.n.unwrap_or(dynint_core::search::DEFAULT_CERTIFY_ITERATIONS);
            let e = escape_constant(&f);
            doc.insert("point".into(), json!(point_text(&p)));
            doc.insert("escape".into(), json!({ "c_f": e.c_f, "threshold": e.threshold }));
            doc.insert("verdict".into(), verdict_json(&certify_wandering(&f, &p, n)));
            Ok(false)
        }
        Command::Divisor => {
            let n = config.n.unwrap_or(DEFAULT_DIVISOR_DEPTH);
            let tower = DivisorTower::build(&f, n)?;
            doc.insert("divisor".into(), divisor_json(&f, &tower, config)?);
            Ok(false)
        }
        Command::Pairs => {
            let u = point_arg(config, 0, "--u")?;
            let w = point_arg(config, 1, "--w")?;
            let report = find_integral_pairs(&f, &u, &w, &s, config.window.unwrap_or(DEFAULT_WINDOW), &opts)?;
            doc.insert("u".into(), json!(point_text(&u)));
            doc.insert("w".into(), json!(point_text(&w)));
            doc.insert("report".into(), pair_report_json(&report));
            *cells = Some(report.cells.clone());
            Ok(report.is_truncated())
        }
        Command::Powering => {
            let u = point_arg(config, 0, "--u")?;
            let w = point_arg(config, 1, "--w")?;
            let r = powering_pair_analysis(&f, &u, &w, &s, config.window.unwrap_or(DEFAULT_WINDOW), &opts)?;
            doc.insert("u".into(), json!(point_text(&u)));
            doc.insert("w".into(), json!(point_text(&w)));
            let annotations: Vec<Value> = r
                .annotations
                .iter()
                .map(|a| {
                    json!({
                        "m": a.m,
                        "n": a.n,
                        "tau": a.tau.to_string(),
                        "tau_unit": a.tau_unit,
                        "tau_plus_one_unit": a.tau_plus_one_unit,
                        "conjugate_agrees": a.conjugate_agrees,
                    })
                })
                .collect();
            doc.insert(
                "powering".into(),
                json!({
                    "witness": powering_json(&r.witness),
                    "sigma": r.sigma.to_string(),
                    "conjugated_map": r.conjugated.to_coefficient_string(),
                    "s_prime": r.s_prime.to_string(),
                    "annotations": annotations,
                    "taus": r.taus.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                    "all_units": r.all_units(),
                }),
            );
            doc.insert("report".into(), pair_report_json(&r.report));
            *cells = Some(r.report.cells.clone());
            Ok(r.report.is_truncated())
        }
        Command::Exceptional => {
            let u = point_arg(config, 0, "--u")?;
            let w = point_arg(config, 1, "--w")?;
            let r = exceptional_case_enlarge(&f, &u, &w, &s, config.window.unwrap_or(DEFAULT_WINDOW), &opts)?;
            doc.insert("u".into(), json!(point_text(&u)));
            doc.insert("w".into(), json!(point_text(&w)));
            let sigmas: Vec<Value> = r
                .sigmas
                .iter()
                .map(|(p, m)| json!({ "point": point_text(p), "sigma": m.to_string() }))
                .collect();
            doc.insert(
                "exceptional".into(),
                json!({
                    "sigmas": sigmas,
                    "s_prime": r.s_prime.to_string(),
                    "verified": r.verified(),
                    "failures": r.failures.iter().map(|&(m, n)| json!([m, n])).collect::<Vec<_>>(),
                }),
            );
            doc.insert("report".into(), pair_report_json(&r.report));
            *cells = Some(r.report.cells.clone());
            Ok(r.report.is_truncated())
        }
    }
}

fn int_text(n: &BigInt) -> String {
    elide_integer(n)
}

fn point_text(p: &ProjPoint) -> String {
    format!("[{}:{}]", int_text(p.a0()), int_text(p.a1()))
}

fn analyze(f: &RatMap) -> dynint_core::Result<Value> {
    let critical: Vec<Value> = critical_data(f)
        .iter()
        .map(|c| {
            json!({
                "locus": c.locus.to_string(),
                "ramification_index": c.ramification_index,
                "totally_ramified": c.totally_ramified,
                "periodic": c.periodic,
                "period": c.period,
            })
        })
        .collect();
    let e = escape_constant(f);
    Ok(json!({
        "degree": f.degree(),
        "p": f.p().to_string(),
        "q": f.q().to_string(),
        "polynomial": f.is_polynomial(),
        "resultant": int_text(&f.resultant()),
        "bad_primes": f.bad_reduction_primes()?.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "critical_points": critical,
        "critical_period_lcm": critical_period_lcm(f),
        "exceptional_points": exceptional_points(f).iter().map(|l| l.to_string()).collect::<Vec<_>>(),
        "powering": is_powering_conjugate(f).as_ref().map(powering_json),
        "escape": { "c_f": e.c_f, "threshold": e.threshold },
        "orbit_cap": orbit_cap(f),
    }))
}

fn powering_json(w: &PoweringWitness) -> Value {
    let pair = match &w.pair {
        PoweringPair::Rational(a, b) => json!([point_text(a), point_text(b)]),
        PoweringPair::Quadratic(q) => json!(format!("roots({q})")),
    };
    let kind = match w.kind {
        PoweringKind::Fixed => "fixed",
        PoweringKind::Swapped => "swapped",
    };
    json!({ "pair": pair, "kind": kind })
}

fn verdict_json(v: &OrbitVerdict) -> Value {
    match v {
        OrbitVerdict::Preperiodic { tail, period } => json!({ "kind": "preperiodic", "tail": tail, "period": period }),
        OrbitVerdict::Wandering(c) => json!({
            "kind": "wandering",
            "threshold": c.threshold,
            "achieved_at": c.achieved_at,
            "c_f": c.c_f,
        }),
        OrbitVerdict::Undecided { iterations } => json!({ "kind": "undecided", "iterations": iterations }),
    }
}

fn biform_text(b: &BiForm) -> String {
    b.terms()
        .into_iter()
        .map(|((i, j, k, l), c)| format!("({i},{j},{k},{l}):{}", int_text(c)))
        .collect::<Vec<_>>()
        .join("; ")
}

fn divisor_json(f: &RatMap, tower: &DivisorTower, config: &CommandConfig) -> dynint_core::Result<Value> {
    let levels: Vec<Value> = (0..=tower.depth())
        .map(|i| {
            let b = &tower.b_forms()[i];
            json!({
                "index": i,
                "g": biform_text(tower.g(i)),
                "b": biform_text(b),
                "b_bidegree": [b.bidegree().0, b.bidegree().1],
            })
        })
        .collect();
    let mut out = Map::new();
    out.insert("depth".into(), json!(tower.depth()));
    out.insert("levels".into(), Value::Array(levels));
    if tower.depth() >= 1 {
        let diag = diagonal_critical_intersections(tower)?;
        out.insert("diagonal_critical".into(), json!(diag.iter().map(point_text).collect::<Vec<_>>()));
    }
    if f.is_polynomial() && tower.depth() >= 1 {
        out.insert("leading_form_ok".into(), json!(leading_form_check(f, tower.depth())?));
    }
    if config.points.len() >= 2 {
        let xi: ProjPoint = config.points[0].parse()?;
        let eta: ProjPoint = config.points[1].parse()?;
        let indices: Vec<usize> = (0..=tower.depth()).collect();
        let r = multi_intersection_probe(tower, (&xi, &eta), &indices)?;
        let chain: Vec<Value> = r
            .chain
            .iter()
            .map(|l| json!({ "index": l.index, "point": point_text(&l.point), "coincide": l.coincide, "critical": l.critical }))
            .collect();
        out.insert(
            "probe".into(),
            json!({
                "xi": point_text(&xi),
                "eta": point_text(&eta),
                "vanishing": r.vanishing,
                "chain": chain,
                "periodic_critical": r.periodic_critical,
                "consistent": r.consistent,
            }),
        );
    }
    Ok(Value::Object(out))
}

fn witness_json(w: &IntegralityWitness) -> Value {
    json!({
        "cross_term": int_text(&w.cross_term),
        "violating_primes": w.violating_primes.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "unfactored": w.unfactored.as_ref().map(|u| int_text(&BigInt::from(u.clone()))),
        "verdict": w.verdict,
    })
}

fn pair_report_json(r: &PairReport) -> Value {
    let h = &r.hypotheses;
    let cosets = detect_coset_structure(r);
    let pairs: Vec<Value> = r
        .pairs
        .iter()
        .map(|p| json!({ "m": p.m, "n": p.n, "witness": witness_json(&p.witness) }))
        .collect();
    let cells: Vec<Value> = r
        .cells
        .iter()
        .map(|c| {
            json!({
                "m": c.m,
                "n": c.n,
                "verdict": c.verdict,
                "pruned": c.pruned,
                "smallest_violating_prime": c.smallest_violating_prime.as_ref().map(|p| p.to_string()),
            })
        })
        .collect();
    json!({
        "requested_window": [r.requested.m_max, r.requested.n_max],
        "window": [r.window.m_max, r.window.n_max],
        "mode": match r.mode {
            dynint_core::search::SearchMode::FunctorialityShortcut => "functoriality_shortcut",
            dynint_core::search::SearchMode::Pairwise => "pairwise",
        },
        "s": r.s.to_string(),
        "hypotheses": {
            "u": verdict_json(&h.u),
            "w": verdict_json(&h.w),
            "powering": h.powering.as_ref().map(powering_json),
            "exceptional_points": h.exceptional_points.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
            "finiteness_applies": h.finiteness_applies(),
        },
        "pairs": pairs,
        "frontier": r.frontier(),
        "cosets": {
            "cosets": cosets.cosets.iter().map(|c| json!({
                "base": [c.base.0, c.base.1],
                "generators": c.generators.iter().map(|g| json!([g.0, g.1])).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "residual": cosets.residual.iter().map(|p| json!([p.0, p.1])).collect::<Vec<_>>(),
        },
        "truncation": r.truncation.iter().map(|t| json!({ "orbit": t.orbit, "index": t.index, "digits": t.digits })).collect::<Vec<_>>(),
        "cells": cells,
    })
}

fn render_table(doc: &Value, cells: Option<&[Cell]>) -> String {
    let mut out = String::new();
    for key in ["schema_version", "command", "generated_at", "map", "status"] {
        if let Some(v) = doc.get(key) {
            out.push_str(&format!("# {key}: {}\n", scalar_text(v)));
        }
    }
    if let Some(e) = doc.get("error") {
        out.push_str(&format!("# error: {}: {}\n", scalar_text(&e["kind"]), scalar_text(&e["message"])));
        return out;
    }
    match cells {
        Some(cells) => {
            out.push_str("m\tn\tverdict\tsmallest_violating_prime\n");
            for c in cells {
                let prime = if c.pruned {
                    "pruned".to_string()
                } else if c.verdict {
                    "-".to_string()
                } else {
                    c.smallest_violating_prime.as_ref().map(|p| p.to_string()).unwrap_or_else(|| "?".into())
                };
                out.push_str(&format!("{}\t{}\t{}\t{}\n", c.m, c.n, c.verdict, prime));
            }
        }
        None => {
            let mut rows = Vec::new();
            for (k, v) in doc.as_object().into_iter().flatten() {
                if !["schema_version", "command", "generated_at", "map", "status"].contains(&k.as_str()) {
                    flatten(k, v, &mut rows);
                }
            }
            out.push_str("key\tvalue\n");
            for (k, v) in rows {
                out.push_str(&format!("{k}\t{v}\n"));
            }
        }
    }
    out
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&format!("{prefix}.{k}"), x, rows);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), x, rows);
            }
        }
        other => rows.push((prefix.to_string(), scalar_text(other))),
    }
}

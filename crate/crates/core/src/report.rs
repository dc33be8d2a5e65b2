//! JSON reports shared by the command-line tool and the C interface.

use std::time::Instant;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::classify::{classification_from, classify_group, constant_weight_general, is_perfect_by_covering, DEFAULT_CENTER_SEARCH_CAP, DEFAULT_COVERING_CAP};
use crate::code::{Code, GroupCode};
use crate::cyclic::{cyclic_structure, gcd_certificate, interleave, is_cyclic, join, shift_orbit_sizes};
use crate::decompose::{decompose_with, indecomposability_certificates, split_test, Category, DecomposeOptions, Decomposition};
use crate::error::{Error, Result};
use crate::isomorphy::{aut_group, aut_group_with_decomposition, code_aut_group, code_isomorphic, gc_isomorphic, AutGroupReport};
use crate::json::{code_to_value, decomposition_to_value, isometry_to_value, LoadedCode};

/// Largest length for which `--oracle` tries every splitting set.
const ORACLE_SPLIT_MAX_LEN: usize = 16;

#[derive(Clone, Copy, Debug, Default)]
pub struct ReportOptions {
    pub decompose: DecomposeOptions,
    pub timing: bool,
    pub oracle: bool,
}

/// A report and, when a resource cap cut it short, what was left undone.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub value: Value,
    pub partial: Option<String>,
}

fn category(loaded: &LoadedCode) -> Category {
    match loaded {
        LoadedCode::Group(_) => Category::Group,
        LoadedCode::Plain(_) => Category::Plain,
    }
}

/// Integers that fit in `u64` become JSON numbers, larger ones strings.
pub fn big_to_value(x: &BigUint) -> Value {
    match x.to_u64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

struct Stopwatch {
    enabled: bool,
    stages: Map<String, Value>,
    last: Instant,
}

impl Stopwatch {
    fn new(enabled: bool) -> Self {
        Self {
            enabled,
            stages: Map::new(),
            last: Instant::now(),
        }
    }

    fn lap(&mut self, stage: &str) {
        if self.enabled {
            let now = Instant::now();
            let ms = (now - self.last).as_secs_f64() * 1e3;
            self.stages.insert(stage.into(), json!(ms));
            self.last = now;
        }
    }

    fn attach(self, out: &mut Map<String, Value>) {
        if self.enabled {
            out.insert("timing_ms".into(), Value::Object(self.stages));
        }
    }
}

/// Parameters, classification, certificates, decomposition and cyclic
/// structure of a code.
pub fn analyze(loaded: &LoadedCode, opts: &ReportOptions) -> Result<Outcome> {
    let code = loaded.code();
    let group = loaded.group().is_some();
    let mut clock = Stopwatch::new(opts.timing);
    let mut out = Map::new();
    let mut partial = Vec::new();

    let params = code.parameters();
    out.insert("group".into(), json!(group));
    out.insert("alphabet".into(), json!(code.alphabet().label()));
    out.insert("singleton_bound_holds".into(), json!(params.satisfies_singleton()));
    out.insert("parameters".into(), serde_json::to_value(&params).expect("serializable"));
    clock.lap("parameters");

    let classification = match loaded {
        LoadedCode::Group(g) => classify_group(g),
        LoadedCode::Plain(c) => match constant_weight_general(c, None, DEFAULT_CENTER_SEARCH_CAP) {
            Ok(cw) => classification_from(c, cw),
            Err(e) if e.is_resource_limit() => {
                partial.push(format!("constant-weight center search skipped: {e}"));
                let cw = constant_weight_general(c, Some(c.words()), DEFAULT_CENTER_SEARCH_CAP)?;
                classification_from(c, cw)
            }
            Err(e) => return Err(e),
        },
    };
    out.insert("classification".into(), serde_json::to_value(&classification).expect("serializable"));
    let certs = indecomposability_certificates(code, category(loaded));
    out.insert("certificates".into(), serde_json::to_value(&certs).expect("serializable"));
    clock.lap("classification");

    let decomposition = match decompose_with(code, category(loaded), &opts.decompose) {
        Ok(d) => Some(d),
        Err(e) if e.is_resource_limit() => {
            partial.push(e.to_string());
            None
        }
        Err(e) => return Err(e),
    };
    match &decomposition {
        Some(d) => {
            out.insert("indecomposable".into(), json!(d.is_indecomposable()));
            out.insert("decomposition".into(), decomposition_to_value(d, group));
        }
        None => {
            out.insert("indecomposable".into(), if certs.is_empty() { Value::Null } else { json!(true) });
            out.insert("decomposition".into(), Value::Null);
        }
    }
    clock.lap("decomposition");

    let mut cyc = Map::new();
    let cyclic = is_cyclic(code);
    cyc.insert("is_cyclic".into(), json!(cyclic));
    cyc.insert("shift_orbit_sizes".into(), json!(shift_orbit_sizes(code)));
    if let Some(g) = loaded.group() {
        cyc.insert("gcd_certificate".into(), serde_json::to_value(gcd_certificate(g)).expect("serializable"));
        if cyclic && decomposition.is_some() {
            let s = cyclic_structure(g, &opts.decompose)?;
            cyc.insert(
                "component_structure".into(),
                json!({
                    "alpha": s.alpha,
                    "representative": code_to_value(&s.representative, true),
                }),
            );
        }
    }
    out.insert("cyclic".into(), Value::Object(cyc));
    clock.lap("cyclic");

    if opts.oracle {
        out.insert("oracle".into(), oracle_checks(code, decomposition.as_ref())?);
        clock.lap("oracle");
    }
    clock.attach(&mut out);
    Ok(finish(out, partial))
}

fn finish(mut out: Map<String, Value>, partial: Vec<String>) -> Outcome {
    let partial = (!partial.is_empty()).then(|| partial.join("; "));
    if let Some(p) = &partial {
        out.insert("incomplete".into(), json!(p));
    }
    Outcome {
        value: Value::Object(out),
        partial,
    }
}

/// Independent cross-checks: reconstruction through the witness, every
/// splitting set for short codes, and perfection by covering.
fn oracle_checks(code: &Code, dec: Option<&Decomposition>) -> Result<Value> {
    let mut out = Map::new();
    if let Some(d) = dec {
        out.insert("reconstruction".into(), json!(d.witness.apply_to_code(code)? == d.direct_sum()?));
    }
    let n = code.length();
    if n <= ORACLE_SPLIT_MAX_LEN && n > 1 {
        let mut splitting = 0usize;
        for k in 1..n {
            for rest in (1..n).combinations(k - 1) {
                let j: Vec<usize> = std::iter::once(0).chain(rest).collect();
                if split_test(code, &j)? {
                    splitting += 1;
                }
            }
        }
        out.insert("splitting_sets".into(), json!(splitting));
        if let Some(d) = dec {
            out.insert("split_agrees".into(), json!((splitting == 0) == d.is_indecomposable()));
        }
    }
    match is_perfect_by_covering(code, DEFAULT_COVERING_CAP) {
        Ok(p) => {
            out.insert("perfect_by_covering".into(), json!(p));
            out.insert("perfect_agrees".into(), json!(p == crate::classify::is_perfect(code)));
        }
        Err(e) if e.is_resource_limit() => {}
        Err(e) => return Err(e),
    }
    Ok(Value::Object(out))
}

pub fn decomposition_report(loaded: &LoadedCode, opts: &ReportOptions) -> Result<Outcome> {
    let code = loaded.code();
    let mut clock = Stopwatch::new(opts.timing);
    let mut out = Map::new();
    let dec = decompose_with(code, category(loaded), &opts.decompose);
    clock.lap("decomposition");
    match dec {
        Ok(d) => {
            out.insert("indecomposable".into(), json!(d.is_indecomposable()));
            out.insert("decomposition".into(), decomposition_to_value(&d, loaded.group().is_some()));
            if opts.oracle {
                out.insert("oracle".into(), oracle_checks(code, Some(&d))?);
            }
            clock.attach(&mut out);
            Ok(finish(out, Vec::new()))
        }
        Err(e) if e.is_resource_limit() => {
            let certs = indecomposability_certificates(code, category(loaded));
            out.insert("indecomposable".into(), Value::Null);
            out.insert("decomposition".into(), Value::Null);
            out.insert("certificates".into(), serde_json::to_value(&certs).expect("serializable"));
            clock.attach(&mut out);
            Ok(finish(out, vec![e.to_string()]))
        }
        Err(e) => Err(e),
    }
}

pub fn aut_report(loaded: &LoadedCode, structure: bool, opts: &ReportOptions) -> Result<Outcome> {
    let mut clock = Stopwatch::new(opts.timing);
    let search = opts.decompose.search;
    let report = match loaded {
        LoadedCode::Group(g) if structure => {
            let dec = decompose_with(g, Category::Group, &opts.decompose)?;
            aut_group_with_decomposition(g, &dec, &search)?
        }
        LoadedCode::Group(g) => aut_group(g, &search)?,
        LoadedCode::Plain(_) if structure => {
            return Err(Error::Precondition("--structure needs a group code".into()));
        }
        LoadedCode::Plain(c) => code_aut_group(c, &search)?,
    };
    clock.lap("search");
    let mut out = aut_to_map(&report, loaded.group().is_some());
    clock.attach(&mut out);
    let partial = (!report.complete).then(|| format!("search stopped after {} nodes", report.nodes));
    Ok(finish(out, partial.into_iter().collect()))
}

fn aut_to_map(r: &AutGroupReport, group: bool) -> Map<String, Value> {
    let hom = group.then_some(true);
    let mut out = Map::new();
    out.insert("order".into(), r.order.as_ref().map(big_to_value).unwrap_or(Value::Null));
    out.insert("complete".into(), json!(r.complete));
    out.insert("level_indices".into(), json!(r.level_indices));
    out.insert("extension_factor".into(), big_to_value(&r.extension_factor));
    out.insert("generators_verified".into(), json!(r.generators_verified));
    out.insert(
        "generators".into(),
        r.generators.iter().map(|g| isometry_to_value(g, "pull", hom)).collect(),
    );
    if let Some(els) = &r.elements {
        out.insert("element_count".into(), json!(els.len()));
    }
    if let Some(s) = &r.structure {
        out.insert(
            "structure".into(),
            json!({
                "isotypes": s.isotypes.iter().map(|t| json!({
                    "rep": t.representative + 1,
                    "aut_order": big_to_value(&t.component_order),
                    "alpha": t.multiplicity,
                })).collect::<Vec<_>>(),
                "predicted_order": big_to_value(&s.predicted_order),
            }),
        );
    }
    out
}

/// Whether two codes are isomorphic, with a witness when they are. Group
/// codes are compared as group codes when both files declare one.
pub fn iso_report(a: &LoadedCode, b: &LoadedCode, opts: &ReportOptions) -> Result<(Value, bool)> {
    let search = opts.decompose.search;
    let (kind, witness) = match (a, b) {
        (LoadedCode::Group(x), LoadedCode::Group(y)) => (
            "group",
            gc_isomorphic(x, y, &search)?.map(|w| isometry_to_value(&w.isometry, "pull", Some(w.verified_hom))),
        ),
        _ => (
            "code",
            code_isomorphic(a.code(), b.code(), &search)?.map(|w| isometry_to_value(&w, "pull", None)),
        ),
    };
    let iso = witness.is_some();
    Ok((
        json!({
            "kind": kind,
            "isomorphic": iso,
            "witness": witness,
        }),
        iso,
    ))
}

pub fn interleave_report(loaded: &LoadedCode, copies: usize) -> Result<Value> {
    let Some(d) = loaded.group() else {
        return Err(Error::Precondition("interleaving needs a group code".into()));
    };
    let out = interleave(d, copies)?;
    Ok(json!({
        "sigma": out.sigma.to_one_based(),
        "convention": "push",
        "code": code_to_value(&out.code, true),
        "rows": out.rows.iter().map(|(x, y)| json!([x, y])).collect::<Vec<_>>(),
        "is_cyclic": is_cyclic(&out.code),
    }))
}

pub fn join_report(codes: &[LoadedCode]) -> Result<Value> {
    let groups: Vec<GroupCode> = codes
        .iter()
        .map(|c| c.group().cloned().ok_or_else(|| Error::Precondition("join needs group codes".into())))
        .collect::<Result<_>>()?;
    let joined = join(&groups)?;
    Ok(json!({
        "code": code_to_value(&joined, true),
        "is_cyclic": is_cyclic(&joined),
    }))
}

/// Indented `key: value` rendering of a report.
pub fn to_text(value: &Value) -> String {
    let mut out = String::new();
    write_text(value, 0, &mut out);
    out
}

fn is_scalar_list(v: &Value) -> bool {
    match v {
        Value::Array(xs) => xs.iter().all(|x| !x.is_object() && (!x.is_array() || is_scalar_list(x))),
        _ => !v.is_object(),
    }
}

fn write_text(value: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                if is_scalar_list(v) {
                    out.push_str(&format!("{pad}{k}: {v}\n"));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    write_text(v, depth + 1, out);
                }
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                if is_scalar_list(x) {
                    out.push_str(&format!("{pad}- {x}\n"));
                } else {
                    out.push_str(&format!("{pad}[{}]\n", i + 1));
                    write_text(x, depth + 1, out);
                }
            }
        }
        v => out.push_str(&format!("{pad}{v}\n")),
    }
}

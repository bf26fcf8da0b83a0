//! Batch front end: JSON jobs in, deterministic JSON reports out.
//!
//! A job is `{command, input, options}`. The input document describes a
//! ring (or a tower) plus command-specific fields; unknown fields are
//! rejected with a JSON pointer to the offending location. Reports echo the
//! input with a SHA-256 content hash, carry the verdict and exit code, and
//! ship certificates (`Σ aᵢ·x·bᵢ = 1`) and witnesses that the `verify`
//! command re-checks using only ring arithmetic.
//!
//! Exit codes: 0 verdict computed, 1 verdict computed with a negative
//! answer or a witness found, 2 input error, 3 unsupported regime.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::algebra::{is_simple_linear, DEFAULT_MAX_DIM};
use crate::classify::{
    action_predicates, check_corner_inner_witness, classify_automorphism, corner_inner_witness, is_g_simple, AutomorphismClass,
    CornerInnerWitness,
};
use crate::error::{Error, Result};
use crate::ground::GroundElement;
use crate::group::{group_from_generators, Action, FiniteGroup, Permutation, Word, DEFAULT_ORDER_BOUND};
use crate::ideal::{check_g_invariant_intersection, check_properness, close, proper_ideal_witness, simplicity_certificate, Certificate};
use crate::reduce::{reduce_to_completion, ReductionStep};
use crate::scalar::Field;
use crate::skew::{SkewElement, SkewRingContext};
use crate::structure::structure_oracle;
use crate::tower::{
    build_onepoint_tower, build_prufer_tower, build_quotient_tower, check_moving_witness, eventual_freeness, invariant_clopen_search,
    level_ring, limit_simplicity_verdict, verify_fixed_thread_ideal, ClopenOutcome, Freeness, LimitVerdict, SearchMode, Tower,
    TowerAction, TowerGenerator,
};

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const COMMANDS: &[&str] = &[
    "simple",
    "g-simple",
    "classify-aut",
    "corner-inner",
    "ideal",
    "certificate",
    "quasi-inverse",
    "reduce",
    "tower",
    "verify",
];

pub const TOWER_CHECKS: &[&str] = &["build", "verify", "clopen", "freeness", "limit-simplicity", "level-ring"];

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: String,
    #[serde(default)]
    pub input: InputDoc,
    #[serde(default)]
    pub options: Options,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    /// Overrides the input document's field.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample: Option<Vec<String>>,
    /// Adds wall-clock timing; reports are then no longer byte-stable.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub timing: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingSpec>,
    /// A group element: label or word in the named generators.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub element: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gens: Option<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tower: Option<TowerSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restrict: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_level: Option<usize>,
    /// For `verify`: one artifact, an array of them, or a whole report.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Value>,
}

/// `generators` (name → 1-indexed image) or an explicit `group`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<BTreeMap<String, Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
}

/// Cayley table (0-based element indices, identity first is not required)
/// and one 1-indexed image per element.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
    pub perms: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerSpec {
    /// `prufer`, `onepoint` or `quotient`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    /// Quotient towers: the group, as permutation generators.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<RingSpec>,
    /// Quotient towers: descending normal subgroups as element lists.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<Vec<Vec<String>>>,
    /// Sizes or label arrays.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<Vec<Value>>,
    /// 1-indexed bond images for levels 2..=D.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bonds: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<BTreeMap<String, TowerGeneratorSpec>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerGeneratorSpec {
    pub base_level: usize,
    /// Level (as a decimal string) → 1-indexed image.
    pub perms: BTreeMap<String, Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorInfo {
    pub kind: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pointer: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub artifact_version: String,
    pub command: String,
    pub input_hash: String,
    pub input: Value,
    pub options: Value,
    pub outcome: String,
    pub exit_code: i32,
    pub result: Value,
    pub witnesses: Vec<Value>,
    pub certificates: Vec<Value>,
    pub reasoning: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// A short human-readable rendering.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}: {} (exit {})\n", self.command, self.outcome, self.exit_code);
        if let Some(e) = &self.error {
            out.push_str(&format!("error: {}", e.message));
            if let Some(p) = &e.pointer {
                out.push_str(&format!(" at {p}"));
            }
            out.push('\n');
        }
        for r in &self.reasoning {
            out.push_str(&format!("  {r}\n"));
        }
        if !self.certificates.is_empty() || !self.witnesses.is_empty() {
            out.push_str(&format!("certificates: {}, witnesses: {}\n", self.certificates.len(), self.witnesses.len()));
        }
        if !self.result.is_null() {
            out.push_str(&serde_json::to_string_pretty(&self.result).expect("json"));
            out.push('\n');
        }
        out
    }
}

/// Command output before it is wrapped into a report.
struct Outcome {
    outcome: &'static str,
    exit_code: i32,
    result: Value,
    witnesses: Vec<Value>,
    certificates: Vec<Value>,
    reasoning: Vec<String>,
}

impl Outcome {
    fn new(outcome: &'static str, exit_code: i32, result: Value) -> Self {
        Outcome {
            outcome,
            exit_code,
            result,
            witnesses: Vec::new(),
            certificates: Vec::new(),
            reasoning: Vec::new(),
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Hash of the compact JSON form; object keys are sorted by `serde_json`.
pub fn content_hash(v: &Value) -> String {
    sha256_hex(serde_json::to_string(v).expect("json").as_bytes())
}

fn pointer_of(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } => out.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => out.push_str(variant),
            Segment::Unknown => out.push('?'),
        }
    }
    out
}

/// Parses a job, reporting schema errors with a JSON pointer.
pub fn parse_job(text: &str) -> Result<JobSpec> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| Error::Schema {
        pointer: pointer_of(e.path()),
        message: e.inner().to_string(),
    })
}

/// Parses an input document (the `input` member of a job).
pub fn parse_input(text: &str) -> Result<InputDoc> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| Error::Schema {
        pointer: format!("/input{}", pointer_of(e.path())),
        message: e.inner().to_string(),
    })
}

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::UnsupportedCharacteristic { .. }
        | Error::DimensionBoundExceeded { .. }
        | Error::DepthBoundExceeded { .. }
        | Error::OrderBoundExceeded { .. } => 3,
        _ => 2,
    }
}

fn error_kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
}

fn error_info(e: &Error) -> ErrorInfo {
    ErrorInfo {
        kind: error_kind(e),
        message: e.to_string(),
        pointer: match e {
            Error::Schema { pointer, .. } => Some(pointer.clone()),
            _ => None,
        },
    }
}

/// Report for input that could not even be parsed as a job.
pub fn error_report(command: &str, e: &Error) -> Report {
    Report {
        artifact_version: ARTIFACT_VERSION.to_string(),
        command: command.to_string(),
        input_hash: String::new(),
        input: Value::Null,
        options: Value::Null,
        outcome: "error".into(),
        exit_code: exit_code_for(e),
        result: Value::Null,
        witnesses: Vec::new(),
        certificates: Vec::new(),
        reasoning: Vec::new(),
        error: Some(error_info(e)),
        timing_ms: None,
    }
}

/// Runs one job. Errors become reports with exit code 2 or 3.
pub fn run(job: &JobSpec) -> Report {
    let start = Instant::now();
    let input = serde_json::to_value(&job.input).expect("input serializes");
    let options = serde_json::to_value(&job.options).expect("options serialize");
    let input_hash = content_hash(&json!({"command": job.command, "input": input, "options": options}));
    let mut report = Report {
        artifact_version: ARTIFACT_VERSION.to_string(),
        command: job.command.clone(),
        input_hash,
        input,
        options,
        outcome: "error".into(),
        exit_code: 2,
        result: Value::Null,
        witnesses: Vec::new(),
        certificates: Vec::new(),
        reasoning: Vec::new(),
        error: None,
        timing_ms: None,
    };
    match dispatch(job) {
        Ok(o) => {
            report.outcome = o.outcome.to_string();
            report.exit_code = o.exit_code;
            report.result = o.result;
            report.witnesses = o.witnesses;
            report.certificates = o.certificates;
            report.reasoning = o.reasoning;
        }
        Err(e) => {
            report.exit_code = exit_code_for(&e);
            report.outcome = if report.exit_code == 3 { "unsupported" } else { "error" }.into();
            report.error = Some(error_info(&e));
        }
    }
    if job.options.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    report
}

/// Parses and runs a job given as JSON text.
pub fn run_json(text: &str) -> Report {
    match parse_job(text) {
        Ok(job) => run(&job),
        Err(e) => error_report("", &e),
    }
}

fn dispatch(job: &JobSpec) -> Result<Outcome> {
    let cx = Cx::new(job)?;
    match job.command.as_str() {
        "simple" => cx.simple(),
        "g-simple" => cx.g_simple(),
        "classify-aut" => cx.classify_aut(),
        "corner-inner" => cx.corner_inner(),
        "ideal" => cx.ideal(),
        "certificate" => cx.certificate(),
        "quasi-inverse" => cx.quasi_inverse(),
        "reduce" => cx.reduce(),
        "tower" => cx.tower(),
        "verify" => cx.verify(),
        other => Err(Error::schema(
            "/command",
            format!("unknown command {other:?}; expected one of {}", COMMANDS.join(", ")),
        )),
    }
}

fn required<'a, T>(v: &'a Option<T>, pointer: &str) -> Result<&'a T> {
    v.as_ref().ok_or_else(|| Error::schema(pointer, "required field is missing"))
}

fn at(pointer: &str, e: Error) -> Error {
    match e {
        Error::Schema { pointer: inner, message } => Error::Schema {
            pointer: format!("{pointer}{inner}"),
            message,
        },
        Error::UnsupportedCharacteristic { .. } | Error::DimensionBoundExceeded { .. } | Error::OrderBoundExceeded { .. } => e,
        other => Error::schema(pointer, other.to_string()),
    }
}

/// Builds the action described by a ring spec.
pub fn action_from_spec(spec: &RingSpec, pointer: &str) -> Result<Action> {
    match (&spec.generators, &spec.group) {
        (Some(_), Some(_)) => Err(Error::schema(pointer, "give either generators or group, not both")),
        (Some(gens), None) if gens.is_empty() => Ok(Action::trivial(FiniteGroup::trivial(), spec.n)),
        (Some(gens), None) => {
            let named = gens
                .iter()
                .map(|(name, img)| {
                    let p = format!("{pointer}/generators/{name}");
                    if img.len() != spec.n {
                        return Err(Error::schema(p, format!("image has {} entries, expected n = {}", img.len(), spec.n)));
                    }
                    Permutation::from_one_indexed(img).map(|q| (name.clone(), q)).map_err(|e| at(&p, e))
                })
                .collect::<Result<Vec<_>>>()?;
            group_from_generators(&named, DEFAULT_ORDER_BOUND).map_err(|e| at(&format!("{pointer}/generators"), e))
        }
        (None, Some(g)) => {
            let group = FiniteGroup::from_table(g.elements.clone(), g.table.clone(), DEFAULT_ORDER_BOUND)
                .map_err(|e| at(&format!("{pointer}/group/table"), e))?;
            let perms = g
                .perms
                .iter()
                .enumerate()
                .map(|(i, img)| {
                    if img.len() != spec.n {
                        return Err(Error::schema(format!("{pointer}/group/perms/{i}"), format!("expected {} entries", spec.n)));
                    }
                    Permutation::from_one_indexed(img).map_err(|e| at(&format!("{pointer}/group/perms/{i}"), e))
                })
                .collect::<Result<Vec<_>>>()?;
            Action::new(group, spec.n, perms).map_err(|e| at(&format!("{pointer}/group/perms"), e))
        }
        (None, None) => Ok(Action::trivial(FiniteGroup::trivial(), spec.n)),
    }
}

/// Canonical description of a skew ring; its hash binds certificates to rings.
pub fn ring_description(ctx: &SkewRingContext) -> Value {
    json!({
        "field": ctx.field().to_string(),
        "n": ctx.n(),
        "elements": ctx.group().labels(),
        "table": ctx.group().table_rows(),
        "perms": ctx.action().perms().iter().map(Permutation::to_one_indexed).collect::<Vec<_>>(),
    })
}

pub fn ring_hash(ctx: &SkewRingContext) -> String {
    content_hash(&ring_description(ctx))
}

/// Canonical tower description in the input format.
pub fn tower_description(tower: &Tower, act: &TowerAction) -> Value {
    let levels: Vec<Value> = (1..=tower.depth()).map(|n| json!(tower.labels(n))).collect();
    let bonds: Vec<Vec<usize>> = tower.bonds().iter().map(|b| b.iter().map(|x| x + 1).collect()).collect();
    let mut gens = serde_json::Map::new();
    for g in act.generators() {
        let perms: serde_json::Map<String, Value> = g
            .perms
            .iter()
            .enumerate()
            .map(|(i, p)| ((g.base_level + i).to_string(), json!(p.to_one_indexed())))
            .collect();
        gens.insert(g.name.clone(), json!({"base_level": g.base_level, "perms": perms}));
    }
    json!({"levels": levels, "bonds": bonds, "generators": gens})
}

pub fn tower_hash(tower: &Tower, act: &TowerAction) -> String {
    content_hash(&tower_description(tower, act))
}

pub fn tower_from_spec(spec: &TowerSpec, default_depth: Option<usize>) -> Result<(Tower, TowerAction)> {
    let depth = || {
        spec.depth
            .or(default_depth)
            .ok_or_else(|| Error::schema("/input/tower/depth", "a built-in tower needs a depth"))
    };
    match spec.builtin.as_deref() {
        Some("prufer") => build_prufer_tower(depth()?),
        Some("onepoint") => build_onepoint_tower(depth()?),
        Some("quotient") => {
            let gspec = required(&spec.group, "/input/tower/group")?;
            let act = action_from_spec(gspec, "/input/tower/group")?;
            let chain = required(&spec.chain, "/input/tower/chain")?
                .iter()
                .enumerate()
                .map(|(i, h)| {
                    h.iter()
                        .enumerate()
                        .map(|(j, r)| act.element(r).map_err(|e| at(&format!("/input/tower/chain/{i}/{j}"), e)))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            build_quotient_tower(act.group(), &chain).map_err(|e| match e {
                Error::NotNormal(_) | Error::NotDescending(_) => at("/input/tower/chain", e),
                other => other,
            })
        }
        Some(other) => Err(Error::schema(
            "/input/tower/builtin",
            format!("unknown tower {other:?}; expected prufer, onepoint or quotient"),
        )),
        None => custom_tower(spec),
    }
}

fn custom_tower(spec: &TowerSpec) -> Result<(Tower, TowerAction)> {
    let levels = required(&spec.levels, "/input/tower/levels")?;
    let labels = levels
        .iter()
        .enumerate()
        .map(|(i, v)| match v {
            Value::Number(n) => n
                .as_u64()
                .map(|s| (1..=s).map(|k| k.to_string()).collect::<Vec<_>>())
                .ok_or_else(|| Error::schema(format!("/input/tower/levels/{i}"), "level size must be a positive integer")),
            Value::Array(a) => a
                .iter()
                .map(|l| l.as_str().map(str::to_string))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::schema(format!("/input/tower/levels/{i}"), "labels must be strings")),
            _ => Err(Error::schema(format!("/input/tower/levels/{i}"), "expected a size or an array of labels")),
        })
        .collect::<Result<Vec<_>>>()?;
    let bonds = spec
        .bonds
        .clone()
        .unwrap_or_default()
        .into_iter()
        .enumerate()
        .map(|(i, b)| {
            b.into_iter()
                .map(|x| {
                    x.checked_sub(1)
                        .ok_or_else(|| Error::schema(format!("/input/tower/bonds/{i}"), "images are 1-indexed"))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let tower = Tower::new(labels, bonds).map_err(|e| at("/input/tower", e))?;
    let mut gens = Vec::new();
    for (name, g) in spec.generators.clone().unwrap_or_default() {
        let p = format!("/input/tower/generators/{name}");
        let mut perms = Vec::new();
        for level in g.base_level..=tower.depth() {
            let img = g
                .perms
                .get(&level.to_string())
                .ok_or_else(|| Error::schema(format!("{p}/perms"), format!("missing permutation for level {level}")))?;
            perms.push(Permutation::from_one_indexed(img).map_err(|e| at(&format!("{p}/perms/{level}"), e))?);
        }
        if let Some(k) = g.perms.keys().find(|k| k.parse::<usize>().map_or(true, |l| l < g.base_level || l > tower.depth())) {
            return Err(Error::schema(format!("{p}/perms/{k}"), "level outside base_level..=depth"));
        }
        gens.push(TowerGenerator {
            name,
            base_level: g.base_level,
            perms,
        });
    }
    let act = TowerAction::new(&tower, gens).map_err(|e| at("/input/tower/generators", e))?;
    Ok((tower, act))
}

/// Shared command context.
struct Cx<'a> {
    job: &'a JobSpec,
    field: Field,
    max_dim: usize,
}

fn labels_of(tower: &Tower, level: usize, points: &[usize]) -> Vec<String> {
    points.iter().map(|&p| tower.label(level, p).to_string()).collect()
}

fn one_indexed(points: &[usize]) -> Vec<usize> {
    points.iter().map(|p| p + 1).collect()
}

impl<'a> Cx<'a> {
    fn new(job: &'a JobSpec) -> Result<Self> {
        let field = match (&job.options.field, &job.input.field) {
            (Some(f), _) => f.parse::<Field>().map_err(|e| at("/options/field", e))?,
            (None, Some(f)) => f.parse::<Field>().map_err(|e| at("/input/field", e))?,
            (None, None) => Field::Rational,
        };
        Ok(Cx {
            job,
            field,
            max_dim: job.options.max_dim.unwrap_or(DEFAULT_MAX_DIM),
        })
    }

    fn input(&self) -> &InputDoc {
        &self.job.input
    }

    fn tower(&self) -> Result<Outcome> {
        let spec = required(&self.input().tower, "/input/tower")?;
        let (tower, act) = tower_from_spec(spec, self.job.options.depth)?;
        let check = self.input().check.as_deref().unwrap_or("build");
        match check {
            "build" => self.tower_build(&tower, &act),
            "verify" => self.tower_verify(&tower, &act),
            "clopen" => self.tower_clopen(&tower, &act),
            "freeness" => self.tower_freeness(&tower, &act),
            "limit-simplicity" => self.tower_limit(&tower, &act),
            "level-ring" => {
                let ctx = self.level_ring_ctx(&tower, &act)?;
                let mut o = self.simple_on(&ctx)?;
                if let Value::Object(m) = &mut o.result {
                    m.insert("level".into(), json!(self.input().level));
                    m.insert("level_labels".into(), json!(tower.labels(self.input().level.unwrap_or(1))));
                }
                Ok(o)
            }
            other => Err(Error::schema(
                "/input/check",
                format!("unknown tower check {other:?}; expected one of {}", TOWER_CHECKS.join(", ")),
            )),
        }
    }

    fn level_ring_ctx(&self, tower: &Tower, act: &TowerAction) -> Result<SkewRingContext> {
        let level = *required(&self.input().level, "/input/level")?;
        level_ring(tower, act, level, self.field, self.input().restrict.unwrap_or(false)).map_err(|e| match e {
            Error::LevelOutOfRange { .. } | Error::GeneratorBelowBaseLevel { .. } => at("/input/level", e),
            other => other,
        })
    }

    /// The ring from `ring`, or from `tower` + `level`.
    fn ring(&self) -> Result<SkewRingContext> {
        if let Some(spec) = &self.input().ring {
            let act = action_from_spec(spec, "/input/ring")?;
            return Ok(SkewRingContext::new(act, self.field));
        }
        if let Some(t) = &self.input().tower {
            let (tower, act) = tower_from_spec(t, self.job.options.depth)?;
            return self.level_ring_ctx(&tower, &act);
        }
        Err(Error::schema("/input/ring", "required field is missing"))
    }

    fn element(&self, ctx: &SkewRingContext, v: &Value, pointer: &str) -> Result<SkewElement> {
        ctx.element_from_json(v).map_err(|e| at(pointer, e))
    }

    fn x(&self, ctx: &SkewRingContext) -> Result<SkewElement> {
        self.element(ctx, required(&self.input().x, "/input/x")?, "/input/x")
    }

    fn group_element(&self, ctx: &SkewRingContext) -> Result<usize> {
        let r = required(&self.input().element, "/input/element")?;
        ctx.action().element(r).map_err(|e| at("/input/element", e))
    }

    fn unit_certificate_json(ctx: &SkewRingContext, cert: &Certificate) -> Value {
        json!({
            "kind": "unit-certificate",
            "ring_hash": ring_hash(ctx),
            "x": ctx.element_to_json(&cert.x),
            "pairs": cert.pairs.iter().map(|(a, b)| json!([ctx.element_to_json(a), ctx.element_to_json(b)])).collect::<Vec<_>>(),
        })
    }

    fn simple(&self) -> Result<Outcome> {
        let ctx = self.ring()?;
        self.simple_on(&ctx)
    }

    fn simple_on(&self, ctx: &SkewRingContext) -> Result<Outcome> {
        let act = ctx.action();
        let oracle = structure_oracle(act);
        let preds = action_predicates(act);
        let transitive_free = oracle.blocks.len() == 1 && preds.fixed_point_free.holds;
        let mut reasoning = oracle.reasoning.clone();
        let mut result = serde_json::Map::new();
        result.insert("dim".into(), json!(ctx.dim()));
        result.insert("decomposition".into(), json!(oracle.decomposition()));
        result.insert("oracle_simple".into(), json!(oracle.simple));
        result.insert("transitive_and_free".into(), json!(transitive_free));
        result.insert("regular".into(), json!(oracle.regular_over(ctx.field())));
        if oracle.simple != transitive_free {
            return Err(Error::VerificationFailed("structure oracle and orbit predicate disagree".into()));
        }
        let linear = is_simple_linear(ctx, self.max_dim);
        let mut unsupported = false;
        match &linear {
            Ok(v) => {
                result.insert("linear_simple".into(), json!(v.simple));
                result.insert("radical_dim".into(), json!(v.radical.len()));
                result.insert("center_dim".into(), json!(v.center.len()));
                result.insert("regime".into(), json!(format!("{:?}", v.regime)));
                reasoning.extend(v.reasoning.iter().cloned());
                if v.simple != oracle.simple {
                    return Err(Error::VerificationFailed("linear decider and structure oracle disagree".into()));
                }
            }
            Err(e @ (Error::UnsupportedCharacteristic { .. } | Error::DimensionBoundExceeded { .. })) => {
                unsupported = true;
                result.insert("linear_simple".into(), Value::Null);
                reasoning.push(format!("[trace-form] linear decider unavailable: {e}"));
            }
            Err(e) => return Err(e.clone()),
        }
        let mut o = Outcome::new("simple", 0, Value::Null);
        if oracle.simple {
            let x = ctx.basis_element(0, ctx.group().identity());
            let cert = simplicity_certificate(ctx, &x, self.max_dim)?;
            reasoning.push(format!("[unit-certificate] e_1 generates the ring with {} term(s)", cert.pairs.len()));
            o.certificates.push(Self::unit_certificate_json(ctx, &cert));
        } else {
            o.outcome = "not-simple";
            o.exit_code = 1;
            if let Some(w) = proper_ideal_witness(ctx, self.max_dim)? {
                reasoning.push(format!(
                    "[proper-ideal] {} generates an ideal of dimension {} < {}",
                    ctx.display(&w.generator),
                    w.closure_dim,
                    ctx.dim()
                ));
                o.witnesses.push(json!({
                    "kind": "proper-ideal-witness",
                    "ring_hash": ring_hash(ctx),
                    "generator": ctx.element_to_json(&w.generator),
                    "invariant_coordinates": one_indexed(&w.invariant_coordinates),
                    "closure_dim": w.closure_dim,
                }));
            }
        }
        if unsupported {
            o.outcome = "unsupported";
            o.exit_code = 3;
        }
        result.insert("simple".into(), json!(oracle.simple));
        o.result = Value::Object(result);
        o.reasoning = reasoning;
        Ok(o)
    }

    fn g_simple(&self) -> Result<Outcome> {
        let ctx = self.ring()?;
        let r = is_g_simple(ctx.action(), ctx.field());
        let mut o = Outcome::new(
            if r.g_simple { "g-simple" } else { "not-g-simple" },
            if r.g_simple { 0 } else { 1 },
            json!({
                "g_simple": r.g_simple,
                "orbits": r.orbits.iter().map(|x| one_indexed(x)).collect::<Vec<_>>(),
            }),
        );
        if let Some(w) = &r.witness {
            o.witnesses.push(json!({
                "kind": "invariant-idempotent",
                "ring_hash": ring_hash(&ctx),
                "idempotent": w.to_json(),
            }));
        }
        o.reasoning = r.reasoning;
        Ok(o)
    }

    fn classify_aut(&self) -> Result<Outcome> {
        let ctx = self.ring()?;
        let g = self.group_element(&ctx)?;
        let r = classify_automorphism(ctx.action(), g, ctx.field());
        let class = match &r.class {
            AutomorphismClass::Identity => "identity",
            AutomorphismClass::XInner { .. } => "x-inner",
            AutomorphismClass::XOuterElement => "x-outer",
        };
        let mut o = Outcome::new(
            class,
            if class == "x-outer" { 0 } else { 1 },
            json!({
                "class": class,
                "element": ctx.group().label(g),
                "permutation": ctx.perm(g).cycle_string(),
                "fixed_points": one_indexed(&r.fixed_points),
                "annihilator": r.annihilator.iter().map(GroundElement::to_json).collect::<Vec<_>>(),
                "annihilator_matches": r.annihilator_matches,
            }),
        );
        if let AutomorphismClass::XInner { e } = &r.class {
            if let Value::Object(m) = &mut o.result {
                m.insert("e".into(), e.to_json());
            }
            o.reasoning.push(format!("[fixed-corner] α({}) is the identity on eR for e = {e}", ctx.group().label(g)));
        }
        if let Some(w) = corner_inner_witness(ctx.action(), g, ctx.field()) {
            o.witnesses.push(corner_witness_json(&ctx, g, &w));
        }
        match &r.class {
            AutomorphismClass::Identity => o.reasoning.push("[fixed-corner] the element acts trivially".into()),
            AutomorphismClass::XOuterElement => o
                .reasoning
                .push("[annihilator] no fixed coordinate, so (id − f)(R) has zero annihilator".into()),
            _ => {}
        }
        Ok(o)
    }

    fn corner_inner(&self) -> Result<Outcome> {
        let ctx = self.ring()?;
        let g = self.group_element(&ctx)?;
        match corner_inner_witness(ctx.action(), g, ctx.field()) {
            Some(w) => {
                let verified = check_corner_inner_witness(ctx.action(), g, &w).is_ok();
                let mut o = Outcome::new("witness-found", 1, json!({"element": ctx.group().label(g), "verified": verified}));
                o.reasoning.push("[corner-inner] the fixed-set indicator gives e = e′ = u = v".into());
                o.witnesses.push(corner_witness_json(&ctx, g, &w));
                Ok(o)
            }
            None => {
                let mut o = Outcome::new("no-witness", 0, json!({"element": ctx.group().label(g), "verified": Value::Null}));
                o.reasoning.push("[corner-inner] the element fixes no coordinate".into());
                Ok(o)
            }
        }
    }

    fn ideal(&self) -> Result<Outcome> {
        let ctx = self.ring()?;
        let gens = match (&self.input().gens, &self.input().x) {
            (Some(gs), _) => gs
                .iter()
                .enumerate()
                .map(|(i, v)| self.element(&ctx, v, &format!("/input/gens/{i}")))
                .collect::<Result<Vec<_>>>()?,
            (None, Some(_)) => vec![self.x(&ctx)?],
            (None, None) => return Err(Error::schema("/input/gens", "required field is missing")),
        };
        let closure = close(&ctx, &gens, self.max_dim)?;
        let basis = closure.basis();
        let inter = check_g_invariant_intersection(&ctx, &basis);
        let (outcome, code) = if basis.is_full() {
            ("full", 0)
        } else if basis.is_zero() {
            ("zero", 1)
        } else {
            ("proper", 1)
        };
        let mut o = Outcome::new(
            outcome,
            code,
            json!({
                "dim": basis.dim(),
                "ambient_dim": ctx.dim(),
                "basis": basis.elements(&ctx).iter().map(|x| ctx.element_to_json(x)).collect::<Vec<_>>(),
                "intersection_with_ground": inter.intersection.iter().map(GroundElement::to_json).collect::<Vec<_>>(),
                "g_simple_ground": inter.g_simple,
                "intersection_forces_full": inter.forces_full,
            }),
        );
        o.reasoning.push(format!("[ideal-closure] two-sided closure has dimension {} of {}", basis.dim(), ctx.dim()));
        if inter.forces_full == Some(true) {
            o.reasoning
                .push("[invariant-intersection] a nonzero intersection with a G-simple ground ring forces the whole ring".into());
        }
        if basis.is_full() {
            if let Some(pairs) = closure.express(&ctx, &ctx.one()) {
                if gens.len() == 1 {
                    let cert = Certificate {
                        x: gens[0].clone(),
                        pairs: pairs.into_iter().map(|(_, a, b)| (a, b)).collect(),
                    };
                    o.certificates.push(Self::unit_certificate_json(&ctx, &cert));
                }
            }
        }
        Ok(o)
    }

    fn certificate(&self) -> Result<Outcome> {
        let ctx = self.ring()?;
        let x = self.x(&ctx)?;
        match simplicity_certificate(&ctx, &x, self.max_dim) {
            Ok(cert) => {
                let mut o = Outcome::new("certificate", 0, json!({"terms": cert.pairs.len(), "verified": cert.verify(&ctx)}));
                o.reasoning.push(format!("[unit-certificate] Σ aᵢ·x·bᵢ = 1 with {} term(s)", cert.pairs.len()));
                o.certificates.push(Self::unit_certificate_json(&ctx, &cert));
                Ok(o)
            }
            Err(Error::NotGenerating { ideal_dim, ambient_dim }) => {
                let mut o = Outcome::new("not-generating", 1, json!({"ideal_dim": ideal_dim, "ambient_dim": ambient_dim}));
                o.reasoning.push(format!("[ideal-closure] x generates a proper ideal of dimension {ideal_dim}"));
                Ok(o)
            }
            Err(e) => Err(e),
        }
    }

    fn quasi_inverse(&self) -> Result<Outcome> {
        let ctx = self.ring()?;
        let x = self.x(&ctx)?;
        let regular = structure_oracle(ctx.action()).regular_over(ctx.field());
        match ctx.quasi_inverse(&x) {
            Ok(y) => {
                let check = ctx.product(&[&x, &y, &x])? == x;
                let mut o = Outcome::new(
                    "regular",
                    0,
                    json!({"y": ctx.element_to_json(&y), "xyx_equals_x": check, "ring_regular": regular}),
                );
                o.reasoning.push("[quasi-inverse] solved x·y·x = x as a linear system in y".into());
                Ok(o)
            }
            Err(Error::NoSolution) => {
                let mut o = Outcome::new("no-solution", 1, json!({"y": Value::Null, "ring_regular": regular}));
                o.reasoning.push("[quasi-inverse] x·y·x = x has no solution: x witnesses non-regularity".into());
                Ok(o)
            }
            Err(e) => Err(e),
        }
    }

    fn reduce(&self) -> Result<Outcome> {
        let ctx = self.ring()?;
        let x = self.x(&ctx)?;
        let trace = reduce_to_completion(&ctx, &x).map_err(|e| match e {
            Error::ZeroInput => at("/input/x", e),
            other => other,
        })?;
        let chain: Vec<Value> = trace.chain.iter().map(|y| ctx.element_to_json(y)).collect();
        let lengths: Vec<usize> = trace.chain.iter().map(SkewElement::len).collect();
        let mut o = Outcome::new("unit", 0, Value::Null);
        let mut result = json!({"chain": chain, "lengths": lengths, "steps": trace.chain.len() - 1});
        o.reasoning.push(format!("[length-reduction] {} strictly shortening step(s)", trace.chain.len() - 1));
        match &trace.last {
            ReductionStep::Unit(_) => o.reasoning.push("[length-reduction] reached a unit: the ideal is the whole ring".into()),
            ReductionStep::Stalled(phi) => {
                o.outcome = "stalled";
                o.exit_code = 1;
                result["invariant_idempotent"] = phi.to_json();
                o.reasoning
                    .push(format!("[length-reduction] translates of the support cover only {phi}, a proper invariant idempotent"));
            }
            ReductionStep::Obstruction {
                group_element,
                witness,
                verified,
                ..
            } => {
                o.outcome = "obstruction";
                o.exit_code = 1;
                result["obstruction_element"] = json!(ctx.group().label(*group_element));
                result["verified"] = json!(verified);
                o.reasoning.push(format!(
                    "[corner-inner] no shorter element: α({}) is corner-inner",
                    ctx.group().label(*group_element)
                ));
                o.witnesses.push(corner_witness_json(&ctx, *group_element, witness));
            }
            ReductionStep::Shorter(_) => unreachable!("reduce_to_completion stops only on terminal steps"),
        }
        o.result = result;
        Ok(o)
    }

    fn tower_build(&self, tower: &Tower, act: &TowerAction) -> Result<Outcome> {
        let sizes: Vec<usize> = (1..=tower.depth()).map(|n| tower.size(n)).collect();
        let mut o = Outcome::new(
            "built",
            0,
            json!({
                "depth": tower.depth(),
                "sizes": sizes,
                "tower_hash": tower_hash(tower, act),
                "tower": tower_description(tower, act),
            }),
        );
        o.reasoning.push(format!("[compatibility] verified at all {} level(s)", tower.depth()));
        Ok(o)
    }

    fn tower_verify(&self, tower: &Tower, act: &TowerAction) -> Result<Outcome> {
        let compatible = act.verify_compatibility(tower).is_ok();
        let mut o = Outcome::new(
            if compatible { "verified" } else { "rejected" },
            if compatible { 0 } else { 1 },
            json!({"compatible": compatible, "depth": tower.depth()}),
        );
        o.reasoning
            .push(format!("[compatibility] φ_n ∘ g@n = g@(n−1) ∘ φ_n checked exhaustively to depth {}", tower.depth()));
        Ok(o)
    }

    fn tower_clopen(&self, tower: &Tower, act: &TowerAction) -> Result<Outcome> {
        let max_level = self
            .input()
            .max_level
            .unwrap_or_else(|| tower.depth().saturating_sub(1).max(1));
        let search = invariant_clopen_search(tower, act, max_level)?;
        let movers_verified = search
            .tests
            .iter()
            .all(|t| t.mover.as_ref().is_none_or(|w| check_moving_witness(tower, act, t.level, &t.subset, w)));
        let levels: Vec<Value> = search
            .levels
            .iter()
            .map(|l| {
                json!({
                    "level": l.level,
                    "mode": match l.mode {
                        SearchMode::Exhaustive => "exhaustive",
                        SearchMode::OrbitUnions => "orbit-unions",
                        SearchMode::Skipped => "skipped",
                    },
                    "tested": l.tested,
                })
            })
            .collect();
        let examples: Vec<Value> = search
            .tests
            .iter()
            .filter_map(|t| {
                t.mover.as_ref().map(|w| {
                    json!({
                        "level": t.level,
                        "subset": labels_of(tower, t.level, &t.subset),
                        "generator": w.generator,
                        "lift_level": w.level,
                        "point": tower.label(w.level, w.point),
                        "image": tower.label(w.level, w.image),
                    })
                })
            })
            .take(32)
            .collect();
        let mut result = json!({
            "max_level": max_level,
            "levels": levels,
            "tested": search.tests.len(),
            "all_movers_verified": movers_verified,
            "mover_examples": examples,
        });
        let mut o = match &search.outcome {
            ClopenOutcome::NoneFound { depth } => {
                let mut o = Outcome::new("none-found", 0, Value::Null);
                o.reasoning.push(format!(
                    "[clopen-invariance] every tested proper clopen up to level {depth} is moved by a generator"
                ));
                o
            }
            ClopenOutcome::Witness { level, subset } => {
                result["witness"] = json!({"level": level, "subset": labels_of(tower, *level, subset)});
                let mut o = Outcome::new("witness-found", 1, Value::Null);
                o.reasoning
                    .push(format!("[clopen-invariance] a proper clopen at level {level} is invariant under every generator"));
                o
            }
        };
        o.result = result;
        Ok(o)
    }

    fn sample_words(&self) -> Result<Option<Vec<Word>>> {
        let (src, pointer) = match (&self.input().sample, &self.job.options.sample) {
            (Some(s), _) => (s, "/input/sample"),
            (None, Some(s)) => (s, "/options/sample"),
            (None, None) => return Ok(None),
        };
        src.iter()
            .enumerate()
            .map(|(i, w)| Word::parse(w).map_err(|e| at(&format!("{pointer}/{i}"), e)))
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }

    fn freeness_json(tower: &Tower, f: &Freeness) -> Value {
        match f {
            Freeness::FreeAtLevel(n) => json!({"status": "free-at-level", "level": n}),
            Freeness::StableFixedClopen { level, point, clopen } => json!({
                "status": "stable-fixed-clopen",
                "level": level,
                "point": tower.label(*level, *point),
                "clopen": labels_of(tower, *level, clopen),
            }),
            Freeness::Inconclusive { depth } => json!({"status": "inconclusive", "depth": depth}),
        }
    }

    fn tower_freeness(&self, tower: &Tower, act: &TowerAction) -> Result<Outcome> {
        let words = match (&self.input().word, self.sample_words()?) {
            (Some(w), _) => vec![Word::parse(w).map_err(|e| at("/input/word", e))?],
            (None, Some(ws)) => ws,
            (None, None) => return Err(Error::schema("/input/word", "required field is missing")),
        };
        let depth = self.job.options.depth.unwrap_or(tower.depth()).min(tower.depth());
        let mut items = Vec::new();
        let (mut any_fixed, mut all_free) = (false, true);
        for w in &words {
            let f = eventual_freeness(tower, act, w, depth).map_err(|e| at("/input/word", e))?;
            any_fixed |= matches!(f, Freeness::StableFixedClopen { .. });
            all_free &= matches!(f, Freeness::FreeAtLevel(_));
            items.push(json!({"word": w.to_string(), "freeness": Self::freeness_json(tower, &f)}));
        }
        let mut o = if all_free {
            Outcome::new("free", 0, Value::Null)
        } else if any_fixed {
            Outcome::new("stable-fixed-clopen", 1, Value::Null)
        } else {
            Outcome::new("inconclusive", 0, Value::Null)
        };
        o.result = json!({"depth": depth, "words": items});
        o.reasoning.push(format!(
            "[eventual-freeness] a fixed-point-free level stays free at every finer level; scanned to depth {depth}"
        ));
        Ok(o)
    }

    fn tower_limit(&self, tower: &Tower, act: &TowerAction) -> Result<Outcome> {
        let depth = self.job.options.depth.unwrap_or(tower.depth());
        let sample = self.sample_words()?;
        let r = limit_simplicity_verdict(tower, act, depth, sample.as_deref())?;
        let (outcome, code) = match &r.verdict {
            LimitVerdict::SimplicityEvidence { .. } => ("simplicity-evidence", 0),
            LimitVerdict::NotGSimple => ("not-g-simple", 1),
            LimitVerdict::Inconclusive { .. } => ("inconclusive", 0),
        };
        let mut result = json!({
            "depth": r.depth,
            "transitivity": r.transitivity.iter().map(|(n, t)| json!({"level": n, "transitive": t})).collect::<Vec<_>>(),
            "freeness": r.freeness.iter().map(|w| json!({
                "word": w.word.to_string(),
                "trivial_at_depth": w.trivial_at_depth,
                "freeness": Self::freeness_json(tower, &w.freeness),
            })).collect::<Vec<_>>(),
        });
        if let LimitVerdict::Inconclusive { failing } = &r.verdict {
            result["failing"] = json!(failing);
        }
        let mut o = Outcome::new(outcome, code, Value::Null);
        if let Some(ideal) = &r.invariant_ideal {
            let thread: Vec<String> = ideal
                .thread
                .iter()
                .enumerate()
                .map(|(i, &p)| tower.label(i + 1, p).to_string())
                .collect();
            result["invariant_ideal"] = json!({"thread": thread, "verified": ideal.verified});
            if ideal.verified {
                o.witnesses.push(json!({
                    "kind": "fixed-thread-ideal",
                    "tower_hash": tower_hash(tower, act),
                    "depth": r.depth,
                    "thread": thread,
                }));
            }
        }
        o.result = result;
        o.reasoning = r.reasoning;
        Ok(o)
    }

    fn verify(&self) -> Result<Outcome> {
        let artifacts = collect_artifacts(required(&self.input().certificate, "/input/certificate")?)?;
        let mut ring: Option<SkewRingContext> = None;
        let mut tower: Option<(Tower, TowerAction)> = None;
        let mut checks = Vec::new();
        let mut all = true;
        for (i, a) in artifacts.iter().enumerate() {
            let p = format!("/input/certificate/{i}");
            let kind = a.get("kind").and_then(Value::as_str).ok_or_else(|| Error::schema(format!("{p}/kind"), "missing kind"))?;
            let outcome = if kind == "fixed-thread-ideal" {
                if tower.is_none() {
                    let spec = required(&self.input().tower, "/input/tower")?;
                    tower = Some(tower_from_spec(spec, self.job.options.depth)?);
                }
                let (tw, act) = tower.as_ref().expect("set above");
                verify_thread_artifact(tw, act, a, &p)?
            } else {
                if ring.is_none() {
                    ring = Some(self.ring()?);
                }
                verify_ring_artifact(ring.as_ref().expect("set above"), a, &p)?
            };
            all &= outcome.is_ok();
            checks.push(json!({
                "kind": kind,
                "verified": outcome.is_ok(),
                "reason": outcome.err(),
            }));
        }
        let mut o = Outcome::new(
            if all { "verified" } else { "rejected" },
            if all { 0 } else { 1 },
            json!({"artifacts": checks, "all_verified": all}),
        );
        o.reasoning
            .push(format!("[independent-check] {} artifact(s) re-evaluated with ring arithmetic only", artifacts.len()));
        Ok(o)
    }
}

fn corner_witness_json(ctx: &SkewRingContext, g: usize, w: &CornerInnerWitness) -> Value {
    let mut v = w.to_json();
    v["kind"] = json!("corner-inner-witness");
    v["ring_hash"] = json!(ring_hash(ctx));
    v["element"] = json!(ctx.group().label(g));
    v
}

/// Accepts one artifact, an array, or a report (its certificates then witnesses).
pub fn collect_artifacts(v: &Value) -> Result<Vec<Value>> {
    match v {
        Value::Array(a) => Ok(a.clone()),
        Value::Object(m) if m.contains_key("kind") => Ok(vec![v.clone()]),
        Value::Object(m) if m.contains_key("certificates") || m.contains_key("witnesses") => {
            let mut out = Vec::new();
            for key in ["certificates", "witnesses"] {
                if let Some(Value::Array(a)) = m.get(key) {
                    out.extend(a.iter().cloned());
                }
            }
            Ok(out)
        }
        _ => Err(Error::schema(
            "/input/certificate",
            "expected an artifact, an array of artifacts or a report",
        )),
    }
}

fn field_str<'v>(a: &'v Value, key: &str, p: &str) -> Result<&'v str> {
    a.get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| Error::schema(format!("{p}/{key}"), "expected a string"))
}

fn check_hash(expected: &str, found: String) -> Result<()> {
    if expected != found {
        return Err(Error::HashMismatch {
            expected: expected.to_string(),
            found,
        });
    }
    Ok(())
}

/// Re-checks a ring artifact. The outer error is an input problem; the
/// inner one is a failed verification.
pub fn verify_ring_artifact(ctx: &SkewRingContext, a: &Value, p: &str) -> Result<std::result::Result<(), String>> {
    check_hash(field_str(a, "ring_hash", p)?, ring_hash(ctx))?;
    let elem = |key: &str| -> Result<SkewElement> {
        let v = a.get(key).ok_or_else(|| Error::schema(format!("{p}/{key}"), "missing"))?;
        ctx.element_from_json(v).map_err(|e| at(&format!("{p}/{key}"), e))
    };
    let ground = |key: &str| -> Result<GroundElement> {
        let v = a.get(key).ok_or_else(|| Error::schema(format!("{p}/{key}"), "missing"))?;
        let g = GroundElement::from_json(ctx.field(), v).map_err(|e| at(&format!("{p}/{key}"), e))?;
        ctx.check_ground(&g).map_err(|e| at(&format!("{p}/{key}"), e))?;
        Ok(g)
    };
    match field_str(a, "kind", p)? {
        "unit-certificate" => {
            let x = elem("x")?;
            let pairs = a
                .get("pairs")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::schema(format!("{p}/pairs"), "expected an array"))?
                .iter()
                .enumerate()
                .map(|(k, pair)| {
                    let pp = format!("{p}/pairs/{k}");
                    let arr = pair
                        .as_array()
                        .filter(|x| x.len() == 2)
                        .ok_or_else(|| Error::schema(&pp, "expected [a, b]"))?;
                    let a = ctx.element_from_json(&arr[0]).map_err(|e| at(&format!("{pp}/0"), e))?;
                    let b = ctx.element_from_json(&arr[1]).map_err(|e| at(&format!("{pp}/1"), e))?;
                    Ok((a, b))
                })
                .collect::<Result<Vec<_>>>()?;
            let cert = Certificate { x, pairs };
            Ok(if cert.verify(ctx) { Ok(()) } else { Err("Σ aᵢ·x·bᵢ ≠ 1".into()) })
        }
        "proper-ideal-witness" => {
            let w = elem("generator")?;
            let coords: Vec<usize> = a
                .get("invariant_coordinates")
                .and_then(Value::as_array)
                .and_then(|v| v.iter().map(|c| c.as_u64().and_then(|c| (c as usize).checked_sub(1))).collect())
                .ok_or_else(|| Error::schema(format!("{p}/invariant_coordinates"), "expected 1-indexed coordinates"))?;
            Ok(check_properness(ctx, &w, &coords))
        }
        "invariant-idempotent" => {
            let e = ground("idempotent")?;
            let ok = !e.is_zero() && !e.is_one() && e.is_idempotent() && ctx.group().elements().all(|g| ctx.act(g, &e) == e);
            Ok(if ok { Ok(()) } else { Err("not a proper nonzero G-invariant idempotent".into()) })
        }
        "corner-inner-witness" => {
            let label = field_str(a, "element", p)?;
            let g = ctx.action().element(label).map_err(|e| at(&format!("{p}/element"), e))?;
            let w = CornerInnerWitness {
                e: ground("e")?,
                e_prime: ground("e_prime")?,
                u: ground("u")?,
                v: ground("v")?,
            };
            Ok(check_corner_inner_witness(ctx.action(), g, &w))
        }
        other => Err(Error::schema(format!("{p}/kind"), format!("unknown artifact kind {other:?}"))),
    }
}

fn verify_thread_artifact(tower: &Tower, act: &TowerAction, a: &Value, p: &str) -> Result<std::result::Result<(), String>> {
    check_hash(field_str(a, "tower_hash", p)?, tower_hash(tower, act))?;
    let depth = a
        .get("depth")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::schema(format!("{p}/depth"), "expected a level"))? as usize;
    if depth == 0 || depth > tower.depth() {
        return Err(Error::schema(format!("{p}/depth"), "depth outside the tower"));
    }
    let labels = a
        .get("thread")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::schema(format!("{p}/thread"), "expected labels"))?;
    if labels.len() != depth {
        return Ok(Err("thread length differs from depth".into()));
    }
    let mut thread = Vec::new();
    for (i, l) in labels.iter().enumerate() {
        match l.as_str().and_then(|s| tower.point(i + 1, s)) {
            Some(q) => thread.push(q),
            None => return Err(Error::schema(format!("{p}/thread/{i}"), "unknown point label")),
        }
    }
    let ok = verify_fixed_thread_ideal(tower, act, &thread, depth, Field::Rational)?;
    Ok(if ok { Ok(()) } else { Err("the vanishing ideal is not invariant".into()) })
}

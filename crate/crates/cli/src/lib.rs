//! Request handling for the `homlie` command-line tool.
//!
//! A request names an algebra, a ground field and a list of tasks. [`run`]
//! executes the tasks and returns a JSON report whose bytes depend only on
//! the request; wall-clock timings are returned separately.

pub mod algebra;
pub mod render;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use homlie_core::binhom::{f_space, r_bracket_is_lie, r_matrix_check, Symmetry};
use homlie_core::homspaces::{centroid_basis, check_submodule, hom_lie_basis};
use homlie_core::jordancheck::{
    anticommutator_closure, derivation_property, harvest_idempotents, harvest_square_zero, square_closure,
    trace_form_radical, twisted_closure, TwistMode,
};
use homlie_core::liealg::field_of_document;
use homlie_core::suits::{diamond_search, heart_search};
use homlie_core::{Error, Field, FieldSpec, Fp, LieAlgebra, MapSpace, Matrix, Rational};
use serde_json::{json, Map, Value};

pub use algebra::{parse_params, Constructor};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Tasks in dependency order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Task {
    Validate,
    Homlie,
    Centroid,
    Jordan,
    Twisted,
    Suits,
    Fspace,
    Rmatrix,
}

impl Task {
    pub const ALL: [Task; 8] = [
        Task::Validate,
        Task::Homlie,
        Task::Centroid,
        Task::Jordan,
        Task::Twisted,
        Task::Suits,
        Task::Fspace,
        Task::Rmatrix,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Task::Validate => "validate",
            Task::Homlie => "homlie",
            Task::Centroid => "centroid",
            Task::Jordan => "jordan",
            Task::Twisted => "twisted",
            Task::Suits => "suits",
            Task::Fspace => "fspace",
            Task::Rmatrix => "rmatrix",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Task::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .with_context(|| format!("unknown task {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraSource {
    Constructor(Constructor),
    File(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisRequest {
    pub source: AlgebraSource,
    /// Explicit field; otherwise taken from the document or the constructor.
    pub field: Option<FieldSpec>,
    pub tasks: Vec<Task>,
    pub seed: u64,
    pub budget: usize,
    pub symmetry: Symmetry,
    pub alpha: Option<PathBuf>,
    pub phi: Option<PathBuf>,
}

impl AnalysisRequest {
    pub fn new(source: AlgebraSource, tasks: Vec<Task>) -> Self {
        AnalysisRequest {
            source,
            field: None,
            tasks,
            seed: 0,
            budget: homlie_core::jordancheck::DEFAULT_BUDGET,
            symmetry: Symmetry::Any,
            alpha: None,
            phi: None,
        }
    }

    fn echo(&self, field: FieldSpec) -> Value {
        let (algebra, params, input) = match &self.source {
            AlgebraSource::Constructor(c) => (json!(c.name), json!(c.params), Value::Null),
            AlgebraSource::File(p) => (Value::Null, Value::Null, json!(p.display().to_string())),
        };
        let mut tasks = self.tasks.clone();
        tasks.sort();
        tasks.dedup();
        json!({
            "algebra": algebra,
            "params": params,
            "input": input,
            "field": field.to_string(),
            "tasks": tasks.iter().map(|t| t.name()).collect::<Vec<_>>(),
            "seed": self.seed,
            "budget": self.budget,
            "symmetry": tasks.contains(&Task::Fspace).then(|| self.symmetry.name()),
            "alpha": self.alpha.as_ref().map(|p| p.display().to_string()),
            "phi": self.phi.as_ref().map(|p| p.display().to_string()),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunOutput {
    pub report: Value,
    /// Seconds per task; kept out of the report so that it stays reproducible.
    pub timings: Value,
    pub completed: bool,
}

impl RunOutput {
    /// Canonical report bytes.
    pub fn report_bytes(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("serializable");
        s.push('\n');
        s
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("{} is not valid JSON", path.display()))
}

enum Loaded {
    Constructor(Constructor),
    Document(Value),
}

fn resolve(req: &AnalysisRequest) -> Result<(FieldSpec, Loaded, String)> {
    match &req.source {
        AlgebraSource::Constructor(c) => {
            let implied = c.implied_field()?;
            let field = match (req.field, implied) {
                (Some(f), Some(g)) if f != g => bail!("field {f} conflicts with {g} implied by {}", c.label()),
                (Some(f), _) | (None, Some(f)) => f,
                (None, None) => FieldSpec::Rationals,
            };
            if c.needs_prime_field() && field == FieldSpec::Rationals {
                bail!(
                    "{} needs a prime field: pass --field GF:p or the parameter p",
                    c.label()
                );
            }
            Ok((field, Loaded::Constructor(c.clone()), c.label()))
        }
        AlgebraSource::File(p) => {
            let doc = read_json(p)?;
            let found = field_of_document(&doc).with_context(|| format!("cannot parse algebra {}", p.display()))?;
            if let Some(f) = req.field {
                if f != found {
                    return Err(Error::FieldMismatch { expected: f, found })
                        .with_context(|| format!("algebra {}", p.display()));
                }
            }
            let name = Path::new(p)
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            Ok((found, Loaded::Document(doc), name))
        }
    }
}

/// Instantiates `$f::<T>(args)` for the scalar type named by a [`FieldSpec`].
macro_rules! dispatch {
    ($spec:expr, $f:ident $args:tt) => {
        match $spec {
            FieldSpec::Rationals => $f::<Rational> $args,
            FieldSpec::PrimeField { p } => dispatch!(@prime p, $f $args;
                3 5 7 11 13 17 19 23 29 31 37 41 43 47 53 59 61 67 71 73 79 83 89 97 101 103 107 109 113 127),
        }
    };
    (@prime $p:ident, $f:ident $args:tt; $($q:literal)*) => {
        match $p {
            $($q => $f::<Fp<$q>> $args,)*
            other => bail!("GF:{other} is not supported; prime fields are limited to odd p < 128"),
        }
    };
}

fn build<T: Field>(loaded: &Loaded) -> Result<LieAlgebra<T>> {
    match loaded {
        Loaded::Constructor(c) => c.build(),
        Loaded::Document(doc) => Ok(LieAlgebra::from_json(doc).context("cannot parse algebra document")?),
    }
}

/// Execute a request. Errors are returned only when the algebra itself cannot
/// be produced; task failures are recorded in the report.
pub fn run(req: &AnalysisRequest) -> Result<RunOutput> {
    let (field, loaded, name) = resolve(req)?;
    dispatch!(field, run_typed(req, &loaded, name))
}

fn run_typed<T: Field>(req: &AnalysisRequest, loaded: &Loaded, name: String) -> Result<RunOutput> {
    let l = build::<T>(loaded)?;
    let mut ctx = Pipeline::new(req, &l);
    let mut tasks = req.tasks.clone();
    tasks.sort();
    tasks.dedup();
    let mut results = Map::new();
    let mut timings = Map::new();
    let mut completed = true;
    for task in tasks {
        let start = Instant::now();
        let r = ctx.task(task);
        timings.insert(task.name().into(), json!(start.elapsed().as_secs_f64()));
        let v = match r {
            Ok(Value::Object(mut m)) => {
                m.insert("status".into(), json!("ok"));
                Value::Object(m)
            }
            Ok(other) => json!({"status": "ok", "value": other}),
            Err(e) => {
                completed = false;
                json!({"status": "error", "error": format!("{e:#}")})
            }
        };
        results.insert(task.name().into(), v);
    }
    let report = json!({
        "tool": "homlie",
        "version": VERSION,
        "request": req.echo(T::spec()),
        "algebra": {"name": name, "field": T::spec().to_json(), "dim": l.dim()},
        "completed": completed,
        "results": results,
    });
    Ok(RunOutput {
        report,
        timings: Value::Object(timings),
        completed,
    })
}

struct Pipeline<'a, T> {
    req: &'a AnalysisRequest,
    l: &'a LieAlgebra<T>,
    homlie: Option<std::result::Result<MapSpace<T>, Error>>,
}

fn load_matrix<T: Field>(path: &Option<PathBuf>, flag: &str, n: usize) -> Result<Matrix<T>> {
    let path = path
        .as_ref()
        .with_context(|| format!("this task needs --{flag} <file>"))?;
    let doc = read_json(path)?;
    let m = Matrix::<T>::from_json(&doc).with_context(|| format!("cannot parse matrix {}", path.display()))?;
    if m.rows() != n || m.cols() != n {
        bail!(
            "matrix {} is {}x{}, expected {n}x{n}",
            path.display(),
            m.rows(),
            m.cols()
        );
    }
    Ok(m)
}

impl<'a, T: Field> Pipeline<'a, T> {
    fn new(req: &'a AnalysisRequest, l: &'a LieAlgebra<T>) -> Self {
        Pipeline { req, l, homlie: None }
    }

    fn homlie(&mut self) -> Result<&MapSpace<T>> {
        let l = self.l;
        let r = self.homlie.get_or_insert_with(|| hom_lie_basis(l));
        r.as_ref().map_err(|e| anyhow::anyhow!("hom_lie_basis failed: {e}"))
    }

    fn task(&mut self, task: Task) -> Result<Value> {
        let l = self.l;
        let (seed, budget) = (self.req.seed, self.req.budget);
        match task {
            Task::Validate => Ok(match l.validate() {
                Ok(()) => json!({"valid": true}),
                Err(v) => json!({
                    "valid": false,
                    "violation": {
                        "triple": [v.triple.0, v.triple.1, v.triple.2],
                        "defect": v.defect.iter().map(Field::to_json).collect::<Vec<_>>(),
                    },
                }),
            }),
            Task::Homlie => Ok(self.homlie()?.to_json()),
            Task::Centroid => {
                let c = centroid_basis(l)?;
                let contained = self.homlie().ok().map(|h| c.is_subspace_of(h));
                let mut v = c.to_json();
                v["contained_in_homlie"] = json!(contained);
                Ok(v)
            }
            Task::Jordan => {
                let s = self.homlie()?.clone();
                let closure = anticommutator_closure(&s);
                let mut v = json!({
                    "homlie_dim": s.dim(),
                    "closure": closure.to_json(),
                    "square_closure": square_closure(&s),
                    "submodule": check_submodule(l, &s),
                    "idempotents": harvest_idempotents(l, &s, budget, seed).to_json(),
                    "square_zero": harvest_square_zero(l, &s, budget, seed).to_json(),
                });
                if closure.closed {
                    v["trace_radical"] = trace_form_radical(&s, &closure)?.to_json();
                    v["derivation_property"] = json!(derivation_property(l, &s)?);
                }
                Ok(v)
            }
            Task::Twisted => {
                let alpha = load_matrix::<T>(&self.req.alpha, "alpha", l.dim())?;
                let s = self.homlie()?;
                let general = twisted_closure(l, s, &alpha, TwistMode::General)?;
                let automorphism = if l.is_automorphism(&alpha) {
                    twisted_closure(l, s, &alpha, TwistMode::Automorphism)?.to_json()
                } else {
                    Value::Null
                };
                Ok(json!({
                    "alpha_is_automorphism": l.is_automorphism(&alpha),
                    "general": general.to_json(),
                    "automorphism": automorphism,
                }))
            }
            Task::Suits => {
                self.homlie()?;
                Ok(json!({
                    "diamond": diamond_search(l, budget, seed)?.to_json(),
                    "heart": heart_search(l, budget, seed)?.to_json(),
                }))
            }
            Task::Fspace => Ok(f_space(l, self.req.symmetry)?.to_json()),
            Task::Rmatrix => {
                let phi = load_matrix::<T>(&self.req.phi, "phi", l.dim())?;
                let mut v = r_matrix_check(l, &phi)?.to_json();
                v["r_bracket_is_lie"] = json!(r_bracket_is_lie(l, &phi)?);
                Ok(v)
            }
        }
    }
}

/// One batch entry: `{"algebra": name, "params": {..}, "field": "Q"}` or
/// `{"input": path}`.
pub fn batch_entry(v: &Value, base: Option<&Path>) -> Result<AlgebraSpec> {
    let field = match v.get("field") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.parse::<FieldSpec>()?),
        Some(other) => Some(FieldSpec::from_json(other)?),
    };
    let source = if let Some(p) = v.get("input").and_then(Value::as_str) {
        let p = PathBuf::from(p);
        AlgebraSource::File(match base {
            Some(b) if p.is_relative() => b.join(p),
            _ => p,
        })
    } else {
        let name = v
            .get("algebra")
            .and_then(Value::as_str)
            .context("batch entry needs \"algebra\" or \"input\"")?;
        let mut params = BTreeMap::new();
        if let Some(obj) = v.get("params").and_then(Value::as_object) {
            for (k, x) in obj {
                let s = match x {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                params.insert(k.clone(), s);
            }
        }
        AlgebraSource::Constructor(Constructor::new(name, params)?)
    };
    Ok(AlgebraSpec { source, field })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub source: AlgebraSource,
    pub field: Option<FieldSpec>,
}

impl AlgebraSpec {
    fn label(&self) -> String {
        match &self.source {
            AlgebraSource::Constructor(c) => c.label(),
            AlgebraSource::File(p) => p.display().to_string(),
        }
    }
}

fn is_cap(e: &anyhow::Error) -> bool {
    e.chain()
        .any(|c| matches!(c.downcast_ref::<Error>(), Some(Error::CapExceeded { .. })))
}

fn first_error(results: &Value) -> Option<(bool, String)> {
    results.as_object()?.values().find_map(|r| {
        (r["status"] == "error").then(|| {
            let msg = r["error"].as_str().unwrap_or_default().to_string();
            (msg.contains("cap exceeded"), msg)
        })
    })
}

/// Aggregate table over a batch of algebras: one row per entry, failures
/// isolated to their row.
pub fn evidence_table(entries: &[AlgebraSpec], seed: u64, budget: usize) -> RunOutput {
    let mut rows = Vec::new();
    let mut timings = Vec::new();
    let mut completed = true;
    for spec in entries {
        let start = Instant::now();
        let mut req = AnalysisRequest::new(spec.source.clone(), vec![Task::Homlie, Task::Jordan, Task::Suits]);
        req.field = spec.field;
        req.seed = seed;
        req.budget = budget;
        let row = match run(&req) {
            Ok(out) => {
                let r = &out.report["results"];
                let status = match first_error(r) {
                    None => "ok".to_string(),
                    Some((true, _)) => "skipped: cap".to_string(),
                    Some((false, msg)) => format!("error: {msg}"),
                };
                completed &= out.completed;
                let ok = status == "ok";
                json!({
                    "algebra": spec.label(),
                    "field": out.report["request"]["field"],
                    "dim": out.report["algebra"]["dim"],
                    "homlie_dim": if ok { r["homlie"]["dim"].clone() } else { Value::Null },
                    "closed": if ok { r["jordan"]["closure"]["closed"].clone() } else { Value::Null },
                    "diamond": if ok { json!(!r["suits"]["diamond"]["witness"].is_null()) } else { Value::Null },
                    "heart": if ok { json!(!r["suits"]["heart"]["witness"].is_null()) } else { Value::Null },
                    "status": status,
                })
            }
            Err(e) => {
                completed = false;
                let status = if is_cap(&e) {
                    "skipped: cap".to_string()
                } else {
                    format!("error: {e:#}")
                };
                json!({
                    "algebra": spec.label(),
                    "field": spec.field.map(|f| f.to_string()),
                    "dim": null, "homlie_dim": null, "closed": null, "diamond": null, "heart": null,
                    "status": status,
                })
            }
        };
        timings.push(json!({"algebra": spec.label(), "seconds": start.elapsed().as_secs_f64()}));
        rows.push(row);
    }
    RunOutput {
        report: json!({
            "tool": "homlie",
            "version": VERSION,
            "seed": seed,
            "budget": budget,
            "completed": completed,
            "rows": rows,
        }),
        timings: Value::Array(timings),
        completed,
    }
}

/// Read a batch file: a JSON array of entries, or `{"entries": [...]}`.
pub fn load_batch(path: &Path) -> Result<Vec<AlgebraSpec>> {
    let doc = read_json(path)?;
    let items = match &doc {
        Value::Array(a) => a,
        Value::Object(o) => o
            .get("entries")
            .and_then(Value::as_array)
            .context("batch object needs an \"entries\" array")?,
        _ => bail!("batch file must be an array of entries"),
    };
    let base = path.parent();
    items
        .iter()
        .enumerate()
        .map(|(i, v)| batch_entry(v, base).with_context(|| format!("batch entry {i}")))
        .collect()
}

//! Batch interface: one command applied to one JSON document.
//!
//! Every report carries `status` (`ok`, `violation` or `error`), the input
//! re-encoded in canonical form, a `result` and, for violations, a
//! `witness`. Exit codes are 0, 1 and 2 respectively.

use serde_json::{json, Map, Value};

use crate::building::{
    class_equal, flag_to_seminorm, seminorm_to_flag, tight_span_chart, trivial_project, MaxPlusMatroid,
};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::json::*;
use crate::lattice::{adjacency, gauge, jump_chain, membrane_roundtrip, tree_ball, tree_neighbors, unit_ball, Adjacency};
use crate::linspace::{
    bergman_contains, check_small_circuits, is_closed, local_tls_contains, project_pi, reconstruct_seminorm,
    section_j, tls_violation, BergmanMembership, Embedding, ReconstructOptions, SmallCircuitViolation, TableOracle,
};
use crate::matroid::{check_plucker, Subset, ValuatedMatroid};
use crate::sample::Sampler;
use crate::trop::TropPoint;

pub const COMMANDS: &[&str] = &[
    "matroid-from-matrix",
    "check-plucker",
    "underlying-matroid",
    "initial-matroid",
    "flats",
    "tls-contains",
    "local-contains",
    "project",
    "section",
    "class-equal",
    "flag-to-seminorm",
    "seminorm-to-flag",
    "trivial-project",
    "bergman-contains",
    "small-circuits",
    "reconstruct",
    "gauge",
    "unit-ball",
    "jump-chain",
    "adjacent",
    "tree-neighbors",
    "membrane-roundtrip",
    "tight-span-chart",
    "selfcheck",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOptions {
    /// Seed for `selfcheck`.
    pub seed: u64,
    /// Largest accepted `n` (ground set `{0..n}`).
    pub max_n: usize,
    /// Largest accepted rank `r+1`.
    pub max_rank: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { seed: 0, max_n: 15, max_rank: 8 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Violation,
    Error,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Violation => "violation",
            Status::Error => "error",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Violation => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub input: Value,
    pub result: Value,
    pub witness: Value,
    pub error: Option<String>,
}

impl Report {
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("schema".into(), json!(SCHEMA));
        m.insert("command".into(), json!(self.command));
        m.insert("status".into(), json!(self.status.name()));
        m.insert("input".into(), self.input.clone());
        m.insert("result".into(), self.result.clone());
        if !self.witness.is_null() {
            m.insert("witness".into(), self.witness.clone());
        }
        if let Some(e) = &self.error {
            m.insert("error".into(), json!(e));
        }
        Value::Object(m)
    }

    /// Pretty JSON with keys sorted, newline terminated.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }
}

/// The canonical echo of the input, built while parsing.
struct Echo(Map<String, Value>);

impl Echo {
    fn put(&mut self, key: &str, v: Value) {
        self.0.insert(key.to_string(), v);
    }
}

struct Outcome {
    status: Status,
    result: Value,
    witness: Value,
}

fn ok(result: Value) -> Result<Outcome> {
    Ok(Outcome { status: Status::Ok, result, witness: Value::Null })
}

fn violation(result: Value, witness: Value) -> Result<Outcome> {
    Ok(Outcome { status: Status::Violation, result, witness })
}

/// Parses `text` and runs `command` on it.
pub fn run_str(command: &str, text: &str, opts: &RunOptions) -> Report {
    match serde_json::from_str::<Value>(text) {
        Ok(v) => run(command, &v, opts),
        Err(e) => Report {
            command: command.to_string(),
            status: Status::Error,
            input: Value::String(text.to_string()),
            result: Value::Null,
            witness: Value::Null,
            error: Some(format!("invalid JSON: {e}")),
        },
    }
}

pub fn run(command: &str, input: &Value, opts: &RunOptions) -> Report {
    let mut echo = Echo(Map::new());
    echo.put("schema", json!(SCHEMA));
    let outcome = check_schema(input).and_then(|()| dispatch(command, input, opts, &mut echo));
    match outcome {
        Ok(o) => Report {
            command: command.to_string(),
            status: o.status,
            input: Value::Object(echo.0),
            result: o.result,
            witness: o.witness,
            error: None,
        },
        Err(e) => Report {
            command: command.to_string(),
            status: Status::Error,
            input: input.clone(),
            result: Value::Null,
            witness: Value::Null,
            error: Some(e.to_string()),
        },
    }
}

fn check_schema(input: &Value) -> Result<()> {
    if !input.is_object() {
        return Err(Error::Parse("the input document must be an object".into()));
    }
    match input.get("schema").and_then(Value::as_str) {
        Some(SCHEMA) => Ok(()),
        Some(s) => Err(Error::Parse(format!("unsupported schema {s:?}, expected {SCHEMA:?}"))),
        None => Err(Error::Parse(format!("missing \"schema\": {SCHEMA:?}"))),
    }
}

fn dispatch(command: &str, inp: &Value, opts: &RunOptions, echo: &mut Echo) -> Result<Outcome> {
    match command {
        "matroid-from-matrix" => {
            let iota = embedding(inp, opts, echo)?;
            ok(table_to_json(iota.matroid().table()))
        }
        "check-plucker" => {
            let t = table_from_json(get(inp, "matroid")?)?;
            guard(opts, t.ground(), t.rank())?;
            echo.put("matroid", table_to_json(&t));
            match check_plucker(&t) {
                None => ok(json!({"valid": true})),
                Some(w) => violation(json!({"valid": false}), json!({"tau": w.tau.to_vec(), "sigma": w.sigma.to_vec()})),
            }
        }
        "underlying-matroid" => {
            let v = valuated(inp, opts, echo)?;
            ok(matroid_to_json(&v.underlying_matroid()))
        }
        "initial-matroid" => {
            let v = valuated(inp, opts, echo)?;
            let u = point(inp, "u", v.ground(), echo)?;
            ok(matroid_to_json(&v.initial_matroid(&u)?))
        }
        "flats" => {
            let m = matroid_from_json(get(inp, "matroid")?)?;
            guard(opts, m.ground(), m.rank())?;
            echo.put("matroid", matroid_to_json(&m));
            let l = m.flats()?;
            let mut res = json!({
                "flats": l.flats().iter().map(|s| s.to_vec()).collect::<Vec<_>>(),
                "ranks": (0..l.flats().len()).map(|i| l.rank_of_flat(i)).collect::<Vec<_>>(),
                "covers": (0..l.flats().len()).map(|i| l.covers(i).to_vec()).collect::<Vec<_>>(),
            });
            if inp.get("chains").and_then(Value::as_bool) == Some(true) {
                echo.put("chains", json!(true));
                let chains: Vec<Vec<Vec<usize>>> =
                    l.maximal_chains().iter().map(|c| c.iter().map(|s| s.to_vec()).collect()).collect();
                res["chains"] = json!(chains);
            }
            ok(res)
        }
        "tls-contains" => {
            let v = valuated(inp, opts, echo)?;
            let u = point(inp, "u", v.ground(), echo)?;
            match tls_violation(&v, &u)? {
                None => ok(json!({"member": true})),
                Some(tau) => violation(json!({"member": false}), json!({"circuit": tau.to_vec()})),
            }
        }
        "local-contains" => {
            let iota = embedding(inp, opts, echo)?;
            let b = basis(inp, iota.len(), echo)?;
            let u = point(inp, "u", iota.len(), echo)?;
            if local_tls_contains(&iota, b, &u)? {
                ok(json!({"member": true}))
            } else {
                violation(json!({"member": false}), json!({"basis": b.to_vec()}))
            }
        }
        "project" => {
            let iota = embedding(inp, opts, echo)?;
            let x = seminorm(inp, "seminorm", iota.spec(), echo)?;
            ok(point_to_json(&project_pi(&iota, &x)?))
        }
        "section" => {
            let iota = embedding(inp, opts, echo)?;
            let u = point(inp, "u", iota.len(), echo)?;
            match section_j(&iota, &u) {
                Ok(s) => ok(json!({"basis": s.basis.to_vec(), "seminorm": seminorm_to_json(&s.seminorm)})),
                Err(Error::NotMember { tau }) => violation(Value::Null, json!({"circuit": tau})),
                Err(e) => Err(e),
            }
        }
        "class-equal" => {
            let spec = field(inp, echo)?;
            let x = seminorm(inp, "x", spec, echo)?;
            let y = seminorm(inp, "y", spec, echo)?;
            ok(json!({"equal": class_equal(&x, &y)?}))
        }
        "flag-to-seminorm" => {
            let spec = field(inp, echo)?;
            let dim = usize_from_json(get(inp, "dim")?)?;
            guard(opts, dim, dim)?;
            echo.put("dim", json!(dim));
            let f = flag_from_json(spec, dim, get(inp, "flag")?)?;
            echo.put("flag", flag_to_json(&f));
            ok(seminorm_to_json(&flag_to_seminorm(&f)?))
        }
        "seminorm-to-flag" => {
            let spec = field(inp, echo)?;
            let x = seminorm(inp, "seminorm", spec, echo)?;
            ok(flag_to_json(&seminorm_to_flag(&x)?))
        }
        "trivial-project" => {
            let iota = embedding(inp, opts, echo)?;
            let f = flag_from_json(iota.spec(), iota.dim(), get(inp, "flag")?)?;
            echo.put("flag", flag_to_json(&f));
            ok(point_to_json(&trivial_project(&iota, &f)?))
        }
        "bergman-contains" => {
            let m = matroid_from_json(get(inp, "matroid")?)?;
            guard(opts, m.ground(), m.rank())?;
            echo.put("matroid", matroid_to_json(&m));
            let u = point(inp, "u", m.ground(), echo)?;
            match bergman_contains(&m, &u)? {
                BergmanMembership::Member(w) => ok(json!({
                    "member": true,
                    "chain": w.chain.iter().map(|s| s.to_vec()).collect::<Vec<_>>(),
                    "coefficients": w.coefficients.iter().map(tropval_to_json).collect::<Vec<_>>(),
                    "offset": rational_to_json(&w.offset),
                })),
                BergmanMembership::NotMember { non_flat } => {
                    violation(json!({"member": false}), json!({"non_flat": non_flat.to_vec()}))
                }
            }
        }
        "small-circuits" => {
            let spec = field(inp, echo)?;
            let mut assign = Vec::new();
            for e in array(get(inp, "assign")?, "a list of assignments")? {
                assign.push((covector_from_json(spec, get(e, "covector")?)?, tropval_from_json(get(e, "value")?)?));
            }
            if let Some((f, _)) = assign.first() {
                guard(opts, assign.len(), f.len())?;
            }
            echo.put(
                "assign",
                Value::Array(
                    assign.iter().map(|(f, u)| json!({"covector": covector_to_json(f), "value": tropval_to_json(u)})).collect(),
                ),
            );
            let set: Vec<_> = assign.iter().map(|(f, _)| f.clone()).collect();
            let verdict = check_small_circuits(spec, &assign)?;
            let closed = is_closed(spec, &set)?;
            match verdict {
                None => ok(json!({"valid": true, "closed": closed})),
                Some(SmallCircuitViolation::Scaling { base, scaled }) => violation(
                    json!({"valid": false, "closed": closed}),
                    json!({"kind": "scaling", "base": base, "scaled": scaled}),
                ),
                Some(SmallCircuitViolation::Sum { a, b, sum }) => violation(
                    json!({"valid": false, "closed": closed}),
                    json!({"kind": "sum", "a": a, "b": b, "sum": sum}),
                ),
            }
        }
        "reconstruct" => {
            let spec = field(inp, echo)?;
            let dim = usize_from_json(get(inp, "dim")?)?;
            guard(opts, dim, dim)?;
            echo.put("dim", json!(dim));
            let queries = array(get(inp, "queries")?, "a list of covectors")?
                .iter()
                .map(|q| covector_from_json(spec, q))
                .collect::<Result<Vec<_>>>()?;
            echo.put("queries", Value::Array(queries.iter().map(|q| covector_to_json(q)).collect()));
            let mut entries = Vec::new();
            for e in array(get(inp, "oracle")?, "an oracle table")? {
                entries.push((matrix_from_json(spec, get(e, "columns")?)?, point_from_json(get(e, "point")?)?));
            }
            echo.put(
                "oracle",
                Value::Array(
                    entries.iter().map(|(m, y)| json!({"columns": matrix_to_json(m), "point": point_to_json(y)})).collect(),
                ),
            );
            let checks = match inp.get("checks") {
                Some(c) => usize_from_json(c)?,
                None => ReconstructOptions::default().checks,
            };
            echo.put("checks", json!(checks));
            let oracle = TableOracle::new(entries);
            match reconstruct_seminorm(&oracle, spec, dim, &queries, &ReconstructOptions { checks }) {
                Ok(r) => ok(json!({
                    "reference": r.reference,
                    "values": r.values.iter().map(tropval_to_json).collect::<Vec<_>>(),
                })),
                Err(Error::OracleInconsistent { query, first, first_value, second, second_value }) => violation(
                    Value::Null,
                    json!({
                        "query": query,
                        "first": {"columns": matrix_to_json(&first), "value": tropval_to_json(&first_value)},
                        "second": {"columns": matrix_to_json(&second), "value": tropval_to_json(&second_value)},
                    }),
                ),
                Err(e) => Err(e),
            }
        }
        "gauge" => {
            let spec = field(inp, echo)?;
            let l = lattice_from_json(spec, get(inp, "lattice")?)?;
            echo.put("lattice", lattice_to_json(&l));
            ok(seminorm_to_json(&gauge(&l)?))
        }
        "unit-ball" => {
            let spec = field(inp, echo)?;
            let x = seminorm(inp, "seminorm", spec, echo)?;
            ok(lattice_to_json(&unit_ball(&x)?))
        }
        "jump-chain" => {
            let spec = field(inp, echo)?;
            let x = seminorm(inp, "seminorm", spec, echo)?;
            let c = jump_chain(&x)?;
            ok(json!({
                "lattices": c.lattices.iter().map(lattice_to_json).collect::<Vec<_>>(),
                "jumps": c.jumps.iter().map(rational_to_json).collect::<Vec<_>>(),
            }))
        }
        "adjacent" => {
            let spec = field(inp, echo)?;
            let a = lattice_from_json(spec, get(inp, "a")?)?;
            let b = lattice_from_json(spec, get(inp, "b")?)?;
            echo.put("a", lattice_to_json(&a));
            echo.put("b", lattice_to_json(&b));
            let (kind, d) = adjacency(&a, &b)?;
            let name = match kind {
                Adjacency::Equal => "equal",
                Adjacency::Adjacent => "adjacent",
                Adjacency::NotAdjacent => "not-adjacent",
            };
            ok(json!({"adjacent": kind == Adjacency::Adjacent, "relation": name, "divisors": d}))
        }
        "tree-neighbors" => {
            let spec = field(inp, echo)?;
            let l = lattice_from_json(spec, get(inp, "lattice")?)?;
            echo.put("lattice", lattice_to_json(&l));
            match inp.get("radius") {
                None => {
                    let nb = tree_neighbors(&l)?;
                    ok(json!({"nodes": nb.iter().map(lattice_to_json).collect::<Vec<_>>()}))
                }
                Some(r) => {
                    let r = usize_from_json(r)?;
                    if r > 4 {
                        return Err(Error::Limit("tree exports are limited to radius 4".into()));
                    }
                    echo.put("radius", json!(r));
                    let ball = tree_ball(&l, r)?;
                    ok(json!({
                        "nodes": ball.nodes.iter().map(lattice_to_json).collect::<Vec<_>>(),
                        "depth": ball.depth,
                        "edges": ball.edges.iter().map(|&(i, j)| json!([i, j])).collect::<Vec<_>>(),
                    }))
                }
            }
        }
        "membrane-roundtrip" => {
            let iota = embedding(inp, opts, echo)?;
            let u = point(inp, "u", iota.len(), echo)?;
            let m = match membrane_roundtrip(&iota, &u) {
                Err(Error::NotMember { tau }) => return violation(Value::Null, json!({"circuit": tau})),
                other => other?,
            };
            let res = json!({
                "chart": m.chart.to_vec(),
                "membrane_basis": matrix_to_json(&m.membrane_basis),
                "lattice": lattice_to_json(&m.lattice),
                "back": point_to_json(&m.back),
            });
            if m.back == u {
                ok(res)
            } else {
                violation(res, json!({"expected": point_to_json(&u)}))
            }
        }
        "tight-span-chart" => {
            let v = valuated(inp, opts, echo)?;
            let b = basis(inp, v.ground(), echo)?;
            let u = array(get(inp, "u")?, "an array of rationals")?
                .iter()
                .map(rational_from_json)
                .collect::<Result<Vec<_>>>()?;
            echo.put("u", Value::Array(u.iter().map(rational_to_json).collect()));
            let chart = tight_span_chart(&MaxPlusMatroid::dual_of(&v), b, &u)?;
            let values: Vec<Value> =
                chart.values.iter().map(|x| x.as_ref().map_or(json!("-inf"), rational_to_json)).collect();
            if chart.violations.is_empty() {
                ok(json!({"values": values}))
            } else {
                violation(json!({"values": values}), json!({"elements": chart.violations}))
            }
        }
        "selfcheck" => selfcheck(inp, opts, echo),
        _ => Err(Error::Parse(format!("unknown command {command:?}; expected one of {}", COMMANDS.join(", ")))),
    }
}

fn guard(opts: &RunOptions, ground: usize, rank: usize) -> Result<()> {
    if ground > opts.max_n + 1 {
        return Err(Error::Limit(format!("n = {} exceeds --max-n {}", ground.saturating_sub(1), opts.max_n)));
    }
    if rank > opts.max_rank {
        return Err(Error::Limit(format!("rank {rank} exceeds --max-rank {}", opts.max_rank)));
    }
    Ok(())
}

fn field(inp: &Value, echo: &mut Echo) -> Result<FieldSpec> {
    let spec = field_from_json(get(inp, "field")?)?;
    echo.put("field", field_to_json(spec));
    Ok(spec)
}

fn embedding(inp: &Value, opts: &RunOptions, echo: &mut Echo) -> Result<Embedding> {
    let spec = field(inp, echo)?;
    let f = matrix_from_json(spec, get(inp, "columns")?)?;
    guard(opts, f.cols(), f.rows())?;
    echo.put("columns", matrix_to_json(&f));
    Embedding::new(f)
}

fn valuated(inp: &Value, opts: &RunOptions, echo: &mut Echo) -> Result<ValuatedMatroid> {
    let t = table_from_json(get(inp, "matroid")?)?;
    guard(opts, t.ground(), t.rank())?;
    echo.put("matroid", table_to_json(&t));
    ValuatedMatroid::new(t)
}

fn point(inp: &Value, key: &'static str, len: usize, echo: &mut Echo) -> Result<TropPoint> {
    let u = point_from_json(get(inp, key)?)?;
    if u.len() != len {
        return Err(Error::Dimension { expected: len, found: u.len() });
    }
    echo.put(key, point_to_json(&u));
    Ok(u)
}

fn basis(inp: &Value, ground: usize, echo: &mut Echo) -> Result<Subset> {
    let b = subset_from_json(get(inp, "basis")?, ground)?;
    echo.put("basis", subset_to_json(b));
    Ok(b)
}

fn seminorm(inp: &Value, key: &'static str, spec: FieldSpec, echo: &mut Echo) -> Result<crate::building::DiagSeminorm> {
    let x = seminorm_from_json(spec, get(inp, key)?)?;
    echo.put(key, seminorm_to_json(&x));
    Ok(x)
}

/// Random instances of the central identities, drawn from `--seed`.
fn selfcheck(inp: &Value, opts: &RunOptions, echo: &mut Echo) -> Result<Outcome> {
    let spec = field(inp, echo)?;
    let count = match inp.get("count") {
        Some(c) => usize_from_json(c)?,
        None => 20,
    };
    if count > 10_000 {
        return Err(Error::Limit("selfcheck count is limited to 10000".into()));
    }
    echo.put("count", json!(count));
    echo.put("seed", json!(opts.seed));
    let mut s = Sampler::new(opts.seed);
    let rank_cap = opts.max_rank.clamp(1, 3);
    let mut failures = Vec::new();
    for i in 0..count {
        let rows = s.range(1, rank_cap as i64) as usize;
        let cols = s.range(rows as i64, (rows + 3).min(opts.max_n + 1) as i64) as usize;
        let iota = Embedding::new(s.matrix(spec, rows, cols))?;
        if check_plucker(iota.matroid().table()).is_some() {
            failures.push(json!({"instance": i, "property": "plucker"}));
        }
        let x = s.seminorm(spec, rows, true);
        let u = project_pi(&iota, &x)?;
        if tls_violation(iota.matroid(), &u)?.is_some() {
            failures.push(json!({"instance": i, "property": "projection-in-tls"}));
            continue;
        }
        let back = section_j(&iota, &u).and_then(|sec| project_pi(&iota, &sec.seminorm));
        if back.ok().as_ref() != Some(&u) {
            failures.push(json!({"instance": i, "property": "section-round-trip"}));
        }
    }
    let res = json!({"instances": count, "failures": failures.len()});
    if failures.is_empty() {
        ok(res)
    } else {
        violation(res, Value::Array(failures))
    }
}

use std::path::Path;
use std::sync::Arc;

use homcalc::algebra::{Algebra, DEFAULT_BASIS_CAP};
use homcalc::constructs::{
    cor45_approximation, oracle, prop33_replace, prop34_ladder, prop43_replace, prop44_ladder, thm36_witness,
    validate_witness, ExactSequenceWitness, OracleKind,
};
use homcalc::harness::{
    check, corpus, corpus_algebra, scan as run_scan, two_step_resolution, CheckConfig, ScanVerdict, PROPERTY_IDS,
};
use homcalc::homology::{
    ext_dim, gorenstein_id, gorenstein_pd, inj_dim, perp_dim, proj_dim, torsionfree_dim_upper, transpose as tr,
};
use homcalc::io::{load_algebra, load_module, module_to_value, parse_json, witness_from_value, witness_to_value};
use homcalc::modrep::{Module, Projective};
use homcalc::{Error, Result};
use serde_json::{json, Value};

use crate::text;
use crate::{Options, Response, Status};

pub const BASIS_CAP_VAR: &str = "HOMCALC_BASIS_CAP";
const DEFAULT_EXT_DEGREES: std::ops::RangeInclusive<usize> = 1..=6;

pub struct Context {
    pub opts: Options,
    pub basis_cap: usize,
    pub algebra: Option<(String, Arc<Algebra>)>,
    pub modules: Vec<Module>,
}

fn input(location: &str, message: impl Into<String>) -> Error {
    Error::Parse { location: location.into(), message: message.into() }
}

impl Context {
    pub fn new(opts: Options) -> Result<Context> {
        let basis_cap = match std::env::var(BASIS_CAP_VAR) {
            Ok(v) => v.trim().parse().map_err(|_| input(BASIS_CAP_VAR, format!("not a positive integer: {v}")))?,
            Err(_) => DEFAULT_BASIS_CAP,
        };
        let algebra = match &opts.algebra {
            None => None,
            Some(arg) => Some(resolve_algebra(arg, basis_cap)?),
        };
        let fallback = algebra.as_ref().map(|(_, a)| a);
        let modules = opts.modules.iter().map(|p| load_module(p, fallback, basis_cap)).collect::<Result<_>>()?;
        Ok(Context { opts, basis_cap, algebra, modules })
    }

    fn config(&self) -> CheckConfig {
        CheckConfig { samples: self.opts.samples, cutoff: self.opts.cutoff, seed: self.opts.seed }
    }

    /// The given algebra, or the whole corpus.
    fn algebras(&self) -> Vec<(String, Arc<Algebra>)> {
        match &self.algebra {
            Some(a) => vec![a.clone()],
            None => corpus().into_iter().map(|c| (c.name.to_string(), c.algebra)).collect(),
        }
    }

    fn modules_exactly(&self, n: usize, what: &str) -> Result<&[Module]> {
        if self.modules.len() != n {
            let s = if n == 1 { "" } else { "s" };
            return Err(input("--module", format!("{what} takes {n} module{s}, got {}", self.modules.len())));
        }
        Ok(&self.modules)
    }
}

/// A file path, or a corpus name when no such file exists.
fn resolve_algebra(arg: &str, cap: usize) -> Result<(String, Arc<Algebra>)> {
    let path = Path::new(arg);
    if path.exists() {
        return Ok((arg.to_string(), load_algebra(path, cap)?));
    }
    match corpus_algebra(arg) {
        Some(c) => Ok((c.name.to_string(), c.algebra)),
        None => Err(input(arg, "no such file or corpus algebra")),
    }
}

fn status_of(failed: bool) -> Status {
    if failed {
        Status::Failure
    } else {
        Status::Clean
    }
}

pub fn validate(ctx: &Context, witness: Option<&Path>) -> Result<Response> {
    if let Some(path) = witness {
        let raw = std::fs::read_to_string(path).map_err(|e| input(&path.display().to_string(), e.to_string()))?;
        let w = witness_from_value(&parse_json(&raw)?, ctx.basis_cap)?;
        let v = validate_witness(&w, &[]);
        let text = format!("witness with {} modules: {}\n", w.len(), text::verdict(&v));
        let failed = v.is_false();
        return Ok(Response { json: json!({ "witness": v }), text, status: status_of(failed) });
    }
    if ctx.algebra.is_none() && ctx.modules.is_empty() {
        return Err(input("--algebra", "nothing to validate"));
    }
    let mut out = serde_json::Map::new();
    let mut t = String::new();
    if let Some((name, a)) = &ctx.algebra {
        let proj: Vec<usize> = (0..a.num_idempotents()).map(|i| a.projective_basis(i).dim()).collect();
        out.insert(
            "algebra".into(),
            json!({
                "name": name,
                "dim": a.dim(),
                "field_char": a.characteristic(),
                "idempotents": a.num_idempotents(),
                "projective_dims": proj,
            }),
        );
        t += &format!("algebra {name}: dim {} over F_{}, projectives of dims {proj:?}\n", a.dim(), a.characteristic());
    }
    let mods: Vec<Value> = ctx
        .modules
        .iter()
        .enumerate()
        .map(|(i, m)| {
            t += &format!("module {i}: dim {}, dimension vector {:?}\n", m.dim(), m.dimension_vector());
            json!({ "index": i, "dim": m.dim(), "dimension_vector": m.dimension_vector() })
        })
        .collect();
    out.insert("modules".into(), Value::Array(mods));
    out.insert("valid".into(), json!(true));
    t += "valid\n";
    Ok(Response { json: Value::Object(out), text: t, status: Status::Clean })
}

pub fn dims(ctx: &Context) -> Result<Response> {
    if ctx.modules.is_empty() {
        return Err(input("--module", "dims takes at least one module"));
    }
    let c = ctx.opts.cutoff;
    let mut t = String::new();
    let mut rows = Vec::new();
    for (i, m) in ctx.modules.iter().enumerate() {
        let regular = Projective::basic_regular(m.algebra()).module().clone();
        let reports = [
            ("pd", proj_dim(m, c)),
            ("id", inj_dim(m, c)),
            ("gpd", gorenstein_pd(m, c)),
            ("gid", gorenstein_id(m, c)),
            ("perp_dim", perp_dim(m, &[regular], c)),
            ("torsionfree_dim", torsionfree_dim_upper(m, c)),
        ];
        t += &format!("module {i} (dim {}):\n", m.dim());
        let mut row = serde_json::Map::new();
        row.insert("index".into(), json!(i));
        row.insert("dim".into(), json!(m.dim()));
        for (k, r) in reports {
            t += &format!("  {k}: {}\n", text::dimension(&r));
            row.insert(k.into(), serde_json::to_value(&r).expect("reports serialize"));
        }
        rows.push(Value::Object(row));
    }
    Ok(Response { json: json!({ "cutoff": c, "modules": rows }), text: t, status: Status::Clean })
}

pub fn ext(ctx: &Context, degrees: &[usize]) -> Result<Response> {
    let ms = ctx.modules_exactly(2, "ext")?;
    let degrees: Vec<usize> = if degrees.is_empty() { DEFAULT_EXT_DEGREES.collect() } else { degrees.to_vec() };
    let mut t = String::new();
    let mut rows = Vec::new();
    for i in degrees {
        let d = ext_dim(&ms[0], &ms[1], i)?;
        t += &format!("dim Ext^{i}(M, N) = {d}\n");
        rows.push(json!({ "degree": i, "dim": d }));
    }
    Ok(Response { json: json!({ "ext": rows }), text: t, status: Status::Clean })
}

pub fn transpose(ctx: &Context) -> Result<Response> {
    let m = &ctx.modules_exactly(1, "transpose")?[0];
    let t = tr(m)?;
    let v = module_to_value(&t, true);
    let text = format!(
        "Tr M: dim {} over the opposite algebra, dimension vector {:?}\n",
        t.dim(),
        t.dimension_vector()
    );
    Ok(Response { json: json!({ "transpose": v }), text, status: Status::Clean })
}

pub const CONSTRUCT_TARGETS: [&str; 6] = ["thm36", "cor45", "prop33", "prop34", "prop43", "prop44"];

pub fn construct(ctx: &Context, target: &str, class: &str) -> Result<Response> {
    let m = &ctx.modules_exactly(1, "construct")?[0];
    let kind: OracleKind = class.parse()?;
    let c = ctx.opts.cutoff;
    let o = oracle(kind, m.algebra(), c);
    let tests = [Projective::basic_regular(m.algebra()).module().clone()];
    let mut witnesses: Vec<(&str, ExactSequenceWitness)> = Vec::new();
    let mut extra = serde_json::Map::new();
    match target.to_ascii_lowercase().as_str() {
        "thm36" => witnesses.push(("main", thm36_witness(m, &o, c)?)),
        "cor45" => {
            let ap = cor45_approximation(m, &o, c)?;
            extra.insert("n".into(), json!(ap.n));
            extra.insert("pd_b".into(), serde_json::to_value(&ap.pd_b).expect("reports serialize"));
            witnesses.push(("sequence", ap.sequence));
            witnesses.push(("resolution", ap.resolution));
        }
        t @ ("prop33" | "prop34" | "prop43" | "prop44") => {
            let seq = two_step_resolution(m, c)?;
            witnesses.push(("input", seq.clone()));
            match t {
                "prop33" => witnesses.push(("main", prop33_replace(&seq, &o, &tests)?)),
                "prop43" => witnesses.push(("main", prop43_replace(&seq, &o, &tests)?)),
                _ => {
                    let l = if t == "prop34" { prop34_ladder(&seq, &o)? } else { prop44_ladder(&seq, &o)? };
                    witnesses.push(("main", l.main));
                    witnesses.push(("side", l.side));
                }
            }
        }
        _ => {
            return Err(input(
                "--target",
                format!("unknown construction {target}; expected one of {}", CONSTRUCT_TARGETS.join(", ")),
            ))
        }
    }
    let mut t = format!("{target} relative to {kind}:\n");
    let mut failed = false;
    let mut ws = serde_json::Map::new();
    let mut vs = serde_json::Map::new();
    for (name, w) in &witnesses {
        let v = validate_witness(w, std::slice::from_ref(&o));
        failed |= v.is_false();
        let dims: Vec<usize> = w.modules.iter().map(Module::dim).collect();
        t += &format!("  {name}: modules of dims {dims:?}; {}\n", text::verdict(&v));
        ws.insert(name.to_string(), witness_to_value(w));
        vs.insert(name.to_string(), serde_json::to_value(&v).expect("verdicts serialize"));
    }
    if let Some(pd) = extra.get("pd_b") {
        let r: homcalc::homology::DimensionReport = serde_json::from_value(pd.clone()).expect("round trip");
        t += &format!("  pd B: {}\n", text::dimension(&r));
    }
    let mut out = json!({ "target": target, "class": kind.name(), "witnesses": ws, "validation": vs });
    for (k, v) in extra {
        out[k] = v;
    }
    Ok(Response { json: out, text: t, status: status_of(failed) })
}

fn expand_suites(suites: &[String]) -> Vec<String> {
    let mut ids: Vec<String> = Vec::new();
    for s in suites {
        let more: Vec<String> = if s.eq_ignore_ascii_case("all") {
            PROPERTY_IDS.iter().map(|x| x.to_string()).collect()
        } else {
            vec![s.clone()]
        };
        for id in more {
            if !ids.contains(&id) {
                ids.push(id);
            }
        }
    }
    ids
}

pub fn verify(ctx: &Context, suites: &[String]) -> Result<Response> {
    let cfg = ctx.config();
    let mut reports = Vec::new();
    let mut t = String::new();
    for id in expand_suites(suites) {
        for (name, a) in ctx.algebras() {
            let r = check(&id, &name, &a, &cfg)?;
            t += &text::check_report(&r);
            reports.push(r);
        }
    }
    let ok = reports.iter().all(|r| r.ok());
    t += if ok { "all suites passed\n" } else { "FAILURES found\n" };
    Ok(Response { json: json!({ "ok": ok, "reports": reports }), text: t, status: status_of(!ok) })
}

pub fn scan(ctx: &Context, target: &str) -> Result<Response> {
    let cfg = ctx.config();
    let mut reports = Vec::new();
    let mut t = String::new();
    for (name, a) in ctx.algebras() {
        let r = run_scan(target, &name, &a, &cfg)?;
        t += &text::scan_report(&r);
        reports.push(r);
    }
    let candidate = reports.iter().any(|r| matches!(r.verdict, ScanVerdict::CandidateCounterexample { .. }));
    Ok(Response { json: json!({ "reports": reports }), text: t, status: status_of(candidate) })
}

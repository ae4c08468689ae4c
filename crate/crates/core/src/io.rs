//! JSON files for algebras, modules and witnesses, and canonical output.

use std::path::Path;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{algebra_from_quiver_with_cap, validate_algebra, Algebra, AlgebraData, QuiverPresentation};
use crate::constructs::{ExactSequenceWitness, MembershipClaim, OracleKind, ProperClaim, Side};
use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::modrep::{Module, Morphism, Presentation};

/// Sorted keys, two-space indent, trailing newline. Stable across runs.
pub fn canonical<T: Serialize + ?Sized>(x: &T) -> String {
    let v = serde_json::to_value(x).expect("plain data serializes");
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        location: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })
}

fn parse_error(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse { location: location.into(), message: message.into() }
}

fn invalid(invariant: &str, detail: impl Into<String>) -> Error {
    Error::Validation { invariant: invariant.into(), detail: detail.into() }
}

fn pointer(base: &str, path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = base.to_string();
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

fn decode<T: DeserializeOwned>(v: &Value, base: &str) -> Result<T> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let location = pointer(base, e.path());
        parse_error(location, e.into_inner().to_string())
    })
}

/// Names the violated invariant for algebra construction failures.
fn algebra_invalid(e: Error) -> Error {
    let (invariant, detail) = match &e {
        Error::NonAssociative(i, j, k) => ("associativity", format!("basis triple ({i}, {j}, {k})")),
        Error::BadUnit(i) => ("unit", format!("fails against basis element {i}")),
        Error::BadIdempotents(s) => ("idempotents", s.clone()),
        Error::RadicalNotIdeal(s) => ("radical ideal", s.clone()),
        Error::RadicalNotNilpotent(k) => ("radical nilpotency", format!("J^{k} is nonzero")),
        Error::BadCharacteristic(p) => ("field characteristic", format!("{p} is not a supported prime")),
        Error::DimensionMismatch(s) => ("shape", s.clone()),
        Error::RelationNotLengthHomogeneous(r) => ("relation homogeneity", format!("relation {r}")),
        Error::PathExplosion(cap) => ("basis cap", format!("more than {cap} paths")),
        Error::BadQuiver(s) => ("quiver", s.clone()),
        _ => return e,
    };
    invalid(invariant, detail)
}

/// Raw structure constants, or a quiver presentation when `vertices` is present.
pub fn algebra_from_value(v: &Value, basis_cap: usize) -> Result<Arc<Algebra>> {
    algebra_at(v, "", basis_cap)
}

fn algebra_at(v: &Value, base: &str, basis_cap: usize) -> Result<Arc<Algebra>> {
    if !v.is_object() {
        return Err(parse_error(base, "expected an algebra object"));
    }
    if v.get("vertices").is_some() {
        let q: QuiverPresentation = decode(v, base)?;
        algebra_from_quiver_with_cap(&q, basis_cap).map_err(algebra_invalid)
    } else {
        let d: AlgebraData = decode(v, base)?;
        validate_algebra(&d).map_err(algebra_invalid)
    }
}

pub fn algebra_to_value(a: &Algebra) -> Value {
    serde_json::to_value(a.data()).expect("plain data serializes")
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| parse_error(path.display().to_string(), e.to_string()))
}

pub fn load_algebra(path: &Path, basis_cap: usize) -> Result<Arc<Algebra>> {
    algebra_from_value(&parse_json(&read(path)?)?, basis_cap)
}

/// Checks shape and residues, then builds the matrix.
fn matrix_at(rows: &[Vec<u64>], r: usize, c: usize, p: u32, at: &str) -> Result<Matrix> {
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        return Err(invalid("matrix shape", format!("{at}: expected {r}x{c}")));
    }
    if rows.iter().flatten().any(|&x| x >= p as u64) {
        return Err(invalid("field residue", format!("{at}: entries must lie in 0..{p}")));
    }
    let data = rows.iter().flatten().map(|&x| x as u32).collect();
    Ok(Matrix::from_vec(p, r, c, data))
}

fn rows_of(m: &Matrix) -> Value {
    json!(m.to_rows())
}

#[derive(Deserialize)]
struct ActionForm {
    dim: usize,
    action: Vec<Vec<Vec<u64>>>,
}

fn module_at(v: &Value, a: &Arc<Algebra>, base: &str) -> Result<Module> {
    if !v.is_object() {
        return Err(parse_error(base, "expected a module object"));
    }
    if v.get("proj_target").is_some() {
        let p: Presentation = decode(v, base)?;
        return p.module(a);
    }
    let f: ActionForm = decode(v, base)?;
    if f.action.len() != a.dim() {
        return Err(invalid(
            "action arity",
            format!("{base}/action has {} matrices for an algebra of dimension {}", f.action.len(), a.dim()),
        ));
    }
    let p = a.characteristic();
    let action = f
        .action
        .iter()
        .enumerate()
        .map(|(i, rows)| matrix_at(rows, f.dim, f.dim, p, &format!("{base}/action/{i}")))
        .collect::<Result<Vec<_>>>()?;
    Module::new(a.clone(), f.dim, action)
}

/// A module file: action form `{dim, action}` or presentation form
/// `{proj_target, proj_source, matrix}`, with an optional `algebra` that is
/// a path (relative to `base_dir`) or an inline algebra. The embedded algebra
/// wins over `fallback`.
pub fn module_from_value(
    v: &Value,
    fallback: Option<&Arc<Algebra>>,
    base_dir: Option<&Path>,
    basis_cap: usize,
) -> Result<Module> {
    let a = match v.get("algebra") {
        Some(Value::String(rel)) => {
            let path = base_dir.map_or_else(|| Path::new(rel).to_path_buf(), |d| d.join(rel));
            load_algebra(&path, basis_cap)?
        }
        Some(inline) => algebra_at(inline, "/algebra", basis_cap)?,
        None => fallback.cloned().ok_or_else(|| parse_error("/algebra", "no algebra given for the module"))?,
    };
    module_at(v, &a, "")
}

pub fn load_module(path: &Path, fallback: Option<&Arc<Algebra>>, basis_cap: usize) -> Result<Module> {
    module_from_value(&parse_json(&read(path)?)?, fallback, path.parent(), basis_cap)
}

/// Action form. The algebra is inlined when `with_algebra` is set.
pub fn module_to_value(m: &Module, with_algebra: bool) -> Value {
    let mut v = json!({
        "dim": m.dim(),
        "action": m.actions().iter().map(rows_of).collect::<Vec<_>>(),
    });
    if with_algebra {
        v["algebra"] = algebra_to_value(m.algebra());
    }
    v
}

#[derive(Serialize, Deserialize)]
struct MembershipJson {
    node: usize,
    class: String,
}

#[derive(Serialize, Deserialize)]
struct ProperJson {
    class: String,
    side: Side,
    object: Value,
    note: String,
}

/// Modules by action, maps as matrices, with the algebra inlined once.
pub fn witness_to_value(w: &ExactSequenceWitness) -> Value {
    let algebra = w.modules.first().map(|m| algebra_to_value(m.algebra())).unwrap_or(Value::Null);
    json!({
        "algebra": algebra,
        "cutoff": w.cutoff,
        "modules": w.modules.iter().map(|m| module_to_value(m, false)).collect::<Vec<_>>(),
        "maps": w.maps.iter().map(|f| rows_of(f.matrix())).collect::<Vec<_>>(),
        "memberships": w.memberships.iter()
            .map(|c| MembershipJson { node: c.node, class: c.class.name().to_string() })
            .collect::<Vec<_>>(),
        "properness": w.properness.iter()
            .map(|c| ProperJson {
                class: c.class.clone(),
                side: c.side,
                object: module_to_value(&c.object, false),
                note: c.note.clone(),
            })
            .collect::<Vec<_>>(),
    })
}

#[derive(Deserialize)]
struct WitnessJson {
    algebra: Value,
    cutoff: usize,
    modules: Vec<Value>,
    maps: Vec<Vec<Vec<u64>>>,
    memberships: Vec<MembershipJson>,
    properness: Vec<ProperJson>,
}

pub fn witness_from_value(v: &Value, basis_cap: usize) -> Result<ExactSequenceWitness> {
    let raw: WitnessJson = decode(v, "")?;
    let a = algebra_at(&raw.algebra, "/algebra", basis_cap)?;
    let modules = raw
        .modules
        .iter()
        .enumerate()
        .map(|(i, m)| module_at(m, &a, &format!("/modules/{i}")))
        .collect::<Result<Vec<_>>>()?;
    if raw.maps.len() + 1 != modules.len() {
        return Err(invalid("sequence length", format!("{} modules but {} maps", modules.len(), raw.maps.len())));
    }
    let p = a.characteristic();
    let maps = raw
        .maps
        .iter()
        .enumerate()
        .map(|(i, rows)| {
            let (s, t) = (&modules[i], &modules[i + 1]);
            let m = matrix_at(rows, t.dim(), s.dim(), p, &format!("/maps/{i}"))?;
            Morphism::new(s.clone(), t.clone(), m).map_err(|e| invalid("module homomorphism", format!("/maps/{i}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let memberships = raw
        .memberships
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let class: OracleKind =
                c.class.parse().map_err(|e: Error| parse_error(format!("/memberships/{i}/class"), e.to_string()))?;
            Ok(MembershipClaim { node: c.node, class })
        })
        .collect::<Result<Vec<_>>>()?;
    let properness = raw
        .properness
        .iter()
        .enumerate()
        .map(|(i, c)| {
            Ok(ProperClaim {
                class: c.class.clone(),
                side: c.side,
                object: module_at(&c.object, &a, &format!("/properness/{i}/object"))?,
                note: c.note.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExactSequenceWitness { modules, maps, memberships, properness, cutoff: raw.cutoff })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_BASIS_CAP;
    use crate::constructs::validate_witness;
    use crate::harness::{corpus, corpus_algebra};
    use crate::modrep::{projective_cover, simple_module};

    #[test]
    fn corpus_round_trips_both_forms() {
        for c in corpus() {
            let raw = algebra_to_value(&c.algebra);
            assert_eq!(algebra_from_value(&raw, DEFAULT_BASIS_CAP).unwrap().data(), c.algebra.data());
            let q = serde_json::to_value(&c.quiver).unwrap();
            assert_eq!(algebra_from_value(&q, DEFAULT_BASIS_CAP).unwrap().data(), c.algebra.data());
        }
    }

    #[test]
    fn associativity_failure_is_named() {
        // basis 1, x, y with x y = x: (x y) y = x but x (y y) = 0
        let c = corpus_algebra("LOC3").unwrap();
        let mut raw = algebra_to_value(&c.algebra);
        raw["structure_constants"][1][2][1] = json!(1);
        match algebra_from_value(&raw, DEFAULT_BASIS_CAP) {
            Err(Error::Validation { invariant, .. }) => assert_eq!(invariant, "associativity"),
            r => panic!("{r:?}"),
        }
    }

    #[test]
    fn schema_errors_carry_pointers() {
        let c = corpus_algebra("A2PATH").unwrap();
        let mut raw = algebra_to_value(&c.algebra);
        raw["unit"][1] = json!("one");
        match algebra_from_value(&raw, DEFAULT_BASIS_CAP) {
            Err(Error::Parse { location, .. }) => assert_eq!(location, "/unit/1"),
            r => panic!("{r:?}"),
        }
        let bad = parse_json("{\"dim\": 1,").unwrap_err();
        assert!(matches!(bad, Error::Parse { .. }));
    }

    #[test]
    fn module_forms() {
        let c = corpus_algebra("A2PATH").unwrap();
        let s = simple_module(&c.algebra, 0);
        let v = module_to_value(&s, true);
        assert_eq!(module_from_value(&v, None, None, DEFAULT_BASIS_CAP).unwrap(), s);
        let mut short = module_to_value(&s, false);
        short["action"].as_array_mut().unwrap().pop();
        match module_from_value(&short, Some(&c.algebra), None, DEFAULT_BASIS_CAP) {
            Err(Error::Validation { invariant, .. }) => assert_eq!(invariant, "action arity"),
            r => panic!("{r:?}"),
        }
        let pres = json!({"proj_target": [1, 0], "proj_source": [0, 0], "matrix": []});
        let p1 = module_from_value(&pres, Some(&c.algebra), None, DEFAULT_BASIS_CAP).unwrap();
        assert_eq!(p1.dim(), 2);
        assert!(matches!(
            module_from_value(&module_to_value(&s, false), None, None, DEFAULT_BASIS_CAP),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn witness_round_trip() {
        let c = corpus_algebra("A2PATH").unwrap();
        let s = simple_module(&c.algebra, 0);
        let cover = projective_cover(&s).unwrap();
        let (_, inc) = crate::modrep::kernel(&cover.epi);
        let mut w = ExactSequenceWitness::from_maps(vec![inc, cover.epi], 40);
        w.memberships.push(MembershipClaim { node: 1, class: OracleKind::Projectives });
        let text = canonical(&witness_to_value(&w));
        let back = witness_from_value(&parse_json(&text).unwrap(), DEFAULT_BASIS_CAP).unwrap();
        assert!(validate_witness(&back, &[]).is_true());
        assert_eq!(text, canonical(&witness_to_value(&back)));
    }

    #[test]
    fn canonical_sorts_keys() {
        let v = json!({"b": 1, "a": {"d": 2, "c": 3}});
        assert_eq!(canonical(&v), "{\n  \"a\": {\n    \"c\": 3,\n    \"d\": 2\n  },\n  \"b\": 1\n}\n");
    }
}

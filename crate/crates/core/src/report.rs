//! JSON surfaces: the algebra file format, report fragments for each
//! analysis, and the structural rules every emitted report obeys
//! (schema-versioned, rationals as "p/q" strings, floats always tagged
//! with a tolerance).

use crate::env::{EnvElement, HomogeneousDelta};
use crate::grading::{Grading, QuasiEquivalenceReport};
use crate::lie::{LieAlgebra, LieError};
use crate::linalg::Vector;
use crate::scalar::{format_rational, parse_rational, Rational};
use crate::weighted::{Contraction, Filtration, StrictReducedness, WeightedBasis};
use num_traits::Zero;
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u64 = 1;

/// Tagged float: the only way a non-integer number enters a report.
pub fn tol_value(value: f64, tol: f64) -> Value {
    json!({ "value": value, "tol": tol })
}

pub fn rational_str(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

/// Sparse vector as {"name": "p/q", ...} with zero entries omitted.
pub fn vector_to_json(names: &[String], v: &[Rational]) -> Value {
    let mut map = Map::new();
    for (name, c) in names.iter().zip(v) {
        if !c.is_zero() {
            map.insert(name.clone(), rational_str(c));
        }
    }
    Value::Object(map)
}

pub fn report_envelope(command: &str, body: Value) -> Value {
    let mut map = Map::new();
    map.insert("schema_version".into(), json!(SCHEMA_VERSION));
    map.insert("command".into(), json!(command));
    if let Value::Object(fields) = body {
        for (k, v) in fields {
            map.insert(k, v);
        }
    }
    Value::Object(map)
}

/// AlgebraFile: {"dim": n, "names": [...], "brackets": [{"lhs": ..,
/// "rhs": .., "coeffs": {..}}]}; omitted brackets are zero.
pub fn algebra_to_json(alg: &LieAlgebra) -> Value {
    let names = alg.names();
    let mut brackets = Vec::new();
    for i in 0..alg.dim() {
        for j in (i + 1)..alg.dim() {
            let b = alg.basis_bracket(i, j);
            if b.iter().all(|c| c.is_zero()) {
                continue;
            }
            brackets.push(json!({
                "lhs": names[i],
                "rhs": names[j],
                "coeffs": vector_to_json(names, &b),
            }));
        }
    }
    json!({
        "dim": alg.dim(),
        "names": names,
        "brackets": brackets,
    })
}

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("invalid algebra file: {0}")]
    Invalid(String),
    #[error(transparent)]
    Lie(#[from] LieError),
}

pub fn algebra_from_json(v: &Value) -> Result<LieAlgebra, FileError> {
    let obj = v
        .as_object()
        .ok_or_else(|| FileError::Invalid("expected a JSON object".into()))?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| FileError::Invalid("missing integer `dim`".into()))? as usize;
    let names: Vec<String> = obj
        .get("names")
        .and_then(Value::as_array)
        .ok_or_else(|| FileError::Invalid("missing array `names`".into()))?
        .iter()
        .map(|n| {
            n.as_str()
                .map(String::from)
                .ok_or_else(|| FileError::Invalid("names must be strings".into()))
        })
        .collect::<Result<_, _>>()?;
    if names.len() != dim {
        return Err(FileError::Invalid(format!(
            "dim is {dim} but {} names given",
            names.len()
        )));
    }
    let mut brackets = Vec::new();
    if let Some(list) = obj.get("brackets") {
        let list = list
            .as_array()
            .ok_or_else(|| FileError::Invalid("`brackets` must be an array".into()))?;
        for item in list {
            let b = item
                .as_object()
                .ok_or_else(|| FileError::Invalid("bracket entries must be objects".into()))?;
            let lhs = b
                .get("lhs")
                .and_then(Value::as_str)
                .ok_or_else(|| FileError::Invalid("bracket missing `lhs`".into()))?;
            let rhs = b
                .get("rhs")
                .and_then(Value::as_str)
                .ok_or_else(|| FileError::Invalid("bracket missing `rhs`".into()))?;
            let i = names
                .iter()
                .position(|n| n == lhs)
                .ok_or_else(|| FileError::Invalid(format!("unknown name `{lhs}`")))?;
            let j = names
                .iter()
                .position(|n| n == rhs)
                .ok_or_else(|| FileError::Invalid(format!("unknown name `{rhs}`")))?;
            let coeffs = b
                .get("coeffs")
                .and_then(Value::as_object)
                .ok_or_else(|| FileError::Invalid("bracket missing `coeffs`".into()))?;
            let mut vec = crate::linalg::zero_vector(dim);
            for (name, val) in coeffs {
                let k = names
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| FileError::Invalid(format!("unknown name `{name}`")))?;
                let s = val.as_str().ok_or_else(|| {
                    FileError::Invalid("coefficients must be \"p/q\" strings".into())
                })?;
                vec[k] = parse_rational(s).map_err(FileError::Invalid)?;
            }
            if i < j {
                brackets.push((i, j, vec));
            } else if j < i {
                for c in vec.iter_mut() {
                    *c = -c.clone();
                }
                brackets.push((j, i, vec));
            } else {
                return Err(FileError::Invalid(format!(
                    "bracket [{lhs},{rhs}] with itself"
                )));
            }
        }
    }
    Ok(LieAlgebra::new(names, brackets)?)
}

pub fn algebra_from_str(s: &str) -> Result<LieAlgebra, FileError> {
    let v: Value =
        serde_json::from_str(s).map_err(|e| FileError::Invalid(format!("bad JSON: {e}")))?;
    algebra_from_json(&v)
}

pub fn structure_report(alg: &LieAlgebra) -> Value {
    let series = alg.descending_central_series();
    let mut body = json!({
        "dim": alg.dim(),
        "abelian": alg.is_abelian(),
        "nilpotent": series.nilpotent,
        "central_series_dims": series.dims(),
    });
    if series.nilpotent {
        body["step"] = json!(series.step().unwrap());
        body["growth_degree"] = json!(alg.guivarch_growth_degree().expect("nilpotent"));
    }
    body
}

pub fn weighted_report(
    wb: &WeightedBasis,
    f: &Filtration,
    strict: &StrictReducedness,
    weak: bool,
) -> Value {
    let names = wb.algebra().names();
    let mut body = json!({
        "elements": wb
            .elements()
            .iter()
            .map(|(v, w)| json!({
                "vector": vector_to_json(names, v),
                "weight": rational_str(w),
            }))
            .collect::<Vec<_>>(),
        "filtration": {
            "jumps": f.jump_weights().iter().map(rational_str).collect::<Vec<_>>(),
            "dims": f.jump_dims(),
            "layer_dims": f.layer_dims(),
        },
        "reduced_strict": strict.reduced,
        "reduced_weak": weak,
    });
    if let Some((w, v)) = &strict.witness {
        body["strict_witness"] = json!({
            "weight": rational_str(w),
            "vector": vector_to_json(names, v),
        });
    }
    body
}

pub fn contraction_report(k: &Contraction) -> Value {
    let alg = k.algebra();
    let names = alg.names();
    json!({
        "algebra": algebra_to_json(alg),
        "degrees": k.degrees().iter().map(rational_str).collect::<Vec<_>>(),
        "q_delta": rational_str(&k.grading().homogeneous_dimension()),
        "section_matrix": k
            .section_matrix()
            .iter()
            .map(|row| vector_to_json(names, row))
            .collect::<Vec<_>>(),
        "induced_basis_positions": k.induced_positions(),
    })
}

pub fn grading_report(gr: &Grading, q: &QuasiEquivalenceReport) -> Value {
    json!({
        "degrees": gr.degrees().iter().map(rational_str).collect::<Vec<_>>(),
        "q_delta": rational_str(&q.q_delta),
        "q_growth": q.q_growth,
        "stratified": q.stratified,
        "dichotomy_ok": q.dichotomy_ok,
    })
}

pub fn operator_json(input: Option<&str>, d: &EnvElement) -> Value {
    match input {
        Some(s) => json!({ "input": s, "normal_form": d.display() }),
        None => json!({ "normal_form": d.display() }),
    }
}

pub fn delta_report(delta: &HomogeneousDelta) -> Value {
    json!({
        "common_multiple": rational_str(&delta.common_multiple),
        "exponents": delta.exponents,
        "degree": rational_str(&delta.degree),
        "normal_form_terms": delta.delta.num_terms(),
    })
}

pub fn witness_vector(names: &[String], v: &Vector) -> Value {
    vector_to_json(names, v)
}

/// Structural validation of an emitted report: versioned envelope, no
/// untagged non-integer numbers anywhere.
pub fn validate_report(v: &Value) -> Result<(), String> {
    let obj = v.as_object().ok_or("report must be an object")?;
    match obj.get("schema_version").and_then(Value::as_u64) {
        Some(SCHEMA_VERSION) => {}
        other => return Err(format!("bad schema_version {other:?}")),
    }
    obj.get("command")
        .and_then(Value::as_str)
        .ok_or("missing command")?;
    check_numbers(v, false)
}

fn check_numbers(v: &Value, under_value_tag: bool) -> Result<(), String> {
    match v {
        Value::Number(n) => {
            if n.as_i64().is_none() && n.as_u64().is_none() && !under_value_tag {
                return Err(format!("untagged float {n} in report"));
            }
            Ok(())
        }
        Value::Array(a) => a.iter().try_for_each(|x| check_numbers(x, under_value_tag)),
        Value::Object(o) => {
            let tagged =
                o.contains_key("value") && (o.contains_key("tol") || o.contains_key("abs_err"));
            o.iter().try_for_each(|(k, x)| {
                check_numbers(x, tagged && (k == "value" || k == "tol" || k == "abs_err"))
            })
        }
        _ => Ok(()),
    }
}

//! Exact JSON interchange.
//!
//! Rationals travel as decimal-free `"p/q"` strings, complex scalars as
//! `["re", "im"]` pairs, polynomials as term records
//! `{alpha, beta, re, im}`. Loaders re-validate every invariant, so a file
//! that parses but violates a constraint is rejected with a structured
//! error. Emission is deterministic: object keys are sorted by the JSON
//! map and every exact value has one canonical rendering.

use serde_json::{json, Map, Value};

use crate::autgroup::{Automorphism, FactoredView};
use crate::boundary::Point;
use crate::error::{AlgebraError, AutError, StructureError};
use crate::jets::{ExtensionVerdict, Jet2, ReconstructionTrace, StepStatus};
use crate::levi::LeviReport;
use crate::maps::{FormReport, PolyMap, ResidualReport};
use crate::matrix::CMatrix;
use crate::poly::Poly;
use crate::scalar::{parse_rational, rational_string, ComplexRational};
use crate::structures::{ModelStructure, SimpleModelStructure, StructureReport};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SerialError {
    #[error("json parse error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {message}")]
    Format { path: String, message: String },
    #[error("invalid structure: {0}")]
    Structure(#[from] StructureError),
    #[error("invalid automorphism: {0}")]
    Automorphism(#[from] AutError),
    #[error("invalid scalar: {0}")]
    Algebra(#[from] AlgebraError),
}

fn fail<T>(path: &str, message: impl Into<String>) -> Result<T, SerialError> {
    Err(SerialError::Format {
        path: path.to_string(),
        message: message.into(),
    })
}

fn as_array<'v>(v: &'v Value, path: &str) -> Result<&'v Vec<Value>, SerialError> {
    v.as_array()
        .ok_or(())
        .or_else(|()| fail(path, "expected an array"))
}

fn as_object<'v>(v: &'v Value, path: &str) -> Result<&'v Map<String, Value>, SerialError> {
    v.as_object()
        .ok_or(())
        .or_else(|()| fail(path, "expected an object"))
}

fn field<'v>(obj: &'v Map<String, Value>, key: &str, path: &str) -> Result<&'v Value, SerialError> {
    obj.get(key)
        .ok_or(())
        .or_else(|()| fail(path, format!("missing field {key:?}")))
}

fn as_usize(v: &Value, path: &str) -> Result<usize, SerialError> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or(())
        .or_else(|()| fail(path, "expected a non-negative integer"))
}

// ---- scalars ----

pub fn complex_to_json(c: &ComplexRational) -> Value {
    json!([rational_string(&c.re), rational_string(&c.im)])
}

pub fn complex_from_json(v: &Value, path: &str) -> Result<ComplexRational, SerialError> {
    let arr = as_array(v, path)?;
    if arr.len() != 2 {
        return fail(path, "expected a [re, im] pair");
    }
    let part = |slot: &Value, which: &str| -> Result<_, SerialError> {
        let s = slot
            .as_str()
            .ok_or(())
            .or_else(|()| fail(path, format!("{which} part must be a \"p/q\" string")))?;
        Ok(parse_rational(s)?)
    };
    Ok(ComplexRational::new(
        part(&arr[0], "real")?,
        part(&arr[1], "imaginary")?,
    ))
}

pub fn point_to_json(p: &[ComplexRational]) -> Value {
    Value::Array(p.iter().map(complex_to_json).collect())
}

pub fn point_from_json(v: &Value, path: &str) -> Result<Point, SerialError> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(k, entry)| complex_from_json(entry, &format!("{path}[{k}]")))
        .collect()
}

pub fn matrix_to_json(m: &CMatrix) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| {
                Value::Array(
                    (0..m.ncols())
                        .map(|j| complex_to_json(&m[(i, j)]))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn matrix_from_json(v: &Value, path: &str) -> Result<CMatrix, SerialError> {
    let rows = as_array(v, path)?;
    let mut data = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row_path = format!("{path}[{i}]");
        let cols = as_array(row, &row_path)?;
        let mut out = Vec::with_capacity(cols.len());
        for (j, entry) in cols.iter().enumerate() {
            out.push(complex_from_json(entry, &format!("{row_path}[{j}]"))?);
        }
        data.push(out);
    }
    if data.is_empty() {
        return fail(path, "matrix must have at least one row");
    }
    let width = data[0].len();
    if data.iter().any(|r| r.len() != width) {
        return fail(path, "matrix rows have unequal lengths");
    }
    Ok(CMatrix::from_rows(data))
}

// ---- polynomials and maps ----

pub fn poly_to_json(p: &Poly) -> Value {
    Value::Array(
        p.iter_terms()
            .map(|(m, c)| {
                json!({
                    "alpha": m.alpha,
                    "beta": m.beta,
                    "re": rational_string(&c.re),
                    "im": rational_string(&c.im),
                })
            })
            .collect(),
    )
}

pub fn poly_from_json(n: usize, v: &Value, path: &str) -> Result<Poly, SerialError> {
    let mut out = Poly::zero(n);
    for (k, term) in as_array(v, path)?.iter().enumerate() {
        let term_path = format!("{path}[{k}]");
        let obj = as_object(term, &term_path)?;
        let exps = |key: &str| -> Result<Vec<u32>, SerialError> {
            let arr = as_array(field(obj, key, &term_path)?, &term_path)?;
            if arr.len() != n {
                return fail(&term_path, format!("{key} must have length {n}"));
            }
            arr.iter()
                .map(|e| {
                    e.as_u64()
                        .map(|x| x as u32)
                        .ok_or(())
                        .or_else(|()| fail(&term_path, "exponents must be non-negative integers"))
                })
                .collect()
        };
        let alpha = exps("alpha")?;
        let beta = exps("beta")?;
        let rat = |key: &str| -> Result<_, SerialError> {
            let s = field(obj, key, &term_path)?
                .as_str()
                .ok_or(())
                .or_else(|()| fail(&term_path, format!("{key} must be a \"p/q\" string")))?;
            Ok(parse_rational(s)?)
        };
        let coeff = ComplexRational::new(rat("re")?, rat("im")?);
        out = &out + &Poly::monomial(n, &alpha, &beta, coeff);
    }
    Ok(out)
}

pub fn map_to_json(f: &PolyMap) -> Value {
    json!({
        "n": f.dim(),
        "truncation_order": f.truncation_order(),
        "components": f.components().iter().map(poly_to_json).collect::<Vec<_>>(),
    })
}

pub fn map_from_json(v: &Value) -> Result<PolyMap, SerialError> {
    let path = "map";
    let obj = as_object(v, path)?;
    let n = as_usize(field(obj, "n", path)?, path)?;
    if n < 1 {
        return fail(path, "dimension must be at least 1");
    }
    let comps_value = field(obj, "components", path)?;
    let comps_arr = as_array(comps_value, path)?;
    if comps_arr.len() != n {
        return fail(path, format!("expected {n} components"));
    }
    let mut components = Vec::with_capacity(n);
    for (j, comp) in comps_arr.iter().enumerate() {
        components.push(poly_from_json(n, comp, &format!("{path}.components[{j}]"))?);
    }
    let order = match obj.get("truncation_order") {
        None | Some(Value::Null) => None,
        Some(val) => Some(as_usize(val, path)? as u32),
    };
    Ok(match order {
        None => PolyMap::new(n, components),
        Some(k) => PolyMap::truncated(n, components, k),
    })
}

pub fn poly_matrix_to_json(m: &crate::PolyMatrix) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array((0..m.ncols()).map(|j| poly_to_json(&m[(i, j)])).collect()))
            .collect(),
    )
}

/// Parses a `2n x 2n` matrix of polynomials in dimension `n`.
pub fn poly_matrix_from_json(
    n: usize,
    v: &Value,
    path: &str,
) -> Result<crate::PolyMatrix, SerialError> {
    let rows = as_array(v, path)?;
    if rows.len() != 2 * n {
        return fail(path, format!("expected {} rows", 2 * n));
    }
    let mut out = crate::PolyMatrix::zero(2 * n, 2 * n, n);
    for (i, row) in rows.iter().enumerate() {
        let row_path = format!("{path}[{i}]");
        let cols = as_array(row, &row_path)?;
        if cols.len() != 2 * n {
            return fail(&row_path, format!("expected {} columns", 2 * n));
        }
        for (j, entry) in cols.iter().enumerate() {
            out[(i, j)] = poly_from_json(n, entry, &format!("{row_path}[{j}]"))?;
        }
    }
    Ok(out)
}

// ---- structures ----

pub fn simple_structure_to_json(s: &SimpleModelStructure) -> Value {
    json!({ "n": s.dim(), "B": matrix_to_json(s.b()) })
}

pub fn model_structure_to_json(s: &ModelStructure) -> Value {
    if s.is_simple() {
        return simple_structure_to_json(&s.as_simple().expect("beta vanishes"));
    }
    let n = s.dim();
    let rows: Vec<Value> = (0..n - 1)
        .map(|i| {
            json!({
                "i": i + 1,
                "alpha": (0..n - 1).map(|l| complex_to_json(&s.alpha()[(i, l)])).collect::<Vec<_>>(),
                "beta": (0..n - 1).map(|l| complex_to_json(&s.beta()[(i, l)])).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "n": n, "Ltilde": rows })
}

/// Loads either structure format: `{n, B}` for simple structures or
/// `{n, Ltilde: [{i, alpha, beta}]}` in general.
pub fn model_structure_from_json(v: &Value) -> Result<ModelStructure, SerialError> {
    let path = "structure";
    let obj = as_object(v, path)?;
    let n = as_usize(field(obj, "n", path)?, path)?;
    if obj.contains_key("B") {
        let b = matrix_from_json(field(obj, "B", path)?, &format!("{path}.B"))?;
        return Ok(SimpleModelStructure::new(n, b)?.to_model());
    }
    if !obj.contains_key("Ltilde") {
        return fail(path, "expected either a \"B\" or an \"Ltilde\" field");
    }
    if n < 2 {
        return fail(path, "dimension must be at least 2");
    }
    let rows = as_array(field(obj, "Ltilde", path)?, &format!("{path}.Ltilde"))?;
    let mut alpha = CMatrix::zero(n - 1, n - 1);
    let mut beta = CMatrix::zero(n - 1, n - 1);
    for (k, row) in rows.iter().enumerate() {
        let row_path = format!("{path}.Ltilde[{k}]");
        let row_obj = as_object(row, &row_path)?;
        let i = as_usize(field(row_obj, "i", &row_path)?, &row_path)?;
        if i < 1 || i > n - 1 {
            return fail(&row_path, format!("row index i must lie in 1..={}", n - 1));
        }
        for (key, target) in [("alpha", &mut alpha), ("beta", &mut beta)] {
            let arr = as_array(field(row_obj, key, &row_path)?, &row_path)?;
            if arr.len() != n - 1 {
                return fail(&row_path, format!("{key} must have length {}", n - 1));
            }
            for (l, entry) in arr.iter().enumerate() {
                target[(i - 1, l)] = complex_from_json(entry, &format!("{row_path}.{key}[{l}]"))?;
            }
        }
    }
    Ok(ModelStructure::new(n, alpha, beta)?)
}

pub fn simple_structure_from_json(v: &Value) -> Result<SimpleModelStructure, SerialError> {
    let model = model_structure_from_json(v)?;
    Ok(model.as_simple()?)
}

// ---- automorphisms ----

pub fn automorphism_to_json(g: &Automorphism) -> Value {
    json!({
        "n": g.dim(),
        "B": matrix_to_json(g.structure().b()),
        "A": matrix_to_json(g.matrix()),
        "c": rational_string(g.scale()),
        "zeta": point_to_json(g.translation_part()),
    })
}

/// Loads and fully re-validates an automorphism file.
pub fn automorphism_from_json(v: &Value) -> Result<Automorphism, SerialError> {
    let path = "automorphism";
    let obj = as_object(v, path)?;
    let n = as_usize(field(obj, "n", path)?, path)?;
    let b = matrix_from_json(field(obj, "B", path)?, &format!("{path}.B"))?;
    let structure = SimpleModelStructure::new(n, b)?;
    let a = matrix_from_json(field(obj, "A", path)?, &format!("{path}.A"))?;
    let c_str = field(obj, "c", path)?
        .as_str()
        .ok_or(())
        .or_else(|()| fail(path, "c must be a \"p/q\" string"))?;
    let c = parse_rational(c_str)?;
    let zeta = point_from_json(field(obj, "zeta", path)?, &format!("{path}.zeta"))?;
    Ok(Automorphism::try_new(structure, a, c, zeta)?)
}

// ---- reports ----

pub fn structure_report_to_json(r: &StructureReport) -> Value {
    json!({
        "pass": r.pass(),
        "failures": r.failures.iter().map(|f| json!({
            "row": f.row,
            "col": f.col,
            "check": f.check,
            "found": f.found,
            "expected": f.expected,
        })).collect::<Vec<_>>(),
    })
}

pub fn residual_report_to_json(r: &ResidualReport) -> Value {
    json!({
        "check": r.check.name(),
        "pass": r.pass,
        "valid_up_to_degree": r.valid_up_to_degree,
        "entries": r.entries.iter().map(|e| json!({
            "label": e.label,
            "residual": poly_to_json(&e.residual),
            "reduced": e.reduced.as_ref().map(poly_to_json),
        })).collect::<Vec<_>>(),
        "first_offending": r.first_offending.as_ref().map(|o| json!({
            "label": o.label,
            "alpha": o.alpha,
            "beta": o.beta,
            "value": complex_to_json(&o.value),
        })),
    })
}

pub fn form_report_to_json(r: &FormReport) -> Value {
    json!({
        "check": "form",
        "pass": r.pass,
        "valid_up_to_degree": r.valid_up_to_degree,
        "c": r.c.as_ref().map(complex_to_json),
        "f_prime": r.f_prime.iter().map(poly_to_json).collect::<Vec<_>>(),
        "phi": r.phi.as_ref().map(poly_to_json),
        "first_offending": r.offending.as_ref().map(|o| json!({
            "label": o.label,
            "alpha": o.alpha,
            "beta": o.beta,
            "value": complex_to_json(&o.value),
        })),
    })
}

pub fn levi_report_to_json(r: &LeviReport) -> Value {
    json!({
        "point": point_to_json(&r.point),
        "matrix": matrix_to_json(&r.matrix),
        "positive": r.positive,
        "witness": r.witness.as_ref().map(|w| point_to_json(w)),
    })
}

pub fn jet_to_json(j: &Jet2) -> Value {
    json!({
        "n": j.n,
        "A": matrix_to_json(&j.a),
        "c": complex_to_json(&j.c),
        "quad_holo": j.quad_holo.iter().map(matrix_to_json).collect::<Vec<_>>(),
        "antiholo_lin": j.antiholo_lin.iter().map(complex_to_json).collect::<Vec<_>>(),
        "antiholo_quad": matrix_to_json(&j.antiholo_quad),
        "antiholo_cubic": j.antiholo_cubic.as_ref().map(|entries| {
            entries.iter().map(|(idx, v)| json!({
                "indices": [idx[0] + 1, idx[1] + 1, idx[2] + 1],
                "value": complex_to_json(v),
            })).collect::<Vec<_>>()
        }),
        "residual_terms": j.residual_terms.iter().map(|(comp, alpha, beta, v)| json!({
            "component": comp + 1,
            "alpha": alpha,
            "beta": beta,
            "value": complex_to_json(v),
        })).collect::<Vec<_>>(),
    })
}

pub fn trace_to_json(t: &ReconstructionTrace) -> Value {
    json!({
        "pass": t.pass(),
        "steps": t.steps.iter().map(|s| {
            let mut data = Map::new();
            for (k, v) in &s.data {
                data.insert(k.clone(), Value::String(v.clone()));
            }
            json!({
                "step": s.step.name(),
                "anchor": s.anchor,
                "status": match &s.status {
                    StepStatus::Passed => "passed",
                    StepStatus::Failed { .. } => "failed",
                },
                "detail": match &s.status {
                    StepStatus::Passed => Value::Null,
                    StepStatus::Failed { detail } => Value::String(detail.clone()),
                },
                "data": Value::Object(data),
            })
        }).collect::<Vec<_>>(),
    })
}

pub fn extension_to_json(verdict: &ExtensionVerdict) -> Value {
    match verdict {
        ExtensionVerdict::Extends => json!({ "verdict": "extends" }),
        ExtensionVerdict::AgreesToOrder(k) => json!({
            "verdict": "agrees-to-order",
            "order": k,
            "note": "extension asserted by 2-jet determination of boundary CR maps",
        }),
        ExtensionVerdict::Disagrees {
            component,
            alpha,
            beta,
            map_value,
            aut_value,
        } => json!({
            "verdict": "disagrees",
            "component": component + 1,
            "alpha": alpha,
            "beta": beta,
            "map_value": complex_to_json(map_value),
            "aut_value": complex_to_json(aut_value),
        }),
    }
}

pub fn factored_view_to_json(v: &FactoredView) -> Value {
    json!({
        "tau": rational_string(&v.tau),
        "sqrt_c": v.sqrt_c.as_ref().map(rational_string),
        "a_prime_exact": v.a_prime_exact.as_ref().map(matrix_to_json),
        "a_prime_float": v.a_prime_float.iter().map(|row| {
            row.iter().map(|(re, im)| json!([re, im])).collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
        "zeta": point_to_json(&v.zeta),
    })
}

//! Text, JSON, and DOT rendering of the core value types.
//!
//! JSON keeps everything exact: big integers and rationals are strings,
//! exponent vectors are arrays. The structured forms round-trip through
//! [`factor_form_from_json`] and [`series_from_json`].

use num::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::factor::FactorForm;
use crate::graph::{EulerData, ResolutionGraph};
use crate::rational::parse_rat;
use crate::series::{CharTag, CoeffRing, Monomial, Series, Truncation};

pub fn factor_form_to_json(form: &FactorForm) -> Value {
    let factors: Vec<Value> = form
        .factors()
        .map(|(key, &e)| {
            let tag = key.tag.as_ref().map(|t| {
                t.values()
                    .iter()
                    .map(crate::rational::render_rat)
                    .collect::<Vec<_>>()
            });
            json!({
                "k": key.exponents.0,
                "tag": tag,
                "exponent": e,
            })
        })
        .collect();
    json!({
        "nvars": form.nvars(),
        "factors": factors,
    })
}

pub fn factor_form_from_json(v: &Value) -> Result<FactorForm> {
    let bad = |msg: &str| Error::InvalidInput(format!("factor form JSON: {msg}"));
    let nvars = v["nvars"]
        .as_u64()
        .ok_or_else(|| bad("missing nvars"))? as usize;
    let mut form = FactorForm::one(nvars);
    for f in v["factors"].as_array().ok_or_else(|| bad("missing factors"))? {
        let k: Vec<u64> = f["k"]
            .as_array()
            .ok_or_else(|| bad("missing k"))?
            .iter()
            .map(|x| x.as_u64().ok_or_else(|| bad("bad exponent")))
            .collect::<Result<_>>()?;
        let tag = match &f["tag"] {
            Value::Null => None,
            Value::Array(parts) => {
                let values = parts
                    .iter()
                    .map(|p| {
                        p.as_str()
                            .ok_or_else(|| bad("bad tag entry"))
                            .and_then(parse_rat)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Some(CharTag::new(values))
            }
            _ => return Err(bad("bad tag")),
        };
        let e = f["exponent"]
            .as_i64()
            .ok_or_else(|| bad("missing exponent"))?;
        form.push(Monomial(k), tag, e)?;
    }
    Ok(form)
}

fn truncation_to_json(t: &Truncation) -> Value {
    match t {
        Truncation::Total(n) => json!({ "total": n }),
        Truncation::Box(b) => json!({ "box": b }),
    }
}

fn truncation_from_json(v: &Value) -> Result<Truncation> {
    if let Some(n) = v.get("total").and_then(Value::as_u64) {
        return Ok(Truncation::Total(n));
    }
    if let Some(b) = v.get("box").and_then(Value::as_array) {
        let bounds = b
            .iter()
            .map(|x| {
                x.as_u64()
                    .ok_or_else(|| Error::InvalidInput("bad box bound".into()))
            })
            .collect::<Result<_>>()?;
        return Ok(Truncation::Box(bounds));
    }
    Err(Error::InvalidInput("series JSON: bad truncation".into()))
}

pub fn series_to_json<C: CoeffRing>(s: &Series<C>) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .map(|(m, c)| json!({ "m": m.0, "c": c.render() }))
        .collect();
    json!({
        "nvars": s.nvars(),
        "truncation": truncation_to_json(s.truncation()),
        "terms": terms,
    })
}

/// Integer-coefficient series back from JSON.
pub fn series_from_json(v: &Value) -> Result<Series<BigInt>> {
    let bad = |msg: &str| Error::InvalidInput(format!("series JSON: {msg}"));
    let nvars = v["nvars"].as_u64().ok_or_else(|| bad("missing nvars"))? as usize;
    let trunc = truncation_from_json(&v["truncation"])?;
    let mut s = Series::zero(nvars, trunc);
    for term in v["terms"].as_array().ok_or_else(|| bad("missing terms"))? {
        let m: Vec<u64> = term["m"]
            .as_array()
            .ok_or_else(|| bad("missing m"))?
            .iter()
            .map(|x| x.as_u64().ok_or_else(|| bad("bad exponent")))
            .collect::<Result<_>>()?;
        let c: BigInt = term["c"]
            .as_str()
            .ok_or_else(|| bad("missing c"))?
            .parse()
            .map_err(|_| bad("bad coefficient"))?;
        s.insert_add(Monomial(m), c);
    }
    Ok(s)
}

pub fn graph_to_json(g: &ResolutionGraph) -> Value {
    json!({
        "components": g.components.iter().map(|c| json!({
            "id": c.id,
            "self_intersection": c.self_intersection,
        })).collect::<Vec<_>>(),
        "edges": g.edges.iter().map(|&(a, b)| {
            json!([g.components[a].id, g.components[b].id])
        }).collect::<Vec<_>>(),
        "arrows": g.arrows.iter().map(|a| json!({
            "component": g.components[a.component].id,
            "label": a.label,
        })).collect::<Vec<_>>(),
    })
}

/// DOT rendering of the dual graph: boxes for components labeled with id,
/// self-intersection and Euler characteristic; dashed edges to arrowheads.
pub fn graph_to_dot(g: &ResolutionGraph, euler: &EulerData) -> String {
    let mut out = String::from("graph resolution {\n  node [shape=box];\n");
    for (i, c) in g.components.iter().enumerate() {
        out.push_str(&format!(
            "  \"{}\" [label=\"{}\\nself={}\\nchi={}\"];\n",
            c.id, c.id, c.self_intersection, euler.chi[i]
        ));
    }
    for &(a, b) in &g.edges {
        out.push_str(&format!(
            "  \"{}\" -- \"{}\";\n",
            g.components[a].id, g.components[b].id
        ));
    }
    for (i, arrow) in g.arrows.iter().enumerate() {
        let node = format!("arrow{i}");
        out.push_str(&format!(
            "  \"{node}\" [shape=plaintext, label=\"{}\"];\n  \"{}\" -- \"{node}\" [style=dashed];\n",
            arrow.label, g.components[arrow.component].id
        ));
    }
    out.push_str("}\n");
    out
}

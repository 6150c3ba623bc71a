//! JSON interchange: rationals as "p/q" strings, keys in canonical order.

use psr_geometry::rat::{format_rat, parse_rat};
use psr_geometry::{Cone, Point, Polyhedron, Rat};
use psr_local::{Lcs, Vcc};
use psr_poly::{PolyPolynomial, TropPolynomial};
use serde_json::{json, Map, Value};

use crate::CliError;

fn bad(what: &str) -> CliError {
    CliError::Parse(what.to_string())
}

pub fn rat(x: &Rat) -> Value {
    Value::String(format_rat(x))
}

pub fn point(p: &[Rat]) -> Value {
    Value::Array(p.iter().map(rat).collect())
}

pub fn points(ps: &[Point]) -> Value {
    Value::Array(ps.iter().map(|p| point(p)).collect())
}

pub fn polyhedron(p: &Polyhedron) -> Value {
    json!({ "rays": points(p.rec_cone().rays()), "vertices": points(p.vertices()) })
}

pub fn cone(c: &Cone) -> Value {
    json!({ "dim": c.ambient_dim(), "lines": points(c.lineality()), "rays": points(c.rays()) })
}

pub fn polynomial(phi: &PolyPolynomial) -> Value {
    let terms: Vec<Value> = phi.terms().iter().map(|(i, q)| json!({ "coeff": polyhedron(q), "exp": [i] })).collect();
    json!({ "terms": terms, "vars": 1 })
}

pub fn tropical(t: &TropPolynomial) -> Value {
    let terms: Vec<Value> = t.terms.iter().map(|(i, m)| json!({ "exp": i, "value": rat(m) })).collect();
    json!({ "terms": terms })
}

pub fn vcc(g: &Vcc) -> Value {
    let pairs: Vec<Value> = g.pairs().iter().map(|(v, c)| json!({ "cone": cone(c), "vertex": point(v) })).collect();
    json!({ "pairs": pairs })
}

pub fn lcs(vertex_index: usize, l: &Lcs) -> Value {
    let pairs: Vec<Value> = l.pairs.iter().map(|&(i, j)| json!([i, j])).collect();
    json!({ "cells": l.cells, "pairs": pairs, "vertex_index": vertex_index })
}

pub fn parse_rat_value(v: &Value) -> Result<Rat, CliError> {
    match v {
        Value::String(s) => parse_rat(s).map_err(|e| CliError::Parse(e.to_string())),
        Value::Number(n) if n.is_i64() => Ok(Rat::from_integer(n.as_i64().unwrap().into())),
        _ => Err(bad("rational must be a \"p/q\" string or an integer")),
    }
}

pub fn parse_point(v: &Value) -> Result<Point, CliError> {
    v.as_array().ok_or_else(|| bad("point must be an array"))?.iter().map(parse_rat_value).collect()
}

fn parse_points(v: Option<&Value>) -> Result<Vec<Point>, CliError> {
    match v {
        None => Ok(Vec::new()),
        Some(v) => v.as_array().ok_or_else(|| bad("expected an array of points"))?.iter().map(parse_point).collect(),
    }
}

fn object(v: &Value) -> Result<&Map<String, Value>, CliError> {
    v.as_object().ok_or_else(|| bad("expected an object"))
}

pub fn parse_polyhedron(v: &Value) -> Result<Polyhedron, CliError> {
    let o = object(v)?;
    let verts = parse_points(o.get("vertices"))?;
    let rays = parse_points(o.get("rays"))?;
    let n = verts.first().ok_or_else(|| bad("polyhedron needs at least one vertex"))?.len();
    Ok(Polyhedron::new(n, &verts, &rays)?)
}

pub fn parse_cone(v: &Value) -> Result<Cone, CliError> {
    let o = object(v)?;
    let rays = parse_points(o.get("rays"))?;
    let lines = parse_points(o.get("lines"))?;
    let facets = parse_points(o.get("facets"))?;
    let eqs = parse_points(o.get("equations"))?;
    let n = match o.get("dim") {
        Some(d) => d.as_u64().ok_or_else(|| bad("dim must be a positive integer"))? as usize,
        None => rays.iter().chain(&lines).chain(&facets).chain(&eqs).next().ok_or_else(|| bad("cone needs \"dim\""))?.len(),
    };
    if rays.iter().chain(&lines).chain(&facets).chain(&eqs).any(|p| p.len() != n) {
        return Err(CliError::DimensionMismatch);
    }
    if !facets.is_empty() || !eqs.is_empty() {
        if !rays.is_empty() || !lines.is_empty() {
            return Err(bad("give a cone by generators or by inequalities, not both"));
        }
        return Ok(Cone::from_inequalities(n, &facets, &eqs));
    }
    Ok(Cone::from_generators(n, &rays, &lines))
}

pub fn parse_polynomial(v: &Value) -> Result<PolyPolynomial, CliError> {
    let o = object(v)?;
    let vars = o.get("vars").and_then(Value::as_u64).unwrap_or(1);
    if vars != 1 {
        return Err(bad("only univariate polynomials (\"vars\": 1) are accepted"));
    }
    let terms = o.get("terms").and_then(Value::as_array).ok_or_else(|| bad("polynomial needs \"terms\""))?;
    let mut out = Vec::new();
    for t in terms {
        let t = object(t)?;
        let exp = match t.get("exp") {
            Some(Value::Array(a)) if a.len() == 1 => a[0].as_u64(),
            Some(e) => e.as_u64(),
            None => None,
        }
        .ok_or_else(|| bad("term needs \"exp\": [k]"))?;
        let coeff = parse_polyhedron(t.get("coeff").ok_or_else(|| bad("term needs \"coeff\""))?)?;
        out.push((exp as usize, coeff));
    }
    let n = out.first().ok_or_else(|| bad("polynomial needs a term"))?.1.dim();
    if out.iter().any(|(_, q)| q.dim() != n) {
        return Err(CliError::DimensionMismatch);
    }
    Ok(PolyPolynomial::new(n, out)?)
}

pub fn parse_tropical(v: &Value) -> Result<TropPolynomial, CliError> {
    let terms = object(v)?.get("terms").and_then(Value::as_array).ok_or_else(|| bad("tropical polynomial needs \"terms\""))?;
    let mut out = Vec::new();
    for t in terms {
        let t = object(t)?;
        let exp = t.get("exp").and_then(Value::as_u64).ok_or_else(|| bad("term needs \"exp\""))?;
        out.push((exp as usize, parse_rat_value(t.get("value").ok_or_else(|| bad("term needs \"value\""))?)?));
    }
    Ok(TropPolynomial::new(out)?)
}

pub fn parse_vcc(v: &Value) -> Result<Vcc, CliError> {
    let pairs = object(v)?.get("pairs").and_then(Value::as_array).ok_or_else(|| bad("VCC needs \"pairs\""))?;
    let mut out = Vec::new();
    for p in pairs {
        let p = object(p)?;
        let x = parse_point(p.get("vertex").ok_or_else(|| bad("pair needs \"vertex\""))?)?;
        let c = parse_cone(p.get("cone").ok_or_else(|| bad("pair needs \"cone\""))?)?;
        out.push((x, c));
    }
    let n = out.first().ok_or_else(|| bad("VCC needs a pair"))?.0.len();
    Ok(Vcc::new(n, out)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use psr_geometry::rat::{frac, point as pt};

    #[test]
    fn round_trips() {
        let p = Polyhedron::new(2, &[pt(&[0, 0]), vec![frac(1, 2), frac(-3, 4)]], &[pt(&[1, 0])]).unwrap();
        assert_eq!(parse_polyhedron(&polyhedron(&p)).unwrap(), p);
        let c = Cone::from_generators(3, &[pt(&[1, 0, 0])], &[pt(&[0, 1, 1])]);
        assert_eq!(parse_cone(&cone(&c)).unwrap(), c);
        let z = Cone::zero(2);
        assert_eq!(parse_cone(&cone(&z)).unwrap(), z);
        let phi = PolyPolynomial::new(2, vec![(0, p.clone()), (3, Polyhedron::origin(2))]).unwrap();
        assert_eq!(parse_polynomial(&polynomial(&phi)).unwrap(), phi);
        let t = TropPolynomial::new(vec![(0, frac(3, 2)), (2, frac(-1, 3))]).unwrap();
        assert_eq!(parse_tropical(&tropical(&t)).unwrap(), t);
    }

    #[test]
    fn canonical_numbers() {
        let p = Polyhedron::point(vec![frac(1, 2), frac(4, 2)]);
        assert_eq!(polyhedron(&p).to_string(), r#"{"rays":[],"vertices":[["1/2","2"]]}"#);
    }

    #[test]
    fn inequality_cones() {
        let v = serde_json::json!({ "facets": [["1", "0"], ["0", "1"]] });
        assert_eq!(parse_cone(&v).unwrap(), Cone::from_rays(2, &[pt(&[1, 0]), pt(&[0, 1])]));
        assert!(parse_polyhedron(&serde_json::json!({ "vertices": [["1"], ["1", "2"]] })).is_err());
    }
}

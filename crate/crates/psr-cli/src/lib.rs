//! The `psr` command line: JSON in, JSON out, exit code 0 / 1 / 2.

pub mod json;

use clap::{Parser, Subcommand};
use psr_disc::{
    builtin_polyhedralised_discriminant, find_high_multiplicity_cone_root_with, is_discriminant_root, multiplicity_bound_with, DiscError,
};
use psr_geometry::measure::{hausdorff_angle_distance, sq_polytope_distance, DEFAULT_SAMPLES, DEFAULT_SEED};
use psr_geometry::rat::parse_rat;
use psr_geometry::{Exec, GeomError, OmegaOrder, Point, Polyhedron, DEFAULT_CELL_CAP};
use psr_global::{
    classify_quadratic_local, classify_reduced_cubic_local, glue_global, minkowski_summand_certificate, shephard_weak_summand, GlobalError,
    GlueOutcome, LocalSolutionMap, ShephardFailure, SummandFailure,
};
use psr_local::lfan::{build_local_fan_with, enumerate_lcs_with};
use psr_local::solve::enumerate_mw_minimal_local_solutions_with;
use psr_local::{Caps, LocalError, DEFAULT_CANDIDATE_CAP};
use psr_poly::msum::affine_cone_root;
use psr_poly::trop::{same_function, tropicalize};
use psr_poly::{MSum, PolyError, PolyPolynomial};
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Parse(String),
    #[error("inputs have different ambient dimensions")]
    DimensionMismatch,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Local(#[from] LocalError),
    #[error(transparent)]
    Global(#[from] GlobalError),
    #[error(transparent)]
    Disc(#[from] DiscError),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
            CliError::Parse(_) => "parse",
            CliError::DimensionMismatch => "dimension_mismatch",
            CliError::Poly(_) => "polynomial",
            CliError::Geom(_) => "geometry",
            CliError::Local(_) => "local",
            CliError::Global(_) => "global",
            CliError::Disc(_) => "discriminant",
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "psr", about = "Exact roots of polyhedral polynomials", version)]
struct Args {
    /// Cell cap for enumerations (env PSR_CAP_CELLS).
    #[arg(long, global = true)]
    cap_cells: Option<usize>,
    /// Monte Carlo seed (env PSR_SEED).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Base of the generic functional ω, e.g. "1,2,3".
    #[arg(long, global = true)]
    omega: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// φ(P) and its summands.
    Eval {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        at: String,
    },
    /// Root test at --at, or an affine cone root without it.
    Root {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        at: Option<String>,
    },
    /// Distinctness of the ρ-points at every vertex of M.
    Generic {
        #[arg(long)]
        poly: String,
    },
    /// The labelled fan at the k-th vertex of M.
    Fan {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        vertex: usize,
    },
    /// Local compatible systems at the k-th vertex of M.
    Lcs {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        vertex: usize,
    },
    /// Minkowski-Weyl-minimal local solutions at the k-th vertex of M.
    SolveLocal {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        vertex: usize,
    },
    /// Glue complete local solutions to a global one.
    Glue {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        locals: String,
    },
    /// Quadratic or reduced-cubic local classification.
    Classify {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        vertex: usize,
    },
    /// Is Q1 a Minkowski summand of Q0?
    Summand {
        #[arg(long)]
        q1: String,
        #[arg(long)]
        q0: String,
    },
    /// Is Q1 a weak Minkowski summand of Q0?
    Shephard {
        #[arg(long)]
        q1: String,
        #[arg(long)]
        q0: String,
    },
    /// Root test of the polyhedralised discriminant.
    Disc {
        #[arg(long)]
        support: String,
        #[arg(long)]
        tuple: String,
        #[arg(long)]
        check_converse: bool,
    },
    /// Tropicalization at a functional, or roots of a tropical polynomial.
    Trop {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        at: Option<String>,
        /// Compare with a second polynomial as functions.
        #[arg(long)]
        versus: Option<String>,
    },
    /// Hausdorff-angle distance.
    Dist {
        #[arg(long)]
        q1: String,
        #[arg(long)]
        q0: String,
    },
}

/// Invocation settings after flags and environment are merged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Session {
    pub omega: Option<Vec<psr_geometry::Rat>>,
    pub caps: Caps,
    pub seed: u64,
}

impl Session {
    fn omega_for(&self, n: usize) -> Result<OmegaOrder, CliError> {
        match &self.omega {
            None => Ok(OmegaOrder::standard(n)),
            Some(b) if b.len() == n => Ok(OmegaOrder::new(b.clone())?),
            Some(_) => Err(CliError::DimensionMismatch),
        }
    }
}

pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, S, E>(argv: I, env: E) -> Output
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
    E: Fn(&str) -> Option<String>,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Output { code: 0, stdout: e.to_string(), stderr: String::new() };
            }
            return failure(CliError::Usage(e.to_string()));
        }
    };
    match session(&args, &env).and_then(|s| dispatch(&args.cmd, &s)) {
        Ok((code, v)) => Output { code, stdout: format!("{v}\n"), stderr: String::new() },
        Err(e) => failure(e),
    }
}

fn failure(e: CliError) -> Output {
    let v = json!({ "error": e.kind(), "message": e.to_string() });
    Output { code: 2, stdout: format!("{v}\n"), stderr: format!("psr: {e}\n") }
}

fn session<E: Fn(&str) -> Option<String>>(a: &Args, env: &E) -> Result<Session, CliError> {
    let from_env = |k: &str| -> Result<Option<u64>, CliError> {
        env(k).map(|s| s.trim().parse::<u64>().map_err(|_| CliError::Usage(format!("{k} must be a nonnegative integer")))).transpose()
    };
    let cells = match a.cap_cells {
        Some(c) => c,
        None => from_env("PSR_CAP_CELLS")?.map(|c| c as usize).unwrap_or(DEFAULT_CELL_CAP),
    };
    let seed = match a.seed {
        Some(s) => s,
        None => from_env("PSR_SEED")?.unwrap_or(DEFAULT_SEED),
    };
    let omega = a
        .omega
        .as_ref()
        .map(|s| s.split(',').map(|t| parse_rat(t).map_err(CliError::from)).collect::<Result<Vec<_>, _>>())
        .transpose()?;
    Ok(Session { omega, caps: Caps { cells, candidates: DEFAULT_CANDIDATE_CAP }, seed })
}

/// Inline JSON if the argument starts with '{' or '[', else a file path.
fn load(arg: &str) -> Result<Value, CliError> {
    let t = arg.trim_start();
    let text = if t.starts_with('{') || t.starts_with('[') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| CliError::Io(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{arg}: {e}")))
}

fn load_poly(arg: &str) -> Result<PolyPolynomial, CliError> {
    json::parse_polynomial(&load(arg)?)
}

fn load_polyhedron(arg: &str, n: Option<usize>) -> Result<Polyhedron, CliError> {
    let p = json::parse_polyhedron(&load(arg)?)?;
    if n.is_some_and(|n| n != p.dim()) {
        return Err(CliError::DimensionMismatch);
    }
    Ok(p)
}

fn nth_vertex(m: &MSum, k: usize) -> Result<Point, CliError> {
    m.vertices()
        .get(k)
        .cloned()
        .ok_or_else(|| CliError::Usage(format!("vertex index {k} out of range (M has {} vertices)", m.vertices().len())))
}

fn pair(p: (usize, usize)) -> Value {
    json!([p.0, p.1])
}

fn f64s(x: f64) -> Value {
    Value::String(format!("{x}"))
}

fn dispatch(cmd: &Cmd, s: &Session) -> Result<(i32, Value), CliError> {
    let ex = Exec::default();
    match cmd {
        Cmd::Eval { poly, at } => {
            let phi = load_poly(poly)?;
            let p = load_polyhedron(at, Some(phi.dim()))?;
            let (value, summands) = phi.evaluate(&p)?;
            let summands: Vec<Value> = summands.iter().map(|(i, q)| json!({ "exp": i, "value": json::polyhedron(q) })).collect();
            Ok((0, json!({ "summands": summands, "value": json::polyhedron(&value) })))
        }
        Cmd::Root { poly, at: Some(at) } => {
            let phi = load_poly(poly)?;
            let p = load_polyhedron(at, Some(phi.dim()))?;
            let r = phi.root_report(&p)?;
            let sharing: Vec<Value> = r
                .witness()
                .into_iter()
                .map(|(v, who)| json!({ "summands": who.iter().map(|e| e[0]).collect::<Vec<_>>(), "vertex": json::point(&v) }))
                .collect();
            let root = r.is_root();
            Ok((code(root), json!({ "is_root": root, "sharing": sharing, "sharing_count": r.min_sharing() })))
        }
        Cmd::Root { poly, at: None } => {
            let phi = load_poly(poly)?;
            let w = s.omega_for(phi.dim())?;
            let r = affine_cone_root(&phi, &w)?;
            Ok((0, json!({ "omega": json::point(w.base()), "root": json::polyhedron(&r) })))
        }
        Cmd::Generic { poly } => {
            let phi = load_poly(poly)?;
            match MSum::of(&phi)?.non_generic()? {
                None => Ok((0, json!({ "generic": true }))),
                Some(w) => Ok((
                    1,
                    json!({ "generic": false, "witness": {
                        "first": pair(w.first), "rho": json::point(&w.rho), "second": pair(w.second), "vertex": json::point(&w.vertex)
                    }}),
                )),
            }
        }
        Cmd::Fan { poly, vertex } => {
            let phi = load_poly(poly)?;
            let m = MSum::of(&phi)?;
            let v = nth_vertex(&m, *vertex)?;
            let fan = build_local_fan_with(ex, &m, &v)?;
            let cells: Vec<Value> = fan
                .cells
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    json!({
                        "cone": json::cone(&c.cone),
                        "index": k,
                        "primary": c.primary.iter().map(|&p| pair(p)).collect::<Vec<_>>(),
                        "secondary": c.secondary.iter().map(|&(a, b)| json!([pair(a), pair(b)])).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let rhos: Vec<Value> = fan.rhos.iter().map(|(p, r)| json!({ "pair": pair(*p), "rho": json::point(r) })).collect();
            let adjacency: Vec<Value> = fan.adjacency.iter().map(|(a, b, _)| json!([a, b])).collect();
            Ok((
                0,
                json!({
                    "adjacency": adjacency, "cells": cells, "generic": fan.non_generic.is_none(),
                    "normal": json::cone(&fan.normal), "rhos": rhos, "vertex": json::point(&v), "vertex_index": vertex,
                }),
            ))
        }
        Cmd::Lcs { poly, vertex } => {
            let phi = load_poly(poly)?;
            let m = MSum::of(&phi)?;
            let v = nth_vertex(&m, *vertex)?;
            let fan = build_local_fan_with(ex, &m, &v)?;
            let all = enumerate_lcs_with(ex, &fan, s.caps)?;
            let list: Vec<Value> = all.iter().map(|l| json::lcs(*vertex, l)).collect();
            Ok((0, json!({ "lcs": list, "vertex": json::point(&v) })))
        }
        Cmd::SolveLocal { poly, vertex } => {
            let phi = load_poly(poly)?;
            let m = MSum::of(&phi)?;
            let v = nth_vertex(&m, *vertex)?;
            let sols = enumerate_mw_minimal_local_solutions_with(ex, &phi, &v, s.caps)?;
            let list: Vec<Value> = sols.iter().map(json::polyhedron).collect();
            Ok((0, json!({ "solutions": list, "vertex": json::point(&v), "vertex_index": vertex })))
        }
        Cmd::Glue { poly, locals } => {
            let phi = load_poly(poly)?;
            let map = parse_locals(&load(locals)?, phi.dim())?;
            match glue_global(&phi, &map)? {
                GlueOutcome::Glued(p) => Ok((0, json!({ "global": json::polyhedron(&p) }))),
                GlueOutcome::Violation { vertex, gamma } => {
                    Ok((1, json!({ "violation": { "gamma": json::point(&gamma), "vertex": json::point(&vertex) } })))
                }
            }
        }
        Cmd::Classify { poly, vertex } => {
            let phi = load_poly(poly)?;
            let m = MSum::of(&phi)?;
            let v = nth_vertex(&m, *vertex)?;
            let r = match phi.support().as_slice() {
                [0, 1, 2] => classify_quadratic_local(&phi, &v)?,
                [0, 1, 3] => classify_reduced_cubic_local(&phi, &v)?,
                _ => return Err(CliError::Usage("classify needs support {0,1,2} or {0,1,3}".into())),
            };
            let sols: Vec<Value> = r.solutions.iter().map(json::polyhedron).collect();
            Ok((
                0,
                json!({ "case": format!("{:?}", r.case), "delta": json::point(&r.delta), "solutions": sols, "vertex": json::point(&r.vertex) }),
            ))
        }
        Cmd::Summand { q1, q0 } => {
            let a = load_polyhedron(q1, None)?;
            let b = load_polyhedron(q0, Some(a.dim()))?;
            let c = minkowski_summand_certificate(&a, &b)?;
            match &c.failure {
                None => Ok((0, json!({ "summand": true, "witness": json::polyhedron(&c.candidate) }))),
                Some(f) => {
                    let f = match f {
                        SummandFailure::NotAVertex(g) => json!({ "not_a_vertex": json::point(g) }),
                        SummandFailure::ConeMismatch(g) => json!({ "cone_mismatch": json::point(g) }),
                        SummandFailure::SumMismatch => json!("sum_mismatch"),
                    };
                    Ok((1, json!({ "candidate": json::polyhedron(&c.candidate), "failure": f, "summand": false })))
                }
            }
        }
        Cmd::Shephard { q1, q0 } => {
            let a = load_polyhedron(q1, None)?;
            let b = load_polyhedron(q0, Some(a.dim()))?;
            let r = shephard_weak_summand(&a, &b)?;
            let map: Vec<Value> = r.map.iter().map(|(u, v)| json!({ "from": json::point(u), "to": json::point(v) })).collect();
            let edges: Vec<Value> = r
                .lambdas
                .iter()
                .map(|(u, v, l)| json!({ "lambda": json::rat(l), "u": json::point(u), "v": json::point(v) }))
                .collect();
            let failure = match &r.failure {
                None => Value::Null,
                Some(ShephardFailure::Refinement(v)) => json!({ "refinement": json::point(v) }),
                Some(ShephardFailure::Edge(u, v)) => json!({ "edge": [json::point(u), json::point(v)] }),
            };
            let scale = r.scale().map(|x| json::rat(&x)).unwrap_or(Value::Null);
            let ok = r.is_weak_summand();
            Ok((code(ok), json!({ "edges": edges, "failure": failure, "map": map, "scale": scale, "weak_summand": ok })))
        }
        Cmd::Disc { support, tuple, check_converse } => {
            let sup = support
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| CliError::Usage(format!("bad support {support:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let t = load(tuple)?;
            let items = t.get("tuple").unwrap_or(&t).as_array().ok_or_else(|| CliError::Parse("tuple must be an array".into()))?;
            let qs = items.iter().map(json::parse_polyhedron).collect::<Result<Vec<_>, _>>()?;
            let n = qs.first().ok_or_else(|| CliError::Parse("empty tuple".into()))?.dim();
            if qs.iter().any(|q| q.dim() != n) {
                return Err(CliError::DimensionMismatch);
            }
            let d = builtin_polyhedralised_discriminant(n, &sup)?;
            let r = is_discriminant_root(&d, &qs)?;
            let sharing: Vec<Value> = r
                .witness()
                .into_iter()
                .map(|(v, who)| json!({ "monomials": who, "vertex": json::point(&v) }))
                .collect();
            let mut out = json!({ "is_root": r.is_root(), "sharing": sharing, "support": sup });
            if *check_converse && r.is_root() {
                let phi = PolyPolynomial::new(n, sup.iter().cloned().zip(qs.iter().cloned()).collect())?;
                let roots = find_high_multiplicity_cone_root_with(ex, &phi, &d, DEFAULT_SAMPLES, s.seed)?;
                let (delta, mu) = multiplicity_bound_with(ex, &phi, DEFAULT_SAMPLES, s.seed)?;
                let bound = delta * mu.value;
                let meets = roots.iter().any(|c| c.angle.value + 3.0 * (c.angle.std_err + mu.std_err * delta) >= bound);
                let list: Vec<Value> = roots
                    .iter()
                    .map(|c| {
                        json!({
                            "angle": f64s(c.angle.value), "root": json::polyhedron(&c.root), "std_err": f64s(c.angle.std_err),
                            "triple": [c.triple.0, c.triple.1, c.triple.2], "vertex": json::point(&c.vertex),
                        })
                    })
                    .collect();
                out["converse"] = json!({ "bound": { "delta": f64s(delta), "mu": f64s(mu.value) }, "meets_bound": meets, "roots": list });
            }
            Ok((code(r.is_root()), out))
        }
        Cmd::Trop { poly, at, versus } => {
            if let Some(other) = versus {
                let a = load_poly(poly)?;
                let b = load_poly(other)?;
                let same = same_function(&a, &b)?;
                return Ok((code(same), json!({ "same_function": same })));
            }
            let t = match at {
                Some(at) => {
                    let phi = load_poly(poly)?;
                    let l = parse_functional(at)?;
                    if l.len() != phi.dim() {
                        return Err(CliError::DimensionMismatch);
                    }
                    tropicalize(&phi, &l)?
                }
                None => json::parse_tropical(&load(poly)?)?,
            };
            let roots: Vec<Value> = t.roots().iter().map(|(r, m)| json!({ "multiplicity": m, "root": json::rat(r) })).collect();
            Ok((0, json!({ "roots": roots, "tropical": json::tropical(&t) })))
        }
        Cmd::Dist { q1, q0 } => {
            let a = load_polyhedron(q1, None)?;
            let b = load_polyhedron(q0, Some(a.dim()))?;
            let mw = |p: &Polyhedron| Polyhedron::polytope(p.vertices());
            let sq = sq_polytope_distance(&mw(&a)?, &mw(&b)?);
            Ok((0, json!({ "distance": f64s(hausdorff_angle_distance(&a, &b)), "polytope_sq_distance": json::rat(&sq) })))
        }
    }
}

fn code(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

/// "1,2" or a JSON array of rationals.
fn parse_functional(arg: &str) -> Result<Point, CliError> {
    if arg.trim_start().starts_with('[') {
        return json::parse_point(&load(arg)?);
    }
    arg.split(',').map(|t| parse_rat(t).map_err(CliError::from)).collect()
}

/// {"locals": [{"vertex": [...], "solution": <polyhedron>}, …]} or the bare array.
fn parse_locals(v: &Value, n: usize) -> Result<LocalSolutionMap, CliError> {
    let items = v.get("locals").unwrap_or(v).as_array().ok_or_else(|| CliError::Parse("locals must be an array".into()))?;
    let mut map = LocalSolutionMap::new();
    for it in items {
        let vx = json::parse_point(it.get("vertex").ok_or_else(|| CliError::Parse("local needs \"vertex\"".into()))?)?;
        let sol = json::parse_polyhedron(it.get("solution").ok_or_else(|| CliError::Parse("local needs \"solution\"".into()))?)?;
        if vx.len() != n || sol.dim() != n {
            return Err(CliError::DimensionMismatch);
        }
        map.insert(vx, sol);
    }
    Ok(map)
}

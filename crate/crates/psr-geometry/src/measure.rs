//! Normalised solid angles and the Hausdorff-angle distance.

use std::f64::consts::PI;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cone::Cone;
use crate::exec::{self, Exec};
use crate::linalg::solve;
use crate::polyhedron::Polyhedron;
use crate::rat::{dot, sub, to_f64, vec_f64, Point, Rat};

pub const DEFAULT_SAMPLES: usize = 200_000;
pub const DEFAULT_SEED: u64 = 7;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolidAngle {
    pub value: f64,
    /// Standard error; zero when the value is computed in closed form.
    pub std_err: f64,
}

impl SolidAngle {
    pub fn exact(value: f64) -> Self {
        SolidAngle { value, std_err: 0.0 }
    }
}

pub fn solid_angle(c: &Cone) -> SolidAngle {
    solid_angle_with(Exec::default(), c, DEFAULT_SAMPLES, DEFAULT_SEED)
}

/// Fraction of the unit sphere covered by the cone.
pub fn solid_angle_with(exec: Exec, c: &Cone, samples: usize, seed: u64) -> SolidAngle {
    let n = c.ambient_dim();
    if !c.is_full_dim() {
        return SolidAngle::exact(0.0);
    }
    match n {
        1 => SolidAngle::exact(if c.is_pointed() { 0.5 } else { 1.0 }),
        2 => SolidAngle::exact(planar_angle(c) / (2.0 * PI)),
        _ => monte_carlo(exec, c, samples, seed),
    }
}

fn planar_angle(c: &Cone) -> f64 {
    match c.lineality().len() {
        2 => 2.0 * PI,
        1 => PI,
        _ => {
            let r = c.rays();
            let a = vec_f64(&r[0]);
            let b = vec_f64(&r[1]);
            let cross = a[0] * b[1] - a[1] * b[0];
            let d = a[0] * b[0] + a[1] * b[1];
            cross.abs().atan2(d)
        }
    }
}

fn monte_carlo(exec: Exec, c: &Cone, samples: usize, seed: u64) -> SolidAngle {
    let n = c.ambient_dim();
    let facets: Vec<Vec<f64>> = c.facets().iter().map(|f| vec_f64(f)).collect();
    const CHUNK: usize = 4096;
    let chunks: Vec<(u64, usize)> = (0..samples.div_ceil(CHUNK))
        .map(|k| (k as u64, CHUNK.min(samples - k * CHUNK)))
        .collect();
    let hits: Vec<usize> = exec::map(exec, &chunks, |&(k, len)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k);
        let mut h = 0;
        let mut x = vec![0.0; n];
        for _ in 0..len {
            for xi in x.iter_mut() {
                *xi = gaussian(&mut rng);
            }
            if facets.iter().all(|f| f.iter().zip(&x).map(|(a, b)| a * b).sum::<f64>() >= 0.0) {
                h += 1;
            }
        }
        h
    });
    let total: usize = hits.iter().sum();
    let p = total as f64 / samples as f64;
    SolidAngle { value: p, std_err: (p * (1.0 - p) / samples as f64).sqrt() }
}

fn gaussian<R: Rng>(rng: &mut R) -> f64 {
    let u: f64 = rng.gen_range(f64::EPSILON..1.0);
    let v: f64 = rng.gen();
    (-2.0 * u.ln()).sqrt() * (2.0 * PI * v).cos()
}

/// Exact squared Euclidean distance from x to conv(points).
pub fn sq_dist_to_hull(x: &[Rat], points: &[Point]) -> Rat {
    let n = x.len();
    let m = points.len();
    let mut best: Option<Rat> = None;
    let k_max = (n + 1).min(m);
    let mut idx: Vec<usize> = Vec::new();
    fn rec(
        start: usize,
        k: usize,
        m: usize,
        idx: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if idx.len() == k {
            f(idx);
            return;
        }
        for i in start..m {
            idx.push(i);
            rec(i + 1, k, m, idx, f);
            idx.pop();
        }
    }
    for k in 1..=k_max {
        let mut visit = |s: &[usize]| {
            if let Some(d) = sq_dist_to_simplex(x, points, s) {
                if best.as_ref().is_none_or(|b| d < *b) {
                    best = Some(d);
                }
            }
        };
        rec(0, k, m, &mut idx, &mut visit);
    }
    best.unwrap_or_else(Rat::zero)
}

/// Distance to the affine hull of the chosen points if the foot of the
/// perpendicular lies in their convex hull.
fn sq_dist_to_simplex(x: &[Rat], points: &[Point], s: &[usize]) -> Option<Rat> {
    let p0 = &points[s[0]];
    let dirs: Vec<Point> = s[1..].iter().map(|&i| sub(&points[i], p0)).collect();
    let k = dirs.len();
    let y = sub(x, p0);
    let lam: Vec<Rat> = if k == 0 {
        vec![]
    } else {
        let gram: Vec<Point> = dirs.iter().map(|a| dirs.iter().map(|b| dot(a, b)).collect()).collect();
        if crate::linalg::rank(&gram, k) < k {
            return None;
        }
        let rhs: Vec<Rat> = dirs.iter().map(|a| dot(a, &y)).collect();
        solve(&gram, &rhs, k)?
    };
    let sum: Rat = lam.iter().fold(Rat::zero(), |a, b| a + b);
    if lam.iter().any(|l| l.is_negative()) || sum > num_traits::One::one() {
        return None;
    }
    let mut foot = p0.clone();
    for (l, d) in lam.iter().zip(&dirs) {
        for (fi, di) in foot.iter_mut().zip(d) {
            *fi = &*fi + l * di;
        }
    }
    let diff = sub(x, &foot);
    Some(dot(&diff, &diff))
}

/// Exact squared Hausdorff distance between two polytopes given by points.
pub fn sq_hausdorff_points(a: &[Point], b: &[Point]) -> Rat {
    let one = a.iter().map(|x| sq_dist_to_hull(x, b)).max().unwrap_or_else(Rat::zero);
    let two = b.iter().map(|x| sq_dist_to_hull(x, a)).max().unwrap_or_else(Rat::zero);
    one.max(two)
}

/// Squared Hausdorff distance of the Minkowski-Weyl polytopes.
pub fn sq_polytope_distance(p: &Polyhedron, q: &Polyhedron) -> Rat {
    sq_hausdorff_points(p.vertices(), q.vertices())
}

/// Hausdorff distance of the unit-sphere sections of two cones.
pub fn cone_distance(c1: &Cone, c2: &Cone) -> f64 {
    if c1 == c2 {
        return 0.0;
    }
    let n = c1.ambient_dim();
    if c1.is_zero() || c2.is_zero() {
        return 2.0;
    }
    match n {
        1 => {
            let s1 = signs(c1);
            let s2 = signs(c2);
            let h = |a: &[i8], b: &[i8]| {
                if a.iter().all(|x| b.contains(x)) {
                    0.0
                } else {
                    2.0
                }
            };
            f64::max(h(&s1, &s2), h(&s2, &s1))
        }
        2 => {
            let a1 = arcs(c1);
            let a2 = arcs(c2);
            f64::max(directed_arcs(&a1, &a2), directed_arcs(&a2, &a1))
        }
        _ => sampled_cone_distance(c1, c2),
    }
}

fn signs(c: &Cone) -> Vec<i8> {
    let mut s = Vec::new();
    if c.contains(&[crate::rat::int(1)]) {
        s.push(1);
    }
    if c.contains(&[crate::rat::int(-1)]) {
        s.push(-1);
    }
    s
}

/// Sphere section of a planar cone as arcs (start angle, width).
fn arcs(c: &Cone) -> Vec<(f64, f64)> {
    let ang = |p: &Point| {
        let v = vec_f64(p);
        v[1].atan2(v[0])
    };
    match (c.lineality().len(), c.rays().len()) {
        (2, _) => vec![(0.0, 2.0 * PI)],
        (1, 0) => {
            let a = ang(&c.lineality()[0]);
            vec![(a, 0.0), (a + PI, 0.0)]
        }
        (1, _) => {
            let a = ang(&c.lineality()[0]);
            let r = vec_f64(&c.rays()[0]);
            let l = vec_f64(&c.lineality()[0]);
            let side = l[0] * r[1] - l[1] * r[0];
            if side > 0.0 {
                vec![(a, PI)]
            } else {
                vec![(a + PI, PI)]
            }
        }
        (_, 1) => vec![(ang(&c.rays()[0]), 0.0)],
        _ => {
            let a = ang(&c.rays()[0]);
            let b = ang(&c.rays()[1]);
            let mut w = (b - a).rem_euclid(2.0 * PI);
            if w > PI {
                return vec![(b, 2.0 * PI - w)];
            }
            if w == 0.0 {
                w = 0.0;
            }
            vec![(a, w)]
        }
    }
}

fn ang_to_arc(t: f64, arc: &(f64, f64)) -> f64 {
    let d = (t - arc.0).rem_euclid(2.0 * PI);
    if d <= arc.1 {
        0.0
    } else {
        f64::min(d - arc.1, 2.0 * PI - d)
    }
}

fn ang_to_set(t: f64, set: &[(f64, f64)]) -> f64 {
    set.iter().map(|a| ang_to_arc(t, a)).fold(f64::INFINITY, f64::min)
}

fn directed_arcs(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    // Candidates: endpoints of a, and gap midpoints of b that fall inside a.
    let mut cand: Vec<f64> = Vec::new();
    for &(s, w) in a {
        cand.push(s);
        cand.push(s + w);
    }
    let mut ends: Vec<(f64, f64)> = b.iter().map(|&(s, w)| (s.rem_euclid(2.0 * PI), w)).collect();
    ends.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    for i in 0..ends.len() {
        let (s, w) = ends[i];
        let next = if i + 1 < ends.len() { ends[i + 1].0 } else { ends[0].0 + 2.0 * PI };
        let mid = (s + w + next) / 2.0;
        if ang_to_set(mid, a) == 0.0 {
            cand.push(mid);
        }
    }
    let theta = cand.iter().map(|&t| ang_to_set(t, b)).fold(0.0, f64::max);
    2.0 * (theta / 2.0).sin()
}

fn sampled_cone_distance(c1: &Cone, c2: &Cone) -> f64 {
    let n = c1.ambient_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut pts = |c: &Cone| {
        let mut out: Vec<Vec<f64>> = Vec::new();
        for g in c.all_generators() {
            out.push(normalize(&vec_f64(&g)));
        }
        for _ in 0..4000 {
            let gens = c.all_generators();
            let mut v = vec![0.0; n];
            for g in &gens {
                let w: f64 = rng.gen();
                for (vi, gi) in v.iter_mut().zip(g) {
                    *vi += w * to_f64(gi);
                }
            }
            if v.iter().any(|x| *x != 0.0) {
                out.push(normalize(&v));
            }
        }
        out
    };
    let p1 = pts(c1);
    let p2 = pts(c2);
    let d = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt();
    let dir = |a: &[Vec<f64>], b: &[Vec<f64>]| {
        a.iter().map(|x| b.iter().map(|y| d(x, y)).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max)
    };
    f64::max(dir(&p1, &p2), dir(&p2, &p1))
}

fn normalize(v: &[f64]) -> Vec<f64> {
    let l = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter().map(|x| x / l).collect()
}

/// d_hau(conv V(P), conv V(Q)) + d_co(rec P, rec Q).
pub fn hausdorff_angle_distance(p: &Polyhedron, q: &Polyhedron) -> f64 {
    to_f64(&sq_polytope_distance(p, q)).sqrt() + cone_distance(p.rec_cone(), q.rec_cone())
}

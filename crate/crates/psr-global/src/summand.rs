//! Minkowski summand certificates and Shephard's weak-summand criterion.

use std::collections::BTreeMap;

use psr_geometry::fan::unions_equal;
use psr_geometry::rat::{int, scale, sub};
use psr_geometry::{Cone, Point, Polyhedron, Rat};
use psr_poly::{MSum, PolyPolynomial};

use crate::GlobalError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SummandFailure {
    /// v₀ − v₁ is not a vertex of the candidate.
    NotAVertex(Point),
    /// N_{P0}(γ) differs from the union of the N_M(v) with v₀ − v₁ = γ.
    ConeMismatch(Point),
    SumMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummandCertificate {
    /// conv{v₀ − v₁ : v ∈ V(M)}.
    pub candidate: Polyhedron,
    pub failure: Option<SummandFailure>,
}

impl SummandCertificate {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }

    /// R with Q1 ⊙ R = Q0.
    pub fn witness(&self) -> Option<&Polyhedron> {
        self.holds().then_some(&self.candidate)
    }
}

fn require_polytopes(a: &Polyhedron, b: &Polyhedron) -> Result<(), GlobalError> {
    if a.dim() != b.dim() {
        return Err(GlobalError::Geom(psr_geometry::GeomError::DimensionMismatch));
    }
    if !a.is_polytope() || !b.is_polytope() {
        return Err(GlobalError::NotAPolytope);
    }
    Ok(())
}

/// Is Q1 a Minkowski summand of Q0, via the global solutions of Q1 ⊙ Y ⊕ Q0?
pub fn minkowski_summand_certificate(q1: &Polyhedron, q0: &Polyhedron) -> Result<SummandCertificate, GlobalError> {
    require_polytopes(q1, q0)?;
    let phi = PolyPolynomial::new(q0.dim(), vec![(0, q0.clone()), (1, q1.clone())])?;
    let m = MSum::of(&phi)?;
    let mut by_gamma: BTreeMap<Point, Vec<Cone>> = BTreeMap::new();
    for v in m.vertices() {
        by_gamma.entry(m.rho(v, 0, 1)?).or_default().push(m.normal_cone(v)?);
    }
    let pts: Vec<Point> = by_gamma.keys().cloned().collect();
    let candidate = Polyhedron::polytope(&pts)?;
    let fail = |f| Ok(SummandCertificate { candidate: candidate.clone(), failure: Some(f) });
    for (g, cones) in &by_gamma {
        if !candidate.is_vertex(g) {
            return fail(SummandFailure::NotAVertex(g.clone()));
        }
        if !unions_equal(&[candidate.inner_normal_cone(g)?], cones) {
            return fail(SummandFailure::ConeMismatch(g.clone()));
        }
    }
    if q1.minkowski_sum(&candidate)? != *q0 {
        return fail(SummandFailure::SumMismatch);
    }
    Ok(SummandCertificate { candidate, failure: None })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShephardFailure {
    /// N_{Q0}(v₀) lies in no single normal cone of Q1.
    Refinement(Point),
    /// No λ ≥ 0 with λ(u₀ − v₀) = Sp(u₀) − Sp(v₀).
    Edge(Point, Point),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShephardReport {
    /// v₀ ↦ Sp(v₀).
    pub map: Vec<(Point, Point)>,
    /// (u₀, v₀, λ) per edge of Q0.
    pub lambdas: Vec<(Point, Point, Rat)>,
    pub failure: Option<ShephardFailure>,
}

impl ShephardReport {
    pub fn is_weak_summand(&self) -> bool {
        self.failure.is_none()
    }

    /// Least λ₀ with Q1 a summand of λ₀·Q0, when Q1 is a weak summand.
    pub fn scale(&self) -> Option<Rat> {
        if !self.is_weak_summand() {
            return None;
        }
        Some(self.lambdas.iter().map(|l| l.2.clone()).max().unwrap_or_else(|| int(0)))
    }
}

/// λ with λ·e = d, if any.
fn ratio(d: &[Rat], e: &[Rat]) -> Option<Rat> {
    let k = e.iter().position(|x| *x != int(0))?;
    let l = &d[k] / &e[k];
    (scale(e, &l) == d).then_some(l)
}

pub fn shephard_weak_summand(q1: &Polyhedron, q0: &Polyhedron) -> Result<ShephardReport, GlobalError> {
    require_polytopes(q1, q0)?;
    let mut map = Vec::new();
    for v0 in q0.vertices() {
        let n0 = q0.inner_normal_cone(v0)?;
        let a = q1.argmin(&n0.interior_point()).expect("polytope");
        if a.len() != 1 || !q1.inner_normal_cone(&a[0])?.contains_cone(&n0) {
            return Ok(ShephardReport { map, lambdas: Vec::new(), failure: Some(ShephardFailure::Refinement(v0.clone())) });
        }
        map.push((v0.clone(), a[0].clone()));
    }
    let verts = q0.vertices();
    let mut lambdas = Vec::new();
    for (i, j) in q0.edges() {
        let (u0, v0) = (&verts[i], &verts[j]);
        let d = sub(&map[i].1, &map[j].1);
        match ratio(&d, &sub(u0, v0)) {
            Some(l) if l >= int(0) => lambdas.push((u0.clone(), v0.clone(), l)),
            _ => {
                return Ok(ShephardReport { map, lambdas, failure: Some(ShephardFailure::Edge(u0.clone(), v0.clone())) });
            }
        }
    }
    Ok(ShephardReport { map, lambdas, failure: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use psr_geometry::rat::point;

    fn seg(a: i64, b: i64) -> Polyhedron {
        Polyhedron::polytope(&[point(&[a]), point(&[b])]).unwrap()
    }

    fn poly(pts: &[[i64; 2]]) -> Polyhedron {
        Polyhedron::polytope(&pts.iter().map(|p| point(p)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn summand_examples() {
        let c = minkowski_summand_certificate(&seg(-1, 1), &seg(-2, 2)).unwrap();
        assert_eq!(c.witness(), Some(&seg(-1, 1)));
        let c = minkowski_summand_certificate(&seg(-1, 1), &Polyhedron::origin(1)).unwrap();
        assert!(!c.holds());
        let sq = poly(&[[0, 0], [1, 0], [0, 1], [1, 1]]);
        let c = minkowski_summand_certificate(&sq, &sq).unwrap();
        assert_eq!(c.witness(), Some(&Polyhedron::origin(2)));
        let hex = poly(&[[0, 0], [1, 0], [2, 1], [2, 2], [1, 2], [0, 1]]);
        let tri = poly(&[[0, 0], [1, 0], [1, 1]]);
        let c = minkowski_summand_certificate(&tri, &hex).unwrap();
        assert_eq!(c.witness(), Some(&poly(&[[0, 0], [0, 1], [1, 1]])));
        assert!(!minkowski_summand_certificate(&hex, &tri).unwrap().holds());
    }

    #[test]
    fn shephard_examples() {
        let sq = poly(&[[0, 0], [1, 0], [0, 1], [1, 1]]);
        let r = shephard_weak_summand(&sq, &sq).unwrap();
        assert!(r.is_weak_summand());
        assert!(r.map.iter().all(|(a, b)| a == b));
        assert!(r.lambdas.iter().all(|l| l.2 == int(1)));

        let e1 = poly(&[[0, 0], [1, 0]]);
        let r = shephard_weak_summand(&e1, &sq).unwrap();
        assert!(r.is_weak_summand());
        assert_eq!(r.lambdas.len(), 4);
        for (u, v, l) in &r.lambdas {
            let horizontal = u[1] == v[1];
            assert_eq!(*l, int(if horizontal { 1 } else { 0 }));
        }

        let tri = poly(&[[0, 0], [1, 0], [0, 1]]);
        let r = shephard_weak_summand(&tri, &e1).unwrap();
        assert_eq!(r.failure, Some(ShephardFailure::Refinement(point(&[0, 0]))));
    }

    #[test]
    fn shephard_scale() {
        let hex = poly(&[[0, 0], [1, 0], [2, 1], [2, 2], [1, 2], [0, 1]]);
        let big = poly(&[[0, 0], [2, 0], [2, 2]]);
        let r = shephard_weak_summand(&big, &hex).unwrap();
        assert_eq!(r.scale(), Some(int(2)));
        assert!(!minkowski_summand_certificate(&big, &hex).unwrap().holds());
        assert!(minkowski_summand_certificate(&big, &hex.dilate(2)).unwrap().holds());
    }
}

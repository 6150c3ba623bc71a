//! Complete local solutions and the local-global principle.

use std::collections::BTreeMap;

use psr_geometry::fan::{normal_fan, union_covers};
use psr_geometry::{exec, Exec, GeomError, Point, Polyhedron, Rat};
use psr_poly::{MSum, PolyPolynomial};

use crate::GlobalError;

/// Vertex v of M ↦ S_v.
pub type LocalSolutionMap = BTreeMap<Point, Polyhedron>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GlueOutcome {
    Glued(Polyhedron),
    /// N_M(v) ∩ N_{P0}(γ) is full-dimensional but γ is not a vertex of S_v.
    Violation { vertex: Point, gamma: Point },
}

/// S is a root whose normal fan has support exactly N_M(v).
pub fn is_complete_local(phi: &PolyPolynomial, v: &[Rat], s: &Polyhedron) -> Result<bool, GlobalError> {
    let m = MSum::of(phi)?;
    complete_at(phi, &m, v, s)
}

fn complete_at(phi: &PolyPolynomial, m: &MSum, v: &[Rat], s: &Polyhedron) -> Result<bool, GlobalError> {
    Ok(phi.is_root(s)? && s.normal_support() == m.normal_cone(v)?)
}

pub fn glue_global(phi: &PolyPolynomial, s: &LocalSolutionMap) -> Result<GlueOutcome, GlobalError> {
    glue_global_with(Exec::default(), phi, s)
}

pub fn glue_global_with(ex: Exec, phi: &PolyPolynomial, s: &LocalSolutionMap) -> Result<GlueOutcome, GlobalError> {
    let m = MSum::of(phi)?;
    if s.keys().any(|k| !m.value.is_vertex(k)) {
        return Err(GlobalError::Geom(GeomError::NotAVertex));
    }
    let verts: Vec<Point> = m.vertices().to_vec();
    let checks = exec::map(ex, &verts, |v| -> Result<(), GlobalError> {
        let sv = s.get(v).ok_or_else(|| GlobalError::MissingLocal(v.clone()))?;
        if !complete_at(phi, &m, v, sv)? {
            return Err(GlobalError::IncompleteLocal(v.clone()));
        }
        Ok(())
    });
    checks.into_iter().collect::<Result<Vec<()>, _>>()?;
    let mut pts: Vec<Point> = s.values().flat_map(|p| p.vertices().iter().cloned()).collect();
    pts.sort();
    pts.dedup();
    let p0 = Polyhedron::new(phi.dim(), &pts, &m.value.rec_cone().all_generators())?;
    let gammas: Vec<(Point, psr_geometry::Cone)> =
        p0.vertices().iter().map(|g| (g.clone(), p0.inner_normal_cone(g).unwrap())).collect();
    let found = exec::map(ex, &verts, |v| -> Result<Option<Point>, GlobalError> {
        let nv = m.normal_cone(v)?;
        let sv = &s[v];
        Ok(gammas
            .iter()
            .find(|(g, ng)| nv.intersect(ng).is_full_dim() && !sv.is_vertex(g))
            .map(|(g, _)| g.clone()))
    });
    for (v, f) in verts.iter().zip(found) {
        if let Some(gamma) = f? {
            return Ok(GlueOutcome::Violation { vertex: v.clone(), gamma });
        }
    }
    if !phi.is_root(&p0)? {
        return Err(GlobalError::Poly(psr_poly::PolyError::NotARoot));
    }
    Ok(GlueOutcome::Glued(p0))
}

/// A root whose normal fan covers every normal cone of M.
pub fn is_global_solution(phi: &PolyPolynomial, p0: &Polyhedron) -> Result<bool, GlobalError> {
    if !phi.is_root(p0)? {
        return Ok(false);
    }
    let m = MSum::of(phi)?;
    let cells = normal_fan(p0).cells;
    for v in m.vertices() {
        if !union_covers(&[m.normal_cone(v)?], &cells) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// S_v = P0 ⊙ N_M(v)⋆.
pub fn extract_local(phi: &PolyPolynomial, p0: &Polyhedron, v: &[Rat]) -> Result<Polyhedron, GlobalError> {
    let m = MSum::of(phi)?;
    Ok(p0.plus_cone(&m.normal_cone(v)?.dual())?)
}

pub fn extract_all(phi: &PolyPolynomial, p0: &Polyhedron) -> Result<LocalSolutionMap, GlobalError> {
    let m = MSum::of(phi)?;
    m.vertices()
        .iter()
        .map(|v| Ok((v.clone(), p0.plus_cone(&m.normal_cone(v)?.dual())?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use psr_geometry::rat::{frac, point};

    fn seg(a: i64, b: i64) -> Polyhedron {
        Polyhedron::polytope(&[point(&[a]), point(&[b])]).unwrap()
    }

    fn ray(a: i64, up: bool) -> Polyhedron {
        Polyhedron::new(1, &[point(&[a])], &[point(&[if up { 1 } else { -1 }])]).unwrap()
    }

    fn map(entries: Vec<(i64, Polyhedron)>) -> LocalSolutionMap {
        entries.into_iter().map(|(v, p)| (point(&[v]), p)).collect()
    }

    #[test]
    fn glue_examples() {
        let phi = PolyPolynomial::new(1, vec![(1, seg(-1, 1)), (0, seg(-2, 2))]).unwrap();
        let s = map(vec![(-3, ray(-1, true)), (3, ray(1, false))]);
        assert_eq!(glue_global(&phi, &s).unwrap(), GlueOutcome::Glued(seg(-1, 1)));

        let phi = PolyPolynomial::new(1, vec![(1, seg(-1, 1)), (0, Polyhedron::point(point(&[0])))]).unwrap();
        let s = map(vec![(-1, ray(1, true)), (1, ray(-1, false))]);
        assert_eq!(
            glue_global(&phi, &s).unwrap(),
            GlueOutcome::Violation { vertex: point(&[-1]), gamma: point(&[-1]) }
        );
    }

    #[test]
    fn glue_single_vertex() {
        let pt = |a| Polyhedron::point(point(&[a]));
        let phi = PolyPolynomial::new(1, vec![(0, pt(3)), (1, pt(1)), (2, pt(0))]).unwrap();
        let sol = Polyhedron::polytope(&[point(&[1]), vec![frac(3, 2)]]).unwrap();
        let s = map(vec![(4, sol.clone())]);
        assert_eq!(glue_global(&phi, &s).unwrap(), GlueOutcome::Glued(sol));
    }

    #[test]
    fn glue_rejects_incomplete() {
        let phi = PolyPolynomial::new(1, vec![(1, seg(-1, 1)), (0, seg(-2, 2))]).unwrap();
        let s = map(vec![(-3, seg(-1, 1)), (3, ray(1, false))]);
        assert_eq!(glue_global(&phi, &s), Err(GlobalError::IncompleteLocal(point(&[-3]))));
        let s = map(vec![(3, ray(1, false))]);
        assert_eq!(glue_global(&phi, &s), Err(GlobalError::MissingLocal(point(&[-3]))));
    }

    #[test]
    fn global_solution_examples() {
        let phi = PolyPolynomial::new(1, vec![(1, seg(-1, 1)), (0, seg(-2, 2))]).unwrap();
        assert!(is_global_solution(&phi, &seg(-1, 1)).unwrap());
        assert!(!is_global_solution(&phi, &ray(1, true)).unwrap());
        let q = seg(0, 2);
        let id = PolyPolynomial::new(1, vec![(1, q.clone()), (0, q)]).unwrap();
        assert!(is_global_solution(&id, &Polyhedron::origin(1)).unwrap());
    }

    #[test]
    fn extract_examples() {
        let phi = PolyPolynomial::new(1, vec![(1, seg(-1, 1)), (0, seg(-2, 2))]).unwrap();
        assert_eq!(extract_local(&phi, &seg(-1, 1), &point(&[-3])).unwrap(), ray(-1, true));
        assert_eq!(extract_local(&phi, &seg(-1, 1), &point(&[3])).unwrap(), ray(1, false));
        let all = extract_all(&phi, &seg(-1, 1)).unwrap();
        for (v, s) in &all {
            assert!(is_complete_local(&phi, v, s).unwrap());
        }
        assert_eq!(glue_global(&phi, &all).unwrap(), GlueOutcome::Glued(seg(-1, 1)));
    }
}

//! Polyhedral cones kept in both generator and inequality form.

use num_traits::{Signed, Zero};

use crate::dd::generators;
use crate::linalg::{project_out, rref};
use crate::rat::{add, dot, is_zero, neg, primitive, zero_vec, Point, Rat};

/// A closed polyhedral cone in ℚⁿ.
///
/// `rays` are extreme rays modulo the lineality space `lin`; `facets` are
/// inner normals (a·x >= 0) modulo the equation space `eqs`.  All four lists
/// are canonical, so derived equality is set equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    n: usize,
    lin: Vec<Point>,
    rays: Vec<Point>,
    eqs: Vec<Point>,
    facets: Vec<Point>,
}

fn canon_basis(v: &[Point], n: usize) -> Vec<Point> {
    rref(v, n).iter().map(|r| primitive(r)).collect()
}

fn canon_dirs(v: &[Point], modulo: &[Point]) -> Vec<Point> {
    let mut out: Vec<Point> = v
        .iter()
        .map(|r| primitive(&project_out(r, modulo)))
        .filter(|r| !is_zero(r))
        .collect();
    out.sort();
    out.dedup();
    out
}

impl Cone {
    fn assemble(n: usize, lin: Vec<Point>, rays: Vec<Point>, eqs: Vec<Point>, facets: Vec<Point>) -> Cone {
        let lin = canon_basis(&lin, n);
        let eqs = canon_basis(&eqs, n);
        let rays = canon_dirs(&rays, &lin);
        let facets = canon_dirs(&facets, &eqs);
        Cone { n, lin, rays, eqs, facets }
    }

    /// Cone generated by `rays` and the lines spanned by `lines`.
    pub fn from_generators(n: usize, rays: &[Point], lines: &[Point]) -> Cone {
        let d = generators(n, rays, lines);
        let g = generators(n, &d.rays, &d.lineality);
        Cone::assemble(n, g.lineality, g.rays, d.lineality, d.rays)
    }

    pub fn from_rays(n: usize, rays: &[Point]) -> Cone {
        Cone::from_generators(n, rays, &[])
    }

    /// Cone {x : a·x >= 0 for a in ineqs, b·x = 0 for b in eqs}.
    pub fn from_inequalities(n: usize, ineqs: &[Point], eqs: &[Point]) -> Cone {
        let g = generators(n, ineqs, eqs);
        let d = generators(n, &g.rays, &g.lineality);
        Cone::assemble(n, g.lineality, g.rays, d.lineality, d.rays)
    }

    pub fn full(n: usize) -> Cone {
        Cone::from_inequalities(n, &[], &[])
    }

    pub fn zero(n: usize) -> Cone {
        Cone::from_generators(n, &[], &[])
    }

    pub fn halfspace(a: &[Rat]) -> Cone {
        Cone::from_inequalities(a.len(), &[a.to_vec()], &[])
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n - self.eqs.len()
    }

    pub fn is_full_dim(&self) -> bool {
        self.eqs.is_empty()
    }

    pub fn is_pointed(&self) -> bool {
        self.lin.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.lin.is_empty() && self.rays.is_empty()
    }

    pub fn lineality(&self) -> &[Point] {
        &self.lin
    }

    pub fn rays(&self) -> &[Point] {
        &self.rays
    }

    pub fn facets(&self) -> &[Point] {
        &self.facets
    }

    pub fn equations(&self) -> &[Point] {
        &self.eqs
    }

    /// Rays together with both directions of every lineality basis vector.
    pub fn all_generators(&self) -> Vec<Point> {
        let mut g = self.rays.clone();
        for l in &self.lin {
            g.push(l.clone());
            g.push(neg(l));
        }
        g
    }

    pub fn dual(&self) -> Cone {
        Cone {
            n: self.n,
            lin: self.eqs.clone(),
            rays: self.facets.clone(),
            eqs: self.lin.clone(),
            facets: self.rays.clone(),
        }
    }

    pub fn intersect(&self, other: &Cone) -> Cone {
        let mut ineqs = self.facets.clone();
        ineqs.extend(other.facets.iter().cloned());
        let mut eqs = self.eqs.clone();
        eqs.extend(other.eqs.iter().cloned());
        Cone::from_inequalities(self.n, &ineqs, &eqs)
    }

    pub fn intersect_all(n: usize, cones: &[Cone]) -> Cone {
        let mut ineqs = Vec::new();
        let mut eqs = Vec::new();
        for c in cones {
            ineqs.extend(c.facets.iter().cloned());
            eqs.extend(c.eqs.iter().cloned());
        }
        Cone::from_inequalities(n, &ineqs, &eqs)
    }

    /// Restriction by extra halfspaces a·x >= 0.
    pub fn cut(&self, halfspaces: &[Point]) -> Cone {
        let mut ineqs = self.facets.clone();
        ineqs.extend(halfspaces.iter().cloned());
        Cone::from_inequalities(self.n, &ineqs, &self.eqs)
    }

    pub fn conic_sum(&self, other: &Cone) -> Cone {
        Cone::sum_all(self.n, &[self.clone(), other.clone()])
    }

    pub fn sum_all(n: usize, cones: &[Cone]) -> Cone {
        let mut rays = Vec::new();
        let mut lines = Vec::new();
        for c in cones {
            rays.extend(c.rays.iter().cloned());
            lines.extend(c.lin.iter().cloned());
        }
        Cone::from_generators(n, &rays, &lines)
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.eqs.iter().all(|e| dot(e, x).is_zero()) && self.facets.iter().all(|f| !dot(f, x).is_negative())
    }

    /// Strict interior membership (full-dimensional cones only).
    pub fn contains_interior(&self, x: &[Rat]) -> bool {
        self.is_full_dim() && self.facets.iter().all(|f| dot(f, x).is_positive())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.all_generators().iter().all(|g| self.contains(g))
    }

    /// Sign of a linear functional on the cone: `Some(s)` if it has constant
    /// weak sign s on the whole cone, `None` if it takes both strict signs.
    pub fn functional_sign(&self, a: &[Rat]) -> Option<i8> {
        let mut pos = false;
        let mut negv = false;
        for l in &self.lin {
            if !dot(a, l).is_zero() {
                return None;
            }
        }
        for r in &self.rays {
            let v = dot(a, r);
            if v.is_positive() {
                pos = true;
            } else if v.is_negative() {
                negv = true;
            }
        }
        match (pos, negv) {
            (true, true) => None,
            (true, false) => Some(1),
            (false, true) => Some(-1),
            (false, false) => Some(0),
        }
    }

    /// A point in the relative interior.
    pub fn interior_point(&self) -> Point {
        self.rays.iter().fold(zero_vec(self.n), |acc, r| add(&acc, r))
    }

    /// Does the functional a satisfy a·x >= 0 on the whole cone?
    pub fn nonneg_on(&self, a: &[Rat]) -> bool {
        matches!(self.functional_sign(a), Some(s) if s >= 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::point;

    #[test]
    fn dual_of_full_line_is_zero() {
        let c = Cone::from_rays(1, &[point(&[1]), point(&[-1])]);
        assert_eq!(c, Cone::full(1));
        assert_eq!(c.dual(), Cone::zero(1));
    }

    #[test]
    fn halfline_self_dual() {
        let c = Cone::from_rays(1, &[point(&[1])]);
        assert_eq!(c.dual(), c);
    }

    #[test]
    fn dual_of_slanted_cone() {
        let c = Cone::from_rays(2, &[point(&[1, 0]), point(&[1, 1])]);
        assert_eq!(c.dual(), Cone::from_rays(2, &[point(&[0, 1]), point(&[1, -1])]));
    }

    #[test]
    fn opposite_halflines_meet_in_origin() {
        let a = Cone::from_rays(1, &[point(&[1])]);
        let b = Cone::from_rays(1, &[point(&[-1])]);
        assert_eq!(a.intersect(&b), Cone::zero(1));
        assert_eq!(a.conic_sum(&b), Cone::full(1));
        assert_eq!(a.intersect(&a), a);
    }

    #[test]
    fn quadrant_cut_by_diagonal() {
        let q = Cone::from_rays(2, &[point(&[1, 0]), point(&[0, 1])]);
        let h = Cone::halfspace(&point(&[1, -1]));
        assert_eq!(q.intersect(&h), Cone::from_rays(2, &[point(&[1, 0]), point(&[1, 1])]));
    }

    #[test]
    fn generator_sum_gives_quadrant() {
        let a = Cone::from_rays(2, &[point(&[1, 0])]);
        let b = Cone::from_rays(2, &[point(&[0, 1])]);
        let q = Cone::from_inequalities(2, &[point(&[1, 0]), point(&[0, 1])], &[]);
        assert_eq!(a.conic_sum(&b), q);
        assert_eq!(q.conic_sum(&Cone::zero(2)), q);
    }

    #[test]
    fn lower_dimensional_cone() {
        let c = Cone::from_rays(3, &[point(&[1, 0, 0]), point(&[0, 1, 0])]);
        assert_eq!(c.dim(), 2);
        assert_eq!(c.dual().dual(), c);
        assert!(c.contains(&point(&[2, 3, 0])));
        assert!(!c.contains(&point(&[2, 3, 1])));
    }
}

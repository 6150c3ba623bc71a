//! Pointed rational polyhedra in V-representation.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::cone::Cone;
use crate::omega::OmegaOrder;
use crate::rat::{add, dot, neg, scale, sub, Point, Rat};
use crate::GeomError;

/// conv(vertices) + rec; vertices are irredundant and sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polyhedron {
    vertices: Vec<Point>,
    rec: Cone,
}

impl Polyhedron {
    /// conv(points) + cone(rays).  Fails on empty input or a lineality space.
    pub fn new(n: usize, points: &[Point], rays: &[Point]) -> Result<Polyhedron, GeomError> {
        if points.is_empty() {
            return Err(GeomError::Empty);
        }
        if points.iter().chain(rays).any(|p| p.len() != n) {
            return Err(GeomError::DimensionMismatch);
        }
        let lift = |t: Rat, p: &Point| {
            let mut v = Vec::with_capacity(n + 1);
            v.push(t);
            v.extend(p.iter().cloned());
            v
        };
        let mut gens: Vec<Point> = points.iter().map(|p| lift(Rat::one(), p)).collect();
        gens.extend(rays.iter().map(|r| lift(Rat::zero(), r)));
        let hom = Cone::from_rays(n + 1, &gens);
        if !hom.is_pointed() {
            return Err(GeomError::NotPointed);
        }
        let mut vertices = Vec::new();
        let mut rec_rays = Vec::new();
        for g in hom.rays() {
            if g[0].is_positive() {
                let t = g[0].clone();
                vertices.push(g[1..].iter().map(|x| x / &t).collect::<Point>());
            } else {
                rec_rays.push(g[1..].to_vec());
            }
        }
        vertices.sort();
        Ok(Polyhedron { vertices, rec: Cone::from_rays(n, &rec_rays) })
    }

    pub fn point(p: Point) -> Polyhedron {
        let n = p.len();
        Polyhedron { vertices: vec![p], rec: Cone::zero(n) }
    }

    pub fn origin(n: usize) -> Polyhedron {
        Polyhedron::point(vec![Rat::zero(); n])
    }

    pub fn polytope(points: &[Point]) -> Result<Polyhedron, GeomError> {
        let n = points.first().ok_or(GeomError::Empty)?.len();
        Polyhedron::new(n, points, &[])
    }

    /// apex + dual(k), the affine cone written apex ⊙ k⋆.
    pub fn affine_cone(apex: Point, k: &Cone) -> Result<Polyhedron, GeomError> {
        Polyhedron::point(apex).plus_cone(&k.dual())
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].len()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn rec_cone(&self) -> &Cone {
        &self.rec
    }

    pub fn is_polytope(&self) -> bool {
        self.rec.is_zero()
    }

    pub fn is_vertex(&self, v: &[Rat]) -> bool {
        self.vertices.binary_search_by(|u| u.as_slice().cmp(v)).is_ok()
    }

    pub fn plus_cone(&self, c: &Cone) -> Result<Polyhedron, GeomError> {
        let mut rays = self.rec.rays().to_vec();
        rays.extend(c.all_generators());
        Polyhedron::new(self.dim(), &self.vertices, &rays)
    }

    pub fn translate(&self, t: &[Rat]) -> Polyhedron {
        Polyhedron {
            vertices: self.vertices.iter().map(|v| add(v, t)).collect(),
            rec: self.rec.clone(),
        }
    }

    /// k·P for an integer k >= 1; k = 0 gives the origin.
    pub fn dilate(&self, k: usize) -> Polyhedron {
        if k == 0 {
            return Polyhedron::origin(self.dim());
        }
        let s = crate::rat::int(k as i64);
        self.scale_by(&s)
    }

    /// λ·P for rational λ > 0.
    pub fn scale_by(&self, s: &Rat) -> Polyhedron {
        assert!(s.is_positive());
        let mut vertices: Vec<Point> = self.vertices.iter().map(|v| scale(v, s)).collect();
        vertices.sort();
        Polyhedron { vertices, rec: self.rec.clone() }
    }

    pub fn minkowski_sum(&self, other: &Polyhedron) -> Result<Polyhedron, GeomError> {
        if self.dim() != other.dim() {
            return Err(GeomError::DimensionMismatch);
        }
        if other.vertices.len() == 1 && other.rec.is_zero() {
            return Ok(self.translate(&other.vertices[0]));
        }
        if self.vertices.len() == 1 && self.rec.is_zero() {
            return Ok(other.translate(&self.vertices[0]));
        }
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                pts.push(add(a, b));
            }
        }
        pts.sort();
        pts.dedup();
        let mut rays = self.rec.rays().to_vec();
        rays.extend(other.rec.rays().iter().cloned());
        Polyhedron::new(self.dim(), &pts, &rays)
    }

    pub fn convex_hull(&self, other: &Polyhedron) -> Result<Polyhedron, GeomError> {
        if self.dim() != other.dim() {
            return Err(GeomError::DimensionMismatch);
        }
        if self == other {
            return Ok(self.clone());
        }
        let mut pts = self.vertices.clone();
        pts.extend(other.vertices.iter().cloned());
        pts.sort();
        pts.dedup();
        let mut rays = self.rec.rays().to_vec();
        rays.extend(other.rec.rays().iter().cloned());
        Polyhedron::new(self.dim(), &pts, &rays)
    }

    /// Homogenisation cone {(t, x) : t >= 0, x/t ∈ P} closed up.
    pub fn homogenisation(&self) -> Cone {
        let n = self.dim();
        let mut gens: Vec<Point> = Vec::new();
        for v in &self.vertices {
            let mut g = vec![Rat::one()];
            g.extend(v.iter().cloned());
            gens.push(g);
        }
        for r in self.rec.rays() {
            let mut g = vec![Rat::zero()];
            g.extend(r.iter().cloned());
            gens.push(g);
        }
        Cone::from_rays(n + 1, &gens)
    }

    pub fn intersection(&self, other: &Polyhedron) -> Result<Polyhedron, GeomError> {
        let h = self.homogenisation().intersect(&other.homogenisation());
        let n = self.dim();
        let mut pts = Vec::new();
        let mut rays = Vec::new();
        for g in h.rays() {
            if g[0].is_positive() {
                let t = g[0].clone();
                pts.push(g[1..].iter().map(|x| x / &t).collect::<Point>());
            } else {
                rays.push(g[1..].to_vec());
            }
        }
        Polyhedron::new(n, &pts, &rays)
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        let mut p = vec![Rat::one()];
        p.extend(x.iter().cloned());
        self.homogenisation().contains(&p)
    }

    /// N_P(v) = {ℓ : ℓ(v) <= ℓ(u) for all u ∈ P}.
    pub fn inner_normal_cone(&self, v: &[Rat]) -> Result<Cone, GeomError> {
        if !self.is_vertex(v) {
            return Err(GeomError::NotAVertex);
        }
        let mut ineqs: Vec<Point> = self.vertices.iter().filter(|u| u.as_slice() != v).map(|u| sub(u, v)).collect();
        ineqs.extend(self.rec.rays().iter().cloned());
        Ok(Cone::from_inequalities(self.dim(), &ineqs, &[]))
    }

    /// Support of the normal fan: the dual of the recession cone.
    pub fn normal_support(&self) -> Cone {
        self.rec.dual()
    }

    /// Minimum of ℓ over P, `None` if unbounded below.
    pub fn min_value(&self, l: &[Rat]) -> Option<Rat> {
        if !self.rec.nonneg_on(l) {
            return None;
        }
        self.vertices.iter().map(|v| dot(l, v)).min()
    }

    /// Vertices attaining the minimum of ℓ.
    pub fn argmin(&self, l: &[Rat]) -> Option<Vec<Point>> {
        let m = self.min_value(l)?;
        Some(self.vertices.iter().filter(|v| dot(l, v) == m).cloned().collect())
    }

    /// The unique vertex minimal under the lexicographic ω-evaluation.
    pub fn omega_min_vertex(&self, w: &OmegaOrder) -> Result<Point, GeomError> {
        if self.rec.rays().iter().any(|r| !w.is_positive(r)) {
            return Err(GeomError::NotOmegaPositive);
        }
        Ok(self.vertices.iter().min_by(|a, b| w.cmp(a, b)).cloned().unwrap())
    }

    pub fn is_omega_positive(&self, w: &OmegaOrder) -> bool {
        self.rec.rays().iter().all(|r| w.is_positive(r))
    }

    /// Vertex pairs spanning an edge of P.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.dim();
        let cones: Vec<Cone> = self.vertices.iter().map(|v| self.inner_normal_cone(v).unwrap()).collect();
        let mut out = Vec::new();
        for i in 0..cones.len() {
            for j in i + 1..cones.len() {
                if cones[i].intersect(&cones[j]).dim() + 1 == n {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Reflect through the origin.
    pub fn negate(&self) -> Polyhedron {
        let mut vertices: Vec<Point> = self.vertices.iter().map(|v| neg(v)).collect();
        vertices.sort();
        let rays: Vec<Point> = self.rec.rays().iter().map(|r| neg(r)).collect();
        Polyhedron { vertices, rec: Cone::from_rays(self.dim(), &rays) }
    }

    pub fn cmp_vertices(&self, other: &Polyhedron) -> Ordering {
        self.vertices.cmp(&other.vertices)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int, point};

    fn seg(a: i64, b: i64) -> Polyhedron {
        Polyhedron::polytope(&[point(&[a]), point(&[b])]).unwrap()
    }

    #[test]
    fn interval_sums() {
        assert_eq!(seg(0, 1).minkowski_sum(&seg(0, 1)).unwrap(), seg(0, 2));
        assert_eq!(seg(-1, 1).minkowski_sum(&seg(-2, 2)).unwrap(), seg(-3, 3));
        assert_eq!(seg(-1, 1).convex_hull(&seg(-2, 2)).unwrap(), seg(-2, 2));
        let p = Polyhedron::origin(1);
        assert_eq!(p.minkowski_sum(&seg(2, 5)).unwrap(), seg(2, 5));
    }

    #[test]
    fn redundant_points_removed() {
        let sq = Polyhedron::polytope(&[point(&[0, 0]), point(&[1, 0]), point(&[0, 1]), point(&[1, 1]), vec![frac(1, 2), frac(1, 2)]]).unwrap();
        assert_eq!(sq.vertices().len(), 4);
    }

    #[test]
    fn normal_cones_of_interval() {
        let p = seg(-1, 1);
        assert_eq!(p.inner_normal_cone(&point(&[-1])).unwrap(), Cone::from_rays(1, &[point(&[1])]));
        assert_eq!(p.inner_normal_cone(&point(&[1])).unwrap(), Cone::from_rays(1, &[point(&[-1])]));
        assert!(p.inner_normal_cone(&point(&[0])).is_err());
        assert_eq!(Polyhedron::origin(2).inner_normal_cone(&point(&[0, 0])).unwrap(), Cone::full(2));
    }

    #[test]
    fn ray_polyhedron() {
        let p = Polyhedron::new(1, &[point(&[1])], &[point(&[1])]).unwrap();
        assert_eq!(p.normal_support(), Cone::from_rays(1, &[point(&[1])]));
        assert_eq!(p.min_value(&point(&[1])), Some(int(1)));
        assert_eq!(p.min_value(&point(&[-1])), None);
    }

    #[test]
    fn omega_minimum_of_square() {
        let sq = Polyhedron::polytope(&[point(&[0, 0]), point(&[1, 0]), point(&[0, 1]), point(&[1, 1])]).unwrap();
        let w = OmegaOrder::new(point(&[1, 2])).unwrap();
        assert_eq!(sq.omega_min_vertex(&w).unwrap(), point(&[0, 0]));
        assert_eq!(sq.edges().len(), 4);
    }

    #[test]
    fn intersection_of_rays() {
        let a = Polyhedron::new(1, &[point(&[1])], &[point(&[1])]).unwrap();
        let b = Polyhedron::new(1, &[vec![frac(3, 2)]], &[point(&[-1])]).unwrap();
        let c = a.intersection(&b).unwrap();
        assert_eq!(c, Polyhedron::polytope(&[point(&[1]), vec![frac(3, 2)]]).unwrap());
    }

    #[test]
    fn line_rejected() {
        assert!(Polyhedron::new(1, &[point(&[0])], &[point(&[1]), point(&[-1])]).is_err());
    }
}

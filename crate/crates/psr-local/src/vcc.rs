//! Vertex-cone collections: convex hull, Minkowski sum, evaluation and roots.

use psr_geometry::fan::{union_covers, unions_equal};
use psr_geometry::rat::{add, int, scale, sub};
use psr_geometry::{Cone, Point, Polyhedron, Rat};
use psr_poly::PolyPolynomial;

use crate::LocalError;

/// {(v, N(v))}: distinct points with full-dimensional cones such that
/// ℓ(v) <= ℓ(u) for every other point u and every ℓ ∈ N(v).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vcc {
    n: usize,
    pairs: Vec<(Point, Cone)>,
}

impl Vcc {
    pub fn new(n: usize, pairs: Vec<(Point, Cone)>) -> Result<Vcc, LocalError> {
        if pairs.is_empty() {
            return Err(LocalError::NotAVcc("empty".into()));
        }
        let v = Vcc::raw(n, pairs);
        v.check()?;
        Ok(v)
    }

    fn raw(n: usize, mut pairs: Vec<(Point, Cone)>) -> Vcc {
        pairs.sort();
        Vcc { n, pairs }
    }

    fn check(&self) -> Result<(), LocalError> {
        for (k, (v, c)) in self.pairs.iter().enumerate() {
            if v.len() != self.n || c.ambient_dim() != self.n {
                return Err(LocalError::NotAVcc("dimension mismatch".into()));
            }
            if !c.is_full_dim() {
                return Err(LocalError::NotAVcc("cone is not full-dimensional".into()));
            }
            if k > 0 && self.pairs[k - 1].0 == *v {
                return Err(LocalError::NotAVcc("repeated vertex".into()));
            }
            for (u, _) in &self.pairs {
                if u != v && !c.nonneg_on(&sub(u, v)) {
                    return Err(LocalError::NotAVcc("separation inequality fails".into()));
                }
            }
        }
        Ok(())
    }

    /// The vertices of P with their inner normal cones.
    pub fn of_polyhedron(p: &Polyhedron) -> Vcc {
        let pairs = p.vertices().iter().map(|v| (v.clone(), p.inner_normal_cone(v).unwrap())).collect();
        Vcc::raw(p.dim(), pairs)
    }

    /// The associated collection of P restricted to the cone K.
    pub fn of_polyhedron_on(p: &Polyhedron, k: &Cone) -> Vcc {
        Vcc::of_polyhedron(p).restrict(k)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(Point, Cone)] {
        &self.pairs
    }

    pub fn vertices(&self) -> Vec<Point> {
        self.pairs.iter().map(|p| p.0.clone()).collect()
    }

    pub fn has_vertex(&self, v: &[Rat]) -> bool {
        self.pairs.binary_search_by(|p| p.0.as_slice().cmp(v)).is_ok()
    }

    pub fn cone(&self, v: &[Rat]) -> Option<&Cone> {
        self.pairs.iter().find(|p| p.0 == v).map(|p| &p.1)
    }

    /// The cones whose union is the support.
    pub fn support(&self) -> Vec<Cone> {
        self.pairs.iter().map(|p| p.1.clone()).collect()
    }

    pub fn support_equals(&self, other: &Vcc) -> bool {
        unions_equal(&self.support(), &other.support())
    }

    /// Is the support contained in the cone K?
    pub fn support_within(&self, k: &Cone) -> bool {
        self.pairs.iter().all(|(_, c)| k.contains_cone(c))
    }

    /// Does the support cover the cone K?
    pub fn support_covers(&self, k: &Cone) -> bool {
        union_covers(std::slice::from_ref(k), &self.support())
    }

    /// Intersect every cone with K, keeping full-dimensional results.
    pub fn restrict(&self, k: &Cone) -> Vcc {
        let pairs = self
            .pairs
            .iter()
            .map(|(v, c)| (v.clone(), c.intersect(k)))
            .filter(|(_, c)| c.is_full_dim())
            .collect();
        Vcc::raw(self.n, pairs)
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn translate(&self, t: &[Rat]) -> Vcc {
        Vcc::raw(self.n, self.pairs.iter().map(|(v, c)| (add(v, t), c.clone())).collect())
    }

    /// 𝔊^{⊙k} = {(k·v, N(v))} for k >= 1.
    pub fn power(&self, k: usize) -> Vcc {
        assert!(k >= 1);
        let s = int(k as i64);
        Vcc::raw(self.n, self.pairs.iter().map(|(v, c)| (scale(v, &s), c.clone())).collect())
    }

    /// 𝔊1 ⊕ 𝔊2; the supports must coincide.
    pub fn hull(&self, other: &Vcc) -> Result<Vcc, LocalError> {
        if !self.support_equals(other) {
            return Err(LocalError::SupportMismatch);
        }
        Ok(self.hull_unchecked(other))
    }

    pub(crate) fn hull_unchecked(&self, other: &Vcc) -> Vcc {
        let mut out: Vec<(Point, Cone)> = Vec::new();
        for (v, c1) in &self.pairs {
            match other.cone(v) {
                Some(c2) => {
                    let c = c1.intersect(c2);
                    if c.is_full_dim() {
                        out.push((v.clone(), c));
                    }
                }
                None => {
                    if let Some(c) = one_sided(v, c1, other) {
                        out.push((v.clone(), c));
                    }
                }
            }
        }
        for (v, c2) in &other.pairs {
            if !self.has_vertex(v) {
                if let Some(c) = one_sided(v, c2, self) {
                    out.push((v.clone(), c));
                }
            }
        }
        Vcc::raw(self.n, out)
    }

    /// 𝔊1 ⊙ 𝔊2; the supports must meet full-dimensionally.
    pub fn sum(&self, other: &Vcc) -> Result<Vcc, LocalError> {
        let s = self.sum_unchecked(other);
        if s.is_empty() {
            return Err(LocalError::SupportMismatch);
        }
        Ok(s)
    }

    pub(crate) fn sum_unchecked(&self, other: &Vcc) -> Vcc {
        let mut out: Vec<(Point, Cone)> = Vec::new();
        for (v1, c1) in &self.pairs {
            for (v2, c2) in &other.pairs {
                let c = c1.intersect(c2);
                if c.is_full_dim() {
                    out.push((add(v1, v2), c));
                }
            }
        }
        Vcc::raw(self.n, out)
    }

    /// Checks the defining inequalities; used by tests and external callers.
    pub fn is_valid(&self) -> bool {
        !self.pairs.is_empty() && self.check().is_ok()
    }
}

fn one_sided(v: &Point, c: &Cone, other: &Vcc) -> Option<Cone> {
    let cuts: Vec<Point> = other.pairs.iter().map(|(u, _)| sub(u, v)).collect();
    let k = c.cut(&cuts);
    k.is_full_dim().then_some(k)
}

/// φ(𝔓) together with its summands.
///
/// When 0 ∈ Supp(φ) the evaluation runs on Y ⊙ φ, whose summands are those
/// of φ translated by the vertex of 𝔓 owning each cone; `shift` records it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VccEvaluation {
    pub shift: usize,
    pub arg: Vcc,
    pub value: Vcc,
    pub summands: Vec<(usize, Vcc)>,
    /// Per vertex of `value`, exponents of the summands sharing it.
    pub sharing: Vec<(Point, Vec<usize>)>,
}

impl VccEvaluation {
    pub fn is_root(&self) -> bool {
        self.sharing.iter().all(|(_, s)| s.len() >= 2)
    }

    pub fn unshared(&self) -> Vec<Point> {
        self.sharing.iter().filter(|(_, s)| s.len() < 2).map(|(v, _)| self.unshift_point(v, &self.cone_of(v))).collect()
    }

    fn cone_of(&self, v: &[Rat]) -> Cone {
        self.value.cone(v).cloned().unwrap()
    }

    fn unshift_point(&self, w: &[Rat], c: &Cone) -> Point {
        if self.shift == 0 {
            return w.to_vec();
        }
        let p = self
            .arg
            .pairs()
            .iter()
            .find(|(_, k)| k.contains_cone(c))
            .map(|(p, _)| p.clone())
            .expect("every value cone lies in a cone of the argument");
        sub(w, &scale(&p, &int(self.shift as i64)))
    }

    fn unshift(&self, g: &Vcc) -> Vec<(Point, Cone)> {
        let mut out: Vec<(Point, Cone)> = g.pairs().iter().map(|(w, c)| (self.unshift_point(w, c), c.clone())).collect();
        out.sort();
        out
    }

    /// The value with the exponent shift undone.
    pub fn value_pairs(&self) -> Vec<(Point, Cone)> {
        self.unshift(&self.value)
    }

    pub fn summand_pairs(&self) -> Vec<(usize, Vec<(Point, Cone)>)> {
        self.summands.iter().map(|(i, g)| (*i, self.unshift(g))).collect()
    }

    /// Sharing data keyed by unshifted vertices.
    pub fn witness(&self) -> Vec<(Point, Vec<usize>)> {
        let mut w: Vec<(Point, Vec<usize>)> =
            self.sharing.iter().map(|(v, s)| (self.unshift_point(v, &self.cone_of(v)), s.clone())).collect();
        w.sort();
        w
    }
}

pub fn vcc_evaluate(phi: &PolyPolynomial, p: &Vcc) -> Result<VccEvaluation, LocalError> {
    for q in phi.terms().values() {
        if !p.support_within(&q.normal_support()) {
            return Err(LocalError::SupportMismatch);
        }
    }
    let shift = usize::from(phi.coeff(0).is_some());
    let mut summands: Vec<(usize, Vcc)> = Vec::new();
    for (&i, q) in phi.terms() {
        let s = Vcc::of_polyhedron(q).sum_unchecked(&p.power(i + shift));
        summands.push((i, s));
    }
    let mut value = summands[0].1.clone();
    for (_, s) in &summands[1..] {
        value = value.hull_unchecked(s);
    }
    let sharing = value
        .pairs()
        .iter()
        .map(|(w, _)| (w.clone(), summands.iter().filter(|(_, s)| s.has_vertex(w)).map(|(i, _)| *i).collect()))
        .collect();
    Ok(VccEvaluation { shift, arg: p.clone(), value, summands, sharing })
}

pub fn vcc_is_root(phi: &PolyPolynomial, p: &Vcc) -> Result<bool, LocalError> {
    Ok(vcc_evaluate(phi, p)?.is_root())
}

#[cfg(test)]
mod tests {
    use super::*;
    use psr_geometry::rat::point;

    fn up() -> Cone {
        Cone::from_rays(1, &[point(&[1])])
    }

    fn down() -> Cone {
        Cone::from_rays(1, &[point(&[-1])])
    }

    fn pt(a: i64) -> Polyhedron {
        Polyhedron::point(point(&[a]))
    }

    fn quad() -> PolyPolynomial {
        PolyPolynomial::new(1, vec![(0, pt(3)), (1, pt(1)), (2, pt(0))]).unwrap()
    }

    #[test]
    fn validity() {
        assert!(Vcc::new(1, vec![(point(&[0]), up()), (point(&[2]), down())]).is_ok());
        assert!(Vcc::new(1, vec![(point(&[2]), up()), (point(&[0]), down())]).is_err());
        assert!(Vcc::new(1, vec![(point(&[0]), Cone::zero(1))]).is_err());
    }

    #[test]
    fn hull_examples() {
        let g1 = Vcc::new(1, vec![(point(&[0]), up()), (point(&[2]), down())]).unwrap();
        let g2 = Vcc::new(1, vec![(point(&[1]), Cone::full(1))]).unwrap();
        assert_eq!(g1.hull(&g1).unwrap(), g1);
        assert_eq!(g1.hull(&g2).unwrap(), g1);
        let half = Vcc::new(1, vec![(point(&[1]), up())]).unwrap();
        assert_eq!(g1.hull(&half), Err(LocalError::SupportMismatch));
    }

    #[test]
    fn sum_examples() {
        let g = Vcc::new(1, vec![(point(&[0]), up()), (point(&[2]), down())]).unwrap();
        let id = Vcc::new(1, vec![(point(&[0]), Cone::full(1))]).unwrap();
        assert_eq!(g.sum(&id).unwrap(), g);
        let a = Vcc::new(1, vec![(point(&[0]), up())]).unwrap();
        let b = Vcc::new(1, vec![(point(&[5]), up())]).unwrap();
        assert_eq!(a.sum(&b).unwrap(), b);
        let c = Vcc::new(1, vec![(point(&[5]), down())]).unwrap();
        assert_eq!(a.sum(&c), Err(LocalError::SupportMismatch));
    }

    #[test]
    fn evaluate_quadratic() {
        let p = Vcc::new(1, vec![(point(&[1]), up())]).unwrap();
        let e = vcc_evaluate(&quad(), &p).unwrap();
        assert_eq!(e.value_pairs(), vec![(point(&[2]), up())]);
        assert!(e.is_root());
        assert_eq!(e.witness(), vec![(point(&[2]), vec![1, 2])]);
        let q = Vcc::new(1, vec![(point(&[2]), Cone::full(1))]).unwrap();
        let e = vcc_evaluate(&quad(), &q).unwrap();
        assert!(!e.is_root());
        assert!(e.unshared().contains(&point(&[4])));
    }

    #[test]
    fn non_vertex_point_is_not_root() {
        let p = Vcc::new(1, vec![(point(&[7]), Cone::full(1))]).unwrap();
        assert!(!vcc_is_root(&quad(), &p).unwrap());
    }

    #[test]
    fn polyhedral_oracle() {
        let p = Polyhedron::polytope(&[point(&[0, 0]), point(&[2, 0]), point(&[0, 1])]).unwrap();
        let q = Polyhedron::polytope(&[point(&[0, 0]), point(&[1, 1])]).unwrap();
        let gp = Vcc::of_polyhedron(&p);
        let gq = Vcc::of_polyhedron(&q);
        assert_eq!(gp.hull(&gq).unwrap(), Vcc::of_polyhedron(&p.convex_hull(&q).unwrap()));
        assert_eq!(gp.sum(&gq).unwrap(), Vcc::of_polyhedron(&p.minkowski_sum(&q).unwrap()));
    }
}

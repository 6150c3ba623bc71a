//! The coefficient Minkowski sum M, ρ-points, genericity and affine-cone roots.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use psr_geometry::rat::{add, int, scale, sub};
use psr_geometry::{Cone, OmegaOrder, Point, Polyhedron, Rat};

use crate::{PolyError, PolyPolynomial};

/// M = ⊙_i Q_i with the Minkowski decomposition of each vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MSum {
    pub value: Polyhedron,
    pub support: Vec<usize>,
    /// Vertex ν of M ↦ (ν_i) aligned with `support`.
    pub decomposition: BTreeMap<Point, Vec<Point>>,
}

/// Two distinct pairs with equal ρ-points at a vertex of M.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonGeneric {
    pub vertex: Point,
    pub first: (usize, usize),
    pub second: (usize, usize),
    pub rho: Point,
}

/// An unordered support pair i < j.
pub type Pair = (usize, usize);

/// ρ with ν_i + i·ρ = ν_j + j·ρ.
pub fn rho_of(vi: &[Rat], i: usize, vj: &[Rat], j: usize) -> Point {
    let d = int(j as i64 - i as i64);
    scale(&sub(vi, vj), &(int(1) / d))
}

impl MSum {
    pub fn of(phi: &PolyPolynomial) -> Result<MSum, PolyError> {
        let support = phi.support();
        let mut value = Polyhedron::origin(phi.dim());
        for q in phi.terms().values() {
            value = value.minkowski_sum(q)?;
        }
        let mut decomposition = BTreeMap::new();
        for v in value.vertices() {
            let l = value.inner_normal_cone(v)?.interior_point();
            let parts: Vec<Point> = phi
                .terms()
                .values()
                .map(|q| {
                    let a = q.argmin(&l).expect("interior functional of a normal cone of M");
                    debug_assert_eq!(a.len(), 1);
                    a[0].clone()
                })
                .collect();
            decomposition.insert(v.clone(), parts);
        }
        Ok(MSum { value, support, decomposition })
    }

    pub fn vertices(&self) -> &[Point] {
        self.value.vertices()
    }

    pub fn normal_cone(&self, v: &[Rat]) -> Result<Cone, PolyError> {
        Ok(self.value.inner_normal_cone(v)?)
    }

    /// ν_i for the vertex ν.
    pub fn part(&self, v: &[Rat], i: usize) -> Result<&Point, PolyError> {
        let parts = self.decomposition.get(v).ok_or(PolyError::Geom(psr_geometry::GeomError::NotAVertex))?;
        let k = self.support.binary_search(&i).map_err(|_| PolyError::BadIndex)?;
        Ok(&parts[k])
    }

    /// ρ^{(ν)}_{i,j} = −(ν_i − ν_j)/(i − j).
    pub fn rho(&self, v: &[Rat], i: usize, j: usize) -> Result<Point, PolyError> {
        if i == j {
            return Err(PolyError::BadIndex);
        }
        Ok(rho_of(self.part(v, i)?, i, self.part(v, j)?, j))
    }

    /// All ρ-points at ν over unordered pairs i < j of the support.
    pub fn rhos(&self, v: &[Rat]) -> Result<Vec<(Pair, Point)>, PolyError> {
        let mut out = Vec::new();
        for (a, &i) in self.support.iter().enumerate() {
            for &j in &self.support[a + 1..] {
                out.push(((i, j), self.rho(v, i, j)?));
            }
        }
        Ok(out)
    }

    /// First coincidence of ρ-points at ν, if any.
    pub fn non_generic_at(&self, v: &[Rat]) -> Result<Option<NonGeneric>, PolyError> {
        let r = self.rhos(v)?;
        for a in 0..r.len() {
            for b in a + 1..r.len() {
                if r[a].1 == r[b].1 {
                    return Ok(Some(NonGeneric { vertex: v.to_vec(), first: r[a].0, second: r[b].0, rho: r[a].1.clone() }));
                }
            }
        }
        Ok(None)
    }

    pub fn non_generic(&self) -> Result<Option<NonGeneric>, PolyError> {
        for v in self.vertices() {
            if let Some(w) = self.non_generic_at(v)? {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }

    /// The point ν_k + k·ρ.
    pub fn shifted_part(&self, v: &[Rat], k: usize, rho: &[Rat]) -> Result<Point, PolyError> {
        Ok(add(self.part(v, k)?, &scale(rho, &int(k as i64))))
    }
}

pub fn coefficient_msum(phi: &PolyPolynomial) -> Result<MSum, PolyError> {
    MSum::of(phi)
}

pub fn rho(phi: &PolyPolynomial, v: &[Rat], i: usize, j: usize) -> Result<Point, PolyError> {
    MSum::of(phi)?.rho(v, i, j)
}

/// `None` when generic, otherwise the first coincidence found.
pub fn is_generic(phi: &PolyPolynomial) -> Result<Option<NonGeneric>, PolyError> {
    MSum::of(phi)?.non_generic()
}

/// An affine cone root ρ̂ ⊙ K⋆ anchored at the ω-minimal vertex of M.
///
/// ρ̂ is the ω-least ρ-point whose pair is primary at ω; K is the part of
/// N_M(v) on which that pair stays primary.
pub fn affine_cone_root(phi: &PolyPolynomial, w: &OmegaOrder) -> Result<Polyhedron, PolyError> {
    let m = MSum::of(phi)?;
    let v = m.value.omega_min_vertex(w)?;
    let mut best: Option<((usize, usize), Point)> = None;
    for ((i, j), r) in m.rhos(&v)? {
        let base = m.shifted_part(&v, i, &r)?;
        let mut primary = true;
        for &k in &m.support {
            if w.cmp(&base, &m.shifted_part(&v, k, &r)?) == Ordering::Greater {
                primary = false;
                break;
            }
        }
        if primary && best.as_ref().is_none_or(|(_, b)| w.cmp(&r, b) == Ordering::Less) {
            best = Some(((i, j), r));
        }
    }
    let ((i, _), r) = best.expect("the ω-least summand value is attained by two summands");
    let base = m.shifted_part(&v, i, &r)?;
    let mut cuts = Vec::new();
    for &k in &m.support {
        cuts.push(sub(&m.shifted_part(&v, k, &r)?, &base));
    }
    let k = m.normal_cone(&v)?.cut(&cuts);
    debug_assert!(k.is_full_dim());
    Ok(Polyhedron::affine_cone(r, &k)?)
}

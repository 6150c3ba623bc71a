//! Tropicalization φ_ℓ, tropical roots and the same-function test.

use std::collections::BTreeMap;

use psr_geometry::fan::restrict_arrangement;
use psr_geometry::rat::{int, sub};
use psr_geometry::{Cone, Point, Polyhedron, Rat};

use crate::msum::rho_of;
use crate::{PolyError, PolyPolynomial};

/// min_i (m_i + i·y).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropPolynomial {
    pub terms: BTreeMap<usize, Rat>,
}

impl TropPolynomial {
    pub fn new(terms: Vec<(usize, Rat)>) -> Result<Self, PolyError> {
        let mut map: BTreeMap<usize, Rat> = BTreeMap::new();
        for (i, m) in terms {
            let e = map.entry(i).or_insert_with(|| m.clone());
            if m < *e {
                *e = m;
            }
        }
        if map.is_empty() {
            return Err(PolyError::EmptySupport);
        }
        Ok(TropPolynomial { terms: map })
    }

    pub fn eval(&self, y: &Rat) -> Rat {
        self.terms.iter().map(|(&i, m)| m + int(i as i64) * y).min().unwrap()
    }

    /// Exponents of the vertices of the lower convex hull of {(i, m_i)}.
    pub fn lower_hull(&self) -> Vec<usize> {
        lower_hull(&self.terms.iter().map(|(&i, m)| (i, m.clone())).collect::<Vec<_>>())
    }

    /// Breakpoints of y ↦ min_i(m_i + i·y) with their slope changes, ascending.
    pub fn roots(&self) -> Vec<(Rat, usize)> {
        let h = self.lower_hull();
        let mut out: Vec<(Rat, usize)> = h
            .windows(2)
            .map(|w| {
                let (i, j) = (w[0], w[1]);
                ((&self.terms[&i] - &self.terms[&j]) / int((j - i) as i64), j - i)
            })
            .collect();
        out.sort();
        out
    }
}

fn lower_hull(pts: &[(usize, Rat)]) -> Vec<usize> {
    let mut h: Vec<(usize, Rat)> = Vec::new();
    for p in pts {
        while h.len() >= 2 {
            let (a, b) = (&h[h.len() - 2], &h[h.len() - 1]);
            // Drop b unless the turn a → b → p is strictly convex.
            let lhs = (&b.1 - &a.1) * int((p.0 - b.0) as i64);
            let rhs = (&p.1 - &b.1) * int((b.0 - a.0) as i64);
            if lhs >= rhs {
                h.pop();
            } else {
                break;
            }
        }
        h.push(p.clone());
    }
    h.into_iter().map(|x| x.0).collect()
}

/// φ_ℓ with m_i = min ℓ over Q_i.
pub fn tropicalize(phi: &PolyPolynomial, l: &[Rat]) -> Result<TropPolynomial, PolyError> {
    let terms = phi
        .terms()
        .iter()
        .map(|(&i, q)| q.min_value(l).map(|m| (i, m)).ok_or(PolyError::Unbounded))
        .collect::<Result<Vec<_>, _>>()?;
    TropPolynomial::new(terms)
}

pub fn tropical_roots(t: &TropPolynomial) -> Vec<(Rat, usize)> {
    t.roots()
}

fn rec_of_msum(phi: &PolyPolynomial) -> Cone {
    let cones: Vec<Cone> = phi.terms().values().map(|q| q.rec_cone().clone()).collect();
    Cone::sum_all(phi.dim(), &cones)
}

fn normal_hyperplanes(q: &Polyhedron, out: &mut Vec<Point>) -> Result<(), PolyError> {
    for v in q.vertices() {
        let c = q.inner_normal_cone(v)?;
        out.extend(c.facets().iter().cloned());
        out.extend(c.equations().iter().cloned());
    }
    Ok(())
}

/// Unique minimizers (q_i) at an interior functional.
fn minimizers(phi: &PolyPolynomial, l: &[Rat]) -> Vec<(usize, Point)> {
    phi.terms()
        .iter()
        .map(|(&i, q)| {
            let a = q.argmin(l).expect("functional in the common support");
            (i, a[0].clone())
        })
        .collect()
}

fn triple_hyperplanes(mins: &[(usize, Point)], out: &mut Vec<Point>) {
    for a in 0..mins.len() {
        for b in a + 1..mins.len() {
            for c in b + 1..mins.len() {
                let (i, qi) = &mins[a];
                let (j, qj) = &mins[b];
                let (k, qk) = &mins[c];
                out.push(sub(&rho_of(qi, *i, qj, *j), &rho_of(qj, *j, qk, *k)));
            }
        }
    }
}

/// Lower-hull vertices of φ_ℓ as (exponent, minimizing point).
fn hull_signature(phi: &PolyPolynomial, l: &[Rat]) -> Vec<(usize, Point)> {
    let mins = minimizers(phi, l);
    let pts: Vec<(usize, Rat)> = mins.iter().map(|(i, q)| (*i, psr_geometry::rat::dot(l, q))).collect();
    let h = lower_hull(&pts);
    mins.into_iter().filter(|(i, _)| h.contains(i)).collect()
}

/// Do φ1 and φ2 define the same function on ω-positive polyhedra?
///
/// Decided by comparing φ1_ℓ and φ2_ℓ on every open cell of the common
/// refinement of the coefficient normal fans, further cut by the
/// hyperplanes on which three tropical terms align.
pub fn same_function(p1: &PolyPolynomial, p2: &PolyPolynomial) -> Result<bool, PolyError> {
    if p1.dim() != p2.dim() {
        return Err(PolyError::DimensionMismatch);
    }
    let rec = rec_of_msum(p1);
    if rec != rec_of_msum(p2) {
        return Ok(false);
    }
    let support = rec.dual();
    let mut hs = Vec::new();
    for q in p1.terms().values().chain(p2.terms().values()) {
        normal_hyperplanes(q, &mut hs)?;
    }
    let coarse = restrict_arrangement(&support, &hs);
    for cell in &coarse.cells {
        let x = cell.interior_point();
        let mut th = Vec::new();
        triple_hyperplanes(&minimizers(p1, &x), &mut th);
        triple_hyperplanes(&minimizers(p2, &x), &mut th);
        let fine = restrict_arrangement(cell, &th);
        for c in &fine.cells {
            let y = c.interior_point();
            if hull_signature(p1, &y) != hull_signature(p2, &y) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

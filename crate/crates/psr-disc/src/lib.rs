//! Polyhedralised discriminants, degeneracy witnesses and high-multiplicity cone roots.

use std::collections::BTreeMap;

use psr_geometry::measure::{solid_angle_with, SolidAngle, DEFAULT_SAMPLES, DEFAULT_SEED};
use psr_geometry::rat::{add, int, scale, sub};
use psr_geometry::{exec, Exec, GeomError, Point, Polyhedron, Rat};
use psr_poly::{MSum, MultiPolyPolynomial, PolyError, PolyPolynomial, RootReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiscError {
    #[error("no built-in discriminant for support {0:?}")]
    UnknownSupport(Vec<usize>),
    #[error("expected {0} coefficients")]
    BadTuple(usize),
    #[error("coefficients are not a root of the polyhedralised discriminant")]
    NotDiscriminantRoot,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// An X-discriminant over the coefficients (c_i)_{i∈Ξ}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalDiscriminant {
    pub support: Vec<usize>,
    /// Exponent vector aligned with `support` ↦ nonzero coefficient.
    pub monomials: BTreeMap<Vec<usize>, Rat>,
}

impl ClassicalDiscriminant {
    pub fn new(support: Vec<usize>, monomials: Vec<(Vec<usize>, Rat)>) -> Result<Self, DiscError> {
        let h = support.len();
        let mut map = BTreeMap::new();
        for (a, c) in monomials {
            if a.len() != h {
                return Err(DiscError::BadTuple(h));
            }
            *map.entry(a).or_insert_with(|| int(0)) += c;
        }
        map.retain(|_, c| *c != int(0));
        Ok(ClassicalDiscriminant { support, monomials: map })
    }

    /// b² − 4ac, −4c₁³c₃ − 27c₀²c₃², and the general cubic discriminant.
    pub fn builtin(support: &[usize]) -> Option<Self> {
        let m: Vec<(Vec<usize>, i64)> = match support {
            [0, 1, 2] => vec![(vec![0, 2, 0], 1), (vec![1, 0, 1], -4)],
            [0, 1, 3] => vec![(vec![0, 3, 1], -4), (vec![2, 0, 2], -27)],
            [0, 1, 2, 3] => vec![
                (vec![1, 1, 1, 1], 18),
                (vec![1, 0, 3, 0], -4),
                (vec![0, 2, 2, 0], 1),
                (vec![0, 3, 0, 1], -4),
                (vec![2, 0, 0, 2], -27),
            ],
            _ => return None,
        };
        Some(ClassicalDiscriminant::new(support.to_vec(), m.into_iter().map(|(a, c)| (a, int(c))).collect()).unwrap())
    }
}

/// Δ̃_Ξ: every monomial of the X-discriminant with coefficient {0}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyhedralisedDiscriminant {
    pub support: Vec<usize>,
    pub poly: MultiPolyPolynomial,
}

pub fn build_polyhedralised_discriminant(n: usize, d: &ClassicalDiscriminant) -> Result<PolyhedralisedDiscriminant, DiscError> {
    let terms = d.monomials.keys().map(|a| (a.clone(), Polyhedron::origin(n))).collect();
    let poly = MultiPolyPolynomial::polyhedralise(n, d.support.len(), terms)?;
    Ok(PolyhedralisedDiscriminant { support: d.support.clone(), poly })
}

pub fn builtin_polyhedralised_discriminant(n: usize, support: &[usize]) -> Result<PolyhedralisedDiscriminant, DiscError> {
    let d = ClassicalDiscriminant::builtin(support).ok_or_else(|| DiscError::UnknownSupport(support.to_vec()))?;
    build_polyhedralised_discriminant(n, &d)
}

/// Sharing data of Δ̃ at (Q_i)_{i∈Ξ}.
pub fn is_discriminant_root(d: &PolyhedralisedDiscriminant, tuple: &[Polyhedron]) -> Result<RootReport, DiscError> {
    if tuple.len() != d.support.len() {
        return Err(DiscError::BadTuple(d.support.len()));
    }
    Ok(d.poly.root_report(tuple)?)
}

pub fn coefficient_tuple(phi: &PolyPolynomial) -> Vec<Polyhedron> {
    phi.terms().values().cloned().collect()
}

/// An affine cone root ρ ⊙ C⋆ whose anchor is attained by three summands.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeRoot {
    pub vertex: Point,
    pub triple: (usize, usize, usize),
    pub root: Polyhedron,
    pub angle: SolidAngle,
}

impl ConeRoot {
    pub fn anchor(&self) -> &Point {
        &self.root.vertices()[0]
    }
}

/// δ = 1/(C(|Supp φ|, 3)·|V(M)|) and μ(M).
pub fn multiplicity_bound(phi: &PolyPolynomial) -> Result<(f64, SolidAngle), DiscError> {
    multiplicity_bound_with(Exec::default(), phi, DEFAULT_SAMPLES, DEFAULT_SEED)
}

pub fn multiplicity_bound_with(ex: Exec, phi: &PolyPolynomial, samples: usize, seed: u64) -> Result<(f64, SolidAngle), DiscError> {
    let m = MSum::of(phi)?;
    let s = m.support.len() as f64;
    let triples = s * (s - 1.0) * (s - 2.0) / 6.0;
    let delta = 1.0 / (triples * m.vertices().len() as f64);
    Ok((delta, solid_angle_with(ex, &m.value.normal_support(), samples, seed)))
}

pub fn find_high_multiplicity_cone_root(phi: &PolyPolynomial) -> Result<Vec<ConeRoot>, DiscError> {
    let d = builtin_polyhedralised_discriminant(phi.dim(), &phi.support())?;
    find_high_multiplicity_cone_root_with(Exec::default(), phi, &d, DEFAULT_SAMPLES, DEFAULT_SEED)
}

/// For each vertex v of M and triple i₁ < i₂ < i₃ with equal ρ-points,
/// ρ ⊙ C⋆ where C ⊆ N_M(v) is where the triple attains the minimum.
pub fn find_high_multiplicity_cone_root_with(
    ex: Exec,
    phi: &PolyPolynomial,
    d: &PolyhedralisedDiscriminant,
    samples: usize,
    seed: u64,
) -> Result<Vec<ConeRoot>, DiscError> {
    if d.support != phi.support() {
        return Err(DiscError::UnknownSupport(phi.support()));
    }
    if !is_discriminant_root(d, &coefficient_tuple(phi))?.is_root() {
        return Err(DiscError::NotDiscriminantRoot);
    }
    let m = MSum::of(phi)?;
    let sup = m.support.clone();
    let verts = m.vertices().to_vec();
    let per = exec::map(ex, &verts, |v| -> Result<Vec<ConeRoot>, DiscError> {
        let nv = m.normal_cone(v)?;
        let shifted: Vec<Point> = sup.iter().map(|&k| m.part(v, k).unwrap().clone()).collect();
        let mut out = Vec::new();
        for a in 0..sup.len() {
            for b in a + 1..sup.len() {
                let r = m.rho(v, sup[a], sup[b])?;
                for c in b + 1..sup.len() {
                    if m.rho(v, sup[b], sup[c])? != r {
                        continue;
                    }
                    let at = |k: usize| add(&shifted[k], &scale(&r, &int(sup[k] as i64)));
                    let w = at(a);
                    let cuts: Vec<Point> = (0..sup.len()).map(|k| sub(&at(k), &w)).collect();
                    let cone = nv.cut(&cuts);
                    if !cone.is_full_dim() {
                        continue;
                    }
                    let root = Polyhedron::affine_cone(r.clone(), &cone)?;
                    out.push(ConeRoot {
                        vertex: v.clone(),
                        triple: (sup[a], sup[b], sup[c]),
                        root,
                        angle: solid_angle_with(Exec::Sequential, &cone, samples, seed),
                    });
                }
            }
        }
        Ok(out)
    });
    let mut all = Vec::new();
    for p in per {
        all.extend(p?);
    }
    Ok(all)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracyWitness {
    pub root: Polyhedron,
    pub sharing: usize,
    /// The root's normal fan has the support of M's.
    pub full_support: bool,
}

/// A root of Q ⊙ ⊙_i (Y ⊕ P_i) with sharing at least 3, preferring full support.
pub fn degeneracy_witness(q: &Polyhedron, factors: &[Polyhedron]) -> Result<Option<DegeneracyWitness>, DiscError> {
    let phi = PolyPolynomial::product_expand(q, factors)?;
    let m = MSum::of(&phi)?;
    let mut candidates: Vec<Polyhedron> = match find_high_multiplicity_cone_root(&phi) {
        Ok(rs) => rs.into_iter().map(|r| r.root).collect(),
        Err(DiscError::NotDiscriminantRoot) | Err(DiscError::UnknownSupport(_)) => Vec::new(),
        Err(e) => return Err(e),
    };
    candidates.extend(factors.iter().cloned());
    let mut weak = None;
    for c in candidates {
        let s = phi.root_report(&c)?.min_sharing();
        if s < 3 {
            continue;
        }
        let full = c.normal_support() == m.value.normal_support();
        let w = DegeneracyWitness { root: c, sharing: s, full_support: full };
        if full {
            return Ok(Some(w));
        }
        weak.get_or_insert(w);
    }
    Ok(weak)
}

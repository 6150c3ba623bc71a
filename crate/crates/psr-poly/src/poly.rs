//! Univariate and multivariate polyhedral polynomials, evaluation and roots.

use std::collections::BTreeMap;

use psr_geometry::{Point, Polyhedron};

use crate::PolyError;

/// ⊕_i Q_i ⊙ Y^{⊙i} with a nonempty support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyPolynomial {
    n: usize,
    terms: BTreeMap<usize, Polyhedron>,
}

/// ⊕_α Q_α ⊙ Y₁^{⊙α₁} ⊙ … ⊙ Y_h^{⊙α_h}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPolyPolynomial {
    n: usize,
    h: usize,
    terms: BTreeMap<Vec<usize>, Polyhedron>,
}

/// An evaluation together with the sharing data of its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootReport {
    pub value: Polyhedron,
    /// Exponent vector of each summand.
    pub labels: Vec<Vec<usize>>,
    pub summands: Vec<Polyhedron>,
    /// For every vertex of `value`, the summands having it as a vertex.
    pub sharing: Vec<(Point, Vec<usize>)>,
}

impl RootReport {
    fn build(n: usize, labelled: Vec<(Vec<usize>, Polyhedron)>) -> Result<RootReport, PolyError> {
        let mut pts: Vec<Point> = Vec::new();
        let mut rays: Vec<Point> = Vec::new();
        for (_, s) in &labelled {
            pts.extend(s.vertices().iter().cloned());
            rays.extend(s.rec_cone().rays().iter().cloned());
        }
        pts.sort();
        pts.dedup();
        let value = Polyhedron::new(n, &pts, &rays)?;
        let (labels, summands): (Vec<_>, Vec<_>) = labelled.into_iter().unzip();
        let sharing = value
            .vertices()
            .iter()
            .map(|v| {
                let who: Vec<usize> = (0..summands.len()).filter(|&k| summands[k].is_vertex(v)).collect();
                (v.clone(), who)
            })
            .collect();
        Ok(RootReport { value, labels, summands, sharing })
    }

    pub fn is_root(&self) -> bool {
        self.sharing.iter().all(|(_, s)| s.len() >= 2)
    }

    /// Vertices of the value owned by fewer than two summands.
    pub fn unshared(&self) -> Vec<Point> {
        self.sharing.iter().filter(|(_, s)| s.len() < 2).map(|(v, _)| v.clone()).collect()
    }

    /// Least number of summands sharing a vertex of the value.
    pub fn min_sharing(&self) -> usize {
        self.sharing.iter().map(|(_, s)| s.len()).min().unwrap_or(0)
    }

    /// Sharing sets expressed through summand exponent vectors.
    pub fn witness(&self) -> Vec<(Point, Vec<Vec<usize>>)> {
        self.sharing
            .iter()
            .map(|(v, s)| (v.clone(), s.iter().map(|&k| self.labels[k].clone()).collect()))
            .collect()
    }
}

fn merge<K: Ord>(n: usize, terms: Vec<(K, Polyhedron)>) -> Result<BTreeMap<K, Polyhedron>, PolyError> {
    let mut map: BTreeMap<K, Polyhedron> = BTreeMap::new();
    for (k, q) in terms {
        if q.dim() != n {
            return Err(PolyError::DimensionMismatch);
        }
        let q = match map.remove(&k) {
            Some(old) => old.convex_hull(&q)?,
            None => q,
        };
        map.insert(k, q);
    }
    if map.is_empty() {
        return Err(PolyError::EmptySupport);
    }
    Ok(map)
}

impl PolyPolynomial {
    /// Terms with equal exponents are merged with ⊕.
    pub fn new(n: usize, terms: Vec<(usize, Polyhedron)>) -> Result<Self, PolyError> {
        Ok(PolyPolynomial { n, terms: merge(n, terms)? })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<usize, Polyhedron> {
        &self.terms
    }

    pub fn support(&self) -> Vec<usize> {
        self.terms.keys().copied().collect()
    }

    pub fn degree(&self) -> usize {
        *self.terms.keys().next_back().unwrap()
    }

    pub fn coeff(&self, i: usize) -> Option<&Polyhedron> {
        self.terms.get(&i)
    }

    /// Multiply by Y^{⊙s}.
    pub fn shifted(&self, s: usize) -> Self {
        PolyPolynomial { n: self.n, terms: self.terms.iter().map(|(i, q)| (i + s, q.clone())).collect() }
    }

    pub fn to_multi(&self) -> MultiPolyPolynomial {
        MultiPolyPolynomial {
            n: self.n,
            h: 1,
            terms: self.terms.iter().map(|(i, q)| (vec![*i], q.clone())).collect(),
        }
    }

    /// Each summand Q_i ⊙ P^{⊙i}.
    pub fn summands(&self, p: &Polyhedron) -> Result<Vec<(usize, Polyhedron)>, PolyError> {
        if p.dim() != self.n {
            return Err(PolyError::DimensionMismatch);
        }
        self.terms
            .iter()
            .map(|(&i, q)| Ok((i, q.minkowski_sum(&p.dilate(i))?)))
            .collect()
    }

    pub fn evaluate(&self, p: &Polyhedron) -> Result<(Polyhedron, Vec<(usize, Polyhedron)>), PolyError> {
        let r = self.root_report(p)?;
        let parts = r.labels.iter().map(|l| l[0]).zip(r.summands).collect();
        Ok((r.value, parts))
    }

    pub fn root_report(&self, p: &Polyhedron) -> Result<RootReport, PolyError> {
        let s = self.summands(p)?;
        RootReport::build(self.n, s.into_iter().map(|(i, q)| (vec![i], q)).collect())
    }

    pub fn is_root(&self, p: &Polyhedron) -> Result<bool, PolyError> {
        Ok(self.root_report(p)?.is_root())
    }

    /// Least number of summands sharing a vertex of φ(P).
    pub fn sharing_count(&self, p: &Polyhedron) -> Result<usize, PolyError> {
        let r = self.root_report(p)?;
        if !r.is_root() {
            return Err(PolyError::NotARoot);
        }
        Ok(r.min_sharing())
    }

    /// Expansion of Q ⊙ ⊙_i (Y ⊕ P_i).
    pub fn product_expand(q: &Polyhedron, factors: &[Polyhedron]) -> Result<Self, PolyError> {
        let n = q.dim();
        let mut c: BTreeMap<usize, Polyhedron> = BTreeMap::new();
        c.insert(0, q.clone());
        for f in factors {
            if f.dim() != n {
                return Err(PolyError::DimensionMismatch);
            }
            let mut next: Vec<(usize, Polyhedron)> = Vec::new();
            for (&k, ck) in &c {
                next.push((k + 1, ck.clone()));
                next.push((k, ck.minkowski_sum(f)?));
            }
            c = merge(n, next)?;
        }
        Ok(PolyPolynomial { n, terms: c })
    }
}

impl MultiPolyPolynomial {
    pub fn new(n: usize, h: usize, terms: Vec<(Vec<usize>, Polyhedron)>) -> Result<Self, PolyError> {
        if terms.iter().any(|(a, _)| a.len() != h) {
            return Err(PolyError::Arity);
        }
        Ok(MultiPolyPolynomial { n, h, terms: merge(n, terms)? })
    }

    /// The polynomial with the given coefficient polyhedra.
    pub fn polyhedralise(n: usize, h: usize, coeffs: Vec<(Vec<usize>, Polyhedron)>) -> Result<Self, PolyError> {
        Self::new(n, h, coeffs)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.h
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, Polyhedron> {
        &self.terms
    }

    pub fn summands(&self, args: &[Polyhedron]) -> Result<Vec<(Vec<usize>, Polyhedron)>, PolyError> {
        if args.len() != self.h {
            return Err(PolyError::Arity);
        }
        if args.iter().any(|a| a.dim() != self.n) {
            return Err(PolyError::DimensionMismatch);
        }
        self.terms
            .iter()
            .map(|(alpha, q)| {
                let mut s = q.clone();
                for (a, p) in alpha.iter().zip(args) {
                    if *a > 0 {
                        s = s.minkowski_sum(&p.dilate(*a))?;
                    }
                }
                Ok((alpha.clone(), s))
            })
            .collect()
    }

    pub fn evaluate(&self, args: &[Polyhedron]) -> Result<Polyhedron, PolyError> {
        Ok(self.root_report(args)?.value)
    }

    pub fn root_report(&self, args: &[Polyhedron]) -> Result<RootReport, PolyError> {
        RootReport::build(self.n, self.summands(args)?)
    }

    pub fn is_root(&self, args: &[Polyhedron]) -> Result<bool, PolyError> {
        Ok(self.root_report(args)?.is_root())
    }
}

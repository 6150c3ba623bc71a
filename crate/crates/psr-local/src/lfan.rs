//! The labelled fan F_v and local compatible systems.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use psr_geometry::fan::{adjacency, dedup_hyperplanes, restrict_arrangement_with, union_is_convex};
use psr_geometry::rat::{is_zero, primitive_line, sub};
use psr_geometry::{exec, Cone, Exec, Point, Rat};
use psr_poly::{MSum, NonGeneric, PolyPolynomial};

use crate::{Caps, LocalError};

/// An unordered pair i < j of exponents.
pub use psr_poly::msum::Pair;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledCell {
    pub cone: Cone,
    pub primary: Vec<Pair>,
    /// ((i,j),(ĩ,j̃)) with μ(ρ_{i,j}) <= μ(ρ_{ĩ,j̃}) on the cell.
    pub secondary: Vec<(Pair, Pair)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledFan {
    pub vertex: Point,
    pub normal: Cone,
    pub support: Vec<usize>,
    /// ν_k aligned with `support`.
    pub parts: Vec<Point>,
    pub rhos: Vec<(Pair, Point)>,
    /// Non-degenerate hyperplanes, one normal per hyperplane.
    pub hyperplanes: Vec<Point>,
    pub cells: Vec<LabelledCell>,
    /// Cell pairs sharing a facet, with the facet's hyperplane.
    pub adjacency: Vec<(usize, usize, Point)>,
    pub non_generic: Option<NonGeneric>,
}

fn shifted(part: &[Rat], k: usize, rho: &[Rat]) -> Point {
    part.iter().zip(rho).map(|(a, b)| a + Rat::from_integer((k as i64).into()) * b).collect()
}

impl LabelledFan {
    pub fn rho(&self, p: Pair) -> &Point {
        &self.rhos.iter().find(|(q, _)| *q == p).expect("pair of the support").1
    }

    /// The pair whose ρ-point is γ (unique when generic).
    pub fn pair_of(&self, gamma: &[Rat]) -> Option<Pair> {
        self.rhos.iter().find(|(_, r)| r.as_slice() == gamma).map(|(p, _)| *p)
    }

    /// μ(ν_k + k·ρ) − μ(ν_i + i·ρ) as functionals, for every k.
    pub fn primary_normals(&self, p: Pair) -> Vec<Point> {
        let r = self.rho(p);
        let i = self.support.binary_search(&p.0).unwrap();
        let base = shifted(&self.parts[i], p.0, r);
        self.support
            .iter()
            .zip(&self.parts)
            .map(|(&k, part)| sub(&shifted(part, k, r), &base))
            .collect()
    }

    pub fn is_primary(&self, cell: usize, p: Pair) -> bool {
        self.cells[cell].primary.contains(&p)
    }

    pub fn is_secondary(&self, cell: usize, a: Pair, b: Pair) -> bool {
        a == b || self.cells[cell].secondary.contains(&(a, b))
    }

    pub fn cones(&self) -> Vec<Cone> {
        self.cells.iter().map(|c| c.cone.clone()).collect()
    }

    pub fn neighbors(&self, cell: usize) -> Vec<(usize, Point)> {
        self.adjacency
            .iter()
            .filter_map(|(a, b, h)| {
                if *a == cell {
                    Some((*b, h.clone()))
                } else if *b == cell {
                    Some((*a, h.clone()))
                } else {
                    None
                }
            })
            .collect()
    }

    /// Facet hyperplanes of a cell that no other cell shares.
    pub fn boundary_facets(&self, cell: usize) -> Vec<Point> {
        let shared: Vec<Point> = self.neighbors(cell).into_iter().map(|(_, h)| primitive_line(&h)).collect();
        self.cells[cell]
            .cone
            .facets()
            .iter()
            .map(|f| primitive_line(f))
            .filter(|f| !shared.contains(f))
            .collect()
    }
}

pub fn build_local_fan(phi: &PolyPolynomial, v: &[Rat]) -> Result<LabelledFan, LocalError> {
    build_local_fan_with(Exec::default(), &MSum::of(phi)?, v)
}

pub fn build_local_fan_with(ex: Exec, m: &MSum, v: &[Rat]) -> Result<LabelledFan, LocalError> {
    let normal = m.normal_cone(v)?;
    let support = m.support.clone();
    let parts: Vec<Point> = support.iter().map(|&k| m.part(v, k).cloned()).collect::<Result<_, _>>()?;
    let rhos = m.rhos(v)?;
    let mut fan = LabelledFan {
        vertex: v.to_vec(),
        normal: normal.clone(),
        support,
        parts,
        rhos,
        hyperplanes: Vec::new(),
        cells: Vec::new(),
        adjacency: Vec::new(),
        non_generic: m.non_generic_at(v)?,
    };
    let mut hs: Vec<Point> = Vec::new();
    for (p, _) in &fan.rhos {
        hs.extend(fan.primary_normals(*p));
    }
    for a in 0..fan.rhos.len() {
        for b in a + 1..fan.rhos.len() {
            hs.push(sub(&fan.rhos[a].1, &fan.rhos[b].1));
        }
    }
    hs.retain(|h| !is_zero(h));
    fan.hyperplanes = dedup_hyperplanes(&hs);
    let cones = restrict_arrangement_with(ex, &normal, &fan.hyperplanes).cells;
    let labels = exec::map(ex, &cones, |c| label_cell(&fan, c));
    fan.cells = cones.into_iter().zip(labels).map(|(cone, (primary, secondary))| LabelledCell { cone, primary, secondary }).collect();
    fan.adjacency = adjacency(&fan.cones());
    Ok(fan)
}

fn label_cell(fan: &LabelledFan, c: &Cone) -> (Vec<Pair>, Vec<(Pair, Pair)>) {
    let primary = fan
        .rhos
        .iter()
        .map(|(p, _)| *p)
        .filter(|&p| fan.primary_normals(p).iter().all(|d| c.nonneg_on(d)))
        .collect();
    let mut secondary = Vec::new();
    for (a, ra) in &fan.rhos {
        for (b, rb) in &fan.rhos {
            if a != b && c.nonneg_on(&sub(rb, ra)) {
                secondary.push((*a, *b));
            }
        }
    }
    (primary, secondary)
}

/// (𝒞, ℐ): cells of F_v with one pair each, sorted by cell index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lcs {
    pub cells: Vec<usize>,
    pub pairs: Vec<Pair>,
}

impl Lcs {
    pub fn new(entries: Vec<(usize, Pair)>) -> Lcs {
        let mut e = entries;
        e.sort();
        let (cells, pairs) = e.into_iter().map(|(c, (i, j))| (c, (i.min(j), i.max(j)))).unzip();
        Lcs { cells, pairs }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, Pair)> + '_ {
        self.cells.iter().copied().zip(self.pairs.iter().copied())
    }

    /// Cells grouped by their ρ-point γ.
    pub fn by_gamma(&self, fan: &LabelledFan) -> BTreeMap<Point, Vec<usize>> {
        let mut m: BTreeMap<Point, Vec<usize>> = BTreeMap::new();
        for (c, p) in self.entries() {
            m.entry(fan.rho(p).clone()).or_default().push(c);
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LcsViolation {
    Malformed(String),
    /// Condition 1: the cells sharing γ do not form a convex cone.
    Convexity { gamma: Point },
    /// Condition 2.
    Primary { cell: usize },
    /// Condition 3: (pair of `cell`, pair of `other`) is not secondary on `cell`.
    Secondary { cell: usize, other: usize },
    /// Condition 4: `neighbor` across a facet of `cell` violates the facet rule.
    Facet { cell: usize, neighbor: usize },
}

impl LcsViolation {
    pub fn condition(&self) -> u8 {
        match self {
            LcsViolation::Malformed(_) => 0,
            LcsViolation::Convexity { .. } => 1,
            LcsViolation::Primary { .. } => 2,
            LcsViolation::Secondary { .. } => 3,
            LcsViolation::Facet { .. } => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcsCheck {
    pub violation: Option<LcsViolation>,
    /// Facets of chosen cells on the boundary of N_M(v); exempt from condition 4.
    pub boundary_facets: Vec<(usize, Point)>,
}

impl LcsCheck {
    pub fn ok(&self) -> bool {
        self.violation.is_none()
    }
}

pub fn validate_lcs(fan: &LabelledFan, lcs: &Lcs) -> LcsCheck {
    let boundary_facets = lcs
        .cells
        .iter()
        .filter(|&&c| c < fan.cells.len())
        .flat_map(|&c| fan.boundary_facets(c).into_iter().map(move |f| (c, f)))
        .collect();
    LcsCheck { violation: find_violation(fan, lcs), boundary_facets }
}

fn find_violation(fan: &LabelledFan, lcs: &Lcs) -> Option<LcsViolation> {
    if lcs.cells.is_empty() || lcs.cells.len() != lcs.pairs.len() {
        return Some(LcsViolation::Malformed("cells and pairs must be nonempty and aligned".into()));
    }
    if lcs.cells.windows(2).any(|w| w[0] >= w[1]) || *lcs.cells.last().unwrap() >= fan.cells.len() {
        return Some(LcsViolation::Malformed("cells must be distinct indices of the fan".into()));
    }
    if lcs.pairs.iter().any(|&(i, j)| i >= j || fan.support.binary_search(&i).is_err() || fan.support.binary_search(&j).is_err()) {
        return Some(LcsViolation::Malformed("pairs must be distinct exponents of the support".into()));
    }
    for (c, p) in lcs.entries() {
        if !fan.is_primary(c, p) {
            return Some(LcsViolation::Primary { cell: c });
        }
    }
    if let Some(v) = secondary_violation(fan, lcs) {
        return Some(v);
    }
    for (gamma, cells) in lcs.by_gamma(fan) {
        let cones: Vec<Cone> = cells.iter().map(|&c| fan.cells[c].cone.clone()).collect();
        if !union_is_convex(&cones) {
            return Some(LcsViolation::Convexity { gamma });
        }
    }
    facet_violation(fan, lcs)
}

fn secondary_violation(fan: &LabelledFan, lcs: &Lcs) -> Option<LcsViolation> {
    for (a, pa) in lcs.entries() {
        for (b, pb) in lcs.entries() {
            if a != b && !fan.is_secondary(a, pa, pb) {
                return Some(LcsViolation::Secondary { cell: a, other: b });
            }
        }
    }
    None
}

fn facet_violation(fan: &LabelledFan, lcs: &Lcs) -> Option<LcsViolation> {
    for (l, pl) in lcs.entries() {
        for (c, _) in fan.neighbors(l) {
            if lcs.cells.binary_search(&c).is_ok() {
                continue;
            }
            let escapes = !fan.is_primary(c, pl) || lcs.pairs.iter().any(|&pb| !fan.is_secondary(c, pl, pb));
            if !escapes {
                return Some(LcsViolation::Facet { cell: l, neighbor: c });
            }
        }
    }
    None
}

pub fn enumerate_lcs(fan: &LabelledFan) -> Result<Vec<Lcs>, LocalError> {
    enumerate_lcs_with(Exec::default(), fan, Caps::default())
}

type Partial = (usize, Vec<(usize, Pair)>);

/// Every local compatible system of F_v, canonically sorted.
pub fn enumerate_lcs_with(ex: Exec, fan: &LabelledFan, caps: Caps) -> Result<Vec<Lcs>, LocalError> {
    if let Some(w) = &fan.non_generic {
        return Err(LocalError::NonGeneric(w.clone()));
    }
    let m = fan.cells.len();
    if m > caps.cells {
        return Err(LocalError::SizeLimit(m, caps.cells));
    }
    let leaves = AtomicUsize::new(0);
    let mut frontier: Vec<Partial> = vec![(0, Vec::new())];
    let split = m.min(4);
    for _ in 0..split {
        frontier = frontier.iter().flat_map(|(c, chosen)| children(fan, *c, chosen)).collect();
    }
    let found = exec::map(ex, &frontier, |(c, chosen)| {
        let mut out = Vec::new();
        let mut stack: Vec<Partial> = vec![(*c, chosen.clone())];
        while let Some((c, chosen)) = stack.pop() {
            if c == m {
                if chosen.is_empty() {
                    continue;
                }
                if leaves.fetch_add(1, Ordering::Relaxed) >= caps.candidates {
                    return Err(LocalError::SizeLimit(caps.candidates + 1, caps.candidates));
                }
                let lcs = Lcs::new(chosen);
                if find_violation(fan, &lcs).is_none() {
                    out.push(lcs);
                }
                continue;
            }
            stack.extend(children(fan, c, &chosen));
        }
        Ok(out)
    });
    let mut all = Vec::new();
    for f in found {
        all.extend(f?);
    }
    all.sort();
    all.dedup();
    Ok(all)
}

/// Branches at cell c: skip it, or take any compatible primary pair.
fn children(fan: &LabelledFan, c: usize, chosen: &[(usize, Pair)]) -> Vec<Partial> {
    if c == fan.cells.len() {
        return vec![(c, chosen.to_vec())];
    }
    let mut out = vec![(c + 1, chosen.to_vec())];
    for &p in &fan.cells[c].primary {
        let ok = chosen.iter().all(|&(d, q)| fan.is_secondary(c, p, q) && fan.is_secondary(d, q, p));
        if ok {
            let mut next = chosen.to_vec();
            next.push((c, p));
            out.push((c + 1, next));
        }
    }
    out
}

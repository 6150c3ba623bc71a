//! From local compatible systems to VCC and polyhedral local solutions.

use std::collections::BTreeSet;

use psr_geometry::fan::{maximal_convex_subfamilies_with, union_is_convex, unions_equal};
use psr_geometry::rat::sub;
use psr_geometry::{exec, Cone, Exec, Point, Polyhedron, Rat};
use psr_poly::{MSum, PolyPolynomial};

use crate::lfan::{build_local_fan_with, enumerate_lcs_with, LabelledFan, Lcs};
use crate::vcc::{vcc_evaluate, Vcc};
use crate::{Caps, LocalError};

/// {(γ, C_γ)} with C_γ the union of the cells labelled by γ.
pub fn lcs_to_vcc(fan: &LabelledFan, lcs: &Lcs) -> Result<Vcc, LocalError> {
    let n = fan.normal.ambient_dim();
    let pairs = lcs
        .by_gamma(fan)
        .into_iter()
        .map(|(g, cells)| {
            let cones: Vec<Cone> = cells.iter().map(|&c| fan.cells[c].cone.clone()).collect();
            (g, Cone::sum_all(n, &cones))
        })
        .collect();
    Vcc::new(n, pairs)
}

/// Reads off (𝒞, ℐ) from a VCC whose cones are unions of F_v cells.
pub fn vcc_to_lcs(fan: &LabelledFan, g: &Vcc) -> Result<Lcs, LocalError> {
    let mut entries = Vec::new();
    for (gamma, cone) in g.pairs() {
        let mut mine = Vec::new();
        for (c, cell) in fan.cells.iter().enumerate() {
            if cone.contains_cone(&cell.cone) {
                mine.push(c);
            } else if cone.intersect(&cell.cone).is_full_dim() {
                return Err(LocalError::NotCellular);
            }
        }
        let pair = fan.pair_of(gamma).ok_or(LocalError::NotCellular)?;
        let cones: Vec<Cone> = mine.iter().map(|&c| fan.cells[c].cone.clone()).collect();
        if !unions_equal(&cones, std::slice::from_ref(cone)) {
            return Err(LocalError::NotCellular);
        }
        entries.extend(mine.into_iter().map(|c| (c, pair)));
    }
    Ok(Lcs::new(entries))
}

/// Com(𝔅0): each C_γ replaced by the sum of the F_v cells it meets.
pub fn completion(phi: &PolyPolynomial, fan: &LabelledFan, b0: &Vcc) -> Result<Vcc, LocalError> {
    if !b0.support_within(&fan.normal) {
        return Err(LocalError::NotLocal);
    }
    if !vcc_evaluate(phi, b0)?.is_root() {
        return Err(LocalError::NotARoot);
    }
    let n = fan.normal.ambient_dim();
    let pairs = b0
        .pairs()
        .iter()
        .map(|(g, cone)| {
            let cells: Vec<Cone> = fan
                .cells
                .iter()
                .filter(|c| c.cone.intersect(cone).is_full_dim())
                .map(|c| c.cone.clone())
                .collect();
            (g.clone(), Cone::sum_all(n, &cells))
        })
        .collect();
    Vcc::new(n, pairs)
}

pub fn minimalize(phi: &PolyPolynomial, fan: &LabelledFan, b0: &Vcc) -> Result<Vcc, LocalError> {
    minimalize_with(Exec::default(), phi, fan, b0, Caps::default())
}

/// An MW-minimal solution with the vertex set of 𝔅0: the completion
/// enlarged by the largest admissible set of further F_v cells.
pub fn minimalize_with(ex: Exec, phi: &PolyPolynomial, fan: &LabelledFan, b0: &Vcc, caps: Caps) -> Result<Vcc, LocalError> {
    let comp = completion(phi, fan, b0)?;
    let n = fan.normal.ambient_dim();
    let gammas: Vec<Point> = comp.vertices();
    let mut owner: Vec<Option<usize>> = vec![None; fan.cells.len()];
    for (k, (_, cone)) in comp.pairs().iter().enumerate() {
        for (c, cell) in fan.cells.iter().enumerate() {
            if cone.contains_cone(&cell.cone) {
                owner[c] = Some(k);
            }
        }
    }
    let free: Vec<usize> = (0..fan.cells.len()).filter(|&c| owner[c].is_none()).collect();
    let options: Vec<Vec<usize>> = free
        .iter()
        .map(|&c| {
            (0..gammas.len())
                .filter(|&k| admissible(fan, c, &gammas, k))
                .collect()
        })
        .collect();
    let mut total: usize = 1;
    for o in &options {
        total = total.saturating_mul(o.len() + 1);
    }
    if total > caps.candidates {
        return Err(LocalError::SizeLimit(total, caps.candidates));
    }
    let mut combos: Vec<Vec<Option<usize>>> = vec![Vec::new()];
    for o in &options {
        let mut next = Vec::with_capacity(combos.len() * (o.len() + 1));
        for c in &combos {
            let mut a = c.clone();
            a.push(None);
            next.push(a);
            for &k in o {
                let mut a = c.clone();
                a.push(Some(k));
                next.push(a);
            }
        }
        combos = next;
    }
    let results = exec::map(ex, &combos, |choice| {
        let mut own = owner.clone();
        for (&c, k) in free.iter().zip(choice) {
            own[c] = *k;
        }
        let mut pairs = Vec::with_capacity(gammas.len());
        for (k, g) in gammas.iter().enumerate() {
            let cells: Vec<Cone> = (0..own.len()).filter(|&c| own[c] == Some(k)).map(|c| fan.cells[c].cone.clone()).collect();
            if !union_is_convex(&cells) {
                return None;
            }
            pairs.push((g.clone(), Cone::sum_all(n, &cells)));
        }
        let cand = Vcc::new(n, pairs).ok()?;
        let root = vcc_evaluate(phi, &cand).ok()?.is_root();
        root.then(|| (own.iter().filter(|o| o.is_some()).count(), cand))
    });
    let best = results
        .into_iter()
        .flatten()
        .fold(None::<(usize, Vcc)>, |acc, (size, cand)| match acc {
            Some((s, _)) if s >= size => acc,
            _ => Some((size, cand)),
        });
    Ok(best.map(|b| b.1).unwrap_or(comp))
}

/// Can the free cell c join the cone of γ_k?
fn admissible(fan: &LabelledFan, c: usize, gammas: &[Point], k: usize) -> bool {
    let Some(p) = fan.pair_of(&gammas[k]) else {
        return false;
    };
    fan.is_primary(c, p)
        && gammas
            .iter()
            .enumerate()
            .all(|(u, g)| u == k || fan.cells[c].cone.nonneg_on(&sub(g, &gammas[k])))
}

/// conv{γ : C_γ meets L} + L⋆ for L the union of the chosen cells.
pub fn associated_polyhedron(fan: &LabelledFan, lcs: &Lcs, subset: &[usize]) -> Result<Polyhedron, LocalError> {
    let n = fan.normal.ambient_dim();
    let cones: Vec<Cone> = subset.iter().map(|&k| fan.cells[lcs.cells[k]].cone.clone()).collect();
    let l = Cone::sum_all(n, &cones);
    let pts: Vec<Point> = subset.iter().map(|&k| fan.rho(lcs.pairs[k]).clone()).collect::<BTreeSet<_>>().into_iter().collect();
    Ok(Polyhedron::new(n, &pts, &l.dual().all_generators())?)
}

pub fn enumerate_mw_minimal_local_solutions(phi: &PolyPolynomial, v: &[Rat]) -> Result<Vec<Polyhedron>, LocalError> {
    enumerate_mw_minimal_local_solutions_with(Exec::default(), phi, v, Caps::default())
}

pub fn enumerate_mw_minimal_local_solutions_with(ex: Exec, phi: &PolyPolynomial, v: &[Rat], caps: Caps) -> Result<Vec<Polyhedron>, LocalError> {
    let m = MSum::of(phi)?;
    let fan = build_local_fan_with(ex, &m, v)?;
    let systems = enumerate_lcs_with(ex, &fan, caps)?;
    let per = exec::map(ex, &systems, |lcs| -> Result<Vec<Polyhedron>, LocalError> {
        let cones: Vec<Cone> = lcs.cells.iter().map(|&c| fan.cells[c].cone.clone()).collect();
        let fams = maximal_convex_subfamilies_with(Exec::Sequential, &cones, caps.cells)?;
        fams.iter().map(|f| associated_polyhedron(&fan, lcs, f)).collect()
    });
    let mut out = BTreeSet::new();
    for p in per {
        out.extend(p?);
    }
    Ok(out.into_iter().collect())
}

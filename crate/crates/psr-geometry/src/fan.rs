//! Fans, restricted central arrangements and convexity of cone unions.

use std::collections::BTreeSet;

use crate::cone::Cone;
use crate::exec::{self, Exec};
use crate::polyhedron::Polyhedron;
use crate::rat::{is_zero, neg, primitive_line, Point};
use crate::GeomError;

pub const DEFAULT_CELL_CAP: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    pub support: Cone,
    pub cells: Vec<Cone>,
}

impl Fan {
    /// Cell pairs meeting in a common facet, with that facet's hyperplane normal.
    pub fn adjacency(&self) -> Vec<(usize, usize, Point)> {
        adjacency(&self.cells)
    }
}

pub fn adjacency(cells: &[Cone]) -> Vec<(usize, usize, Point)> {
    let mut out = Vec::new();
    for i in 0..cells.len() {
        let n = cells[i].ambient_dim();
        for j in i + 1..cells.len() {
            let m = cells[i].intersect(&cells[j]);
            if m.dim() + 1 == n {
                out.push((i, j, m.equations()[0].clone()));
            }
        }
    }
    out
}

pub fn normal_fan(p: &Polyhedron) -> Fan {
    let cells = p.vertices().iter().map(|v| p.inner_normal_cone(v).unwrap()).collect();
    Fan { support: p.normal_support(), cells }
}

/// Distinct hyperplanes (up to sign) among the given normals; zero normals dropped.
pub fn dedup_hyperplanes(normals: &[Point]) -> Vec<Point> {
    let set: BTreeSet<Point> = normals.iter().filter(|a| !is_zero(a)).map(|a| primitive_line(a)).collect();
    set.into_iter().collect()
}

pub fn restrict_arrangement(k: &Cone, hyperplanes: &[Point]) -> Fan {
    restrict_arrangement_with(Exec::default(), k, hyperplanes)
}

/// Closures of the connected components of int(K) minus the hyperplanes.
pub fn restrict_arrangement_with(exec: Exec, k: &Cone, hyperplanes: &[Point]) -> Fan {
    let hs = dedup_hyperplanes(hyperplanes);
    let mut cells = vec![k.clone()];
    for h in &hs {
        cells = exec::flat_map(exec, &cells, |c| {
            if c.functional_sign(h).is_some() {
                return vec![c.clone()];
            }
            let a = c.cut(std::slice::from_ref(h));
            let b = c.cut(&[neg(h)]);
            [a, b].into_iter().filter(|x| x.is_full_dim()).collect()
        });
    }
    cells.sort();
    Fan { support: k.clone(), cells }
}

/// Is every full-dimensional cone of `a` covered by the union of `b`?
pub fn union_covers(a: &[Cone], b: &[Cone]) -> bool {
    let mut hyper: Vec<Point> = Vec::new();
    for c in b {
        hyper.extend(c.facets().iter().cloned());
        hyper.extend(c.equations().iter().cloned());
    }
    a.iter().all(|ai| {
        let fan = restrict_arrangement_with(Exec::Sequential, ai, &hyper);
        fan.cells.iter().all(|cell| {
            let x = cell.interior_point();
            b.iter().any(|bj| bj.contains(&x))
        })
    })
}

/// Do two finite unions of full-dimensional cones coincide?
pub fn unions_equal(a: &[Cone], b: &[Cone]) -> bool {
    union_covers(a, b) && union_covers(b, a)
}

pub fn union_is_convex(cones: &[Cone]) -> bool {
    if cones.len() <= 1 {
        return true;
    }
    let n = cones[0].ambient_dim();
    let hull = Cone::sum_all(n, cones);
    union_covers(&[hull], cones)
}

/// Inclusion-maximal index sets whose union is convex.
pub fn maximal_convex_subfamilies(cones: &[Cone], cap: usize) -> Result<Vec<Vec<usize>>, GeomError> {
    maximal_convex_subfamilies_with(Exec::default(), cones, cap)
}

pub fn maximal_convex_subfamilies_with(exec: Exec, cones: &[Cone], cap: usize) -> Result<Vec<Vec<usize>>, GeomError> {
    if cones.len() > cap {
        return Err(GeomError::SizeLimit(cones.len(), cap));
    }
    let m = cones.len();
    if m == 0 {
        return Ok(vec![]);
    }
    let mut nbr = vec![Vec::new(); m];
    for (i, j, _) in adjacency(cones) {
        nbr[i].push(j);
        nbr[j].push(i);
    }
    // Convex unions of full-dimensional cells are facet-connected, so only
    // connected subsets are candidates.
    let mut connected: BTreeSet<u64> = BTreeSet::new();
    let mut stack: Vec<u64> = (0..m).map(|i| 1u64 << i).collect();
    while let Some(s) = stack.pop() {
        if !connected.insert(s) {
            continue;
        }
        for (i, ns) in nbr.iter().enumerate() {
            if s & (1 << i) != 0 {
                for &j in ns {
                    let t = s | (1 << j);
                    if t != s && !connected.contains(&t) {
                        stack.push(t);
                    }
                }
            }
        }
    }
    let subsets: Vec<u64> = connected.into_iter().collect();
    let convex: Vec<bool> = exec::map(exec, &subsets, |&s| {
        let members: Vec<Cone> = (0..m).filter(|i| s & (1 << i) != 0).map(|i| cones[i].clone()).collect();
        union_is_convex(&members)
    });
    let good: Vec<u64> = subsets.iter().zip(&convex).filter(|(_, &c)| c).map(|(&s, _)| s).collect();
    let mut out: Vec<Vec<usize>> = good
        .iter()
        .filter(|&&s| !good.iter().any(|&t| t != s && t & s == s))
        .map(|&s| (0..m).filter(|i| s & (1 << i) != 0).collect())
        .collect();
    out.sort();
    Ok(out)
}

//! Double description: generators of {x : a·x >= 0, b·x = 0}.

use num_traits::{Signed, Zero};

use crate::rat::{dot, primitive, primitive_line, scale, sub, unit_vec, Point};

/// Lineality basis and extreme rays (modulo lineality) of a polyhedral cone.
#[derive(Clone, Debug)]
pub struct Generators {
    pub lineality: Vec<Point>,
    pub rays: Vec<Point>,
}

type Bits = Vec<u64>;

fn bit_set(b: &mut Bits, k: usize) {
    b[k / 64] |= 1 << (k % 64);
}

fn bit_and(a: &Bits, b: &Bits) -> Bits {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn bit_count(a: &Bits) -> usize {
    a.iter().map(|x| x.count_ones() as usize).sum()
}

fn bit_superset(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).all(|(x, y)| x & y == *y)
}

pub fn generators(n: usize, ineqs: &[Point], eqs: &[Point]) -> Generators {
    let mut constraints: Vec<Point> = Vec::new();
    for e in eqs {
        constraints.push(e.clone());
        constraints.push(e.iter().map(|x| -x).collect());
    }
    constraints.extend(ineqs.iter().filter(|a| a.iter().any(|x| !x.is_zero())).cloned());
    let words = constraints.len().div_ceil(64).max(1);

    let mut lin: Vec<Point> = (0..n).map(|i| unit_vec(n, i)).collect();
    // Extreme rays modulo `lin`, each with the set of constraints it makes tight.
    let mut rays: Vec<(Point, Bits)> = Vec::new();

    for (k, a) in constraints.iter().enumerate() {
        if let Some(at) = lin.iter().position(|l| !dot(a, l).is_zero()) {
            let mut piv = lin.swap_remove(at);
            if dot(a, &piv).is_negative() {
                piv = piv.iter().map(|x| -x).collect();
            }
            let ap = dot(a, &piv);
            let reduce = |v: &Point| -> Point {
                let c = dot(a, v) / &ap;
                if c.is_zero() {
                    v.clone()
                } else {
                    primitive(&sub(v, &scale(&piv, &c)))
                }
            };
            lin = lin.iter().map(reduce).collect();
            for (r, z) in rays.iter_mut() {
                *r = reduce(r);
                bit_set(z, k);
            }
            // The pivot was a lineality vector, tight on every earlier constraint.
            let mut z = vec![0u64; words];
            for j in 0..k {
                bit_set(&mut z, j);
            }
            rays.push((primitive(&piv), z));
            continue;
        }
        let vals: Vec<_> = rays.iter().map(|(r, _)| dot(a, r)).collect();
        let target = (n - lin.len()).saturating_sub(2);
        let mut next: Vec<(Point, Bits)> = Vec::new();
        let (mut pos, mut negs) = (Vec::new(), Vec::new());
        for (i, v) in vals.iter().enumerate() {
            if v.is_negative() {
                negs.push(i);
            } else if v.is_positive() {
                pos.push(i);
            }
        }
        for &p in &pos {
            for &q in &negs {
                let common = bit_and(&rays[p].1, &rays[q].1);
                if bit_count(&common) < target {
                    continue;
                }
                let blocked = rays.iter().enumerate().any(|(r, (_, z))| r != p && r != q && bit_superset(z, &common));
                if blocked {
                    continue;
                }
                let r = primitive(&sub(&scale(&rays[q].0, &vals[p]), &scale(&rays[p].0, &vals[q])));
                let mut z = common;
                bit_set(&mut z, k);
                next.push((r, z));
            }
        }
        for (i, (r, mut z)) in rays.into_iter().enumerate() {
            if !vals[i].is_negative() {
                if vals[i].is_zero() {
                    bit_set(&mut z, k);
                }
                next.push((r, z));
            }
        }
        rays = next;
    }

    let mut out: Vec<Point> = rays.into_iter().map(|(r, _)| r).filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    out.sort();
    out.dedup();
    Generators {
        lineality: lin.iter().map(|l| primitive_line(l)).collect(),
        rays: out,
    }
}

use proptest::prelude::*;
use psr_geometry::fan::union_is_convex;
use psr_geometry::rat::{frac, int, Point};
use psr_geometry::{Exec, Polyhedron};
use psr_global::glue::{extract_all, glue_global_with};
use psr_global::summand::{minkowski_summand_certificate, shephard_weak_summand};
use psr_global::{is_complete_local, is_global_solution, GlueOutcome, LocalSolutionMap};
use psr_local::enumerate_mw_minimal_local_solutions;
use psr_poly::{MSum, PolyPolynomial};

fn coords(n: usize) -> impl Strategy<Value = Point> {
    prop::collection::vec((-4i64..=4, 1i64..=2), n).prop_map(|v| v.into_iter().map(|(p, q)| frac(p, q)).collect())
}

fn polytope(n: usize) -> impl Strategy<Value = Polyhedron> {
    prop::collection::vec(coords(n), 1..=4).prop_map(|pts| Polyhedron::polytope(&pts).unwrap())
}

fn linear(q1: &Polyhedron, q0: &Polyhedron) -> PolyPolynomial {
    PolyPolynomial::new(q0.dim(), vec![(0, q0.clone()), (1, q1.clone())]).unwrap()
}

/// Cyclic permutations of (0, ±1, ±t): an icosahedron for t the golden ratio.
/// t = 8/5 keeps the combinatorics; the edge below was found by scanning
/// all edges for a non-convex union of the two vertex cones.
fn icosahedron() -> Polyhedron {
    let t = frac(8, 5);
    let mut pts = Vec::new();
    for a in [int(1), int(-1)] {
        for b in [t.clone(), -t.clone()] {
            let base = [int(0), a.clone(), b];
            for s in 0..3 {
                pts.push((0..3).map(|k| base[(k + s) % 3].clone()).collect::<Point>());
            }
        }
    }
    Polyhedron::polytope(&pts).unwrap()
}

fn non_convex_edge(q: &Polyhedron) -> (Point, Point) {
    let vs = q.vertices();
    q.edges()
        .into_iter()
        .map(|(i, j)| (vs[i].clone(), vs[j].clone()))
        .find(|(a, b)| !union_is_convex(&[q.inner_normal_cone(a).unwrap(), q.inner_normal_cone(b).unwrap()]))
        .expect("no edge with a non-convex cone union")
}

#[test]
fn rational_icosahedron_has_non_convex_adjacent_cones() {
    let q = icosahedron();
    assert_eq!(q.vertices().len(), 12);
    assert_eq!(q.edges().len(), 30);
    let vs = q.vertices();
    let bad = q
        .edges()
        .into_iter()
        .filter(|&(i, j)| !union_is_convex(&[q.inner_normal_cone(&vs[i]).unwrap(), q.inner_normal_cone(&vs[j]).unwrap()]))
        .count();
    assert!(bad > 0);
    let (a, b) = non_convex_edge(&q);
    let edge = Polyhedron::polytope(&[a.clone(), b.clone()]).unwrap();
    let m = MSum::of(&linear(&q, &edge)).unwrap();
    let (a2, b2): (Point, Point) = (a.iter().map(|x| x * int(2)).collect(), b.iter().map(|x| x * int(2)).collect());
    assert!(m.value.is_vertex(&a2) && m.value.is_vertex(&b2));
    let zero = vec![int(0); 3];
    assert_eq!(m.rho(&a2, 0, 1).unwrap(), zero);
    assert_eq!(m.rho(&b2, 0, 1).unwrap(), zero);
}

#[test]
fn inverted_icosahedron_has_no_global_solution() {
    let q0 = icosahedron();
    let (a, b) = non_convex_edge(&q0);
    let q1 = Polyhedron::polytope(&[a, b]).unwrap();
    let phi = linear(&q1, &q0);
    let m = MSum::of(&phi).unwrap();
    let mut locals = LocalSolutionMap::new();
    for v in m.vertices() {
        let sols = enumerate_mw_minimal_local_solutions(&phi, v).unwrap();
        assert_eq!(sols.len(), 1);
        assert!(is_complete_local(&phi, v, &sols[0]).unwrap());
        locals.insert(v.clone(), sols[0].clone());
    }
    let (a2, b2) = (q1.vertices()[0].iter().map(|x| x * int(2)).collect::<Point>(), q1.vertices()[1].iter().map(|x| x * int(2)).collect::<Point>());
    let zero = vec![int(0); 3];
    assert!(locals[&a2].is_vertex(&zero) && locals[&b2].is_vertex(&zero));
    for ex in [Exec::Sequential, Exec::Parallel] {
        match glue_global_with(ex, &phi, &locals).unwrap() {
            GlueOutcome::Violation { vertex, gamma } => assert!(!locals[&vertex].is_vertex(&gamma)),
            g => panic!("expected a violation, got {g:?}"),
        }
    }
    assert!(!minkowski_summand_certificate(&q1, &q0).unwrap().holds());
    assert!(!shephard_weak_summand(&q1, &q0).unwrap().is_weak_summand());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn summands_extract_and_glue((q1, r) in (1usize..=2).prop_flat_map(|n| (polytope(n), polytope(n)))) {
        let q0 = q1.minkowski_sum(&r).unwrap();
        let phi = linear(&q1, &q0);
        prop_assert!(is_global_solution(&phi, &r).unwrap());
        let cert = minkowski_summand_certificate(&q1, &q0).unwrap();
        prop_assert_eq!(cert.witness(), Some(&r));
        prop_assert!(shephard_weak_summand(&q1, &q0).unwrap().is_weak_summand());
        let locals = extract_all(&phi, &r).unwrap();
        for (v, s) in &locals {
            prop_assert!(is_complete_local(&phi, v, s).unwrap());
        }
        for ex in [Exec::Sequential, Exec::Parallel] {
            prop_assert_eq!(glue_global_with(ex, &phi, &locals).unwrap(), GlueOutcome::Glued(r.clone()));
        }
    }

    #[test]
    fn global_solutions_are_roots((phi, p) in (1usize..=2).prop_flat_map(|n| (
        prop::collection::btree_map(0usize..=2, polytope(n), 2..=3).prop_map(move |t| PolyPolynomial::new(n, t.into_iter().collect()).unwrap()),
        polytope(n),
    ))) {
        if is_global_solution(&phi, &p).unwrap() {
            prop_assert!(phi.is_root(&p).unwrap());
            let locals = extract_all(&phi, &p).unwrap();
            for (v, s) in &locals {
                prop_assert!(phi.is_root(s).unwrap(), "{:?} at {:?}", s, v);
            }
        }
    }
}

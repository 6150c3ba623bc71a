use proptest::prelude::*;
use psr_geometry::rat::{dot, frac, int, Point};
use psr_geometry::{OmegaOrder, Polyhedron, Rat};
use psr_poly::msum::affine_cone_root;
use psr_poly::trop::{same_function, tropicalize};
use psr_poly::PolyPolynomial;

fn coords(n: usize) -> impl Strategy<Value = Point> {
    prop::collection::vec((-4i64..=4, 1i64..=2), n).prop_map(|v| v.into_iter().map(|(p, q)| frac(p, q)).collect())
}

fn polytope(n: usize) -> impl Strategy<Value = Polyhedron> {
    prop::collection::vec(coords(n), 1..=3).prop_map(|pts| Polyhedron::polytope(&pts).unwrap())
}

fn polynomial(n: usize) -> impl Strategy<Value = PolyPolynomial> {
    prop::collection::btree_map(0usize..=3, polytope(n), 1..=4).prop_map(move |t| PolyPolynomial::new(n, t.into_iter().collect()).unwrap())
}

fn instance() -> impl Strategy<Value = (PolyPolynomial, Polyhedron, Point)> {
    (1usize..=2).prop_flat_map(|n| (polynomial(n), polytope(n), coords(n)))
}

fn min_on(p: &Polyhedron, l: &[Rat]) -> Rat {
    p.vertices().iter().map(|v| dot(l, v)).min().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evaluation_is_the_hull_of_shifted_coefficients((phi, p, _) in instance()) {
        let mut pts = Vec::new();
        for (&i, q) in phi.terms() {
            for a in q.vertices() {
                for b in p.vertices() {
                    pts.push(a.iter().zip(b).map(|(x, y)| x + int(i as i64) * y).collect::<Point>());
                }
            }
        }
        let (value, summands) = phi.evaluate(&p).unwrap();
        prop_assert_eq!(value, Polyhedron::polytope(&pts).unwrap());
        prop_assert_eq!(summands.len(), phi.terms().len());
    }

    #[test]
    fn tropicalization_commutes_with_evaluation((phi, p, l) in instance()) {
        let t = tropicalize(&phi, &l).unwrap();
        let (value, _) = phi.evaluate(&p).unwrap();
        prop_assert_eq!(t.eval(&min_on(&p, &l)), min_on(&value, &l));
    }

    #[test]
    fn roots_tropicalize_to_roots((phi, p, l) in instance()) {
        if phi.is_root(&p).unwrap() {
            let t = tropicalize(&phi, &l).unwrap();
            let y = min_on(&p, &l);
            let m = t.eval(&y);
            let hits = t.terms.iter().filter(|(&i, c)| *c + int(i as i64) * &y == m).count();
            prop_assert!(hits >= 2, "{:?} at {}", t, y);
        }
    }

    #[test]
    fn affine_cone_root_is_a_root((phi, _, w) in instance()) {
        prop_assume!(phi.terms().len() >= 2);
        let base: Point = w.iter().map(|x| x * x + int(1)).collect();
        let r = affine_cone_root(&phi, &OmegaOrder::new(base).unwrap()).unwrap();
        prop_assert!(phi.is_root(&r).unwrap());
    }

    #[test]
    fn factors_are_roots((q, fs) in (1usize..=2).prop_flat_map(|n| (polytope(n), prop::collection::vec(polytope(n), 1..=3)))) {
        let phi = PolyPolynomial::product_expand(&q, &fs).unwrap();
        prop_assert_eq!(phi.degree(), fs.len());
        for f in &fs {
            prop_assert!(phi.is_root(f).unwrap(), "{:?}", f);
        }
        prop_assert!(same_function(&phi, &phi).unwrap());
    }

    #[test]
    fn same_function_sees_evaluation((phi, p, _) in instance(), psi in (1usize..=2).prop_flat_map(polynomial)) {
        prop_assume!(phi.dim() == psi.dim());
        if same_function(&phi, &psi).unwrap() {
            prop_assert_eq!(phi.evaluate(&p).unwrap().0, psi.evaluate(&p).unwrap().0);
        }
    }
}

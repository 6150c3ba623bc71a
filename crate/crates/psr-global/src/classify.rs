//! Complete local solutions of quadratics and reduced cubics via Δ_v.

use psr_geometry::rat::{int, is_zero, neg, scale, sub};
use psr_geometry::{Point, Polyhedron, Rat};
use psr_poly::{MSum, PolyPolynomial};

use crate::GlobalError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DeltaCase {
    /// Δ_v = 0.
    Degenerate,
    /// N_M(v) ⊆ H⁻ = {μ : μ(Δ_v) ≤ 0}.
    Minus,
    /// N_M(v) ⊆ H⁺ = {μ : μ(Δ_v) ≥ 0}.
    Plus,
    /// Both N_M(v) ∩ H⁻ and N_M(v) ∩ H⁺ are full-dimensional.
    Split,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaReport {
    pub vertex: Point,
    pub delta: Point,
    pub case: DeltaCase,
    /// Sorted.
    pub solutions: Vec<Polyhedron>,
}

/// Δ_v = 2v₁ − v₀ − v₂, pairs (0,1), (1,2), (0,2).
pub fn classify_quadratic_local(phi: &PolyPolynomial, v: &[Rat]) -> Result<DeltaReport, GlobalError> {
    if phi.support() != [0, 1, 2] {
        return Err(GlobalError::BadSupport("{0,1,2}"));
    }
    classify(phi, v, 2)
}

/// Δ_v = 3v₁ − 2v₀ − v₃, pairs (0,1), (1,3), (0,3).
pub fn classify_reduced_cubic_local(phi: &PolyPolynomial, v: &[Rat]) -> Result<DeltaReport, GlobalError> {
    if phi.support() != [0, 1, 3] {
        return Err(GlobalError::BadSupport("{0,1,3}"));
    }
    classify(phi, v, 3)
}

fn classify(phi: &PolyPolynomial, v: &[Rat], d: usize) -> Result<DeltaReport, GlobalError> {
    let m = MSum::of(phi)?;
    let (v0, v1, vd) = (m.part(v, 0)?, m.part(v, 1)?, m.part(v, d)?);
    let k = d as i64;
    let delta = sub(&sub(&scale(v1, &int(k)), &scale(v0, &int(k - 1))), vd);
    let nv = m.normal_cone(v)?;
    let (low, high, far) = (m.rho(v, 0, 1)?, m.rho(v, 1, d)?, m.rho(v, 0, d)?);
    let anchored = |r: &Point, c: &psr_geometry::Cone| Polyhedron::affine_cone(r.clone(), c);
    let (case, mut solutions) = if is_zero(&delta) {
        (DeltaCase::Degenerate, vec![anchored(&low, &nv)?])
    } else {
        let minus = nv.cut(&[neg(&delta)]);
        let plus = nv.cut(std::slice::from_ref(&delta));
        match (minus.is_full_dim(), plus.is_full_dim()) {
            (true, true) => {
                let p = anchored(&high, &minus)?.intersection(&anchored(&far, &plus)?)?;
                (DeltaCase::Split, vec![p])
            }
            (true, false) => (DeltaCase::Minus, vec![anchored(&low, &nv)?, anchored(&high, &nv)?]),
            _ => (DeltaCase::Plus, vec![anchored(&far, &nv)?]),
        }
    };
    solutions.sort();
    Ok(DeltaReport { vertex: v.to_vec(), delta, case, solutions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glue::is_complete_local;
    use psr_geometry::rat::{frac, point};

    fn pt(p: &[i64]) -> Polyhedron {
        Polyhedron::point(point(p))
    }

    fn seg(a: &[i64], b: &[i64]) -> Polyhedron {
        Polyhedron::polytope(&[point(a), point(b)]).unwrap()
    }

    fn check(phi: &PolyPolynomial, r: &DeltaReport) {
        for s in &r.solutions {
            assert!(is_complete_local(phi, &r.vertex, s).unwrap(), "{s:?}");
        }
    }

    #[test]
    fn quadratic_cases() {
        let phi = PolyPolynomial::new(1, vec![(0, pt(&[2])), (1, pt(&[1])), (2, pt(&[0]))]).unwrap();
        let r = classify_quadratic_local(&phi, &point(&[3])).unwrap();
        assert_eq!(r.case, DeltaCase::Degenerate);
        assert_eq!(r.solutions, vec![pt(&[1])]);
        check(&phi, &r);

        let phi = PolyPolynomial::new(1, vec![(0, pt(&[3])), (1, pt(&[1])), (2, pt(&[0]))]).unwrap();
        let r = classify_quadratic_local(&phi, &point(&[4])).unwrap();
        assert_eq!((r.case, r.delta.clone()), (DeltaCase::Split, point(&[-1])));
        assert_eq!(r.solutions, vec![Polyhedron::polytope(&[point(&[1]), vec![frac(3, 2)]]).unwrap()]);
        check(&phi, &r);
    }

    #[test]
    fn quadratic_half_lines() {
        // M = [0,1] + {5}: N_M(5) = ℝ≥0, Δ = 2·0 − 5 − 0 < 0 there.
        let phi = PolyPolynomial::new(1, vec![(0, pt(&[5])), (1, pt(&[0])), (2, seg(&[0], &[1]))]).unwrap();
        let r = classify_quadratic_local(&phi, &point(&[5])).unwrap();
        assert_eq!(r.case, DeltaCase::Minus);
        assert_eq!(r.solutions.len(), 2);
        check(&phi, &r);
        let r = classify_quadratic_local(&phi, &point(&[6])).unwrap();
        check(&phi, &r);
        let phi = PolyPolynomial::new(1, vec![(0, pt(&[0])), (1, pt(&[5])), (2, seg(&[0], &[1]))]).unwrap();
        let r = classify_quadratic_local(&phi, &point(&[5])).unwrap();
        assert_eq!(r.case, DeltaCase::Plus);
        assert_eq!(r.solutions.len(), 1);
        check(&phi, &r);
    }

    #[test]
    fn cubic_cases() {
        let phi = PolyPolynomial::new(1, vec![(0, pt(&[2])), (1, pt(&[1])), (3, pt(&[0]))]).unwrap();
        let r = classify_reduced_cubic_local(&phi, &point(&[3])).unwrap();
        assert_eq!(r.case, DeltaCase::Split);
        assert_eq!(r.solutions, vec![Polyhedron::polytope(&[vec![frac(1, 2)], vec![frac(2, 3)]]).unwrap()]);
        check(&phi, &r);

        let phi = PolyPolynomial::new(1, vec![(0, pt(&[3])), (1, pt(&[2])), (3, pt(&[0]))]).unwrap();
        let r = classify_reduced_cubic_local(&phi, &point(&[5])).unwrap();
        assert_eq!(r.case, DeltaCase::Degenerate);
        check(&phi, &r);
        assert_eq!(
            classify_reduced_cubic_local(&PolyPolynomial::new(1, vec![(0, pt(&[0])), (2, pt(&[0]))]).unwrap(), &point(&[0])),
            Err(GlobalError::BadSupport("{0,1,3}"))
        );
    }
}

//! Symbolic generic functional ω = base + ε·e₁ + ε²·e₂ + …

use std::cmp::Ordering;

use num_traits::Signed;

use crate::rat::{dot, Point, Rat};
use crate::GeomError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaOrder {
    base: Point,
}

impl OmegaOrder {
    pub fn new(base: Point) -> Result<Self, GeomError> {
        if base.is_empty() || base.iter().any(|x| !x.is_positive()) {
            return Err(GeomError::BadOmega);
        }
        Ok(OmegaOrder { base })
    }

    /// The default base (1, 1, …, 1).
    pub fn standard(n: usize) -> Self {
        OmegaOrder { base: vec![crate::rat::int(1); n] }
    }

    pub fn base(&self) -> &[Rat] {
        &self.base
    }

    /// (base·x, x₁, …, xₙ); zero exactly when x = 0.
    pub fn eval(&self, x: &[Rat]) -> Vec<Rat> {
        let mut t = Vec::with_capacity(x.len() + 1);
        t.push(dot(&self.base, x));
        t.extend(x.iter().cloned());
        t
    }

    pub fn cmp(&self, a: &[Rat], b: &[Rat]) -> Ordering {
        self.eval(a).cmp(&self.eval(b))
    }

    /// Strict lexicographic positivity of ω on x.
    pub fn is_positive(&self, x: &[Rat]) -> bool {
        self.eval(x).iter().find(|c| !num_traits::Zero::is_zero(*c)).is_some_and(|c| c.is_positive())
    }

    /// A rational point of the open region that the symbolic ω lies in,
    /// relative to the given hyperplane normals: no normal vanishes on it
    /// unless it vanishes on ω.
    pub fn perturbed(&self, normals: &[Point]) -> Point {
        let n = self.base.len();
        let mut eps = crate::rat::frac(1, 2);
        loop {
            let mut w = self.base.clone();
            let mut e = eps.clone();
            for wi in w.iter_mut().take(n) {
                *wi = &*wi + &e;
                e = &e * &eps;
            }
            let ok = normals.iter().all(|a| {
                let s = self.eval(a).iter().find(|c| !num_traits::Zero::is_zero(*c)).map(|c| c.signum());
                let v = dot(a, &w);
                match s {
                    None => true,
                    Some(s) => v.signum() == s,
                }
            });
            if ok {
                return w;
            }
            eps = &eps / crate::rat::int(16);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::point;

    #[test]
    fn tuple_breaks_ties() {
        let w = OmegaOrder::new(point(&[1, 1])).unwrap();
        assert_eq!(w.cmp(&point(&[1, 0]), &point(&[0, 1])), Ordering::Greater);
        assert!(w.is_positive(&point(&[1, -1])));
        assert!(!w.is_positive(&point(&[-1, 1])));
    }

    #[test]
    fn rejects_nonpositive_base() {
        assert!(OmegaOrder::new(point(&[1, 0])).is_err());
    }
}

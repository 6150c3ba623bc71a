//! Rational scalars and dense rational vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::GeomError;

pub type Rat = num_rational::BigRational;
pub type Point = Vec<Rat>;

pub fn int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn point(coords: &[i64]) -> Point {
    coords.iter().map(|&c| int(c)).collect()
}

pub fn zero_vec(n: usize) -> Point {
    vec![Rat::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Point {
    let mut v = zero_vec(n);
    v[i] = Rat::one();
    v
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add(a: &[Rat], b: &[Rat]) -> Point {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rat], b: &[Rat]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Rat], s: &Rat) -> Point {
    a.iter().map(|x| x * s).collect()
}

pub fn neg(a: &[Rat]) -> Point {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero(a: &[Rat]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn to_f64(x: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn vec_f64(a: &[Rat]) -> Vec<f64> {
    a.iter().map(to_f64).collect()
}

/// Scales a nonzero vector to the primitive integer vector on the same ray.
pub fn primitive(a: &[Rat]) -> Point {
    if is_zero(a) {
        return a.to_vec();
    }
    let mut l = BigInt::one();
    for x in a {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = a.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    ints.into_iter().map(|x| Rat::from_integer(x / &g)).collect()
}

/// Primitive representative of the line through `a`, first nonzero entry positive.
pub fn primitive_line(a: &[Rat]) -> Point {
    let p = primitive(a);
    match p.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => neg(&p),
        _ => p,
    }
}

pub fn format_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rat(s: &str) -> Result<Rat, GeomError> {
    let s = s.trim();
    let bad = || GeomError::Parse(format!("not a rational: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        Ok(Rat::new(p, q))
    } else {
        let p: BigInt = s.parse().map_err(|_| bad())?;
        Ok(Rat::from_integer(p))
    }
}

pub fn format_point(p: &[Rat]) -> String {
    let parts: Vec<String> = p.iter().map(format_rat).collect();
    format!("({})", parts.join(","))
}

/// Lexicographic comparison of rational vectors.
pub fn lex_cmp(a: &[Rat], b: &[Rat]) -> std::cmp::Ordering {
    a.cmp(b)
}

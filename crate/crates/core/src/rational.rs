//! Exact scalars and small dense vectors over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{PolyError, Result};

/// Arbitrary precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// A point or direction in rational coordinates.
pub type RationalVector = Vec<Rational>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn vector(coords: &[i64]) -> RationalVector {
    coords.iter().map(|&c| int(c)).collect()
}

pub fn zeros(n: usize) -> RationalVector {
    vec![Rational::zero(); n]
}

pub fn unit(n: usize, i: usize) -> RationalVector {
    let mut v = zeros(n);
    v[i] = Rational::one();
    v
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn add(a: &[Rational], b: &[Rational]) -> RationalVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> RationalVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Rational], s: &Rational) -> RationalVector {
    a.iter().map(|x| x * s).collect()
}

pub fn neg(a: &[Rational]) -> RationalVector {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero_vector(a: &[Rational]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn norm_squared(a: &[Rational]) -> Rational {
    dot(a, a)
}

/// Scales `v` to the unique integer vector with content 1 pointing in the same
/// direction. The zero vector is returned unchanged.
pub fn primitive(v: &[Rational]) -> RationalVector {
    if is_zero_vector(v) {
        return v.to_vec();
    }
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &g))
        .collect()
}

/// Like [`primitive`], additionally flipping the sign so that the first
/// nonzero coordinate is positive.
pub fn primitive_lex_positive(v: &[Rational]) -> RationalVector {
    let p = primitive(v);
    match p.iter().find(|x| !x.is_zero()) {
        Some(first) if first.is_negative() => neg(&p),
        _ => p,
    }
}

/// Integer content of an integral vector, i.e. the gcd of its entries.
pub fn lattice_length(v: &[Rational]) -> Rational {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let mut g = BigInt::zero();
    for x in v {
        g = g.gcd(&(x * &lcm).to_integer());
    }
    Rational::new(g, lcm)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn pow(base: &Rational, exp: u32) -> Rational {
    num_traits::pow(base.clone(), exp as usize)
}

/// Parses `"p/q"` or `"p"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || PolyError::Parse(format!("invalid rational {s:?}"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(PolyError::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Formats a rational as `"p"` or `"p/q"`.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// Display adapter printing a vector as `(a, b, c)`.
pub struct DisplayVector<'a>(pub &'a [Rational]);

impl fmt::Display for DisplayVector<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&format_rational(x))?;
        }
        f.write_str(")")
    }
}

//! Nilpotency, logarithms, the graded decomposition and divisibility.
//!
//! Elements built from a single polytope `B` are handled as truncated
//! polynomials in `s = ⟦B⟧ - 1`. Since `s^{d+1} = 0` in the algebra, these
//! live in `Q[s]/(s^{d+1})` and expand back to classes through
//! `s^i = Σ_j (-1)^{i-j} C(i, j) ⟦jB⟧`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::AlgebraElement;
use crate::error::{PolyError, Result};
use crate::linalg::solve;
use crate::polytope::Polytope;
use crate::rational::{binomial, factorial, format_rational, int, pow, Rational};
use crate::weights::{minkowski_map, WeightVector};

/// `Σ_i c_i (⟦B⟧ - 1)^i`, truncated above degree `d = ambient_dim(B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentationSeries {
    base: Polytope,
    coeffs: Vec<Rational>,
}

impl AugmentationSeries {
    pub fn constant(base: &Polytope, c: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); base.ambient_dim() + 1];
        coeffs[0] = c;
        AugmentationSeries { base: base.clone(), coeffs }
    }

    /// `s = ⟦B⟧ - 1`.
    pub fn augmentation(base: &Polytope) -> Self {
        let mut s = Self::constant(base, Rational::zero());
        if s.coeffs.len() > 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    pub fn base(&self) -> &Polytope {
        &self.base
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        AugmentationSeries { base: self.base.clone(), coeffs }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a * q).collect();
        AugmentationSeries { base: self.base.clone(), coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.coeffs.len();
        let mut coeffs = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                coeffs[i + j] += a * b;
            }
        }
        AugmentationSeries { base: self.base.clone(), coeffs }
    }

    pub fn pow(&self, r: u32) -> Self {
        let mut acc = Self::constant(&self.base, Rational::one());
        for _ in 0..r {
            acc = acc.mul(self);
        }
        acc
    }

    /// `f(s)` for a polynomial `f` given by coefficients, truncated.
    pub fn compose(f: &[Rational], s: &Self) -> Self {
        let mut acc = Self::constant(&s.base, Rational::zero());
        let mut power = Self::constant(&s.base, Rational::one());
        for c in f {
            acc = acc.add(&power.scale(c));
            power = power.mul(s);
        }
        acc
    }

    pub fn to_element(&self) -> Result<AlgebraElement> {
        let d = self.base.ambient_dim();
        let mut x = AlgebraElement::zero(d);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            x = &x + &binomial_expansion(&self.base, i as u32)?.scale(c);
        }
        Ok(x)
    }
}

/// `(⟦P⟧ - 1)^r = Σ_j (-1)^{r-j} C(r, j) ⟦jP⟧`, without truncation.
fn binomial_expansion(p: &Polytope, r: u32) -> Result<AlgebraElement> {
    let mut x = AlgebraElement::zero(p.ambient_dim());
    for j in 0..=r {
        let sign = if (r - j).is_multiple_of(2) { 1 } else { -1 };
        let c = Rational::from_integer(binomial(r as u64, j as u64) * sign);
        x.add_term(&p.dilate(&int(j as i64))?, c);
    }
    Ok(x)
}

pub fn power_of_augmentation(p: &Polytope, r: u32) -> Result<AlgebraElement> {
    if p.is_empty() {
        return Err(PolyError::EmptyInput);
    }
    binomial_expansion(p, r)
}

/// `log ⟦P⟧ = Σ_{k=1}^{d} (-1)^{k-1} (⟦P⟧ - 1)^k / k` as a series.
pub fn log_series(p: &Polytope) -> Result<AugmentationSeries> {
    if p.is_empty() {
        return Err(PolyError::EmptyInput);
    }
    let d = p.ambient_dim();
    let mut f = vec![Rational::zero(); d + 1];
    for (k, c) in f.iter_mut().enumerate().skip(1) {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        *c = Rational::new(sign.into(), (k as i64).into());
    }
    Ok(AugmentationSeries::compose(&f, &AugmentationSeries::augmentation(p)))
}

pub fn log_class(p: &Polytope) -> Result<AlgebraElement> {
    log_series(p)?.to_element()
}

/// `p^k / k!` for `p = log ⟦P⟧` and `k = 0..=d`.
pub fn graded_representatives(p: &Polytope) -> Result<Vec<AugmentationSeries>> {
    let log = log_series(p)?;
    let d = p.ambient_dim();
    let mut out = Vec::with_capacity(d + 1);
    let mut power = AugmentationSeries::constant(p, Rational::one());
    for k in 0..=d {
        out.push(power.scale(&Rational::new(BigInt::one(), factorial(k as u64))));
        power = power.mul(&log);
    }
    Ok(out)
}

/// `exp x = Σ_{k=0}^{d} x^k / k!` for `x` with `χ(x) = 0` (the nilpotent
/// elements).
pub fn exp_element(x: &AlgebraElement) -> Result<AlgebraElement> {
    let chi = x.euler();
    if !chi.is_zero() {
        return Err(PolyError::NotNilpotent(format_rational(&chi)));
    }
    let d = x.ambient_dim();
    let mut acc = AlgebraElement::zero(d);
    let mut power = AlgebraElement::one(d);
    for k in 0..=d {
        acc = &acc + &power.scale(&Rational::new(BigInt::one(), factorial(k as u64)));
        if k < d {
            power = power.multiply(x)?;
        }
    }
    Ok(acc)
}

/// Homogeneous parts of an element of `Π(P)`.
#[derive(Clone, Debug)]
pub struct GradedParts {
    /// `φ(x_k)` for `k = 0..=d`.
    pub weights: Vec<WeightVector>,
    /// Representatives `x_k = Σ α_i (log ⟦Q_i⟧)^k / k!`.
    pub components: Vec<AlgebraElement>,
    /// Whether a second solve with dilation factors `2..=d+2` agrees.
    pub unique: bool,
}

/// Solves `Σ_k N^k w_k = φ(D_N x)` for the listed `N`.
fn vandermonde(x: &AlgebraElement, reference: &Polytope, ns: &[i64]) -> Result<Vec<WeightVector>> {
    let samples = ns
        .iter()
        .map(|&n| minkowski_map(&x.dilate_class(&int(n))?, reference))
        .collect::<Result<Vec<_>>>()?;
    let m = ns.len();
    let rows: Vec<Vec<Rational>> =
        ns.iter().map(|&n| (0..m).map(|k| pow(&int(n), k as u32)).collect()).collect();
    let mut out = vec![WeightVector::zero(reference); m];
    for g in 0..samples[0].grades.len() {
        for i in 0..samples[0].grades[g].len() {
            let rhs: Vec<Rational> = samples.iter().map(|s| s.grades[g][i].clone()).collect();
            let sol = solve(&rows, &rhs, m).expect("Vandermonde matrix is invertible");
            for (k, v) in sol.into_iter().enumerate() {
                out[k].grades[g][i] = v;
            }
        }
    }
    Ok(out)
}

/// Splits `x ∈ Π(P)` into homogeneous parts through the Minkowski map.
pub fn graded_components(x: &AlgebraElement, reference: &Polytope) -> Result<GradedParts> {
    let d = x.ambient_dim() as i64;
    let first: Vec<i64> = (1..=d + 1).collect();
    let second: Vec<i64> = (2..=d + 2).collect();
    let weights = vandermonde(x, reference, &first)?;
    let unique = vandermonde(x, reference, &second)? == weights;
    let mut components = vec![AlgebraElement::zero(x.ambient_dim()); (d + 1) as usize];
    for (q, c) in x.terms() {
        for (k, rep) in graded_representatives(q)?.into_iter().enumerate() {
            components[k] = &components[k] + &rep.to_element()?.scale(c);
        }
    }
    Ok(GradedParts { weights, components, unique })
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        while m.is_multiple_of(p) {
            out.push(p);
            m /= p;
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// An element `h` with `m h = ⟦P⟧ - 1`, with integer coefficients.
///
/// For each prime factor `q` of `m`, pick `N = q^e > d + 1` and rewrite
/// `⟦B⟧ - 1 = Σ_{i=1}^{d} C(N, i) (⟦B/N⟧ - 1)^i`; every `C(N, i)` with
/// `i <= d` is divisible by `q`.
pub fn divide_class(p: &Polytope, m: u64) -> Result<AlgebraElement> {
    if m == 0 {
        return Err(PolyError::InvalidDivisor("0".into()));
    }
    if p.is_empty() {
        return Err(PolyError::EmptyInput);
    }
    let d = p.ambient_dim();
    let mut f = AugmentationSeries::augmentation(p).coeffs;
    let mut base = p.clone();
    for q in prime_factors(m) {
        let mut n = q;
        while n <= d as u64 + 1 {
            n *= q;
        }
        base = base.dilate(&Rational::new(1.into(), n.into()))?;
        let s = AugmentationSeries::augmentation(&base);
        let mut g = vec![Rational::zero(); d + 1];
        for (i, c) in g.iter_mut().enumerate().skip(1) {
            *c = Rational::new(binomial(n, i as u64), q.into());
            debug_assert!(c.is_integer());
        }
        let g = AugmentationSeries::compose(&g, &s);
        // f(q g) / q = Σ_i f_i q^{i-1} g^i.
        let scaled: Vec<Rational> = f
            .iter()
            .enumerate()
            .map(|(i, c)| if i == 0 { c.clone() } else { c * pow(&int(q as i64), i as u32 - 1) })
            .collect();
        debug_assert!(scaled[0].is_zero());
        f = AugmentationSeries::compose(&scaled, &g).coeffs;
    }
    AugmentationSeries { base, coeffs: f }.to_element()
}

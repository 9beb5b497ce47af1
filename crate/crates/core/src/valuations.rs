//! Mixed volumes, volume polynomials, lattice point counts and Ehrhart data.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::AlgebraElement;
use crate::error::{PolyError, Result};
use crate::grading::log_class;
use crate::linalg::solve;
use crate::polytope::{minkowski_sum_all, Polytope};
use crate::rational::{binomial, factorial, int, pow, Rational};
use crate::volume::full_volume;
use crate::weights::{common_reference, minkowski_map, DEFAULT_SEED};

/// Largest lattice box scanned by [`lattice_count`].
pub const DEFAULT_MAX_BOX: u64 = 2_000_000;
/// Largest number of coefficients in a volume polynomial.
pub const DEFAULT_MAX_COEFFICIENTS: usize = 500;

fn check_arity(bodies: &[Polytope]) -> Result<usize> {
    let d = bodies.first().ok_or(PolyError::EmptyInput)?.ambient_dim();
    if bodies.len() != d {
        return Err(PolyError::ArityError { expected: d, found: bodies.len() });
    }
    for p in bodies {
        if p.ambient_dim() != d {
            return Err(PolyError::DimensionMismatch { expected: d, found: p.ambient_dim() });
        }
        if p.is_empty() {
            return Err(PolyError::EmptyInput);
        }
    }
    Ok(d)
}

/// `V(P_1, …, P_d) = (1/d!) Σ_{S ⊆ [d]} (-1)^{d-|S|} Vol(Σ_{i∈S} P_i)`.
pub fn mixed_volume_polarization(bodies: &[Polytope]) -> Result<Rational> {
    let d = check_arity(bodies)?;
    let mut total = Rational::zero();
    for mask in 1usize..(1 << d) {
        let parts: Vec<Polytope> =
            (0..d).filter(|i| mask >> i & 1 == 1).map(|i| bodies[i].clone()).collect();
        let vol = full_volume(&minkowski_sum_all(d, &parts)?);
        if (d - parts.len()).is_multiple_of(2) {
            total += vol;
        } else {
            total -= vol;
        }
    }
    Ok(total / Rational::from_integer(factorial(d as u64)))
}

/// `V(P_1, …, P_d) = Vol_d(p_1 ⋯ p_d) / d!` with `p_i = log ⟦P_i⟧`, the
/// volume read off the top grade of the Minkowski map.
pub fn mixed_volume_algebra(bodies: &[Polytope], reference: Option<&Polytope>) -> Result<Rational> {
    let d = check_arity(bodies)?;
    let owned;
    let r = match reference {
        Some(r) => r,
        None => {
            owned = common_reference(bodies, DEFAULT_SEED)?.polytope;
            &owned
        }
    };
    let mut prod = AlgebraElement::one(d);
    for p in bodies {
        prod = prod.multiply(&log_class(p)?)?;
    }
    let phi = minkowski_map(&prod, r)?;
    Ok(phi.volume() / Rational::from_integer(factorial(d as u64)))
}

/// `Vol(λ_1 P_1 + ⋯ + λ_m P_m) = Σ λ_{i_1} ⋯ λ_{i_d} V(P_{i_1}, …, P_{i_d})`
/// with the sum over `{1..m}^d`, stored by sorted multiset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumePolynomial {
    pub dim: usize,
    pub variables: usize,
    pub coefficients: BTreeMap<Vec<usize>, Rational>,
}

impl VolumePolynomial {
    /// Number of index tuples giving the multiset.
    fn multiplicity(&self, multiset: &[usize]) -> Rational {
        let mut counts = BTreeMap::new();
        for i in multiset {
            *counts.entry(i).or_insert(0u64) += 1;
        }
        let denom = counts.values().fold(BigInt::one(), |acc, &c| acc * factorial(c));
        Rational::new(factorial(self.dim as u64), denom)
    }

    pub fn evaluate(&self, lambda: &[Rational]) -> Result<Rational> {
        if lambda.len() != self.variables {
            return Err(PolyError::ArityError { expected: self.variables, found: lambda.len() });
        }
        let mut total = Rational::zero();
        for (ms, v) in &self.coefficients {
            let mono = ms.iter().fold(Rational::one(), |acc, &i| acc * &lambda[i]);
            total += self.multiplicity(ms) * mono * v;
        }
        Ok(total)
    }

    /// Coefficients in the monomial basis, keyed by exponent vectors.
    pub fn monomials(&self) -> BTreeMap<Vec<u32>, Rational> {
        let mut out = BTreeMap::new();
        for (ms, v) in &self.coefficients {
            let mut exps = vec![0u32; self.variables];
            for &i in ms {
                exps[i] += 1;
            }
            if !v.is_zero() {
                out.insert(exps, self.multiplicity(ms) * v);
            }
        }
        out
    }
}

fn multisets(m: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i, m, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, d, &mut Vec::new(), &mut out);
    out
}

pub fn volume_polynomial(bodies: &[Polytope]) -> Result<VolumePolynomial> {
    let d = bodies.first().ok_or(PolyError::EmptyInput)?.ambient_dim();
    let m = bodies.len();
    let count = binomial((m + d - 1) as u64, d as u64);
    if count > BigInt::from(DEFAULT_MAX_COEFFICIENTS) {
        return Err(PolyError::TooLarge(format!("{count} mixed volumes")));
    }
    let mut coefficients = BTreeMap::new();
    for ms in multisets(m, d) {
        let tuple: Vec<Polytope> = ms.iter().map(|&i| bodies[i].clone()).collect();
        coefficients.insert(ms, mixed_volume_polarization(&tuple)?);
    }
    Ok(VolumePolynomial { dim: d, variables: m, coefficients })
}

/// `|P ∩ Z^d|` by scanning the bounding box.
pub fn lattice_count(p: &Polytope) -> Result<u64> {
    lattice_count_with_limit(p, DEFAULT_MAX_BOX)
}

pub fn lattice_count_with_limit(p: &Polytope, max_box: u64) -> Result<u64> {
    if p.is_empty() {
        return Ok(0);
    }
    let d = p.ambient_dim();
    let mut lo = Vec::with_capacity(d);
    let mut hi = Vec::with_capacity(d);
    let mut size: u64 = 1;
    for i in 0..d {
        let min = p.vertices().iter().map(|v| &v[i]).min().expect("nonempty").ceil().to_integer();
        let max = p.vertices().iter().map(|v| &v[i]).max().expect("nonempty").floor().to_integer();
        if max < min {
            return Ok(0);
        }
        let span = (&max - &min + 1u32).to_u64().unwrap_or(u64::MAX);
        size = size.saturating_mul(span);
        if size > max_box {
            return Err(PolyError::TooLarge(format!("lattice box exceeds {max_box} points")));
        }
        lo.push(min);
        hi.push(max);
    }
    let mut count = 0;
    let mut cur = lo.clone();
    loop {
        let x: Vec<Rational> = cur.iter().cloned().map(Rational::from_integer).collect();
        if p.contains(&x) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == d {
                return Ok(count);
            }
            if cur[i] < hi[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = lo[i].clone();
            i += 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhrhartData {
    pub polytope: Polytope,
    /// `E(n)` for `n = 0..=d`.
    pub counts: Vec<u64>,
    /// `E(n) = Σ_i C(n, i) f_i`.
    pub binomial: Vec<Rational>,
    /// `E(n) = Σ_k c_k n^k`.
    pub monomial: Vec<Rational>,
    /// `(n, predicted, counted)` at `n = d+1, d+2`.
    pub checks: Vec<(u64, Rational, u64)>,
}

impl EhrhartData {
    pub fn predict(&self, n: u64) -> Rational {
        self.binomial
            .iter()
            .enumerate()
            .map(|(i, f)| Rational::from_integer(binomial(n, i as u64)) * f)
            .sum()
    }

    pub fn consistent(&self) -> bool {
        self.checks.iter().all(|(_, p, c)| p == &int(*c as i64))
            && self.binomial.iter().all(Rational::is_integer)
            && self.counts.first() == Some(&1)
    }
}

/// Ehrhart data of a lattice polytope, of degree `d = ambient dimension`.
pub fn ehrhart(p: &Polytope) -> Result<EhrhartData> {
    if p.is_empty() {
        return Err(PolyError::EmptyInput);
    }
    if p.vertices().iter().flatten().any(|x| !x.is_integer()) {
        return Err(PolyError::NotLattice);
    }
    let d = p.ambient_dim();
    let count = |n: u64| lattice_count(&p.dilate(&int(n as i64))?);
    let counts = (0..=d as u64).map(count).collect::<Result<Vec<_>>>()?;
    let binomial_coeffs: Vec<Rational> = (0..=d)
        .map(|i| {
            (0..=i)
                .map(|j| {
                    let sign = if (i - j) % 2 == 0 { 1 } else { -1 };
                    Rational::from_integer(binomial(i as u64, j as u64) * sign * counts[j])
                })
                .sum()
        })
        .collect();
    let samples: Vec<Rational> = counts.iter().map(|&c| int(c as i64)).collect();
    let monomial = homogeneous_parts(&samples, d)?;
    let mut data = EhrhartData {
        polytope: p.clone(),
        counts,
        binomial: binomial_coeffs,
        monomial,
        checks: Vec::new(),
    };
    for n in [d as u64 + 1, d as u64 + 2] {
        data.checks.push((n, data.predict(n), count(n)?));
    }
    Ok(data)
}

/// Splits a polynomial valuation sampled at `n = 0..=d` into its homogeneous
/// parts, i.e. the coefficients of `n^0, …, n^d`.
pub fn homogeneous_parts(samples: &[Rational], d: usize) -> Result<Vec<Rational>> {
    if samples.len() < d + 1 {
        return Err(PolyError::NeedMoreSamples { needed: d + 1, found: samples.len() });
    }
    let rows: Vec<Vec<Rational>> =
        (0..=d).map(|n| (0..=d).map(|k| pow(&int(n as i64), k as u32)).collect()).collect();
    Ok(solve(&rows, &samples[..=d], d + 1).expect("Vandermonde matrix is invertible"))
}

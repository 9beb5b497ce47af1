//! Exact zero test for polytopal simple functions.
//!
//! A simple function is constant on every relatively open cell of the
//! arrangement formed by the facet and affine-hull hyperplanes of its terms.
//! We visit one rational sample point per cell by slicing along the first
//! coordinate: every cell projects to an interval whose endpoints are values
//! of `x_1` on flats of the arrangement where `x_1` is constant, so sampling
//! those critical values and the midpoints between them, then recursing into
//! each slice, reaches every cell. Only cells inside the bounding box of the
//! support are visited, since everything outside evaluates to zero.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::error::{PolyError, Result};
use crate::linalg::solve;
use crate::polytope::{next_combination, Polytope};
use crate::rational::{int, primitive_lex_positive, Rational, RationalVector};

/// Default limit on the number of distinct hyperplanes.
pub const DEFAULT_MAX_HYPERPLANES: usize = 64;

/// Hyperplane `normal · x = offset` with a primitive, lexicographically
/// positive normal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Hyp {
    normal: RationalVector,
    offset: Rational,
}

fn canonical(normal: &[Rational], offset: &Rational) -> Option<Hyp> {
    let p = primitive_lex_positive(normal);
    let (i, first) = normal.iter().enumerate().find(|(_, x)| !x.is_zero())?;
    let factor = &p[i] / first;
    Some(Hyp { normal: p, offset: offset * factor })
}

/// Distinct hyperplanes supporting the facets and affine hulls of the terms.
pub fn arrangement_size(terms: &[&Polytope]) -> usize {
    collect_hyperplanes(terms).len()
}

fn collect_hyperplanes(terms: &[&Polytope]) -> Vec<Hyp> {
    let mut set = BTreeSet::new();
    for q in terms {
        for h in q.facets() {
            set.extend(canonical(&h.normal, &h.offset));
        }
        for h in q.equations() {
            set.extend(canonical(&h.normal, &h.offset));
        }
    }
    set.into_iter().collect()
}

/// Returns true iff `Σ coeff_i [Q_i]` vanishes at every point.
pub fn is_zero_function(
    terms: &[(&Polytope, &Rational)],
    max_hyperplanes: usize,
) -> Result<bool> {
    let live: Vec<(&Polytope, &Rational)> =
        terms.iter().copied().filter(|(p, c)| !p.is_empty() && !c.is_zero()).collect();
    let Some((first, _)) = live.first() else {
        return Ok(true);
    };
    let d = first.ambient_dim();
    let polys: Vec<&Polytope> = live.iter().map(|(p, _)| *p).collect();
    let hyps = collect_hyperplanes(&polys);
    if hyps.len() > max_hyperplanes {
        return Err(PolyError::ArrangementTooLarge { count: hyps.len(), limit: max_hyperplanes });
    }
    let mut lo: RationalVector = first.vertices()[0].clone();
    let mut hi = lo.clone();
    for p in &polys {
        for v in p.vertices() {
            for i in 0..d {
                if v[i] < lo[i] {
                    lo[i] = v[i].clone();
                }
                if v[i] > hi[i] {
                    hi[i] = v[i].clone();
                }
            }
        }
    }
    let eval = |x: &[Rational]| -> bool {
        let mut acc = Rational::zero();
        for (p, c) in &live {
            if p.contains(x) {
                acc += *c;
            }
        }
        acc.is_zero()
    };
    let mut prefix = Vec::with_capacity(d);
    Ok(sweep(&hyps, &lo, &hi, &mut prefix, &eval))
}

/// Recursively samples the arrangement in the remaining coordinates
/// `prefix.len()..d`. Returns false as soon as a nonzero value is found.
fn sweep(
    hyps: &[Hyp],
    lo: &[Rational],
    hi: &[Rational],
    prefix: &mut Vec<Rational>,
    eval: &dyn Fn(&[Rational]) -> bool,
) -> bool {
    let level = prefix.len();
    if level == lo.len() {
        return eval(prefix);
    }
    let k = lo.len() - level;
    let crit = critical_values(hyps, k);
    let (a, b) = (&lo[level], &hi[level]);
    let mut values: Vec<Rational> = crit.into_iter().filter(|t| t >= a && t <= b).collect();
    values.push(a.clone());
    values.push(b.clone());
    values.sort();
    values.dedup();
    let mut samples = Vec::with_capacity(2 * values.len());
    for (i, t) in values.iter().enumerate() {
        samples.push(t.clone());
        if let Some(next) = values.get(i + 1) {
            samples.push((t + next) / int(2));
        }
    }
    for t in samples {
        let sliced = slice(hyps, &t);
        prefix.push(t);
        let ok = sweep(&sliced, lo, hi, prefix, eval);
        prefix.pop();
        if !ok {
            return false;
        }
    }
    true
}

/// Restriction of the arrangement to `x_1 = t`, in the remaining coordinates.
fn slice(hyps: &[Hyp], t: &Rational) -> Vec<Hyp> {
    let mut out = BTreeSet::new();
    for h in hyps {
        let rest = &h.normal[1..];
        if rest.iter().all(Zero::is_zero) {
            continue;
        }
        let offset = &h.offset - &h.normal[0] * t;
        out.extend(canonical(rest, &offset));
    }
    out.into_iter().collect()
}

/// Values of the first coordinate on flats where it is constant.
///
/// Hyperplanes are grouped by normal direction. For every independent set
/// `S` of at most `k` directions with `e_1 ∈ span(S)`, writing
/// `e_1 = Σ λ_i a_i` gives `x_1 = Σ λ_i b_i` on each flat obtained by picking
/// one hyperplane per direction.
fn critical_values(hyps: &[Hyp], k: usize) -> BTreeSet<Rational> {
    let mut classes: BTreeMap<&RationalVector, Vec<&Rational>> = BTreeMap::new();
    for h in hyps {
        classes.entry(&h.normal).or_default().push(&h.offset);
    }
    let dirs: Vec<(&RationalVector, Vec<&Rational>)> = classes.into_iter().collect();
    let mut e1 = vec![Rational::zero(); k];
    e1[0] = Rational::one();
    let mut out = BTreeSet::new();
    for size in 1..=k.min(dirs.len()) {
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            // Solve Σ λ_i a_i = e_1 (columns a_i).
            let rows: Vec<RationalVector> =
                (0..k).map(|j| subset.iter().map(|&i| dirs[i].0[j].clone()).collect()).collect();
            if let Some(lambda) = solve(&rows, &e1, size) {
                let independent = crate::linalg::rank(
                    &subset.iter().map(|&i| dirs[i].0.clone()).collect::<Vec<_>>(),
                    k,
                ) == size;
                if independent && lambda.iter().all(|l| !l.is_zero()) {
                    let mut partial = vec![Rational::zero()];
                    for (slot, &i) in subset.iter().enumerate() {
                        let mut next = Vec::new();
                        for acc in &partial {
                            for b in &dirs[i].1 {
                                next.push(acc + &lambda[slot] * *b);
                            }
                        }
                        next.sort();
                        next.dedup();
                        partial = next;
                    }
                    out.extend(partial);
                }
            }
            if !next_combination(&mut subset, dirs.len()) {
                break;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::convex_hull;
    use crate::rational::{int, vector};

    fn boxed(lo: &[i64], hi: &[i64]) -> Polytope {
        let d = lo.len();
        let mut pts = Vec::new();
        for mask in 0..(1usize << d) {
            pts.push((0..d).map(|i| int(if mask >> i & 1 == 1 { hi[i] } else { lo[i] })).collect());
        }
        convex_hull(&pts).unwrap()
    }

    #[test]
    fn inclusion_exclusion_of_boxes() {
        let p = boxed(&[0, 0], &[2, 2]);
        let q = boxed(&[1, 1], &[3, 3]);
        let union_minus = [
            (&p, &int(1)),
            (&q, &int(1)),
            (&boxed(&[1, 1], &[2, 2]), &int(-1)),
        ];
        // [P] + [Q] - [P∩Q] is not zero (it is the indicator of the union).
        assert!(!is_zero_function(&union_minus, 64).unwrap());
        let segment = convex_hull(&[vector(&[0]), vector(&[1])]).unwrap();
        let a = convex_hull(&[vector(&[0])]).unwrap();
        assert!(!is_zero_function(&[(&segment, &int(1)), (&a, &int(-1))], 64).unwrap());
    }

    #[test]
    fn detects_lower_dimensional_differences() {
        // [square] - [square] + [diagonal] is nonzero only on a segment.
        let sq = Polytope::cube(2);
        let diag = convex_hull(&[vector(&[0, 0]), vector(&[1, 1])]).unwrap();
        assert!(!is_zero_function(&[(&sq, &int(1)), (&diag, &int(1)), (&sq, &int(-1))], 64).unwrap());
        // A point inside a tilted segment.
        let pt = convex_hull(&[vector(&[1, 2])]).unwrap();
        let seg = convex_hull(&[vector(&[0, 1]), vector(&[2, 3])]).unwrap();
        let terms = [(&seg, &int(1)), (&seg, &int(-1)), (&pt, &int(1))];
        assert!(!is_zero_function(&terms, 64).unwrap());
    }

    #[test]
    fn limit_is_enforced() {
        let sq = Polytope::cube(2);
        assert!(matches!(
            is_zero_function(&[(&sq, &int(1))], 2),
            Err(PolyError::ArrangementTooLarge { count: 4, limit: 2 })
        ));
    }
}

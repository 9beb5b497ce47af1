//! Dense exact linear algebra over the rationals and the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{dot, primitive, scale, sub, Rational, RationalVector};

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[RationalVector], ncols: usize) -> (Vec<RationalVector>, Vec<usize>) {
    let mut m: Vec<RationalVector> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..ncols {
                    if !m[r][j].is_zero() {
                        let t = &f * &m[r][j];
                        m[i][j] -= t;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[RationalVector], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{x : A x = 0}` where `A` has the given rows.
pub fn nullspace(rows: &[RationalVector], ncols: usize) -> Vec<RationalVector> {
    let (r, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Some solution of `A x = b`, if one exists.
pub fn solve(rows: &[RationalVector], rhs: &[Rational], ncols: usize) -> Option<RationalVector> {
    let aug: Vec<RationalVector> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut v = r.clone();
            v.push(b.clone());
            v
        })
        .collect();
    let (r, pivots) = rref(&aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

pub fn determinant(m: &[RationalVector]) -> Rational {
    let n = m.len();
    let mut a: Vec<RationalVector> = m.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det *= &pivot;
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let f = &a[i][c] / &pivot;
                for j in c..n {
                    let t = &f * &a[c][j];
                    a[i][j] -= t;
                }
            }
        }
    }
    det
}

/// Coordinates of `v` with respect to the linearly independent `basis`
/// (`v` must lie in their span).
pub fn coordinates(basis: &[RationalVector], v: &[Rational]) -> Option<RationalVector> {
    let n = v.len();
    let k = basis.len();
    // Columns are basis vectors: solve sum c_i b_i = v.
    let rows: Vec<RationalVector> = (0..n)
        .map(|j| basis.iter().map(|b| b[j].clone()).collect())
        .collect();
    solve(&rows, v, k)
}

/// Orthogonal projection of `v` onto the span of `basis`.
pub fn project_onto(basis: &[RationalVector], v: &[Rational]) -> RationalVector {
    let k = basis.len();
    let n = v.len();
    if k == 0 {
        return vec![Rational::zero(); n];
    }
    let gram: Vec<RationalVector> = basis
        .iter()
        .map(|a| basis.iter().map(|b| dot(a, b)).collect())
        .collect();
    let rhs: Vec<Rational> = basis.iter().map(|b| dot(b, v)).collect();
    let y = solve(&gram, &rhs, k).expect("basis must be independent");
    let mut out = vec![Rational::zero(); n];
    for (c, b) in y.iter().zip(basis) {
        for (o, x) in out.iter_mut().zip(b) {
            *o += c * x;
        }
    }
    out
}

/// Gram–Schmidt without normalization. Dependent vectors are dropped.
pub fn gram_schmidt(vectors: &[RationalVector]) -> Vec<RationalVector> {
    let mut out: Vec<RationalVector> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for u in &out {
            let c = dot(&w, u) / dot(u, u);
            w = sub(&w, &scale(u, &c));
        }
        if !crate::rational::is_zero_vector(&w) {
            out.push(w);
        }
    }
    out
}

/// Lattice basis of `{x in Z^n : A x = 0}` for an integer matrix `A`, via
/// unimodular column reduction.
pub fn integer_kernel(rows: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    // u is stored column-major: u[c] is column c.
    let mut col = 0;
    for r in 0..a.len() {
        if col == n {
            break;
        }
        loop {
            let nz: Vec<usize> = (col..n).filter(|&c| !a[r][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let &best = nz.iter().min_by_key(|&&c| a[r][c].abs()).unwrap();
            swap_columns(&mut a, &mut u, col, best);
            if nz.len() == 1 {
                col += 1;
                break;
            }
            for c in col + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let q = a[r][c].div_floor(&a[r][col]);
                for row in a.iter_mut() {
                    let t = &q * &row[col];
                    row[c] -= t;
                }
                let t: Vec<BigInt> = u[col].iter().map(|x| &q * x).collect();
                for (x, y) in u[c].iter_mut().zip(t) {
                    *x -= y;
                }
            }
        }
    }
    u[col..].to_vec()
}

fn swap_columns(a: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], i: usize, j: usize) {
    if i == j {
        return;
    }
    for row in a.iter_mut() {
        row.swap(i, j);
    }
    u.swap(i, j);
}

/// Basis of the lattice `Z^n ∩ span(basis)`.
pub fn saturated_lattice_basis(basis: &[RationalVector], n: usize) -> Vec<RationalVector> {
    if basis.is_empty() {
        return Vec::new();
    }
    let complement = nullspace(basis, n);
    let int_rows: Vec<Vec<BigInt>> = complement
        .iter()
        .map(|v| primitive(v).into_iter().map(|x| x.to_integer()).collect())
        .collect();
    integer_kernel(&int_rows, n)
        .into_iter()
        .map(|c| c.into_iter().map(Rational::from_integer).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int, vector};

    #[test]
    fn rank_and_nullspace() {
        let rows = vec![vector(&[1, 2, 3]), vector(&[2, 4, 6]), vector(&[0, 1, 1])];
        assert_eq!(rank(&rows, 3), 2);
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 1);
        for r in &rows {
            assert!(dot(r, &ns[0]).is_zero());
        }
    }

    #[test]
    fn solve_and_det() {
        let a = vec![vector(&[2, 1]), vector(&[1, 3])];
        assert_eq!(determinant(&a), int(5));
        let x = solve(&a, &[int(3), int(5)], 2).unwrap();
        assert_eq!(x, vec![frac(4, 5), frac(7, 5)]);
        assert!(solve(&[vector(&[1, 1]), vector(&[2, 2])], &[int(1), int(3)], 2).is_none());
    }

    #[test]
    fn lattice_of_a_line() {
        // Z^2 ∩ span{(2,2)} is generated by (1,1).
        let b = saturated_lattice_basis(&[vector(&[2, 2])], 2);
        assert_eq!(b.len(), 1);
        assert_eq!(crate::rational::primitive_lex_positive(&b[0]), vector(&[1, 1]));
        // Z^3 ∩ {x+y+z=0}: covolume squared is 3.
        let b = saturated_lattice_basis(&[vector(&[1, -1, 0]), vector(&[0, 1, -1])], 3);
        let gram: Vec<RationalVector> =
            b.iter().map(|x| b.iter().map(|y| dot(x, y)).collect()).collect();
        assert_eq!(determinant(&gram), int(3));
    }

    #[test]
    fn gram_schmidt_is_orthogonal() {
        let g = gram_schmidt(&[vector(&[1, 1, 0]), vector(&[1, 0, 1]), vector(&[2, 1, 1])]);
        assert_eq!(g.len(), 2);
        assert!(dot(&g[0], &g[1]).is_zero());
    }
}

//! Volumes in the Euclidean and the lattice-normalized conventions.
//!
//! For a `k`-polytope `P ⊂ Q^d` the lattice volume is the Euclidean
//! `k`-volume divided by the covolume of `Z^d ∩ lin(P)`. It is always
//! rational. The Euclidean volume is `lattice · sqrt(covolume²)`, kept
//! symbolically and rendered to `f64` with an error bound on demand.

use std::collections::HashMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{PolyError, Result};
use crate::linalg::{coordinates, determinant, saturated_lattice_basis};
use crate::polytope::Polytope;
use crate::rational::{dot, factorial, sub, to_f64, Rational, RationalVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    #[default]
    Lattice,
    Euclidean,
}

impl std::str::FromStr for Convention {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lattice" => Ok(Convention::Lattice),
            "euclidean" => Ok(Convention::Euclidean),
            _ => Err(PolyError::Parse(format!("unknown convention {s:?}"))),
        }
    }
}

/// A `k`-dimensional volume: `lattice · sqrt(covolume_sq)` in the Euclidean
/// convention and `lattice` in the lattice convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measure {
    pub dim: usize,
    pub lattice: Rational,
    pub covolume_sq: Rational,
}

impl Measure {
    pub fn zero(dim: usize) -> Self {
        Measure { dim, lattice: Rational::zero(), covolume_sq: Rational::from_integer(1.into()) }
    }

    /// Square of the Euclidean value, exact.
    pub fn euclidean_squared(&self) -> Rational {
        &self.lattice * &self.lattice * &self.covolume_sq
    }

    /// The Euclidean value when it is rational (e.g. full-dimensional
    /// polytopes, or faces parallel to coordinate subspaces).
    pub fn euclidean_exact(&self) -> Option<Rational> {
        rational_sqrt(&self.covolume_sq).map(|r| &self.lattice * r)
    }

    /// Euclidean value as `f64` with an absolute error bound.
    pub fn euclidean_f64(&self) -> (f64, f64) {
        if let Some(q) = self.euclidean_exact() {
            let v = to_f64(&q);
            return (v, v.abs() * f64::EPSILON);
        }
        let v = to_f64(&self.lattice) * to_f64(&self.covolume_sq).sqrt();
        (v, v.abs() * 4.0 * f64::EPSILON)
    }

    pub fn value_f64(&self, convention: Convention) -> f64 {
        match convention {
            Convention::Lattice => to_f64(&self.lattice),
            Convention::Euclidean => self.euclidean_f64().0,
        }
    }
}

pub(crate) fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Affine hull data of a nonempty polytope.
#[derive(Clone, Debug)]
pub struct AffineData {
    pub base_point: RationalVector,
    pub lin_basis: Vec<RationalVector>,
    pub dim: usize,
    pub relint_point: RationalVector,
}

pub fn affine_data(p: &Polytope) -> Result<AffineData> {
    let base = p.vertices().first().ok_or(PolyError::EmptyInput)?.clone();
    Ok(AffineData {
        base_point: base,
        lin_basis: p.lin_basis().to_vec(),
        dim: p.dim() as usize,
        relint_point: p.barycenter().expect("nonempty"),
    })
}

/// Basis of `Z^d ∩ lin(P)`.
pub fn lattice_basis(p: &Polytope) -> Vec<RationalVector> {
    saturated_lattice_basis(p.lin_basis(), p.ambient_dim())
}

/// Squared covolume of `Z^d ∩ lin(P)` (the Gram determinant of a lattice basis).
pub fn covolume_squared(p: &Polytope) -> Rational {
    p.cached_covolume_sq(|| {
        let b = lattice_basis(p);
        let gram: Vec<RationalVector> =
            b.iter().map(|x| b.iter().map(|y| dot(x, y)).collect()).collect();
        if gram.is_empty() {
            Rational::from_integer(1.into())
        } else {
            determinant(&gram)
        }
    })
}

/// Pulling triangulation: each simplex is a list of `dim + 1` vertex indices.
pub fn triangulate(p: &Polytope) -> Vec<Vec<usize>> {
    if p.is_empty() {
        return Vec::new();
    }
    let fl = p.face_lattice();
    let top = fl.faces_of_dim(p.dim())[0];
    let mut memo: HashMap<usize, Vec<Vec<usize>>> = HashMap::new();
    pull(fl, top, &mut memo)
}

fn pull(
    fl: &crate::faces::FaceLattice,
    id: usize,
    memo: &mut HashMap<usize, Vec<Vec<usize>>>,
) -> Vec<Vec<usize>> {
    if let Some(s) = memo.get(&id) {
        return s.clone();
    }
    let face = fl.face(id);
    let out = if face.dim == 0 {
        vec![face.vertices.clone()]
    } else {
        let apex = face.vertices[0];
        let mut out = Vec::new();
        for &sub in fl.subfaces(id) {
            if fl.face(sub).vertices.binary_search(&apex).is_ok() {
                continue;
            }
            for mut s in pull(fl, sub, memo) {
                s.insert(0, apex);
                out.push(s);
            }
        }
        out
    };
    memo.insert(id, out.clone());
    out
}

/// Lattice-normalized `dim(P)`-volume. A point has volume 1.
pub fn lattice_volume(p: &Polytope) -> Result<Rational> {
    if p.is_empty() {
        return Err(PolyError::EmptyInput);
    }
    Ok(p.cached_lattice_volume(|| {
        let k = p.dim() as usize;
        if k == 0 {
            return Rational::from_integer(1.into());
        }
        let basis = lattice_basis(p);
        let v0 = &p.vertices()[0];
        let coords: Vec<RationalVector> = p
            .vertices()
            .iter()
            .map(|v| coordinates(&basis, &sub(v, v0)).expect("vertex lies in aff(P)"))
            .collect();
        let mut total = Rational::zero();
        for simplex in triangulate(p) {
            let base = &coords[simplex[0]];
            let m: Vec<RationalVector> = simplex[1..].iter().map(|&i| sub(&coords[i], base)).collect();
            total += determinant(&m).abs();
        }
        total / Rational::from_integer(factorial(k as u64))
    }))
}

/// `dim(P)`-volume of `P`.
pub fn measure(p: &Polytope) -> Result<Measure> {
    Ok(Measure {
        dim: p.dim().max(0) as usize,
        lattice: lattice_volume(p)?,
        covolume_sq: covolume_squared(p),
    })
}

/// `k`-volume of `P`: zero when `dim P < k`.
pub fn measure_k(p: &Polytope, k: usize) -> Result<Measure> {
    if p.is_empty() {
        return Err(PolyError::EmptyInput);
    }
    if (p.dim() as usize) < k {
        return Ok(Measure::zero(k));
    }
    measure(p)
}

/// Volume value in the requested convention.
#[derive(Clone, Debug, PartialEq)]
pub struct VolumeValue {
    pub exact: Option<Rational>,
    pub approx: f64,
    pub error_bound: f64,
}

pub fn volume(p: &Polytope, convention: Convention) -> Result<VolumeValue> {
    let m = measure(p)?;
    Ok(match convention {
        Convention::Lattice => VolumeValue {
            approx: to_f64(&m.lattice),
            error_bound: to_f64(&m.lattice).abs() * f64::EPSILON,
            exact: Some(m.lattice),
        },
        Convention::Euclidean => {
            let (approx, error_bound) = m.euclidean_f64();
            VolumeValue { exact: m.euclidean_exact(), approx, error_bound }
        }
    })
}

/// Full-dimensional `d`-volume (zero for lower-dimensional or empty input).
pub fn full_volume(p: &Polytope) -> Rational {
    if p.is_full_dimensional() {
        lattice_volume(p).expect("nonempty")
    } else {
        Rational::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::convex_hull;
    use crate::rational::{frac, int, vector};

    /// Simplex volume by the determinant formula, used as the oracle.
    fn simplex_volume(pts: &[RationalVector]) -> Rational {
        let m: Vec<RationalVector> = pts[1..].iter().map(|p| sub(p, &pts[0])).collect();
        determinant(&m).abs() / Rational::from_integer(factorial(m.len() as u64))
    }

    #[test]
    fn unit_cubes_have_volume_one() {
        for d in 1..=4 {
            let c = Polytope::cube(d);
            assert_eq!(lattice_volume(&c).unwrap(), int(1));
            assert_eq!(volume(&c, Convention::Euclidean).unwrap().exact, Some(int(1)));
        }
    }

    #[test]
    fn triangle_half() {
        let pts = vec![vector(&[0, 0]), vector(&[1, 0]), vector(&[0, 1])];
        let t = convex_hull(&pts).unwrap();
        assert_eq!(lattice_volume(&t).unwrap(), simplex_volume(&pts));
        assert_eq!(lattice_volume(&t).unwrap(), frac(1, 2));
    }

    #[test]
    fn diagonal_edge_conventions() {
        let e = convex_hull(&[vector(&[1, 0]), vector(&[0, 1])]).unwrap();
        let m = measure(&e).unwrap();
        assert_eq!(m.lattice, int(1));
        assert_eq!(m.euclidean_squared(), int(2));
        let (v, err) = m.euclidean_f64();
        assert!((v - 2f64.sqrt()).abs() <= err + 1e-15);
        assert_eq!(m.euclidean_exact(), None);
    }

    #[test]
    fn pentagon_by_triangulation() {
        let p = convex_hull(&[
            vector(&[0, 0]),
            vector(&[2, 0]),
            vector(&[3, 2]),
            vector(&[1, 3]),
            vector(&[0, 1]),
        ])
        .unwrap();
        // Shoelace oracle.
        let vs = [(0, 0), (2, 0), (3, 2), (1, 3), (0, 1)];
        let mut twice = 0i64;
        for i in 0..vs.len() {
            let (x1, y1) = vs[i];
            let (x2, y2) = vs[(i + 1) % vs.len()];
            twice += x1 * y2 - x2 * y1;
        }
        assert_eq!(lattice_volume(&p).unwrap(), frac(twice.abs(), 2));
    }

    #[test]
    fn tilted_triangle_in_space() {
        let t = convex_hull(&[vector(&[1, 0, 0]), vector(&[0, 1, 0]), vector(&[0, 0, 1])]).unwrap();
        assert_eq!(t.dim(), 2);
        // Unimodular in its lattice plane.
        assert_eq!(lattice_volume(&t).unwrap(), frac(1, 2));
        assert_eq!(covolume_squared(&t), int(3));
        // Euclidean area sqrt(3)/2.
        let (v, _) = measure(&t).unwrap().euclidean_f64();
        assert!((v - 3f64.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn affine_data_of_segment() {
        let s = convex_hull(&[vector(&[0, 0]), vector(&[2, 2])]).unwrap();
        let a = affine_data(&s).unwrap();
        assert_eq!(a.dim, 1);
        assert_eq!(a.relint_point, vector(&[1, 1]));
        assert_eq!(crate::rational::primitive(&a.lin_basis[0]), vector(&[1, 1]));
        let pt = convex_hull(&[vector(&[3, 4])]).unwrap();
        assert_eq!(affine_data(&pt).unwrap().dim, 0);
        assert!(affine_data(&pt).unwrap().lin_basis.is_empty());
        assert!(affine_data(&Polytope::empty(2)).is_err());
    }
}

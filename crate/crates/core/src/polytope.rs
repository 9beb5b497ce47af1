//! Polytopes with canonical V- and H-representations.
//!
//! Every polytope is stored with its vertices sorted lexicographically, its
//! facet inequalities `a·x <= b` with `a` a primitive integer vector inside
//! `lin(P)`, and the equations of its affine hull in reduced echelon form with
//! primitive, lexicographically positive normals. Two polytopes are equal
//! exactly when their vertex lists agree.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use num_traits::{One, Signed, Zero};

use crate::error::{PolyError, Result};
use crate::faces::FaceLattice;
use crate::linalg::{nullspace, rank, rref, solve};
use crate::rational::{
    add, dot, is_zero_vector, neg, primitive, primitive_lex_positive, scale, sub, Rational,
    RationalVector,
};

/// Default maximum ambient dimension accepted by [`convex_hull`].
pub const DEFAULT_MAX_DIM: usize = 4;

/// Closed halfspace `normal · x <= offset`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Halfspace {
    pub normal: RationalVector,
    pub offset: Rational,
}

/// Hyperplane `normal · x = offset`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperplane {
    pub normal: RationalVector,
    pub offset: Rational,
}

impl Halfspace {
    pub fn contains(&self, x: &[Rational]) -> bool {
        dot(&self.normal, x) <= self.offset
    }
}

impl Hyperplane {
    pub fn contains(&self, x: &[Rational]) -> bool {
        dot(&self.normal, x) == self.offset
    }
}

pub(crate) struct Inner {
    ambient_dim: usize,
    vertices: Vec<RationalVector>,
    facets: Vec<Halfspace>,
    equations: Vec<Hyperplane>,
    /// Reduced echelon basis of `lin(P)`.
    lin_basis: Vec<RationalVector>,
    /// For each facet, the sorted indices of the vertices on it.
    incidence: Vec<Vec<usize>>,
    dim: isize,
    lattice: OnceLock<FaceLattice>,
    lattice_volume: OnceLock<Rational>,
    covolume_sq: OnceLock<Rational>,
}

/// A convex polytope in `Q^d`, possibly empty or lower-dimensional.
///
/// Cloning is cheap; the data is shared and immutable.
#[derive(Clone)]
pub struct Polytope {
    inner: Arc<Inner>,
}

impl Polytope {
    pub fn empty(ambient_dim: usize) -> Self {
        Self::from_inner(Inner {
            ambient_dim,
            vertices: Vec::new(),
            facets: Vec::new(),
            equations: Vec::new(),
            lin_basis: Vec::new(),
            incidence: Vec::new(),
            dim: -1,
            lattice: OnceLock::new(),
            lattice_volume: OnceLock::new(),
            covolume_sq: OnceLock::new(),
        })
    }

    pub fn point(p: RationalVector) -> Self {
        build(p.len(), vec![p], None)
    }

    pub fn origin(ambient_dim: usize) -> Self {
        Self::point(vec![Rational::zero(); ambient_dim])
    }

    /// Axis-parallel box `[lo_1, hi_1] × … × [lo_d, hi_d]`.
    pub fn cube(d: usize) -> Self {
        let mut pts = Vec::with_capacity(1 << d);
        for mask in 0..(1usize << d) {
            pts.push(
                (0..d)
                    .map(|i| if mask >> i & 1 == 1 { Rational::one() } else { Rational::zero() })
                    .collect(),
            );
        }
        let dirs = (0..d).map(|i| crate::rational::unit(d, i)).collect();
        build(d, pts, Some(dirs))
    }

    fn from_inner(inner: Inner) -> Self {
        Polytope { inner: Arc::new(inner) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.inner.ambient_dim
    }

    /// Dimension of the polytope; `-1` for the empty set.
    pub fn dim(&self) -> isize {
        self.inner.dim
    }

    pub fn is_empty(&self) -> bool {
        self.inner.vertices.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.inner.dim == self.inner.ambient_dim as isize
    }

    pub fn vertices(&self) -> &[RationalVector] {
        &self.inner.vertices
    }

    pub fn facets(&self) -> &[Halfspace] {
        &self.inner.facets
    }

    pub fn equations(&self) -> &[Hyperplane] {
        &self.inner.equations
    }

    pub fn lin_basis(&self) -> &[RationalVector] {
        &self.inner.lin_basis
    }

    /// Sorted vertex indices on each facet, parallel to [`Polytope::facets`].
    pub fn facet_incidence(&self) -> &[Vec<usize>] {
        &self.inner.incidence
    }

    pub fn face_lattice(&self) -> &FaceLattice {
        self.inner.lattice.get_or_init(|| FaceLattice::compute(self))
    }

    pub(crate) fn cached_lattice_volume(&self, f: impl FnOnce() -> Rational) -> Rational {
        self.inner.lattice_volume.get_or_init(f).clone()
    }

    pub(crate) fn cached_covolume_sq(&self, f: impl FnOnce() -> Rational) -> Rational {
        self.inner.covolume_sq.get_or_init(f).clone()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        !self.is_empty()
            && self.inner.equations.iter().all(|h| h.contains(x))
            && self.inner.facets.iter().all(|h| h.contains(x))
    }

    /// Vertex barycenter, which always lies in the relative interior.
    pub fn barycenter(&self) -> Option<RationalVector> {
        let vs = self.vertices();
        let first = vs.first()?;
        let mut acc = first.clone();
        for v in &vs[1..] {
            acc = add(&acc, v);
        }
        Some(scale(&acc, &Rational::new(1.into(), (vs.len() as i64).into())))
    }

    /// True when every vertex lies on exactly `dim` facets.
    pub fn is_simple(&self) -> bool {
        if self.dim() <= 1 {
            return !self.is_empty();
        }
        let k = self.dim() as usize;
        let mut count = vec![0usize; self.vertices().len()];
        for inc in self.facet_incidence() {
            for &v in inc {
                count[v] += 1;
            }
        }
        count.iter().all(|&c| c == k)
    }

    pub fn translate(&self, t: &[Rational]) -> Polytope {
        if self.is_empty() {
            return self.clone();
        }
        let inner = &self.inner;
        Self::from_inner(Inner {
            ambient_dim: inner.ambient_dim,
            vertices: inner.vertices.iter().map(|v| add(v, t)).collect(),
            facets: inner
                .facets
                .iter()
                .map(|h| Halfspace {
                    normal: h.normal.clone(),
                    offset: &h.offset + dot(&h.normal, t),
                })
                .collect(),
            equations: inner
                .equations
                .iter()
                .map(|h| Hyperplane {
                    normal: h.normal.clone(),
                    offset: &h.offset + dot(&h.normal, t),
                })
                .collect(),
            lin_basis: inner.lin_basis.clone(),
            incidence: inner.incidence.clone(),
            dim: inner.dim,
            lattice: self.shared_lattice(),
            lattice_volume: self.inner.lattice_volume.clone(),
            covolume_sq: self.inner.covolume_sq.clone(),
        })
    }

    /// `λ P` for `λ >= 0`; `0 · P` is the origin.
    pub fn dilate(&self, lambda: &Rational) -> Result<Polytope> {
        if lambda.is_negative() {
            return Err(PolyError::InvalidScale(crate::rational::format_rational(lambda)));
        }
        if self.is_empty() {
            return Ok(self.clone());
        }
        if lambda.is_zero() {
            return Ok(Polytope::origin(self.ambient_dim()));
        }
        if lambda.is_one() {
            return Ok(self.clone());
        }
        let inner = &self.inner;
        let lattice_volume = OnceLock::new();
        if let Some(v) = inner.lattice_volume.get() {
            let _ = lattice_volume.set(v * crate::rational::pow(lambda, inner.dim as u32));
        }
        Ok(Self::from_inner(Inner {
            ambient_dim: inner.ambient_dim,
            vertices: inner.vertices.iter().map(|v| scale(v, lambda)).collect(),
            facets: inner
                .facets
                .iter()
                .map(|h| Halfspace { normal: h.normal.clone(), offset: &h.offset * lambda })
                .collect(),
            equations: inner
                .equations
                .iter()
                .map(|h| Hyperplane { normal: h.normal.clone(), offset: &h.offset * lambda })
                .collect(),
            lin_basis: inner.lin_basis.clone(),
            incidence: inner.incidence.clone(),
            dim: inner.dim,
            lattice: self.shared_lattice(),
            lattice_volume,
            covolume_sq: inner.covolume_sq.clone(),
        }))
    }

    fn shared_lattice(&self) -> OnceLock<FaceLattice> {
        // Translation and positive dilation preserve vertex order and incidences.
        self.inner.lattice.clone()
    }

    /// `-P`.
    pub fn negate(&self) -> Polytope {
        if self.is_empty() {
            return self.clone();
        }
        let pts = self.vertices().iter().map(|v| neg(v)).collect();
        build(self.ambient_dim(), pts, Some(self.edge_directions()))
    }

    /// Image under `x ↦ M x + t`.
    pub fn affine_image(&self, matrix: &[RationalVector], offset: &[Rational]) -> Polytope {
        if self.is_empty() {
            return Polytope::empty(offset.len());
        }
        let pts = self
            .vertices()
            .iter()
            .map(|v| add(&matrix.iter().map(|row| dot(row, v)).collect::<Vec<_>>(), offset))
            .collect();
        build(offset.len(), pts, None)
    }

    /// Directions `w - v` of all edges `[v, w]`.
    pub fn edge_directions(&self) -> Vec<RationalVector> {
        let fl = self.face_lattice();
        fl.faces_of_dim(1)
            .iter()
            .map(|&f| {
                let vs = &fl.face(f).vertices;
                sub(&self.vertices()[vs[1]], &self.vertices()[vs[0]])
            })
            .collect()
    }

    /// Convex hull of a subset of this polytope's vertices forming a face.
    pub fn face_polytope(&self, vertex_ids: &[usize]) -> Polytope {
        if vertex_ids.is_empty() {
            return Polytope::empty(self.ambient_dim());
        }
        if vertex_ids.len() == self.vertices().len() {
            return self.clone();
        }
        let pts: Vec<RationalVector> =
            vertex_ids.iter().map(|&i| self.vertices()[i].clone()).collect();
        if pts.len() <= 3 {
            return build(self.ambient_dim(), pts, None);
        }
        let ids: BTreeSet<usize> = vertex_ids.iter().copied().collect();
        let fl = self.face_lattice();
        let dirs = fl
            .faces_of_dim(1)
            .iter()
            .map(|&f| &fl.face(f).vertices)
            .filter(|e| ids.contains(&e[0]) && ids.contains(&e[1]))
            .map(|e| sub(&self.vertices()[e[1]], &self.vertices()[e[0]]))
            .collect();
        build(self.ambient_dim(), pts, Some(dirs))
    }

    /// The same polytope shifted so that its lexicographically smallest vertex
    /// is the origin.
    pub fn canonical_translate(&self) -> Polytope {
        match self.vertices().first() {
            Some(v0) if !is_zero_vector(v0) => self.translate(&neg(v0)),
            _ => self.clone(),
        }
    }
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.ambient_dim == other.inner.ambient_dim
                && self.inner.vertices == other.inner.vertices)
    }
}

impl Eq for Polytope {}

impl Ord for Polytope {
    fn cmp(&self, other: &Self) -> Ordering {
        self.inner
            .ambient_dim
            .cmp(&other.inner.ambient_dim)
            .then_with(|| self.inner.dim.cmp(&other.inner.dim))
            .then_with(|| self.inner.vertices.cmp(&other.inner.vertices))
    }
}

impl PartialOrd for Polytope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Hash for Polytope {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.inner.ambient_dim.hash(state);
        self.inner.vertices.hash(state);
    }
}

impl fmt::Debug for Polytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{{")?;
        for (i, v) in self.vertices().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", crate::rational::DisplayVector(v))?;
        }
        write!(f, "}}")
    }
}

/// Convex hull of a finite point set, with the default dimension limit.
pub fn convex_hull(points: &[RationalVector]) -> Result<Polytope> {
    convex_hull_with_limit(points, DEFAULT_MAX_DIM)
}

pub fn convex_hull_with_limit(points: &[RationalVector], max_dim: usize) -> Result<Polytope> {
    let first = points.first().ok_or(PolyError::EmptyInput)?;
    let d = first.len();
    if d > max_dim {
        return Err(PolyError::DimensionLimit { dim: d, max: max_dim });
    }
    if let Some(p) = points.iter().find(|p| p.len() != d) {
        return Err(PolyError::DimensionMismatch { expected: d, found: p.len() });
    }
    Ok(build(d, points.to_vec(), None))
}

/// Minkowski sum `P + Q`.
pub fn minkowski_sum(p: &Polytope, q: &Polytope) -> Result<Polytope> {
    if p.ambient_dim() != q.ambient_dim() {
        return Err(PolyError::DimensionMismatch {
            expected: p.ambient_dim(),
            found: q.ambient_dim(),
        });
    }
    if p.is_empty() || q.is_empty() {
        return Ok(Polytope::empty(p.ambient_dim()));
    }
    if q.vertices().len() == 1 {
        return Ok(p.translate(&q.vertices()[0]));
    }
    if p.vertices().len() == 1 {
        return Ok(q.translate(&p.vertices()[0]));
    }
    let mut pts = Vec::with_capacity(p.vertices().len() * q.vertices().len());
    for v in p.vertices() {
        for w in q.vertices() {
            pts.push(add(v, w));
        }
    }
    let mut dirs = p.edge_directions();
    dirs.extend(q.edge_directions());
    Ok(build(p.ambient_dim(), pts, Some(dirs)))
}

/// Minkowski sum of several polytopes.
pub fn minkowski_sum_all(ambient_dim: usize, parts: &[Polytope]) -> Result<Polytope> {
    let mut acc = Polytope::origin(ambient_dim);
    for p in parts {
        acc = minkowski_sum(&acc, p)?;
    }
    Ok(acc)
}

/// Core hull routine. When `edge_dirs` is given, the facets of the hull are
/// known to be spanned by those directions (true for Minkowski sums and
/// faces), which replaces the brute-force search over point subsets.
pub(crate) fn build(
    ambient_dim: usize,
    mut points: Vec<RationalVector>,
    edge_dirs: Option<Vec<RationalVector>>,
) -> Polytope {
    points.sort();
    points.dedup();
    if points.is_empty() {
        return Polytope::empty(ambient_dim);
    }
    let d = ambient_dim;
    let x0 = points[0].clone();
    let diffs: Vec<RationalVector> = points[1..].iter().map(|p| sub(p, &x0)).collect();
    let (lin_basis, pivots) = rref(&diffs, d);
    let k = pivots.len();
    let equations = affine_equations(&lin_basis, &x0, d);

    if k == 0 {
        return Polytope::from_inner(Inner {
            ambient_dim: d,
            vertices: points,
            facets: Vec::new(),
            equations,
            lin_basis,
            incidence: Vec::new(),
            dim: 0,
            lattice: OnceLock::new(),
            lattice_volume: OnceLock::new(),
            covolume_sq: OnceLock::new(),
        });
    }

    let local: Vec<RationalVector> =
        points.iter().map(|p| pivots.iter().map(|&c| p[c].clone()).collect()).collect();

    let local_facets = match edge_dirs {
        Some(dirs) if k >= 2 => {
            let projected: Vec<RationalVector> =
                dirs.iter().map(|v| pivots.iter().map(|&c| v[c].clone()).collect()).collect();
            facets_from_directions(&local, &projected, k)
        }
        _ => facets_brute_force(&local, k),
    };

    // Vertices are the points whose incident facet normals span Q^k.
    let is_vertex: Vec<bool> = (0..points.len())
        .map(|i| {
            let normals: Vec<RationalVector> = local_facets
                .iter()
                .filter(|f| f.tight.contains(&i))
                .map(|f| f.normal.clone())
                .collect();
            rank(&normals, k) == k
        })
        .collect();
    let mut new_index = vec![usize::MAX; points.len()];
    let mut vertices = Vec::new();
    for (i, p) in points.into_iter().enumerate() {
        if is_vertex[i] {
            new_index[i] = vertices.len();
            vertices.push(p);
        }
    }

    let gram: Vec<RationalVector> = lin_basis
        .iter()
        .map(|a| lin_basis.iter().map(|b| dot(a, b)).collect())
        .collect();
    let x0_local: RationalVector = pivots.iter().map(|&c| x0[c].clone()).collect();

    let mut facets: Vec<(Halfspace, Vec<usize>)> = local_facets
        .into_iter()
        .map(|f| {
            // Lift the local functional to a normal inside lin(P).
            let coeffs = solve(&gram, &f.normal, k).expect("lin basis is independent");
            let mut n = vec![Rational::zero(); d];
            for (c, b) in coeffs.iter().zip(&lin_basis) {
                for (x, y) in n.iter_mut().zip(b) {
                    *x += c * y;
                }
            }
            let offset = &f.offset + dot(&n, &x0) - dot(&f.normal, &x0_local);
            let prim = primitive(&n);
            let factor = first_ratio(&prim, &n);
            let tight: Vec<usize> =
                f.tight.iter().filter(|&&i| is_vertex[i]).map(|&i| new_index[i]).collect();
            (Halfspace { normal: prim, offset: offset * factor }, tight)
        })
        .collect();
    facets.sort();

    let (facets, incidence) = facets.into_iter().unzip();
    Polytope::from_inner(Inner {
        ambient_dim: d,
        vertices,
        facets,
        equations,
        lin_basis,
        incidence,
        dim: k as isize,
        lattice: OnceLock::new(),
        lattice_volume: OnceLock::new(),
        covolume_sq: OnceLock::new(),
    })
}

/// `target / source` for parallel vectors with the same orientation.
fn first_ratio(target: &[Rational], source: &[Rational]) -> Rational {
    for (t, s) in target.iter().zip(source) {
        if !s.is_zero() {
            return t / s;
        }
    }
    Rational::one()
}

fn affine_equations(lin_basis: &[RationalVector], x0: &[Rational], d: usize) -> Vec<Hyperplane> {
    let complement = nullspace(lin_basis, d);
    let (rows, _) = rref(&complement, d);
    rows.into_iter()
        .map(|r| {
            let normal = primitive_lex_positive(&r);
            let offset = dot(&normal, x0);
            Hyperplane { normal, offset }
        })
        .collect()
}

struct LocalFacet {
    normal: RationalVector,
    offset: Rational,
    tight: Vec<usize>,
}

/// Evaluates the candidate outer normal `a` and returns a facet if the
/// supporting hyperplane touches an affinely `(k-1)`-dimensional point set.
fn try_facet(points: &[RationalVector], a: &[Rational], k: usize) -> Option<LocalFacet> {
    let values: Vec<Rational> = points.iter().map(|p| dot(a, p)).collect();
    let max = values.iter().max()?.clone();
    let tight: Vec<usize> = (0..points.len()).filter(|&i| values[i] == max).collect();
    let base = &points[tight[0]];
    let diffs: Vec<RationalVector> = tight[1..].iter().map(|&i| sub(&points[i], base)).collect();
    if rank(&diffs, k) + 1 == k {
        Some(LocalFacet { normal: a.to_vec(), offset: max, tight })
    } else {
        None
    }
}

fn facets_brute_force(points: &[RationalVector], k: usize) -> Vec<LocalFacet> {
    let mut found: Vec<LocalFacet> = Vec::new();
    let mut seen: HashSet<RationalVector> = HashSet::new();
    let n = points.len();
    let mut subset: Vec<usize> = (0..k).collect();
    if n < k {
        return found;
    }
    loop {
        let covered = found
            .iter()
            .any(|f| subset.iter().all(|i| f.tight.binary_search(i).is_ok()));
        if !covered {
            let base = &points[subset[0]];
            let diffs: Vec<RationalVector> =
                subset[1..].iter().map(|&i| sub(&points[i], base)).collect();
            let ns = nullspace(&diffs, k);
            if ns.len() == 1 {
                let a = primitive(&ns[0]);
                for cand in [a.clone(), neg(&a)] {
                    if seen.contains(&cand) {
                        continue;
                    }
                    if let Some(f) = try_facet(points, &cand, k) {
                        seen.insert(cand);
                        found.push(f);
                    }
                }
            }
        }
        if !next_combination(&mut subset, n) {
            break;
        }
    }
    found
}

fn facets_from_directions(
    points: &[RationalVector],
    dirs: &[RationalVector],
    k: usize,
) -> Vec<LocalFacet> {
    let mut uniq: Vec<RationalVector> = dirs
        .iter()
        .filter(|v| !is_zero_vector(v))
        .map(|v| primitive_lex_positive(v))
        .collect();
    uniq.sort();
    uniq.dedup();
    let mut found = Vec::new();
    let mut seen: HashSet<RationalVector> = HashSet::new();
    let r = k - 1;
    if uniq.len() < r {
        return facets_brute_force(points, k);
    }
    let mut subset: Vec<usize> = (0..r).collect();
    loop {
        let span: Vec<RationalVector> = subset.iter().map(|&i| uniq[i].clone()).collect();
        let ns = nullspace(&span, k);
        if ns.len() == 1 {
            let a = primitive(&ns[0]);
            for cand in [a.clone(), neg(&a)] {
                if seen.insert(cand.clone()) {
                    if let Some(f) = try_facet(points, &cand, k) {
                        found.push(f);
                    }
                }
            }
        }
        if !next_combination(&mut subset, uniq.len()) {
            break;
        }
    }
    found
}

/// Advances `subset` (strictly increasing indices below `n`) to the next
/// combination in lexicographic order.
pub(crate) fn next_combination(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int, vector};

    fn pts(raw: &[&[i64]]) -> Vec<RationalVector> {
        raw.iter().map(|p| vector(p)).collect()
    }

    #[test]
    fn interior_point_is_dropped() {
        let mut points = pts(&[&[0, 0], &[1, 0], &[0, 1]]);
        points.push(vec![frac(1, 2), frac(1, 4)]);
        let p = convex_hull(&points).unwrap();
        assert_eq!(p.vertices().len(), 3);
        assert_eq!(p.facets().len(), 3);
        assert_eq!(p.dim(), 2);
    }

    #[test]
    fn triangle_facet_normals() {
        let p = convex_hull(&pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap();
        let normals: Vec<RationalVector> = p.facets().iter().map(|h| h.normal.clone()).collect();
        assert!(normals.contains(&vector(&[0, -1])));
        assert!(normals.contains(&vector(&[-1, 0])));
        assert!(normals.contains(&vector(&[1, 1])));
        let offsets: Vec<Rational> = p.facets().iter().map(|h| h.offset.clone()).collect();
        assert!(offsets.contains(&int(1)));
    }

    #[test]
    fn single_point() {
        let p = convex_hull(&pts(&[&[5, 5]])).unwrap();
        assert_eq!(p.dim(), 0);
        assert_eq!(p.equations().len(), 2);
        assert!(p.contains(&vector(&[5, 5])));
        assert!(!p.contains(&vector(&[5, 4])));
    }

    #[test]
    fn errors() {
        assert_eq!(convex_hull(&[]).unwrap_err(), PolyError::EmptyInput);
        let high = vec![vector(&[0, 0, 0, 0, 0])];
        assert!(matches!(convex_hull(&high), Err(PolyError::DimensionLimit { .. })));
        let mixed = vec![vector(&[0, 0]), vector(&[0])];
        assert!(matches!(convex_hull(&mixed), Err(PolyError::DimensionMismatch { .. })));
    }

    #[test]
    fn lower_dimensional_segment() {
        let p = convex_hull(&pts(&[&[0, 0], &[2, 2], &[1, 1]])).unwrap();
        assert_eq!(p.dim(), 1);
        assert_eq!(p.vertices().len(), 2);
        assert_eq!(p.equations().len(), 1);
        assert_eq!(p.equations()[0].normal, vector(&[1, -1]));
        // Facet normals live inside lin(P).
        for h in p.facets() {
            assert_eq!(dot(&h.normal, &vector(&[1, -1])), int(0));
        }
        assert!(p.contains(&vector(&[1, 1])));
        assert!(!p.contains(&vector(&[3, 3])));
        assert!(!p.contains(&vector(&[1, 0])));
    }

    #[test]
    fn sum_matches_brute_force_hull() {
        let sq = Polytope::cube(2);
        let seg = convex_hull(&pts(&[&[0, 0], &[1, 0]])).unwrap();
        let s = minkowski_sum(&sq, &seg).unwrap();
        let expected = convex_hull(&pts(&[&[0, 0], &[2, 0], &[2, 1], &[0, 1]])).unwrap();
        assert_eq!(s, expected);
        assert_eq!(s.facets(), expected.facets());
    }

    #[test]
    fn cube_is_simple() {
        let c = Polytope::cube(3);
        assert_eq!(c.vertices().len(), 8);
        assert_eq!(c.facets().len(), 6);
        assert!(c.is_simple());
    }

    #[test]
    fn dilate_and_translate() {
        let t = convex_hull(&pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap();
        assert_eq!(t.dilate(&int(1)).unwrap(), t);
        assert_eq!(t.dilate(&int(0)).unwrap(), Polytope::origin(2));
        assert!(t.dilate(&int(-1)).is_err());
        let d = t.dilate(&int(2)).unwrap();
        assert_eq!(d, convex_hull(&pts(&[&[0, 0], &[2, 0], &[0, 2]])).unwrap());
        let moved = t.translate(&vector(&[3, -1]));
        assert_eq!(moved.canonical_translate(), t);
    }
}

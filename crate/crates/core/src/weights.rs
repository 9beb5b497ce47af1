//! Frames, frame functionals, the Minkowski map and balanced weights.
//!
//! The reference polytope `P` is simple and full-dimensional. Each nonempty
//! face `F` of `P` gets a frame `U(F)` with `P^U = F`, and a weak summand `Q`
//! of `P` is sent to the vector of values `V_{U(F)}(Q) = Vol_k(Q^U)`. All
//! values are lattice-normalized and exact; Euclidean values are recovered by
//! multiplying with the covolume of the face lattice.

use std::collections::{BTreeMap, HashMap};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::AlgebraElement;
use crate::error::{PolyError, Result};
use crate::faces::{affine_dim, maximizers, witness_direction, Face};
use crate::fan::fan_refines;
use crate::linalg::{coordinates, gram_schmidt, rank, saturated_lattice_basis, solve};
use crate::polytope::{build, convex_hull, minkowski_sum_all, next_combination, Halfspace, Polytope};
use crate::rational::{dot, format_rational, int, norm_squared, scale, sub, to_f64, Rational, RationalVector};
use crate::volume::{covolume_squared, lattice_volume, measure_k, Measure};

/// Seed used when a reference polytope has to be perturbed into a simple one.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// An ordered tuple of pairwise orthogonal directions, not normalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub directions: Vec<RationalVector>,
}

impl Frame {
    pub fn new(directions: Vec<RationalVector>) -> Result<Self> {
        for (i, u) in directions.iter().enumerate() {
            if u.iter().all(Zero::is_zero) {
                return Err(PolyError::Parse("frame direction is zero".into()));
            }
            for w in &directions[..i] {
                if !dot(u, w).is_zero() {
                    return Err(PolyError::Parse("frame directions are not orthogonal".into()));
                }
            }
        }
        Ok(Frame { directions })
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }
}

/// `P^U = (…(P^{u_1})^{u_2}…)^{u_m}`.
pub fn iterated_face(p: &Polytope, frame: &Frame) -> Face {
    let mut ids: Vec<usize> = (0..p.vertices().len()).collect();
    for u in &frame.directions {
        let pts: Vec<RationalVector> = ids.iter().map(|&i| p.vertices()[i].clone()).collect();
        ids = maximizers(&pts, u).into_iter().map(|j| ids[j]).collect();
    }
    let dim = affine_dim(p.vertices(), &ids);
    let witness = p.face_lattice().find(&ids).and_then(|f| witness_direction(p, p.face_lattice().face(f)));
    Face { parent: p.clone(), vertices: ids, dim, witness }
}

/// Frames for every nonempty face of a simple full-dimensional polytope, by
/// Gram–Schmidt over the normals of the facets containing the face (in
/// facet order). Indexed by face id.
pub fn build_frames(p: &Polytope) -> Result<BTreeMap<usize, Frame>> {
    require_reference(p)?;
    let fl = p.face_lattice();
    let mut out = BTreeMap::new();
    for id in fl.nonempty() {
        let face = fl.face(id);
        let normals: Vec<RationalVector> =
            face.facets.iter().map(|&f| p.facets()[f].normal.clone()).collect();
        let frame = Frame { directions: gram_schmidt(&normals) };
        if iterated_face(p, &frame).vertices != face.vertices {
            return Err(PolyError::NotSimple);
        }
        out.insert(id, frame);
    }
    Ok(out)
}

fn require_reference(p: &Polytope) -> Result<()> {
    if !p.is_full_dimensional() {
        return Err(PolyError::NotFullDimensional { dim: p.dim(), ambient: p.ambient_dim() });
    }
    if !p.is_simple() {
        return Err(PolyError::NotSimple);
    }
    Ok(())
}

/// `V_U(Q) = Vol_k(Q^U)` with `k = d - |U|`; zero when `dim Q^U < k`.
pub fn frame_functional(q: &Polytope, frame: &Frame) -> Result<Measure> {
    if q.is_empty() {
        return Err(PolyError::EmptyInput);
    }
    let k = q.ambient_dim().checked_sub(frame.len()).ok_or(PolyError::DimensionMismatch {
        expected: q.ambient_dim(),
        found: frame.len(),
    })?;
    let face = iterated_face(q, frame);
    measure_k(&face.polytope(), k)
}

/// The image of an element under the Minkowski map: for each grade `k`, one
/// lattice-normalized value per `k`-face of the reference, in face-lattice
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    pub reference: Polytope,
    pub grades: Vec<Vec<Rational>>,
}

impl WeightVector {
    pub fn zero(reference: &Polytope) -> Self {
        let fl = reference.face_lattice();
        let grades = (0..=reference.ambient_dim())
            .map(|k| vec![Rational::zero(); fl.faces_of_dim(k as isize).len()])
            .collect();
        WeightVector { reference: reference.clone(), grades }
    }

    pub fn grade(&self, k: usize) -> &[Rational] {
        &self.grades[k]
    }

    pub fn is_zero(&self) -> bool {
        self.grades.iter().flatten().all(Zero::is_zero)
    }

    pub fn grade_is_zero(&self, k: usize) -> bool {
        self.grades[k].iter().all(Zero::is_zero)
    }

    /// The top-grade value: the volume of the element.
    pub fn volume(&self) -> &Rational {
        &self.grades[self.grades.len() - 1][0]
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        WeightVector {
            reference: self.reference.clone(),
            grades: self.grades.iter().map(|g| g.iter().map(|x| x * q).collect()).collect(),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        assert_eq!(self.reference, other.reference, "weight vectors over different references");
        WeightVector {
            reference: self.reference.clone(),
            grades: self
                .grades
                .iter()
                .zip(&other.grades)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(x, y)).collect())
                .collect(),
        }
    }

    /// Only the grade-`k` slice, other grades zeroed.
    pub fn project(&self, k: usize) -> Self {
        let mut out = WeightVector::zero(&self.reference);
        out.grades[k] = self.grades[k].clone();
        out
    }

    /// Euclidean values: each entry times the covolume of its face lattice.
    pub fn euclidean(&self) -> Vec<Vec<f64>> {
        let fl = self.reference.face_lattice();
        self.grades
            .iter()
            .enumerate()
            .map(|(k, g)| {
                fl.faces_of_dim(k as isize)
                    .iter()
                    .zip(g)
                    .map(|(&f, x)| {
                        let face = self.reference.face_polytope(&fl.face(f).vertices);
                        to_f64(x) * to_f64(&covolume_squared(&face)).sqrt()
                    })
                    .collect()
            })
            .collect()
    }

    /// Face keys (sorted vertex indices of the reference) for grade `k`.
    pub fn face_keys(&self, k: usize) -> Vec<Vec<usize>> {
        face_keys(&self.reference, k)
    }
}

pub(crate) fn face_keys(p: &Polytope, k: usize) -> Vec<Vec<usize>> {
    let fl = p.face_lattice();
    fl.faces_of_dim(k as isize).iter().map(|&f| fl.face(f).vertices.clone()).collect()
}

/// `φ(⟦Q⟧)` on a simple full-dimensional reference.
///
/// `Q^{U(F)}` is the face of `Q` selected by any direction in the relative
/// interior of the normal cone of `F`, since the fan of the reference refines
/// that of `Q`; the witness direction of `F` is used.
pub fn phi_polytope(q: &Polytope, reference: &Polytope) -> Result<WeightVector> {
    require_reference(reference)?;
    phi_unchecked(q, reference)
}

fn phi_unchecked(q: &Polytope, reference: &Polytope) -> Result<WeightVector> {
    if q.ambient_dim() != reference.ambient_dim() {
        return Err(PolyError::DimensionMismatch {
            expected: reference.ambient_dim(),
            found: q.ambient_dim(),
        });
    }
    if q.is_empty() {
        return Ok(WeightVector::zero(reference));
    }
    if !fan_refines(reference, q) {
        return Err(PolyError::NotInSubalgebra);
    }
    let fl = reference.face_lattice();
    let mut memo: HashMap<Vec<usize>, Rational> = HashMap::new();
    let mut out = WeightVector::zero(reference);
    for (k, slot) in out.grades.iter_mut().enumerate() {
        for (i, &f) in fl.faces_of_dim(k as isize).iter().enumerate() {
            let c = witness_direction(reference, fl.face(f)).expect("nonempty face");
            let g = maximizers(q.vertices(), &c);
            if affine_dim(q.vertices(), &g) != k as isize {
                continue;
            }
            let value = match memo.get(&g) {
                Some(v) => v.clone(),
                None => {
                    let v = lattice_volume(&q.face_polytope(&g))?;
                    memo.insert(g, v.clone());
                    v
                }
            };
            slot[i] = value;
        }
    }
    Ok(out)
}

/// The Minkowski map `φ: Π(P) → ⊕_k Q^{f_k(P)}`, extended linearly.
pub fn minkowski_map(x: &AlgebraElement, reference: &Polytope) -> Result<WeightVector> {
    require_reference(reference)?;
    if x.ambient_dim() != reference.ambient_dim() {
        return Err(PolyError::DimensionMismatch {
            expected: reference.ambient_dim(),
            found: x.ambient_dim(),
        });
    }
    let mut acc = WeightVector::zero(reference);
    for (q, c) in x.terms() {
        let w = phi_unchecked(q, reference)?;
        for (a, b) in acc.grades.iter_mut().zip(&w.grades) {
            for (s, t) in a.iter_mut().zip(b) {
                *s += c * t;
            }
        }
    }
    Ok(acc)
}

/// A simple full-dimensional reference polytope.
#[derive(Clone, Debug)]
pub struct Reference {
    pub polytope: Polytope,
    /// Seed of the offset perturbation, when one was needed.
    pub seed: Option<u64>,
}

/// A simple full-dimensional polytope whose normal fan refines that of `p`.
///
/// Lower-dimensional input is first thickened by adding the unit cube.
/// Non-simple input has its facet offsets perturbed by small seeded rational
/// amounts, shrinking the perturbation until the result is simple and still
/// refines `p`.
pub fn simple_refinement(p: &Polytope, seed: u64) -> Result<Reference> {
    if p.is_empty() {
        return Err(PolyError::EmptyInput);
    }
    let d = p.ambient_dim();
    let base = if p.is_full_dimensional() {
        p.clone()
    } else {
        minkowski_sum_all(d, &[p.clone(), Polytope::cube(d)])?
    };
    if base.is_simple() {
        return Ok(Reference { polytope: base, seed: None });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let jitter: Vec<Rational> =
        base.facets().iter().map(|_| Rational::new(rng.random_range(1..=997).into(), 997.into())).collect();
    let mut eps = Rational::new(1.into(), 16.into());
    for _ in 0..40 {
        let hs: Vec<Halfspace> = base
            .facets()
            .iter()
            .zip(&jitter)
            .map(|(h, j)| Halfspace { normal: h.normal.clone(), offset: &h.offset + &eps * j })
            .collect();
        if let Some(q) = from_halfspaces(d, &hs) {
            if q.is_full_dimensional()
                && q.facets().len() == base.facets().len()
                && q.is_simple()
                && fan_refines(&q, &base)
            {
                return Ok(Reference { polytope: q, seed: Some(seed) });
            }
        }
        eps /= int(2);
    }
    Err(PolyError::NotSimple)
}

/// Vertex enumeration of a bounded full-dimensional H-polytope.
fn from_halfspaces(d: usize, hs: &[Halfspace]) -> Option<Polytope> {
    if hs.len() < d + 1 {
        return None;
    }
    let mut pts = Vec::new();
    let mut subset: Vec<usize> = (0..d).collect();
    loop {
        let rows: Vec<RationalVector> = subset.iter().map(|&i| hs[i].normal.clone()).collect();
        if rank(&rows, d) == d {
            let rhs: Vec<Rational> = subset.iter().map(|&i| hs[i].offset.clone()).collect();
            if let Some(x) = solve(&rows, &rhs, d) {
                if hs.iter().all(|h| h.contains(&x)) {
                    pts.push(x);
                }
            }
        }
        if !next_combination(&mut subset, hs.len()) {
            break;
        }
    }
    if pts.is_empty() {
        return None;
    }
    Some(build(d, pts, None))
}

/// A simple reference for a collection of polytopes: the Minkowski sum of
/// those not already refined by another, made simple.
pub fn common_reference(polys: &[Polytope], seed: u64) -> Result<Reference> {
    let first = polys.iter().find(|p| !p.is_empty()).ok_or(PolyError::EmptyInput)?;
    let d = first.ambient_dim();
    let mut kept: Vec<Polytope> = Vec::new();
    for p in polys.iter().filter(|p| !p.is_empty()) {
        if p.ambient_dim() != d {
            return Err(PolyError::DimensionMismatch { expected: d, found: p.ambient_dim() });
        }
        if p.vertices().len() == 1 || kept.iter().any(|k| fan_refines(k, p)) {
            continue;
        }
        kept.retain(|k| !fan_refines(p, k));
        kept.push(p.canonical_translate());
    }
    let sum = minkowski_sum_all(d, &kept)?;
    simple_refinement(&sum, seed)
}

/// A common reference for the supports of several elements.
pub fn reference_for(elements: &[&AlgebraElement]) -> Result<Reference> {
    let polys: Vec<Polytope> = elements.iter().flat_map(|x| x.supports()).collect();
    if polys.is_empty() {
        let d = elements.first().map_or(0, |x| x.ambient_dim());
        return simple_refinement(&Polytope::cube(d.max(1)), DEFAULT_SEED);
    }
    common_reference(&polys, DEFAULT_SEED)
}

/// Decides `x = y` in the polytope algebra through the Minkowski map over a
/// common simple reference (computed when not given).
pub fn phi_equal(x: &AlgebraElement, y: &AlgebraElement, reference: Option<&Polytope>) -> Result<bool> {
    let diff = x - y;
    let owned;
    let r = match reference {
        Some(r) => r,
        None => {
            owned = reference_for(&[x, y])?.polytope;
            &owned
        }
    };
    Ok(minkowski_map(&diff, r)?.is_zero())
}

/// True iff `Q = P + t` for some `t`.
pub fn translation_equal(p: &Polytope, q: &Polytope) -> bool {
    p.ambient_dim() == q.ambient_dim() && p.canonical_translate() == q.canonical_translate()
}

/// Equality of all frame functionals of `P` and `Q` on a common reference.
pub fn frame_functionals_equal(p: &Polytope, q: &Polytope) -> Result<bool> {
    let r = common_reference(&[p.clone(), q.clone()], DEFAULT_SEED)?;
    Ok(phi_polytope(p, &r.polytope)? == phi_polytope(q, &r.polytope)?)
}

/// `Σ_i u_i Vol_{d-1}(P^{u_i})` with primitive facet normals and lattice
/// facet volumes.
pub fn minkowski_relation_residual(p: &Polytope) -> Result<RationalVector> {
    if !p.is_full_dimensional() {
        return Err(PolyError::NotFullDimensional { dim: p.dim(), ambient: p.ambient_dim() });
    }
    let mut acc = vec![Rational::zero(); p.ambient_dim()];
    for (h, inc) in p.facets().iter().zip(p.facet_incidence()) {
        let vol = lattice_volume(&p.face_polytope(inc))?;
        for (a, x) in acc.iter_mut().zip(&h.normal) {
            *a += x * &vol;
        }
    }
    Ok(acc)
}

/// The same sum with unit normals and Euclidean facet volumes.
pub fn minkowski_relation_residual_euclidean(p: &Polytope) -> Result<Vec<f64>> {
    if !p.is_full_dimensional() {
        return Err(PolyError::NotFullDimensional { dim: p.dim(), ambient: p.ambient_dim() });
    }
    let mut acc = vec![0.0; p.ambient_dim()];
    for (h, inc) in p.facets().iter().zip(p.facet_incidence()) {
        let (vol, _) = crate::volume::measure(&p.face_polytope(inc))?.euclidean_f64();
        let len = to_f64(&norm_squared(&h.normal)).sqrt();
        for (a, x) in acc.iter_mut().zip(&h.normal) {
            *a += to_f64(x) / len * vol;
        }
    }
    Ok(acc)
}

/// A grade-`k` assignment of values to the `k`-faces of a reference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinkowskiWeight {
    pub reference: Polytope,
    pub grade: usize,
    /// One value per `k`-face, in face-lattice order.
    pub values: Vec<Rational>,
}

impl MinkowskiWeight {
    /// Builds a weight from face keys (sorted vertex indices).
    pub fn from_map(
        reference: &Polytope,
        grade: usize,
        values: &BTreeMap<Vec<usize>, Rational>,
    ) -> Result<Self> {
        if grade > reference.ambient_dim() {
            return Err(PolyError::DimensionMismatch { expected: reference.ambient_dim(), found: grade });
        }
        let keys = face_keys(reference, grade);
        for k in values.keys() {
            if !keys.contains(k) {
                return Err(PolyError::NotFound(format!("face {}", face_id_string(k))));
            }
        }
        let values = keys
            .iter()
            .map(|k| values.get(k).cloned().ok_or_else(|| PolyError::MissingFace(face_id_string(k))))
            .collect::<Result<_>>()?;
        Ok(MinkowskiWeight { reference: reference.clone(), grade, values })
    }

    pub fn face_keys(&self) -> Vec<Vec<usize>> {
        face_keys(&self.reference, self.grade)
    }

    pub fn to_map(&self) -> BTreeMap<Vec<usize>, Rational> {
        self.face_keys().into_iter().zip(self.values.iter().cloned()).collect()
    }
}

/// Face ids are written as comma-separated vertex indices, e.g. `"0,2"`.
pub fn face_id_string(ids: &[usize]) -> String {
    ids.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

pub fn parse_face_id(s: &str) -> Result<Vec<usize>> {
    let mut ids = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| PolyError::Parse(format!("bad face id {s:?}"))))
        .collect::<Result<Vec<_>>>()?;
    ids.sort_unstable();
    ids.dedup();
    Ok(ids)
}

/// `ω_k(F) = V_{U(F)}(Q)` over the `k`-faces of `P`.
pub fn weight_of_summand(p: &Polytope, q: &Polytope, k: usize) -> Result<MinkowskiWeight> {
    if k > p.ambient_dim() {
        return Err(PolyError::DimensionMismatch { expected: p.ambient_dim(), found: k });
    }
    let phi = phi_polytope(q, p)?;
    Ok(MinkowskiWeight { reference: p.clone(), grade: k, values: phi.grades[k].clone() })
}

/// Per-`(k+1)`-face residuals of the balancing condition.
#[derive(Clone, Debug, PartialEq)]
pub struct BalanceReport {
    pub balanced: bool,
    /// `(face key, residual)` in lattice coordinates of `lin(F)`.
    pub residuals: Vec<(Vec<usize>, RationalVector)>,
}

/// Primitive outer normals, in coordinates of a basis of `Z^d ∩ lin(F)`, of
/// the facets of `F` (given by vertex keys of the parent).
struct LocalFrame {
    basis: Vec<RationalVector>,
    normals: Vec<(Vec<usize>, RationalVector)>,
}

fn local_frame(p: &Polytope, face: usize) -> LocalFrame {
    let fl = p.face_lattice();
    let rec = fl.face(face);
    let fpoly = p.face_polytope(&rec.vertices);
    let basis = saturated_lattice_basis(fpoly.lin_basis(), p.ambient_dim());
    let v0 = &p.vertices()[rec.vertices[0]];
    let coords = |i: usize| coordinates(&basis, &sub(&p.vertices()[i], v0)).expect("in aff(F)");
    let pts: Vec<RationalVector> = rec.vertices.iter().map(|&i| coords(i)).collect();
    let local = convex_hull(&pts).expect("nonempty face");
    let mut normals = Vec::new();
    for &g in fl.subfaces(face) {
        let gv = &fl.face(g).vertices;
        let gc: Vec<RationalVector> = gv.iter().map(|&i| coords(i)).collect();
        let h = local
            .facets()
            .iter()
            .find(|h| gc.iter().all(|x| dot(&h.normal, x) == h.offset))
            .expect("facet of F is a facet of its local image");
        normals.push((gv.clone(), h.normal.clone()));
    }
    LocalFrame { basis, normals }
}

/// Checks `Σ_{G ⊂ F} ω(G) u_{G/F} = 0` for every `(k+1)`-face `F`, exactly,
/// with `u_{G/F}` the primitive outer normal in the dual lattice of `lin(F)`.
pub fn check_balanced(w: &MinkowskiWeight) -> Result<BalanceReport> {
    let p = &w.reference;
    let k = w.grade;
    if w.values.len() != face_keys(p, k).len() {
        return Err(PolyError::MissingFace(format!("grade {k} has {} values", w.values.len())));
    }
    let map = w.to_map();
    let fl = p.face_lattice();
    let mut residuals = Vec::new();
    for &f in fl.faces_of_dim(k as isize + 1) {
        let lf = local_frame(p, f);
        let mut acc = vec![Rational::zero(); lf.basis.len()];
        for (key, nu) in &lf.normals {
            let val = &map[key];
            for (a, x) in acc.iter_mut().zip(nu) {
                *a += x * val;
            }
        }
        residuals.push((fl.face(f).vertices.clone(), acc));
    }
    let balanced = residuals.iter().all(|(_, r)| r.iter().all(Zero::is_zero));
    Ok(BalanceReport { balanced, residuals })
}

/// Euclidean balancing: `values` are Euclidean `k`-volumes and the normals
/// are unit vectors in `lin(F)`. Returns the largest residual norm.
pub fn balance_residual_euclidean(p: &Polytope, k: usize, values: &[f64]) -> Result<f64> {
    let keys = face_keys(p, k);
    if values.len() != keys.len() {
        return Err(PolyError::MissingFace(format!("grade {k} has {} values", values.len())));
    }
    let map: HashMap<&Vec<usize>, f64> = keys.iter().zip(values.iter().copied()).collect();
    let fl = p.face_lattice();
    let mut worst: f64 = 0.0;
    for &f in fl.faces_of_dim(k as isize + 1) {
        let lf = local_frame(p, f);
        let gram: Vec<RationalVector> =
            lf.basis.iter().map(|x| lf.basis.iter().map(|y| dot(x, y)).collect()).collect();
        let mut acc = vec![0.0; p.ambient_dim()];
        for (key, nu) in &lf.normals {
            // Ambient vector representing the covector ν on lin(F).
            let y = solve(&gram, nu, gram.len()).expect("Gram matrix is invertible");
            let mut eta = vec![Rational::zero(); p.ambient_dim()];
            for (c, b) in y.iter().zip(&lf.basis) {
                eta = crate::rational::add(&eta, &scale(b, c));
            }
            let len = to_f64(&norm_squared(&eta)).sqrt();
            for (a, x) in acc.iter_mut().zip(&eta) {
                *a += map[key] * to_f64(x) / len;
            }
        }
        worst = worst.max(acc.iter().map(|x| x * x).sum::<f64>().sqrt());
    }
    Ok(worst)
}

/// Human-readable form of a weight vector: one line per grade.
pub fn format_weight_vector(w: &WeightVector) -> String {
    let mut s = String::new();
    for (k, g) in w.grades.iter().enumerate() {
        let vals: Vec<String> = g.iter().map(format_rational).collect();
        s.push_str(&format!("grade {k}: [{}]\n", vals.join(", ")));
    }
    s
}

/// Sign check used by the summand cone: all values nonnegative.
pub fn is_nonnegative(values: &[Rational]) -> bool {
    values.iter().all(|x| !x.is_negative())
}

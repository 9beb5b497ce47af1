//! Faces, face lattices and f-vectors.

use std::collections::{BTreeSet, HashMap};

use crate::linalg::rank;
use crate::polytope::Polytope;
use crate::rational::{dot, sub, Rational, RationalVector};

/// One face of a polytope, stored by the indices of its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceRecord {
    pub vertices: Vec<usize>,
    pub dim: isize,
    /// Facets (by index into [`Polytope::facets`]) containing this face.
    pub facets: Vec<usize>,
}

/// The lattice of all faces, including the empty face and the polytope itself.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    faces: Vec<FaceRecord>,
    by_dim: Vec<Vec<usize>>,
    /// Immediate subfaces (one dimension lower).
    below: Vec<Vec<usize>>,
    /// Immediate superfaces (one dimension higher).
    above: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl FaceLattice {
    pub(crate) fn compute(p: &Polytope) -> Self {
        let n = p.vertices().len();
        let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
        sets.insert(Vec::new());
        if n > 0 {
            let all: Vec<usize> = (0..n).collect();
            let mut queue = vec![all.clone()];
            sets.insert(all);
            while let Some(face) = queue.pop() {
                for inc in p.facet_incidence() {
                    let meet: Vec<usize> =
                        face.iter().copied().filter(|v| inc.binary_search(v).is_ok()).collect();
                    if meet.len() < face.len() && sets.insert(meet.clone()) {
                        queue.push(meet);
                    }
                }
            }
        }
        let mut faces: Vec<FaceRecord> = sets
            .into_iter()
            .map(|vertices| {
                let dim = affine_dim(p.vertices(), &vertices);
                let facets = p
                    .facet_incidence()
                    .iter()
                    .enumerate()
                    .filter(|(_, inc)| vertices.iter().all(|v| inc.binary_search(v).is_ok()))
                    .map(|(i, _)| i)
                    .collect();
                FaceRecord { vertices, dim, facets }
            })
            .collect();
        faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.vertices.cmp(&b.vertices)));

        let top = p.dim().max(-1);
        let mut by_dim = vec![Vec::new(); (top + 2) as usize];
        for (i, f) in faces.iter().enumerate() {
            by_dim[(f.dim + 1) as usize].push(i);
        }
        let mut below = vec![Vec::new(); faces.len()];
        let mut above = vec![Vec::new(); faces.len()];
        for (i, f) in faces.iter().enumerate() {
            if f.dim < 0 {
                continue;
            }
            for &j in &by_dim[f.dim as usize] {
                let g = &faces[j];
                if g.vertices.iter().all(|v| f.vertices.binary_search(v).is_ok()) {
                    below[i].push(j);
                    above[j].push(i);
                }
            }
        }
        let index = faces.iter().enumerate().map(|(i, f)| (f.vertices.clone(), i)).collect();
        FaceLattice { faces, by_dim, below, above, index }
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn face(&self, id: usize) -> &FaceRecord {
        &self.faces[id]
    }

    pub fn faces(&self) -> &[FaceRecord] {
        &self.faces
    }

    /// Face ids of dimension `k` (`k = -1` is the empty face).
    pub fn faces_of_dim(&self, k: isize) -> &[usize] {
        let idx = k + 1;
        if idx < 0 || idx as usize >= self.by_dim.len() {
            return &[];
        }
        &self.by_dim[idx as usize]
    }

    pub fn subfaces(&self, id: usize) -> &[usize] {
        &self.below[id]
    }

    pub fn superfaces(&self, id: usize) -> &[usize] {
        &self.above[id]
    }

    pub fn find(&self, vertices: &[usize]) -> Option<usize> {
        self.index.get(vertices).copied()
    }

    /// Nonempty face ids.
    pub fn nonempty(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.faces.len()).filter(|&i| self.faces[i].dim >= 0)
    }

    /// `(f_0, …, f_dim)`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().skip(1).map(Vec::len).collect()
    }
}

pub(crate) fn affine_dim(points: &[RationalVector], ids: &[usize]) -> isize {
    let Some(&first) = ids.first() else {
        return -1;
    };
    let base = &points[first];
    let diffs: Vec<RationalVector> = ids[1..].iter().map(|&i| sub(&points[i], base)).collect();
    rank(&diffs, base.len()) as isize
}

/// A face `P^c` of a polytope together with a direction selecting it.
#[derive(Clone, Debug)]
pub struct Face {
    pub parent: Polytope,
    pub vertices: Vec<usize>,
    pub dim: isize,
    pub witness: Option<RationalVector>,
}

impl Face {
    pub fn polytope(&self) -> Polytope {
        self.parent.face_polytope(&self.vertices)
    }

    pub fn points(&self) -> Vec<RationalVector> {
        self.vertices.iter().map(|&i| self.parent.vertices()[i].clone()).collect()
    }
}

/// Indices of the vertices maximizing `c`.
pub fn maximizers(points: &[RationalVector], c: &[Rational]) -> Vec<usize> {
    let values: Vec<Rational> = points.iter().map(|v| dot(c, v)).collect();
    let Some(max) = values.iter().max() else {
        return Vec::new();
    };
    (0..points.len()).filter(|&i| &values[i] == max).collect()
}

/// `P^c`: the face of `P` on which `c` is maximized. `c = 0` gives `P`.
pub fn face_in_direction(p: &Polytope, c: &[Rational]) -> Face {
    let vertices = maximizers(p.vertices(), c);
    let dim = affine_dim(p.vertices(), &vertices);
    Face {
        parent: p.clone(),
        vertices,
        dim,
        witness: if p.is_empty() { None } else { Some(c.to_vec()) },
    }
}

/// A direction `c` with `P^c` equal to the given face: the sum of the normals
/// of all facets containing it.
pub fn witness_direction(p: &Polytope, face: &FaceRecord) -> Option<RationalVector> {
    if face.dim < 0 {
        return None;
    }
    let mut c = vec![Rational::from_integer(0.into()); p.ambient_dim()];
    for &f in &face.facets {
        for (x, y) in c.iter_mut().zip(&p.facets()[f].normal) {
            *x += y;
        }
    }
    Some(c)
}

/// All faces of `P` as [`Face`] values with witnesses.
pub fn all_faces(p: &Polytope) -> Vec<Face> {
    let fl = p.face_lattice();
    fl.faces()
        .iter()
        .map(|f| Face {
            parent: p.clone(),
            vertices: f.vertices.clone(),
            dim: f.dim,
            witness: witness_direction(p, f),
        })
        .collect()
}

pub fn f_vector(p: &Polytope) -> Vec<usize> {
    p.face_lattice().f_vector()
}

//! Normal cones, normal fans and fan refinement.

use crate::faces::{maximizers, witness_direction};
use crate::polytope::Polytope;
use crate::rational::{neg, RationalVector};

/// Normal cone of a nonempty face: `cone(generators) + span(lineality)`.
#[derive(Clone, Debug)]
pub struct NormalCone {
    pub face: Vec<usize>,
    pub generators: Vec<RationalVector>,
    pub lineality: Vec<RationalVector>,
}

impl NormalCone {
    /// Generators of the cone as a pointed-plus-lineality set, with each
    /// lineality direction listed in both signs.
    pub fn all_generators(&self) -> Vec<RationalVector> {
        let mut g = self.generators.clone();
        for l in &self.lineality {
            g.push(l.clone());
            g.push(neg(l));
        }
        g
    }
}

#[derive(Clone, Debug)]
pub struct NormalFan {
    pub cones: Vec<NormalCone>,
}

pub fn normal_cone(p: &Polytope, face_id: usize) -> NormalCone {
    let face = p.face_lattice().face(face_id);
    NormalCone {
        face: face.vertices.clone(),
        generators: face.facets.iter().map(|&f| p.facets()[f].normal.clone()).collect(),
        lineality: p.equations().iter().map(|h| h.normal.clone()).collect(),
    }
}

pub fn normal_fan(p: &Polytope) -> NormalFan {
    let fl = p.face_lattice();
    NormalFan { cones: fl.nonempty().map(|id| normal_cone(p, id)).collect() }
}

/// True iff every normal cone of `P` lies inside a normal cone of `Q`.
///
/// For each vertex cone of `P`, an interior direction selects a face `G` of
/// `Q`; the cone is contained in the normal cone of `G` iff every generator
/// is maximized over `Q` on all of `G`.
pub fn fan_refines(p: &Polytope, q: &Polytope) -> bool {
    if p.is_empty() || q.is_empty() || p.ambient_dim() != q.ambient_dim() {
        return false;
    }
    let fl = p.face_lattice();
    for &v in fl.faces_of_dim(0) {
        let cone = normal_cone(p, v);
        let interior = witness_direction(p, fl.face(v)).expect("vertex is nonempty");
        let g = maximizers(q.vertices(), &interior);
        for gen in cone.all_generators() {
            let best = maximizers(q.vertices(), &gen);
            if !g.iter().all(|i| best.binary_search(i).is_ok()) {
                return false;
            }
        }
    }
    true
}

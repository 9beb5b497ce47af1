//! The cone of nonnegative balanced 1-weights and its extreme rays.
//!
//! A weak summand of a simple polytope `P` is determined up to translation by
//! its edge lengths, one number `y(E) >= 0` per edge of `P`. These satisfy one
//! closing condition `Σ y(E_i) Ê_i = 0` per 2-face, where the `Ê_i` are the
//! primitive edge directions taken around the polygon.

use std::collections::{BTreeSet, VecDeque};

use num_traits::{Signed, Zero};

use crate::error::{PolyError, Result};
use crate::linalg::{rank, rref};
use crate::polytope::{build, Polytope};
use crate::rational::{add, dot, primitive, scale, sub, unit, Rational, RationalVector};

/// Default limit on the number of edges (variables of the cone).
pub const DEFAULT_MAX_EDGES: usize = 40;

#[derive(Clone, Debug)]
pub struct ConeRay {
    /// Primitive integer weights, one per edge.
    pub weights: Vec<Rational>,
    /// The indecomposable weak summand with these edge lengths.
    pub polytope: Polytope,
}

#[derive(Clone, Debug)]
pub struct SummandCone {
    pub reference: Polytope,
    /// Edges as sorted vertex pairs, in face-lattice order.
    pub edges: Vec<Vec<usize>>,
    /// Independent equality constraints over the edge variables.
    pub equations: Vec<RationalVector>,
    pub rays: Vec<ConeRay>,
}

impl SummandCone {
    /// A ray is extreme iff the constraints tight on it have rank `n - 1`.
    pub fn is_extreme(&self, y: &[Rational]) -> bool {
        let n = self.edges.len();
        let mut rows = self.equations.clone();
        for (i, x) in y.iter().enumerate() {
            if x.is_zero() {
                rows.push(unit(n, i));
            }
        }
        rank(&rows, n) == n - 1
    }
}

/// Primitive direction of the edge `u → w`.
fn edge_direction(p: &Polytope, u: usize, w: usize) -> RationalVector {
    primitive(&sub(&p.vertices()[w], &p.vertices()[u]))
}

/// Closing conditions, one vector equation per 2-face.
fn closing_equations(p: &Polytope, edges: &[Vec<usize>]) -> Vec<RationalVector> {
    let d = p.ambient_dim();
    let n = edges.len();
    let fl = p.face_lattice();
    let mut rows = Vec::new();
    for &f in fl.faces_of_dim(2) {
        let boundary: Vec<usize> = fl.subfaces(f).to_vec();
        let mut block = vec![vec![Rational::zero(); n]; d];
        // Walk the polygon from its smallest vertex.
        let start = fl.face(f).vertices[0];
        let mut at = start;
        let mut used = BTreeSet::new();
        loop {
            let next = boundary.iter().find(|&&e| {
                !used.contains(&e) && fl.face(e).vertices.contains(&at)
            });
            let Some(&e) = next else { break };
            used.insert(e);
            let vs = &fl.face(e).vertices;
            let other = if vs[0] == at { vs[1] } else { vs[0] };
            let col = edges.iter().position(|x| x == vs).expect("edge of P");
            for (row, x) in block.iter_mut().zip(edge_direction(p, at, other)) {
                row[col] += x;
            }
            at = other;
            if at == start {
                break;
            }
        }
        rows.extend(block);
    }
    let (reduced, _) = rref(&rows, n);
    reduced.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect()
}

pub fn summand_cone(p: &Polytope) -> Result<SummandCone> {
    summand_cone_with_limit(p, DEFAULT_MAX_EDGES)
}

pub fn summand_cone_with_limit(p: &Polytope, max_edges: usize) -> Result<SummandCone> {
    if p.dim() < 2 {
        return Err(PolyError::NotFullDimensional { dim: p.dim(), ambient: p.ambient_dim() });
    }
    if !p.is_simple() {
        return Err(PolyError::NotSimple);
    }
    let fl = p.face_lattice();
    let edges: Vec<Vec<usize>> = fl.faces_of_dim(1).iter().map(|&e| fl.face(e).vertices.clone()).collect();
    if edges.len() > max_edges {
        return Err(PolyError::TooManyEdges { count: edges.len(), limit: max_edges });
    }
    let equations = closing_equations(p, &edges);
    let mut rays = Vec::new();
    for weights in double_description(&equations, edges.len()) {
        let polytope = reconstruct_from_1weight(p, &weights)?;
        rays.push(ConeRay { weights, polytope });
    }
    Ok(SummandCone { reference: p.clone(), edges, equations, rays })
}

/// Extreme rays of `{y >= 0, A y = 0}`, primitive and sorted.
fn double_description(equations: &[RationalVector], n: usize) -> Vec<Vec<Rational>> {
    let mut rays: Vec<RationalVector> = (0..n).map(|i| unit(n, i)).collect();
    for a in equations {
        let values: Vec<Rational> = rays.iter().map(|r| dot(a, r)).collect();
        let zero_set = |r: &RationalVector| -> Vec<usize> {
            (0..n).filter(|&i| r[i].is_zero()).collect()
        };
        let zs: Vec<Vec<usize>> = rays.iter().map(zero_set).collect();
        let mut next: Vec<RationalVector> = Vec::new();
        for (r, v) in rays.iter().zip(&values) {
            if v.is_zero() {
                next.push(r.clone());
            }
        }
        for (i, vi) in values.iter().enumerate() {
            if !vi.is_positive() {
                continue;
            }
            for (j, vj) in values.iter().enumerate() {
                if !vj.is_negative() {
                    continue;
                }
                let common: Vec<usize> =
                    zs[i].iter().copied().filter(|x| zs[j].binary_search(x).is_ok()).collect();
                let blocked = (0..rays.len()).any(|k| {
                    k != i && k != j && common.iter().all(|x| zs[k].binary_search(x).is_ok())
                });
                if blocked {
                    continue;
                }
                let combo = add(&scale(&rays[j], vi), &scale(&rays[i], &-vj));
                next.push(primitive(&combo));
            }
        }
        next.sort();
        next.dedup();
        rays = next;
    }
    rays.sort();
    rays
}

/// Rebuilds the weak summand with edge lengths `y` (in lattice units along
/// primitive edge directions) by walking the edge graph from vertex 0.
pub fn reconstruct_from_1weight(p: &Polytope, y: &[Rational]) -> Result<Polytope> {
    let fl = p.face_lattice();
    let edges = fl.faces_of_dim(1);
    if y.len() != edges.len() {
        return Err(PolyError::MissingFace(format!("expected {} edge values, got {}", edges.len(), y.len())));
    }
    if y.iter().any(Signed::is_negative) {
        return Err(PolyError::NegativeWeight);
    }
    let nv = p.vertices().len();
    let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    for (idx, &e) in edges.iter().enumerate() {
        let vs = &fl.face(e).vertices;
        incident[vs[0]].push((vs[1], idx));
        incident[vs[1]].push((vs[0], idx));
    }
    let mut pos: Vec<Option<RationalVector>> = vec![None; nv];
    pos[0] = Some(vec![Rational::zero(); p.ambient_dim()]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        let here = pos[u].clone().expect("visited");
        for &(w, idx) in &incident[u] {
            let there = add(&here, &scale(&edge_direction(p, u, w), &y[idx]));
            match &pos[w] {
                Some(existing) if existing != &there => return Err(PolyError::NotBalanced),
                Some(_) => {}
                None => {
                    pos[w] = Some(there);
                    queue.push_back(w);
                }
            }
        }
    }
    let pts: Vec<RationalVector> = pos.into_iter().map(|x| x.ok_or(PolyError::NotBalanced)).collect::<Result<_>>()?;
    Ok(build(p.ambient_dim(), pts, None))
}

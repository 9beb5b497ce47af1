//! The ring of polytopal simple functions under the Minkowski product.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::arrangement::{is_zero_function, DEFAULT_MAX_HYPERPLANES};
use crate::error::{PolyError, Result};
use crate::polytope::{minkowski_sum, Polytope};
use crate::rational::{add, dot, format_rational, Rational, RationalVector};

/// A finite formal combination `Σ α_i [Q_i]` of polytope indicators.
///
/// Coefficients are merged per polytope and zero coefficients are dropped;
/// no other simplification is applied, so two different values may still
/// describe the same function (see [`equal_as_functions`]).
#[derive(Clone, PartialEq, Eq)]
pub struct SimpleFunction {
    ambient_dim: usize,
    terms: BTreeMap<Polytope, Rational>,
}

impl SimpleFunction {
    pub fn zero(ambient_dim: usize) -> Self {
        SimpleFunction { ambient_dim, terms: BTreeMap::new() }
    }

    /// `[{0}]`, the unit of the Minkowski product.
    pub fn unit(ambient_dim: usize) -> Self {
        Self::indicator(&Polytope::origin(ambient_dim))
    }

    pub fn indicator(p: &Polytope) -> Self {
        let mut f = Self::zero(p.ambient_dim());
        f.add_term(p.clone(), Rational::one());
        f
    }

    pub fn from_terms(
        ambient_dim: usize,
        terms: impl IntoIterator<Item = (Polytope, Rational)>,
    ) -> Result<Self> {
        let mut f = Self::zero(ambient_dim);
        for (p, c) in terms {
            if p.ambient_dim() != ambient_dim {
                return Err(PolyError::DimensionMismatch {
                    expected: ambient_dim,
                    found: p.ambient_dim(),
                });
            }
            f.add_term(p, c);
        }
        Ok(f)
    }

    pub(crate) fn add_term(&mut self, p: Polytope, c: Rational) {
        if p.is_empty() || c.is_zero() {
            return;
        }
        let entry = self.terms.entry(p);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Polytope, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &Polytope) -> Rational {
        self.terms.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let mut f = Self::zero(self.ambient_dim);
        for (p, c) in &self.terms {
            f.add_term(p.clone(), c * q);
        }
        f
    }

    /// Translates every term by `t`.
    pub fn translate(&self, t: &[Rational]) -> Self {
        let mut f = Self::zero(self.ambient_dim);
        for (p, c) in &self.terms {
            f.add_term(p.translate(t), c.clone());
        }
        f
    }

    /// `Σ α_i [x ∈ Q_i]`.
    pub fn evaluate(&self, x: &[Rational]) -> Rational {
        self.terms
            .iter()
            .filter(|(p, _)| p.contains(x))
            .fold(Rational::zero(), |acc, (_, c)| acc + c)
    }

    /// The Minkowski product, bilinear with `[P] ∗ [Q] = [P + Q]`.
    pub fn star(&self, other: &Self) -> Result<Self> {
        if self.ambient_dim != other.ambient_dim {
            return Err(PolyError::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        let mut f = Self::zero(self.ambient_dim);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                f.add_term(minkowski_sum(p, q)?, a * b);
            }
        }
        Ok(f)
    }

    /// Euler characteristic: `Σ α_i` over the (nonempty) terms.
    pub fn euler(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }
}

impl Add for &SimpleFunction {
    type Output = SimpleFunction;
    fn add(self, rhs: &SimpleFunction) -> SimpleFunction {
        let mut f = self.clone();
        for (p, c) in &rhs.terms {
            f.add_term(p.clone(), c.clone());
        }
        f
    }
}

impl Sub for &SimpleFunction {
    type Output = SimpleFunction;
    fn sub(self, rhs: &SimpleFunction) -> SimpleFunction {
        self + &(-rhs)
    }
}

impl Neg for &SimpleFunction {
    type Output = SimpleFunction;
    fn neg(self) -> SimpleFunction {
        self.scale(&-Rational::one())
    }
}

impl fmt::Debug for SimpleFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}·[{:?}]", format_rational(c), p)?;
        }
        Ok(())
    }
}

pub fn star_product(f: &SimpleFunction, g: &SimpleFunction) -> Result<SimpleFunction> {
    f.star(g)
}

pub fn euler(f: &SimpleFunction) -> Rational {
    f.euler()
}

/// `[relint P] = Σ_{∅ ≠ F ⊆ P} (-1)^{dim P - dim F} [F]`.
pub fn relint_expansion(p: &Polytope) -> Result<SimpleFunction> {
    if p.is_empty() {
        return Err(PolyError::EmptyInput);
    }
    let fl = p.face_lattice();
    let mut f = SimpleFunction::zero(p.ambient_dim());
    for id in fl.nonempty() {
        let face = fl.face(id);
        let sign = if (p.dim() - face.dim) % 2 == 0 { Rational::one() } else { -Rational::one() };
        f.add_term(p.face_polytope(&face.vertices), sign);
    }
    Ok(f)
}

/// Inverse of `[P]` under the Minkowski product:
/// `(-1)^{dim P} [-relint P] = Σ_F (-1)^{dim F} [-F]`.
pub fn star_inverse(p: &Polytope) -> Result<SimpleFunction> {
    let expansion = relint_expansion(&p.negate())?;
    Ok(if p.dim() % 2 == 0 { expansion } else { -&expansion })
}

/// `([P] - [v_1]) ∗ … ∗ ([P] - [v_m])` over the vertices of `P`, expanded.
pub fn vertex_nilpotence(p: &Polytope) -> Result<SimpleFunction> {
    let d = p.ambient_dim();
    let mut acc = SimpleFunction::unit(d);
    let ind = SimpleFunction::indicator(p);
    for v in p.vertices() {
        let with_p = acc.star(&ind)?;
        acc = &with_p - &acc.translate(v);
    }
    Ok(acc)
}

/// Affine map `x ↦ M x + t` from `Q^source` to `Q^target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMapping {
    pub matrix: Vec<RationalVector>,
    pub offset: RationalVector,
}

impl AffineMapping {
    pub fn new(matrix: Vec<RationalVector>, offset: RationalVector) -> Result<Self> {
        let source = matrix.first().map_or(0, Vec::len);
        if matrix.len() != offset.len() {
            return Err(PolyError::DimensionMismatch { expected: offset.len(), found: matrix.len() });
        }
        if let Some(row) = matrix.iter().find(|r| r.len() != source) {
            return Err(PolyError::DimensionMismatch { expected: source, found: row.len() });
        }
        Ok(AffineMapping { matrix, offset })
    }

    pub fn identity(d: usize) -> Self {
        AffineMapping {
            matrix: (0..d).map(|i| crate::rational::unit(d, i)).collect(),
            offset: vec![Rational::zero(); d],
        }
    }

    /// Linear map sending `e_i` to the `i`-th point.
    pub fn from_images(points: &[RationalVector]) -> Result<Self> {
        let target = points.first().ok_or(PolyError::EmptyInput)?.len();
        let matrix = (0..target).map(|j| points.iter().map(|p| p[j].clone()).collect()).collect();
        Self::new(matrix, vec![Rational::zero(); target])
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.first().map_or(0, Vec::len)
    }

    pub fn target_dim(&self) -> usize {
        self.offset.len()
    }

    pub fn apply(&self, x: &[Rational]) -> RationalVector {
        let lin: RationalVector = self.matrix.iter().map(|row| dot(row, x)).collect();
        add(&lin, &self.offset)
    }
}

/// `π_* Σ α_i [Q_i] = Σ α_i [π(Q_i)]`.
///
/// This is the induced map on the span of indicators; it does not commute
/// with pointwise evaluation in general.
pub fn push_forward(map: &AffineMapping, f: &SimpleFunction) -> Result<SimpleFunction> {
    if map.source_dim() != f.ambient_dim() {
        return Err(PolyError::DimensionMismatch {
            expected: map.source_dim(),
            found: f.ambient_dim(),
        });
    }
    let mut out = SimpleFunction::zero(map.target_dim());
    for (p, c) in f.terms() {
        out.add_term(p.affine_image(&map.matrix, &map.offset), c.clone());
    }
    Ok(out)
}

/// Decides `f = g` pointwise through the hyperplane arrangement of all terms.
pub fn equal_as_functions(f: &SimpleFunction, g: &SimpleFunction) -> Result<bool> {
    equal_as_functions_with_limit(f, g, DEFAULT_MAX_HYPERPLANES)
}

pub fn equal_as_functions_with_limit(
    f: &SimpleFunction,
    g: &SimpleFunction,
    max_hyperplanes: usize,
) -> Result<bool> {
    if f.ambient_dim != g.ambient_dim {
        return Err(PolyError::DimensionMismatch { expected: f.ambient_dim, found: g.ambient_dim });
    }
    is_zero(&(f - g), max_hyperplanes)
}

pub fn is_zero(f: &SimpleFunction, max_hyperplanes: usize) -> Result<bool> {
    let terms: Vec<(&Polytope, &Rational)> = f.terms().collect();
    is_zero_function(&terms, max_hyperplanes)
}

/// `[-S]` for a simple function `Σ α_i [Q_i]`.
pub fn reflect(f: &SimpleFunction) -> SimpleFunction {
    let mut out = SimpleFunction::zero(f.ambient_dim());
    for (p, c) in f.terms() {
        out.add_term(p.negate(), c.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::convex_hull;
    use crate::rational::{frac, int, vector};

    fn hull(raw: &[&[i64]]) -> Polytope {
        convex_hull(&raw.iter().map(|p| vector(p)).collect::<Vec<_>>()).unwrap()
    }

    fn boxed(lo: &[i64], hi: &[i64]) -> Polytope {
        let d = lo.len();
        let pts: Vec<RationalVector> = (0..1usize << d)
            .map(|m| (0..d).map(|i| int(if m >> i & 1 == 1 { hi[i] } else { lo[i] })).collect())
            .collect();
        convex_hull(&pts).unwrap()
    }

    #[test]
    fn linear_structure() {
        let sq = Polytope::cube(2);
        assert!(SimpleFunction::indicator(&Polytope::empty(2)).is_empty());
        let two = &SimpleFunction::indicator(&sq) + &SimpleFunction::indicator(&sq);
        assert_eq!(two.coefficient(&sq), int(2));
        assert!(SimpleFunction::indicator(&sq).scale(&int(0)).is_empty());
        assert_eq!(SimpleFunction::indicator(&sq).evaluate(&[frac(1, 2), frac(1, 2)]), int(1));
    }

    #[test]
    fn inclusion_exclusion_relation() {
        let p = boxed(&[0, 0], &[2, 1]);
        let q = boxed(&[1, 0], &[3, 1]);
        let union = boxed(&[0, 0], &[3, 1]);
        let meet = boxed(&[1, 0], &[2, 1]);
        let lhs = &SimpleFunction::indicator(&union) + &SimpleFunction::indicator(&meet);
        let rhs = &SimpleFunction::indicator(&p) + &SimpleFunction::indicator(&q);
        assert!(equal_as_functions(&lhs, &rhs).unwrap());
        for x in [vector(&[1, 0]), vector(&[2, 1]), vector(&[0, 0])] {
            assert_eq!(lhs.evaluate(&x), rhs.evaluate(&x));
        }
    }

    #[test]
    fn translation_changes_the_function() {
        let sq = Polytope::cube(2);
        let f = SimpleFunction::indicator(&sq);
        let g = SimpleFunction::indicator(&sq.translate(&[frac(1, 3), int(0)]));
        assert!(!equal_as_functions(&f, &g).unwrap());
    }

    #[test]
    fn unit_and_one_dimensional_nilpotence() {
        let seg = hull(&[&[0], &[1]]);
        let p = SimpleFunction::indicator(&seg);
        assert_eq!(p.star(&SimpleFunction::unit(1)).unwrap(), p);
        let a = SimpleFunction::indicator(&hull(&[&[0]]));
        let b = SimpleFunction::indicator(&hull(&[&[1]]));
        let prod = (&p - &a).star(&(&p - &b)).unwrap();
        // [2P] - [P+a] - [P+b] + [a+b]
        assert_eq!(prod.len(), 4);
        assert!(is_zero(&prod, 64).unwrap());
    }

    #[test]
    fn triangle_squared_is_its_dilate() {
        let t = hull(&[&[0, 0], &[1, 0], &[0, 1]]);
        let sq = SimpleFunction::indicator(&t).star(&SimpleFunction::indicator(&t)).unwrap();
        assert_eq!(sq, SimpleFunction::indicator(&t.dilate(&int(2)).unwrap()));
    }

    #[test]
    fn euler_characteristic() {
        let sq = Polytope::cube(2);
        assert_eq!(euler(&SimpleFunction::indicator(&sq)), int(1));
        assert_eq!(euler(&SimpleFunction::indicator(&sq).scale(&int(2))), int(2));
        assert_eq!(euler(&SimpleFunction::indicator(&sq.dilate(&int(2)).unwrap())), int(1));
        for d in 0..=3 {
            let c = Polytope::cube(d.max(1));
            let p = if d == 0 { Polytope::origin(2) } else { c };
            let sign = if p.dim() % 2 == 0 { int(1) } else { int(-1) };
            assert_eq!(euler(&relint_expansion(&p).unwrap()), sign);
        }
    }

    #[test]
    fn relint_of_segment() {
        let seg = hull(&[&[0], &[2]]);
        let r = relint_expansion(&seg).unwrap();
        assert_eq!(r.len(), 3);
        assert_eq!(r.evaluate(&[int(0)]), int(0));
        assert_eq!(r.evaluate(&[int(2)]), int(0));
        assert_eq!(r.evaluate(&[int(1)]), int(1));
        assert_eq!(r.evaluate(&[int(3)]), int(0));
        let pt = hull(&[&[4, 1]]);
        assert_eq!(relint_expansion(&pt).unwrap(), SimpleFunction::indicator(&pt));
        let sq = relint_expansion(&Polytope::cube(2)).unwrap();
        assert_eq!(sq.len(), 9);
        assert!(relint_expansion(&Polytope::empty(2)).is_err());
    }

    #[test]
    fn inverses() {
        let pt = hull(&[&[2, -1]]);
        assert_eq!(star_inverse(&pt).unwrap(), SimpleFunction::indicator(&hull(&[&[-2, 1]])));
        for p in [hull(&[&[0], &[1]]), Polytope::cube(2), hull(&[&[0, 0], &[1, 0], &[0, 1]])] {
            let inv = star_inverse(&p).unwrap();
            let prod = inv.star(&SimpleFunction::indicator(&p)).unwrap();
            assert!(equal_as_functions(&prod, &SimpleFunction::unit(p.ambient_dim())).unwrap());
        }
    }

    #[test]
    fn nilpotence_small_cases() {
        let seg = hull(&[&[0], &[3]]);
        assert!(is_zero(&vertex_nilpotence(&seg).unwrap(), 64).unwrap());
        let tri = hull(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert!(is_zero(&vertex_nilpotence(&tri).unwrap(), 64).unwrap());
        assert!(is_zero(&vertex_nilpotence(&Polytope::cube(2)).unwrap(), 64).unwrap());
    }

    #[test]
    fn push_forward_of_square() {
        let proj = AffineMapping::new(vec![vector(&[1, 0])], vec![int(0)]).unwrap();
        let f = SimpleFunction::indicator(&Polytope::cube(2));
        assert_eq!(push_forward(&proj, &f).unwrap(), SimpleFunction::indicator(&Polytope::cube(1)));
        let id = AffineMapping::identity(2);
        assert_eq!(push_forward(&id, &f).unwrap(), f);
    }
}

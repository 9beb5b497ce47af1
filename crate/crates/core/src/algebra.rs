//! The polytope algebra: simple functions modulo translations.
//!
//! Each term is stored by its canonical translate (lexicographically smallest
//! vertex at the origin), which quotients single classes exactly. Equality of
//! general elements is decided through the Minkowski map (see
//! [`crate::weights`]).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{PolyError, Result};
use crate::faces::{maximizers, witness_direction};
use crate::fan::fan_refines;
use crate::polytope::{minkowski_sum, Polytope};
use crate::rational::{format_rational, norm_squared, sub, Rational};
use crate::simple_function::SimpleFunction;
use crate::volume::lattice_volume;

/// A finite rational combination `Σ α_i ⟦Q_i⟧` of translation classes.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    ambient_dim: usize,
    terms: BTreeMap<Polytope, Rational>,
}

impl AlgebraElement {
    pub fn zero(ambient_dim: usize) -> Self {
        AlgebraElement { ambient_dim, terms: BTreeMap::new() }
    }

    /// The class of the origin.
    pub fn one(ambient_dim: usize) -> Self {
        Self::class_of(&Polytope::origin(ambient_dim))
    }

    pub fn class_of(p: &Polytope) -> Self {
        let mut x = Self::zero(p.ambient_dim());
        x.add_term(p, Rational::one());
        x
    }

    pub fn from_terms<'a>(
        ambient_dim: usize,
        terms: impl IntoIterator<Item = (&'a Polytope, Rational)>,
    ) -> Result<Self> {
        let mut x = Self::zero(ambient_dim);
        for (p, c) in terms {
            if p.ambient_dim() != ambient_dim {
                return Err(PolyError::DimensionMismatch {
                    expected: ambient_dim,
                    found: p.ambient_dim(),
                });
            }
            x.add_term(p, c);
        }
        Ok(x)
    }

    /// Image of a simple function in the quotient.
    pub fn from_simple_function(f: &SimpleFunction) -> Self {
        let mut x = Self::zero(f.ambient_dim());
        for (p, c) in f.terms() {
            x.add_term(p, c.clone());
        }
        x
    }

    pub(crate) fn add_term(&mut self, p: &Polytope, c: Rational) {
        if p.is_empty() || c.is_zero() {
            return;
        }
        let key = p.canonical_translate();
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
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

    /// True when no terms remain after merging. A nonzero element can still
    /// be zero in the algebra; use the Minkowski map to decide that.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &Polytope) -> Rational {
        self.terms.get(&p.canonical_translate()).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let mut x = Self::zero(self.ambient_dim);
        for (p, c) in &self.terms {
            x.add_term(p, c * q);
        }
        x
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.ambient_dim != other.ambient_dim {
            return Err(PolyError::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        let mut x = Self::zero(self.ambient_dim);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                x.add_term(&minkowski_sum(p, q)?, a * b);
            }
        }
        Ok(x)
    }

    pub fn pow(&self, r: u32) -> Result<Self> {
        let mut acc = Self::one(self.ambient_dim);
        for _ in 0..r {
            acc = acc.multiply(self)?;
        }
        Ok(acc)
    }

    /// `D_λ`: dilates every term. `λ = 0` sends each class to `1`.
    pub fn dilate_class(&self, lambda: &Rational) -> Result<Self> {
        if lambda.is_negative() {
            return Err(PolyError::InvalidScale(format_rational(lambda)));
        }
        let mut x = Self::zero(self.ambient_dim);
        for (p, c) in &self.terms {
            x.add_term(&p.dilate(lambda)?, c.clone());
        }
        Ok(x)
    }

    /// `χ(x) = Σ α_i`.
    pub fn euler(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    /// Splits `x = χ(x)·1 + x_+` with `χ(x_+) = 0`.
    pub fn euler_decompose(&self) -> (Rational, AlgebraElement) {
        let chi = self.euler();
        let plus = self - &Self::one(self.ambient_dim).scale(&chi);
        (chi, plus)
    }

    /// The polytopes appearing in the terms.
    pub fn supports(&self) -> Vec<Polytope> {
        self.terms.keys().cloned().collect()
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut x = self.clone();
        for (p, c) in &rhs.terms {
            x.add_term(p, c.clone());
        }
        x
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self + &(-rhs)
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(&-Rational::one())
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}·⟦{:?}⟧", format_rational(c), p)?;
        }
        Ok(())
    }
}

pub fn class_of(p: &Polytope) -> AlgebraElement {
    AlgebraElement::class_of(p)
}

pub fn multiply(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    x.multiply(y)
}

pub fn dilate_class(x: &AlgebraElement, lambda: &Rational) -> Result<AlgebraElement> {
    if !lambda.is_positive() {
        return Err(PolyError::InvalidScale(format_rational(lambda)));
    }
    x.dilate_class(lambda)
}

pub fn euler_decompose(x: &AlgebraElement) -> (Rational, AlgebraElement) {
    x.euler_decompose()
}

/// The model `Π^1 ≅ Z ⊕ R` restricted to rational data: `(χ(x), total length)`.
pub fn pi1_model(x: &AlgebraElement) -> Result<(Rational, Rational)> {
    if x.ambient_dim() != 1 {
        return Err(PolyError::DimensionMismatch { expected: 1, found: x.ambient_dim() });
    }
    let mut length = Rational::zero();
    for (p, c) in x.terms() {
        if p.dim() == 1 {
            length += c * lattice_volume(p)?;
        }
    }
    Ok((x.euler(), length))
}

/// Multiplication in the model: `(a, b)(a', b') = (a a', a b' + a' b)`.
pub fn pi1_multiply(x: &(Rational, Rational), y: &(Rational, Rational)) -> (Rational, Rational) {
    (&x.0 * &y.0, &x.0 * &y.1 + &y.0 * &x.1)
}

/// `Q` is a weak Minkowski summand of `P` iff the normal fan of `P` refines
/// that of `Q`.
pub fn is_weak_summand(q: &Polytope, p: &Polytope) -> bool {
    fan_refines(p, q)
}

/// Shephard's criterion: a weak summand `Q` is a summand of `P` iff every
/// edge `P^c` is at least as long as the corresponding face `Q^c`.
pub fn is_summand(q: &Polytope, p: &Polytope) -> bool {
    if !is_weak_summand(q, p) {
        return false;
    }
    let fl = p.face_lattice();
    for &e in fl.faces_of_dim(1) {
        let rec = fl.face(e);
        let c = witness_direction(p, rec).expect("edge is nonempty");
        let qe = maximizers(q.vertices(), &c);
        let lp = norm_squared(&sub(&p.vertices()[rec.vertices[1]], &p.vertices()[rec.vertices[0]]));
        let lq = match qe.as_slice() {
            [a, b] => norm_squared(&sub(&q.vertices()[*b], &q.vertices()[*a])),
            _ => Rational::zero(),
        };
        if lq > lp {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::convex_hull;
    use crate::rational::{frac, int, vector};

    fn seg(a: i64, b: i64) -> Polytope {
        convex_hull(&[vector(&[a]), vector(&[b])]).unwrap()
    }

    #[test]
    fn classes_forget_translation() {
        let sq = Polytope::cube(2);
        let moved = sq.translate(&[frac(3, 2), int(-7)]);
        assert_eq!(class_of(&sq), class_of(&moved));
        assert_eq!(class_of(&Polytope::point(vector(&[4, 4]))), AlgebraElement::one(2));
    }

    #[test]
    fn unit_and_product() {
        let x = &class_of(&seg(0, 2)) - &class_of(&seg(0, 1)).scale(&frac(1, 3));
        assert_eq!(AlgebraElement::one(1).multiply(&x).unwrap(), x);
        let p = class_of(&seg(0, 1));
        assert_eq!(p.multiply(&p).unwrap(), class_of(&seg(0, 2)));
    }

    #[test]
    fn half_open_segments_multiply_to_zero_in_the_model() {
        let one = AlgebraElement::one(1);
        let s = &class_of(&seg(0, 2)) - &one;
        let r = &class_of(&seg(0, 5)) - &one;
        let prod = s.multiply(&r).unwrap();
        assert_eq!(pi1_model(&prod).unwrap(), (int(0), int(0)));
        assert_eq!(pi1_model(&s).unwrap(), (int(0), int(2)));
    }

    #[test]
    fn model_of_segment() {
        assert_eq!(pi1_model(&class_of(&seg(3, 7))).unwrap(), (int(1), int(4)));
        let prod = class_of(&seg(0, 2)).multiply(&class_of(&seg(0, 3))).unwrap();
        assert_eq!(pi1_model(&prod).unwrap(), pi1_multiply(&(int(1), int(2)), &(int(1), int(3))));
        assert!(pi1_model(&AlgebraElement::one(2)).is_err());
    }

    #[test]
    fn euler_parts() {
        let p = class_of(&Polytope::cube(2));
        let (chi, plus) = euler_decompose(&p);
        assert_eq!(chi, int(1));
        assert_eq!(plus, &p - &AlgebraElement::one(2));
        assert_eq!(plus.euler(), int(0));
        let (chi, plus) = euler_decompose(&p.scale(&int(2)));
        assert_eq!(chi, int(2));
        assert_eq!(plus.euler(), int(0));
        let diff = &p - &class_of(&seg(0, 1).affine_image(&[vector(&[1]), vector(&[0])], &[int(0), int(0)]));
        assert_eq!(euler_decompose(&diff), (int(0), diff.clone()));
    }

    #[test]
    fn dilations() {
        let x = class_of(&Polytope::cube(2));
        assert_eq!(dilate_class(&x, &int(1)).unwrap(), x);
        let back = dilate_class(&dilate_class(&x, &int(2)).unwrap(), &frac(1, 2)).unwrap();
        assert_eq!(back, x);
        assert!(dilate_class(&x, &int(0)).is_err());
        assert_eq!(x.dilate_class(&int(0)).unwrap(), AlgebraElement::one(2));
        assert_eq!(dilate_class(&x, &int(2)).unwrap(), x.multiply(&x).unwrap());
    }

    #[test]
    fn summands() {
        let sq = Polytope::cube(2);
        let half = sq.dilate(&frac(1, 2)).unwrap();
        assert!(is_weak_summand(&half, &sq) && is_summand(&half, &sq));
        let e1 = convex_hull(&[vector(&[0, 0]), vector(&[1, 0])]).unwrap();
        assert!(is_summand(&e1, &sq));
        let big = sq.dilate(&int(2)).unwrap();
        assert!(is_weak_summand(&big, &sq));
        assert!(!is_summand(&big, &sq));
        let tri = convex_hull(&[vector(&[0, 0]), vector(&[1, 0]), vector(&[0, 1])]).unwrap();
        assert!(!is_weak_summand(&tri, &sq));
    }
}

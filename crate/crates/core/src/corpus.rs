//! Named test polytopes and replays of a few small worked examples.

use crate::algebra::AlgebraElement;
use crate::error::{PolyError, Result};
use crate::grading::divide_class;
use crate::polytope::{convex_hull, minkowski_sum, Polytope};
use crate::rational::{int, vector};
use crate::simple_function::{is_zero, vertex_nilpotence};
use crate::arrangement::DEFAULT_MAX_HYPERPLANES;
use crate::rational::format_rational;
use crate::weights::{minkowski_map, simple_refinement, WeightVector, DEFAULT_SEED};

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub note: &'static str,
    pub polytope: Polytope,
}

const NAMES: &[(&str, &str)] = &[
    ("point", "the origin of the plane"),
    ("segment", "[0,1] on the line"),
    ("diagonal-segment", "segment from (0,0) to (1,1) in the plane"),
    ("triangle", "standard lattice triangle"),
    ("square", "unit square"),
    ("pentagon", "lattice pentagon without central symmetry"),
    ("hexagon", "unit square plus the triangle (-1,0),(1,0),(0,1)"),
    ("parallelogram-a", "area 2, spanned by (2,0) and (1,1)"),
    ("parallelogram-b", "area 2, spanned by (1,0) and (1,2)"),
    ("tilted-triangle", "triangle e1,e2,e3 in 3-space, not full-dimensional"),
    ("tetrahedron", "standard lattice simplex in 3-space"),
    ("cube", "unit cube in 3-space"),
    ("pyramid", "square pyramid, not simple"),
];

pub const FIGURES: &[&str] = &["one-dim-nilpotence", "division-by-4", "equal-area-parallelograms"];

fn hull(raw: &[&[i64]]) -> Polytope {
    convex_hull(&raw.iter().map(|p| vector(p)).collect::<Vec<_>>()).expect("corpus polytope")
}

fn build(name: &str) -> Option<Polytope> {
    Some(match name {
        "point" => Polytope::origin(2),
        "segment" => hull(&[&[0], &[1]]),
        "diagonal-segment" => hull(&[&[0, 0], &[1, 1]]),
        "triangle" => hull(&[&[0, 0], &[1, 0], &[0, 1]]),
        "square" => Polytope::cube(2),
        "pentagon" => hull(&[&[0, 0], &[2, 0], &[3, 2], &[1, 3], &[0, 1]]),
        "hexagon" => minkowski_sum(&Polytope::cube(2), &hull(&[&[-1, 0], &[1, 0], &[0, 1]])).expect("sum"),
        "parallelogram-a" => hull(&[&[0, 0], &[2, 0], &[3, 1], &[1, 1]]),
        "parallelogram-b" => hull(&[&[0, 0], &[1, 0], &[2, 2], &[1, 2]]),
        "tilted-triangle" => hull(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
        "tetrahedron" => hull(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
        "cube" => Polytope::cube(3),
        "pyramid" => hull(&[&[0, 0, 0], &[2, 0, 0], &[0, 2, 0], &[2, 2, 0], &[1, 1, 1]]),
        _ => return None,
    })
}

pub fn corpus_names() -> Vec<&'static str> {
    NAMES.iter().map(|(n, _)| *n).collect()
}

pub fn corpus_entry(name: &str) -> Result<CorpusEntry> {
    let &(name, note) = NAMES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| PolyError::NotFound(format!("corpus entry {name:?}")))?;
    Ok(CorpusEntry { name, note, polytope: build(name).expect("listed") })
}

pub fn corpus(name: &str) -> Result<Polytope> {
    corpus_entry(name).map(|e| e.polytope)
}

#[derive(Clone, Debug)]
pub struct FigureReport {
    pub name: String,
    pub passed: bool,
    pub lines: Vec<String>,
}

/// Grades separated by `|`, e.g. `[1, 1 | 0, 2 | 2]`.
fn inline(w: &WeightVector) -> String {
    let grades: Vec<String> =
        w.grades.iter().map(|g| g.iter().map(format_rational).collect::<Vec<_>>().join(", ")).collect();
    format!("[{}]", grades.join(" | "))
}

pub fn verify_figure(name: &str) -> Result<FigureReport> {
    let mut lines = Vec::new();
    let passed = match name {
        "one-dim-nilpotence" => {
            let seg = corpus("segment")?;
            let f = vertex_nilpotence(&seg)?;
            lines.push(format!("([P]-[0])*([P]-[1]) expands to {} terms", f.len()));
            let zero = is_zero(&f, DEFAULT_MAX_HYPERPLANES)?;
            lines.push(format!("zero function: {zero}"));
            let s = &AlgebraElement::class_of(&seg) - &AlgebraElement::one(1);
            let square = s.pow(2)?;
            let phi = minkowski_map(&square, &seg)?;
            lines.push(format!("phi((class-1)^2) = {}", inline(&phi)));
            zero && phi.is_zero()
        }
        "division-by-4" => {
            let t = corpus("triangle")?;
            let h = divide_class(&t, 4)?;
            let reference = simple_refinement(&t, DEFAULT_SEED)?.polytope;
            let lhs = minkowski_map(&h, &reference)?.scale(&int(4));
            let aug = &AlgebraElement::class_of(&t) - &AlgebraElement::one(2);
            let rhs = minkowski_map(&aug, &reference)?;
            lines.push(format!("h has {} terms, integral: {}", h.len(), h.is_integral()));
            lines.push(format!("4*phi(h)       = {}", inline(&lhs)));
            lines.push(format!("phi(class - 1) = {}", inline(&rhs)));
            h.is_integral() && lhs == rhs
        }
        "equal-area-parallelograms" => {
            let a = corpus("parallelogram-a")?;
            let b = corpus("parallelogram-b")?;
            let reference = minkowski_sum(&a, &b)?;
            let half_open = |gens: [&[i64]; 2]| -> Result<AlgebraElement> {
                let mut x = AlgebraElement::one(2);
                for g in gens {
                    let s = hull(&[&[0, 0], g]);
                    x = x.multiply(&(&AlgebraElement::class_of(&s) - &AlgebraElement::one(2)))?;
                }
                Ok(x)
            };
            let ha = minkowski_map(&half_open([&[2, 0], &[1, 1]])?, &reference)?;
            let hb = minkowski_map(&half_open([&[1, 0], &[1, 2]])?, &reference)?;
            let pa = minkowski_map(&AlgebraElement::class_of(&a), &reference)?;
            let pb = minkowski_map(&AlgebraElement::class_of(&b), &reference)?;
            lines.push(format!("half-open A: {}", inline(&ha)));
            lines.push(format!("half-open B: {}", inline(&hb)));
            lines.push(format!("class A:     {}", inline(&pa)));
            lines.push(format!("class B:     {}", inline(&pb)));
            let same_half_open = ha == hb && ha.grade_is_zero(0) && ha.grade_is_zero(1);
            let same_area = pa.grade(2) == pb.grade(2) && pa.volume() == &int(2);
            let classes_differ = pa.grade(1) != pb.grade(1);
            lines.push(format!("half-open classes agree: {same_half_open}"));
            lines.push(format!("areas agree, classes differ: {}", same_area && classes_differ));
            same_half_open && same_area && classes_differ
        }
        _ => return Err(PolyError::NotFound(format!("figure {name:?}"))),
    };
    Ok(FigureReport { name: name.to_string(), passed, lines })
}

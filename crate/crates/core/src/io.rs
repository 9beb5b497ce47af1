//! JSON interchange formats. Rationals are always strings (`"p/q"` or `"p"`).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraElement;
use crate::error::{PolyError, Result};
use crate::polytope::{convex_hull_with_limit, Polytope, DEFAULT_MAX_DIM};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::simple_function::SimpleFunction;
use crate::weights::{face_id_string, parse_face_id, MinkowskiWeight};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeJson {
    pub ambient_dim: usize,
    pub vertices: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub coefficient: String,
    pub polytope: PolytopeJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightJson {
    pub reference: PolytopeJson,
    pub grade: usize,
    pub values: BTreeMap<String, String>,
}

fn json_error(e: serde_json::Error) -> PolyError {
    PolyError::Parse(format!("line {}, column {}: {}", e.line(), e.column(), e))
}

impl PolytopeJson {
    pub fn from_polytope(p: &Polytope) -> Self {
        PolytopeJson {
            ambient_dim: p.ambient_dim(),
            vertices: p.vertices().iter().map(|v| v.iter().map(format_rational).collect()).collect(),
        }
    }

    pub fn to_polytope(&self, max_dim: usize) -> Result<Polytope> {
        if self.ambient_dim > max_dim {
            return Err(PolyError::DimensionLimit { dim: self.ambient_dim, max: max_dim });
        }
        if self.vertices.is_empty() {
            return Ok(Polytope::empty(self.ambient_dim));
        }
        let pts = self
            .vertices
            .iter()
            .map(|v| {
                if v.len() != self.ambient_dim {
                    return Err(PolyError::DimensionMismatch { expected: self.ambient_dim, found: v.len() });
                }
                v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        convex_hull_with_limit(&pts, max_dim)
    }
}

pub fn parse_polytope(text: &str) -> Result<Polytope> {
    parse_polytope_with_limit(text, DEFAULT_MAX_DIM)
}

pub fn parse_polytope_with_limit(text: &str, max_dim: usize) -> Result<Polytope> {
    let raw: PolytopeJson = serde_json::from_str(text).map_err(json_error)?;
    raw.to_polytope(max_dim)
}

pub fn polytope_to_json(p: &Polytope) -> String {
    serde_json::to_string(&PolytopeJson::from_polytope(p)).expect("serializable")
}

pub fn parse_simple_function(text: &str, max_dim: usize) -> Result<SimpleFunction> {
    let raw: Vec<TermJson> = serde_json::from_str(text).map_err(json_error)?;
    let first = raw.first().ok_or(PolyError::EmptyInput)?;
    let d = first.polytope.ambient_dim;
    let terms = raw
        .iter()
        .map(|t| Ok((t.polytope.to_polytope(max_dim)?, parse_rational(&t.coefficient)?)))
        .collect::<Result<Vec<_>>>()?;
    SimpleFunction::from_terms(d, terms)
}

pub fn simple_function_to_json(f: &SimpleFunction) -> String {
    let raw: Vec<TermJson> = f
        .terms()
        .map(|(p, c)| TermJson { coefficient: format_rational(c), polytope: PolytopeJson::from_polytope(p) })
        .collect();
    serde_json::to_string(&raw).expect("serializable")
}

pub fn parse_weight(text: &str, max_dim: usize) -> Result<MinkowskiWeight> {
    let raw: WeightJson = serde_json::from_str(text).map_err(json_error)?;
    let reference = raw.reference.to_polytope(max_dim)?;
    let mut values = BTreeMap::new();
    for (k, v) in &raw.values {
        values.insert(parse_face_id(k)?, parse_rational(v)?);
    }
    MinkowskiWeight::from_map(&reference, raw.grade, &values)
}

pub fn weight_to_json(w: &MinkowskiWeight) -> String {
    let raw = WeightJson {
        reference: PolytopeJson::from_polytope(&w.reference),
        grade: w.grade,
        values: w.to_map().iter().map(|(k, v)| (face_id_string(k), format_rational(v))).collect(),
    };
    serde_json::to_string(&raw).expect("serializable")
}

/// Parses a small expression language over the classes of dilates of `P`:
/// a sum of terms `[c*]atom`, where `atom` is `class` (for `⟦P⟧`),
/// `class@λ` (for `⟦λP⟧`) or a bare rational `c` (for `c·1`).
///
/// Example: `"class@2 - 2*class + 1"`.
pub fn parse_element(expr: &str, p: &Polytope) -> Result<AlgebraElement> {
    let d = p.ambient_dim();
    let bad = |msg: &str| PolyError::Parse(format!("{msg} in element expression {expr:?}"));
    let compact: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad("empty expression"));
    }
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !current.is_empty() {
            terms.push((negative, std::mem::take(&mut current)));
            negative = ch == '-';
        } else if (ch == '+' || ch == '-') && current.is_empty() {
            if i > 0 && terms.is_empty() {
                return Err(bad("dangling sign"));
            }
            negative ^= ch == '-';
        } else {
            current.push(ch);
        }
    }
    if current.is_empty() {
        return Err(bad("trailing sign"));
    }
    terms.push((negative, current));
    let mut x = AlgebraElement::zero(d);
    for (neg, term) in terms {
        let (coef, atom) = match term.split_once('*') {
            Some((c, a)) => (parse_rational(c).map_err(|_| bad("bad coefficient"))?, a.to_string()),
            None => (Rational::from_integer(1.into()), term.clone()),
        };
        let coef = if neg { -coef } else { coef };
        let value = if atom == "class" {
            AlgebraElement::class_of(p)
        } else if let Some(l) = atom.strip_prefix("class@") {
            let lambda = parse_rational(l).map_err(|_| bad("bad dilation factor"))?;
            AlgebraElement::class_of(&p.dilate(&lambda)?)
        } else {
            let c = parse_rational(&atom).map_err(|_| bad("unknown atom"))?;
            AlgebraElement::one(d).scale(&c)
        };
        x = &x + &value.scale(&coef);
    }
    Ok(x)
}

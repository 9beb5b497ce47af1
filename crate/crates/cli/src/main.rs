//! `polyalg`: command-line front end for exact polytope algebra.
//!
//! Polytope arguments are JSON files, `-` for stdin, or `corpus:<name>`.
//! Exit status is 0 on success, 1 when an identity check fails and 2 on
//! usage or input errors.

use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use polyalg::algebra::{pi1_model, AlgebraElement};
use polyalg::arrangement::DEFAULT_MAX_HYPERPLANES;
use polyalg::corpus::{corpus_entry, corpus_names, verify_figure};
use polyalg::grading::{divide_class, graded_components, log_series, power_of_augmentation};
use polyalg::io::{
    parse_element, parse_polytope_with_limit, parse_simple_function, parse_weight, PolytopeJson,
};
use polyalg::polytope::{minkowski_sum_all, DEFAULT_MAX_DIM};
use polyalg::rational::{format_rational, parse_rational, to_f64};
use polyalg::simple_function::{
    equal_as_functions_with_limit, is_zero, star_inverse, vertex_nilpotence, SimpleFunction,
};
use polyalg::summand_cone::{reconstruct_from_1weight, summand_cone_with_limit, DEFAULT_MAX_EDGES};
use polyalg::valuations::{
    ehrhart, lattice_count, mixed_volume_algebra, mixed_volume_polarization, volume_polynomial,
};
use polyalg::weights::{
    build_frames, check_balanced, common_reference, face_id_string, minkowski_map,
    minkowski_relation_residual, minkowski_relation_residual_euclidean, simple_refinement,
    weight_of_summand, WeightVector, DEFAULT_SEED,
};
use polyalg::{volume, Convention, PolyError, Polytope, Rational};

#[derive(Parser, Debug)]
#[command(name = "polyalg", version, about = "Exact polytope algebra at desk scale")]
struct Cli {
    /// Volume and normal convention
    #[arg(long, global = true, value_enum, default_value_t = ConventionArg::Lattice)]
    convention: ConventionArg,

    /// Tolerance for checks in the euclidean convention
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Largest accepted ambient dimension
    #[arg(long, global = true, env = "POLYALG_MAX_DIM", default_value_t = DEFAULT_MAX_DIM)]
    max_dim: usize,

    /// Largest hyperplane arrangement used by exact zero tests
    #[arg(long, global = true, env = "POLYALG_MAX_HYPERPLANES", default_value_t = DEFAULT_MAX_HYPERPLANES)]
    max_hyperplanes: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConventionArg {
    Lattice,
    Euclidean,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Route {
    Polarization,
    Algebra,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Convex hull: vertices, facets and affine hull
    Hull { input: String },
    /// Face counts and faces by dimension
    Faces { input: String },
    /// Volume of a polytope in its affine hull
    Volume { input: String },
    /// Euler characteristic of a polytope's indicator
    Euler { input: String },
    /// List corpus entries, or print one
    Corpus { name: Option<String> },
    /// Replay a named worked example
    VerifyFigure { name: String },

    /// Evaluate a simple function at a point
    SfEval {
        input: String,
        /// Comma-separated rational coordinates
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Minkowski product of two simple functions
    SfProduct { left: String, right: String },
    /// Euler characteristic of a simple function
    SfEuler { input: String },
    /// Check that the product of ([P] - [v]) over the vertices vanishes
    SfNilpotence { input: String },
    /// Inverse of [P] under the Minkowski product
    SfInverse { input: String },
    /// Decide whether two simple functions agree pointwise
    SfEqual { left: String, right: String },

    /// Product of two elements built from classes of polytopes
    ClassMul {
        left: String,
        right: String,
        #[arg(long, default_value = "class", allow_hyphen_values = true)]
        left_element: String,
        #[arg(long, default_value = "class", allow_hyphen_values = true)]
        right_element: String,
    },
    /// Dilation of an element
    ClassDilate {
        input: String,
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value = "class", allow_hyphen_values = true)]
        element: String,
    },
    /// Logarithm of a class
    ClassLog { input: String },
    /// Homogeneous components of an element
    ClassGrade {
        input: String,
        #[arg(long, default_value = "class", allow_hyphen_values = true)]
        element: String,
        #[arg(long)]
        reference: Option<String>,
    },
    /// Divide the augmentation of a class by an integer
    ClassDivide {
        input: String,
        #[arg(long)]
        m: u64,
    },
    /// Power of the augmentation and whether it vanishes
    Nilpotence {
        input: String,
        #[arg(long)]
        r: u32,
    },
    /// The pair (Euler characteristic, length) of a 1-dimensional element
    Pi1 {
        input: String,
        #[arg(long, default_value = "class", allow_hyphen_values = true)]
        element: String,
    },

    /// Orthogonal frames selecting each face
    Frames { input: String },
    /// Minkowski map of an element
    Phi {
        input: String,
        #[arg(long, default_value = "class", allow_hyphen_values = true)]
        element: String,
        #[arg(long)]
        reference: Option<String>,
    },
    /// Write the weight of a summand on the faces of a reference
    Weight {
        reference: String,
        #[arg(long)]
        summand: String,
        #[arg(long)]
        grade: usize,
    },
    /// Check the balancing condition of a weight file
    BalanceCheck { input: String },
    /// Check the Minkowski relation of the facets
    MinkRelations { input: String },
    /// Extreme rays of the cone of weak summands
    SummandCone {
        input: String,
        #[arg(long, default_value_t = DEFAULT_MAX_EDGES)]
        max_edges: usize,
    },
    /// Rebuild a polytope from a grade-1 weight file
    Reconstruct { input: String },

    /// Mixed volume of d bodies in dimension d
    MixedVolume {
        inputs: Vec<String>,
        #[arg(long, value_enum, default_value_t = Route::Both)]
        route: Route,
    },
    /// Ehrhart polynomial of a lattice polytope
    Ehrhart { input: String },
    /// Count lattice points
    Count {
        input: String,
        #[arg(long, default_value_t = 1)]
        dilate: u64,
    },
    /// Coefficients of the volume polynomial
    VolPoly { inputs: Vec<String> },
}

struct Outcome {
    text: String,
    json: Value,
    ok: bool,
}

impl Outcome {
    fn new(text: String, json: Value) -> Self {
        Outcome { text, json, ok: true }
    }

    fn check(text: String, json: Value, ok: bool) -> Self {
        Outcome { text, json, ok }
    }
}

#[derive(Debug)]
struct CliError {
    context: String,
    source: PolyError,
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.context.is_empty() {
            write!(f, "{}", self.source)
        } else {
            write!(f, "{}: {}", self.context, self.source)
        }
    }
}

impl From<PolyError> for CliError {
    fn from(source: PolyError) -> Self {
        CliError { context: String::new(), source }
    }
}

type CliResult<T> = Result<T, CliError>;

fn with_context<T>(r: polyalg::Result<T>, context: &str) -> CliResult<T> {
    r.map_err(|source| CliError { context: context.to_string(), source })
}

struct Ctx {
    convention: Convention,
    tolerance: f64,
    max_dim: usize,
    max_hyperplanes: usize,
}

impl Ctx {
    fn read(&self, arg: &str) -> CliResult<String> {
        if arg == "-" {
            let mut s = String::new();
            std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
                .map_err(|e| CliError { context: "stdin".into(), source: PolyError::Parse(e.to_string()) })?;
            return Ok(s);
        }
        std::fs::read_to_string(Path::new(arg))
            .map_err(|e| CliError { context: arg.to_string(), source: PolyError::Parse(e.to_string()) })
    }

    fn polytope(&self, arg: &str) -> CliResult<Polytope> {
        if let Some(name) = arg.strip_prefix("corpus:") {
            return with_context(corpus_entry(name).map(|e| e.polytope), arg);
        }
        let text = self.read(arg)?;
        with_context(parse_polytope_with_limit(&text, self.max_dim), arg)
    }

    fn simple_function(&self, arg: &str) -> CliResult<SimpleFunction> {
        if arg.starts_with("corpus:") {
            return Ok(SimpleFunction::indicator(&self.polytope(arg)?));
        }
        let text = self.read(arg)?;
        with_context(parse_simple_function(&text, self.max_dim), arg)
    }

    fn polytopes(&self, args: &[String]) -> CliResult<Vec<Polytope>> {
        args.iter().map(|a| self.polytope(a)).collect()
    }
}

fn q(x: &Rational) -> String {
    format_rational(x)
}

fn qs(xs: &[Rational]) -> String {
    format!("({})", xs.iter().map(q).collect::<Vec<_>>().join(", "))
}

fn qs_json(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(|x| Value::String(q(x))).collect())
}

fn polytope_json(p: &Polytope) -> Value {
    serde_json::to_value(PolytopeJson::from_polytope(p)).expect("serializable")
}

fn sf_json(f: &SimpleFunction) -> Value {
    Value::Array(
        f.terms()
            .map(|(p, c)| json!({"coefficient": q(c), "polytope": polytope_json(p)}))
            .collect(),
    )
}

fn sf_text(f: &SimpleFunction) -> String {
    if f.is_empty() {
        return "0\n".into();
    }
    let mut s = String::new();
    for (p, c) in f.terms() {
        let vs: Vec<String> = p.vertices().iter().map(|v| qs(v)).collect();
        let _ = writeln!(s, "{} * [conv {}]", q(c), vs.join(" "));
    }
    s
}

fn element_json(x: &AlgebraElement) -> Value {
    Value::Array(
        x.terms()
            .map(|(p, c)| json!({"coefficient": q(c), "polytope": polytope_json(p)}))
            .collect(),
    )
}

fn element_text(x: &AlgebraElement) -> String {
    if x.is_empty() {
        return "0\n".into();
    }
    let mut s = String::new();
    for (p, c) in x.terms() {
        let vs: Vec<String> = p.vertices().iter().map(|v| qs(v)).collect();
        let _ = writeln!(s, "{} * class[conv {}]", q(c), vs.join(" "));
    }
    s
}

fn weights_text(w: &WeightVector, convention: Convention) -> String {
    let mut s = String::new();
    match convention {
        Convention::Lattice => {
            for (k, g) in w.grades.iter().enumerate() {
                let vals: Vec<String> = g.iter().map(q).collect();
                let _ = writeln!(s, "grade {k}: [{}]", vals.join(", "));
            }
        }
        Convention::Euclidean => {
            for (k, g) in w.euclidean().iter().enumerate() {
                let vals: Vec<String> = g.iter().map(|x| format!("{x:.12}")).collect();
                let _ = writeln!(s, "grade {k}: [{}]", vals.join(", "));
            }
        }
    }
    s
}

fn weights_json(w: &WeightVector, convention: Convention) -> Value {
    let grades: Vec<Value> = match convention {
        Convention::Lattice => w.grades.iter().map(|g| qs_json(g)).collect(),
        Convention::Euclidean => w.euclidean().into_iter().map(|g| json!(g)).collect(),
    };
    let keys: Vec<Vec<String>> =
        (0..w.grades.len()).map(|k| w.face_keys(k).iter().map(|f| face_id_string(f)).collect()).collect();
    json!({"faces": keys, "grades": grades})
}

/// The given reference, or a simple refinement of `p` (seed reported).
fn reference(ctx: &Ctx, p: &Polytope, given: Option<&str>) -> CliResult<(Polytope, Option<u64>)> {
    match given {
        Some(arg) => Ok((ctx.polytope(arg)?, None)),
        None => {
            let r = simple_refinement(p, DEFAULT_SEED)?;
            Ok((r.polytope, r.seed))
        }
    }
}

fn seed_line(seed: Option<u64>) -> String {
    match seed {
        Some(s) => format!("reference perturbed with seed {s:#x}\n"),
        None => String::new(),
    }
}

fn run(cli: &Cli) -> CliResult<Outcome> {
    let ctx = Ctx {
        convention: match cli.convention {
            ConventionArg::Lattice => Convention::Lattice,
            ConventionArg::Euclidean => Convention::Euclidean,
        },
        tolerance: cli.tolerance,
        max_dim: cli.max_dim,
        max_hyperplanes: cli.max_hyperplanes,
    };
    Ok(match &cli.command {
        Command::Hull { input } => {
            let p = ctx.polytope(input)?;
            let mut text = format!("dim {} in ambient dim {}\nvertices:\n", p.dim(), p.ambient_dim());
            for v in p.vertices() {
                let _ = writeln!(text, "  {}", qs(v));
            }
            text.push_str("facets (normal . x <= offset):\n");
            for h in p.facets() {
                let _ = writeln!(text, "  {} <= {}", qs(&h.normal), q(&h.offset));
            }
            for e in p.equations() {
                let _ = writeln!(text, "  {} = {}", qs(&e.normal), q(&e.offset));
            }
            let facets: Vec<Value> =
                p.facets().iter().map(|h| json!({"normal": qs_json(&h.normal), "offset": q(&h.offset)})).collect();
            let eqs: Vec<Value> =
                p.equations().iter().map(|h| json!({"normal": qs_json(&h.normal), "offset": q(&h.offset)})).collect();
            Outcome::new(
                text,
                json!({"dim": p.dim(), "polytope": polytope_json(&p), "facets": facets, "equations": eqs}),
            )
        }
        Command::Faces { input } => {
            let p = ctx.polytope(input)?;
            let fl = p.face_lattice();
            let fv = fl.f_vector();
            let mut text = format!("f-vector: {fv:?}\nsimple: {}\n", p.is_simple());
            let mut by_dim = Vec::new();
            for k in 0..=p.dim().max(0) {
                let faces: Vec<String> =
                    fl.faces_of_dim(k).iter().map(|&f| face_id_string(&fl.face(f).vertices)).collect();
                let _ = writeln!(text, "dim {k}: {}", faces.iter().map(|f| format!("{{{f}}}")).collect::<Vec<_>>().join(" "));
                by_dim.push(faces);
            }
            Outcome::new(text, json!({"f_vector": fv, "simple": p.is_simple(), "faces": by_dim}))
        }
        Command::Volume { input } => {
            let p = ctx.polytope(input)?;
            let v = volume(&p, ctx.convention)?;
            let text = match &v.exact {
                Some(x) => format!("{}\n", q(x)),
                None => format!("{:.15} +/- {:.1e}\n", v.approx, v.error_bound),
            };
            Outcome::new(
                text,
                json!({"dim": p.dim(), "exact": v.exact.as_ref().map(q), "approx": v.approx, "error_bound": v.error_bound}),
            )
        }
        Command::Euler { input } => {
            let p = ctx.polytope(input)?;
            let chi = SimpleFunction::indicator(&p).euler();
            Outcome::new(format!("{}\n", q(&chi)), json!({"euler": q(&chi)}))
        }
        Command::Corpus { name } => match name {
            None => {
                let mut text = String::new();
                let mut entries = Vec::new();
                for n in corpus_names() {
                    let e = corpus_entry(n)?;
                    let _ = writeln!(text, "{:<20} {}", e.name, e.note);
                    entries.push(json!({"name": e.name, "note": e.note}));
                }
                Outcome::new(text, Value::Array(entries))
            }
            Some(n) => {
                let e = corpus_entry(n)?;
                let pj = polytope_json(&e.polytope);
                Outcome::new(format!("{pj}\n"), json!({"name": e.name, "note": e.note, "polytope": pj}))
            }
        },
        Command::VerifyFigure { name } => {
            let r = verify_figure(name)?;
            let mut text = String::new();
            for line in &r.lines {
                text.push_str(line.trim_end());
                text.push('\n');
            }
            let _ = writeln!(text, "{}: {}", r.name, if r.passed { "pass" } else { "FAIL" });
            Outcome::check(text, json!({"figure": r.name, "passed": r.passed, "lines": r.lines}), r.passed)
        }

        Command::SfEval { input, point } => {
            let f = ctx.simple_function(input)?;
            let x = point.split(',').map(|s| parse_rational(s.trim())).collect::<polyalg::Result<Vec<_>>>()?;
            if x.len() != f.ambient_dim() {
                return Err(PolyError::DimensionMismatch { expected: f.ambient_dim(), found: x.len() }.into());
            }
            let v = f.evaluate(&x);
            Outcome::new(format!("{}\n", q(&v)), json!({"value": q(&v)}))
        }
        Command::SfProduct { left, right } => {
            let f = ctx.simple_function(left)?.star(&ctx.simple_function(right)?)?;
            Outcome::new(sf_text(&f), sf_json(&f))
        }
        Command::SfEuler { input } => {
            let chi = ctx.simple_function(input)?.euler();
            Outcome::new(format!("{}\n", q(&chi)), json!({"euler": q(&chi)}))
        }
        Command::SfNilpotence { input } => {
            let p = ctx.polytope(input)?;
            let f = vertex_nilpotence(&p)?;
            let zero = is_zero(&f, ctx.max_hyperplanes)?;
            let text = format!("vertices: {}\nterms: {}\nzero function: {zero}\n", p.vertices().len(), f.len());
            Outcome::check(text, json!({"vertices": p.vertices().len(), "terms": f.len(), "zero": zero}), zero)
        }
        Command::SfInverse { input } => {
            let p = ctx.polytope(input)?;
            let inv = star_inverse(&p)?;
            let unit = SimpleFunction::unit(p.ambient_dim());
            let check = SimpleFunction::indicator(&p).star(&inv)?;
            let ok = equal_as_functions_with_limit(&check, &unit, ctx.max_hyperplanes)?;
            let text = format!("{}verified: {ok}\n", sf_text(&inv));
            Outcome::check(text, json!({"inverse": sf_json(&inv), "verified": ok}), ok)
        }
        Command::SfEqual { left, right } => {
            let f = ctx.simple_function(left)?;
            let g = ctx.simple_function(right)?;
            let eq = equal_as_functions_with_limit(&f, &g, ctx.max_hyperplanes)?;
            Outcome::check(format!("equal: {eq}\n"), json!({"equal": eq}), eq)
        }

        Command::ClassMul { left, right, left_element, right_element } => {
            let x = parse_element(left_element, &ctx.polytope(left)?)?;
            let y = parse_element(right_element, &ctx.polytope(right)?)?;
            let z = x.multiply(&y)?;
            Outcome::new(element_text(&z), element_json(&z))
        }
        Command::ClassDilate { input, lambda, element } => {
            let x = parse_element(element, &ctx.polytope(input)?)?;
            let z = x.dilate_class(&parse_rational(lambda)?)?;
            Outcome::new(element_text(&z), element_json(&z))
        }
        Command::ClassLog { input } => {
            let p = ctx.polytope(input)?;
            let series = log_series(&p)?;
            let x = series.to_element()?;
            let coeffs: Vec<String> = series.coefficients().iter().map(q).collect();
            let text = format!("series in s = class - 1: [{}]\n{}", coeffs.join(", "), element_text(&x));
            Outcome::new(text, json!({"series": coeffs, "element": element_json(&x)}))
        }
        Command::ClassGrade { input, element, reference: given } => {
            let p = ctx.polytope(input)?;
            let x = parse_element(element, &p)?;
            let (r, seed) = reference(&ctx, &p, given.as_deref())?;
            let parts = graded_components(&x, &r)?;
            let mut text = seed_line(seed);
            let mut comps = Vec::new();
            for (k, w) in parts.weights.iter().enumerate() {
                let _ = writeln!(text, "component {k}:");
                for line in weights_text(w, ctx.convention).lines() {
                    let _ = writeln!(text, "  {line}");
                }
                comps.push(weights_json(w, ctx.convention));
            }
            let _ = writeln!(text, "unique: {}", parts.unique);
            Outcome::check(text, json!({"components": comps, "unique": parts.unique, "seed": seed}), parts.unique)
        }
        Command::ClassDivide { input, m } => {
            let p = ctx.polytope(input)?;
            let h = divide_class(&p, *m)?;
            let (r, seed) = reference(&ctx, &p, None)?;
            let lhs = minkowski_map(&h, &r)?.scale(&Rational::from_integer((*m).into()));
            let aug = &AlgebraElement::class_of(&p) - &AlgebraElement::one(p.ambient_dim());
            let ok = lhs == minkowski_map(&aug, &r)?;
            let text = format!(
                "{}{}integral: {}\nm * phi(h) = phi(class - 1): {ok}\n",
                seed_line(seed),
                element_text(&h),
                h.is_integral()
            );
            Outcome::check(text, json!({"quotient": element_json(&h), "integral": h.is_integral(), "verified": ok}), ok)
        }
        Command::Nilpotence { input, r } => {
            let p = ctx.polytope(input)?;
            let x = power_of_augmentation(&p, *r)?;
            let (reference, seed) = reference(&ctx, &p, None)?;
            let zero = minkowski_map(&x, &reference)?.is_zero();
            let expected = (*r as isize) > p.dim();
            let text = format!("{}terms: {}\nphi zero: {zero}\nexpected zero: {expected}\n", seed_line(seed), x.len());
            Outcome::check(text, json!({"terms": x.len(), "zero": zero, "expected_zero": expected}), zero == expected)
        }
        Command::Pi1 { input, element } => {
            let x = parse_element(element, &ctx.polytope(input)?)?;
            let (a, b) = pi1_model(&x)?;
            Outcome::new(format!("({}, {})\n", q(&a), q(&b)), json!({"euler": q(&a), "length": q(&b)}))
        }

        Command::Frames { input } => {
            let p = ctx.polytope(input)?;
            let frames = build_frames(&p)?;
            let fl = p.face_lattice();
            let mut text = String::new();
            let mut out = Vec::new();
            for (id, frame) in &frames {
                let key = face_id_string(&fl.face(*id).vertices);
                let dirs: Vec<String> = frame.directions.iter().map(|u| qs(u)).collect();
                let _ = writeln!(text, "{{{key}}}: [{}]", dirs.join(", "));
                out.push(json!({"face": key, "directions": frame.directions.iter().map(|u| qs_json(u)).collect::<Vec<_>>()}));
            }
            Outcome::new(text, Value::Array(out))
        }
        Command::Phi { input, element, reference: given } => {
            let p = ctx.polytope(input)?;
            let x = parse_element(element, &p)?;
            let (r, seed) = reference(&ctx, &p, given.as_deref())?;
            let w = minkowski_map(&x, &r)?;
            let text = format!("{}{}", seed_line(seed), weights_text(&w, ctx.convention));
            let mut j = weights_json(&w, ctx.convention);
            j["seed"] = json!(seed);
            Outcome::new(text, j)
        }
        Command::Weight { reference, summand, grade } => {
            let p = ctx.polytope(reference)?;
            let s = ctx.polytope(summand)?;
            let w = weight_of_summand(&p, &s, *grade)?;
            let text = polyalg::io::weight_to_json(&w);
            let j: Value = serde_json::from_str(&text).expect("valid json");
            Outcome::new(format!("{text}\n"), j)
        }
        Command::BalanceCheck { input } => {
            let text = ctx.read(input)?;
            let w = with_context(parse_weight(&text, ctx.max_dim), input)?;
            let report = check_balanced(&w)?;
            let mut out = String::new();
            let mut res = Vec::new();
            for (key, r) in &report.residuals {
                let _ = writeln!(out, "{{{}}}: {}", face_id_string(key), qs(r));
                res.push(json!({"face": face_id_string(key), "residual": qs_json(r)}));
            }
            let _ = writeln!(out, "balanced: {}", report.balanced);
            Outcome::check(out, json!({"balanced": report.balanced, "residuals": res}), report.balanced)
        }
        Command::MinkRelations { input } => {
            let p = ctx.polytope(input)?;
            match ctx.convention {
                Convention::Lattice => {
                    let r = minkowski_relation_residual(&p)?;
                    let ok = r.iter().all(|x| x == &Rational::from_integer(0.into()));
                    Outcome::check(format!("residual: {}\nzero: {ok}\n", qs(&r)), json!({"residual": qs_json(&r), "zero": ok}), ok)
                }
                Convention::Euclidean => {
                    let r = minkowski_relation_residual_euclidean(&p)?;
                    let norm = r.iter().map(|x| x * x).sum::<f64>().sqrt();
                    let ok = norm <= ctx.tolerance;
                    Outcome::check(
                        format!("residual: {r:?}\nnorm: {norm:e}\nwithin tolerance: {ok}\n"),
                        json!({"residual": r, "norm": norm, "zero": ok}),
                        ok,
                    )
                }
            }
        }
        Command::SummandCone { input, max_edges } => {
            let p = ctx.polytope(input)?;
            let cone = summand_cone_with_limit(&p, *max_edges)?;
            let edges: Vec<String> = cone.edges.iter().map(|e| face_id_string(e)).collect();
            let mut text = format!("edges: {}\nrays: {}\n", edges.iter().map(|e| format!("{{{e}}}")).collect::<Vec<_>>().join(" "), cone.rays.len());
            let mut rays = Vec::new();
            for ray in &cone.rays {
                let vs: Vec<String> = ray.polytope.vertices().iter().map(|v| qs(v)).collect();
                let _ = writeln!(text, "  {} -> dim {} conv {}", qs(&ray.weights), ray.polytope.dim(), vs.join(" "));
                rays.push(json!({"weights": qs_json(&ray.weights), "polytope": polytope_json(&ray.polytope)}));
            }
            Outcome::new(text, json!({"edges": edges, "rays": rays}))
        }
        Command::Reconstruct { input } => {
            let text = ctx.read(input)?;
            let w = with_context(parse_weight(&text, ctx.max_dim), input)?;
            if w.grade != 1 {
                return Err(PolyError::DimensionMismatch { expected: 1, found: w.grade }.into());
            }
            let q = reconstruct_from_1weight(&w.reference, &w.values)?;
            let pj = polytope_json(&q);
            Outcome::new(format!("{pj}\n"), pj)
        }

        Command::MixedVolume { inputs, route } => {
            let bodies = ctx.polytopes(inputs)?;
            let pol = matches!(route, Route::Polarization | Route::Both)
                .then(|| mixed_volume_polarization(&bodies))
                .transpose()?;
            let alg = if matches!(route, Route::Algebra | Route::Both) {
                let r = common_reference(&bodies, DEFAULT_SEED)?;
                Some(mixed_volume_algebra(&bodies, Some(&r.polytope))?)
            } else {
                None
            };
            let mut text = String::new();
            if let Some(v) = &pol {
                let _ = writeln!(text, "polarization: {}", q(v));
            }
            if let Some(v) = &alg {
                let _ = writeln!(text, "algebra: {}", q(v));
            }
            let ok = match (&pol, &alg) {
                (Some(a), Some(b)) => {
                    let _ = writeln!(text, "agree: {}", a == b);
                    a == b
                }
                _ => true,
            };
            Outcome::check(text, json!({"polarization": pol.as_ref().map(q), "algebra": alg.as_ref().map(q), "agree": ok}), ok)
        }
        Command::Ehrhart { input } => {
            let p = ctx.polytope(input)?;
            let e = ehrhart(&p)?;
            let mut text = format!("counts E(0..): {:?}\n", e.counts);
            let _ = writeln!(text, "binomial basis: [{}]", e.binomial.iter().map(q).collect::<Vec<_>>().join(", "));
            let _ = writeln!(text, "monomial basis: [{}]", e.monomial.iter().map(q).collect::<Vec<_>>().join(", "));
            let mut checks = Vec::new();
            for (n, pred, count) in &e.checks {
                let _ = writeln!(text, "E({n}): predicted {}, counted {count}", q(pred));
                checks.push(json!({"n": n, "predicted": q(pred), "counted": count}));
            }
            let ok = e.consistent();
            let _ = writeln!(text, "consistent: {ok}");
            Outcome::check(
                text,
                json!({"counts": e.counts, "binomial": qs_json(&e.binomial), "monomial": qs_json(&e.monomial), "checks": checks, "consistent": ok}),
                ok,
            )
        }
        Command::Count { input, dilate } => {
            let p = ctx.polytope(input)?.dilate(&Rational::from_integer((*dilate).into()))?;
            let n = lattice_count(&p)?;
            Outcome::new(format!("{n}\n"), json!({"count": n}))
        }
        Command::VolPoly { inputs } => {
            let bodies = ctx.polytopes(inputs)?;
            let poly = volume_polynomial(&bodies)?;
            let mut text = String::new();
            let mut coeffs = Vec::new();
            for (exps, c) in poly.monomials() {
                let mono: Vec<String> = exps
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { format!("l{}", i + 1) } else { format!("l{}^{e}", i + 1) })
                    .collect();
                let _ = writeln!(text, "{} {}", q(&c), mono.join("*"));
                coeffs.push(json!({"exponents": exps, "coefficient": q(&c)}));
            }
            let total = minkowski_sum_all(poly.dim, &bodies)?;
            let ones = vec![Rational::from_integer(1.into()); bodies.len()];
            let ok = poly.evaluate(&ones)? == polyalg::volume::full_volume(&total);
            if ctx.convention == Convention::Euclidean {
                let _ = writeln!(text, "at all ones: {:.12}", to_f64(&poly.evaluate(&ones)?));
            }
            Outcome::check(text, json!({"dim": poly.dim, "coefficients": coeffs, "sum_check": ok}), ok)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

//! Acceptance suite: twelve identity checks, one pass/fail line each.
//!
//! Lattice-convention checks are exact. Euclidean-convention checks use
//! `EUCLIDEAN_TOL` as a relative tolerance.

use std::process::ExitCode;
use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polyalg::algebra::{pi1_model, pi1_multiply, AlgebraElement};
use polyalg::arrangement::DEFAULT_MAX_HYPERPLANES;
use polyalg::corpus::{corpus, corpus_names, verify_figure, FIGURES};
use polyalg::grading::{divide_class, graded_components, graded_representatives, power_of_augmentation};
use polyalg::polytope::{convex_hull, Polytope};
use polyalg::rational::{binomial, frac, int, pow, to_f64, Rational};
use polyalg::simple_function::{is_zero, vertex_nilpotence};
use polyalg::summand_cone::{reconstruct_from_1weight, summand_cone};
use polyalg::valuations::{ehrhart, lattice_count, mixed_volume_algebra, mixed_volume_polarization};
use polyalg::volume::full_volume;
use polyalg::weights::{
    check_balanced, common_reference, minkowski_map, minkowski_relation_residual,
    minkowski_relation_residual_euclidean, phi_equal, simple_refinement, translation_equal,
    weight_of_summand, WeightVector, DEFAULT_SEED,
};

const EUCLIDEAN_TOL: f64 = 1e-9;
const RNG_SEED: u64 = 20240611;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Debug>(context: &str) -> impl FnOnce(E) -> String + '_ {
    move |e| format!("{context}: {e:?}")
}

fn reference_of(p: &Polytope) -> Polytope {
    simple_refinement(p, DEFAULT_SEED).expect("reference").polytope
}

fn full_dimensional_corpus() -> Vec<(&'static str, Polytope)> {
    corpus_names()
        .into_iter()
        .map(|n| (n, corpus(n).unwrap()))
        .filter(|(_, p)| p.is_full_dimensional())
        .collect()
}

fn c01_vertex_nilpotence() -> Check {
    let names = ["segment", "triangle", "square", "pentagon", "tetrahedron", "cube"];
    for name in names {
        let p = corpus(name).unwrap();
        let f = vertex_nilpotence(&p).map_err(err(name))?;
        let zero = is_zero(&f, DEFAULT_MAX_HYPERPLANES).map_err(err(name))?;
        ensure(zero, || format!("{name}: product is not the zero function"))?;
    }
    Ok(format!("{} polytopes, exact arrangement test", names.len()))
}

fn random_segment_combination(rng: &mut ChaCha8Rng) -> AlgebraElement {
    let mut x = AlgebraElement::one(1).scale(&frac(rng.random_range(-5..=5), rng.random_range(1..=4)));
    for _ in 0..rng.random_range(1..=3) {
        let a = frac(rng.random_range(-6..=6), rng.random_range(1..=3));
        let len = frac(rng.random_range(0..=6), rng.random_range(1..=3));
        let seg = convex_hull(&[vec![a.clone()], vec![a + len]]).unwrap();
        let c = frac(rng.random_range(-4..=4), rng.random_range(1..=3));
        x = &x + &AlgebraElement::class_of(&seg).scale(&c);
    }
    x
}

fn c02_one_dimensional_model() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(RNG_SEED);
    let unit = corpus("segment").unwrap();
    let pairs = 50;
    for i in 0..pairs {
        let x = random_segment_combination(&mut rng);
        let y = random_segment_combination(&mut rng);
        let (mx, my) = (pi1_model(&x).unwrap(), pi1_model(&y).unwrap());
        let sum = pi1_model(&(&x + &y)).unwrap();
        ensure(sum == (&mx.0 + &my.0, &mx.1 + &my.1), || format!("pair {i}: addition"))?;
        let prod = pi1_model(&x.multiply(&y).unwrap()).unwrap();
        ensure(prod == pi1_multiply(&mx, &my), || format!("pair {i}: multiplication"))?;
        // Injectivity against the Minkowski map on the unit segment.
        let same_model = mx == my;
        let same_phi = minkowski_map(&x, &unit).unwrap() == minkowski_map(&y, &unit).unwrap();
        ensure(same_model == same_phi, || format!("pair {i}: model and Minkowski map disagree"))?;
    }
    Ok(format!("{pairs} random pairs, exact"))
}

fn c03_nilpotency_degree() -> Check {
    let mut checked = 0;
    for name in corpus_names() {
        let p = corpus(name).unwrap();
        let reference = reference_of(&p);
        let d = p.dim() as u32;
        for r in d + 1..=d + 3 {
            let x = power_of_augmentation(&p, r).map_err(err(name))?;
            let w = minkowski_map(&x, &reference).map_err(err(name))?;
            ensure(w.is_zero(), || format!("{name}: r = {r} is not zero"))?;
            checked += 1;
        }
        if p.is_full_dimensional() && d > 0 {
            let x = power_of_augmentation(&p, d).map_err(err(name))?;
            let w = minkowski_map(&x, &reference).map_err(err(name))?;
            ensure(!w.is_zero(), || format!("{name}: r = dim is zero"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} powers over {} corpus entries, exact", corpus_names().len()))
}

fn c04_polynomiality() -> Check {
    let mut checked = 0;
    for name in corpus_names() {
        let p = corpus(name).unwrap();
        let reference = reference_of(&p);
        let reps = graded_representatives(&p).map_err(err(name))?;
        let parts: Vec<WeightVector> = reps
            .iter()
            .map(|s| minkowski_map(&s.to_element().unwrap(), &reference).unwrap())
            .collect();
        for n in 1..=6i64 {
            let direct = minkowski_map(&AlgebraElement::class_of(&p.dilate(&int(n)).unwrap()), &reference)
                .map_err(err(name))?;
            let mut series = WeightVector::zero(&reference);
            for (k, w) in parts.iter().enumerate() {
                series = series.add(&w.scale(&pow(&int(n), k as u32)));
            }
            ensure(direct == series, || format!("{name}: n = {n}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} dilates, exact"))
}

fn grading_pairs() -> Vec<(AlgebraElement, AlgebraElement)> {
    let class = |n: &str| AlgebraElement::class_of(&corpus(n).unwrap());
    let aug = |n: &str| &class(n) - &AlgebraElement::one(corpus(n).unwrap().ambient_dim());
    vec![
        (class("square"), class("triangle")),
        (aug("triangle"), class("diagonal-segment")),
        (&class("pentagon").scale(&int(2)) - &class("square"), aug("hexagon")),
        (class("parallelogram-a"), &class("parallelogram-b") + &class("triangle").scale(&frac(1, 2))),
        (class("cube"), aug("tetrahedron")),
    ]
}

fn c05_grading() -> Check {
    let pairs = grading_pairs();
    for (idx, (x, y)) in pairs.iter().enumerate() {
        let mut polys = x.supports();
        polys.extend(y.supports());
        let reference = common_reference(&polys, DEFAULT_SEED).map_err(err("reference"))?.polytope;
        let xy = x.multiply(y).unwrap();
        let gx = graded_components(x, &reference).map_err(err("x"))?;
        let gy = graded_components(y, &reference).map_err(err("y"))?;
        let gxy = graded_components(&xy, &reference).map_err(err("xy"))?;
        for (g, elem) in [(&gx, x), (&gy, y), (&gxy, &xy)] {
            ensure(g.unique, || format!("pair {idx}: components not unique"))?;
            let total = g.weights.iter().fold(WeightVector::zero(&reference), |acc, w| acc.add(w));
            ensure(total == minkowski_map(elem, &reference).unwrap(), || format!("pair {idx}: sum"))?;
            for (k, (w, c)) in g.weights.iter().zip(&g.components).enumerate() {
                ensure(&minkowski_map(c, &reference).unwrap() == w, || format!("pair {idx}: rep {k}"))?;
            }
            for r in [2i64, 3, 5] {
                let lhs = minkowski_map(&elem.dilate_class(&int(r)).unwrap(), &reference).unwrap();
                let rhs = g
                    .weights
                    .iter()
                    .enumerate()
                    .fold(WeightVector::zero(&reference), |acc, (k, w)| acc.add(&w.scale(&pow(&int(r), k as u32))));
                ensure(lhs == rhs, || format!("pair {idx}: eigenvalue law at r = {r}"))?;
            }
        }
        let d = reference.ambient_dim();
        for n in 0..=d {
            let mut expected = WeightVector::zero(&reference);
            for i in 0..=n {
                let prod = gx.components[i].multiply(&gy.components[n - i]).unwrap();
                expected = expected.add(&minkowski_map(&prod, &reference).unwrap());
            }
            ensure(expected == gxy.weights[n], || format!("pair {idx}: degree {n} of product"))?;
        }
    }
    Ok(format!("{} pairs, dilation factors 2, 3, 5, exact", pairs.len()))
}

fn c06_divisibility() -> Check {
    let mut checked = 0;
    for name in ["segment", "triangle", "square"] {
        let p = corpus(name).unwrap();
        let reference = reference_of(&p);
        let aug = &AlgebraElement::class_of(&p) - &AlgebraElement::one(p.ambient_dim());
        let target = minkowski_map(&aug, &reference).unwrap();
        for m in [2u64, 3, 4, 6] {
            let h = divide_class(&p, m).map_err(err(name))?;
            ensure(h.is_integral(), || format!("{name}: m = {m} has fractional coefficients"))?;
            let lhs = minkowski_map(&h, &reference).unwrap().scale(&int(m as i64));
            ensure(lhs == target, || format!("{name}: m = {m}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} quotients, exact and integral"))
}

fn c07_minkowski_relations() -> Check {
    let entries = full_dimensional_corpus();
    let mut worst = 0f64;
    for (name, p) in &entries {
        let r = minkowski_relation_residual(p).map_err(err(name))?;
        ensure(r.iter().all(Zero::is_zero), || format!("{name}: lattice residual {r:?}"))?;
        let e = minkowski_relation_residual_euclidean(p).map_err(err(name))?;
        let scale = to_f64(&full_volume(p)).max(1.0);
        let norm = e.iter().map(|x| x * x).sum::<f64>().sqrt() / scale;
        worst = worst.max(norm);
        ensure(norm < EUCLIDEAN_TOL, || format!("{name}: euclidean residual {norm:e}"))?;
    }
    Ok(format!("{} polytopes, lattice exact, euclidean worst {worst:.1e}", entries.len()))
}

fn c08_balancing_and_reconstruction() -> Check {
    let mut weights = 0;
    let mut rebuilt = 0;
    let mut references: Vec<(String, Polytope, Vec<Polytope>)> = Vec::new();
    for (name, p) in full_dimensional_corpus() {
        if p.dim() < 2 {
            continue;
        }
        if p.is_simple() {
            let cone = summand_cone(&p).map_err(err(name))?;
            let mut summands: Vec<Polytope> = cone.rays.iter().map(|r| r.polytope.clone()).collect();
            summands.push(p.clone());
            references.push((name.to_string(), p.clone(), summands));
        } else {
            let r = reference_of(&p);
            references.push((format!("refinement of {name}"), r, vec![p.clone()]));
        }
    }
    for (name, p, summands) in &references {
        for q in summands {
            for k in 0..p.ambient_dim() {
                let w = weight_of_summand(p, q, k).map_err(err(name))?;
                let report = check_balanced(&w).map_err(err(name))?;
                ensure(report.balanced, || format!("{name}: grade {k} weight is unbalanced"))?;
                weights += 1;
            }
            let y = weight_of_summand(p, q, 1).unwrap().values;
            let back = reconstruct_from_1weight(p, &y).map_err(err(name))?;
            ensure(translation_equal(&back, q), || format!("{name}: reconstruction differs"))?;
            rebuilt += 1;
        }
    }
    let rays = |n: &str| summand_cone(&corpus(n).unwrap()).unwrap().rays;
    ensure(rays("square").len() == 2, || "square should have 2 rays".into())?;
    ensure(rays("triangle").len() == 1, || "triangle should have 1 ray".into())?;
    let hex = rays("hexagon");
    let has_segment = hex.iter().any(|r| r.polytope.dim() == 1);
    let has_triangle = hex.iter().any(|r| r.polytope.dim() == 2 && r.polytope.vertices().len() == 3);
    ensure(has_segment && has_triangle, || "hexagon rays lack a segment or a triangle".into())?;
    Ok(format!("{weights} weights balanced, {rebuilt} reconstructions, ray counts 2/1/{}", hex.len()))
}

fn mixed_volume_tuples() -> Vec<Vec<&'static str>> {
    let planar = ["triangle", "square", "pentagon", "hexagon", "parallelogram-a", "parallelogram-b", "diagonal-segment"];
    let mut tuples = Vec::new();
    for (i, a) in planar.iter().enumerate() {
        for b in &planar[i..] {
            if tuples.len() < 14 && !(*a == "diagonal-segment" && *b == "diagonal-segment") {
                tuples.push(vec![*a, *b]);
            }
        }
    }
    tuples.extend([
        vec!["tetrahedron", "tetrahedron", "tetrahedron"],
        vec!["cube", "cube", "cube"],
        vec!["tetrahedron", "cube", "cube"],
        vec!["tetrahedron", "tetrahedron", "cube"],
        vec!["pyramid", "cube", "tetrahedron"],
        vec!["tilted-triangle", "cube", "tetrahedron"],
    ]);
    tuples
}

fn c09_mixed_volume() -> Check {
    let tuples = mixed_volume_tuples();
    for t in &tuples {
        let bodies: Vec<Polytope> = t.iter().map(|n| corpus(n).unwrap()).collect();
        let a = mixed_volume_polarization(&bodies).map_err(err("polarization"))?;
        let b = mixed_volume_algebra(&bodies, None).map_err(err("algebra"))?;
        ensure(a == b, || format!("{t:?}: polarization {a} vs algebra {b}"))?;
        let mut rev = bodies.clone();
        rev.reverse();
        ensure(mixed_volume_polarization(&rev).unwrap() == a, || format!("{t:?}: not symmetric"))?;
        if bodies.len() == 3 {
            let rot = vec![bodies[1].clone(), bodies[2].clone(), bodies[0].clone()];
            ensure(mixed_volume_polarization(&rot).unwrap() == a, || format!("{t:?}: not symmetric"))?;
        }
    }
    for (name, p) in full_dimensional_corpus() {
        let copies = vec![p.clone(); p.ambient_dim()];
        let v = mixed_volume_polarization(&copies).map_err(err(name))?;
        ensure(v == full_volume(&p), || format!("{name}: V(P, ..., P) != Vol(P)"))?;
    }
    Ok(format!("{} tuples, both routes agree exactly", tuples.len()))
}

fn c10_ehrhart() -> Check {
    let cases = [("square", Polytope::cube(2)), ("triangle", corpus("triangle").unwrap()),
                 ("2-cube", Polytope::cube(2)), ("3-cube", Polytope::cube(3))];
    for (name, p) in &cases {
        let e = ehrhart(p).map_err(err(name))?;
        let d = p.ambient_dim() as u64;
        ensure(e.counts[0] == 1, || format!("{name}: E(0) = {}", e.counts[0]))?;
        ensure(e.binomial.iter().all(Rational::is_integer), || format!("{name}: fractional coefficient"))?;
        for n in [d + 1, d + 2] {
            let counted = lattice_count(&p.dilate(&int(n as i64)).unwrap()).unwrap();
            ensure(e.predict(n) == int(counted as i64), || format!("{name}: E({n})"))?;
        }
        if name.ends_with("cube") || *name == "square" {
            let expected: Vec<Rational> = (0..=d).map(|k| Rational::from_integer(binomial(d, k))).collect();
            ensure(e.monomial == expected, || format!("{name}: not (n+1)^{d}"))?;
        }
    }
    Ok(format!("{} polytopes, predictions at d+1 and d+2 exact", cases.len()))
}

fn c11_figures() -> Check {
    for name in FIGURES {
        let r = verify_figure(name).map_err(err(name))?;
        ensure(r.passed, || format!("{name}: {}", r.lines.join("; ")))?;
    }
    Ok(format!("{} figures replayed", FIGURES.len()))
}

fn c12_injectivity() -> Check {
    let mut polys: Vec<(String, Polytope)> = Vec::new();
    for name in corpus_names() {
        let p = corpus(name).unwrap();
        let shift: Vec<Rational> = (0..p.ambient_dim()).map(|i| frac(2 * i as i64 + 1, 3)).collect();
        polys.push((format!("{name}+t"), p.translate(&shift)));
        polys.push((name.to_string(), p));
    }
    polys.push(("2*triangle".into(), corpus("triangle").unwrap().dilate(&int(2)).unwrap()));
    let (mut agree, mut differ) = (0, 0);
    for (i, (a, p)) in polys.iter().enumerate() {
        for (b, q) in &polys[i + 1..] {
            if p.ambient_dim() != q.ambient_dim() || p.dim() != q.dim() {
                continue;
            }
            let x = AlgebraElement::class_of(p);
            let y = AlgebraElement::class_of(q);
            let by_phi = phi_equal(&x, &y, None).map_err(err(a))?;
            let by_shape = translation_equal(p, q);
            ensure(by_phi == by_shape, || format!("{a} vs {b}: phi {by_phi}, translation {by_shape}"))?;
            if by_shape {
                agree += 1;
            } else {
                differ += 1;
            }
        }
    }
    ensure(agree > 0 && differ > 0, || "degenerate sample".into())?;
    Ok(format!("{} pairs ({agree} translates, {differ} distinct), exact", agree + differ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("vertex nilpotence", c01_vertex_nilpotence),
        ("one-dimensional model", c02_one_dimensional_model),
        ("nilpotency degree", c03_nilpotency_degree),
        ("polynomiality of dilates", c04_polynomiality),
        ("grading", c05_grading),
        ("divisibility", c06_divisibility),
        ("Minkowski relations", c07_minkowski_relations),
        ("balancing and reconstruction", c08_balancing_and_reconstruction),
        ("mixed volume routes", c09_mixed_volume),
        ("Ehrhart polynomials", c10_ehrhart),
        ("figure replays", c11_figures),
        ("injectivity of the Minkowski map", c12_injectivity),
    ];
    let start = Instant::now();
    let results: Vec<(Check, f64)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|(_, f)| {
                s.spawn(move || {
                    let t = Instant::now();
                    let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
                    (r, t.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("joined")).collect()
    });
    let mut failures = 0;
    for (i, ((name, _), (result, secs))) in criteria.iter().zip(&results).enumerate() {
        match result {
            Ok(detail) => println!("criterion {:>2} {name:<34} PASS  {detail} [{secs:.2}s]", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} {name:<34} FAIL  {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("{} of 12 criteria passed in {:.1}s", 12 - failures, start.elapsed().as_secs_f64());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

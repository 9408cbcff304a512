//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::f64::consts::PI;
use std::process::Command;

use capforge_core::solve::ShapeClass;
use capforge_core::{
    affine_coeffs, classify_quadrilateral, classify_triangle, construct_cap, edge_rotation, gap_closed_form,
    omega_pow, project_to_closed, q_tau, satisfies_closed_cap, solve_free_vertex, sweep_row,
    BoundaryShape, CapCurve, CapError, Complex64, DefectProfile, Polygon, TauParameter, Vertex,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;

type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn c(re: f64, im: f64) -> Vertex {
    Complex64::new(re, im)
}

fn random_polygon(rng: &mut ChaCha8Rng, n: usize) -> Polygon {
    loop {
        let steps: Vec<f64> = (0..n).map(|_| rng.gen_range(0.3..1.0)).collect();
        let total: f64 = steps.iter().sum();
        let mut angle = rng.gen_range(0.0..2.0 * PI);
        let scale = rng.gen_range(0.2..5.0);
        let center = c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let vs = steps
            .iter()
            .map(|s| {
                angle += s / total * 2.0 * PI;
                center + Vertex::from_polar(scale * rng.gen_range(0.35..1.0), angle)
            })
            .collect();
        if let Ok(p) = Polygon::new(vs) {
            return p;
        }
    }
}

fn random_triangle(rng: &mut ChaCha8Rng) -> Polygon {
    loop {
        let mut vs: Vec<Vertex> = (0..3).map(|_| c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))).collect();
        if capforge_core::signed_area(&vs).is_ok_and(|a| a < 0.0) {
            vs.swap(1, 2);
        }
        if let Ok(p) = Polygon::new(vs) {
            return p;
        }
    }
}

fn random_similarity(rng: &mut ChaCha8Rng) -> (Vertex, Vertex) {
    let a = Vertex::from_polar(rng.gen_range(0.1..10.0), rng.gen_range(-PI..PI));
    let b = c(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
    (a, b)
}

fn cap(p: &Polygon) -> CapCurve {
    construct_cap(p, &DefectProfile::uniform(p.len()), true).expect("uniform defects match the polygon")
}

fn gap_rel(p: &Polygon) -> f64 {
    cap(p).gap().norm() / p.perimeter()
}

fn corpus() -> Vec<Polygon> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    (0..1000)
        .map(|_| {
            let n = rng.gen_range(3..=50);
            random_polygon(&mut rng, n)
        })
        .collect()
}

/// The random corpus plus every projection that is still a valid polygon, so
/// both closed and open caps are represented.
fn corpus_with_projections(base: &[Polygon]) -> Vec<Polygon> {
    let mut all = base.to_vec();
    all.extend(base.iter().filter_map(|p| project_to_closed(p).polygon.ok()));
    all
}

fn c1_oracle(corpus: &[Polygon]) -> Outcome {
    let worst = corpus
        .iter()
        .map(|p| (cap(p).gap() - gap_closed_form(p)).norm() / p.perimeter())
        .fold(0.0, f64::max);
    outcome(worst <= 1e-10, format!("{} polygons, max |gap_iter - gap_closed|/perimeter = {worst:.3e} (tol 1e-10)", corpus.len()))
}

fn c2_linear_relation(corpus: &[Polygon]) -> Outcome {
    let mut disagree = 0;
    let mut closed = 0;
    for p in corpus {
        let by_residual = satisfies_closed_cap(p, TOL).closed;
        let by_gap = cap(p).gap().norm() <= TOL * p.perimeter();
        closed += usize::from(by_gap);
        disagree += usize::from(by_residual != by_gap);
    }
    outcome(disagree == 0, format!("{} polygons ({closed} closed), {disagree} disagreements at tol 1e-9", corpus.len()))
}

fn c3_triangles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let unit = [c(0.0, 0.0), c(1.0, 0.0), Vertex::from_polar(1.0, PI / 3.0)];
    let mut worst_eq: f64 = 0.0;
    let mut eq_class_ok = true;
    for _ in 0..500 {
        let (a, b) = random_similarity(&mut rng);
        let p = Polygon::new(unit.iter().map(|&v| a * v + b).collect()).unwrap();
        worst_eq = worst_eq.max(gap_rel(&p));
        let v = classify_triangle(&p, TOL).unwrap();
        eq_class_ok &= v.shape_class == ShapeClass::Equilateral && v.closes;
    }
    let mut min_generic = f64::INFINITY;
    let mut generic_class_ok = true;
    let mut count = 0;
    while count < 500 {
        let p = random_triangle(&mut rng);
        let e = p.edge_lengths();
        let spread = e.iter().cloned().fold(0.0, f64::max) - e.iter().cloned().fold(f64::INFINITY, f64::min);
        if spread / p.perimeter() < 1e-6 {
            continue;
        }
        count += 1;
        min_generic = min_generic.min(gap_rel(&p));
        let v = classify_triangle(&p, TOL).unwrap();
        generic_class_ok &= v.shape_class == ShapeClass::Generic && !v.closes;
    }
    outcome(
        worst_eq <= 1e-12 && min_generic > 1e-6 && eq_class_ok && generic_class_ok,
        format!(
            "equilateral max gap_rel = {worst_eq:.3e} (tol 1e-12); 500 non-equilateral min gap_rel = {min_generic:.3e} (> 1e-6); classifier agrees: {}",
            eq_class_ok && generic_class_ok
        ),
    )
}

fn c4_quadrilaterals() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut open_q = 0;
    let mut worst_q: f64 = 0.0;
    for _ in 0..500 {
        let tau = TauParameter::new(c(rng.gen_range(-3.0..3.0), rng.gen_range(0.05..3.0))).unwrap();
        let p = q_tau(tau).unwrap();
        let r = gap_rel(&p);
        worst_q = worst_q.max(r);
        open_q += usize::from(r > TOL || !classify_quadrilateral(&p, TOL).unwrap().closes);
    }
    let mut closed_generic = 0;
    let mut count = 0;
    let mut min_generic = f64::INFINITY;
    while count < 500 {
        let p = random_polygon(&mut rng, 4);
        let v = p.vertices();
        if ((v[1] - v[0]) - (v[2] - v[3])).norm() / p.perimeter() < 1e-6 {
            continue;
        }
        count += 1;
        let r = gap_rel(&p);
        min_generic = min_generic.min(r);
        closed_generic += usize::from(r <= TOL || classify_quadrilateral(&p, TOL).unwrap().closes);
    }
    outcome(
        open_q == 0 && closed_generic == 0,
        format!(
            "Q(tau): {open_q}/500 open, max gap_rel = {worst_q:.3e}; non-parallelograms: {closed_generic}/500 closed, min gap_rel = {min_generic:.3e}"
        ),
    )
}

fn c5_pentagon() -> Outcome {
    let fixed = [(1, c(0.0, 0.0)), (2, c(1.0, 0.0)), (3, c(1.0, 1.0)), (4, c(0.0, 1.0))];
    let cis = |t: f64| Vertex::from_polar(1.0, t);
    let a_ref = cis(-12.0 * PI / 5.0) - cis(-16.0 * PI / 5.0);
    let b_ref = 1.0 + cis(-3.0 * PI / 10.0) + cis(-3.0 * PI / 5.0) - Vertex::i() * cis(-12.0 * PI / 5.0);
    let coeffs = affine_coeffs(&fixed, 5, 5).unwrap();
    let da = (coeffs.a - a_ref).norm();
    let db = (coeffs.b - b_ref).norm();
    let v5 = solve_free_vertex(&fixed, 5, 5).unwrap();
    let mut vs: Vec<Vertex> = fixed.iter().map(|&(_, v)| v).collect();
    vs.push(v5);
    let (valid, g) = match Polygon::new(vs) {
        Ok(p) => (true, gap_rel(&p)),
        Err(_) => (false, f64::NAN),
    };
    outcome(
        valid && g <= 1e-12 && da <= 1e-12 && db <= 1e-12,
        format!("v5 = {:.16} {:+.16}i, gap_rel = {g:.3e}, |a - a_ref| = {da:.1e}, |b - b_ref| = {db:.1e}", v5.re, v5.im),
    )
}

fn c6_edge_rotation(corpus: &[Polygon]) -> Outcome {
    let mut worst: f64 = 0.0;
    for p in corpus {
        let n = p.len();
        let edges = cap(p).edges();
        let predicted = edge_rotation(p);
        let s = p.edges();
        for k in 0..n {
            let direct = omega_pow(n, k as i64) * s[k];
            let e = (edges[k] - direct).norm().max((predicted[k] - direct).norm());
            worst = worst.max(e / p.perimeter());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst_sign: f64 = 0.0;
    for _ in 0..200 {
        let p = random_polygon(&mut rng, 4);
        let s = p.edges();
        for (k, e) in cap(&p).edges().iter().enumerate() {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            worst_sign = worst_sign.max((e - sign * s[k]).norm() / p.perimeter());
        }
    }
    outcome(
        worst <= 1e-10 && worst_sign <= 1e-10,
        format!("max relative edge error = {worst:.3e}; n = 4 alternating sign error = {worst_sign:.3e} (tol 1e-10)"),
    )
}

fn c7_similarity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let n = rng.gen_range(3..=50);
        let p = random_polygon(&mut rng, n);
        let (a, b) = random_similarity(&mut rng);
        let q = p.similarity_apply(a, b).unwrap();
        let cp = cap(&p);
        let cq = cap(&q);
        let scale = a.norm() * p.perimeter();
        for (x, y) in cp.vertices.iter().zip(&cq.vertices) {
            worst = worst.max((a * x + b - y).norm() / scale);
        }
    }
    outcome(worst <= 1e-10, format!("200 triples, max relative deviation = {worst:.3e} (tol 1e-10)"))
}

fn c8_octagon() -> Outcome {
    let p = Polygon::from_xy(&[
        (0.0, 0.0),
        (0.5, 0.0),
        (1.0, 0.0),
        (1.0, 0.5),
        (1.0, 1.0),
        (0.5, 1.0),
        (0.0, 1.0),
        (0.0, 0.5),
    ])
    .unwrap();
    let curve = construct_cap(&p, &DefectProfile::uniform(8), false).unwrap();
    let closed = curve.gap().norm() <= 1e-12 * p.perimeter();
    let cycle = &curve.vertices[..8];
    let simple = capforge_core::is_simple(cycle, true, 1e-9).simple;
    let lengths_ok = curve.edges().iter().all(|e| (e.norm() - 0.5).abs() <= 1e-12);
    // Interior angles at cap vertices 1..=8: the seam, then the construction angles.
    let mut angles = vec![curve.seam_angle()];
    angles.extend_from_slice(&curve.cap_angles);
    let angles_ok = angles
        .iter()
        .enumerate()
        .all(|(k, a)| (a - if k % 2 == 0 { PI } else { PI / 2.0 }).abs() <= 1e-12);
    // Corners of the cap (vertices 2, 4, 6, 8) form a unit square, traversed
    // clockwise, whose side on the seam line is the polygon's side shifted by
    // half its length.
    let corners = [cycle[1], cycle[3], cycle[5], cycle[7]];
    let square_ok = (0..4).all(|k| {
        let e = corners[(k + 1) % 4] - corners[k];
        let f = corners[(k + 2) % 4] - corners[(k + 1) % 4];
        (e.norm() - 1.0).abs() <= 1e-12 && (-e * Vertex::i() - f).norm() <= 1e-12
    });
    let offset_ok = (corners[3] - c(-0.5, 0.0)).norm() <= 1e-12 && (corners[0] - c(0.5, 0.0)).norm() <= 1e-12;
    outcome(
        closed && simple && lengths_ok && angles_ok && square_ok && offset_ok,
        format!(
            "closed {closed}, simple {simple}, edges all 0.5 {lengths_ok}, angles alternate pi/pi/2 {angles_ok}, unit square {square_ok}, half-side offset {offset_ok}"
        ),
    )
}

fn c9_regular() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut worst_n = 0;
    for n in 3..=512 {
        let p = Polygon::new((0..n).map(|k| Vertex::from_polar(1.0, 2.0 * PI * k as f64 / n as f64)).collect()).unwrap();
        let r = satisfies_closed_cap(&p, TOL).residual.norm() / p.perimeter();
        if r > worst {
            worst = r;
            worst_n = n;
        }
    }
    outcome(worst <= 1e-12, format!("n = 3..=512, max residual/perimeter = {worst:.3e} at n = {worst_n} (tol 1e-12)"))
}

fn c10_sweeps() -> Outcome {
    let circle = BoundaryShape::Circle { radius: 1.0 };
    let worst_circle = (3..=512).map(|n| sweep_row(&circle, n).gap_rel).fold(0.0, f64::max);
    let ellipse = BoundaryShape::Ellipse { a: 2.0, b: 1.0 };
    let g8 = sweep_row(&ellipse, 8).gap_rel;
    let g64 = sweep_row(&ellipse, 64).gap_rel;
    outcome(
        worst_circle <= 1e-12 && g64 < g8,
        format!(
            "circle max gap_rel = {worst_circle:.3e} (tol 1e-12); ellipse(2,1) gap_rel(8) = {g8:.3e}, gap_rel(64) = {g64:.3e} (need 64 < 8)"
        ),
    )
}

fn c11_failure_mode() -> Outcome {
    let p = Polygon::from_xy(&[(0.0, 0.0), (1.0, 0.0), (0.5, 0.1)]).unwrap();
    let index = match construct_cap(&p, &DefectProfile::uniform(3), false) {
        Err(CapError::NonPositiveAngle { index, .. }) => Some(index),
        _ => None,
    };
    let dir = std::env::temp_dir().join(format!("capforge-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("flat.json");
    std::fs::write(&input, r#"{"vertices":[[0,0],[1,0],[0.5,0.1]]}"#).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_capforge")).arg("cap").arg(&input).output().unwrap();
    let _ = std::fs::remove_dir_all(&dir);
    let code = out.status.code();
    let stderr = String::from_utf8_lossy(&out.stderr);
    let names_vertex = stderr.contains("vertex 3");
    outcome(
        index == Some(3) && code == Some(2) && names_vertex,
        format!("library error index {index:?}, CLI exit {code:?}, message names vertex 3: {names_vertex}"),
    )
}

fn main() {
    let base = corpus();
    let with_proj = corpus_with_projections(&base);
    let criteria: Vec<(&str, &str, Check)> = vec![
        ("C1", "oracle equivalence", Box::new(|| c1_oracle(&base))),
        ("C2", "closed cap iff linear relation", Box::new(|| c2_linear_relation(&with_proj))),
        ("C3", "triangle classification", Box::new(c3_triangles)),
        ("C4", "quadrilateral classification", Box::new(c4_quadrilaterals)),
        ("C5", "pentagon closing vertex", Box::new(c5_pentagon)),
        ("C6", "edge rotation", Box::new(|| c6_edge_rotation(&base))),
        ("C7", "similarity equivariance", Box::new(c7_similarity)),
        ("C8", "square as octagon", Box::new(c8_octagon)),
        ("C9", "regular polygons close", Box::new(c9_regular)),
        ("C10", "sweep behavior", Box::new(c10_sweeps)),
        ("C11", "positivity failure", Box::new(c11_failure_mode)),
    ];
    let mut failed = Vec::new();
    for (id, name, check) in &criteria {
        let o = check();
        println!("[{}] {id} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed.push(*id);
        }
    }
    println!("acceptance: {}/{} passed", criteria.len() - failed.len(), criteria.len());
    if !failed.is_empty() {
        println!("failed: {}", failed.join(", "));
        std::process::exit(1);
    }
}

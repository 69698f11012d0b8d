//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so the summary is printed by `cargo test`.

mod common;

use std::time::{Duration, Instant};

use diagcheb::detect::{detect, DetectOptions, DetectionStatus, LevelStatus};
use diagcheb::least::least_for_certificate;
use diagcheb::oracle::{brute_force_least, remez_monic, sup_norm_estimate};
use diagcheb::poly::{compose_affine, AffineForm, Monomial, MultiPoly, UniPoly};
use diagcheb::roots::{compute_diagonal, isolate_real_roots, DEFAULT_TOL};
use diagcheb::signature::{build_functional, build_signature, verify_annihilation, verify_dual_optimality};
use diagcheb::{certify_analytic, check_certificate, least_norm, least_polynomial, SetDescription};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_601;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: String) -> Outcome {
    Outcome { ok, detail }
}

fn run(id: usize, name: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let o = f();
    let el = t.elapsed();
    let in_time = el <= budget;
    let ok = o.ok && in_time;
    println!(
        "criterion {id} [{name}]: {}  {}; {:.2?} of {:?}{}",
        if ok { "PASS" } else { "FAIL" },
        o.detail,
        el,
        budget,
        if in_time { "" } else { " (over budget)" }
    );
    ok
}

fn cube_value() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut exact = true;
    let mut failures = Vec::new();
    for d in 2..=5 {
        let s = SetDescription::cube(d);
        let c = certify_analytic(&s).expect("cube is analytic");
        for n in 1..=8 {
            let r = least_polynomial(&c, n).unwrap();
            let target = 2f64.powi(1 - n as i32);
            exact &= r.value == target;
            let e = sup_norm_estimate(&r.poly, &s, 100_000, SEED + (d * 10 + n) as u64).unwrap();
            let err = (e.max_val - target).abs();
            worst = worst.max(err);
            if err > 1e-10 || e.sample_max > target + 1e-10 {
                failures.push(format!("d={d} n={n}"));
            }
        }
    }
    outcome(
        exact && failures.is_empty(),
        format!("values exact: {exact}, max |sup − 2^(1−n)| = {worst:.2e} over 32 cases {failures:?}"),
    )
}

fn simplex_value() -> Outcome {
    let mut spread: f64 = 0.0;
    let mut exact = true;
    let mut worst_sup: f64 = 0.0;
    for n in 1..=6 {
        let target = 2f64.powi(1 - 2 * n as i32);
        let mut values = Vec::new();
        for d in 2..=6 {
            let s = SetDescription::SimplexOrdered { dim: d };
            let r = least_polynomial(&certify_analytic(&s).unwrap(), n).unwrap();
            exact &= r.value == target;
            values.push(r.value);
            let e = sup_norm_estimate(&r.poly, &s, 10_000, SEED + n as u64).unwrap();
            worst_sup = worst_sup.max((e.max_val - target).abs());
        }
        let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        spread = spread.max(hi - lo);
    }
    outcome(
        exact && spread <= 1e-12 && worst_sup <= 1e-10,
        format!("values = 2^(1−2n) exact: {exact}, spread across d = {spread:.1e}, max |sup − value| = {worst_sup:.1e}"),
    )
}

fn remez_cross_check() -> Outcome {
    let intervals = [(-1.0, 1.0), (0.0, 1.0), (-0.5f64.sqrt(), 0.5f64.sqrt()), (-(1.0f64 / 3.0).sqrt(), (1.0f64 / 3.0).sqrt())];
    let mut worst: f64 = 0.0;
    let mut errors = Vec::new();
    for (a, b) in intervals {
        for n in 1..=12 {
            match remez_monic(n, a, b, 200) {
                Ok(r) => {
                    let exact = least_norm(a, b, n).unwrap();
                    worst = worst.max((r.value - exact).abs() / exact);
                }
                Err(e) => errors.push(format!("n={n} [{a:.3}, {b:.3}]: {e}")),
            }
        }
    }
    outcome(
        worst <= 1e-8 && errors.is_empty(),
        format!("max relative error {worst:.2e} over 48 cases {errors:?}"),
    )
}

fn signature_optimality() -> Outcome {
    let mut worst_ann: f64 = 0.0;
    let mut worst_gap: f64 = 0.0;
    let mut support_ok = true;
    let mut all_pass = true;
    for s in (2..=4).flat_map(|d| [SetDescription::cube(d), SetDescription::SimplexOrdered { dim: d }]) {
        let c = certify_analytic(&s).unwrap();
        for n in 1..=8 {
            let l = build_functional(&build_signature(&c, n), n);
            support_ok &= l.points.len() == n + 1;
            worst_ann = worst_ann.max(verify_annihilation(&l, n, c.dim()).max_abs);
            let r = verify_dual_optimality(&l, &c, n).unwrap();
            worst_gap = worst_gap.max(r.gap);
            all_pass &= r.passes(1e-9);
        }
    }
    outcome(
        worst_ann <= 1e-10 && worst_gap <= 1e-9 && support_ok && all_pass,
        format!("max annihilation {worst_ann:.1e}, max gap {worst_gap:.1e}, support n+1: {support_ok}"),
    )
}

fn box_detection() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for d in [2, 3] {
        let g = common::box_constraints(d);
        let b = common::bbox(-1.0, 1.0, d);
        let opts = DetectOptions { bbox: Some(b.clone()), seed: SEED, ..DetectOptions::default() };
        let r = detect(&g, -1.0, 1.0, &opts).unwrap();
        let rho = r.levels.first().and_then(|l| l.rho).unwrap_or(f64::NAN);
        let sum: f64 = r.v_prime.iter().sum();
        let viol = match &r.certificate {
            Some(c) => {
                let set = SetDescription::Semialgebraic { constraints: g, bbox: Some(b) };
                check_certificate(&set, c, 10_000, SEED).unwrap().max_violation
            }
            None => f64::INFINITY,
        };
        ok &= r.status == DetectionStatus::Certified && r.level == 2 && rho <= 1e-6 && sum >= 1.0 - 1e-5 && viol <= 1e-4;
        notes.push(format!("d={d}: k={} rho2={rho:.1e} <v',1>={sum:.8} violation={viol:.1e}", r.level));
    }
    outcome(ok, notes.join("; "))
}

fn disk_detection() -> Outcome {
    let g = vec![common::ball(&[0.0, 0.0], 1.0)];
    let iv = compute_diagonal(&g, DEFAULT_TOL).unwrap();
    let b = common::bbox(-1.0, 1.0, 2);
    let opts = DetectOptions { bbox: Some(b.clone()), seed: SEED, ..DetectOptions::default() };
    let r = detect(&g, iv.lo, iv.hi, &opts).unwrap();
    let Some(c) = &r.certificate else {
        return outcome(false, format!("not certified, rho profile {:?}", r.rho_profile()));
    };
    let set = SetDescription::Semialgebraic { constraints: g, bbox: Some(b) };
    let viol = check_certificate(&set, c, 10_000, SEED).unwrap().max_violation;
    outcome(
        r.status == DetectionStatus::Certified && r.level <= 8 && viol <= 1e-4,
        format!(
            "diag [{:.10}, {:.10}], certified at k={} rho={:.1e} v'=({:.6}, {:.6}) violation={viol:.1e}",
            iv.lo,
            iv.hi,
            r.level,
            r.rho.unwrap_or(f64::NAN),
            r.v_prime[0],
            r.v_prime[1]
        ),
    )
}

fn rotation_triple() -> Outcome {
    let n = 3;
    let segments = [
        ("Ω1", vec![-1.0, -1.0], vec![1.0, 1.0], 0.25),
        ("Ω2", vec![0.0, -1.0], vec![0.0, 1.0], 0.0),
        ("Ω3", vec![-1.0, 1.0], vec![1.0, -1.0], 0.0),
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for (name, ea, eb, target) in segments {
        let s = SetDescription::Segment { endpoint_a: ea, endpoint_b: eb };
        let c = certify_analytic(&s).unwrap();
        let r = least_for_certificate(&c, n).unwrap();
        let e = sup_norm_estimate(&r.poly, &s, 10_000, SEED).unwrap();
        let lead = r.poly.leading_coeff_sum(n).unwrap();
        ok &= (r.value - target).abs() <= 1e-9 && (e.max_val - target).abs() <= 1e-9 && (lead - 1.0).abs() <= 1e-9;
        notes.push(format!("{name}: value {} sup {:.1e}", r.value, e.max_val));
    }
    // the closed forms x₁³ and (x₁ + x₂)³/8
    let c2 = certify_analytic(&SetDescription::Segment { endpoint_a: vec![0.0, -1.0], endpoint_b: vec![0.0, 1.0] }).unwrap();
    let p2 = least_for_certificate(&c2, n).unwrap().poly;
    let x1_cubed = MultiPoly::from_terms(2, [(Monomial::new(vec![3, 0]), 1.0)]).unwrap();
    let c3 = certify_analytic(&SetDescription::Segment { endpoint_a: vec![-1.0, 1.0], endpoint_b: vec![1.0, -1.0] }).unwrap();
    let p3 = least_for_certificate(&c3, n).unwrap().poly;
    let sum_cubed = compose_affine(&UniPoly::monomial(3), &AffineForm::new(vec![1.0, 1.0], 0.0)).scale(0.125);
    let forms = p2.max_abs_coeff_diff(&x1_cubed).max(p3.max_abs_coeff_diff(&sum_cubed));
    ok &= forms <= 1e-12;
    notes.push(format!("closed forms within {forms:.1e}"));
    outcome(ok, notes.join("; "))
}

fn pi_star_membership() -> (bool, String) {
    let mut sets: Vec<SetDescription> = Vec::new();
    for d in 1..=5 {
        sets.push(SetDescription::cube(d));
        sets.push(SetDescription::euclidean_ball(d));
        sets.push(SetDescription::SimplexOrdered { dim: d });
        sets.push(SetDescription::SimplexStandard { dim: d });
        sets.push(SetDescription::translated(SetDescription::euclidean_ball(d), 0.7));
    }
    sets.push(SetDescription::OwlBall { weights: vec![3.0, 2.0, 0.5] });
    sets.push(SetDescription::Segment { endpoint_a: vec![0.0, -1.0], endpoint_b: vec![0.0, 1.0] });
    sets.push(SetDescription::Segment { endpoint_a: vec![-1.0, 1.0], endpoint_b: vec![1.0, -1.0] });
    let mut certs: Vec<_> = sets.iter().map(|s| certify_analytic(s).unwrap()).collect();
    let disk = detect(
        &[common::ball(&[0.0, 0.0], 1.0)],
        -0.5f64.sqrt(),
        0.5f64.sqrt(),
        &DetectOptions::default(),
    )
    .unwrap();
    certs.extend(disk.certificate);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for c in &certs {
        for n in 1..=8 {
            let p = least_for_certificate(c, n).unwrap().poly;
            worst = worst.max((p.leading_coeff_sum(n).unwrap() - 1.0).abs());
            count += 1;
        }
    }
    (worst <= 1e-9, format!("Π*ₙ: {count} polynomials, max |lead sum − 1| = {worst:.1e}"))
}

fn rho_corpus() -> (bool, String) {
    let tol = 1e-6;
    let mut ok = true;
    let mut bad = Vec::new();
    let mut levels = 0;
    for inst in common::corpus() {
        let iv = compute_diagonal(&inst.g, DEFAULT_TOL).unwrap();
        let opts = DetectOptions {
            k_max: 6,
            run_all_levels: true,
            bbox: Some(inst.bbox.clone()),
            seed: SEED,
            ..DetectOptions::default()
        };
        let r = detect(&inst.g, iv.lo, iv.hi, &opts).unwrap();
        let rhos: Vec<f64> =
            r.levels.iter().filter(|l| l.status == LevelStatus::Solved).filter_map(|l| l.rho).collect();
        levels += rhos.len();
        let in_range = rhos.iter().all(|&p| (-tol..=1.0 + tol).contains(&p));
        let monotone = rhos.windows(2).all(|w| w[1] <= w[0] + tol);
        if !(in_range && monotone && r.monotone && rhos.len() >= 2) {
            ok = false;
            bad.push(format!("{} {:?}", inst.name, r.rho_profile()));
        }
    }
    (ok, format!("ρ corpus: 10 sets, {levels} solved levels, bad {bad:?}"))
}

fn sturm_recovery() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut spurious, mut missed, mut worst) = (0usize, 0usize, 0.0f64);
    for _ in 0..200 {
        let k = rng.random_range(1..=8);
        let mut roots: Vec<f64> = Vec::new();
        while roots.len() < k {
            let r = rng.random_range(-5.0..5.0);
            if roots.iter().all(|q: &f64| (q - r).abs() > 0.05) {
                roots.push(r);
            }
        }
        roots.sort_by(f64::total_cmp);
        let mut p = roots.iter().fold(UniPoly::constant(rng.random_range(0.5..3.0)), |p, r| &p * &UniPoly::new(vec![-r, 1.0]));
        if rng.random_bool(0.5) {
            p = &p * &UniPoly::new(vec![rng.random_range(0.1..2.0), rng.random_range(-0.5..0.5), 1.0]);
        }
        let found = isolate_real_roots(&p, 1e-12).unwrap_or_default();
        spurious += found.len().saturating_sub(roots.len());
        missed += roots.len().saturating_sub(found.len());
        if found.len() == roots.len() {
            worst = found.iter().zip(&roots).map(|(f, r)| (f - r).abs()).fold(worst, f64::max);
        }
    }
    (
        spurious == 0 && missed == 0 && worst < 1e-7,
        format!("Sturm: 200 polynomials, {spurious} spurious, {missed} missed, max root error {worst:.1e}"),
    )
}

fn compose_equivalence() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let mut worst: f64 = 0.0;
    for _ in 0..500 {
        let d = rng.random_range(1..=4);
        let deg = rng.random_range(0..=7);
        let u = UniPoly::new((0..=deg).map(|_| rng.random_range(-2.0..2.0)).collect());
        let f = AffineForm::new((0..d).map(|_| rng.random_range(-1.5..1.5)).collect(), rng.random_range(-1.0..1.0));
        let p = compose_affine(&u, &f);
        for _ in 0..5 {
            let x: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
            let direct = u.eval(f.eval(&x));
            worst = worst.max((p.eval(&x).unwrap() - direct).abs() / (1.0 + direct.abs()));
        }
    }
    (worst <= 1e-9, format!("compose_affine: 2500 evaluations, max relative error {worst:.1e}"))
}

fn brute_force() -> (bool, String) {
    let mut ok = true;
    let mut notes = Vec::new();
    for (name, s) in [("disk", SetDescription::euclidean_ball(2)), ("square", SetDescription::cube(2))] {
        let c = certify_analytic(&s).unwrap();
        let exact = least_norm(c.a, c.b, 2).unwrap();
        let r = brute_force_least(&s, 2, 10_000).unwrap();
        let err = (r.value - exact).abs();
        ok &= err <= 5e-3 && r.points >= 10_000;
        notes.push(format!("{name} {:.6} vs {exact} on {} points", r.value, r.points));
    }
    (ok, format!("brute force: {}", notes.join(", ")))
}

fn property_suites() -> Outcome {
    let parts = [pi_star_membership(), rho_corpus(), sturm_recovery(), compose_equivalence(), brute_force()];
    let ok = parts.iter().all(|p| p.0);
    let detail = parts
        .iter()
        .map(|(pass, d)| format!("\n    {} {d}", if *pass { "ok  " } else { "FAIL" }))
        .collect::<String>();
    outcome(ok, detail)
}

fn main() {
    let s = Duration::from_secs;
    let results = [
        run(1, "cube value", s(10), cube_value),
        run(2, "simplex value", s(5), simplex_value),
        run(3, "remez cross-check", s(5), remez_cross_check),
        run(4, "signature optimality", s(5), signature_optimality),
        run(5, "box detection", s(60), box_detection),
        run(6, "disk detection", s(120), disk_detection),
        run(7, "rotation triple", s(2), rotation_triple),
        run(8, "property suites", s(300), property_suites),
    ];
    let passed = results.iter().filter(|r| **r).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}

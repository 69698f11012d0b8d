use diagcheb::oracle::{brute_force_least, remez_monic, remez_monic_with, sup_norm_estimate, RemezInit};
use diagcheb::poly::MultiPoly;
use diagcheb::{certify_analytic, least_norm, least_polynomial, SetDescription};

#[test]
fn remez_matches_closed_form() {
    for (a, b) in [(-1.0, 1.0), (0.0, 1.0), (-2.0, 3.0)] {
        for n in 1..=10 {
            let r = remez_monic(n, a, b, 100).unwrap();
            let exact = least_norm(a, b, n).unwrap();
            assert!((r.value - exact).abs() <= 1e-8 * exact, "n={n} [{a},{b}]: {} vs {exact}", r.value);
        }
    }
}

#[test]
fn remez_from_uniform_start() {
    let r = remez_monic_with(6, -1.0, 1.0, 200, RemezInit::Uniform).unwrap();
    assert!((r.value - 2f64.powi(-5)).abs() <= 1e-8 * 2f64.powi(-5));
}

#[test]
fn sup_norm_of_coordinate_on_disk() {
    let s = SetDescription::euclidean_ball(2);
    let e = sup_norm_estimate(&MultiPoly::var(2, 0), &s, 100_000, 3).unwrap();
    assert!(e.max_val >= 0.99 && e.max_val <= 1.0 + 1e-12);
    let z = sup_norm_estimate(&MultiPoly::zero(2), &s, 1000, 3).unwrap();
    assert_eq!(z.max_val, 0.0);
}

#[test]
fn sup_norm_never_exceeds_least_value() {
    for s in [SetDescription::euclidean_ball(3), SetDescription::cube(3), SetDescription::SimplexStandard { dim: 3 }] {
        let c = certify_analytic(&s).unwrap();
        for n in 1..=5 {
            let r = least_polynomial(&c, n).unwrap();
            let e = sup_norm_estimate(&r.poly, &s, 20_000, 9).unwrap();
            assert!(e.sample_max <= r.value * (1.0 + 1e-9), "{s}: n={n}");
            assert!((e.max_val - r.value).abs() <= 1e-10, "{s}: n={n}");
        }
    }
}

#[test]
fn brute_force_brackets_least_value() {
    for s in [SetDescription::euclidean_ball(2), SetDescription::cube(2)] {
        let c = certify_analytic(&s).unwrap();
        for n in 1..=3 {
            let exact = least_norm(c.a, c.b, n).unwrap();
            let r = brute_force_least(&s, n, 10_000).unwrap();
            assert!(r.points >= 10_000);
            assert!(r.value <= exact + 1e-9, "{s} n={n}: lower {} vs {exact}", r.value);
            assert!((r.value - exact).abs() <= 5e-3, "{s} n={n}: {} vs {exact}", r.value);
        }
    }
}

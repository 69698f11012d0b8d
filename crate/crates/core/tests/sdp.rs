use diagcheb::sdp::{
    solve, verify_solution, BlockEntry, SdpConstraint, SdpObjective, SdpProblem, SdpStatus, SolverSettings,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Random orthonormal columns by Gram–Schmidt.
fn orthogonal(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let mut q: Vec<Vec<f64>> = Vec::new();
    while q.len() < n {
        let mut v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        for u in &q {
            let d: f64 = v.iter().zip(u).map(|(a, b)| a * b).sum();
            v.iter_mut().zip(u).for_each(|(a, b)| *a -= d * b);
        }
        let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm > 1e-6 {
            q.push(v.into_iter().map(|a| a / norm).collect());
        }
    }
    q
}

/// `Σ λ_k q_k q_kᵀ`
fn spectral(q: &[Vec<f64>], lambda: &[f64]) -> Vec<Vec<f64>> {
    let n = q.len();
    let mut m = vec![vec![0.0; n]; n];
    for (qk, l) in q.iter().zip(lambda) {
        for (row, qi) in m.iter_mut().zip(qk) {
            for (e, qj) in row.iter_mut().zip(qk) {
                *e += l * qi * qj;
            }
        }
    }
    m
}

#[allow(clippy::needless_range_loop)]
fn random_sym(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let v: f64 = rng.sample(StandardNormal);
            m[i][j] = v;
            m[j][i] = v;
        }
    }
    m
}

fn inner(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    a.iter().flatten().zip(b.iter().flatten()).map(|(x, y)| x * y).sum()
}

fn entries(block: usize, m: &[Vec<f64>]) -> Vec<BlockEntry> {
    let n = m.len();
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).map(|(i, j)| BlockEntry::new(block, i, j, m[i][j])).collect()
}

struct Planted {
    problem: SdpProblem,
    optimum: f64,
    x: Vec<Vec<Vec<f64>>>,
}

/// An SDP whose optimum is fixed by a strictly complementary pair: `X*`
/// and `S*` share eigenvectors with disjoint supports, `y*` is arbitrary
/// and the objective is `C = S* + Σ y_i A_i`.
fn planted(seed: u64, sizes: &[usize], ranks: &[usize], m: usize, n_free: usize) -> Planted {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = Vec::new();
    let mut s = Vec::new();
    for (&n, &r) in sizes.iter().zip(ranks) {
        let q = orthogonal(n, &mut rng);
        let lx: Vec<f64> = (0..n).map(|k| if k < r { rng.random_range(0.5..2.0) } else { 0.0 }).collect();
        let ls: Vec<f64> = (0..n).map(|k| if k < r { 0.0 } else { rng.random_range(0.5..2.0) }).collect();
        x.push(spectral(&q, &lx));
        s.push(spectral(&q, &ls));
    }
    let free: Vec<f64> = (0..n_free).map(|_| rng.sample(StandardNormal)).collect();
    let y: Vec<f64> = (0..m).map(|_| rng.sample(StandardNormal)).collect();

    let mut constraints = Vec::new();
    let mut c_mats: Vec<Vec<Vec<f64>>> = s.clone();
    let mut c_free = vec![0.0; n_free];
    for yi in &y {
        let a: Vec<Vec<Vec<f64>>> = sizes.iter().map(|&n| random_sym(n, &mut rng)).collect();
        let af: Vec<f64> = (0..n_free).map(|_| rng.sample(StandardNormal)).collect();
        let rhs = a.iter().zip(&x).map(|(ab, xb)| inner(ab, xb)).sum::<f64>()
            + af.iter().zip(&free).map(|(p, q)| p * q).sum::<f64>();
        for (cb, ab) in c_mats.iter_mut().zip(&a) {
            for (cr, ar) in cb.iter_mut().zip(ab) {
                cr.iter_mut().zip(ar).for_each(|(c, v)| *c += yi * v);
            }
        }
        c_free.iter_mut().zip(&af).for_each(|(c, v)| *c += yi * v);
        constraints.push(SdpConstraint {
            free: af.into_iter().enumerate().collect(),
            entries: a.iter().enumerate().flat_map(|(b, ab)| entries(b, ab)).collect(),
            rhs,
        });
    }
    let objective = SdpObjective {
        free: c_free.iter().copied().enumerate().collect(),
        entries: c_mats.iter().enumerate().flat_map(|(b, cb)| entries(b, cb)).collect(),
        constant: 0.0,
    };
    let optimum = c_mats.iter().zip(&x).map(|(cb, xb)| inner(cb, xb)).sum::<f64>()
        + c_free.iter().zip(&free).map(|(p, q)| p * q).sum::<f64>();
    let problem = SdpProblem { n_free, blocks: sizes.to_vec(), constraints, objective };
    Planted { problem, optimum, x }
}

#[test]
fn planted_optimum_is_recovered() {
    for seed in 0..4 {
        let p = planted(seed, &[4, 3], &[2, 1], 8, 1);
        let sol = solve(&p.problem, &SolverSettings::default()).unwrap();
        assert_eq!(sol.status, SdpStatus::Optimal, "seed {seed}");
        let rel = (sol.objective - p.optimum).abs() / p.optimum.abs().max(1.0);
        assert!(rel < 1e-6, "seed {seed}: {} vs {}", sol.objective, p.optimum);

        let check = verify_solution(&p.problem, &sol);
        assert!(check.primal_residual < 1e-6, "{check:?}");
        assert!(check.min_eigenvalue > -1e-8, "{check:?}");
        assert!(check.dual_min_eigenvalue > -1e-6, "{check:?}");
        assert!(check.stationarity < 1e-5, "{check:?}");
    }
}

#[test]
fn planted_primal_matches_when_unique() {
    // with many constraints relative to the face dimension the planted
    // point is the unique optimum
    let p = planted(11, &[3], &[1], 6, 0);
    let sol = solve(&p.problem, &SolverSettings::default()).unwrap();
    let x = &sol.blocks[0];
    let dev = (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .map(|(i, j)| (x[i * 3 + j] - p.x[0][i][j]).abs())
        .fold(0.0, f64::max);
    assert!(dev < 1e-4, "max deviation {dev}");
}

#[test]
fn solve_is_deterministic() {
    let p = planted(3, &[4, 2], &[2, 1], 6, 2);
    let a = solve(&p.problem, &SolverSettings::default()).unwrap();
    let b = solve(&p.problem, &SolverSettings::default()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn objective_scaling() {
    let p = planted(5, &[3, 3], &[1, 2], 7, 1);
    let base = solve(&p.problem, &SolverSettings::default()).unwrap();
    let mut scaled = p.problem.clone();
    scaled.objective.entries.iter_mut().for_each(|e| e.value *= 10.0);
    scaled.objective.free.iter_mut().for_each(|f| f.1 *= 10.0);
    let s = solve(&scaled, &SolverSettings::default()).unwrap();
    assert!((s.objective - 10.0 * base.objective).abs() < 1e-5 * (1.0 + base.objective.abs() * 10.0));

    let mut rows = p.problem.clone();
    for (i, c) in rows.constraints.iter_mut().enumerate() {
        let f = [0.1, 3.0, 25.0][i % 3];
        c.entries.iter_mut().for_each(|e| e.value *= f);
        c.free.iter_mut().for_each(|e| e.1 *= f);
        c.rhs *= f;
    }
    let r = solve(&rows, &SolverSettings::default()).unwrap();
    assert!((r.objective - base.objective).abs() < 1e-5 * (1.0 + base.objective.abs()));
}

#[test]
fn dump_round_trip_solves_identically() {
    let p = planted(8, &[3, 2], &[1, 1], 5, 1);
    let q = SdpProblem::from_dump(&p.problem.to_dump()).unwrap();
    let a = solve(&p.problem, &SolverSettings::default()).unwrap();
    let b = solve(&q, &SolverSettings::default()).unwrap();
    assert!((a.objective - b.objective).abs() < 1e-12);
}

#[test]
fn infeasible_problem_is_not_reported_optimal() {
    // X₀₀ = −1 with X ⪰ 0
    let p = SdpProblem {
        n_free: 0,
        blocks: vec![2],
        constraints: vec![SdpConstraint { free: vec![], entries: vec![BlockEntry::new(0, 0, 0, 1.0)], rhs: -1.0 }],
        objective: SdpObjective { free: vec![], entries: vec![BlockEntry::new(0, 1, 1, 1.0)], constant: 0.0 },
    };
    let settings = SolverSettings { max_iter: 20_000, ..SolverSettings::default() };
    let sol = solve(&p, &settings).unwrap();
    assert_ne!(sol.status, SdpStatus::Optimal);
}

//! Independent cross-checks: a Remez exchange for the univariate problem, a
//! sampled sup-norm estimate, and a discretized brute-force minimax.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{cholesky, cholesky_solve, solve_dense};
use crate::poly::{Monomial, MultiPoly, UniPoly};
use crate::sets::{SetDescription, SetError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("invalid input: {0}")]
    BadInput(String),
    #[error("exchange stagnated after {iterations} iterations (relative spread {spread:e})")]
    Stagnation { iterations: usize, spread: f64 },
    #[error("singular reference system")]
    Singular,
    #[error(transparent)]
    Set(#[from] SetError),
    #[error("minimax iteration did not converge: bounds [{lower}, {upper}]")]
    NoConvergence { lower: f64, upper: f64 },
}

/// Initial reference for the exchange.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RemezInit {
    ChebyshevExtrema,
    Uniform,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RemezResult {
    /// `max_{[a,b]} |tⁿ + q(t)|`
    pub value: f64,
    /// The optimal correction `q ∈ Π_{n−1}`.
    pub q: UniPoly,
    /// Final reference in ascending order.
    pub reference: Vec<f64>,
    /// `tⁿ + q(t)` at the reference points.
    pub reference_errors: Vec<f64>,
    pub iterations: usize,
}

const REMEZ_GRID_PER_DEGREE: usize = 400;
const REMEZ_CONVERGED: f64 = 1e-13;

/// Best approximation of `tⁿ` from `Π_{n−1}` on `[a, b]` by the exchange
/// algorithm, initialized at the Chebyshev extrema.
pub fn remez_monic(n: usize, a: f64, b: f64, iters: usize) -> Result<RemezResult, OracleError> {
    remez_monic_with(n, a, b, iters, RemezInit::ChebyshevExtrema)
}

pub fn remez_monic_with(
    n: usize,
    a: f64,
    b: f64,
    iters: usize,
    init: RemezInit,
) -> Result<RemezResult, OracleError> {
    if n == 0 {
        return Err(OracleError::BadInput("degree must be positive".into()));
    }
    if !a.is_finite() || !b.is_finite() || a >= b {
        return Err(OracleError::BadInput(format!("need a < b, got [{a}, {b}]")));
    }
    // t = m + h·s maps s ∈ [−1, 1] onto [a, b]; the error scales by hⁿ.
    let m = 0.5 * (a + b);
    let h = 0.5 * (b - a);

    let mut reference: Vec<f64> = match init {
        RemezInit::ChebyshevExtrema => {
            (0..=n).map(|j| -((j as f64 * std::f64::consts::PI / n as f64).cos())).collect()
        }
        RemezInit::Uniform => (0..=n).map(|j| -1.0 + 2.0 * j as f64 / n as f64).collect(),
    };
    let grid: Vec<f64> = {
        let g = REMEZ_GRID_PER_DEGREE * n + 1;
        (0..g).map(|i| -(((i as f64) * std::f64::consts::PI / (g - 1) as f64).cos())).collect()
    };

    let mut iterations = 0;
    let mut spread = f64::INFINITY;
    while iterations < iters.max(1) {
        iterations += 1;
        let p = solve_reference(n, &reference)?;
        let err = |s: f64| s.powi(n as i32) - p.eval(s);
        let new_ref = exchange(&grid, &err, n + 1, &reference);
        let e_ref: Vec<f64> = new_ref.iter().map(|&s| err(s).abs()).collect();
        let hi = e_ref.iter().copied().fold(0.0, f64::max);
        let lo = e_ref.iter().copied().fold(f64::INFINITY, f64::min);
        spread = if hi > 0.0 { (hi - lo) / hi } else { 0.0 };
        reference = new_ref;
        if spread <= REMEZ_CONVERGED {
            break;
        }
    }
    if spread > 1e-10 {
        return Err(OracleError::Stagnation { iterations, spread });
    }
    let p = solve_reference(n, &reference)?;

    // back to t: tⁿ + q(t) = hⁿ (sⁿ − p(s))
    let mut e_s = vec![0.0; n + 1];
    for (i, c) in p.coeffs().iter().enumerate() {
        e_s[i] = -c;
    }
    e_s[n] += 1.0;
    let hn = h.powi(n as i32);
    let e_t = UniPoly::new(e_s).compose_linear(1.0 / h, -m / h).scale(hn);
    let q = UniPoly::new(e_t.coeffs()[..n.min(e_t.coeffs().len())].to_vec());

    let err_s = |s: f64| s.powi(n as i32) - p.eval(s);
    let value = hn * grid.iter().map(|&s| err_s(s).abs()).fold(0.0, f64::max).max(
        reference.iter().map(|&s| err_s(s).abs()).fold(0.0, f64::max),
    );
    let reference_t: Vec<f64> = reference.iter().map(|s| m + h * s).collect();
    let reference_errors = reference_t
        .iter()
        .map(|&t| t.powi(n as i32) + q.eval(t))
        .collect();
    Ok(RemezResult { value, q, reference: reference_t, reference_errors, iterations })
}

/// Solves `Σ_{k<n} c_k s_iᵏ + (−1)ⁱ E = s_iⁿ` and returns `p = Σ c_k sᵏ`.
fn solve_reference(n: usize, reference: &[f64]) -> Result<UniPoly, OracleError> {
    let m = n + 1;
    let mut a = vec![0.0; m * m];
    let mut rhs = vec![0.0; m];
    for (i, &s) in reference.iter().enumerate() {
        let mut pow = 1.0;
        for k in 0..n {
            a[i * m + k] = pow;
            pow *= s;
        }
        a[i * m + n] = if i % 2 == 0 { 1.0 } else { -1.0 };
        rhs[i] = pow;
    }
    let sol = solve_dense(a, m, rhs).ok_or(OracleError::Singular)?;
    Ok(UniPoly::new(sol[..n].to_vec()))
}

/// Locates one extremum of `err` per sign run on `grid`, refines each by
/// golden-section search, and keeps `count` consecutive alternating points
/// containing the global maximum.
fn exchange(grid: &[f64], err: &dyn Fn(f64) -> f64, count: usize, fallback: &[f64]) -> Vec<f64> {
    let vals: Vec<f64> = grid.iter().map(|&s| err(s)).collect();
    let mut extrema: Vec<(f64, f64)> = Vec::new(); // (s, e)
    let mut i = 0;
    while i < grid.len() {
        let sign = vals[i] >= 0.0;
        let mut best = i;
        let mut j = i;
        while j < grid.len() && (vals[j] >= 0.0) == sign {
            if vals[j].abs() > vals[best].abs() {
                best = j;
            }
            j += 1;
        }
        let lo = grid[best.saturating_sub(1)];
        let hi = grid[(best + 1).min(grid.len() - 1)];
        let s = golden_max(err, lo, hi, grid[best]);
        extrema.push((s, err(s)));
        i = j;
    }
    if extrema.len() < count {
        return fallback.to_vec();
    }
    let (imax, _) = extrema
        .iter()
        .enumerate()
        .max_by(|x, y| x.1 .1.abs().total_cmp(&y.1 .1.abs()))
        .expect("non-empty");
    // window of `count` runs containing imax with the largest minimum
    let lo_start = imax.saturating_sub(count - 1);
    let hi_start = imax.min(extrema.len() - count);
    let start = (lo_start..=hi_start)
        .max_by(|&p, &q| {
            let min_at = |s: usize| extrema[s..s + count].iter().map(|e| e.1.abs()).fold(f64::INFINITY, f64::min);
            min_at(p).total_cmp(&min_at(q))
        })
        .unwrap_or(lo_start);
    extrema[start..start + count].iter().map(|e| e.0).collect()
}

fn golden_max(err: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64, start: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let f = |s: f64| err(s).abs();
    let mut best = (start, f(start));
    for edge in [lo, hi] {
        let v = f(edge);
        if v > best.1 {
            best = (edge, v);
        }
    }
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..80 {
        if hi - lo <= 1e-15 * (1.0 + lo.abs().max(hi.abs())) {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    let mid = 0.5 * (lo + hi);
    let v = f(mid);
    if v >= best.1 {
        mid
    } else {
        best.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupEstimate {
    /// Largest `|p|` over samples and diagonal points.
    pub max_val: f64,
    pub argmax: Vec<f64>,
    /// Largest `|p|` over the random samples alone.
    pub sample_max: f64,
    pub evaluated: usize,
}

/// Gauss–Lobatto–Chebyshev points of `[a, b]` for degree `n`, on the
/// diagonal line.
pub fn diagonal_points(a: f64, b: f64, n: usize, d: usize) -> Vec<Vec<f64>> {
    if n == 0 {
        return vec![vec![0.5 * (a + b); d]];
    }
    let h = 0.5 * (b - a);
    (0..=n)
        .map(|j| {
            let t = if j == 0 {
                b
            } else if j == n {
                a
            } else if 2 * j == n {
                0.5 * (a + b)
            } else {
                a + h * (1.0 + (j as f64 * std::f64::consts::PI / n as f64).cos())
            };
            vec![t; d]
        })
        .collect()
}

/// Lower estimate of `‖p‖_Ω`: samples of the set plus, when the set has a
/// diagonal `[a, b]`, its Gauss–Lobatto–Chebyshev points for `deg p`.
pub fn sup_norm_estimate(
    p: &MultiPoly,
    s: &SetDescription,
    samples: usize,
    seed: u64,
) -> Result<SupEstimate, OracleError> {
    if p.dim() != s.dim() {
        return Err(OracleError::BadInput(format!(
            "polynomial dimension {} differs from set dimension {}",
            p.dim(),
            s.dim()
        )));
    }
    let points = s.sample(samples, seed)?;
    let compiled = p.compile();
    let best = |pts: &[Vec<f64>]| {
        pts.par_iter()
            .enumerate()
            .map(|(i, x)| (compiled.eval(x).abs(), i))
            .reduce(|| (f64::NEG_INFINITY, usize::MAX), |u, v| if v.0 > u.0 || (v.0 == u.0 && v.1 < u.1) { v } else { u })
    };
    let (sample_max, si) = best(&points);
    let mut max_val = sample_max;
    let mut argmax = points.get(si).cloned().unwrap_or_default();
    if let Ok((a, b)) = s.diagonal() {
        let diag = diagonal_points(a, b, p.degree(), s.dim());
        let (dv, di) = best(&diag);
        if dv > max_val {
            max_val = dv;
            argmax = diag[di].clone();
        }
    }
    Ok(SupEstimate {
        max_val: max_val.max(0.0),
        argmax,
        sample_max: sample_max.max(0.0),
        evaluated: points.len(),
    })
}

/// Bounding box of the analytic set kinds.
fn bounding_box(s: &SetDescription) -> Option<(Vec<f64>, Vec<f64>)> {
    let d = s.dim();
    match s {
        SetDescription::PnormBall { radius, .. } => Some((vec![-radius; d], vec![*radius; d])),
        SetDescription::OwlBall { weights } => {
            let r = 1.0 / weights[0];
            Some((vec![-r; d], vec![r; d]))
        }
        SetDescription::SimplexOrdered { .. } | SetDescription::SimplexStandard { .. } => {
            Some((vec![0.0; d], vec![1.0; d]))
        }
        SetDescription::Segment { endpoint_a, endpoint_b } => Some((
            endpoint_a.iter().zip(endpoint_b).map(|(a, b)| a.min(*b)).collect(),
            endpoint_a.iter().zip(endpoint_b).map(|(a, b)| a.max(*b)).collect(),
        )),
        SetDescription::Semialgebraic { bbox, .. } => bbox.as_ref().map(|b| (b.lo.clone(), b.hi.clone())),
        SetDescription::Translated { inner, shift } => bounding_box(inner).map(|(lo, hi)| {
            (lo.iter().map(|v| v + shift).collect(), hi.iter().map(|v| v + shift).collect())
        }),
    }
}

/// About `grid` points of the set: a lattice over the bounding box kept
/// where it meets the set, plus boundary points for planar balls; segments
/// are discretized along their parameter.
pub fn discretize(s: &SetDescription, grid: usize) -> Result<Vec<Vec<f64>>, OracleError> {
    s.validate()?;
    let d = s.dim();
    if d > 2 {
        return Err(OracleError::BadInput(format!("discretization supports d ≤ 2, got {d}")));
    }
    match s {
        SetDescription::Segment { endpoint_a, endpoint_b } => {
            let m = grid.max(2);
            return Ok((0..m)
                .map(|i| {
                    let t = i as f64 / (m - 1) as f64;
                    endpoint_a.iter().zip(endpoint_b).map(|(a, b)| a + t * (b - a)).collect()
                })
                .collect());
        }
        SetDescription::Translated { inner, shift } => {
            let mut pts = discretize(inner, grid)?;
            for p in &mut pts {
                p.iter_mut().for_each(|v| *v += shift);
            }
            return Ok(pts);
        }
        _ => {}
    }
    let (lo, hi) = bounding_box(s).ok_or(OracleError::Set(SetError::MissingBoundingBox))?;
    let round_ball = matches!(s, SetDescription::PnormBall { .. } | SetDescription::OwlBall { .. }) && d == 2;
    let lattice_budget = if round_ball { grid * 4 / 5 } else { grid };
    // odd count per axis so the centre is a lattice point
    let mut m = ((lattice_budget as f64).powf(1.0 / d as f64).ceil() as usize).max(3);
    if m.is_multiple_of(2) {
        m += 1;
    }
    let lattice = |m: usize| -> Vec<Vec<f64>> {
        let axis = |k: usize| -> Vec<f64> {
            (0..m).map(|i| lo[k] + (hi[k] - lo[k]) * i as f64 / (m - 1) as f64).collect()
        };
        let mut pts = Vec::new();
        if d == 1 {
            pts.extend(axis(0).into_iter().map(|x| vec![x]));
        } else {
            let (ax, ay) = (axis(0), axis(1));
            for &x in &ax {
                for &y in &ay {
                    pts.push(vec![x, y]);
                }
            }
        }
        pts.retain(|x| s.contains(x, 1e-12));
        pts
    };
    // grow the lattice until enough of it lies in the set
    let mut pts = lattice(m);
    while pts.len() < lattice_budget && m < 1 << 12 {
        let ratio = lattice_budget as f64 / pts.len().max(1) as f64;
        let next = ((m as f64) * ratio.powf(1.0 / d as f64) * 1.02).ceil() as usize;
        m = next.max(m + 2) | 1;
        pts = lattice(m);
    }
    if round_ball {
        let k = (grid - lattice_budget).div_ceil(8).max(1) * 8;
        for i in 0..k {
            let th = 2.0 * std::f64::consts::PI * i as f64 / k as f64;
            let dir = [th.cos(), th.sin()];
            let scale = boundary_scale(s, &dir);
            pts.push(vec![dir[0] * scale, dir[1] * scale]);
        }
    }
    Ok(pts)
}

/// `λ` with `λ·dir` on the boundary of a norm ball.
fn boundary_scale(s: &SetDescription, dir: &[f64]) -> f64 {
    let (mut lo, mut hi) = (0.0, 1.0);
    while s.contains(&dir.iter().map(|v| v * hi).collect::<Vec<_>>(), 0.0) {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if s.contains(&dir.iter().map(|v| v * mid).collect::<Vec<_>>(), 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BruteForceResult {
    /// Certified lower bound on the discrete minimax value.
    pub value: f64,
    /// `max |P(x)|` over the discretization for the best iterate.
    pub upper: f64,
    pub points: usize,
    pub iterations: usize,
}

const LAWSON_MAX_ITERS: usize = 20_000;

/// Lawson stops once the lower bound gains less than `LAWSON_STALL_TOL`
/// (relative) over this many iterations.
const LAWSON_STALL_WINDOW: usize = 200;
const LAWSON_STALL_TOL: f64 = 1e-9;

/// Relative gap between the bounds at which Lawson stops.
const LAWSON_GAP: f64 = 1e-7;

/// Weights below this fraction of the largest are set to zero.
const LAWSON_PRUNE: f64 = 1e-14;

/// The upper bound needs every point; it is refreshed this often.
const LAWSON_UPPER_EVERY: usize = 25;

/// Discretized `inf_{P ∈ Π*ₙ} max_i |P(x_i)|` by Lawson's iteratively
/// reweighted least squares. For any probability weights `w`, the weighted
/// least-squares optimum `sqrt(Σ wᵢ rᵢ²)` bounds the minimax value from
/// below, so `value` is a lower bound for the set's least norm.
pub fn brute_force_least(s: &SetDescription, n: usize, grid: usize) -> Result<BruteForceResult, OracleError> {
    if n == 0 || n > 4 {
        return Err(OracleError::BadInput(format!("degree {n} outside 1..=4")));
    }
    let pts = discretize(s, grid)?;
    let d = s.dim();
    // P = x₁ⁿ + Σ c_k φ_k with φ_k spanning the directions that keep the
    // degree-n coefficient sum fixed
    let lead = Monomial::all_of_degree(d, n);
    let anchor = lead[lead.len() - 1].clone();
    let mut basis: Vec<(Monomial, Option<Monomial>)> =
        Monomial::all_up_to(d, n - 1).into_iter().map(|m| (m, None)).collect();
    for m in &lead {
        if *m != anchor {
            basis.push((m.clone(), Some(anchor.clone())));
        }
    }
    let kdim = basis.len();
    let npts = pts.len();
    // design matrix, row-major
    let mut phi = vec![0.0; npts * kdim];
    let mut p0 = vec![0.0; npts];
    for (i, x) in pts.iter().enumerate() {
        let a = anchor.eval(x);
        p0[i] = a;
        for (k, (m, minus)) in basis.iter().enumerate() {
            phi[i * kdim + k] = m.eval(x) - if minus.is_some() { a } else { 0.0 };
        }
    }

    let residual = |c: &[f64], i: usize| p0[i] + (0..kdim).map(|k| phi[i * kdim + k] * c[k]).sum::<f64>();
    let mut w = vec![1.0 / npts as f64; npts];
    // points whose weight has not been pruned to zero
    let mut active: Vec<usize> = (0..npts).collect();
    let mut lower: f64 = 0.0;
    let mut upper = f64::INFINITY;
    let mut iterations = 0;
    let mut checkpoint = 0.0;
    while iterations < LAWSON_MAX_ITERS {
        iterations += 1;
        let c = weighted_ls(&phi, &p0, &w, kdim);
        let r: Vec<f64> = active.iter().map(|&i| residual(&c, i)).collect();
        // pruned weights only shrink Σ wᵢ rᵢ², so this stays a lower bound
        let wr2: f64 = active.iter().zip(&r).map(|(&i, r)| w[i] * r * r).sum();
        lower = lower.max(wr2.max(0.0).sqrt());
        if iterations % LAWSON_UPPER_EVERY == 1 || active.len() == npts {
            let rmax = (0..npts).map(|i| residual(&c, i).abs()).fold(0.0f64, f64::max);
            upper = upper.min(rmax);
        }
        if upper - lower <= LAWSON_GAP * upper.max(1e-12) || upper <= 1e-12 {
            break;
        }
        if iterations % LAWSON_STALL_WINDOW == 0 {
            if lower - checkpoint <= LAWSON_STALL_TOL * upper {
                break;
            }
            checkpoint = lower;
        }
        let norm: f64 = active.iter().zip(&r).map(|(&i, r)| w[i] * r.abs()).sum();
        if norm <= 0.0 {
            break;
        }
        let mut wmax: f64 = 0.0;
        for (&i, ri) in active.iter().zip(&r) {
            w[i] *= ri.abs() / norm;
            wmax = wmax.max(w[i]);
        }
        for &i in &active {
            if w[i] < LAWSON_PRUNE * wmax {
                w[i] = 0.0;
            }
        }
        active.retain(|&i| w[i] > 0.0);
    }
    if upper.is_infinite() {
        return Err(OracleError::NoConvergence { lower, upper });
    }
    Ok(BruteForceResult { value: lower, upper, points: npts, iterations })
}

/// `argmin_c Σ wᵢ (p0ᵢ + (Φc)ᵢ)²` via regularized normal equations.
fn weighted_ls(phi: &[f64], p0: &[f64], w: &[f64], k: usize) -> Vec<f64> {
    let n = p0.len();
    let mut ata = vec![0.0; k * k];
    let mut atb = vec![0.0; k];
    for i in 0..n {
        let wi = w[i];
        if wi == 0.0 {
            continue;
        }
        let row = &phi[i * k..(i + 1) * k];
        for a in 0..k {
            let wa = wi * row[a];
            atb[a] -= wa * p0[i];
            for b in a..k {
                ata[a * k + b] += wa * row[b];
            }
        }
    }
    for a in 0..k {
        for b in 0..a {
            ata[a * k + b] = ata[b * k + a];
        }
    }
    let trace: f64 = (0..k).map(|a| ata[a * k + a]).sum::<f64>().max(1e-300);
    let mut reg = 1e-14 * trace / k as f64;
    loop {
        let mut l = ata.clone();
        for a in 0..k {
            l[a * k + a] += reg;
        }
        if cholesky(&mut l, k).is_ok() {
            let mut x = atb.clone();
            cholesky_solve(&l, k, &mut x);
            if x.iter().all(|v| v.is_finite()) {
                return x;
            }
        }
        reg = reg.max(1e-300) * 100.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::least::least_norm;

    #[test]
    fn remez_examples() {
        let r = remez_monic(1, -1.0, 1.0, 50).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        assert!(r.q.coeffs().iter().all(|c| c.abs() < 1e-12));
        let r = remez_monic(4, -1.0, 1.0, 50).unwrap();
        assert!((r.value - 0.125).abs() < 1e-12);
        let r = remez_monic(3, 0.0, 1.0, 50).unwrap();
        assert!((r.value - 0.03125).abs() < 1e-12);
    }

    #[test]
    fn remez_uniform_start_converges() {
        for n in 1..=10 {
            let r = remez_monic_with(n, -0.3, 2.0, 100, RemezInit::Uniform).unwrap();
            let expect = least_norm(-0.3, 2.0, n).unwrap();
            assert!((r.value - expect).abs() <= 1e-8 * expect, "n={n}");
        }
    }

    #[test]
    fn remez_reference_equioscillates() {
        let r = remez_monic(6, 0.0, 1.0, 50).unwrap();
        assert_eq!(r.reference.len(), 7);
        for w in r.reference_errors.windows(2) {
            assert!(w[0] * w[1] < 0.0);
        }
        for e in &r.reference_errors {
            assert!((e.abs() - r.value).abs() < 1e-9 * r.value.max(1.0));
        }
    }

    #[test]
    fn diagonal_points_match_extrema() {
        let p = diagonal_points(-1.0, 1.0, 2, 3);
        assert_eq!(p, vec![vec![1.0; 3], vec![0.0; 3], vec![-1.0; 3]]);
    }

    #[test]
    fn sup_of_zero_is_zero() {
        let s = SetDescription::euclidean_ball(2);
        let e = sup_norm_estimate(&MultiPoly::zero(2), &s, 100, 0).unwrap();
        assert_eq!(e.max_val, 0.0);
    }

    #[test]
    fn discretization_stays_inside() {
        for s in [SetDescription::euclidean_ball(2), SetDescription::cube(2), SetDescription::SimplexStandard { dim: 2 }] {
            let pts = discretize(&s, 2000).unwrap();
            assert!(pts.len() > 500);
            assert!(pts.iter().all(|x| s.contains(x, 1e-12)));
        }
    }

    #[test]
    fn brute_force_square() {
        let r = brute_force_least(&SetDescription::cube(2), 2, 1000).unwrap();
        assert!(r.value <= 0.5 + 1e-9 && r.value >= 0.5 - 5e-3, "{r:?}");
    }
}

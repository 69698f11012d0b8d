//! Sum-of-squares detection of the diagonally-determined property.
//!
//! For `Ω = {x : g_j(x) ≥ 0}` with diagonal `[a, b]`, level `k` solves
//!
//! ```text
//! ρ_k = min 1 − ⟨v', 𝟏⟩   s.t.   ⟨v', x⟩ − a ∈ Q(g)_k,   b − ⟨v', x⟩ ∈ Q(g)_k
//! ```
//!
//! where `Q(g)_k` holds the polynomials `σ₀ + Σ σ_j g_j` with sum-of-squares
//! `σ_j` and every term of degree at most `k`. Each `σ_j` is a Gram matrix
//! over monomials of degree `⌊(k − deg g_j)/2⌋`. `ρ_k = 0` certifies the
//! property with `v = v'`; positive values are inconclusive.

use std::collections::BTreeMap;

use log::{debug, info, warn};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::sym_eigen;
use crate::poly::{Monomial, MultiPoly};
use crate::sdp::{
    solve, BlockEntry, SdpConstraint, SdpError, SdpObjective, SdpProblem, SdpSolution, SdpStatus,
    SolverSettings,
};
use crate::sets::{check_certificate, BoundingBox, CertificateReport, DDCertificate, Provenance, SetDescription};

/// Largest tolerated deviation between `σ₀ + Σσ_j g_j` and the target.
pub const DEVIATION_TOL: f64 = 1e-6;
/// Smallest tolerated Gram eigenvalue.
pub const EIGEN_TOL: f64 = -1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DetectError {
    #[error("no constraints given")]
    NoConstraints,
    #[error("constraints differ in dimension")]
    DimensionMismatch,
    #[error("level {0} must be even and positive")]
    BadLevel(usize),
    #[error("target of degree {degree} exceeds level {level}")]
    TargetTooHigh { degree: usize, level: usize },
    #[error("detection needs a < b, got [{a}, {b}]")]
    DegenerateDiagonal { a: f64, b: f64 },
    #[error("k_max = {k_max} is below the first admissible level {first}")]
    LevelRange { k_max: usize, first: usize },
}

/// Which endpoint an affine target belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `⟨v', x⟩ − a`
    Lower,
    /// `b − ⟨v', x⟩`
    Upper,
}

/// Right-hand side of a membership constraint.
#[derive(Debug, Clone, PartialEq)]
pub enum Target {
    /// `sign·⟨v', x⟩ + constant`, with `v'` the shared free vector.
    Affine { sign: f64, constant: f64 },
    Fixed(MultiPoly),
}

impl Target {
    pub fn lower(a: f64) -> Self {
        Target::Affine { sign: 1.0, constant: -a }
    }

    pub fn upper(b: f64) -> Self {
        Target::Affine { sign: -1.0, constant: b }
    }

    /// The target as a polynomial once `v'` is known.
    pub fn instantiate(&self, v_prime: &[f64]) -> MultiPoly {
        match self {
            Target::Affine { sign, constant } => {
                let d = v_prime.len();
                let mut terms: Vec<(Monomial, f64)> =
                    v_prime.iter().enumerate().map(|(i, v)| (Monomial::var(d, i), sign * v)).collect();
                terms.push((Monomial::one(d), *constant));
                MultiPoly::from_terms(d, terms).expect("terms share the dimension")
            }
            Target::Fixed(p) => p.clone(),
        }
    }
}

/// Gram block of `σ_j`; constraint index 0 is `g₀ = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct EncodedBlock {
    pub constraint: usize,
    pub basis: Vec<Monomial>,
}

/// SDP rows stating `σ₀ + Σ σ_j g_j = target` coefficientwise.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticModuleEncoding {
    pub level: usize,
    pub dim: usize,
    pub blocks: Vec<EncodedBlock>,
    /// Constraints whose degree exceeds the level; their `σ_j` is zero.
    pub dropped: Vec<usize>,
    /// One equality per monomial of degree `≤ k`.
    pub rows: Vec<Monomial>,
    /// Block indices are local to `blocks`; free index `i` is `v'_i`.
    pub constraints: Vec<SdpConstraint>,
}

impl QuadraticModuleEncoding {
    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.basis.len()).collect()
    }
}

fn check_inputs(g: &[MultiPoly], dim: usize, k: usize) -> Result<(), DetectError> {
    if g.iter().any(|p| p.dim() != dim) {
        return Err(DetectError::DimensionMismatch);
    }
    if k == 0 || k % 2 == 1 {
        return Err(DetectError::BadLevel(k));
    }
    Ok(())
}

/// Encodes membership of `target` in `Q(g)_k` for polynomials in `dim`
/// variables.
pub fn encode_membership(
    target: &Target,
    g: &[MultiPoly],
    k: usize,
    dim: usize,
) -> Result<QuadraticModuleEncoding, DetectError> {
    check_inputs(g, dim, k)?;
    let rows = Monomial::all_up_to(dim, k);
    let row_of: BTreeMap<&Monomial, usize> = rows.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut constraints = vec![SdpConstraint::default(); rows.len()];

    let one = MultiPoly::constant(dim, 1.0);
    let mut blocks = Vec::new();
    let mut dropped = Vec::new();
    for (j, gj) in std::iter::once(&one).chain(g).enumerate() {
        let deg = gj.degree();
        if deg > k {
            dropped.push(j);
            continue;
        }
        let basis = Monomial::all_up_to(dim, (k - deg) / 2);
        let block = blocks.len();
        for r in 0..basis.len() {
            for c in r..basis.len() {
                let prod = basis[r].times(&basis[c]);
                for (nu, coef) in gj.terms() {
                    let mu = prod.times(nu);
                    let row = row_of[&mu];
                    constraints[row].entries.push(BlockEntry::new(block, r, c, coef));
                }
            }
        }
        blocks.push(EncodedBlock { constraint: j, basis });
    }

    match target {
        Target::Affine { sign, constant } => {
            constraints[row_of[&Monomial::one(dim)]].rhs = *constant;
            for i in 0..dim {
                constraints[row_of[&Monomial::var(dim, i)]].free.push((i, -sign));
            }
        }
        Target::Fixed(p) => {
            if p.degree() > k {
                return Err(DetectError::TargetTooHigh { degree: p.degree(), level: k });
            }
            for (m, c) in p.terms() {
                constraints[row_of[m]].rhs = c;
            }
        }
    }
    Ok(QuadraticModuleEncoding { level: k, dim, blocks, dropped, rows, constraints })
}

/// Joins encodings into one problem sharing the free vector `v'` and
/// minimizing `1 − ⟨v', 𝟏⟩`.
pub fn assemble(encodings: &[QuadraticModuleEncoding], dim: usize) -> SdpProblem {
    let mut blocks = Vec::new();
    let mut constraints = Vec::new();
    for e in encodings {
        let offset = blocks.len();
        blocks.extend(e.block_sizes());
        for c in &e.constraints {
            let mut c = c.clone();
            for entry in &mut c.entries {
                entry.block += offset;
            }
            constraints.push(c);
        }
    }
    SdpProblem {
        n_free: dim,
        blocks,
        constraints,
        objective: SdpObjective { free: (0..dim).map(|i| (i, -1.0)).collect(), entries: vec![], constant: 1.0 },
    }
}

/// A solved Gram matrix, in exponent-vector form for auditing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GramBlock {
    pub side: Side,
    pub constraint: usize,
    pub basis: Vec<Vec<u32>>,
    pub matrix: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    /// Largest coefficient deviation over both memberships.
    pub deviation: f64,
    pub min_eigenvalue: f64,
    /// Sampling check of `(v'/⟨v',𝟏⟩, [a, b])` when a bounding box is known.
    pub sampling: Option<CertificateReport>,
    pub passes: bool,
}

/// `Σ_j (m_jᵀ G_j m_j)·g_j` with each `G_j` clipped to the PSD cone.
fn reexpand(g: &[MultiPoly], dim: usize, blocks: &[&GramBlock]) -> MultiPoly {
    let mut acc: BTreeMap<Monomial, f64> = BTreeMap::new();
    let one = MultiPoly::constant(dim, 1.0);
    for blk in blocks {
        let gj = if blk.constraint == 0 { &one } else { &g[blk.constraint - 1] };
        let n = blk.basis.len();
        let flat: Vec<f64> = blk.matrix.iter().flatten().copied().collect();
        let clipped = sym_eigen(&flat, n).reconstruct_with(|l| l.max(0.0));
        let basis: Vec<Monomial> = blk.basis.iter().map(|e| Monomial::new(e.clone())).collect();
        for r in 0..n {
            for c in 0..n {
                let w = clipped[r * n + c];
                if w == 0.0 {
                    continue;
                }
                let prod = basis[r].times(&basis[c]);
                for (nu, coef) in gj.terms() {
                    *acc.entry(prod.times(nu)).or_insert(0.0) += w * coef;
                }
            }
        }
    }
    MultiPoly::from_terms(dim, acc).expect("monomials share the dimension")
}

fn min_eigenvalue(blocks: &[GramBlock]) -> f64 {
    blocks
        .iter()
        .map(|b| {
            let n = b.basis.len();
            let flat: Vec<f64> = b.matrix.iter().flatten().copied().collect();
            sym_eigen(&flat, n).min_value()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Coefficient deviation of one membership `σ₀ + Σσ_j g_j = target`.
pub fn membership_deviation(target: &MultiPoly, g: &[MultiPoly], grams: &[&GramBlock]) -> f64 {
    reexpand(g, target.dim(), grams).max_abs_coeff_diff(target)
}

/// Numerical certification of a candidate `v'` with its Gram matrices: both
/// memberships re-expanded from PSD-clipped Gram matrices, the smallest raw
/// Gram eigenvalue, and an optional sampling check on `bbox`.
pub fn residual_check(
    v_prime: &[f64],
    g: &[MultiPoly],
    a: f64,
    b: f64,
    grams: &[GramBlock],
    bbox: Option<(&BoundingBox, usize, u64, f64)>,
) -> ResidualReport {
    let mut deviation: f64 = 0.0;
    for (side, target) in [(Side::Lower, Target::lower(a)), (Side::Upper, Target::upper(b))] {
        let blocks: Vec<&GramBlock> = grams.iter().filter(|blk| blk.side == side).collect();
        deviation = deviation.max(membership_deviation(&target.instantiate(v_prime), g, &blocks));
    }
    let min_eigenvalue = if grams.is_empty() { 0.0 } else { min_eigenvalue(grams) };
    let mut passes = deviation <= DEVIATION_TOL && min_eigenvalue >= EIGEN_TOL;
    let sampling = bbox.and_then(|(bbox, samples, seed, tol)| {
        let s = v_prime.iter().sum::<f64>();
        if s <= 0.0 {
            passes = false;
            return None;
        }
        let set = SetDescription::Semialgebraic { constraints: g.to_vec(), bbox: Some(bbox.clone()) };
        let cert = DDCertificate::new(v_prime.iter().map(|v| v / s).collect(), a, b, Provenance::UserSupplied);
        match check_certificate(&set, &cert, samples, seed) {
            Ok(r) => {
                passes &= r.max_violation <= tol;
                Some(r)
            }
            Err(e) => {
                warn!("sampling check skipped: {e}");
                None
            }
        }
    });
    ResidualReport { deviation, min_eigenvalue, sampling, passes }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectOptions {
    pub k_max: usize,
    pub zero_threshold: f64,
    pub solver: SolverSettings,
    /// Bounding box of `Ω` for the sampling check; skipped when absent.
    pub bbox: Option<BoundingBox>,
    pub check_samples: usize,
    pub check_tol: f64,
    pub seed: u64,
    /// Keep solving after certification, e.g. to record the full profile.
    pub run_all_levels: bool,
}

impl Default for DetectOptions {
    fn default() -> Self {
        DetectOptions {
            k_max: 8,
            zero_threshold: 1e-6,
            solver: SolverSettings::default(),
            bbox: None,
            check_samples: 10_000,
            check_tol: 1e-4,
            seed: 0,
            run_all_levels: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DetectionStatus {
    Certified,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelStatus {
    Solved,
    MaxIter,
    InfeasibleAtLevel,
    SolverError,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelReport {
    pub level: usize,
    pub status: LevelStatus,
    /// `None` when the solver failed outright.
    pub rho: Option<f64>,
    pub v_prime: Vec<f64>,
    pub iterations: usize,
    pub primal_residual: f64,
    pub dual_residual: f64,
    pub gap: f64,
    pub psd_dim: usize,
    pub constraints: usize,
    pub dropped: Vec<usize>,
    pub residuals: Option<ResidualReport>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionResult {
    pub status: DetectionStatus,
    /// Certifying level, or the last level run.
    pub level: usize,
    pub rho: Option<f64>,
    /// Raw SDP vector in the original coordinates.
    pub v_prime: Vec<f64>,
    /// `v'/⟨v',𝟏⟩` on `[a, b]`, present when certified.
    pub certificate: Option<DDCertificate>,
    pub a: f64,
    pub b: f64,
    /// The problem is solved in `x̃ = x − center·𝟏`; Gram matrices refer to
    /// these coordinates.
    pub center: f64,
    pub levels: Vec<LevelReport>,
    /// Gram matrices of the reported level.
    pub gram: Vec<GramBlock>,
    /// `ρ_{k+2} ≤ ρ_k + zero_threshold` over the solved levels.
    pub monotone: bool,
    /// The Archimedean property of the quadratic module is assumed, not
    /// checked.
    pub archimedean_assumed: bool,
}

impl DetectionResult {
    pub fn rho_profile(&self) -> Vec<(usize, Option<f64>)> {
        self.levels.iter().map(|l| (l.level, l.rho)).collect()
    }
}

/// First level of the hierarchy: the largest constraint degree rounded up
/// to even, at least 2.
pub fn first_level(g: &[MultiPoly]) -> usize {
    let m = g.iter().map(MultiPoly::degree).max().unwrap_or(0).max(2);
    m + m % 2
}

fn collect_grams(sol: &SdpSolution, encodings: &[(Side, QuadraticModuleEncoding)]) -> Vec<GramBlock> {
    let mut out = Vec::new();
    let mut idx = 0;
    for (side, e) in encodings {
        for blk in &e.blocks {
            let n = blk.basis.len();
            let flat = &sol.blocks[idx];
            out.push(GramBlock {
                side: *side,
                constraint: blk.constraint,
                basis: blk.basis.iter().map(|m| m.exponents().to_vec()).collect(),
                matrix: (0..n).map(|r| flat[r * n..(r + 1) * n].to_vec()).collect(),
            });
            idx += 1;
        }
    }
    out
}

/// Runs the hierarchy from [`first_level`] to `opts.k_max` in steps of 2,
/// stopping at the first level whose `ρ_k` is below the threshold and whose
/// residual checks pass.
pub fn detect(g: &[MultiPoly], a: f64, b: f64, opts: &DetectOptions) -> Result<DetectionResult, DetectError> {
    let dim = g.first().ok_or(DetectError::NoConstraints)?.dim();
    if g.iter().any(|p| p.dim() != dim) {
        return Err(DetectError::DimensionMismatch);
    }
    if a.is_nan() || b.is_nan() || a >= b {
        return Err(DetectError::DegenerateDiagonal { a, b });
    }
    let k0 = first_level(g);
    if opts.k_max < k0 {
        return Err(DetectError::LevelRange { k_max: opts.k_max, first: k0 });
    }

    // center so that the diagonal is [−h, h]
    let center = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let gc: Vec<MultiPoly> = g.iter().map(|p| p.shift_along_ones(center)).collect();
    let bbox_c = opts.bbox.as_ref().map(|bx| BoundingBox {
        lo: bx.lo.iter().map(|v| v - center).collect(),
        hi: bx.hi.iter().map(|v| v - center).collect(),
    });

    let mut levels: Vec<LevelReport> = Vec::new();
    let mut gram = Vec::new();
    let mut certified = false;
    // index into `levels` and Gram matrices of the certifying level
    let mut chosen: Option<(usize, Vec<GramBlock>)> = None;
    let mut k = k0;
    while k <= opts.k_max {
        let encodings = vec![
            (Side::Lower, encode_membership(&Target::lower(-h), &gc, k, dim)?),
            (Side::Upper, encode_membership(&Target::upper(h), &gc, k, dim)?),
        ];
        let plain: Vec<QuadraticModuleEncoding> = encodings.iter().map(|(_, e)| e.clone()).collect();
        let problem = assemble(&plain, dim);
        let dropped = encodings[0].1.dropped.clone();
        info!(
            "level {k}: {} PSD rows in {} blocks, {} constraints",
            problem.psd_dim(),
            problem.blocks.len(),
            problem.constraints.len()
        );
        let mut report = LevelReport {
            level: k,
            status: LevelStatus::SolverError,
            rho: None,
            v_prime: vec![],
            iterations: 0,
            primal_residual: f64::NAN,
            dual_residual: f64::NAN,
            gap: f64::NAN,
            psd_dim: problem.psd_dim(),
            constraints: problem.constraints.len(),
            dropped,
            residuals: None,
            error: None,
        };
        match solve(&problem, &opts.solver) {
            Err(e @ (SdpError::TooManyPsdRows(_) | SdpError::TooManyConstraints(_))) => {
                warn!("level {k}: {e}");
                report.error = Some(e.to_string());
                levels.push(report);
                break;
            }
            Err(e) => {
                warn!("level {k}: {e}");
                report.error = Some(e.to_string());
            }
            Ok(sol) => {
                report.status = match sol.status {
                    SdpStatus::Optimal => LevelStatus::Solved,
                    SdpStatus::MaxIter => LevelStatus::MaxIter,
                    SdpStatus::InfeasibleSuspected => LevelStatus::InfeasibleAtLevel,
                };
                report.rho = Some(sol.objective);
                report.v_prime = sol.free.clone();
                report.iterations = sol.iterations;
                report.primal_residual = sol.primal_residual;
                report.dual_residual = sol.dual_residual;
                report.gap = sol.gap;
                gram = collect_grams(&sol, &encodings);
                debug!("level {k}: rho = {:e} after {} iterations ({:?})", sol.objective, sol.iterations, sol.status);
                if sol.status == SdpStatus::Optimal && sol.objective <= opts.zero_threshold {
                    let checks = residual_check(
                        &sol.free,
                        &gc,
                        -h,
                        h,
                        &gram,
                        bbox_c.as_ref().map(|bx| (bx, opts.check_samples, opts.seed, opts.check_tol)),
                    );
                    if checks.passes && !certified {
                        certified = true;
                        chosen = Some((levels.len(), gram.clone()));
                    }
                    if !checks.passes {
                        warn!("level {k}: rho below threshold but residual checks fail: {checks:?}");
                    }
                    report.residuals = Some(checks);
                }
            }
        }
        levels.push(report);
        if certified && !opts.run_all_levels {
            break;
        }
        k += 2;
    }

    let solved: Vec<f64> =
        levels.iter().filter(|l| l.status == LevelStatus::Solved).filter_map(|l| l.rho).collect();
    let monotone = solved.windows(2).all(|w| w[1] <= w[0] + opts.zero_threshold);
    let last = match &chosen {
        Some((i, g)) => {
            gram = g.clone();
            &levels[*i]
        }
        None => levels.last().expect("at least one level runs"),
    };
    let v_prime = last.v_prime.clone();
    let certificate = certified.then(|| {
        let s: f64 = v_prime.iter().sum();
        DDCertificate::new(
            v_prime.iter().map(|v| v / s).collect(),
            a,
            b,
            Provenance::Sdp { level: last.level, rho: last.rho.unwrap_or(f64::NAN) },
        )
    });
    Ok(DetectionResult {
        status: if certified { DetectionStatus::Certified } else { DetectionStatus::Inconclusive },
        level: last.level,
        rho: last.rho,
        v_prime,
        certificate,
        a,
        b,
        center,
        monotone,
        archimedean_assumed: true,
        gram,
        levels,
    })
}

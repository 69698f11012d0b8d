//! Dense operator-splitting solver for block semidefinite programs.
//!
//! Problem form:
//!
//! ```text
//! minimize    ⟨c_free, y⟩ + Σ_b ⟨C_b, X_b⟩ + constant
//! subject to  ⟨a_i, y⟩ + Σ_b ⟨A_ib, X_b⟩ = rhs_i      i = 1..m
//!             X_b ⪰ 0,  y free
//! ```
//!
//! The iteration alternates a projection onto the affine constraint set
//! (with the linear objective folded into the augmented term) and a
//! projection onto the cone `ℝᵏ × ∏ S₊`, with over-relaxation and an
//! adaptive penalty. Blocks are vectorized with the `√2`-scaled upper
//! triangle so that Euclidean projection matches the Frobenius geometry.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{cholesky, cholesky_solve, sym_eigen, sym_eigen_warm, SymEigen};

/// Largest total PSD dimension accepted.
pub const MAX_PSD_DIM: usize = 500;
/// Largest number of equality constraints accepted.
pub const MAX_CONSTRAINTS: usize = 5000;

const SQRT2: f64 = std::f64::consts::SQRT_2;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SdpError {
    #[error("total PSD dimension {0} exceeds the cap of {MAX_PSD_DIM}")]
    TooManyPsdRows(usize),
    #[error("{0} constraints exceed the cap of {MAX_CONSTRAINTS}")]
    TooManyConstraints(usize),
    #[error("malformed problem: {0}")]
    Malformed(String),
    #[error("non-finite value encountered at iteration {0}")]
    NonFinite(usize),
    #[error("cannot parse problem dump, line {line}: {detail}")]
    Parse { line: usize, detail: String },
}

/// One entry of a symmetric coefficient matrix: `value` sits at both
/// `(row, col)` and `(col, row)`, so an off-diagonal entry contributes
/// `2·value·X[row][col]` to `⟨C, X⟩`. Repeated entries add up.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlockEntry {
    pub block: usize,
    pub row: usize,
    pub col: usize,
    pub value: f64,
}

impl BlockEntry {
    pub fn new(block: usize, row: usize, col: usize, value: f64) -> Self {
        let (row, col) = if row <= col { (row, col) } else { (col, row) };
        BlockEntry { block, row, col, value }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SdpConstraint {
    pub free: Vec<(usize, f64)>,
    pub entries: Vec<BlockEntry>,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SdpObjective {
    pub free: Vec<(usize, f64)>,
    pub entries: Vec<BlockEntry>,
    pub constant: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SdpProblem {
    pub n_free: usize,
    pub blocks: Vec<usize>,
    pub constraints: Vec<SdpConstraint>,
    pub objective: SdpObjective,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SdpStatus {
    Optimal,
    MaxIter,
    InfeasibleSuspected,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverSettings {
    pub tol: f64,
    pub max_iter: usize,
    /// Over-relaxation factor in `(0, 2)`.
    pub alpha: f64,
    pub rho_init: f64,
    /// Iterations between penalty updates.
    pub adapt_every: usize,
    /// Iterations per window of the infeasibility heuristic.
    pub window: usize,
}

impl Default for SolverSettings {
    fn default() -> Self {
        SolverSettings {
            tol: 1e-8,
            max_iter: 200_000,
            alpha: 1.6,
            rho_init: 1.0,
            adapt_every: 100,
            window: 500,
        }
    }
}

/// Solver output. Residuals are recomputed from the returned point, in the
/// units of the original problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SdpSolution {
    pub status: SdpStatus,
    pub free: Vec<f64>,
    /// Full row-major block matrices; each is PSD by construction.
    pub blocks: Vec<Vec<f64>>,
    pub objective: f64,
    /// Multipliers of the equality constraints.
    pub dual: Vec<f64>,
    /// Dual slack matrices, one per block.
    pub dual_slack: Vec<Vec<f64>>,
    /// `‖A(X) − rhs‖∞`
    pub primal_residual: f64,
    /// `‖c + Aᵀy − S‖∞` on the vectorized space.
    pub dual_residual: f64,
    /// Relative duality gap.
    pub gap: f64,
    pub iterations: usize,
}

/// Independently recomputed optimality measures of a solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolutionCheck {
    pub primal_residual: f64,
    pub min_eigenvalue: f64,
    pub stationarity: f64,
    pub dual_min_eigenvalue: f64,
}

impl SdpProblem {
    pub fn psd_dim(&self) -> usize {
        self.blocks.iter().sum()
    }

    fn validate(&self) -> Result<(), SdpError> {
        if self.psd_dim() > MAX_PSD_DIM {
            return Err(SdpError::TooManyPsdRows(self.psd_dim()));
        }
        if self.constraints.len() > MAX_CONSTRAINTS {
            return Err(SdpError::TooManyConstraints(self.constraints.len()));
        }
        let check_entries = |entries: &[BlockEntry], what: &str| -> Result<(), SdpError> {
            for e in entries {
                let Some(&n) = self.blocks.get(e.block) else {
                    return Err(SdpError::Malformed(format!("{what}: block {} missing", e.block)));
                };
                if e.row >= n || e.col >= n {
                    return Err(SdpError::Malformed(format!(
                        "{what}: entry ({}, {}) outside block {} of size {n}",
                        e.row, e.col, e.block
                    )));
                }
                if !e.value.is_finite() {
                    return Err(SdpError::Malformed(format!("{what}: non-finite coefficient")));
                }
            }
            Ok(())
        };
        let check_free = |free: &[(usize, f64)], what: &str| -> Result<(), SdpError> {
            match free.iter().find(|(i, v)| *i >= self.n_free || !v.is_finite()) {
                Some((i, _)) => Err(SdpError::Malformed(format!("{what}: bad free index {i}"))),
                None => Ok(()),
            }
        };
        check_entries(&self.objective.entries, "objective")?;
        check_free(&self.objective.free, "objective")?;
        for (k, c) in self.constraints.iter().enumerate() {
            let what = format!("constraint {k}");
            check_entries(&c.entries, &what)?;
            check_free(&c.free, &what)?;
            if !c.rhs.is_finite() {
                return Err(SdpError::Malformed(format!("{what}: non-finite rhs")));
            }
        }
        Ok(())
    }

    /// Plain-text dump: block sizes, objective and constraint triplets.
    pub fn to_dump(&self) -> String {
        let mut s = String::new();
        let sizes: Vec<String> = self.blocks.iter().map(|b| b.to_string()).collect();
        let _ = writeln!(s, "free {}", self.n_free);
        let _ = writeln!(s, "blocks {} {}", self.blocks.len(), sizes.join(" "));
        let _ = writeln!(s, "objective {:e}", self.objective.constant);
        for (i, v) in &self.objective.free {
            let _ = writeln!(s, "  f {i} {v:e}");
        }
        for e in &self.objective.entries {
            let _ = writeln!(s, "  e {} {} {} {:e}", e.block, e.row, e.col, e.value);
        }
        for c in &self.constraints {
            let _ = writeln!(s, "constraint {:e}", c.rhs);
            for (i, v) in &c.free {
                let _ = writeln!(s, "  f {i} {v:e}");
            }
            for e in &c.entries {
                let _ = writeln!(s, "  e {} {} {} {:e}", e.block, e.row, e.col, e.value);
            }
        }
        s
    }

    pub fn from_dump(text: &str) -> Result<SdpProblem, SdpError> {
        enum Target {
            None,
            Objective,
            Constraint,
        }
        let mut p = SdpProblem::default();
        let mut target = Target::None;
        for (ln, raw) in text.lines().enumerate() {
            let line = ln + 1;
            let err = |detail: &str| SdpError::Parse { line, detail: detail.to_string() };
            let tok: Vec<&str> = raw.split_whitespace().collect();
            let Some(&head) = tok.first() else { continue };
            let num = |i: usize| -> Result<f64, SdpError> {
                tok.get(i).and_then(|t| t.parse().ok()).ok_or_else(|| err("expected number"))
            };
            let idx = |i: usize| -> Result<usize, SdpError> {
                tok.get(i).and_then(|t| t.parse().ok()).ok_or_else(|| err("expected index"))
            };
            match head {
                "free" => p.n_free = idx(1)?,
                "blocks" => {
                    let k = idx(1)?;
                    p.blocks = (0..k).map(|i| idx(2 + i)).collect::<Result<_, _>>()?;
                }
                "objective" => {
                    p.objective.constant = num(1)?;
                    target = Target::Objective;
                }
                "constraint" => {
                    p.constraints.push(SdpConstraint { rhs: num(1)?, ..Default::default() });
                    target = Target::Constraint;
                }
                "f" | "e" => {
                    let (free, entries) = match target {
                        Target::Objective => (&mut p.objective.free, &mut p.objective.entries),
                        Target::Constraint => {
                            let c = p.constraints.last_mut().expect("constraint started");
                            (&mut c.free, &mut c.entries)
                        }
                        Target::None => return Err(err("coefficient outside a section")),
                    };
                    if head == "f" {
                        free.push((idx(1)?, num(2)?));
                    } else {
                        entries.push(BlockEntry::new(idx(1)?, idx(2)?, idx(3)?, num(4)?));
                    }
                }
                other => return Err(err(&format!("unknown keyword `{other}`"))),
            }
        }
        Ok(p)
    }
}

/// Column layout of the vectorized variable: free variables first, then the
/// scaled upper triangle of each block row by row.
struct Layout {
    n_free: usize,
    blocks: Vec<usize>,
    offsets: Vec<usize>,
    total: usize,
}

impl Layout {
    fn new(p: &SdpProblem) -> Self {
        let mut offsets = Vec::with_capacity(p.blocks.len());
        let mut off = p.n_free;
        for &n in &p.blocks {
            offsets.push(off);
            off += n * (n + 1) / 2;
        }
        Layout { n_free: p.n_free, blocks: p.blocks.clone(), offsets, total: off }
    }

    fn index(&self, block: usize, row: usize, col: usize) -> usize {
        let (i, j) = if row <= col { (row, col) } else { (col, row) };
        let n = self.blocks[block];
        // rows before i hold n, n-1, ... entries
        self.offsets[block] + i * n - i * i.saturating_sub(1) / 2 + (j - i)
    }

    /// Coefficient in vectorized space for a symmetric-matrix entry.
    fn coefficient(e: &BlockEntry) -> f64 {
        if e.row == e.col { e.value } else { SQRT2 * e.value }
    }

    fn unpack(&self, x: &[f64], block: usize) -> Vec<f64> {
        let n = self.blocks[block];
        let mut m = vec![0.0; n * n];
        let mut k = self.offsets[block];
        for i in 0..n {
            m[i * n + i] = x[k];
            k += 1;
            for j in i + 1..n {
                let v = x[k] / SQRT2;
                m[i * n + j] = v;
                m[j * n + i] = v;
                k += 1;
            }
        }
        m
    }

    fn pack(&self, m: &[f64], block: usize, x: &mut [f64]) {
        let n = self.blocks[block];
        let mut k = self.offsets[block];
        for i in 0..n {
            x[k] = m[i * n + i];
            k += 1;
            for j in i + 1..n {
                x[k] = SQRT2 * 0.5 * (m[i * n + j] + m[j * n + i]);
                k += 1;
            }
        }
    }
}

struct SparseRows {
    rows: Vec<Vec<(usize, f64)>>,
}

impl SparseRows {
    fn mul(&self, x: &[f64]) -> Vec<f64> {
        self.rows.iter().map(|r| r.iter().map(|&(j, a)| a * x[j]).sum()).collect()
    }

    fn mul_t_add(&self, y: &[f64], out: &mut [f64]) {
        for (r, &yi) in self.rows.iter().zip(y) {
            if yi == 0.0 {
                continue;
            }
            for &(j, a) in r {
                out[j] += a * yi;
            }
        }
    }
}

fn norm_inf(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Per-block PSD projection, reusing the previous eigenbasis as a warm
/// start.
struct ConeProjector {
    bases: Vec<Option<Vec<f64>>>,
}

impl ConeProjector {
    fn project(&mut self, layout: &Layout, x: &mut [f64]) {
        for b in 0..layout.blocks.len() {
            let n = layout.blocks[b];
            let m = layout.unpack(x, b);
            let eig: SymEigen = match &self.bases[b] {
                Some(basis) => sym_eigen_warm(&m, n, basis),
                None => sym_eigen(&m, n),
            };
            let projected = eig.reconstruct_with(|l| l.max(0.0));
            layout.pack(&projected, b, x);
            self.bases[b] = Some(eig.vectors);
        }
    }
}

fn compile(p: &SdpProblem, layout: &Layout) -> (SparseRows, Vec<f64>, Vec<f64>) {
    let mut rows = Vec::with_capacity(p.constraints.len());
    for c in &p.constraints {
        let mut dense: std::collections::BTreeMap<usize, f64> = Default::default();
        for &(i, v) in &c.free {
            *dense.entry(i).or_insert(0.0) += v;
        }
        for e in &c.entries {
            *dense.entry(layout.index(e.block, e.row, e.col)).or_insert(0.0) += Layout::coefficient(e);
        }
        rows.push(dense.into_iter().filter(|(_, v)| *v != 0.0).collect());
    }
    let rhs = p.constraints.iter().map(|c| c.rhs).collect();
    let mut cost = vec![0.0; layout.total];
    for &(i, v) in &p.objective.free {
        cost[i] += v;
    }
    for e in &p.objective.entries {
        cost[layout.index(e.block, e.row, e.col)] += Layout::coefficient(e);
    }
    (SparseRows { rows }, rhs, cost)
}

/// Solves `p` to tolerance `settings.tol` on the primal residual, the
/// stationarity residual and the relative duality gap.
pub fn solve(p: &SdpProblem, settings: &SolverSettings) -> Result<SdpSolution, SdpError> {
    p.validate()?;
    let layout = Layout::new(p);
    let (a_orig, b_orig, cost) = compile(p, &layout);

    // Row equilibration; empty rows must have a zero right-hand side.
    let mut scale = Vec::with_capacity(a_orig.rows.len());
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let mut kept = Vec::new();
    for (i, r) in a_orig.rows.iter().enumerate() {
        let nrm = r.iter().map(|(_, v)| v * v).sum::<f64>().sqrt();
        if nrm == 0.0 {
            if b_orig[i].abs() > settings.tol {
                return Err(SdpError::Malformed(format!(
                    "constraint {i} has no coefficients but rhs {}",
                    b_orig[i]
                )));
            }
            scale.push(0.0);
            continue;
        }
        scale.push(1.0 / nrm);
        rows.push(r.iter().map(|&(j, v)| (j, v / nrm)).collect::<Vec<_>>());
        rhs.push(b_orig[i] / nrm);
        kept.push(i);
    }
    let a = SparseRows { rows };
    let m = rhs.len();
    let nvar = layout.total;

    // Gram matrix A Aᵀ, factored once.
    let mut gram = vec![0.0; m * m];
    {
        let mut dense_row = vec![0.0; nvar];
        for i in 0..m {
            for &(j, v) in &a.rows[i] {
                dense_row[j] = v;
            }
            for k in i..m {
                let s: f64 = a.rows[k].iter().map(|&(j, v)| v * dense_row[j]).sum();
                gram[i * m + k] = s;
                gram[k * m + i] = s;
            }
            for &(j, _) in &a.rows[i] {
                dense_row[j] = 0.0;
            }
        }
    }
    let mut factor = gram.clone();
    let mut reg = 0.0;
    while cholesky(&mut factor, m).is_err() {
        reg = if reg == 0.0 { 1e-12 } else { reg * 100.0 };
        if reg > 1e-2 {
            return Err(SdpError::Malformed("constraint rows are degenerate".into()));
        }
        factor = gram.clone();
        for i in 0..m {
            factor[i * m + i] += reg;
        }
    }
    let project_affine = |w: &[f64]| -> (Vec<f64>, Vec<f64>) {
        let mut lam: Vec<f64> = a.mul(w).iter().zip(&rhs).map(|(aw, b)| aw - b).collect();
        cholesky_solve(&factor, m, &mut lam);
        let mut x = w.to_vec();
        let neg: Vec<f64> = lam.iter().map(|l| -l).collect();
        a.mul_t_add(&neg, &mut x);
        (x, lam)
    };

    let mut cone = ConeProjector { bases: vec![None; layout.blocks.len()] };
    let mut rho = settings.rho_init;
    let alpha = settings.alpha;
    let mut z = vec![0.0; nvar];
    let mut u = vec![0.0; nvar];
    let mut y = vec![0.0; m];
    let mut status = SdpStatus::MaxIter;
    let mut iterations = settings.max_iter;

    let mut window_res: Vec<f64> = Vec::new();
    let mut window_dual: Vec<f64> = Vec::new();
    let mut last = Residuals::default();

    for it in 1..=settings.max_iter {
        let w: Vec<f64> = (0..nvar).map(|j| z[j] - u[j] - cost[j] / rho).collect();
        let (x, lam) = project_affine(&w);
        let mut zn: Vec<f64> = (0..nvar).map(|j| alpha * x[j] + (1.0 - alpha) * z[j] + u[j]).collect();
        cone.project(&layout, &mut zn);
        for j in 0..nvar {
            let xhat = alpha * x[j] + (1.0 - alpha) * z[j];
            u[j] += xhat - zn[j];
        }
        z = zn;
        if z.iter().any(|v| !v.is_finite()) {
            return Err(SdpError::NonFinite(it));
        }

        let check = it % 10 == 0 || it == settings.max_iter;
        if check || it % settings.adapt_every == 0 {
            y = lam.iter().map(|l| rho * l).collect();
            last = residuals(&a, &rhs, &cost, &x, &z, &y, &u, rho);
            if last.converged(settings.tol) {
                status = SdpStatus::Optimal;
                iterations = it;
                break;
            }
            if it % settings.adapt_every == 0 {
                let ratio = last.consensus.max(1e-300) / last.stationarity.max(1e-300);
                let factor = if ratio > 10.0 {
                    2.0
                } else if ratio < 0.1 {
                    0.5
                } else {
                    1.0
                };
                if factor != 1.0 && (1e-6..=1e6).contains(&(rho * factor)) {
                    rho *= factor;
                    for uj in u.iter_mut() {
                        *uj /= factor;
                    }
                }
            }
        }
        if it % settings.window == 0 {
            window_res.push(last.primal.max(last.consensus));
            window_dual.push(rho * u.iter().map(|v| v * v).sum::<f64>().sqrt());
            if infeasibility_suspected(&window_res, &window_dual, settings.tol) {
                status = SdpStatus::InfeasibleSuspected;
                iterations = it;
                break;
            }
        }
    }

    let slack: Vec<f64> = u.iter().map(|v| -rho * v).collect();
    let blocks = (0..layout.blocks.len()).map(|b| layout.unpack(&z, b)).collect();
    let dual_slack = (0..layout.blocks.len()).map(|b| layout.unpack(&slack, b)).collect();
    let mut dual = vec![0.0; p.constraints.len()];
    for (k, &i) in kept.iter().enumerate() {
        dual[i] = y[k] * scale[i];
    }
    let ax = a_orig.mul(&z);
    let primal_residual = ax.iter().zip(&b_orig).fold(0.0f64, |m, (v, b)| m.max((v - b).abs()));
    let objective = dot(&cost, &z) + p.objective.constant;
    Ok(SdpSolution {
        status,
        free: z[..layout.n_free].to_vec(),
        blocks,
        objective,
        dual,
        dual_slack,
        primal_residual,
        dual_residual: last.stationarity,
        gap: last.gap,
        iterations,
    })
}

#[derive(Debug, Default, Clone, Copy)]
struct Residuals {
    primal: f64,
    consensus: f64,
    stationarity: f64,
    gap: f64,
}

impl Residuals {
    fn converged(&self, tol: f64) -> bool {
        self.primal <= tol && self.consensus <= tol && self.stationarity <= tol && self.gap <= tol
    }
}

#[allow(clippy::too_many_arguments)]
fn residuals(
    a: &SparseRows,
    rhs: &[f64],
    cost: &[f64],
    x: &[f64],
    z: &[f64],
    y: &[f64],
    u: &[f64],
    rho: f64,
) -> Residuals {
    let az = a.mul(z);
    let primal = az.iter().zip(rhs).fold(0.0f64, |m, (v, b)| m.max((v - b).abs()));
    let consensus = x.iter().zip(z).fold(0.0f64, |m, (p, q)| m.max((p - q).abs()));
    let mut stat: Vec<f64> = cost.iter().zip(u).map(|(c, uj)| c + rho * uj).collect();
    a.mul_t_add(y, &mut stat);
    let stationarity = norm_inf(&stat);
    let pobj = dot(cost, z);
    let dobj = -dot(rhs, y);
    let gap = (pobj - dobj).abs() / (1.0 + pobj.abs() + dobj.abs());
    Residuals { primal, consensus, stationarity, gap }
}

/// Over the last ten windows: no reduction of the residual and a dual
/// iterate that grows every window.
fn infeasibility_suspected(res: &[f64], dual: &[f64], tol: f64) -> bool {
    const SPAN: usize = 10;
    if res.len() <= SPAN {
        return false;
    }
    let n = res.len();
    let stalled = res[n - 1] > 1e3 * tol && res[n - 1] > 0.99 * res[n - 1 - SPAN];
    let growing = dual[n - 1 - SPAN..].windows(2).all(|w| w[1] > w[0] * 1.001);
    stalled && growing
}

/// Recomputes feasibility and optimality measures of `sol` directly from the
/// problem's matrix entries.
pub fn verify_solution(p: &SdpProblem, sol: &SdpSolution) -> SolutionCheck {
    let inner = |entries: &[BlockEntry], free: &[(usize, f64)]| -> f64 {
        let mut s: f64 = free.iter().map(|&(i, v)| v * sol.free[i]).sum();
        for e in entries {
            let n = p.blocks[e.block];
            let xv = sol.blocks[e.block][e.row * n + e.col];
            s += if e.row == e.col { e.value * xv } else { 2.0 * e.value * xv };
        }
        s
    };
    let primal_residual = p
        .constraints
        .iter()
        .map(|c| (inner(&c.entries, &c.free) - c.rhs).abs())
        .fold(0.0, f64::max);
    let min_eigenvalue = p
        .blocks
        .iter()
        .zip(&sol.blocks)
        .map(|(&n, m)| sym_eigen(m, n).min_value())
        .fold(f64::INFINITY, f64::min);
    let dual_min_eigenvalue = p
        .blocks
        .iter()
        .zip(&sol.dual_slack)
        .map(|(&n, m)| sym_eigen(m, n).min_value())
        .fold(f64::INFINITY, f64::min);

    // c + Σ yᵢ Aᵢ − S, entrywise
    let mut free_res = vec![0.0; p.n_free];
    let mut mats: Vec<Vec<f64>> = p.blocks.iter().map(|&n| vec![0.0; n * n]).collect();
    let mut add = |entries: &[BlockEntry], free: &[(usize, f64)], w: f64| {
        for &(i, v) in free {
            free_res[i] += w * v;
        }
        for e in entries {
            let n = p.blocks[e.block];
            mats[e.block][e.row * n + e.col] += w * e.value;
            if e.row != e.col {
                mats[e.block][e.col * n + e.row] += w * e.value;
            }
        }
    };
    add(&p.objective.entries, &p.objective.free, 1.0);
    for (c, &yi) in p.constraints.iter().zip(&sol.dual) {
        add(&c.entries, &c.free, yi);
    }
    let mut stationarity = norm_inf(&free_res);
    for (m, s) in mats.iter().zip(&sol.dual_slack) {
        for (a, b) in m.iter().zip(s) {
            stationarity = stationarity.max((a - b).abs());
        }
    }
    SolutionCheck {
        primal_residual,
        min_eigenvalue: if p.blocks.is_empty() { 0.0 } else { min_eigenvalue },
        stationarity,
        dual_min_eigenvalue: if p.blocks.is_empty() { 0.0 } else { dual_min_eigenvalue },
    }
}

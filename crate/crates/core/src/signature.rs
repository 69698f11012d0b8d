//! The optimal atomic dual functional: signed, weighted point evaluations at
//! the Gauss–Lobatto–Chebyshev points of the diagonal.

use serde::{Deserialize, Serialize};

use crate::least::{least_for_certificate, least_norm, LeastError};
use crate::poly::{Monomial, MultiPoly, PolyError};
use crate::sets::DDCertificate;

/// Tolerance on `|P*(ωᵢ)| − value` at the support points.
pub const EXTREMAL_TOL: f64 = 1e-9;

/// Beyond this many degree-`n` monomials only a deterministic subset is
/// evaluated for `γ`.
const MAX_GAMMA_MONOMIALS: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Signature {
    pub points: Vec<Vec<f64>>,
    pub signs: Vec<i8>,
    pub weights: Vec<f64>,
}

/// `L(p) = Σ τᵢ p(ωᵢ)`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomicFunctional {
    pub points: Vec<Vec<f64>>,
    pub coefficients: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnnihilationReport {
    pub max_abs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualReport {
    /// `L(x^α)` for the first degree-`n` monomial.
    pub gamma: f64,
    /// Largest deviation of `L(x^α)` from `gamma` over `|α| = n`.
    pub gamma_spread: f64,
    /// `|γ − least_norm(a, b, n)|`
    pub gap: f64,
    /// `max |P*(ωᵢ)| − value` over the support.
    pub extremal_error: f64,
    /// `sign P*(ωᵢ) = σᵢ` at every support point.
    pub signs_match: bool,
}

impl DualReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.gap <= tol && self.gamma_spread <= tol && self.extremal_error <= EXTREMAL_TOL && self.signs_match
    }
}

/// Diagonal points `ωⱼ = a𝟏 + ((b−a)/2)(1 + cos((j−1)π/n))𝟏`, alternating
/// signs starting at `+` and weights `(½, 1, …, 1, ½)`.
pub fn build_signature(c: &DDCertificate, n: usize) -> Signature {
    assert!(n >= 1, "signature degree must be positive");
    let d = c.dim();
    let half = 0.5 * (c.b - c.a);
    let mut points = Vec::with_capacity(n + 1);
    let mut signs = Vec::with_capacity(n + 1);
    let mut weights = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let t = if j == 0 {
            c.b
        } else if j == n {
            c.a
        } else if 2 * j == n {
            0.5 * (c.a + c.b)
        } else {
            c.a + half * (1.0 + (j as f64 * std::f64::consts::PI / n as f64).cos())
        };
        points.push(vec![t; d]);
        signs.push(if j % 2 == 0 { 1 } else { -1 });
        weights.push(if j == 0 || j == n { 0.5 } else { 1.0 });
    }
    Signature { points, signs, weights }
}

/// `τᵢ = σᵢ λᵢ / n`
pub fn build_functional(s: &Signature, n: usize) -> AtomicFunctional {
    let coefficients =
        s.signs.iter().zip(&s.weights).map(|(&sg, &w)| f64::from(sg) * w / n as f64).collect();
    AtomicFunctional { points: s.points.clone(), coefficients }
}

impl AtomicFunctional {
    pub fn total_variation(&self) -> f64 {
        self.coefficients.iter().map(|t| t.abs()).sum()
    }

    pub fn dim(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }
}

pub fn apply(l: &AtomicFunctional, p: &MultiPoly) -> Result<f64, PolyError> {
    let mut s = 0.0;
    for (w, x) in l.coefficients.iter().zip(&l.points) {
        s += w * p.eval(x)?;
    }
    Ok(s)
}

fn apply_monomial(l: &AtomicFunctional, m: &Monomial) -> f64 {
    l.coefficients.iter().zip(&l.points).map(|(w, x)| w * m.eval(x)).sum()
}

/// `max_{k<n} |L(tᵏ)|` along the diagonal. For diagonal support this equals
/// the maximum over all monomials of degree below `n`.
pub fn verify_annihilation(l: &AtomicFunctional, n: usize, d: usize) -> AnnihilationReport {
    debug_assert!(l.dim() == d);
    let mut max_abs: f64 = 0.0;
    for k in 0..n {
        let v: f64 = l
            .coefficients
            .iter()
            .zip(&l.points)
            .map(|(w, x)| w * x[0].powi(k as i32))
            .sum();
        max_abs = max_abs.max(v.abs());
    }
    AnnihilationReport { max_abs }
}

/// The same quantity taken over every monomial `x^β` with `|β| < n`.
pub fn verify_annihilation_full(l: &AtomicFunctional, n: usize) -> AnnihilationReport {
    let d = l.dim();
    let max_abs = if n == 0 {
        0.0
    } else {
        Monomial::all_up_to(d, n - 1)
            .iter()
            .map(|m| apply_monomial(l, m).abs())
            .fold(0.0, f64::max)
    };
    AnnihilationReport { max_abs }
}

/// Weak-duality check: `γ = L(x^α)` for `|α| = n` against the least norm,
/// plus the sign pattern of `P*` on the support.
pub fn verify_dual_optimality(
    l: &AtomicFunctional,
    c: &DDCertificate,
    n: usize,
) -> Result<DualReport, LeastError> {
    let value = least_norm(c.a, c.b, n)?;
    let d = c.dim();
    let monomials = Monomial::all_of_degree(d, n);
    let stride = monomials.len().div_ceil(MAX_GAMMA_MONOMIALS).max(1);
    let gammas: Vec<f64> = monomials.iter().step_by(stride).map(|m| apply_monomial(l, m)).collect();
    let gamma = gammas[0];
    let gamma_spread = gammas.iter().map(|g| (g - gamma).abs()).fold(0.0, f64::max);

    let p = least_for_certificate(c, n)?.poly.compile();
    let sig_signs = sign_pattern(l);
    let mut extremal_error: f64 = 0.0;
    let mut signs_match = true;
    for (x, &s) in l.points.iter().zip(&sig_signs) {
        let px = p.eval(x);
        extremal_error = extremal_error.max((px.abs() - value).abs());
        if value > 0.0 && f64::from(s) * px <= 0.0 {
            signs_match = false;
        }
    }
    Ok(DualReport { gamma, gamma_spread, gap: (gamma - value).abs(), extremal_error, signs_match })
}

fn sign_pattern(l: &AtomicFunctional) -> Vec<i8> {
    l.coefficients.iter().map(|t| if *t >= 0.0 { 1 } else { -1 }).collect()
}

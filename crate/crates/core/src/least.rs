//! The least polynomial in `Π*ₙ` on a diagonally-determined set.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{chebyshev_coeffs, compose_affine, AffineForm, MultiPoly, UniPoly};
use crate::sets::DDCertificate;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LeastError {
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("empty diagonal: a = {a} exceeds b = {b}")]
    InvertedDiagonal { a: f64, b: f64 },
    #[error("degenerate diagonal a = b = {0}; use the degenerate construction")]
    DegenerateDiagonal(f64),
    #[error("diagonal endpoints are not equal: a = {a}, b = {b}")]
    NotDegenerate { a: f64, b: f64 },
    #[error("invalid certificate: {0}")]
    BadCertificate(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeastResult {
    /// `‖P*‖_Ω`
    pub value: f64,
    pub degree: usize,
    pub poly: MultiPoly,
    pub certificate: DDCertificate,
}

/// `((b − a)/2)ⁿ · 2^{1−n}`
pub fn least_norm(a: f64, b: f64, n: usize) -> Result<f64, LeastError> {
    if n == 0 {
        return Err(LeastError::ZeroDegree);
    }
    if a > b || a.is_nan() || b.is_nan() {
        return Err(LeastError::InvertedDiagonal { a, b });
    }
    if a == b {
        return Ok(0.0);
    }
    let half = 0.5 * (b - a);
    Ok(half.powi(n as i32) * 2f64.powi(1 - n as i32))
}

/// `P*(x) = value · Tₙ(⟨2v/(b−a), x⟩ − (b+a)/(b−a))`, expanded.
pub fn least_polynomial(c: &DDCertificate, n: usize) -> Result<LeastResult, LeastError> {
    c.validate().map_err(LeastError::BadCertificate)?;
    if c.a == c.b {
        return Err(LeastError::DegenerateDiagonal(c.a));
    }
    let value = least_norm(c.a, c.b, n)?;
    let width = c.b - c.a;
    let scale = 2.0 / width;
    let affine = AffineForm::new(c.v.iter().map(|v| v * scale).collect(), -(c.b + c.a) / width);
    let u = chebyshev_coeffs(n).scale(value);
    Ok(LeastResult { value, degree: n, poly: compose_affine(&u, &affine), certificate: c.clone() })
}

/// `(⟨v, x⟩ − a)ⁿ`, which vanishes on the hyperplane containing the set.
pub fn degenerate_least_polynomial(c: &DDCertificate, n: usize) -> Result<LeastResult, LeastError> {
    c.validate().map_err(LeastError::BadCertificate)?;
    if n == 0 {
        return Err(LeastError::ZeroDegree);
    }
    if c.a != c.b {
        return Err(LeastError::NotDegenerate { a: c.a, b: c.b });
    }
    let affine = AffineForm::new(c.v.clone(), -c.a);
    Ok(LeastResult {
        value: 0.0,
        degree: n,
        poly: compose_affine(&UniPoly::monomial(n), &affine),
        certificate: c.clone(),
    })
}

/// Dispatches on whether the diagonal is a point.
pub fn least_for_certificate(c: &DDCertificate, n: usize) -> Result<LeastResult, LeastError> {
    if c.a == c.b {
        degenerate_least_polynomial(c, n)
    } else {
        least_polynomial(c, n)
    }
}

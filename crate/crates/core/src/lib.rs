//! Least multivariate Chebyshev polynomials on diagonally-determined sets.
//!
//! A set `Ω ⊂ ℝᵈ` is *diagonally-determined* when its diagonal
//! `{t : t𝟏 ∈ Ω}` is an interval `[a, b]` and some `v` with `⟨v, 𝟏⟩ = 1`
//! keeps `⟨v, x⟩` inside `[a, b]` on all of `Ω`. For such sets the polynomial
//! of degree `n` whose degree-`n` coefficients sum to one and whose uniform
//! norm on `Ω` is least is a rescaled univariate Chebyshev polynomial of
//! `⟨v, x⟩`, and an optimal dual functional is supported on `n + 1` diagonal
//! points.
//!
//! Module map:
//!
//! - [`poly`]: sparse multivariate / dense univariate polynomials.
//! - [`roots`]: Sturm-sequence root isolation and the diagonal of a
//!   semi-algebraic set.
//! - [`sets`]: set descriptions, analytic certificates, sampling checks.
//! - [`least`]: the least polynomial and its norm.
//! - [`signature`]: the optimal atomic dual functional.
//! - [`detect`]: sum-of-squares detection hierarchy.
//! - [`sdp`]: the operator-splitting SDP solver behind [`detect`].
//! - [`oracle`]: independent cross-checks (Remez, sampling, discretized
//!   brute force).

pub mod detect;
pub mod json;
pub mod least;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod roots;
pub mod sdp;
pub mod sets;
pub mod signature;

pub use least::{degenerate_least_polynomial, least_norm, least_polynomial, LeastResult};
pub use poly::{chebyshev_coeffs, compose_affine, AffineForm, Monomial, MultiPoly, UniPoly};
pub use sets::{certify_analytic, check_certificate, DDCertificate, Provenance, SetDescription};

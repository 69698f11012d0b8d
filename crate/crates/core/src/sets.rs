//! Set descriptions, closed-form diagonally-determined certificates and
//! seeded sampling checks.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::poly::MultiPoly;
use crate::roots::{compute_diagonal, DiagonalFailure, DEFAULT_TOL};

/// `⟨v, 𝟏⟩` must equal one within this tolerance.
pub const SUM_TOL: f64 = 1e-9;

const CHUNK: usize = 4096;
/// Rejection sampling gives up after this many draws per accepted point.
const MAX_REJECTION_RATIO: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SetError {
    #[error("invalid set description: {0}")]
    Invalid(String),
    #[error("a bounding box is required to sample a semi-algebraic set")]
    MissingBoundingBox,
    #[error("dimension mismatch: set has {set}, certificate has {cert}")]
    DimensionMismatch { set: usize, cert: usize },
    #[error("rejection sampling accepted {accepted} of {wanted} points after {tried} draws")]
    SamplingFailed { accepted: usize, wanted: usize, tried: usize },
}

/// Exponent of a p-norm; `∞` is written `"inf"` in JSON.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PExponent(pub f64);

impl PExponent {
    pub const INF: PExponent = PExponent(f64::INFINITY);
}

impl Serialize for PExponent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for PExponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(p) => Ok(PExponent(p)),
            Repr::Str(s) if matches!(s.as_str(), "inf" | "infinity" | "Inf") => Ok(PExponent::INF),
            Repr::Str(s) => Err(serde::de::Error::custom(format!("bad p-norm exponent `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundingBox {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SetDescription {
    /// `{x : ‖x‖_p ≤ radius}`
    PnormBall { p: PExponent, radius: f64, dim: usize },
    /// `{x : Σ wᵢ |x|₍ᵢ₎ ≤ 1}` with `|x|₍₁₎ ≥ |x|₍₂₎ ≥ …`
    OwlBall { weights: Vec<f64> },
    /// `{0 ≤ x₁ ≤ … ≤ x_d ≤ 1}`
    SimplexOrdered { dim: usize },
    /// `{x ≥ 0, Σxᵢ ≤ 1}`
    SimplexStandard { dim: usize },
    Segment { endpoint_a: Vec<f64>, endpoint_b: Vec<f64> },
    /// `{x : g_j(x) ≥ 0}`
    Semialgebraic {
        constraints: Vec<MultiPoly>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bbox: Option<BoundingBox>,
    },
    /// `inner + shift·𝟏`
    Translated { inner: Box<SetDescription>, shift: f64 },
}

/// Where a certificate came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Analytic,
    Sdp { level: usize, rho: f64 },
    UserSupplied,
}

/// `v` with `⟨v, 𝟏⟩ = 1` and `⟨v, x⟩ ∈ [a, b]` on the set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DDCertificate {
    pub v: Vec<f64>,
    pub a: f64,
    pub b: f64,
    pub provenance: Provenance,
}

impl DDCertificate {
    pub fn new(v: Vec<f64>, a: f64, b: f64, provenance: Provenance) -> Self {
        DDCertificate { v, a, b, provenance }
    }

    pub fn dim(&self) -> usize {
        self.v.len()
    }

    pub fn sum_v(&self) -> f64 {
        self.v.iter().sum()
    }

    /// Structural checks only: `⟨v, 𝟏⟩ = 1`, `a ≤ b`, finite entries.
    pub fn validate(&self) -> Result<(), String> {
        if self.v.is_empty() {
            return Err("empty v".into());
        }
        if !self.v.iter().all(|x| x.is_finite()) || !self.a.is_finite() || !self.b.is_finite() {
            return Err("non-finite entry".into());
        }
        if self.a > self.b {
            return Err(format!("a = {} exceeds b = {}", self.a, self.b));
        }
        let s = self.sum_v();
        if (s - 1.0).abs() > SUM_TOL {
            return Err(format!("⟨v, 1⟩ = {s}, expected 1"));
        }
        Ok(())
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.v.iter().zip(x).map(|(v, x)| v * x).sum()
    }
}

pub fn entrywise_nonneg(c: &DDCertificate) -> bool {
    c.v.iter().all(|&x| x >= -1e-12)
}

/// Result of [`check_certificate`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    /// `max(a − ⟨v,x⟩, ⟨v,x⟩ − b)` over all evaluated points.
    pub max_violation: f64,
    pub sum_v: f64,
    pub argmax: Vec<f64>,
    /// `a𝟏`, `b𝟏` and the midpoint all lie in the set.
    pub diagonal_ok: bool,
    pub samples: usize,
}

impl CertificateReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_violation <= tol && (self.sum_v - 1.0).abs() <= SUM_TOL && self.diagonal_ok
    }
}

fn p_norm(x: &[f64], p: f64) -> f64 {
    if p.is_infinite() {
        x.iter().fold(0.0, |m, v| m.max(v.abs()))
    } else if p == 1.0 {
        x.iter().map(|v| v.abs()).sum()
    } else if p == 2.0 {
        x.iter().map(|v| v * v).sum::<f64>().sqrt()
    } else {
        x.iter().map(|v| v.abs().powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

fn owl_norm(x: &[f64], w: &[f64]) -> f64 {
    let mut a: Vec<f64> = x.iter().map(|v| v.abs()).collect();
    a.sort_by(|p, q| q.total_cmp(p));
    a.iter().zip(w).map(|(a, w)| a * w).sum()
}

/// `‖𝟏‖_p` in dimension `d`.
fn ones_norm(p: f64, d: usize) -> f64 {
    if p.is_infinite() {
        1.0
    } else {
        (d as f64).powf(1.0 / p)
    }
}

impl SetDescription {
    pub fn euclidean_ball(dim: usize) -> Self {
        SetDescription::PnormBall { p: PExponent(2.0), radius: 1.0, dim }
    }

    pub fn cube(dim: usize) -> Self {
        SetDescription::PnormBall { p: PExponent::INF, radius: 1.0, dim }
    }

    pub fn translated(inner: SetDescription, shift: f64) -> Self {
        SetDescription::Translated { inner: Box::new(inner), shift }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SetDescription::PnormBall { .. } => "pnorm_ball",
            SetDescription::OwlBall { .. } => "owl_ball",
            SetDescription::SimplexOrdered { .. } => "simplex_ordered",
            SetDescription::SimplexStandard { .. } => "simplex_standard",
            SetDescription::Segment { .. } => "segment",
            SetDescription::Semialgebraic { .. } => "semialgebraic",
            SetDescription::Translated { .. } => "translated",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            SetDescription::PnormBall { dim, .. }
            | SetDescription::SimplexOrdered { dim }
            | SetDescription::SimplexStandard { dim } => *dim,
            SetDescription::OwlBall { weights } => weights.len(),
            SetDescription::Segment { endpoint_a, .. } => endpoint_a.len(),
            SetDescription::Semialgebraic { constraints, .. } => {
                constraints.first().map_or(0, MultiPoly::dim)
            }
            SetDescription::Translated { inner, .. } => inner.dim(),
        }
    }

    pub fn validate(&self) -> Result<(), SetError> {
        let bad = |m: String| Err(SetError::Invalid(m));
        if self.dim() == 0 {
            return bad("dimension must be positive".into());
        }
        match self {
            SetDescription::PnormBall { p, radius, .. } => {
                if p.0.is_nan() || p.0 < 1.0 {
                    return bad(format!("p = {} is not in [1, inf]", p.0));
                }
                if !(radius.is_finite() && *radius > 0.0) {
                    return bad(format!("radius {radius} must be positive"));
                }
            }
            SetDescription::OwlBall { weights } => {
                if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
                    return bad("owl weights must be finite and nonnegative".into());
                }
                if weights.windows(2).any(|w| w[0] < w[1]) {
                    return bad("owl weights must be nonincreasing".into());
                }
                if weights[0] <= 0.0 {
                    return bad("owl weights must not all vanish".into());
                }
            }
            SetDescription::Segment { endpoint_a, endpoint_b } => {
                if endpoint_a.len() != endpoint_b.len() {
                    return bad("segment endpoints differ in dimension".into());
                }
                if endpoint_a == endpoint_b {
                    return bad("segment endpoints coincide".into());
                }
                if endpoint_a.iter().chain(endpoint_b).any(|x| !x.is_finite()) {
                    return bad("segment endpoints must be finite".into());
                }
            }
            SetDescription::Semialgebraic { constraints, bbox } => {
                let d = self.dim();
                if constraints.iter().any(|g| g.dim() != d) {
                    return bad("constraints differ in dimension".into());
                }
                if let Some(b) = bbox {
                    if b.lo.len() != d || b.hi.len() != d {
                        return bad("bounding box dimension differs from the constraints".into());
                    }
                    if b.lo.iter().zip(&b.hi).any(|(l, h)| !l.is_finite() || !h.is_finite() || l > h) {
                        return bad("bounding box needs finite lo ≤ hi".into());
                    }
                }
            }
            SetDescription::Translated { inner, shift } => {
                if !shift.is_finite() {
                    return bad("shift must be finite".into());
                }
                inner.validate()?;
            }
            SetDescription::SimplexOrdered { .. } | SetDescription::SimplexStandard { .. } => {}
        }
        Ok(())
    }

    /// Membership up to `tol`.
    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        if x.len() != self.dim() {
            return false;
        }
        match self {
            SetDescription::PnormBall { p, radius, .. } => p_norm(x, p.0) <= radius + tol,
            SetDescription::OwlBall { weights } => owl_norm(x, weights) <= 1.0 + tol,
            SetDescription::SimplexOrdered { .. } => {
                x[0] >= -tol
                    && x[x.len() - 1] <= 1.0 + tol
                    && x.windows(2).all(|w| w[0] <= w[1] + tol)
            }
            SetDescription::SimplexStandard { .. } => {
                x.iter().all(|&v| v >= -tol) && x.iter().sum::<f64>() <= 1.0 + tol
            }
            SetDescription::Segment { endpoint_a, endpoint_b } => {
                let dir: Vec<f64> = endpoint_b.iter().zip(endpoint_a).map(|(b, a)| b - a).collect();
                let len2: f64 = dir.iter().map(|v| v * v).sum();
                let s = dir.iter().zip(x).zip(endpoint_a).map(|((d, x), a)| d * (x - a)).sum::<f64>() / len2;
                let s = s.clamp(0.0, 1.0);
                endpoint_a
                    .iter()
                    .zip(&dir)
                    .zip(x)
                    .all(|((a, d), x)| (a + s * d - x).abs() <= tol)
            }
            SetDescription::Semialgebraic { constraints, .. } => constraints
                .iter()
                .all(|g| g.eval(x).is_ok_and(|v| v >= -tol)),
            SetDescription::Translated { inner, shift } => {
                let y: Vec<f64> = x.iter().map(|v| v - shift).collect();
                inner.contains(&y, tol)
            }
        }
    }

    /// `diag(Ω) = [a, b]`, in closed form for the analytic kinds.
    pub fn diagonal(&self) -> Result<(f64, f64), DiagonalFailure> {
        if let Err(e) = self.validate() {
            return Err(DiagonalFailure::InvalidInput { detail: e.to_string() });
        }
        match self {
            SetDescription::PnormBall { p, radius, dim } => {
                let h = radius / ones_norm(p.0, *dim);
                Ok((-h, h))
            }
            SetDescription::OwlBall { weights } => {
                let w: f64 = weights.iter().sum();
                Ok((-1.0 / w, 1.0 / w))
            }
            SetDescription::SimplexOrdered { .. } => Ok((0.0, 1.0)),
            SetDescription::SimplexStandard { dim } => Ok((0.0, 1.0 / *dim as f64)),
            SetDescription::Segment { endpoint_a, endpoint_b } => {
                match segment_diagonal(endpoint_a, endpoint_b) {
                    SegmentDiagonal::Along { lo, hi } => Ok((lo, hi)),
                    SegmentDiagonal::Crossing { t, .. } => Ok((t, t)),
                    SegmentDiagonal::Missing => Err(DiagonalFailure::Empty),
                }
            }
            SetDescription::Semialgebraic { constraints, .. } => {
                compute_diagonal(constraints, DEFAULT_TOL).map(|i| (i.lo, i.hi))
            }
            SetDescription::Translated { inner, shift } => {
                inner.diagonal().map(|(a, b)| (a + shift, b + shift))
            }
        }
    }

    /// Polynomial constraints and bounding box of a (possibly translated)
    /// semi-algebraic set.
    pub fn semialgebraic_parts(&self) -> Option<(Vec<MultiPoly>, Option<BoundingBox>)> {
        match self {
            SetDescription::Semialgebraic { constraints, bbox } => {
                Some((constraints.clone(), bbox.clone()))
            }
            SetDescription::Translated { inner, shift } => {
                let (g, bbox) = inner.semialgebraic_parts()?;
                let g = g.iter().map(|p| p.shift_along_ones(-shift)).collect();
                let bbox = bbox.map(|b| BoundingBox {
                    lo: b.lo.iter().map(|v| v + shift).collect(),
                    hi: b.hi.iter().map(|v| v + shift).collect(),
                });
                Some((g, bbox))
            }
            _ => None,
        }
    }

    /// `count` points of the set from a stream determined by `seed`.
    ///
    /// Balls put half of their points on the boundary; all kinds are
    /// sampled by direct parameterization except semi-algebraic sets, which
    /// use rejection inside their bounding box.
    pub fn sample(&self, count: usize, seed: u64) -> Result<Vec<Vec<f64>>, SetError> {
        self.validate()?;
        if let SetDescription::Translated { inner, shift } = self {
            let mut pts = inner.sample(count, seed)?;
            for p in &mut pts {
                p.iter_mut().for_each(|v| *v += shift);
            }
            return Ok(pts);
        }
        if let SetDescription::Semialgebraic { bbox: None, .. } = self {
            return Err(SetError::MissingBoundingBox);
        }
        let chunks = count.div_ceil(CHUNK);
        let parts: Vec<Result<Vec<Vec<f64>>, SetError>> = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(c as u64);
                let want = CHUNK.min(count - c * CHUNK);
                self.sample_chunk(&mut rng, want, c * CHUNK)
            })
            .collect();
        let mut out = Vec::with_capacity(count);
        for p in parts {
            out.extend(p?);
        }
        Ok(out)
    }

    fn sample_chunk(&self, rng: &mut ChaCha8Rng, want: usize, first_index: usize) -> Result<Vec<Vec<f64>>, SetError> {
        let d = self.dim();
        let mut out = Vec::with_capacity(want);
        match self {
            SetDescription::PnormBall { p, radius, .. } => {
                for i in 0..want {
                    let g = gaussian(rng, d);
                    let r = radial(rng, d, first_index + i);
                    let s = radius * r / p_norm(&g, p.0).max(f64::MIN_POSITIVE);
                    out.push(g.iter().map(|v| v * s).collect());
                }
            }
            SetDescription::OwlBall { weights } => {
                for i in 0..want {
                    let g = gaussian(rng, d);
                    let r = radial(rng, d, first_index + i);
                    let s = r / owl_norm(&g, weights).max(f64::MIN_POSITIVE);
                    out.push(g.iter().map(|v| v * s).collect());
                }
            }
            SetDescription::SimplexOrdered { .. } => {
                for _ in 0..want {
                    let mut x: Vec<f64> = (0..d).map(|_| rng.random::<f64>()).collect();
                    x.sort_by(f64::total_cmp);
                    out.push(x);
                }
            }
            SetDescription::SimplexStandard { .. } => {
                for _ in 0..want {
                    let e: Vec<f64> = (0..=d).map(|_| rng.sample::<f64, _>(Exp1)).collect();
                    let total: f64 = e.iter().sum();
                    out.push(e[..d].iter().map(|v| v / total).collect());
                }
            }
            SetDescription::Segment { endpoint_a, endpoint_b } => {
                for _ in 0..want {
                    let s: f64 = rng.random();
                    out.push(endpoint_a.iter().zip(endpoint_b).map(|(a, b)| a + s * (b - a)).collect());
                }
            }
            SetDescription::Semialgebraic { constraints, bbox } => {
                let bbox = bbox.as_ref().ok_or(SetError::MissingBoundingBox)?;
                let compiled: Vec<_> = constraints.iter().map(MultiPoly::compile).collect();
                let limit = want.saturating_mul(MAX_REJECTION_RATIO).max(1);
                let mut tried = 0;
                while out.len() < want {
                    if tried >= limit {
                        return Err(SetError::SamplingFailed { accepted: out.len(), wanted: want, tried });
                    }
                    tried += 1;
                    let x: Vec<f64> =
                        bbox.lo.iter().zip(&bbox.hi).map(|(l, h)| l + rng.random::<f64>() * (h - l)).collect();
                    if compiled.iter().all(|g| g.eval(&x) >= 0.0) {
                        out.push(x);
                    }
                }
            }
            SetDescription::Translated { .. } => unreachable!("handled by sample"),
        }
        Ok(out)
    }
}

fn gaussian(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    (0..d).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
}

/// Radius factor: boundary for even indices, `U^{1/d}` otherwise.
fn radial(rng: &mut ChaCha8Rng, d: usize, index: usize) -> f64 {
    if index.is_multiple_of(2) {
        1.0
    } else {
        rng.random::<f64>().powf(1.0 / d as f64)
    }
}

impl fmt::Display for SetDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetDescription::PnormBall { p, radius, dim } => {
                if p.0.is_infinite() {
                    write!(f, "inf-norm ball of radius {radius} in dimension {dim}")
                } else {
                    write!(f, "{}-norm ball of radius {radius} in dimension {dim}", p.0)
                }
            }
            SetDescription::OwlBall { weights } => write!(f, "owl ball with weights {weights:?}"),
            SetDescription::SimplexOrdered { dim } => write!(f, "ordered simplex in dimension {dim}"),
            SetDescription::SimplexStandard { dim } => write!(f, "standard simplex in dimension {dim}"),
            SetDescription::Segment { endpoint_a, endpoint_b } => {
                write!(f, "segment {endpoint_a:?} to {endpoint_b:?}")
            }
            SetDescription::Semialgebraic { constraints, .. } => {
                write!(f, "semi-algebraic set with {} constraints", constraints.len())
            }
            SetDescription::Translated { inner, shift } => write!(f, "({inner}) + {shift}·1"),
        }
    }
}

enum SegmentDiagonal {
    /// The segment lies on the diagonal line.
    Along { lo: f64, hi: f64 },
    /// Meets the diagonal in the single point `t𝟏`, with direction `dir`.
    Crossing { t: f64, dir: Vec<f64> },
    Missing,
}

fn segment_diagonal(a: &[f64], b: &[f64]) -> SegmentDiagonal {
    const TOL: f64 = 1e-12;
    let d = a.len() as f64;
    let dir: Vec<f64> = b.iter().zip(a).map(|(b, a)| b - a).collect();
    let scale = 1.0 + a.iter().chain(b).fold(0.0f64, |m, v| m.max(v.abs()));
    // component of a point orthogonal to 𝟏
    let off_diag = |p: &[f64]| -> Vec<f64> {
        let mean = p.iter().sum::<f64>() / d;
        p.iter().map(|v| v - mean).collect()
    };
    let pa = off_diag(a);
    let pd = off_diag(&dir);
    let nd2: f64 = pd.iter().map(|v| v * v).sum();
    if nd2.sqrt() <= TOL * scale {
        // direction parallel to 𝟏
        if pa.iter().all(|v| v.abs() <= TOL * scale) {
            let ta = a.iter().sum::<f64>() / d;
            let tb = b.iter().sum::<f64>() / d;
            return SegmentDiagonal::Along { lo: ta.min(tb), hi: ta.max(tb) };
        }
        return SegmentDiagonal::Missing;
    }
    // a + s·dir ∈ span(𝟏)  ⇔  pa + s·pd = 0
    let s = -pa.iter().zip(&pd).map(|(p, q)| p * q).sum::<f64>() / nd2;
    let resid = pa.iter().zip(&pd).fold(0.0f64, |m, (p, q)| m.max((p + s * q).abs()));
    if resid > 1e-10 * scale || !(-1e-12..=1.0 + 1e-12).contains(&s) {
        return SegmentDiagonal::Missing;
    }
    let t = a.iter().zip(&dir).map(|(a, q)| a + s * q).sum::<f64>() / d;
    SegmentDiagonal::Crossing { t, dir }
}

/// Closed-form certificate for the analytic families; `None` when no
/// formula applies.
pub fn certify_analytic(s: &SetDescription) -> Option<DDCertificate> {
    s.validate().ok()?;
    let d = s.dim();
    let analytic = |v: Vec<f64>, a: f64, b: f64| Some(DDCertificate::new(v, a, b, Provenance::Analytic));
    match s {
        SetDescription::PnormBall { .. } | SetDescription::SimplexStandard { .. } => {
            let (a, b) = s.diagonal().ok()?;
            analytic(vec![1.0 / d as f64; d], a, b)
        }
        SetDescription::OwlBall { weights } => {
            let w: f64 = weights.iter().sum();
            analytic(weights.iter().map(|x| x / w).collect(), -1.0 / w, 1.0 / w)
        }
        SetDescription::SimplexOrdered { .. } => {
            let mut v = vec![0.0; d];
            v[0] = 1.0;
            analytic(v, 0.0, 1.0)
        }
        SetDescription::Segment { endpoint_a, endpoint_b } => {
            match segment_diagonal(endpoint_a, endpoint_b) {
                SegmentDiagonal::Along { lo, hi } => analytic(vec![1.0 / d as f64; d], lo, hi),
                SegmentDiagonal::Crossing { t, dir } => {
                    // v ⟂ dir with ⟨v, 𝟏⟩ = 1: the normalized projection of 𝟏
                    let nd2: f64 = dir.iter().map(|x| x * x).sum();
                    let c = dir.iter().sum::<f64>() / nd2;
                    let p: Vec<f64> = dir.iter().map(|q| 1.0 - c * q).collect();
                    let np2: f64 = p.iter().sum();
                    if np2 <= 1e-12 {
                        return None;
                    }
                    analytic(p.iter().map(|x| x / np2).collect(), t, t)
                }
                SegmentDiagonal::Missing => None,
            }
        }
        SetDescription::Semialgebraic { .. } => None,
        SetDescription::Translated { inner, shift } => {
            let mut c = certify_analytic(inner)?;
            c.a += shift;
            c.b += shift;
            Some(c)
        }
    }
}

/// Samples the set and measures how far `⟨v, x⟩` leaves `[a, b]`.
pub fn check_certificate(
    s: &SetDescription,
    c: &DDCertificate,
    samples: usize,
    seed: u64,
) -> Result<CertificateReport, SetError> {
    if c.dim() != s.dim() {
        return Err(SetError::DimensionMismatch { set: s.dim(), cert: c.dim() });
    }
    let mut points = s.sample(samples.max(1), seed)?;
    let d = s.dim();
    let diagonal_pts: Vec<Vec<f64>> =
        [c.a, c.b, 0.5 * (c.a + c.b)].iter().map(|&t| vec![t; d]).collect();
    let diagonal_ok = diagonal_pts.iter().all(|p| s.contains(p, 1e-9));
    points.extend(diagonal_pts);
    let violation = |x: &[f64]| {
        let t = c.eval(x);
        (c.a - t).max(t - c.b)
    };
    let (max_violation, idx) = points
        .par_iter()
        .enumerate()
        .map(|(i, x)| (violation(x), i))
        .reduce(|| (f64::NEG_INFINITY, 0), |p, q| if q.0 > p.0 || (q.0 == p.0 && q.1 < p.1) { q } else { p });
    Ok(CertificateReport {
        max_violation,
        sum_v: c.sum_v(),
        argmax: points[idx].clone(),
        diagonal_ok,
        samples: points.len(),
    })
}

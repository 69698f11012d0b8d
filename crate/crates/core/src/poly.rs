//! Sparse multivariate and dense univariate polynomials.
//!
//! [`MultiPoly`] stores a map from exponent vectors to coefficients, kept in
//! graded-lexicographic order so that iteration and serialization are
//! deterministic. [`UniPoly`] is a dense coefficient vector indexed by power.
//! Every arithmetic result drops coefficients whose magnitude is at most
//! [`PRUNE_THRESHOLD`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Coefficients with absolute value at or below this are removed after every
/// arithmetic operation.
pub const PRUNE_THRESHOLD: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("polynomial has degree {degree}, which exceeds {bound}")]
    DegreeTooHigh { degree: usize, bound: usize },
    #[error("polynomial dimension must be positive")]
    ZeroDimension,
}

/// Exponent vector `α` of the monomial `x^α`.
///
/// Ordered graded-lexicographically: by total degree first, then
/// lexicographically with `x₁` most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(dim: usize) -> Self {
        Monomial(vec![0; dim])
    }

    /// The monomial `x_i`.
    pub fn var(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    /// Product of monomials, i.e. the sum of exponent vectors.
    pub fn times(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.dim(), other.dim());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.0
            .iter()
            .zip(x)
            .map(|(&e, &xi)| xi.powi(e as i32))
            .product()
    }

    /// All monomials in `dim` variables of total degree at most `max_degree`,
    /// in ascending graded-lex order.
    pub fn all_up_to(dim: usize, max_degree: usize) -> Vec<Monomial> {
        let mut out = Vec::new();
        for deg in 0..=max_degree {
            out.extend(Self::all_of_degree(dim, deg));
        }
        out
    }

    /// All monomials in `dim` variables of total degree exactly `degree`, in
    /// ascending graded-lex order.
    pub fn all_of_degree(dim: usize, degree: usize) -> Vec<Monomial> {
        fn rec(dim: usize, pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if pos + 1 == dim {
                cur[pos] = left;
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in 0..=left {
                cur[pos] = e;
                rec(dim, pos + 1, left - e, cur, out);
            }
        }
        if dim == 0 {
            return if degree == 0 { vec![Monomial(vec![])] } else { vec![] };
        }
        let mut out = Vec::new();
        let mut cur = vec![0; dim];
        rec(dim, 0, degree as u32, &mut cur, &mut out);
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Dense univariate polynomial; `coeffs()[i]` is the coefficient of `tⁱ`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct UniPoly {
    coeffs: Vec<f64>,
}

impl UniPoly {
    /// Builds a polynomial, trimming exact trailing zeros.
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    /// `tⁿ`
    pub fn monomial(n: usize) -> Self {
        let mut c = vec![0.0; n + 1];
        c[n] = 1.0;
        UniPoly { coeffs: c }
    }

    fn pruned(mut coeffs: Vec<f64>) -> Self {
        for c in coeffs.iter_mut() {
            if c.abs() <= PRUNE_THRESHOLD {
                *c = 0.0;
            }
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> f64 {
        self.coeffs.last().copied().unwrap_or(0.0)
    }

    /// Coefficient of `tⁱ` (zero past the degree).
    pub fn coeff(&self, i: usize) -> f64 {
        self.coeffs.get(i).copied().unwrap_or(0.0)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as f64)
                .collect(),
        )
    }

    pub fn scale(&self, s: f64) -> UniPoly {
        Self::pruned(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn norm1(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    pub fn norm_inf(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Composition `t ↦ self(scale·t + shift)`.
    pub fn compose_linear(&self, scale: f64, shift: f64) -> UniPoly {
        let inner = UniPoly::new(vec![shift, scale]);
        let mut acc = UniPoly::zero();
        for &c in self.coeffs.iter().rev() {
            acc = &(&acc * &inner) + &UniPoly::constant(c);
        }
        acc
    }

    /// Euclidean division; returns `(quotient, remainder)` with the
    /// remainder's degree below the divisor's. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.leading_coeff();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![0.0; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = rem[i + dd] / lead;
            quot[i] = q;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= q * dc;
            }
            rem[i + dd] = 0.0;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::pruned((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::pruned((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::pruned(out)
    }
}

/// Serialized as the dense coefficient array.
impl Serialize for UniPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coeffs().serialize(s)
    }
}

impl<'de> Deserialize<'de> for UniPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Vec::<f64>::deserialize(d).map(UniPoly::new)
    }
}

/// Chebyshev polynomial of the first kind `Tₙ`, via
/// `T₀ = 1, T₁ = t, Tₖ = 2t·Tₖ₋₁ − Tₖ₋₂`.
///
/// All coefficients are integers, exact in `f64` well past `n = 50`.
pub fn chebyshev_coeffs(n: usize) -> UniPoly {
    let mut prev = vec![1.0];
    if n == 0 {
        return UniPoly::new(prev);
    }
    let mut cur = vec![0.0, 1.0];
    for _ in 1..n {
        let mut next = vec![0.0; cur.len() + 1];
        for (i, &c) in cur.iter().enumerate() {
            next[i + 1] += 2.0 * c;
        }
        for (i, &c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = cur;
        cur = next;
    }
    UniPoly::new(cur)
}

/// The affine map `x ↦ ⟨weights, x⟩ + offset`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineForm {
    pub weights: Vec<f64>,
    pub offset: f64,
}

impl AffineForm {
    pub fn new(weights: Vec<f64>, offset: f64) -> Self {
        AffineForm { weights, offset }
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.weights.iter().zip(x).map(|(w, xi)| w * xi).sum::<f64>() + self.offset
    }

    pub fn to_poly(&self) -> MultiPoly {
        let d = self.dim();
        let mut terms: Vec<(Monomial, f64)> = self
            .weights
            .iter()
            .enumerate()
            .map(|(i, &w)| (Monomial::var(d, i), w))
            .collect();
        terms.push((Monomial::one(d), self.offset));
        MultiPoly::from_terms(d, terms).expect("affine form terms share its dimension")
    }
}

/// Sparse polynomial in `dim` variables.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPoly {
    dim: usize,
    terms: BTreeMap<Monomial, f64>,
}

impl MultiPoly {
    pub fn zero(dim: usize) -> Self {
        MultiPoly { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: f64) -> Self {
        let mut p = Self::zero(dim);
        p.add_term(Monomial::one(dim), c);
        p.prune();
        p
    }

    /// The coordinate polynomial `x_i`.
    pub fn var(dim: usize, i: usize) -> Self {
        let mut p = Self::zero(dim);
        p.add_term(Monomial::var(dim, i), 1.0);
        p
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs; repeated
    /// monomials are summed.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Monomial, f64)>,
    {
        if dim == 0 {
            return Err(PolyError::ZeroDimension);
        }
        let mut p = Self::zero(dim);
        for (m, c) in terms {
            if m.dim() != dim {
                return Err(PolyError::DimensionMismatch { expected: dim, got: m.dim() });
            }
            p.add_term(m, c);
        }
        p.prune();
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: f64) {
        *self.terms.entry(m).or_insert(0.0) += c;
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| c.abs() > PRUNE_THRESHOLD);
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, f64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, m: &Monomial) -> f64 {
        self.terms.get(m).copied().unwrap_or(0.0)
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.terms.keys().next_back().map_or(0, Monomial::degree)
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64, PolyError> {
        if x.len() != self.dim {
            return Err(PolyError::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        Ok(self.terms.iter().map(|(m, c)| c * m.eval(x)).sum())
    }

    /// Precomputes a flat representation for repeated evaluation.
    pub fn compile(&self) -> CompiledPoly {
        CompiledPoly::new(self)
    }

    pub fn scale(&self, s: f64) -> MultiPoly {
        let mut out = MultiPoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        };
        out.prune();
        out
    }

    /// Sum of the coefficients of the monomials of total degree exactly `n`.
    /// A polynomial of degree at most `n` lies in the "monic" class exactly
    /// when this equals one.
    pub fn leading_coeff_sum(&self, n: usize) -> Result<f64, PolyError> {
        let degree = self.degree();
        if degree > n {
            return Err(PolyError::DegreeTooHigh { degree, bound: n });
        }
        Ok(self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() == n)
            .map(|(_, c)| c)
            .sum())
    }

    /// Homogeneous component of degree `n`.
    pub fn homogeneous_part(&self, n: usize) -> MultiPoly {
        MultiPoly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == n)
                .map(|(m, &c)| (m.clone(), c))
                .collect(),
        }
    }

    /// The univariate polynomial `t ↦ p(t, …, t)`.
    pub fn restrict_to_diagonal(&self) -> UniPoly {
        let mut c = vec![0.0; self.degree() + 1];
        for (m, &v) in &self.terms {
            c[m.degree()] += v;
        }
        UniPoly::pruned(c)
    }

    /// `x ↦ p(x + shift·𝟏)`.
    pub fn shift_along_ones(&self, shift: f64) -> MultiPoly {
        if shift == 0.0 {
            return self.clone();
        }
        let substitutions: Vec<MultiPoly> = (0..self.dim)
            .map(|i| &MultiPoly::var(self.dim, i) + &MultiPoly::constant(self.dim, shift))
            .collect();
        self.substitute(&substitutions)
    }

    /// Replaces each variable `x_i` by the polynomial `subs[i]`.
    pub fn substitute(&self, subs: &[MultiPoly]) -> MultiPoly {
        assert_eq!(subs.len(), self.dim, "one substitution per variable");
        let out_dim = subs.first().map_or(self.dim, MultiPoly::dim);
        let max_deg = self.degree() as u32;
        // powers[i][e] = subs[i]^e
        let powers: Vec<Vec<MultiPoly>> = subs
            .iter()
            .map(|s| {
                let mut v = vec![MultiPoly::constant(out_dim, 1.0)];
                for e in 1..=max_deg as usize {
                    let next = &v[e - 1] * s;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = MultiPoly::zero(out_dim);
        for (m, &c) in &self.terms {
            let mut term = MultiPoly::constant(out_dim, c);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term = &term * &powers[i][e as usize];
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    pub fn max_abs_coeff_diff(&self, other: &MultiPoly) -> f64 {
        let mut worst: f64 = 0.0;
        for (m, &c) in &self.terms {
            worst = worst.max((c - other.coeff(m)).abs());
        }
        for (m, &c) in &other.terms {
            if !self.terms.contains_key(m) {
                worst = worst.max(c.abs());
            }
        }
        worst
    }
}

/// Expands `u(⟨v, x⟩ + c)` into the monomial basis.
pub fn compose_affine(u: &UniPoly, f: &AffineForm) -> MultiPoly {
    let d = f.dim();
    let linear = f.to_poly();
    let mut acc = MultiPoly::zero(d);
    for &c in u.coeffs().iter().rev() {
        acc = &(&acc * &linear) + &MultiPoly::constant(d, c);
    }
    acc
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.dim, rhs.dim, "polynomial dimensions differ");
        let mut out = self.clone();
        for (m, &c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out.prune();
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.dim, rhs.dim, "polynomial dimensions differ");
        let mut out = self.clone();
        for (m, &c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out.prune();
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.dim, rhs.dim, "polynomial dimensions differ");
        let mut out = MultiPoly::zero(self.dim);
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &rhs.terms {
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        out.prune();
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(-1.0)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " {} ", if *c < 0.0 { '-' } else { '+' })?;
            } else if *c < 0.0 {
                write!(f, "-")?;
            }
            write!(f, "{}", c.abs())?;
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{}", i + 1, e)?,
                }
            }
        }
        Ok(())
    }
}

/// Flattened polynomial for fast repeated evaluation.
#[derive(Debug, Clone)]
pub struct CompiledPoly {
    dim: usize,
    max_exp: usize,
    exps: Vec<u32>,
    coefs: Vec<f64>,
}

impl CompiledPoly {
    fn new(p: &MultiPoly) -> Self {
        let mut exps = Vec::with_capacity(p.num_terms() * p.dim);
        let mut coefs = Vec::with_capacity(p.num_terms());
        let mut max_exp = 0;
        for (m, c) in p.terms() {
            exps.extend_from_slice(m.exponents());
            max_exp = max_exp.max(m.exponents().iter().copied().max().unwrap_or(0) as usize);
            coefs.push(c);
        }
        CompiledPoly { dim: p.dim, max_exp, exps, coefs }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Evaluates at `x`. Panics if `x.len()` differs from the dimension.
    pub fn eval(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.dim);
        let stride = self.max_exp + 1;
        let mut pows = vec![1.0; self.dim * stride];
        for (i, &xi) in x.iter().enumerate() {
            for e in 1..stride {
                pows[i * stride + e] = pows[i * stride + e - 1] * xi;
            }
        }
        let mut sum = 0.0;
        for (t, &c) in self.coefs.iter().enumerate() {
            let mut v = c;
            for (i, &e) in self.exps[t * self.dim..(t + 1) * self.dim].iter().enumerate() {
                if e > 0 {
                    v *= pows[i * stride + e as usize];
                }
            }
            sum += v;
        }
        sum
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exp: Vec<u32>,
    coef: f64,
}

#[derive(Serialize, Deserialize)]
struct MultiPolyRepr {
    dim: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MultiPolyRepr {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| TermRepr { exp: m.0.clone(), coef: c })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = MultiPolyRepr::deserialize(deserializer)?;
        MultiPoly::from_terms(
            repr.dim,
            repr.terms.into_iter().map(|t| (Monomial(t.exp), t.coef)),
        )
        .map_err(serde::de::Error::custom)
    }
}

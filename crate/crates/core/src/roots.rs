//! Real roots of univariate polynomials and the diagonal of a semi-algebraic
//! set.
//!
//! Roots are counted with a Sturm sequence built in floating point and then
//! isolated by bisection. Polynomial values whose magnitude falls below
//! [`SIGN_GUARD`] times the absolute-value bound `Σ|cᵢ||t|ⁱ` are treated as
//! zero when counting sign variations. A Sturm chain that ends in a
//! non-constant polynomial means (near-)multiple roots; that case is reported
//! as [`RootError::IllConditioned`] instead of being guessed at.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{MultiPoly, UniPoly};

/// Default root tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Relative threshold below which a polynomial value has no reliable sign.
pub const SIGN_GUARD: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("ill-conditioned root structure: {0}")]
    IllConditioned(String),
}

/// A real interval, possibly unbounded; infinite endpoints are always open.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn new(lo: f64, hi: f64, lo_closed: bool, hi_closed: bool) -> Self {
        debug_assert!(lo <= hi);
        Interval {
            lo,
            hi,
            lo_closed: lo_closed && lo.is_finite(),
            hi_closed: hi_closed && hi.is_finite(),
        }
    }

    pub fn closed(lo: f64, hi: f64) -> Self {
        Self::new(lo, hi, true, true)
    }

    pub fn real_line() -> Self {
        Self::new(f64::NEG_INFINITY, f64::INFINITY, false, false)
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn contains(&self, t: f64) -> bool {
        let above = if self.lo_closed { t >= self.lo } else { t > self.lo };
        let below = if self.hi_closed { t <= self.hi } else { t < self.hi };
        above && below
    }

    fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && !(self.lo_closed && self.hi_closed))
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lo, lo_closed) = match self.lo.partial_cmp(&other.lo) {
            Some(std::cmp::Ordering::Greater) => (self.lo, self.lo_closed),
            Some(std::cmp::Ordering::Less) => (other.lo, other.lo_closed),
            _ => (self.lo, self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.partial_cmp(&other.hi) {
            Some(std::cmp::Ordering::Less) => (self.hi, self.hi_closed),
            Some(std::cmp::Ordering::Greater) => (other.hi, other.hi_closed),
            _ => (self.hi, self.hi_closed && other.hi_closed),
        };
        let out = Interval { lo, hi, lo_closed, hi_closed };
        (!out.is_empty()).then_some(out)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lo_closed { '[' } else { '(' };
        let close = if self.hi_closed { ']' } else { ')' };
        let show = |v: f64| {
            if v == f64::INFINITY {
                "inf".to_string()
            } else if v == f64::NEG_INFINITY {
                "-inf".to_string()
            } else {
                format!("{v}")
            }
        };
        write!(f, "{open}{}, {}{close}", show(self.lo), show(self.hi))
    }
}

/// Sorted, pairwise disjoint intervals.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { intervals: Vec::new() }
    }

    pub fn real_line() -> Self {
        IntervalSet { intervals: vec![Interval::real_line()] }
    }

    /// Builds a set from arbitrary intervals, sorting and merging overlaps.
    pub fn from_intervals(intervals: Vec<Interval>) -> Self {
        Self::merge(intervals, 0.0)
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, t: f64) -> bool {
        self.intervals.iter().any(|i| i.contains(t))
    }

    /// Merges intervals whose gap is at most `tol`.
    pub fn merged(&self, tol: f64) -> IntervalSet {
        Self::merge(self.intervals.clone(), tol)
    }

    fn merge(mut v: Vec<Interval>, tol: f64) -> IntervalSet {
        v.retain(|i| !i.is_empty());
        v.sort_by(|a, b| a.lo.total_cmp(&b.lo).then(b.lo_closed.cmp(&a.lo_closed)));
        let mut out: Vec<Interval> = Vec::new();
        for iv in v {
            if let Some(last) = out.last_mut() {
                let gap = iv.lo - last.hi;
                let touching = gap < 0.0
                    || (gap == 0.0 && (last.hi_closed || iv.lo_closed))
                    || (tol > 0.0 && gap <= tol);
                if touching {
                    if iv.hi > last.hi || (iv.hi == last.hi && iv.hi_closed) {
                        last.hi = iv.hi;
                        last.hi_closed = iv.hi_closed;
                    }
                    continue;
                }
            }
            out.push(iv);
        }
        IntervalSet { intervals: out }
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        for a in &self.intervals {
            for b in &other.intervals {
                if let Some(c) = a.intersect(b) {
                    out.push(c);
                }
            }
        }
        Self::from_intervals(out)
    }
}

/// Intersection of a non-empty family of sets.
pub fn intersect_all(sets: &[IntervalSet]) -> IntervalSet {
    let mut iter = sets.iter();
    let Some(first) = iter.next() else {
        return IntervalSet::real_line();
    };
    iter.fold(first.clone(), |acc, s| acc.intersect(s))
}

fn guarded_sign(p: &UniPoly, t: f64) -> i8 {
    let v = p.eval(t);
    let at = t.abs();
    let bound = p.coeffs().iter().rev().fold(0.0, |acc, c| acc * at + c.abs());
    if v.abs() <= SIGN_GUARD * bound {
        0
    } else if v > 0.0 {
        1
    } else {
        -1
    }
}

struct SturmChain {
    chain: Vec<UniPoly>,
}

impl SturmChain {
    fn new(p: &UniPoly) -> Result<Self, RootError> {
        let normalize = |q: UniPoly| {
            let s = q.norm_inf();
            if s > 0.0 { q.scale(1.0 / s) } else { q }
        };
        let mut chain = vec![normalize(p.clone()), normalize(p.derivative())];
        loop {
            let n = chain.len();
            if chain[n - 1].degree() == Some(0) {
                break;
            }
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            let scale = chain[n - 2].norm1().max(chain[n - 1].norm1());
            let mut r = r.scale(-1.0);
            // strip leading coefficients that are rounding residue
            let mut c = r.coeffs().to_vec();
            while c.last().is_some_and(|x| x.abs() <= SIGN_GUARD * scale) {
                c.pop();
            }
            r = UniPoly::new(c);
            if r.is_zero() {
                let last = &chain[n - 1];
                if last.degree().unwrap_or(0) > 0 {
                    return Err(RootError::IllConditioned(format!(
                        "near-multiple root: Sturm chain ends in a degree-{} factor",
                        last.degree().unwrap_or(0)
                    )));
                }
                break;
            }
            chain.push(normalize(r));
        }
        Ok(SturmChain { chain })
    }

    fn variations(&self, t: f64) -> i64 {
        let mut count = 0;
        let mut prev = 0i8;
        for q in &self.chain {
            let s = guarded_sign(q, t);
            if s != 0 {
                if prev != 0 && s != prev {
                    count += 1;
                }
                prev = s;
            }
        }
        count
    }
}

fn cauchy_bound(p: &UniPoly) -> f64 {
    let lead = p.leading_coeff().abs();
    let n = p.coeffs().len() - 1;
    1.0 + p.coeffs()[..n].iter().fold(0.0f64, |m, c| m.max(c.abs() / lead))
}

/// All distinct real roots of `p`, ascending, each within `tol` of a true
/// root.
pub fn isolate_real_roots(p: &UniPoly, tol: f64) -> Result<Vec<f64>, RootError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(RootError::BadTolerance(tol));
    }
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let sturm = SturmChain::new(p)?;
    // offset keeps bisection points away from round numbers
    let bound = cauchy_bound(p) * 1.000_123_4 + 0.137;
    let mut roots = Vec::new();
    let mut stack = vec![(-bound, bound, sturm.variations(-bound), sturm.variations(bound))];
    while let Some((lo, hi, vlo, vhi)) = stack.pop() {
        let count = vlo - vhi;
        if count < 0 {
            return Err(RootError::IllConditioned(format!(
                "inconsistent Sturm count on ({lo}, {hi}]"
            )));
        }
        if count == 0 {
            continue;
        }
        if count == 1 {
            roots.push(refine(p, lo, hi)?);
            continue;
        }
        if hi - lo <= tol {
            return Err(RootError::IllConditioned(format!(
                "{count} roots closer than {tol} near {lo}"
            )));
        }
        let mid = 0.5 * (lo + hi);
        let vmid = sturm.variations(mid);
        stack.push((lo, mid, vlo, vmid));
        stack.push((mid, hi, vmid, vhi));
    }
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

/// Bisection for the single root in `(lo, hi]`, down to adjacent floats.
fn refine(p: &UniPoly, mut lo: f64, mut hi: f64) -> Result<f64, RootError> {
    let fhi = p.eval(hi);
    if fhi == 0.0 {
        return Ok(hi);
    }
    let flo = p.eval(lo);
    if flo == 0.0 || flo.signum() == fhi.signum() {
        if guarded_sign(p, hi) == 0 {
            return Ok(hi);
        }
        return Err(RootError::IllConditioned(format!(
            "no sign change across isolated root interval ({lo}, {hi}]"
        )));
    }
    let slo = flo.signum();
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = p.eval(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `{t : p(t) ≥ 0}` with endpoints at the roots of `p`.
pub fn nonneg_set(p: &UniPoly, tol: f64) -> Result<IntervalSet, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    let roots = isolate_real_roots(p, tol)?;
    if roots.is_empty() {
        return Ok(if p.eval(0.0) > 0.0 { IntervalSet::real_line() } else { IntervalSet::empty() });
    }
    let n = roots.len();
    let probe = |i: usize| -> f64 {
        // sample point in the i-th open region between consecutive roots
        if i == 0 {
            roots[0] - 1.0f64.max(roots[0].abs())
        } else if i == n {
            roots[n - 1] + 1.0f64.max(roots[n - 1].abs())
        } else {
            0.5 * (roots[i - 1] + roots[i])
        }
    };
    let positive: Vec<bool> = (0..=n).map(|i| p.eval(probe(i)) > 0.0).collect();
    let mut intervals = Vec::new();
    let edge = |i: usize, upper: bool| -> f64 {
        match (i, upper) {
            (0, false) => f64::NEG_INFINITY,
            (i, true) if i == n => f64::INFINITY,
            (i, false) => roots[i - 1],
            (i, true) => roots[i],
        }
    };
    for (i, &pos) in positive.iter().enumerate() {
        if pos {
            intervals.push(Interval::closed(edge(i, false), edge(i, true)));
        }
    }
    for &r in &roots {
        intervals.push(Interval::closed(r, r));
    }
    Ok(IntervalSet::from_intervals(intervals))
}

/// Why the diagonal of a set is not a single bounded interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum DiagonalFailure {
    Empty,
    Disconnected { components: usize, unbounded: usize, intervals: Vec<Interval> },
    Unbounded { interval: Interval },
    IllConditioned { constraint: usize, detail: String },
    InvalidInput { detail: String },
}

fn count_word(n: usize) -> String {
    const WORDS: [&str; 11] =
        ["zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten"];
    WORDS.get(n).map_or_else(|| n.to_string(), |w| w.to_string())
}

impl fmt::Display for DiagonalFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagonalFailure::Empty => write!(f, "empty diagonal"),
            DiagonalFailure::Disconnected { components, unbounded, .. } => {
                if unbounded == components {
                    write!(f, "{} unbounded components", count_word(*components))
                } else if *unbounded == 0 {
                    write!(f, "{} bounded components", count_word(*components))
                } else {
                    write!(
                        f,
                        "{} components ({} unbounded)",
                        count_word(*components),
                        count_word(*unbounded)
                    )
                }
            }
            DiagonalFailure::Unbounded { interval } => write!(f, "unbounded diagonal {interval}"),
            DiagonalFailure::IllConditioned { constraint, detail } => {
                write!(f, "constraint {constraint}: {detail}")
            }
            DiagonalFailure::InvalidInput { detail } => write!(f, "invalid input: {detail}"),
        }
    }
}

/// Diagonal of `{x : g_j(x) ≥ 0 ∀j}`: restricts each constraint to `t𝟏`,
/// intersects the nonnegativity sets and succeeds only when the result is a
/// single bounded interval.
pub fn compute_diagonal(constraints: &[MultiPoly], tol: f64) -> Result<Interval, DiagonalFailure> {
    let Some(first) = constraints.first() else {
        return Err(DiagonalFailure::InvalidInput { detail: "no constraints".into() });
    };
    if let Some(bad) = constraints.iter().find(|g| g.dim() != first.dim()) {
        return Err(DiagonalFailure::InvalidInput {
            detail: format!("constraint dimensions {} and {} differ", first.dim(), bad.dim()),
        });
    }
    let mut sets = Vec::with_capacity(constraints.len());
    for (j, g) in constraints.iter().enumerate() {
        let p = g.restrict_to_diagonal();
        if p.is_zero() {
            sets.push(IntervalSet::real_line());
            continue;
        }
        match nonneg_set(&p, tol) {
            Ok(s) => sets.push(s),
            Err(e) => {
                return Err(DiagonalFailure::IllConditioned { constraint: j, detail: e.to_string() })
            }
        }
    }
    let diag = intersect_all(&sets).merged(tol);
    match diag.intervals() {
        [] => Err(DiagonalFailure::Empty),
        [single] if single.is_bounded() => Ok(*single),
        [single] => Err(DiagonalFailure::Unbounded { interval: *single }),
        many => Err(DiagonalFailure::Disconnected {
            components: many.len(),
            unbounded: many.iter().filter(|i| !i.is_bounded()).count(),
            intervals: many.to_vec(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;

    fn from_roots(roots: &[f64]) -> UniPoly {
        roots
            .iter()
            .fold(UniPoly::constant(1.0), |acc, &r| &acc * &UniPoly::new(vec![-r, 1.0]))
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn isolate_examples() {
        let r = isolate_real_roots(&UniPoly::new(vec![1.0, 0.0, -1.0]), DEFAULT_TOL).unwrap();
        assert!(close(&r, &[-1.0, 1.0], DEFAULT_TOL));

        let r = isolate_real_roots(&UniPoly::new(vec![1.0, 0.0, 1.0]), DEFAULT_TOL).unwrap();
        assert!(r.is_empty());

        let p = from_roots(&[0.25, 0.5, 3.0]);
        let r = isolate_real_roots(&p, DEFAULT_TOL).unwrap();
        assert!(close(&r, &[0.25, 0.5, 3.0], DEFAULT_TOL));
    }

    #[test]
    fn isolate_errors() {
        assert_eq!(isolate_real_roots(&UniPoly::zero(), 1e-10), Err(RootError::ZeroPolynomial));
        assert!(matches!(
            isolate_real_roots(&UniPoly::monomial(1), 0.0),
            Err(RootError::BadTolerance(_))
        ));
        // (t − 1)²(t + 2): double root
        let p = from_roots(&[1.0, 1.0, -2.0]);
        assert!(matches!(isolate_real_roots(&p, 1e-10), Err(RootError::IllConditioned(_))));
    }

    #[test]
    fn nonneg_examples() {
        let s = nonneg_set(&UniPoly::new(vec![1.0, 0.0, -1.0]), DEFAULT_TOL).unwrap();
        assert_eq!(s.intervals().len(), 1);
        let i = s.intervals()[0];
        assert!((i.lo + 1.0).abs() < 1e-10 && (i.hi - 1.0).abs() < 1e-10);
        assert!(i.lo_closed && i.hi_closed);

        let s = nonneg_set(&UniPoly::monomial(1), DEFAULT_TOL).unwrap();
        assert_eq!(s.intervals(), &[Interval::new(0.0, f64::INFINITY, true, false)]);

        // (t² − 1)(t² − 4)
        let p = from_roots(&[-2.0, -1.0, 1.0, 2.0]);
        let s = nonneg_set(&p, DEFAULT_TOL).unwrap();
        let iv = s.intervals();
        assert_eq!(iv.len(), 3);
        assert!(iv[0].lo == f64::NEG_INFINITY && (iv[0].hi + 2.0).abs() < 1e-10);
        assert!((iv[1].lo + 1.0).abs() < 1e-10 && (iv[1].hi - 1.0).abs() < 1e-10);
        assert!((iv[2].lo - 2.0).abs() < 1e-10 && iv[2].hi == f64::INFINITY);

        assert!(nonneg_set(&UniPoly::constant(-3.0), 1e-10).unwrap().is_empty());
        assert_eq!(nonneg_set(&UniPoly::constant(2.0), 1e-10).unwrap(), IntervalSet::real_line());
    }

    #[test]
    fn intersect_examples() {
        let unit = IntervalSet::from_intervals(vec![Interval::closed(-1.0, 1.0)]);
        let half = IntervalSet::from_intervals(vec![Interval::new(0.0, f64::INFINITY, true, false)]);
        let far = IntervalSet::from_intervals(vec![Interval::closed(2.0, 3.0)]);
        assert_eq!(
            intersect_all(&[unit.clone(), half]).intervals(),
            &[Interval::closed(0.0, 1.0)]
        );
        assert!(intersect_all(&[unit.clone(), far]).is_empty());
        assert_eq!(intersect_all(&[unit.clone(), unit.clone()]), unit);
    }

    #[test]
    fn touching_intervals_merge() {
        let s = IntervalSet::from_intervals(vec![
            Interval::closed(0.0, 1.0),
            Interval::closed(1.0 + 1e-12, 2.0),
        ]);
        assert_eq!(s.intervals().len(), 2);
        assert_eq!(s.merged(1e-10).intervals(), &[Interval::closed(0.0, 2.0)]);
    }

    fn g(dim: usize, terms: &[(&[u32], f64)]) -> MultiPoly {
        MultiPoly::from_terms(dim, terms.iter().map(|(e, c)| (Monomial::new(e.to_vec()), *c)))
            .unwrap()
    }

    #[test]
    fn diagonal_examples() {
        let cube = [g(2, &[(&[0, 0], 1.0), (&[2, 0], -1.0)]), g(2, &[(&[0, 0], 1.0), (&[0, 2], -1.0)])];
        let d = compute_diagonal(&cube, DEFAULT_TOL).unwrap();
        assert!((d.lo + 1.0).abs() < 1e-10 && (d.hi - 1.0).abs() < 1e-10);

        let simplex = [
            g(2, &[(&[1, 0], 1.0)]),
            g(2, &[(&[0, 1], 1.0)]),
            g(2, &[(&[0, 0], 1.0), (&[1, 0], -1.0), (&[0, 1], -1.0)]),
        ];
        let d = compute_diagonal(&simplex, DEFAULT_TOL).unwrap();
        assert!(d.lo.abs() < 1e-10 && (d.hi - 0.5).abs() < 1e-10);

        let outside = [g(2, &[(&[2, 0], 1.0), (&[0, 0], -1.0)])];
        let err = compute_diagonal(&outside, DEFAULT_TOL).unwrap_err();
        assert!(matches!(err, DiagonalFailure::Disconnected { components: 2, unbounded: 2, .. }));
        assert_eq!(err.to_string(), "two unbounded components");
    }

    #[test]
    fn diagonal_failures() {
        assert!(matches!(compute_diagonal(&[], 1e-10), Err(DiagonalFailure::InvalidInput { .. })));
        let half_plane = [g(2, &[(&[1, 0], 1.0)])];
        assert!(matches!(
            compute_diagonal(&half_plane, 1e-10),
            Err(DiagonalFailure::Unbounded { .. })
        ));
        let disjoint = [
            g(1, &[(&[0], 1.0), (&[2], -1.0)]),
            g(1, &[(&[1], 1.0), (&[0], -2.0)]),
        ];
        assert_eq!(compute_diagonal(&disjoint, 1e-10), Err(DiagonalFailure::Empty));
        // tangency: −(t − 1)² touches zero at a double root
        let tangent = [g(1, &[(&[2], -1.0), (&[1], 2.0), (&[0], -1.0)])];
        assert!(matches!(
            compute_diagonal(&tangent, 1e-10),
            Err(DiagonalFailure::IllConditioned { constraint: 0, .. })
        ));
        // an antisymmetric constraint vanishes on the diagonal and restricts nothing
        let anti = [
            g(2, &[(&[1, 0], 1.0), (&[0, 1], -1.0)]),
            g(2, &[(&[0, 0], 4.0), (&[2, 0], -1.0)]),
        ];
        let d = compute_diagonal(&anti, 1e-10).unwrap();
        assert!((d.lo + 2.0).abs() < 1e-10 && (d.hi - 2.0).abs() < 1e-10);
    }
}

//! Small dense linear algebra: cyclic Jacobi eigendecomposition for symmetric
//! matrices, PSD projection, and Cholesky factorization.
//!
//! Matrices are row-major `Vec<f64>` of length `n * n`.

/// Off-diagonal mass below this fraction of the Frobenius norm ends the sweep
/// loop.
pub const JACOBI_TOL: f64 = 1e-12;

const MAX_SWEEPS: usize = 100;

/// Eigenpairs of a symmetric matrix. `vectors` is row-major with eigenvector
/// `k` stored in column `k`.
#[derive(Debug, Clone)]
pub struct SymEigen {
    pub n: usize,
    pub values: Vec<f64>,
    pub vectors: Vec<f64>,
}

impl SymEigen {
    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// `V · diag(f(λ)) · Vᵀ`
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> Vec<f64> {
        let n = self.n;
        let mapped: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        let mut out = vec![0.0; n * n];
        for (k, &lk) in mapped.iter().enumerate() {
            if lk == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = self.vectors[i * n + k] * lk;
                if vik == 0.0 {
                    continue;
                }
                for j in i..n {
                    out[i * n + j] += vik * self.vectors[j * n + k];
                }
            }
        }
        for i in 0..n {
            for j in 0..i {
                out[i * n + j] = out[j * n + i];
            }
        }
        out
    }
}

/// Cyclic Jacobi with a threshold on the first sweeps.
pub fn sym_eigen(a: &[f64], n: usize) -> SymEigen {
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    jacobi_in_place(a.to_vec(), n, v)
}

/// Jacobi started from the basis `warm` (row-major, orthogonal): rotates `a`
/// into that basis first, which leaves little work when `warm` holds the
/// eigenvectors of a nearby matrix.
pub fn sym_eigen_warm(a: &[f64], n: usize, warm: &[f64]) -> SymEigen {
    // b = Wᵀ A W
    let mut aw = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                aw[i * n + j] += aik * warm[k * n + j];
            }
        }
    }
    let mut b = vec![0.0; n * n];
    for k in 0..n {
        for i in 0..n {
            let wki = warm[k * n + i];
            if wki == 0.0 {
                continue;
            }
            for j in 0..n {
                b[i * n + j] += wki * aw[k * n + j];
            }
        }
    }
    for i in 0..n {
        for j in 0..i {
            let s = 0.5 * (b[i * n + j] + b[j * n + i]);
            b[i * n + j] = s;
            b[j * n + i] = s;
        }
    }
    jacobi_in_place(b, n, warm.to_vec())
}

fn jacobi_in_place(mut a: Vec<f64>, n: usize, mut v: Vec<f64>) -> SymEigen {
    let frob: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n > 1 && frob > 0.0 {
        for sweep in 0..MAX_SWEEPS {
            let mut off = 0.0;
            for p in 0..n {
                for q in p + 1..n {
                    off += a[p * n + q] * a[p * n + q];
                }
            }
            let off = (2.0 * off).sqrt();
            if off <= JACOBI_TOL * frob {
                break;
            }
            let threshold = if sweep < 3 { 0.2 * off / (n * n) as f64 } else { 0.0 };
            for p in 0..n {
                for q in p + 1..n {
                    let apq = a[p * n + q];
                    if apq.abs() <= threshold || apq == 0.0 {
                        continue;
                    }
                    let app = a[p * n + p];
                    let aqq = a[q * n + q];
                    if sweep > 3
                        && apq.abs() * 1e18 < app.abs().max(aqq.abs())
                    {
                        a[p * n + q] = 0.0;
                        a[q * n + p] = 0.0;
                        continue;
                    }
                    let theta = (aqq - app) / (2.0 * apq);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let t = if theta == 0.0 { 1.0 } else { t };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let akp = a[k * n + p];
                        let akq = a[k * n + q];
                        a[k * n + p] = c * akp - s * akq;
                        a[k * n + q] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let apk = a[p * n + k];
                        let aqk = a[q * n + k];
                        a[p * n + k] = c * apk - s * aqk;
                        a[q * n + k] = s * apk + c * aqk;
                    }
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = c * vkp - s * vkq;
                        v[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
    let values = (0..n).map(|i| a[i * n + i]).collect();
    SymEigen { n, values, vectors: v }
}

/// Nearest PSD matrix in Frobenius norm (negative eigenvalues clipped to 0).
pub fn project_psd(a: &[f64], n: usize) -> Vec<f64> {
    sym_eigen(a, n).reconstruct_with(|l| l.max(0.0))
}

/// In-place lower Cholesky factor; returns the failing pivot index if `a` is
/// not numerically positive definite.
pub fn cholesky(a: &mut [f64], n: usize) -> Result<(), usize> {
    for j in 0..n {
        let mut d = a[j * n + j];
        for k in 0..j {
            d -= a[j * n + k] * a[j * n + k];
        }
        if d.is_nan() || d <= 0.0 {
            return Err(j);
        }
        let d = d.sqrt();
        a[j * n + j] = d;
        for i in j + 1..n {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= a[i * n + k] * a[j * n + k];
            }
            a[i * n + j] = s / d;
        }
        for k in j + 1..n {
            a[j * n + k] = 0.0;
        }
    }
    Ok(())
}

/// Solves `L Lᵀ x = b` in place given the factor from [`cholesky`].
pub fn cholesky_solve(l: &[f64], n: usize, b: &mut [f64]) {
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= l[i * n + k] * b[k];
        }
        b[i] = s / l[i * n + i];
    }
    for i in (0..n).rev() {
        let mut s = b[i];
        for k in i + 1..n {
            s -= l[k * n + i] * b[k];
        }
        b[i] = s / l[i * n + i];
    }
}

/// Solves a dense square system by Gaussian elimination with partial
/// pivoting. Returns `None` for a numerically singular matrix.
pub fn solve_dense(mut a: Vec<f64>, n: usize, mut b: Vec<f64>) -> Option<Vec<f64>> {
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i * n + col].abs().total_cmp(&a[j * n + col].abs()))?;
        if a[piv * n + col].abs() < 1e-300 {
            return None;
        }
        if piv != col {
            for k in 0..n {
                a.swap(piv * n + k, col * n + k);
            }
            b.swap(piv, col);
        }
        for r in col + 1..n {
            let f = a[r * n + col] / a[col * n + col];
            if f == 0.0 {
                continue;
            }
            for k in col..n {
                a[r * n + k] -= f * a[col * n + k];
            }
            b[r] -= f * b[col];
        }
    }
    for r in (0..n).rev() {
        let mut s = b[r];
        for k in r + 1..n {
            s -= a[r * n + k] * b[k];
        }
        b[r] = s / a[r * n + r];
    }
    Some(b)
}

//! Small dense complex Hermitian linear algebra.
//!
//! Everything the solvers need at desk-scale antenna counts (dimension
//! capped at [`MAX_DIM`]): eigendecomposition, the closed-form eigenvalues
//! of `x x^H - y y^H`, maximum generalized eigenpairs of Hermitian pencils,
//! log-determinants `log|I + S^{1/2} Q S^{1/2}|`, and the Euclidean
//! projection onto the PSD cone intersected with a trace ball.
//!
//! The dense eigensolver is nalgebra's Hermitian `SymmetricEigen`; this
//! module owns the ordering convention (eigenvalues sorted descending) and
//! the numerically careful compositions on top of it.

use nalgebra::SymmetricEigen;
use thiserror::Error;

use crate::{C64, CMat, CVec};

/// Hard cap on matrix dimension; the artifact targets desk-scale antenna
/// counts and the dense kernels are tuned for that regime.
pub const MAX_DIM: usize = 16;

/// Relative threshold on the minimum eigenvalue for a matrix to count as
/// positive definite in pencil computations.
const PD_REL_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum HermlinError {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension {dim} outside supported range 1..={MAX_DIM}")]
    DimRange { dim: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("matrix is not positive definite (min eigenvalue {min_eig:.3e})")]
    NotPositiveDefinite { min_eig: f64 },
    #[error("eigendecomposition did not converge")]
    Convergence,
}

/// A complex Hermitian matrix; Hermitian symmetry is enforced at
/// construction, so `entry(i,j) == conj(entry(j,i))` holds exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    data: CMat,
}

impl HermitianMatrix {
    /// Builds from an arbitrary square matrix by averaging with its own
    /// adjoint; the diagonal is forced real.
    pub fn new(m: CMat) -> Result<Self, HermlinError> {
        if m.nrows() != m.ncols() {
            return Err(HermlinError::NotSquare {
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        let dim = m.nrows();
        if dim == 0 || dim > MAX_DIM {
            return Err(HermlinError::DimRange { dim });
        }
        let mut data = CMat::zeros(dim, dim);
        for i in 0..dim {
            data[(i, i)] = C64::new(m[(i, i)].re, 0.0);
            for j in (i + 1)..dim {
                let avg = (m[(i, j)] + m[(j, i)].conj()) * C64::new(0.5, 0.0);
                data[(i, j)] = avg;
                data[(j, i)] = avg.conj();
            }
        }
        Ok(HermitianMatrix { data })
    }

    pub fn identity(dim: usize) -> Result<Self, HermlinError> {
        Self::new(CMat::identity(dim, dim))
    }

    pub fn zeros(dim: usize) -> Result<Self, HermlinError> {
        Self::new(CMat::zeros(dim, dim))
    }

    /// `scale * I`.
    pub fn scaled_identity(dim: usize, scale: f64) -> Result<Self, HermlinError> {
        Self::new(CMat::identity(dim, dim) * C64::new(scale, 0.0))
    }

    /// Gram matrix `X^H X` of an arbitrary rectangular matrix.
    pub fn gram(x: &CMat) -> Result<Self, HermlinError> {
        Self::new(x.adjoint() * x)
    }

    /// Rank-one outer product `v v^H`.
    pub fn outer(v: &CVec) -> Result<Self, HermlinError> {
        Self::new(v * v.adjoint())
    }

    /// Real diagonal matrix.
    pub fn from_diagonal(diag: &[f64]) -> Result<Self, HermlinError> {
        let dim = diag.len();
        let mut m = CMat::zeros(dim, dim);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(d, 0.0);
        }
        Self::new(m)
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn as_matrix(&self) -> &CMat {
        &self.data
    }

    pub fn into_matrix(self) -> CMat {
        self.data
    }

    /// Trace; real by Hermitian symmetry.
    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.data[(i, i)].re).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.norm()
    }

    /// Sum with another Hermitian matrix of the same dimension.
    pub fn add(&self, other: &Self) -> Result<Self, HermlinError> {
        check_same_dim(self, other)?;
        Self::new(&self.data + &other.data)
    }

    /// Difference with another Hermitian matrix of the same dimension.
    pub fn sub(&self, other: &Self) -> Result<Self, HermlinError> {
        check_same_dim(self, other)?;
        Self::new(&self.data - &other.data)
    }

    pub fn scale(&self, s: f64) -> Self {
        HermitianMatrix {
            data: &self.data * C64::new(s, 0.0),
        }
    }

    /// Real inner product `tr(A B)`; real because both factors are Hermitian.
    pub fn inner(&self, other: &Self) -> Result<f64, HermlinError> {
        check_same_dim(self, other)?;
        let mut acc = 0.0;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                acc += (self.data[(i, j)] * other.data[(j, i)]).re;
            }
        }
        Ok(acc)
    }

    /// PSD square root `U diag(sqrt(max(lambda, 0))) U^H`.
    pub fn sqrt_psd(&self) -> Result<HermitianMatrix, HermlinError> {
        let evd = herm_evd(self)?;
        let roots: Vec<f64> = evd.eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).collect();
        Ok(evd.reassemble(&roots))
    }
}

fn check_same_dim(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<(), HermlinError> {
    if a.dim() != b.dim() {
        return Err(HermlinError::DimMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(())
}

/// Eigendecomposition of a Hermitian matrix with eigenvalues sorted in
/// descending order and eigenvector columns permuted to match.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    /// Unitary matrix whose `k`-th column pairs with `eigenvalues[k]`.
    pub eigenvectors: CMat,
}

impl EigenDecomposition {
    /// `U diag(values) U^H` for an arbitrary replacement spectrum, reusing
    /// this decomposition's eigenvectors.
    pub fn reassemble(&self, values: &[f64]) -> HermitianMatrix {
        let n = self.eigenvalues.len();
        debug_assert_eq!(values.len(), n);
        let mut scaled = self.eigenvectors.clone();
        for (k, &v) in values.iter().enumerate() {
            scaled.column_mut(k).scale_mut(v);
        }
        let m = scaled * self.eigenvectors.adjoint();
        HermitianMatrix::new(m).expect("reassembled matrix keeps the original dimension")
    }

    /// `|| U L U^H - A ||_F / max(1, ||A||_F)`.
    pub fn reconstruction_residual(&self, a: &HermitianMatrix) -> f64 {
        let rec = self.reassemble(&self.eigenvalues);
        (rec.as_matrix() - a.as_matrix()).norm() / a.frobenius_norm().max(1.0)
    }

    /// Entrywise max deviation of `U^H U` from the identity.
    pub fn unitarity_residual(&self) -> f64 {
        let n = self.eigenvalues.len();
        let gram = self.eigenvectors.adjoint() * &self.eigenvectors;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((gram[(i, j)] - C64::new(target, 0.0)).norm());
            }
        }
        worst
    }
}

/// Dense Hermitian eigendecomposition, descending eigenvalue order.
pub fn herm_evd(a: &HermitianMatrix) -> Result<EigenDecomposition, HermlinError> {
    let dim = a.dim();
    let se = SymmetricEigen::try_new(a.data.clone(), f64::EPSILON, 10_000)
        .ok_or(HermlinError::Convergence)?;
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&i, &j| se.eigenvalues[j].partial_cmp(&se.eigenvalues[i]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut eigenvectors = CMat::zeros(dim, dim);
    for (dst, &src) in order.iter().enumerate() {
        eigenvectors
            .column_mut(dst)
            .copy_from(&se.eigenvectors.column(src));
    }
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Closed-form extreme eigenvalues of `x x^H - y y^H`.
///
/// The difference of two rank-one Hermitian matrices has at most two
/// non-zero eigenvalues; they depend only on `||x||^2`, `||y||^2` and
/// `|y^H x|^2`. Returns `(lambda_max, lambda_min)`.
pub fn rank2_eigs(x: &CVec, y: &CVec) -> Result<(f64, f64), HermlinError> {
    if x.len() != y.len() {
        return Err(HermlinError::DimMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let a = x.norm_squared();
    let b = y.norm_squared();
    let c = y.dotc(x).norm_sqr();
    let diff = a - b;
    // Cauchy-Schwarz gives c <= a*b, so the discriminant is non-negative up
    // to rounding.
    let disc = (diff * diff - 4.0 * (c - a * b)).max(0.0);
    let root = disc.sqrt();
    Ok((0.5 * (diff + root), 0.5 * (diff - root)))
}

/// Maximum generalized eigenpair of the Hermitian pencil `(A, B)` with `B`
/// positive definite, computed through the congruence
/// `B^{-1/2} A B^{-1/2}`.
///
/// The returned vector is unit-norm with its largest-magnitude entry made
/// real positive.
pub fn gen_max_eigpair(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
) -> Result<(f64, CVec), HermlinError> {
    check_same_dim(a, b)?;
    let evd_b = herm_evd(b)?;
    let max_eig = evd_b.eigenvalues[0];
    let min_eig = *evd_b.eigenvalues.last().unwrap();
    if min_eig <= PD_REL_TOL * max_eig.max(0.0) {
        return Err(HermlinError::NotPositiveDefinite { min_eig });
    }
    let inv_roots: Vec<f64> = evd_b.eigenvalues.iter().map(|&l| 1.0 / l.sqrt()).collect();
    let b_inv_sqrt = evd_b.reassemble(&inv_roots);
    let congruence =
        HermitianMatrix::new(b_inv_sqrt.as_matrix() * a.as_matrix() * b_inv_sqrt.as_matrix())?;
    let evd_c = herm_evd(&congruence)?;
    let lambda = evd_c.eigenvalues[0];
    let u = evd_c.eigenvectors.column(0).into_owned();
    let mut v = b_inv_sqrt.as_matrix() * u;
    let norm = v.norm();
    if norm > 0.0 {
        v /= C64::new(norm, 0.0);
    }
    Ok((lambda, normalize_phase(v)))
}

/// Rescales a vector by a unit phase so its largest-magnitude entry is real
/// positive; eigenvectors are only defined up to such a phase.
pub fn normalize_phase(mut v: CVec) -> CVec {
    let mut best = 0usize;
    let mut best_mag = 0.0;
    for (i, z) in v.iter().enumerate() {
        let m = z.norm_sqr();
        if m > best_mag {
            best_mag = m;
            best = i;
        }
    }
    if best_mag > 0.0 {
        let phase = v[best] / C64::new(v[best].norm(), 0.0);
        let rot = phase.conj();
        for z in v.iter_mut() {
            *z *= rot;
        }
    }
    v
}

/// `log|I + S^{1/2} Q S^{1/2}|` in nats for PSD `S`, `Q`.
///
/// Equal to `log|I + Q S|` but evaluated on a Hermitian PSD argument, so the
/// result is well-defined and non-negative. Dimensions 1 and 2 use the exact
/// characteristic-polynomial expansion (all terms non-negative); larger
/// matrices go through Cholesky with an eigendecomposition fallback.
pub fn logdet_ipq(s: &HermitianMatrix, q: &HermitianMatrix) -> Result<f64, HermlinError> {
    check_same_dim(s, q)?;
    let n = s.dim();
    if n == 1 {
        let prod = s.as_matrix()[(0, 0)].re * q.as_matrix()[(0, 0)].re;
        return Ok((1.0 + prod.max(0.0)).ln());
    }
    if n == 2 {
        let sm = s.as_matrix();
        let qm = q.as_matrix();
        let tr_qs = (qm[(0, 0)] * sm[(0, 0)]
            + qm[(0, 1)] * sm[(1, 0)]
            + qm[(1, 0)] * sm[(0, 1)]
            + qm[(1, 1)] * sm[(1, 1)])
            .re;
        let det_s = (sm[(0, 0)] * sm[(1, 1)] - sm[(0, 1)] * sm[(1, 0)]).re;
        let det_q = (qm[(0, 0)] * qm[(1, 1)] - qm[(0, 1)] * qm[(1, 0)]).re;
        let arg = 1.0 + tr_qs.max(0.0) + (det_s * det_q).max(0.0);
        return Ok(arg.ln().max(0.0));
    }
    let s_half = s.sqrt_psd()?;
    let inner = HermitianMatrix::new(s_half.as_matrix() * q.as_matrix() * s_half.as_matrix())?;
    let shifted = CMat::identity(n, n) + inner.as_matrix();
    if let Some(chol) = shifted.clone().cholesky() {
        let l = chol.l();
        let mut acc = 0.0;
        for i in 0..n {
            acc += l[(i, i)].re.ln();
        }
        return Ok((2.0 * acc).max(0.0));
    }
    // Cholesky can fail when I + M is singular to rounding; fall back to the
    // spectrum of M itself.
    let evd = herm_evd(&inner)?;
    let acc: f64 = evd
        .eigenvalues
        .iter()
        .map(|&l| (1.0 + l).max(f64::MIN_POSITIVE).ln())
        .sum();
    Ok(acc.max(0.0))
}

/// Euclidean (Frobenius) projection of `a` onto `{Q >= 0, tr(Q) <= t}`.
///
/// Eigenvalues are projected onto the corresponding simplex-capped orthant
/// while the eigenvectors are kept; for unitarily invariant constraint sets
/// this is the exact matrix projection. A matrix already in the set is
/// returned unchanged. Negative `t` is treated as zero.
pub fn project_psd_trace(a: &HermitianMatrix, t: f64) -> Result<HermitianMatrix, HermlinError> {
    let t = t.max(0.0);
    let evd = herm_evd(a)?;
    let lambda = &evd.eigenvalues;
    let min = *lambda.last().unwrap();
    let sum: f64 = lambda.iter().sum();
    if min >= 0.0 && sum <= t {
        return Ok(a.clone());
    }
    let clipped_sum: f64 = lambda.iter().map(|&l| l.max(0.0)).sum();
    let projected: Vec<f64> = if clipped_sum <= t {
        lambda.iter().map(|&l| l.max(0.0)).collect()
    } else {
        // Projection onto the simplex {v >= 0, sum v = t}: shift by the
        // water level theta and clip. Eigenvalues are already sorted
        // descending, which is what the threshold search needs.
        let mut theta = 0.0;
        let mut prefix = 0.0;
        for (k, &l) in lambda.iter().enumerate() {
            prefix += l;
            let cand = (prefix - t) / (k + 1) as f64;
            if l - cand > 0.0 {
                theta = cand;
            } else {
                break;
            }
        }
        lambda.iter().map(|&l| (l - theta).max(0.0)).collect()
    };
    Ok(evd.reassemble(&projected))
}

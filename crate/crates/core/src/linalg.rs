//! Small dense complex linear algebra.
//!
//! Everything here works on row-major `Vec<Complex64>` storage. The
//! dimensions that occur in practice are 2, 4, 8 and 16 (three qubits with a
//! two-dimensional field register), so there is no attempt at blocking or
//! sparsity.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Entrywise tolerance for `M = M†`.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Tolerance on the trace of a density matrix.
pub const TRACE_TOL: f64 = 1e-10;
/// Eigenvalues in `[-NEGATIVITY_TOL, 0)` are rounding noise and get clamped.
pub const NEGATIVITY_TOL: f64 = 1e-10;

const JACOBI_OFF_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A dense complex column vector.
#[derive(Debug, Clone, PartialEq)]
pub struct CVector {
    data: Vec<Complex64>,
}

impl CVector {
    pub fn new(data: Vec<Complex64>) -> Self {
        Self { data }
    }

    pub fn zeros(dim: usize) -> Self {
        Self { data: vec![ZERO; dim] }
    }

    /// Computational basis vector `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.data[index] = ONE;
        v
    }

    pub fn from_real(values: &[f64]) -> Self {
        Self::new(values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn into_inner(self) -> Vec<Complex64> {
        self.data
    }

    pub fn norm_sqr(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `⟨self|other⟩`, antilinear in `self`.
    pub fn inner(&self, other: &CVector) -> Complex64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.data.iter().zip(&other.data).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn scale(&self, factor: Complex64) -> CVector {
        CVector::new(self.data.iter().map(|z| z * factor).collect())
    }

    /// Rescales to unit norm. Fails on the zero vector.
    pub fn normalized(&self) -> Result<CVector> {
        let n = self.norm();
        if !n.is_finite() || n <= 0.0 {
            return Err(Error::NotNormalized { norm_sqr: n * n });
        }
        Ok(self.scale(Complex64::new(1.0 / n, 0.0)))
    }

    /// The projector `|v⟩⟨v|`.
    pub fn outer(&self) -> CMatrix {
        let n = self.dim();
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.data[i] * self.data[j].conj();
            }
        }
        m
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Index<usize> for CVector {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.data[i]
    }
}

impl IndexMut<usize> for CVector {
    fn index_mut(&mut self, i: usize) -> &mut Complex64 {
        &mut self.data[i]
    }
}

/// A dense square complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Builds a matrix from row-major entries; `data.len()` must be a square.
    pub fn from_rows(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: data.len(),
            });
        }
        Ok(Self { dim, data })
    }

    pub fn from_real_rows(dim: usize, data: &[f64]) -> Result<Self> {
        Self::from_rows(dim, data.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> CMatrix {
        let n = self.dim;
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn matmul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, other.dim, "matmul dimension mismatch");
        let n = self.dim;
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    m.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        m
    }

    pub fn apply(&self, v: &CVector) -> CVector {
        assert_eq!(self.dim, v.dim(), "matrix-vector dimension mismatch");
        let n = self.dim;
        let mut out = CVector::zeros(n);
        for i in 0..n {
            let row = &self.data[i * n..(i + 1) * n];
            out[i] = row.iter().zip(v.as_slice()).map(|(a, b)| a * b).sum();
        }
        out
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, unitary: &CMatrix) -> CMatrix {
        unitary.matmul(self).matmul(&unitary.adjoint())
    }

    pub fn scale(&self, factor: Complex64) -> CMatrix {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, other.dim, "add dimension mismatch");
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    /// Largest entrywise `|M_ij - conj(M_ji)|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.dim;
        let mut dev = 0.0_f64;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian_deviation() <= HERMITIAN_TOL
    }

    /// Largest entrywise distance to `other`.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Sum of off-diagonal magnitudes.
    pub fn off_diagonal_l1(&self) -> f64 {
        let n = self.dim;
        let mut total = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    total += self[(i, j)].norm();
                }
            }
        }
        total
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

/// Anything with a tensor (Kronecker) product.
pub trait Kron {
    fn kron(&self, other: &Self) -> Self;
}

impl Kron for CMatrix {
    fn kron(&self, other: &CMatrix) -> CMatrix {
        let (n, m) = (self.dim, other.dim);
        let mut out = CMatrix::zeros(n * m);
        for i in 0..n {
            for j in 0..n {
                let a = self[(i, j)];
                for k in 0..m {
                    for l in 0..m {
                        out[(i * m + k, j * m + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }
}

impl Kron for CVector {
    fn kron(&self, other: &CVector) -> CVector {
        let mut out = Vec::with_capacity(self.dim() * other.dim());
        for a in self.as_slice() {
            for b in other.as_slice() {
                out.push(a * b);
            }
        }
        CVector::new(out)
    }
}

pub fn kron<T: Kron>(a: &T, b: &T) -> T {
    a.kron(b)
}

/// Which factor of a two-qubit register to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Reduced state of one qubit of a two-qubit density matrix. Qubit A is the
/// more significant index bit.
pub fn partial_trace(rho: &CMatrix, keep: Subsystem) -> Result<CMatrix> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: rho.dim(),
        });
    }
    match keep {
        Subsystem::A => trace_out_last(rho, 2, 2),
        Subsystem::B => trace_out_first(rho, 2, 2),
    }
}

/// Traces out the trailing factor of a `keep_dim ⊗ traced_dim` operator.
pub fn trace_out_last(rho: &CMatrix, keep_dim: usize, traced_dim: usize) -> Result<CMatrix> {
    check_product_dim(rho, keep_dim, traced_dim)?;
    let mut out = CMatrix::zeros(keep_dim);
    for i in 0..keep_dim {
        for j in 0..keep_dim {
            out[(i, j)] = (0..traced_dim)
                .map(|f| rho[(i * traced_dim + f, j * traced_dim + f)])
                .sum();
        }
    }
    Ok(out)
}

/// Traces out the leading factor of a `traced_dim ⊗ keep_dim` operator.
pub fn trace_out_first(rho: &CMatrix, traced_dim: usize, keep_dim: usize) -> Result<CMatrix> {
    check_product_dim(rho, keep_dim, traced_dim)?;
    let mut out = CMatrix::zeros(keep_dim);
    for i in 0..keep_dim {
        for j in 0..keep_dim {
            out[(i, j)] = (0..traced_dim).map(|f| rho[(f * keep_dim + i, f * keep_dim + j)]).sum();
        }
    }
    Ok(out)
}

/// Reduces a pure `keep_dim ⊗ env_dim` state by summing the projections onto
/// the supplied environment kets, `Σ_g ⟨g|ψ⟩⟨ψ|g⟩`, without normalizing.
///
/// When `kets` is an orthonormal basis this is the ordinary partial trace.
/// For non-orthogonal kets it is not, and the trace of the result is no
/// longer `⟨ψ|ψ⟩`.
pub fn ket_projection_sum(psi: &CVector, keep_dim: usize, kets: &[CVector]) -> Result<CMatrix> {
    let env_dim = kets.first().map_or(1, CVector::dim);
    if psi.dim() != keep_dim * env_dim {
        return Err(Error::DimensionMismatch {
            expected: keep_dim * env_dim,
            got: psi.dim(),
        });
    }
    let mut out = CMatrix::zeros(keep_dim);
    for ket in kets {
        if ket.dim() != env_dim {
            return Err(Error::DimensionMismatch {
                expected: env_dim,
                got: ket.dim(),
            });
        }
        let reduced = CVector::new(
            (0..keep_dim)
                .map(|i| (0..env_dim).map(|f| ket[f].conj() * psi[i * env_dim + f]).sum())
                .collect(),
        );
        out = out.add(&reduced.outer());
    }
    Ok(out)
}

fn check_product_dim(rho: &CMatrix, keep_dim: usize, traced_dim: usize) -> Result<()> {
    if rho.dim() != keep_dim * traced_dim {
        return Err(Error::DimensionMismatch {
            expected: keep_dim * traced_dim,
            got: rho.dim(),
        });
    }
    Ok(())
}

/// Eigenvalues of a Hermitian matrix, sorted in descending order.
///
/// Cyclic complex Jacobi: each rotation first removes the phase of the pivot
/// `a_pq` with a diagonal unitary and then applies the real Jacobi rotation
/// that annihilates it. Sweeps stop once the off-diagonal Frobenius norm
/// falls below 1e-13.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Result<Vec<f64>> {
    let deviation = m.hermitian_deviation();
    if deviation > HERMITIAN_TOL || !m.is_finite() {
        return Err(Error::NotHermitian { deviation });
    }
    let n = m.dim();
    let mut a = m.clone();
    // diagonal is real up to the tolerance just checked
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
    }

    let off_norm = |a: &CMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    while off_norm(&a) >= JACOBI_OFF_TOL {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off_norm(&a),
            });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                jacobi_rotate(&mut a, p, q);
            }
        }
        sweeps += 1;
    }

    let mut eig: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    eig.sort_by(|x, y| y.total_cmp(x));
    Ok(eig)
}

fn jacobi_rotate(a: &mut CMatrix, p: usize, q: usize) {
    let n = a.dim();
    let g = a[(p, q)];
    let mag = g.norm();
    if mag < 1e-300 {
        return;
    }
    let phase = g / mag; // e^{iφ}
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // U restricted to (p, q) is diag(1, e^{-iφ}) · [[c, s], [-s, c]]
    let u_pp = Complex64::new(c, 0.0);
    let u_pq = Complex64::new(s, 0.0);
    let u_qp = -phase.conj() * s;
    let u_qq = phase.conj() * c;

    // A ← A U
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * u_pp + akq * u_qp;
        a[(k, q)] = akp * u_pq + akq * u_qq;
    }
    // A ← U† A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
        a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
}

/// Checks that `rho` is Hermitian with unit trace and returns its spectrum
/// with tiny negative eigenvalues clamped to zero.
pub fn density_spectrum(rho: &CMatrix) -> Result<Vec<f64>> {
    let deviation = rho.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotDensityMatrix(format!(
            "not Hermitian (deviation {deviation:e})"
        )));
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
        return Err(Error::NotDensityMatrix(format!("trace is {tr}")));
    }
    let mut eig = hermitian_eigenvalues(rho)?;
    for lam in &mut eig {
        if *lam < -NEGATIVITY_TOL {
            return Err(Error::NotDensityMatrix(format!("negative eigenvalue {lam:e}")));
        }
        if *lam < 0.0 {
            *lam = 0.0;
        }
    }
    Ok(eig)
}

/// Coordinates of two unit vectors with `⟨first|second⟩ = overlap`, expressed
/// in an orthonormal basis of their span: `(1, 0)` and `(k, √(1-|k|²))`.
pub fn embed_nonorthogonal_pair(overlap: Complex64) -> Result<(CVector, CVector)> {
    let mag = overlap.norm();
    if !mag.is_finite() || mag > 1.0 + 1e-12 {
        return Err(Error::OverlapOutOfRange { magnitude: mag });
    }
    let rest = (1.0 - overlap.norm_sqr()).max(0.0).sqrt();
    let first = CVector::new(vec![ONE, ZERO]);
    let second = CVector::new(vec![overlap, Complex64::new(rest, 0.0)]);
    Ok((first, second))
}

/// Single-qubit gates used by the teleportation circuit.
pub mod gates {
    use super::*;

    pub fn pauli_x() -> CMatrix {
        CMatrix::from_real_rows(2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
    }

    pub fn pauli_z() -> CMatrix {
        CMatrix::from_real_rows(2, &[1.0, 0.0, 0.0, -1.0]).unwrap()
    }

    pub fn hadamard() -> CMatrix {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        CMatrix::from_real_rows(2, &[h, h, h, -h]).unwrap()
    }

    /// CNOT with the more significant qubit as control.
    pub fn cnot() -> CMatrix {
        CMatrix::from_real_rows(
            4,
            &[
                1.0, 0.0, 0.0, 0.0, //
                0.0, 1.0, 0.0, 0.0, //
                0.0, 0.0, 0.0, 1.0, //
                0.0, 0.0, 1.0, 0.0,
            ],
        )
        .unwrap()
    }
}

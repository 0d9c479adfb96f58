//! Small dense complex matrices: Pauli basis, Kronecker products, Hermitian
//! eigenvalues and the trace norm.
//!
//! Everything here is sized for one or two qubits. Eigenvalues come from
//! cyclic Jacobi rotations on the real-symmetric embedding
//! `[[Re M, -Im M], [Im M, Re M]]`, whose spectrum is that of `M` with every
//! eigenvalue doubled.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::Scalar;

/// Default absolute tolerance on `|m_ij - conj(m_ji)|`.
pub const HERMITIAN_TOL: f64 = 1e-12;

const MAX_SWEEPS: usize = 100;

/// Square complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Scalar> ComplexMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        Self {
            dim,
            data: vec![Complex::new(T::zero(), T::zero()); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex::new(T::one(), T::zero());
        }
        m
    }

    /// Builds a matrix from row-major entries.
    pub fn from_rows(dim: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if dim == 0 || data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: data.len(),
            });
        }
        Ok(Self { dim, data })
    }

    /// Builds a real diagonal matrix.
    pub fn diag(values: &[T]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex::new(v, T::zero());
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).fold(Complex::new(T::zero(), T::zero()), |acc, i| acc + self[(i, i)])
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(&self, factor: Complex<T>) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: T) -> Self {
        self.scale(Complex::new(factor, T::zero()))
    }

    /// Largest `|m_ij - conj(m_ji)|`, including imaginary parts on the diagonal.
    pub fn hermitian_asymmetry(&self) -> T {
        let d = self.dim;
        let mut worst = T::zero();
        for i in 0..d {
            for j in i..d {
                let diff = (self[(i, j)] - self[(j, i)].conj()).norm();
                worst = worst.max(diff);
            }
        }
        worst
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, z| acc.max(z.norm()))
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }
}

impl<T> std::ops::Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.dim + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for ComplexMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.dim + j]
    }
}

impl<T: Scalar> Add for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn add(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix sum");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a + b).collect(),
        }
    }
}

impl<T: Scalar> Sub for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn sub(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix difference");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a - b).collect(),
        }
    }
}

impl<T: Scalar> Neg for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn neg(self) -> ComplexMatrix<T> {
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().map(|&a| -a).collect(),
        }
    }
}

impl<T: Scalar> Mul for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn mul(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix product");
        let d = self.dim;
        let mut out = ComplexMatrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self[(i, k)];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                for j in 0..d {
                    out[(i, j)] = out[(i, j)] + a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

/// Pauli matrix `σ_i` with `σ_0 = 1`, `σ_1 = σ_x`, `σ_2 = σ_y`, `σ_3 = σ_z`.
pub fn pauli<T: Scalar>(i: usize) -> Result<ComplexMatrix<T>> {
    let o = T::zero();
    let l = T::one();
    let c = |re: T, im: T| Complex::new(re, im);
    let data = match i {
        0 => vec![c(l, o), c(o, o), c(o, o), c(l, o)],
        1 => vec![c(o, o), c(l, o), c(l, o), c(o, o)],
        2 => vec![c(o, o), c(o, -l), c(o, l), c(o, o)],
        3 => vec![c(l, o), c(o, o), c(o, o), c(-l, o)],
        _ => return Err(Error::PauliIndex(i)),
    };
    ComplexMatrix::from_rows(2, data)
}

/// `½(σ_0 + Σ r_i σ_i)` assembled entry by entry, so the result is exactly
/// Hermitian.
pub fn from_pauli_coeffs<T: Scalar>(r: [T; 3]) -> ComplexMatrix<T> {
    let half = T::lit(0.5);
    let [x, y, z] = r;
    let data = vec![
        Complex::new(half * (T::one() + z), T::zero()),
        Complex::new(half * x, -half * y),
        Complex::new(half * x, half * y),
        Complex::new(half * (T::one() - z), T::zero()),
    ];
    ComplexMatrix { dim: 2, data }
}

/// Kronecker product `a ⊗ b`.
pub fn tensor<T: Scalar>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let (da, db) = (a.dim, b.dim);
    let d = da * db;
    let mut out = ComplexMatrix::zeros(d);
    for i in 0..da {
        for j in 0..da {
            let aij = a[(i, j)];
            for k in 0..db {
                for l in 0..db {
                    out[(i * db + k, j * db + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Eigenvalues of a Hermitian matrix in ascending order.
///
/// Fails with [`Error::NotHermitian`] if any entry pair is asymmetric by more
/// than `tol`; the input is never silently symmetrized.
pub fn hermitian_eigenvalues<T: Scalar>(m: &ComplexMatrix<T>, tol: T) -> Result<Vec<T>> {
    if !(tol > T::zero()) {
        return Err(crate::error::domain("tol", tol, "> 0"));
    }
    let asym = m.hermitian_asymmetry();
    if !(asym <= tol) {
        return Err(Error::NotHermitian {
            asymmetry: asym.as_f64(),
            tol: tol.as_f64(),
        });
    }

    let d = m.dim;
    let n = 2 * d;
    let mut a = vec![T::zero(); n * n];
    // [[Re, -Im], [Im, Re]], symmetrized only through the Hermitian check above.
    for i in 0..d {
        for j in 0..d {
            let z = m[(i, j)];
            a[i * n + j] = z.re;
            a[(i + d) * n + (j + d)] = z.re;
            a[i * n + (j + d)] = -z.im;
            a[(i + d) * n + j] = z.im;
        }
    }
    // Diagonal imaginary parts are below tol; drop them so the embedding is
    // symmetric and Jacobi rotations stay exact.
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = (a[i * n + j] + a[j * n + i]) * T::lit(0.5);
            a[i * n + j] = avg;
            a[j * n + i] = avg;
        }
    }

    let mut evs = jacobi_symmetric(&mut a, n)?;
    evs.sort_by(|x, y| x.partial_cmp(y).expect("eigenvalue is NaN"));
    Ok(evs.into_iter().step_by(2).collect())
}

/// Cyclic Jacobi on a dense real symmetric `n×n` matrix; returns the diagonal.
fn jacobi_symmetric<T: Scalar>(a: &mut [T], n: usize) -> Result<Vec<T>> {
    let frob = a.iter().fold(T::zero(), |acc, &x| acc + x * x).sqrt();
    if frob == T::zero() {
        return Ok(vec![T::zero(); n]);
    }
    let threshold = T::eps() * frob;

    for _ in 0..MAX_SWEEPS {
        let off = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .fold(T::zero(), |acc, (i, j)| acc + a[i * n + j] * a[i * n + j])
            .sqrt();
        if off <= threshold {
            return Ok((0..n).map(|i| a[i * n + i]).collect());
        }

        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= T::min_positive_value() {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (T::lit(2.0) * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
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
                a[p * n + q] = T::zero();
                a[q * n + p] = T::zero();
            }
        }
    }
    Err(Error::NoConvergence(MAX_SWEEPS))
}

/// Trace norm `Tr √(M†M)` of a Hermitian matrix: the sum of absolute
/// eigenvalues.
pub fn trace_norm<T: Scalar>(m: &ComplexMatrix<T>) -> Result<T> {
    // Scale the Hermiticity tolerance with the entries so analytic
    // constructions with O(1) rounding still pass.
    let tol = T::lit(HERMITIAN_TOL) * m.max_abs().max(T::one());
    let evs = hermitian_eigenvalues(m, tol)?;
    Ok(evs.into_iter().fold(T::zero(), |acc, e| acc + e.abs()))
}

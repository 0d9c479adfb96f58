//! Two-level detector coupled to a massless scalar vacuum.
//!
//! The detector is parameterized by its level spacing `omega0`, the
//! inertial spontaneous emission rate `gamma0` and the thermal parameter
//! `n = 1 + 2 N_U = coth(omega0 / 2T)`. Acceleration and temperature are
//! derived views. All evolution here is in the interaction picture: the
//! renormalized level spacing only contributes a phase and is never computed.

use num_complex::Complex;

use crate::error::{domain, Error, Result};
use crate::qmath::{self, ComplexMatrix};
use crate::scalar::one_minus_exp_neg;
use crate::Scalar;

/// Tolerance on `|r| <= 1` for physical Bloch vectors.
pub const BLOCH_TOL: f64 = 1e-12;

/// Largest allowed `h * gamma0 * n` for the RK4 oracle.
pub const MAX_STEP_RATE: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorParams<T> {
    omega0: T,
    gamma0: T,
    n: T,
    // Kept alongside n so that weak accelerations, where n rounds to 1,
    // still convert back to the right temperature.
    mean_particle_number: T,
}

impl<T: Scalar> DetectorParams<T> {
    pub fn new(omega0: T, gamma0: T, n: T) -> Result<Self> {
        if !(omega0 > T::zero()) || !omega0.is_finite() {
            return Err(domain("omega0", omega0, "> 0"));
        }
        if !(gamma0 > T::zero()) || !gamma0.is_finite() {
            return Err(domain("gamma0", gamma0, "> 0"));
        }
        if !(n >= T::one()) || !n.is_finite() {
            return Err(domain("n", n, ">= 1"));
        }
        Ok(Self {
            omega0,
            gamma0,
            n,
            mean_particle_number: (n - T::one()) * T::lit(0.5),
        })
    }

    /// The inertial detector, `n = 1` exactly.
    pub fn inertial(omega0: T, gamma0: T) -> Result<Self> {
        Self::new(omega0, gamma0, T::one())
    }

    pub fn from_acceleration(a: T, omega0: T, gamma0: T) -> Result<Self> {
        let thermal = thermal_params(a, omega0)?;
        let mut params = Self::new(omega0, gamma0, thermal.n)?;
        params.mean_particle_number = thermal.mean_particle_number;
        Ok(params)
    }

    /// Builds the parameters from the field coupling `mu`, using
    /// `gamma0 = mu^2 omega0 / 2π`.
    pub fn from_coupling(mu: T, omega0: T, n: T) -> Result<Self> {
        Self::new(omega0, mu * mu * omega0 / T::TAU(), n)
    }

    pub fn omega0(&self) -> T {
        self.omega0
    }

    pub fn gamma0(&self) -> T {
        self.gamma0
    }

    pub fn n(&self) -> T {
        self.n
    }

    pub fn is_inertial(&self) -> bool {
        self.mean_particle_number == T::zero()
    }

    /// Coupling constant recovered from `gamma0`.
    pub fn coupling(&self) -> T {
        (T::TAU() * self.gamma0 / self.omega0).sqrt()
    }

    /// `T = omega0 / ln(1 + 1/N_U)`, equivalently `omega0 / (2 artanh(1/n))`;
    /// zero when inertial.
    pub fn temperature(&self) -> T {
        if self.is_inertial() {
            T::zero()
        } else {
            self.omega0 / self.mean_particle_number.recip().ln_1p()
        }
    }

    /// Proper acceleration `a = 2π T`.
    pub fn acceleration(&self) -> T {
        T::TAU() * self.temperature()
    }

    /// Mean Unruh particle number `N_U = (n - 1) / 2`.
    pub fn mean_particle_number(&self) -> T {
        self.mean_particle_number
    }
}

/// Temperature, mean particle number and thermal parameter for an
/// acceleration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalParams<T> {
    pub temperature: T,
    pub mean_particle_number: T,
    pub n: T,
}

pub fn thermal_params<T: Scalar>(a: T, omega0: T) -> Result<ThermalParams<T>> {
    if !(a >= T::zero()) || !a.is_finite() {
        return Err(domain("a", a, ">= 0"));
    }
    if !(omega0 > T::zero()) || !omega0.is_finite() {
        return Err(domain("omega0", omega0, "> 0"));
    }
    if a == T::zero() {
        return Ok(ThermalParams {
            temperature: T::zero(),
            mean_particle_number: T::zero(),
            n: T::one(),
        });
    }
    let temperature = a / T::TAU();
    thermal_params_from_temperature(temperature, omega0)
}

pub fn thermal_params_from_temperature<T: Scalar>(temperature: T, omega0: T) -> Result<ThermalParams<T>> {
    if !(temperature >= T::zero()) || !temperature.is_finite() {
        return Err(domain("T", temperature, ">= 0"));
    }
    if !(omega0 > T::zero()) {
        return Err(domain("omega0", omega0, "> 0"));
    }
    if temperature == T::zero() {
        return Ok(ThermalParams {
            temperature,
            mean_particle_number: T::zero(),
            n: T::one(),
        });
    }
    let x = omega0 / temperature;
    Ok(ThermalParams {
        temperature,
        mean_particle_number: x.exp_m1().recip(),
        n: (x * T::lit(0.5)).tanh().recip(),
    })
}

/// Fourier transform of the Wightman function along the accelerated
/// trajectory: `μ² λ / 4π · (1 + coth(πλ/a))`.
pub fn correlation_spectrum<T: Scalar>(lambda: T, a: T, mu: T) -> Result<T> {
    if !(a > T::zero()) || !a.is_finite() {
        return Err(domain("a", a, "> 0 (use correlation_spectrum_inertial for a = 0)"));
    }
    if lambda == T::zero() || !lambda.is_finite() {
        return Err(domain("lambda", lambda, "nonzero"));
    }
    let coth = (T::PI() * lambda / a).tanh().recip();
    Ok(mu * mu * lambda / (T::lit(4.0) * T::PI()) * (T::one() + coth))
}

/// Inertial limit of [`correlation_spectrum`]: `μ² λ / 2π` for `λ > 0`, zero
/// otherwise.
pub fn correlation_spectrum_inertial<T: Scalar>(lambda: T, mu: T) -> Result<T> {
    if lambda == T::zero() || !lambda.is_finite() {
        return Err(domain("lambda", lambda, "nonzero"));
    }
    if lambda > T::zero() {
        Ok(mu * mu * lambda / T::TAU())
    } else {
        Ok(T::zero())
    }
}

/// Kossakowski rates: `A = γ₀ n / 4`, `B = γ₀ / 4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KossakowskiCoeffs<T> {
    pub a: T,
    pub b: T,
}

impl<T: Scalar> KossakowskiCoeffs<T> {
    /// The 3×3 matrix `a_ij = A δ_ij - i B ε_ij3 - A δ_i3 δ_j3`.
    pub fn matrix(&self) -> [[Complex<T>; 3]; 3] {
        let z = Complex::new(T::zero(), T::zero());
        let re = |x: T| Complex::new(x, T::zero());
        [
            [re(self.a), Complex::new(T::zero(), -self.b), z],
            [Complex::new(T::zero(), self.b), re(self.a), z],
            [z, z, z],
        ]
    }
}

pub fn kossakowski<T: Scalar>(params: &DetectorParams<T>) -> KossakowskiCoeffs<T> {
    let b = params.gamma0 * T::lit(0.25);
    KossakowskiCoeffs { a: b * params.n, b }
}

/// Real Bloch vector of a qubit, `ρ = ½(1 + Σ r_i σ_i)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BlochVector<T> {
    pub r1: T,
    pub r2: T,
    pub r3: T,
}

impl<T: Scalar> BlochVector<T> {
    pub fn new(r1: T, r2: T, r3: T) -> Self {
        Self { r1, r2, r3 }
    }

    /// `(sin θ, 0, cos θ)`, the pure state `sin(θ/2)|0⟩ + cos(θ/2)|1⟩`.
    pub fn from_angle(theta: T) -> Self {
        Self::new(theta.sin(), T::zero(), theta.cos())
    }

    pub fn norm(&self) -> T {
        (self.r1 * self.r1 + self.r2 * self.r2 + self.r3 * self.r3).sqrt()
    }

    pub fn is_physical(&self) -> bool {
        let n2 = self.r1 * self.r1 + self.r2 * self.r2 + self.r3 * self.r3;
        n2 <= T::one() + T::lit(BLOCH_TOL)
    }

    pub fn distance(&self, other: &Self) -> T {
        let d = Self::new(self.r1 - other.r1, self.r2 - other.r2, self.r3 - other.r3);
        d.norm()
    }

    pub fn as_array(&self) -> [T; 3] {
        [self.r1, self.r2, self.r3]
    }

    fn check(&self) -> Result<()> {
        if self.is_physical() && self.norm().is_finite() {
            Ok(())
        } else {
            Err(Error::UnphysicalBloch(self.norm().as_f64()))
        }
    }
}

/// Analytic interaction-picture evolution: transverse components decay at
/// `γ₀ n / 2`, the longitudinal one relaxes to `-1/n` at `γ₀ n`.
pub fn evolve_bloch<T: Scalar>(r0: &BlochVector<T>, params: &DetectorParams<T>, tau: T) -> Result<BlochVector<T>> {
    if !(tau >= T::zero()) {
        return Err(domain("tau", tau, ">= 0"));
    }
    r0.check()?;
    let rate = params.gamma0 * params.n * tau;
    let transverse = (-rate * T::lit(0.5)).exp();
    let longitudinal = (-rate).exp();
    Ok(BlochVector {
        r1: r0.r1 * transverse,
        r2: r0.r2 * transverse,
        r3: r0.r3 * longitudinal - one_minus_exp_neg(rate) / params.n,
    })
}

/// `(0, 0, -1/n)`, the Gibbs state of the bare detector at the Unruh
/// temperature.
pub fn stationary_state<T: Scalar>(params: &DetectorParams<T>) -> BlochVector<T> {
    BlochVector::new(T::zero(), T::zero(), -params.n.recip())
}

pub fn density_matrix<T: Scalar>(r: &BlochVector<T>) -> Result<ComplexMatrix<T>> {
    r.check()?;
    Ok(qmath::from_pauli_coeffs(r.as_array()))
}

/// Inverse of [`density_matrix`]: `r_i = Tr(ρ σ_i)`.
pub fn bloch_of<T: Scalar>(rho: &ComplexMatrix<T>) -> Result<BlochVector<T>> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: rho.dim(),
        });
    }
    let tol = T::lit(1e-10);
    if rho.hermitian_asymmetry() > tol {
        return Err(Error::InvalidDensity("not Hermitian"));
    }
    if (rho.trace().re - T::one()).abs() > tol {
        return Err(Error::InvalidDensity("trace differs from 1"));
    }
    let off = rho[(1, 0)];
    let r = BlochVector::new(
        T::lit(2.0) * off.re,
        T::lit(2.0) * off.im,
        rho[(0, 0)].re - rho[(1, 1)].re,
    );
    r.check()?;
    Ok(r)
}

/// The dissipator `𝓛[ρ] = ½ Σ a_ij (2 σ_j ρ σ_i - σ_i σ_j ρ - ρ σ_i σ_j)`.
pub fn dissipator<T: Scalar>(coeffs: &KossakowskiCoeffs<T>, rho: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let a = coeffs.matrix();
    let sig: Vec<ComplexMatrix<T>> = (1..=3).map(|i| qmath::pauli(i).expect("index in range")).collect();
    let half = Complex::new(T::lit(0.5), T::zero());
    let two = Complex::new(T::lit(2.0), T::zero());
    let mut out = ComplexMatrix::zeros(2);
    for i in 0..3 {
        for j in 0..3 {
            let aij = a[i][j];
            if aij.norm() == T::zero() {
                continue;
            }
            let sisj = &sig[i] * &sig[j];
            let jump = &(&sig[j] * rho) * &sig[i];
            let term = &(&jump.scale(two) - &(&sisj * rho)) - &(rho * &sisj);
            out = &out + &term.scale(aij * half);
        }
    }
    out
}

/// Superoperator of [`dissipator`] acting on row-major `vec(ρ)`.
fn liouvillian<T: Scalar>(coeffs: &KossakowskiCoeffs<T>) -> [[Complex<T>; 4]; 4] {
    let zero = Complex::new(T::zero(), T::zero());
    let mut sup = [[zero; 4]; 4];
    for col in 0..4 {
        let mut basis = ComplexMatrix::zeros(2);
        basis[(col / 2, col % 2)] = Complex::new(T::one(), T::zero());
        let image = dissipator(coeffs, &basis);
        for (row, z) in image.entries().iter().enumerate() {
            sup[row][col] = *z;
        }
    }
    sup
}

fn apply<T: Scalar>(sup: &[[Complex<T>; 4]; 4], v: &[Complex<T>; 4]) -> [Complex<T>; 4] {
    let mut out = [Complex::new(T::zero(), T::zero()); 4];
    for (o, row) in out.iter_mut().zip(sup) {
        *o = row.iter().zip(v).fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a * b);
    }
    out
}

/// Fixed-step RK4 integration of the GKSL equation with the Hamiltonian part
/// dropped, calling `observe(step, ρ)` for the initial state and after every
/// step.
pub fn lindblad_oracle_with<T, F>(
    r0: &BlochVector<T>,
    params: &DetectorParams<T>,
    tau: T,
    steps: usize,
    mut observe: F,
) -> Result<BlochVector<T>>
where
    T: Scalar,
    F: FnMut(usize, &ComplexMatrix<T>),
{
    if !(tau >= T::zero()) {
        return Err(domain("tau", tau, ">= 0"));
    }
    if steps == 0 {
        return Err(domain("steps", T::zero(), ">= 1"));
    }
    let h = tau / T::lit(steps as f64);
    let rate = h * params.gamma0 * params.n;
    if !(rate < T::lit(MAX_STEP_RATE)) {
        return Err(Error::StepTooLarge(rate.as_f64()));
    }

    let rho0 = density_matrix(r0)?;
    observe(0, &rho0);
    if tau == T::zero() {
        return Ok(*r0);
    }

    let sup = liouvillian(&kossakowski(params));
    let mut v: [Complex<T>; 4] = [rho0[(0, 0)], rho0[(0, 1)], rho0[(1, 0)], rho0[(1, 1)]];
    let hc = Complex::new(h, T::zero());
    let half = Complex::new(T::lit(0.5), T::zero());
    let sixth = Complex::new(T::lit(1.0 / 6.0), T::zero());
    let two = Complex::new(T::lit(2.0), T::zero());
    let axpy = |x: &[Complex<T>; 4], a: Complex<T>, y: &[Complex<T>; 4]| {
        let mut out = *x;
        for (o, yi) in out.iter_mut().zip(y) {
            *o = *o + a * yi;
        }
        out
    };

    let mut rho = rho0;
    for step in 1..=steps {
        let k1 = apply(&sup, &v);
        let k2 = apply(&sup, &axpy(&v, hc * half, &k1));
        let k3 = apply(&sup, &axpy(&v, hc * half, &k2));
        let k4 = apply(&sup, &axpy(&v, hc, &k3));
        for i in 0..4 {
            v[i] = v[i] + hc * sixth * (k1[i] + two * k2[i] + two * k3[i] + k4[i]);
        }
        rho = ComplexMatrix::from_rows(2, v.to_vec())?;
        observe(step, &rho);
    }

    // Recover r from ρ without the physicality check; the caller compares
    // against the analytic solution.
    let off = rho[(1, 0)];
    Ok(BlochVector::new(
        T::lit(2.0) * off.re,
        T::lit(2.0) * off.im,
        rho[(0, 0)].re - rho[(1, 1)].re,
    ))
}

/// [`lindblad_oracle_with`] without an observer.
pub fn lindblad_oracle<T: Scalar>(
    r0: &BlochVector<T>,
    params: &DetectorParams<T>,
    tau: T,
    steps: usize,
) -> Result<BlochVector<T>> {
    lindblad_oracle_with(r0, params, tau, steps, |_, _| {})
}

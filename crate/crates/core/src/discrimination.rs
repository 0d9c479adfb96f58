//! Distinguishing the inertial probe (`n = 1`) from the accelerated one
//! (`n > 1`).
//!
//! Every distance is built from three functions of `x = γ₀τ`:
//!
//! ```text
//! Λ₁ = e^{-x/2} - e^{-nx/2}
//! Λ₂ = e^{-x}   - e^{-nx}
//! Λ₃ = (1 - e^{-x}) - (1 - e^{-nx}) / n
//! ```
//!
//! Distances are trace norms `‖ρ_inertial - ρ_accelerated‖`, so the
//! equilibrium value is `1 - 1/n` and the upper bound is 2. Each closed form
//! has a brute-force counterpart that builds the density matrices and sums
//! absolute eigenvalues.

use crate::detector::{self, BlochVector, DetectorParams};
use crate::error::{domain, Error, Result};
use crate::qmath::{self, ComplexMatrix};
use crate::scalar::one_minus_exp_neg;
use crate::Scalar;

/// Tolerance on the smallest eigenvalue of a valid X-state.
pub const XSTATE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaTriple<T> {
    pub lambda1: T,
    pub lambda2: T,
    pub lambda3: T,
}

fn check_time_and_n<T: Scalar>(gt: T, n: T) -> Result<()> {
    if !(gt >= T::zero()) {
        return Err(domain("gamma0*tau", gt, ">= 0"));
    }
    if !(n >= T::one()) || !n.is_finite() {
        return Err(domain("n", n, ">= 1"));
    }
    Ok(())
}

pub fn lambdas<T: Scalar>(gt: T, n: T) -> Result<LambdaTriple<T>> {
    check_time_and_n(gt, n)?;
    Ok(lambdas_unchecked(gt, n))
}

pub(crate) fn lambdas_unchecked<T: Scalar>(gt: T, n: T) -> LambdaTriple<T> {
    let half = T::lit(0.5);
    let excess = (n - T::one()) * gt;
    LambdaTriple {
        lambda1: (-half * gt).exp() * one_minus_exp_neg(half * excess),
        lambda2: (-gt).exp() * one_minus_exp_neg(excess),
        lambda3: one_minus_exp_neg(gt) - one_minus_exp_neg(n * gt) / n,
    }
}

/// Derivatives of the Λ functions with respect to `γ₀τ`.
pub fn lambda_derivatives<T: Scalar>(gt: T, n: T) -> LambdaTriple<T> {
    let half = T::lit(0.5);
    let (slow, fast) = ((-gt).exp(), (-n * gt).exp());
    LambdaTriple {
        lambda1: -half * (-half * gt).exp() + half * n * (-half * n * gt).exp(),
        lambda2: -slow + n * fast,
        lambda3: slow - fast,
    }
}

/// Parameters of `¼(1 + Σ c_i σ_i⊗σ_i + c₃₀ σ₃⊗σ₀)`. The first tensor factor
/// is the probe, the second the ancilla that never couples to the field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XStateCoeffs<T> {
    pub c1: T,
    pub c2: T,
    pub c3: T,
    pub c30: T,
}

impl<T: Scalar> XStateCoeffs<T> {
    /// An initial state (`c30 = 0`), checked for positivity.
    pub fn initial(c1: T, c2: T, c3: T) -> Result<Self> {
        let s = Self {
            c1,
            c2,
            c3,
            c30: T::zero(),
        };
        s.validate()?;
        Ok(s)
    }

    /// Werner family `c1 = -c2 = c3 = c`; entangled for `c > 1/3`.
    pub fn werner(c: T) -> Result<Self> {
        Self::initial(c, -c, c)
    }

    /// `c± = c1 ± c2`.
    pub fn c_plus(&self) -> T {
        self.c1 + self.c2
    }

    pub fn c_minus(&self) -> T {
        self.c1 - self.c2
    }

    pub fn density_matrix(&self) -> ComplexMatrix<T> {
        let p = |i| qmath::pauli::<T>(i).expect("index in range");
        let mut m = qmath::tensor(&p(0), &p(0));
        for (i, c) in [(1, self.c1), (2, self.c2), (3, self.c3)] {
            m = &m + &qmath::tensor(&p(i), &p(i)).scale_real(c);
        }
        m = &m + &qmath::tensor(&p(3), &p(0)).scale_real(self.c30);
        m.scale_real(T::lit(0.25))
    }

    pub fn min_eigenvalue(&self) -> Result<T> {
        let ev = qmath::hermitian_eigenvalues(&self.density_matrix(), T::lit(qmath::HERMITIAN_TOL))?;
        Ok(ev[0])
    }

    /// Checks finiteness and positive semidefiniteness by explicit
    /// diagonalization.
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("c1", self.c1), ("c2", self.c2), ("c3", self.c3), ("c30", self.c30)] {
            if !v.is_finite() {
                return Err(domain(name, v, "finite"));
            }
        }
        let min = self.min_eigenvalue()?;
        if min < -T::lit(XSTATE_TOL) {
            return Err(Error::InvalidXState(min.as_f64()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscriminationResult<T> {
    /// Evaluation time `γ₀τ`.
    pub tau: T,
    /// Trace norm of the difference; may exceed `1 - 1/n` but never 2.
    pub distance: T,
    /// `distance / (1 - 1/n)`, absent when `n = 1`.
    pub normalized: Option<T>,
    pub error_probability: T,
}

impl<T: Scalar> DiscriminationResult<T> {
    fn new(tau: T, distance: T, n: T) -> Result<Self> {
        Ok(Self {
            tau,
            distance,
            normalized: normalize(distance, n).ok(),
            error_probability: helstrom(distance)?,
        })
    }

    pub fn normalized(&self) -> Result<T> {
        self.normalized.ok_or(Error::UndefinedNormalization)
    }
}

/// `1 - 1/n`, the distance between the two equilibrium states.
pub fn equilibrium_distance<T: Scalar>(n: T) -> T {
    T::one() - n.recip()
}

pub fn normalize<T: Scalar>(distance: T, n: T) -> Result<T> {
    if n == T::one() {
        return Err(Error::UndefinedNormalization);
    }
    if !(n > T::one()) {
        return Err(domain("n", n, ">= 1"));
    }
    Ok(distance / equilibrium_distance(n))
}

/// Minimum error probability `½(1 - ½ D)` for two equiprobable states at
/// trace distance `D`.
pub fn helstrom<T: Scalar>(distance: T) -> Result<T> {
    if !(distance >= T::zero() && distance <= T::lit(2.0)) {
        return Err(domain("distance", distance, "within [0, 2]"));
    }
    Ok(T::lit(0.5) * (T::one() - T::lit(0.5) * distance))
}

fn check_theta<T: Scalar>(theta: T) -> Result<()> {
    if !(theta >= T::zero() && theta <= T::PI()) {
        return Err(domain("theta", theta, "within [0, pi]"));
    }
    Ok(())
}

/// Bloch distance between the inertial and accelerated single probe started
/// from `(sin θ, 0, cos θ)`.
pub fn single_distance<T: Scalar>(theta: T, gt: T, n: T) -> Result<DiscriminationResult<T>> {
    check_theta(theta)?;
    check_time_and_n(gt, n)?;
    DiscriminationResult::new(gt, single_distance_unchecked(theta, gt, n), n)
}

pub(crate) fn single_distance_unchecked<T: Scalar>(theta: T, gt: T, n: T) -> T {
    let l = lambdas_unchecked(gt, n);
    let transverse = theta.sin() * l.lambda1;
    let longitudinal = theta.cos() * l.lambda2 - l.lambda3;
    transverse.hypot(longitudinal)
}

/// Trace norm of `ρ_inertial(τ) - ρ_accelerated(τ)` from the evolved Bloch
/// vectors and an explicit eigendecomposition.
pub fn single_distance_brute<T: Scalar>(theta: T, gt: T, n: T) -> Result<T> {
    check_theta(theta)?;
    check_time_and_n(gt, n)?;
    let r0 = BlochVector::from_angle(theta);
    let inertial = DetectorParams::inertial(T::one(), T::one())?;
    let accelerated = DetectorParams::new(T::one(), T::one(), n)?;
    let rho1 = detector::density_matrix(&detector::evolve_bloch(&r0, &inertial, gt)?)?;
    let rho2 = detector::density_matrix(&detector::evolve_bloch(&r0, &accelerated, gt)?)?;
    qmath::trace_norm(&(&rho1 - &rho2))
}

/// Evolves an initial X-state with only the probe coupled to the field.
pub fn evolve_xstate<T: Scalar>(c0: &XStateCoeffs<T>, n: T, gt: T) -> Result<XStateCoeffs<T>> {
    if c0.c30 != T::zero() {
        return Err(domain("c30", c0.c30, "= 0 for an initial state"));
    }
    c0.validate()?;
    check_time_and_n(gt, n)?;
    Ok(evolve_xstate_unchecked(c0, n, gt))
}

fn evolve_xstate_unchecked<T: Scalar>(c0: &XStateCoeffs<T>, n: T, gt: T) -> XStateCoeffs<T> {
    let rate = n * gt;
    let transverse = (-T::lit(0.5) * rate).exp();
    XStateCoeffs {
        c1: c0.c1 * transverse,
        c2: c0.c2 * transverse,
        c3: c0.c3 * (-rate).exp(),
        c30: -one_minus_exp_neg(rate) / n,
    }
}

pub fn bipartite_distance<T: Scalar>(c0: &XStateCoeffs<T>, n: T, gt: T) -> Result<DiscriminationResult<T>> {
    if c0.c30 != T::zero() {
        return Err(domain("c30", c0.c30, "= 0 for an initial state"));
    }
    c0.validate()?;
    check_time_and_n(gt, n)?;
    DiscriminationResult::new(gt, bipartite_distance_unchecked(c0, n, gt), n)
}

pub(crate) fn bipartite_distance_unchecked<T: Scalar>(c0: &XStateCoeffs<T>, n: T, gt: T) -> T {
    let l = lambdas_unchecked(gt, n);
    let s_plus = (c0.c_plus() * l.lambda1).hypot(l.lambda3);
    let s_minus = (c0.c_minus() * l.lambda1).hypot(l.lambda3);
    let z = c0.c3 * l.lambda2;
    T::lit(0.25) * ((s_plus + z).abs() + (s_plus - z).abs() + (z + s_minus).abs() + (z - s_minus).abs())
}

/// Trace norm of the 4×4 difference between the inertial and accelerated
/// evolved X-states.
pub fn bipartite_distance_brute<T: Scalar>(c0: &XStateCoeffs<T>, n: T, gt: T) -> Result<T> {
    let rest = evolve_xstate(c0, T::one(), gt)?.density_matrix();
    let moving = evolve_xstate(c0, n, gt)?.density_matrix();
    qmath::trace_norm(&(&rest - &moving))
}

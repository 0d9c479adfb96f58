//! Root finding and optimization over the interaction time `γ₀τ`, the
//! entanglement-advantage threshold and parameter sweeps.

use rayon::prelude::*;

use crate::discrimination::{
    self, bipartite_distance_unchecked, equilibrium_distance, lambda_derivatives, lambdas_unchecked,
    single_distance_unchecked, XStateCoeffs,
};
use crate::error::{domain, Error, Result};
use crate::Scalar;

/// Default search interval in `γ₀τ`; `e^{-50}` is far below any tolerance used.
pub const DEFAULT_BRACKET: (f64, f64) = (1e-6, 50.0);

/// Width at which bisection stops.
pub const ROOT_TOL: f64 = 1e-12;

/// A finite-time maximum must beat the equilibrium distance by this much.
pub const PLATEAU_TOL: f64 = 1e-9;

pub const DEFAULT_SCAN_POINTS: usize = 2000;

const THRESHOLD_SCAN_POINTS: usize = 10_000;
const THRESHOLD_RANGE: (f64, f64) = (1e-4, 50.0);
const PIECE_SAMPLES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremumKind {
    Maximum,
    Zero,
    Kink,
    /// The supremum is only approached as `γ₀τ → ∞`; `location` is infinite.
    Plateau,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum<T> {
    pub location: T,
    pub value: T,
    pub kind: ExtremumKind,
}

impl<T: Scalar> Extremum<T> {
    pub fn normalized(&self, n: T) -> Result<T> {
        discrimination::normalize(self.value, n)
    }
}

/// Bisection for a strict sign change of `f` on `[lo, hi]`.
///
/// `Ok(None)` means `f` does not change sign at the endpoints.
pub fn bisect<T: Scalar>(f: impl Fn(T) -> T, lo: T, hi: T, tol: T) -> Result<Option<T>> {
    if !(lo < hi) {
        return Err(domain("bracket lower end", lo, "below the upper end"));
    }
    let (mut a, mut b) = (lo, hi);
    let (fa, fb) = (f(a), f(b));
    if fa.is_nan() || fb.is_nan() {
        return Err(domain("bracket endpoint value", T::nan(), "finite"));
    }
    let positive_at_a = fa > T::zero();
    if !((fa > T::zero() && fb < T::zero()) || (fa < T::zero() && fb > T::zero())) {
        return Ok(None);
    }
    while b - a > tol {
        let mid = a + (b - a) * T::lit(0.5);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid);
        if fm == T::zero() {
            return Ok(Some(mid));
        }
        if (fm > T::zero()) == positive_at_a {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(Some(a + (b - a) * T::lit(0.5)))
}

/// Golden-section search for a maximum of a unimodal `f` on `[lo, hi]`.
pub fn golden_max<T: Scalar>(f: impl Fn(T) -> T, lo: T, hi: T, tol: T) -> (T, T) {
    let inv_phi = T::lit((5f64.sqrt() - 1.0) / 2.0);
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > tol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
        if x1 >= x2 {
            break;
        }
    }
    let x = a + (b - a) * T::lit(0.5);
    (x, f(x))
}

fn default_bracket<T: Scalar>() -> (T, T) {
    (T::lit(DEFAULT_BRACKET.0), T::lit(DEFAULT_BRACKET.1))
}

/// Time at which the single-probe distance vanishes, the root of
/// `cos θ Λ₂ - Λ₃`.
pub fn find_zero_crossing<T: Scalar>(theta: T, n: T) -> Result<Option<Extremum<T>>> {
    let (lo, hi) = default_bracket();
    find_zero_crossing_in(theta, n, lo, hi)
}

pub fn find_zero_crossing_in<T: Scalar>(theta: T, n: T, lo: T, hi: T) -> Result<Option<Extremum<T>>> {
    // Validate domains through the public entry point.
    discrimination::single_distance(theta, lo, n)?;
    let cos = theta.cos();
    let g = |x: T| {
        let l = lambdas_unchecked(x, n);
        cos * l.lambda2 - l.lambda3
    };
    Ok(bisect(g, lo, hi, T::lit(ROOT_TOL))?.map(|x| Extremum {
        location: x,
        value: single_distance_unchecked(theta, x, n),
        kind: ExtremumKind::Zero,
    }))
}

/// Nonsmooth point of the Werner-state distance, the root of `c Λ₂ - Λ₃`.
pub fn find_sudden_change<T: Scalar>(c: T, n: T) -> Result<Option<Extremum<T>>> {
    let (lo, hi) = default_bracket();
    find_sudden_change_in(c, n, lo, hi)
}

pub fn find_sudden_change_in<T: Scalar>(c: T, n: T, lo: T, hi: T) -> Result<Option<Extremum<T>>> {
    if !(c > T::zero() && c <= T::one()) {
        return Err(domain("c", c, "within (0, 1]"));
    }
    if !(n > T::one()) {
        return Err(domain("n", n, "> 1"));
    }
    let werner = XStateCoeffs::werner(c)?;
    let g = |x: T| {
        let l = lambdas_unchecked(x, n);
        c * l.lambda2 - l.lambda3
    };
    Ok(bisect(g, lo, hi, T::lit(ROOT_TOL))?.map(|x| Extremum {
        location: x,
        value: bipartite_distance_unchecked(&werner, n, x),
        kind: ExtremumKind::Kink,
    }))
}

/// Squared-magnitude differences whose sign changes mark the nonsmooth
/// points of the bipartite distance.
fn kink_functions<T: Scalar>(c0: &XStateCoeffs<T>, n: T, x: T) -> [T; 2] {
    let l = lambdas_unchecked(x, n);
    let z2 = (c0.c3 * l.lambda2).powi(2);
    let l3 = l.lambda3 * l.lambda3;
    [
        z2 - (c0.c_plus() * l.lambda1).powi(2) - l3,
        z2 - (c0.c_minus() * l.lambda1).powi(2) - l3,
    ]
}

/// Nonsmooth points of the bipartite distance inside `[lo, hi]`, ascending.
pub fn bipartite_kinks<T: Scalar>(c0: &XStateCoeffs<T>, n: T, lo: T, hi: T, scan_points: usize) -> Result<Vec<T>> {
    let grid = linspace(lo, hi, scan_points.max(2));
    let mut kinks = Vec::new();
    for which in 0..2 {
        let g = |x: T| kink_functions(c0, n, x)[which];
        for w in grid.windows(2) {
            if let Some(x) = bisect(g, w[0], w[1], T::lit(ROOT_TOL))? {
                kinks.push(x);
            }
        }
    }
    kinks.sort_by(|a, b| a.partial_cmp(b).expect("finite kink location"));
    kinks.dedup_by(|a, b| (*a - *b).abs() <= T::lit(ROOT_TOL));
    Ok(kinks)
}

/// Derivative of the bipartite distance away from its kinks.
fn bipartite_slope<T: Scalar>(c0: &XStateCoeffs<T>, n: T, x: T) -> T {
    let l = lambdas_unchecked(x, n);
    let d = lambda_derivatives(x, n);
    let branch = |c: T| {
        let s = (c * l.lambda1).hypot(l.lambda3);
        let ds = if s > T::zero() {
            (c * c * l.lambda1 * d.lambda1 + l.lambda3 * d.lambda3) / s
        } else {
            T::zero()
        };
        (s, ds)
    };
    let (sp, dsp) = branch(c0.c_plus());
    let (sm, dsm) = branch(c0.c_minus());
    let (z, dz) = (c0.c3 * l.lambda2, c0.c3 * d.lambda2);
    let sgn = |u: T| if u > T::zero() { T::one() } else if u < T::zero() { -T::one() } else { T::zero() };
    T::lit(0.25)
        * (sgn(sp + z) * (dsp + dz) + sgn(sp - z) * (dsp - dz) + sgn(z + sm) * (dz + dsm) + sgn(z - sm) * (dz - dsm))
}

/// Largest distance over `[lo, hi]` for an X-state probe.
///
/// The interval is split at every kink, each smooth piece is sampled to
/// bracket its best point, refined by golden-section search and polished by
/// bisection on the analytic slope. If no finite time beats the equilibrium
/// distance by more than [`PLATEAU_TOL`] the result is a
/// [`ExtremumKind::Plateau`].
pub fn maximize_distance<T: Scalar>(c0: &XStateCoeffs<T>, n: T, bracket: (T, T)) -> Result<Extremum<T>> {
    maximize_distance_with(c0, n, bracket, DEFAULT_SCAN_POINTS)
}

pub fn maximize_distance_with<T: Scalar>(
    c0: &XStateCoeffs<T>,
    n: T,
    (lo, hi): (T, T),
    scan_points: usize,
) -> Result<Extremum<T>> {
    if !(lo >= T::zero()) || !(hi > lo) || !hi.is_finite() {
        return Err(domain("bracket", hi - lo, "a nonempty interval within [0, inf)"));
    }
    if !(n > T::one()) {
        return Err(domain("n", n, "> 1"));
    }
    // validates c0 and the domain
    discrimination::bipartite_distance(c0, n, lo)?;

    let f = |x: T| bipartite_distance_unchecked(c0, n, x);
    let mut breaks = vec![lo];
    breaks.extend(bipartite_kinks(c0, n, lo, hi, scan_points)?);
    breaks.push(hi);

    let mut best = (lo, f(lo));
    for piece in breaks.windows(2) {
        let (a, b) = (piece[0], piece[1]);
        if !(b > a) {
            continue;
        }
        let candidate = maximize_piece(&f, |x| bipartite_slope(c0, n, x), a, b);
        if candidate.1 > best.1 {
            best = candidate;
        }
    }

    let plateau = equilibrium_distance(n);
    if best.1 > plateau + T::lit(PLATEAU_TOL) {
        Ok(Extremum {
            location: best.0,
            value: best.1,
            kind: ExtremumKind::Maximum,
        })
    } else {
        Ok(Extremum {
            location: T::infinity(),
            value: plateau,
            kind: ExtremumKind::Plateau,
        })
    }
}

fn maximize_piece<T: Scalar>(f: &impl Fn(T) -> T, slope: impl Fn(T) -> T, a: T, b: T) -> (T, T) {
    let grid = linspace(a, b, PIECE_SAMPLES + 2);
    let (i, _) = grid
        .iter()
        .map(|&x| f(x))
        .enumerate()
        .fold((0, T::neg_infinity()), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });
    let endpoint = (grid[i], f(grid[i]));
    if i == 0 || i == grid.len() - 1 {
        return endpoint;
    }
    let (lo, hi) = (grid[i - 1], grid[i + 1]);
    let (x, _) = golden_max(f, lo, hi, T::lit(1e-7));

    // The slope has a clean sign change at an interior maximum, which pins
    // the location far below the golden-section noise floor.
    let step = T::lit(1e-6);
    let (sa, sb) = ((x - step).max(lo), (x + step).min(hi));
    let x = match bisect(&slope, sa, sb, T::lit(ROOT_TOL)) {
        Ok(Some(root)) if slope(sa) > T::zero() => root,
        _ => x,
    };
    let v = f(x);
    if v >= endpoint.1 {
        (x, v)
    } else {
        endpoint
    }
}

/// Infimum over `γ₀τ` of the smallest Werner parameter whose distance
/// exceeds the equilibrium value at that time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Threshold<T> {
    pub value: T,
    /// `γ₀τ` at which the infimum is attained.
    pub location: T,
}

/// Smallest `c` with `½[cΛ₂ + √(4c²Λ₁² + Λ₃²)] = 1 - 1/n` at time `x`, the
/// positive root of the quadratic in `c`.
pub fn threshold_curve<T: Scalar>(x: T, n: T) -> T {
    let l = lambdas_unchecked(x, n);
    let d = equilibrium_distance(n);
    let (l1s, l2s, l3s) = (l.lambda1 * l.lambda1, l.lambda2 * l.lambda2, l.lambda3 * l.lambda3);
    let four = T::lit(4.0);
    let disc = T::lit(16.0) * l1s * d * d + l2s * l3s - four * l1s * l3s;
    (disc.sqrt() - T::lit(2.0) * l.lambda2 * d) / (four * l1s - l2s)
}

pub fn advantage_threshold<T: Scalar>(n: T) -> Result<Threshold<T>> {
    if !(n > T::one()) || !n.is_finite() {
        return Err(domain("n", n, "> 1"));
    }
    let grid = logspace(T::lit(THRESHOLD_RANGE.0), T::lit(THRESHOLD_RANGE.1), THRESHOLD_SCAN_POINTS);
    let h = |x: T| threshold_curve(x, n);
    // Non-finite values sit at the removable singularity 4Λ₁² = Λ₂² or
    // where the discriminant underflows; skip them.
    let (i, _) = grid
        .iter()
        .map(|&x| h(x))
        .enumerate()
        .filter(|(_, v)| v.is_finite())
        .fold((usize::MAX, T::infinity()), |acc, (i, v)| if v < acc.1 { (i, v) } else { acc });
    if i == usize::MAX {
        return Err(domain("n", n, "a value with a finite threshold curve"));
    }
    let lo = grid[i.saturating_sub(1)];
    let hi = grid[(i + 1).min(grid.len() - 1)];
    let (location, neg) = golden_max(|x| -h(x), lo, hi, T::lit(1e-10));
    let value = -neg;
    if value <= h(grid[i]) {
        Ok(Threshold { value, location })
    } else {
        Ok(Threshold {
            value: h(grid[i]),
            location: grid[i],
        })
    }
}

/// `points` equally spaced values with both endpoints exact.
pub fn linspace<T: Scalar>(start: T, stop: T, points: usize) -> Vec<T> {
    match points {
        0 => vec![],
        1 => vec![start],
        _ => {
            let last = points - 1;
            let span = stop - start;
            (0..points)
                .map(|i| {
                    if i == last {
                        stop
                    } else {
                        start + span * T::lit(i as f64) / T::lit(last as f64)
                    }
                })
                .collect()
        }
    }
}

fn logspace<T: Scalar>(start: T, stop: T, points: usize) -> Vec<T> {
    linspace(start.ln(), stop.ln(), points).into_iter().map(T::exp).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    Tau,
    Theta,
    C,
    N,
}

/// Values held fixed while one of them is swept. `c` is the Werner parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedParams<T> {
    pub tau: T,
    pub theta: T,
    pub c: T,
    pub n: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepGrid<T> {
    pub variable: SweepVariable,
    pub start: T,
    pub stop: T,
    pub points: usize,
    pub fixed: FixedParams<T>,
}

impl<T: Scalar> SweepGrid<T> {
    pub fn new(variable: SweepVariable, start: T, stop: T, points: usize, fixed: FixedParams<T>) -> Result<Self> {
        if !(start < stop) {
            return Err(domain("start", start, "below stop"));
        }
        if points < 2 {
            return Err(domain("points", T::lit(points as f64), ">= 2"));
        }
        Ok(Self {
            variable,
            start,
            stop,
            points,
            fixed,
        })
    }

    pub fn values(&self) -> Vec<T> {
        linspace(self.start, self.stop, self.points)
    }

    fn params_at(&self, x: T) -> FixedParams<T> {
        let mut p = self.fixed;
        match self.variable {
            SweepVariable::Tau => p.tau = x,
            SweepVariable::Theta => p.theta = x,
            SweepVariable::C => p.c = x,
            SweepVariable::N => p.n = x,
        }
        p
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Probe {
    Single,
    /// Werner state with parameter `c`.
    Bipartite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    SingleDistance,
    BipartiteDistance,
    ErrorProbability(Probe),
}

fn evaluate<T: Scalar>(p: &FixedParams<T>, quantity: Quantity) -> Result<T> {
    let single = || discrimination::single_distance(p.theta, p.tau, p.n);
    let bipartite = || discrimination::bipartite_distance(&XStateCoeffs::werner(p.c)?, p.n, p.tau);
    Ok(match quantity {
        Quantity::SingleDistance => single()?.distance,
        Quantity::BipartiteDistance => bipartite()?.distance,
        Quantity::ErrorProbability(Probe::Single) => single()?.error_probability,
        Quantity::ErrorProbability(Probe::Bipartite) => bipartite()?.error_probability,
    })
}

/// Evaluates `quantity` along the grid. Rows come back in grid order; a
/// failing row carries its error instead of aborting the sweep.
pub fn sweep<T: Scalar>(grid: &SweepGrid<T>, quantity: Quantity) -> Vec<(T, Result<T, Error>)> {
    grid.values()
        .into_par_iter()
        .map(|x| (x, evaluate(&grid.params_at(x), quantity)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn zero_crossing_ground_state_and_inertial() {
        assert_eq!(find_zero_crossing(PI, 10.0).unwrap(), None);
        assert_eq!(find_zero_crossing(0.0, 1.0).unwrap(), None);
        assert!(find_zero_crossing(0.0, 0.5).is_err());
    }

    #[test]
    fn zero_crossing_n2_by_substitution() {
        let z = find_zero_crossing(0.0, 2.0).unwrap().unwrap();
        let x: f64 = z.location;
        let lhs = (-x).exp() - (-2.0 * x).exp();
        let rhs = (1.0 - (-x).exp()) - 0.5 * (1.0 - (-2.0 * x).exp());
        assert!((lhs - rhs).abs() < 1e-12);
        assert!(z.value < 1e-12);
        assert_eq!(z.kind, ExtremumKind::Zero);
    }

    #[test]
    fn sudden_change_examples() {
        let small = find_sudden_change(1e-3, 10.0).unwrap().unwrap();
        let tiny = find_sudden_change(1e-5, 10.0).unwrap().unwrap();
        assert!(tiny.location < small.location && small.location < 0.01);

        let half = find_sudden_change(0.5, 10.0).unwrap().unwrap().location;
        let most = find_sudden_change(0.9, 10.0).unwrap().unwrap().location;
        assert!(half < most);

        let kink = find_sudden_change(1.0, 10.0).unwrap().unwrap();
        let zero = find_zero_crossing(0.0, 10.0).unwrap().unwrap();
        assert_abs_diff_eq!(kink.location, zero.location, epsilon = 1e-10);

        assert!(find_sudden_change(0.0, 10.0).is_err());
        assert!(find_sudden_change(1.2, 10.0).is_err());
        assert!(find_sudden_change(0.5, 1.0).is_err());
    }

    #[test]
    fn sudden_change_monotone_in_c() {
        let locs: Vec<f64> = (1..=10)
            .map(|k| find_sudden_change(k as f64 / 10.0, 10.0).unwrap().unwrap().location)
            .collect();
        assert!(locs.windows(2).all(|w| w[0] < w[1]), "{locs:?}");
    }

    #[test]
    fn werner_kinks_match_sudden_change() {
        for c in [0.3, 0.7, 1.0] {
            let kinks = bipartite_kinks(&XStateCoeffs::werner(c).unwrap(), 10.0, 1e-6, 50.0, 2000).unwrap();
            let sudden = find_sudden_change(c, 10.0).unwrap().unwrap().location;
            assert_eq!(kinks.len(), 1);
            assert_abs_diff_eq!(kinks[0], sudden, epsilon = 1e-10);
        }
    }

    #[test]
    fn kink_shows_as_slope_jump() {
        let c = 0.8;
        let w = XStateCoeffs::werner(c).unwrap();
        let k = find_sudden_change(c, 10.0).unwrap().unwrap().location;
        let f = |x: f64| bipartite_distance_unchecked(&w, 10.0, x);
        let h = 1e-5;
        let left = (f(k) - f(k - h)) / h;
        let right = (f(k + h) - f(k)) / h;
        assert!((left - right).abs() > 1e-2, "left {left}, right {right}");
    }

    #[test]
    fn slope_matches_finite_difference() {
        let c0 = XStateCoeffs::initial(0.5, 0.2, -0.4).unwrap();
        for x in [0.05, 0.3, 1.2, 4.0] {
            let h = 1e-6;
            let fd = (bipartite_distance_unchecked(&c0, 6.0, x + h) - bipartite_distance_unchecked(&c0, 6.0, x - h))
                / (2.0 * h);
            assert_abs_diff_eq!(bipartite_slope(&c0, 6.0, x), fd, epsilon = 1e-7);
        }
    }

    #[test]
    fn maximize_is_scan_density_invariant() {
        let w = XStateCoeffs::werner(1.0).unwrap();
        let a = maximize_distance_with(&w, 10.0, (1e-6, 50.0), 1000).unwrap();
        let b = maximize_distance_with(&w, 10.0, (1e-6, 50.0), 2000).unwrap();
        let c = maximize_distance_with(&w, 10.0, (1e-6, 50.0), 4000).unwrap();
        assert_abs_diff_eq!(a.location, b.location, epsilon = 1e-10);
        assert_abs_diff_eq!(b.location, c.location, epsilon = 1e-10);
        assert_abs_diff_eq!(a.value, c.value, epsilon = 1e-12);
    }

    #[test]
    fn maximize_local_optimality() {
        let w = XStateCoeffs::werner(0.95).unwrap();
        let m = maximize_distance(&w, 10.0, (1e-6, 50.0)).unwrap();
        assert_eq!(m.kind, ExtremumKind::Maximum);
        for h in [1e-4, 1e-6, 1e-8] {
            assert!(bipartite_distance_unchecked(&w, 10.0, m.location + h) <= m.value);
            assert!(bipartite_distance_unchecked(&w, 10.0, m.location - h) <= m.value);
        }
    }

    #[test]
    fn maximize_plateau_for_weak_correlations() {
        let w = XStateCoeffs::werner(0.5).unwrap();
        let m = maximize_distance(&w, 10.0, (1e-6, 50.0)).unwrap();
        assert_eq!(m.kind, ExtremumKind::Plateau);
        assert_abs_diff_eq!(m.value, 0.9, epsilon = 1e-15);
        // dense-scan oracle
        let dense = linspace(1e-6, 50.0, 100_000);
        for x in dense {
            let d = bipartite_distance_unchecked(&w, 10.0, x);
            // the tail rounds to exactly 0.9
            assert!(d < 0.9 || (x > 30.0 && d <= 0.9), "x {x}: {d}");
        }
    }

    #[test]
    fn maximize_rejects_bad_input() {
        let w = XStateCoeffs::werner(1.0).unwrap();
        assert!(maximize_distance(&w, 10.0, (1.0, 1.0)).is_err());
        assert!(maximize_distance(&w, 10.0, (2.0, 1.0)).is_err());
        assert!(maximize_distance(&w, 1.0, (0.0, 1.0)).is_err());
    }

    #[test]
    fn threshold_reproducible_and_domain() {
        let a = advantage_threshold(10.0).unwrap();
        let b = advantage_threshold(10.0).unwrap();
        assert_eq!(a, b);
        assert!(advantage_threshold(1.0).is_err());
        // every n gives a finite value, trend is not asserted
        for n in [1.01f64, 5.0, 20.0, 50.0] {
            assert!(advantage_threshold(n).unwrap().value.is_finite());
        }
    }

    #[test]
    fn golden_and_bisect_basics() {
        let (x, v) = golden_max(|x: f64| -(x - 0.3).powi(2), 0.0, 1.0, 1e-10);
        assert_abs_diff_eq!(x, 0.3, epsilon = 1e-8);
        assert_abs_diff_eq!(v, 0.0, epsilon = 1e-15);
        let r = bisect(|x: f64| x * x - 2.0, 0.0, 2.0, 1e-14).unwrap().unwrap();
        assert_abs_diff_eq!(r, 2f64.sqrt(), epsilon = 1e-13);
        assert_eq!(bisect(|x: f64| x * x + 1.0, 0.0, 2.0, 1e-14).unwrap(), None);
        assert!(bisect(|x: f64| x, 1.0, 0.0, 1e-14).is_err());
    }

    #[test]
    fn linspace_endpoints() {
        let v = linspace(0.0, 3.0, 301);
        assert_eq!(v[0], 0.0);
        assert_eq!(v[300], 3.0);
        assert_abs_diff_eq!(v[80], 0.8, epsilon = 1e-15);
    }

    #[test]
    fn sweep_endpoints_and_errors() {
        let fixed = FixedParams { tau: 0.0, theta: 0.0, c: 1.0, n: 10.0 };
        let grid = SweepGrid::new(SweepVariable::Tau, 0.0, 60.0, 2, fixed).unwrap();
        let rows = sweep(&grid, Quantity::BipartiteDistance);
        assert_eq!(rows[0].1, Ok(0.0));
        assert_abs_diff_eq!(*rows[1].1.as_ref().unwrap(), 0.9, epsilon = 1e-12);

        let grid = SweepGrid::new(SweepVariable::C, 0.0, 1.2, 7, fixed).unwrap();
        let rows = sweep(&grid, Quantity::BipartiteDistance);
        assert!(rows[..6].iter().all(|r| r.1.is_ok()));
        assert!(rows[6].1.is_err());

        let grid = SweepGrid::new(SweepVariable::Tau, 0.0, 1.0, 5, fixed).unwrap();
        let rows = sweep(&grid, Quantity::ErrorProbability(Probe::Single));
        assert_eq!(rows[0].1, Ok(0.5));

        assert!(SweepGrid::new(SweepVariable::Tau, 1.0, 1.0, 5, fixed).is_err());
        assert!(SweepGrid::new(SweepVariable::Tau, 0.0, 1.0, 1, fixed).is_err());
    }

    #[test]
    fn sweep_matches_direct_calls_and_repeats() {
        let fixed = FixedParams { tau: 0.0, theta: 0.0, c: 0.0, n: 10.0 };
        for c in [0.3, 0.6, 0.9, 1.0] {
            let grid = SweepGrid::new(SweepVariable::Tau, 0.0, 3.0, 301, FixedParams { c, ..fixed }).unwrap();
            let rows = sweep(&grid, Quantity::BipartiteDistance);
            let again = sweep(&grid, Quantity::BipartiteDistance);
            assert_eq!(rows, again);
            let w = XStateCoeffs::werner(c).unwrap();
            for (x, v) in rows {
                assert_eq!(v.unwrap(), discrimination::bipartite_distance(&w, 10.0, x).unwrap().distance);
            }
        }
    }

    #[test]
    fn figure_one_slice_dips_then_recovers() {
        let fixed = FixedParams { tau: 0.0f64, theta: 0.0, c: 0.0, n: 10.0 };
        let grid = SweepGrid::new(SweepVariable::Tau, 0.0, 40.0, 4001, fixed).unwrap();
        let rows = sweep(&grid, Quantity::SingleDistance);
        let near = rows.iter().filter(|(x, _)| (*x - 0.8).abs() < 0.02);
        assert!(near.clone().any(|(_, v)| *v.as_ref().unwrap() < 1e-2));
        let last = rows.last().unwrap().1.as_ref().unwrap();
        assert_abs_diff_eq!(last / 0.9, 1.0, epsilon = 1e-6);
    }
}

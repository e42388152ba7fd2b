use num_complex::Complex;

use super::gamma::{gamma, rgamma};
use super::kummer::kummer_m_estimate;
use super::quad::exp_sinh_log;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// A point on the real or the imaginary axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AxisValue<T> {
    /// The real number `x`.
    Real(T),
    /// The purely imaginary number `i·s`.
    Imaginary(T),
}

impl<T: Real> AxisValue<T> {
    pub fn magnitude(&self) -> T {
        match *self {
            AxisValue::Real(x) | AxisValue::Imaginary(x) => x,
        }
    }

    /// `z²`, which is real for both kinds.
    pub fn squared(&self) -> T {
        match *self {
            AxisValue::Real(x) => x * x,
            AxisValue::Imaginary(s) => -(s * s),
        }
    }

    pub fn to_complex(&self) -> Complex<T> {
        match *self {
            AxisValue::Real(x) => Complex::new(x, T::zero()),
            AxisValue::Imaginary(s) => Complex::new(T::zero(), s),
        }
    }
}

// Relative rounding-error budget accepted from the two-Kummer representation on
// the positive real axis before switching to the integral route.
const KUMMER_ACCEPT: f64 = 1e-14;

/// `2^ν √π`
fn prefactor<T: Real>(nu: T) -> T {
    (nu * T::LN_2()).exp() * T::PI().sqrt()
}

/// Hermite function `H_ν(z)` for real order and a real or purely imaginary argument,
///
/// ```text
/// H_ν(z) = 2^ν √π [ M(-ν/2, 1/2, z²) / Γ((1-ν)/2) - 2z M((1-ν)/2, 3/2, z²) / Γ(-ν/2) ]
/// ```
///
/// At the poles of either Gamma factor the reciprocal is taken as zero, so
/// non-negative integer orders give the Hermite polynomials.
pub fn hermite_h<T: Real>(nu: T, z: AxisValue<T>) -> Result<Complex<T>> {
    match z {
        AxisValue::Real(x) => hermite_real(nu, x).map(|v| Complex::new(v, T::zero())),
        AxisValue::Imaginary(s) => hermite_imaginary(nu, s),
    }
}

/// Hermite function of a real argument.
///
/// Three evaluation routes, tried in order on the positive axis:
///
/// 1. the large-argument expansion `(2x)^ν Σ_k (-ν/2)_k ((1-ν)/2)_k (-x⁻²)^k / k!`,
///    accepted only when its smallest term falls below machine precision;
/// 2. the two-Kummer representation, accepted when the rounding estimate from the
///    series magnitudes (scaled by the conditioning of the
///    Gamma arguments) is below `1e-14` relative (always used for `x <= 0`);
/// 3. for the intermediate band where the two Kummer terms cancel, the integral
///    `H_μ(x) = Γ(-μ)⁻¹ ∫₀^∞ t^{-μ-1} e^{-t²-2xt} dt` at two orders `μ < -1` followed by
///    upward recurrence `H_{μ+1} = 2x H_μ - 2μ H_{μ-1}`, which is stable for `x > 1`.
pub fn hermite_real<T: Real>(nu: T, x: T) -> Result<T> {
    if !(nu.is_finite() && x.is_finite()) {
        return Err(Error::domain("hermite_h", "non-finite argument"));
    }
    if x > T::zero() {
        if let Some(v) = asymptotic(nu, x) {
            return Ok(v);
        }
    }
    match kummer_route(nu, x) {
        Ok((v, rel)) if x <= T::one() || rel <= T::lit(KUMMER_ACCEPT) => Ok(v),
        Ok(_) => integral_route(nu, x).map(|(h, _)| h),
        Err(e) if x <= T::one() => Err(e),
        Err(_) => integral_route(nu, x).map(|(h, _)| h),
    }
}

/// `(H_ν(x), H_{ν-1}(x))` for real `x`.
///
/// The analytic wavefunctions always need two adjacent orders; on the integral
/// route both come out of one recurrence pass.
pub fn hermite_pair<T: Real>(nu: T, x: T) -> Result<(T, T)> {
    let nu_lo = nu - T::one();
    if x > T::one() {
        let hi = asymptotic(nu, x);
        let lo = asymptotic(nu_lo, x);
        if let (Some(h), Some(l)) = (hi, lo) {
            return Ok((h, l));
        }
        let hi = kummer_route(nu, x);
        let lo = kummer_route(nu_lo, x);
        if let (Ok((h, rh)), Ok((l, rl))) = (&hi, &lo) {
            let tol = T::lit(KUMMER_ACCEPT);
            if *rh <= tol && *rl <= tol {
                return Ok((*h, *l));
            }
        }
        return integral_route(nu, x);
    }
    Ok((hermite_real(nu, x)?, hermite_real(nu_lo, x)?))
}

fn hermite_imaginary<T: Real>(nu: T, s: T) -> Result<Complex<T>> {
    if !(nu.is_finite() && s.is_finite()) {
        return Err(Error::domain("hermite_h", "non-finite argument"));
    }
    let z2 = -(s * s);
    let half = T::lit(0.5);
    let m1 = kummer_m_estimate(-nu * half, half, z2)?.value;
    let m2 = kummer_m_estimate((T::one() - nu) * half, T::lit(1.5), z2)?.value;
    let pre = prefactor(nu);
    let re = pre * m1 * rgamma((T::one() - nu) * half);
    let im = -pre * T::lit(2.0) * s * m2 * rgamma(-nu * half);
    Ok(Complex::new(re, im))
}

/// Two-Kummer representation with an estimate of its relative rounding error.
fn kummer_route<T: Real>(nu: T, x: T) -> Result<(T, T)> {
    let half = T::lit(0.5);
    let z2 = x * x;
    let g1 = rgamma((T::one() - nu) * half);
    let g2 = rgamma(-nu * half);
    let mut t1 = T::zero();
    let mut mag = T::zero();
    if g1 != T::zero() {
        let m1 = kummer_m_estimate(-nu * half, half, z2)?;
        t1 = m1.value * g1;
        mag = mag + m1.magnitude * g1.abs();
    }
    let mut t2 = T::zero();
    if g2 != T::zero() && x != T::zero() {
        let m2 = kummer_m_estimate((T::one() - nu) * half, T::lit(1.5), z2)?;
        let w = T::lit(2.0) * x * g2;
        t2 = m2.value * w;
        mag = mag + m2.magnitude * w.abs();
    }
    // Near a Gamma pole the exponentially large parts of the two terms cancel and
    // the rounding of the shifted order is amplified by 1/dist.
    let dist = pole_distance((T::one() - nu) * half).min(pole_distance(-nu * half));
    let conditioning = T::one().max(T::one() / dist);
    mag = mag * conditioning;
    let diff = t1 - t2;
    let rel = if diff == T::zero() {
        if mag == T::zero() {
            T::zero()
        } else {
            T::infinity()
        }
    } else {
        T::epsilon() * mag / diff.abs()
    };
    let v = prefactor(nu) * diff;
    if !v.is_finite() {
        return Err(Error::domain("hermite_h", "overflow in Kummer representation"));
    }
    Ok((v, rel))
}

/// Distance from `x` to the nearest non-positive integer (infinite for `x > 0.5`).
fn pole_distance<T: Real>(x: T) -> T {
    if x > T::lit(0.5) {
        return T::infinity();
    }
    let d = (x - x.round()).abs();
    if d == T::zero() {
        // exact pole: the term is dropped, no amplification
        T::infinity()
    } else {
        d
    }
}

/// Large positive argument expansion; `None` unless it reaches machine precision.
fn asymptotic<T: Real>(nu: T, x: T) -> Option<T> {
    if x <= T::one() {
        return None;
    }
    let half = T::lit(0.5);
    let w = -T::one() / (x * x);
    let a = -nu * half;
    let b = (T::one() - nu) * half;
    let tol = T::epsilon();
    let mut term = T::one();
    let mut sum = T::one();
    let mut prev = T::infinity();
    for k in 0..400 {
        let kf = T::from_count(k);
        term = term * (a + kf) * (b + kf) / (kf + T::one()) * w;
        if term == T::zero() {
            break;
        }
        let mag = term.abs();
        // past the initial hump the terms must keep shrinking
        if kf > nu.abs() * half + T::one() && mag > prev {
            return None;
        }
        prev = mag;
        sum = sum + term;
        if mag <= tol * sum.abs() {
            break;
        }
        if k == 399 {
            return None;
        }
    }
    let v = (T::lit(2.0) * x).powf(nu) * sum;
    v.is_finite().then_some(v)
}

/// `∫₀^∞ t^p e^{-t²-2xt} dt` for `p >= 0`.
fn laplace_gauss<T: Real>(p: T, x: T) -> T {
    let tol = T::epsilon() * T::lit(4.0);
    exp_sinh_log(|t, ln_t| (p + T::one()) * ln_t - t * t - T::lit(2.0) * x * t, tol).0
}

/// Integral representation at negative orders plus upward recurrence.
/// Returns `(H_ν(x), H_{ν-1}(x))`.
fn integral_route<T: Real>(nu: T, x: T) -> Result<(T, T)> {
    let h_neg = |mu: T| -> Result<T> {
        // mu <= -1
        Ok(laplace_gauss(-mu - T::one(), x) / gamma(-mu)?)
    };
    if nu <= -T::one() {
        return Ok((h_neg(nu)?, h_neg(nu - T::one())?));
    }
    let steps = nu.floor().to_i64().unwrap_or(0) + 2;
    let mu0 = nu - T::lit(steps as f64);
    let mut prev = h_neg(mu0 - T::one())?;
    let mut cur = h_neg(mu0)?;
    let two = T::lit(2.0);
    for j in 0..steps {
        let mu = mu0 + T::lit(j as f64);
        let next = two * x * cur - two * mu * prev;
        prev = cur;
        cur = next;
    }
    Ok((cur, prev))
}

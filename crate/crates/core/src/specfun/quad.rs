//! Double-exponential (exp-sinh) quadrature on `[0, ∞)`.

use crate::scalar::Real;

const U_RANGE: f64 = 5.0;
const MIN_LEVEL: usize = 3;
const MAX_LEVEL: usize = 9;

/// Integrates a positive function over `[0, ∞)` under `t = exp(π/2 · sinh u)`.
///
/// `log_ft(t, ln t)` must return `ln(f(t) · t)`; working in log space keeps the
/// endpoint behaviour (`t^p` near zero, Gaussian decay at infinity) free of
/// overflow. Returns the integral and the last level-to-level change.
pub(crate) fn exp_sinh_log<T, F>(log_ft: F, rel_tol: T) -> (T, T)
where
    T: Real,
    F: Fn(T, T) -> T,
{
    let half_pi = T::FRAC_PI_2();
    let node = |u: T| -> T {
        let ln_t = half_pi * u.sinh();
        let t = ln_t.exp();
        let v = (log_ft(t, ln_t)).exp() * half_pi * u.cosh();
        if v.is_finite() {
            v
        } else {
            T::zero()
        }
    };

    let range = T::lit(U_RANGE);
    let mut h = T::lit(0.5);
    let n0 = (U_RANGE / 0.5) as i64;
    let mut sum = T::zero();
    for k in -n0..=n0 {
        sum = sum + node(T::lit(k as f64) * h);
    }
    let mut estimate = sum * h;
    let mut change = T::infinity();

    for level in 1..=MAX_LEVEL {
        h = h / T::lit(2.0);
        // new nodes are the odd multiples of the halved step
        let mut u = -range + h;
        while u < range {
            sum = sum + node(u);
            u = u + h + h;
        }
        let next = sum * h;
        change = (next - estimate).abs();
        estimate = next;
        if level >= MIN_LEVEL && change <= rel_tol * estimate.abs() {
            break;
        }
    }
    (estimate, change)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_half_line() {
        // ∫_0^∞ e^{-t²} dt = √π / 2
        let (v, _) = exp_sinh_log(|t: f64, ln_t| ln_t - t * t, 1e-15);
        assert!((v - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn algebraic_endpoint() {
        // ∫_0^∞ t^{-1/2} e^{-t} dt = Γ(1/2)
        let (v, _) = exp_sinh_log(|t: f64, ln_t| 0.5 * ln_t - t, 1e-15);
        assert!((v - std::f64::consts::PI.sqrt()).abs() < 1e-14);
    }
}

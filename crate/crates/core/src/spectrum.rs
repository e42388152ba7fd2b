//! The exact spectrum equation, its trigonometric approximation and the
//! closed-form level formula.
//!
//! The spectrum function
//!
//! ```text
//! S(a) = H_{a+1/2}(-√(2a)) + (√(2a) + (2a)^{1/6}) H_{a-1/2}(-√(2a))
//! ```
//!
//! depends on `a` only, so its roots are universal; physical parameters enter
//! only through the map `a ↦ E` of [`PhysParams::energy_of_a`].

use crate::error::{Error, Result};
use crate::model::PhysParams;
use crate::scalar::Real;
use crate::specfun::{b0_constant, hermite_real};

/// Default scan step in `a` for bracketing roots; roots are about 1 apart.
pub const DEFAULT_SCAN_STEP: f64 = 0.01;

/// Bisection stops once the bracket is this narrow (absolute, in `a`).
pub const ROOT_TOLERANCE: f64 = 1e-12;

/// The root of the spectrum function at which the wavefunction vanishes identically.
pub const EXCLUDED_ROOT: f64 = 0.5;

/// How a level was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Root of the exact spectrum equation.
    Exact,
    /// Root of the trigonometric approximation.
    TrigApprox,
    /// Half-integer rule `a_n = n + 1/2`.
    ClosedForm,
    /// Numerical shooting eigensolver.
    Oracle,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Exact => "exact",
            Provenance::TrigApprox => "trig-approx",
            Provenance::ClosedForm => "closed-form",
            Provenance::Oracle => "oracle",
        }
    }
}

/// One bound state. Indices start at 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level<T> {
    pub n: usize,
    pub a: T,
    pub energy: T,
    pub provenance: Provenance,
}

/// `√(2a) + (2a)^{1/6}`
pub fn spectrum_coefficient<T: Real>(a: T) -> T {
    let two_a = T::lit(2.0) * a;
    two_a.sqrt() + two_a.powf(T::one() / T::lit(6.0))
}

/// `(H_{a+1/2}(-√(2a)), H_{a-1/2}(-√(2a)))`
fn hermite_terms<T: Real>(a: T) -> Result<(T, T)> {
    if !(a > T::zero()) {
        return Err(Error::domain("spectrum_lhs", format!("a = {a} must be positive")));
    }
    let half = T::lit(0.5);
    let z = -(T::lit(2.0) * a).sqrt();
    Ok((hermite_real(a + half, z)?, hermite_real(a - half, z)?))
}

/// Left-hand side of the exact spectrum equation.
pub fn spectrum_lhs<T: Real>(a: T) -> Result<T> {
    let (hp, hm) = hermite_terms(a)?;
    Ok(hp + spectrum_coefficient(a) * hm)
}

/// Size of the two terms of [`spectrum_lhs`], for relative root tests.
pub fn spectrum_scale<T: Real>(a: T) -> Result<T> {
    let (hp, hm) = hermite_terms(a)?;
    Ok(hp.abs() + (spectrum_coefficient(a) * hm).abs())
}

/// Roots of the spectrum function found by [`find_roots`].
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralRoots<T> {
    /// The discarded smallest root `a = 1/2` and the function value there.
    pub excluded: (T, T),
    /// Physical roots in increasing order; `roots[0]` is level `n = 1`.
    pub roots: Vec<T>,
}

fn bisect<T: Real, F: Fn(T) -> Result<T>>(f: F, mut lo: T, mut f_lo: T, mut hi: T, tol: T) -> Result<T> {
    while hi - lo > tol {
        let mid = lo + (hi - lo) * T::lit(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid)?;
        if f_mid == T::zero() {
            return Ok(mid);
        }
        if (f_mid < T::zero()) == (f_lo < T::zero()) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo + (hi - lo) * T::lit(0.5))
}

/// Scans `S(a)` on `(1/2 + step, a_max]`, brackets sign changes and bisects each
/// bracket to `|Δa| <= 1e-12`. The excluded root `a = 1/2` is reported separately.
pub fn find_roots<T: Real>(a_max: T, scan_step: T) -> Result<SpectralRoots<T>> {
    if !(scan_step > T::zero() && scan_step <= T::lit(0.1)) {
        return Err(Error::domain(
            "find_roots",
            format!("scan step {scan_step} outside (0, 0.1]"),
        ));
    }
    let half = T::lit(EXCLUDED_ROOT);
    let excluded = (half, spectrum_lhs(half)?);
    let tol = T::lit(ROOT_TOLERANCE).max(T::lit(8.0) * T::epsilon() * a_max.abs());

    let mut roots = Vec::new();
    let mut last: Option<(T, T)> = None;
    let mut k = 1usize;
    loop {
        let a = half + T::from_count(k) * scan_step;
        if a > a_max {
            break;
        }
        let f = spectrum_lhs(a)?;
        if f == T::zero() {
            roots.push(a);
            last = None;
        } else {
            if let Some((a_prev, f_prev)) = last {
                if (f < T::zero()) != (f_prev < T::zero()) {
                    roots.push(bisect(spectrum_lhs, a_prev, f_prev, a, tol)?);
                }
            }
            last = Some((a, f));
        }
        k += 1;
    }
    Ok(SpectralRoots { excluded, roots })
}

fn check_n_max(op: &'static str, n_max: usize) -> Result<()> {
    if n_max == 0 {
        return Err(Error::domain(op, "n_max must be at least 1"));
    }
    Ok(())
}

/// Levels from the roots of the exact spectrum equation.
pub fn exact_levels<T: Real>(p: &PhysParams<T>, n_max: usize) -> Result<Vec<Level<T>>> {
    p.require_solvable("exact_levels")?;
    check_n_max("exact_levels", n_max)?;
    let a_max = T::from_count(n_max) + T::one();
    let found = find_roots(a_max, T::lit(DEFAULT_SCAN_STEP))?;
    if found.roots.len() < n_max {
        return Err(Error::BracketFailure {
            level: found.roots.len() + 1,
            reason: format!("only {} roots below a = {a_max}", found.roots.len()),
        });
    }
    found
        .roots
        .iter()
        .take(n_max)
        .enumerate()
        .map(|(i, &a)| {
            Ok(Level {
                n: i + 1,
                a,
                energy: p.energy_of_a(a)?,
                provenance: Provenance::Exact,
            })
        })
        .collect()
}

/// `F(a) = 1 + (√(2a) + (2a)^{1/6}) H_{a-1/2}(-√(2a)) / H_{a+1/2}(-√(2a))`.
pub fn f_ratio<T: Real>(a: T) -> Result<T> {
    let (hp, hm) = hermite_terms(a)?;
    let num = spectrum_coefficient(a) * hm;
    if hp == T::zero() || (hp.abs() <= T::epsilon() * num.abs()) {
        return Err(Error::Pole {
            what: "f_ratio",
            at: a.as_f64(),
        });
    }
    Ok(T::one() + num / hp)
}

/// `κ = 6 B₀ 2^{-1/3}`
pub fn trig_kappa<T: Real>() -> T {
    T::lit(6.0) * b0_constant::<T>() / T::lit(2.0).cbrt()
}

/// Trigonometric approximation of [`f_ratio`]:
///
/// ```text
/// [sin(πa - π/3) - 6B₀ 2^{-1/3} sin(πa + π/3)] / [sin(πa - π/3) + 6B₀ a^{1/3} sin(πa + π/3)]
/// ```
pub fn f_ratio_approx<T: Real>(a: T) -> Result<T> {
    if !(a > T::zero()) {
        return Err(Error::domain("f_ratio_approx", format!("a = {a} must be positive")));
    }
    let third = T::FRAC_PI_3();
    let s_minus = (T::PI() * a - third).sin();
    let s_plus = (T::PI() * a + third).sin();
    let six_b0 = T::lit(6.0) * b0_constant::<T>();
    let num = s_minus - trig_kappa::<T>() * s_plus;
    let den_tail = six_b0 * a.cbrt() * s_plus;
    let den = s_minus + den_tail;
    if den.abs() <= T::lit(4.0) * T::epsilon() * (s_minus.abs() + den_tail.abs()) {
        return Err(Error::Pole {
            what: "f_ratio_approx",
            at: a.as_f64(),
        });
    }
    Ok(num / den)
}

/// `sin(πa - π/3) - κ sin(πa + π/3)`, the trigonometric spectrum function.
pub fn trig_lhs<T: Real>(a: T, kappa: T) -> T {
    let third = T::FRAC_PI_3();
    (T::PI() * a - third).sin() - kappa * (T::PI() * a + third).sin()
}

/// Roots `a_n ∈ (n, n+1)` of [`trig_lhs`] for a given `κ > -1`.
///
/// Expanding the sines gives `tan(πa) = √3 (1+κ)/(1-κ)`, so
/// `a_n = n + θ/π` with `θ = atan2(√3(1+κ), 1-κ) ∈ (0, π)`.
pub fn trig_roots_with_kappa<T: Real>(kappa: T, n_max: usize) -> Vec<T> {
    let theta = (T::lit(3.0).sqrt() * (T::one() + kappa)).atan2(T::one() - kappa);
    let offset = theta / T::PI();
    (1..=n_max).map(|n| T::from_count(n) + offset).collect()
}

/// Roots of the trigonometric spectrum equation with `κ = 6B₀2^{-1/3}`.
pub fn trig_roots<T: Real>(n_max: usize) -> Vec<T> {
    trig_roots_with_kappa(trig_kappa::<T>(), n_max)
}

/// Levels from the trigonometric roots.
pub fn trig_levels<T: Real>(p: &PhysParams<T>, n_max: usize) -> Result<Vec<Level<T>>> {
    p.require_solvable("trig_levels")?;
    check_n_max("trig_levels", n_max)?;
    trig_roots::<T>(n_max)
        .into_iter()
        .enumerate()
        .map(|(i, a)| {
            Ok(Level {
                n: i + 1,
                a,
                energy: p.energy_of_a(a)?,
                provenance: Provenance::TrigApprox,
            })
        })
        .collect()
}

/// `E_n = V0 - 32 m³ V1⁴ / (ħ⁶ (2n+1)^{2/3})`, `n = 1..=n_max`.
pub fn closed_form_levels<T: Real>(p: &PhysParams<T>, n_max: usize) -> Result<Vec<Level<T>>> {
    p.require_solvable("closed_form_levels")?;
    check_n_max("closed_form_levels", n_max)?;
    let h2 = p.hbar * p.hbar;
    let scale = T::lit(32.0) * p.mass.powi(3) * p.v1.powi(4) / (h2 * h2 * h2);
    Ok((1..=n_max)
        .map(|n| {
            let two_n1 = T::from_count(2 * n + 1);
            Level {
                n,
                a: T::from_count(n) + T::lit(0.5),
                energy: p.v0 - scale / (two_n1 * two_n1).cbrt(),
                provenance: Provenance::ClosedForm,
            }
        })
        .collect())
}

/// Relative error `|E_closed - E_exact| / |E_exact|` per level.
pub fn error_report<T: Real>(p: &PhysParams<T>, n_max: usize) -> Result<Vec<(usize, T)>> {
    let exact = exact_levels(p, n_max)?;
    let closed = closed_form_levels(p, n_max)?;
    Ok(exact
        .iter()
        .zip(&closed)
        .map(|(e, c)| (e.n, ((c.energy - e.energy) / e.energy).abs()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    // Explicit Hermite polynomials, independent of the Kummer machinery.
    fn h_poly(n: usize, z: f64) -> f64 {
        match n {
            0 => 1.0,
            1 => 2.0 * z,
            2 => 4.0 * z * z - 2.0,
            3 => 8.0 * z.powi(3) - 12.0 * z,
            4 => 16.0 * z.powi(4) - 48.0 * z * z + 12.0,
            _ => unreachable!(),
        }
    }

    fn lhs_poly(n: usize) -> f64 {
        // a = n - 1/2, orders n and n - 1
        let a = n as f64 - 0.5;
        let z = -(2.0 * a).sqrt();
        h_poly(n, z) + ((2.0 * a).sqrt() + (2.0 * a).powf(1.0 / 6.0)) * h_poly(n - 1, z)
    }

    #[test]
    fn excluded_root_is_exact_zero() {
        assert!(spectrum_lhs(0.5_f64).unwrap().abs() <= 1e-12);
    }

    #[test]
    fn half_integer_samples() {
        for (n, a) in [(2, 1.5), (3, 2.5), (4, 3.5)] {
            let want = lhs_poly(n);
            let got = spectrum_lhs(a).unwrap();
            assert!(((got - want) / want).abs() < 1e-10, "a = {a}: {got} vs {want}");
        }
        assert!((spectrum_lhs(1.5_f64).unwrap() + 0.160_167_646_103_808_2).abs() < 1e-12);
        assert!((spectrum_lhs(2.5_f64).unwrap() - 1.177_208_973_215_053_7).abs() < 1e-11);
        assert!((spectrum_lhs(3.5_f64).unwrap() + 9.009_451_241_010_747).abs() < 1e-10);
    }

    #[test]
    fn first_root_near_three_halves() {
        let r = find_roots(2.0_f64, 0.01).unwrap();
        assert_eq!(r.roots.len(), 1);
        assert!((r.roots[0] - 1.503_822_478_138_044).abs() < 1e-11);
        assert_eq!(r.excluded.0, 0.5);
        assert!(r.excluded.1.abs() < 1e-12);
    }

    #[test]
    fn scan_rejects_bad_step() {
        assert!(find_roots(3.0_f64, 0.0).is_err());
        assert!(find_roots(3.0_f64, 0.2).is_err());
        assert!(find_roots(0.9_f64, 0.05).unwrap().roots.is_empty());
    }

    #[test]
    fn ratio_identity_and_values() {
        assert!(f_ratio(0.5_f64).unwrap().abs() < 1e-13);
        assert!((f_ratio(1.5_f64).unwrap() + 0.016_016_764_610_380_82).abs() < 1e-12);
        for i in 0..200 {
            let a = 0.6 + 7.4 * i as f64 / 200.0;
            if let Ok(f) = f_ratio(a) {
                let hp = hermite_real(a + 0.5, -(2.0 * a).sqrt()).unwrap();
                let lhs = spectrum_lhs(a).unwrap();
                let scale = spectrum_scale(a).unwrap();
                assert!((f * hp - lhs).abs() <= 1e-9 * scale, "a = {a}");
            }
        }
    }

    #[test]
    fn kappa_value() {
        assert!((trig_kappa::<f64>() - 1.088_735_809_527_830_1).abs() < 1e-12);
    }

    #[test]
    fn trig_roots_degenerate_to_half_integers() {
        let roots = trig_roots_with_kappa(1.0_f64, 8);
        for (i, r) in roots.iter().enumerate() {
            assert_eq!(*r, (i + 1) as f64 + 0.5);
        }
    }

    #[test]
    fn trig_roots_solve_the_equation() {
        let k = trig_kappa::<f64>();
        for (i, &r) in trig_roots::<f64>(10).iter().enumerate() {
            assert!(trig_lhs(r, k).abs() < 1e-12);
            assert!((r - (i + 1) as f64 - 0.508).abs() < 0.01);
        }
    }

    #[test]
    fn closed_form_values() {
        let p = PhysParams::<f64>::default();
        let lv = closed_form_levels(&p, 2).unwrap();
        assert!((lv[0].energy + 15.384_0).abs() < 1e-3);
        assert!((lv[0].energy + 32.0 / 9f64.cbrt()).abs() < 1e-12);
        assert!((lv[1].energy + 10.944_0).abs() < 1e-3);
        assert_eq!(lv[0].provenance, Provenance::ClosedForm);
    }

    #[test]
    fn zero_levels_is_an_error() {
        let p = PhysParams::<f64>::default();
        assert!(exact_levels(&p, 0).is_err());
        assert!(closed_form_levels(&p, 0).is_err());
    }

    #[test]
    fn levels_need_the_solvable_member() {
        let p = PhysParams::<f64>::default().with_v2(0.4);
        assert!(exact_levels(&p, 2).is_err());
        assert!(closed_form_levels(&p, 2).is_err());
        assert!(trig_levels(&p, 2).is_err());
    }
}

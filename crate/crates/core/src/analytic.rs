//! Closed-form solutions of the Schrödinger equation built from pairs of Hermite
//! functions, tabulation into wave tables, normalisation and the direct
//! residual check against the differential equation.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::model::{Branch, PhysParams};
use crate::scalar::Real;
use crate::specfun::{hermite_h, hermite_pair, AxisValue};
use crate::spectrum::{spectrum_lhs, spectrum_scale, EXCLUDED_ROOT};

/// Closest approach to the origin at which the closed form is evaluated.
///
/// Below this the `x^{-1/4}` prefactor multiplies a bracket that cancels to
/// roughly machine precision.
pub const ORIGIN_CUTOFF: f64 = 1e-8;

/// Points of a bound-state table below [`ORIGIN_CUTOFF`] are extrapolated from
/// this abscissa with the regular `x^{5/4}` behaviour.
pub const EXTRAPOLATION_ANCHOR: f64 = 1e-3;

/// Relative tolerance on `|S(a)| / scale` accepted by [`bound_wavefunction`].
pub const ROOT_CHECK_TOLERANCE: f64 = 1e-8;

/// [`normalize`] requires both end values to be at most this fraction of the peak.
pub const DECAY_THRESHOLD: f64 = 1e-2;

/// Where a wave table came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WaveSource {
    Analytic,
    Oracle,
}

impl WaveSource {
    pub fn as_str(self) -> &'static str {
        match self {
            WaveSource::Analytic => "analytic",
            WaveSource::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSample<T> {
    pub x: T,
    pub psi: Complex<T>,
}

/// Tabulated wavefunction on a strictly increasing positive grid.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveTable<T> {
    samples: Vec<WaveSample<T>>,
    pub source: WaveSource,
    pub normalized: bool,
    /// `‖ψ‖` divided out by [`normalize`].
    pub norm: Option<T>,
}

impl<T: Real> WaveTable<T> {
    pub fn new(samples: Vec<WaveSample<T>>, source: WaveSource) -> Result<Self> {
        check_grid(samples.iter().map(|s| s.x))?;
        if samples.iter().any(|s| !(s.psi.re.is_finite() && s.psi.im.is_finite())) {
            return Err(Error::domain("WaveTable", "non-finite wavefunction value"));
        }
        Ok(WaveTable {
            samples,
            source,
            normalized: false,
            norm: None,
        })
    }

    pub fn from_real(xs: &[T], psi: &[T], source: WaveSource) -> Result<Self> {
        if xs.len() != psi.len() {
            return Err(Error::domain("WaveTable", "length mismatch"));
        }
        let samples = xs
            .iter()
            .zip(psi)
            .map(|(&x, &v)| WaveSample {
                x,
                psi: Complex::new(v, T::zero()),
            })
            .collect();
        WaveTable::new(samples, source)
    }

    pub fn samples(&self) -> &[WaveSample<T>] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn xs(&self) -> Vec<T> {
        self.samples.iter().map(|s| s.x).collect()
    }

    /// Real parts of `ψ`.
    pub fn real_values(&self) -> Vec<T> {
        self.samples.iter().map(|s| s.psi.re).collect()
    }

    pub fn max_abs(&self) -> T {
        self.samples.iter().map(|s| s.psi.norm()).fold(T::zero(), T::max)
    }

    /// Sign changes of `Re ψ` between consecutive samples, ignoring values below
    /// `1e-9` of the peak (numerical dust near the ends).
    pub fn sign_changes(&self) -> usize {
        let floor = self.max_abs() * T::lit(1e-9);
        let mut count = 0;
        let mut last: Option<bool> = None;
        for s in &self.samples {
            let v = s.psi.re;
            if v.abs() <= floor {
                continue;
            }
            let neg = v < T::zero();
            if let Some(prev) = last {
                if prev != neg {
                    count += 1;
                }
            }
            last = Some(neg);
        }
        count
    }

    /// Multiplies every sample by `factor`.
    pub fn scaled(&self, factor: T) -> Self {
        let mut out = self.clone();
        for s in &mut out.samples {
            s.psi = s.psi * factor;
        }
        out
    }
}

fn check_grid<T: Real, I: Iterator<Item = T>>(xs: I) -> Result<()> {
    let mut prev: Option<T> = None;
    for x in xs {
        if !(x > T::zero()) || !x.is_finite() {
            return Err(Error::domain("grid", format!("grid point {x} must be positive")));
        }
        if let Some(p) = prev {
            if !(x > p) {
                return Err(Error::domain("grid", "grid must be strictly increasing"));
            }
        }
        prev = Some(x);
    }
    Ok(())
}

/// `n` equally spaced points on `[x_min, x_max]`.
pub fn uniform_grid<T: Real>(x_min: T, x_max: T, n: usize) -> Result<Vec<T>> {
    if n < 2 || !(x_min < x_max) {
        return Err(Error::domain(
            "uniform_grid",
            "need x_min < x_max and at least 2 points",
        ));
    }
    let step = (x_max - x_min) / T::from_count(n - 1);
    Ok((0..n)
        .map(|i| {
            if i + 1 == n {
                x_max
            } else {
                x_min + step * T::from_count(i)
            }
        })
        .collect())
}

/// `n` logarithmically spaced points on `[x_min, x_max]`.
pub fn log_grid<T: Real>(x_min: T, x_max: T, n: usize) -> Result<Vec<T>> {
    if !(x_min > T::zero()) {
        return Err(Error::domain("log_grid", "x_min must be positive"));
    }
    let ln = uniform_grid(x_min.ln(), x_max.ln(), n)?;
    let mut out: Vec<T> = ln.into_iter().map(T::exp).collect();
    out[0] = x_min;
    let last = out.len() - 1;
    out[last] = x_max;
    Ok(out)
}

/// `n` points equally spaced in `s = ln x + x/x_c`: geometric below `x_c`,
/// nearly uniform above it.
pub fn log_linear_grid<T: Real>(x_min: T, x_max: T, n: usize, x_c: T) -> Result<Vec<T>> {
    if !(x_min > T::zero()) || !(x_c > T::zero()) {
        return Err(Error::domain("log_linear_grid", "x_min and x_c must be positive"));
    }
    let s = |x: T| x.ln() + x / x_c;
    let targets = uniform_grid(s(x_min), s(x_max), n)?;
    let last = targets.len() - 1;
    let mut out = Vec::with_capacity(n);
    let mut x = x_min;
    for (i, t) in targets.into_iter().enumerate() {
        if i == 0 || i == last {
            out.push(if i == 0 { x_min } else { x_max });
            continue;
        }
        // s is increasing and concave, so Newton from the previous node approaches from below
        for _ in 0..50 {
            let step = (s(x) - t) / (x.recip() + x_c.recip());
            x = x - step;
            if step.abs() <= T::epsilon() * x {
                break;
            }
        }
        out.push(x);
    }
    Ok(out)
}

fn check_analytic_domain<T: Real>(p: &PhysParams<T>, x: T) -> Result<()> {
    p.require_solvable("fundamental_solution")?;
    if !(x >= T::lit(ORIGIN_CUTOFF)) || !x.is_finite() {
        return Err(Error::domain(
            "fundamental_solution",
            format!("x = {x} below the evaluation cutoff {ORIGIN_CUTOFF:e}"),
        ));
    }
    Ok(())
}

/// One of the two fundamental solutions,
///
/// ```text
/// ψ(x) = x^{-1/4} e^{-y²/2} [ H_{a+1/2}(y) + (√(2a) + A (2a)^{1/6}) (1 + εħ²√x/(4mV1)) H_{a-1/2}(y) ]
/// y = √(-εx) - √(2a)
/// ```
///
/// with `a`, `ε` from the energy and the branch. On the minus branch everything is
/// real. On the plus branch `ε > 0`, `a < 0`, and principal roots make
/// `y = i(√(εx) - √(2|a|))` purely imaginary; `(2a)^{1/6} = |2a|^{1/6} e^{iπ/6}`.
pub fn fundamental_solution<T: Real>(p: &PhysParams<T>, energy: T, branch: Branch, x: T) -> Result<Complex<T>> {
    check_analytic_domain(p, x)?;
    let eps = p.epsilon_of_energy(energy, branch)?;
    let a = p.a_of_energy(energy, branch)?;
    let half = T::lit(0.5);
    let two_a = T::lit(2.0) * a;
    let prefactor = x.powf(-T::lit(0.25));
    let linear = T::one() + eps * p.hbar * p.hbar * x.sqrt() / (T::lit(4.0) * p.mass * p.v1);

    match branch {
        Branch::Minus => {
            let y = (-eps * x).sqrt() - two_a.sqrt();
            let (h_hi, h_lo) = hermite_pair(a + half, y)?;
            let coef = (two_a.sqrt() + two_a.powf(T::one() / T::lit(6.0))) * linear;
            let v = prefactor * (-y * y * half).exp() * (h_hi + coef * h_lo);
            Ok(Complex::new(v, T::zero()))
        }
        Branch::Plus => {
            let mag = -two_a;
            let s = (eps * x).sqrt() - mag.sqrt();
            let y = AxisValue::Imaginary(s);
            let h_hi = hermite_h(a + half, y)?;
            let h_lo = hermite_h(a - half, y)?;
            let sqrt_2a = Complex::new(T::zero(), mag.sqrt());
            let sixth = Complex::from_polar(mag.powf(T::one() / T::lit(6.0)), T::PI() / T::lit(6.0));
            let coef = (sqrt_2a + branch.phase::<T>() * sixth) * linear;
            let gauss = (s * s * half).exp();
            Ok((h_hi + coef * h_lo) * (prefactor * gauss))
        }
    }
}

/// `c1 ψ_F⁻ + c2 ψ_F⁺`.
pub fn general_solution<T: Real>(
    p: &PhysParams<T>,
    energy: T,
    c1: Complex<T>,
    c2: Complex<T>,
    x: T,
) -> Result<Complex<T>> {
    let zero = Complex::new(T::zero(), T::zero());
    let minus = if c1 == zero {
        check_analytic_domain(p, x)?;
        zero
    } else {
        c1 * fundamental_solution(p, energy, Branch::Minus, x)?
    };
    let plus = if c2 == zero {
        zero
    } else {
        c2 * fundamental_solution(p, energy, Branch::Plus, x)?
    };
    Ok(minus + plus)
}

/// Tabulates a minus-branch solution at an arbitrary energy.
pub fn tabulate<T: Real>(p: &PhysParams<T>, energy: T, branch: Branch, grid: &[T]) -> Result<WaveTable<T>> {
    check_grid(grid.iter().copied())?;
    let samples = grid
        .iter()
        .map(|&x| {
            Ok(WaveSample {
                x,
                psi: fundamental_solution(p, energy, branch, x)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    WaveTable::new(samples, WaveSource::Analytic)
}

/// Bound state at a root `a_n > 1/2` of the spectrum equation (non-normalised).
pub fn bound_wavefunction<T: Real>(p: &PhysParams<T>, a_n: T, grid: &[T]) -> Result<WaveTable<T>> {
    p.require_solvable("bound_wavefunction")?;
    if !(a_n > T::lit(EXCLUDED_ROOT)) {
        return Err(Error::domain(
            "bound_wavefunction",
            format!("a = {a_n} must exceed the excluded root 1/2"),
        ));
    }
    let residual = spectrum_lhs(a_n)?.abs() / spectrum_scale(a_n)?;
    if !(residual <= T::lit(ROOT_CHECK_TOLERANCE)) {
        return Err(Error::NotARoot {
            a: a_n.as_f64(),
            residual: residual.as_f64(),
        });
    }
    check_grid(grid.iter().copied())?;
    let energy = p.energy_of_a(a_n)?;
    let cutoff = T::lit(ORIGIN_CUTOFF);
    let anchor = T::lit(EXTRAPOLATION_ANCHOR);
    let mut anchor_value: Option<T> = None;
    let mut samples = Vec::with_capacity(grid.len());
    for &x in grid {
        let v = if x < cutoff {
            let base = match anchor_value {
                Some(v) => v,
                None => {
                    let v = fundamental_solution(p, energy, Branch::Minus, anchor)?.re;
                    anchor_value = Some(v);
                    v
                }
            };
            base * (x / anchor).powf(T::lit(1.25))
        } else {
            fundamental_solution(p, energy, Branch::Minus, x)?.re
        };
        samples.push(WaveSample {
            x,
            psi: Complex::new(v, T::zero()),
        });
    }
    WaveTable::new(samples, WaveSource::Analytic)
}

/// `∫ |ψ|² dx` by the trapezoid rule on the table's grid.
pub fn norm_squared<T: Real>(w: &WaveTable<T>) -> T {
    let s = w.samples();
    s.windows(2).fold(T::zero(), |acc, pair| {
        let dx = pair[1].x - pair[0].x;
        acc + dx * (pair[0].psi.norm_sqr() + pair[1].psi.norm_sqr()) * T::lit(0.5)
    })
}

/// `∫ conj(ψ₁) ψ₂ dx` on a shared grid (trapezoid rule).
pub fn inner_product<T: Real>(w1: &WaveTable<T>, w2: &WaveTable<T>) -> Result<Complex<T>> {
    if w1.len() != w2.len() || w1.samples().iter().zip(w2.samples()).any(|(a, b)| a.x != b.x) {
        return Err(Error::domain("inner_product", "tables must share one grid"));
    }
    let f: Vec<Complex<T>> = w1
        .samples()
        .iter()
        .zip(w2.samples())
        .map(|(a, b)| a.psi.conj() * b.psi)
        .collect();
    let xs = w1.xs();
    let mut acc = Complex::new(T::zero(), T::zero());
    for i in 1..f.len() {
        acc = acc + (f[i] + f[i - 1]) * ((xs[i] - xs[i - 1]) * T::lit(0.5));
    }
    Ok(acc)
}

/// `|⟨ψ₁, ψ₂⟩| / (‖ψ₁‖ ‖ψ₂‖)`
pub fn overlap<T: Real>(w1: &WaveTable<T>, w2: &WaveTable<T>) -> Result<T> {
    let ip = inner_product(w1, w2)?;
    let n = (norm_squared(w1) * norm_squared(w2)).sqrt();
    if n == T::zero() {
        return Err(Error::DegenerateWavefunction);
    }
    Ok(ip.norm() / n)
}

/// Scales the table to unit `∫|ψ|² dx`.
///
/// Both end values must be below [`DECAY_THRESHOLD`] times the peak.
pub fn normalize<T: Real>(w: &WaveTable<T>) -> Result<WaveTable<T>> {
    let peak = w.max_abs();
    if w.len() < 2 || peak == T::zero() {
        return Err(Error::DegenerateWavefunction);
    }
    let first = w.samples()[0].psi.norm();
    let last = w.samples()[w.len() - 1].psi.norm();
    let tail = first.max(last) / peak;
    if tail > T::lit(DECAY_THRESHOLD) {
        return Err(Error::InsufficientDecay {
            tail: tail.as_f64(),
            threshold: DECAY_THRESHOLD,
        });
    }
    let norm = norm_squared(w).sqrt();
    let mut out = w.scaled(T::one() / norm);
    out.normalized = true;
    out.norm = Some(norm);
    Ok(out)
}

/// Per-point terms of `ψ'' + k(E - V)ψ` at the interior grid points, `k = 2m/ħ²`,
/// as `(|residual|, |ψ''|, k|E - V||ψ|)`. `ψ''` is the three-point central
/// difference (non-uniform spacing allowed).
fn residual_terms<T: Real>(p: &PhysParams<T>, energy: T, w: &WaveTable<T>) -> Result<Vec<(T, T, T)>> {
    if w.len() < 5 {
        return Err(Error::GridTooCoarse(format!("{} points, need at least 5", w.len())));
    }
    if w.max_abs() == T::zero() {
        return Err(Error::DegenerateWavefunction);
    }
    let k = p.kinetic_scale();
    let s = w.samples();
    let two = T::lit(2.0);
    let mut out = Vec::with_capacity(s.len() - 2);
    for i in 1..s.len() - 1 {
        let h1 = s[i].x - s[i - 1].x;
        let h2 = s[i + 1].x - s[i].x;
        let d2 = (s[i + 1].psi * h1 - s[i].psi * (h1 + h2) + s[i - 1].psi * h2) * (two / (h1 * h2 * (h1 + h2)));
        let coupling = k * (energy - p.potential(s[i].x)?);
        let r = d2 + s[i].psi * coupling;
        out.push((r.norm(), d2.norm(), coupling.abs() * s[i].psi.norm()));
    }
    Ok(out)
}

/// Relative residual of `ψ'' + k(E - V)ψ = 0` on the table, in the maximum norm:
///
/// ```text
/// max|ψ'' + k(E - V)ψ| / max(max|ψ''|, max k|E - V||ψ|)
/// ```
///
/// Decreases as the square of the step until the rounding floor of the
/// tabulated values is reached.
pub fn schrodinger_residual<T: Real>(p: &PhysParams<T>, energy: T, w: &WaveTable<T>) -> Result<T> {
    let terms = residual_terms(p, energy, w)?;
    let (mut r, mut scale) = (T::zero(), T::zero());
    for (ri, d2, cp) in terms {
        r = r.max(ri);
        scale = scale.max(d2).max(cp);
    }
    if scale == T::zero() {
        return Err(Error::DegenerateWavefunction);
    }
    Ok(r / scale)
}

/// Largest pointwise ratio `|ψ'' + k(E - V)ψ| / max(|ψ''|, k|E - V||ψ|)`.
///
/// Both scales vanish at classical turning points and at nodes, where the ratio
/// tends to one whatever the step; meaningful only on stretches free of both.
/// Points where both scales are exactly zero are skipped.
pub fn pointwise_residual<T: Real>(p: &PhysParams<T>, energy: T, w: &WaveTable<T>) -> Result<T> {
    let terms = residual_terms(p, energy, w)?;
    let mut worst = T::zero();
    for (r, d2, cp) in terms {
        let scale = d2.max(cp);
        if scale > T::zero() {
            worst = worst.max(r / scale);
        }
    }
    Ok(worst)
}

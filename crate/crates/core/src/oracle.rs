//! Numerov shooting eigensolver for the radial equation, independent of the
//! Hermite-function machinery.
//!
//! The equation `ψ'' = k(V - E)ψ`, `k = 2m/ħ²`, is integrated on a logarithmic
//! grid `x = e^u` with `ψ = √x φ(u)`, which turns it into
//!
//! ```text
//! φ'' = (x² k(V - E) + 1/4) φ
//! ```
//!
//! whose coefficient stays bounded at the origin. Initial data come from the
//! Frobenius series of the regular solution `x^{5/4}(1 + α√x + …)`. Levels are
//! bracketed by node count and refined by bisection on the mismatch between the
//! terminal log-derivative and the WKB decay rate.

use crate::analytic::{normalize, WaveSource, WaveTable};
use crate::error::{Error, Result};
use crate::model::{Branch, PhysParams};
use crate::scalar::Real;
use crate::spectrum::{Level, Provenance};

/// Smallest accepted step count.
pub const MIN_STEPS: usize = 10_000;

/// Largest accepted change between `N` and `2N` steps: relative for eigenvalues,
/// in radians for the terminal phase angle.
pub const STEP_CHECK_LIMIT: f64 = 1e-6;

/// Rescaling threshold for the integrated solution.
const RESCALE_ABOVE: f64 = 1e150;

/// Frobenius terms beyond this count mean the start point is too far out.
const MAX_SERIES_TERMS: usize = 80;

/// Passes of the `x_end` ↔ eigenvalue fixed point in automatic-domain mode.
const MAX_DOMAIN_PASSES: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingConfig<T> {
    /// Inner start point of the integration.
    pub x_start: T,
    /// Outer boundary; `None` ties it to `end_factor` times the outer turning point.
    pub x_end: Option<T>,
    pub steps: usize,
    /// Relative tolerance of the eigenvalue bisection.
    pub energy_tol: T,
    pub max_bisections: usize,
    pub end_factor: T,
}

impl<T: Real> Default for ShootingConfig<T> {
    fn default() -> Self {
        ShootingConfig {
            x_start: T::lit(1e-4),
            x_end: None,
            steps: 20_000,
            energy_tol: T::lit(1e-10),
            max_bisections: 200,
            end_factor: T::lit(3.0),
        }
    }
}

impl<T: Real> ShootingConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if self.steps < MIN_STEPS {
            return Err(Error::domain(
                "shooting_config",
                format!("steps = {} below the minimum {MIN_STEPS}", self.steps),
            ));
        }
        if !(self.x_start > T::zero()) || !self.x_start.is_finite() {
            return Err(Error::domain("shooting_config", "x_start must be positive"));
        }
        if let Some(end) = self.x_end {
            if !(end > self.x_start) || !end.is_finite() {
                return Err(Error::domain("shooting_config", "need x_start < x_end"));
            }
        }
        if !(self.energy_tol > T::zero()) || !(self.end_factor > T::one()) {
            return Err(Error::domain(
                "shooting_config",
                "energy_tol must be positive and end_factor above one",
            ));
        }
        if self.max_bisections == 0 {
            return Err(Error::domain("shooting_config", "max_bisections must be positive"));
        }
        Ok(())
    }
}

/// Roots `s` of the indicial equation `s(s - 1) = k · 5ħ²/(32m)`.
pub fn indicial_exponents<T: Real>(p: &PhysParams<T>) -> (T, T) {
    let c = p.kinetic_scale() * p.barrier_coefficient();
    let disc = (T::one() + T::lit(4.0) * c).sqrt();
    let half = T::lit(0.5);
    (half * (T::one() + disc), half * (T::one() - disc))
}

/// Coefficients `c_j` of `ψ = x^{5/4} Σ c_j x^{j/2}`, `c_0 = 1`, truncated once the
/// terms at `x0` fall below `tol` relative to the sum.
fn frobenius_coefficients<T: Real>(p: &PhysParams<T>, energy: T, x0: T, tol: T) -> Result<Vec<T>> {
    let k = p.kinetic_scale();
    let k1 = k * p.v1;
    let k2 = k * p.v2;
    let k3 = k * p.sqrt_coefficient();
    let e = k * (energy - p.v0);
    let r = x0.sqrt();
    let mut c = vec![T::one()];
    let mut power = T::one();
    let mut sum = T::one();
    let mut small = 0;
    for j in 1..MAX_SERIES_TERMS {
        let q = T::from_count(j) * T::lit(0.5);
        let at = |i: usize| if j >= i { c[j - i] } else { T::zero() };
        let rhs = k1 * at(1) + k2 * at(2) + k3 * at(3) - e * at(4);
        let cj = rhs / (q * (q + T::lit(1.5)));
        c.push(cj);
        power = power * r;
        let term = (cj * power).abs();
        sum = sum + cj * power;
        // the recurrence reaches back four terms, so ask for several small ones in a row
        small = if term <= tol * sum.abs() { small + 1 } else { 0 };
        if small >= 4 {
            return Ok(c);
        }
    }
    Err(Error::CutoffTooLarge {
        x0: x0.as_f64(),
        estimate: (c[c.len() - 1] * power).abs().as_f64(),
    })
}

fn series_value<T: Real>(c: &[T], x: T) -> (T, T) {
    // ψ = x^{5/4} S(√x), ψ' = x^{1/4}(5/4 S + √x S'(√x)/2)
    let r = x.sqrt();
    let (mut s, mut ds) = (T::zero(), T::zero());
    for (j, &cj) in c.iter().enumerate().rev() {
        s = s * r + cj;
        if j > 0 {
            ds = ds * r + cj * T::from_count(j);
        }
    }
    // ds now holds Σ j c_j r^{j-1}
    let lead = x.powf(T::lit(1.25));
    let psi = lead * s;
    let dpsi = x.powf(T::lit(0.25)) * (T::lit(1.25) * s + r * ds * T::lit(0.5));
    (psi, dpsi)
}

/// Value and derivative of the regular solution at `x0` from its Frobenius series,
/// normalised so that `ψ ~ x^{5/4}` at the origin.
pub fn frobenius_boundary<T: Real>(p: &PhysParams<T>, energy: T, x0: T) -> Result<(T, T)> {
    p.validate()?;
    if !(x0 > T::zero()) || !x0.is_finite() {
        return Err(Error::domain("frobenius_boundary", "x0 must be positive"));
    }
    let c = frobenius_coefficients(p, energy, x0, T::epsilon())?;
    Ok(series_value(&c, x0))
}

/// Log grid with the per-node parts of the Numerov coefficient, `F = A - E·B`.
struct Grid<T> {
    h: T,
    xs: Vec<T>,
    a: Vec<T>,
    b: Vec<T>,
}

impl<T: Real> Grid<T> {
    /// `steps` intervals on `[x_start, x_end]` plus one node beyond `x_end`
    /// for the terminal derivative.
    fn new(p: &PhysParams<T>, x_start: T, x_end: T, steps: usize) -> Result<Self> {
        let u0 = x_start.ln();
        let h = (x_end.ln() - u0) / T::from_count(steps);
        let k = p.kinetic_scale();
        let quarter = T::lit(0.25);
        let mut xs = Vec::with_capacity(steps + 2);
        let mut a = Vec::with_capacity(steps + 2);
        let mut b = Vec::with_capacity(steps + 2);
        for i in 0..steps + 2 {
            let x = if i == 0 {
                x_start
            } else if i == steps {
                x_end
            } else {
                (u0 + h * T::from_count(i)).exp()
            };
            let x2k = x * x * k;
            a.push(x2k * p.potential(x)? + quarter);
            b.push(x2k);
            xs.push(x);
        }
        Ok(Grid { h, xs, a, b })
    }

    fn steps(&self) -> usize {
        self.xs.len() - 2
    }
}

/// Outcome of one outward integration.
struct Shot<T> {
    log_derivative: T,
    nodes: usize,
}

/// Numerov integration of `φ` across the grid from the Frobenius data.
fn shoot<T: Real>(p: &PhysParams<T>, energy: T, g: &Grid<T>) -> Result<Shot<T>> {
    let c = frobenius_coefficients(p, energy, g.xs[1], T::epsilon())?;
    let phi = |i: usize| series_value(&c, g.xs[i]).0 / g.xs[i].sqrt();
    let h2 = g.h * g.h / T::lit(12.0);
    let f = |i: usize| g.a[i] - energy * g.b[i];

    let n = g.steps();
    let (mut p0, mut p1) = (phi(0), phi(1));
    let (mut w0, mut w1) = ((T::one() - h2 * f(0)) * p0, (T::one() - h2 * f(1)) * p1);
    let mut nodes = 0;
    let two = T::lit(2.0);
    let twelve = T::lit(12.0);
    let mut before_end = T::zero();
    for i in 1..=n {
        let w2 = two * w1 - w0 + twelve * h2 * f(i) * p1;
        let p2 = w2 / (T::one() - h2 * f(i + 1));
        if !p2.is_finite() {
            return Err(Error::Overflow(g.xs[i + 1].as_f64()));
        }
        if i < n && p2 != T::zero() && (p2 < T::zero()) != (p1 < T::zero()) {
            nodes += 1;
        }
        if i + 1 == n {
            before_end = p1;
        }
        (w0, w1, p0, p1) = (w1, w2, p1, p2);
        let big = p1.abs().max(p0.abs());
        if big > T::lit(RESCALE_ABOVE) {
            let s = big.recip();
            (w0, w1, p0, p1, before_end) = (w0 * s, w1 * s, p0 * s, p1 * s, before_end * s);
        }
    }
    // p0 = φ_n, p1 = φ_{n+1}, before_end = φ_{n-1}
    let six = T::lit(6.0);
    let hh = g.h * g.h;
    let dphi = ((T::one() - hh * f(n + 1) / six) * p1 - (T::one() - hh * f(n - 1) / six) * before_end) / (two * g.h);
    if p0 == T::zero() {
        return Err(Error::Pole {
            what: "terminal log-derivative",
            at: energy.as_f64(),
        });
    }
    let log_derivative = (T::lit(0.5) + dphi / p0) / g.xs[n];
    Ok(Shot { log_derivative, nodes })
}

/// Numerov sweep over `φ` between nodes `from` and `to` (either direction)
/// starting from the two given values; returns `φ` on the nodes in sweep order.
fn sweep<T: Real>(energy: T, g: &Grid<T>, from: usize, to: usize, first: T, second: T) -> Result<Vec<T>> {
    let h2 = g.h * g.h / T::lit(12.0);
    let f = |i: usize| g.a[i] - energy * g.b[i];
    let idx: Vec<usize> = if from <= to {
        (from..=to).collect()
    } else {
        (to..=from).rev().collect()
    };
    let mut out = Vec::with_capacity(idx.len());
    out.push(first);
    out.push(second);
    let (two, twelve) = (T::lit(2.0), T::lit(12.0));
    for k in 2..idx.len() {
        let (i0, i1, i2) = (idx[k - 2], idx[k - 1], idx[k]);
        let w0 = (T::one() - h2 * f(i0)) * out[k - 2];
        let w1 = (T::one() - h2 * f(i1)) * out[k - 1];
        let w2 = two * w1 - w0 + twelve * h2 * f(i1) * out[k - 1];
        let v = w2 / (T::one() - h2 * f(i2));
        if !v.is_finite() {
            return Err(Error::Overflow(g.xs[i2].as_f64()));
        }
        out.push(v);
        if v.abs() > T::lit(RESCALE_ABOVE) {
            let s = v.abs().recip();
            out.iter_mut().for_each(|u| *u = *u * s);
        }
    }
    Ok(out)
}

/// `ψ` on the nodes `0..=steps`: outward from the Frobenius data and inward from
/// the WKB decay at `x_end`, joined at the outer turning point. The inward leg
/// keeps the tail free of the growing solution that a slightly inexact
/// eigenvalue would otherwise excite.
fn eigenfunction_on_grid<T: Real>(p: &PhysParams<T>, energy: T, g: &Grid<T>) -> Result<Vec<T>> {
    let n = g.steps();
    let tp = outer_turning_point(p, energy)?;
    let mut m = g.xs.partition_point(|&x| x < tp).clamp(2, n - 2);

    let c = frobenius_coefficients(p, energy, g.xs[1], T::epsilon())?;
    let phi = |i: usize| series_value(&c, g.xs[i]).0 / g.xs[i].sqrt();
    let outward = sweep(energy, g, 0, n, phi(0), phi(1))?;
    // join away from a node of the outward solution
    let peak = outward[..=m].iter().fold(T::zero(), |a, v| a.max(v.abs()));
    while m + 2 < n && outward[m].abs() < T::lit(1e-3) * peak {
        m += 1;
    }

    // inward start: φ_u/φ = x ψ'/ψ - 1/2 with the WKB decay rate
    let rate = g.xs[n] * wkb_decay(p, energy, g.xs[n])? - T::lit(0.5);
    let inward = sweep(energy, g, n, m, T::one(), (-rate * g.h).exp())?;
    let join = inward[inward.len() - 1];
    if join == T::zero() {
        return Err(Error::DegenerateWavefunction);
    }
    let scale = outward[m] / join;
    let mut phi_all: Vec<T> = outward[..m].to_vec();
    phi_all.extend(inward.iter().rev().map(|&v| v * scale));
    Ok(phi_all.into_iter().zip(&g.xs).map(|(v, &x)| v * x.sqrt()).collect())
}

/// WKB log-derivative `-√(k(V - E))` of the decaying solution at `x`; zero in the
/// classically allowed region.
fn wkb_decay<T: Real>(p: &PhysParams<T>, energy: T, x: T) -> Result<T> {
    let q = p.kinetic_scale() * (p.potential(x)? - energy);
    Ok(-q.max(T::zero()).sqrt())
}

/// Integrates from the Frobenius data at `x_start` to `x_end` and returns the
/// log-derivative `ψ'/ψ` at `x_end` together with the number of sign changes of
/// `ψ` on the open interval. The run is repeated with half the step; a change of
/// the phase angle `atan(x_end ψ'/ψ)` above [`STEP_CHECK_LIMIT`] is reported as
/// too coarse.
pub fn integrate_outward<T: Real>(p: &PhysParams<T>, energy: T, cfg: &ShootingConfig<T>) -> Result<(T, usize)> {
    p.validate()?;
    cfg.validate()?;
    if !(energy < p.v0) {
        return Err(Error::domain("integrate_outward", "energy must lie below V0"));
    }
    let x_end = match cfg.x_end {
        Some(e) => e,
        None => cfg.end_factor * outer_turning_point(p, energy)?,
    };
    let coarse = shoot(p, energy, &Grid::new(p, cfg.x_start, x_end, cfg.steps)?)?;
    let fine = shoot(p, energy, &Grid::new(p, cfg.x_start, x_end, 2 * cfg.steps)?)?;
    // compare phase angles; the log-derivative itself has poles in E
    let pi = T::PI();
    let mut d = (fine.log_derivative * x_end).atan() - (coarse.log_derivative * x_end).atan();
    if d > pi * T::lit(0.5) {
        d = d - pi;
    } else if d < -pi * T::lit(0.5) {
        d = d + pi;
    }
    let change = d.abs();
    if change > T::lit(STEP_CHECK_LIMIT) {
        return Err(Error::StepTooCoarse {
            change: change.as_f64(),
            limit: STEP_CHECK_LIMIT,
        });
    }
    Ok((fine.log_derivative, fine.nodes))
}

/// Location and value of the minimum of the potential.
pub fn potential_minimum<T: Real>(p: &PhysParams<T>) -> Result<(T, T)> {
    p.require_well("potential_minimum")?;
    let v = |x: T| p.potential_unchecked(x);
    // coarse log scan, then golden-section refinement in ln x
    let (lo, hi, n) = (T::lit(1e-8).ln(), T::lit(1e8).ln(), 801usize);
    let du = (hi - lo) / T::from_count(n - 1);
    let mut best = 0;
    let mut best_v = T::infinity();
    for i in 0..n {
        let vi = v((lo + du * T::from_count(i)).exp());
        if vi < best_v {
            best_v = vi;
            best = i;
        }
    }
    if best == 0 || best == n - 1 {
        return Err(Error::domain("potential_minimum", "no interior minimum on (1e-8, 1e8)"));
    }
    let mut a = lo + du * T::from_count(best - 1);
    let mut b = lo + du * T::from_count(best + 1);
    let ratio = T::lit(0.5) * (T::lit(5.0).sqrt() - T::one());
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    for _ in 0..200 {
        if (b - a).abs() <= T::epsilon() * T::lit(4.0) * (a.abs() + T::one()) {
            break;
        }
        if v(c.exp()) < v(d.exp()) {
            b = d;
        } else {
            a = c;
        }
        c = b - ratio * (b - a);
        d = a + ratio * (b - a);
    }
    let x = (T::lit(0.5) * (a + b)).exp();
    Ok((x, v(x)))
}

/// Outer classical turning point `V(x) = E` beyond the potential minimum; for
/// energies below the minimum, the location of the minimum.
pub fn outer_turning_point<T: Real>(p: &PhysParams<T>, energy: T) -> Result<T> {
    let (x_min, v_min) = potential_minimum(p)?;
    if energy <= v_min {
        return Ok(x_min);
    }
    let v = |x: T| p.potential_unchecked(x);
    let mut lo = x_min;
    let mut hi = x_min;
    let limit = T::lit(1e12);
    while v(hi) < energy {
        lo = hi;
        hi = hi * T::lit(2.0);
        if hi > limit {
            return Err(Error::domain(
                "outer_turning_point",
                format!("no turning point below x = 1e12 for E = {energy}"),
            ));
        }
    }
    for _ in 0..200 {
        let mid = T::lit(0.5) * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if v(mid) < energy {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(T::lit(0.5) * (lo + hi))
}

/// Bisection for level `n` on a fixed grid. `E` lies above the level when the
/// solution has at least `n` nodes, or exactly `n - 1` nodes and a terminal
/// log-derivative below the WKB decay rate.
fn bisect_level<T: Real>(p: &PhysParams<T>, n: usize, g: &Grid<T>, lo: T, hi: T, cfg: &ShootingConfig<T>) -> Result<T> {
    let x_end = g.xs[g.steps()];
    let above = |e: T| -> Result<bool> {
        let shot = match shoot(p, e, g) {
            Ok(s) => s,
            // ψ(x_end) = 0 exactly sits on a Dirichlet level; nudge the energy
            Err(Error::Pole { .. }) => shoot(p, e + e.abs() * T::epsilon() * T::lit(4.0), g)?,
            Err(err) => return Err(err),
        };
        Ok(shot.nodes >= n || (shot.nodes + 1 == n && shot.log_derivative < wkb_decay(p, e, x_end)?))
    };
    let (mut lo, mut hi) = (lo, hi);
    if above(lo)? {
        return Err(Error::BracketFailure {
            level: n,
            reason: format!("already above level at the lower bracket E = {lo}"),
        });
    }
    if !above(hi)? {
        return Err(Error::BracketFailure {
            level: n,
            reason: format!("fewer than {n} nodes below E = {hi} on x_end = {x_end}"),
        });
    }
    for _ in 0..cfg.max_bisections {
        let mid = T::lit(0.5) * (lo + hi);
        if hi - lo <= cfg.energy_tol * mid.abs() || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        if above(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Err(Error::Convergence {
        what: "eigenvalue bisection",
        tolerance: cfg.energy_tol.as_f64(),
        estimate: ((hi - lo) / lo.abs()).as_f64(),
    })
}

/// Level `n` on a fixed `x_end` at `N` and `2N` steps, Richardson-extrapolated.
fn level_on_domain<T: Real>(p: &PhysParams<T>, n: usize, x_end: T, lo: T, hi: T, cfg: &ShootingConfig<T>) -> Result<T> {
    let coarse = bisect_level(p, n, &Grid::new(p, cfg.x_start, x_end, cfg.steps)?, lo, hi, cfg)?;
    let fine = bisect_level(p, n, &Grid::new(p, cfg.x_start, x_end, 2 * cfg.steps)?, lo, hi, cfg)?;
    let change = (fine - coarse).abs() / fine.abs();
    if change > T::lit(STEP_CHECK_LIMIT) {
        return Err(Error::StepTooCoarse {
            change: change.as_f64(),
            limit: STEP_CHECK_LIMIT,
        });
    }
    Ok(fine + (fine - coarse) / T::lit(15.0))
}

/// Level `n` together with the outer boundary it was converged on.
fn level_with_domain<T: Real>(
    p: &PhysParams<T>,
    n: usize,
    start_end: T,
    lo: T,
    cfg: &ShootingConfig<T>,
) -> Result<(T, T)> {
    // just below threshold; the long-range tail keeps V below V0 everywhere
    let hi = p.v0 - (p.v0.abs() + T::one()) * T::lit(1e-9);
    if let Some(x_end) = cfg.x_end {
        return Ok((level_on_domain(p, n, x_end, lo, hi, cfg)?, x_end));
    }
    let mut x_end = start_end;
    let mut last: Option<T> = None;
    for _ in 0..MAX_DOMAIN_PASSES {
        let e = match level_on_domain(p, n, x_end, lo, hi, cfg) {
            Ok(e) => e,
            // too few nodes fit: the domain is too short for this level
            Err(Error::BracketFailure { .. }) => {
                x_end = x_end * T::lit(2.0);
                continue;
            }
            Err(err) => return Err(err),
        };
        let next_end = cfg.end_factor * outer_turning_point(p, e)?;
        if let Some(prev) = last {
            if (e - prev).abs() <= cfg.energy_tol * e.abs() && next_end <= x_end {
                return Ok((e, x_end));
            }
        }
        last = Some(e);
        x_end = next_end.max(x_end);
    }
    Err(Error::BracketFailure {
        level: n,
        reason: format!("outer boundary did not settle (last x_end = {x_end})"),
    })
}

/// First `n_max` bound-state energies by shooting.
pub fn eigenvalues_numeric<T: Real>(p: &PhysParams<T>, n_max: usize, cfg: &ShootingConfig<T>) -> Result<Vec<Level<T>>> {
    p.require_well("eigenvalues_numeric")?;
    cfg.validate()?;
    let (x_min, v_min) = potential_minimum(p)?;
    let mut out = Vec::with_capacity(n_max);
    let mut lo = v_min;
    let mut start_end = cfg.end_factor * outer_turning_point(p, T::lit(0.5) * (v_min + p.v0))?.max(x_min);
    for n in 1..=n_max {
        let (e, x_end) = level_with_domain(p, n, start_end, lo, cfg)?;
        out.push(Level {
            n,
            a: p.a_of_energy(e, Branch::Minus)?,
            energy: e,
            provenance: Provenance::Oracle,
        });
        lo = e;
        start_end = x_end;
    }
    Ok(out)
}

/// Normalised eigenfunction at the eigenvalue `energy` (level `n`), tabulated on
/// `points` nodes of the shooting grid (at most all of them), ends included.
pub fn wavefunction_numeric<T: Real>(
    p: &PhysParams<T>,
    energy: T,
    cfg: &ShootingConfig<T>,
    points: usize,
) -> Result<WaveTable<T>> {
    p.require_well("wavefunction_numeric")?;
    cfg.validate()?;
    if !(energy < p.v0) {
        return Err(Error::domain("wavefunction_numeric", "energy must lie below V0"));
    }
    let x_end = match cfg.x_end {
        Some(e) => e,
        None => cfg.end_factor * outer_turning_point(p, energy)?,
    };
    let g = Grid::new(p, cfg.x_start, x_end, cfg.steps)?;
    let trace = eigenfunction_on_grid(p, energy, &g)?;
    let last = trace.len() - 1;
    let count = points.clamp(2, trace.len());
    let picks = (0..count).map(|i| (i * last + (count - 1) / 2) / (count - 1));
    let (xs, psi): (Vec<T>, Vec<T>) = picks.map(|i| (g.xs[i], trace[i])).unzip();
    let table = WaveTable::from_real(&xs, &psi, WaveSource::Oracle)?;
    normalize(&table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> PhysParams<f64> {
        PhysParams::default()
    }

    // frozen from an independent high-precision root search of the spectrum equation
    const E1: f64 = -15.35791524320816;
    const E2: f64 = -10.92955678407412;

    #[test]
    fn indicial_exponents_of_the_barrier() {
        let (s1, s2) = indicial_exponents(&unit());
        assert!((s1 - 1.25).abs() < 1e-15);
        assert!((s2 + 0.25).abs() < 1e-15);
        // independent of the mass and ħ
        let q = PhysParams::new(2.5_f64, 0.7, 0.0, 1.0).unwrap();
        let (t1, t2) = indicial_exponents(&q);
        assert!((t1 - 1.25).abs() < 1e-14 && (t2 + 0.25).abs() < 1e-14);
    }

    #[test]
    fn frobenius_leading_coefficient() {
        let p = unit();
        let c = frobenius_coefficients(&p, -10.0, 1e-4, 1e-16).unwrap();
        assert!((c[1] - 2.0).abs() < 1e-15);
        let q = PhysParams::new(1.0_f64, 1.0, 0.0, 0.5).unwrap();
        let c = frobenius_coefficients(&q, -10.0, 1e-4, 1e-16).unwrap();
        assert!((c[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn frobenius_series_solves_the_equation() {
        // second difference of the series against k(V - E)ψ near the origin
        let p = unit();
        let e = -12.0;
        for &x in &[1e-3, 1e-2, 5e-2] {
            let h = x * 1e-3;
            let f = |x: f64| frobenius_boundary(&p, e, x).unwrap().0;
            let d2 = (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
            let rhs = 2.0 * (p.potential(x).unwrap() - e) * f(x);
            assert!((d2 - rhs).abs() < 1e-5 * rhs.abs(), "x = {x}: {d2} vs {rhs}");
            // derivative against a central difference
            let (_, dpsi) = frobenius_boundary(&p, e, x).unwrap();
            let fd = (f(x + h) - f(x - h)) / (2.0 * h);
            assert!((dpsi - fd).abs() < 1e-6 * dpsi.abs());
        }
    }

    #[test]
    fn frobenius_rejects_far_start() {
        let p = unit();
        assert!(matches!(
            frobenius_boundary(&p, -10.0, 1e4),
            Err(Error::CutoffTooLarge { .. })
        ));
    }

    #[test]
    fn potential_minimum_and_turning_points() {
        let p = unit();
        let (x, v) = potential_minimum(&p).unwrap();
        for &dx in &[0.99, 1.01] {
            assert!(p.potential(x * dx).unwrap() > v);
        }
        let tp = outer_turning_point(&p, E1).unwrap();
        assert!(tp > x);
        assert!((p.potential(tp).unwrap() - E1).abs() < 1e-10);
        assert_eq!(outer_turning_point(&p, v - 1.0).unwrap(), x);
    }

    #[test]
    fn node_counts() {
        let p = unit();
        let cfg = ShootingConfig::default();
        assert_eq!(integrate_outward(&p, -30.0, &cfg).unwrap().1, 0);
        assert_eq!(integrate_outward(&p, 0.5 * (E1 + E2), &cfg).unwrap().1, 1);
    }

    #[test]
    fn node_count_is_monotone_in_energy() {
        let p = unit();
        let cfg = ShootingConfig {
            x_end: Some(30.0),
            ..ShootingConfig::default()
        };
        let mut last = 0;
        for i in 0..40 {
            let e = -20.0 + 0.4 * i as f64;
            let (_, nodes) = integrate_outward(&p, e, &cfg).unwrap();
            assert!(nodes >= last, "E = {e}");
            last = nodes;
        }
        assert!(last >= 3);
    }

    #[test]
    fn log_derivative_converges_at_fourth_order() {
        let p = unit();
        let e = -14.0;
        let end = 6.0;
        let ld = |steps: usize| {
            let g = Grid::new(&p, 1e-4, end, steps).unwrap();
            shoot(&p, e, &g).unwrap().log_derivative
        };
        let (l1, l2, l3) = (ld(2_000), ld(4_000), ld(8_000));
        let ratio = (l1 - l2) / (l2 - l3);
        assert!((12.0..20.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn ground_state_matches_the_spectrum_equation() {
        let p = unit();
        let levels = eigenvalues_numeric(&p, 2, &ShootingConfig::default()).unwrap();
        assert!(((levels[0].energy - E1) / E1).abs() < 1e-8);
        assert!(((levels[1].energy - E2) / E2).abs() < 1e-8);
        assert_eq!(levels[0].provenance, Provenance::Oracle);
        assert!((levels[0].a - 1.503822478138044).abs() < 1e-6);
    }

    #[test]
    fn start_point_independence() {
        let p = unit();
        let base = ShootingConfig::default();
        let moved = ShootingConfig { x_start: 1e-5, ..base };
        let e1 = eigenvalues_numeric(&p, 1, &base).unwrap()[0].energy;
        let e2 = eigenvalues_numeric(&p, 1, &moved).unwrap()[0].energy;
        assert!(((e1 - e2) / e1).abs() <= 10.0 * base.energy_tol, "{e1} vs {e2}");
    }

    #[test]
    fn eigenfunction_nodes_and_peak() {
        let p = unit();
        let cfg = ShootingConfig::default();
        let levels = eigenvalues_numeric(&p, 3, &cfg).unwrap();
        for l in &levels {
            let w = wavefunction_numeric(&p, l.energy, &cfg, 4000).unwrap();
            assert_eq!(w.sign_changes(), l.n - 1, "level {}", l.n);
            assert_eq!(w.source, WaveSource::Oracle);
        }
        // a single maximum of |ψ| for the ground state
        let w = wavefunction_numeric(&p, levels[0].energy, &cfg, 4000).unwrap();
        let v: Vec<f64> = w.real_values().iter().map(|v| v.abs()).collect();
        let peaks = v.windows(3).filter(|t| t[1] > t[0] && t[1] >= t[2]).count();
        assert_eq!(peaks, 1);
    }

    #[test]
    fn config_validation() {
        let p = unit();
        let bad = ShootingConfig {
            steps: 500,
            ..ShootingConfig::default()
        };
        assert!(integrate_outward(&p, -20.0, &bad).is_err());
        let bad = ShootingConfig {
            x_end: Some(1e-5),
            ..ShootingConfig::default()
        };
        assert!(bad.validate().is_err());
        assert!(integrate_outward(&p, 1.0, &ShootingConfig::default()).is_err());
    }
}

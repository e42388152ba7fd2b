//! Physical parameters, the potential family, and the map between the energy
//! and the spectral parameters `(a, ε)`.
//!
//! No unit system is imposed; the caller fixes conventions (the defaults are
//! `m = ħ = 1`, `V0 = 0`, `V1 = 1`).

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Mass, reduced Planck constant and potential strengths.
///
/// `v2` is the Coulomb-like coefficient of the five-term family; the headline
/// potential has `v2 = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysParams<T> {
    pub mass: T,
    pub hbar: T,
    pub v0: T,
    pub v1: T,
    pub v2: T,
}

impl<T: Real> Default for PhysParams<T> {
    fn default() -> Self {
        PhysParams {
            mass: T::one(),
            hbar: T::one(),
            v0: T::zero(),
            v1: T::one(),
            v2: T::zero(),
        }
    }
}

/// Sign of `ε`, selecting one of the two fundamental solutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `ε < 0`, phase `A = 1`; decays at infinity.
    Minus,
    /// `ε > 0`, phase `A = e^{4iπ/3}`; grows exponentially at infinity.
    Plus,
}

impl Branch {
    pub fn sign<T: Real>(self) -> T {
        match self {
            Branch::Minus => -T::one(),
            Branch::Plus => T::one(),
        }
    }

    /// The phase `A` multiplying the sixth-root coefficient.
    pub fn phase<T: Real>(self) -> Complex<T> {
        match self {
            Branch::Minus => Complex::new(T::one(), T::zero()),
            Branch::Plus => Complex::from_polar(T::one(), T::lit(4.0) * T::PI() / T::lit(3.0)),
        }
    }
}

impl<T: Real> PhysParams<T> {
    /// Parameters of the three-parameter potential (`v2 = 0`).
    pub fn new(mass: T, hbar: T, v0: T, v1: T) -> Result<Self> {
        let p = PhysParams {
            mass,
            hbar,
            v0,
            v1,
            v2: T::zero(),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_v2(mut self, v2: T) -> Self {
        self.v2 = v2;
        self
    }

    /// The `v2` value that cancels the `x^{-1/2}` term.
    pub fn cancelling_v2(&self) -> T {
        T::lit(2.0) * self.mass * self.v1 * self.v1 / (self.hbar * self.hbar)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.mass, self.hbar, self.v0, self.v1, self.v2];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("PhysParams", "non-finite parameter"));
        }
        if self.mass <= T::zero() || self.hbar <= T::zero() {
            return Err(Error::domain("PhysParams", "mass and hbar must be positive"));
        }
        Ok(())
    }

    /// Bound-state operations need a well: `V1 > 0`.
    pub fn require_well(&self, op: &'static str) -> Result<()> {
        self.validate()?;
        if self.v1 <= T::zero() {
            return Err(Error::domain(op, "bound states require V1 > 0"));
        }
        Ok(())
    }

    /// Closed-form results need a well and the three-parameter member: `V2 = 0`.
    pub fn require_solvable(&self, op: &'static str) -> Result<()> {
        self.require_well(op)?;
        if self.v2 != T::zero() {
            return Err(Error::domain(op, "the closed-form solution holds for V2 = 0 only"));
        }
        Ok(())
    }

    /// `2m/ħ²`
    pub fn kinetic_scale(&self) -> T {
        T::lit(2.0) * self.mass / (self.hbar * self.hbar)
    }

    /// Strength of the centrifugal barrier, fixed to `5ħ²/(32m)`.
    pub fn barrier_coefficient(&self) -> T {
        T::lit(5.0) * self.hbar * self.hbar / (T::lit(32.0) * self.mass)
    }

    /// Coefficient of `x^{-1/2}`: `8 m V1 (ħ² V2 - 2 m V1²) / ħ⁴`.
    pub fn sqrt_coefficient(&self) -> T {
        let h2 = self.hbar * self.hbar;
        T::lit(8.0) * self.mass * self.v1 * (h2 * self.v2 - T::lit(2.0) * self.mass * self.v1 * self.v1) / (h2 * h2)
    }

    /// The potential at `x > 0`.
    pub fn potential(&self, x: T) -> Result<T> {
        if !(x > T::zero()) || !x.is_finite() {
            return Err(Error::domain("potential", format!("x = {x} must be positive")));
        }
        Ok(self.potential_unchecked(x))
    }

    pub(crate) fn potential_unchecked(&self, x: T) -> T {
        let sx = x.sqrt();
        self.v0 + self.barrier_coefficient() / (x * x) + self.v1 / (x * sx) + self.v2 / x + self.sqrt_coefficient() / sx
    }

    /// `ε = ±√(8m(V0 - E))/ħ`, sign from the branch.
    pub fn epsilon_of_energy(&self, energy: T, branch: Branch) -> Result<T> {
        if !(energy < self.v0) {
            return Err(Error::domain(
                "epsilon_of_energy",
                format!("E = {energy} must lie below V0 = {}", self.v0),
            ));
        }
        let mag = (T::lit(8.0) * self.mass * (self.v0 - energy)).sqrt() / self.hbar;
        Ok(branch.sign::<T>() * mag)
    }

    /// `a = -2¹¹ m⁶ V1⁶ / (ħ¹² ε³)`; positive on the minus branch.
    pub fn a_of_energy(&self, energy: T, branch: Branch) -> Result<T> {
        self.require_well("a_of_energy")?;
        let eps = self.epsilon_of_energy(energy, branch)?;
        let r = self.mass * self.v1 / (self.hbar * self.hbar);
        Ok(-T::lit(2048.0) * r.powi(6) / eps.powi(3))
    }

    /// Inverse of [`a_of_energy`](Self::a_of_energy) on the minus branch:
    /// `E = V0 - 2^{13/3} a^{-2/3} m³ V1⁴ / ħ⁶`.
    pub fn energy_of_a(&self, a: T) -> Result<T> {
        self.require_well("energy_of_a")?;
        if !(a > T::zero()) {
            return Err(Error::domain("energy_of_a", format!("a = {a} must be positive")));
        }
        let h2 = self.hbar * self.hbar;
        let scale = self.mass.powi(3) * self.v1.powi(4) / (h2 * h2 * h2);
        let two_13_3 = T::lit(2.0).powf(T::lit(13.0) / T::lit(3.0));
        Ok(self.v0 - two_13_3 * scale / (a * a).cbrt())
    }
}

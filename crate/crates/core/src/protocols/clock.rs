//! Clock synchronization as phase-reference alignment.
//!
//! A clock with Hamiltonian `H = E₀ G` evolving for time `T` picks up the
//! phase shift `U_φ` with `φ = E₀ T mod 2π`.

use crate::error::{Error, Result};
use crate::quantum::{phase_shift, Generator, Operator};
use crate::scalar::{wrap_angle, Real};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClockParams<T> {
    /// Level spacing `E₀` (ħ = 1).
    pub level_spacing: T,
    /// Time offset `T` between the two clocks.
    pub delay: T,
}

impl<T: Real> ClockParams<T> {
    pub fn new(level_spacing: T, delay: T) -> Result<Self> {
        if level_spacing.is_nan() || level_spacing <= T::zero() || level_spacing.is_infinite() {
            return Err(Error::InvalidParameter(format!(
                "level spacing must be positive and finite, got {level_spacing}"
            )));
        }
        if !delay.is_finite() {
            return Err(Error::InvalidParameter("delay must be finite".into()));
        }
        Ok(Self {
            level_spacing,
            delay,
        })
    }
}

/// `E₀ T mod 2π` in `[0, 2π)`.
pub fn clock_phase<T: Real>(params: &ClockParams<T>) -> T {
    wrap_angle(params.level_spacing * params.delay)
}

/// Time evolution `e^{−i E₀ G T}` of a clock with generator `g`.
pub fn clock_evolution<T: Real>(g: &Generator, params: &ClockParams<T>) -> Operator<T> {
    phase_shift(g, clock_phase(params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn phase_wraps() {
        let p = ClockParams::new(1.0, 2.0 * PI + 0.25).unwrap();
        assert!((clock_phase(&p) - 0.25).abs() < 1e-12);
        let p = ClockParams::new(2.0, -0.5).unwrap();
        assert!((clock_phase(&p) - (2.0 * PI - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn bad_spacing_rejected() {
        assert!(ClockParams::new(0.0, 1.0).is_err());
        assert!(ClockParams::new(f64::NAN, 1.0).is_err());
        assert!(ClockParams::new(1.0, f64::INFINITY).is_err());
    }

    #[test]
    fn evolution_matches_direct_exponential() {
        let g = Generator::uniform(3);
        let p = ClockParams::new(0.7, 3.0).unwrap();
        let u = clock_evolution(&g, &p);
        for n in 0..3 {
            let expected = num_complex::Complex::from_polar(1.0, -0.7 * 3.0 * n as f64);
            assert!((u.get(n, n) - expected).norm() < 1e-12);
        }
    }
}

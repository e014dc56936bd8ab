//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real floating point scalar: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + NumAssign
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Default
    + Sum
    + Send
    + Sync
    + 'static
{
    /// Structural tolerance (unitarity, orthonormality, eigen residuals).
    const TOL: f64;

    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).unwrap_or_else(Self::max_value)
    }

    fn from_i64_lossy(n: i64) -> Self {
        Self::from_i64(n).unwrap_or_else(Self::max_value)
    }

    fn tol() -> Self {
        Self::lit(Self::TOL)
    }
}

macro_rules! impl_real {
    ($t:ty, $tol:expr) => {
        impl Real for $t {
            const TOL: f64 = $tol;
        }
    };
}

impl_real!(f64, 1e-10);
impl_real!(f32, 1e-4);

/// `e^{i theta}`.
pub fn cis<T: Real>(theta: T) -> Complex<T> {
    Complex::new(theta.cos(), theta.sin())
}

/// Wraps an angle into `[0, 2π)`.
pub fn wrap_angle<T: Real>(theta: T) -> T {
    let two_pi = T::TAU();
    let r = theta % two_pi;
    let r = if r < T::zero() { r + two_pi } else { r };
    // r + 2π may round up to exactly 2π
    if r >= two_pi {
        T::zero()
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrap_into_half_open_interval() {
        assert_eq!(wrap_angle(0.0_f64), 0.0);
        assert!((wrap_angle(-0.5_f64) - (std::f64::consts::TAU - 0.5)).abs() < 1e-15);
        assert!(wrap_angle(std::f64::consts::TAU) < 1e-15);
        assert!(wrap_angle(-1e-18_f64) < std::f64::consts::TAU);
    }

    #[test]
    fn tolerance_per_type() {
        assert_eq!(f64::tol(), 1e-10);
        assert!(f32::tol() > 1e-6);
    }
}

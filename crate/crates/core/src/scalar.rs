//! Scalar abstractions.
//!
//! Everything numeric in this crate is generic over [`Real`], a thin alias over
//! `num_traits::Float`. The ordering algebra only needs field arithmetic, so it
//! is generic over the weaker [`OrderingScalar`], which rationals implement as
//! well. That keeps ζ and the ordering shifts exact when they are evaluated over
//! `Rational64`.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_rational::Rational64;
use num_traits::{Float, FloatConst, FromPrimitive, Num, Signed};

/// Floating-point scalar used by the spectra, grids and eigensolvers.
pub trait Real:
    Float + FloatConst + FromPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
}

/// Converts an `f64` literal into `T`.
///
/// Every `Real` can represent (a rounding of) any finite `f64`, so this never fails
/// for the constants used in this crate.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("finite literal representable in Real")
}

/// Scalar field that the ordering parameters (α, β, γ) live in.
pub trait OrderingScalar: Num + Signed + Copy + PartialOrd + Debug + Send + Sync + 'static {
    /// Allowed slack on α+β+γ = −1. Zero for exact types.
    fn constraint_tolerance() -> Self;

    /// The value `num / den`.
    fn from_ratio(num: i64, den: i64) -> Self;

    /// Lossy conversion used when the ordering feeds floating-point formulas.
    fn approx_f64(self) -> f64;
}

impl OrderingScalar for f64 {
    fn constraint_tolerance() -> Self {
        1e-12
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn approx_f64(self) -> f64 {
        self
    }
}

impl OrderingScalar for f32 {
    fn constraint_tolerance() -> Self {
        4.0 * f32::EPSILON
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f32 / den as f32
    }
    fn approx_f64(self) -> f64 {
        self as f64
    }
}

impl OrderingScalar for Rational64 {
    fn constraint_tolerance() -> Self {
        Rational64::from_integer(0)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Rational64::new(num, den)
    }
    fn approx_f64(self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

/// A floating-point type that can also carry an ordering; `f32` and `f64`.
pub trait Scalar: Real + OrderingScalar {}

impl<T: Real + OrderingScalar> Scalar for T {}

//! Numerics for twisted cubic moments of Dirichlet and cusp-form L-functions
//! at a prime modulus.
//!
//! The finite-field layer ([`ff`], [`characters`], [`exp_sums`], [`trace_fn`])
//! is generic over the float type through [`Real`]. The analytic layer
//! ([`l_values`], [`hecke`], [`moments`]) works in `f64` only: its tolerances
//! sit far below single precision.

pub mod characters;
pub mod error;
pub mod exp_sums;
pub mod ff;
pub mod hecke;
pub mod l_values;
pub mod moments;
pub mod trace_fn;

use std::fmt::Debug;
use std::iter::Sum;

pub use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};

pub use error::{Error, Result};

/// Scalar type accepted by the finite-field layer.
pub trait Real: rustfft::FftNum + Float + FloatConst + FromPrimitive + Sum + Default + Debug {}

impl Real for f32 {}
impl Real for f64 {}

/// Lift an `f64` constant into `T`.
#[inline]
pub(crate) fn cst<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("finite constant")
}

pub type C64 = Complex<f64>;
pub type C32 = Complex<f32>;

pub type PrimeContext = ff::PrimeContext<f64>;
pub type PrimeContextF32 = ff::PrimeContext<f32>;
pub type CharacterGroup = characters::CharacterGroup<f64>;
pub type CharacterGroupF32 = characters::CharacterGroup<f32>;
pub type DirichletCharacter = characters::DirichletCharacter<f64>;
pub type TraceFunction = trace_fn::TraceFunction<f64>;
pub type TraceFunctionF32 = trace_fn::TraceFunction<f32>;

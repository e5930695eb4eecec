//! Value tables over `F_q`, their normalized Fourier transform, correlation
//! sums under `PGL₂(F_q)`, and the completion/bilinear experiments.

mod bilinear;
mod correlation;
mod cutoff;
mod pgl2;
mod polya;

pub use bilinear::{bilinear_experiment, BilinearReport};
pub use correlation::{correlation, correlation_scan, CorrelationRecord, ScanMode, ScanReport};
pub use cutoff::{Jet, SmoothCutoff};
pub use pgl2::{classify, ClassTag, ConjugacyType, FixedPoints, MatrixClass, P1, ProjMatrix};
pub use polya::{polya_check, PolyaReport};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::characters::CharacterGroup;
use crate::exp_sums::{kloosterman_table, KloostermanSpec, ZeroConvention};
use crate::ff::PrimeContext;
use crate::{cst, Error, Real, Result};

/// Where a table came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Kernel {
    Kloosterman { spec: KloostermanSpec, zero: ZeroConvention },
    /// `x ↦ e(hx/q)`.
    Additive { h: u64 },
    /// `x ↦ χ_t(x)`, zero at `0`.
    Multiplicative { t: usize },
    /// Indicator of a single residue.
    Delta { at: u64 },
    /// Constant `1` on all of `F_q`.
    Constant,
    Fourier(Box<Kernel>),
    Table,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceFunction<T: Real = f64> {
    pub q: u64,
    pub values: Vec<Complex<T>>,
    /// Known upper bound for `max |values|`.
    pub sup_bound: T,
    pub kernel: Kernel,
}

impl<T: Real> TraceFunction<T> {
    /// Table with `sup_bound` set to the observed maximum.
    pub fn new(q: u64, values: Vec<Complex<T>>, kernel: Kernel) -> Result<Self> {
        let m = values.iter().map(|z| z.norm()).fold(T::zero(), T::max);
        Self::with_bound(q, values, m, kernel)
    }

    /// Table with a stated bound; the bound is raised if any value exceeds it.
    pub fn with_bound(q: u64, values: Vec<Complex<T>>, bound: T, kernel: Kernel) -> Result<Self> {
        if values.len() != q as usize {
            return Err(Error::Length { expected: q as usize, got: values.len() });
        }
        let observed = values.iter().map(|z| z.norm()).fold(T::zero(), T::max);
        Ok(TraceFunction { q, values, sup_bound: bound.max(observed), kernel })
    }

    pub fn additive(ctx: &PrimeContext<T>, h: u64) -> Self {
        let v = (0..ctx.q()).map(|x| ctx.unity(h * x % ctx.q())).collect();
        Self::with_bound(ctx.q(), v, T::one(), Kernel::Additive { h }).expect("length q")
    }

    pub fn multiplicative(group: &CharacterGroup<T>, t: usize) -> Self {
        Self::with_bound(group.q(), group.table(t), T::one(), Kernel::Multiplicative { t }).expect("length q")
    }

    pub fn delta(q: u64, at: u64) -> Self {
        let mut v = vec![Complex::new(T::zero(), T::zero()); q as usize];
        v[(at % q) as usize] = Complex::new(T::one(), T::zero());
        Self::with_bound(q, v, T::one(), Kernel::Delta { at }).expect("length q")
    }

    pub fn constant(q: u64) -> Self {
        let v = vec![Complex::new(T::one(), T::zero()); q as usize];
        Self::with_bound(q, v, T::one(), Kernel::Constant).expect("length q")
    }

    pub fn kloosterman(group: &CharacterGroup<T>, spec: &KloostermanSpec, zero: ZeroConvention) -> Self {
        kloosterman_table(group, spec, zero)
    }

    /// Value at an integer argument, reduced mod `q`.
    #[inline]
    pub fn at(&self, n: i64) -> Complex<T> {
        self.values[n.rem_euclid(self.q as i64) as usize]
    }

    pub fn norm_sq(&self) -> T {
        self.values.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `K̂(y) = q^{-1/2} Σ_x K(x) e(xy/q)`; the bound becomes the observed max.
    pub fn fourier(&self, ctx: &PrimeContext<T>) -> Result<Self> {
        if ctx.q() != self.q {
            return Err(Error::Invalid(format!("context modulus {} vs table modulus {}", ctx.q(), self.q)));
        }
        let v = ctx.normalized_dft(&self.values)?;
        Self::new(self.q, v, Kernel::Fourier(Box::new(self.kernel.clone())))
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    pub fn sqrt_q(&self) -> T {
        cst::<T>(self.q as f64).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_transform_is_flat() {
        let ctx = PrimeContext::<f64>::new(17).unwrap();
        let d = TraceFunction::<f64>::delta(17, 0).fourier(&ctx).unwrap();
        for z in &d.values {
            assert!((z.re - 1.0 / 17f64.sqrt()).abs() < 1e-12 && z.im.abs() < 1e-12);
        }
    }

    #[test]
    fn additive_transform_is_point_mass() {
        let ctx = PrimeContext::<f64>::new(13).unwrap();
        let f = TraceFunction::additive(&ctx, 1).fourier(&ctx).unwrap();
        // Σ_x e(x/q) e(xy/q) vanishes unless y ≡ −1.
        for (y, z) in f.values.iter().enumerate() {
            let want = if y == 12 { 13f64.sqrt() } else { 0.0 };
            assert!((z.norm() - want).abs() < 1e-10);
        }
    }

    #[test]
    fn wrong_length_rejected() {
        let v = vec![Complex::new(1.0, 0.0); 4];
        assert!(TraceFunction::<f64>::new(5, v, Kernel::Table).is_err());
    }
}

//! Characters mod a prime, indexed by exponent: `χ_t(g^a) = e(ta/(q−1))`.
//!
//! Twisting is index addition, so `χ_t · χ_s = χ_{t+s}` and `χ̄_t = χ_{−t}`.
//! Parity is `t mod 2` because `−1 = g^{(q−1)/2}`.

use std::sync::Arc;

use num_complex::Complex;

use crate::exp_sums::{kloosterman_table, KloostermanSpec, ZeroConvention};
use crate::ff::PrimeContext;
use crate::{cst, Error, Real, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirichletCharacter<T: Real = f64> {
    pub q: u64,
    pub t: usize,
    pub kappa: u8,
    pub gauss: Complex<T>,
}

impl<T: Real> DirichletCharacter<T> {
    pub fn is_principal(&self) -> bool {
        self.t == 0
    }

    pub fn is_even(&self) -> bool {
        self.kappa == 0
    }
}

/// The full group of `q − 1` characters with all normalized Gauss sums cached.
pub struct CharacterGroup<T: Real = f64> {
    ctx: Arc<PrimeContext<T>>,
    roots: Vec<Complex<T>>,
    gauss: Vec<Complex<T>>,
}

impl<T: Real> CharacterGroup<T> {
    pub fn new(ctx: Arc<PrimeContext<T>>) -> Self {
        let n = ctx.order();
        let tau = T::PI() + T::PI();
        let nf = cst::<T>(n as f64);
        let roots: Vec<_> =
            (0..n).map(|j| Complex::from_polar(T::one(), tau * cst::<T>(j as f64) / nf)).collect();
        // ε(χ_t) = q^{-1/2} Σ_j e(tj/(q−1)) e(g^j/q): one transform over the group.
        let w: Vec<_> = (0..n).map(|j| ctx.unity(ctx.exp(j))).collect();
        let scale = cst::<T>(ctx.q() as f64).sqrt().recip();
        let gauss = ctx
            .group_dft(&w, true)
            .expect("length q−1")
            .into_iter()
            .map(|z| z * scale)
            .collect();
        CharacterGroup { ctx, roots, gauss }
    }

    pub fn from_modulus(q: u64) -> Result<Self> {
        Ok(Self::new(Arc::new(PrimeContext::new(q)?)))
    }

    pub fn ctx(&self) -> &PrimeContext<T> {
        &self.ctx
    }

    pub fn ctx_arc(&self) -> Arc<PrimeContext<T>> {
        Arc::clone(&self.ctx)
    }

    pub fn q(&self) -> u64 {
        self.ctx.q()
    }

    pub fn order(&self) -> usize {
        self.ctx.order()
    }

    /// Index reduced mod `q − 1`, accepting negative inputs.
    pub fn index(&self, t: i64) -> usize {
        t.rem_euclid(self.order() as i64) as usize
    }

    pub fn conj_index(&self, t: usize) -> usize {
        (self.order() - t % self.order()) % self.order()
    }

    pub fn parity(&self, t: usize) -> u8 {
        (t % 2) as u8
    }

    /// `e(j/(q−1))`.
    #[inline]
    pub fn root(&self, j: usize) -> Complex<T> {
        self.roots[j % self.order()]
    }

    /// `χ_t(a)`, zero when `q | a`.
    pub fn value(&self, t: usize, a: i64) -> Complex<T> {
        let r = self.ctx.reduce(a);
        if r == 0 {
            return Complex::new(T::zero(), T::zero());
        }
        self.value_reduced(t, r as usize)
    }

    /// `χ_t(r)` for a reduced nonzero residue.
    #[inline]
    pub fn value_reduced(&self, t: usize, r: usize) -> Complex<T> {
        let n = self.order();
        self.roots[(t % n) * self.ctx.dlog_unchecked(r) % n]
    }

    /// Value table over `F_q` (entry 0 is 0, also for the principal character).
    pub fn table(&self, t: usize) -> Vec<Complex<T>> {
        (0..self.q() as usize)
            .map(|r| if r == 0 { Complex::new(T::zero(), T::zero()) } else { self.value_reduced(t, r) })
            .collect()
    }

    pub fn gauss_sum(&self, t: usize) -> Complex<T> {
        self.gauss[t % self.order()]
    }

    pub fn gauss_sums(&self) -> &[Complex<T>] {
        &self.gauss
    }

    pub fn character(&self, t: usize) -> DirichletCharacter<T> {
        let t = t % self.order();
        DirichletCharacter { q: self.q(), t, kappa: self.parity(t), gauss: self.gauss[t] }
    }

    pub fn enumerate(&self) -> Vec<DirichletCharacter<T>> {
        (0..self.order()).map(|t| self.character(t)).collect()
    }

    fn nonzero(&self, a: i64) -> Result<usize> {
        let r = self.ctx.reduce(a);
        if r == 0 {
            Err(Error::ZeroResidue(a, self.q()))
        } else {
            Ok(r as usize)
        }
    }

    /// `Σ_{χ even, χ≠1} χ(a)`.
    pub fn even_orthogonality_sum(&self, a: i64) -> Result<Complex<T>> {
        let r = self.nonzero(a)?;
        Ok((2..self.order()).step_by(2).map(|t| self.value_reduced(t, r)).sum_complex())
    }

    /// Closed form `(q−1)/2 · δ_{a≡±1} − 1`.
    pub fn even_orthogonality_closed(&self, a: i64) -> Result<T> {
        let r = self.nonzero(a)? as u64;
        let hit = r == 1 || r == self.q() - 1;
        let half = cst::<T>(self.order() as f64 / 2.0);
        Ok(if hit { half - T::one() } else { -T::one() })
    }

    /// `Σ_{χ(−1)=(−1)^κ, χ≠1} χ(m) ε(χ)`.
    pub fn gauss_weighted_average(&self, kappa: u8, m: i64) -> Result<Complex<T>> {
        let r = self.nonzero(m)?;
        let start = if kappa % 2 == 0 { 2 } else { 1 };
        Ok((start..self.order()).step_by(2).map(|t| self.value_reduced(t, r) * self.gauss[t]).sum_complex())
    }

    /// Closed form `(q−1)/(2√q) Σ_± (±1)^κ (e(±m̄/q) + 1/(q−1))`.
    pub fn gauss_weighted_closed(&self, kappa: u8, m: i64) -> Result<Complex<T>> {
        self.nonzero(m)?;
        let ctx = &self.ctx;
        let mbar = ctx.mod_inverse(m)?;
        let n = cst::<T>(self.order() as f64);
        let shift = Complex::new(n.recip(), T::zero());
        let plus = ctx.unity(mbar) + shift;
        let minus = ctx.unity(ctx.q() - mbar) + shift;
        let sum = if kappa % 2 == 0 { plus + minus } else { plus - minus };
        Ok(sum * (n / (cst::<T>(2.0) * cst::<T>(self.q() as f64).sqrt())))
    }

    /// `(2/(q−1)) Σ_{χ even, χ≠ω̄₁} χ(m) ε(χω₁) ε(χω₂)`.
    pub fn double_gauss_average(&self, t1: usize, t2: usize, m: i64) -> Result<Complex<T>> {
        let r = self.nonzero(m)?;
        let n = self.order();
        let skip = self.conj_index(t1);
        let s = (0..n)
            .step_by(2)
            .filter(|&t| t != skip)
            .map(|t| self.value_reduced(t, r) * self.gauss[(t + t1) % n] * self.gauss[(t + t2) % n])
            .sum_complex();
        Ok(s * cst::<T>(2.0 / n as f64))
    }

    /// Right side of the double-Gauss identity, summed over both signs:
    /// `q^{-1/2} Σ_± Kl₂(±m̄, ω₁, ω₂) + ε(ω̄₁ω₂) ω̄₁(m)(1+(−1)^{κ₁}) / (q^{1/2}(q−1))`.
    pub fn double_gauss_closed(&self, t1: usize, t2: usize, m: i64) -> Result<Complex<T>> {
        self.nonzero(m)?;
        let ctx = &self.ctx;
        let kl = kloosterman_table(self, &KloostermanSpec::new(vec![t1, t2])?, ZeroConvention::ExtensionByZero);
        let mbar = ctx.mod_inverse(m)? as usize;
        let qf = cst::<T>(self.q() as f64);
        let sq = qf.sqrt();
        let main = (kl.values[mbar] + kl.values[self.q() as usize - mbar]) / sq;
        let n = self.order();
        let parity_factor = if t1 % 2 == 0 { cst::<T>(2.0) } else { T::zero() };
        let corr = self.gauss[(self.conj_index(t1) + t2) % n] * self.value(self.conj_index(t1), m) * parity_factor
            / (sq * cst::<T>(n as f64));
        Ok(main + corr)
    }

    /// `(2/(q−1)) Σ_{χ even, χ≠ω̄₁} χ(m) ε(χ) ε(χω₁) ε(χω₂)`.
    pub fn triple_gauss_average(&self, t1: usize, t2: usize, m: i64) -> Result<Complex<T>> {
        let r = self.nonzero(m)?;
        let n = self.order();
        let skip = self.conj_index(t1);
        let s = (0..n)
            .step_by(2)
            .filter(|&t| t != skip)
            .map(|t| self.value_reduced(t, r) * self.gauss[t] * self.gauss[(t + t1) % n] * self.gauss[(t + t2) % n])
            .sum_complex();
        Ok(s * cst::<T>(2.0 / n as f64))
    }

    /// `(2/(q−1)) Σ_{χ parity κ} χ(m) ε(χ) ε(χω₁) ε(χω₂)` with no exclusions.
    pub fn triple_gauss_parity_class(&self, kappa: u8, t1: usize, t2: usize, m: i64) -> Result<Complex<T>> {
        let r = self.nonzero(m)?;
        let n = self.order();
        let s = ((kappa % 2) as usize..n)
            .step_by(2)
            .map(|t| self.value_reduced(t, r) * self.gauss[t] * self.gauss[(t + t1) % n] * self.gauss[(t + t2) % n])
            .sum_complex();
        Ok(s * cst::<T>(2.0 / n as f64))
    }
}

/// Summation helper; `Complex<T>` has no `Sum` impl for generic `T` here.
pub(crate) trait SumComplex<T: Real> {
    fn sum_complex(self) -> Complex<T>;
}

impl<T: Real, I: Iterator<Item = Complex<T>>> SumComplex<T> for I {
    fn sum_complex(self) -> Complex<T> {
        self.fold(Complex::new(T::zero(), T::zero()), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(q: u64) -> CharacterGroup<f64> {
        CharacterGroup::from_modulus(q).unwrap()
    }

    #[test]
    fn counts_and_parity() {
        let g = grp(5);
        let chars = g.enumerate();
        assert_eq!(chars.len(), 4);
        assert_eq!(chars.iter().filter(|c| c.is_even()).count(), 2);
        let g13 = grp(13);
        assert_eq!(g13.enumerate().iter().filter(|c| c.is_even()).count(), 6);
        for t in 0..12 {
            let direct = g13.value(t, -1).re;
            assert!((direct - if t % 2 == 0 { 1.0 } else { -1.0 }).abs() < 1e-12);
        }
    }

    #[test]
    fn principal_gauss() {
        let g = grp(7);
        assert!((g.gauss_sum(0).re + 1.0 / 7f64.sqrt()).abs() < 1e-12);
        assert!(g.gauss_sum(0).im.abs() < 1e-12);
    }

    #[test]
    fn orthogonality_examples() {
        let g = grp(7);
        assert!((g.even_orthogonality_sum(1).unwrap().re - 2.0).abs() < 1e-12);
        assert!((g.even_orthogonality_sum(6).unwrap().re - 2.0).abs() < 1e-12);
        assert!((g.even_orthogonality_sum(2).unwrap().re + 1.0).abs() < 1e-12);
        assert!(g.even_orthogonality_sum(7).is_err());
    }

    #[test]
    fn zero_argument_rejected() {
        let g = grp(11);
        assert!(g.gauss_weighted_average(0, 0).is_err());
        assert!(g.double_gauss_average(1, 2, 22).is_err());
    }
}

//! Prime-field context and prime-length DFT (Rader reduction).
//!
//! Sign convention everywhere: `dft(v)[y] = Σ_x v[x] e(xy/q)` with
//! `e(t) = exp(2πit)`. The inverse divides by `q`.

use std::sync::Arc;

use num_complex::Complex;
use rustfft::{Fft, FftDirection, FftPlanner};

use crate::{cst, Error, Real, Result};

/// Trial-division primality, fine below 2^31.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Smallest positive primitive root of a prime `q`.
pub fn primitive_root(q: u64) -> u64 {
    if q == 2 {
        return 1;
    }
    let fac = distinct_prime_factors(q - 1);
    (2..q)
        .find(|&g| fac.iter().all(|&p| pow_mod(g, (q - 1) / p, q) != 1))
        .expect("prime modulus has a primitive root")
}

/// Zero-padded power-of-two plan for the length-(q−1) cyclic convolution.
struct RaderPlan<T: Real> {
    len: usize,
    fwd: Arc<dyn Fft<T>>,
    inv: Arc<dyn Fft<T>>,
    /// FFT of the wrapped kernel `e(g^c/q)`, pre-scaled by `1/len`.
    kernel: Vec<Complex<T>>,
}

/// Tables for one odd prime `q`. Immutable once built.
pub struct PrimeContext<T: Real = f64> {
    q: u64,
    g: u64,
    dlog: Vec<u32>,
    pow_g: Vec<u32>,
    unity: Vec<Complex<T>>,
    rader: RaderPlan<T>,
    group_fwd: Arc<dyn Fft<T>>,
    group_inv: Arc<dyn Fft<T>>,
}

impl<T: Real> std::fmt::Debug for PrimeContext<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PrimeContext").field("q", &self.q).field("g", &self.g).finish()
    }
}

impl<T: Real> PrimeContext<T> {
    pub fn new(q: u64) -> Result<Self> {
        if q <= 2 || q >= 1 << 31 {
            return Err(if is_prime(q) { Error::ModulusRange(q) } else { Error::NotPrime(q) });
        }
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        let g = primitive_root(q);
        let n = (q - 1) as usize;
        let mut dlog = vec![0u32; q as usize];
        let mut pow_g = vec![0u32; n];
        let mut x = 1u64;
        for (j, slot) in pow_g.iter_mut().enumerate() {
            *slot = x as u32;
            dlog[x as usize] = j as u32;
            x = x * g % q;
        }
        let tau = T::PI() + T::PI();
        let qf = cst::<T>(q as f64);
        let unity: Vec<Complex<T>> = (0..q)
            .map(|j| Complex::from_polar(T::one(), tau * cst::<T>(j as f64) / qf))
            .collect();

        let mut planner = FftPlanner::<T>::new();
        let len = (2 * n - 1).next_power_of_two();
        let fwd = planner.plan_fft(len, FftDirection::Forward);
        let inv = planner.plan_fft(len, FftDirection::Inverse);
        let mut kernel = vec![Complex::new(T::zero(), T::zero()); len];
        for c in 0..n {
            kernel[c] = unity[pow_g[c] as usize];
        }
        for k in 1..n {
            kernel[len - k] = unity[pow_g[n - k] as usize];
        }
        fwd.process(&mut kernel);
        let scale = T::one() / cst::<T>(len as f64);
        for z in kernel.iter_mut() {
            *z = *z * scale;
        }
        let group_fwd = planner.plan_fft(n, FftDirection::Forward);
        let group_inv = planner.plan_fft(n, FftDirection::Inverse);
        Ok(PrimeContext {
            q,
            g,
            dlog,
            pow_g,
            unity,
            rader: RaderPlan { len, fwd, inv, kernel },
            group_fwd,
            group_inv,
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `q` as a table length.
    pub fn len(&self) -> usize {
        self.q as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Order of the multiplicative group, `q − 1`.
    pub fn order(&self) -> usize {
        self.q as usize - 1
    }

    pub fn generator(&self) -> u64 {
        self.g
    }

    pub fn reduce(&self, a: i64) -> u64 {
        a.rem_euclid(self.q as i64) as u64
    }

    /// Discrete log base `g`. Errors on `a ≡ 0`.
    pub fn dlog(&self, a: i64) -> Result<usize> {
        let r = self.reduce(a);
        if r == 0 {
            return Err(Error::ZeroResidue(a, self.q));
        }
        Ok(self.dlog[r as usize] as usize)
    }

    /// Discrete log of a reduced nonzero residue, unchecked.
    #[inline]
    pub fn dlog_unchecked(&self, r: usize) -> usize {
        self.dlog[r] as usize
    }

    /// `g^j mod q`.
    #[inline]
    pub fn exp(&self, j: usize) -> u64 {
        self.pow_g[j % self.order()] as u64
    }

    /// `e(j/q)`.
    #[inline]
    pub fn unity(&self, j: u64) -> Complex<T> {
        self.unity[(j % self.q) as usize]
    }

    pub fn unity_table(&self) -> &[Complex<T>] {
        &self.unity
    }

    pub fn mod_inverse(&self, x: i64) -> Result<u64> {
        let r = self.reduce(x);
        if r == 0 {
            return Err(Error::ZeroResidue(x, self.q));
        }
        Ok(pow_mod(r, self.q - 2, self.q))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.q
    }

    /// Prime-length DFT via Rader: `out[y] = Σ_x v[x] e(xy/q)`.
    pub fn dft(&self, v: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        let q = self.len();
        if v.len() != q {
            return Err(Error::Length { expected: q, got: v.len() });
        }
        let n = q - 1;
        let plan = &self.rader;
        let zero = Complex::new(T::zero(), T::zero());
        // u[a] = v[g^{-a}]
        let mut buf = vec![zero; plan.len];
        for (a, slot) in buf.iter_mut().take(n).enumerate() {
            *slot = v[self.pow_g[(n - a) % n] as usize];
        }
        plan.fwd.process(&mut buf);
        for (z, k) in buf.iter_mut().zip(&plan.kernel) {
            *z = *z * *k;
        }
        plan.inv.process(&mut buf);
        let mut out = vec![zero; q];
        let v0 = v[0];
        out[0] = v.iter().copied().fold(zero, |acc, z| acc + z);
        for (b, z) in buf.iter().take(n).enumerate() {
            out[self.pow_g[b] as usize] = v0 + *z;
        }
        Ok(out)
    }

    /// Inverse of [`Self::dft`].
    pub fn idft(&self, v: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        let conj: Vec<_> = v.iter().map(|z| z.conj()).collect();
        let qf = cst::<T>(self.q as f64);
        Ok(self.dft(&conj)?.into_iter().map(|z| z.conj() / qf).collect())
    }

    /// Unitary transform `q^{-1/2} Σ_x v[x] e(xy/q)`.
    pub fn normalized_dft(&self, v: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        let s = cst::<T>(self.q as f64).sqrt().recip();
        Ok(self.dft(v)?.into_iter().map(|z| z * s).collect())
    }

    /// Cyclic transform on the character group, `out[t] = Σ_j v[j] e(±tj/(q−1))`,
    /// unnormalized. `positive = true` gives the `+` sign.
    pub fn group_dft(&self, v: &[Complex<T>], positive: bool) -> Result<Vec<Complex<T>>> {
        if v.len() != self.order() {
            return Err(Error::Length { expected: self.order(), got: v.len() });
        }
        let mut buf = v.to_vec();
        if positive {
            self.group_inv.process(&mut buf);
        } else {
            self.group_fwd.process(&mut buf);
        }
        Ok(buf)
    }
}

/// Textbook O(q²) transform with the same sign convention. Used by `verify`
/// and fixture recording as the reference path.
pub fn dft_naive<T: Real>(v: &[Complex<T>]) -> Vec<Complex<T>> {
    let q = v.len();
    let tau = T::PI() + T::PI();
    (0..q)
        .map(|y| {
            v.iter()
                .enumerate()
                .map(|(x, z)| {
                    let ph = tau * cst::<T>(((x * y) % q) as f64) / cst::<T>(q as f64);
                    *z * Complex::from_polar(T::one(), ph)
                })
                .fold(Complex::new(T::zero(), T::zero()), |a, b| a + b)
        })
        .collect()
}

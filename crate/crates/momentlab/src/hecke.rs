//! Ramanujan `τ`, its convolution inverse, twisted divisor sums, and smoothed
//! twist sums against trace functions.

use num_complex::Complex;
use rayon::prelude::*;

use crate::characters::CharacterGroup;
use crate::trace_fn::{SmoothCutoff, TraceFunction};
use crate::{Error, Result};

pub type C64 = Complex<f64>;

pub const WEIGHT: u32 = 12;
pub const MAX_N: usize = 1_000_000;

/// `τ(n)` and `λ(n) = τ(n)/n^{11/2}` for `1 ≤ n ≤ n_max` (index `0` unused).
#[derive(Debug, Clone, PartialEq)]
pub struct HeckeTable {
    pub n_max: usize,
    pub tau: Vec<i128>,
    pub lambda: Vec<f64>,
}

/// Coefficients of `η(z)³ q^{−1/8} = Σ_k (−1)^k (2k+1) q^{k(k+1)/2}` up to `deg`.
fn jacobi_cube(deg: usize) -> Vec<(usize, i128)> {
    let mut out = Vec::new();
    let mut k = 0usize;
    while k * (k + 1) / 2 <= deg {
        let c = (2 * k + 1) as i128;
        out.push((k * (k + 1) / 2, if k % 2 == 0 { c } else { -c }));
        k += 1;
    }
    out
}

impl HeckeTable {
    /// `Δ = q ∏ (1 − qⁿ)^{24} = (η³)^8`, so `τ(n)` is the `q^{n−1}` coefficient of
    /// the eighth power of the Jacobi series. Exact in `i128`.
    pub fn build(n_max: usize) -> Result<Self> {
        if n_max == 0 || n_max > MAX_N {
            return Err(Error::Invalid(format!("n_max must lie in 1..={MAX_N}, got {n_max}")));
        }
        let deg = n_max - 1;
        let j = jacobi_cube(deg);
        let mut p = vec![0i128; deg + 1];
        for &(e, c) in &j {
            p[e] = c;
        }
        for _ in 1..8 {
            let mut next = vec![0i128; deg + 1];
            for &(e, c) in &j {
                for i in 0..=deg - e {
                    next[i + e] += c * p[i];
                }
            }
            p = next;
        }
        let mut tau = vec![0i128; n_max + 1];
        tau[1..].copy_from_slice(&p);
        let lambda = tau
            .iter()
            .enumerate()
            .map(|(n, &t)| if n == 0 { 0.0 } else { t as f64 / (n as f64).powf(5.5) })
            .collect();
        Ok(HeckeTable { n_max, tau, lambda })
    }

    pub fn tau(&self, n: usize) -> i128 {
        self.tau[n]
    }

    pub fn lambda(&self, n: usize) -> f64 {
        self.lambda[n]
    }
}

/// Smallest-prime-factor sieve.
pub fn spf_sieve(n_max: usize) -> Vec<usize> {
    let mut spf = vec![0usize; n_max + 1];
    for i in 2..=n_max {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n_max {
                if spf[j] == 0 {
                    spf[j] = i;
                }
                j += i;
            }
        }
    }
    spf
}

/// `(p, e)` pairs of `n`.
pub fn factorize(mut n: usize, spf: &[usize]) -> Vec<(usize, u32)> {
    let mut out: Vec<(usize, u32)> = Vec::new();
    while n > 1 {
        let p = spf[n];
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
        n /= p;
    }
    out
}

/// Number of divisors.
pub fn divisor_count(n: usize, spf: &[usize]) -> u64 {
    factorize(n, spf).iter().map(|&(_, e)| e as u64 + 1).product()
}

/// `μ_f`, the Dirichlet inverse of `λ`.
#[derive(Debug, Clone, PartialEq)]
pub struct MuTable {
    pub mu: Vec<f64>,
}

pub fn mu_f(table: &HeckeTable) -> MuTable {
    let spf = spf_sieve(table.n_max);
    let mut mu = vec![0.0; table.n_max + 1];
    if table.n_max >= 1 {
        mu[1] = 1.0;
    }
    for (n, slot) in mu.iter_mut().enumerate().skip(2) {
        *slot = factorize(n, &spf)
            .iter()
            .map(|&(p, e)| match e {
                1 => -table.lambda[p],
                2 => 1.0,
                _ => 0.0,
            })
            .product();
    }
    MuTable { mu }
}

/// `λ_ω(n, it) = Σ_{ab=n} ω(a) (a/b)^{it}` with `ω` a character mod `q`.
pub fn twisted_divisor(group: &CharacterGroup<f64>, omega: usize, n: u64, t: f64) -> Result<C64> {
    if n == 0 {
        return Err(Error::Invalid("n must be positive".into()));
    }
    let mut acc = C64::new(0.0, 0.0);
    let mut a = 1u64;
    while a * a <= n {
        if n % a == 0 {
            let b = n / a;
            acc += group.value(omega, a as i64) * C64::from_polar(1.0, t * (a as f64 / b as f64).ln());
            if a != b {
                acc += group.value(omega, b as i64) * C64::from_polar(1.0, t * (b as f64 / a as f64).ln());
            }
        }
        a += 1;
    }
    Ok(acc)
}

/// Arithmetic weights for [`twist_sum`].
pub enum Coefficients<'a> {
    /// `λ_Δ(n)`.
    Cusp(&'a HeckeTable),
    /// `λ_ω(n, it)`.
    Eisenstein { group: &'a CharacterGroup<f64>, omega: usize, t: f64 },
}

impl Coefficients<'_> {
    fn at(&self, n: u64) -> Result<C64> {
        match self {
            Coefficients::Cusp(h) => {
                if n as usize > h.n_max {
                    return Err(Error::Invalid(format!("τ table ends at {}, need {n}", h.n_max)));
                }
                Ok(C64::new(h.lambda[n as usize], 0.0))
            }
            Coefficients::Eisenstein { group, omega, t } => twisted_divisor(group, *omega, n, *t),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwistSum {
    pub q: u64,
    pub x: f64,
    pub value: C64,
    /// `|S| / (M q)`.
    pub ratio: f64,
    pub terms: usize,
}

/// `S = Σ_n a(n) K(n) V(n/X)`.
pub fn twist_sum(coeff: &Coefficients<'_>, k: &TraceFunction<f64>, v: &SmoothCutoff, x: f64) -> Result<TwistSum> {
    let q = k.q;
    if !(x > 0.0) || x > 10.0 * q as f64 {
        return Err(Error::Invalid(format!("need 0 < X ≤ 10q, got X = {x}")));
    }
    let (lo, hi) = v.support();
    let n0 = ((x * lo).ceil() as u64).max(1);
    let n1 = (x * hi).floor() as u64;
    let parts: Vec<C64> = (n0..=n1)
        .into_par_iter()
        .map(|n| Ok(coeff.at(n)? * k.at(n as i64) * v.eval(n as f64 / x)))
        .collect::<Result<_>>()?;
    let value: C64 = parts.iter().sum();
    Ok(TwistSum { q, x, value, ratio: value.norm() / (k.sup_bound * q as f64), terms: parts.len() })
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let pts: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_values() {
        let h = HeckeTable::build(12).unwrap();
        let want = [1i128, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612, -370944];
        assert_eq!(&h.tau[1..], &want);
    }

    #[test]
    fn mu_small() {
        let h = HeckeTable::build(64).unwrap();
        let m = mu_f(&h);
        assert_eq!(m.mu[1], 1.0);
        assert_eq!(m.mu[8], 0.0);
        assert!((m.mu[3] + h.lambda[3]).abs() < 1e-15);
        assert_eq!(m.mu[4], 1.0);
    }

    #[test]
    fn divisor_basics() {
        let g = CharacterGroup::<f64>::from_modulus(7).unwrap();
        assert!((twisted_divisor(&g, 3, 1, 0.7).unwrap() - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((twisted_divisor(&g, 0, 11, 0.0).unwrap() - C64::new(2.0, 0.0)).norm() < 1e-15);
        assert!(twisted_divisor(&g, 0, 0, 0.0).is_err());
    }

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<_> = [10.0f64, 20.0, 40.0].iter().map(|&x| (x, 3.0 * x.powf(0.5))).collect();
        assert!((log_log_slope(&pts) - 0.5).abs() < 1e-12);
    }
}

//! Twisted hyper-Kloosterman sums and classical twisted Kloosterman sums.
//!
//! `Kl_k(a; ω₁..ω_k) = q^{-(k-1)/2} Σ_{x₁⋯x_k = a} ∏ ωᵢ(xᵢ) e((x₁+⋯+x_k)/q)`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::characters::{CharacterGroup, SumComplex};
use crate::trace_fn::{Kernel, TraceFunction};
use crate::{cst, Error, Real, Result};

pub const MAX_RANK: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KloostermanSpec {
    /// One character index per variable; the rank is `twists.len()`.
    pub twists: Vec<usize>,
}

impl KloostermanSpec {
    pub fn new(twists: Vec<usize>) -> Result<Self> {
        if twists.is_empty() || twists.len() > MAX_RANK {
            return Err(Error::Invalid(format!("rank {} outside 1..={MAX_RANK}", twists.len())));
        }
        Ok(KloostermanSpec { twists })
    }

    pub fn untwisted(k: usize) -> Result<Self> {
        Self::new(vec![0; k])
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }
}

/// How the table is filled at `a = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ZeroConvention {
    /// `Kl_k(0) = 0`.
    ExtensionByZero,
    /// Whatever the Fourier recursion yields when the outermost character is
    /// read as `1` at `0` if principal (and `0` otherwise). Untwisted
    /// `Kl₃(0) = 1/q` under this convention.
    FourierCompleted,
}

/// Direct summation over the `(k−1)`-fold product torus. Cost `O(q^{k−1})`.
pub fn kloosterman_direct<T: Real>(group: &CharacterGroup<T>, spec: &KloostermanSpec, a: i64) -> Result<Complex<T>> {
    let ctx = group.ctx();
    let a = ctx.reduce(a);
    if a == 0 {
        return Err(Error::ZeroResidue(0, ctx.q()));
    }
    let q = ctx.q();
    let k = spec.rank();
    // Walk all (x₁..x_{k−1}); x_k is forced.
    fn rec<T: Real>(
        group: &CharacterGroup<T>,
        tw: &[usize],
        depth: usize,
        prod: u64,
        sum: u64,
        weight: Complex<T>,
        a: u64,
    ) -> Complex<T> {
        let ctx = group.ctx();
        let q = ctx.q();
        if depth + 1 == tw.len() {
            let xk = a * ctx.mod_inverse(prod as i64).expect("nonzero") % q;
            return weight * group.value_reduced(tw[depth], xk as usize) * ctx.unity((sum + xk) % q);
        }
        (1..q)
            .map(|x| rec(group, tw, depth + 1, prod * x % q, (sum + x) % q, weight * group.value_reduced(tw[depth], x as usize), a))
            .sum_complex()
    }
    let one = Complex::new(T::one(), T::zero());
    let raw = rec(group, &spec.twists, 0, 1, 0, one, a);
    Ok(raw * cst::<T>(q as f64).powf(cst::<T>(-((k - 1) as f64) / 2.0)))
}

/// Full table over `F_q` by the Fourier recursion
/// `Kl_k(a) = ω_k(a) · FT(x ↦ ω_k(x) Kl_{k−1}(x̄))(a)`, inner value at `0` set to `0`.
pub fn kloosterman_table<T: Real>(group: &CharacterGroup<T>, spec: &KloostermanSpec, zero: ZeroConvention) -> TraceFunction<T> {
    let ctx = group.ctx();
    let q = ctx.len();
    let zc = Complex::new(T::zero(), T::zero());
    let at_zero = |t: usize| -> T {
        match zero {
            ZeroConvention::FourierCompleted if t == 0 => T::one(),
            _ => T::zero(),
        }
    };
    let t1 = spec.twists[0];
    let mut cur: Vec<Complex<T>> = (0..q)
        .map(|a| if a == 0 { ctx.unity(0) * at_zero(t1) } else { group.value_reduced(t1, a) * ctx.unity(a as u64) })
        .collect();
    let inv: Vec<usize> =
        (0..q).map(|x| if x == 0 { 0 } else { ctx.mod_inverse(x as i64).unwrap() as usize }).collect();
    for &tk in &spec.twists[1..] {
        let mut f = vec![zc; q];
        for x in 1..q {
            f[x] = group.value_reduced(tk, x) * cur[inv[x]];
        }
        let ft = ctx.normalized_dft(&f).expect("length q");
        cur = (0..q)
            .map(|a| if a == 0 { ft[0] * at_zero(tk) } else { group.value_reduced(tk, a) * ft[a] })
            .collect();
    }
    let kernel = Kernel::Kloosterman { spec: spec.clone(), zero };
    TraceFunction::with_bound(ctx.q(), cur, cst::<T>(spec.rank() as f64), kernel)
        .expect("table length q")
}

/// `max_{a≠0} |Kl_k(a)|` from the FFT table.
pub fn weil_scan<T: Real>(group: &CharacterGroup<T>, spec: &KloostermanSpec) -> T {
    let tab = kloosterman_table(group, spec, ZeroConvention::ExtensionByZero);
    tab.values[1..].iter().map(|z| z.norm()).fold(T::zero(), T::max)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn divisor_count(n: u64) -> u64 {
    let mut c = 0;
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            c += if d * d == n { 1 } else { 2 };
        }
        d += 1;
    }
    c
}

fn inverse_mod(a: i64, m: i64) -> Option<i64> {
    let (mut r0, mut r1) = (m, a.rem_euclid(m));
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (s0, s1) = (s1, s0 - k * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(m))
}

/// `S_ω(m,n;c) = Σ_{d mod c, (d,c)=1} ω̄(d) e((m d̄ + n d)/c)` with `ω` read mod `q`.
pub fn classical_kloosterman<T: Real>(group: &CharacterGroup<T>, omega: usize, m: i64, n: i64, c: u64) -> Result<Complex<T>> {
    if c == 0 {
        return Err(Error::Invalid("c = 0".into()));
    }
    let ci = c as i64;
    let tau = T::PI() + T::PI();
    let cf = cst::<T>(c as f64);
    let conj = group.conj_index(omega);
    let mut acc = Complex::new(T::zero(), T::zero());
    for d in 1..=ci {
        let Some(dbar) = inverse_mod(d, ci) else { continue };
        let chi = group.value(conj, d);
        if chi.norm_sqr() == T::zero() {
            continue;
        }
        let ph = ((m.rem_euclid(ci) as i128 * dbar as i128 + n.rem_euclid(ci) as i128 * d as i128) % ci as i128) as f64;
        acc = acc + chi * Complex::from_polar(T::one(), tau * cst::<T>(ph) / cf);
    }
    Ok(acc)
}

/// `τ(c) (m,n,c)^{1/2} c^{1/2}`.
pub fn classical_weil_bound(m: i64, n: i64, c: u64) -> f64 {
    let g = gcd(gcd(m.unsigned_abs(), n.unsigned_abs()), c);
    divisor_count(c) as f64 * (g as f64).sqrt() * (c as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_two_q5() {
        let g = CharacterGroup::<f64>::from_modulus(5).unwrap();
        let spec = KloostermanSpec::untwisted(2).unwrap();
        let v = kloosterman_direct(&g, &spec, 1).unwrap();
        let expect = (2.0 + 2.0 * (4.0 * std::f64::consts::PI / 5.0).cos()) / 5f64.sqrt();
        assert!((v.re - expect).abs() < 1e-12 && v.im.abs() < 1e-12);
        let tab = kloosterman_table(&g, &spec, ZeroConvention::ExtensionByZero);
        for a in 1..5 {
            let d = kloosterman_direct(&g, &spec, a).unwrap();
            assert!((tab.values[a as usize] - d).norm() < 1e-12);
            assert!(d.im.abs() < 1e-12);
        }
    }

    #[test]
    fn rank_one() {
        let g = CharacterGroup::<f64>::from_modulus(11).unwrap();
        let spec = KloostermanSpec::new(vec![3]).unwrap();
        for a in 1..11 {
            let v = kloosterman_direct(&g, &spec, a).unwrap();
            let want = g.value(3, a) * g.ctx().unity(a as u64);
            assert!((v - want).norm() < 1e-12);
        }
        assert!((weil_scan(&g, &spec) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn untwisted_rank_three_at_zero() {
        let g = CharacterGroup::<f64>::from_modulus(13).unwrap();
        let spec = KloostermanSpec::untwisted(3).unwrap();
        let done = kloosterman_table(&g, &spec, ZeroConvention::FourierCompleted);
        assert!((done.values[0] - Complex::new(1.0 / 13.0, 0.0)).norm() < 1e-12);
        let ext = kloosterman_table(&g, &spec, ZeroConvention::ExtensionByZero);
        assert_eq!(ext.values[0], Complex::new(0.0, 0.0));
        assert_eq!(done.values[1..], ext.values[1..]);
    }

    #[test]
    fn classical_small() {
        let g = CharacterGroup::<f64>::from_modulus(5).unwrap();
        let s = classical_kloosterman(&g, 0, 0, 0, 10).unwrap();
        assert!((s.re - 4.0).abs() < 1e-12);
        let s = classical_kloosterman(&g, 0, 1, 1, 5).unwrap();
        assert!((s.re - 0.381966011250105).abs() < 1e-12);
        assert!(classical_kloosterman(&g, 0, 1, 1, 0).is_err());
    }

    #[test]
    fn rank_limits() {
        assert!(KloostermanSpec::new(vec![]).is_err());
        assert!(KloostermanSpec::untwisted(9).is_err());
    }
}

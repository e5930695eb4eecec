//! Independent reference path: `L(χ,s) = q^{−s} Σ_a χ(a) ζ(s, a/q)` with the
//! Hurwitz zeta function by Euler–Maclaurin.

use super::gamma::{BERNOULLI_EVEN, C64};
use crate::characters::CharacterGroup;
use crate::{Error, Result};

/// `ζ(s, a)` for `a > 0`, `s ≠ 1`.
pub fn hurwitz_zeta(s: C64, a: f64) -> Result<C64> {
    if (s - 1.0).norm() < 1e-14 {
        return Err(Error::Invalid("pole of ζ(s, a) at s = 1".into()));
    }
    if !(a > 0.0) {
        return Err(Error::Invalid(format!("Hurwitz parameter must be positive, got {a}")));
    }
    let n = 20 + s.im.abs().ceil() as usize + s.re.abs().ceil() as usize;
    let mut head = C64::new(0.0, 0.0);
    for k in 0..n {
        head += (-s * (k as f64 + a).ln()).exp();
    }
    let na = n as f64 + a;
    let ln_na = na.ln();
    let mut tail = (-(s - 1.0) * ln_na).exp() / (s - 1.0) + 0.5 * (-s * ln_na).exp();
    // Σ_j B_{2j}/(2j)! · s(s+1)⋯(s+2j−2) · (N+a)^{−s−2j+1}
    let mut rising = s;
    let mut fact = 2.0;
    let mut pow = (-(s + 1.0) * ln_na).exp();
    let inv_na2 = 1.0 / (na * na);
    for (j, b) in BERNOULLI_EVEN.iter().enumerate() {
        tail += rising * pow * (b / fact);
        let m = 2.0 * j as f64 + 2.0;
        rising *= (s + m - 1.0) * (s + m);
        fact *= (m + 1.0) * (m + 2.0);
        pow *= inv_na2;
    }
    Ok(head + tail)
}

/// `L(χ_t, s)` by the Hurwitz decomposition. The principal character is refused.
pub fn hurwitz_oracle(group: &CharacterGroup<f64>, t: usize, s: C64) -> Result<C64> {
    let t = t % group.order();
    if t == 0 {
        return Err(Error::ExcludedCharacter(0));
    }
    let q = group.q();
    let mut acc = C64::new(0.0, 0.0);
    for a in 1..q {
        acc += group.value_reduced(t, a as usize) * hurwitz_zeta(s, a as f64 / q as f64)?;
    }
    Ok(acc * (-s * (q as f64).ln()).exp())
}

/// All `L(χ_t, s)` at once (entry `0` is `NaN`), via one transform over the group.
pub fn hurwitz_batch(group: &CharacterGroup<f64>, s: C64) -> Result<Vec<C64>> {
    let ctx = group.ctx();
    let q = ctx.q();
    let n = ctx.order();
    let z: Vec<C64> =
        (0..n).map(|j| hurwitz_zeta(s, ctx.exp(j) as f64 / q as f64)).collect::<Result<_>>()?;
    let scale = (-s * (q as f64).ln()).exp();
    let mut out: Vec<C64> = ctx.group_dft(&z, true)?.into_iter().map(|v| v * scale).collect();
    out[0] = C64::new(f64::NAN, f64::NAN);
    Ok(out)
}

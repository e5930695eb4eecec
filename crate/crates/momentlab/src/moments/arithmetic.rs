//! The single-parity cubic moment rewritten through its Dirichlet series: a
//! congruence sum `nℓ ≡ ±1` plus a dual sum against `Kl₃(±nℓ̄; ω₁, ω₂, 1)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::CharacterGroup;
use crate::exp_sums::{kloosterman_table, KloostermanSpec, ZeroConvention};
use crate::l_values::afe::{triple_weight, twisted_divisor3, TAIL_TOL};
use crate::l_values::{root_number, Damping};
use crate::{Error, Result, C64};

/// The triple sum runs to `~q^{3/2}` terms; above this it is refused.
pub const MAX_ARITHMETIC_Q: u64 = 300;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArithmeticMoment {
    pub q: u64,
    pub ell: u64,
    pub kappa: u8,
    /// `𝒮₁⁺ + (−1)^κ 𝒮₁⁻ + R (𝒮₂⁺ + (−1)^κ 𝒮₂⁻)`, `R = i^{−(κ+κ₁'+κ₂')}`.
    pub value: C64,
    /// Same with the phase `i^{κ₁+κ₂}` in front of the dual sum.
    pub value_conjugate_phase: C64,
    /// `value` minus the characters dropped from the direct moment: equal to
    /// it up to weight truncation.
    pub exact: C64,
    pub s1: [C64; 2],
    pub s2: [C64; 2],
    /// `V(q^{−3/2})`: the `n = ℓ = 1` term alone.
    pub main_weight: f64,
    pub terms: usize,
}

/// Arithmetic side of the parity-`κ` moment (see [`super::even_moment`]).
pub fn moment_via_arithmetic(
    group: &CharacterGroup<f64>,
    t1: usize,
    t2: usize,
    ell: u64,
    kappa: u8,
    damping: Damping,
) -> Result<ArithmeticMoment> {
    let q = group.q();
    if q > MAX_ARITHMETIC_Q {
        return Err(Error::Refused(format!("arithmetic expansion needs q ≤ {MAX_ARITHMETIC_Q}, got {q}")));
    }
    if ell == 0 || ell % q == 0 {
        return Err(Error::ZeroResidue(ell as i64, q));
    }
    if kappa > 1 {
        return Err(Error::Invalid(format!("parity must be 0 or 1, got {kappa}")));
    }
    let ctx = group.ctx();
    let n = group.order();
    let (t1, t2) = (t1 % n, t2 % n);
    let k1 = (kappa as usize + t1) % 2;
    let k2 = (kappa as usize + t2) % 2;
    let w = triple_weight([kappa, k1 as u8, k2 as u8], damping);
    let scale = (q as f64).powf(1.5);
    let n_max = (w.decay_point(TAIL_TOL) * scale).ceil() as usize;
    let b = twisted_divisor3(group, t1, t2, n_max);
    let kl = kloosterman_table(group, &KloostermanSpec::new(vec![t1, t2, 0])?, ZeroConvention::ExtensionByZero);
    let ell_r = ctx.reduce(ell as i64) as usize;
    let ell_inv = ctx.mod_inverse(ell as i64)? as usize;
    let qu = q as usize;
    let sign = if kappa == 0 { 1.0 } else { -1.0 };
    let excluded: Vec<usize> = {
        let mut e = vec![0, (n - t1) % n, (n - t2) % n];
        e.sort_unstable();
        e.dedup();
        e.retain(|t| t % 2 == kappa as usize);
        e
    };

    // Per n: 𝒮₁± pieces, 𝒮₂± pieces, then A_t and B_t for each excluded t.
    let parts: Vec<Vec<C64>> = (1..=n_max)
        .into_par_iter()
        .filter(|m| b[*m] != C64::new(0.0, 0.0))
        .map(|m| {
            let v = w.eval_unchecked(m as f64 / scale) / (m as f64).sqrt();
            let fwd = b[m] * v;
            let dual = b[m].conj() * v;
            let r = m % qu * ell_r % qu;
            let rd = m % qu * ell_inv % qu;
            let mut row = vec![C64::new(0.0, 0.0); 4 + 2 * excluded.len()];
            if r == 1 {
                row[0] = fwd;
            } else if r == qu - 1 {
                row[1] = fwd;
            }
            row[2] = dual * kl.values[rd];
            row[3] = dual * kl.values[qu - rd];
            let m_inv = ctx.mod_inverse(m as i64).expect("coprime") as usize;
            for (i, &t) in excluded.iter().enumerate() {
                row[4 + 2 * i] = fwd * group.value_reduced(t, r);
                row[5 + 2 * i] = dual * group.value_reduced(t, m_inv * ell_r % qu);
            }
            row
        })
        .collect();
    let mut tot = vec![C64::new(0.0, 0.0); 4 + 2 * excluded.len()];
    for row in &parts {
        for (a, x) in tot.iter_mut().zip(row) {
            *a += x;
        }
    }
    let sq = (q as f64).sqrt();
    let s1 = [tot[0], tot[1]];
    let s2 = [tot[2] / sq, tot[3] / sq];
    let phase = |e: i64| C64::new(0.0, 1.0).powi(e as i32);
    let r_fix = phase(-((kappa as i64) + k1 as i64 + k2 as i64));
    let r_conj = phase(t1 as i64 % 2 + t2 as i64 % 2);
    let first = s1[0] + s1[1] * sign;
    let second = s2[0] + s2[1] * sign;
    let value = first + r_fix * second;
    let mut corr = C64::new(0.0, 0.0);
    for (i, &t) in excluded.iter().enumerate() {
        let root = root_number(group, t) * root_number(group, (t + t1) % n) * root_number(group, (t + t2) % n);
        corr += tot[4 + 2 * i] + root * tot[5 + 2 * i];
    }
    Ok(ArithmeticMoment {
        q,
        ell,
        kappa,
        value,
        value_conjugate_phase: first + r_conj * second,
        exact: value - corr * (2.0 / n as f64),
        s1,
        s2,
        main_weight: w.eval_unchecked(1.0 / scale),
        terms: n_max,
    })
}

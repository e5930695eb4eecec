//! Central values of Dirichlet L-functions by the balanced approximate
//! functional equation, single and in batch, plus the triple-product expansion.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::gamma::{ln_gamma, C64};
use super::hurwitz::hurwitz_oracle;
use super::weight::{AfeWeight, Damping, GammaFactor};
use crate::characters::CharacterGroup;
use crate::{Error, Result};

/// Terms beyond this `|V|` are dropped.
pub const TAIL_TOL: f64 = 1e-16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LKind {
    Dirichlet,
    CuspTwist,
    TripleProduct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    Afe,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LValue {
    pub t: usize,
    pub kind: LKind,
    pub value: C64,
    pub method: Method,
    pub terms_used: usize,
}

/// `i^{−κ} ε(χ)`, the sign in `Λ(χ,s) = w Λ(χ̄,1−s)` with
/// `Λ(χ,s) = (q/π)^{s/2} Γ((s+κ)/2) L(χ,s)`.
pub fn root_number(group: &CharacterGroup<f64>, t: usize) -> C64 {
    let kappa = group.parity(t);
    let phase = if kappa == 0 { C64::new(1.0, 0.0) } else { C64::new(0.0, -1.0) };
    phase * group.gauss_sum(t)
}

/// `i^{κ} ε(χ)`: agrees with [`root_number`] on even characters only.
pub fn root_number_conjugate_phase(group: &CharacterGroup<f64>, t: usize) -> C64 {
    let kappa = group.parity(t);
    let phase = if kappa == 0 { C64::new(1.0, 0.0) } else { C64::new(0.0, 1.0) };
    phase * group.gauss_sum(t)
}

/// `Λ(χ,s)` from the Hurwitz oracle.
pub fn completed_l(group: &CharacterGroup<f64>, t: usize, s: C64) -> Result<C64> {
    let q = group.q() as f64;
    let kappa = group.parity(t) as f64;
    let pre = (s / 2.0 * (q / PI).ln() + ln_gamma((s + kappa) / 2.0)).exp();
    Ok(pre * hurwitz_oracle(group, t, s)?)
}

/// `|Λ(χ,s) − w Λ(χ̄,1−s)|`.
pub fn functional_equation_defect(group: &CharacterGroup<f64>, t: usize, s: C64, w: C64) -> Result<f64> {
    let lhs = completed_l(group, t, s)?;
    let rhs = completed_l(group, group.conj_index(t), 1.0 - s)?;
    Ok((lhs - w * rhs).norm())
}

/// Per-parity weights for one modulus.
#[derive(Debug, Clone)]
pub struct DirichletAfe {
    pub q: u64,
    pub damping: Damping,
    pub weights: [AfeWeight; 2],
    /// Last `n` kept for each parity.
    pub n_cut: [usize; 2],
}

impl DirichletAfe {
    pub fn new(q: u64, damping: Damping) -> Self {
        let weights = [0u8, 1].map(|kappa| AfeWeight::new(vec![GammaFactor::Dirichlet { kappa }], damping));
        let sq = (q as f64).sqrt();
        let cap = (50.0 * sq) as usize;
        let n_cut = [0, 1].map(|k| ((weights[k].decay_point(TAIL_TOL) * sq).ceil() as usize).min(cap).max(1));
        DirichletAfe { q, damping, weights, n_cut }
    }

    /// `(n, n^{−1/2} V_κ(n/√q))` for `n ≤ n_cut`, `q ∤ n`.
    pub fn terms(&self, kappa: u8) -> Vec<(usize, f64)> {
        let sq = (self.q as f64).sqrt();
        let w = &self.weights[kappa as usize];
        (1..=self.n_cut[kappa as usize])
            .into_par_iter()
            .filter(|n| *n as u64 % self.q != 0)
            .map(|n| (n, w.eval_unchecked(n as f64 / sq) / (n as f64).sqrt()))
            .collect()
    }
}

/// `L(χ_t, ½)` for one character by direct summation.
pub fn dirichlet_central(group: &CharacterGroup<f64>, afe: &DirichletAfe, t: usize) -> Result<LValue> {
    let t = t % group.order();
    if t == 0 {
        return Err(Error::ExcludedCharacter(0));
    }
    let kappa = group.parity(t);
    let terms = afe.terms(kappa);
    let mut first = C64::new(0.0, 0.0);
    let mut dual = C64::new(0.0, 0.0);
    for &(n, c) in &terms {
        let chi = group.value(t, n as i64);
        first += chi * c;
        dual += chi.conj() * c;
    }
    Ok(LValue {
        t,
        kind: LKind::Dirichlet,
        value: first + root_number(group, t) * dual,
        method: Method::Afe,
        terms_used: terms.len(),
    })
}

/// All `L(χ_t, ½)`, entry `0` is `NaN`. Two transforms over the group per parity.
pub fn central_values(group: &CharacterGroup<f64>, afe: &DirichletAfe) -> Result<Vec<C64>> {
    let ctx = group.ctx();
    let n = ctx.order();
    let mut out = vec![C64::new(f64::NAN, f64::NAN); n];
    for kappa in [0u8, 1] {
        let mut bins = vec![C64::new(0.0, 0.0); n];
        for (m, c) in afe.terms(kappa) {
            bins[ctx.dlog_unchecked(m % ctx.len())] += c;
        }
        let s = ctx.group_dft(&bins, true)?;
        for t in (kappa as usize..n).step_by(2) {
            if t == 0 {
                continue;
            }
            out[t] = s[t] + root_number(group, t) * s[(n - t) % n];
        }
    }
    Ok(out)
}

/// `c(n) = Σ_{n₀n₁n₂ = n} ω₁(n₁) ω₂(n₂)` for `n ≤ n_max`, zero when `q | n`.
pub fn twisted_divisor3(group: &CharacterGroup<f64>, t1: usize, t2: usize, n_max: usize) -> Vec<C64> {
    let q = group.q() as usize;
    let mut one = vec![C64::new(0.0, 0.0); n_max + 1];
    for (n, v) in one.iter_mut().enumerate().skip(1) {
        if n % q != 0 {
            *v = C64::new(1.0, 0.0);
        }
    }
    let conv = |f: &[C64], t: usize| -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); n_max + 1];
        for a in 1..=n_max {
            if f[a] == C64::new(0.0, 0.0) {
                continue;
            }
            for b in 1..=n_max / a {
                if b % q != 0 {
                    out[a * b] += f[a] * group.value_reduced(t, b % q);
                }
            }
        }
        out
    };
    conv(&conv(&one, t1), t2)
}

/// Weight for the triple product `L(χ)L(χω₁)L(χω₂)` at parities `(κ, κ₁', κ₂')`.
pub fn triple_weight(kappas: [u8; 3], damping: Damping) -> AfeWeight {
    AfeWeight::new(kappas.iter().map(|&kappa| GammaFactor::Dirichlet { kappa }).collect(), damping)
}

/// The two-term expansion of `L(χ,½)L(χω₁,½)L(χω₂,½)` with weight argument `n/q^{3/2}`.
pub fn triple_product_afe(group: &CharacterGroup<f64>, t: usize, t1: usize, t2: usize, damping: Damping) -> Result<LValue> {
    let n = group.order();
    let (t, t1, t2) = (t % n, t1 % n, t2 % n);
    if t == 0 || (t + t1) % n == 0 || (t + t2) % n == 0 {
        return Err(Error::ExcludedCharacter(t));
    }
    let kappas = [group.parity(t), group.parity((t + t1) % n), group.parity((t + t2) % n)];
    let w = triple_weight(kappas, damping);
    let scale = (group.q() as f64).powf(1.5);
    let n_max = (w.decay_point(TAIL_TOL) * scale).ceil() as usize;
    let c = twisted_divisor3(group, t1, t2, n_max);
    // Parallel map, sequential sum: the result does not depend on the thread count.
    let parts: Vec<(C64, C64)> = (1..=n_max)
        .into_par_iter()
        .filter(|m| c[*m] != C64::new(0.0, 0.0))
        .map(|m| {
            let v = w.eval_unchecked(m as f64 / scale) / (m as f64).sqrt();
            let chi = group.value(t, m as i64);
            (chi * c[m] * v, (chi * c[m]).conj() * v)
        })
        .collect();
    let (first, dual) = parts.iter().fold((C64::new(0.0, 0.0), C64::new(0.0, 0.0)), |a, b| (a.0 + b.0, a.1 + b.1));
    let root = root_number(group, t) * root_number(group, (t + t1) % n) * root_number(group, (t + t2) % n);
    Ok(LValue { t, kind: LKind::TripleProduct, value: first + root * dual, method: Method::Afe, terms_used: n_max })
}

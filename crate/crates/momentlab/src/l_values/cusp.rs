//! `L(Δ⊗χ, ½)` for the level-1 weight-12 cusp form, conductor `q²`.

use super::afe::{LKind, LValue, Method, TAIL_TOL};
use super::gamma::C64;
use super::weight::{AfeWeight, Damping, GammaFactor};
use crate::characters::CharacterGroup;
use crate::hecke::HeckeTable;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct CuspAfe {
    pub q: u64,
    pub weight: AfeWeight,
    pub n_cut: usize,
}

impl CuspAfe {
    pub fn new(q: u64, damping: Damping) -> Self {
        let weight = AfeWeight::new(vec![GammaFactor::Holomorphic { k: 12 }], damping);
        let n_cut = ((weight.decay_point(TAIL_TOL) * q as f64).ceil() as usize).max(1);
        CuspAfe { q, weight, n_cut }
    }

    /// `(n, λ(n) n^{−1/2} W(n/q))` for `q ∤ n`.
    pub fn terms(&self, hecke: &HeckeTable) -> Result<Vec<(usize, f64)>> {
        if hecke.n_max < self.n_cut {
            return Err(Error::Invalid(format!("τ table ends at {}, need {}", hecke.n_max, self.n_cut)));
        }
        let q = self.q as f64;
        Ok((1..=self.n_cut)
            .filter(|n| *n as u64 % self.q != 0)
            .map(|n| (n, hecke.lambda[n] * self.weight.eval_unchecked(n as f64 / q) / (n as f64).sqrt()))
            .collect())
    }
}

/// The sign `ε(χ)²` of `Λ(Δ⊗χ, s) = w Λ(Δ⊗χ̄, 1−s)`.
pub fn cusp_root_number(group: &CharacterGroup<f64>, t: usize) -> C64 {
    let e = group.gauss_sum(t);
    e * e
}

/// One twist with an explicit sign `w`.
pub fn cusp_twist_with_sign(group: &CharacterGroup<f64>, afe: &CuspAfe, hecke: &HeckeTable, t: usize, w: C64) -> Result<LValue> {
    let t = t % group.order();
    if t == 0 {
        return Err(Error::ExcludedCharacter(0));
    }
    let terms = afe.terms(hecke)?;
    let mut first = C64::new(0.0, 0.0);
    let mut dual = C64::new(0.0, 0.0);
    for &(n, c) in &terms {
        let chi = group.value(t, n as i64);
        first += chi * c;
        dual += chi.conj() * c;
    }
    Ok(LValue { t, kind: LKind::CuspTwist, value: first + w * dual, method: Method::Afe, terms_used: terms.len() })
}

pub fn cusp_twist_central(group: &CharacterGroup<f64>, afe: &CuspAfe, hecke: &HeckeTable, t: usize) -> Result<LValue> {
    cusp_twist_with_sign(group, afe, hecke, t, cusp_root_number(group, t % group.order()))
}

/// All `L(Δ⊗χ_t, ½)`, entry `0` is `NaN`.
pub fn cusp_central_values(group: &CharacterGroup<f64>, afe: &CuspAfe, hecke: &HeckeTable) -> Result<Vec<C64>> {
    let ctx = group.ctx();
    let n = ctx.order();
    let mut bins = vec![C64::new(0.0, 0.0); n];
    for (m, c) in afe.terms(hecke)? {
        bins[ctx.dlog_unchecked(m % ctx.len())] += c;
    }
    let s = ctx.group_dft(&bins, true)?;
    let mut out = vec![C64::new(f64::NAN, f64::NAN); n];
    for t in 1..n {
        out[t] = s[t] + cusp_root_number(group, t) * s[n - t];
    }
    Ok(out)
}

/// τ table large enough for [`CuspAfe::new`] at modulus `q`.
pub fn hecke_for(q: u64, damping: Damping) -> Result<(CuspAfe, HeckeTable)> {
    let afe = CuspAfe::new(q, damping);
    let h = HeckeTable::build(afe.n_cut)?;
    Ok((afe, h))
}

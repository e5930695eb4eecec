use serde::{Deserialize, Serialize};

use super::MomentContext;
use crate::{Error, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MomentKind {
    Dirichlet,
    Cusp,
    DirichletParity(u8),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentResult {
    pub kind: MomentKind,
    pub q: u64,
    pub ell: u64,
    pub omega1: usize,
    pub omega2: usize,
    pub value: C64,
    /// `1` if `ℓ = 1`, else `0`.
    pub main_term: f64,
    pub defect: f64,
    pub characters_used: usize,
    /// `ℓ ≤ q^{3/13}`; only meaningful for the cusp moment.
    pub ell_in_range: bool,
}

impl MomentResult {
    fn build(kind: MomentKind, ctx: &MomentContext, ell: u64, omegas: (usize, usize), value: C64, used: usize) -> Self {
        let main_term = if ell == 1 { 1.0 } else { 0.0 };
        MomentResult {
            kind,
            q: ctx.q(),
            ell,
            omega1: omegas.0,
            omega2: omegas.1,
            value,
            main_term,
            defect: (value - main_term).norm(),
            characters_used: used,
            ell_in_range: (ell as f64) <= (ctx.q() as f64).powf(3.0 / 13.0),
        }
    }
}

/// Sum `f(t)` over the given indices in index order.
fn ordered_sum(ts: impl Iterator<Item = usize>, f: impl Fn(usize) -> C64) -> (C64, usize) {
    ts.fold((C64::new(0.0, 0.0), 0), |(s, c), t| (s + f(t), c + 1))
}

/// `(1/(q−1)) Σ' L(χ,½) L(χω₁,½) L(χω₂,½) χ(ℓ)`, skipping characters that
/// make any factor principal.
pub fn cubic_moment_dirichlet(ctx: &MomentContext, t1: usize, t2: usize, ell: u64) -> Result<MomentResult> {
    ctx.check_ell(ell)?;
    let n = ctx.order();
    let (t1, t2) = (t1 % n, t2 % n);
    let g = &ctx.group;
    let (s, used) = ordered_sum((0..n).filter(|&t| !ctx.excluded(t, t1, t2)), |t| {
        ctx.l[t] * ctx.l[(t + t1) % n] * ctx.l[(t + t2) % n] * g.value(t, ell as i64)
    });
    Ok(MomentResult::build(MomentKind::Dirichlet, ctx, ell, (t1, t2), s / n as f64, used))
}

/// `(2/(q−1)) Σ'_{χ(−1) = (−1)^κ} L(χ,½) L(χω₁,½) L(χω₂,½) χ(ℓ)`.
pub fn even_moment(ctx: &MomentContext, t1: usize, t2: usize, ell: u64, kappa: u8) -> Result<MomentResult> {
    ctx.check_ell(ell)?;
    if kappa > 1 {
        return Err(Error::Invalid(format!("parity must be 0 or 1, got {kappa}")));
    }
    let n = ctx.order();
    let (t1, t2) = (t1 % n, t2 % n);
    let g = &ctx.group;
    let (s, used) = ordered_sum((kappa as usize..n).step_by(2).filter(|&t| !ctx.excluded(t, t1, t2)), |t| {
        ctx.l[t] * ctx.l[(t + t1) % n] * ctx.l[(t + t2) % n] * g.value(t, ell as i64)
    });
    let v = s * (2.0 / n as f64);
    let mut r = MomentResult::build(MomentKind::DirichletParity(kappa), ctx, ell, (t1, t2), v, used);
    // The main term of a single parity class is still δ_{ℓ=1}.
    r.defect = (v - r.main_term).norm();
    Ok(r)
}

/// `(1/(q−1)) Σ_{χ≠1} L(Δ⊗χ,½) L(χ,½) χ(ℓ)`. Inspect `ell_in_range` for the
/// admissible range `ℓ ≤ q^{3/13}`.
pub fn cubic_moment_cusp(ctx: &MomentContext, ell: u64) -> Result<MomentResult> {
    ctx.check_ell(ell)?;
    let cusp = ctx.cusp_values()?;
    let n = ctx.order();
    let g = &ctx.group;
    let (s, used) = ordered_sum(1..n, |t| cusp[t] * ctx.l[t] * g.value(t, ell as i64));
    Ok(MomentResult::build(MomentKind::Cusp, ctx, ell, (0, 0), s / n as f64, used))
}

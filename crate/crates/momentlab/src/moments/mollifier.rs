use serde::{Deserialize, Serialize};

use super::{cubic_moment_dirichlet, MomentContext};
use crate::characters::CharacterGroup;
use crate::hecke::{mu_f, HeckeTable};
use crate::{Error, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MollifierKind {
    /// `x(ℓ) = μ(ℓ) (log(L/ℓ)/log L)²`.
    Dirichlet,
    /// `x_f(ℓ) = μ_f(ℓ) log(L/ℓ)/log L`.
    Cusp,
}

/// Coefficients `x(ℓ)` for `1 ≤ ℓ ≤ L`, stored at index `ℓ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MollifierSpec {
    pub kind: MollifierKind,
    pub len: usize,
    pub coeffs: Vec<f64>,
}

pub fn mobius(n: usize) -> i8 {
    let mut n = n;
    let mut sign = 1i8;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn smoothing(len: usize, ell: usize, power: i32) -> f64 {
    if len == 1 {
        return 1.0;
    }
    ((len as f64 / ell as f64).ln() / (len as f64).ln()).powi(power)
}

impl MollifierSpec {
    pub fn dirichlet(len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::Invalid("mollifier length must be at least 1".into()));
        }
        let coeffs = (0..=len).map(|l| if l == 0 { 0.0 } else { mobius(l) as f64 * smoothing(len, l, 2) }).collect();
        Ok(MollifierSpec { kind: MollifierKind::Dirichlet, len, coeffs })
    }

    pub fn cusp(len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::Invalid("mollifier length must be at least 1".into()));
        }
        let mu = mu_f(&HeckeTable::build(len)?).mu;
        let coeffs = (0..=len).map(|l| if l == 0 { 0.0 } else { mu[l] * smoothing(len, l, 1) }).collect();
        Ok(MollifierSpec { kind: MollifierKind::Cusp, len, coeffs })
    }

    /// `ℳ(χ_t; L) = Σ_{ℓ≤L} x(ℓ) χ_t(ℓ) ℓ^{−1/2}`.
    pub fn eval(&self, group: &CharacterGroup<f64>, t: usize) -> C64 {
        (1..=self.len).map(|l| group.value(t, l as i64) * (self.coeffs[l] / (l as f64).sqrt())).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MollifiedCubic {
    pub q: u64,
    pub len: usize,
    /// Direct character average of `∏ L(χωᵢ,½) ℳ(χωᵢ;L)`.
    pub path_a: C64,
    /// Expansion into plain twisted cubic moments.
    pub path_b: C64,
}

impl MollifiedCubic {
    pub fn discrepancy(&self) -> f64 {
        (self.path_a - self.path_b).norm()
    }
}

pub fn mollified_cubic(ctx: &MomentContext, t1: usize, t2: usize, len: usize) -> Result<MollifiedCubic> {
    let spec = MollifierSpec::dirichlet(len)?;
    let n = ctx.order();
    let (t1, t2) = (t1 % n, t2 % n);
    let g = &ctx.group;
    let m: Vec<C64> = (0..n).map(|t| spec.eval(g, t)).collect();
    let mut a = C64::new(0.0, 0.0);
    for t in (0..n).filter(|&t| !ctx.excluded(t, t1, t2)) {
        let (u1, u2) = ((t + t1) % n, (t + t2) % n);
        a += ctx.l[t] * m[t] * ctx.l[u1] * m[u1] * ctx.l[u2] * m[u2];
    }
    let path_a = a / n as f64;

    let mut path_b = C64::new(0.0, 0.0);
    for l1 in 1..=len {
        for l2 in 1..=len {
            for l3 in 1..=len {
                let x = spec.coeffs[l1] * spec.coeffs[l2] * spec.coeffs[l3];
                if x == 0.0 {
                    continue;
                }
                let prod = (l1 * l2 * l3) as u64;
                let tw = g.value(t1, l2 as i64) * g.value(t2, l3 as i64);
                let moment = cubic_moment_dirichlet(ctx, t1, t2, prod)?;
                path_b += moment.value * tw * (x / (prod as f64).sqrt());
            }
        }
    }
    Ok(MollifiedCubic { q: ctx.q(), len, path_a, path_b })
}

/// `(1/(q−1)) Σ_{χ≠1} |L(χ,½) ℳ(χ;L)|⁴`.
pub fn mollified_fourth(ctx: &MomentContext, len: usize) -> Result<f64> {
    let spec = MollifierSpec::dirichlet(len)?;
    let n = ctx.order();
    let s: f64 = (1..n).map(|t| (ctx.l[t] * spec.eval(&ctx.group, t)).norm_sqr().powi(2)).sum();
    Ok(s / n as f64)
}

/// `(1/(q−1)) Σ_{χ≠1} |L(Δ⊗χ,½) ℳ(Δ⊗χ;L′)|²`.
pub fn mollified_fourth_cusp(ctx: &MomentContext, len: usize) -> Result<f64> {
    let spec = MollifierSpec::cusp(len)?;
    let cusp = ctx.cusp_values()?;
    let n = ctx.order();
    let s: f64 = (1..n).map(|t| (cusp[t] * spec.eval(&ctx.group, t)).norm_sqr()).sum();
    Ok(s / n as f64)
}

/// `1/(1 + 1/λ′)` with `L′ = q^{λ′}`.
pub fn fourth_cusp_reference(q: u64, len: usize) -> f64 {
    let lambda = (len as f64).ln() / (q as f64).ln();
    1.0 / (1.0 + 1.0 / lambda)
}

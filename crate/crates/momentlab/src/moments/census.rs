use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::MomentContext;
use crate::Result;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusResult {
    pub q: u64,
    /// One threshold per factor.
    pub thresholds: Vec<f64>,
    pub count: usize,
    /// `count / (q − 1)`.
    pub proportion: f64,
    /// Characters eligible after exclusions.
    pub eligible: usize,
    pub omega1: usize,
    pub omega2: usize,
    pub seed: Option<u64>,
}

/// Two twist indices drawn uniformly from `0..q−1`.
pub fn random_twists(q: u64, seed: u64) -> (usize, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = q as usize - 1;
    (rng.random_range(0..n), rng.random_range(0..n))
}

/// Count `χ` with `|L(χ,½)|, |L(χω₁,½)|, |L(χω₂,½)|` at or above the given thresholds.
pub fn census_with(ctx: &MomentContext, t1: usize, t2: usize, thresholds: [f64; 3]) -> CensusResult {
    let n = ctx.order();
    let (t1, t2) = (t1 % n, t2 % n);
    let eligible: Vec<usize> = (0..n).filter(|&t| !ctx.excluded(t, t1, t2)).collect();
    let count = eligible
        .iter()
        .filter(|&&t| {
            ctx.l[t].norm() >= thresholds[0]
                && ctx.l[(t + t1) % n].norm() >= thresholds[1]
                && ctx.l[(t + t2) % n].norm() >= thresholds[2]
        })
        .count();
    CensusResult {
        q: ctx.q(),
        thresholds: thresholds.to_vec(),
        count,
        proportion: count as f64 / n as f64,
        eligible: eligible.len(),
        omega1: t1,
        omega2: t2,
        seed: None,
    }
}

/// Census at the `1/log q` thresholds.
pub fn census(ctx: &MomentContext, t1: usize, t2: usize) -> CensusResult {
    let th = 1.0 / (ctx.q() as f64).ln();
    census_with(ctx, t1, t2, [th; 3])
}

/// `|L(Δ⊗χ,½)| ≥ 1/log²q` and `|L(χ,½)| ≥ 1/log q`, `χ ≠ 1`.
pub fn census_cusp(ctx: &MomentContext) -> Result<CensusResult> {
    let cusp = ctx.cusp_values()?;
    let n = ctx.order();
    let lq = (ctx.q() as f64).ln();
    let th = [1.0 / (lq * lq), 1.0 / lq];
    let count = (1..n).filter(|&t| cusp[t].norm() >= th[0] && ctx.l[t].norm() >= th[1]).count();
    Ok(CensusResult {
        q: ctx.q(),
        thresholds: th.to_vec(),
        count,
        proportion: count as f64 / n as f64,
        eligible: n - 1,
        omega1: 0,
        omega2: 0,
        seed: None,
    })
}

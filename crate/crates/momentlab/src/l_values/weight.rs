//! Smooth AFE weights `V(x) = (1/2πi) ∫ G(s) x^{−s} Q(s) ds/s`, with `G` the
//! normalized gamma ratio at `½ + s` and `Q` an even Gaussian damping.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::gamma::{ln_gamma, C64};
use crate::{Error, Result};

/// Archimedean factor, normalized so that `G(0) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GammaFactor {
    /// `π^{−s/2} Γ((½+s+κ)/2) / Γ((½+κ)/2)`.
    Dirichlet { kappa: u8 },
    /// `(2π)^{−s} Γ(s+k/2) / Γ(k/2)` for a weight-`k` holomorphic form.
    Holomorphic { k: u32 },
}

impl GammaFactor {
    pub fn log_ratio(&self, s: C64) -> C64 {
        match *self {
            GammaFactor::Dirichlet { kappa } => {
                let kf = kappa as f64;
                -s * (PI.ln() / 2.0) + ln_gamma((s + 0.5 + kf) / 2.0) - ln_gamma(C64::new((0.5 + kf) / 2.0, 0.0))
            }
            GammaFactor::Holomorphic { k } => {
                let h = k as f64 / 2.0;
                -s * (2.0 * PI).ln() + ln_gamma(s + h) - ln_gamma(C64::new(h, 0.0))
            }
        }
    }
}

/// `Q(s) = exp((s/width)²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Damping {
    pub width: f64,
}

impl Damping {
    /// Library default.
    pub const DEFAULT: Damping = Damping { width: 4.0 };
    /// Second stock choice, used for independence checks.
    pub const ALTERNATE: Damping = Damping { width: 3.0 };
    /// `exp(s²)`.
    pub const NARROW: Damping = Damping { width: 1.0 };

    pub fn log_q(&self, s: C64) -> C64 {
        (s / self.width) * (s / self.width)
    }
}

impl Default for Damping {
    fn default() -> Self {
        Damping::DEFAULT
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Contour {
    pub sigma_right: f64,
    pub sigma_left: f64,
    pub step: f64,
    pub height: f64,
}

impl Contour {
    pub fn for_damping(d: Damping) -> Self {
        Contour { sigma_right: 1.5, sigma_left: -0.25, step: 0.04, height: (6.5 * d.width).max(12.0) }
    }
}

/// Weight with trapezoid nodes precomputed on both contours.
#[derive(Debug, Clone)]
pub struct AfeWeight {
    pub factors: Vec<GammaFactor>,
    pub damping: Damping,
    pub contour: Contour,
    right: Vec<(C64, C64)>,
    left: Vec<(C64, C64)>,
}

impl AfeWeight {
    pub fn new(factors: Vec<GammaFactor>, damping: Damping) -> Self {
        Self::with_contour(factors, damping, Contour::for_damping(damping))
    }

    pub fn with_contour(factors: Vec<GammaFactor>, damping: Damping, contour: Contour) -> Self {
        let nodes = |sigma: f64| -> Vec<(C64, C64)> {
            let m = (contour.height / contour.step).ceil() as i64;
            (-m..=m)
                .map(|j| {
                    let s = C64::new(sigma, j as f64 * contour.step);
                    let lg: C64 = factors.iter().map(|f| f.log_ratio(s)).sum::<C64>() + damping.log_q(s);
                    (s, lg.exp() / s * (contour.step / (2.0 * PI)))
                })
                .collect()
        };
        let right = nodes(contour.sigma_right);
        let left = nodes(contour.sigma_left);
        AfeWeight { factors, damping, contour, right, left }
    }

    /// `Σ_j w_j x^{−s_j}`, real part (the integrand is conjugate-symmetric).
    fn line(nodes: &[(C64, C64)], lx: f64) -> f64 {
        nodes.iter().map(|(s, w)| (w * (-s * lx).exp()).re).sum()
    }

    /// `V(x)`. For `x < 1` the contour sits left of `0` and the residue `1` is added.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::Invalid(format!("weight argument must be positive, got {x}")));
        }
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: f64) -> f64 {
        let lx = x.ln();
        if x >= 1.0 {
            Self::line(&self.right, lx)
        } else {
            1.0 + Self::line(&self.left, lx)
        }
    }

    pub fn eval_many(&self, xs: &[f64]) -> Vec<f64> {
        xs.par_iter().map(|&x| self.eval_unchecked(x)).collect()
    }

    /// Smallest `x ≥ 1` on a `1/8` grid beyond which `|V| < tol` for the next
    /// unit interval. `V` is monotone there in practice.
    pub fn decay_point(&self, tol: f64) -> f64 {
        let mut x = 1.0;
        loop {
            if (0..8).all(|i| self.eval_unchecked(x + i as f64 / 8.0).abs() < tol) {
                return x;
            }
            x += 0.125;
            if x > 1e4 {
                return x;
            }
        }
    }
}

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::{Error, Result};

/// Truncated Taylor series of order 4 in one variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet(pub [f64; 5]);

impl Jet {
    pub fn constant(c: f64) -> Self {
        Jet([c, 0.0, 0.0, 0.0, 0.0])
    }

    pub fn variable(x: f64) -> Self {
        Jet([x, 1.0, 0.0, 0.0, 0.0])
    }

    pub fn add(self, o: Jet) -> Jet {
        Jet(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }

    pub fn scale(self, s: f64) -> Jet {
        Jet(self.0.map(|c| c * s))
    }

    pub fn mul(self, o: Jet) -> Jet {
        Jet(std::array::from_fn(|k| (0..=k).map(|i| self.0[i] * o.0[k - i]).sum()))
    }

    pub fn recip(self) -> Jet {
        let a0 = self.0[0];
        let mut r = [0.0; 5];
        r[0] = 1.0 / a0;
        for k in 1..5 {
            let s: f64 = (1..=k).map(|i| self.0[i] * r[k - i]).sum();
            r[k] = -s / a0;
        }
        Jet(r)
    }

    pub fn exp(self) -> Jet {
        // e' = a' e, solved coefficient by coefficient.
        let mut e = [0.0; 5];
        e[0] = self.0[0].exp();
        for k in 1..5 {
            let s: f64 = (1..=k).map(|i| i as f64 * self.0[i] * e[k - i]).sum();
            e[k] = s / k as f64;
        }
        Jet(e)
    }

    /// `k`-th derivative at the expansion point.
    pub fn derivative(&self, k: usize) -> f64 {
        self.0[k] * (1..=k).product::<usize>() as f64
    }
}

/// Bump `x ↦ exp(1 − 1/(1−t²))`, `t = (x − 3P/2)/(P/(2Q))`, supported in
/// `[P, 2P]` for `Q ≥ 1`, peak value `1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmoothCutoff {
    pub p: f64,
    pub q_scale: f64,
    /// Sampled `C_ν` for `ν = 0..=4`.
    pub c_nu: [f64; 5],
}

impl SmoothCutoff {
    pub fn new(p: f64, q_scale: f64) -> Result<Self> {
        if !(p > 0.0) || !(q_scale >= 1.0) {
            return Err(Error::Invalid(format!("cutoff needs P > 0 and Q ≥ 1, got P={p}, Q={q_scale}")));
        }
        let mut s = SmoothCutoff { p, q_scale, c_nu: [0.0; 5] };
        s.c_nu = s.measure_constants(4000);
        Ok(s)
    }

    pub fn center(&self) -> f64 {
        1.5 * self.p
    }

    pub fn half_width(&self) -> f64 {
        self.p / (2.0 * self.q_scale)
    }

    pub fn support(&self) -> (f64, f64) {
        (self.center() - self.half_width(), self.center() + self.half_width())
    }

    fn bump(t: f64) -> f64 {
        if t.abs() >= 1.0 {
            0.0
        } else {
            (1.0 - 1.0 / (1.0 - t * t)).exp()
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        Self::bump((x - self.center()) / self.half_width())
    }

    /// `f, f', …, f''''` at `x`.
    pub fn derivatives(&self, x: f64) -> [f64; 5] {
        let w = self.half_width();
        let t = (x - self.center()) / w;
        if t.abs() >= 1.0 {
            return [0.0; 5];
        }
        let tj = Jet::variable(t);
        let u = Jet::constant(1.0).add(tj.mul(tj).scale(-1.0));
        let g = Jet::constant(1.0).add(u.recip().scale(-1.0)).exp();
        std::array::from_fn(|k| g.derivative(k) / w.powi(k as i32))
    }

    /// `max |x^ν f^{(ν)}(x)| / Q^ν` over a uniform sample of the support.
    pub fn measure_constants(&self, samples: usize) -> [f64; 5] {
        let (lo, hi) = self.support();
        let mut c = [0.0f64; 5];
        for i in 1..samples {
            let x = lo + (hi - lo) * i as f64 / samples as f64;
            let d = self.derivatives(x);
            for nu in 0..5 {
                c[nu] = c[nu].max((x.powi(nu as i32) * d[nu]).abs() / self.q_scale.powi(nu as i32));
            }
        }
        c
    }

    /// `f̂(ξ) = ∫ f(x) e^{−2πixξ} dx` by the trapezoid rule on the support.
    pub fn fourier(&self, xi: f64) -> Complex<f64> {
        let w = self.half_width();
        let nodes = 2 * (w * xi.abs()).ceil() as usize + 600;
        let h = 2.0 / nodes as f64;
        let mut acc = Complex::new(0.0, 0.0);
        for j in 1..nodes {
            let t = -1.0 + j as f64 * h;
            acc += Complex::from_polar(Self::bump(t), -2.0 * PI * w * t * xi);
        }
        acc * (h * w) * Complex::from_polar(1.0, -2.0 * PI * self.center() * xi)
    }
}

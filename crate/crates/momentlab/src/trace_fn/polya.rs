use num_complex::Complex;

use super::{SmoothCutoff, TraceFunction};
use crate::ff::PrimeContext;
use crate::{Error, Real, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyaReport {
    /// `Σ_n K(n) f(n/N)`.
    pub direct: Complex<f64>,
    /// `(N/√q) Σ_h K̂(h) f̂(hN/q)`.
    pub completed: Complex<f64>,
    /// Number of dual frequencies kept.
    pub dual_terms: usize,
    /// `1e−6 · N · M`.
    pub tolerance: f64,
}

impl PolyaReport {
    pub fn agrees(&self) -> bool {
        (self.direct - self.completed).norm() <= self.tolerance
    }
}

fn c64<T: Real>(z: Complex<T>) -> Complex<f64> {
    Complex::new(z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN))
}

/// Direct smoothed sum against its Poisson-completed form.
pub fn polya_check<T: Real>(k: &TraceFunction<T>, ctx: &PrimeContext<T>, f: &SmoothCutoff, n_scale: f64) -> Result<PolyaReport> {
    let q = k.q as f64;
    if !(n_scale > 0.0) || n_scale > q * q {
        return Err(Error::Invalid(format!("need 0 < N ≤ q², got N = {n_scale}")));
    }
    let (lo, hi) = f.support();
    let n0 = (n_scale * lo).ceil() as i64;
    let n1 = (n_scale * hi).floor() as i64;
    let mut direct = Complex::new(0.0, 0.0);
    for n in n0..=n1 {
        direct += c64(k.at(n)) * f.eval(n as f64 / n_scale);
    }

    let khat = k.fourier(ctx)?;
    let mass = f.fourier(0.0).norm();
    let step = n_scale / q;
    let w = f.half_width();
    let mut completed = c64(khat.values[0]) * f.fourier(0.0);
    let mut dual_terms = 1;
    let mut quiet = 0;
    let mut h = 1i64;
    loop {
        let xi = h as f64 * step;
        let plus = f.fourier(xi);
        let minus = plus.conj(); // f real
        completed += c64(khat.at(h)) * plus + c64(khat.at(-h)) * minus;
        dual_terms += 2;
        // The quadrature floor sits near 1e−16·mass, so stop a little above it.
        if xi * w > 1e4 || (xi * w > 10.0 && plus.norm() < 1e-13 * mass) {
            quiet += 1;
            if quiet >= 10 {
                break;
            }
        } else {
            quiet = 0;
        }
        h += 1;
    }
    completed *= n_scale / q.sqrt();
    let m = k.sup_bound.to_f64().unwrap_or(f64::INFINITY);
    Ok(PolyaReport { direct, completed, dual_terms, tolerance: 1e-6 * n_scale * m })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_kernel() {
        let ctx = PrimeContext::<f64>::new(13).unwrap();
        let k = TraceFunction::constant(13);
        let f = SmoothCutoff::new(1.0, 2.0).unwrap();
        let r = polya_check(&k, &ctx, &f, 40.0).unwrap();
        let plain: f64 = (40..=80).map(|n| f.eval(n as f64 / 40.0)).sum();
        assert!((r.direct.re - plain).abs() < 1e-12);
        assert!(r.agrees(), "{r:?}");
    }

    #[test]
    fn delta_kernel_counts_multiples() {
        let ctx = PrimeContext::<f64>::new(7).unwrap();
        let k = TraceFunction::delta(7, 0);
        let f = SmoothCutoff::new(1.0, 1.0).unwrap();
        let r = polya_check(&k, &ctx, &f, 30.0).unwrap();
        let want: f64 = (30..=60).filter(|n| n % 7 == 0).map(|n| f.eval(n as f64 / 30.0)).sum();
        assert!((r.direct.re - want).abs() < 1e-12);
        assert!((r.completed - r.direct).norm() < 1e-8);
    }
}

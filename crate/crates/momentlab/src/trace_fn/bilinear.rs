use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

use super::TraceFunction;
use crate::{Error, Real, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BilinearReport {
    pub q: u64,
    pub m_len: usize,
    pub n_len: usize,
    /// `|Σ α_m β_n K(mn)| / (‖α‖₂‖β‖₂√(MN))` with random unit coefficients.
    pub ratio_random: f64,
    /// Same with `β ≡ 1`.
    pub ratio_type1: f64,
    /// `q^{1/4} (log q)^{1/2} / N^{1/2}`.
    pub prime_factor: f64,
    /// `(M² N⁵ / q³)^{−1/12}`.
    pub sawin_factor: f64,
}

fn unit_phases(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex<f64>> {
    (0..n).map(|_| Complex::from_polar(1.0, 2.0 * PI * rng.random::<f64>())).collect()
}

fn ratio<T: Real>(k: &TraceFunction<T>, a: &[Complex<f64>], b: &[Complex<f64>]) -> f64 {
    let q = k.q;
    let mut s = Complex::new(0.0, 0.0);
    for (i, am) in a.iter().enumerate() {
        let m = (i + 1) as u64;
        let mut inner = Complex::new(0.0, 0.0);
        for (j, bn) in b.iter().enumerate() {
            let v = k.values[(m * (j as u64 + 1) % q) as usize];
            inner += bn * Complex::new(v.re.to_f64().unwrap(), v.im.to_f64().unwrap());
        }
        s += am * inner;
    }
    let na = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let nb = b.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    s.norm() / (na * nb * ((a.len() * b.len()) as f64).sqrt())
}

/// Type-II (random `α, β`) and type-I (`β ≡ 1`) sums over `1 ≤ m ≤ M`, `1 ≤ n ≤ N`.
pub fn bilinear_experiment<T: Real>(k: &TraceFunction<T>, m_len: usize, n_len: usize, seed: u64) -> Result<BilinearReport> {
    let q = k.q as usize;
    if m_len == 0 || n_len == 0 || m_len >= q || n_len >= q {
        return Err(Error::Invalid(format!("ranges must lie in [1, q): M={m_len}, N={n_len}, q={q}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alpha = unit_phases(&mut rng, m_len);
    let beta = unit_phases(&mut rng, n_len);
    let ones = vec![Complex::new(1.0, 0.0); n_len];
    let qf = q as f64;
    let (mf, nf) = (m_len as f64, n_len as f64);
    Ok(BilinearReport {
        q: k.q,
        m_len,
        n_len,
        ratio_random: ratio(k, &alpha, &beta),
        ratio_type1: ratio(k, &alpha, &ones),
        prime_factor: qf.powf(0.25) * qf.ln().sqrt() / nf.sqrt(),
        sawin_factor: (mf * mf * nf.powi(5) / qf.powi(3)).powf(-1.0 / 12.0),
    })
}

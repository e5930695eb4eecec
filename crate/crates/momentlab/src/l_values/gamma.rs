//! Complex log-gamma and the Bernoulli numbers shared with the Hurwitz oracle.

use num_complex::Complex;
use std::f64::consts::PI;

pub type C64 = Complex<f64>;

/// `B_2, B_4, …, B_30`.
pub const BERNOULLI_EVEN: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

/// `ln Γ(z)` on a branch that is continuous off the negative real axis.
/// Only `exp` of differences is used downstream, so the branch is immaterial.
pub fn ln_gamma(z: C64) -> C64 {
    if z.re < 0.5 {
        // Γ(z)Γ(1−z) = π / sin(πz)
        return C64::new(PI.ln(), 0.0) - (z * PI).sin().ln() - ln_gamma(1.0 - z);
    }
    let mut z = z;
    let mut shift = C64::new(0.0, 0.0);
    while z.norm() < 15.0 {
        shift += z.ln();
        z += 1.0;
    }
    let zinv = z.inv();
    let z2 = zinv * zinv;
    let mut series = C64::new(0.0, 0.0);
    let mut pow = zinv;
    for (k, b) in BERNOULLI_EVEN.iter().take(8).enumerate() {
        let n = 2.0 * (k + 1) as f64;
        series += pow * (b / (n * (n - 1.0)));
        pow *= z2;
    }
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series - shift
}

pub fn gamma(z: C64) -> C64 {
    ln_gamma(z).exp()
}

//! Brute-force reference implementations shared by the integration tests.
//! Nothing here calls into the library's arithmetic.
#![allow(dead_code)]

use num_complex::Complex;
use std::f64::consts::PI;

pub type C64 = Complex<f64>;

pub fn e(x: f64) -> C64 {
    C64::from_polar(1.0, 2.0 * PI * x)
}

pub fn primitive_root(q: u64) -> u64 {
    'outer: for g in 2..q {
        let mut x = 1u64;
        for k in 1..q - 1 {
            x = x * g % q;
            if x == 1 && k < q - 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("q prime")
}

/// `dlog[a]` for `1 ≤ a < q`.
pub fn dlog_table(q: u64) -> Vec<usize> {
    let g = primitive_root(q);
    let mut d = vec![0usize; q as usize];
    let mut x = 1u64;
    for k in 0..q - 1 {
        d[x as usize] = k as usize;
        x = x * g % q;
    }
    d
}

pub struct Chars {
    pub q: u64,
    pub dlog: Vec<usize>,
}

impl Chars {
    pub fn new(q: u64) -> Self {
        Chars { q, dlog: dlog_table(q) }
    }

    pub fn chi(&self, t: usize, a: i64) -> C64 {
        let r = a.rem_euclid(self.q as i64) as usize;
        if r == 0 {
            return C64::new(0.0, 0.0);
        }
        e((t * self.dlog[r]) as f64 / (self.q - 1) as f64)
    }

    /// `q^{−1/2} Σ_x χ_t(x) e(x/q)`.
    pub fn gauss(&self, t: usize) -> C64 {
        let s: C64 = (1..self.q).map(|x| self.chi(t, x as i64) * e(x as f64 / self.q as f64)).sum();
        s / (self.q as f64).sqrt()
    }

    /// Rank-2 and rank-3 twisted hyper-Kloosterman sums by brute force.
    pub fn kloosterman(&self, twists: &[usize], a: i64) -> C64 {
        let q = self.q as i64;
        let inv = |x: i64| -> i64 { (1..q).find(|y| x * y % q == 1).unwrap() };
        let a = a.rem_euclid(q);
        let ef = |x: i64| e(x.rem_euclid(q) as f64 / q as f64);
        match twists.len() {
            2 => {
                let s: C64 = (1..q)
                    .map(|x| {
                        let y = a * inv(x) % q;
                        self.chi(twists[0], x) * self.chi(twists[1], y) * ef(x + y)
                    })
                    .sum();
                s / (q as f64).sqrt()
            }
            3 => {
                let mut s = C64::new(0.0, 0.0);
                for x in 1..q {
                    for y in 1..q {
                        let z = a * inv(x * y % q) % q;
                        s += self.chi(twists[0], x) * self.chi(twists[1], y) * self.chi(twists[2], z) * ef(x + y + z);
                    }
                }
                s / q as f64
            }
            _ => panic!("rank 2 or 3 only"),
        }
    }

    /// `Σ_{n ≤ N} χ_t(n) n^{−2}`, tail below `1/N`.
    pub fn l_at_two(&self, t: usize, n_max: usize) -> C64 {
        (1..=n_max).map(|n| self.chi(t, n as i64) / (n as f64 * n as f64)).sum()
    }
}

pub fn naive_dft(v: &[C64]) -> Vec<C64> {
    let q = v.len();
    (0..q)
        .map(|y| v.iter().enumerate().map(|(x, a)| a * e(((x * y) % q) as f64 / q as f64)).sum())
        .collect()
}

/// `τ(n)` for `n ≤ n_max` from `q ∏ (1 − qⁿ)^{24}`, with the product taken as
/// Euler's pentagonal series raised to the 24th power.
pub fn tau_by_product(n_max: usize) -> Vec<i128> {
    let deg = n_max - 1;
    let mut pent = Vec::new();
    for k in 0i64.. {
        let a = (k * (3 * k - 1) / 2) as usize;
        if a > deg {
            break;
        }
        let s = if k % 2 == 0 { 1 } else { -1 };
        pent.push((a, s));
        let b = (k * (3 * k + 1) / 2) as usize;
        if k > 0 && b <= deg {
            pent.push((b, s));
        }
    }
    let mut p = vec![0i128; deg + 1];
    p[0] = 1;
    for _ in 0..24 {
        let mut next = vec![0i128; deg + 1];
        for &(e, c) in &pent {
            for i in 0..=deg - e {
                next[i + e] += c * p[i];
            }
        }
        p = next;
    }
    let mut tau = vec![0i128; n_max + 1];
    tau[1..].copy_from_slice(&p);
    tau
}

pub struct Fixture {
    pub generator: u64,
    pub central: Vec<Option<C64>>,
    pub at_two: Vec<Option<C64>>,
    pub raw: serde_json::Value,
}

pub fn fixture(q: u64) -> Fixture {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/l_values.json")).unwrap();
    let all: serde_json::Value = serde_json::from_str(&text).unwrap();
    let f = &all[q.to_string()];
    let parse = |key: &str| -> Vec<Option<C64>> {
        f[key]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_array().map(|p| C64::new(p[0].as_f64().unwrap(), p[1].as_f64().unwrap())))
            .collect()
    };
    Fixture { generator: f["generator"].as_u64().unwrap(), central: parse("central"), at_two: parse("at_two"), raw: f.clone() }
}

pub fn pair(v: &serde_json::Value) -> C64 {
    C64::new(v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

pub fn primes_between(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)).collect()
}

//! `PGL₂(F_q)` elements in canonical form and their structural class.

use serde::{Deserialize, Serialize};

use crate::ff::pow_mod;
use crate::{Error, Result};

/// A point of `P¹(F_q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum P1 {
    Finite(u64),
    Infinity,
}

/// Canonical representative: the first nonzero entry among `a, c` is `1`.
/// (`a = 0` forces `c ≠ 0` for an invertible matrix.)
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProjMatrix {
    pub q: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

fn inv(x: u64, q: u64) -> u64 {
    pow_mod(x, q - 2, q)
}

impl ProjMatrix {
    pub fn new(q: u64, a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let r = |x: i64| x.rem_euclid(q as i64) as u64;
        let (a, b, c, d) = (r(a), r(b), r(c), r(d));
        if (a * d % q + q - b * c % q) % q == 0 {
            return Err(Error::Singular);
        }
        let s = if a != 0 { inv(a, q) } else { inv(c, q) };
        Ok(ProjMatrix { q, a: a * s % q, b: b * s % q, c: c * s % q, d: d * s % q })
    }

    pub fn identity(q: u64) -> Self {
        ProjMatrix { q, a: 1, b: 0, c: 0, d: 1 }
    }

    pub fn det(&self) -> u64 {
        let q = self.q;
        (self.a * self.d % q + q - self.b * self.c % q) % q
    }

    pub fn trace(&self) -> u64 {
        (self.a + self.d) % self.q
    }

    /// `tr² − 4 det`.
    pub fn discriminant(&self) -> u64 {
        let q = self.q;
        let t = self.trace();
        (t * t % q + 4 * (q - self.det())) % q
    }

    pub fn is_identity(&self) -> bool {
        self.b == 0 && self.c == 0 && self.a == self.d
    }

    /// Möbius action on `P¹`.
    pub fn act(&self, z: P1) -> P1 {
        let q = self.q;
        match z {
            P1::Infinity => {
                if self.c == 0 {
                    P1::Infinity
                } else {
                    P1::Finite(self.a * inv(self.c, q) % q)
                }
            }
            P1::Finite(z) => {
                let den = (self.c * z + self.d) % q;
                let num = (self.a * z + self.b) % q;
                if den == 0 {
                    P1::Infinity
                } else {
                    P1::Finite(num * inv(den, q) % q)
                }
            }
        }
    }

    /// All `q³ − q` canonical representatives in a fixed order.
    pub fn enumerate(q: u64) -> Vec<ProjMatrix> {
        let mut out = Vec::with_capacity((q * q * q - q) as usize);
        for c in 0..q {
            for b in 0..q {
                for d in 0..q {
                    if (d + q - b * c % q) % q != 0 {
                        out.push(ProjMatrix { q, a: 1, b, c, d });
                    }
                }
            }
        }
        for b in 1..q {
            for d in 0..q {
                out.push(ProjMatrix { q, a: 0, b, c: 1, d });
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConjugacyType {
    Identity,
    Parabolic,
    Split,
    Nonsplit,
}

/// Primary tag. Assigned by the first matching rule in this order:
/// parabolic, swaps `0 ↔ ∞`, fixes `∞`, maps `0 ↦ ∞`, maps `∞ ↦ 0`,
/// split torus, nonsplit torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassTag {
    Parabolic,
    NormalizerMinusTorus,
    UpperTriangularB,
    BTimesW,
    WTimesB,
    TorusSplit,
    TorusNonsplit,
}

impl ClassTag {
    pub const ALL: [ClassTag; 7] = [
        ClassTag::Parabolic,
        ClassTag::NormalizerMinusTorus,
        ClassTag::UpperTriangularB,
        ClassTag::BTimesW,
        ClassTag::WTimesB,
        ClassTag::TorusSplit,
        ClassTag::TorusNonsplit,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ClassTag::Parabolic => "parabolic",
            ClassTag::NormalizerMinusTorus => "normalizer_minus_torus",
            ClassTag::UpperTriangularB => "upper_triangular_B",
            ClassTag::BTimesW => "B_times_w",
            ClassTag::WTimesB => "w_times_B",
            ClassTag::TorusSplit => "torus_split",
            ClassTag::TorusNonsplit => "torus_nonsplit",
        }
    }
}

/// Fixed points of a non-identity element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FixedPoints {
    /// Identity fixes everything.
    All,
    One(P1),
    Two(P1, P1),
    /// Conjugate pair `u ± v√ν` in `F_{q²}`, with `ν` a non-residue.
    Conjugate { u: u64, v: u64, nu: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixClass {
    pub tag: ClassTag,
    pub conjugacy: ConjugacyType,
    pub in_b: bool,
    pub in_bw: bool,
    pub in_wb: bool,
    pub involution: bool,
    pub fixed_points: FixedPoints,
}

fn sqrt_mod(n: u64, q: u64) -> Option<u64> {
    if n == 0 {
        return Some(0);
    }
    if pow_mod(n, (q - 1) / 2, q) != 1 {
        return None;
    }
    // Desk-scale q: a scan is fine.
    (1..q).find(|&x| x * x % q == n)
}

pub fn classify(g: &ProjMatrix) -> MatrixClass {
    let q = g.q;
    let disc = g.discriminant();
    let in_b = g.c == 0;
    let in_bw = g.d == 0;
    let in_wb = g.a == 0;
    let involution = g.trace() == 0;
    let two = |x: u64| (2 * x) % q;
    let (conjugacy, fixed_points) = if g.is_identity() {
        (ConjugacyType::Identity, FixedPoints::All)
    } else if disc == 0 {
        let p = if g.c == 0 {
            P1::Infinity
        } else {
            P1::Finite((g.a + q - g.d) % q * inv(two(g.c), q) % q)
        };
        (ConjugacyType::Parabolic, FixedPoints::One(p))
    } else if let Some(r) = sqrt_mod(disc, q) {
        let fp = if g.c == 0 {
            // Fixes ∞ and the root of (d − a) z = b.
            let z = g.b * inv((g.d + q - g.a) % q, q) % q;
            let (x, y) = (P1::Finite(z), P1::Infinity);
            FixedPoints::Two(x.min(y), x.max(y))
        } else {
            let i2c = inv(two(g.c), q);
            let base = (g.a + q - g.d) % q;
            let x = P1::Finite((base + r) % q * i2c % q);
            let y = P1::Finite((base + q - r) % q * i2c % q);
            FixedPoints::Two(x.min(y), x.max(y))
        };
        (ConjugacyType::Split, fp)
    } else {
        let i2c = inv(two(g.c), q);
        let u = (g.a + q - g.d) % q * i2c % q;
        (ConjugacyType::Nonsplit, FixedPoints::Conjugate { u, v: i2c, nu: disc })
    };
    let tag = if conjugacy == ConjugacyType::Parabolic {
        ClassTag::Parabolic
    } else if g.a == 0 && g.d == 0 {
        ClassTag::NormalizerMinusTorus
    } else if in_b {
        ClassTag::UpperTriangularB
    } else if in_bw {
        ClassTag::BTimesW
    } else if in_wb {
        ClassTag::WTimesB
    } else if conjugacy == ConjugacyType::Split {
        ClassTag::TorusSplit
    } else {
        ClassTag::TorusNonsplit
    };
    MatrixClass { tag, conjugacy, in_b, in_bw, in_wb, involution, fixed_points }
}

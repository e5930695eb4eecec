use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::pgl2::{classify, ClassTag, ConjugacyType, FixedPoints, MatrixClass, ProjMatrix, P1};
use super::TraceFunction;
use crate::characters::CharacterGroup;
use crate::{cst, Error, Real, Result};

pub const EXHAUSTIVE_MAX_Q: u64 = 17;

/// `𝒞(K, ω; γ) = Σ_{z : cz+d ≠ 0} ω̄(cz+d) K̂(γz) conj(K̂(z))`, given `K̂`.
pub fn correlation<T: Real>(
    khat: &TraceFunction<T>,
    group: &CharacterGroup<T>,
    omega: usize,
    g: &ProjMatrix,
) -> Result<Complex<T>> {
    let q = khat.q;
    if g.q != q || group.q() != q {
        return Err(Error::Invalid("modulus mismatch".into()));
    }
    if g.det() == 0 {
        return Err(Error::Singular);
    }
    let conj = group.conj_index(omega);
    let mut acc = Complex::new(T::zero(), T::zero());
    for z in 0..q {
        let den = (g.c * z + g.d) % q;
        if den == 0 {
            continue;
        }
        let P1::Finite(gz) = g.act(P1::Finite(z)) else { continue };
        let w = group.value_reduced(conj, den as usize);
        acc = acc + w * khat.values[gz as usize] * khat.values[z as usize].conj();
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationRecord<T: Real = f64> {
    pub gamma: ProjMatrix,
    pub value: Complex<T>,
    pub exceeds: bool,
    pub class: MatrixClass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanMode {
    Exhaustive,
    Sample { n: usize, seed: u64 },
}

#[derive(Debug, Clone)]
pub struct ScanReport<T: Real = f64> {
    pub q: u64,
    pub threshold_m: T,
    pub records: Vec<CorrelationRecord<T>>,
    /// Primary-tag counts over every visited matrix.
    pub class_counts: BTreeMap<ClassTag, usize>,
    /// Primary-tag counts over the matrices with `|𝒞| > M√q`.
    pub exceeding_counts: BTreeMap<ClassTag, usize>,
    pub parabolic_exceeding: usize,
    /// Distinct fixed-point pairs of exceeding semisimple elements outside `B ∪ Bw ∪ wB`.
    pub torus_pairs: usize,
    /// No exceeding parabolic element and at most `M` torus pairs needed.
    pub structured: bool,
}

impl<T: Real> ScanReport<T> {
    pub fn exceeding(&self) -> impl Iterator<Item = &CorrelationRecord<T>> {
        self.records.iter().filter(|r| r.exceeds)
    }
}

fn sample_matrices(q: u64, n: usize, seed: u64) -> Vec<ProjMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let e: [i64; 4] = std::array::from_fn(|_| rng.random_range(0..q as i64));
        if let Ok(g) = ProjMatrix::new(q, e[0], e[1], e[2], e[3]) {
            out.push(g);
        }
    }
    out
}

/// Evaluate `𝒞` over all of `PGL₂(F_q)` (small `q`) or a seeded sample and
/// classify the matrices with `|𝒞| > M√q`.
pub fn correlation_scan<T: Real>(
    k: &TraceFunction<T>,
    group: &CharacterGroup<T>,
    omega: usize,
    m: T,
    mode: ScanMode,
) -> Result<ScanReport<T>> {
    let q = k.q;
    let mats = match mode {
        ScanMode::Exhaustive => {
            if q > EXHAUSTIVE_MAX_Q {
                return Err(Error::Refused(format!(
                    "exhaustive scan needs q ≤ {EXHAUSTIVE_MAX_Q}; use sample mode for q = {q}"
                )));
            }
            ProjMatrix::enumerate(q)
        }
        ScanMode::Sample { n, seed } => sample_matrices(q, n, seed),
    };
    let khat = k.fourier(group.ctx())?;
    let cut = m * cst::<T>(q as f64).sqrt();
    let records: Vec<CorrelationRecord<T>> = mats
        .par_iter()
        .map(|g| {
            let value = correlation(&khat, group, omega, g)?;
            Ok(CorrelationRecord { gamma: *g, value, exceeds: value.norm() > cut, class: classify(g) })
        })
        .collect::<Result<_>>()?;

    let mut class_counts = BTreeMap::new();
    let mut exceeding_counts = BTreeMap::new();
    let mut pairs = BTreeSet::new();
    let mut parabolic_exceeding = 0;
    for r in &records {
        *class_counts.entry(r.class.tag).or_insert(0) += 1;
        if !r.exceeds {
            continue;
        }
        *exceeding_counts.entry(r.class.tag).or_insert(0) += 1;
        if r.class.conjugacy == ConjugacyType::Parabolic {
            parabolic_exceeding += 1;
        }
        let bruhat = r.class.in_b || r.class.in_bw || r.class.in_wb;
        if !bruhat {
            match r.class.fixed_points {
                FixedPoints::Two(x, y) => {
                    pairs.insert(format!("{x:?}|{y:?}"));
                }
                FixedPoints::Conjugate { u, v, nu } => {
                    // Normalize the conjugate pair by v ↦ min(v, −v).
                    let v = v.min(q - v);
                    pairs.insert(format!("{u}±{v}√{nu}"));
                }
                _ => {}
            }
        }
    }
    let torus_pairs = pairs.len();
    let structured = parabolic_exceeding == 0 && cst::<T>(torus_pairs as f64) <= m;
    Ok(ScanReport { q, threshold_m: m, records, class_counts, exceeding_counts, parabolic_exceeding, torus_pairs, structured })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exp_sums::{KloostermanSpec, ZeroConvention};

    #[test]
    fn identity_is_parseval() {
        let g = CharacterGroup::<f64>::from_modulus(11).unwrap();
        let k = TraceFunction::kloosterman(&g, &KloostermanSpec::untwisted(2).unwrap(), ZeroConvention::ExtensionByZero);
        let khat = k.fourier(g.ctx()).unwrap();
        let c = correlation(&khat, &g, 0, &ProjMatrix::identity(11)).unwrap();
        assert!((c.re - k.norm_sq()).abs() < 1e-9 && c.im.abs() < 1e-9);
    }

    #[test]
    fn exhaustive_refused_for_large_q() {
        let g = CharacterGroup::<f64>::from_modulus(19).unwrap();
        let k = TraceFunction::constant(19);
        assert!(matches!(correlation_scan(&k, &g, 0, 1.0, ScanMode::Exhaustive), Err(Error::Refused(_))));
    }

    #[test]
    fn sampled_scan_is_reproducible() {
        let g = CharacterGroup::<f64>::from_modulus(23).unwrap();
        let k = TraceFunction::kloosterman(&g, &KloostermanSpec::untwisted(3).unwrap(), ZeroConvention::ExtensionByZero);
        let a = correlation_scan(&k, &g, 0, 2.0, ScanMode::Sample { n: 50, seed: 3 }).unwrap();
        let b = correlation_scan(&k, &g, 0, 2.0, ScanMode::Sample { n: 50, seed: 3 }).unwrap();
        assert_eq!(a.records, b.records);
    }
}

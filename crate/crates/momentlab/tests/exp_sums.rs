mod common;

use common::Chars;
use momentlab::exp_sums::{
    classical_kloosterman, classical_weil_bound, kloosterman_direct, kloosterman_table, weil_scan, KloostermanSpec,
    ZeroConvention,
};
use momentlab::moments::random_twists;
use momentlab::CharacterGroup;
use proptest::prelude::*;

#[test]
fn table_matches_brute_force() {
    for q in [7u64, 11, 13] {
        let g = CharacterGroup::from_modulus(q).unwrap();
        let o = Chars::new(q);
        for tw in [vec![0usize, 0], vec![1, 4], vec![0, 0, 0], vec![2, 5, 0], vec![3, 1, 2]] {
            let tab = kloosterman_table(&g, &KloostermanSpec::new(tw.clone()).unwrap(), ZeroConvention::ExtensionByZero);
            for a in 1..q as i64 {
                let want = o.kloosterman(&tw, a);
                assert!((tab.values[a as usize] - want).norm() < 1e-10, "q={q} tw={tw:?} a={a}");
                let d = kloosterman_direct(&g, &KloostermanSpec::new(tw.clone()).unwrap(), a).unwrap();
                assert!((d - want).norm() < 1e-10);
            }
        }
    }
}

#[test]
fn weil_bound_rank_two_and_three() {
    let mut seed = 0u64;
    for q in common::primes_between(5, 199) {
        let g = CharacterGroup::from_modulus(q).unwrap();
        for k in [2usize, 3] {
            for _ in 0..5 {
                let (a, b) = random_twists(q, seed);
                seed += 1;
                let tw = if k == 2 { vec![a, b] } else { vec![a, b, (a + b) % (q as usize - 1)] };
                let m = weil_scan(&g, &KloostermanSpec::new(tw).unwrap());
                assert!(m <= k as f64 + 1e-9, "q={q} k={k} max={m}");
            }
        }
    }
}

#[test]
fn classical_sum_within_weil_bound() {
    let g = CharacterGroup::from_modulus(13).unwrap();
    let mut s = 5u64;
    for c in [13u64, 26] {
        for _ in 0..50 {
            let (m, n) = random_twists(97, s);
            let (w, _) = random_twists(13, s + 1000);
            s += 1;
            let v = classical_kloosterman(&g, w, m as i64 - 48, n as i64 - 48, c).unwrap();
            assert!(v.norm() <= classical_weil_bound(m as i64 - 48, n as i64 - 48, c) + 1e-9);
        }
    }
}

#[test]
fn zero_argument() {
    let g = CharacterGroup::from_modulus(11).unwrap();
    assert!(kloosterman_direct(&g, &KloostermanSpec::untwisted(2).unwrap(), 0).is_err());
    let t = kloosterman_table(&g, &KloostermanSpec::untwisted(2).unwrap(), ZeroConvention::FourierCompleted);
    // Untwisted Kl₂(0) = q^{−1/2} Σ_{xy=0} e(x+y) with one variable forced to 0: −q^{−1/2}.
    assert!((t.values[0].re + 1.0 / 11f64.sqrt()).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// `conj Kl_k(a; ω) = ∏ωᵢ(−1) · Kl_k((−1)^k a; ω̄)`.
    #[test]
    fn conjugation(t1 in 0usize..30, t2 in 0usize..30, t3 in 0usize..30, a in 1i64..31) {
        let g = CharacterGroup::from_modulus(31).unwrap();
        for tw in [vec![t1, t2], vec![t1, t2, t3]] {
            let k = tw.len();
            let conj: Vec<usize> = tw.iter().map(|&t| g.conj_index(t)).collect();
            let lhs = kloosterman_direct(&g, &KloostermanSpec::new(tw.clone()).unwrap(), a).unwrap().conj();
            let sign: f64 = tw.iter().map(|t| if t % 2 == 0 { 1.0 } else { -1.0 }).product();
            let arg = if k % 2 == 0 { a } else { -a };
            let rhs = kloosterman_direct(&g, &KloostermanSpec::new(conj).unwrap(), arg).unwrap() * sign;
            prop_assert!((lhs - rhs).norm() < 1e-10);
        }
    }
}

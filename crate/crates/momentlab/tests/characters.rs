mod common;

use common::{Chars, C64};
use momentlab::CharacterGroup;
use proptest::prelude::*;

#[test]
fn values_match_oracle() {
    for q in [5u64, 13, 101] {
        let g = CharacterGroup::from_modulus(q).unwrap();
        let o = Chars::new(q);
        for t in [0usize, 1, 2, (q - 2) as usize] {
            for a in -3i64..(q as i64 + 3) {
                assert!((g.value(t, a) - o.chi(t, a)).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn gauss_sums_match_direct() {
    for q in [7u64, 11, 13, 101] {
        let g = CharacterGroup::from_modulus(q).unwrap();
        let o = Chars::new(q);
        for t in 0..g.order() {
            let d = o.gauss(t);
            assert!((g.gauss_sum(t) - d).norm() < 1e-10, "q={q} t={t}");
            if t != 0 {
                assert!((d.norm() - 1.0).abs() < 1e-10);
            }
        }
        // ε(χ) ε(χ̄) = χ(−1)
        for t in 1..g.order() {
            let p = g.gauss_sum(t) * g.gauss_sum(g.conj_index(t));
            let sign = if t % 2 == 0 { 1.0 } else { -1.0 };
            assert!((p - C64::new(sign, 0.0)).norm() < 1e-10);
        }
    }
}

#[test]
fn even_orthogonality() {
    for q in [5u64, 7, 11, 13, 101] {
        let g = CharacterGroup::from_modulus(q).unwrap();
        for a in 1..q as i64 {
            let s = g.even_orthogonality_sum(a).unwrap();
            let c = g.even_orthogonality_closed(a).unwrap();
            assert!((s - C64::new(c, 0.0)).norm() < 1e-9);
        }
        assert!(g.even_orthogonality_sum(0).is_err());
    }
}

#[test]
fn gauss_weighted_average_both_parities() {
    let g = CharacterGroup::from_modulus(13).unwrap();
    for kappa in [0u8, 1] {
        for m in 1..13 {
            let lhs = g.gauss_weighted_average(kappa, m).unwrap();
            let rhs = g.gauss_weighted_closed(kappa, m).unwrap();
            assert!((lhs - rhs).norm() < 1e-9, "κ={kappa} m={m}");
        }
    }
}

#[test]
fn double_gauss_identity() {
    let mut seed = 11u64;
    for q in [7u64, 11, 13] {
        let g = CharacterGroup::from_modulus(q).unwrap();
        for _ in 0..5 {
            let (t1, t2) = momentlab::moments::random_twists(q, seed);
            seed += 1;
            for m in 1..q as i64 {
                let a = g.double_gauss_average(t1, t2, m).unwrap();
                let b = g.double_gauss_closed(t1, t2, m).unwrap();
                assert!((a - b).norm() < 1e-8, "q={q} t=({t1},{t2}) m={m}");
            }
        }
    }
}

#[test]
fn triple_gauss_residual_is_small() {
    for q in [11u64, 13, 101] {
        let g = CharacterGroup::from_modulus(q).unwrap();
        let o = Chars::new(q);
        for (t1, t2) in [(0usize, 0usize), (2, 4), (1, 3)] {
            for m in [1i64, 2, 5] {
                let lhs = g.triple_gauss_average(t1, t2, m).unwrap();
                let mbar = (1..q as i64).find(|y| y * m % q as i64 == 1).unwrap();
                let kl: C64 = [1i64, -1]
                    .iter()
                    .map(|s| o.kloosterman(&[t1, t2, 0], s * mbar))
                    .sum::<C64>()
                    / (q as f64).sqrt();
                let r = (lhs - kl).norm();
                assert!(r <= 5.0 * (q as f64).powf(-1.5), "q={q} r={r}");
            }
        }
    }
}

#[test]
fn parity_class_identity_is_exact() {
    let q = 13u64;
    let g = CharacterGroup::from_modulus(q).unwrap();
    let o = Chars::new(q);
    for kappa in [0u8, 1] {
        for (t1, t2) in [(0usize, 0usize), (3, 8)] {
            let m = 4i64;
            let lhs = g.triple_gauss_parity_class(kappa, t1, t2, m).unwrap();
            let mbar = (1..13).find(|y| y * m % 13 == 1).unwrap();
            let sign = if kappa == 0 { 1.0 } else { -1.0 };
            let rhs = (o.kloosterman(&[t1, t2, 0], mbar) + o.kloosterman(&[t1, t2, 0], -mbar) * sign) / 13f64.sqrt();
            assert!((lhs - rhs).norm() < 1e-10);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplicative(t in 0usize..100, a in 1i64..101, b in 1i64..101) {
        let g = CharacterGroup::from_modulus(101).unwrap();
        let lhs = g.value(t, a * b);
        let rhs = g.value(t, a) * g.value(t, b);
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn conjugate_character(t in 0usize..100, a in 1i64..101) {
        let g = CharacterGroup::from_modulus(101).unwrap();
        prop_assert!((g.value(g.conj_index(t), a) - g.value(t, a).conj()).norm() < 1e-12);
    }
}

mod common;

use common::{fixture, pair, C64};
use momentlab::l_values::Damping;
use momentlab::moments::{
    census, census_with, cubic_moment_cusp, cubic_moment_dirichlet, even_moment, mollified_cubic, mollified_fourth,
    moment_via_arithmetic, random_twists, MomentContext,
};
use momentlab::{CharacterGroup, Error};
use proptest::prelude::*;
use std::sync::OnceLock;

fn ctx31() -> &'static MomentContext {
    static C: OnceLock<MomentContext> = OnceLock::new();
    C.get_or_init(|| MomentContext::new(31, Damping::DEFAULT).unwrap())
}

#[test]
fn q13_cubic_against_oracle_values() {
    let fx = fixture(13);
    let g = CharacterGroup::from_modulus(13).unwrap();
    let vals: Vec<C64> = fx.central.iter().map(|v| v.unwrap_or(C64::new(f64::NAN, f64::NAN))).collect();
    let oracle = MomentContext::from_values(g, vals, Damping::DEFAULT).unwrap();
    let afe = MomentContext::new(13, Damping::DEFAULT).unwrap();
    for (ell, key) in [(1u64, "cubic_principal_ell1"), (2, "cubic_principal_ell2")] {
        let want = pair(&fx.raw[key]);
        let a = cubic_moment_dirichlet(&oracle, 0, 0, ell).unwrap();
        let b = cubic_moment_dirichlet(&afe, 0, 0, ell).unwrap();
        assert!((a.value - want).norm() < 1e-12);
        assert!((b.value - want).norm() < 1e-9);
        assert_eq!(b.characters_used, 11);
        assert_eq!(b.main_term, if ell == 1 { 1.0 } else { 0.0 });
    }
}

#[test]
fn excluded_characters_are_counted() {
    let c = ctx31();
    let r = cubic_moment_dirichlet(c, 4, 9, 1).unwrap();
    assert_eq!(r.characters_used, 30 - 3);
    let r = cubic_moment_dirichlet(c, 4, 4, 1).unwrap();
    assert_eq!(r.characters_used, 30 - 2);
    assert!(matches!(cubic_moment_dirichlet(c, 0, 0, 62), Err(Error::ZeroResidue(..))));
}

#[test]
fn mollified_paths_agree() {
    let c = ctx31();
    for (t1, t2, len) in [(0usize, 0usize, 1usize), (0, 0, 3), (5, 12, 3), (7, 7, 2)] {
        let m = mollified_cubic(c, t1, t2, len).unwrap();
        assert!(m.discrepancy() < 1e-9, "{t1} {t2} {len}: {}", m.discrepancy());
        if len == 1 {
            let plain = cubic_moment_dirichlet(c, t1, t2, 1).unwrap();
            assert!((m.path_a - plain.value).norm() < 1e-12);
        }
    }
}

#[test]
fn fourth_moment_without_mollifier() {
    let c = ctx31();
    let plain: f64 = (1..30).map(|t| c.l[t].norm_sqr().powi(2)).sum::<f64>() / 30.0;
    assert!((mollified_fourth(c, 1).unwrap() - plain).abs() < 1e-12);
}

#[test]
fn arithmetic_side_reproduces_parity_moments() {
    let q = 101;
    let c = MomentContext::new(q, Damping::DEFAULT).unwrap();
    for (t1, t2, ell, kappa) in [(0usize, 0usize, 1u64, 0u8), (6, 30, 2, 0), (0, 0, 1, 1), (7, 12, 3, 1)] {
        let direct = even_moment(&c, t1, t2, ell, kappa).unwrap();
        let a = moment_via_arithmetic(&c.group, t1, t2, ell, kappa, Damping::DEFAULT).unwrap();
        assert!((a.exact - direct.value).norm() < 1e-9, "{t1} {t2} {ell} κ={kappa}: {} vs {}", a.exact, direct.value);
        assert!((a.value - direct.value).norm() < 10.0 * ell as f64 / (q as f64).sqrt());
    }
    let a = moment_via_arithmetic(&c.group, 0, 0, 1, 0, Damping::DEFAULT).unwrap();
    assert!(a.main_weight > 0.0 && a.main_weight <= 1.0);
    let big = CharacterGroup::from_modulus(401).unwrap();
    assert!(matches!(moment_via_arithmetic(&big, 0, 0, 1, 0, Damping::DEFAULT), Err(Error::Refused(_))));
}

#[test]
fn cusp_moment_flags_range() {
    let c = MomentContext::new(31, Damping::DEFAULT).unwrap().with_cusp().unwrap();
    let r1 = cubic_moment_cusp(&c, 1).unwrap();
    assert!(r1.ell_in_range);
    assert_eq!(r1.characters_used, 29);
    let r3 = cubic_moment_cusp(&c, 3).unwrap();
    assert!(!r3.ell_in_range);
    assert_eq!(r3.main_term, 0.0);
    assert!(cubic_moment_cusp(ctx31(), 1).is_err());
}

#[test]
fn census_edges() {
    let c = ctx31();
    let all = census_with(c, 0, 0, [0.0; 3]);
    assert!(all.proportion <= 1.0);
    assert_eq!(all.count, 29);
    let none = census_with(c, 0, 0, [1e9; 3]);
    assert_eq!(none.count, 0);
    let (t1, t2) = random_twists(31, 7);
    let r = census(c, t1, t2);
    assert!(r.count <= r.eligible);
    assert_eq!(random_twists(31, 7), (t1, t2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn conjugate_equivariance(t1 in 0usize..30, t2 in 0usize..30, ell in 1u64..30) {
        let c = ctx31();
        let a = cubic_moment_dirichlet(c, t1, t2, ell).unwrap();
        let b = cubic_moment_dirichlet(c, (30 - t1) % 30, (30 - t2) % 30, ell).unwrap();
        prop_assert!((a.value.conj() - b.value).norm() < 1e-9);
    }

    #[test]
    fn census_monotone(t1 in 0usize..30, t2 in 0usize..30, th in prop::array::uniform3(0.0f64..1.5), bump in 0usize..3, d in 0.0f64..0.5) {
        let c = ctx31();
        let lo = census_with(c, t1, t2, th);
        let mut raised = th;
        raised[bump] += d;
        let hi = census_with(c, t1, t2, raised);
        prop_assert!(hi.count <= lo.count);
    }

    #[test]
    fn census_order_invariant(t1 in 0usize..30, t2 in 0usize..30, seed in 0u64..100) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let c = ctx31();
        let th = 1.0 / 31f64.ln();
        let r = census(c, t1, t2);
        let mut ts: Vec<usize> = (0..30).collect();
        ts.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let n = ts
            .into_iter()
            .filter(|&t| !c.excluded(t, t1, t2))
            .filter(|&t| [t, (t + t1) % 30, (t + t2) % 30].iter().all(|&u| c.l[u].norm() >= th))
            .count();
        prop_assert_eq!(n, r.count);
    }
}

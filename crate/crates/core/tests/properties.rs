//! Structural invariants as property tests with fixed seeds.

mod common;

use common::*;
use nplab::dwork::{
    block_leading_determinant, first_corollary_check, fredholm_from_matrix, dwork_matrix, default_cutoff,
    leading_coefficient, universal_vars, FieldPoly, VarMode,
};
use nplab::lattice::{Parallelotope, Side};
use nplab::oracle::OracleRun;
use nplab::polygon::{h_of_points, improved_hodge_polygon, exact_length};
use nplab::series::{MPolyRing, Ring};
use nplab::Rat;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        rng_seed: RngSeed::Fixed(0x6e70),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn small_parallelotope() -> impl Strategy<Value = Parallelotope> {
    prop_oneof![
        (1i64..5).prop_map(|a| vec![vec![a]]),
        (1i64..4, 0i64..3, 1i64..4).prop_map(|(a, b, c)| vec![vec![a, 0], vec![b, c]]),
        (1i64..3, -1i64..2, 1i64..3).prop_map(|(a, b, c)| vec![vec![a, b], vec![0, c]]),
    ]
    .prop_filter_map("singular", |v| Parallelotope::new(v).ok())
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![5u64, 7, 11, 13, 17, 19, 23, 29, 31])
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn eta_permutes_fundamental_domain(delta in small_parallelotope(), p in prime()) {
        prop_assume!(delta.vol() % p as i64 != 0);
        prop_assert!(eta_is_bijection(&delta, p));
    }

    #[test]
    fn weight_is_subadditive(delta in small_parallelotope(), i in 0usize..40, j in 0usize..40) {
        let cone = delta.enumerate(3, Side::Closed);
        let (a, b) = (&cone[i % cone.len()], &cone[j % cone.len()]);
        let s: Vec<i64> = a.q.iter().zip(&b.q).map(|(x, y)| x + y).collect();
        prop_assert!(delta.weight(&s).unwrap() <= a.w + b.w);
    }

    #[test]
    fn residue_is_idempotent(delta in small_parallelotope(), i in 0usize..60) {
        let cone = delta.enumerate(3, Side::Closed);
        let q = &cone[i % cone.len()];
        let r = delta.residue(&q.q).unwrap();
        prop_assert_eq!(delta.residue(&r.q).unwrap(), r.clone());
        prop_assert!(r.w < Rat::from_integer(1));
    }

    #[test]
    fn counts_match_enumeration(delta in small_parallelotope(), k in 1u32..7) {
        let (xm, xp) = delta.count_closed_form(k);
        prop_assert_eq!(delta.enumerate(k, Side::Open).len() as u64, xm);
        prop_assert_eq!(delta.enumerate(k, Side::Closed).len() as u64, xp);
    }

    #[test]
    fn blocks_partition_dilates(delta in small_parallelotope(), k in 0u32..4) {
        for side in Side::BOTH {
            let mut got: Vec<Vec<i64>> = delta
                .block_decomposition(k, side)
                .into_iter()
                .flat_map(|b| b.members.into_iter().map(|q| q.q))
                .collect();
            got.sort();
            let mut want: Vec<Vec<i64>> = delta.enumerate(k, side).into_iter().map(|q| q.q).collect();
            want.sort();
            prop_assert_eq!(got, want);
        }
    }

    #[test]
    fn ihp_vertices_at_dilates(delta in small_parallelotope(), p in prime(), k in 1u32..3) {
        prop_assume!(delta.vol() % p as i64 != 0);
        let (_, xp) = delta.count_closed_form(k);
        let ihp = improved_hodge_polygon(&delta, p, exact_length(&delta, xp as usize));
        let pts = delta.enumerate(k, Side::Closed);
        prop_assert!(ihp.at(xp).unwrap() <= Rat::from_integer(h_of_points(p, &pts)));
    }

    #[test]
    fn ld_and_deg_are_multiplicative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = MPolyRing::new(11, 3);
        let g1 = random_mpoly(&ring, &mut rng, 5, 4);
        let g2 = random_mpoly(&ring, &mut rng, 5, 4);
        prop_assert!(ld_multiplicative(&ring, &g1, &g2));
    }
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn e_coefficients_respect_weight(seed in any::<u64>(), which in 0usize..4) {
        let t = &test_polytopes()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_f(&t.delta, t.p, &mut rng);
        prop_assert!(e_valuations_hold(&t.delta, &f, 8));
    }

    #[test]
    fn oracle_stays_above_ihp(seed in any::<u64>()) {
        let t = &test_polytopes()[0];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_f(&t.delta, t.p, &mut rng);
        let run = OracleRun::new(&f, 4, 24, 1).unwrap();
        prop_assert!(run.ihp_violations(&t.delta).is_empty());
    }

    #[test]
    fn first_corollary_holds(seed in any::<u64>(), k in 1u32..3) {
        let t = &test_polytopes()[0];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_f(&t.delta, t.p, &mut rng);
        for side in Side::BOTH {
            let c = first_corollary_check(&t.delta, &f, k, side).unwrap();
            prop_assert!(c.holds, "{:?}", c);
        }
    }

    #[test]
    fn fredholm_stabilizes_in_cutoff(seed in any::<u64>()) {
        let t = &test_polytopes()[0];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_f(&t.delta, t.p, &mut rng);
        let w = default_cutoff(t.p, 14);
        let a = fredholm_from_matrix(&dwork_matrix(&t.delta, &f, 14, 1, Some(w)).unwrap(), 3).unwrap();
        let b = fredholm_from_matrix(&dwork_matrix(&t.delta, &f, 14, 1, Some(w + Rat::from_integer(1))).unwrap(), 3)
            .unwrap();
        prop_assert_eq!(a.valuations, b.valuations);
        prop_assert_eq!(a.u, b.u);
    }
}

#[test]
fn block_pi_powers_on_cube() {
    let cube = &test_polytopes()[4];
    for side in Side::BOTH {
        for b in cube.delta.block_decomposition(1, side) {
            let r = block_leading_determinant(&cube.delta, cube.p, &b).unwrap();
            assert_eq!(r.pi_power, r.expected_pi_power, "{b:?}");
        }
    }
}

#[test]
fn full_and_res_agree_after_substitution() {
    let delta = Parallelotope::new(vec![vec![2, 0], vec![0, 3]]).unwrap();
    let full = leading_coefficient(&delta, 29, 1, Side::Open, VarMode::Full).unwrap();
    let res = leading_coefficient(&delta, 29, 1, Side::Open, VarMode::Res).unwrap();
    let fv = universal_vars(&delta, VarMode::Full);
    let rv = universal_vars(&delta, VarMode::Res);
    let target: Vec<Option<usize>> =
        fv.points.iter().map(|(q, _)| rv.points.iter().find(|(r, _)| r == q).map(|(_, v)| *v)).collect();
    let sub = MPolyRing::new(29, fv.nvars).substitute(&full.poly, &target, &MPolyRing::new(29, rv.nvars));
    assert_eq!(sub, res.poly);
    assert!(!MPolyRing::new(29, 2).is_zero(&res.poly));
}

#[test]
fn oracle_independent_of_modulus_choice() {
    let f = FieldPoly::over_prime(13, &[(vec![1, 0], 2), (vec![1, 2], 5), (vec![1, 1], 3)]).unwrap();
    let terms: Vec<(Vec<i64>, u64)> = f.prime_coefficients().unwrap().into_iter().collect();
    for k in 1..=2 {
        let a = nplab::oracle::exp_sum_terms(13, 2, &terms, k, 8, 1, 0).unwrap();
        let b = nplab::oracle::exp_sum_terms(13, 2, &terms, k, 8, 1, 1).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn oracle_matches_dwork_in_two_variables() {
    let delta = Parallelotope::new(vec![vec![1, 0], vec![1, 2]]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..3 {
        let f = random_f(&delta, 13, &mut rng);
        let r = nplab::oracle::compare_strict(&delta, &f, 2, 8, 1).unwrap();
        assert!(r.rows.iter().all(|row| row.matches));
    }
}

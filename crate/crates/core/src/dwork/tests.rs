use super::*;
use crate::lattice::{Parallelotope, Side};
use crate::rational::Rat;
use crate::series::{ArtinHasseTable, MPolyRing, Ring, SeriesRing, Zpn};

fn seg(a: i64) -> Parallelotope {
    Parallelotope::new(vec![vec![a]]).unwrap()
}

fn skew() -> Parallelotope {
    Parallelotope::new(vec![vec![1, 0], vec![1, 2]]).unwrap()
}

fn rect() -> Parallelotope {
    Parallelotope::new(vec![vec![2, 0], vec![0, 3]]).unwrap()
}

fn universal_e(delta: &Parallelotope, p: u64, mode: VarMode, order: usize, cutoff: i64) -> (MPolyRing, ECoefficients<MPoly>) {
    let vars = universal_vars(delta, mode);
    let ring = MPolyRing::new(p, vars.nvars);
    let values: Vec<_> = vars.points.iter().map(|(q, v)| (q.clone(), ring.var(*v))).collect();
    let sr = SeriesRing::new(ring.clone(), order);
    let table = ArtinHasseTable::new(p, order, 1).unwrap();
    let e = expand_e(delta, &sr, &values, &table, Rat::from_integer(cutoff)).unwrap();
    (ring, e)
}

#[test]
fn e_origin_is_one() {
    let (ring, e) = universal_e(&rect(), 29, VarMode::Res, 4, 2);
    let o = e.get(&[0, 0]).unwrap();
    assert_eq!(o.coeffs[0], ring.one());
    assert!(o.coeffs[1..].iter().all(|c| c.is_zero()));
}

#[test]
fn e_low_terms_segment() {
    // E(ã_1 π x) E(ã_2 π x²) up to π².
    let (ring, e) = universal_e(&seg(2), 11, VarMode::Full, 3, 3);
    let a1 = ring.var(0);
    let a2 = ring.var(1);
    let e1 = e.get(&[1]).unwrap();
    assert_eq!(e1.coeffs[0], ring.zero());
    assert_eq!(e1.coeffs[1], a1);
    let e2 = e.get(&[2]).unwrap();
    assert_eq!(e2.coeffs[1], a2);
    let c2 = Zpn::new(11, 1).unwrap().from_i64(6); // 1/2 mod 11
    assert_eq!(e2.coeffs[2], ring.scale(&ring.mul(&a1, &a1), c2));
    // val_π(ẽ_3) ≥ ⌈3/2⌉ = 2.
    let e3 = e.get(&[3]).unwrap();
    assert!(e3.coeffs[0].is_zero() && e3.coeffs[1].is_zero() && !e3.coeffs[2].is_zero());
}

#[test]
fn dwork_entry_valuation() {
    let delta = seg(2);
    let f = FieldPoly::over_prime(11, &[(vec![2], 1), (vec![1], 1)]).unwrap();
    let n = dwork_matrix(&delta, &f, 12, 2, None).unwrap();
    let (i, j) = (n.index_of(&[1]).unwrap(), n.index_of(&[3]).unwrap());
    let v = n.ring.valuation(&n.entries[i][j]).unwrap();
    assert!(v >= 4);
    let o = n.index_of(&[0]).unwrap();
    assert_eq!(n.entries[o][o], n.ring.one());
    // p·0 − 1 is outside the cone.
    assert_eq!(n.entries[o][n.index_of(&[1]).unwrap()], n.ring.zero());
}

#[test]
fn truncation_check() {
    let delta = seg(2);
    assert!(check_truncation(&delta, 11, default_cutoff(11, 15), 15).is_ok());
    assert!(matches!(
        check_truncation(&delta, 11, Rat::new(1, 2), 15),
        Err(crate::Error::TruncationUnsound(_))
    ));
}

#[test]
fn fredholm_segment_valuations() {
    let delta = seg(2);
    let f = FieldPoly::over_prime(11, &[(vec![2], 1), (vec![1], 1)]).unwrap();
    let fr = fredholm(&delta, &f, 3, 16, 2).unwrap();
    assert_eq!(fr.u[0][0], 1);
    assert!(fr.u[0][1..].iter().all(|c| *c == 0));
    assert_eq!(fr.valuations[2], Some(5));
    assert!(fr.valuations[3].map_or(true, |v| v >= 15));
}

#[test]
fn fredholm_stable_under_cutoff() {
    let delta = seg(2);
    let f = FieldPoly::over_prime(11, &[(vec![2], 3), (vec![1], 5), (vec![0], 2)]).unwrap();
    let w = default_cutoff(11, 16);
    let a = fredholm_from_matrix(&dwork_matrix(&delta, &f, 16, 2, Some(w)).unwrap(), 4).unwrap();
    let b = fredholm_from_matrix(&dwork_matrix(&delta, &f, 16, 2, Some(w + Rat::from_integer(1))).unwrap(), 4)
        .unwrap();
    assert_eq!(a, b);
}

#[test]
fn fredholm_over_extension_is_rational() {
    let delta = seg(2);
    let field = crate::series::ExtRing::with_degree(5, 1, 2, 0).unwrap();
    let terms = [(vec![2], vec![1, 1]), (vec![1], vec![0, 1])].into_iter().collect();
    let f = FieldPoly::new(field, terms).unwrap();
    assert_eq!(f.m_of_f(), 2);
    let fr = fredholm(&delta, &f, 3, 8, 2).unwrap();
    assert_eq!(fr.m, 2);
    // IHP lower bound at ℓ = 1, 2: 0 and m·⌊5/2⌋ = 4.
    assert!(fr.valuations[2].map_or(true, |v| v >= 4));
}

#[test]
fn leading_coefficient_trivial_and_segment() {
    let lc = leading_coefficient(&seg(2), 11, 1, Side::Open, VarMode::Full).unwrap();
    assert_eq!(lc.size, 2);
    assert_eq!(lc.h, 5);
    assert!(!lc.poly.is_zero());
    assert_eq!(lc.poly.homogeneous_degree(), Some(5));
}

#[test]
fn full_reduces_to_res() {
    for (delta, p, k) in [(seg(2), 11, 2), (seg(3), 17, 1), (skew(), 13, 1)] {
        for side in Side::BOTH {
            let full = leading_coefficient(&delta, p, k, side, VarMode::Full).unwrap();
            let res = leading_coefficient(&delta, p, k, side, VarMode::Res).unwrap();
            let full_vars = universal_vars(&delta, VarMode::Full);
            let res_vars = universal_vars(&delta, VarMode::Res);
            let target: Vec<Option<usize>> = full_vars
                .points
                .iter()
                .map(|(q, _)| res_vars.points.iter().find(|(r, _)| r == q).map(|(_, v)| *v))
                .collect();
            let from = MPolyRing::new(p, full_vars.nvars);
            let to = MPolyRing::new(p, res_vars.nvars);
            assert_eq!(from.substitute(&full.poly, &target, &to), res.poly, "k={k} {side}");
        }
    }
}

#[test]
fn verify_segment_and_skew() {
    let r = verify_generic(&seg(2), 11, 1..=3).unwrap();
    assert!(r.hypothesis.holds && r.all_nonzero);
    assert_eq!(r.entries.len(), 6);
    let r = verify_generic(&skew(), 13, 1..=2).unwrap();
    assert!(r.all_nonzero);
}

#[test]
fn verify_without_hypothesis_reports() {
    let r = verify_generic(&seg(2), 3, 1..=2).unwrap();
    assert!(!r.hypothesis.holds);
    assert_eq!(r.entries.len(), 4);
}

#[test]
fn verify_rejects_p_dividing_volume() {
    assert!(matches!(verify_generic(&seg(2), 2, 1..=1), Err(crate::Error::Domain(_))));
}

#[test]
fn ozar_wrong_polytope_and_monte_carlo() {
    let delta = seg(2);
    let f = FieldPoly::over_prime(11, &[(vec![1], 1)]).unwrap();
    assert!(matches!(ozar_membership(&delta, &f), Err(crate::Error::WrongPolytope(_))));
    let f = FieldPoly::over_prime(11, &[(vec![2], 1)]).unwrap();
    let r = ozar_membership(&delta, &f).unwrap();
    assert_eq!(r.checks.len(), 6);
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let mut hits = 0;
    for _ in 0..100 {
        let f = FieldPoly::over_prime(
            11,
            &[(vec![0], rng.gen_range(0..11)), (vec![1], rng.gen_range(0..11)), (vec![2], rng.gen_range(1..11))],
        )
        .unwrap();
        hits += ozar_membership(&delta, &f).unwrap().member as u32;
    }
    assert!(hits >= 90, "{hits}");
}

#[test]
fn block_factorization_instances() {
    let f = res_block_factorization(&seg(2), 11, 1, Side::Open).unwrap();
    let nonempty: Vec<_> = f.blocks.iter().filter(|b| b.size > 0).collect();
    assert_eq!(nonempty.len(), 2);
    assert!(nonempty.iter().all(|b| b.size == 1));
    for side in Side::BOTH {
        res_block_factorization(&rect(), 29, 1, side).unwrap();
        res_block_factorization(&skew(), 13, 2, side).unwrap();
    }
    for k in 1..=3 {
        res_block_factorization(&seg(3), 17, k, Side::Closed).unwrap();
    }
}

#[test]
fn matrix_m_examples() {
    let m = matrix_m(&[5], 0, 11).unwrap();
    assert_eq!(m.matrix.len(), 1);
    // c_5 = 1/120 and 120 ≡ 10 mod 11.
    assert_eq!(m.det * 120 % 11, 1);
    let m = matrix_m(&[5], 2, 11).unwrap();
    assert_eq!(m.matrix.len(), 3);
    assert_ne!(m.det, 0);
    let m = matrix_m(&[3, 7], 1, 11).unwrap();
    assert_eq!(m.matrix.len(), 3);
}

#[test]
fn det_m_exponent_is_k_plus_one() {
    for w in 2..=9 {
        for k in 0..=2u32 {
            if k as i64 > w || w > 11 - k as i64 {
                continue;
            }
            let r = det_m_exponent(w, k, 11).unwrap();
            assert!(r.matching().contains(&(k as i64 + 1)), "w={w} k={k} {r:?}");
        }
    }
}

#[test]
fn gamma_example() {
    let delta = Parallelotope::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
    // 2V_1 + 3V_2 → π³ ã_2² ã_1.
    assert_eq!(gamma(&delta, &[2, 3]).unwrap(), vec![1, 2, 3]);
    assert_eq!(gamma(&delta, &[0, 0]).unwrap(), vec![0, 0, 0]);
}

#[test]
fn block_leading_examples() {
    let delta = seg(2);
    let blocks = delta.block_decomposition(0, Side::Closed);
    let b = block_leading_determinant(&delta, 11, &blocks[0]).unwrap();
    assert_eq!((b.unit, b.pi_power, b.size), (1, 0, 1));
    let blocks = delta.block_decomposition(1, Side::Open);
    let b1 = blocks.iter().find(|b| b.p0.q == vec![1]).unwrap();
    let r = block_leading_determinant(&delta, 11, b1).unwrap();
    assert_eq!(r.size, 1);
    assert_eq!(r.pi_power, 5);
    assert_eq!(r.expected_pi_power, 5);
}

#[test]
fn block_leading_matches_direct_ld() {
    for (delta, p, kmax) in [(seg(2), 11, 3), (seg(3), 17, 2), (skew(), 13, 2), (rect(), 29, 1)] {
        for k in 1..=kmax {
            for side in Side::BOTH {
                for b in delta.block_decomposition(k, side) {
                    let r = block_leading_determinant(&delta, p, &b).unwrap();
                    assert_eq!(r.pi_power, r.expected_pi_power, "{b:?}");
                    assert_ne!(r.unit, 0);
                    let c = ld_check(&delta, p, &b, 2).unwrap();
                    assert!(c.entries_match_deg, "{b:?}");
                    assert!(c.det_matches, "{b:?}");
                }
            }
        }
    }
}

#[test]
fn first_corollary_congruence() {
    let delta = seg(2);
    for (a, b) in [(1, 1), (3, 7), (5, 0)] {
        let f = FieldPoly::over_prime(11, &[(vec![2], a), (vec![1], b), (vec![0], 4)]).unwrap();
        for k in 1..=2 {
            for side in Side::BOTH {
                let c = first_corollary_check(&delta, &f, k, side).unwrap();
                assert!(c.holds, "{c:?}");
            }
        }
    }
}

#[test]
fn fieldpoly_json() {
    let v: serde_json::Value = serde_json::from_str(r#"{"[2]": 1, "1": "3", "[0]": "[4]"}"#).unwrap();
    let f = FieldPoly::from_json(&v, 11, 1).unwrap();
    assert_eq!(f.coefficient(&[1]), vec![3]);
    assert_eq!(f.coefficient(&[0]), vec![4]);
    assert_eq!(f.m_of_f(), 1);
    let v: serde_json::Value = serde_json::from_str(r#"{"[1,0]": [1, 2]}"#).unwrap();
    let f = FieldPoly::from_json(&v, 5, 2).unwrap();
    assert_eq!(f.m_of_f(), 2);
}

#[test]
fn deg_calculus() {
    let ring = MPolyRing::new(7, 3);
    let f = ring.add(&ring.mul(&ring.var(0), &ring.var(1)), &ring.var(2));
    assert_eq!(deg(&f, 3), Some(vec![1, 0, 0]));
    assert_eq!(leading_part(&f, 3), ring.var(2));
}

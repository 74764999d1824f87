#![allow(dead_code)]

use nplab::dwork::{expand_e, leading_part, FieldPoly};
use nplab::lattice::{Parallelotope, Side};
use nplab::rational::{ceil, Rat};
use nplab::series::{ArtinHasseTable, MPoly, MPolyRing, Ring, SeriesRing};
use rand::Rng;

pub struct TestPolytope {
    pub name: &'static str,
    pub delta: Parallelotope,
    pub p: u64,
    /// Oracle range `(L, M)` that stays within the scale gate.
    pub oracle_l: usize,
    pub oracle_m: usize,
}

pub fn test_polytopes() -> Vec<TestPolytope> {
    let mk = |name, v: Vec<Vec<i64>>, p, oracle_l, oracle_m| TestPolytope {
        name,
        delta: Parallelotope::new(v).unwrap(),
        p,
        oracle_l,
        oracle_m,
    };
    vec![
        mk("<(2)>", vec![vec![2]], 11, 5, 30),
        mk("<(3)>", vec![vec![3]], 17, 4, 30),
        mk("<(1,0),(1,2)>", vec![vec![1, 0], vec![1, 2]], 13, 3, 20),
        mk("<(2,0),(0,3)>", vec![vec![2, 0], vec![0, 3]], 29, 2, 20),
        mk("<3e1,3e2,3e3>", vec![vec![3, 0, 0], vec![0, 3, 0], vec![0, 0, 3]], 29, 1, 4),
    ]
}

/// Random coefficients on `Δ^+`, nonzero at the vertices.
pub fn random_f(delta: &Parallelotope, p: u64, rng: &mut impl Rng) -> FieldPoly {
    let idx: Vec<usize> = (0..delta.n()).collect();
    let vertices: Vec<Vec<i64>> = nplab::lattice::subsets(&idx)
        .into_iter()
        .filter(|s| !s.is_empty())
        .map(|s| delta.vertex(&s))
        .collect();
    let terms: Vec<(Vec<i64>, u64)> = delta
        .enumerate(1, Side::Closed)
        .into_iter()
        .map(|q| {
            let lo = if vertices.contains(&q.q) { 1 } else { 0 };
            (q.q, rng.gen_range(lo..p))
        })
        .collect();
    FieldPoly::over_prime(p, &terms).unwrap()
}

/// `η` permutes `Δ^-`.
pub fn eta_is_bijection(delta: &Parallelotope, p: u64) -> bool {
    let fund = delta.enumerate(1, Side::Open);
    let mut images: Vec<Vec<i64>> = fund.iter().map(|q| delta.eta(p, &q.q).unwrap().q).collect();
    images.sort();
    let mut want: Vec<Vec<i64>> = fund.iter().map(|q| q.q.clone()).collect();
    want.sort();
    images == want
}

/// `val_π(e_Q) ≥ ⌈w(Q)⌉` for every stored `e_Q` of a numeric expansion.
pub fn e_valuations_hold(delta: &Parallelotope, f: &FieldPoly, order: usize) -> bool {
    let base = f.field().with_prec(2).unwrap();
    let ring = SeriesRing::new(base.clone(), order);
    let table = ArtinHasseTable::new(f.p(), order, 2).unwrap();
    let values: Vec<_> = f
        .terms()
        .iter()
        .filter(|(e, _)| e.iter().any(|x| *x != 0))
        .map(|(e, c)| (e.clone(), base.teichmuller(c)))
        .collect();
    let e = expand_e(delta, &ring, &values, &table, Rat::from_integer(order as i64)).unwrap();
    e.coeffs.iter().all(|(q, s)| {
        let w = delta.weight(q).unwrap();
        let v = ring.valuation(s).unwrap_or(order + 1) as i64;
        v >= ceil(&w).min(order as i64 + 1)
    })
}

/// `LD(g_1 g_2) = LD(g_1) LD(g_2)` and `Deg` adds.
pub fn ld_multiplicative(ring: &MPolyRing, g1: &MPoly, g2: &MPoly) -> bool {
    let n = ring.nvars;
    if g1.is_zero() || g2.is_zero() {
        return true;
    }
    let prod = ring.mul(g1, g2);
    let lhs = leading_part(&prod, n);
    let rhs = ring.mul(&leading_part(g1, n), &leading_part(g2, n));
    let d = |g: &MPoly| nplab::dwork::deg(g, n).unwrap();
    let dsum: Vec<u32> = d(g1).iter().zip(d(g2)).map(|(a, b)| a + b).collect();
    lhs == rhs && d(&prod) == dsum
}

pub fn random_mpoly(ring: &MPolyRing, rng: &mut impl Rng, terms: usize, max_exp: u32) -> MPoly {
    let mut g = MPoly::default();
    for _ in 0..terms {
        let e: Vec<u32> = (0..ring.nvars).map(|_| rng.gen_range(0..=max_exp)).collect();
        ring.add_term(&mut g, e, rng.gen_range(1..ring.p));
    }
    g
}

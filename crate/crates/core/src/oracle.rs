//! Brute-force ground truth: exponential sums over `(F_{q^k}^×)^n` and the
//! exponential formula for the characteristic series.

use std::collections::HashMap;

use serde::Serialize;

use crate::dwork::{fredholm, FieldPoly};
use crate::error::{Error, Result};
use crate::lattice::{Parallelotope, Side};
use crate::polygon::{exact_length, h_dilate, improved_hodge_polygon};
use crate::rational::Rat;
use crate::series::{binomial_series, ArtinHasseTable, ExtRing, Field, PadicScalar, Ring, SeriesRing, Zpn};

/// Largest number of summands `(q^k − 1)^n` accepted.
pub const SCALE_LIMIT: u64 = 100_000_000;

/// Precision needed inside the sum so that `binom(a, j)`, `j ≤ M`, survives
/// to `N` digits.
pub fn inner_precision(p: u64, order: usize, prec: u32) -> u32 {
    prec + (order as u64 / (p - 1)) as u32 + 1
}

/// Integer coefficients of `f` together with `n`; `f` must be defined over `F_p`.
fn prime_terms(f: &FieldPoly) -> Result<(usize, Vec<(Vec<i64>, u64)>)> {
    let terms: Vec<(Vec<i64>, u64)> = f.prime_coefficients()?.into_iter().collect();
    let n = terms.first().map(|(e, _)| e.len()).ok_or_else(|| Error::InvalidInput("f is zero".into()))?;
    if terms.iter().any(|(e, _)| e.len() != n || e.iter().any(|x| *x < 0)) {
        return Err(Error::InvalidInput("exponents must be nonnegative vectors of equal length".into()));
    }
    Ok((n, terms))
}

fn summands(p: u64, k: u32, n: usize) -> Result<u64> {
    let qk = p.checked_pow(k).ok_or_else(|| Error::ScaleExceeded(format!("{p}^{k} overflows")))?;
    let count = (qk - 1).checked_pow(n as u32).filter(|c| *c <= SCALE_LIMIT);
    count.ok_or_else(|| Error::ScaleExceeded(format!("(q^{k} - 1)^{n} exceeds {SCALE_LIMIT}")))
}

/// `S(k, T) = Σ_{x ∈ (F_{p^k}^×)^n} (1+T)^{Tr(f̂(x̂))}` mod `(p^N, T^{M+1})`,
/// coefficients of `T^0 … T^M`.
pub fn exp_sum(f: &FieldPoly, k: u32, order: usize, prec: u32) -> Result<Vec<u64>> {
    let (n, terms) = prime_terms(f)?;
    exp_sum_terms(f.p(), n, &terms, k, order, prec, 0)
}

/// [`exp_sum`] for `f = Σ a_P x^P` given as integer pairs, with `F_{p^k}`
/// built from the `field_index`-th irreducible polynomial of degree `k`.
pub fn exp_sum_terms(
    p: u64,
    n: usize,
    terms: &[(Vec<i64>, u64)],
    k: u32,
    order: usize,
    prec: u32,
    field_index: usize,
) -> Result<Vec<u64>> {
    summands(p, k, n)?;
    let n_in = inner_precision(p, order, prec);
    let ext = ExtRing::with_degree(p, n_in, k as usize, field_index)?;
    let zin = ext.base().clone();
    let zout = Zpn::new(p, prec)?;
    let g = ExtRing::with_degree(p, 1, k as usize, field_index)?.primitive_element();
    let t = ext.teichmuller(&g);
    let period = ext.q() - 1;
    let mut tr = Vec::with_capacity(period as usize);
    let mut cur = ext.one();
    for _ in 0..period {
        tr.push(ext.trace(&cur));
        cur = ext.mul(&cur, &t);
    }
    let lifts: Vec<u64> = terms.iter().map(|(_, a)| zin.teichmuller(*a)).collect();
    // Odometer over exponent tuples; stepping coordinate i adds P_i to each
    // term's exponent, and wrapping adds (q^k−1)·P_i ≡ 0.
    let mut exps = vec![0u64; terms.len()];
    let steps: Vec<Vec<u64>> = (0..n)
        .map(|i| terms.iter().map(|(e, _)| (e[i] as u64) % period).collect())
        .collect();
    let mut digits = vec![0u64; n];
    let mut hist: HashMap<u64, u64> = HashMap::new();
    loop {
        let a = exps
            .iter()
            .zip(&lifts)
            .fold(0, |acc, (e, l)| zin.add(&acc, &zin.mul(l, &tr[*e as usize])));
        *hist.entry(a).or_insert(0) += 1;
        let mut i = 0;
        loop {
            if i == n {
                let mut keys: Vec<_> = hist.into_iter().collect();
                keys.sort_unstable();
                return accumulate(&keys, p, n_in, order, &zout);
            }
            for (x, s) in exps.iter_mut().zip(&steps[i]) {
                *x = (*x + s) % period;
            }
            digits[i] += 1;
            if digits[i] < period {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

fn accumulate(hist: &[(u64, u64)], p: u64, n_in: u32, order: usize, zout: &Zpn) -> Result<Vec<u64>> {
    let mut s = vec![0u64; order + 1];
    for (a, count) in hist {
        let b = binomial_series(&PadicScalar { residue: *a, p, prec: n_in }, order)?;
        for (j, c) in b.iter().enumerate() {
            if c.prec < zout.prec() {
                return Err(Error::PrecisionExhausted(format!("binom(a, {j}) keeps only {} digits", c.prec)));
            }
            let term = zout.mul(&(c.residue % zout.modulus()), &(count % zout.modulus()));
            s[j] = zout.add(&s[j], &term);
        }
    }
    Ok(s)
}

/// `u_0 … u_L` of `exp(Σ_k −(q^k−1)^{−n} S(k, T) s^k / k)`, given `S(1..=L)`.
pub fn char_series(sums: &[Vec<u64>], p: u64, n: usize, prec: u32) -> Result<Vec<Vec<u64>>> {
    let l_max = sums.len();
    if l_max >= p as usize {
        return Err(Error::IndexTooLarge(l_max));
    }
    let order = sums.first().map(|s| s.len() - 1).unwrap_or(0);
    let z = Zpn::new(p, prec)?;
    let ring = SeriesRing::new(z.clone(), order);
    // k·g_k = −(q^k−1)^{−n} S(k).
    let mut kg = Vec::with_capacity(l_max);
    for (i, s) in sums.iter().enumerate() {
        let k = i as u32 + 1;
        let qk1 = z.sub(&z.pow(&z.from_i64(p as i64), k as u64), &z.one());
        let inv = z.inv(&z.pow(&qk1, n as u64)).ok_or_else(|| Error::Domain("q^k - 1 is not a unit".into()))?;
        kg.push(ring.scale(&ring.from_coeffs(s.clone()), &z.neg(&inv)));
    }
    let mut u = vec![ring.one()];
    for l in 1..=l_max {
        let mut acc = ring.zero();
        for k in 1..=l {
            acc = ring.add(&acc, &ring.mul(&kg[k - 1], &u[l - k]));
        }
        let inv = z.inv(&z.from_i64(l as i64)).expect("l < p");
        u.push(ring.scale(&acc, &inv));
    }
    Ok(u.into_iter().map(|s| s.coeffs).collect())
}

/// Substitutes `T = E(π) − 1`.
pub fn t_to_pi(u: &[u64], p: u64, prec: u32) -> Result<Vec<u64>> {
    let order = u.len() - 1;
    let z = Zpn::new(p, prec)?;
    let ring = SeriesRing::new(z.clone(), order);
    let table = ArtinHasseTable::new(p, order, prec)?;
    let mut e = table.reduced().to_vec();
    e[0] = 0;
    Ok(ring.compose(&ring.from_coeffs(u.to_vec()), &ring.from_coeffs(e)).coeffs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleRun {
    pub p: u64,
    pub n: usize,
    pub order: usize,
    pub prec: u32,
    /// `S(1..=L, T)`.
    pub sums: Vec<Vec<u64>>,
    /// `u_ℓ` in `T`.
    pub u: Vec<Vec<u64>>,
    /// `val_T(u_ℓ)`, `None` when `u_ℓ ≡ 0 mod T^{M+1}`.
    pub valuations: Vec<Option<usize>>,
}

impl OracleRun {
    pub fn new(f: &FieldPoly, l_max: usize, order: usize, prec: u32) -> Result<Self> {
        let p = f.p();
        let (n, _) = prime_terms(f)?;
        if l_max >= p as usize {
            return Err(Error::IndexTooLarge(l_max));
        }
        for k in 1..=l_max as u32 {
            summands(p, k, n)?;
        }
        let sums = (1..=l_max as u32).map(|k| exp_sum(f, k, order, prec)).collect::<Result<Vec<_>>>()?;
        let u = char_series(&sums, p, n, prec)?;
        let valuations = u.iter().map(|s| s.iter().position(|c| *c != 0)).collect();
        Ok(OracleRun { p, n, order, prec, sums, u, valuations })
    }

    /// `u_ℓ` rewritten in `π`.
    pub fn u_pi(&self) -> Result<Vec<Vec<u64>>> {
        self.u.iter().map(|s| t_to_pi(s, self.p, self.prec)).collect()
    }

    /// Indices `ℓ` where `val_T(u_ℓ)` falls below the improved Hodge polygon.
    pub fn ihp_violations(&self, delta: &Parallelotope) -> Vec<usize> {
        let l_max = self.u.len() - 1;
        let ihp = improved_hodge_polygon(delta, self.p, exact_length(delta, l_max));
        (0..=l_max)
            .filter(|&l| match (self.valuations[l], ihp.at(l as u64)) {
                (Some(v), Some(b)) => Rat::from_integer(v as i64) < b,
                _ => false,
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NpVertexCheck {
    pub k: u32,
    pub side: Side,
    pub x: u64,
    pub h: i64,
    pub valuation: Option<usize>,
    /// `val_T(u_x) = h`: the polygon passes through `(x, h)`.
    pub passes: bool,
}

/// For each `k ∈ ks` and side, whether `val_T(u_{x_k^±}) = h(Δ_k^±)`, from an
/// oracle run with `L = max x_k^+` and `M = max h`.
pub fn np_check(
    delta: &Parallelotope,
    f: &FieldPoly,
    ks: std::ops::RangeInclusive<u32>,
) -> Result<Vec<NpVertexCheck>> {
    let p = f.p();
    let mut wanted = Vec::new();
    for k in ks {
        let (xm, xp) = delta.count_closed_form(k);
        for (side, x) in [(Side::Open, xm), (Side::Closed, xp)] {
            wanted.push((k, side, x, h_dilate(delta, p, k, side)));
        }
    }
    let l_max = wanted.iter().map(|w| w.2).max().unwrap_or(0) as usize;
    let order = wanted.iter().map(|w| w.3).max().unwrap_or(0).max(1) as usize;
    let run = OracleRun::new(f, l_max, order, 1)?;
    Ok(wanted
        .into_iter()
        .map(|(k, side, x, h)| {
            let valuation = run.valuations[x as usize];
            NpVertexCheck { k, side, x, h, valuation, passes: valuation == Some(h as usize) }
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompareRow {
    pub ell: usize,
    pub oracle_valuation: Option<usize>,
    pub dwork_valuation: Option<usize>,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompareReport {
    pub order: usize,
    pub prec: u32,
    pub rows: Vec<CompareRow>,
    /// First `(ℓ, π-degree)` where the two sides differ.
    pub first_mismatch: Option<(usize, usize)>,
}

/// `u_ℓ` from the oracle (rewritten in `π`) against the Fredholm
/// determinant of the Dwork matrix, mod `(p^N, π^{M+1})`.
pub fn compare(delta: &Parallelotope, f: &FieldPoly, l_max: usize, order: usize, prec: u32) -> Result<CompareReport> {
    let oracle = OracleRun::new(f, l_max, order, prec)?;
    let lhs = oracle.u_pi()?;
    let rhs = fredholm(delta, f, l_max, order, prec)?;
    let mut rows = Vec::new();
    let mut first_mismatch = None;
    for l in 0..=l_max {
        let diff = (0..=order).find(|&d| lhs[l][d] != rhs.u[l][d]);
        if first_mismatch.is_none() {
            first_mismatch = diff.map(|d| (l, d));
        }
        rows.push(CompareRow {
            ell: l,
            oracle_valuation: lhs[l].iter().position(|c| *c != 0),
            dwork_valuation: rhs.valuations[l],
            matches: diff.is_none(),
        });
    }
    Ok(CompareReport { order, prec, rows, first_mismatch })
}

/// Like [`compare`], but a difference is an error.
pub fn compare_strict(
    delta: &Parallelotope,
    f: &FieldPoly,
    l_max: usize,
    order: usize,
    prec: u32,
) -> Result<CompareReport> {
    let r = compare(delta, f, l_max, order, prec)?;
    match r.first_mismatch {
        Some((ell, degree)) => Err(Error::Mismatch { ell, degree }),
        None => Ok(r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(a: i64) -> Parallelotope {
        Parallelotope::new(vec![vec![a]]).unwrap()
    }

    #[test]
    fn zero_polynomial_counts_points() {
        for k in 1..=2 {
            let s = exp_sum_terms(5, 2, &[], k, 4, 2, 0).unwrap();
            assert_eq!(s[0], (5u64.pow(k) - 1).pow(2) % 25);
            assert!(s[1..].iter().all(|c| *c == 0));
        }
    }

    #[test]
    fn constant_term_count() {
        let f = FieldPoly::over_prime(5, &[(vec![1], 1), (vec![0], 2)]).unwrap();
        for k in 1..=3 {
            let s = exp_sum(&f, k, 4, 2).unwrap();
            assert_eq!(s[0], (5u64.pow(k) - 1) % 25);
        }
    }

    #[test]
    fn linear_over_f3() {
        // (1+T)^1 + (1+T)^{-1} = 2 + T^2 − T^3 + T^4 − …
        let f = FieldPoly::over_prime(3, &[(vec![1], 1)]).unwrap();
        let s = exp_sum(&f, 1, 5, 2).unwrap();
        let z = Zpn::new(3, 2).unwrap();
        let want: Vec<u64> = [2i64, 0, 1, -1, 1, -1].iter().map(|x| z.from_i64(*x)).collect();
        assert_eq!(s, want);
    }

    #[test]
    fn first_coefficient_formula() {
        let f = FieldPoly::over_prime(11, &[(vec![2], 1), (vec![1], 1)]).unwrap();
        let run = OracleRun::new(&f, 2, 6, 2).unwrap();
        let z = Zpn::new(11, 2).unwrap();
        let inv = z.inv(&10).unwrap();
        let want: Vec<u64> = run.sums[0].iter().map(|c| z.neg(&z.mul(c, &inv))).collect();
        assert_eq!(run.u[1], want);
        assert_eq!(run.u[0][0], 1);
    }

    #[test]
    fn segment_u2_valuation() {
        let f = FieldPoly::over_prime(11, &[(vec![2], 1), (vec![1], 1)]).unwrap();
        let run = OracleRun::new(&f, 3, 15, 1).unwrap();
        assert_eq!(run.valuations[2], Some(5));
        assert!(run.ihp_violations(&seg(2)).is_empty());
    }

    #[test]
    fn index_and_scale_gates() {
        let f = FieldPoly::over_prime(5, &[(vec![2], 1), (vec![1], 1)]).unwrap();
        assert_eq!(OracleRun::new(&f, 5, 4, 1), Err(Error::IndexTooLarge(5)));
        let f = FieldPoly::over_prime(29, &[(vec![1, 1, 1], 1)]).unwrap();
        assert!(matches!(exp_sum(&f, 2, 2, 1), Err(Error::ScaleExceeded(_))));
    }

    #[test]
    fn independent_of_field_presentation() {
        let f = FieldPoly::over_prime(7, &[(vec![2], 3), (vec![1], 1)]).unwrap();
        let a = exp_sum(&f, 2, 6, 2).unwrap();
        let g = exp_sum_terms(7, 1, &[(vec![1], 1), (vec![2], 3)], 2, 6, 2, 1).unwrap();
        assert_eq!(a, g);
    }

    #[test]
    fn compare_segment() {
        let f = FieldPoly::over_prime(11, &[(vec![2], 1), (vec![1], 1)]).unwrap();
        let r = compare_strict(&seg(2), &f, 4, 15, 1).unwrap();
        assert!(r.rows.iter().all(|row| row.matches));
        let r = compare_strict(&seg(2), &f, 3, 8, 2).unwrap();
        assert_eq!(r.rows[2].oracle_valuation, Some(5));
    }

    #[test]
    fn np_check_segment() {
        let f = FieldPoly::over_prime(11, &[(vec![2], 1), (vec![1], 1)]).unwrap();
        let r = np_check(&seg(2), &f, 0..=1).unwrap();
        assert!(r.iter().all(|c| c.passes), "{r:?}");
    }
}

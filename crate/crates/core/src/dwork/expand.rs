//! Expansion of `Π_{P ∈ Δ^+ \ {O}} E(a_P π x^P) = Σ_Q e_Q(π) x^Q`.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::lattice::Parallelotope;
use crate::rational::{floor, Rat};
use crate::series::{ArtinHasseTable, Ring, SeriesRing, TruncSeries};

/// `e_Q mod π^{M+1}` for every cone point `Q` with `w(Q) ≤ cutoff`.
#[derive(Clone, Debug, PartialEq)]
pub struct ECoefficients<E> {
    pub cutoff: Rat,
    pub order: usize,
    pub coeffs: BTreeMap<Vec<i64>, TruncSeries<E>>,
}

impl<E> ECoefficients<E> {
    pub fn get(&self, q: &[i64]) -> Option<&TruncSeries<E>> {
        self.coeffs.get(q)
    }
}

/// Multiplies the Artin–Hasse factors one point at a time. Terms whose
/// exponent exceeds the weight cutoff or whose π-degree exceeds `M` are
/// dropped; weights only grow along the product, so nothing is lost below
/// the cutoff.
pub fn expand_e<R: Ring>(
    delta: &Parallelotope,
    ring: &SeriesRing<R>,
    values: &[(Vec<i64>, R::Elem)],
    table: &ArtinHasseTable,
    cutoff: Rat,
) -> Result<ECoefficients<R::Elem>> {
    let order = ring.order;
    if table.len() <= order {
        return Err(Error::PrecisionExhausted(format!(
            "Artin-Hasse table stops at c_{}, need c_{order}",
            table.len() - 1
        )));
    }
    let base = &ring.base;
    let limit = floor(&(cutoff * Rat::from_integer(delta.d())));
    let mut acc: BTreeMap<Vec<i64>, TruncSeries<R::Elem>> = BTreeMap::new();
    acc.insert(vec![0; delta.n()], ring.one());
    for (p, a) in values {
        let zp = delta.scaled(p);
        if zp.iter().any(|x| *x < 0) {
            return Err(Error::ConeViolation(p.clone()));
        }
        let top = *zp.iter().max().expect("n >= 1");
        if top == 0 {
            continue;
        }
        let mut terms = Vec::new();
        let mut apow = base.one();
        for j in 1..=order {
            if j as i64 * top > limit {
                break;
            }
            apow = base.mul(&apow, a);
            let c = base.mul(&base.from_i64(table.c(j) as i64), &apow);
            if !base.is_zero(&c) {
                terms.push((j, c));
            }
        }
        if terms.is_empty() {
            continue;
        }
        let mut next = acc.clone();
        for (zeta, s) in &acc {
            for (j, c) in &terms {
                let z2: Vec<i64> = zeta.iter().zip(&zp).map(|(x, y)| x + *j as i64 * y).collect();
                if *z2.iter().max().expect("n >= 1") > limit {
                    break;
                }
                let mut coeffs = vec![base.zero(); order + 1];
                for (i, x) in s.coeffs.iter().enumerate().take(order + 1 - j) {
                    coeffs[i + j] = base.mul(x, c);
                }
                let t = TruncSeries { coeffs };
                match next.get_mut(&z2) {
                    Some(old) => *old = ring.add(old, &t),
                    None => {
                        next.insert(z2, t);
                    }
                }
            }
        }
        acc = next;
    }
    let coeffs = acc.into_iter().map(|(z, s)| (delta.from_scaled(&z), s)).collect();
    Ok(ECoefficients { cutoff, order, coeffs })
}

/// `[π^d] e_R` for single `(R, d)` pairs, by the recursion
/// `f(i, ζ, d) = Σ_j c_j a_i^j f(i+1, ζ − j ζ_{P_i}, d − j)`.
pub(crate) struct PiEngine<'a, R: Ring> {
    ring: &'a R,
    d: i64,
    /// Scaled coordinates of `P_i` and `c_j a_i^j` for `j = 0..=dmax`.
    factors: Vec<(Vec<i64>, Vec<R::Elem>)>,
    memo: HashMap<(usize, Vec<i64>, u32), R::Elem>,
}

impl<'a, R: Ring> PiEngine<'a, R> {
    pub(crate) fn new(
        ring: &'a R,
        delta: &Parallelotope,
        values: &[(Vec<i64>, R::Elem)],
        table: &ArtinHasseTable,
        dmax: usize,
    ) -> Result<Self> {
        if table.len() <= dmax {
            return Err(Error::PrecisionExhausted(format!("Artin-Hasse table too short for degree {dmax}")));
        }
        let mut factors = Vec::new();
        for (p, a) in values {
            let zp = delta.scaled(p);
            if zp.iter().any(|x| *x < 0) {
                return Err(Error::ConeViolation(p.clone()));
            }
            if zp.iter().all(|x| *x == 0) || ring.is_zero(a) {
                continue;
            }
            let mut pw = vec![ring.one()];
            let mut apow = ring.one();
            for j in 1..=dmax {
                apow = ring.mul(&apow, a);
                pw.push(ring.mul(&ring.from_i64(table.c(j) as i64), &apow));
            }
            factors.push((zp, pw));
        }
        Ok(PiEngine { ring, d: delta.d(), factors, memo: HashMap::new() })
    }

    /// `[π^d] e_R` given `ζ = D·z(R)`.
    pub(crate) fn coeff(&mut self, zeta: &[i64], d: u32) -> R::Elem {
        if zeta.iter().any(|x| *x < 0) {
            return self.ring.zero();
        }
        self.rec(0, zeta.to_vec(), d)
    }

    fn rec(&mut self, i: usize, zeta: Vec<i64>, d: u32) -> R::Elem {
        if zeta.iter().all(|x| *x == 0) {
            return if d == 0 { self.ring.one() } else { self.ring.zero() };
        }
        if i == self.factors.len() || *zeta.iter().max().expect("n >= 1") > d as i64 * self.d {
            return self.ring.zero();
        }
        let key = (i, zeta, d);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let (i, zeta, d) = key;
        let mut acc = self.ring.zero();
        let mut cur = zeta.clone();
        for j in 0..=d {
            if j > 0 {
                let zp = &self.factors[i].0;
                for (c, y) in cur.iter_mut().zip(zp) {
                    *c -= y;
                }
                if cur.iter().any(|x| *x < 0) {
                    break;
                }
            }
            let coef = self.factors[i].1[j as usize].clone();
            if self.ring.is_zero(&coef) {
                continue;
            }
            let sub = self.rec(i + 1, cur.clone(), d - j);
            if !self.ring.is_zero(&sub) {
                let t = self.ring.mul(&coef, &sub);
                self.ring.add_assign(&mut acc, &t);
            }
        }
        self.memo.insert((i, zeta, d), acc.clone());
        acc
    }
}

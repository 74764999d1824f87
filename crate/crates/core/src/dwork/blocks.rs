//! Leading terms of chain blocks: `ξ`, `M(w, K)`, `γ` and the block
//! determinant `det M((z_1, …, z_ℓ), K) · Π γ(Q_z + (p−1)Q_1)`.

use serde::Serialize;

use super::expand::PiEngine;
use super::leading::block_spec;
use super::{deg_key, leading_part};
use crate::error::{Error, Result};
use crate::lattice::{nondecreasing_vectors, BlockDecomposition, Parallelotope};
use crate::linalg::{det_division_free, det_field};
use crate::series::{ArtinHasseTable, MPoly, MPolyRing, Ring, Zpn};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixM {
    pub w: Vec<i64>,
    pub k: u32,
    pub p: u64,
    /// `V_{ℓ,k}`.
    pub vectors: Vec<Vec<u32>>,
    /// Mod `p`; entry `(i, j)` is `ξ(w + p v_i − v_j)`.
    pub matrix: Vec<Vec<u64>>,
    pub det: u64,
    /// `k ≤ w_i − w_{i−1} ≤ p − k` for all `i` (with `w_0 = 0`).
    pub admissible: bool,
}

fn gaps(w: &[i64]) -> Vec<i64> {
    let mut prev = 0;
    w.iter()
        .map(|x| {
            let g = x - prev;
            prev = *x;
            g
        })
        .collect()
}

/// `ξ(u) = Π_{i=1}^{ℓ} c_{u_i − u_{i−1}}` with `u_0 = 0`, `c_s = 0` for `s < 0`.
fn xi(table: &ArtinHasseTable, u: &[i64]) -> u64 {
    let f = table.ring();
    gaps(u).iter().fold(1, |acc, g| if *g < 0 { 0 } else { f.mul(&acc, &table.c(*g as usize)) })
}

pub fn matrix_m(w: &[i64], k: u32, p: u64) -> Result<MatrixM> {
    if w.is_empty() {
        return Err(Error::InvalidInput("w must be nonempty".into()));
    }
    let vectors = nondecreasing_vectors(w.len(), k);
    let top = gaps(w).into_iter().max().unwrap_or(0).max(0) as usize + p as usize * k as usize;
    let table = ArtinHasseTable::new(p, top, 1)?;
    let matrix: Vec<Vec<u64>> = vectors
        .iter()
        .map(|vi| {
            vectors
                .iter()
                .map(|vj| {
                    let u: Vec<i64> = (0..w.len())
                        .map(|t| w[t] + p as i64 * vi[t] as i64 - vj[t] as i64)
                        .collect();
                    xi(&table, &u)
                })
                .collect()
        })
        .collect();
    let det = det_field(&Zpn::new(p, 1)?, &matrix);
    let admissible = gaps(w).iter().all(|g| *g >= k as i64 && *g <= p as i64 - k as i64);
    Ok(MatrixM { w: w.to_vec(), k, p, vectors, matrix, det, admissible })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentCandidate {
    pub e: i64,
    /// `(−1)^{k(k+1)/2} c_{w_1}^e mod p`.
    pub value: u64,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DetExponentReport {
    pub w1: i64,
    pub k: u32,
    pub p: u64,
    pub det: u64,
    pub candidates: Vec<ExponentCandidate>,
}

impl DetExponentReport {
    pub fn matching(&self) -> Vec<i64> {
        self.candidates.iter().filter(|c| c.matches).map(|c| c.e).collect()
    }
}

/// Compares `det M((w_1), k)` with `(−1)^{k(k+1)/2} c_{w_1}^e` for
/// `e = k − 1` and `e = k + 1`.
pub fn det_m_exponent(w1: i64, k: u32, p: u64) -> Result<DetExponentReport> {
    let m = matrix_m(&[w1], k, p)?;
    let f = Zpn::new(p, 1)?;
    let table = ArtinHasseTable::new(p, w1.max(0) as usize, 1)?;
    let c = if w1 < 0 { 0 } else { table.c(w1 as usize) };
    let sign = if (k * (k + 1) / 2) % 2 == 0 { 1 } else { p - 1 };
    let mut candidates = Vec::new();
    for e in [k as i64 - 1, k as i64 + 1] {
        let base = if e < 0 {
            match crate::series::padic::inv_mod(c, p) {
                Some(x) => x,
                None => continue,
            }
        } else {
            c
        };
        let value = f.mul(&sign, &f.pow(&base, e.unsigned_abs()));
        candidates.push(ExponentCandidate { e, value, matches: value == m.det });
    }
    Ok(DetExponentReport { w1, k, p, det: m.det, candidates })
}

/// `γ(Q_1) = π^{m_ℓ} Π_i ã_{Σ_{j≥i}#S_j}^{m_i − m_{i−1}}` for `Q_1 ∈ Λ_Δ`
/// given by scaled coordinates. Exponents of `ã_1 … ã_n`, then of `π`.
pub fn gamma(delta: &Parallelotope, zeta: &[i64]) -> Result<Vec<u32>> {
    let d = delta.d();
    let n = delta.n();
    if zeta.iter().any(|x| *x < 0 || x % d != 0) {
        return Err(Error::Domain(format!("scaled point {zeta:?} is not in the cone lattice")));
    }
    let mut levels: Vec<i64> = zeta.iter().map(|x| x / d).filter(|x| *x > 0).collect();
    levels.sort_unstable();
    levels.dedup();
    let mut exps = vec![0u32; n + 1];
    let mut prev = 0;
    for lv in levels {
        let tail = zeta.iter().filter(|x| **x / d >= lv).count();
        exps[tail - 1] += (lv - prev) as u32;
        exps[n] = lv as u32;
        prev = lv;
    }
    Ok(exps)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockLeading {
    pub p0: Vec<i64>,
    pub i_set: Vec<usize>,
    pub chains: Vec<Vec<usize>>,
    #[serde(rename = "K")]
    pub k_block: u32,
    pub size: usize,
    /// Chain levels of `Q_z = (p−1)Q_min + P_0 − η(P_0)`.
    pub z: Vec<i64>,
    /// `det M(z, K) mod p`, the unit `b_{P_0,S}`.
    pub unit: u64,
    /// Exponents of `ã_1 … ã_n, π` in `g_{P_0,S}`.
    pub monomial: Vec<u32>,
    pub pi_power: i64,
    pub expected_pi_power: i64,
    /// `z_i − z_{i−1} > K` for all `i`, so the chain levels never cross.
    pub levels_separated: bool,
    pub admissible: bool,
}

fn qz_levels(delta: &Parallelotope, p: u64, block: &BlockDecomposition) -> Result<(Vec<i64>, Vec<i64>)> {
    let d = delta.d();
    let eta = delta.eta(p, &block.p0.q)?;
    let qz: Vec<i64> = (0..delta.n())
        .map(|t| (p as i64 - 1) * block.qmin.scaled[t] + block.p0.scaled[t] - eta.scaled[t])
        .collect();
    let z = block.chains.iter().map(|s| qz[s[0]] / d).collect();
    Ok((qz, z))
}

/// Leading determinant of a chain block via `M(z, K)` and `γ`.
pub fn block_leading_determinant(
    delta: &Parallelotope,
    p: u64,
    block: &BlockDecomposition,
) -> Result<BlockLeading> {
    let d = delta.d();
    let n = delta.n();
    let (qz, z) = qz_levels(delta, p, block)?;
    let ell = block.chains.len();
    let kb = block.k_block;
    let (unit, admissible) = if ell == 0 {
        (1, true)
    } else {
        let m = matrix_m(&z, kb, p)?;
        (m.det, m.admissible)
    };
    let mut monomial = vec![0u32; n + 1];
    for mv in nondecreasing_vectors(ell, kb) {
        let mut zeta = qz.clone();
        for (j, s) in block.chains.iter().enumerate() {
            for &i in s {
                zeta[i] += (p as i64 - 1) * d * mv[j] as i64;
            }
        }
        for (a, b) in monomial.iter_mut().zip(gamma(delta, &zeta)?) {
            *a += b;
        }
    }
    let spec = block_spec(delta, p, &block.p0, &block.members)?;
    let expected_pi_power = spec.h(p, d);
    let levels_separated = gaps(&z).iter().all(|g| *g > kb as i64);
    if unit == 0 && delta.hypothesis(p).holds {
        return Err(Error::NotAUnit(format!(
            "det M({z:?}, {kb}) vanishes mod {p} for the block at P0 = {:?}",
            block.p0.q
        )));
    }
    Ok(BlockLeading {
        p0: block.p0.q.clone(),
        i_set: block.i_set.clone(),
        chains: block.chains.clone(),
        k_block: kb,
        size: block.members.len(),
        z,
        unit,
        pi_power: monomial[n] as i64,
        monomial,
        expected_pi_power,
        levels_separated,
        admissible,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LdCheck {
    /// Every entry has a single leading monomial of degree `Deg(R)` with
    /// coefficient `Π c_{m_i − m_{i−1}}` mod `p^N`.
    pub entries_match_deg: bool,
    /// `det(LD(ẽ^res))` over the block equals `unit · g`.
    pub det_matches: bool,
}

/// Independent check of [`block_leading_determinant`]: expands each
/// `ẽ^res_R` in full (`ã_1 … ã_n, π`) mod `p^prec`, takes `LD` entrywise and
/// the determinant of the result mod `p`.
pub fn ld_check(delta: &Parallelotope, p: u64, block: &BlockDecomposition, prec: u32) -> Result<LdCheck> {
    let d = delta.d();
    let n = delta.n();
    let modulus = Zpn::new(p, prec)?.modulus();
    let big = MPolyRing::new(modulus, n + 1);
    let idx: Vec<usize> = (0..n).collect();
    let values: Vec<(Vec<i64>, MPoly)> = crate::lattice::subsets(&idx)
        .into_iter()
        .filter(|s| !s.is_empty())
        .map(|s| (delta.vertex(&s), big.mul(&big.var(s.len() - 1), &big.var(n))))
        .collect();
    let spec = block_spec(delta, p, &block.p0, &block.members)?;
    let zetas: Vec<Vec<Vec<i64>>> = block
        .members
        .iter()
        .map(|q| {
            block
                .members
                .iter()
                .map(|q2| (0..n).map(|t| p as i64 * q.scaled[t] - q2.scaled[t] + spec.shift[t]).collect())
                .collect()
        })
        .collect();
    let dmax = zetas.iter().flatten().map(|z| z.iter().map(|x| x.max(&0)).sum::<i64>() / d).max().unwrap_or(0)
        as usize;
    let table = ArtinHasseTable::new(p, dmax, prec)?;
    let mut engine = PiEngine::new(&big, delta, &values, &table, dmax)?;
    let small = MPolyRing::new(p, n + 1);
    let mut entries_match_deg = true;
    let mut ld = Vec::new();
    for row in &zetas {
        let mut out = Vec::new();
        for zeta in row {
            if zeta.iter().any(|x| *x < 0) {
                out.push(small.zero());
                continue;
            }
            let mut full = big.zero();
            for dd in 0..=dmax as u32 {
                let c = engine.coeff(zeta, dd);
                big.add_assign(&mut full, &c);
            }
            let lead = leading_part(&full, n);
            let want = gamma(delta, zeta).ok();
            let ok = match (&want, lead.terms.iter().next()) {
                (Some(w), Some((e, c))) if lead.num_terms() == 1 => {
                    let levels = {
                        let mut l: Vec<i64> = zeta.iter().map(|x| x / d).filter(|x| *x > 0).collect();
                        l.sort_unstable();
                        l.dedup();
                        l
                    };
                    let coef = gaps(&levels)
                        .iter()
                        .fold(1u64, |acc, g| ((acc as u128 * table.c(*g as usize) as u128) % modulus as u128) as u64);
                    deg_key(e, n) == deg_key(w, n) && e[n] == w[n] && *c == coef
                }
                _ => false,
            };
            entries_match_deg &= ok;
            let mut reduced = MPoly::default();
            for (e, c) in &lead.terms {
                small.add_term(&mut reduced, e.clone(), *c);
            }
            out.push(reduced);
        }
        ld.push(out);
    }
    let det = det_division_free(&small, &ld);
    let formula = block_leading_determinant(delta, p, block)?;
    let expected = small.monomial(formula.unit, formula.monomial.clone());
    Ok(LdCheck { entries_match_deg, det_matches: det == expected })
}

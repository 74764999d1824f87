//! Combinatorics of a parallelotope `Δ = {Σ z_i V_i : 0 ≤ z_i ≤ 1}`, its cone,
//! dilates, residues modulo `Λ = ⊕ Z·V_i`, and the chain blocks that organize
//! the leading-term analysis.
//!
//! Points are tracked alongside their *scaled coordinates* `ζ = D·z`, which
//! are integral for every lattice point; all cone and weight tests are done
//! on `ζ`.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{ser_rat, ser_rat_vec, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `Δ_k^-`: `0 ≤ z_i < k`.
    Open,
    /// `Δ_k^+`: `0 ≤ z_i ≤ k`.
    Closed,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Open, Side::Closed];

    pub fn as_str(self) -> &'static str {
        match self {
            Side::Open => "open",
            Side::Closed => "closed",
        }
    }
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "open" | "-" | "minus" => Ok(Side::Open),
            "closed" | "+" | "plus" => Ok(Side::Closed),
            _ => Err(Error::InvalidInput(format!("unknown side {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticePoint {
    pub q: Vec<i64>,
    #[serde(serialize_with = "ser_rat_vec")]
    pub z: Vec<Rat>,
    #[serde(serialize_with = "ser_rat")]
    pub w: Rat,
    /// Degree vector `(v_1, …, v_n)`; `v_{n+1−s}` is the exponent of `ã_s`
    /// in the staircase monomial of the point.
    #[serde(serialize_with = "ser_rat_vec")]
    pub deg: Vec<Rat>,
    #[serde(skip)]
    pub scaled: Vec<i64>,
}

impl LatticePoint {
    pub fn is_origin(&self) -> bool {
        self.q.iter().all(|x| *x == 0)
    }

    /// `I(Q) = {i : z_i = 0}` (0-based).
    pub fn zero_set(&self) -> Vec<usize> {
        (0..self.scaled.len()).filter(|&i| self.scaled[i] == 0).collect()
    }
}

/// Canonical order: weight, then lexicographic `Q`.
pub fn canonical_cmp(a: &LatticePoint, b: &LatticePoint) -> std::cmp::Ordering {
    a.w.cmp(&b.w).then_with(|| a.q.cmp(&b.q))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub p: u64,
    pub p_divides_vol: bool,
    /// `(n + 4)·D`; the hypothesis asks `p` to exceed it.
    pub bound: i64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parallelotope {
    n: usize,
    v: Vec<Vec<i64>>,
    vol: i64,
    d: i64,
    vinv: Vec<Vec<Rat>>,
    /// `D·V^{-1}`, an integer matrix.
    scaled_inv: Vec<Vec<i64>>,
    /// `#Δ^-(I)` keyed by the sorted index set `I`.
    residue_profile: BTreeMap<Vec<usize>, usize>,
}

impl Parallelotope {
    /// Rows of `v` are the generators.
    pub fn new(v: Vec<Vec<i64>>) -> Result<Self> {
        let n = v.len();
        if n == 0 || v.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("generator matrix must be square and nonempty".into()));
        }
        if v.iter().flatten().any(|x| *x < 0) {
            return Err(Error::InvalidInput("generators must have nonnegative entries".into()));
        }
        let det = int_det(&v);
        if det == 0 || v.iter().any(|r| r.iter().all(|x| *x == 0)) {
            return Err(Error::InvalidInput("singular generators".into()));
        }
        let det = i64::try_from(det).map_err(|_| Error::InvalidInput("volume overflows".into()))?;
        let adj = adjugate(&v);
        let g = adj.iter().flatten().fold(0i64, |g, x| g.gcd(x));
        let d = det.abs() / g;
        let vinv = adj.iter().map(|r| r.iter().map(|x| Rat::new(*x, det)).collect()).collect();
        let scaled_inv = adj.iter().map(|r| r.iter().map(|x| x * d / det).collect()).collect();
        let mut out = Parallelotope {
            n,
            v,
            vol: det.abs(),
            d,
            vinv,
            scaled_inv,
            residue_profile: BTreeMap::new(),
        };
        for p0 in out.enumerate(1, Side::Open) {
            *out.residue_profile.entry(p0.zero_set()).or_default() += 1;
        }
        Ok(out)
    }

    /// Parses `{"V": [[…], …]}`.
    pub fn from_json(s: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Input {
            #[serde(rename = "V")]
            v: Vec<Vec<i64>>,
        }
        let input: Input =
            serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("polytope JSON: {e}")))?;
        Self::new(input.v)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.v
    }

    pub fn vol(&self) -> i64 {
        self.vol
    }

    /// Exponent of `Z^n / Λ`: the least `D` with `D·z(Q)` integral for all `Q`.
    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn vinv(&self) -> &[Vec<Rat>] {
        &self.vinv
    }

    pub fn hypothesis(&self, p: u64) -> Hypothesis {
        let p_divides_vol = self.vol % p as i64 == 0;
        let bound = (self.n as i64 + 4) * self.d;
        Hypothesis { p, p_divides_vol, bound, holds: !p_divides_vol && p as i64 > bound }
    }

    /// `z` with `Q = Σ z_i V_i`.
    pub fn coords(&self, q: &[i64]) -> Vec<Rat> {
        self.scaled(q).into_iter().map(|x| Rat::new(x, self.d)).collect()
    }

    /// `D·z(Q)`.
    pub fn scaled(&self, q: &[i64]) -> Vec<i64> {
        (0..self.n).map(|i| (0..self.n).map(|j| q[j] * self.scaled_inv[j][i]).sum()).collect()
    }

    /// Inverse of [`Parallelotope::scaled`].
    pub fn from_scaled(&self, zeta: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|j| {
                let s: i64 = (0..self.n).map(|i| zeta[i] * self.v[i][j]).sum();
                debug_assert_eq!(s % self.d, 0);
                s / self.d
            })
            .collect()
    }

    pub fn in_cone(&self, q: &[i64]) -> bool {
        self.scaled(q).iter().all(|x| *x >= 0)
    }

    pub fn weight(&self, q: &[i64]) -> Result<Rat> {
        let zeta = self.scaled(q);
        if zeta.iter().any(|x| *x < 0) {
            return Err(Error::ConeViolation(q.to_vec()));
        }
        Ok(Rat::new(*zeta.iter().max().expect("n >= 1"), self.d))
    }

    pub fn point(&self, q: &[i64]) -> Result<LatticePoint> {
        let zeta = self.scaled(q);
        if zeta.iter().any(|x| *x < 0) {
            return Err(Error::ConeViolation(q.to_vec()));
        }
        Ok(self.point_from_scaled(zeta))
    }

    /// Builds the point with the given scaled coordinates (assumed in cone).
    pub fn point_from_scaled(&self, zeta: Vec<i64>) -> LatticePoint {
        let q = self.from_scaled(&zeta);
        let z: Vec<Rat> = zeta.iter().map(|x| Rat::new(*x, self.d)).collect();
        let w = Rat::new(*zeta.iter().max().expect("n >= 1"), self.d);
        let deg = self.degree_vector(&zeta);
        LatticePoint { q, z, w, deg, scaled: zeta }
    }

    /// Staircase degree vector: with the distinct positive coordinates
    /// `z'_1 < … < z'_ℓ` taken on sets `S_1, …, S_ℓ`, component
    /// `n + 1 − Σ_{j≥i} #S_j` (1-based) is `z'_i − z'_{i−1}`.
    fn degree_vector(&self, zeta: &[i64]) -> Vec<Rat> {
        let mut levels: Vec<i64> = zeta.iter().copied().filter(|x| *x > 0).collect();
        levels.sort_unstable();
        levels.dedup();
        let mut deg = vec![Rat::from_integer(0); self.n];
        let mut prev = 0;
        for lv in levels {
            let tail = zeta.iter().filter(|x| **x >= lv).count();
            deg[self.n - tail] = Rat::new(lv - prev, self.d);
            prev = lv;
        }
        deg
    }

    /// `V_S = Σ_{i∈S} V_i`.
    pub fn vertex(&self, s: &[usize]) -> Vec<i64> {
        (0..self.n).map(|j| s.iter().map(|&i| self.v[i][j]).sum()).collect()
    }

    /// Lattice points of `kΔ` (closed) or `kΔ°` (open), canonical order.
    /// For `k = 0` both sides return `{O}`.
    pub fn enumerate(&self, k: u32, side: Side) -> Vec<LatticePoint> {
        if k == 0 {
            return vec![self.point_from_scaled(vec![0; self.n])];
        }
        let kd = k as i64 * self.d;
        let upper: Vec<i64> = (0..self.n).map(|j| k as i64 * self.v.iter().map(|r| r[j]).sum::<i64>()).collect();
        let mut out = Vec::new();
        let mut q = vec![0i64; self.n];
        loop {
            let zeta = self.scaled(&q);
            let inside = zeta.iter().all(|&x| {
                x >= 0
                    && match side {
                        Side::Open => x < kd,
                        Side::Closed => x <= kd,
                    }
            });
            if inside {
                out.push(self.point_from_scaled(zeta));
            }
            let mut j = 0;
            loop {
                if j == self.n {
                    out.sort_by(canonical_cmp);
                    return out;
                }
                if q[j] < upper[j] {
                    q[j] += 1;
                    break;
                }
                q[j] = 0;
                j += 1;
            }
        }
    }

    /// First `count` points of the cone in canonical order.
    pub fn lowest_points(&self, count: usize) -> Vec<LatticePoint> {
        let mut k = 1;
        while (self.count_closed_form(k).1 as usize) < count {
            k += 1;
        }
        let mut pts = self.enumerate(k, Side::Closed);
        pts.truncate(count);
        pts
    }

    /// All cone points with weight at most `w`, canonical order.
    pub fn points_up_to_weight(&self, w: Rat) -> Vec<LatticePoint> {
        let k = crate::rational::ceil(&w).max(0) as u32;
        self.enumerate(k, Side::Closed).into_iter().filter(|q| q.w <= w).collect()
    }

    /// `(x_k^-, x_k^+)` from the residue profile: `x_k^- = k^n·vol` and
    /// `x_k^+ = Σ_I #Δ^-(I)·(k+1)^{#I}·k^{n−#I}`. At `k = 0` this gives
    /// `(0, 1)`: no slope of the characteristic series lies below 0 and
    /// exactly one (from `u_1 ≡ −1`) lies at 0.
    pub fn count_closed_form(&self, k: u32) -> (u64, u64) {
        let k = k as u64;
        let minus = k.pow(self.n as u32) * self.vol as u64;
        let plus = self
            .residue_profile
            .iter()
            .map(|(i, c)| *c as u64 * (k + 1).pow(i.len() as u32) * k.pow((self.n - i.len()) as u32))
            .sum();
        (minus, plus)
    }

    /// `Q% = Σ frac(z_i)·V_i`.
    pub fn residue(&self, q: &[i64]) -> Result<LatticePoint> {
        let zeta = self.scaled(q);
        if zeta.iter().any(|x| *x < 0) {
            return Err(Error::ConeViolation(q.to_vec()));
        }
        Ok(self.point_from_scaled(zeta.iter().map(|x| x % self.d).collect()))
    }

    /// `η(P_0) = (p·P_0)%`, a permutation of `Δ^-`.
    pub fn eta(&self, p: u64, p0: &[i64]) -> Result<LatticePoint> {
        let zeta = self.scaled(p0);
        if zeta.iter().any(|x| *x < 0 || *x >= self.d) {
            return Err(Error::Domain(format!("{p0:?} is not in the fundamental domain")));
        }
        Ok(self.point_from_scaled(zeta.iter().map(|x| (x * p as i64) % self.d).collect()))
    }

    /// `Δ^-(I)`: points of `Δ^-` whose zero coordinates are exactly `I`.
    pub fn delta_minus_i(&self, i_set: &[usize]) -> Vec<LatticePoint> {
        let mut want = i_set.to_vec();
        want.sort_unstable();
        self.enumerate(1, Side::Open).into_iter().filter(|q| q.zero_set() == want).collect()
    }

    /// Partition of `Δ_k^±` into chain blocks `Δ_k^±(I, P_0; S_1, …, S_ℓ)`,
    /// each of the form `Q_min + Y_K(S_1, …, S_ℓ)`. Index sets are 0-based.
    pub fn block_decomposition(&self, k: u32, side: Side) -> Vec<BlockDecomposition> {
        let origin = self.point_from_scaled(vec![0; self.n]);
        if k == 0 {
            return vec![BlockDecomposition {
                p0: origin.clone(),
                i_set: (0..self.n).collect(),
                chains: Vec::new(),
                qmin: origin.clone(),
                k_block: 0,
                members: vec![origin],
            }];
        }
        let mut out = Vec::new();
        for p0 in self.enumerate(1, Side::Open) {
            let zero = p0.zero_set();
            for i_set in subsets(&zero) {
                let rest: Vec<usize> = (0..self.n).filter(|i| !i_set.contains(i)).collect();
                for chains in ordered_partitions(&rest) {
                    if let Some(b) = self.chain_block(&p0, &i_set, chains, k, side) {
                        out.push(b);
                    }
                }
            }
        }
        out
    }

    fn chain_block(
        &self,
        p0: &LatticePoint,
        i_set: &[usize],
        chains: Vec<Vec<usize>>,
        k: u32,
        side: Side,
    ) -> Option<BlockDecomposition> {
        let d = self.d;
        let mut zmin = Vec::with_capacity(chains.len());
        let mut prev = 0i64;
        for s in &chains {
            let r = p0.scaled[s[0]];
            if s.iter().any(|&i| p0.scaled[i] != r) {
                return None;
            }
            let mut z = prev.div_euclid(d) * d + r;
            if z <= prev {
                z += d;
            }
            zmin.push(z);
            prev = z;
        }
        let kd = k as i64 * d;
        let k_block = match (chains.is_empty(), side) {
            (true, _) => 0,
            (false, Side::Open) => (kd - prev - 1).div_euclid(d),
            (false, Side::Closed) => (kd - prev).div_euclid(d),
        };
        if k_block < 0 {
            return None;
        }
        let at = |m: &[i64]| {
            let mut zeta = vec![0i64; self.n];
            for (j, s) in chains.iter().enumerate() {
                for &i in s {
                    zeta[i] = zmin[j] + m[j] * d;
                }
            }
            self.point_from_scaled(zeta)
        };
        let qmin = at(&vec![0; chains.len()]);
        let members = nondecreasing_vectors(chains.len(), k_block as u32)
            .into_iter()
            .map(|m| at(&m.iter().map(|x| *x as i64).collect::<Vec<_>>()))
            .collect();
        Some(BlockDecomposition {
            p0: p0.clone(),
            i_set: i_set.to_vec(),
            chains,
            qmin,
            k_block: k_block as u32,
            members,
        })
    }
}

/// One chain block. Members are listed in the order of
/// [`nondecreasing_vectors`] applied to the chain multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    pub p0: LatticePoint,
    pub i_set: Vec<usize>,
    pub chains: Vec<Vec<usize>>,
    pub qmin: LatticePoint,
    #[serde(rename = "K")]
    pub k_block: u32,
    pub members: Vec<LatticePoint>,
}

/// `{(m_1, …, m_len) : 0 ≤ m_1 ≤ … ≤ m_len ≤ max}` in lexicographic order.
pub fn nondecreasing_vectors(len: usize, max: u32) -> Vec<Vec<u32>> {
    fn rec(len: usize, lo: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for m in lo..=max {
            cur.push(m);
            rec(len, m, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, 0, max, &mut Vec::new(), &mut out);
    out
}

/// All subsets, each sorted.
pub fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    (0..1u32 << items.len())
        .map(|mask| (0..items.len()).filter(|b| mask >> b & 1 == 1).map(|b| items[b]).collect())
        .collect()
}

/// Ordered set partitions of `items` into nonempty blocks.
pub fn ordered_partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in subsets(items).into_iter().filter(|s| !s.is_empty()) {
        let rest: Vec<usize> = items.iter().copied().filter(|i| !first.contains(i)).collect();
        for mut tail in ordered_partitions(&rest) {
            tail.insert(0, first.clone());
            out.push(tail);
        }
    }
    out
}

fn int_det(v: &[Vec<i64>]) -> i128 {
    // Bareiss fraction-free elimination.
    let n = v.len();
    let mut m: Vec<Vec<i128>> = v.iter().map(|r| r.iter().map(|x| *x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// `adj(V)` with `V·adj(V) = det(V)·I`.
fn adjugate(v: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = v.len();
    if n == 1 {
        return vec![vec![1]];
    }
    let mut adj = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = (0..n)
                .filter(|&r| r != i)
                .map(|r| (0..n).filter(|&c| c != j).map(|c| v[r][c]).collect())
                .collect();
            let c = int_det(&minor) as i64;
            adj[j][i] = if (i + j) % 2 == 0 { c } else { -c };
        }
    }
    adj
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rect() -> Parallelotope {
        Parallelotope::new(vec![vec![2, 0], vec![0, 3]]).unwrap()
    }

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn coordinates_and_weights() {
        let p = rect();
        assert_eq!(p.coords(&[1, 1]), vec![r(1, 2), r(1, 3)]);
        assert_eq!(p.coords(&[0, 0]), vec![r(0, 1), r(0, 1)]);
        let skew = Parallelotope::new(vec![vec![1, 0], vec![1, 2]]).unwrap();
        assert_eq!(skew.coords(&[1, 1]), vec![r(1, 2), r(1, 2)]);
        assert_eq!(p.weight(&[1, 1]).unwrap(), r(1, 2));
        assert_eq!(p.weight(&[0, 1]).unwrap(), r(1, 3));
        assert_eq!(p.weight(&[0, 0]).unwrap(), r(0, 1));
        assert!(matches!(skew.weight(&[1, 3]), Err(Error::ConeViolation(_))));
    }

    #[test]
    fn invariants_of_examples() {
        let p = rect();
        assert_eq!((p.vol(), p.d()), (6, 6));
        let skew = Parallelotope::new(vec![vec![1, 0], vec![1, 2]]).unwrap();
        assert_eq!((skew.vol(), skew.d()), (2, 2));
        let cube = Parallelotope::new(vec![vec![3, 0, 0], vec![0, 3, 0], vec![0, 0, 3]]).unwrap();
        assert_eq!((cube.vol(), cube.d()), (27, 3));
        let seg = Parallelotope::new(vec![vec![2]]).unwrap();
        assert_eq!((seg.vol(), seg.d()), (2, 2));
        assert!(Parallelotope::new(vec![vec![1, 0], vec![0, 0]]).is_err());
        assert!(Parallelotope::new(vec![vec![1, 2], vec![2, 4]]).is_err());
    }

    #[test]
    fn enumeration() {
        let p = rect();
        let open = p.enumerate(1, Side::Open);
        let qs: Vec<Vec<i64>> = open.iter().map(|x| x.q.clone()).collect();
        assert_eq!(qs, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1], vec![0, 2], vec![1, 2]]);
        let ws: Vec<Rat> = open.iter().map(|x| x.w).collect();
        assert_eq!(ws, vec![r(0, 1), r(1, 3), r(1, 2), r(1, 2), r(2, 3), r(2, 3)]);
        assert_eq!(p.enumerate(1, Side::Closed).len(), 12);
        let seg = Parallelotope::new(vec![vec![2]]).unwrap();
        let qs: Vec<i64> = seg.enumerate(3, Side::Open).iter().map(|x| x.q[0]).collect();
        assert_eq!(qs, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(seg.enumerate(0, Side::Open).len(), 1);
    }

    #[test]
    fn closed_forms() {
        let p = rect();
        assert_eq!(p.count_closed_form(1), (6, 12));
        assert_eq!(p.count_closed_form(2).0, 24);
        assert_eq!(p.count_closed_form(2).1, p.enumerate(2, Side::Closed).len() as u64);
        let seg = Parallelotope::new(vec![vec![2]]).unwrap();
        assert_eq!(seg.count_closed_form(3), (6, 7));
        assert_eq!(seg.count_closed_form(0), (0, 1));
    }

    #[test]
    fn residues_and_eta() {
        let p = rect();
        assert_eq!(p.residue(&[3, 4]).unwrap().q, vec![1, 1]);
        assert_eq!(p.residue(&[0, 0]).unwrap().q, vec![0, 0]);
        assert_eq!(p.residue(&[2, 3]).unwrap().q, vec![0, 0]);
        assert_eq!(p.eta(29, &[0, 1]).unwrap().q, vec![0, 2]);
        assert_eq!(p.eta(29, &[1, 1]).unwrap().q, vec![1, 2]);
        assert_eq!(p.eta(29, &[0, 0]).unwrap().q, vec![0, 0]);
        assert!(matches!(p.eta(29, &[2, 0]), Err(Error::Domain(_))));
    }

    #[test]
    fn delta_minus_faces() {
        let p = rect();
        let q = |i: &[usize]| p.delta_minus_i(i).into_iter().map(|x| x.q).collect::<Vec<_>>();
        assert_eq!(q(&[0, 1]), vec![vec![0, 0]]);
        assert_eq!(q(&[0]), vec![vec![0, 1], vec![0, 2]]);
        assert_eq!(q(&[]), vec![vec![1, 1], vec![1, 2]]);
    }

    #[test]
    fn cube_blocks() {
        let cube = Parallelotope::new(vec![vec![3, 0, 0], vec![0, 3, 0], vec![0, 0, 3]]).unwrap();
        let find = |side, chains: Vec<Vec<usize>>| {
            cube.block_decomposition(3, side)
                .into_iter()
                .find(|b| b.p0.q == vec![1, 0, 0] && b.i_set == vec![1] && b.chains == chains)
                .unwrap()
        };
        let b = find(Side::Open, vec![vec![0], vec![2]]);
        let qs: Vec<Vec<i64>> = b.members.iter().map(|m| m.q.clone()).collect();
        assert_eq!(qs, vec![vec![1, 0, 3], vec![1, 0, 6], vec![4, 0, 6]]);
        assert_eq!((b.qmin.q.clone(), b.k_block), (vec![1, 0, 3], 1));
        let b = find(Side::Closed, vec![vec![0], vec![2]]);
        assert_eq!(b.members.len(), 6);
        assert_eq!(b.k_block, 2);
        for q in [[1, 0, 9], [4, 0, 9], [7, 0, 9]] {
            assert!(b.members.iter().any(|m| m.q == q));
        }
        let b = find(Side::Open, vec![vec![2], vec![0]]);
        let qs: Vec<Vec<i64>> = b.members.iter().map(|m| m.q.clone()).collect();
        assert_eq!(qs, vec![vec![4, 0, 3], vec![7, 0, 3], vec![7, 0, 6]]);
        assert_eq!((b.qmin.q.clone(), b.k_block), (vec![4, 0, 3], 1));
        let b = find(Side::Closed, vec![vec![2], vec![0]]);
        assert_eq!(b.k_block, 1);
    }

    #[test]
    fn degree_vectors() {
        let sq = Parallelotope::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
        // 2V_1 + 3V_2 = 2·V_{12} + 1·V_{2}: exponent 2 on ã_2, 1 on ã_1.
        let pt = sq.point(&[2, 3]).unwrap();
        assert_eq!(pt.deg, vec![r(2, 1), r(1, 1)]);
    }
}

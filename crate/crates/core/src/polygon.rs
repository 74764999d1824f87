//! Lower convex hulls with exact rational heights, the Hodge and improved
//! Hodge polygons of a parallelotope, and slope bookkeeping for L-functions.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{Hypothesis, LatticePoint, Parallelotope, Side};
use crate::rational::{decimal, rat_str, ser_rat, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    vertices: Vec<(u64, Rat)>,
}

impl NewtonPolygon {
    /// Lower convex hull of `points`; a repeated `x` keeps the smallest `y`.
    pub fn lower_hull(points: &[(u64, Rat)]) -> Self {
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup_by(|b, a| a.0 == b.0);
        let mut hull: Vec<(u64, Rat)> = Vec::with_capacity(pts.len());
        for pt in pts {
            while hull.len() >= 2 {
                let (a, b) = (&hull[hull.len() - 2], &hull[hull.len() - 1]);
                // drop b unless it lies strictly below segment a..pt
                let lhs = (b.1 - a.1) * Rat::from_integer((pt.0 - a.0) as i64);
                let rhs = (pt.1 - a.1) * Rat::from_integer((b.0 - a.0) as i64);
                if lhs >= rhs {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(pt);
        }
        NewtonPolygon { vertices: hull }
    }

    pub fn vertices(&self) -> &[(u64, Rat)] {
        &self.vertices
    }

    pub fn max_x(&self) -> u64 {
        self.vertices.last().map_or(0, |v| v.0)
    }

    pub fn is_vertex(&self, x: u64) -> bool {
        self.vertices.iter().any(|v| v.0 == x)
    }

    /// Height at `x`, or `None` outside the covered range.
    pub fn evaluate(&self, x: Rat) -> Option<Rat> {
        let first = self.vertices.first()?;
        if x < Rat::from_integer(first.0 as i64) || x > Rat::from_integer(self.max_x() as i64) {
            return None;
        }
        for w in self.vertices.windows(2) {
            let (x0, x1) = (Rat::from_integer(w[0].0 as i64), Rat::from_integer(w[1].0 as i64));
            if x <= x1 {
                return Some(w[0].1 + (w[1].1 - w[0].1) * (x - x0) / (x1 - x0));
            }
        }
        Some(first.1)
    }

    pub fn at(&self, x: u64) -> Option<Rat> {
        self.evaluate(Rat::from_integer(x as i64))
    }

    /// Slopes as a multiset, one entry per unit of `x`, nondecreasing.
    pub fn slopes(&self) -> Vec<Rat> {
        let mut out = Vec::new();
        for w in self.vertices.windows(2) {
            let len = w[1].0 - w[0].0;
            let s = (w[1].1 - w[0].1) / Rat::from_integer(len as i64);
            out.extend(std::iter::repeat(s).take(len as usize));
        }
        out
    }

    /// Same polygon with heights divided by `by`.
    pub fn normalized(&self, by: Rat) -> Self {
        NewtonPolygon { vertices: self.vertices.iter().map(|(x, y)| (*x, y / by)).collect() }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let v: Vec<serde_json::Value> =
            self.vertices.iter().map(|(x, y)| serde_json::json!([x, rat_str(y)])).collect();
        serde_json::json!({ "vertices": v })
    }

    /// Two columns `x y` for plotting, with the exact height as a comment.
    pub fn plot_table(&self) -> String {
        let mut s = String::from("# x y  # exact\n");
        for x in self.vertices.first().map_or(0, |v| v.0)..=self.max_x() {
            let y = self.at(x).expect("in range");
            s.push_str(&format!("{x} {}  # {}\n", decimal(&y, 6), rat_str(&y)));
        }
        s
    }
}

/// `⌊w(pQ)⌋ − ⌊w(Q)⌋` as a function of `w = w(Q)`.
pub fn h_of_weight(w: &Rat, p: u64) -> i64 {
    crate::rational::floor(&(w * Rat::from_integer(p as i64))) - crate::rational::floor(w)
}

/// `h(S) = Σ_{Q∈S} (⌊w(pQ)⌋ − ⌊w(Q)⌋)` over a multiset of cone points.
pub fn h_of_set(delta: &Parallelotope, p: u64, s: &[Vec<i64>]) -> Result<i64> {
    s.iter().map(|q| Ok(h_of_weight(&delta.weight(q)?, p))).sum()
}

pub fn h_of_points(p: u64, s: &[LatticePoint]) -> i64 {
    s.iter().map(|q| h_of_weight(&q.w, p)).sum()
}

/// `h(Δ_k^±)`.
pub fn h_dilate(delta: &Parallelotope, p: u64, k: u32, side: Side) -> i64 {
    h_of_points(p, &delta.enumerate(k, side))
}

/// Points `(ℓ, (p−1)·Σ_{W_ℓ} w)` for `ℓ = 0..=ℓ_max`.
pub fn hodge_points(delta: &Parallelotope, p: u64, l_max: usize) -> Vec<(u64, Rat)> {
    let mut acc = Rat::zero();
    let mut out = vec![(0, acc)];
    for (i, q) in delta.lowest_points(l_max).iter().enumerate() {
        acc += q.w * Rat::from_integer(p as i64 - 1);
        out.push((i as u64 + 1, acc));
    }
    out
}

/// Points `(ℓ, h(W_ℓ))` for `ℓ = 0..=ℓ_max`.
pub fn improved_hodge_points(delta: &Parallelotope, p: u64, l_max: usize) -> Vec<(u64, Rat)> {
    let mut acc = 0i64;
    let mut out = vec![(0, Rat::zero())];
    for (i, q) in delta.lowest_points(l_max).iter().enumerate() {
        acc += h_of_weight(&q.w, p);
        out.push((i as u64 + 1, Rat::from_integer(acc)));
    }
    out
}

pub fn hodge_polygon(delta: &Parallelotope, p: u64, l_max: usize) -> NewtonPolygon {
    NewtonPolygon::lower_hull(&hodge_points(delta, p, l_max))
}

/// Truncated at `ℓ_max`; exact on `[0, x_k^+]` whenever `x_k^+ ≤ ℓ_max`,
/// since those are vertices of the untruncated hull.
pub fn improved_hodge_polygon(delta: &Parallelotope, p: u64, l_max: usize) -> NewtonPolygon {
    NewtonPolygon::lower_hull(&improved_hodge_points(delta, p, l_max))
}

/// Smallest `x_k^+` that is at least `l`; the improved Hodge polygon built up
/// to this length is exact at every `x ≤ l`.
pub fn exact_length(delta: &Parallelotope, l: usize) -> usize {
    (0..).map(|k| delta.count_closed_form(k).1 as usize).find(|x| *x >= l).expect("unbounded")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapReport {
    pub k: u32,
    pub side: Side,
    pub x: u64,
    #[serde(serialize_with = "ser_rat")]
    pub ihp: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub hp: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub gap: Rat,
    /// Some `P_0 ∈ Δ^-` has `r_a < r_b` with `{p r_a} > {p r_b}`.
    pub two_index_predicate: bool,
    /// Some `P_0 ∈ Δ^-` has its maximal coordinates disjoint from the
    /// maximal fractional parts of `p·r`.
    pub argmax_predicate: bool,
    /// Whether the predicates force `gap > 0` at this `k`.
    pub strict_guaranteed: bool,
}

pub fn ihp_hp_gap(delta: &Parallelotope, p: u64, k: u32, side: Side) -> GapReport {
    let (xm, xp) = delta.count_closed_form(k);
    let x = if side == Side::Open { xm } else { xp };
    let len = xp as usize;
    let ihp = improved_hodge_polygon(delta, p, len).at(x).expect("x within range");
    let hp = hodge_polygon(delta, p, len).at(x).expect("x within range");
    let pr = Rat::from_integer(p as i64);
    let mut two = false;
    let mut argmax = false;
    for p0 in delta.enumerate(1, Side::Open) {
        let fr: Vec<Rat> = p0.z.iter().map(|r| (r * pr).fract()).collect();
        let r = &p0.z;
        for a in 0..r.len() {
            for b in 0..r.len() {
                if r[a] < r[b] && fr[a] > fr[b] {
                    two = true;
                }
            }
        }
        let rmax = r.iter().max().expect("n >= 1");
        let fmax = fr.iter().max().expect("n >= 1");
        if !(0..r.len()).any(|j| r[j] == *rmax && fr[j] == *fmax) {
            argmax = true;
        }
    }
    GapReport {
        k,
        side,
        x,
        ihp,
        hp,
        gap: ihp - hp,
        two_index_predicate: two,
        argmax_predicate: argmax,
        strict_guaranteed: (argmax && k >= 1) || (two && k >= 2),
    }
}

/// Interpolating polynomial of `k ↦ h(Δ_k^±)` through `k = 1..=n+2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HFit {
    pub side: Side,
    /// `A_0, …, A_{n+1}` with `h = Σ A_i k^i`.
    #[serde(serialize_with = "crate::rational::ser_rat_vec")]
    pub coeffs: Vec<Rat>,
    pub integral: bool,
}

impl HFit {
    pub fn eval(&self, k: u32) -> Rat {
        let k = Rat::from_integer(k as i64);
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * k + c)
    }
}

/// The coefficients are rational in general (for the unit square,
/// `h(Δ_k^-) = (p−1)·k(k−1)(4k+1)/6`); `integral` records whether they
/// happen to be integers.
pub fn h_polynomial_fit(delta: &Parallelotope, p: u64, side: Side) -> HFit {
    let n = delta.n();
    let xs: Vec<i64> = (1..=n as i64 + 2).collect();
    let ys: Vec<Rat> = xs.iter().map(|k| Rat::from_integer(h_dilate(delta, p, *k as u32, side))).collect();
    let coeffs = lagrange_coeffs(&xs, &ys);
    let integral = coeffs.iter().all(|c| c.is_integer());
    HFit { side, coeffs, integral }
}

/// As [`h_polynomial_fit`], rejecting non-integral coefficients.
pub fn h_polynomial_fit_integral(delta: &Parallelotope, p: u64, side: Side) -> Result<HFit> {
    let fit = h_polynomial_fit(delta, p, side);
    if !fit.integral {
        let shown: Vec<String> = fit.coeffs.iter().map(rat_str).collect();
        return Err(Error::NonIntegralFit(shown.join(", ")));
    }
    Ok(fit)
}

/// Monomial coefficients of the polynomial through `(xs[i], ys[i])`.
fn lagrange_coeffs(xs: &[i64], ys: &[Rat]) -> Vec<Rat> {
    let n = xs.len();
    let mut out = vec![Rat::zero(); n];
    for i in 0..n {
        // basis polynomial Π_{j≠i} (k − x_j)/(x_i − x_j)
        let mut basis = vec![Rat::from_integer(1)];
        let mut denom = Rat::from_integer(1);
        for j in (0..n).filter(|&j| j != i) {
            let mut next = vec![Rat::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * Rat::from_integer(xs[j]);
            }
            basis = next;
            denom *= Rat::from_integer(xs[i] - xs[j]);
        }
        for (d, c) in basis.iter().enumerate() {
            out[d] += c * ys[i] / denom;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlopeCell {
    pub i1: u64,
    pub i2: u64,
    /// Slopes in the open interval `(i1 + i2/p^{m−1}, i1 + (i2+1)/p^{m−1})`.
    pub count_open: i64,
    /// Slopes equal to `i1 + i2/p^{m−1}`.
    pub count_at: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlopeDistribution {
    pub p: u64,
    pub m_chi: u32,
    pub n: usize,
    pub cells: Vec<SlopeCell>,
    /// `n!·p^{n(m−1)}·vol`.
    pub degree: u64,
    /// Degree minus the table total: the number of slopes equal to `n`.
    pub remainder_at_n: i64,
    pub hypothesis: Hypothesis,
}

impl SlopeDistribution {
    pub fn total(&self) -> i64 {
        self.cells.iter().map(|c| c.count_open + c.count_at).sum::<i64>() + self.remainder_at_n
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("i1,i2,count_open,count_at\n");
        for c in &self.cells {
            s.push_str(&format!("{},{},{},{}\n", c.i1, c.i2, c.count_open, c.count_at));
        }
        s.push_str(&format!("{},0,0,{}\n", self.n, self.remainder_at_n));
        s
    }

    /// The slope multiset the table describes (cell interiors have no single
    /// value, so this is only available for `m_chi = 1`, where they are empty
    /// under the generic count).
    pub fn slopes_at_points(&self) -> Vec<(Rat, i64)> {
        let den = self.p.pow(self.m_chi - 1) as i64;
        let mut out: Vec<(Rat, i64)> = self
            .cells
            .iter()
            .filter(|c| c.count_at != 0)
            .map(|c| (Rat::new(c.i1 as i64 * den + c.i2 as i64, den), c.count_at))
            .collect();
        if self.remainder_at_n != 0 {
            out.push((Rat::from_integer(self.n as i64), self.remainder_at_n));
        }
        out
    }
}

/// Generic slope counts of `L^*(χ, s)^{(−1)^{n−1}}` for a character of
/// conductor `p^{m_χ}`. Uses `x_0^- = 0`, `x_0^+ = 1`, matching the counts of
/// `Δ_0^-` and `Δ_0^+`. Computed regardless of the hypothesis, whose
/// evaluation is attached.
pub fn slope_distribution(delta: &Parallelotope, p: u64, m_chi: u32) -> Result<SlopeDistribution> {
    if m_chi == 0 {
        return Err(Error::InvalidInput("conductor exponent must be at least 1".into()));
    }
    let n = delta.n();
    let pm = p
        .checked_pow(m_chi - 1)
        .ok_or_else(|| Error::InvalidInput("p^(m-1) overflows".into()))?;
    let x = |j: u64| delta.count_closed_form(j as u32);
    let mut cells = Vec::new();
    for i1 in 0..n as u64 {
        for i2 in 0..pm {
            let (mut open, mut at) = (0i64, 0i64);
            for t in 0..=i1 {
                let sign = if t % 2 == 0 { 1 } else { -1 } * binom(n as u64, t) as i64;
                let j = (i1 - t) * pm + i2;
                let (xm, xp) = x(j);
                let (xm1, _) = x(j + 1);
                open += sign * (xm1 as i64 - xp as i64);
                at += sign * (xp as i64 - xm as i64);
            }
            cells.push(SlopeCell { i1, i2, count_open: open, count_at: at });
        }
    }
    let fact: u64 = (1..=n as u64).product();
    let degree = fact * pm.pow(n as u32) * delta.vol() as u64;
    let table: i64 = cells.iter().map(|c| c.count_open + c.count_at).sum();
    Ok(SlopeDistribution {
        p,
        m_chi,
        n,
        cells,
        degree,
        remainder_at_n: degree as i64 - table,
        hypothesis: delta.hypothesis(p),
    })
}

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// L-slopes from the first `l_max` slopes of a normalized C-polygon, using
/// `L^{(−1)^{n−1}} = Π_j C(q^j s)^{(−1)^j C(n,j)}`: the multiplicity of `σ`
/// is `Σ_j (−1)^j C(n,j)·mult_C(σ − j)`. Only values below the largest
/// supplied slope are reported, since its own multiplicity may be cut off.
pub fn c_slopes_to_l_slopes(c_polygon: &NewtonPolygon, n: usize, l_max: usize) -> Result<Vec<Rat>> {
    let slopes = c_polygon.slopes();
    if slopes.len() < l_max {
        return Err(Error::InvalidInput(format!("polygon has {} slopes, need {l_max}", slopes.len())));
    }
    let c: Vec<Rat> = slopes[..l_max].to_vec();
    let Some(top) = c.last().copied() else { return Ok(Vec::new()) };
    let mult = |s: Rat| c.iter().filter(|x| **x == s).count() as i64;
    let mut values: Vec<Rat> = c.iter().copied().filter(|s| *s < top).collect();
    values.dedup();
    let mut out = Vec::new();
    for s in values {
        let m: i64 = (0..=n as u64)
            .map(|j| {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * binom(n as u64, j) as i64 * mult(s - Rat::from_integer(j as i64))
            })
            .sum();
        if m < 0 {
            return Err(Error::Inconsistent(format!("slope {} has multiplicity {m}", rat_str(&s))));
        }
        out.extend(std::iter::repeat(s).take(m as usize));
    }
    Ok(out)
}

/// Lower hull of `(ℓ, val/m)`; `None` marks a vanishing coefficient.
pub fn np_from_valuations(vals: &[(u64, Option<u64>)], m: u32) -> NewtonPolygon {
    let pts: Vec<(u64, Rat)> = vals
        .iter()
        .filter_map(|(l, v)| v.map(|v| (*l, Rat::new(v as i64, m as i64))))
        .collect();
    NewtonPolygon::lower_hull(&pts)
}

/// Whether `poly` lies on or above `bound` at every integer `x` both cover.
pub fn lies_above(poly: &NewtonPolygon, bound: &NewtonPolygon) -> bool {
    let hi = poly.max_x().min(bound.max_x());
    (0..=hi).all(|x| match (poly.at(x), bound.at(x)) {
        (Some(a), Some(b)) => !(b - a).is_positive(),
        _ => true,
    })
}

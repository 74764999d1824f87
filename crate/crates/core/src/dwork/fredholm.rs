//! The matrix `N_{Q',Q} = E(â_O π) e_{pQ'−Q}` and the coefficients of
//! `det(I − s σ^{m−1}(N)···σ(N) N)`.

use serde::Serialize;

use super::expand::expand_e;
use super::fieldpoly::FieldPoly;
use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, Parallelotope, Side};
use crate::linalg::{char_coeffs, det_division_free, Matrix};
use crate::polygon::h_dilate;
use crate::rational::{floor, Rat};
use crate::series::{ArtinHasseTable, ExtRing, Ring, SeriesRing, TruncSeries};

/// `W = (M+1)/(p−1) + 1`.
pub fn default_cutoff(p: u64, order: usize) -> Rat {
    Rat::new(order as i64 + 1, p as i64 - 1) + Rat::from_integer(1)
}

/// Every cone point left out of the basis (weight in `(cutoff, W]`) must
/// carry a row bound `⌊p w⌋ − ⌊w⌋` above `M`; beyond `W` this is automatic.
pub fn check_truncation(delta: &Parallelotope, p: u64, cutoff: Rat, order: usize) -> Result<()> {
    let top = default_cutoff(p, order);
    if cutoff >= top {
        return Ok(());
    }
    let pr = Rat::from_integer(p as i64);
    for q in delta.points_up_to_weight(top) {
        if q.w <= cutoff {
            continue;
        }
        let bound = floor(&(pr * q.w)) - floor(&q.w);
        if bound <= order as i64 {
            return Err(Error::TruncationUnsound(format!(
                "point {:?} of weight {} has row bound {bound} <= M = {order}",
                q.q, q.w
            )));
        }
    }
    Ok(())
}

/// Truncated Dwork matrix over `Z_q[[π]] / (p^N, π^{M+1})`.
#[derive(Clone, Debug)]
pub struct DworkMatrix {
    pub ring: SeriesRing<ExtRing>,
    pub basis: Vec<LatticePoint>,
    /// Row `Q'`, column `Q`.
    pub entries: Matrix<TruncSeries<Vec<u64>>>,
    /// Frobenius depth `m = [F_q : F_p]`.
    pub depth: usize,
    pub cutoff: Rat,
}

impl DworkMatrix {
    pub fn index_of(&self, q: &[i64]) -> Option<usize> {
        self.basis.iter().position(|b| b.q == q)
    }
}

fn lifted_values(f: &FieldPoly, ring: &ExtRing) -> Vec<(Vec<i64>, Vec<u64>)> {
    f.terms()
        .iter()
        .filter(|(e, _)| e.iter().any(|x| *x != 0))
        .map(|(e, c)| (e.clone(), ring.teichmuller(c)))
        .collect()
}

/// Builds `N` on the basis of cone points with `w ≤ cutoff` (default
/// `W = (M+1)/(p−1)+1`), coefficients lifted by Teichmüller to precision `N`.
pub fn dwork_matrix(
    delta: &Parallelotope,
    f: &FieldPoly,
    order: usize,
    prec: u32,
    cutoff: Option<Rat>,
) -> Result<DworkMatrix> {
    f.check_polytope(delta)?;
    let p = f.p();
    let cutoff = cutoff.unwrap_or_else(|| default_cutoff(p, order));
    check_truncation(delta, p, cutoff, order)?;
    let base = f.field().with_prec(prec)?;
    let ring = SeriesRing::new(base.clone(), order);
    let table = ArtinHasseTable::new(p, order, prec)?;
    let values = lifted_values(f, &base);
    let e = expand_e(delta, &ring, &values, &table, Rat::from_integer(order as i64))?;
    let a0 = base.teichmuller(&f.coefficient(&vec![0; delta.n()]));
    let mut apow = base.one();
    let mut eo = Vec::with_capacity(order + 1);
    for j in 0..=order {
        eo.push(base.mul(&base.from_i64(table.c(j) as i64), &apow));
        apow = base.mul(&apow, &a0);
    }
    let eo = ring.from_coeffs(eo);
    let basis = delta.points_up_to_weight(cutoff);
    let mut entries = Vec::with_capacity(basis.len());
    for qr in &basis {
        let mut row = Vec::with_capacity(basis.len());
        for qc in &basis {
            let r: Vec<i64> = qr.q.iter().zip(&qc.q).map(|(a, b)| p as i64 * a - b).collect();
            let entry = match delta.weight(&r) {
                Err(_) => ring.zero(),
                Ok(w) if w > Rat::from_integer(order as i64) => ring.zero(),
                Ok(_) => match e.get(&r) {
                    Some(s) => ring.mul(&eo, s),
                    None => ring.zero(),
                },
            };
            row.push(entry);
        }
        entries.push(row);
    }
    Ok(DworkMatrix { ring, basis, entries, depth: f.field().degree(), cutoff })
}

/// `u_0 … u_L` over `Z_p[[π]] / (p^N, π^{M+1})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FredholmSeries {
    pub p: u64,
    pub m: usize,
    pub order: usize,
    pub prec: u32,
    pub u: Vec<Vec<u64>>,
    /// `val_π(u_ℓ)`, `None` when `u_ℓ ≡ 0 mod π^{M+1}`.
    pub valuations: Vec<Option<usize>>,
}

pub fn fredholm_from_matrix(n: &DworkMatrix, l_max: usize) -> Result<FredholmSeries> {
    let ring = &n.ring;
    let base = &ring.base;
    let mut prod = n.entries.clone();
    let mut twisted = n.entries.clone();
    for _ in 1..n.depth {
        twisted = twisted.iter().map(|row| row.iter().map(|x| ring.frobenius(x)).collect()).collect();
        prod = mat_mul(ring, &twisted, &prod);
    }
    let mut coeffs = char_coeffs(ring, &prod, l_max);
    coeffs.resize(l_max + 1, ring.zero());
    let mut u = Vec::with_capacity(coeffs.len());
    for (l, s) in coeffs.iter().enumerate() {
        let row = s
            .coeffs
            .iter()
            .map(|c| {
                base.as_base(c)
                    .ok_or_else(|| Error::Inconsistent(format!("u_{l} has a coefficient outside Z_p")))
            })
            .collect::<Result<Vec<u64>>>()?;
        u.push(row);
    }
    let valuations = u.iter().map(|s| s.iter().position(|c| *c != 0)).collect();
    Ok(FredholmSeries { p: base.p(), m: n.depth, order: ring.order, prec: base.prec(), u, valuations })
}

/// `dwork_matrix` followed by `fredholm_from_matrix` with the default cutoff.
pub fn fredholm(
    delta: &Parallelotope,
    f: &FieldPoly,
    l_max: usize,
    order: usize,
    prec: u32,
) -> Result<FredholmSeries> {
    let n = dwork_matrix(delta, f, order, prec, None)?;
    fredholm_from_matrix(&n, l_max)
}

fn mat_mul<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut s = ring.zero();
                    for t in 0..n {
                        if !ring.is_zero(&a[i][t]) && !ring.is_zero(&b[t][j]) {
                            ring.add_assign(&mut s, &ring.mul(&a[i][t], &b[t][j]));
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorollaryCheck {
    pub k: u32,
    pub side: Side,
    pub x: usize,
    pub h: i64,
    /// `[π^h] u_{x_k}` and `[π^h] det(e_{pQ'−Q})_{Δ_k}`, mod `p`.
    pub u_coefficient: u64,
    pub det_coefficient: u64,
    pub lower_terms_vanish: bool,
    pub holds: bool,
}

/// For `f` over `F_p`: `u_{x_k} ≡ (−1)^{x_k} det(e_{pQ'−Q})_{Q,Q'∈Δ_k^±}` mod
/// `(p, π^{h+1})`, `h = h(Δ_k^±)`.
pub fn first_corollary_check(
    delta: &Parallelotope,
    f: &FieldPoly,
    k: u32,
    side: Side,
) -> Result<CorollaryCheck> {
    if f.field().degree() != 1 {
        return Err(Error::Domain("the congruence is checked for f over F_p".into()));
    }
    let p = f.p();
    let h = h_dilate(delta, p, k, side);
    let order = h as usize;
    let pts = delta.enumerate(k, side);
    let x = pts.len();
    let n = dwork_matrix(delta, f, order, 1, None)?;
    let fr = fredholm_from_matrix(&n, x)?;
    let ring = &n.ring;
    let idx: Vec<usize> = pts
        .iter()
        .map(|q| n.index_of(&q.q).ok_or_else(|| Error::TruncationUnsound(format!("{:?} not in basis", q.q))))
        .collect::<Result<_>>()?;
    let minor: Matrix<TruncSeries<Vec<u64>>> =
        idx.iter().map(|&i| idx.iter().map(|&j| n.entries[i][j].clone()).collect()).collect();
    let det = det_division_free(ring, &minor);
    let det: Vec<u64> = det.coeffs.iter().map(|c| c[0]).collect();
    let u = &fr.u[x];
    let lower_terms_vanish = det[..order].iter().all(|c| *c == 0) && u[..order].iter().all(|c| *c == 0);
    let signed = if x % 2 == 0 { det[order] } else { (p - det[order]) % p };
    Ok(CorollaryCheck {
        k,
        side,
        x,
        h,
        u_coefficient: u[order],
        det_coefficient: det[order],
        lower_terms_vanish,
        holds: lower_terms_vanish && signed == u[order],
    })
}

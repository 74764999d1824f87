//! Leading π-coefficients of `det(ẽ_{pQ−Q'})` over `Δ_k^±`, universally and
//! at a specialization.

use serde::Serialize;
use serde_json::Value;

use super::expand::PiEngine;
use super::fieldpoly::FieldPoly;
use super::{universal_vars, UniversalVars, VarMode};
use crate::error::{Error, Result};
use crate::lattice::{Hypothesis, LatticePoint, Parallelotope, Side};
use crate::linalg::{det_field, det_homogeneous, Matrix};
use crate::series::{padic::is_prime, ArtinHasseTable, MPoly, MPolyRing, Ring};

/// Row data of a π-coefficient matrix: entry `(Q, Q')` is
/// `[π^{r(Q) − c(Q')}] e_{pQ − Q' + shift}`.
pub(crate) struct PiMatrixSpec<'a> {
    pub rows: &'a [LatticePoint],
    /// Scaled coordinates of the shift.
    pub shift: Vec<i64>,
    /// `c(Q')` per column.
    pub col_floor: Vec<i64>,
}

impl PiMatrixSpec<'_> {
    pub(crate) fn row_floor(&self, p: u64, d: i64) -> Vec<i64> {
        self.rows.iter().map(|q| (p as i64 * q.scaled.iter().max().expect("n >= 1")).div_euclid(d)).collect()
    }

    pub(crate) fn h(&self, p: u64, d: i64) -> i64 {
        self.row_floor(p, d).iter().sum::<i64>() - self.col_floor.iter().sum::<i64>()
    }

    fn max_degree(&self, p: u64, d: i64) -> usize {
        let r = self.row_floor(p, d).into_iter().max().unwrap_or(0);
        let c = self.col_floor.iter().copied().min().unwrap_or(0);
        (r - c).max(0) as usize
    }

    pub(crate) fn build<R: Ring>(
        &self,
        delta: &Parallelotope,
        p: u64,
        ring: &R,
        values: &[(Vec<i64>, R::Elem)],
        table_prec: u32,
    ) -> Result<Matrix<R::Elem>> {
        let d = delta.d();
        let table = ArtinHasseTable::new(p, self.max_degree(p, d), table_prec)?;
        let mut engine = PiEngine::new(ring, delta, values, &table, self.max_degree(p, d))?;
        let rf = self.row_floor(p, d);
        let mut m = Vec::with_capacity(self.rows.len());
        for (i, q) in self.rows.iter().enumerate() {
            let mut row = Vec::with_capacity(self.rows.len());
            for (j, q2) in self.rows.iter().enumerate() {
                let deg = rf[i] - self.col_floor[j];
                let zeta: Vec<i64> = (0..delta.n())
                    .map(|t| p as i64 * q.scaled[t] - q2.scaled[t] + self.shift[t])
                    .collect();
                if deg < 0 || zeta.iter().any(|x| *x < 0) {
                    row.push(ring.zero());
                } else {
                    row.push(engine.coeff(&zeta, deg as u32));
                }
            }
            m.push(row);
        }
        Ok(m)
    }
}

fn plain_spec<'a>(delta: &Parallelotope, rows: &'a [LatticePoint]) -> PiMatrixSpec<'a> {
    let d = delta.d();
    PiMatrixSpec {
        rows,
        shift: vec![0; delta.n()],
        col_floor: rows.iter().map(|q| q.scaled.iter().max().expect("n >= 1").div_euclid(d)).collect(),
    }
}

fn check_prime(delta: &Parallelotope, p: u64) -> Result<Hypothesis> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let hyp = delta.hypothesis(p);
    if hyp.p_divides_vol {
        return Err(Error::Domain(format!("p = {p} divides the volume {}", delta.vol())));
    }
    Ok(hyp)
}

fn universal_values(ring: &MPolyRing, vars: &UniversalVars) -> Vec<(Vec<i64>, MPoly)> {
    vars.points.iter().map(|(q, v)| (q.clone(), ring.var(*v))).collect()
}

fn poly_json(poly: &MPoly) -> Value {
    poly.to_json()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LeadingCoefficient {
    pub k: u32,
    pub side: Side,
    pub mode: VarMode,
    pub size: usize,
    pub h: i64,
    pub labels: Vec<String>,
    #[serde(serialize_with = "ser_poly")]
    pub poly: MPoly,
}

fn ser_poly<S: serde::Serializer>(p: &MPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    poly_json(p).serialize(s)
}

/// Coefficient of `π^h` in `det(ẽ_{pQ−Q'})_{Q,Q'∈Δ_k^±}` mod `p`, with
/// `h = h(Δ_k^±)`, as a polynomial in the universal variables.
pub fn leading_coefficient(
    delta: &Parallelotope,
    p: u64,
    k: u32,
    side: Side,
    mode: VarMode,
) -> Result<LeadingCoefficient> {
    check_prime(delta, p)?;
    let rows = delta.enumerate(k, side);
    let spec = plain_spec(delta, &rows);
    let h = spec.h(p, delta.d());
    let vars = universal_vars(delta, mode);
    let ring = MPolyRing::new(p, vars.nvars);
    let m = spec.build(delta, p, &ring, &universal_values(&ring, &vars), 1)?;
    let poly = det_homogeneous(&ring, &m, h as u32);
    Ok(LeadingCoefficient { k, side, mode, size: rows.len(), h, labels: vars.labels, poly })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyEntry {
    pub k: u32,
    pub side: Side,
    pub size: usize,
    pub h: i64,
    pub nonzero: bool,
    pub terms: usize,
    #[serde(serialize_with = "ser_poly")]
    pub witness: MPoly,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub p: u64,
    pub hypothesis: Hypothesis,
    pub labels: Vec<String>,
    pub entries: Vec<VerifyEntry>,
    pub all_nonzero: bool,
}

/// Res-mode leading coefficients for `k ∈ ks` and both sides. A vanishing
/// coefficient is an error only when the hypothesis holds; otherwise it is
/// recorded in the report.
pub fn verify_generic(
    delta: &Parallelotope,
    p: u64,
    ks: std::ops::RangeInclusive<u32>,
) -> Result<VerifyReport> {
    let hypothesis = check_prime(delta, p)?;
    let mut entries = Vec::new();
    let mut labels = Vec::new();
    for k in ks {
        for side in Side::BOTH {
            let lc = leading_coefficient(delta, p, k, side, VarMode::Res)?;
            let nonzero = !lc.poly.is_zero();
            if !nonzero && hypothesis.holds {
                return Err(Error::VerificationFailed { k, side: side.to_string() });
            }
            labels = lc.labels;
            entries.push(VerifyEntry {
                k,
                side,
                size: lc.size,
                h: lc.h,
                nonzero,
                terms: lc.poly.num_terms(),
                witness: lc.poly,
            });
        }
    }
    let all_nonzero = entries.iter().all(|e| e.nonzero);
    Ok(VerifyReport { p, hypothesis, labels, entries, all_nonzero })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OzarCheck {
    pub k: u32,
    pub side: Side,
    pub h: i64,
    pub nonzero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OzarReport {
    pub member: bool,
    pub m_of_f: usize,
    pub checks: Vec<OzarCheck>,
}

impl OzarReport {
    pub fn check(&self, k: u32, side: Side) -> Option<&OzarCheck> {
        self.checks.iter().find(|c| c.k == k && c.side == side)
    }
}

/// Whether every leading coefficient for `k = 1..=n+2` stays nonzero after
/// substituting the coefficients of `f`.
pub fn ozar_membership(delta: &Parallelotope, f: &FieldPoly) -> Result<OzarReport> {
    let p = f.p();
    check_prime(delta, p)?;
    f.check_polytope(delta)?;
    let field = f.field();
    let vars = universal_vars(delta, VarMode::Full);
    let values: Vec<(Vec<i64>, Vec<u64>)> =
        vars.points.iter().map(|(q, _)| (q.clone(), f.coefficient(q))).collect();
    let mut checks = Vec::new();
    for k in 1..=delta.n() as u32 + 2 {
        for side in Side::BOTH {
            let rows = delta.enumerate(k, side);
            let spec = plain_spec(delta, &rows);
            let m = spec.build(delta, p, field, &values, 1)?;
            let det = det_field(field, &m);
            checks.push(OzarCheck { k, side, h: spec.h(p, delta.d()), nonzero: !field.is_zero(&det) });
        }
    }
    Ok(OzarReport { member: checks.iter().all(|c| c.nonzero), m_of_f: f.m_of_f(), checks })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockFactor {
    pub p0: Vec<i64>,
    pub i_set: Vec<usize>,
    pub size: usize,
    pub h: i64,
    #[serde(serialize_with = "ser_poly")]
    pub poly: MPoly,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockFactorization {
    pub k: u32,
    pub side: Side,
    pub h: i64,
    #[serde(serialize_with = "ser_poly")]
    pub direct: MPoly,
    pub blocks: Vec<BlockFactor>,
    /// `direct = sign · Π blocks`.
    pub sign: i8,
}

/// Points of `Δ_k^±` with residue `P_0` and zero set `I`.
pub(crate) fn residue_block(
    delta: &Parallelotope,
    points: &[LatticePoint],
    p0: &LatticePoint,
    i_set: &[usize],
) -> Vec<LatticePoint> {
    points
        .iter()
        .filter(|q| {
            q.zero_set() == i_set
                && q.scaled.iter().zip(&p0.scaled).all(|(a, b)| a.rem_euclid(delta.d()) == *b)
        })
        .cloned()
        .collect()
}

/// Matrix data of the block `(I, P_0)`: entry `(Q, Q')` is
/// `[π^{⌊p w(Q)⌋ − ⌊w(Q' − P_0 + η(P_0))⌋}] ẽ_{P_0 − η(P_0) + pQ − Q'}`.
pub(crate) fn block_spec<'a>(
    delta: &Parallelotope,
    p: u64,
    p0: &LatticePoint,
    rows: &'a [LatticePoint],
) -> Result<PiMatrixSpec<'a>> {
    let eta = delta.eta(p, &p0.q)?;
    let shift: Vec<i64> = p0.scaled.iter().zip(&eta.scaled).map(|(a, b)| a - b).collect();
    let d = delta.d();
    let col_floor = rows
        .iter()
        .map(|q| {
            q.scaled.iter().zip(&shift).map(|(a, s)| a - s).max().expect("n >= 1").div_euclid(d)
        })
        .collect();
    Ok(PiMatrixSpec { rows, shift, col_floor })
}

/// Res-mode leading coefficient of `Δ_k^±` against the product of the
/// leading coefficients of its `(I, P_0)` blocks.
pub fn res_block_factorization(
    delta: &Parallelotope,
    p: u64,
    k: u32,
    side: Side,
) -> Result<BlockFactorization> {
    check_prime(delta, p)?;
    let direct = leading_coefficient(delta, p, k, side, VarMode::Res)?;
    let points = delta.enumerate(k, side);
    let vars = universal_vars(delta, VarMode::Res);
    let ring = MPolyRing::new(p, vars.nvars);
    let values = universal_values(&ring, &vars);
    let mut blocks = Vec::new();
    let mut product = ring.one();
    let mut covered = 0;
    for p0 in delta.enumerate(1, Side::Open) {
        for i_set in crate::lattice::subsets(&p0.zero_set()) {
            let rows = residue_block(delta, &points, &p0, &i_set);
            covered += rows.len();
            let spec = block_spec(delta, p, &p0, &rows)?;
            let h = spec.h(p, delta.d());
            let poly = if rows.is_empty() {
                ring.one()
            } else {
                let m = spec.build(delta, p, &ring, &values, 1)?;
                det_homogeneous(&ring, &m, h.max(0) as u32)
            };
            product = ring.mul(&product, &poly);
            blocks.push(BlockFactor { p0: p0.q.clone(), i_set, size: rows.len(), h, poly });
        }
    }
    let mismatch = || Error::FactorizationMismatch { k, side: side.to_string() };
    let hsum: i64 = blocks.iter().map(|b| b.h).sum();
    if covered != points.len() || hsum != direct.h {
        return Err(mismatch());
    }
    let sign = if direct.poly == product {
        1
    } else if direct.poly == ring.neg(&product) {
        -1
    } else {
        return Err(mismatch());
    };
    Ok(BlockFactorization { k, side, h: direct.h, direct: direct.poly, blocks, sign })
}

//! The Dwork operator side: expansions of `E_f`, the matrix `N`, Fredholm
//! coefficients, universal leading coefficients and the leading-term
//! verifiers for chain blocks.

mod blocks;
mod expand;
mod fieldpoly;
mod fredholm;
mod leading;

pub use blocks::{
    block_leading_determinant, det_m_exponent, gamma, ld_check, matrix_m, BlockLeading,
    DetExponentReport, LdCheck, MatrixM,
};
pub use expand::{expand_e, ECoefficients};
pub use fieldpoly::FieldPoly;
pub use fredholm::{
    check_truncation, default_cutoff, dwork_matrix, first_corollary_check, fredholm,
    fredholm_from_matrix, CorollaryCheck, DworkMatrix, FredholmSeries,
};
pub use leading::{
    leading_coefficient, ozar_membership, res_block_factorization, verify_generic, BlockFactor,
    BlockFactorization, LeadingCoefficient, OzarReport, VerifyEntry, VerifyReport,
};

use serde::Serialize;

use crate::lattice::{Parallelotope, Side};
use crate::series::MPoly;

/// Which indeterminates the universal expansion carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VarMode {
    /// One `ã_P` per point of `Δ^+ \ {O}`.
    Full,
    /// Only vertices `V_S`, with `ã_{V_S}` identified to `ã_{#S}`.
    Res,
}

impl std::str::FromStr for VarMode {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "full" => Ok(VarMode::Full),
            "res" => Ok(VarMode::Res),
            _ => Err(crate::Error::InvalidInput(format!("unknown mode {s:?}"))),
        }
    }
}

/// Assignment of lattice points to polynomial variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalVars {
    pub mode: VarMode,
    pub nvars: usize,
    /// `(P, variable index)`; several points may share a variable.
    pub points: Vec<(Vec<i64>, usize)>,
    pub labels: Vec<String>,
}

pub fn universal_vars(delta: &Parallelotope, mode: VarMode) -> UniversalVars {
    match mode {
        VarMode::Full => {
            let pts: Vec<Vec<i64>> = delta
                .enumerate(1, Side::Closed)
                .into_iter()
                .filter(|q| !q.is_origin())
                .map(|q| q.q)
                .collect();
            let labels = pts.iter().map(|q| format!("a{q:?}")).collect();
            UniversalVars {
                mode,
                nvars: pts.len(),
                points: pts.into_iter().enumerate().map(|(i, q)| (q, i)).collect(),
                labels,
            }
        }
        VarMode::Res => {
            let n = delta.n();
            let idx: Vec<usize> = (0..n).collect();
            let points = crate::lattice::subsets(&idx)
                .into_iter()
                .filter(|s| !s.is_empty())
                .map(|s| (delta.vertex(&s), s.len() - 1))
                .collect();
            UniversalVars {
                mode,
                nvars: n,
                points,
                labels: (1..=n).map(|s| format!("a{s}")).collect(),
            }
        }
    }
}

/// Order key of `Deg`: exponents of `ã_n, …, ã_1`, compared lexicographically.
/// Only the first `n` variables take part.
pub fn deg_key(e: &[u32], n: usize) -> Vec<u32> {
    e[..n].iter().rev().copied().collect()
}

/// `LD(f)`: the terms of `f` of maximal `Deg`.
pub fn leading_part(f: &MPoly, n: usize) -> MPoly {
    f.leading_by(|e| deg_key(e, n))
}

/// `Deg(f)` as `(t_n, …, t_1)`, `None` for `f = 0`.
pub fn deg(f: &MPoly, n: usize) -> Option<Vec<u32>> {
    f.terms.keys().map(|e| deg_key(e, n)).max()
}

#[cfg(test)]
mod tests;

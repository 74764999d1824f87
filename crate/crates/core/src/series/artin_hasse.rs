//! Coefficients of the Artin–Hasse exponential
//! `E(π) = exp(Σ_{j≥0} π^{p^j}/p^j) = Σ c_i π^i`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::padic::{is_p_integral, Zpn};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct ArtinHasseTable {
    pub p: u64,
    exact: Vec<BigRational>,
    ring: Zpn,
    reduced: Vec<u64>,
}

impl ArtinHasseTable {
    /// `c_0 … c_{i_max}` exactly, and reduced mod `p^prec`.
    ///
    /// Uses `E'/E = Σ_j π^{p^j - 1}`, i.e.
    /// `(m+1) c_{m+1} = Σ_{p^j - 1 ≤ m} c_{m - (p^j - 1)}`.
    pub fn new(p: u64, i_max: usize, prec: u32) -> Result<Self> {
        let ring = Zpn::new(p, prec)?;
        let mut shifts = Vec::new();
        let mut pj: u64 = 1;
        while (pj - 1) as usize <= i_max {
            shifts.push((pj - 1) as usize);
            pj = match pj.checked_mul(p) {
                Some(x) => x,
                None => break,
            };
        }
        let mut exact = vec![BigRational::one()];
        for m in 0..i_max {
            let mut s = BigRational::zero();
            for &sh in shifts.iter().filter(|&&sh| sh <= m) {
                s += &exact[m - sh];
            }
            exact.push(s / BigRational::from_integer(BigInt::from(m + 1)));
        }
        let mut reduced = Vec::with_capacity(exact.len());
        for (i, c) in exact.iter().enumerate() {
            if !is_p_integral(c, p) {
                return Err(Error::NonIntegral(i));
            }
            reduced.push(ring.from_rational(c).ok_or(Error::NonIntegral(i))?);
        }
        Ok(ArtinHasseTable { p, exact, ring, reduced })
    }

    pub fn len(&self) -> usize {
        self.reduced.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reduced.is_empty()
    }

    pub fn exact(&self, i: usize) -> &BigRational {
        &self.exact[i]
    }

    /// `c_i mod p^N`.
    pub fn c(&self, i: usize) -> u64 {
        self.reduced[i]
    }

    pub fn ring(&self) -> &Zpn {
        &self.ring
    }

    pub fn reduced(&self) -> &[u64] {
        &self.reduced
    }

    /// CSV dump `i,c_i,c_i mod p^N` for debugging.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("i,c_i,residue\n");
        for (i, (c, r)) in self.exact.iter().zip(&self.reduced).enumerate() {
            s.push_str(&format!("{i},{c},{r}\n"));
        }
        s
    }
}

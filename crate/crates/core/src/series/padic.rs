//! Integers modulo `p^N`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::ring::{Field, Frobenius, Ring};
use crate::error::{Error, Result};

/// The ring `Z/p^N`, elements stored as residues in `[0, p^N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Zpn {
    p: u64,
    prec: u32,
    modulus: u64,
}

impl Zpn {
    pub fn new(p: u64, prec: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if prec == 0 {
            return Err(Error::InvalidInput("precision must be positive".into()));
        }
        let mut modulus: u64 = 1;
        for _ in 0..prec {
            modulus = modulus
                .checked_mul(p)
                .filter(|m| *m < (1 << 62))
                .ok_or_else(|| Error::PrecisionExhausted(format!("{p}^{prec} exceeds 2^62")))?;
        }
        Ok(Zpn { p, prec, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn reduce(&self, a: u64) -> u64 {
        a % self.modulus
    }

    pub fn from_big(&self, n: &BigInt) -> u64 {
        let m = BigInt::from(self.modulus);
        n.mod_floor(&m).to_u64().expect("residue fits")
    }

    /// Reduction of a p-integral rational.
    pub fn from_rational(&self, r: &BigRational) -> Option<u64> {
        let den = self.from_big(r.denom());
        let inv = self.inv(&den)?;
        Some(self.mul(&self.from_big(r.numer()), &inv))
    }

    /// p-adic valuation of a residue, `None` for zero.
    pub fn valuation(&self, a: u64) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let mut v = 0;
        let mut a = a;
        while a % self.p == 0 {
            a /= self.p;
            v += 1;
        }
        Some(v)
    }

    /// Teichmüller representative of `a mod p`.
    pub fn teichmuller(&self, a: u64) -> u64 {
        let mut x = a % self.p;
        for _ in 0..self.prec {
            x = self.pow(&x, self.p);
        }
        x
    }

    /// The same residue viewed at lower precision.
    pub fn truncate(&self, a: u64, to: &Zpn) -> u64 {
        debug_assert!(to.p == self.p && to.prec <= self.prec);
        a % to.modulus
    }
}

impl Ring for Zpn {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.modulus
    }

    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.modulus as i64) as u64
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.modulus as u128) as u64
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

impl Field for Zpn {
    /// Inverse of a unit; also the field inverse when `N = 1`.
    fn inv(&self, a: &u64) -> Option<u64> {
        inv_mod(*a, self.modulus)
    }
}

impl Frobenius for Zpn {
    fn frobenius(&self, a: &u64) -> u64 {
        *a
    }
}

/// A p-adic integer known modulo `p^prec`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PadicScalar {
    pub residue: u64,
    pub p: u64,
    pub prec: u32,
}

impl PadicScalar {
    pub fn new(residue: i64, p: u64, prec: u32) -> Result<Self> {
        let ring = Zpn::new(p, prec)?;
        Ok(PadicScalar { residue: ring.from_i64(residue), p, prec })
    }

    pub fn ring(&self) -> Zpn {
        Zpn::new(self.p, self.prec).expect("validated on construction")
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.p != other.p || self.prec != other.prec {
            return Err(Error::MixedModulus);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(PadicScalar { residue: self.ring().add(&self.residue, &other.residue), ..*self })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(PadicScalar { residue: self.ring().mul(&self.residue, &other.residue), ..*self })
    }

    pub fn valuation(&self) -> Option<u32> {
        self.ring().valuation(self.residue)
    }

    /// Exact division by `p^v`, losing `v` digits of precision.
    pub fn div_p_pow(&self, v: u32) -> Result<Self> {
        let pv = self.p.pow(v);
        if v >= self.prec || self.residue % pv != 0 {
            return Err(Error::PrecisionExhausted(format!(
                "cannot divide {} by {}^{v} at precision {}",
                self.residue, self.p, self.prec
            )));
        }
        Ok(PadicScalar { residue: self.residue / pv, p: self.p, prec: self.prec - v })
    }
}

/// Coefficients `binom(a, j)` for `j = 0..=order`, each with the precision it
/// retains after dividing out `p^{v_p(j!)}`.
pub fn binomial_series(a: &PadicScalar, order: usize) -> Result<Vec<PadicScalar>> {
    let ring = a.ring();
    let mut out = Vec::with_capacity(order + 1);
    let mut num = ring.one();
    // j! = p^v * unit
    let mut v = 0u32;
    let mut unit = ring.one();
    for j in 0..=order as u64 {
        if j > 0 {
            num = ring.mul(&num, &ring.sub(&a.residue, &ring.from_i64(j as i64 - 1)));
            let mut t = j;
            while t % a.p == 0 {
                t /= a.p;
                v += 1;
            }
            unit = ring.mul(&unit, &(t % ring.modulus()));
        }
        if v >= a.prec {
            return Err(Error::PrecisionExhausted(format!(
                "binom(a, {j}) needs more than {} digits",
                a.prec
            )));
        }
        let reduced = PadicScalar { residue: num, ..*a }.div_p_pow(v)?;
        let low = reduced.ring();
        let u = low.inv(&(unit % low.modulus())).expect("unit part of j!");
        out.push(PadicScalar { residue: low.mul(&reduced.residue, &u), ..reduced });
    }
    Ok(out)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// True when the rational has no `p` in its denominator.
pub fn is_p_integral(r: &BigRational, p: u64) -> bool {
    !(r.denom() % BigInt::from(p)).is_zero()
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn teichmuller_seven() {
        let r = Zpn::new(7, 2).unwrap();
        let t = r.teichmuller(2);
        assert_eq!(t, 30);
        assert_eq!(r.pow(&t, 7), t);
        assert_eq!(r.teichmuller(1), 1);
        assert_eq!(r.teichmuller(0), 0);
        assert_eq!(r.teichmuller(6), 48);
    }

    #[test]
    fn binomials_of_small_integers() {
        let a = PadicScalar::new(5, 5, 4).unwrap();
        let b = binomial_series(&a, 2).unwrap();
        assert_eq!(b.iter().map(|x| x.residue).collect::<Vec<_>>(), vec![1, 5, 10]);
        let zero = PadicScalar::new(0, 5, 3).unwrap();
        let b = binomial_series(&zero, 4).unwrap();
        assert_eq!(b.iter().map(|x| x.residue).collect::<Vec<_>>(), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn binomial_of_negative_one() {
        // binom(-1, j) = (-1)^j, and j = 3 costs one digit at p = 3.
        let a = PadicScalar::new(-1, 3, 3).unwrap();
        let b = binomial_series(&a, 4).unwrap();
        let signs = [1i64, -1, 1, -1, 1];
        for (j, s) in signs.iter().enumerate() {
            let r = b[j].ring();
            assert_eq!(b[j].residue, r.from_i64(*s), "j={j}");
        }
        assert_eq!(b[3].prec, 2);
    }

    #[test]
    fn mixed_modulus_rejected() {
        let a = PadicScalar::new(1, 5, 2).unwrap();
        let b = PadicScalar::new(1, 5, 3).unwrap();
        assert_eq!(a.checked_add(&b), Err(Error::MixedModulus));
    }
}

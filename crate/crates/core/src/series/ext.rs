//! Unramified extensions `(Z/p^N)[X]/Φ` and finite fields `F_{p^m}` (the
//! case `N = 1`).

use super::padic::{prime_factors, Zpn};
use super::ring::{Field, Frobenius, Ring};
use crate::error::{Error, Result};

/// `Z_q / p^N` presented as `(Z/p^N)[X]/Φ` with `Φ` a monic lift of an
/// irreducible polynomial over `F_p`. Elements are coefficient vectors of
/// length `m`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtRing {
    base: Zpn,
    /// Monic modulus, `phi[m] = 1`.
    phi: Vec<u64>,
    /// `σ(X)^i` for `i < m`.
    sigma_pows: Vec<Vec<u64>>,
    /// `Tr(X^i)` for `i < m`.
    traces: Vec<u64>,
}

impl ExtRing {
    /// `phi` lists the coefficients of a monic polynomial, constant term
    /// first; it must be irreducible modulo `p`.
    pub fn new(p: u64, prec: u32, phi: &[u64]) -> Result<Self> {
        let base = Zpn::new(p, prec)?;
        if phi.len() < 2 || phi[phi.len() - 1] % p != 1 {
            return Err(Error::InvalidInput("modulus must be monic of degree >= 1".into()));
        }
        let reduced: Vec<u64> = phi.iter().map(|c| c % p).collect();
        if !is_irreducible(p, &reduced) {
            return Err(Error::InvalidInput(format!("{phi:?} is reducible mod {p}")));
        }
        let phi: Vec<u64> = phi.iter().map(|c| base.reduce(*c)).collect();
        let mut ring = ExtRing { base, phi, sigma_pows: Vec::new(), traces: Vec::new() };
        ring.traces = (0..ring.degree()).map(|i| ring.mult_trace(&ring.x_pow(i as u64))).collect();
        let sx = ring.frobenius_of_x();
        let mut pows = vec![ring.one()];
        for i in 1..ring.degree() {
            let next = ring.mul(&pows[i - 1], &sx);
            pows.push(next);
        }
        ring.sigma_pows = pows;
        Ok(ring)
    }

    /// Degree-`m` extension using the `index`-th irreducible polynomial in
    /// lexicographic order of coefficient vectors.
    pub fn with_degree(p: u64, prec: u32, m: usize, index: usize) -> Result<Self> {
        let phi = nth_irreducible(p, m, index)
            .ok_or_else(|| Error::InvalidInput(format!("no irreducible #{index} of degree {m}")))?;
        Self::new(p, prec, &phi)
    }

    pub fn base(&self) -> &Zpn {
        &self.base
    }

    pub fn p(&self) -> u64 {
        self.base.p()
    }

    pub fn prec(&self) -> u32 {
        self.base.prec()
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn modulus_poly(&self) -> &[u64] {
        &self.phi
    }

    /// Residue field size `p^m`.
    pub fn q(&self) -> u64 {
        self.p().pow(self.degree() as u32)
    }

    /// Same modulus at another precision.
    pub fn with_prec(&self, prec: u32) -> Result<Self> {
        Self::new(self.p(), prec, &self.phi)
    }

    pub fn constant(&self, c: u64) -> Vec<u64> {
        let mut v = vec![0; self.degree()];
        v[0] = self.base.reduce(c);
        v
    }

    pub fn x_pow(&self, e: u64) -> Vec<u64> {
        let mut x = vec![0; self.degree()];
        if self.degree() == 1 {
            x[0] = self.base.neg(&self.phi[0]);
        } else {
            x[1] = 1;
        }
        self.pow(&x, e)
    }

    /// Element with base-`p` digits of `index` as coefficients.
    pub fn from_index(&self, mut index: u64) -> Vec<u64> {
        let p = self.p();
        (0..self.degree())
            .map(|_| {
                let d = index % p;
                index /= p;
                d
            })
            .collect()
    }

    /// Inverse of [`ExtRing::from_index`] on residues mod `p`.
    pub fn to_index(&self, a: &[u64]) -> u64 {
        let p = self.p();
        a.iter().rev().fold(0, |acc, c| acc * p + c % p)
    }

    /// Constant coefficient if `a` lies in the prime ring.
    pub fn as_base(&self, a: &[u64]) -> Option<u64> {
        a[1..].iter().all(|c| *c == 0).then_some(a[0])
    }

    /// `Tr_{Z_q/Z_p}`.
    pub fn trace(&self, a: &[u64]) -> u64 {
        a.iter()
            .zip(&self.traces)
            .fold(0, |acc, (c, t)| self.base.add(&acc, &self.base.mul(c, t)))
    }

    fn mult_trace(&self, a: &[u64]) -> u64 {
        let mut t = 0;
        for i in 0..self.degree() {
            let col = self.mul(&a.to_vec(), &self.unit_vec(i));
            t = self.base.add(&t, &col[i]);
        }
        t
    }

    fn unit_vec(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0; self.degree()];
        v[i] = 1;
        v
    }

    /// The root of `Φ` congruent to `X^p`, by Newton iteration.
    fn frobenius_of_x(&self) -> Vec<u64> {
        let m = self.degree();
        let x = self.unit_or_root();
        let mut y = self.pow(&x, self.p());
        let dphi: Vec<u64> = (1..=m).map(|i| self.base.mul(&self.phi[i], &(i as u64))).collect();
        for _ in 0..self.prec() {
            let f = self.eval_poly(&self.phi, &y);
            let df = self.eval_poly(&dphi, &y);
            let inv = self.inv(&df).expect("separable modulus");
            y = self.sub(&y, &self.mul(&f, &inv));
        }
        y
    }

    fn unit_or_root(&self) -> Vec<u64> {
        self.x_pow(1)
    }

    fn eval_poly(&self, coeffs: &[u64], y: &[u64]) -> Vec<u64> {
        let mut acc = self.zero();
        for c in coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, &y.to_vec()), &self.constant(*c));
        }
        acc
    }

    /// Unique `ω ≡ a (mod p)` with `ω^q = ω`.
    pub fn teichmuller(&self, a: &[u64]) -> Vec<u64> {
        let mut x: Vec<u64> = a.iter().map(|c| c % self.p()).collect();
        let q = self.q();
        for _ in 0..self.prec() {
            x = self.pow(&x, q);
        }
        x
    }

    /// A generator of the multiplicative group; fields only.
    pub fn primitive_element(&self) -> Vec<u64> {
        assert_eq!(self.prec(), 1, "primitive elements are taken in the residue field");
        let q = self.q();
        let factors = prime_factors(q - 1);
        (1..q)
            .map(|i| self.from_index(i))
            .find(|g| factors.iter().all(|r| self.pow(g, (q - 1) / r) != self.one()))
            .expect("multiplicative group is cyclic")
    }
}

impl Ring for ExtRing {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.degree()]
    }

    fn one(&self) -> Vec<u64> {
        self.constant(1)
    }

    fn from_i64(&self, n: i64) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = self.base.from_i64(n);
        v
    }

    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }

    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }

    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }

    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let m = self.degree();
        let modulus = self.base.modulus() as u128;
        let mut prod = vec![0u128; 2 * m - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + *x as u128 * *y as u128) % modulus;
            }
        }
        for i in (m..2 * m - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for j in 0..m {
                let s = (c * self.phi[j] as u128) % modulus;
                prod[i - m + j] = (prod[i - m + j] + modulus - s) % modulus;
            }
        }
        prod.truncate(m);
        prod.into_iter().map(|c| c as u64).collect()
    }

    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|c| *c == 0)
    }
}

impl Field for ExtRing {
    /// Inverse of a unit: Fermat in the residue field, then Newton lifting.
    fn inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        if a.iter().all(|c| c % self.p() == 0) {
            return None;
        }
        let mut b = self.pow(a, self.q() - 2);
        let two = self.from_i64(2);
        for _ in 0..self.prec() {
            b = self.mul(&b, &self.sub(&two, &self.mul(a, &b)));
        }
        Some(b)
    }
}

impl Frobenius for ExtRing {
    fn frobenius(&self, a: &Vec<u64>) -> Vec<u64> {
        let mut out = self.zero();
        for (c, xp) in a.iter().zip(&self.sigma_pows) {
            if *c != 0 {
                out = self.add(&out, &xp.iter().map(|t| self.base.mul(c, t)).collect());
            }
        }
        out
    }
}

// Dense polynomials over F_p, constant term first, no trailing zeros.

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let lead_inv = super::padic::inv_mod(*b.last().expect("nonzero divisor"), p).expect("field");
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * bc % p) % p;
        }
        r = trim(r);
    }
    r
}

fn poly_gcd(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(p, &a, &b);
        a = b;
        b = r;
    }
    a
}

fn poly_mulmod(p: u64, a: &[u64], b: &[u64], f: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(p, &prod, f)
}

/// `X^(p^e) mod f`.
fn x_pow_p_pow(p: u64, e: usize, f: &[u64]) -> Vec<u64> {
    let mut x = poly_rem(p, &[0, 1], f);
    for _ in 0..e {
        let mut acc = vec![1u64];
        let mut base = x.clone();
        let mut k = p;
        while k > 0 {
            if k & 1 == 1 {
                acc = poly_mulmod(p, &acc, &base, f);
            }
            base = poly_mulmod(p, &base, &base, f);
            k >>= 1;
        }
        x = acc;
    }
    x
}

/// Rabin's irreducibility test over `F_p`.
pub fn is_irreducible(p: u64, f: &[u64]) -> bool {
    let f = trim(f.iter().map(|c| c % p).collect());
    if f.len() < 2 {
        return false;
    }
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    if x_pow_p_pow(p, m, &f) != poly_rem(p, &[0, 1], &f) {
        return false;
    }
    prime_factors(m as u64).into_iter().all(|r| {
        let mut h = x_pow_p_pow(p, m / r as usize, &f);
        if h.len() < 2 {
            h.resize(2, 0);
        }
        h[1] = (h[1] + p - 1) % p;
        poly_gcd(p, &f, &h).len() == 1
    })
}

/// The `index`-th monic irreducible of degree `m` in lexicographic order of
/// its lower coefficients (constant term most significant).
pub fn nth_irreducible(p: u64, m: usize, index: usize) -> Option<Vec<u64>> {
    let total = p.checked_pow(m as u32)?;
    (0..total)
        .map(|i| {
            let mut c: Vec<u64> = (0..m).map(|k| (i / p.pow((m - 1 - k) as u32)) % p).collect();
            c.push(1);
            c
        })
        .filter(|c| is_irreducible(p, c))
        .nth(index)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(2, &[1, 1, 1]));
        assert!(!is_irreducible(2, &[1, 0, 1]));
        assert!(is_irreducible(3, &[1, 0, 1]));
        assert!(!is_irreducible(5, &[1, 0, 1]));
        assert!(is_irreducible(2, &[1, 1, 0, 1]));
        assert!(!is_irreducible(2, &[1, 1, 1, 1]));
    }

    #[test]
    fn field_of_nine() {
        let f = ExtRing::with_degree(3, 1, 2, 0).unwrap();
        assert_eq!(f.q(), 9);
        let g = f.primitive_element();
        let mut seen = std::collections::BTreeSet::new();
        let mut x = f.one();
        for _ in 0..8 {
            seen.insert(f.to_index(&x));
            x = f.mul(&x, &g);
        }
        assert_eq!(seen.len(), 8);
        assert_eq!(x, f.one());
        for i in 1..9 {
            let a = f.from_index(i);
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
        }
    }

    #[test]
    fn frobenius_permutes_teichmuller_lifts() {
        for (p, m) in [(3u64, 2usize), (5, 2), (2, 3), (7, 3)] {
            let zq = ExtRing::with_degree(p, 4, m, 0).unwrap();
            let fq = zq.with_prec(1).unwrap();
            for i in 0..fq.q().min(60) {
                let a = fq.from_index(i);
                let t = zq.teichmuller(&a);
                assert_eq!(zq.pow(&t, zq.q()), t);
                let ap = fq.pow(&a, p);
                assert_eq!(zq.frobenius(&t), zq.teichmuller(&ap), "p={p} m={m} i={i}");
                let mut s = t.clone();
                for _ in 0..m {
                    s = zq.frobenius(&s);
                }
                assert_eq!(s, t);
            }
        }
    }

    #[test]
    fn trace_of_teichmuller_reduces_to_field_trace() {
        let zq = ExtRing::with_degree(5, 3, 2, 1).unwrap();
        let fq = zq.with_prec(1).unwrap();
        for i in 0..25 {
            let a = fq.from_index(i);
            let t = zq.teichmuller(&a);
            let field_trace = fq.add(&a, &fq.pow(&a, 5));
            assert_eq!(zq.trace(&t) % 5, field_trace[0]);
            assert!(fq.as_base(&field_trace).is_some());
        }
    }

    #[test]
    fn unit_inverse_lifts() {
        let zq = ExtRing::with_degree(3, 5, 2, 0).unwrap();
        let a = vec![4, 7];
        let b = zq.inv(&a).unwrap();
        assert_eq!(zq.mul(&a, &b), zq.one());
        assert!(zq.inv(&vec![3, 9]).is_none());
    }
}

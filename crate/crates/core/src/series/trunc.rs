//! Power series in the uniformizer π, truncated after degree `M`.

use super::ring::{Frobenius, Ring};
use crate::error::{Error, Result};

/// Coefficients of `π^0 … π^M`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<E> {
    pub coeffs: Vec<E>,
}

impl<E> TruncSeries<E> {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// `R[[π]] / π^{M+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesRing<R> {
    pub base: R,
    pub order: usize,
}

impl<R: Ring> SeriesRing<R> {
    pub fn new(base: R, order: usize) -> Self {
        SeriesRing { base, order }
    }

    /// Pads or truncates to length `M+1`.
    pub fn from_coeffs(&self, mut coeffs: Vec<R::Elem>) -> TruncSeries<R::Elem> {
        coeffs.truncate(self.order + 1);
        coeffs.resize(self.order + 1, self.base.zero());
        TruncSeries { coeffs }
    }

    /// `c·π^d` (zero if `d > M`).
    pub fn monomial(&self, c: R::Elem, d: usize) -> TruncSeries<R::Elem> {
        let mut s = self.zero();
        if d <= self.order {
            s.coeffs[d] = c;
        }
        s
    }

    pub fn constant(&self, c: R::Elem) -> TruncSeries<R::Elem> {
        self.monomial(c, 0)
    }

    pub fn scale(&self, a: &TruncSeries<R::Elem>, c: &R::Elem) -> TruncSeries<R::Elem> {
        TruncSeries { coeffs: a.coeffs.iter().map(|x| self.base.mul(x, c)).collect() }
    }

    /// π-adic valuation, `None` for the zero series.
    pub fn valuation(&self, a: &TruncSeries<R::Elem>) -> Option<usize> {
        a.coeffs.iter().position(|c| !self.base.is_zero(c))
    }

    pub fn map<T>(&self, a: &TruncSeries<R::Elem>, f: impl Fn(&R::Elem) -> T) -> TruncSeries<T> {
        TruncSeries { coeffs: a.coeffs.iter().map(f).collect() }
    }

    /// `outer(inner)` for `inner` with zero constant term.
    pub fn compose(
        &self,
        outer: &TruncSeries<R::Elem>,
        inner: &TruncSeries<R::Elem>,
    ) -> TruncSeries<R::Elem> {
        assert!(self.base.is_zero(&inner.coeffs[0]), "inner series must vanish at 0");
        let mut acc = self.zero();
        for c in outer.coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, inner), &self.constant(c.clone()));
        }
        acc
    }

    fn check(&self, a: &TruncSeries<R::Elem>) -> Result<()> {
        if a.coeffs.len() != self.order + 1 {
            return Err(Error::MixedModulus);
        }
        Ok(())
    }

    pub fn checked_add(
        &self,
        a: &TruncSeries<R::Elem>,
        b: &TruncSeries<R::Elem>,
    ) -> Result<TruncSeries<R::Elem>> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add(a, b))
    }

    pub fn checked_mul(
        &self,
        a: &TruncSeries<R::Elem>,
        b: &TruncSeries<R::Elem>,
    ) -> Result<TruncSeries<R::Elem>> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }
}

impl<R: Frobenius> SeriesRing<R> {
    /// σ applied coefficientwise.
    pub fn frobenius(&self, a: &TruncSeries<R::Elem>) -> TruncSeries<R::Elem> {
        TruncSeries { coeffs: a.coeffs.iter().map(|c| self.base.frobenius(c)).collect() }
    }
}

impl<R: Ring> Ring for SeriesRing<R> {
    type Elem = TruncSeries<R::Elem>;

    fn zero(&self) -> Self::Elem {
        TruncSeries { coeffs: vec![self.base.zero(); self.order + 1] }
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.constant(self.base.from_i64(n))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        TruncSeries { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| self.base.add(x, y)).collect() }
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        TruncSeries { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| self.base.sub(x, y)).collect() }
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        TruncSeries { coeffs: a.coeffs.iter().map(|x| self.base.neg(x)).collect() }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let m = self.order;
        let mut out = vec![self.base.zero(); m + 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs[..=m - i].iter().enumerate() {
                if self.base.is_zero(y) {
                    continue;
                }
                self.base.add_assign(&mut out[i + j], &self.base.mul(x, y));
            }
        }
        TruncSeries { coeffs: out }
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.coeffs.iter().all(|c| self.base.is_zero(c))
    }
}

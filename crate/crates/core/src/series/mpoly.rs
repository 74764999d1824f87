//! Sparse multivariate polynomials over a prime field.

use std::collections::BTreeMap;

use serde_json::{Map, Value};

use super::ring::Ring;

/// Exponent vector → nonzero coefficient in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MPoly {
    pub terms: BTreeMap<Vec<u32>, u64>,
}

impl MPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Common total degree, `None` if zero or not homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    /// Variables with a positive exponent somewhere.
    pub fn support_vars(&self) -> Vec<usize> {
        let mut used = Vec::new();
        for e in self.terms.keys() {
            for (i, x) in e.iter().enumerate() {
                if *x > 0 && !used.contains(&i) {
                    used.push(i);
                }
            }
        }
        used.sort_unstable();
        used
    }

    /// Terms whose exponent vector is maximal under `key`.
    pub fn leading_by<K: Ord>(&self, key: impl Fn(&[u32]) -> K) -> MPoly {
        let best = self.terms.keys().map(|e| key(e)).max();
        let terms = match best {
            None => BTreeMap::new(),
            Some(b) => self
                .terms
                .iter()
                .filter(|(e, _)| key(e) == b)
                .map(|(e, c)| (e.clone(), *c))
                .collect(),
        };
        MPoly { terms }
    }

    /// JSON object mapping `"[e1,e2,…]"` to the coefficient.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (e, c) in &self.terms {
            let key = format!(
                "[{}]",
                e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
            );
            m.insert(key, Value::from(*c));
        }
        Value::Object(m)
    }
}

/// `F_p[x_0, …, x_{nvars-1}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPolyRing {
    pub p: u64,
    pub nvars: usize,
}

impl MPolyRing {
    pub fn new(p: u64, nvars: usize) -> Self {
        MPolyRing { p, nvars }
    }

    pub fn var(&self, i: usize) -> MPoly {
        let mut e = vec![0; self.nvars];
        e[i] = 1;
        self.monomial(1, e)
    }

    pub fn monomial(&self, c: u64, exps: Vec<u32>) -> MPoly {
        debug_assert_eq!(exps.len(), self.nvars);
        let mut terms = BTreeMap::new();
        if c % self.p != 0 {
            terms.insert(exps, c % self.p);
        }
        MPoly { terms }
    }

    pub fn constant(&self, c: u64) -> MPoly {
        self.monomial(c, vec![0; self.nvars])
    }

    pub fn scale(&self, a: &MPoly, c: u64) -> MPoly {
        let c = c % self.p;
        if c == 0 {
            return MPoly::default();
        }
        MPoly { terms: a.terms.iter().map(|(e, x)| (e.clone(), x * c % self.p)).collect() }
    }

    /// Ring map sending `x_i` to `target[i]` (a variable of `into`, or 0).
    pub fn substitute(&self, a: &MPoly, target: &[Option<usize>], into: &MPolyRing) -> MPoly {
        let mut out = MPoly::default();
        'terms: for (e, c) in &a.terms {
            let mut f = vec![0u32; into.nvars];
            for (i, x) in e.iter().enumerate() {
                if *x == 0 {
                    continue;
                }
                match target[i] {
                    Some(t) => f[t] += x,
                    None => continue 'terms,
                }
            }
            into.add_term(&mut out, f, *c);
        }
        out
    }

    /// Evaluation in any ring, given images of the variables.
    pub fn eval<R: Ring>(&self, ring: &R, a: &MPoly, values: &[R::Elem]) -> R::Elem {
        let mut acc = ring.zero();
        for (e, c) in &a.terms {
            let mut t = ring.from_i64(*c as i64);
            for (i, x) in e.iter().enumerate() {
                if *x > 0 {
                    t = ring.mul(&t, &ring.pow(&values[i], *x as u64));
                }
            }
            acc = ring.add(&acc, &t);
        }
        acc
    }

    pub fn add_term(&self, a: &mut MPoly, e: Vec<u32>, c: u64) {
        let c = c % self.p;
        if c == 0 {
            return;
        }
        let entry = a.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = (*o.get() + c) % self.p;
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }
}

impl Ring for MPolyRing {
    type Elem = MPoly;

    fn zero(&self) -> MPoly {
        MPoly::default()
    }

    fn one(&self) -> MPoly {
        self.constant(1)
    }

    fn from_i64(&self, n: i64) -> MPoly {
        self.constant(n.rem_euclid(self.p as i64) as u64)
    }

    fn add(&self, a: &MPoly, b: &MPoly) -> MPoly {
        let mut out = a.clone();
        for (e, c) in &b.terms {
            self.add_term(&mut out, e.clone(), *c);
        }
        out
    }

    fn sub(&self, a: &MPoly, b: &MPoly) -> MPoly {
        self.add(a, &self.neg(b))
    }

    fn neg(&self, a: &MPoly) -> MPoly {
        MPoly { terms: a.terms.iter().map(|(e, c)| (e.clone(), self.p - c)).collect() }
    }

    fn mul(&self, a: &MPoly, b: &MPoly) -> MPoly {
        let mut out = MPoly::default();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                self.add_term(&mut out, e, ca * cb % self.p);
            }
        }
        out
    }

    fn is_zero(&self, a: &MPoly) -> bool {
        a.terms.is_empty()
    }

    fn add_assign(&self, a: &mut MPoly, b: &MPoly) {
        for (e, c) in &b.terms {
            self.add_term(a, e.clone(), *c);
        }
    }
}

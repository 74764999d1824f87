//! Laurent-free polynomials `f = Σ a_P x^P` with coefficients in `F_q`.

use std::collections::BTreeMap;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::lattice::{Parallelotope, Side};
use crate::series::{ExtRing, Frobenius, Ring};

#[derive(Clone, Debug, PartialEq)]
pub struct FieldPoly {
    /// `F_q` as `ExtRing` at precision 1.
    field: ExtRing,
    /// Nonzero coefficients only.
    terms: BTreeMap<Vec<i64>, Vec<u64>>,
}

impl FieldPoly {
    pub fn new(field: ExtRing, terms: BTreeMap<Vec<i64>, Vec<u64>>) -> Result<Self> {
        if field.prec() != 1 {
            return Err(Error::InvalidInput("coefficient field must have precision 1".into()));
        }
        let m = field.degree();
        let mut clean = BTreeMap::new();
        for (e, c) in terms {
            if c.len() != m {
                return Err(Error::InvalidInput(format!("coefficient {c:?} is not in F_{}", field.q())));
            }
            let c: Vec<u64> = c.iter().map(|x| x % field.p()).collect();
            if !field.is_zero(&c) {
                clean.insert(e, c);
            }
        }
        Ok(FieldPoly { field, terms: clean })
    }

    /// Coefficients in the prime field `F_p`.
    pub fn over_prime(p: u64, terms: &[(Vec<i64>, u64)]) -> Result<Self> {
        let field = ExtRing::with_degree(p, 1, 1, 0)?;
        Self::new(field, terms.iter().map(|(e, c)| (e.clone(), vec![*c])).collect())
    }

    /// JSON object `{"[e1,e2]": c}` where `c` is an integer, a string, or a
    /// list of coordinates in the basis `1, X, …, X^{m−1}` of `F_{p^m}`.
    pub fn from_json(value: &Value, p: u64, m: usize) -> Result<Self> {
        let field = ExtRing::with_degree(p, 1, m, 0)?;
        let obj = value
            .as_object()
            .ok_or_else(|| Error::InvalidInput("f must be a JSON object".into()))?;
        let mut terms = BTreeMap::new();
        for (k, v) in obj {
            let e = parse_int_list(k)?;
            let c = match v {
                Value::Number(_) | Value::String(_) => {
                    let s = v.to_string();
                    let s = s.trim_matches('"');
                    if s.starts_with('[') {
                        parse_int_list(s)?
                    } else {
                        vec![parse_int(s)?]
                    }
                }
                Value::Array(a) => a
                    .iter()
                    .map(|x| x.as_i64().ok_or_else(|| Error::InvalidInput(format!("bad coefficient {x}"))))
                    .collect::<Result<Vec<i64>>>()?,
                _ => return Err(Error::InvalidInput(format!("bad coefficient {v}"))),
            };
            let mut c: Vec<u64> = c.iter().map(|x| x.rem_euclid(p as i64) as u64).collect();
            if c.len() > m {
                return Err(Error::InvalidInput(format!("coefficient {v} has more than {m} coordinates")));
            }
            c.resize(m, 0);
            if terms.insert(e.clone(), c).is_some() {
                return Err(Error::InvalidInput(format!("exponent {e:?} given twice")));
            }
        }
        Self::new(field, terms)
    }

    pub fn to_json(&self) -> Value {
        let mut m = serde_json::Map::new();
        for (e, c) in &self.terms {
            let key = format!("[{}]", e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
            let val = if c.len() == 1 { Value::from(c[0]) } else { Value::from(c.clone()) };
            m.insert(key, val);
        }
        Value::Object(m)
    }

    pub fn field(&self) -> &ExtRing {
        &self.field
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, Vec<u64>> {
        &self.terms
    }

    /// `a_P`, zero when absent.
    pub fn coefficient(&self, e: &[i64]) -> Vec<u64> {
        self.terms.get(e).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Smallest `d | m` with every coefficient in `F_{p^d}`.
    pub fn m_of_f(&self) -> usize {
        let m = self.field.degree();
        (1..=m)
            .filter(|d| m % d == 0)
            .find(|&d| {
                self.terms.values().all(|c| {
                    let mut x = c.clone();
                    for _ in 0..d {
                        x = self.field.frobenius(&x);
                    }
                    &x == c
                })
            })
            .unwrap_or(m)
    }

    /// Support inside `Δ^+` and every vertex coefficient nonzero.
    pub fn check_polytope(&self, delta: &Parallelotope) -> Result<()> {
        if let Some(e) = self.terms.keys().find(|e| e.len() != delta.n()) {
            return Err(Error::InvalidInput(format!("exponent {e:?} has the wrong length")));
        }
        let closed = delta.enumerate(1, Side::Closed);
        for e in self.terms.keys() {
            if !closed.iter().any(|q| &q.q == e) {
                return Err(Error::WrongPolytope(e.clone()));
            }
        }
        let idx: Vec<usize> = (0..delta.n()).collect();
        for s in crate::lattice::subsets(&idx).into_iter().filter(|s| !s.is_empty()) {
            let v = delta.vertex(&s);
            if !self.terms.contains_key(&v) {
                return Err(Error::WrongPolytope(v));
            }
        }
        Ok(())
    }

    /// Coefficients as integers in `[0, p)`, when `f` is defined over `F_p`.
    pub fn prime_coefficients(&self) -> Result<BTreeMap<Vec<i64>, u64>> {
        self.terms
            .iter()
            .map(|(e, c)| {
                self.field
                    .as_base(c)
                    .map(|a| (e.clone(), a))
                    .ok_or_else(|| Error::Domain("coefficients do not lie in F_p".into()))
            })
            .collect()
    }
}

fn parse_int(s: &str) -> Result<i64> {
    s.trim().parse::<i64>().map_err(|_| Error::InvalidInput(format!("not an integer: {s:?}")))
}

fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    if inner.trim().is_empty() {
        return Err(Error::InvalidInput(format!("empty exponent {s:?}")));
    }
    inner.split(',').map(parse_int).collect()
}

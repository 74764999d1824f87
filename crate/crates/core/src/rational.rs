//! Exact rationals and their serialized form.

use num_integer::Integer;
use serde::Serializer;

pub type Rat = num_rational::Ratio<i64>;

/// Always `"num/den"`, including integers.
pub fn rat_str(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            (d != 0).then(|| Rat::new(n, d))
        }
        None => Some(Rat::from_integer(s.trim().parse().ok()?)),
    }
}

pub fn floor(r: &Rat) -> i64 {
    r.numer().div_floor(r.denom())
}

pub fn ceil(r: &Rat) -> i64 {
    r.numer().div_ceil(r.denom())
}

/// Decimal rendering with a fixed number of places, for plot tables.
pub fn decimal(r: &Rat, places: u32) -> String {
    let scale = 10i128.pow(places);
    let n = *r.numer() as i128 * scale;
    let d = *r.denom() as i128;
    // round half away from zero
    let q = (2 * n + d.signum() * n.signum() * d) / (2 * d);
    let sign = if q < 0 { "-" } else { "" };
    let q = q.abs();
    if places == 0 {
        return format!("{sign}{q}");
    }
    format!("{sign}{}.{:0width$}", q / scale, q % scale, width = places as usize)
}

pub fn ser_rat<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rat_str(r))
}

pub fn ser_rat_vec<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(rat_str))
}

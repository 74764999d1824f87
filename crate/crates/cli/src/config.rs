//! Experiment configuration: a JSON file, overridden field by field by flags.

use std::path::{Path, PathBuf};

use nplab::dwork::FieldPoly;
use nplab::lattice::{Parallelotope, Side};
use nplab::series::padic::is_prime;
use nplab::{Error, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(rename = "V", skip_serializing_if = "Option::is_none")]
    pub v: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    /// `{"[e1,…]": coefficient}`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<Value>,
    /// Degree of the coefficient field of `f` over `F_p`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_max: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l_max: Option<usize>,
    #[serde(rename = "M", skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub prec: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub side: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_chi: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

macro_rules! overlay {
    ($base:ident, $top:ident, $($field:ident),*) => {
        $(if $top.$field.is_some() { $base.$field = $top.$field; })*
    };
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("config {}: {e}", path.display())))
    }

    /// Fields set in `top` win.
    pub fn merged(mut self, top: ExperimentConfig) -> Self {
        overlay!(self, top, v, p, f, m, k_max, l_max, order, prec, side, m_chi, out);
        self
    }

    pub fn polytope(&self) -> Result<Parallelotope> {
        let v = self.v.clone().ok_or_else(|| Error::InvalidInput("missing generators V".into()))?;
        Parallelotope::new(v)
    }

    pub fn prime(&self) -> Result<u64> {
        let p = self.p.ok_or_else(|| Error::InvalidInput("missing p".into()))?;
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        Ok(p)
    }

    pub fn poly(&self) -> Result<FieldPoly> {
        let f = self.f.as_ref().ok_or_else(|| Error::InvalidInput("missing f".into()))?;
        FieldPoly::from_json(f, self.prime()?, self.m.unwrap_or(1))
    }

    pub fn sides(&self) -> Result<Vec<Side>> {
        match self.side.as_deref() {
            None | Some("both") => Ok(Side::BOTH.to_vec()),
            Some(s) => Ok(vec![s.parse()?]),
        }
    }
}

/// Parses a JSON value given on the command line.
pub fn parse_json<T: for<'de> Deserialize<'de>>(what: &str, s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("{what}: {e}")))
}

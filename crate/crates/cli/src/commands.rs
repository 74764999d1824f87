//! Subcommand bodies. Each returns the JSON report and any extra files.

use std::time::Instant;

use nplab::dwork::{
    block_leading_determinant, det_m_exponent, ld_check, matrix_m, ozar_membership,
    res_block_factorization, verify_generic,
};
use nplab::lattice::{Parallelotope, Side};
use nplab::oracle::{compare, np_check, SCALE_LIMIT};
use nplab::polygon::{
    exact_length, h_polynomial_fit, hodge_polygon, ihp_hp_gap, improved_hodge_polygon,
    slope_distribution,
};
use nplab::rational::rat_str;
use nplab::{Error, Result};
use serde_json::{json, Value};

use crate::config::ExperimentConfig;

pub struct Output {
    pub report: Value,
    /// `(file name, contents without header)`; text files get a `#` header.
    pub files: Vec<(String, String)>,
    pub exit: i32,
}

fn header(cfg: &ExperimentConfig, command: &str, hypothesis: Value) -> Value {
    json!({
        "tool": "np-lab",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "config": cfg,
        "hypothesis": hypothesis,
    })
}

fn wrap(head: Value, result: Value) -> Value {
    let mut head = head;
    head["result"] = result;
    head
}

pub fn polygon(cfg: &ExperimentConfig) -> Result<Output> {
    let delta = cfg.polytope()?;
    let p = cfg.prime()?;
    let k_max = cfg.k_max.unwrap_or(delta.n() as u32 + 2);
    let l_max = cfg.l_max.unwrap_or_else(|| delta.count_closed_form(k_max).1 as usize);
    let len = exact_length(&delta, l_max);
    let hp = hodge_polygon(&delta, p, len);
    let ihp = improved_hodge_polygon(&delta, p, len);
    let weights: Vec<Value> = delta
        .enumerate(1, Side::Open)
        .iter()
        .map(|q| {
            let pq: Vec<i64> = q.q.iter().map(|x| x * p as i64).collect();
            json!({"P0": q.q, "w": rat_str(&q.w), "w_pP0": rat_str(&delta.weight(&pq).expect("cone"))})
        })
        .collect();
    let mut gaps = Vec::new();
    for k in 1..=k_max {
        for side in cfg.sides()? {
            gaps.push(serde_json::to_value(ihp_hp_gap(&delta, p, k, side)).expect("serializable"));
        }
    }
    let fits: Vec<Value> = Side::BOTH
        .iter()
        .map(|s| serde_json::to_value(h_polynomial_fit(&delta, p, *s)).expect("serializable"))
        .collect();
    let slopes = slope_distribution(&delta, p, cfg.m_chi.unwrap_or(1))?;
    let hyp = serde_json::to_value(delta.hypothesis(p)).expect("serializable");
    let result = json!({
        "n": delta.n(),
        "vol": delta.vol(),
        "D": delta.d(),
        "l_max": l_max,
        "weights": weights,
        "hodge": hp.to_json(),
        "improved_hodge": ihp.to_json(),
        "gaps": gaps,
        "h_fit": fits,
        "slope_distribution": slopes,
    });
    Ok(Output {
        report: wrap(header(cfg, "polygon", hyp), result),
        files: vec![
            ("slopes.csv".into(), slopes.to_csv()),
            ("hp_plot.txt".into(), hp.plot_table()),
            ("ihp_plot.txt".into(), ihp.plot_table()),
        ],
        exit: 0,
    })
}

pub struct VerifyOptions {
    pub matrix_m: Option<(Vec<i64>, u32)>,
    pub blocks: bool,
    pub ld: bool,
    pub ozar: bool,
    pub timing: bool,
}

pub fn verify(cfg: &ExperimentConfig, opts: &VerifyOptions) -> Result<Output> {
    let p = cfg.prime()?;
    if let Some((w, k)) = &opts.matrix_m {
        let m = matrix_m(w, *k, p)?;
        let exponent = if w.len() == 1 { Some(det_m_exponent(w[0], *k, p)?) } else { None };
        let exit = if m.admissible && m.det == 0 { 3 } else { 0 };
        let result = json!({ "matrix_M": m, "closed_form_exponent": exponent });
        return Ok(Output { report: wrap(header(cfg, "verify", Value::Null), result), files: Vec::new(), exit });
    }
    let delta = cfg.polytope()?;
    let k_max = cfg.k_max.unwrap_or(delta.n() as u32 + 2);
    let hyp = delta.hypothesis(p);
    let mut timings = serde_json::Map::new();
    let clock = Instant::now();
    let report = verify_generic(&delta, p, 1..=k_max)?;
    timings.insert("leading".into(), json!(clock.elapsed().as_millis() as u64));
    let mut result = json!({ "leading": report });
    let mut pass = report.all_nonzero;
    if opts.blocks {
        let clock = Instant::now();
        let mut facts = Vec::new();
        let mut blocks = Vec::new();
        for k in 1..=k_max {
            for side in cfg.sides()? {
                facts.push(res_block_factorization(&delta, p, k, side)?);
                for b in delta.block_decomposition(k, side) {
                    let lead = block_leading_determinant(&delta, p, &b)?;
                    pass &= lead.pi_power == lead.expected_pi_power && lead.unit != 0;
                    let check = if opts.ld { Some(ld_check(&delta, p, &b, 2)?) } else { None };
                    if let Some(c) = &check {
                        pass &= c.entries_match_deg && c.det_matches;
                    }
                    blocks.push(json!({ "k": k, "side": side, "leading": lead, "ld_check": check }));
                }
            }
        }
        result["factorization"] = json!(facts);
        result["blocks"] = json!(blocks);
        timings.insert("blocks".into(), json!(clock.elapsed().as_millis() as u64));
    }
    if opts.ozar {
        result["ozar"] = serde_json::to_value(ozar_membership(&delta, &cfg.poly()?)?).expect("serializable");
    }
    if opts.timing {
        result["timing_ms"] = Value::Object(timings);
    }
    result["pass"] = json!(pass);
    let exit = if !pass && hyp.holds { 3 } else { 0 };
    let hyp = serde_json::to_value(hyp).expect("serializable");
    Ok(Output { report: wrap(header(cfg, "verify", hyp), result), files: Vec::new(), exit })
}

fn scale_ok(p: u64, n: usize, l: usize) -> bool {
    p.checked_pow(l as u32)
        .and_then(|q| (q - 1).checked_pow(n as u32))
        .is_some_and(|c| c <= SCALE_LIMIT)
}

/// Largest `k ≤ 2` whose vertex `x_k^+` the oracle can reach.
fn default_np_kmax(delta: &Parallelotope, p: u64) -> u32 {
    (1..=2)
        .take_while(|k| {
            let x = delta.count_closed_form(*k).1 as usize;
            x < p as usize && scale_ok(p, delta.n(), x)
        })
        .last()
        .unwrap_or(0)
}

pub fn compare_cmd(cfg: &ExperimentConfig) -> Result<Output> {
    let delta = cfg.polytope()?;
    let p = cfg.prime()?;
    let f = cfg.poly()?;
    let n = delta.n();
    let l_max = match cfg.l_max {
        Some(l) => l,
        None => (1..=4.min(p as usize - 1)).take_while(|l| scale_ok(p, n, *l)).last().unwrap_or(1),
    };
    let order = cfg.order.unwrap_or(15);
    let prec = cfg.prec.unwrap_or(1);
    let cmp = compare(&delta, &f, l_max, order, prec)?;
    let k_max = cfg.k_max.unwrap_or_else(|| default_np_kmax(&delta, p));
    let np = if k_max >= 1 { np_check(&delta, &f, 1..=k_max)? } else { Vec::new() };
    let mut csv = String::from("ell,val_oracle,val_dwork,match\n");
    let show = |v: Option<usize>| v.map_or(format!(">{order}"), |v| v.to_string());
    for r in &cmp.rows {
        csv.push_str(&format!("{},{},{},{}\n", r.ell, show(r.oracle_valuation), show(r.dwork_valuation), r.matches));
    }
    let exit = if cmp.first_mismatch.is_some() { 4 } else { 0 };
    let hyp = serde_json::to_value(delta.hypothesis(p)).expect("serializable");
    let result = json!({ "compare": cmp, "np_check": np });
    Ok(Output { report: wrap(header(cfg, "compare", hyp), result), files: vec![("compare.csv".into(), csv)], exit })
}

pub fn enumerate(cfg: &ExperimentConfig, blocks: bool) -> Result<Output> {
    let delta = cfg.polytope()?;
    let k = cfg.k_max.unwrap_or(1);
    let mut out = serde_json::Map::new();
    for side in cfg.sides()? {
        let pts = delta.enumerate(k, side);
        let (xm, xp) = delta.count_closed_form(k);
        let closed_form = if side == Side::Open { xm } else { xp };
        let mut entry = json!({ "count": pts.len(), "closed_form": closed_form, "points": pts });
        if blocks {
            entry["blocks"] = json!(delta.block_decomposition(k, side));
        }
        out.insert(side.to_string(), entry);
    }
    let hyp = match cfg.p {
        Some(_) => serde_json::to_value(delta.hypothesis(cfg.prime()?)).expect("serializable"),
        None => Value::Null,
    };
    let result = json!({ "k": k, "vol": delta.vol(), "D": delta.d(), "sides": out });
    Ok(Output { report: wrap(header(cfg, "enumerate", hyp), result), files: Vec::new(), exit: 0 })
}

/// Exit code for an error: 3 for statements the theory says cannot fail,
/// 4 for oracle disagreement, 2 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::VerificationFailed { .. } | Error::NotAUnit(_) | Error::FactorizationMismatch { .. } => 3,
        Error::Mismatch { .. } => 4,
        _ => 2,
    }
}

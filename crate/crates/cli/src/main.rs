use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nplab::{Error, Result};

mod commands;
mod config;

use commands::{Output, VerifyOptions};
use config::{parse_json, ExperimentConfig};

#[derive(Parser)]
#[command(name = "np-lab", version, about = "Newton and Hodge polygons of toric exponential sums")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// JSON config file; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Generators as a JSON matrix, e.g. "[[2,0],[0,3]]".
    #[arg(long = "V")]
    v: Option<String>,
    #[arg(long)]
    p: Option<u64>,
    /// open, closed or both.
    #[arg(long)]
    side: Option<String>,
    /// Directory for report files; the JSON report is always printed.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Hodge and improved Hodge polygons, gaps, h fits, slope table.
    Polygon {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        kmax: Option<u32>,
        #[arg(long)]
        lmax: Option<usize>,
        /// Conductor exponent of the character.
        #[arg(long)]
        mchi: Option<u32>,
    },
    /// Nonvanishing of universal leading coefficients, or one matrix M(w, k).
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        kmax: Option<u32>,
        /// Check M(w, k) instead of a polytope.
        #[arg(long = "matrixM")]
        matrix_m: bool,
        /// Integer vector for --matrixM: "5" or "[3,7]".
        #[arg(long)]
        w: Option<String>,
        #[arg(long)]
        k: Option<u32>,
        /// Also factor into residue blocks and check block leading terms.
        #[arg(long)]
        blocks: bool,
        /// With --blocks, recompute each block's leading determinant by full expansion.
        #[arg(long)]
        ld: bool,
        /// Specialize at f (needs --f).
        #[arg(long)]
        ozar: bool,
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        m: Option<usize>,
        /// Record wall-clock times in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Exponential-sum oracle against the Dwork determinant.
    Compare {
        #[command(flatten)]
        common: Common,
        /// f as JSON, e.g. '{"[2]": 1, "[1]": 1}'.
        #[arg(long)]
        f: Option<String>,
        /// Degree of the coefficient field of f.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        lmax: Option<usize>,
        /// π-adic truncation.
        #[arg(long = "M")]
        order: Option<usize>,
        /// p-adic precision.
        #[arg(long = "N")]
        prec: Option<u32>,
        /// Largest k for the polygon vertex checks.
        #[arg(long)]
        kmax: Option<u32>,
    },
    /// Lattice points of a dilate.
    Enumerate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        blocks: bool,
    },
}

fn base_config(common: &Common) -> Result<ExperimentConfig> {
    let file = match &common.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    let flags = ExperimentConfig {
        v: common.v.as_deref().map(|s| parse_json("--V", s)).transpose()?,
        p: common.p,
        side: common.side.clone(),
        out: common.out.clone(),
        ..ExperimentConfig::default()
    };
    Ok(file.merged(flags))
}

fn parse_f(s: &Option<String>) -> Result<Option<serde_json::Value>> {
    s.as_deref().map(|s| parse_json("--f", s)).transpose()
}

fn parse_w(s: &str) -> Result<Vec<i64>> {
    let v: serde_json::Value = parse_json("--w", s)?;
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(|x| vec![x]),
        serde_json::Value::Array(a) => a.iter().map(|x| x.as_i64()).collect(),
        _ => None,
    }
    .ok_or_else(|| Error::InvalidInput(format!("--w must be an integer or a list of integers, got {s}")))
}

fn dispatch(cmd: Command) -> Result<(ExperimentConfig, &'static str, Output)> {
    match cmd {
        Command::Polygon { common, kmax, lmax, mchi } => {
            let cfg = base_config(&common)?.merged(ExperimentConfig {
                k_max: kmax,
                l_max: lmax,
                m_chi: mchi,
                ..Default::default()
            });
            let out = commands::polygon(&cfg)?;
            Ok((cfg, "polygon", out))
        }
        Command::Verify { common, kmax, matrix_m, w, k, blocks, ld, ozar, f, m, timing } => {
            let cfg = base_config(&common)?.merged(ExperimentConfig {
                k_max: kmax,
                f: parse_f(&f)?,
                m,
                ..Default::default()
            });
            let matrix_m = if matrix_m {
                let w = w.ok_or_else(|| Error::InvalidInput("--matrixM needs --w".into()))?;
                Some((parse_w(&w)?, k.unwrap_or(0)))
            } else {
                None
            };
            let opts = VerifyOptions { matrix_m, blocks, ld, ozar, timing };
            let out = commands::verify(&cfg, &opts)?;
            Ok((cfg, "verify", out))
        }
        Command::Compare { common, f, m, lmax, order, prec, kmax } => {
            let cfg = base_config(&common)?.merged(ExperimentConfig {
                f: parse_f(&f)?,
                m,
                l_max: lmax,
                order,
                prec,
                k_max: kmax,
                ..Default::default()
            });
            let out = commands::compare_cmd(&cfg)?;
            Ok((cfg, "compare", out))
        }
        Command::Enumerate { common, k, blocks } => {
            let cfg = base_config(&common)?.merged(ExperimentConfig { k_max: k, ..Default::default() });
            let out = commands::enumerate(&cfg, blocks)?;
            Ok((cfg, "enumerate", out))
        }
    }
}

fn text_header(report: &serde_json::Value) -> String {
    format!(
        "# np-lab {}\n# config: {}\n# hypothesis: {}\n",
        env!("CARGO_PKG_VERSION"),
        report["config"],
        report["hypothesis"]
    )
}

fn write_outputs(dir: &Path, name: &str, out: &Output) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let json = serde_json::to_string_pretty(&out.report).expect("serializable");
    std::fs::write(dir.join(format!("{name}.json")), json + "\n")?;
    let head = text_header(&out.report);
    for (file, body) in &out.files {
        std::fs::write(dir.join(file), format!("{head}{body}"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok((cfg, name, out)) => {
            if let Some(dir) = &cfg.out {
                if let Err(e) = write_outputs(dir, name, &out) {
                    eprintln!("error: cannot write {}: {e}", dir.display());
                    return ExitCode::from(2);
                }
            }
            let json = serde_json::to_string_pretty(&out.report).expect("serializable");
            // A closed pipe (e.g. `| head`) is not an error for us.
            let _ = writeln!(std::io::stdout().lock(), "{json}");
            ExitCode::from(out.exit as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e) as u8)
        }
    }
}

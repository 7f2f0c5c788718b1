//! Sweep configuration: command-line flags (clap) or a key=value config
//! file via `--config`; both normalize into the same [`Config`].

use clap::{Args, Parser, Subcommand};
use magnus_tls::floquet::{PictureTag, Span};
use std::collections::BTreeMap;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "magnus-tls", version, about = "Magnus-expansion sweeps for driven two-level systems")]
struct Cli {
    /// Key=value config file replacing the command line (must contain `command=`).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Option<Cmd>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Landau-Zener sweep over γ: exact and Magnus probabilities and phases.
    Lz(SweepArgs),
    /// Rabi quasienergy sweep over Δ or g.
    Rabi(SweepArgs),
    /// Symmetry and convergence report at one parameter point.
    Report(ReportArgs),
}

#[derive(Args, Debug, Default, Clone)]
struct SweepArgs {
    /// Fixed model parameters, e.g. "g=1" or "delta=1,g=1".
    #[arg(long)]
    model_params: Option<String>,
    /// Sweep axis: "gamma" (lz) or "delta"/"g" (rabi).
    #[arg(long)]
    axis: Option<String>,
    #[arg(long)]
    min: Option<f64>,
    #[arg(long)]
    max: Option<f64>,
    #[arg(long)]
    count: Option<usize>,
    /// Logarithmic spacing.
    #[arg(long, default_value_t = false)]
    log: bool,
    /// Method descriptor, repeatable: "heun", "zma",
    /// "magnus:<region1|region2|adiabatic>:<order>:<half|full>".
    #[arg(long = "method")]
    methods: Vec<String>,
    /// Tolerance override for the reference oracle.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Default, Clone)]
struct ReportArgs {
    /// Parameter point, e.g. "delta=1,g=1".
    #[arg(long)]
    model_params: Option<String>,
    /// Two-column (time, shape) drive file replacing the cosine shape.
    #[arg(long)]
    drive_file: Option<PathBuf>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Lz,
    Rabi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodSpec {
    Heun,
    Magnus {
        picture: PictureTag,
        order: usize,
        span: Span,
    },
}

#[derive(Debug, Clone)]
pub enum Config {
    Sweep(SweepConfig),
    Report(ReportConfig),
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub model: Model,
    pub params: BTreeMap<String, f64>,
    pub axis: String,
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub log: bool,
    pub methods: Vec<(String, MethodSpec)>,
    pub tol: f64,
    pub out: PathBuf,
    /// Reconstructed textual form, echoed into the output header.
    pub echo: String,
}

#[derive(Debug, Clone)]
pub struct ReportConfig {
    pub params: BTreeMap<String, f64>,
    pub drive_file: Option<PathBuf>,
    pub tol: f64,
    pub out: Option<PathBuf>,
}

pub fn parse(args: &[String]) -> Result<Config, String> {
    let mut full = vec!["magnus-tls".to_string()];
    full.extend_from_slice(args);
    let cli = Cli::try_parse_from(&full).map_err(|e| e.to_string())?;
    if let Some(path) = &cli.config {
        return from_config_file(path);
    }
    match cli.cmd {
        None => Err("missing subcommand (lz | rabi | report) or --config".into()),
        Some(Cmd::Lz(a)) => sweep_config(Model::Lz, &a),
        Some(Cmd::Rabi(a)) => sweep_config(Model::Rabi, &a),
        Some(Cmd::Report(a)) => report_config(&a),
    }
}

fn parse_params(s: &Option<String>) -> Result<BTreeMap<String, f64>, String> {
    let mut out = BTreeMap::new();
    if let Some(s) = s {
        for (i, item) in s.split(',').enumerate() {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| format!("model-params item {}: expected key=value, got `{item}`", i + 1))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|e| format!("model-params `{k}`: {e}"))?;
            out.insert(k.trim().to_string(), v);
        }
    }
    Ok(out)
}

pub fn parse_method(s: &str) -> Result<MethodSpec, String> {
    match s {
        "heun" => return Ok(MethodSpec::Heun),
        "zma" => {
            return Ok(MethodSpec::Magnus {
                picture: PictureTag::Adiabatic,
                order: 0,
                span: Span::HalfPeriod,
            })
        }
        _ => {}
    }
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 4 || parts[0] != "magnus" {
        return Err(format!(
            "method `{s}`: expected heun | zma | magnus:<picture>:<order>:<half|full>"
        ));
    }
    let picture = match parts[1] {
        "region1" => PictureTag::RegionI,
        "region2" => PictureTag::RegionII,
        "adiabatic" => PictureTag::Adiabatic,
        p => return Err(format!("method `{s}`: unknown picture `{p}`")),
    };
    let order: usize = parts[2]
        .parse()
        .map_err(|e| format!("method `{s}`: order: {e}"))?;
    if order > 6 {
        return Err(format!("method `{s}`: order {order} out of range (max 6)"));
    }
    let span = match parts[3] {
        "half" => Span::HalfPeriod,
        "full" => Span::FullPeriod,
        sp => return Err(format!("method `{s}`: unknown span `{sp}`")),
    };
    Ok(MethodSpec::Magnus {
        picture,
        order,
        span,
    })
}

fn sweep_config(model: Model, a: &SweepArgs) -> Result<Config, String> {
    let params = parse_params(&a.model_params)?;
    let axis = a.axis.clone().unwrap_or_else(|| {
        match model {
            Model::Lz => "gamma",
            Model::Rabi => "delta",
        }
        .to_string()
    });
    let (min, max) = (
        a.min.ok_or("--min is required")?,
        a.max.ok_or("--max is required")?,
    );
    if !(max > min) {
        return Err(format!("--min {min} must be below --max {max}"));
    }
    let count = a.count.ok_or("--count is required")?;
    if count < 2 {
        return Err(format!("--count {count} must be at least 2"));
    }
    if a.log && min <= 0.0 {
        return Err("--log requires a positive --min".into());
    }
    let mut methods = Vec::new();
    for m in &a.methods {
        methods.push((m.clone(), parse_method(m)?));
    }
    match model {
        Model::Lz => {
            if axis != "gamma" {
                return Err(format!("lz sweeps run over `gamma`, not `{axis}`"));
            }
            if !methods.is_empty() {
                return Err("lz emits the fixed column set; --method does not apply".into());
            }
        }
        Model::Rabi => {
            if axis != "delta" && axis != "g" {
                return Err(format!("rabi axis must be `delta` or `g`, not `{axis}`"));
            }
            if methods.is_empty() {
                return Err("rabi sweeps need at least one --method".into());
            }
        }
    }
    let out = a.out.clone().ok_or("--out is required")?;
    let tol = a.tol.unwrap_or(1e-10);
    if !(1e-13..=1e-4).contains(&tol) {
        return Err(format!("--tol {tol} out of range [1e-13, 1e-4]"));
    }
    let echo = echo_sweep(model, &params, &axis, min, max, count, a.log, &a.methods, tol);
    Ok(Config::Sweep(SweepConfig {
        model,
        params,
        axis,
        min,
        max,
        count,
        log: a.log,
        methods,
        tol,
        out,
        echo,
    }))
}

#[allow(clippy::too_many_arguments)]
fn echo_sweep(
    model: Model,
    params: &BTreeMap<String, f64>,
    axis: &str,
    min: f64,
    max: f64,
    count: usize,
    log: bool,
    methods: &[String],
    tol: f64,
) -> String {
    let mut s = format!(
        "command={} axis={axis} min={min} max={max} count={count} spacing={}",
        match model {
            Model::Lz => "lz",
            Model::Rabi => "rabi",
        },
        if log { "log" } else { "lin" }
    );
    for (k, v) in params {
        s.push_str(&format!(" {k}={v}"));
    }
    for m in methods {
        s.push_str(&format!(" method={m}"));
    }
    s.push_str(&format!(" tol={tol:e}"));
    s
}

fn report_config(a: &ReportArgs) -> Result<Config, String> {
    Ok(Config::Report(ReportConfig {
        params: parse_params(&a.model_params)?,
        drive_file: a.drive_file.clone(),
        tol: a.tol.unwrap_or(1e-10),
        out: a.out.clone(),
    }))
}

/// Key=value config file: `command=lz|rabi|report` plus the flag names
/// without the leading dashes; `method` may repeat.
fn from_config_file(path: &PathBuf) -> Result<Config, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("config {}: {e}", path.display()))?;
    let mut kv: Vec<(usize, String, String)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key=value", lineno + 1))?;
        kv.push((lineno + 1, k.trim().to_string(), v.trim().to_string()));
    }
    let get = |key: &str| -> Option<String> {
        kv.iter()
            .find(|(_, k, _)| k == key)
            .map(|(_, _, v)| v.clone())
    };
    let parse_f64 = |key: &str| -> Result<Option<f64>, String> {
        match get(key) {
            None => Ok(None),
            Some(v) => v
                .parse::<f64>()
                .map(Some)
                .map_err(|e| format!("config `{key}`: {e}")),
        }
    };
    let command = get("command").ok_or("config: missing `command`")?;
    let methods: Vec<String> = kv
        .iter()
        .filter(|(_, k, _)| k == "method")
        .map(|(_, _, v)| v.clone())
        .collect();
    match command.as_str() {
        "lz" | "rabi" => {
            let args = SweepArgs {
                model_params: get("model-params"),
                axis: get("axis"),
                min: parse_f64("min")?,
                max: parse_f64("max")?,
                count: match get("count") {
                    None => None,
                    Some(v) => Some(v.parse().map_err(|e| format!("config `count`: {e}"))?),
                },
                log: matches!(get("log").as_deref(), Some("true") | Some("1")),
                methods,
                tol: parse_f64("tol")?,
                out: get("out").map(PathBuf::from),
            };
            sweep_config(
                if command == "lz" { Model::Lz } else { Model::Rabi },
                &args,
            )
        }
        "report" => report_config(&ReportArgs {
            model_params: get("model-params"),
            drive_file: get("drive-file").map(PathBuf::from),
            tol: parse_f64("tol")?,
            out: get("out").map(PathBuf::from),
        }),
        c => Err(format!("config: unknown command `{c}`")),
    }
}

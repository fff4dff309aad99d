//! Configuration, sweeps and CSV/JSON output for the `wigner-spin` binary.
//!
//! Settings come from command-line flags, then a flat JSON config file whose
//! keys are the flag names without the leading dashes, then built-in defaults.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, ValueEnum};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::discrete::{two_point_entropy, two_point_entropy_closed_form, two_point_wigner_angle};
use crate::engine::{entropy_curve, xi_grid, BoostScenario, DEFAULT_XI_MAX, DEFAULT_XI_STEPS};
use crate::lorentz::{wigner_angle, BoostPair};
use crate::wavepacket::{DEFAULT_EXTENT_SIGMAS, DEFAULT_NODES_PER_AXIS, MIN_NODES_PER_AXIS};

pub const DEFAULT_V1: f64 = 0.985;
pub const DEFAULT_THETA_DEG: f64 = 90.0;
pub const DEFAULT_THETA_F_DEG: f64 = 170.0;
pub const DEFAULT_THETA_STEPS: usize = 181;
pub const DEFAULT_SIGMA: f64 = 1.0;

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    WignerAngle,
    EntropyCurve,
    TwoPoint,
    Figure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Figure {
    Fig1,
    Fig2a,
    Fig2b,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::WignerAngle => "wigner-angle",
            Mode::EntropyCurve => "entropy-curve",
            Mode::TwoPoint => "two-point",
            Mode::Figure => "figure",
        }
    }
}

impl Figure {
    fn name(self) -> &'static str {
        match self {
            Figure::Fig1 => "fig1",
            Figure::Fig2a => "fig2a",
            Figure::Fig2b => "fig2b",
        }
    }
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Command-line flags. Every setting is optional so that a config file can
/// supply it instead.
#[derive(Debug, Clone, Default, Parser)]
#[command(
    name = "wigner-spin",
    version,
    about = "Wigner rotation and spin entropy sweeps for boosted spin-1/2 wavepackets"
)]
pub struct Args {
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Figure preset (implies `--mode figure`).
    #[arg(long, value_enum)]
    pub figure: Option<Figure>,
    /// Rest-frame speed of the packet centre.
    #[arg(long)]
    pub v1: Option<f64>,
    /// Observer speed for wigner-angle mode (defaults to v1).
    #[arg(long)]
    pub v2: Option<f64>,
    /// Angle between the packet momentum and the boost axis, in degrees.
    #[arg(long = "theta-deg", allow_negative_numbers = true)]
    pub theta_deg: Option<f64>,
    /// Second fig2b geometry, in degrees.
    #[arg(long = "theta-f-deg", allow_negative_numbers = true)]
    pub theta_f_deg: Option<f64>,
    /// Number of angles in a wigner-angle sweep over [0, 180] degrees.
    #[arg(long = "theta-steps")]
    pub theta_steps: Option<usize>,
    /// Packet width in units of the mass.
    #[arg(long, allow_negative_numbers = true)]
    pub sigma: Option<f64>,
    #[arg(long = "xi-min", allow_negative_numbers = true)]
    pub xi_min: Option<f64>,
    #[arg(long = "xi-max", allow_negative_numbers = true)]
    pub xi_max: Option<f64>,
    #[arg(long = "xi-steps")]
    pub xi_steps: Option<usize>,
    /// Quadrature nodes per momentum axis.
    #[arg(long)]
    pub nodes: Option<usize>,
    /// Output file, or directory in figure mode. Standard output if omitted
    /// outside figure mode.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Flat JSON object with keys named like the flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Omit the generation-time metadata line.
    #[arg(long = "no-timestamp")]
    pub no_timestamp: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid `{key}`: {message}")]
    Usage { key: String, message: String },
    #[error("{0}")]
    Compute(#[from] crate::Error),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage { .. } => EXIT_USAGE,
            _ => EXIT_RUNTIME,
        }
    }

    fn usage(key: &str, message: impl Into<String>) -> Self {
        CliError::Usage {
            key: key.to_string(),
            message: message.into(),
        }
    }
}

/// Fully resolved settings of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub mode: Mode,
    pub figure: Option<Figure>,
    pub v1: f64,
    pub v2: Option<f64>,
    pub theta_deg: f64,
    pub theta_f_deg: f64,
    pub theta_steps: usize,
    pub sigma: f64,
    pub xi_min: f64,
    pub xi_max: f64,
    pub xi_steps: usize,
    pub nodes: usize,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub timestamp: bool,
}

fn field<T: serde::de::DeserializeOwned>(key: &str, value: Value) -> Result<Option<T>, CliError> {
    serde_json::from_value(value)
        .map(Some)
        .map_err(|e| CliError::usage(key, format!("in config file: {e}")))
}

/// Reads a config file into the same shape as the flags.
pub fn read_config_file(path: &Path) -> Result<Args, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage("config", format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| {
        CliError::usage(
            "config",
            format!("{} is not valid JSON: {e}", path.display()),
        )
    })?;
    let Value::Object(map) = value else {
        return Err(CliError::usage("config", "expected a flat JSON object"));
    };
    let mut args = Args::default();
    for (key, value) in map {
        match key.as_str() {
            "mode" => args.mode = field(&key, value)?,
            "figure" => args.figure = field(&key, value)?,
            "v1" => args.v1 = field(&key, value)?,
            "v2" => args.v2 = field(&key, value)?,
            "theta-deg" => args.theta_deg = field(&key, value)?,
            "theta-f-deg" => args.theta_f_deg = field(&key, value)?,
            "theta-steps" => args.theta_steps = field(&key, value)?,
            "sigma" => args.sigma = field(&key, value)?,
            "xi-min" => args.xi_min = field(&key, value)?,
            "xi-max" => args.xi_max = field(&key, value)?,
            "xi-steps" => args.xi_steps = field(&key, value)?,
            "nodes" => args.nodes = field(&key, value)?,
            "output" => args.output = field(&key, value)?,
            "format" => args.format = field(&key, value)?,
            "no-timestamp" => args.no_timestamp = field(&key, value)?.unwrap_or(false),
            "config" => {
                return Err(CliError::usage(
                    "config",
                    "config files cannot include other config files",
                ))
            }
            _ => return Err(CliError::usage(&key, "unknown config key")),
        }
    }
    Ok(args)
}

/// Merges flags over the config file (if any) and validates the result.
pub fn parse_config(args: Args) -> Result<SweepConfig, CliError> {
    let file = match &args.config {
        Some(path) => read_config_file(path)?,
        None => Args::default(),
    };
    let mode = match (args.mode.or(file.mode), args.figure.or(file.figure)) {
        (Some(Mode::Figure) | None, Some(_)) => Mode::Figure,
        (Some(m), Some(_)) => {
            return Err(CliError::usage(
                "figure",
                format!("a figure preset needs mode figure, not {}", m.name()),
            ))
        }
        (Some(Mode::Figure), None) => {
            return Err(CliError::usage(
                "figure",
                "mode figure needs a figure preset",
            ))
        }
        (Some(m), None) => m,
        (None, None) => return Err(CliError::usage("mode", "no mode given")),
    };
    let config = SweepConfig {
        mode,
        figure: args.figure.or(file.figure),
        v1: args.v1.or(file.v1).unwrap_or(DEFAULT_V1),
        v2: args.v2.or(file.v2),
        theta_deg: args
            .theta_deg
            .or(file.theta_deg)
            .unwrap_or(DEFAULT_THETA_DEG),
        theta_f_deg: args
            .theta_f_deg
            .or(file.theta_f_deg)
            .unwrap_or(DEFAULT_THETA_F_DEG),
        theta_steps: args
            .theta_steps
            .or(file.theta_steps)
            .unwrap_or(DEFAULT_THETA_STEPS),
        sigma: args.sigma.or(file.sigma).unwrap_or(DEFAULT_SIGMA),
        xi_min: args.xi_min.or(file.xi_min).unwrap_or(0.0),
        xi_max: args.xi_max.or(file.xi_max).unwrap_or(DEFAULT_XI_MAX),
        xi_steps: args.xi_steps.or(file.xi_steps).unwrap_or(DEFAULT_XI_STEPS),
        nodes: args.nodes.or(file.nodes).unwrap_or(DEFAULT_NODES_PER_AXIS),
        output: args.output.or(file.output),
        format: args.format.or(file.format).unwrap_or_default(),
        timestamp: !(args.no_timestamp || file.no_timestamp),
    };
    config.validate()?;
    Ok(config)
}

fn check_speed(key: &str, v: f64) -> Result<(), CliError> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(CliError::usage(
            key,
            format!("speed {v} must lie in (0, 1)"),
        ))
    }
}

fn check_angle(key: &str, deg: f64) -> Result<(), CliError> {
    if deg > 0.0 && deg < 180.0 {
        Ok(())
    } else {
        Err(CliError::usage(
            key,
            format!("angle {deg} must lie in (0, 180) degrees"),
        ))
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        check_speed("v1", self.v1)?;
        if let Some(v2) = self.v2 {
            check_speed("v2", v2)?;
        }
        check_angle("theta-deg", self.theta_deg)?;
        check_angle("theta-f-deg", self.theta_f_deg)?;
        if self.theta_steps < 2 {
            return Err(CliError::usage("theta-steps", "need at least 2 angles"));
        }
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(CliError::usage(
                "sigma",
                format!("width {} must be positive", self.sigma),
            ));
        }
        if !(self.xi_min >= 0.0 && self.xi_min.is_finite()) {
            return Err(CliError::usage(
                "xi-min",
                format!("rapidity {} must be >= 0", self.xi_min),
            ));
        }
        if !(self.xi_max > self.xi_min && self.xi_max.is_finite()) {
            return Err(CliError::usage(
                "xi-max",
                format!("{} must exceed xi-min {}", self.xi_max, self.xi_min),
            ));
        }
        if self.xi_steps < 2 {
            return Err(CliError::usage("xi-steps", "need at least 2 rapidities"));
        }
        if self.nodes < MIN_NODES_PER_AXIS {
            return Err(CliError::usage(
                "nodes",
                format!("need at least {MIN_NODES_PER_AXIS} nodes per axis"),
            ));
        }
        if self.mode == Mode::Figure && self.output.is_none() {
            return Err(CliError::usage(
                "output",
                "figure mode needs an output directory",
            ));
        }
        Ok(())
    }

    fn xi_values(&self) -> Result<Vec<f64>, CliError> {
        Ok(xi_grid(self.xi_min, self.xi_max, self.xi_steps)?)
    }

    fn xi_meta(&self, meta: &mut Vec<(String, String)>) {
        meta.push(("xi-min".into(), self.xi_min.to_string()));
        meta.push(("xi-max".into(), self.xi_max.to_string()));
        meta.push(("xi-steps".into(), self.xi_steps.to_string()));
    }
}

/// A block of numeric rows with named columns and key/value metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
    pub meta: Vec<(String, String)>,
}

struct Row<'a>(&'a [&'static str], &'a [f64]);

impl Serialize for Row<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0.iter().zip(self.1) {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

struct Meta<'a>(&'a [(String, String)]);

impl Serialize for Meta<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct Document<'a> {
    meta: Meta<'a>,
    rows: Vec<Row<'a>>,
}

impl Table {
    /// `#`-prefixed metadata lines, a header row, then one line per row. Numbers
    /// use the shortest representation that parses back to the same `f64`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            let _ = writeln!(out, "# {k}: {v}");
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let doc = Document {
            meta: Meta(&self.meta),
            rows: self.rows.iter().map(|r| Row(&self.columns, r)).collect(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("finite table serializes");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

fn base_meta(config: &SweepConfig, mode: &str) -> Vec<(String, String)> {
    let mut meta = vec![
        (
            "tool".to_string(),
            format!("wigner-spin {}", env!("CARGO_PKG_VERSION")),
        ),
        ("mode".to_string(), mode.to_string()),
    ];
    if config.timestamp {
        let secs = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        meta.push(("generated-unix-time".into(), secs.to_string()));
    }
    meta
}

/// `omega(theta)` over `steps` angles spanning [0, 180] degrees.
pub fn wigner_angle_table(config: &SweepConfig, v1: f64, v2: f64) -> Result<Table, CliError> {
    let mut meta = base_meta(config, Mode::WignerAngle.name());
    meta.push(("v1".into(), v1.to_string()));
    meta.push(("v2".into(), v2.to_string()));
    meta.push(("theta-steps".into(), config.theta_steps.to_string()));
    let last = (config.theta_steps - 1) as f64;
    let rows = (0..config.theta_steps)
        .map(|i| {
            let deg = 180.0 * i as f64 / last;
            let omega = wigner_angle(BoostPair::new(v1, v2, deg.to_radians())?);
            Ok(vec![deg, v1, v2, omega.to_degrees()])
        })
        .collect::<Result<_, crate::Error>>()?;
    Ok(Table {
        columns: vec!["theta_deg", "v1", "v2", "omega_deg"],
        rows,
        meta,
    })
}

/// Spin entropy of the Gaussian packet over the configured rapidity grid.
pub fn entropy_curve_table(
    config: &SweepConfig,
    v1: f64,
    theta_deg: f64,
) -> Result<Table, CliError> {
    let scenario = BoostScenario::new(
        v1,
        theta_deg.to_radians(),
        config.sigma,
        config.xi_values()?,
        config.nodes,
    )?;
    let curve = entropy_curve(&scenario)?;
    let mut meta = base_meta(config, Mode::EntropyCurve.name());
    meta.push(("v1".into(), v1.to_string()));
    meta.push(("theta-deg".into(), theta_deg.to_string()));
    meta.push(("sigma".into(), config.sigma.to_string()));
    config.xi_meta(&mut meta);
    meta.push((
        "grid".into(),
        format!(
            "nodes_per_axis={} extent_sigmas={}",
            config.nodes, DEFAULT_EXTENT_SIGMAS
        ),
    ));
    let rows = curve
        .points
        .iter()
        .map(|p| vec![p.xi, p.v2, p.entropy])
        .collect();
    Ok(Table {
        columns: vec!["xi", "v2", "entropy"],
        rows,
        meta,
    })
}

/// The two-point field, evaluated both in closed form and by the matrix sum.
pub fn two_point_table(config: &SweepConfig, v1: f64, theta_deg: f64) -> Result<Table, CliError> {
    let theta = theta_deg.to_radians();
    let mut meta = base_meta(config, Mode::TwoPoint.name());
    meta.push(("v1".into(), v1.to_string()));
    meta.push(("theta-deg".into(), theta_deg.to_string()));
    config.xi_meta(&mut meta);
    let rows = config
        .xi_values()?
        .into_iter()
        .map(|xi| {
            Ok(vec![
                xi,
                xi.tanh(),
                two_point_wigner_angle(v1, theta, xi)?.to_degrees(),
                two_point_entropy_closed_form(v1, theta, xi)?,
                two_point_entropy(v1, theta, xi)?,
            ])
        })
        .collect::<Result<_, crate::Error>>()?;
    Ok(Table {
        columns: vec![
            "xi",
            "v2",
            "omega_deg",
            "entropy_closed_form",
            "entropy_matrix",
        ],
        rows,
        meta,
    })
}

/// One scenario of a figure preset.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureScenario {
    pub file_stem: String,
    pub v1: f64,
    pub theta_deg: f64,
    /// Parameters stated with the original figure, as opposed to representative choices.
    pub stated: bool,
}

/// The scenarios a figure preset expands to.
pub fn figure_scenarios(figure: Figure, config: &SweepConfig) -> Vec<FigureScenario> {
    let sc = |stem: String, v1, theta_deg, stated| FigureScenario {
        file_stem: stem,
        v1,
        theta_deg,
        stated,
    };
    match figure {
        Figure::Fig1 => [0.5, 0.9, 0.985]
            .into_iter()
            .map(|v| sc(format!("fig1_v{v}"), v, 0.0, true))
            .collect(),
        Figure::Fig2a => [(45.0, false), (90.0, true), (135.0, false)]
            .into_iter()
            .map(|(t, stated)| sc(format!("fig2a_theta{t}"), 0.985, t, stated))
            .collect(),
        Figure::Fig2b => vec![
            sc("fig2b_theta161_v0.999".into(), 0.999, 161.0, true),
            sc(
                format!("fig2b_theta{}_v0.99995", config.theta_f_deg),
                0.99995,
                config.theta_f_deg,
                false,
            ),
        ],
    }
}

fn figure_table(
    figure: Figure,
    s: &FigureScenario,
    config: &SweepConfig,
) -> Result<Table, CliError> {
    let mut table = match figure {
        Figure::Fig1 => wigner_angle_table(config, s.v1, s.v1)?,
        Figure::Fig2a | Figure::Fig2b => entropy_curve_table(config, s.v1, s.theta_deg)?,
    };
    let preset = if s.stated {
        "stated"
    } else {
        "representative choice, not stated with the figure"
    };
    table
        .meta
        .insert(2, ("figure".into(), figure.name().into()));
    table.meta.insert(3, ("preset".into(), preset.into()));
    Ok(table)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Files(Vec<PathBuf>),
    Stdout(String),
}

/// Executes a validated configuration.
pub fn run(config: &SweepConfig) -> Result<Output, CliError> {
    config.validate()?;
    let table = match config.mode {
        Mode::WignerAngle => wigner_angle_table(config, config.v1, config.v2.unwrap_or(config.v1))?,
        Mode::EntropyCurve => entropy_curve_table(config, config.v1, config.theta_deg)?,
        Mode::TwoPoint => two_point_table(config, config.v1, config.theta_deg)?,
        Mode::Figure => {
            let figure = config.figure.expect("validated");
            let dir = config.output.as_deref().expect("validated");
            fs::create_dir_all(dir).map_err(|source| CliError::Io {
                path: dir.to_path_buf(),
                source,
            })?;
            let mut written = Vec::new();
            for s in figure_scenarios(figure, config) {
                let table = figure_table(figure, &s, config)?;
                let path = dir.join(format!("{}.{}", s.file_stem, config.format.extension()));
                write_file(&path, &table.render(config.format))?;
                written.push(path);
            }
            return Ok(Output::Files(written));
        }
    };
    let text = table.render(config.format);
    match &config.output {
        Some(path) => {
            write_file(path, &text)?;
            Ok(Output::Files(vec![path.clone()]))
        }
        None => Ok(Output::Stdout(text)),
    }
}

/// Parses, runs and reports; returns the process exit status.
pub fn main_with_args<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = parse_config(args).and_then(|c| run(&c));
    match result {
        Ok(Output::Stdout(text)) => {
            print!("{text}");
            EXIT_OK
        }
        Ok(Output::Files(paths)) => {
            for p in paths {
                eprintln!("wrote {}", p.display());
            }
            EXIT_OK
        }
        Err(e) => {
            eprintln!("wigner-spin: {e}");
            e.exit_code()
        }
    }
}

//! Command-line flags, the JSON config file, and the validated [`RunConfig`].

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use pdm_core::{
    AmbiguityOrdering, Axial, AxialModel, FormulaVariant, Ordering, OrderingPreset, QuantumRanges,
    Radial, RadialModel,
};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "pdm-spectra",
    version,
    about = "Spectra of position-dependent-mass Schrödinger problems in cylindrical coordinates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArgs,
}

#[derive(Debug, Subcommand)]
pub enum CommandArgs {
    /// Closed-form energy table for one radial x axial model.
    Spectrum(ModelArgs),
    /// Finite-difference check of the radial, axial or composite claims.
    Verify {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        verify: VerifyArgs,
    },
    /// One energy table per value of a swept parameter.
    Sweep {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        sweep: SweepArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RadialKind {
    Coulomb,
    Oscillator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AxialKind {
    Well,
    Morse,
    Scarf2,
    Samsonov,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VariantArg {
    Paper,
    Standard,
}

impl From<VariantArg> for FormulaVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Paper => FormulaVariant::Paper,
            VariantArg::Standard => FormulaVariant::Standard,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Radial,
    Axial,
    Composite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum SweepParam {
    #[value(name = "L")]
    #[serde(rename = "L")]
    L,
    #[value(name = "D")]
    #[serde(rename = "D")]
    D,
    #[value(name = "eps")]
    #[serde(rename = "eps")]
    Eps,
    #[value(name = "A")]
    #[serde(rename = "A")]
    A,
    #[value(name = "a")]
    #[serde(rename = "a")]
    SmallA,
    #[value(name = "ordering")]
    #[serde(rename = "ordering")]
    Ordering,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::L => "L",
            SweepParam::D => "D",
            SweepParam::Eps => "eps",
            SweepParam::A => "A",
            SweepParam::SmallA => "a",
            SweepParam::Ordering => "ordering",
        }
    }
}

/// Flags shared by every subcommand. All optional so a config file can fill them.
#[derive(Debug, Clone, Default, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub radial: Option<RadialKind>,
    /// Oscillator strength a.
    #[arg(long = "a")]
    pub a: Option<f64>,
    #[arg(long, value_enum)]
    pub axial: Option<AxialKind>,
    /// Well length L.
    #[arg(long = "L")]
    pub length: Option<f64>,
    /// Morse depth D.
    #[arg(long = "D")]
    pub depth: Option<f64>,
    /// Morse width ε.
    #[arg(long = "eps")]
    pub eps: Option<f64>,
    /// Scarf II strength A.
    #[arg(long = "A")]
    pub scarf_a: Option<f64>,
    /// Preset name or explicit triple "alpha,beta,gamma".
    #[arg(long, allow_hyphen_values = true)]
    pub ordering: Option<String>,
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,
    #[arg(long = "nrho-max")]
    pub nrho_max: Option<u32>,
    #[arg(long = "m-max")]
    pub m_max: Option<u32>,
    #[arg(long = "nz-max")]
    pub nz_max: Option<u32>,
    #[arg(long = "grid-points")]
    pub grid_points: Option<usize>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON file with the same keys as the flags; flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub target: Option<Target>,
    /// Radial index ℓ for radial targets.
    #[arg(long, allow_hyphen_values = true)]
    pub ell: Option<f64>,
    /// Number of states to compare.
    #[arg(long = "n-max")]
    pub n_max: Option<usize>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SweepArgs {
    #[arg(long = "sweep", value_enum)]
    pub param: Option<SweepParam>,
    /// Comma-separated numbers; for orderings, preset names or triples separated by ";" or "all".
    #[arg(long, allow_hyphen_values = true)]
    pub values: Option<String>,
    /// Arithmetic range "start:stop:step", inclusive of stop.
    #[arg(long, allow_hyphen_values = true)]
    pub range: Option<String>,
}

/// Ordering as written in a config file: a preset name or a triple.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OrderingSpec {
    Name(String),
    Triple([f64; 3]),
}

/// Contents of a `--config` file. Keys mirror the flag names.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub radial: Option<RadialKind>,
    pub a: Option<f64>,
    pub axial: Option<AxialKind>,
    #[serde(rename = "L")]
    pub length: Option<f64>,
    #[serde(rename = "D")]
    pub depth: Option<f64>,
    pub eps: Option<f64>,
    #[serde(rename = "A")]
    pub scarf_a: Option<f64>,
    pub ordering: Option<OrderingSpec>,
    pub variant: Option<VariantArg>,
    pub nrho_max: Option<u32>,
    pub m_max: Option<u32>,
    pub nz_max: Option<u32>,
    pub grid_points: Option<usize>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub target: Option<Target>,
    pub ell: Option<f64>,
    pub n_max: Option<usize>,
    pub sweep: Option<SweepParam>,
    pub values: Option<Vec<serde_json::Value>>,
    pub range: Option<String>,
}

impl ConfigFile {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("bad config file {}: {e}", path.display())))
    }
}

/// A validated ordering together with how it was named.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderingChoice {
    pub preset: Option<OrderingPreset>,
    pub ordering: Ordering,
}

impl OrderingChoice {
    pub fn preset(p: OrderingPreset) -> Self {
        Self {
            preset: Some(p),
            ordering: p.ordering(),
        }
    }

    pub fn label(&self) -> String {
        match self.preset {
            Some(p) => p.name().to_string(),
            None => "custom".to_string(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        if let Some(p) = OrderingPreset::lookup(text) {
            return Ok(Self::preset(p));
        }
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(CliError::Config(format!(
                "unknown ordering `{text}`: expected a preset name or alpha,beta,gamma"
            )));
        }
        let mut triple = [0.0; 3];
        for (slot, part) in triple.iter_mut().zip(&parts) {
            *slot = part
                .parse()
                .map_err(|_| CliError::Config(format!("bad ordering component `{part}`")))?;
        }
        Self::from_triple(triple)
    }

    pub fn from_triple([a, b, g]: [f64; 3]) -> Result<Self, CliError> {
        let ordering =
            AmbiguityOrdering::new(a, b, g).map_err(|e| CliError::Config(e.to_string()))?;
        Ok(Self {
            preset: None,
            ordering,
        })
    }

    fn from_spec(spec: &OrderingSpec) -> Result<Self, CliError> {
        match spec {
            OrderingSpec::Name(n) => Self::parse(n),
            OrderingSpec::Triple(t) => Self::from_triple(*t),
        }
    }
}

/// Every model parameter, before the model is built.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub radial: RadialKind,
    pub a: f64,
    pub axial: AxialKind,
    pub length: f64,
    pub depth: f64,
    pub eps: f64,
    pub scarf_a: f64,
}

impl ModelParams {
    pub fn radial_model(&self) -> Result<Radial, pdm_core::Error> {
        match self.radial {
            RadialKind::Coulomb => Ok(RadialModel::Coulombic),
            RadialKind::Oscillator => RadialModel::oscillator(self.a),
        }
    }

    pub fn axial_model(&self) -> Result<Axial, pdm_core::Error> {
        match self.axial {
            AxialKind::Well => AxialModel::infinite_well(self.length),
            AxialKind::Morse => AxialModel::morse(self.depth, self.eps),
            AxialKind::Scarf2 => AxialModel::scarf2(self.scarf_a),
            AxialKind::Samsonov => Ok(AxialModel::Samsonov),
        }
    }

    /// Copy with one numeric parameter replaced.
    pub fn with(&self, param: SweepParam, value: f64) -> Self {
        let mut p = *self;
        match param {
            SweepParam::L => p.length = value,
            SweepParam::D => p.depth = value,
            SweepParam::Eps => p.eps = value,
            SweepParam::A => p.scarf_a = value,
            SweepParam::SmallA => p.a = value,
            SweepParam::Ordering => {}
        }
        p
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SweepValues {
    Numbers(Vec<f64>),
    Orderings(Vec<OrderingChoice>),
}

impl SweepValues {
    pub fn len(&self) -> usize {
        match self {
            SweepValues::Numbers(v) => v.len(),
            SweepValues::Orderings(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Spectrum,
    Verify {
        target: Target,
        ell: Option<f64>,
        n_max: Option<usize>,
    },
    Sweep {
        param: SweepParam,
        values: SweepValues,
    },
}

/// Fully validated run description.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub model: ModelParams,
    pub ordering: OrderingChoice,
    pub variant: FormulaVariant,
    pub ranges: QuantumRanges,
    pub grid_points: Option<usize>,
    pub format: Format,
    pub out: Option<PathBuf>,
}

fn parse_numbers(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| CliError::Config(format!("bad sweep value `{s}`")))
        })
        .collect()
}

fn parse_range(text: &str) -> Result<Vec<f64>, CliError> {
    let parts = parse_numbers(&text.replace(':', ","))?;
    let [start, stop, step] = parts[..] else {
        return Err(CliError::Config(format!(
            "range must be start:stop:step, got `{text}`"
        )));
    };
    if !(step > 0.0 && step.is_finite() && stop >= start) {
        return Err(CliError::Config(format!(
            "range `{text}` needs step > 0 and stop >= start"
        )));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    if count > 10_000 {
        return Err(CliError::Config(format!(
            "range `{text}` has {count} points; limit is 10000"
        )));
    }
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}

fn parse_orderings(items: &[String]) -> Result<Vec<OrderingChoice>, CliError> {
    let mut out = Vec::new();
    for item in items {
        if item.eq_ignore_ascii_case("all") {
            out.extend(OrderingPreset::ALL.into_iter().map(OrderingChoice::preset));
        } else {
            out.push(OrderingChoice::parse(item)?);
        }
    }
    Ok(out)
}

fn json_sweep_items(values: &[serde_json::Value]) -> Result<Vec<String>, CliError> {
    values
        .iter()
        .map(|v| match v {
            serde_json::Value::String(s) => Ok(s.clone()),
            serde_json::Value::Number(n) => Ok(n.to_string()),
            serde_json::Value::Array(t) if t.len() == 3 => Ok(t
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")),
            other => Err(CliError::Config(format!("bad sweep value {other}"))),
        })
        .collect()
}

fn split_top_level(text: &str, ordering: bool) -> Vec<String> {
    if !ordering {
        return vec![text.to_string()];
    }
    // Triples contain commas themselves; orderings in --values are separated by ';'.
    text.split(';')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let (model_args, verify_args, sweep_args, kind) = match cli.command {
            CommandArgs::Spectrum(m) => (m, VerifyArgs::default(), SweepArgs::default(), 0),
            CommandArgs::Verify { model, verify } => (model, verify, SweepArgs::default(), 1),
            CommandArgs::Sweep { model, sweep } => (model, VerifyArgs::default(), sweep, 2),
        };
        let file = match &model_args.config {
            Some(path) => ConfigFile::read(path)?,
            None => ConfigFile::default(),
        };
        Self::merge(kind, model_args, verify_args, sweep_args, file)
    }

    fn merge(
        kind: u8,
        m: ModelArgs,
        v: VerifyArgs,
        s: SweepArgs,
        f: ConfigFile,
    ) -> Result<Self, CliError> {
        let model = ModelParams {
            radial: m.radial.or(f.radial).unwrap_or(RadialKind::Coulomb),
            a: m.a.or(f.a).unwrap_or(1.0),
            axial: m.axial.or(f.axial).unwrap_or(AxialKind::Well),
            length: m.length.or(f.length).unwrap_or(PI),
            depth: m.depth.or(f.depth).unwrap_or(25.0),
            eps: m.eps.or(f.eps).unwrap_or(1.0),
            scarf_a: m.scarf_a.or(f.scarf_a).unwrap_or(5.0),
        };
        let ordering = match (&m.ordering, &f.ordering) {
            (Some(text), _) => OrderingChoice::parse(text)?,
            (None, Some(spec)) => OrderingChoice::from_spec(spec)?,
            (None, None) => OrderingChoice::preset(OrderingPreset::BenDanielDuke),
        };
        let variant = m
            .variant
            .or(f.variant)
            .map_or(FormulaVariant::Paper, Into::into);
        let ranges = QuantumRanges {
            n_rho_max: m.nrho_max.or(f.nrho_max).unwrap_or(2),
            m_max: m.m_max.or(f.m_max).unwrap_or(2),
            n_z_max: m.nz_max.or(f.nz_max).unwrap_or(3),
        };
        let grid_points = m.grid_points.or(f.grid_points);
        if let Some(n) = grid_points {
            if n < pdm_core::oracle::Discretization::<f64>::MIN_POINTS {
                return Err(CliError::Config(format!(
                    "--grid-points must be at least 16, got {n}"
                )));
            }
        }
        let format = m.format.or(f.format).unwrap_or_default();
        let out = m.out.or(f.out);

        let command = match kind {
            0 => Command::Spectrum,
            1 => {
                let target = v.target.or(f.target).ok_or_else(|| {
                    CliError::Config("verify needs --target radial|axial|composite".into())
                })?;
                if format == Format::Csv {
                    return Err(CliError::Config(
                        "verification reports are JSON only".into(),
                    ));
                }
                Command::Verify {
                    target,
                    ell: v.ell.or(f.ell),
                    n_max: v.n_max.or(f.n_max),
                }
            }
            _ => {
                let param = s
                    .param
                    .or(f.sweep)
                    .ok_or_else(|| CliError::Config("sweep needs --sweep <param>".into()))?;
                let is_ordering = param == SweepParam::Ordering;
                let items: Option<Vec<String>> = match (&s.values, &f.values) {
                    (Some(text), _) => Some(split_top_level(text, is_ordering)),
                    (None, Some(vals)) => Some(json_sweep_items(vals)?),
                    (None, None) => None,
                };
                let range = s.range.or(f.range);
                let values = match (items, range, is_ordering) {
                    (Some(items), _, true) => SweepValues::Orderings(parse_orderings(&items)?),
                    (Some(items), _, false) => {
                        let mut nums = Vec::new();
                        for item in &items {
                            nums.extend(parse_numbers(item)?);
                        }
                        SweepValues::Numbers(nums)
                    }
                    (None, Some(r), false) => SweepValues::Numbers(parse_range(&r)?),
                    (None, Some(_), true) => {
                        return Err(CliError::Config(
                            "orderings cannot be swept over a range".into(),
                        ))
                    }
                    (None, None, _) => {
                        return Err(CliError::Config("sweep needs --values or --range".into()))
                    }
                };
                if values.is_empty() {
                    return Err(CliError::Config("sweep list is empty".into()));
                }
                Command::Sweep { param, values }
            }
        };

        Ok(Self {
            command,
            model,
            ordering,
            variant,
            ranges,
            grid_points,
            format,
            out,
        })
    }
}

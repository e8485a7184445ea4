//! Serialized documents. Every float is rounded to 12 significant digits
//! before it is stored, so writing, reading and writing again is byte-stable.

use std::io::Write;

use num_complex::Complex64;
use pdm_core::composite::CompositeReport;
use pdm_core::oracle::{Tolerance, VerificationReport};
use pdm_core::{FormulaVariant, Level, Table};
use serde::{Deserialize, Serialize};

use crate::config::{AxialKind, ModelParams, OrderingChoice, RadialKind};
use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// Rounds to 12 significant digits; −0 becomes 0 and non-finite values pass through.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let y: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if y == 0.0 {
        0.0
    } else {
        y
    }
}

fn opt12(x: Option<f64>) -> Option<f64> {
    x.map(round12).filter(|v| v.is_finite())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RadialDoc {
    Coulomb,
    Oscillator { a: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AxialDoc {
    Well {
        #[serde(rename = "L")]
        length: f64,
    },
    Morse {
        #[serde(rename = "D")]
        depth: f64,
        eps: f64,
    },
    Scarf2 {
        #[serde(rename = "A")]
        a: f64,
    },
    Samsonov,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelDoc {
    pub radial: RadialDoc,
    pub axial: AxialDoc,
}

impl ModelDoc {
    pub fn new(p: &ModelParams) -> Self {
        let radial = match p.radial {
            RadialKind::Coulomb => RadialDoc::Coulomb,
            RadialKind::Oscillator => RadialDoc::Oscillator { a: round12(p.a) },
        };
        let axial = match p.axial {
            AxialKind::Well => AxialDoc::Well {
                length: round12(p.length),
            },
            AxialKind::Morse => AxialDoc::Morse {
                depth: round12(p.depth),
                eps: round12(p.eps),
            },
            AxialKind::Scarf2 => AxialDoc::Scarf2 {
                a: round12(p.scarf_a),
            },
            AxialKind::Samsonov => AxialDoc::Samsonov,
        };
        Self { radial, axial }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderingDoc {
    pub name: String,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub zeta: f64,
}

impl OrderingDoc {
    pub fn new(choice: &OrderingChoice) -> Self {
        let o = &choice.ordering;
        Self {
            name: choice.label(),
            alpha: round12(o.alpha()),
            beta: round12(o.beta()),
            gamma: round12(o.gamma()),
            zeta: round12(o.zeta()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelDoc {
    pub n_rho: u32,
    pub m: i32,
    pub n_z: u32,
    #[serde(rename = "E_re")]
    pub e_re: f64,
    #[serde(rename = "E_im")]
    pub e_im: f64,
    pub kz2_re: f64,
    pub kz2_im: f64,
    pub flags: Vec<String>,
}

impl LevelDoc {
    pub fn new(level: &Level) -> Self {
        Self {
            n_rho: level.labels.n_rho,
            m: level.labels.m,
            n_z: level.labels.n_z,
            e_re: round12(level.value.re),
            e_im: round12(level.value.im),
            kz2_re: round12(level.kz2.re),
            kz2_im: round12(level.kz2.im),
            flags: level.flags.iter().map(|f| f.as_str().to_string()).collect(),
        }
    }
}

/// Output of `spectrum`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumDoc {
    pub schema: u32,
    pub model: ModelDoc,
    pub ordering: OrderingDoc,
    pub variant: String,
    pub levels: Vec<LevelDoc>,
    pub skipped: Vec<String>,
}

impl SpectrumDoc {
    pub fn new(
        params: &ModelParams,
        ordering: &OrderingChoice,
        variant: FormulaVariant,
        table: &Table,
    ) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            model: ModelDoc::new(params),
            ordering: OrderingDoc::new(ordering),
            variant: variant.as_str().to_string(),
            levels: table.levels.iter().map(LevelDoc::new).collect(),
            skipped: table.skipped.iter().map(|s| s.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SweepValueDoc {
    Number(f64),
    Name(String),
}

impl std::fmt::Display for SweepValueDoc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SweepValueDoc::Number(x) => write!(f, "{x}"),
            SweepValueDoc::Name(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPointDoc {
    pub value: SweepValueDoc,
    pub model: ModelDoc,
    pub ordering: OrderingDoc,
    pub levels: Vec<LevelDoc>,
    pub skipped: Vec<String>,
    pub error: Option<String>,
}

/// Output of `sweep`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepDoc {
    pub schema: u32,
    pub parameter: String,
    pub variant: String,
    pub points: Vec<SweepPointDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexDoc {
    fn from(z: Complex64) -> Self {
        Self {
            re: round12(z.re),
            im: round12(z.im),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviationDoc {
    pub abs: f64,
    pub rel: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrackedDoc {
    pub label: String,
    pub numeric: ComplexDoc,
    pub paper: Option<ComplexDoc>,
    pub standard: Option<ComplexDoc>,
    pub paper_deviation: Option<DeviationDoc>,
    pub standard_deviation: Option<DeviationDoc>,
    pub convergence_ratio: Option<f64>,
    pub boundary_amplitude: Option<f64>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridDoc {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
    pub ladder: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ToleranceDoc {
    Relative { value: f64 },
    Absolute { value: f64, max_imag: Option<f64> },
}

/// Output of `verify --target radial|axial`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationDoc {
    pub schema: u32,
    pub kind: String,
    pub model: String,
    pub grid: GridDoc,
    pub variant: String,
    pub tolerance: ToleranceDoc,
    pub passed: bool,
    pub levels: Vec<TrackedDoc>,
    pub numeric: Vec<ComplexDoc>,
    pub neighborhood: Vec<ComplexDoc>,
    pub conjugation_defect: Option<f64>,
    pub warnings: Vec<String>,
}

fn deviation(
    level: &pdm_core::oracle::TrackedLevel<f64>,
    v: FormulaVariant,
) -> Option<DeviationDoc> {
    level.deviation(v).map(|(abs, rel)| DeviationDoc {
        abs: round12(abs),
        rel: round12(rel),
    })
}

impl VerificationDoc {
    pub fn new(report: &VerificationReport<f64>) -> Self {
        let levels = report
            .levels
            .iter()
            .map(|l| TrackedDoc {
                label: l.label.clone(),
                numeric: l.numeric.into(),
                paper: l.paper.map(Into::into),
                standard: l.standard.map(Into::into),
                paper_deviation: deviation(l, FormulaVariant::Paper),
                standard_deviation: deviation(l, FormulaVariant::Standard),
                convergence_ratio: opt12(l.convergence_ratio),
                boundary_amplitude: opt12(l.boundary_amplitude),
                passed: report.level_passes(l),
            })
            .collect();
        let tolerance = match report.tolerance {
            Tolerance::Relative(value) => ToleranceDoc::Relative { value },
            Tolerance::Absolute { value, max_imag } => ToleranceDoc::Absolute { value, max_imag },
        };
        Self {
            schema: SCHEMA_VERSION,
            kind: "verification".into(),
            model: report.model.clone(),
            grid: GridDoc {
                x_min: round12(report.grid.x_min()),
                x_max: round12(report.grid.x_max()),
                n_points: report.grid.n_points(),
                ladder: report.ladder.to_vec(),
            },
            variant: report.variant.as_str().into(),
            tolerance,
            passed: report.passes(),
            levels,
            numeric: report.numeric.iter().map(|z| (*z).into()).collect(),
            neighborhood: report.neighborhood.iter().map(|z| (*z).into()).collect(),
            conjugation_defect: opt12(report.conjugation_defect),
            warnings: report.warnings.clone(),
        }
    }

    /// Report for a run whose eigensolver gave up, carrying what it found.
    pub fn failed(
        model: String,
        grid: GridDoc,
        variant: FormulaVariant,
        found: &[Complex64],
        why: String,
    ) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            kind: "verification".into(),
            model,
            grid,
            variant: variant.as_str().into(),
            tolerance: ToleranceDoc::Relative { value: 0.0 },
            passed: false,
            levels: Vec::new(),
            numeric: found.iter().map(|z| (*z).into()).collect(),
            neighborhood: Vec::new(),
            conjugation_defect: None,
            warnings: vec![why],
        }
    }
}

/// Output of `verify --target composite`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompositeDoc {
    pub schema: u32,
    pub kind: String,
    pub model: String,
    pub ordering: OrderingDoc,
    pub ell: f64,
    pub kz: f64,
    pub energy: ComplexDoc,
    pub fitted_energy: ComplexDoc,
    pub grids: Vec<[usize; 2]>,
    pub residuals: Vec<f64>,
    pub ratios: Vec<f64>,
    pub window: [f64; 2],
    pub passed: bool,
}

impl CompositeDoc {
    pub fn new(
        report: &CompositeReport<f64>,
        ordering: &OrderingChoice,
        window: (f64, f64),
    ) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            kind: "composite".into(),
            model: report.model.clone(),
            ordering: OrderingDoc::new(ordering),
            ell: round12(report.state.ell),
            kz: round12(report.state.kz),
            energy: report.energy.into(),
            fitted_energy: report.fitted_energy.into(),
            grids: report.grids.iter().map(|(a, b)| [*a, *b]).collect(),
            residuals: report.residuals.iter().map(|r| round12(*r)).collect(),
            ratios: report.ratios.iter().map(|r| round12(*r)).collect(),
            window: [window.0, window.1],
            passed: report.ratios_within(window.0, window.1),
        }
    }
}

pub fn to_json<T: Serialize>(doc: &T) -> Result<String, CliError> {
    let mut text =
        serde_json::to_string_pretty(doc).map_err(|e| CliError::Output(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

pub fn read_spectrum(text: &str) -> Result<SpectrumDoc, CliError> {
    serde_json::from_str(text)
        .map_err(|e| CliError::Config(format!("not a spectrum document: {e}")))
}

const LEVEL_COLUMNS: [&str; 8] = [
    "n_rho", "m", "n_z", "E_re", "E_im", "kz2_re", "kz2_im", "flags",
];

fn level_record(l: &LevelDoc) -> Vec<String> {
    vec![
        l.n_rho.to_string(),
        l.m.to_string(),
        l.n_z.to_string(),
        l.e_re.to_string(),
        l.e_im.to_string(),
        l.kz2_re.to_string(),
        l.kz2_im.to_string(),
        l.flags.join(";"),
    ]
}

fn csv_error(e: impl std::fmt::Display) -> CliError {
    CliError::Output(e.to_string())
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w.into_inner().map_err(csv_error)?;
    String::from_utf8(bytes).map_err(csv_error)
}

pub fn spectrum_csv(doc: &SpectrumDoc) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(LEVEL_COLUMNS).map_err(csv_error)?;
    for l in &doc.levels {
        w.write_record(level_record(l)).map_err(csv_error)?;
    }
    finish_csv(w)
}

pub fn sweep_csv(doc: &SweepDoc) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec![doc.parameter.as_str()];
    header.extend(LEVEL_COLUMNS);
    w.write_record(&header).map_err(csv_error)?;
    for p in &doc.points {
        for l in &p.levels {
            let mut rec = vec![p.value.to_string()];
            rec.extend(level_record(l));
            w.write_record(&rec).map_err(csv_error)?;
        }
    }
    finish_csv(w)
}

/// Writes to `path`, or to stdout when there is none.
pub fn emit(text: &str, path: Option<&std::path::Path>) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::Output(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Output(e.to_string()))
        }
    }
}

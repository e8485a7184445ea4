use pdm_core::composite::{coulomb_well_convergence, default_composite_rho, CoulombWellState};
use pdm_core::oracle::{
    default_axial_grid, default_radial_grid, verify_axial, verify_radial, Discretization,
};
use pdm_core::{spectrum_table, AxialModel, Error, RadialModel};
use rayon::prelude::*;

use crate::config::{
    AxialKind, Command, Format, OrderingChoice, RadialKind, RunConfig, SweepParam, SweepValues,
    Target,
};
use crate::output::{
    emit, round12, spectrum_csv, sweep_csv, to_json, CompositeDoc, GridDoc, LevelDoc, ModelDoc,
    OrderingDoc, SpectrumDoc, SweepDoc, SweepPointDoc, SweepValueDoc, VerificationDoc,
};
use crate::{CliError, ExitStatus};

/// Window the composite residual ratios must fall in for `verify` to pass.
pub const COMPOSITE_WINDOW: (f64, f64) = (3.6, 4.4);

pub fn run(cfg: &RunConfig) -> Result<ExitStatus, CliError> {
    match &cfg.command {
        Command::Spectrum => cmd_spectrum(cfg),
        Command::Verify { target, ell, n_max } => cmd_verify(cfg, *target, *ell, *n_max),
        Command::Sweep { param, values } => cmd_sweep(cfg, *param, values),
    }
}

fn config_error(e: Error) -> CliError {
    CliError::Config(e.to_string())
}

pub fn cmd_spectrum(cfg: &RunConfig) -> Result<ExitStatus, CliError> {
    let radial = cfg.model.radial_model().map_err(config_error)?;
    let axial = cfg.model.axial_model().map_err(config_error)?;
    let table = spectrum_table(
        &radial,
        &axial,
        &cfg.ordering.ordering,
        cfg.ranges,
        cfg.variant,
    );
    let doc = SpectrumDoc::new(&cfg.model, &cfg.ordering, cfg.variant, &table);
    let text = match cfg.format {
        Format::Json => to_json(&doc)?,
        Format::Csv => spectrum_csv(&doc)?,
    };
    emit(&text, cfg.out.as_deref())?;
    Ok(if doc.levels.is_empty() {
        ExitStatus::Empty
    } else {
        ExitStatus::Pass
    })
}

fn grid_doc(disc: &Discretization<f64>) -> GridDoc {
    GridDoc {
        x_min: round12(disc.x_min()),
        x_max: round12(disc.x_max()),
        n_points: disc.n_points(),
        ladder: disc.ladder().iter().map(|d| d.n_points()).collect(),
    }
}

pub fn cmd_verify(
    cfg: &RunConfig,
    target: Target,
    ell: Option<f64>,
    n_max: Option<usize>,
) -> Result<ExitStatus, CliError> {
    let (text, passed) = match target {
        Target::Radial => {
            let model = cfg.model.radial_model().map_err(config_error)?;
            let (default_ell, default_points) = match model {
                RadialModel::Coulombic => (0.5, 8000),
                RadialModel::Oscillator { .. } => (1.0, 4000),
            };
            let disc = default_radial_grid(&model, cfg.grid_points.unwrap_or(default_points))
                .map_err(config_error)?;
            let result = verify_radial(
                &model,
                ell.unwrap_or(default_ell),
                n_max.unwrap_or(3),
                &disc,
                cfg.variant,
            );
            verification_output(result, format!("radial {:?}", cfg.model.radial), &disc, cfg)?
        }
        Target::Axial => {
            let model = cfg.model.axial_model().map_err(config_error)?;
            let (default_n, default_points) = match model {
                AxialModel::InfiniteWell { .. } | AxialModel::Morse { .. } => (3, 4000),
                AxialModel::ScarfII { .. } => (2, 2000),
                AxialModel::Samsonov => (4, 2000),
            };
            let disc = default_axial_grid(&model, cfg.grid_points.unwrap_or(default_points))
                .map_err(config_error)?;
            let result = verify_axial(&model, n_max.unwrap_or(default_n), &disc, cfg.variant);
            verification_output(result, format!("axial {:?}", cfg.model.axial), &disc, cfg)?
        }
        Target::Composite => {
            if cfg.model.radial != RadialKind::Coulomb || cfg.model.axial != AxialKind::Well {
                return Err(CliError::Config(
                    "composite verification is available for --radial coulomb --axial well".into(),
                ));
            }
            let state = CoulombWellState::new(cfg.model.length, 1, 0).map_err(config_error)?;
            let base = cfg.grid_points.unwrap_or(63);
            let rho = default_composite_rho(base).map_err(config_error)?;
            let report = coulomb_well_convergence(&state, &cfg.ordering.ordering, rho, base)
                .map_err(config_error)?;
            let doc = CompositeDoc::new(&report, &cfg.ordering, COMPOSITE_WINDOW);
            (to_json(&doc)?, doc.passed)
        }
    };
    emit(&text, cfg.out.as_deref())?;
    Ok(if passed {
        ExitStatus::Pass
    } else {
        ExitStatus::Deviation
    })
}

fn verification_output(
    result: pdm_core::Result<pdm_core::Report>,
    model: String,
    disc: &Discretization<f64>,
    cfg: &RunConfig,
) -> Result<(String, bool), CliError> {
    match result {
        Ok(report) => {
            let doc = VerificationDoc::new(&report);
            Ok((to_json(&doc)?, doc.passed))
        }
        Err(Error::NonConvergence { found }) => {
            let why = format!(
                "eigensolver did not converge; partial spectrum of {} values",
                found.len()
            );
            let doc = VerificationDoc::failed(model, grid_doc(disc), cfg.variant, &found, why);
            Ok((to_json(&doc)?, false))
        }
        Err(e) => Err(config_error(e)),
    }
}

/// Threads for sweeps: `PDM_SPECTRA_THREADS` if set to a positive integer.
pub fn sweep_threads() -> Option<usize> {
    std::env::var("PDM_SPECTRA_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|n| *n > 0)
}

fn sweep_point(cfg: &RunConfig, param: SweepParam, value: &SweepItem) -> SweepPointDoc {
    let (params, ordering, value_doc) = match value {
        SweepItem::Number(x) => (
            cfg.model.with(param, *x),
            cfg.ordering,
            SweepValueDoc::Number(round12(*x)),
        ),
        SweepItem::Ordering(o) => (cfg.model, *o, SweepValueDoc::Name(o.label_with_triple())),
    };
    let mut point = SweepPointDoc {
        value: value_doc,
        model: ModelDoc::new(&params),
        ordering: OrderingDoc::new(&ordering),
        levels: Vec::new(),
        skipped: Vec::new(),
        error: None,
    };
    let models = params
        .radial_model()
        .and_then(|r| Ok((r, params.axial_model()?)));
    match models {
        Ok((radial, axial)) => {
            let table =
                spectrum_table(&radial, &axial, &ordering.ordering, cfg.ranges, cfg.variant);
            point.levels = table.levels.iter().map(LevelDoc::new).collect();
            point.skipped = table.skipped.iter().map(|s| s.to_string()).collect();
        }
        Err(e) => point.error = Some(e.to_string()),
    }
    point
}

enum SweepItem {
    Number(f64),
    Ordering(OrderingChoice),
}

impl OrderingChoice {
    fn label_with_triple(&self) -> String {
        match self.preset {
            Some(p) => p.name().to_string(),
            None => {
                let o = &self.ordering;
                format!(
                    "{},{},{}",
                    round12(o.alpha()),
                    round12(o.beta()),
                    round12(o.gamma())
                )
            }
        }
    }
}

pub fn cmd_sweep(
    cfg: &RunConfig,
    param: SweepParam,
    values: &SweepValues,
) -> Result<ExitStatus, CliError> {
    let mut items: Vec<SweepItem> = match values {
        SweepValues::Numbers(v) => v.iter().map(|x| SweepItem::Number(*x)).collect(),
        SweepValues::Orderings(v) => v.iter().map(|o| SweepItem::Ordering(*o)).collect(),
    };
    if items.is_empty() {
        return Err(CliError::Config("sweep list is empty".into()));
    }
    items.sort_by(|a, b| match (a, b) {
        (SweepItem::Number(x), SweepItem::Number(y)) => x.total_cmp(y),
        _ => std::cmp::Ordering::Equal,
    });

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = sweep_threads() {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Output(e.to_string()))?;
    let points: Vec<SweepPointDoc> = pool.install(|| {
        items
            .par_iter()
            .map(|item| sweep_point(cfg, param, item))
            .collect()
    });

    let doc = SweepDoc {
        schema: crate::output::SCHEMA_VERSION,
        parameter: param.name().to_string(),
        variant: cfg.variant.as_str().to_string(),
        points,
    };
    let text = match cfg.format {
        Format::Json => to_json(&doc)?,
        Format::Csv => sweep_csv(&doc)?,
    };
    emit(&text, cfg.out.as_deref())?;
    Ok(if doc.points.iter().all(|p| p.levels.is_empty()) {
        ExitStatus::Empty
    } else {
        ExitStatus::Pass
    })
}

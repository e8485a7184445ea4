//! Numeric-versus-closed-form comparison reports.

use num_complex::Complex;

use crate::analytic::{kz2_axial, kz2_coulomb_internal, FormulaVariant};
use crate::error::{Error, Result};
use crate::model::{AxialModel, RadialModel};
use crate::oracle::complex::{conjugation_defect, eig_complex, eigenpair};
use crate::oracle::grid::{
    discretize_axial, discretize_radial, Discretization, TridiagonalOperator,
};
use crate::oracle::symmetric::eig_sym_tridiag;
use crate::scalar::{lit, Real};

/// Largest boundary amplitude (relative to the peak) accepted silently.
pub const BOUNDARY_AMPLITUDE_LIMIT: f64 = 1e-10;

/// Largest conjugation-closure defect accepted for PT-symmetric spectra.
pub const CONJUGATION_LIMIT: f64 = 1e-8;

/// Range a grid-halving error ratio of a second-order stencil should land in.
pub const CONVERGENCE_WINDOW: (f64, f64) = (3.6, 4.4);

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tolerance<T> {
    Relative(T),
    /// Absolute distance, plus an optional bound on |Im λ|.
    Absolute {
        value: T,
        max_imag: Option<T>,
    },
}

/// One eigenvalue tracked through the comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct TrackedLevel<T> {
    pub label: String,
    pub numeric: Complex<T>,
    pub paper: Option<Complex<T>>,
    pub standard: Option<Complex<T>>,
    /// (λ_coarse − λ_mid)/(λ_mid − λ_fine) over three halving grids.
    pub convergence_ratio: Option<T>,
    /// max(|v| at the truncation walls)/max|v| of the eigenvector.
    pub boundary_amplitude: Option<T>,
}

impl<T: Real> TrackedLevel<T> {
    pub fn analytic(&self, variant: FormulaVariant) -> Option<Complex<T>> {
        match variant {
            FormulaVariant::Paper => self.paper,
            FormulaVariant::Standard => self.standard,
        }
    }

    /// (absolute, relative) deviation of the numeric value from a variant.
    pub fn deviation(&self, variant: FormulaVariant) -> Option<(T, T)> {
        let target = self.analytic(variant)?;
        let abs = (self.numeric - target).norm();
        Some((abs, abs / target.norm()))
    }

    pub fn passes(&self, variant: FormulaVariant, tolerance: Tolerance<T>) -> bool {
        let Some((abs, rel)) = self.deviation(variant) else {
            return false;
        };
        match tolerance {
            Tolerance::Relative(tol) => rel <= tol,
            Tolerance::Absolute { value, max_imag } => {
                abs <= value && max_imag.is_none_or(|m| self.numeric.im.abs() < m)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport<T> {
    pub model: String,
    pub grid: Discretization<T>,
    /// Point counts of the halving ladder behind the convergence ratios.
    pub ladder: [usize; 3],
    pub variant: FormulaVariant,
    pub tolerance: Tolerance<T>,
    /// Lowest eigenvalues on `grid`, by real part.
    pub numeric: Vec<Complex<T>>,
    pub levels: Vec<TrackedLevel<T>>,
    /// Samsonov only: numeric eigenvalues near 1.0, reported without judgment.
    pub neighborhood: Vec<Complex<T>>,
    /// PT-symmetric models only: closure of the full spectrum under conjugation.
    pub conjugation_defect: Option<T>,
    pub warnings: Vec<String>,
}

impl<T: Real> VerificationReport<T> {
    pub fn level_passes(&self, level: &TrackedLevel<T>) -> bool {
        level.passes(self.variant, self.tolerance)
    }

    pub fn passes(&self) -> bool {
        let closed = self
            .conjugation_defect
            .is_none_or(|d| d <= lit(CONJUGATION_LIMIT));
        closed && !self.levels.is_empty() && self.levels.iter().all(|l| self.level_passes(l))
    }
}

fn real_values<T: Real>(op: &TridiagonalOperator<T>, k: usize) -> Result<Vec<Complex<T>>> {
    let k = k.min(op.len());
    if op.is_real_symmetric() {
        Ok(eig_sym_tridiag(op, k)?
            .into_iter()
            .map(|x| Complex::new(x, T::zero()))
            .collect())
    } else {
        eig_complex(op, k)
    }
}

fn nearest<T: Real>(values: &[Complex<T>], target: Complex<T>) -> Option<Complex<T>> {
    values.iter().copied().min_by(|a, b| {
        (*a - target)
            .norm()
            .partial_cmp(&(*b - target).norm())
            .unwrap_or(std::cmp::Ordering::Equal)
    })
}

fn ratio<T: Real>(coarse: Complex<T>, mid: Complex<T>, fine: Complex<T>) -> T {
    (coarse - mid).norm() / (mid - fine).norm()
}

fn boundary_amplitude<T: Real>(
    op: &TridiagonalOperator<T>,
    value: Complex<T>,
    left: bool,
    right: bool,
) -> Result<T> {
    let pair = eigenpair(op, value)?;
    let peak = pair.vector.iter().map(|z| z.norm()).fold(T::zero(), T::max);
    let mut edge = T::zero();
    if left {
        edge = edge.max(pair.vector[0].norm());
    }
    if right {
        edge = edge.max(pair.vector[pair.vector.len() - 1].norm());
    }
    Ok(edge / peak)
}

fn convergence_warnings<T: Real>(levels: &[TrackedLevel<T>], warnings: &mut Vec<String>) {
    let (lo, hi) = CONVERGENCE_WINDOW;
    for level in levels {
        if let Some(r) = level.convergence_ratio {
            if !(r >= lit(lo) && r <= lit(hi)) {
                warnings.push(format!(
                    "{}: convergence ratio {r} outside [{lo}, {hi}]",
                    level.label
                ));
            }
        }
        if let Some(a) = level.boundary_amplitude {
            if a > lit(BOUNDARY_AMPLITUDE_LIMIT) {
                warnings.push(format!(
                    "{}: boundary amplitude {a} exceeds {BOUNDARY_AMPLITUDE_LIMIT}; enlarge the box",
                    level.label
                ));
            }
        }
    }
}

/// Compares the radial finite-difference eigenvalues (≈ −K_z²) with both
/// variants for n_ρ = 0..n_max.
///
/// Coulomb: −(n_ρ+ℓ+1)⁻² (Paper) and −(n_ρ+ℓ+1/2)⁻² (Standard).
/// Oscillator: a(2n_ρ+ℓ+1) for both.
pub fn verify_radial<T: Real>(
    model: &RadialModel<T>,
    ell: T,
    n_max: usize,
    disc: &Discretization<T>,
    variant: FormulaVariant,
) -> Result<VerificationReport<T>> {
    if n_max == 0 {
        return Err(Error::InvalidEigenCount {
            requested: 0,
            size: disc.n_points(),
        });
    }
    let analytic = |n: usize, v: FormulaVariant| -> Result<Complex<T>> {
        let value = match model {
            RadialModel::Coulombic => -kz2_coulomb_internal(ell, n as u32, v)?,
            RadialModel::Oscillator { a } => a.get() * (lit::<T>(2.0 * n as f64 + 1.0) + ell),
        };
        Ok(Complex::new(value, T::zero()))
    };

    let op = discretize_radial(model, ell, disc)?;
    let numeric = real_values(&op, n_max + 2)?;
    let ladder = disc.ladder();
    let mut rungs = Vec::with_capacity(3);
    for d in &ladder {
        rungs.push(real_values(&discretize_radial(model, ell, d)?, n_max)?);
    }

    let mut levels = Vec::with_capacity(n_max);
    for n in 0..n_max.min(numeric.len()) {
        let value = numeric[n];
        levels.push(TrackedLevel {
            label: format!("n_rho={n}"),
            numeric: value,
            paper: Some(analytic(n, FormulaVariant::Paper)?),
            standard: Some(analytic(n, FormulaVariant::Standard)?),
            convergence_ratio: rungs
                .iter()
                .all(|r| r.len() > n)
                .then(|| ratio(rungs[0][n], rungs[1][n], rungs[2][n])),
            boundary_amplitude: Some(boundary_amplitude(&op, value, false, true)?),
        });
    }

    let mut warnings = Vec::new();
    convergence_warnings(&levels, &mut warnings);
    if ell < lit(0.5) {
        warnings.push(format!(
            "ell = {ell} < 1/2: expect slow convergence near the origin"
        ));
    }
    let model_name = match model {
        RadialModel::Coulombic => format!("radial coulomb ell={ell}"),
        RadialModel::Oscillator { a } => format!("radial oscillator a={} ell={ell}", a.get()),
    };
    Ok(VerificationReport {
        model: model_name,
        grid: *disc,
        ladder: ladder.map(|d| d.n_points()),
        variant,
        tolerance: Tolerance::Relative(lit(1e-3)),
        numeric,
        levels,
        neighborhood: Vec::new(),
        conjugation_defect: None,
        warnings,
    })
}

fn axial_tolerance<T: Real>(model: &AxialModel<T>) -> Tolerance<T> {
    match model {
        AxialModel::InfiniteWell { .. } => Tolerance::Relative(lit(1e-4)),
        AxialModel::Morse { .. } => Tolerance::Relative(lit(1e-3)),
        AxialModel::ScarfII { .. } => Tolerance::Absolute {
            value: lit(1e-2),
            max_imag: Some(lit(1e-6)),
        },
        AxialModel::Samsonov => Tolerance::Absolute {
            value: lit(1e-2),
            max_imag: None,
        },
    }
}

/// n_z with the paper and standard K_z², when defined.
type AxialTarget<T> = (u32, Option<Complex<T>>, Option<Complex<T>>);

/// The first `count` admissible axial quantum numbers with their K_z² per variant.
fn axial_targets<T: Real>(model: &AxialModel<T>, count: usize) -> Vec<AxialTarget<T>> {
    let mut out = Vec::with_capacity(count);
    let mut n_z = model.first_n_z();
    let mut misses = 0;
    while out.len() < count && misses < 4 {
        let paper = kz2_axial(model, n_z, FormulaVariant::Paper).ok();
        let standard = kz2_axial(model, n_z, FormulaVariant::Standard).ok();
        match (paper, standard) {
            (None, None) => misses += 1,
            (p, s) => {
                misses = 0;
                out.push((n_z, p, s));
            }
        }
        if matches!(model, AxialModel::ScarfII { a } if a.get() < lit(2.0)) {
            break;
        }
        n_z += 1;
    }
    out
}

/// Compares the axial finite-difference eigenvalues (≈ K_z²) with both
/// variants for the first `n_max` admissible n_z.
///
/// Real models pair the n-th numeric eigenvalue with the n-th state. The
/// PT-symmetric models pick the numeric eigenvalue nearest each closed form.
pub fn verify_axial<T: Real>(
    model: &AxialModel<T>,
    n_max: usize,
    disc: &Discretization<T>,
    variant: FormulaVariant,
) -> Result<VerificationReport<T>> {
    if n_max == 0 {
        return Err(Error::InvalidEigenCount {
            requested: 0,
            size: disc.n_points(),
        });
    }
    let op = discretize_axial(model, disc)?;
    let hermitian = model.is_hermitian();
    let targets = axial_targets(model, n_max);
    let mut warnings = Vec::new();
    if targets.len() < n_max {
        warnings.push(format!(
            "only {} admissible states exist below the requested {n_max}",
            targets.len()
        ));
    }

    let (numeric, full) = if hermitian {
        (real_values(&op, n_max + 2)?, None)
    } else {
        let all = eig_complex(&op, op.len())?;
        (all[..(n_max + 4).min(all.len())].to_vec(), Some(all))
    };
    let ladder = disc.ladder();
    let mut rungs = Vec::with_capacity(3);
    for d in &ladder {
        let rung_op = discretize_axial(model, d)?;
        rungs.push(real_values(&rung_op, (n_max + 4).min(rung_op.len()))?);
    }
    let truncated = matches!(model, AxialModel::Morse { .. } | AxialModel::ScarfII { .. });

    let mut levels = Vec::with_capacity(targets.len());
    for (i, (n_z, paper, standard)) in targets.iter().enumerate() {
        let anchor = match variant {
            FormulaVariant::Paper => paper.or(*standard),
            FormulaVariant::Standard => standard.or(*paper),
        };
        let pick = |values: &[Complex<T>]| -> Option<Complex<T>> {
            if hermitian {
                values.get(i).copied()
            } else {
                anchor.and_then(|a| nearest(values, a))
            }
        };
        let Some(value) = pick(&numeric) else {
            continue;
        };
        let picks: Vec<_> = rungs.iter().filter_map(|r| pick(r)).collect();
        levels.push(TrackedLevel {
            label: format!("n_z={n_z}"),
            numeric: value,
            paper: *paper,
            standard: *standard,
            convergence_ratio: (picks.len() == 3).then(|| ratio(picks[0], picks[1], picks[2])),
            boundary_amplitude: if truncated {
                Some(boundary_amplitude(&op, value, true, true)?)
            } else {
                None
            },
        });
    }
    convergence_warnings(&levels, &mut warnings);

    let neighborhood = match (&full, model) {
        (Some(all), AxialModel::Samsonov) => all
            .iter()
            .copied()
            .filter(|z| (*z - Complex::new(T::one(), T::zero())).norm() < lit(0.75))
            .collect(),
        _ => Vec::new(),
    };
    let model_name = match model {
        AxialModel::InfiniteWell { length } => format!("axial well L={}", length.get()),
        AxialModel::Morse { depth, width } => {
            format!("axial morse D={} eps={}", depth.get(), width.get())
        }
        AxialModel::ScarfII { a } => format!("axial scarf2 A={}", a.get()),
        AxialModel::Samsonov => "axial samsonov".to_string(),
    };
    Ok(VerificationReport {
        model: model_name,
        grid: *disc,
        ladder: ladder.map(|d| d.n_points()),
        variant,
        tolerance: axial_tolerance(model),
        numeric,
        levels,
        neighborhood,
        conjugation_defect: full.as_deref().map(conjugation_defect),
        warnings,
    })
}

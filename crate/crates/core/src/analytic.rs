//! Closed-form axial constants K_z², composite energies and spectrum tables.
//!
//! Two spots carry a [`FormulaVariant`]: the Coulomb radial quantization
//! (offset n_ρ + 1 versus n_ρ + 1/2) and the Morse axial constant (unsquared
//! √D/ε − n − 1/2 versus the textbook −(√D − (n + 1/2)ε)²). Both are computed
//! and the numeric oracle decides which one matches the underlying equation.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::model::{AmbiguityOrdering, AxialModel, QuantumNumbers, RadialModel};
use crate::scalar::{lit, Real, Scalar};

/// Which of two conflicting closed forms to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum FormulaVariant {
    /// The expressions exactly as published.
    #[default]
    Paper,
    /// The standard solution of the same one-dimensional equation.
    Standard,
}

impl FormulaVariant {
    pub const BOTH: [FormulaVariant; 2] = [FormulaVariant::Paper, FormulaVariant::Standard];

    pub fn as_str(self) -> &'static str {
        match self {
            FormulaVariant::Paper => "paper",
            FormulaVariant::Standard => "standard",
        }
    }

    fn flag(self) -> LevelFlag {
        match self {
            FormulaVariant::Paper => LevelFlag::PaperVariant,
            FormulaVariant::Standard => LevelFlag::StandardVariant,
        }
    }
}

impl fmt::Display for FormulaVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LevelFlag {
    Real,
    ComplexPair,
    NonnormalizableSuspect,
    PaperVariant,
    StandardVariant,
}

impl LevelFlag {
    pub fn as_str(self) -> &'static str {
        match self {
            LevelFlag::Real => "REAL",
            LevelFlag::ComplexPair => "COMPLEX_PAIR",
            LevelFlag::NonnormalizableSuspect => "NONNORMALIZABLE_SUSPECT",
            LevelFlag::PaperVariant => "PAPER_VARIANT",
            LevelFlag::StandardVariant => "STANDARD_VARIANT",
        }
    }
}

impl fmt::Display for LevelFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One energy eigenvalue with its labels and the constants that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyLevel<T> {
    pub value: Complex<T>,
    pub labels: QuantumNumbers,
    pub kz2: Complex<T>,
    pub ell: Complex<T>,
    pub flags: BTreeSet<LevelFlag>,
}

impl<T: Real> EnergyLevel<T> {
    fn new(
        value: Complex<T>,
        labels: QuantumNumbers,
        kz2: Complex<T>,
        ell: Complex<T>,
        variant: Option<FormulaVariant>,
    ) -> Self {
        let mut flags = BTreeSet::new();
        flags.insert(if value.im == T::zero() {
            LevelFlag::Real
        } else {
            LevelFlag::ComplexPair
        });
        if ell.im != T::zero() || ell.re < T::zero() {
            flags.insert(LevelFlag::NonnormalizableSuspect);
        }
        if let Some(v) = variant {
            flags.insert(v.flag());
        }
        Self {
            value,
            labels,
            kz2,
            ell,
            flags,
        }
    }

    pub fn is_real(&self) -> bool {
        self.flags.contains(&LevelFlag::Real)
    }

    /// The partner level on the conjugate K_z branch.
    pub fn conjugate(&self) -> Self {
        Self {
            value: self.value.conj(),
            kz2: self.kz2.conj(),
            ell: self.ell.conj(),
            ..self.clone()
        }
    }
}

fn check_positive<T: Real>(name: &'static str, value: T) -> Result<()> {
    if value.is_finite() && value > T::zero() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            requirement: "finite and > 0",
            value: value.to_f64().unwrap_or(f64::NAN),
        })
    }
}

/// K_z = n_z π / L for the impenetrable walls at 0 and L.
pub fn kz_well<T: Real>(n_z: u32, length: T) -> Result<T> {
    check_positive("L", length)?;
    if n_z == 0 {
        return Err(Error::NoSuchState {
            name: "n_z",
            value: 0,
        });
    }
    Ok(lit::<T>(n_z as f64) * T::PI() / length)
}

/// K_z² for the Morse axial interaction D(e^{−2εz} − 2e^{−εz}).
pub fn kz2_morse<T: Real>(depth: T, width: T, n_z: u32, variant: FormulaVariant) -> Result<T> {
    check_positive("D", depth)?;
    check_positive("eps", width)?;
    let half = lit::<T>(0.5);
    let n = lit::<T>(n_z as f64);
    let margin = depth.sqrt() / width - n - half;
    if margin <= T::zero() {
        return Err(Error::BoundStateCountExceeded {
            n_z,
            margin: margin.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(match variant {
        FormulaVariant::Paper => margin,
        FormulaVariant::Standard => {
            let k = depth.sqrt() - (n + half) * width;
            -(k * k)
        }
    })
}

/// K_z² for the PT-symmetric Scarf II interaction.
///
/// For A ≥ 2 the levels are −(n_z + (1−A)/2)² with n_z < (A−1)/2; for A < 2
/// the single value −1/4 is returned and `n_z` is ignored.
pub fn kz2_scarf2<T: Real>(a: T, n_z: u32) -> Result<T> {
    check_positive("A", a)?;
    let two = lit::<T>(2.0);
    if a < two {
        return Ok(lit(-0.25));
    }
    let limit = (a - T::one()) / two;
    let n = lit::<T>(n_z as f64);
    if n >= limit {
        return Err(Error::StateOutOfRange {
            n_z,
            limit: limit.to_f64().unwrap_or(f64::NAN),
        });
    }
    let k = n + (T::one() - a) / two;
    Ok(-(k * k))
}

/// K_z² = n_z²/4 for the PT-symmetric Samsonov interaction; n_z = 2 is absent.
pub fn kz2_samsonov<T: Real>(n_z: u32) -> Result<T> {
    match n_z {
        0 => Err(Error::NoSuchState {
            name: "n_z",
            value: 0,
        }),
        2 => Err(Error::MissingState { n_z }),
        n => {
            let n = lit::<T>(n as f64);
            Ok(n * n / lit(4.0))
        }
    }
}

/// K_z² for any axial model. Only the Morse value depends on `variant`.
pub fn kz2_axial<T: Real>(
    axial: &AxialModel<T>,
    n_z: u32,
    variant: FormulaVariant,
) -> Result<Complex<T>> {
    let re = match axial {
        AxialModel::InfiniteWell { length } => {
            let k = kz_well(n_z, length.get())?;
            k * k
        }
        AxialModel::Morse { depth, width } => kz2_morse(depth.get(), width.get(), n_z, variant)?,
        AxialModel::ScarfII { a } => kz2_scarf2(a.get(), n_z)?,
        AxialModel::Samsonov => kz2_samsonov(n_z)?,
    };
    Ok(Complex::new(re, T::zero()))
}

/// K_z² implied by the Coulomb radial quantization for a real ℓ ≥ 0.
///
/// Paper: (n_ρ + ℓ + 1)⁻². Standard: (n_ρ + ℓ + 1/2)⁻², which is what the
/// centrifugal strength ℓ² − 1/4 of the radial equation actually produces.
pub fn kz2_coulomb_internal<T: Real>(ell: T, n_rho: u32, variant: FormulaVariant) -> Result<T> {
    if ell.is_nan() || ell < T::zero() {
        return Err(Error::InvalidParameter {
            name: "ell",
            requirement: "real and >= 0",
            value: ell.to_f64().unwrap_or(f64::NAN),
        });
    }
    let n = lit::<T>(n_rho as f64) + ell + coulomb_offset(variant);
    Ok((n * n).recip())
}

fn coulomb_offset<T: Real>(variant: FormulaVariant) -> T {
    match variant {
        FormulaVariant::Paper => T::one(),
        FormulaVariant::Standard => lit(0.5),
    }
}

/// (m² + 3)/2 − (ζ − β) − ℓ²/2: every composite energy has this form.
fn energy_from_ell<T: Scalar>(
    m: i32,
    ell: Complex<T>,
    ordering: &AmbiguityOrdering<T>,
) -> Complex<T> {
    let m = lit::<T>(m as f64);
    let constant = (m * m + lit(3.0)) / lit(2.0) - ordering.shift();
    Complex::new(constant, T::zero()) - ell * ell / lit::<T>(2.0)
}

/// Coulombic radial model: E = (m²+3)/2 − (ζ−β) − ½(1/K_z − n_ρ − c)², with
/// c = 1 (Paper) or 1/2 (Standard) and K_z the principal root of `kz2`.
pub fn energy_coulomb<T: Scalar>(
    m: i32,
    n_rho: u32,
    kz2: Complex<T>,
    ordering: &AmbiguityOrdering<T>,
    variant: FormulaVariant,
) -> Result<EnergyLevel<T>> {
    if kz2 == Complex::new(T::zero(), T::zero()) {
        return Err(Error::DivisionByZero);
    }
    let kz = kz2.sqrt();
    let ell = kz.inv() - Complex::new(lit::<T>(n_rho as f64) + coulomb_offset(variant), T::zero());
    let value = energy_from_ell(m, ell, ordering);
    let mut level = EnergyLevel::new(
        value,
        QuantumNumbers::new(n_rho, m, 0),
        kz2,
        ell,
        Some(variant),
    );
    // A non-real K_z always yields a conjugate pair (two branches of the root).
    if kz.im != T::zero() {
        level.flags.remove(&LevelFlag::Real);
        level.flags.insert(LevelFlag::ComplexPair);
    }
    Ok(level)
}

/// Oscillator radial model: E = (m²+3)/2 − (ζ−β) − ½(K_z²/a + 2n_ρ + 1)².
pub fn energy_oscillator<T: Scalar>(
    m: i32,
    n_rho: u32,
    kz2: Complex<T>,
    a: T,
    ordering: &AmbiguityOrdering<T>,
) -> Result<EnergyLevel<T>> {
    check_positive("a", a)?;
    let ell = -(kz2 / a + Complex::new(lit::<T>(2.0 * n_rho as f64 + 1.0), T::zero()));
    let value = energy_from_ell(m, ell, ordering);
    Ok(EnergyLevel::new(
        value,
        QuantumNumbers::new(n_rho, m, 0),
        kz2,
        ell,
        None,
    ))
}

/// Inclusive quantum-number ranges for a table: n_ρ ∈ [0, n_rho_max],
/// m ∈ [−m_max, m_max], n_z from the model's first value to n_z_max.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuantumRanges {
    pub n_rho_max: u32,
    pub m_max: u32,
    pub n_z_max: u32,
}

/// Why a state in the requested range was left out of a table.
#[derive(Debug, Clone, PartialEq)]
pub struct SkippedState {
    /// `None` when the failure is axial and therefore shared by every n_ρ and m.
    pub radial: Option<(u32, i32)>,
    pub n_z: u32,
    pub error: Error,
}

impl fmt::Display for SkippedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.error {
            Error::MissingState { .. } => "MissingState",
            Error::StateOutOfRange { .. } => "StateOutOfRange",
            Error::BoundStateCountExceeded { .. } => "BoundStateCountExceeded",
            Error::DivisionByZero => "DivisionByZero",
            Error::NoSuchState { .. } => "NoSuchState",
            _ => "Invalid",
        };
        match self.radial {
            None => write!(f, "{kind}:n_z={}", self.n_z),
            Some((n_rho, m)) => write!(f, "{kind}:n_rho={n_rho},m={m},n_z={}", self.n_z),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTable<T> {
    pub levels: Vec<EnergyLevel<T>>,
    pub skipped: Vec<SkippedState>,
}

/// Enumerates every state in `ranges` for the given radial × axial pair.
///
/// States whose axial constant does not exist are skipped and recorded once per
/// n_z. A level with non-zero imaginary part is emitted together with its
/// conjugate partner. Output is sorted by Re E, then (n_ρ, m, n_z), then Im E.
pub fn spectrum_table<T: Scalar>(
    radial: &RadialModel<T>,
    axial: &AxialModel<T>,
    ordering: &AmbiguityOrdering<T>,
    ranges: QuantumRanges,
    variant: FormulaVariant,
) -> SpectrumTable<T> {
    let mut levels = Vec::new();
    let mut skipped = Vec::new();
    let scarf_single = matches!(axial, AxialModel::ScarfII { a } if a.get() < lit(2.0));

    for n_z in axial.first_n_z()..=ranges.n_z_max {
        if scarf_single && n_z > 0 {
            skipped.push(SkippedState {
                radial: None,
                n_z,
                error: Error::StateOutOfRange { n_z, limit: 1.0 },
            });
            continue;
        }
        let kz2 = match kz2_axial(axial, n_z, variant) {
            Ok(k) => k,
            Err(error) => {
                skipped.push(SkippedState {
                    radial: None,
                    n_z,
                    error,
                });
                continue;
            }
        };
        let axial_variant = matches!(axial, AxialModel::Morse { .. });
        for n_rho in 0..=ranges.n_rho_max {
            let m_max = ranges.m_max as i32;
            for m in -m_max..=m_max {
                let level = match radial {
                    RadialModel::Coulombic => energy_coulomb(m, n_rho, kz2, ordering, variant),
                    RadialModel::Oscillator { a } => {
                        energy_oscillator(m, n_rho, kz2, a.get(), ordering)
                    }
                };
                match level {
                    Ok(mut level) => {
                        level.labels.n_z = n_z;
                        if axial_variant {
                            level.flags.insert(variant.flag());
                        }
                        if level.flags.contains(&LevelFlag::ComplexPair) {
                            levels.push(level.conjugate());
                        }
                        levels.push(level);
                    }
                    Err(error) => skipped.push(SkippedState {
                        radial: Some((n_rho, m)),
                        n_z,
                        error,
                    }),
                }
            }
        }
    }

    levels.sort_by(compare_levels);
    SpectrumTable { levels, skipped }
}

fn compare_levels<T: Real>(a: &EnergyLevel<T>, b: &EnergyLevel<T>) -> Ordering {
    a.value
        .re
        .partial_cmp(&b.value.re)
        .unwrap_or(Ordering::Equal)
        .then_with(|| a.labels.cmp(&b.labels))
        .then_with(|| {
            a.value
                .im
                .partial_cmp(&b.value.im)
                .unwrap_or(Ordering::Equal)
        })
}

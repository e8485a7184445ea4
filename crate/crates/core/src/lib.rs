//! Spectra of position-dependent-mass Schrödinger problems in cylindrical
//! coordinates with mass M(ρ) = ρ⁻².
//!
//! - [`model`]: von Roos ordering algebra, mass profiles and the radial/axial catalogs.
//! - [`analytic`]: closed-form axial constants, composite energies and tables.
//! - [`oracle`]: finite-difference eigenvalue checks of every one-dimensional claim.
//! - [`composite`]: the full PDM operator applied to separated eigenfunctions.
//!
//! Everything is generic over the scalar type; the aliases below fix it to `f64`
//! (or `Rational64` for exact ordering arithmetic).

pub mod analytic;
pub mod composite;
pub mod error;
pub mod model;
pub mod oracle;
pub mod scalar;

pub use analytic::{
    energy_coulomb, energy_oscillator, kz2_axial, kz2_coulomb_internal, kz2_morse, kz2_samsonov,
    kz2_scarf2, kz_well, spectrum_table, EnergyLevel, FormulaVariant, LevelFlag, QuantumRanges,
    SkippedState, SpectrumTable,
};
pub use composite::{
    apply_pdm_hamiltonian, assemble_potential, coulomb_well_convergence, fit_energy,
    ordering_potential_w, residual_norm, Assembly, CompositePotential, CompositeReport,
    CoulombWellState, GridField, Halo,
};
pub use error::{Error, Result};
pub use model::{
    ell_from_kphi2, kphi2_from_energy, ordering_shift, preset_orderings, zeta, AmbiguityOrdering,
    AxialModel, MassFactor, MassProfile, OrderingPreset, Positive, QuantumNumbers, RadialModel,
    SeparationConstants,
};
pub use scalar::{OrderingScalar, Real, Scalar};

pub type Ordering = AmbiguityOrdering<f64>;
pub type ExactOrdering = AmbiguityOrdering<num_rational::Rational64>;
pub type Level = EnergyLevel<f64>;
pub type Table = SpectrumTable<f64>;
pub type Radial = RadialModel<f64>;
pub type Axial = AxialModel<f64>;
pub type Mass = MassProfile<f64>;
pub type Grid = oracle::Discretization<f64>;
pub type Operator = oracle::TridiagonalOperator<f64>;
pub type Report = oracle::VerificationReport<f64>;
pub type Field = GridField<f64>;

//! Full position-dependent-mass operator on a (ρ, z) grid.
//!
//! The azimuthal factor e^{imφ} is handled analytically, so a field is a 2D
//! array Ψ(ρ_i, z_j) for one m. For an exact eigenpair,
//! [`apply_pdm_hamiltonian`] returns −2MEΨ.

use num_complex::Complex;
use rayon::prelude::*;

use crate::analytic::{energy_coulomb, FormulaVariant};
use crate::error::{Error, Result};
use crate::model::{AmbiguityOrdering, AxialModel, MassProfile, RadialModel};
use crate::oracle::grid::Discretization;
use crate::scalar::{lit, Real, Scalar};

/// How V(ρ, z) is built from the one-dimensional interactions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Assembly {
    /// V = (ρ²/2)[Ṽ(ρ) + Ṽ(z)], the form the separated equations solve.
    #[default]
    Separable,
    /// The per-model expressions as catalogued: ρ²Ṽ(ρ) + ρ²Ṽ(z), and
    /// ρ²Ṽ(ρ) + Ṽ(z) for Samsonov. Kept for comparison only.
    Catalog,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompositePotential<T> {
    pub radial: RadialModel<T>,
    pub axial: AxialModel<T>,
    pub assembly: Assembly,
}

impl<T: Real> CompositePotential<T> {
    pub fn new(radial: RadialModel<T>, axial: AxialModel<T>) -> Self {
        Self {
            radial,
            axial,
            assembly: Assembly::Separable,
        }
    }

    pub fn with_assembly(self, assembly: Assembly) -> Self {
        Self { assembly, ..self }
    }
}

fn check_rho<T: Real>(rho: T) -> Result<()> {
    if rho > T::zero() && rho.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "rho",
            requirement: "finite and > 0",
            value: rho.to_f64().unwrap_or(f64::NAN),
        })
    }
}

/// V(ρ, z) with Ṽ(φ) = 0.
pub fn assemble_potential<T: Real>(
    pot: &CompositePotential<T>,
    rho: T,
    z: T,
) -> Result<Complex<T>> {
    check_rho(rho)?;
    let vr = Complex::new(pot.radial.potential(rho), T::zero());
    let vz = pot.axial.potential(z);
    let r2 = rho * rho;
    Ok(match pot.assembly {
        Assembly::Separable => (vr + vz) * (r2 / lit(2.0)),
        Assembly::Catalog => match pot.axial {
            AxialModel::Samsonov => vr * r2 + vz,
            _ => (vr + vz) * r2,
        },
    })
}

/// The ordering-dependent potential W of the von Roos operator.
///
/// 2MW = ζ[(g′/g)² + (f′/f)²/ρ² + (k′/k)²] − (β+1)[g′/(ρg) + g″/g + f″/(ρ²f) + k″/k],
/// returned divided by 2M. For M = ρ⁻² this is the constant 2(ζ − β − 1).
pub fn ordering_potential_w<T: Scalar>(
    mass: &MassProfile<T>,
    ordering: &AmbiguityOrdering<T>,
    rho: T,
    phi: T,
    z: T,
) -> Result<T> {
    check_rho(rho)?;
    let m = mass.try_value(rho, phi, z)?;
    let (g1, g2) = mass.g.log_derivatives(rho);
    let (f1, f2) = mass.f.log_derivatives(phi);
    let (k1, k2) = mass.k.log_derivatives(z);
    let r2 = rho * rho;
    let squares = g1 * g1 + f1 * f1 / r2 + k1 * k1;
    let curvature = g1 / rho + g2 + f2 / r2 + k2;
    let two_mw = ordering.zeta() * squares - (ordering.beta() + T::one()) * curvature;
    Ok(two_mw / (lit::<T>(2.0) * m))
}

/// Field values on the walls around a [`GridField`].
#[derive(Debug, Clone, PartialEq)]
pub enum Halo<T> {
    /// Ψ = 0 on every wall.
    Dirichlet,
    /// Explicit wall values: `rho_lo`/`rho_hi` have one entry per z node,
    /// `z_lo`/`z_hi` one per ρ node.
    Values {
        rho_lo: Vec<Complex<T>>,
        rho_hi: Vec<Complex<T>>,
        z_lo: Vec<Complex<T>>,
        z_hi: Vec<Complex<T>>,
    },
}

/// Ψ(ρ_i, z_j) at fixed azimuthal mode m, stored row-major with ρ as the row index.
#[derive(Debug, Clone, PartialEq)]
pub struct GridField<T> {
    rho: Discretization<T>,
    z: Discretization<T>,
    m: i32,
    phi: T,
    values: Vec<Complex<T>>,
    halo: Halo<T>,
}

impl<T: Real> GridField<T> {
    pub fn new(
        rho: Discretization<T>,
        z: Discretization<T>,
        m: i32,
        values: Vec<Complex<T>>,
    ) -> Result<Self> {
        let expected = rho.n_points() * z.n_points();
        if values.len() != expected {
            return Err(Error::ShapeMismatch {
                expected,
                got: values.len(),
            });
        }
        Ok(Self {
            rho,
            z,
            m,
            phi: T::zero(),
            values,
            halo: Halo::Dirichlet,
        })
    }

    /// Samples `psi` on the interior nodes and on the walls.
    pub fn from_fn(
        rho: Discretization<T>,
        z: Discretization<T>,
        m: i32,
        psi: impl Fn(T, T) -> Complex<T>,
    ) -> Self {
        let values = rho
            .nodes()
            .flat_map(|r| z.nodes().map(move |zz| (r, zz)))
            .map(|(r, zz)| psi(r, zz))
            .collect();
        let halo = Halo::Values {
            rho_lo: z.nodes().map(|zz| psi(rho.x_min(), zz)).collect(),
            rho_hi: z.nodes().map(|zz| psi(rho.x_max(), zz)).collect(),
            z_lo: rho.nodes().map(|r| psi(r, z.x_min())).collect(),
            z_hi: rho.nodes().map(|r| psi(r, z.x_max())).collect(),
        };
        Self {
            rho,
            z,
            m,
            phi: T::zero(),
            values,
            halo,
        }
    }

    pub fn with_halo(mut self, halo: Halo<T>) -> Result<Self> {
        if let Halo::Values {
            rho_lo,
            rho_hi,
            z_lo,
            z_hi,
        } = &halo
        {
            let (nr, nz) = (self.rho.n_points(), self.z.n_points());
            for (len, want) in [
                (rho_lo.len(), nz),
                (rho_hi.len(), nz),
                (z_lo.len(), nr),
                (z_hi.len(), nr),
            ] {
                if len != want {
                    return Err(Error::ShapeMismatch {
                        expected: want,
                        got: len,
                    });
                }
            }
        }
        self.halo = halo;
        Ok(self)
    }

    /// Azimuthal angle at which a non-uniform f(φ) is evaluated.
    pub fn with_phi(mut self, phi: T) -> Self {
        self.phi = phi;
        self
    }

    pub fn rho_disc(&self) -> &Discretization<T> {
        &self.rho
    }

    pub fn z_disc(&self) -> &Discretization<T> {
        &self.z
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    pub fn phi(&self) -> T {
        self.phi
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn halo(&self) -> &Halo<T> {
        &self.halo
    }

    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.values[i * self.z.n_points() + j]
    }

    /// Ψ at padded indices: 0 and n+1 address the walls.
    fn padded(&self, i: usize, j: usize) -> Complex<T> {
        let (nr, nz) = (self.rho.n_points(), self.z.n_points());
        let interior_i = (1..=nr).contains(&i);
        let interior_j = (1..=nz).contains(&j);
        if interior_i && interior_j {
            return self.get(i - 1, j - 1);
        }
        match &self.halo {
            Halo::Dirichlet => Complex::new(T::zero(), T::zero()),
            Halo::Values {
                rho_lo,
                rho_hi,
                z_lo,
                z_hi,
            } => {
                if !interior_i {
                    let row = if i == 0 { rho_lo } else { rho_hi };
                    row[j - 1]
                } else {
                    let col = if j == 0 { z_lo } else { z_hi };
                    col[i - 1]
                }
            }
        }
    }

    fn map_values(&self, values: Vec<Complex<T>>) -> Self {
        Self {
            values,
            halo: Halo::Dirichlet,
            ..self.clone()
        }
    }
}

/// Pointwise pieces of the operator at one node.
struct NodeTerms<T> {
    two_m: T,
    value: Complex<T>,
}

fn node_terms<T: Scalar>(
    field: &GridField<T>,
    pot: &CompositePotential<T>,
    mass: &MassProfile<T>,
    ordering: &AmbiguityOrdering<T>,
    i: usize,
    j: usize,
) -> Result<NodeTerms<T>> {
    let rho = field.rho.node(i);
    let z = field.z.node(j);
    let phi = field.phi;
    let (hr, hz) = (field.rho.step(), field.z.step());
    let two = lit::<T>(2.0);

    let c = field.padded(i, j);
    let (rm, rp) = (field.padded(i - 1, j), field.padded(i + 1, j));
    let (zm, zp) = (field.padded(i, j - 1), field.padded(i, j + 1));
    let d_rho = (rp - rm) / (two * hr);
    let d_rho2 = (rp - c * two + rm) / (hr * hr);
    let d_z = (zp - zm) / (two * hz);
    let d_z2 = (zp - c * two + zm) / (hz * hz);

    let (g1, _) = mass.g.log_derivatives(rho);
    let (f1, _) = mass.f.log_derivatives(phi);
    let (k1, _) = mass.k.log_derivatives(z);
    let m = lit::<T>(field.m as f64);
    let azimuthal = Complex::new(-m * m, -f1 * m) / (rho * rho);
    let kinetic = d_rho2 + d_rho * (rho.recip() - g1) + c * azimuthal + d_z2 - d_z * k1;

    let mass_value = mass.try_value(rho, phi, z)?;
    let v = assemble_potential(pot, rho, z)?;
    let w = ordering_potential_w(mass, ordering, rho, phi, z)?;
    let potential = v * (two * mass_value) - Complex::new(mass_value * w, T::zero());
    Ok(NodeTerms {
        two_m: two * mass_value,
        value: kinetic - potential * c,
    })
}

fn evaluate<T: Scalar>(
    field: &GridField<T>,
    pot: &CompositePotential<T>,
    mass: &MassProfile<T>,
    ordering: &AmbiguityOrdering<T>,
) -> Result<Vec<NodeTerms<T>>> {
    let nz = field.z.n_points();
    let rows: Result<Vec<Vec<NodeTerms<T>>>> = (1..=field.rho.n_points())
        .into_par_iter()
        .map(|i| {
            (1..=nz)
                .map(|j| node_terms(field, pot, mass, ordering, i, j))
                .collect()
        })
        .collect();
    Ok(rows?.into_iter().flatten().collect())
}

/// The left side of the separated PDM equation minus (2MV − MW)Ψ, so that an
/// exact eigenpair gives −2MEΨ. Second-order central differences in ρ and z;
/// ∂φ acts on e^{imφ} analytically.
pub fn apply_pdm_hamiltonian<T: Scalar>(
    field: &GridField<T>,
    pot: &CompositePotential<T>,
    mass: &MassProfile<T>,
    ordering: &AmbiguityOrdering<T>,
) -> Result<GridField<T>> {
    let terms = evaluate(field, pot, mass, ordering)?;
    Ok(field.map_values(terms.into_iter().map(|t| t.value).collect()))
}

/// ‖HΨ + 2MEΨ‖ / ‖2MΨ‖ over the interior nodes.
pub fn residual_norm<T: Scalar>(
    field: &GridField<T>,
    energy: Complex<T>,
    pot: &CompositePotential<T>,
    mass: &MassProfile<T>,
    ordering: &AmbiguityOrdering<T>,
) -> Result<T> {
    let terms = evaluate(field, pot, mass, ordering)?;
    let (mut num, mut den) = (T::zero(), T::zero());
    for (t, psi) in terms.iter().zip(&field.values) {
        let scaled = *psi * t.two_m;
        num = num + (t.value + scaled * energy).norm_sqr();
        den = den + scaled.norm_sqr();
    }
    Ok((num / den).sqrt())
}

/// The energy minimizing [`residual_norm`] for a fixed field.
pub fn fit_energy<T: Scalar>(
    field: &GridField<T>,
    pot: &CompositePotential<T>,
    mass: &MassProfile<T>,
    ordering: &AmbiguityOrdering<T>,
) -> Result<Complex<T>> {
    let terms = evaluate(field, pot, mass, ordering)?;
    let mut num = Complex::new(T::zero(), T::zero());
    let mut den = T::zero();
    for (t, psi) in terms.iter().zip(&field.values) {
        let scaled = *psi * t.two_m;
        num = num + scaled.conj() * t.value;
        den = den + scaled.norm_sqr();
    }
    Ok(-num / den)
}

/// The n_ρ = 0 Coulomb × well eigenfunction
/// Ψ = ρ^{−3/2}·ρ^{ℓ+1/2}e^{−K_zρ}·sin(K_z z), with K_z = n_zπ/L and
/// ℓ = 1/K_z − 1/2, together with its energy (Standard radial variant).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoulombWellState<T> {
    pub length: T,
    pub n_z: u32,
    pub m: i32,
    pub kz: T,
    pub ell: T,
}

impl<T: Scalar> CoulombWellState<T> {
    pub fn new(length: T, n_z: u32, m: i32) -> Result<Self> {
        let kz = crate::analytic::kz_well(n_z, length)?;
        let ell = kz.recip() - lit(0.5);
        if ell.is_nan() || ell <= T::zero() {
            return Err(Error::InvalidParameter {
                name: "L",
                requirement: "large enough that 1/K_z - 1/2 > 0",
                value: length.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self {
            length,
            n_z,
            m,
            kz,
            ell,
        })
    }

    pub fn psi(&self, rho: T, z: T) -> Complex<T> {
        let radial = rho.powf(self.ell - T::one()) * (-self.kz * rho).exp();
        Complex::new(radial * (self.kz * z).sin(), T::zero())
    }

    pub fn energy(&self, ordering: &AmbiguityOrdering<T>) -> Result<Complex<T>> {
        let kz2 = Complex::new(self.kz * self.kz, T::zero());
        Ok(energy_coulomb(self.m, 0, kz2, ordering, FormulaVariant::Standard)?.value)
    }

    pub fn field(&self, rho: Discretization<T>, z: Discretization<T>) -> GridField<T> {
        GridField::from_fn(rho, z, self.m, |r, zz| self.psi(r, zz))
    }
}

/// Residuals of a Coulomb × well eigenfunction on three halving grids.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeReport<T> {
    pub model: String,
    pub state: CoulombWellState<T>,
    pub energy: Complex<T>,
    pub fitted_energy: Complex<T>,
    pub grids: Vec<(usize, usize)>,
    pub residuals: Vec<T>,
    pub ratios: Vec<T>,
}

impl<T: Real> CompositeReport<T> {
    pub fn ratios_within(&self, lo: f64, hi: f64) -> bool {
        !self.ratios.is_empty() && self.ratios.iter().all(|r| *r >= lit(lo) && *r <= lit(hi))
    }
}

/// Default radial window for the composite check. The walls carry exact
/// values, so the box only has to keep ρ^{ℓ−1} well resolved.
pub fn default_composite_rho<T: Real>(n_points: usize) -> Result<Discretization<T>> {
    Discretization::new(T::one(), lit(12.0), n_points)
}

/// Grid-halving check of the canonical-mass operator on the Coulomb × well
/// state: residuals at base, 2·base+1 and 4·base+3 points per direction.
pub fn coulomb_well_convergence<T: Scalar>(
    state: &CoulombWellState<T>,
    ordering: &AmbiguityOrdering<T>,
    rho: Discretization<T>,
    base_z_points: usize,
) -> Result<CompositeReport<T>> {
    let well = AxialModel::infinite_well(state.length)?;
    let pot = CompositePotential::new(RadialModel::Coulombic, well);
    let mass = MassProfile::inverse_square_radial();
    let energy = state.energy(ordering)?;

    let mut rho_disc = rho;
    let mut z_disc = Discretization::new(T::zero(), state.length, base_z_points)?;
    let mut grids = Vec::new();
    let mut residuals = Vec::new();
    let mut fitted = energy;
    for _ in 0..3 {
        let field = state.field(rho_disc, z_disc);
        residuals.push(residual_norm(&field, energy, &pot, &mass, ordering)?);
        fitted = fit_energy(&field, &pot, &mass, ordering)?;
        grids.push((rho_disc.n_points(), z_disc.n_points()));
        rho_disc = rho_disc.refined();
        z_disc = z_disc.refined();
    }
    let ratios = residuals.windows(2).map(|w| w[0] / w[1]).collect();
    Ok(CompositeReport {
        model: format!(
            "composite coulomb x well L={} n_z={} m={}",
            state.length, state.n_z, state.m
        ),
        state: *state,
        energy,
        fitted_energy: fitted,
        grids,
        residuals,
        ratios,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::OrderingPreset;
    use std::f64::consts::PI;

    #[test]
    fn assembly_examples() {
        let well = AxialModel::infinite_well(PI).unwrap();
        let pot = CompositePotential::new(RadialModel::Coulombic, well);
        assert_eq!(assemble_potential(&pot, 2.0, PI / 2.0).unwrap().re, -2.0);
        let printed = pot.with_assembly(Assembly::Catalog);
        assert_eq!(
            assemble_potential(&printed, 2.0, PI / 2.0).unwrap().re,
            -4.0
        );

        let pot = CompositePotential::new(
            RadialModel::oscillator(2.0_f64).unwrap(),
            AxialModel::morse(1.0, 1.0).unwrap(),
        );
        let v = assemble_potential(&pot, 1.0, 60.0).unwrap();
        assert!((v.re - 0.5).abs() < 1e-12);
        assert!(assemble_potential(&pot, 0.0, 1.0).is_err());
    }

    #[test]
    fn ordering_potential_for_canonical_mass() {
        let mass = MassProfile::inverse_square_radial();
        let bdd = OrderingPreset::BenDanielDuke.ordering::<f64>();
        let zk = OrderingPreset::ZhuKroemer.ordering::<f64>();
        for rho in [0.3, 1.0, 7.5] {
            assert_eq!(
                ordering_potential_w(&mass, &bdd, rho, 0.0, 0.0).unwrap(),
                0.0
            );
            let w = ordering_potential_w(&mass, &zk, rho, 0.0, 0.0).unwrap();
            assert!((w - 1.0).abs() < 1e-12);
        }
        assert!(ordering_potential_w(&mass, &zk, -1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn zero_field_maps_to_zero() {
        let rho = Discretization::new(0.5, 10.0, 20).unwrap();
        let z = Discretization::new(0.0, PI, 20).unwrap();
        let field = GridField::new(rho, z, 1, vec![Complex::new(0.0, 0.0); 400]).unwrap();
        let pot = CompositePotential::new(
            RadialModel::Coulombic,
            AxialModel::infinite_well(PI).unwrap(),
        );
        let out = apply_pdm_hamiltonian(
            &field,
            &pot,
            &MassProfile::inverse_square_radial(),
            &OrderingPreset::ZhuKroemer.ordering(),
        )
        .unwrap();
        assert!(out.values().iter().all(|z| *z == Complex::new(0.0, 0.0)));
        assert!(GridField::new(rho, z, 0, vec![Complex::new(0.0, 0.0); 10]).is_err());
    }

    #[test]
    fn coulomb_well_state_is_an_eigenfunction() {
        let state = CoulombWellState::new(PI, 1, 0).unwrap();
        let bdd = OrderingPreset::BenDanielDuke.ordering::<f64>();
        assert!((state.energy(&bdd).unwrap().re - 0.375).abs() < 1e-15);
        let report =
            coulomb_well_convergence(&state, &bdd, default_composite_rho(63).unwrap(), 63).unwrap();
        assert!(report.ratios_within(3.5, 4.5), "{:?}", report.ratios);
        assert!(
            (report.fitted_energy - report.energy).norm() < 1e-2,
            "{report:?}"
        );
    }
}

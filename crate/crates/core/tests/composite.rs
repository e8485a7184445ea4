use num_complex::Complex;
use pdm_core::oracle::Discretization;
use pdm_core::*;
use rand::{rngs::StdRng, Rng, SeedableRng};
use std::f64::consts::PI;

fn grids() -> (Grid, Grid) {
    (
        Discretization::new(1.0, 12.0, 40).unwrap(),
        Discretization::new(0.0, PI, 30).unwrap(),
    )
}

fn coulomb_well() -> CompositePotential<f64> {
    CompositePotential::new(
        RadialModel::Coulombic,
        AxialModel::infinite_well(PI).unwrap(),
    )
}

fn random_field(rng: &mut StdRng, m: i32) -> Field {
    let (r, z) = grids();
    let values = (0..r.n_points() * z.n_points())
        .map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    GridField::new(r, z, m, values).unwrap()
}

fn max_abs(values: &[Complex<f64>]) -> f64 {
    values.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[test]
fn operator_is_linear() {
    let mut rng = StdRng::seed_from_u64(5);
    let mass = Mass::inverse_square_radial();
    let pot = coulomb_well();
    for preset in OrderingPreset::ALL {
        let o = preset.ordering::<f64>();
        let (a, b) = (random_field(&mut rng, 1), random_field(&mut rng, 1));
        let k = Complex::new(0.3, -1.7);
        let (r, z) = grids();
        let sum: Vec<_> = a
            .values()
            .iter()
            .zip(b.values())
            .map(|(x, y)| *x + *y * k)
            .collect();
        let sum = GridField::new(r, z, 1, sum).unwrap();
        let ha = apply_pdm_hamiltonian(&a, &pot, &mass, &o).unwrap();
        let hb = apply_pdm_hamiltonian(&b, &pot, &mass, &o).unwrap();
        let hs = apply_pdm_hamiltonian(&sum, &pot, &mass, &o).unwrap();
        let scale = max_abs(hs.values());
        for ((s, x), y) in hs.values().iter().zip(ha.values()).zip(hb.values()) {
            assert!((*s - (*x + *y * k)).norm() <= 1e-12 * scale);
        }
    }
}

#[test]
fn operator_depends_on_m_squared() {
    let mut rng = StdRng::seed_from_u64(9);
    let plus = random_field(&mut rng, 2);
    let minus = GridField::new(grids().0, grids().1, -2, plus.values().to_vec()).unwrap();
    let o = OrderingPreset::LiKuhn.ordering::<f64>();
    let mass = Mass::inverse_square_radial();
    let a = apply_pdm_hamiltonian(&plus, &coulomb_well(), &mass, &o).unwrap();
    let b = apply_pdm_hamiltonian(&minus, &coulomb_well(), &mass, &o).unwrap();
    assert_eq!(a.values(), b.values());
}

#[test]
fn bendaniel_duke_has_no_ordering_potential() {
    let bdd = OrderingPreset::BenDanielDuke.ordering::<f64>();
    let profiles = [
        Mass::inverse_square_radial(),
        MassProfile::new(
            MassFactor::custom(|r: f64| 1.0 + r * r),
            MassFactor::custom(|p: f64| 2.0 + p.cos()),
            MassFactor::custom(|z: f64| (0.1 * z).exp()),
        ),
    ];
    let (r, z) = grids();
    for mass in &profiles {
        for rho in r.nodes() {
            for zz in z.nodes() {
                assert_eq!(ordering_potential_w(mass, &bdd, rho, 0.4, zz).unwrap(), 0.0);
            }
        }
    }
}

#[test]
fn fitted_energy_moves_with_the_ordering_shift() {
    let state = CoulombWellState::new(PI, 1, 1).unwrap();
    let (r, z) = grids();
    let field = state.field(r, z);
    let mass = Mass::inverse_square_radial();
    let reference = OrderingPreset::BenDanielDuke.ordering::<f64>();
    let e0 = fit_energy(&field, &coulomb_well(), &mass, &reference).unwrap();
    for preset in OrderingPreset::ALL {
        let o = preset.ordering::<f64>();
        let e = fit_energy(&field, &coulomb_well(), &mass, &o).unwrap();
        let expect = -(o.shift() - reference.shift());
        assert!(((e - e0).re - expect).abs() < 1e-8, "{preset}");
        assert!((e - e0).im.abs() < 1e-8);
    }
}

#[test]
fn separated_state_residual_is_small_and_second_order() {
    let state = CoulombWellState::new(PI, 1, 0).unwrap();
    let bdd = OrderingPreset::BenDanielDuke.ordering::<f64>();
    let rho = composite::default_composite_rho(63).unwrap();
    let report = coulomb_well_convergence(&state, &bdd, rho, 63).unwrap();
    assert!(report.ratios_within(3.6, 4.4), "{:?}", report.ratios);
    // bounded by 10 h^2 times the largest local potential magnitude (2 on [1, 12])
    let h = rho.step();
    assert!(report.residuals[0] <= 10.0 * h * h * 2.0);
}

#[test]
fn random_field_has_order_one_residual() {
    let mut rng = StdRng::seed_from_u64(1);
    let field = random_field(&mut rng, 0);
    let energy = Complex::new(rng.gen_range(-2.0..2.0), 0.0);
    let res = residual_norm(
        &field,
        energy,
        &coulomb_well(),
        &Mass::inverse_square_radial(),
        &OrderingPreset::BenDanielDuke.ordering(),
    )
    .unwrap();
    assert!(res > 0.1, "{res}");
}

#[test]
fn residual_grows_with_energy_offset() {
    let state = CoulombWellState::new(PI, 1, 0).unwrap();
    let bdd = OrderingPreset::BenDanielDuke.ordering::<f64>();
    let field = state.field(
        composite::default_composite_rho(127).unwrap(),
        Discretization::new(0.0, PI, 63).unwrap(),
    );
    let mass = Mass::inverse_square_radial();
    let e = state.energy(&bdd).unwrap();
    let base = residual_norm(&field, e, &coulomb_well(), &mass, &bdd).unwrap();
    let mut previous = base;
    for delta in [0.05, 0.1, 0.2, 0.4] {
        let r = residual_norm(&field, e + delta, &coulomb_well(), &mass, &bdd).unwrap();
        assert!(r > previous);
        assert!(r >= 0.5 * delta, "delta {delta}: {r}");
        previous = r;
    }
}

#[test]
fn shape_and_domain_errors() {
    let (r, z) = grids();
    assert!(matches!(
        GridField::new(r, z, 0, vec![Complex::new(0.0, 0.0); 3]),
        Err(Error::ShapeMismatch { .. })
    ));
    let field = GridField::new(
        r,
        z,
        0,
        vec![Complex::new(0.0, 0.0); r.n_points() * z.n_points()],
    )
    .unwrap();
    assert!(field
        .clone()
        .with_halo(Halo::Values {
            rho_lo: vec![],
            rho_hi: vec![],
            z_lo: vec![],
            z_hi: vec![]
        })
        .is_err());
    let bad_mass = MassProfile::new(
        MassFactor::custom(|r: f64| 5.0 - r),
        MassFactor::Unit,
        MassFactor::Unit,
    );
    assert!(matches!(
        apply_pdm_hamiltonian(
            &field,
            &coulomb_well(),
            &bad_mass,
            &OrderingPreset::ZhuKroemer.ordering()
        ),
        Err(Error::NonPositiveMass { .. })
    ));
    assert!(CoulombWellState::new(1.0, 1, 0).is_err());
}

#[test]
fn catalog_assembly_for_samsonov_drops_the_rho_squared() {
    let pot = CompositePotential::new(RadialModel::oscillator(1.0).unwrap(), AxialModel::Samsonov)
        .with_assembly(Assembly::Catalog);
    let v = assemble_potential(&pot, 2.0, 0.0).unwrap();
    // 4 * (4/4) + (-1)
    assert!((v - Complex::new(3.0, 0.0)).norm() < 1e-12);
}

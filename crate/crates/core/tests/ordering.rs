use num_complex::Complex;
use num_rational::Rational64;
use pdm_core::*;
use proptest::prelude::*;

fn ordering_strategy() -> impl Strategy<Value = Ordering> {
    (-2.0f64..1.0, -2.0f64..1.0).prop_map(|(a, b)| {
        let g = -1.0 - a - b;
        AmbiguityOrdering::new(a, b, g).unwrap()
    })
}

fn all_axial() -> Vec<Axial> {
    vec![
        AxialModel::infinite_well(2.0).unwrap(),
        AxialModel::morse(25.0, 1.0).unwrap(),
        AxialModel::scarf2(5.0).unwrap(),
        AxialModel::Samsonov,
    ]
}

fn ranges() -> QuantumRanges {
    QuantumRanges {
        n_rho_max: 2,
        m_max: 2,
        n_z_max: 3,
    }
}

#[test]
fn exact_zeta_over_rationals() {
    let expect = [(2, 1), (0, 1), (3, 2), (1, 1), (7, 8)];
    for (preset, (n, d)) in OrderingPreset::ALL.into_iter().zip(expect) {
        assert_eq!(
            preset.ordering::<Rational64>().zeta(),
            Rational64::new(n, d)
        );
        let z = preset.ordering::<f64>().zeta();
        assert!((z - n as f64 / d as f64).abs() <= 1e-12);
    }
}

#[test]
fn ordering_literal_rejects_off_constraint_triples() {
    assert!(matches!(
        AmbiguityOrdering::new(0.1, 0.2, 0.3),
        Err(Error::InvalidOrdering { .. })
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn zeta_is_symmetric_in_alpha_and_gamma(o in ordering_strategy()) {
        prop_assert!((o.zeta() - o.swapped().zeta()).abs() < 1e-12);
    }

    #[test]
    fn energies_shift_by_the_ordering_shift(o in ordering_strategy()) {
        let reference = OrderingPreset::BenDanielDuke.ordering::<f64>();
        let delta = o.shift() - reference.shift();
        let radials = [RadialModel::Coulombic, RadialModel::oscillator(1.5).unwrap()];
        for radial in &radials {
            for axial in &all_axial() {
                let a = spectrum_table(radial, axial, &reference, ranges(), FormulaVariant::Paper);
                let b = spectrum_table(radial, axial, &o, ranges(), FormulaVariant::Paper);
                prop_assert_eq!(a.levels.len(), b.levels.len());
                for x in &a.levels {
                    let y = b
                        .levels
                        .iter()
                        .find(|y| y.labels == x.labels && (y.value.im - x.value.im).abs() < 1e-12)
                        .unwrap();
                    let diff = x.value - y.value;
                    prop_assert!((diff.re - delta).abs() < 1e-12, "{} vs {}", diff.re, delta);
                    prop_assert!(diff.im.abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn energies_do_not_depend_on_the_sign_of_m(o in ordering_strategy(), n_rho in 0u32..4, m in 0i32..5) {
        for kz2 in [Complex::new(0.7, 0.0), Complex::new(-2.25, 0.0)] {
            let p = energy_coulomb(m, n_rho, kz2, &o, FormulaVariant::Paper).unwrap();
            let q = energy_coulomb(-m, n_rho, kz2, &o, FormulaVariant::Paper).unwrap();
            prop_assert_eq!(p.value, q.value);
            let p = energy_oscillator(m, n_rho, kz2, 0.8, &o).unwrap();
            let q = energy_oscillator(-m, n_rho, kz2, 0.8, &o).unwrap();
            prop_assert_eq!(p.value, q.value);
        }
    }

    #[test]
    fn ell_squared_plus_kphi2_is_one(kphi2 in -50.0f64..50.0) {
        let ell = ell_from_kphi2(kphi2);
        let sum = ell * ell + Complex::new(kphi2, 0.0);
        prop_assert!((sum - Complex::new(1.0, 0.0)).norm() < 1e-12 * (1.0 + kphi2.abs()));
        prop_assert!(ell.re >= 0.0 && ell.im >= 0.0);
    }

    #[test]
    fn separation_constants_reproduce_real_energies(o in ordering_strategy(), n_rho in 0u32..3, m in -2i32..3) {
        let level = energy_oscillator(m, n_rho, Complex::new(-0.5, 0.0), 1.0, &o).unwrap();
        let sep = SeparationConstants::from_energy(level.value.re, m, &o, level.kz2);
        // ell from the energy matches the radial index up to sign
        prop_assert!((sep.ell * sep.ell - level.ell * level.ell).norm() < 1e-9);
    }
}

#[test]
fn table_shift_holds_for_presets_exactly() {
    let well = AxialModel::infinite_well(std::f64::consts::PI).unwrap();
    let energies: Vec<f64> = OrderingPreset::ALL
        .iter()
        .map(|p| {
            let t = spectrum_table(
                &RadialModel::Coulombic,
                &well,
                &p.ordering(),
                QuantumRanges {
                    n_rho_max: 0,
                    m_max: 0,
                    n_z_max: 1,
                },
                FormulaVariant::Paper,
            );
            t.levels[0].value.re
        })
        .collect();
    let shifts: Vec<f64> = OrderingPreset::ALL
        .iter()
        .map(|p| p.ordering::<f64>().shift())
        .collect();
    for i in 0..5 {
        for j in 0..5 {
            assert!(((energies[i] - energies[j]) + (shifts[i] - shifts[j])).abs() < 1e-12);
        }
    }
}

#[test]
fn single_precision_tables() {
    let o = OrderingPreset::BenDanielDuke.ordering::<f32>();
    let well = AxialModel::infinite_well(std::f32::consts::PI).unwrap();
    let t = spectrum_table(
        &RadialModel::Coulombic,
        &well,
        &o,
        QuantumRanges {
            n_rho_max: 0,
            m_max: 0,
            n_z_max: 1,
        },
        FormulaVariant::Paper,
    );
    assert!((t.levels[0].value.re - 0.5).abs() < 1e-6);
}

use num_complex::Complex;
use pdm_core::oracle::*;
use pdm_core::*;
use rand::{rngs::StdRng, Rng, SeedableRng};
use std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex<f64> {
    Complex::new(re, im)
}

fn random_real_operator(rng: &mut StdRng, n: usize) -> Operator {
    let d: Vec<f64> = (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect();
    let e: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(-2.0..2.0)).collect();
    TridiagonalOperator::real(&d, &e).unwrap()
}

#[test]
fn sturm_counts_match_reported_eigenvalues() {
    let mut rng = StdRng::seed_from_u64(7);
    let op = random_real_operator(&mut rng, 300);
    let ev = eig_sym_tridiag(&op, 300).unwrap();
    for _ in 0..100 {
        let lambda = rng.gen_range(-9.0..9.0);
        let below = ev.iter().filter(|x| **x < lambda).count();
        assert_eq!(sturm_count(&op, lambda), below, "lambda = {lambda}");
    }
}

#[test]
fn eigenvalues_lie_in_gershgorin_discs() {
    let mut rng = StdRng::seed_from_u64(11);
    let op = random_real_operator(&mut rng, 200);
    let discs = op.gershgorin_discs();
    for x in eig_sym_tridiag(&op, 200).unwrap() {
        assert!(discs.iter().any(|(c, r)| (c.re - x).abs() <= *r + 1e-9));
    }
    let scarf = AxialModel::scarf2(3.0).unwrap();
    let op = discretize_axial(&scarf, &Discretization::new(-20.0, 20.0, 400).unwrap()).unwrap();
    let discs = op.gershgorin_discs();
    for z in eig_complex(&op, 400).unwrap() {
        assert!(discs.iter().any(|(c, r)| (*c - z).norm() <= *r + 1e-9));
    }
}

#[test]
fn complex_solver_reproduces_bisection_on_real_input() {
    let mut rng = StdRng::seed_from_u64(3);
    let op = random_real_operator(&mut rng, 500);
    let a = eig_sym_tridiag(&op, 500).unwrap();
    let b = eig_complex(&op, 500).unwrap();
    for (x, z) in a.iter().zip(&b) {
        assert!((z - c(*x, 0.0)).norm() < 1e-8);
    }
}

#[test]
fn two_by_two_complex_example() {
    // [[1, i], [i, 1]]: λ² − 2λ + 2 = 0, so λ = 1 ± i.
    let op = TridiagonalOperator::new(vec![c(1.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 1.0)]).unwrap();
    let ev = eig_complex(&op, 2).unwrap();
    assert!(ev.iter().any(|z| (*z - c(1.0, 1.0)).norm() < 1e-12));
    assert!(ev.iter().any(|z| (*z - c(1.0, -1.0)).norm() < 1e-12));
}

#[test]
fn pt_symmetric_spectra_are_conjugation_closed() {
    let scarf = AxialModel::scarf2(3.0).unwrap();
    let op = discretize_axial(&scarf, &Discretization::new(-20.0, 20.0, 2000).unwrap()).unwrap();
    let ev = eig_complex(&op, op.len()).unwrap();
    assert!(
        conjugation_defect(&ev) <= 1e-8,
        "{}",
        conjugation_defect(&ev)
    );

    let op = discretize_axial(
        &AxialModel::Samsonov,
        &Discretization::new(-PI, PI, 1000).unwrap(),
    )
    .unwrap();
    let ev = eig_complex(&op, op.len()).unwrap();
    assert!(
        conjugation_defect(&ev) <= 1e-8,
        "{}",
        conjugation_defect(&ev)
    );
}

#[test]
fn dense_qr_cross_checks_the_scarf_spectrum() {
    let scarf = AxialModel::scarf2(5.0).unwrap();
    let op = discretize_axial(&scarf, &Discretization::new(-20.0, 20.0, 300).unwrap()).unwrap();
    let fast = eig_complex(&op, 300).unwrap();
    let dense = hessenberg_qr_eigenvalues(DenseMatrix::from_tridiagonal(&op)).unwrap();
    for z in &fast {
        let d = dense
            .iter()
            .map(|w| (*w - *z).norm())
            .fold(f64::INFINITY, f64::min);
        assert!(d < 1e-8 * (1.0 + z.norm()), "{z}: {d}");
    }
}

#[test]
fn eigenvector_residuals() {
    let scarf = AxialModel::scarf2(5.0).unwrap();
    let op = discretize_axial(&scarf, &default_axial_grid(&scarf, 2000).unwrap()).unwrap();
    for z in eig_complex(&op, 3).unwrap() {
        let pair = eigenpair(&op, z).unwrap();
        assert!(pair.residual <= 1e-8, "{}", pair.residual);
    }
}

#[test]
fn free_laplacian_lowest_eigenvalue() {
    let d = Discretization::new(0.0, PI, 1999).unwrap();
    let op = TridiagonalOperator::from_potential(&d, |_| c(0.0, 0.0)).unwrap();
    assert!((eig_sym_tridiag(&op, 1).unwrap()[0] - 1.0).abs() < 1e-5);
}

#[test]
fn well_oracle() {
    let well = AxialModel::infinite_well(PI).unwrap();
    let r = verify_axial(
        &well,
        3,
        &default_axial_grid(&well, 4000).unwrap(),
        FormulaVariant::Paper,
    )
    .unwrap();
    assert!(r.passes());
    for (level, n) in r.levels.iter().zip([1.0, 4.0, 9.0]) {
        assert!((level.numeric.re - n).abs() / n < 1e-4);
    }
    let bad = Discretization::new(0.0, 3.0, 100).unwrap();
    assert!(matches!(
        verify_axial(&well, 3, &bad, FormulaVariant::Paper),
        Err(Error::DomainMismatch { .. })
    ));
}

#[test]
fn coulomb_oracle_prefers_the_standard_offset() {
    let disc = Discretization::new(0.0, 400.0, 8000).unwrap();
    let standard = verify_radial(
        &RadialModel::Coulombic,
        0.5,
        3,
        &disc,
        FormulaVariant::Standard,
    )
    .unwrap();
    assert!(standard.passes());
    for (n, level) in standard.levels.iter().enumerate() {
        let expect = -1.0 / ((n as f64 + 1.0) * (n as f64 + 1.0));
        assert!((level.numeric.re - expect).abs() / expect.abs() < 1e-3);
        let r = level.convergence_ratio.unwrap();
        assert!((3.6..=4.4).contains(&r), "ratio {r}");
        let (_, paper_rel) = level.deviation(FormulaVariant::Paper).unwrap();
        assert!(paper_rel > 0.3);
    }
    let paper = verify_radial(
        &RadialModel::Coulombic,
        0.5,
        3,
        &disc,
        FormulaVariant::Paper,
    )
    .unwrap();
    assert!(!paper.passes());
}

#[test]
fn oscillator_oracle() {
    let model = RadialModel::oscillator(1.0_f64).unwrap();
    let disc = default_radial_grid(&model, 4000).unwrap();
    let r = verify_radial(&model, 1.0, 3, &disc, FormulaVariant::Paper).unwrap();
    assert!(r.passes());
    for (level, e) in r.levels.iter().zip([2.0, 4.0, 6.0]) {
        assert!((level.numeric.re - e).abs() < 1e-3);
        let ratio = level.convergence_ratio.unwrap();
        assert!((3.6..=4.4).contains(&ratio), "ratio {ratio}");
    }
}

#[test]
fn morse_oracle_prefers_the_squared_form() {
    let morse = AxialModel::morse(25.0_f64, 1.0).unwrap();
    let disc = default_axial_grid(&morse, 4000).unwrap();
    let standard = verify_axial(&morse, 3, &disc, FormulaVariant::Standard).unwrap();
    assert!(standard.passes());
    for (level, e) in standard.levels.iter().zip([-20.25, -12.25, -6.25]) {
        assert!((level.numeric.re - e).abs() / e.abs() < 1e-3);
        assert!(level.boundary_amplitude.unwrap() < 1e-10);
    }
    let paper = verify_axial(&morse, 3, &disc, FormulaVariant::Paper).unwrap();
    assert!(!paper.passes());
}

#[test]
fn scarf_oracle() {
    let scarf = AxialModel::scarf2(5.0).unwrap();
    let r = verify_axial(
        &scarf,
        2,
        &default_axial_grid(&scarf, 2000).unwrap(),
        FormulaVariant::Paper,
    )
    .unwrap();
    assert!(r.passes(), "{r:?}");
    for (level, e) in r.levels.iter().zip([-4.0, -1.0]) {
        assert!((level.numeric - c(e, 0.0)).norm() < 1e-2);
        assert!(level.numeric.im.abs() < 1e-6);
    }
    assert!(r.conjugation_defect.unwrap() <= 1e-8);
}

#[test]
fn samsonov_report_describes_the_missing_slot() {
    let r = verify_axial(
        &AxialModel::<f64>::Samsonov,
        4,
        &default_axial_grid(&AxialModel::Samsonov, 1000).unwrap(),
        FormulaVariant::Paper,
    )
    .unwrap();
    let labels: Vec<&str> = r.levels.iter().map(|l| l.label.as_str()).collect();
    assert_eq!(labels, ["n_z=1", "n_z=3", "n_z=4", "n_z=5"]);
    assert!(!r.neighborhood.is_empty());
    assert!(r
        .neighborhood
        .iter()
        .all(|z| (*z - c(1.0, 0.0)).norm() < 0.75));
}

#[test]
#[allow(clippy::needless_range_loop)]
fn second_order_convergence_against_richardson_limit() {
    let morse = AxialModel::morse(25.0_f64, 1.0).unwrap();
    let base = default_axial_grid(&morse, 4000).unwrap();
    let [a, b, f] = base.ladder();
    let vals: Vec<Vec<f64>> = [a, b, f, f.refined()]
        .iter()
        .map(|d| eig_sym_tridiag(&discretize_axial(&morse, d).unwrap(), 3).unwrap())
        .collect();
    for k in 0..3 {
        // Richardson limit from the two finest grids
        let limit = vals[3][k] + (vals[3][k] - vals[2][k]) / 3.0;
        for w in 0..2 {
            let ratio = (vals[w][k] - limit) / (vals[w + 1][k] - limit);
            assert!((3.5..=4.5).contains(&ratio), "level {k}: {ratio}");
        }
    }
}

#[test]
fn oracle_eigenvector_matches_closed_form_coulomb_factor() {
    // l = 1/2, n_rho = 0: U = rho e^{-rho}, eigenvalue -1.
    let disc = Discretization::new(0.0, 60.0, 6000).unwrap();
    let op = discretize_radial(&RadialModel::Coulombic, 0.5, &disc).unwrap();
    let lambda = eig_sym_tridiag(&op, 1).unwrap()[0];
    let pair = eigenpair(&op, c(lambda, 0.0)).unwrap();
    let exact: Vec<f64> = disc.nodes().map(|r| r * (-r).exp()).collect();
    let scale_num: Complex<f64> = pair.vector.iter().zip(&exact).map(|(v, u)| *v * *u).sum();
    let scale_den: f64 = exact.iter().map(|u| u * u).sum();
    let scale = scale_num / scale_den;
    let peak = exact.iter().cloned().fold(0.0, f64::max);
    let worst = pair
        .vector
        .iter()
        .zip(&exact)
        .map(|(v, u)| (*v / scale - c(*u, 0.0)).norm())
        .fold(0.0, f64::max);
    assert!(worst / peak < 1e-3, "{}", worst / peak);
}

#[test]
fn invalid_requests_are_rejected() {
    let op = TridiagonalOperator::real(&[1.0, 2.0, 3.0], &[0.0, 0.0]).unwrap();
    assert!(eig_sym_tridiag(&op, 0).is_err());
    assert!(eig_complex(&op, 4).is_err());
    assert!(Discretization::new(0.0, 1.0, 15).is_err());
    assert!(discretize_radial(
        &RadialModel::Coulombic,
        0.5,
        &Discretization::new(-1.0, 1.0, 20).unwrap()
    )
    .is_err());
}

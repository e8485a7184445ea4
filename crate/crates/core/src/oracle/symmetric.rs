//! Bisection on Sturm sequences for real symmetric tridiagonal operators.

use crate::error::{Error, Result};
use crate::oracle::grid::TridiagonalOperator;
use crate::scalar::{lit, Real};

/// Number of eigenvalues strictly below `lambda`.
///
/// Counts negative pivots of the LDLᵀ factorization of T − λI. Requires a real
/// symmetric operator.
pub fn sturm_count<T: Real>(op: &TridiagonalOperator<T>, lambda: T) -> usize {
    let d = op.diagonal();
    let e = op.off_diagonal();
    let tiny = T::min_positive_value().sqrt();
    let mut count = 0;
    let mut q = d[0].re - lambda;
    for i in 0..d.len() {
        if i > 0 {
            let ei = e[i - 1].re;
            q = d[i].re - lambda - ei * ei / q;
        }
        if q == T::zero() {
            q = -tiny;
        }
        if q < T::zero() {
            count += 1;
        }
    }
    count
}

/// The `k` smallest eigenvalues, ascending.
///
/// Each bracket is halved until it is a few ulps wide, which is well inside
/// 1e−10·max(1, R) for R the largest magnitude of the Gershgorin interval.
/// A coarser bracket is not enough here: R grows like 4/h², so at N = 4000 a
/// 1e−10·R bracket would already be 1e−3 wide.
pub fn eig_sym_tridiag<T: Real>(op: &TridiagonalOperator<T>, k: usize) -> Result<Vec<T>> {
    if !op.is_real_symmetric() {
        return Err(Error::ComplexOperator);
    }
    let n = op.len();
    if k == 0 || k > n {
        return Err(Error::InvalidEigenCount {
            requested: k,
            size: n,
        });
    }
    let (lo, hi) = op.gershgorin_interval();
    let floor_width = T::min_positive_value() / T::epsilon();
    let half = lit::<T>(0.5);

    let mut values = Vec::with_capacity(k);
    let mut floor = lo;
    for j in 0..k {
        // Eigenvalue j is the smallest x with count(x) > j; earlier roots
        // give a valid lower bound.
        let (mut a, mut b) = (floor, hi);
        while b - a > lit::<T>(2.0) * T::epsilon() * (a.abs() + b.abs()) + floor_width {
            let mid = a + (b - a) * half;
            if mid <= a || mid >= b {
                break;
            }
            if sturm_count(op, mid) > j {
                b = mid;
            } else {
                a = mid;
            }
        }
        let root = a + (b - a) * half;
        values.push(root);
        floor = a;
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::grid::Discretization;
    use num_complex::Complex;

    #[test]
    fn diagonal_operator() {
        let op = TridiagonalOperator::real(&[3.0_f64, 1.0, 2.0], &[0.0, 0.0]).unwrap();
        let ev = eig_sym_tridiag(&op, 2).unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-9 && (ev[1] - 2.0).abs() < 1e-9);
        let all = eig_sym_tridiag(&op, 3).unwrap();
        assert!(all.windows(2).all(|w| w[0] <= w[1]));
        assert!(eig_sym_tridiag(&op, 4).is_err());
        assert!(eig_sym_tridiag(&op, 0).is_err());
    }

    #[test]
    fn free_laplacian_on_pi() {
        let d = Discretization::new(0.0, std::f64::consts::PI, 1999).unwrap();
        let op = TridiagonalOperator::from_potential(&d, |_| Complex::new(0.0, 0.0)).unwrap();
        let ev = eig_sym_tridiag(&op, 1).unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-5);
    }

    #[test]
    fn rejects_complex_operator() {
        let op = TridiagonalOperator::new(
            vec![Complex::new(1.0, 1.0), Complex::new(1.0, 0.0)],
            vec![Complex::new(1.0, 0.0)],
        )
        .unwrap();
        assert!(matches!(
            eig_sym_tridiag(&op, 1),
            Err(Error::ComplexOperator)
        ));
    }

    #[test]
    fn two_by_two_closed_form() {
        // [[2, 1], [1, 2]] has eigenvalues 1 and 3.
        let op = TridiagonalOperator::real(&[2.0_f64, 2.0], &[1.0]).unwrap();
        let ev = eig_sym_tridiag(&op, 2).unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-9 && (ev[1] - 3.0).abs() < 1e-9);
        assert_eq!(sturm_count(&op, 2.0), 1);
        assert_eq!(sturm_count(&op, 0.5), 0);
        assert_eq!(sturm_count(&op, 3.5), 2);
    }

    #[test]
    fn single_precision_path() {
        let d = Discretization::new(0.0f32, std::f32::consts::PI, 200).unwrap();
        let op = TridiagonalOperator::from_potential(&d, |_| Complex::new(0.0f32, 0.0)).unwrap();
        let ev = eig_sym_tridiag(&op, 2).unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-3);
        assert!((ev[1] - 4.0).abs() < 2e-3);
    }
}

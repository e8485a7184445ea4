use num_complex::Complex;

use crate::error::{Error, Result};
use crate::model::{AxialModel, RadialModel};
use crate::scalar::{lit, Real};

/// Uniform grid with Dirichlet walls at `x_min` and `x_max`.
///
/// The `n_points` unknowns sit at x_i = x_min + i·h for i = 1..=n_points, with
/// h = (x_max − x_min)/(n_points + 1); the walls themselves are not unknowns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Discretization<T> {
    x_min: T,
    x_max: T,
    n_points: usize,
}

impl<T: Real> Discretization<T> {
    pub const MIN_POINTS: usize = 16;

    pub fn new(x_min: T, x_max: T, n_points: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite() && x_max > x_min) {
            return Err(Error::InvalidGrid(format!(
                "need finite x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if n_points < Self::MIN_POINTS {
            return Err(Error::InvalidGrid(format!(
                "need at least {} points, got {n_points}",
                Self::MIN_POINTS
            )));
        }
        Ok(Self {
            x_min,
            x_max,
            n_points,
        })
    }

    pub fn x_min(&self) -> T {
        self.x_min
    }

    pub fn x_max(&self) -> T {
        self.x_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn step(&self) -> T {
        (self.x_max - self.x_min) / lit::<T>((self.n_points + 1) as f64)
    }

    /// x_i for 0 ≤ i ≤ n_points + 1; 0 and n_points + 1 are the walls.
    pub fn node(&self, i: usize) -> T {
        if i == self.n_points + 1 {
            return self.x_max;
        }
        self.x_min + lit::<T>(i as f64) * self.step()
    }

    /// The interior nodes, in order.
    pub fn nodes(&self) -> impl Iterator<Item = T> + '_ {
        (1..=self.n_points).map(move |i| self.node(i))
    }

    /// Same box with the step exactly halved (2n + 1 points).
    pub fn refined(&self) -> Self {
        Self {
            n_points: 2 * self.n_points + 1,
            ..*self
        }
    }

    /// Three nested grids, coarse to fine, with exactly halving steps and the
    /// finest no finer than `self`.
    pub fn ladder(&self) -> [Self; 3] {
        let coarse_points = ((self.n_points + 1) / 4)
            .saturating_sub(1)
            .max(Self::MIN_POINTS);
        let coarse = Self {
            n_points: coarse_points,
            ..*self
        };
        let mid = coarse.refined();
        [coarse, mid, mid.refined()]
    }
}

/// Tridiagonal matrix for −d²/dx² + V(x) on a [`Discretization`].
///
/// Off-diagonal entries are stored once and used symmetrically, so the matrix is
/// always complex symmetric; `is_real_symmetric` records whether every entry is
/// real.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalOperator<T> {
    diagonal: Vec<Complex<T>>,
    off_diagonal: Vec<Complex<T>>,
    is_real_symmetric: bool,
}

impl<T: Real> TridiagonalOperator<T> {
    pub fn new(diagonal: Vec<Complex<T>>, off_diagonal: Vec<Complex<T>>) -> Result<Self> {
        if diagonal.is_empty() || off_diagonal.len() + 1 != diagonal.len() {
            return Err(Error::ShapeMismatch {
                expected: diagonal.len().saturating_sub(1),
                got: off_diagonal.len(),
            });
        }
        let is_real_symmetric = diagonal
            .iter()
            .chain(off_diagonal.iter())
            .all(|z| z.im == T::zero());
        Ok(Self {
            diagonal,
            off_diagonal,
            is_real_symmetric,
        })
    }

    /// Real symmetric operator from real entries.
    pub fn real(diagonal: &[T], off_diagonal: &[T]) -> Result<Self> {
        let c = |x: &T| Complex::new(*x, T::zero());
        Self::new(
            diagonal.iter().map(c).collect(),
            off_diagonal.iter().map(c).collect(),
        )
    }

    /// Second-order central stencil: diagonal 2/h² + V(x_i), off-diagonal −1/h².
    pub fn from_potential(
        disc: &Discretization<T>,
        potential: impl Fn(T) -> Complex<T>,
    ) -> Result<Self> {
        let h = disc.step();
        let inv_h2 = (h * h).recip();
        let two = lit::<T>(2.0);
        let mut diagonal = Vec::with_capacity(disc.n_points());
        for x in disc.nodes() {
            let v = potential(x);
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::InvalidGrid(format!(
                    "potential is not finite at x = {x}"
                )));
            }
            diagonal.push(Complex::new(two * inv_h2, T::zero()) + v);
        }
        let off = vec![Complex::new(-inv_h2, T::zero()); disc.n_points() - 1];
        Self::new(diagonal, off)
    }

    pub fn len(&self) -> usize {
        self.diagonal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagonal.is_empty()
    }

    pub fn diagonal(&self) -> &[Complex<T>] {
        &self.diagonal
    }

    pub fn off_diagonal(&self) -> &[Complex<T>] {
        &self.off_diagonal
    }

    pub fn is_real_symmetric(&self) -> bool {
        self.is_real_symmetric
    }

    /// Gershgorin discs as (centre, radius).
    pub fn gershgorin_discs(&self) -> Vec<(Complex<T>, T)> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut r = T::zero();
                if i > 0 {
                    r = r + self.off_diagonal[i - 1].norm();
                }
                if i + 1 < n {
                    r = r + self.off_diagonal[i].norm();
                }
                (self.diagonal[i], r)
            })
            .collect()
    }

    /// Real interval containing the spectrum of a real symmetric operator.
    pub fn gershgorin_interval(&self) -> (T, T) {
        self.gershgorin_discs()
            .into_iter()
            .fold((T::infinity(), T::neg_infinity()), |(lo, hi), (c, r)| {
                (lo.min(c.re - r), hi.max(c.re + r))
            })
    }

    /// y = T x.
    pub fn apply(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut y = self.diagonal[i] * x[i];
                if i > 0 {
                    y = y + self.off_diagonal[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    y = y + self.off_diagonal[i] * x[i + 1];
                }
                y
            })
            .collect()
    }
}

/// Finite-difference operator for −U″ + [(ℓ² − 1/4)/ρ² + Ṽ(ρ)]U, whose
/// eigenvalues approximate −K_z².
///
/// `x_min = 0` puts the wall at the origin; the first node is then ρ = h, so the
/// singular terms are never evaluated at ρ = 0.
pub fn discretize_radial<T: Real>(
    model: &RadialModel<T>,
    ell: T,
    disc: &Discretization<T>,
) -> Result<TridiagonalOperator<T>> {
    if disc.x_min() < T::zero() {
        return Err(Error::InvalidGrid(format!(
            "radial grid must start at rho >= 0, got {}",
            disc.x_min()
        )));
    }
    if !ell.is_finite() {
        return Err(Error::InvalidParameter {
            name: "ell",
            requirement: "finite",
            value: ell.to_f64().unwrap_or(f64::NAN),
        });
    }
    let centrifugal = ell * ell - lit(0.25);
    TridiagonalOperator::from_potential(disc, |rho| {
        Complex::new(centrifugal / (rho * rho) + model.potential(rho), T::zero())
    })
}

/// Default radial box: [0, 400] for the Coulombic model, [0, 20/√a] for the
/// oscillator.
pub fn default_radial_grid<T: Real>(
    model: &RadialModel<T>,
    n_points: usize,
) -> Result<Discretization<T>> {
    let x_max = match model {
        RadialModel::Coulombic => lit(400.0),
        RadialModel::Oscillator { a } => lit::<T>(20.0) / a.get().sqrt(),
    };
    Discretization::new(T::zero(), x_max, n_points)
}

/// Finite-difference operator for −Z″ + Ṽ(z)Z, whose eigenvalues approximate K_z².
pub fn discretize_axial<T: Real>(
    model: &AxialModel<T>,
    disc: &Discretization<T>,
) -> Result<TridiagonalOperator<T>> {
    let required = match model {
        AxialModel::InfiniteWell { length } => Some((T::zero(), length.get())),
        AxialModel::Samsonov => Some((-T::PI(), T::PI())),
        _ => None,
    };
    if let Some((lo, hi)) = required {
        let tol = lit::<T>(1e-12) * (T::one() + hi.abs());
        if (disc.x_min() - lo).abs() > tol || (disc.x_max() - hi).abs() > tol {
            return Err(Error::DomainMismatch {
                x_min: disc.x_min().to_f64().unwrap_or(f64::NAN),
                x_max: disc.x_max().to_f64().unwrap_or(f64::NAN),
                want_min: lo.to_f64().unwrap_or(f64::NAN),
                want_max: hi.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    TridiagonalOperator::from_potential(disc, |z| model.potential(z))
}

/// Default axial box: the well itself, [−3/ε, 30/ε] for Morse, [−25, 25] for
/// Scarf II and [−π, π] for Samsonov.
pub fn default_axial_grid<T: Real>(
    model: &AxialModel<T>,
    n_points: usize,
) -> Result<Discretization<T>> {
    let (lo, hi) = match model {
        AxialModel::InfiniteWell { length } => (T::zero(), length.get()),
        AxialModel::Morse { width, .. } => {
            (lit::<T>(-3.0) / width.get(), lit::<T>(30.0) / width.get())
        }
        AxialModel::ScarfII { .. } => (lit(-25.0), lit(25.0)),
        AxialModel::Samsonov => (-T::PI(), T::PI()),
    };
    Discretization::new(lo, hi, n_points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn grid_nodes_and_step() {
        let d = Discretization::new(0.0, 1.0, 19).unwrap();
        assert_eq!(d.step(), 0.05);
        assert_eq!(d.node(1), 0.05);
        assert_eq!(d.node(20), 1.0);
        assert_eq!(d.nodes().count(), 19);
        assert!(Discretization::new(1.0, 0.0, 20).is_err());
        assert!(Discretization::new(0.0, 1.0, 8).is_err());
    }

    #[test]
    fn ladder_halves_exactly() {
        let d = Discretization::new(0.0_f64, 400.0, 8000).unwrap();
        let [a, b, c] = d.ladder();
        assert_eq!(
            (a.n_points(), b.n_points(), c.n_points()),
            (1999, 3999, 7999)
        );
        assert!((a.step() - 2.0 * b.step()).abs() < 1e-15);
        assert!((b.step() - 2.0 * c.step()).abs() < 1e-15);
    }

    #[test]
    fn coulomb_at_half_has_no_centrifugal_term() {
        let d = Discretization::new(1e-3_f64, 400.0, 8000).unwrap();
        let op = discretize_radial(&RadialModel::Coulombic, 0.5, &d).unwrap();
        let h = d.step();
        for (i, x) in d.nodes().enumerate().step_by(997) {
            let expect = 2.0 / (h * h) - 2.0 / x;
            assert!((op.diagonal()[i].re - expect).abs() < 1e-9 * expect.abs());
        }
        assert!(op.is_real_symmetric());
        assert!(op.off_diagonal().iter().all(|e| e.re == -1.0 / (h * h)));
    }

    #[test]
    fn oscillator_stencil() {
        let d = Discretization::new(1e-3_f64, 20.0, 4000).unwrap();
        let op = discretize_radial(&RadialModel::oscillator(1.0).unwrap(), 1.0, &d).unwrap();
        let h = d.step();
        let x = d.node(10);
        let expect = 2.0 / (h * h) + 0.75 / (x * x) + x * x / 4.0;
        assert!((op.diagonal()[9].re - expect).abs() < 1e-12 * expect);
        assert!(discretize_radial(
            &RadialModel::Coulombic,
            0.5,
            &Discretization::new(-1.0, 1.0, 20).unwrap()
        )
        .is_err());
    }

    #[test]
    fn axial_operators() {
        let scarf = AxialModel::scarf2(3.0).unwrap();
        let d = Discretization::new(-20.0_f64, 20.0, 1999).unwrap();
        let op = discretize_axial(&scarf, &d).unwrap();
        assert!(!op.is_real_symmetric());
        // node 1000 sits at z = 0
        assert!(d.node(1000).abs() < 1e-12);
        assert!(op.diagonal()[999].im.abs() < 1e-12);

        let d = Discretization::new(-PI, PI, 1999).unwrap();
        let op = discretize_axial(&AxialModel::Samsonov, &d).unwrap();
        let h = d.step();
        assert!((op.diagonal()[999] - Complex::new(2.0 / (h * h) - 1.0, 0.0)).norm() < 1e-6);

        let bad = Discretization::new(-3.0, 3.0, 100).unwrap();
        assert!(matches!(
            discretize_axial(&AxialModel::Samsonov, &bad),
            Err(Error::DomainMismatch { .. })
        ));
        let well = AxialModel::infinite_well(2.0).unwrap();
        let op = discretize_axial(&well, &Discretization::new(0.0, 2.0, 100).unwrap()).unwrap();
        assert!(op.is_real_symmetric());
    }
}

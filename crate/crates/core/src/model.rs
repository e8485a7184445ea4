//! Ordering algebra, quantum numbers, mass profiles and the model catalogs.
//!
//! The von Roos kinetic operator depends on three ambiguity exponents
//! (α, β, γ) with α + β + γ = −1. For the radial mass M(ρ) = ρ⁻² they enter
//! the separated problem only through ζ = α(α−1) + γ(γ−1) − β(β+1) and the
//! constant ζ − β.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{lit, OrderingScalar, Real, Scalar};

/// A strictly positive, finite model parameter.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Positive<T>(T);

impl<T: Real> Positive<T> {
    pub fn new(name: &'static str, value: T) -> Result<Self> {
        if value.is_finite() && value > T::zero() {
            Ok(Self(value))
        } else {
            Err(Error::InvalidParameter {
                name,
                requirement: "finite and > 0",
                value: value.to_f64().unwrap_or(f64::NAN),
            })
        }
    }

    #[inline]
    pub fn get(self) -> T {
        self.0
    }
}

/// The (α, β, γ) ordering triple of the von Roos Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmbiguityOrdering<S> {
    alpha: S,
    beta: S,
    gamma: S,
}

impl<S: OrderingScalar> AmbiguityOrdering<S> {
    /// Builds an ordering, rejecting triples off the constraint α+β+γ = −1.
    pub fn new(alpha: S, beta: S, gamma: S) -> Result<Self> {
        let sum = alpha + beta + gamma;
        if (sum + S::one()).abs() > S::constraint_tolerance() {
            return Err(Error::InvalidOrdering {
                sum: sum.approx_f64(),
            });
        }
        Ok(Self { alpha, beta, gamma })
    }

    pub fn alpha(&self) -> S {
        self.alpha
    }

    pub fn beta(&self) -> S {
        self.beta
    }

    pub fn gamma(&self) -> S {
        self.gamma
    }

    /// ζ = α(α−1) + γ(γ−1) − β(β+1).
    pub fn zeta(&self) -> S {
        let one = S::one();
        self.alpha * (self.alpha - one) + self.gamma * (self.gamma - one)
            - self.beta * (self.beta + one)
    }

    /// ζ − β, the only combination through which the ordering reaches the
    /// energies.
    pub fn shift(&self) -> S {
        self.zeta() - self.beta
    }

    /// The same ordering with α and γ exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            alpha: self.gamma,
            beta: self.beta,
            gamma: self.alpha,
        }
    }

    /// Re-expresses the ordering in another scalar type without re-validating.
    pub fn cast<U: OrderingScalar + Real>(&self) -> AmbiguityOrdering<U> {
        let conv = |x: S| lit::<U>(x.approx_f64());
        AmbiguityOrdering {
            alpha: conv(self.alpha),
            beta: conv(self.beta),
            gamma: conv(self.gamma),
        }
    }
}

/// ζ for `ordering`.
pub fn zeta<S: OrderingScalar>(ordering: &AmbiguityOrdering<S>) -> S {
    ordering.zeta()
}

/// ζ − β for `ordering`.
pub fn ordering_shift<S: OrderingScalar>(ordering: &AmbiguityOrdering<S>) -> S {
    ordering.shift()
}

/// The five named parameter sets found in the literature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrderingPreset {
    GoraWilliams,
    BenDanielDuke,
    ZhuKroemer,
    LiKuhn,
    MustafaMazharimousavi,
}

impl OrderingPreset {
    pub const ALL: [OrderingPreset; 5] = [
        OrderingPreset::GoraWilliams,
        OrderingPreset::BenDanielDuke,
        OrderingPreset::ZhuKroemer,
        OrderingPreset::LiKuhn,
        OrderingPreset::MustafaMazharimousavi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OrderingPreset::GoraWilliams => "Gora-Williams",
            OrderingPreset::BenDanielDuke => "BenDaniel-Duke",
            OrderingPreset::ZhuKroemer => "Zhu-Kroemer",
            OrderingPreset::LiKuhn => "Li-Kuhn",
            OrderingPreset::MustafaMazharimousavi => "Mustafa-Mazharimousavi",
        }
    }

    /// Lower-case hyphenated identifier, as accepted on the command line.
    pub fn slug(self) -> &'static str {
        match self {
            OrderingPreset::GoraWilliams => "gora-williams",
            OrderingPreset::BenDanielDuke => "bendaniel-duke",
            OrderingPreset::ZhuKroemer => "zhu-kroemer",
            OrderingPreset::LiKuhn => "li-kuhn",
            OrderingPreset::MustafaMazharimousavi => "mustafa-mazharimousavi",
        }
    }

    /// Looks a preset up by name, ignoring case, spaces, hyphens and en-dashes.
    pub fn lookup(name: &str) -> Option<Self> {
        let key: String = name
            .chars()
            .filter(|c| !matches!(c, '-' | '–' | '—' | ' ' | '_'))
            .flat_map(char::to_lowercase)
            .collect();
        Self::ALL.into_iter().find(|p| {
            let candidate: String = p.slug().chars().filter(|c| *c != '-').collect();
            candidate == key
        })
    }

    pub fn ordering<S: OrderingScalar>(self) -> AmbiguityOrdering<S> {
        let r = S::from_ratio;
        let (alpha, beta, gamma) = match self {
            OrderingPreset::GoraWilliams => (r(-1, 1), r(0, 1), r(0, 1)),
            OrderingPreset::BenDanielDuke => (r(0, 1), r(-1, 1), r(0, 1)),
            OrderingPreset::ZhuKroemer => (r(-1, 2), r(0, 1), r(-1, 2)),
            OrderingPreset::LiKuhn => (r(0, 1), r(-1, 2), r(-1, 2)),
            OrderingPreset::MustafaMazharimousavi => (r(-1, 4), r(-1, 2), r(-1, 4)),
        };
        AmbiguityOrdering::new(alpha, beta, gamma).expect("presets satisfy the von Roos constraint")
    }
}

impl fmt::Display for OrderingPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// All five presets as `(name, ordering)` pairs.
pub fn preset_orderings<S: OrderingScalar>() -> Vec<(&'static str, AmbiguityOrdering<S>)> {
    OrderingPreset::ALL
        .into_iter()
        .map(|p| (p.name(), p.ordering()))
        .collect()
}

/// Labels of one separated state.
///
/// Where `n_z` starts depends on the axial model: see [`AxialModel::first_n_z`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuantumNumbers {
    pub n_rho: u32,
    pub m: i32,
    pub n_z: u32,
}

impl QuantumNumbers {
    pub fn new(n_rho: u32, m: i32, n_z: u32) -> Self {
        Self { n_rho, m, n_z }
    }
}

impl fmt::Display for QuantumNumbers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n_rho={},m={},n_z={}", self.n_rho, self.m, self.n_z)
    }
}

type ScalarFn<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// One factor of a separable mass function.
#[derive(Clone)]
pub enum MassFactor<T> {
    /// Identically one.
    Unit,
    /// x⁻².
    InverseSquare,
    /// Arbitrary positive, twice differentiable function.
    Custom(ScalarFn<T>),
}

impl<T: Real> MassFactor<T> {
    pub fn custom(f: impl Fn(T) -> T + Send + Sync + 'static) -> Self {
        MassFactor::Custom(Arc::new(f))
    }

    pub fn value(&self, x: T) -> T {
        match self {
            MassFactor::Unit => T::one(),
            MassFactor::InverseSquare => (x * x).recip(),
            MassFactor::Custom(f) => f(x),
        }
    }

    /// Logarithmic derivatives (f′/f, f″/f) at `x`.
    ///
    /// Closed form for the built-in factors; central differences with step 1e−5
    /// otherwise.
    pub fn log_derivatives(&self, x: T) -> (T, T) {
        match self {
            MassFactor::Unit => (T::zero(), T::zero()),
            MassFactor::InverseSquare => (lit::<T>(-2.0) / x, lit::<T>(6.0) / (x * x)),
            MassFactor::Custom(f) => {
                let h = lit::<T>(1e-5);
                let two = lit::<T>(2.0);
                let (fm, f0, fp) = (f(x - h), f(x), f(x + h));
                let d1 = (fp - fm) / (two * h);
                let d2 = (fp - two * f0 + fm) / (h * h);
                (d1 / f0, d2 / f0)
            }
        }
    }
}

impl<T> fmt::Debug for MassFactor<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MassFactor::Unit => f.write_str("Unit"),
            MassFactor::InverseSquare => f.write_str("InverseSquare"),
            MassFactor::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

/// Separable mass M(ρ, φ, z) = g(ρ) f(φ) k(z) in units of m₀.
#[derive(Debug, Clone)]
pub struct MassProfile<T> {
    pub g: MassFactor<T>,
    pub f: MassFactor<T>,
    pub k: MassFactor<T>,
}

impl<T: Real> MassProfile<T> {
    /// M = ρ⁻², the profile all spectra in this crate are built on.
    pub fn inverse_square_radial() -> Self {
        Self {
            g: MassFactor::InverseSquare,
            f: MassFactor::Unit,
            k: MassFactor::Unit,
        }
    }

    pub fn new(g: MassFactor<T>, f: MassFactor<T>, k: MassFactor<T>) -> Self {
        Self { g, f, k }
    }

    pub fn value(&self, rho: T, phi: T, z: T) -> T {
        self.g.value(rho) * self.f.value(phi) * self.k.value(z)
    }

    /// Like [`value`](Self::value), but rejects non-positive (or non-finite) mass.
    pub fn try_value(&self, rho: T, phi: T, z: T) -> Result<T> {
        let m = self.value(rho, phi, z);
        if m.is_finite() && m > T::zero() {
            Ok(m)
        } else {
            Err(Error::NonPositiveMass {
                rho: rho.to_f64().unwrap_or(f64::NAN),
                phi: phi.to_f64().unwrap_or(f64::NAN),
                z: z.to_f64().unwrap_or(f64::NAN),
            })
        }
    }
}

/// Radial interaction Ṽ(ρ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadialModel<T> {
    /// Ṽ(ρ) = −2/ρ.
    Coulombic,
    /// Ṽ(ρ) = a²ρ²/4.
    Oscillator { a: Positive<T> },
}

impl<T: Real> RadialModel<T> {
    pub fn oscillator(a: T) -> Result<Self> {
        Ok(RadialModel::Oscillator {
            a: Positive::new("a", a)?,
        })
    }

    pub fn potential(&self, rho: T) -> T {
        match self {
            RadialModel::Coulombic => lit::<T>(-2.0) / rho,
            RadialModel::Oscillator { a } => {
                let a = a.get();
                a * a * rho * rho / lit(4.0)
            }
        }
    }
}

/// Axial interaction Ṽ(z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AxialModel<T> {
    /// Impenetrable walls at z = 0 and z = L.
    InfiniteWell { length: Positive<T> },
    /// Ṽ(z) = D(e^{−2εz} − 2e^{−εz}).
    Morse {
        depth: Positive<T>,
        width: Positive<T>,
    },
    /// Ṽ(z) = −(3+A²)/(4cosh²z) − iA sinh z/cosh²z.
    ScarfII { a: Positive<T> },
    /// Ṽ(z) = −1/(cos z + 2i sin z) on [−π, π].
    Samsonov,
}

impl<T: Real> AxialModel<T> {
    pub fn infinite_well(length: T) -> Result<Self> {
        Ok(AxialModel::InfiniteWell {
            length: Positive::new("L", length)?,
        })
    }

    pub fn morse(depth: T, width: T) -> Result<Self> {
        Ok(AxialModel::Morse {
            depth: Positive::new("D", depth)?,
            width: Positive::new("eps", width)?,
        })
    }

    pub fn scarf2(a: T) -> Result<Self> {
        Ok(AxialModel::ScarfII {
            a: Positive::new("A", a)?,
        })
    }

    /// Lowest admissible axial quantum number.
    pub fn first_n_z(&self) -> u32 {
        match self {
            AxialModel::InfiniteWell { .. } | AxialModel::Samsonov => 1,
            AxialModel::Morse { .. } | AxialModel::ScarfII { .. } => 0,
        }
    }

    /// True for the real (Hermitian) potentials.
    pub fn is_hermitian(&self) -> bool {
        matches!(
            self,
            AxialModel::InfiniteWell { .. } | AxialModel::Morse { .. }
        )
    }

    /// Ṽ(z). The well returns +∞ outside (0, L).
    pub fn potential(&self, z: T) -> Complex<T> {
        match self {
            AxialModel::InfiniteWell { length } => {
                if z > T::zero() && z < length.get() {
                    Complex::new(T::zero(), T::zero())
                } else {
                    Complex::new(T::infinity(), T::zero())
                }
            }
            AxialModel::Morse { depth, width } => {
                let e = (-width.get() * z).exp();
                Complex::new(depth.get() * (e * e - lit::<T>(2.0) * e), T::zero())
            }
            AxialModel::ScarfII { a } => {
                let a = a.get();
                let c = z.cosh();
                let c2 = c * c;
                Complex::new(
                    -(lit::<T>(3.0) + a * a) / (lit::<T>(4.0) * c2),
                    -a * z.sinh() / c2,
                )
            }
            AxialModel::Samsonov => {
                let denom = Complex::new(z.cos(), lit::<T>(2.0) * z.sin());
                -denom.inv()
            }
        }
    }
}

/// Separation constants of one state: K_φ², ℓ and K_z².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparationConstants<T> {
    pub kphi2: T,
    pub ell: Complex<T>,
    pub kz2: Complex<T>,
}

impl<T: Scalar> SeparationConstants<T> {
    pub fn from_energy(
        energy: T,
        m: i32,
        ordering: &AmbiguityOrdering<T>,
        kz2: Complex<T>,
    ) -> Self {
        let kphi2 = kphi2_from_energy(energy, m, ordering);
        Self {
            kphi2,
            ell: ell_from_kphi2(kphi2),
            kz2,
        }
    }
}

/// K_φ² = 2E + 2(ζ − β − 1) − m².
pub fn kphi2_from_energy<T: Scalar>(energy: T, m: i32, ordering: &AmbiguityOrdering<T>) -> T {
    let two = lit::<T>(2.0);
    let m = lit::<T>(m as f64);
    two * energy + two * (ordering.shift() - T::one()) - m * m
}

/// ℓ = (1 − K_φ²)^{1/2} on the principal branch: real and ≥ 0 for K_φ² ≤ 1,
/// i·√(K_φ² − 1) otherwise.
pub fn ell_from_kphi2<T: Real>(kphi2: T) -> Complex<T> {
    let d = T::one() - kphi2;
    if d >= T::zero() {
        Complex::new(d.sqrt(), T::zero())
    } else {
        Complex::new(T::zero(), (-d).sqrt())
    }
}

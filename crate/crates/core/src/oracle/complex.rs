//! Eigenvalues of complex (non-Hermitian) tridiagonal operators.
//!
//! The finite-difference operators are complex symmetric (T = Tᵀ). The main
//! route is an implicit QL iteration with complex-orthogonal rotations
//! (c² + s² = 1), which keeps the tridiagonal form and costs O(N) per sweep.
//! Those rotations are not unitary, and the iteration breaks down if c² + s²
//! cannot be normalized. When that happens the operator is handed to a dense,
//! unitary, single-shift Hessenberg QR instead.

use num_complex::{Complex, Complex64};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::oracle::grid::TridiagonalOperator;
use crate::scalar::{lit, Real};

/// Largest operator accepted by [`eig_complex`].
pub const DENSE_BUDGET: usize = 4000;

/// Iteration cap per eigenvalue.
pub const MAX_SWEEPS: usize = 30;

#[derive(Debug)]
enum QlFailure {
    Breakdown,
    Stalled,
}

fn abs1<T: Real>(z: Complex<T>) -> T {
    z.re.abs() + z.im.abs()
}

fn to_c64<T: Real>(z: &Complex<T>) -> Complex64 {
    Complex64::new(
        z.re.to_f64().unwrap_or(f64::NAN),
        z.im.to_f64().unwrap_or(f64::NAN),
    )
}

/// Implicit QL for a complex symmetric tridiagonal matrix (eigenvalues only).
fn complex_symmetric_ql<T: Real>(
    op: &TridiagonalOperator<T>,
) -> Result<Vec<Complex<T>>, QlFailure> {
    let n = op.len();
    let mut d = op.diagonal().to_vec();
    let mut e = op.off_diagonal().to_vec();
    e.push(Complex::zero());
    let eps = T::epsilon();
    let breakdown = lit::<T>(1e-6);
    let one = Complex::<T>::one();
    let two = Complex::new(lit::<T>(2.0), T::zero());

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = abs1(d[m]) + abs1(d[m + 1]);
                if abs1(e[m]) <= eps * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_SWEEPS {
                return Err(QlFailure::Stalled);
            }

            // Shift from the leading 2x2 block, root chosen away from cancellation.
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let r = (g * g + one).sqrt();
            let root = if (g + r).norm() >= (g - r).norm() {
                r
            } else {
                -r
            };
            g = d[m] - d[l] + e[l] / (g + root);

            let (mut s, mut c, mut p) = (one, one, Complex::zero());
            let mut deflated_early = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                let r = (f * f + g * g).sqrt();
                e[i + 1] = r;
                let scale = abs1(f) + abs1(g);
                if abs1(r) <= breakdown * scale || scale == T::zero() {
                    if scale == T::zero() {
                        d[i + 1] = d[i + 1] - p;
                        e[m] = Complex::zero();
                        deflated_early = true;
                        break;
                    }
                    return Err(QlFailure::Breakdown);
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                let r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated_early {
                continue;
            }
            d[l] = d[l] - p;
            e[l] = g;
            e[m] = Complex::zero();
            if !(d[l].re.is_finite() && d[l].im.is_finite()) {
                return Err(QlFailure::Breakdown);
            }
        }
    }
    Ok(d)
}

/// Dense row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    n: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> DenseMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex::zero(); n * n],
        }
    }

    pub fn from_rows(rows: &[Vec<Complex<T>>]) -> Result<Self> {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::ShapeMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            m.data[i * n..(i + 1) * n].copy_from_slice(row);
        }
        Ok(m)
    }

    pub fn from_tridiagonal(op: &TridiagonalOperator<T>) -> Self {
        let n = op.len();
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = op.diagonal()[i];
            if i + 1 < n {
                m[(i, i + 1)] = op.off_diagonal()[i];
                m[(i + 1, i)] = op.off_diagonal()[i];
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_upper_hessenberg(&self) -> bool {
        (0..self.n).all(|i| (0..i.saturating_sub(1)).all(|j| self[(i, j)].is_zero()))
    }
}

impl<T> std::ops::Index<(usize, usize)> for DenseMatrix<T> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.n + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for DenseMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.n + j]
    }
}

/// Unitary Givens pair (c real, s complex) with G·[a; b] = [r; 0].
fn givens<T: Real>(a: Complex<T>, b: Complex<T>) -> (T, Complex<T>) {
    if b.is_zero() {
        return (T::one(), Complex::zero());
    }
    let (na, nb) = (a.norm(), b.norm());
    if na == T::zero() {
        return (T::zero(), b.conj() / nb);
    }
    let r = na.hypot(nb);
    (na / r, (a / na) * b.conj() / r)
}

/// Eigenvalues of an upper Hessenberg matrix by shifted QR with unitary
/// Givens rotations. Wilkinson shifts, exceptional shifts after 10 and 20
/// stalled sweeps, at most [`MAX_SWEEPS`] sweeps per eigenvalue.
pub fn hessenberg_qr_eigenvalues<T: Real>(mut h: DenseMatrix<T>) -> Result<Vec<Complex<T>>> {
    if !h.is_upper_hessenberg() {
        return Err(Error::Unsupported("matrix is not upper Hessenberg".into()));
    }
    let n = h.dim();
    let eps = T::epsilon();
    let half = lit::<T>(0.5);
    let mut eigs = Vec::with_capacity(n);
    if n == 0 {
        return Ok(eigs);
    }
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut rot = Vec::with_capacity(n);

    loop {
        if hi == 0 {
            eigs.push(h[(0, 0)]);
            break;
        }
        let mut l = hi;
        while l > 0 {
            let s = abs1(h[(l - 1, l - 1)]) + abs1(h[(l, l)]);
            let sub = abs1(h[(l, l - 1)]);
            if sub <= eps * s || sub < T::min_positive_value() {
                h[(l, l - 1)] = Complex::zero();
                break;
            }
            l -= 1;
        }
        if l == hi {
            eigs.push(h[(hi, hi)]);
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        if iter > MAX_SWEEPS {
            return Err(Error::NonConvergence {
                found: eigs.iter().map(to_c64).collect(),
            });
        }

        let (a, b, c, d) = (
            h[(hi - 1, hi - 1)],
            h[(hi - 1, hi)],
            h[(hi, hi - 1)],
            h[(hi, hi)],
        );
        let mu = if iter.is_multiple_of(10) {
            d + Complex::new(lit::<T>(0.75) * abs1(h[(hi, hi - 1)]), T::zero())
        } else {
            let mean = (a + d) * half;
            let disc = ((a - d) * (a - d) * lit::<T>(0.25) + b * c).sqrt();
            let (m1, m2) = (mean + disc, mean - disc);
            if (m1 - d).norm() <= (m2 - d).norm() {
                m1
            } else {
                m2
            }
        };

        for k in l..=hi {
            h[(k, k)] = h[(k, k)] - mu;
        }
        rot.clear();
        for k in l..hi {
            let (cs, sn) = givens(h[(k, k)], h[(k + 1, k)]);
            for j in k..=hi {
                let (x, y) = (h[(k, j)], h[(k + 1, j)]);
                h[(k, j)] = x * cs + sn * y;
                h[(k + 1, j)] = -sn.conj() * x + y * cs;
            }
            rot.push((cs, sn));
        }
        for (idx, &(cs, sn)) in rot.iter().enumerate() {
            let k = l + idx;
            for i in l..=(k + 2).min(hi) {
                let (x, y) = (h[(i, k)], h[(i, k + 1)]);
                h[(i, k)] = x * cs + y * sn.conj();
                h[(i, k + 1)] = -x * sn + y * cs;
            }
        }
        for k in l..=hi {
            h[(k, k)] = h[(k, k)] + mu;
        }
    }
    Ok(eigs)
}

fn sort_by_real_part<T: Real>(values: &mut [Complex<T>]) {
    values.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
    });
}

/// The `k` eigenvalues with the smallest real part, sorted by real part.
///
/// Accepts operators of size up to [`DENSE_BUDGET`]. Uses the structure-preserving
/// QL iteration and falls back to dense Hessenberg QR when it breaks down.
pub fn eig_complex<T: Real>(op: &TridiagonalOperator<T>, k: usize) -> Result<Vec<Complex<T>>> {
    let n = op.len();
    if n > DENSE_BUDGET {
        return Err(Error::ProblemTooLarge {
            size: n,
            limit: DENSE_BUDGET,
        });
    }
    if k == 0 || k > n {
        return Err(Error::InvalidEigenCount {
            requested: k,
            size: n,
        });
    }
    let mut values = match complex_symmetric_ql(op) {
        Ok(v) => v,
        Err(QlFailure::Breakdown) | Err(QlFailure::Stalled) => {
            hessenberg_qr_eigenvalues(DenseMatrix::from_tridiagonal(op))?
        }
    };
    sort_by_real_part(&mut values);
    values.truncate(k);
    Ok(values)
}

/// An eigenvalue, its eigenvector and the relative residual ‖Tv − λv‖/‖v‖.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpair<T> {
    pub value: Complex<T>,
    pub vector: Vec<Complex<T>>,
    pub residual: T,
}

/// LU factorization with partial pivoting of a tridiagonal T − σI.
struct TridiagonalLu<T> {
    multipliers: Vec<Complex<T>>,
    swapped: Vec<bool>,
    u0: Vec<Complex<T>>,
    u1: Vec<Complex<T>>,
    u2: Vec<Complex<T>>,
}

impl<T: Real> TridiagonalLu<T> {
    fn factor(op: &TridiagonalOperator<T>, shift: Complex<T>) -> Self {
        let n = op.len();
        let d: Vec<Complex<T>> = op.diagonal().iter().map(|x| *x - shift).collect();
        let e = op.off_diagonal();
        let scale = d
            .iter()
            .chain(e.iter())
            .fold(T::zero(), |acc, z| acc.max(z.norm()));
        let guard = Complex::new(T::epsilon() * scale.max(T::one()), T::zero());

        let mut lu = Self {
            multipliers: vec![Complex::zero(); n.saturating_sub(1)],
            swapped: vec![false; n.saturating_sub(1)],
            u0: vec![Complex::zero(); n],
            u1: vec![Complex::zero(); n],
            u2: vec![Complex::zero(); n],
        };
        let mut active = (
            d[0],
            if n > 1 { e[0] } else { Complex::zero() },
            Complex::zero(),
        );
        for i in 0..n {
            if i + 1 == n {
                lu.u0[i] = if active.0.is_zero() { guard } else { active.0 };
                break;
            }
            let lower = e[i];
            let next = (d[i + 1], if i + 2 < n { e[i + 1] } else { Complex::zero() });
            let (pivot, rest) = if abs1(active.0) >= abs1(lower) {
                let pivot0 = if active.0.is_zero() { guard } else { active.0 };
                let mult = lower / pivot0;
                lu.multipliers[i] = mult;
                (
                    (pivot0, active.1, active.2),
                    (next.0 - mult * active.1, next.1 - mult * active.2),
                )
            } else {
                let mult = active.0 / lower;
                lu.multipliers[i] = mult;
                lu.swapped[i] = true;
                (
                    (lower, next.0, next.1),
                    (active.1 - mult * next.0, active.2 - mult * next.1),
                )
            };
            lu.u0[i] = pivot.0;
            lu.u1[i] = pivot.1;
            lu.u2[i] = pivot.2;
            active = (rest.0, rest.1, Complex::zero());
        }
        lu
    }

    fn solve(&self, b: &mut [Complex<T>]) {
        let n = b.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                b.swap(i, i + 1);
            }
            b[i + 1] = b[i + 1] - self.multipliers[i] * b[i];
        }
        for i in (0..n).rev() {
            let mut acc = b[i];
            if i + 1 < n {
                acc = acc - self.u1[i] * b[i + 1];
            }
            if i + 2 < n {
                acc = acc - self.u2[i] * b[i + 2];
            }
            b[i] = acc / self.u0[i];
        }
    }
}

fn norm2<T: Real>(v: &[Complex<T>]) -> T {
    v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
}

fn residual<T: Real>(op: &TridiagonalOperator<T>, lambda: Complex<T>, v: &[Complex<T>]) -> T {
    let tv = op.apply(v);
    let r: Vec<Complex<T>> = tv.iter().zip(v).map(|(a, b)| *a - lambda * *b).collect();
    norm2(&r) / norm2(v)
}

/// Eigenvector for an approximate eigenvalue by inverse iteration.
///
/// The returned value is the Rayleigh quotient vᵀTv / vᵀv (bilinear, as suits
/// a complex symmetric operator), kept only if it lowers the residual.
pub fn eigenpair<T: Real>(op: &TridiagonalOperator<T>, approx: Complex<T>) -> Result<Eigenpair<T>> {
    let n = op.len();
    let lu = TridiagonalLu::factor(op, approx);
    let mut v: Vec<Complex<T>> = (0..n)
        .map(|i| {
            let t = lit::<T>(i as f64 + 1.0);
            Complex::new(T::one() + lit::<T>(0.1) * t.sin(), lit::<T>(0.05) * t.cos())
        })
        .collect();
    for _ in 0..4 {
        lu.solve(&mut v);
        let nv = norm2(&v);
        if !(nv.is_finite() && nv > T::zero()) {
            return Err(Error::NonConvergence {
                found: vec![to_c64(&approx)],
            });
        }
        v.iter_mut().for_each(|z| *z = *z / nv);
    }

    let tv = op.apply(&v);
    let num: Complex<T> = tv.iter().zip(&v).map(|(a, b)| *a * *b).sum();
    let den: Complex<T> = v.iter().map(|b| *b * *b).sum();
    let mut value = approx;
    let mut best = residual(op, approx, &v);
    if den.norm() > lit::<T>(1e-8) {
        let rq = num / den;
        let r = residual(op, rq, &v);
        if r < best {
            value = rq;
            best = r;
        }
    }
    Ok(Eigenpair {
        value,
        vector: v,
        residual: best,
    })
}

/// Largest distance from the conjugate of any eigenvalue to the nearest
/// eigenvalue in the list; zero for a conjugation-closed spectrum.
pub fn conjugation_defect<T: Real>(values: &[Complex<T>]) -> T {
    values
        .iter()
        .map(|z| {
            let target = z.conj();
            values
                .iter()
                .map(|w| (*w - target).norm())
                .fold(T::infinity(), T::min)
        })
        .fold(T::zero(), T::max)
}

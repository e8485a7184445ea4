//! Finite-difference oracle for the one-dimensional radial and axial problems.

pub mod complex;
pub mod grid;
pub mod symmetric;
pub mod verify;

pub use complex::{
    conjugation_defect, eig_complex, eigenpair, hessenberg_qr_eigenvalues, DenseMatrix, Eigenpair,
};
pub use grid::{
    default_axial_grid, default_radial_grid, discretize_axial, discretize_radial, Discretization,
    TridiagonalOperator,
};
pub use symmetric::{eig_sym_tridiag, sturm_count};
pub use verify::{verify_axial, verify_radial, Tolerance, TrackedLevel, VerificationReport};

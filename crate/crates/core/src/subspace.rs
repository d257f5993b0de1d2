//! Finite-dimensional complex subspace primitives: orthonormalization,
//! orthogonal projection, supremum cosine angle, and intersection dimension
//! through principal angles.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMat};

/// Cutoff policy for every rank/intersection/closedness decision.
///
/// The underlying theory works with exact closed spans; these thresholds are
/// the discretization policy that replaces exact statements in floating
/// point. All three are relative, dimensionless quantities in (0, 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankTolerance {
    /// Singular/eigenvalue cutoff relative to the largest one.
    pub relative_threshold: f64,
    /// Principal-cosine cutoff for detecting a shared direction: cosines at
    /// or above `1 - intersect_threshold` count as an intersection.
    pub intersect_threshold: f64,
    /// Angle cutoff for the "not closed" classification: an essential
    /// supremum above `1 - close_threshold` is treated as 1.
    pub close_threshold: f64,
}

impl Default for RankTolerance {
    fn default() -> Self {
        RankTolerance {
            relative_threshold: 1e-10,
            intersect_threshold: 1e-8,
            close_threshold: 1e-6,
        }
    }
}

impl RankTolerance {
    pub fn new(relative_threshold: f64, intersect_threshold: f64, close_threshold: f64) -> Result<Self> {
        for (name, v) in [
            ("relative_threshold", relative_threshold),
            ("intersect_threshold", intersect_threshold),
            ("close_threshold", close_threshold),
        ] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::InvalidInstance(format!(
                    "{name} must lie in (0, 1), got {v}"
                )));
            }
        }
        Ok(RankTolerance {
            relative_threshold,
            intersect_threshold,
            close_threshold,
        })
    }
}

/// A subspace of ℂᵐ held as an orthonormal basis (m×k matrix). k = 0 encodes
/// the zero subspace, which is a first-class value so that angle conventions
/// (angle 0 against anything) need no special casing downstream.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient_dim: usize,
    basis: CMat,
    tol: RankTolerance,
}

impl Subspace {
    /// The zero subspace {0} of ℂᵐ.
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: CMat::zeros(ambient_dim, 0),
            tol: RankTolerance::default(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &CMat {
        &self.basis
    }

    pub fn tol(&self) -> RankTolerance {
        self.tol
    }

    /// Largest entrywise deviation of basisᴴ·basis from the identity.
    pub fn orthonormality_defect(&self) -> f64 {
        let g = self.basis.adjoint().mul(&self.basis);
        let mut worst = 0.0f64;
        for i in 0..g.rows() {
            for j in 0..g.cols() {
                let expect = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g[(i, j)] - Complex64::new(expect, 0.0)).norm());
            }
        }
        worst
    }
}

/// Orthonormal basis of the span of `vectors`, with rank decided by
/// discarding singular values below `relative_threshold` times the largest.
/// Empty or all-zero input yields the zero subspace.
pub fn orthonormal_basis(vectors: &[Vec<Complex64>], tol: RankTolerance) -> Result<Subspace> {
    let ambient_dim = vectors.first().map_or(0, |v| v.len());
    for (i, v) in vectors.iter().enumerate() {
        if v.len() != ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "vector 0 has length {ambient_dim} but vector {i} has length {}",
                v.len()
            )));
        }
    }
    if vectors.is_empty() {
        return Ok(Subspace {
            ambient_dim,
            basis: CMat::zeros(0, 0),
            tol,
        });
    }
    let a = CMat::from_columns(vectors);
    let s = linalg::svd(&a);
    let k = s.rank(tol.relative_threshold);
    let mut basis = CMat::zeros(ambient_dim, k);
    for j in 0..k {
        for i in 0..ambient_dim {
            basis[(i, j)] = s.u[(i, j)];
        }
    }
    Ok(Subspace {
        ambient_dim,
        basis,
        tol,
    })
}

fn check_same_ambient(e: &Subspace, f: &Subspace) -> Result<()> {
    if e.ambient_dim != f.ambient_dim {
        return Err(Error::DimensionMismatch(format!(
            "ambient dimensions differ: {} vs {}",
            e.ambient_dim, f.ambient_dim
        )));
    }
    Ok(())
}

/// Supremum cosine angle 𝔖(E, F) = ‖P_F|_E‖ = σ_max(Q_Fᴴ Q_E), clamped to
/// [0, 1]. Returns 0 when either subspace is zero.
pub fn sup_cosine_angle(e: &Subspace, f: &Subspace) -> Result<f64> {
    check_same_ambient(e, f)?;
    if e.is_zero() || f.is_zero() {
        return Ok(0.0);
    }
    let m = f.basis.adjoint().mul(&e.basis);
    Ok(linalg::operator_norm(&m).clamp(0.0, 1.0))
}

/// Orthogonal projection of `v` onto E: Q_E · (Q_Eᴴ v).
pub fn project(e: &Subspace, v: &[Complex64]) -> Result<Vec<Complex64>> {
    if v.len() != e.ambient_dim {
        return Err(Error::DimensionMismatch(format!(
            "vector length {} does not match ambient dimension {}",
            v.len(),
            e.ambient_dim
        )));
    }
    if e.is_zero() {
        return Ok(vec![Complex64::new(0.0, 0.0); e.ambient_dim]);
    }
    let coeffs = e.basis.adjoint().mul_vec(v);
    Ok(e.basis.mul_vec(&coeffs))
}

/// Number of shared directions, counted as principal cosines of (E, F) at or
/// above `1 - intersect_threshold`.
pub fn intersection_dimension(e: &Subspace, f: &Subspace, tol: RankTolerance) -> Result<usize> {
    check_same_ambient(e, f)?;
    if e.is_zero() || f.is_zero() {
        return Ok(0);
    }
    let m = f.basis.adjoint().mul(&e.basis);
    let cutoff = 1.0 - tol.intersect_threshold;
    Ok(linalg::svd(&m)
        .singular_values
        .iter()
        .filter(|&&s| s >= cutoff)
        .count())
}

/// Orthonormal basis of E + F.
pub fn subspace_sum(e: &Subspace, f: &Subspace, tol: RankTolerance) -> Result<Subspace> {
    check_same_ambient(e, f)?;
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(e.dim() + f.dim());
    for j in 0..e.dim() {
        cols.push(e.basis.column(j));
    }
    for j in 0..f.dim() {
        cols.push(f.basis.column(j));
    }
    if cols.is_empty() {
        return Ok(Subspace::zero(e.ambient_dim));
    }
    orthonormal_basis(&cols, tol)
}

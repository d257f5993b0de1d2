//! Per-fiber frame-theoretic operators: analysis/synthesis application,
//! Gramian and mixed Gramian assembly, pseudo-inverse square roots, the
//! Gramian route to the fiber angle, and fiber frame bounds.
//!
//! Inner products are linear in the first argument and conjugate-linear in
//! the second throughout; all adjoint identities hold under that convention.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMat};
use crate::subspace::RankTolerance;

/// The values ψ₁(x), …, ψ_r(x) of r generators at one fiber.
#[derive(Debug, Clone)]
pub struct GeneratorFiber {
    vectors: Vec<Vec<Complex64>>,
}

impl GeneratorFiber {
    pub fn new(vectors: Vec<Vec<Complex64>>) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::InvalidInstance(
                "a generator fiber needs at least one vector".into(),
            ));
        }
        let m = vectors[0].len();
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != m {
                return Err(Error::DimensionMismatch(format!(
                    "fiber vector {i} has length {} but vector 0 has length {m}",
                    v.len()
                )));
            }
        }
        Ok(GeneratorFiber { vectors })
    }

    /// Fiber (ambient) dimension m.
    pub fn fiber_dim(&self) -> usize {
        self.vectors[0].len()
    }

    /// Generator count r.
    pub fn generator_count(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<Complex64>] {
        &self.vectors
    }

    /// m×r matrix whose j-th column is ψ_{j+1}(x).
    pub fn as_matrix(&self) -> CMat {
        CMat::from_columns(&self.vectors)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GramianKind {
    Plain,
    Mixed,
}

/// Matrix of pairwise fiber inner products. Plain Gramians are Hermitian
/// positive semidefinite; mixed Gramians are generally rectangular.
#[derive(Debug, Clone)]
pub struct GramianMatrix {
    entries: CMat,
    kind: GramianKind,
}

impl GramianMatrix {
    pub fn entries(&self) -> &CMat {
        &self.entries
    }

    pub fn kind(&self) -> GramianKind {
        self.kind
    }

    pub fn size(&self) -> (usize, usize) {
        (self.entries.rows(), self.entries.cols())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.max_abs() == 0.0
    }
}

fn check_fiber_dims(a: &GeneratorFiber, b: &GeneratorFiber) -> Result<()> {
    if a.fiber_dim() != b.fiber_dim() {
        return Err(Error::DimensionMismatch(format!(
            "fiber dimensions differ: {} vs {}",
            a.fiber_dim(),
            b.fiber_dim()
        )));
    }
    Ok(())
}

/// Analysis operator applied to h: component i is ⟨h, ψ_i(x)⟩.
pub fn analysis_apply(fib: &GeneratorFiber, h: &[Complex64]) -> Result<Vec<Complex64>> {
    if h.len() != fib.fiber_dim() {
        return Err(Error::DimensionMismatch(format!(
            "vector length {} does not match fiber dimension {}",
            h.len(),
            fib.fiber_dim()
        )));
    }
    Ok(fib.vectors.iter().map(|psi| linalg::inner(h, psi)).collect())
}

/// Synthesis operator applied to c: Σ c_i ψ_i(x).
pub fn synthesis_apply(fib: &GeneratorFiber, c: &[Complex64]) -> Result<Vec<Complex64>> {
    if c.len() != fib.generator_count() {
        return Err(Error::DimensionMismatch(format!(
            "coefficient length {} does not match generator count {}",
            c.len(),
            fib.generator_count()
        )));
    }
    let m = fib.fiber_dim();
    let mut out = vec![Complex64::new(0.0, 0.0); m];
    for (coef, psi) in c.iter().zip(fib.vectors.iter()) {
        for (o, p) in out.iter_mut().zip(psi.iter()) {
            *o += coef * p;
        }
    }
    Ok(out)
}

/// Gramian G(x) with entry (i, j) = ⟨ψ_j(x), ψ_i(x)⟩.
pub fn gramian(fib: &GeneratorFiber) -> GramianMatrix {
    let r = fib.generator_count();
    let mut g = CMat::zeros(r, r);
    for i in 0..r {
        for j in 0..r {
            g[(i, j)] = linalg::inner(&fib.vectors[j], &fib.vectors[i]);
        }
    }
    GramianMatrix {
        entries: g,
        kind: GramianKind::Plain,
    }
}

/// Mixed Gramian with entry (i, j) = ⟨ψ_j(x), φ_i(x)⟩, where ψ ranges over
/// `fib_a` and φ over `fib_b`. The result has shape r_b × r_a.
pub fn mixed_gramian(fib_a: &GeneratorFiber, fib_b: &GeneratorFiber) -> Result<GramianMatrix> {
    check_fiber_dims(fib_a, fib_b)?;
    let ra = fib_a.generator_count();
    let rb = fib_b.generator_count();
    let mut g = CMat::zeros(rb, ra);
    for i in 0..rb {
        for j in 0..ra {
            g[(i, j)] = linalg::inner(&fib_a.vectors[j], &fib_b.vectors[i]);
        }
    }
    Ok(GramianMatrix {
        entries: g,
        kind: GramianKind::Mixed,
    })
}

/// Hermitian-entrywise tolerance used when validating plain Gramians.
const HERMITIAN_TOL: f64 = 1e-12;

fn require_plain(g: &GramianMatrix, what: &str) -> Result<()> {
    if g.kind != GramianKind::Plain {
        return Err(Error::InvalidGramian(format!(
            "{what} requires a plain Gramian, got a mixed one"
        )));
    }
    let scale = g.entries.max_abs().max(1.0);
    let defect = g.entries.hermitian_defect();
    if defect > HERMITIAN_TOL * scale {
        return Err(Error::InvalidGramian(format!(
            "{what}: matrix is not Hermitian (defect {defect:.3e})"
        )));
    }
    Ok(())
}

/// (G†)^{1/2}: eigenvalues at or above `relative_threshold` times the largest
/// map to λ^{-1/2}, the rest to 0. The result is Hermitian PSD and satisfies
/// (G†)^{1/2} · G · (G†)^{1/2} = projection onto range(G).
pub fn pinv_sqrt(g: &GramianMatrix, tol: RankTolerance) -> Result<CMat> {
    require_plain(g, "pinv_sqrt")?;
    let n = g.entries.rows();
    let eig = linalg::hermitian_eigen(&g.entries);
    let lam_max = eig.eigenvalues.first().copied().unwrap_or(0.0).max(0.0);
    let mut out = CMat::zeros(n, n);
    if lam_max <= 0.0 {
        return Ok(out);
    }
    let cutoff = tol.relative_threshold * lam_max;
    for (k, &lam) in eig.eigenvalues.iter().enumerate() {
        if lam < cutoff {
            continue;
        }
        let w = 1.0 / lam.sqrt();
        let col = eig.eigenvectors.column(k);
        // Accumulate w · q_k q_kᴴ; outer products keep the result exactly Hermitian.
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] += w * col[i] * col[j].conj();
            }
        }
    }
    Ok(out)
}

/// Fiber angle from Gramian data alone: the operator norm of
/// (G_B†)^{1/2} · G_mix · (G_A†)^{1/2}, clamped to [0, 1].
pub fn fiber_angle_via_gramian(
    g_a: &GramianMatrix,
    g_b: &GramianMatrix,
    g_mix: &GramianMatrix,
    tol: RankTolerance,
) -> Result<f64> {
    let (mr, mc) = g_mix.size();
    if g_b.size().0 != mr || g_a.size().0 != mc {
        return Err(Error::DimensionMismatch(format!(
            "mixed Gramian is {mr}x{mc} but G_B is {}x{} and G_A is {}x{}",
            g_b.size().0,
            g_b.size().1,
            g_a.size().0,
            g_a.size().1
        )));
    }
    let left = pinv_sqrt(g_b, tol)?;
    let right = pinv_sqrt(g_a, tol)?;
    let prod = left.mul(g_mix.entries()).mul(&right);
    Ok(linalg::operator_norm(&prod).clamp(0.0, 1.0))
}

/// Fiber frame bounds of {ψ_i(x)} for its span: the extreme nonzero
/// eigenvalues of the Gramian. `None` signals a zero fiber, which callers
/// treat as lying outside the spectrum.
pub fn fiber_frame_bounds(g: &GramianMatrix, tol: RankTolerance) -> Result<Option<(f64, f64)>> {
    require_plain(g, "fiber_frame_bounds")?;
    let eig = linalg::hermitian_eigen(&g.entries);
    let lam_max = eig.eigenvalues.first().copied().unwrap_or(0.0);
    if lam_max <= 0.0 {
        return Ok(None);
    }
    let cutoff = tol.relative_threshold * lam_max;
    let lower = eig
        .eigenvalues
        .iter()
        .copied()
        .filter(|&l| l >= cutoff)
        .fold(f64::INFINITY, f64::min);
    Ok(Some((lower, lam_max)))
}

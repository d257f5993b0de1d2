//! Dense complex linear algebra kernels.
//!
//! Everything downstream reduces to small dense problems (fiber dimensions
//! and generator counts stay in the dozens), so the kernels here favour
//! accuracy over asymptotics: the SVD is a one-sided Jacobi sweep, which
//! computes small singular values with high relative accuracy — a plain
//! Gram-matrix eigenvalue route would lose them to cancellation and break
//! rank decisions made at a 1e-10 relative cutoff.

use num_complex::Complex64;

/// Orthogonality threshold for Jacobi rotations, relative to column norms.
const JACOBI_TOL: f64 = 1e-14;
/// Hard cap on Jacobi sweeps; convergence is normally reached in well under ten.
const MAX_SWEEPS: usize = 64;

/// Dense complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl std::fmt::Debug for CMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "CMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.4e}{:+.4e}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix whose j-th column is `columns[j]`. All columns must
    /// have equal length; callers validate that before reaching here.
    pub fn from_columns(columns: &[Vec<Complex64>]) -> Self {
        let cols = columns.len();
        let rows = columns.first().map_or(0, |c| c.len());
        for c in columns {
            assert_eq!(c.len(), rows, "ragged column list");
        }
        let mut m = CMat::zeros(rows, cols);
        for (j, col) in columns.iter().enumerate() {
            for (i, &z) in col.iter().enumerate() {
                m[(i, j)] = z;
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged row list");
        }
        let mut m = CMat::zeros(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            for (j, &z) in row.iter().enumerate() {
                m[(i, j)] = z;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> CMat {
        let mut m = CMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut m = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    m[(i, j)] += a * other[(k, j)];
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self[(i, j)] * v[j])
                    .sum::<Complex64>()
            })
            .collect()
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(other.data.iter()) {
            *a -= b;
        }
        m
    }

    pub fn scale(&self, s: Complex64) -> CMat {
        let mut m = self.clone();
        for a in m.data.iter_mut() {
            *a *= s;
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise deviation from Hermitian symmetry.
    pub fn hermitian_defect(&self) -> f64 {
        assert_eq!(self.rows, self.cols);
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Thin singular value decomposition `a = u · diag(σ) · vᴴ`.
///
/// `u` is rows×k and `v` is cols×k with k = min(rows, cols); singular values
/// are sorted descending. Columns of `u`/`v` belonging to zero singular
/// values are zero vectors, not an orthonormal completion.
pub struct Svd {
    pub u: CMat,
    pub singular_values: Vec<f64>,
    pub v: CMat,
}

impl Svd {
    /// Number of singular values at or above `rel_threshold` times the largest.
    pub fn rank(&self, rel_threshold: f64) -> usize {
        rank_from_singular_values(&self.singular_values, rel_threshold)
    }
}

pub fn rank_from_singular_values(sv: &[f64], rel_threshold: f64) -> usize {
    let largest = sv.first().copied().unwrap_or(0.0);
    if largest <= 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s >= rel_threshold * largest).count()
}

/// One-sided Jacobi SVD.
///
/// Rotations orthogonalize column pairs of a working copy of `a`; at
/// convergence the column norms are the singular values and the accumulated
/// rotations form `v`. When the matrix is wide the decomposition is taken on
/// the adjoint and the factors swapped.
pub fn svd(a: &CMat) -> Svd {
    if a.rows < a.cols {
        let t = svd(&a.adjoint());
        return Svd {
            u: t.v,
            singular_values: t.singular_values,
            v: t.u,
        };
    }
    let m = a.rows;
    let n = a.cols;
    let mut u = a.clone();
    let mut v = CMat::identity(n);
    if n > 0 {
        for _sweep in 0..MAX_SWEEPS {
            let mut rotated = false;
            for p in 0..n.saturating_sub(1) {
                for q in (p + 1)..n {
                    let mut app = 0.0;
                    let mut aqq = 0.0;
                    let mut apq = Complex64::new(0.0, 0.0);
                    for i in 0..m {
                        let up = u[(i, p)];
                        let uq = u[(i, q)];
                        app += up.norm_sqr();
                        aqq += uq.norm_sqr();
                        apq += up.conj() * uq;
                    }
                    if app == 0.0 || aqq == 0.0 {
                        continue;
                    }
                    let abs_apq = apq.norm();
                    if abs_apq <= JACOBI_TOL * (app * aqq).sqrt() {
                        continue;
                    }
                    rotated = true;
                    let phase = apq / abs_apq;
                    let (c, s) = jacobi_rotation(app, aqq, abs_apq);
                    apply_rotation(&mut u, p, q, c, s, phase);
                    apply_rotation(&mut v, p, q, c, s, phase);
                }
            }
            if !rotated {
                break;
            }
        }
    }
    // Extract singular values and normalize the surviving columns.
    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<f64> = (0..n)
        .map(|j| {
            (0..m)
                .map(|i| u[(i, j)].norm_sqr())
                .sum::<f64>()
                .sqrt()
        })
        .collect();
    order.sort_by(|&x, &y| norms[y].partial_cmp(&norms[x]).unwrap());
    let mut u_sorted = CMat::zeros(m, n);
    let mut v_sorted = CMat::zeros(n, n);
    let mut sv = Vec::with_capacity(n);
    for (dst, &src) in order.iter().enumerate() {
        let sigma = norms[src];
        sv.push(sigma);
        if sigma > 0.0 {
            for i in 0..m {
                u_sorted[(i, dst)] = u[(i, src)] / sigma;
            }
        }
        for i in 0..n {
            v_sorted[(i, dst)] = v[(i, src)];
        }
    }
    Svd {
        u: u_sorted,
        singular_values: sv,
        v: v_sorted,
    }
}

/// Largest singular value of `a` (0 for an empty matrix).
pub fn operator_norm(a: &CMat) -> f64 {
    if a.rows == 0 || a.cols == 0 {
        return 0.0;
    }
    svd(a).singular_values.first().copied().unwrap_or(0.0)
}

/// Real rotation (c, s) diagonalizing [[app, b],[b, aqq]] with b = |apq| > 0.
fn jacobi_rotation(app: f64, aqq: f64, b: f64) -> (f64, f64) {
    let tau = (aqq - app) / (2.0 * b);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    (c, t * c)
}

/// Right-multiplies `m` by the unitary plane rotation acting on columns
/// (p, q): col_p ← c·col_p − s·conj(phase)·col_q, col_q ← s·col_p + c·conj(phase)·col_q.
fn apply_rotation(m: &mut CMat, p: usize, q: usize, c: f64, s: f64, phase: Complex64) {
    let ph = phase.conj();
    for i in 0..m.rows {
        let vp = m[(i, p)];
        let vq = ph * m[(i, q)];
        m[(i, p)] = c * vp - s * vq;
        m[(i, q)] = s * vp + c * vq;
    }
}

/// Hermitian eigendecomposition `a = q · diag(λ) · qᴴ`, eigenvalues descending.
///
/// Classical two-sided Jacobi with complex plane rotations. The input is
/// assumed Hermitian; only callers that have validated (or constructed)
/// Hermitian matrices reach this.
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMat,
}

pub fn hermitian_eigen(a: &CMat) -> HermitianEigen {
    assert_eq!(a.rows, a.cols, "eigendecomposition needs a square matrix");
    let n = a.rows;
    let mut h = a.clone();
    let mut q = CMat::identity(n);
    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n.saturating_sub(1) {
            for r in (p + 1)..n {
                let hpr = h[(p, r)];
                let abs_hpr = hpr.norm();
                if abs_hpr == 0.0 {
                    continue;
                }
                let app = h[(p, p)].re;
                let arr = h[(r, r)].re;
                if abs_hpr <= JACOBI_TOL * (app.abs() + arr.abs()) + f64::MIN_POSITIVE {
                    continue;
                }
                rotated = true;
                let phase = hpr / abs_hpr;
                let (c, s) = jacobi_rotation(app, arr, abs_hpr);
                // h ← wᴴ h w, applied as columns then rows.
                apply_rotation(&mut h, p, r, c, s, phase);
                apply_rotation_rows(&mut h, p, r, c, s, phase);
                // Pivot entries are exactly zero after the rotation; pin the
                // diagonal to real to stop rounding from drifting it.
                h[(p, r)] = Complex64::new(0.0, 0.0);
                h[(r, p)] = Complex64::new(0.0, 0.0);
                h[(p, p)] = Complex64::new(h[(p, p)].re, 0.0);
                h[(r, r)] = Complex64::new(h[(r, r)].re, 0.0);
                apply_rotation(&mut q, p, r, c, s, phase);
            }
        }
        if !rotated {
            break;
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| h[(i, i)].re).collect();
    order.sort_by(|&x, &y| diag[y].partial_cmp(&diag[x]).unwrap());
    let mut vec_sorted = CMat::zeros(n, n);
    let mut vals = Vec::with_capacity(n);
    for (dst, &src) in order.iter().enumerate() {
        vals.push(diag[src]);
        for i in 0..n {
            vec_sorted[(i, dst)] = q[(i, src)];
        }
    }
    HermitianEigen {
        eigenvalues: vals,
        eigenvectors: vec_sorted,
    }
}

/// Left-multiplies by the adjoint of the plane rotation used in
/// [`apply_rotation`]: row_p ← c·row_p − s·phase·row_q, row_q ← s·row_p + c·phase·row_q.
fn apply_rotation_rows(m: &mut CMat, p: usize, q: usize, c: f64, s: f64, phase: Complex64) {
    for j in 0..m.cols {
        let vp = m[(p, j)];
        let vq = phase * m[(q, j)];
        m[(p, j)] = c * vp - s * vq;
        m[(q, j)] = s * vp + c * vq;
    }
}

/// ⟨u, v⟩ = Σ uᵢ · conj(vᵢ): linear in the first argument, conjugate-linear
/// in the second. Every inner product in the crate goes through here.
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    assert_eq!(u.len(), v.len(), "inner product length mismatch");
    u.iter().zip(v.iter()).map(|(a, b)| a * b.conj()).sum()
}

pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

//! Fibered representation of finitely generated invariant spaces over a
//! weighted grid: range functions, spectra, the Ω and Ω′ regions, the
//! essential-supremum angle, closedness diagnosis, and restriction.
//!
//! The essential supremum over a measure space is realized as the maximum
//! over grid fibers. Grids built by the transforms module use midpoint
//! sampling so that measure-zero exceptional points are not hit; the
//! approximation error vanishes under grid refinement for continuous fiber
//! profiles.

use std::collections::BTreeSet;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gramian::{self, GeneratorFiber};
use crate::subspace::{self, RankTolerance, Subspace};

/// Per-fiber angle routes must agree this tightly or the computation is
/// reported as numerically inconsistent (ill-conditioned fibers).
const ROUTE_DISAGREEMENT_LIMIT: f64 = 1e-6;

/// Discretization of the base measure space: fiber coordinates plus positive
/// quadrature weights. Weights are carried for norm computations; angle
/// maxima are per-fiber quantities and do not see them.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberGrid {
    coords: Vec<f64>,
    weights: Vec<f64>,
}

impl FiberGrid {
    pub fn new(coords: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidInstance("a grid needs at least one fiber".into()));
        }
        if coords.len() != weights.len() {
            return Err(Error::GridMismatch(format!(
                "{} coordinates but {} weights",
                coords.len(),
                weights.len()
            )));
        }
        if weights.iter().any(|&w| w <= 0.0 || !w.is_finite()) {
            return Err(Error::InvalidInstance("grid weights must be positive and finite".into()));
        }
        let mut sorted = coords.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInstance("grid coordinates must be unique".into()));
        }
        Ok(FiberGrid { coords, weights })
    }

    /// Midpoint grid of [0, 1): x_j = (j + 1/2)/n with weights 1/n.
    pub fn midpoint_unit(n: usize) -> Result<Self> {
        FiberGrid::new(
            (0..n).map(|j| (j as f64 + 0.5) / n as f64).collect(),
            vec![1.0 / n as f64; n],
        )
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coord(&self, j: usize) -> f64 {
        self.coords[j]
    }

    pub fn weight(&self, j: usize) -> f64 {
        self.weights[j]
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn indices(&self) -> BTreeSet<usize> {
        (0..self.len()).collect()
    }
}

/// r generators sampled over a fiber grid; every fiber holds r vectors of a
/// common fiber dimension m.
#[derive(Debug, Clone)]
pub struct FiberedGeneratorSet {
    grid: FiberGrid,
    fiber_dim: usize,
    generator_count: usize,
    fibers: Vec<GeneratorFiber>,
}

impl FiberedGeneratorSet {
    pub fn new(grid: FiberGrid, fibers: Vec<GeneratorFiber>) -> Result<Self> {
        if fibers.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "grid has {} fibers but {} were provided",
                grid.len(),
                fibers.len()
            )));
        }
        let fiber_dim = fibers[0].fiber_dim();
        let generator_count = fibers[0].generator_count();
        for (j, f) in fibers.iter().enumerate() {
            if f.fiber_dim() != fiber_dim || f.generator_count() != generator_count {
                return Err(Error::DimensionMismatch(format!(
                    "fiber {j} is {}x{} but fiber 0 is {generator_count}x{fiber_dim}",
                    f.generator_count(),
                    f.fiber_dim()
                )));
            }
            for v in f.vectors() {
                if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                    return Err(Error::InvalidInstance(format!(
                        "fiber {j} contains a non-finite entry"
                    )));
                }
            }
        }
        Ok(FiberedGeneratorSet {
            grid,
            fiber_dim,
            generator_count,
            fibers,
        })
    }

    /// Builds the fiber at each grid point from a closure mapping
    /// (fiber index, coordinate) to the r generator values there.
    pub fn from_fn<F>(grid: FiberGrid, f: F) -> Result<Self>
    where
        F: Fn(usize, f64) -> Vec<Vec<Complex64>>,
    {
        let fibers = (0..grid.len())
            .map(|j| GeneratorFiber::new(f(j, grid.coord(j))))
            .collect::<Result<Vec<_>>>()?;
        FiberedGeneratorSet::new(grid, fibers)
    }

    pub fn grid(&self) -> &FiberGrid {
        &self.grid
    }

    pub fn fiber_dim(&self) -> usize {
        self.fiber_dim
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn fiber(&self, j: usize) -> &GeneratorFiber {
        &self.fibers[j]
    }

    pub fn fibers(&self) -> &[GeneratorFiber] {
        &self.fibers
    }

    pub fn same_grid(&self, other: &FiberedGeneratorSet) -> bool {
        self.grid == other.grid
    }
}

fn check_compatible(a: &FiberedGeneratorSet, b: &FiberedGeneratorSet) -> Result<()> {
    if !a.same_grid(b) {
        return Err(Error::GridMismatch("fiber grids differ".into()));
    }
    if a.fiber_dim() != b.fiber_dim() {
        return Err(Error::DimensionMismatch(format!(
            "fiber dimensions differ: {} vs {}",
            a.fiber_dim(),
            b.fiber_dim()
        )));
    }
    Ok(())
}

/// Range function J(x_j): the span of the generator values at each fiber.
pub fn range_function(set: &FiberedGeneratorSet, tol: RankTolerance) -> Vec<Subspace> {
    set.fibers
        .iter()
        .map(|f| subspace::orthonormal_basis(f.vectors(), tol).expect("fiber vectors share a length"))
        .collect()
}

/// Spectrum: indices of fibers with a nonzero range function.
pub fn spectrum(rf: &[Subspace]) -> BTreeSet<usize> {
    rf.iter()
        .enumerate()
        .filter(|(_, s)| s.dim() >= 1)
        .map(|(j, _)| j)
        .collect()
}

/// Ω: the common spectrum of two range functions on the same grid.
pub fn omega(rf_a: &[Subspace], rf_b: &[Subspace]) -> Result<BTreeSet<usize>> {
    if rf_a.len() != rf_b.len() {
        return Err(Error::GridMismatch(format!(
            "range functions have {} and {} fibers",
            rf_a.len(),
            rf_b.len()
        )));
    }
    Ok(spectrum(rf_a).intersection(&spectrum(rf_b)).copied().collect())
}

/// Ω′: fibers of Ω where the two fiber spaces intersect trivially.
pub fn omega_prime(
    set_a: &FiberedGeneratorSet,
    set_b: &FiberedGeneratorSet,
    tol: RankTolerance,
) -> Result<BTreeSet<usize>> {
    check_compatible(set_a, set_b)?;
    let rf_a = range_function(set_a, tol);
    let rf_b = range_function(set_b, tol);
    let mut region = BTreeSet::new();
    for j in omega(&rf_a, &rf_b)? {
        if subspace::intersection_dimension(&rf_a[j], &rf_b[j], tol)? == 0 {
            region.insert(j);
        }
    }
    Ok(region)
}

/// One fiber's worth of angle data.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberAngleRow {
    pub fiber_index: usize,
    pub coord: f64,
    pub dim_a: usize,
    pub dim_b: usize,
    pub angle: f64,
    pub in_omega: bool,
    pub in_omega_prime: bool,
}

/// Per-fiber angles plus region membership and the essential-supremum
/// summary. Angles at fibers outside the queried region are recorded in the
/// rows but excluded from `ess_sup`/`argmax`.
#[derive(Debug, Clone)]
pub struct AngleProfile {
    pub rows: Vec<FiberAngleRow>,
    pub region: BTreeSet<usize>,
    pub ess_sup: f64,
    pub argmax: Option<usize>,
    pub ess_sup_omega: f64,
    pub ess_sup_omega_prime: f64,
    pub max_route_deviation: f64,
}

/// Essential-supremum angle over `region`, with every fiber evaluated by two
/// routes: the basis route (angle of the spanned fiber subspaces) and the
/// Gramian route ((G_B†)^{1/2} G_mix (G_A†)^{1/2}). The routes must agree to
/// within 1e-6 or the fiber is reported as numerically inconsistent.
pub fn ess_sup_angle(
    set_a: &FiberedGeneratorSet,
    set_b: &FiberedGeneratorSet,
    region: &BTreeSet<usize>,
    tol: RankTolerance,
) -> Result<AngleProfile> {
    check_compatible(set_a, set_b)?;
    let n = set_a.grid().len();
    if let Some(&bad) = region.iter().find(|&&j| j >= n) {
        return Err(Error::InvalidRegion(bad));
    }
    let mut rows = Vec::with_capacity(n);
    let mut max_route_deviation = 0.0f64;
    for j in 0..n {
        let fa = set_a.fiber(j);
        let fb = set_b.fiber(j);
        // Entries are finite by construction, but norms can still overflow;
        // past this point an overflow would silently become a zero basis.
        for v in fa.vectors().iter().chain(fb.vectors().iter()) {
            if !crate::linalg::vec_norm(v).is_finite() {
                return Err(Error::NumericalInconsistency(format!(
                    "fiber {j}: generator values overflow double precision"
                )));
            }
        }
        let ja = subspace::orthonormal_basis(fa.vectors(), tol)?;
        let jb = subspace::orthonormal_basis(fb.vectors(), tol)?;
        let basis_angle = subspace::sup_cosine_angle(&ja, &jb)?;
        let gram_angle = gramian::fiber_angle_via_gramian(
            &gramian::gramian(fa),
            &gramian::gramian(fb),
            &gramian::mixed_gramian(fa, fb)?,
            tol,
        )?;
        if !basis_angle.is_finite() || !gram_angle.is_finite() {
            return Err(Error::NumericalInconsistency(format!(
                "fiber {j}: angle routes produced non-finite values \
                 ({basis_angle} basis, {gram_angle} Gramian); fiber is numerically unusable"
            )));
        }
        let deviation = (basis_angle - gram_angle).abs();
        if deviation > ROUTE_DISAGREEMENT_LIMIT {
            return Err(Error::NumericalInconsistency(format!(
                "fiber {j}: basis-route angle {basis_angle} and Gramian-route angle {gram_angle} \
                 disagree by {deviation:.3e}"
            )));
        }
        max_route_deviation = max_route_deviation.max(deviation);
        let in_omega = ja.dim() >= 1 && jb.dim() >= 1;
        let in_omega_prime =
            in_omega && subspace::intersection_dimension(&ja, &jb, tol)? == 0;
        rows.push(FiberAngleRow {
            fiber_index: j,
            coord: set_a.grid().coord(j),
            dim_a: ja.dim(),
            dim_b: jb.dim(),
            angle: basis_angle,
            in_omega,
            in_omega_prime,
        });
    }
    let max_over = |pick: fn(&FiberAngleRow) -> bool| -> f64 {
        rows.iter()
            .filter(|r| pick(r))
            .map(|r| r.angle)
            .fold(0.0, f64::max)
    };
    let ess_sup_omega = max_over(|r| r.in_omega);
    let ess_sup_omega_prime = max_over(|r| r.in_omega_prime);
    let mut ess_sup = 0.0f64;
    let mut argmax = None;
    for &j in region {
        if argmax.is_none() || rows[j].angle > ess_sup {
            ess_sup = rows[j].angle;
            argmax = Some(j);
        }
    }
    if region.is_empty() {
        ess_sup = 0.0;
    }
    Ok(AngleProfile {
        rows,
        region: region.clone(),
        ess_sup,
        argmax,
        ess_sup_omega,
        ess_sup_omega_prime,
        max_route_deviation,
    })
}

/// Closedness verdict for the sum of the two generated spaces.
#[derive(Debug, Clone)]
pub struct ClosednessReport {
    pub closed: bool,
    pub ess_sup_omega_prime: f64,
    pub witnesses: Vec<usize>,
    pub profile: AngleProfile,
}

/// Decides closedness of the sum: the sum is closed exactly when the
/// essential supremum of fiber angles over Ω′ stays at or below
/// 1 − close_threshold. Fibers above the cutoff are reported as witnesses.
pub fn closedness_diagnosis(
    set_a: &FiberedGeneratorSet,
    set_b: &FiberedGeneratorSet,
    tol: RankTolerance,
) -> Result<ClosednessReport> {
    let region = omega_prime(set_a, set_b, tol)?;
    let profile = ess_sup_angle(set_a, set_b, &region, tol)?;
    let cutoff = 1.0 - tol.close_threshold;
    let witnesses: Vec<usize> = profile
        .rows
        .iter()
        .filter(|r| r.in_omega_prime && r.angle > cutoff)
        .map(|r| r.fiber_index)
        .collect();
    Ok(ClosednessReport {
        closed: profile.ess_sup <= cutoff,
        ess_sup_omega_prime: profile.ess_sup,
        witnesses,
        profile,
    })
}

/// Restriction to a region: fiber values are zeroed outside it, the grid is
/// unchanged. Restriction is idempotent and spectrum(restrict(S, R)) ⊆ R.
pub fn restrict(set: &FiberedGeneratorSet, region: &BTreeSet<usize>) -> Result<FiberedGeneratorSet> {
    let n = set.grid().len();
    if let Some(&bad) = region.iter().find(|&&j| j >= n) {
        return Err(Error::InvalidRegion(bad));
    }
    let zero = Complex64::new(0.0, 0.0);
    let fibers = set
        .fibers
        .iter()
        .enumerate()
        .map(|(j, f)| {
            if region.contains(&j) {
                f.clone()
            } else {
                GeneratorFiber::new(vec![vec![zero; set.fiber_dim]; set.generator_count])
                    .expect("shape preserved")
            }
        })
        .collect();
    FiberedGeneratorSet::new(set.grid.clone(), fibers)
}

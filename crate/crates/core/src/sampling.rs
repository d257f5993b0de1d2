//! Sampling-operator construction and injectivity diagnostics.
//!
//! A measuring family samples a function through inner products against all
//! subgroup translates of its generators. Injectivity on a target space
//! reduces to a per-fiber rank condition: the mixed Gramian of (target,
//! measuring) fibers must have rank equal to the target's fiber dimension.
//! For unions of target spaces the pairwise sums are checked, which is only
//! meaningful when every pairwise sum is closed; violated hypotheses make
//! the verdict "inapplicable" rather than a boolean.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fiber::{self, FiberedGeneratorSet};
use crate::gramian::{self, GeneratorFiber};
use crate::linalg::{self, CMat};
use crate::subspace::RankTolerance;
use crate::transforms::{self, FiniteGroupPair};

/// A measuring family together with the target spaces it is probed against.
#[derive(Debug, Clone)]
pub struct SamplingInstance {
    measuring: FiberedGeneratorSet,
    targets: Vec<FiberedGeneratorSet>,
}

impl SamplingInstance {
    pub fn new(measuring: FiberedGeneratorSet, targets: Vec<FiberedGeneratorSet>) -> Result<Self> {
        if targets.is_empty() {
            return Err(Error::InvalidInstance(
                "a sampling instance needs at least one target set".into(),
            ));
        }
        for (i, t) in targets.iter().enumerate() {
            if !measuring.same_grid(t) {
                return Err(Error::GridMismatch(format!(
                    "target {i} does not share the measuring grid"
                )));
            }
            if t.fiber_dim() != measuring.fiber_dim() {
                return Err(Error::DimensionMismatch(format!(
                    "target {i} has fiber dimension {} but the measuring set has {}",
                    t.fiber_dim(),
                    measuring.fiber_dim()
                )));
            }
        }
        Ok(SamplingInstance { measuring, targets })
    }

    pub fn measuring(&self) -> &FiberedGeneratorSet {
        &self.measuring
    }

    pub fn targets(&self) -> &[FiberedGeneratorSet] {
        &self.targets
    }

    pub fn injectivity(&self, target_index: usize, tol: RankTolerance) -> Result<InjectivityReport> {
        injectivity_check(&self.measuring, &self.targets[target_index], tol)
    }

    pub fn union_injectivity(&self, tol: RankTolerance) -> Result<UnionReport> {
        union_injectivity_check(&self.measuring, &self.targets, tol)
    }
}

/// Dense sampling matrix on a finite group: row (i, t) is the conjugated
/// translate of measuring generator i by tM, so `T · f` lists every sample
/// ⟨f, L_γψ_i⟩ with γ running over the subgroup.
pub fn sampling_matrix_finite(
    pair: FiniteGroupPair,
    measuring_generators: &[Vec<Complex64>],
) -> Result<CMat> {
    let n = pair.order();
    for (i, g) in measuring_generators.iter().enumerate() {
        if g.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "generator {i} has length {} but the group order is {n}",
                g.len()
            )));
        }
    }
    let l = pair.subgroup_order();
    let mut t = CMat::zeros(l * measuring_generators.len(), n);
    for (i, g) in measuring_generators.iter().enumerate() {
        for (ti, gamma) in pair.subgroup_elements().enumerate() {
            let row = transforms::translate(g, gamma);
            for (x, z) in row.iter().enumerate() {
                t[(i * l + ti, x)] = z.conj();
            }
        }
    }
    Ok(t)
}

/// One fiber at which the rank condition fails.
#[derive(Debug, Clone, PartialEq)]
pub struct FailingFiber {
    pub fiber_index: usize,
    pub coord: f64,
    pub mixed_rank: usize,
    pub target_dim: usize,
}

#[derive(Debug, Clone)]
pub struct InjectivityReport {
    pub injective: bool,
    pub failing_fibers: Vec<FailingFiber>,
    /// Per-fiber (index, rank, target dimension) over the target spectrum.
    pub checked_fibers: Vec<FailingFiber>,
}

fn mixed_rank(target: &GeneratorFiber, measuring: &GeneratorFiber, tol: RankTolerance) -> Result<usize> {
    let gm = gramian::mixed_gramian(target, measuring)?;
    Ok(linalg::svd(gm.entries()).rank(tol.relative_threshold))
}

/// Fiberwise injectivity of the sampling operator on the target space: at
/// every fiber of the target's spectrum, rank(mixed Gramian of target and
/// measuring fibers) must equal dim J_target. Rank uses the same relative
/// singular-value cutoff as the pseudo-inverse.
pub fn injectivity_check(
    measuring: &FiberedGeneratorSet,
    target: &FiberedGeneratorSet,
    tol: RankTolerance,
) -> Result<InjectivityReport> {
    if !measuring.same_grid(target) {
        return Err(Error::GridMismatch(
            "measuring and target sets live on different grids".into(),
        ));
    }
    if measuring.fiber_dim() != target.fiber_dim() {
        return Err(Error::DimensionMismatch(format!(
            "fiber dimensions differ: measuring {} vs target {}",
            measuring.fiber_dim(),
            target.fiber_dim()
        )));
    }
    let rf_target = fiber::range_function(target, tol);
    let mut failing = Vec::new();
    let mut checked = Vec::new();
    for j in fiber::spectrum(&rf_target) {
        let dim = rf_target[j].dim();
        let rank = mixed_rank(target.fiber(j), measuring.fiber(j), tol)?;
        let record = FailingFiber {
            fiber_index: j,
            coord: target.grid().coord(j),
            mixed_rank: rank,
            target_dim: dim,
        };
        if rank != dim {
            failing.push(record.clone());
        }
        checked.push(record);
    }
    Ok(InjectivityReport {
        injective: failing.is_empty(),
        failing_fibers: failing,
        checked_fibers: checked,
    })
}

/// Union of two generator sets: the concatenated generator list, whose range
/// function is the fiberwise sum J_A(x) + J_B(x).
pub fn union_generators(
    set_a: &FiberedGeneratorSet,
    set_b: &FiberedGeneratorSet,
) -> Result<FiberedGeneratorSet> {
    if !set_a.same_grid(set_b) {
        return Err(Error::GridMismatch("generator sets live on different grids".into()));
    }
    if set_a.fiber_dim() != set_b.fiber_dim() {
        return Err(Error::DimensionMismatch(format!(
            "fiber dimensions differ: {} vs {}",
            set_a.fiber_dim(),
            set_b.fiber_dim()
        )));
    }
    let fibers = (0..set_a.grid().len())
        .map(|j| {
            let mut vectors = set_a.fiber(j).vectors().to_vec();
            vectors.extend_from_slice(set_b.fiber(j).vectors());
            GeneratorFiber::new(vectors)
        })
        .collect::<Result<Vec<_>>>()?;
    FiberedGeneratorSet::new(set_a.grid().clone(), fibers)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnionVerdict {
    Injective,
    NotInjective,
    /// Some pairwise sum failed the closedness hypothesis; the rank
    /// criterion says nothing about the union then, and no boolean verdict
    /// is emitted.
    Inapplicable,
}

#[derive(Debug, Clone)]
pub struct PairCheck {
    pub delta: usize,
    pub theta: usize,
    pub ess_sup_omega_prime: f64,
    pub hypothesis_ok: bool,
    pub injectivity: Option<InjectivityReport>,
}

#[derive(Debug, Clone)]
pub struct UnionReport {
    pub verdict: UnionVerdict,
    pub pair_checks: Vec<PairCheck>,
    pub hypothesis_violations: Vec<(usize, usize)>,
    /// Per-fiber upper frame bound of the measuring system (max over
    /// fibers), reported for transparency; finite realizations are
    /// automatically Bessel.
    pub measuring_upper_frame_bound: Option<f64>,
}

/// Union-of-subspaces injectivity: every unordered pair (δ, θ) of target
/// spaces, including δ = θ, is checked in two steps. First the closedness
/// hypothesis — the pair's angle over Ω′ must stay strictly below
/// 1 − close_threshold; a violating pair is listed and makes the overall
/// verdict inapplicable. Second, the union generators of the pair feed the
/// fiberwise rank condition. The union is injective exactly when every pair
/// check passes.
pub fn union_injectivity_check(
    measuring: &FiberedGeneratorSet,
    targets: &[FiberedGeneratorSet],
    tol: RankTolerance,
) -> Result<UnionReport> {
    if targets.is_empty() {
        return Err(Error::InvalidInstance("the target list is empty".into()));
    }
    for (i, t) in targets.iter().enumerate() {
        if !measuring.same_grid(t) {
            return Err(Error::GridMismatch(format!(
                "target {i} does not share the measuring grid"
            )));
        }
    }
    let mut pair_checks = Vec::new();
    let mut violations = Vec::new();
    let mut all_injective = true;
    for delta in 0..targets.len() {
        for theta in delta..targets.len() {
            let closedness = fiber::closedness_diagnosis(&targets[delta], &targets[theta], tol)?;
            let hypothesis_ok = closedness.closed;
            if !hypothesis_ok {
                violations.push((delta, theta));
                pair_checks.push(PairCheck {
                    delta,
                    theta,
                    ess_sup_omega_prime: closedness.ess_sup_omega_prime,
                    hypothesis_ok,
                    injectivity: None,
                });
                continue;
            }
            let pair_set = if delta == theta {
                targets[delta].clone()
            } else {
                union_generators(&targets[delta], &targets[theta])?
            };
            let report = injectivity_check(measuring, &pair_set, tol)?;
            all_injective &= report.injective;
            pair_checks.push(PairCheck {
                delta,
                theta,
                ess_sup_omega_prime: closedness.ess_sup_omega_prime,
                hypothesis_ok,
                injectivity: Some(report),
            });
        }
    }
    let verdict = if !violations.is_empty() {
        UnionVerdict::Inapplicable
    } else if all_injective {
        UnionVerdict::Injective
    } else {
        UnionVerdict::NotInjective
    };
    let mut upper = None;
    for j in 0..measuring.grid().len() {
        let g = gramian::gramian(measuring.fiber(j));
        if let Some((_, hi)) = gramian::fiber_frame_bounds(&g, tol)? {
            upper = Some(upper.map_or(hi, |u: f64| u.max(hi)));
        }
    }
    Ok(UnionReport {
        verdict,
        pair_checks,
        hypothesis_violations: violations,
        measuring_upper_frame_bound: upper,
    })
}

//! Dense brute-force ground truth on finite groups.
//!
//! Translation-generated spaces are materialized as explicit matrices so
//! that angles, closedness data, and sampling injectivity can be computed
//! without fiberization and compared against the fiberwise pipeline. The
//! crosscheck suite drives both sides over seeded random instances and
//! reports worst-case deviations.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::fiber;
use crate::linalg::{self, CMat};
use crate::sampling;
use crate::subspace::{self, RankTolerance, Subspace};
use crate::transforms::{self, FiniteGroupPair};

/// A translation-generated space of ℂᴺ held as an orthonormal basis of the
/// span of all subgroup translates of its generators.
#[derive(Debug, Clone)]
pub struct DenseSpace {
    pair: FiniteGroupPair,
    space: Subspace,
}

impl DenseSpace {
    pub fn pair(&self) -> FiniteGroupPair {
        self.pair
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// Materializes the span of {L_γψ : ψ generator, γ in the subgroup}.
pub fn dense_space(
    pair: FiniteGroupPair,
    generators: &[Vec<Complex64>],
    tol: RankTolerance,
) -> Result<DenseSpace> {
    let n = pair.order();
    for (i, g) in generators.iter().enumerate() {
        if g.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "generator {i} has length {} but the group order is {n}",
                g.len()
            )));
        }
    }
    let mut translates = Vec::with_capacity(generators.len() * pair.subgroup_order());
    for g in generators {
        for gamma in pair.subgroup_elements() {
            translates.push(transforms::translate(g, gamma));
        }
    }
    let space = subspace::orthonormal_basis(&translates, tol)?;
    Ok(DenseSpace { pair, space })
}

/// Dense angle with its two internal methods: the SVD of Q_Bᴴ Q_A and power
/// iteration on P_B P_A P_B. The methods are expected to agree to 1e-9.
#[derive(Debug, Clone, Copy)]
pub struct DenseAngle {
    pub angle: f64,
    pub power_iteration_angle: f64,
    pub method_deviation: f64,
}

/// Squarings of the iterated operator; 2^50 effective power steps, enough to
/// damp every mode more than ~1e-12 below the top of the spectrum.
const POWER_SQUARINGS: usize = 50;

/// Supremum cosine angle between two dense spaces, computed directly in ℂᴺ.
pub fn dense_sup_angle(a: &DenseSpace, b: &DenseSpace) -> Result<DenseAngle> {
    if a.space.ambient_dim() != b.space.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "ambient dimensions differ: {} vs {}",
            a.space.ambient_dim(),
            b.space.ambient_dim()
        )));
    }
    let svd_angle = subspace::sup_cosine_angle(&a.space, &b.space)?;
    let power_angle = power_iteration_angle(&a.space, &b.space);
    Ok(DenseAngle {
        angle: svd_angle,
        power_iteration_angle: power_angle,
        method_deviation: (svd_angle - power_angle).abs(),
    })
}

/// Largest eigenvalue of H = P_B P_A P_B by power iteration, square-rooted.
///
/// The iterated operator is squared repeatedly (renormalizing each time), so
/// one matrix-vector product at the end equals 2^50 plain power steps. Plain
/// iteration stalls when the top of the spectrum is clustered — the residual
/// error is proportional to the gap — while squaring damps every mode more
/// than ~1e-12 below the top, and any survivors lie within rounding of λ_max
/// anyway. No singular value decomposition is involved, which keeps this an
/// independent route from the main angle computation.
fn power_iteration_angle(a: &Subspace, b: &Subspace) -> f64 {
    if a.is_zero() || b.is_zero() {
        return 0.0;
    }
    let n = a.ambient_dim();
    let p_a = a.basis().mul(&a.basis().adjoint());
    let p_b = b.basis().mul(&b.basis().adjoint());
    let h = p_b.mul(&p_a).mul(&p_b);
    if h.max_abs() == 0.0 {
        return 0.0;
    }
    let mut iterated = h.scale(Complex64::new(1.0 / h.max_abs(), 0.0));
    for _ in 0..POWER_SQUARINGS {
        iterated = iterated.mul(&iterated);
        let scale = iterated.max_abs();
        if scale == 0.0 {
            return 0.0;
        }
        iterated = iterated.scale(Complex64::new(1.0 / scale, 0.0));
    }
    // Deterministic pseudo-random start vector.
    let mut state = 0x2545f4914f6cdd1du64;
    let mut next = move || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((state >> 11) as f64) / ((1u64 << 53) as f64) * 2.0 - 1.0
    };
    let v0: Vec<Complex64> = (0..n).map(|_| Complex64::new(next(), next())).collect();
    let v = iterated.mul_vec(&v0);
    let vv = linalg::inner(&v, &v).re;
    if vv <= f64::MIN_POSITIVE {
        return 0.0;
    }
    // Rayleigh quotient on the original operator.
    let hv = h.mul_vec(&v);
    let lambda = linalg::inner(&hv, &v).re / vv;
    lambda.max(0.0).sqrt().clamp(0.0, 1.0)
}

/// Dense injectivity: rank(T · Q_S) equals dim S under the relative cutoff.
pub fn dense_injectivity(t: &CMat, s: &DenseSpace, tol: RankTolerance) -> Result<bool> {
    if t.cols() != s.space.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "sampling matrix has {} columns but the space lives in dimension {}",
            t.cols(),
            s.space.ambient_dim()
        )));
    }
    if s.dim() == 0 {
        return Ok(true);
    }
    let restricted = t.mul(s.space.basis());
    Ok(linalg::svd(&restricted).rank(tol.relative_threshold) == s.dim())
}

/// Basis of the nullspace of T restricted to S, mapped back to ℂᴺ. Used to
/// exhibit concrete witnesses of non-injectivity.
pub fn dense_nullspace_witness(t: &CMat, s: &DenseSpace, tol: RankTolerance) -> Result<Vec<Vec<Complex64>>> {
    if t.cols() != s.space.ambient_dim() {
        return Err(Error::DimensionMismatch("sampling matrix shape".into()));
    }
    if s.dim() == 0 {
        return Ok(Vec::new());
    }
    let restricted = t.mul(s.space.basis());
    let svd = linalg::svd(&restricted);
    let rank = svd.rank(tol.relative_threshold);
    let mut witnesses = Vec::new();
    for j in rank..svd.singular_values.len() {
        let coeffs = svd.v.column(j);
        witnesses.push(s.space.basis().mul_vec(&coeffs));
    }
    Ok(witnesses)
}

/// Knobs for the seeded crosscheck. Sizes follow the acceptance layout:
/// orders 4..=64, subgroup index a uniform divisor, at most 3 generators,
/// complex standard-normal entries.
#[derive(Debug, Clone, Copy)]
pub struct CrosscheckConfig {
    pub seed: u64,
    pub angle_instances: usize,
    pub injectivity_instances: usize,
    pub min_order: usize,
    pub max_order: usize,
    pub max_generators: usize,
}

impl Default for CrosscheckConfig {
    fn default() -> Self {
        CrosscheckConfig {
            seed: 0,
            angle_instances: 200,
            injectivity_instances: 100,
            min_order: 4,
            max_order: 64,
            max_generators: 3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct AngleInstanceRecord {
    pub index: usize,
    pub order: usize,
    pub coset_count: usize,
    pub generators_a: usize,
    pub generators_b: usize,
    pub pipeline_angle: f64,
    pub oracle_angle: f64,
    pub deviation: f64,
    pub method_deviation: f64,
    pub route_deviation: f64,
}

#[derive(Debug, Clone)]
pub struct InjectivityInstanceRecord {
    pub index: usize,
    pub order: usize,
    pub coset_count: usize,
    pub measuring_generators: usize,
    pub target_generators: usize,
    pub pipeline_injective: bool,
    pub oracle_injective: bool,
    pub agree: bool,
}

#[derive(Debug, Clone)]
pub struct CrosscheckSummary {
    pub config: CrosscheckConfig,
    pub angle_records: Vec<AngleInstanceRecord>,
    pub injectivity_records: Vec<InjectivityInstanceRecord>,
    pub max_angle_deviation: f64,
    pub max_method_deviation: f64,
    pub max_route_deviation: f64,
    pub injectivity_disagreements: usize,
    pub failures: Vec<String>,
}

impl CrosscheckSummary {
    /// True when every deviation stays within `max_angle_deviation_limit`
    /// and no instance disagreed or failed outright.
    pub fn passed(&self, max_angle_deviation_limit: f64) -> bool {
        self.failures.is_empty()
            && self.injectivity_disagreements == 0
            && self.max_angle_deviation <= max_angle_deviation_limit
    }
}

struct InstanceSampler {
    rng: ChaCha8Rng,
    min_order: usize,
    max_order: usize,
    max_generators: usize,
}

impl InstanceSampler {
    fn group(&mut self) -> FiniteGroupPair {
        let n = self.rng.random_range(self.min_order..=self.max_order);
        let divisors: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
        let m = divisors[self.rng.random_range(0..divisors.len())];
        FiniteGroupPair::new(n, m).expect("m divides n by construction")
    }

    fn generators(&mut self, n: usize) -> Vec<Vec<Complex64>> {
        let r = self.rng.random_range(1..=self.max_generators);
        (0..r)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let re: f64 = self.rng.sample(StandardNormal);
                        let im: f64 = self.rng.sample(StandardNormal);
                        Complex64::new(re, im)
                    })
                    .collect()
            })
            .collect()
    }
}

/// Runs the seeded pipeline-versus-oracle comparison. Instance parameters
/// are drawn in a fixed order from one ChaCha stream, so a seed pins the
/// whole suite byte for byte. Degenerate instances are mixed in on a fixed
/// schedule: every tenth angle instance duplicates a generator (rank-
/// deficient fibers, unchanged spans) and one instance per kind uses an
/// all-zero generator.
pub fn crosscheck_suite(config: CrosscheckConfig) -> CrosscheckSummary {
    let tol = RankTolerance::default();
    let mut sampler = InstanceSampler {
        rng: ChaCha8Rng::seed_from_u64(config.seed),
        min_order: config.min_order.max(1),
        max_order: config.max_order.max(config.min_order.max(1)),
        max_generators: config.max_generators.max(1),
    };
    let mut summary = CrosscheckSummary {
        config,
        angle_records: Vec::with_capacity(config.angle_instances),
        injectivity_records: Vec::with_capacity(config.injectivity_instances),
        max_angle_deviation: 0.0,
        max_method_deviation: 0.0,
        max_route_deviation: 0.0,
        injectivity_disagreements: 0,
        failures: Vec::new(),
    };

    for index in 0..config.angle_instances {
        let pair = sampler.group();
        let mut gens_a = sampler.generators(pair.order());
        let gens_b = sampler.generators(pair.order());
        if index % 10 == 3 && gens_a.len() >= 2 {
            // Rank-deficient fibers with the span unchanged.
            let dup = gens_a[0].clone();
            *gens_a.last_mut().unwrap() = dup;
        }
        if index == 7 {
            gens_a = vec![vec![Complex64::new(0.0, 0.0); pair.order()]];
        }
        let outcome = (|| -> Result<AngleInstanceRecord> {
            let set_a = transforms::fiberize_group(&gens_a, pair)?;
            let set_b = transforms::fiberize_group(&gens_b, pair)?;
            let region = fiber::omega(
                &fiber::range_function(&set_a, tol),
                &fiber::range_function(&set_b, tol),
            )?;
            let profile = fiber::ess_sup_angle(&set_a, &set_b, &region, tol)?;
            let dense_a = dense_space(pair, &gens_a, tol)?;
            let dense_b = dense_space(pair, &gens_b, tol)?;
            let dense = dense_sup_angle(&dense_a, &dense_b)?;
            Ok(AngleInstanceRecord {
                index,
                order: pair.order(),
                coset_count: pair.coset_count(),
                generators_a: gens_a.len(),
                generators_b: gens_b.len(),
                pipeline_angle: profile.ess_sup,
                oracle_angle: dense.angle,
                deviation: (profile.ess_sup - dense.angle).abs(),
                method_deviation: dense.method_deviation,
                route_deviation: profile.max_route_deviation,
            })
        })();
        match outcome {
            Ok(record) => {
                summary.max_angle_deviation = summary.max_angle_deviation.max(record.deviation);
                summary.max_method_deviation =
                    summary.max_method_deviation.max(record.method_deviation);
                summary.max_route_deviation =
                    summary.max_route_deviation.max(record.route_deviation);
                summary.angle_records.push(record);
            }
            Err(e) => summary
                .failures
                .push(format!("angle instance {index}: {e}")),
        }
    }

    for index in 0..config.injectivity_instances {
        let pair = sampler.group();
        let mut measuring_gens = sampler.generators(pair.order());
        let target_gens = sampler.generators(pair.order());
        if index == 5 {
            measuring_gens = vec![vec![Complex64::new(0.0, 0.0); pair.order()]];
        }
        let outcome = (|| -> Result<InjectivityInstanceRecord> {
            let measuring = transforms::fiberize_group(&measuring_gens, pair)?;
            let target = transforms::fiberize_group(&target_gens, pair)?;
            let report = sampling::injectivity_check(&measuring, &target, tol)?;
            let t = sampling::sampling_matrix_finite(pair, &measuring_gens)?;
            let dense_target = dense_space(pair, &target_gens, tol)?;
            let oracle = dense_injectivity(&t, &dense_target, tol)?;
            Ok(InjectivityInstanceRecord {
                index,
                order: pair.order(),
                coset_count: pair.coset_count(),
                measuring_generators: measuring_gens.len(),
                target_generators: target_gens.len(),
                pipeline_injective: report.injective,
                oracle_injective: oracle,
                agree: report.injective == oracle,
            })
        })();
        match outcome {
            Ok(record) => {
                if !record.agree {
                    summary.injectivity_disagreements += 1;
                }
                summary.injectivity_records.push(record);
            }
            Err(e) => summary
                .failures
                .push(format!("injectivity instance {index}: {e}")),
        }
    }

    summary
}

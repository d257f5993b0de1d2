//! Concrete (group, subgroup) realizations.
//!
//! For the cyclic group ℤ_N with subgroup Γ = Mℤ_N this module provides the
//! exact Zak transform — a bank of length-L DFTs over cosets, L = N/M —
//! together with the translation-to-multiplication intertwining it induces.
//! For the real line acted on by ℤ it provides fiberization of closed-form
//! Fourier profiles, truncated to |k| ≤ K.
//!
//! Normalization is counting measure on ℤ_N and Γ with dual weight 1/L per
//! character: the unique choice making the Zak transform unitary without
//! prefactors (verified by test, not assumed). The coset section is the
//! canonical representative set {0, …, M−1}; a different section would
//! permute and modulate fibers without moving any angle.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fiber::{FiberGrid, FiberedGeneratorSet};
use crate::gramian::GeneratorFiber;
use crate::linalg::CMat;

/// The pair (ℤ_N, Mℤ_N): a cyclic group with the subgroup generated by M.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiniteGroupPair {
    order: usize,
    coset_count: usize,
    subgroup_order: usize,
}

impl FiniteGroupPair {
    pub fn new(order: usize, coset_count: usize) -> Result<Self> {
        if order == 0 || coset_count == 0 || !order.is_multiple_of(coset_count) {
            return Err(Error::InvalidInstance(format!(
                "subgroup index {coset_count} must divide the group order {order}"
            )));
        }
        Ok(FiniteGroupPair {
            order,
            coset_count,
            subgroup_order: order / coset_count,
        })
    }

    /// N, the order of the group.
    pub fn order(&self) -> usize {
        self.order
    }

    /// M, the number of cosets (and the generator of the subgroup).
    pub fn coset_count(&self) -> usize {
        self.coset_count
    }

    /// L = N/M, the order of the subgroup and of its dual.
    pub fn subgroup_order(&self) -> usize {
        self.subgroup_order
    }

    /// The subgroup elements {0, M, 2M, …, N−M}.
    pub fn subgroup_elements(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.subgroup_order).map(|t| t * self.coset_count)
    }
}

/// Zak coefficients: an L×M array indexed (character α, coset c), viewed as
/// an element of L²(dual; ℂ^M) with dual weight 1/L per character.
#[derive(Debug, Clone)]
pub struct ZakArray {
    pair: FiniteGroupPair,
    values: CMat,
}

impl ZakArray {
    pub fn pair(&self) -> FiniteGroupPair {
        self.pair
    }

    pub fn value(&self, alpha: usize, coset: usize) -> Complex64 {
        self.values[(alpha, coset)]
    }

    pub fn values(&self) -> &CMat {
        &self.values
    }

    /// Row over cosets at a fixed character.
    pub fn fiber_row(&self, alpha: usize) -> Vec<Complex64> {
        (0..self.pair.coset_count())
            .map(|c| self.values[(alpha, c)])
            .collect()
    }

    /// Weighted norm: Σ_α (1/L)‖row(α)‖². Equals ‖f‖² for a transform of f.
    pub fn weighted_norm_sqr(&self) -> f64 {
        let l = self.pair.subgroup_order() as f64;
        let mut total = 0.0;
        for alpha in 0..self.values.rows() {
            for c in 0..self.values.cols() {
                total += self.values[(alpha, c)].norm_sqr();
            }
        }
        total / l
    }
}

fn unit_phase(turns_num: i64, turns_den: usize) -> Complex64 {
    // e^{2πi · num/den} with the argument reduced before evaluation.
    let den = turns_den as i64;
    let reduced = turns_num.rem_euclid(den);
    Complex64::from_polar(1.0, 2.0 * PI * reduced as f64 / den as f64)
}

fn check_length(f: &[Complex64], pair: FiniteGroupPair) -> Result<()> {
    if f.len() != pair.order() {
        return Err(Error::DimensionMismatch(format!(
            "signal length {} does not match group order {}",
            f.len(),
            pair.order()
        )));
    }
    Ok(())
}

/// Zak transform: for each coset c the row over α is the length-L DFT of the
/// subsampled sequence t ↦ f(tM + c).
pub fn zak_forward(f: &[Complex64], pair: FiniteGroupPair) -> Result<ZakArray> {
    check_length(f, pair)?;
    let l = pair.subgroup_order();
    let m = pair.coset_count();
    let mut values = CMat::zeros(l, m);
    for c in 0..m {
        for alpha in 0..l {
            let mut acc = Complex64::new(0.0, 0.0);
            for t in 0..l {
                let w = unit_phase(-((alpha * t) as i64), l);
                acc += f[t * m + c] * w;
            }
            values[(alpha, c)] = acc;
        }
    }
    Ok(ZakArray { pair, values })
}

/// Inverse Zak transform: f(tM + c) = (1/L) Σ_α values(α, c) e^{2πiαt/L}.
pub fn zak_inverse(z: &ZakArray, pair: FiniteGroupPair) -> Result<Vec<Complex64>> {
    if z.pair != pair {
        return Err(Error::DimensionMismatch(format!(
            "Zak array was built for (N={}, M={}), not (N={}, M={})",
            z.pair.order(),
            z.pair.coset_count(),
            pair.order(),
            pair.coset_count()
        )));
    }
    let l = pair.subgroup_order();
    let m = pair.coset_count();
    let mut f = vec![Complex64::new(0.0, 0.0); pair.order()];
    for c in 0..m {
        for t in 0..l {
            let mut acc = Complex64::new(0.0, 0.0);
            for alpha in 0..l {
                acc += z.values[(alpha, c)] * unit_phase((alpha * t) as i64, l);
            }
            f[t * m + c] = acc / l as f64;
        }
    }
    Ok(f)
}

/// Cyclic left translation: (L_γ f)(x) = f(x − γ mod N). γ is reduced mod N.
pub fn translate(f: &[Complex64], gamma: usize) -> Vec<Complex64> {
    let n = f.len();
    if n == 0 {
        return Vec::new();
    }
    let shift = gamma % n;
    (0..n).map(|x| f[(x + n - shift) % n]).collect()
}

/// Maximum entrywise deviation of 𝒵(L_γ f) from the per-character modulation
/// e^{−2πiαt/L}·𝒵f, the multiplication operator the Zak transform turns the
/// translation into. γ must lie in the subgroup.
pub fn intertwine_check(f: &[Complex64], gamma: usize, pair: FiniteGroupPair) -> Result<f64> {
    check_length(f, pair)?;
    if !gamma.is_multiple_of(pair.coset_count()) {
        return Err(Error::InvalidSubgroupElement(format!(
            "{gamma} is not a multiple of {}",
            pair.coset_count()
        )));
    }
    let t0 = (gamma / pair.coset_count()) % pair.subgroup_order();
    let z_f = zak_forward(f, pair)?;
    let z_shifted = zak_forward(&translate(f, gamma), pair)?;
    let l = pair.subgroup_order();
    let mut worst = 0.0f64;
    for alpha in 0..l {
        let modulation = unit_phase(-((alpha * t0) as i64), l);
        for c in 0..pair.coset_count() {
            let expect = modulation * z_f.values[(alpha, c)];
            worst = worst.max((z_shifted.values[(alpha, c)] - expect).norm());
        }
    }
    Ok(worst)
}

/// Fiberizes generators on the group side: the grid is the L dual characters
/// with weight 1/L each, and the fiber vector of generator i at α is the
/// coset row (𝒵ψ_i)(α, ·) ∈ ℂ^M. Feeding the result to the fiber analysis
/// turns translation-invariant questions into fiberwise ones.
pub fn fiberize_group(
    generators: &[Vec<Complex64>],
    pair: FiniteGroupPair,
) -> Result<FiberedGeneratorSet> {
    if generators.is_empty() {
        return Err(Error::InvalidInstance("at least one generator is required".into()));
    }
    let zaks = generators
        .iter()
        .map(|g| zak_forward(g, pair))
        .collect::<Result<Vec<_>>>()?;
    let l = pair.subgroup_order();
    let grid = FiberGrid::new(
        (0..l).map(|alpha| alpha as f64).collect(),
        vec![1.0 / l as f64; l],
    )?;
    let fibers = (0..l)
        .map(|alpha| GeneratorFiber::new(zaks.iter().map(|z| z.fiber_row(alpha)).collect()))
        .collect::<Result<Vec<_>>>()?;
    FiberedGeneratorSet::new(grid, fibers)
}

/// Closed-form Fourier profile ξ ↦ f̂(ξ) on the real line.
#[derive(Debug, Clone)]
pub enum FourierProfile {
    /// f̂(ξ) = e^{−aπξ²}.
    Gaussian { decay: f64 },
    /// f̂(ξ) = sinc(ξ)^{p+1} with sinc(0) = 1.
    BSpline { order: usize },
    /// Indicator of [lo, hi).
    Bandlimit { lo: f64, hi: f64 },
    /// f̂ ≡ 1.
    Delta,
    /// Piecewise-linear interpolation of (ξ, value) samples; zero outside
    /// the sampled range.
    Table { points: Vec<(f64, f64)> },
}

impl FourierProfile {
    pub fn table(mut points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::ProfileEvaluation(
                "a table profile needs at least two points".into(),
            ));
        }
        points.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        if points.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::ProfileEvaluation("table abscissae must be unique".into()));
        }
        if points.iter().any(|(x, v)| !x.is_finite() || !v.is_finite()) {
            return Err(Error::ProfileEvaluation("table entries must be finite".into()));
        }
        Ok(FourierProfile::Table { points })
    }

    pub fn eval(&self, xi: f64) -> Result<f64> {
        let value = match self {
            FourierProfile::Gaussian { decay } => (-decay * PI * xi * xi).exp(),
            FourierProfile::BSpline { order } => sinc(xi).powi(*order as i32 + 1),
            FourierProfile::Bandlimit { lo, hi } => {
                if *lo <= xi && xi < *hi {
                    1.0
                } else {
                    0.0
                }
            }
            FourierProfile::Delta => 1.0,
            FourierProfile::Table { points } => {
                let first = points.first().unwrap();
                let last = points.last().unwrap();
                if xi < first.0 || xi > last.0 {
                    0.0
                } else {
                    let idx = points.partition_point(|(x, _)| *x <= xi);
                    if idx == 0 {
                        first.1
                    } else if idx == points.len() {
                        last.1
                    } else {
                        let (x0, v0) = points[idx - 1];
                        let (x1, v1) = points[idx];
                        v0 + (v1 - v0) * (xi - x0) / (x1 - x0)
                    }
                }
            }
        };
        if !value.is_finite() {
            return Err(Error::ProfileEvaluation(format!(
                "profile produced a non-finite value at xi = {xi}"
            )));
        }
        Ok(value)
    }
}

fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        (PI * x).sin() / (PI * x)
    }
}

/// Fiberizes Fourier profiles for the (ℝ, ℤ) setting: the grid is the
/// midpoint grid of [0, 1) with weights 1/n, and the fiber vector of profile
/// i at ξ is (f̂_i(ξ + k)) for k = −K, …, K. Fibers live in ℂ^{2K+1}; the
/// untruncated fibers live in ℓ²(ℤ) and K controls the tail that is dropped.
pub fn fiberize_real_line(
    profiles: &[FourierProfile],
    grid_size: usize,
    truncation: usize,
) -> Result<FiberedGeneratorSet> {
    if profiles.is_empty() {
        return Err(Error::InvalidInstance("at least one profile is required".into()));
    }
    if grid_size == 0 {
        return Err(Error::InvalidInstance("grid_size must be at least 1".into()));
    }
    let grid = FiberGrid::midpoint_unit(grid_size)?;
    let k_max = truncation as i64;
    let fibers = (0..grid_size)
        .map(|j| {
            let xi = grid.coord(j);
            let vectors = profiles
                .iter()
                .map(|p| {
                    (-k_max..=k_max)
                        .map(|k| Ok(Complex64::new(p.eval(xi + k as f64)?, 0.0)))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            GeneratorFiber::new(vectors)
        })
        .collect::<Result<Vec<_>>>()?;
    FiberedGeneratorSet::new(grid, fibers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fiber::{self, range_function, spectrum};
    use crate::gramian;
    use crate::linalg::vec_norm;
    use crate::subspace::RankTolerance;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn delta(n: usize, at: usize) -> Vec<Complex64> {
        let mut f = vec![c(0.0, 0.0); n];
        f[at] = c(1.0, 0.0);
        f
    }

    #[test]
    fn pair_validation() {
        assert!(FiniteGroupPair::new(12, 3).is_ok());
        assert!(FiniteGroupPair::new(12, 5).is_err());
        assert!(FiniteGroupPair::new(0, 1).is_err());
        let p = FiniteGroupPair::new(12, 3).unwrap();
        assert_eq!(p.subgroup_order(), 4);
        assert_eq!(p.subgroup_elements().collect::<Vec<_>>(), vec![0, 3, 6, 9]);
    }

    #[test]
    fn zak_of_delta_at_zero() {
        let pair = FiniteGroupPair::new(4, 2).unwrap();
        let z = zak_forward(&delta(4, 0), pair).unwrap();
        for alpha in 0..2 {
            assert_eq!(z.value(alpha, 0), c(1.0, 0.0));
            assert_eq!(z.value(alpha, 1), c(0.0, 0.0));
        }
    }

    #[test]
    fn zak_of_translated_delta_modulates() {
        let pair = FiniteGroupPair::new(4, 2).unwrap();
        let z = zak_forward(&delta(4, 2), pair).unwrap();
        for alpha in 0..2usize {
            let expect = unit_phase(-(alpha as i64), 2);
            assert!((z.value(alpha, 0) - expect).norm() < 1e-15);
            assert_eq!(z.value(alpha, 1), c(0.0, 0.0));
        }
    }

    #[test]
    fn zak_norm_identity() {
        let pair = FiniteGroupPair::new(12, 3).unwrap();
        let f: Vec<Complex64> = (0..12)
            .map(|i| c((i as f64 * 0.37).sin(), (i as f64 * 0.71).cos()))
            .collect();
        let z = zak_forward(&f, pair).unwrap();
        let norm_f = vec_norm(&f).powi(2);
        assert!((z.weighted_norm_sqr() - norm_f).abs() < 1e-12);
    }

    #[test]
    fn zak_round_trip_on_simple_signals() {
        let pair = FiniteGroupPair::new(6, 3).unwrap();
        for f in [delta(6, 0), vec![c(1.0, 0.0); 6]] {
            let z = zak_forward(&f, pair).unwrap();
            let back = zak_inverse(&z, pair).unwrap();
            for (a, b) in f.iter().zip(back.iter()) {
                assert!((a - b).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn zak_rejects_wrong_lengths() {
        let pair = FiniteGroupPair::new(4, 2).unwrap();
        assert!(zak_forward(&delta(6, 0), pair).is_err());
        let other = FiniteGroupPair::new(6, 2).unwrap();
        let z = zak_forward(&delta(4, 0), pair).unwrap();
        assert!(zak_inverse(&z, other).is_err());
    }

    #[test]
    fn translate_basics() {
        let f = delta(4, 0);
        assert_eq!(translate(&f, 2), delta(4, 2));
        assert_eq!(translate(&f, 0), f);
        assert_eq!(translate(&f, 4), f);
    }

    #[test]
    fn intertwining_for_deltas_and_zero_shift() {
        let pair = FiniteGroupPair::new(4, 2).unwrap();
        assert_eq!(intertwine_check(&delta(4, 0), 0, pair).unwrap(), 0.0);
        assert!(intertwine_check(&delta(4, 0), 2, pair).unwrap() < 1e-15);
        assert!(matches!(
            intertwine_check(&delta(4, 0), 1, pair),
            Err(Error::InvalidSubgroupElement(_))
        ));
    }

    #[test]
    fn intertwining_over_whole_subgroup() {
        let pair = FiniteGroupPair::new(24, 4).unwrap();
        let f: Vec<Complex64> = (0..24)
            .map(|i| c((i as f64 * 0.31).cos(), (i as f64 * 0.17).sin()))
            .collect();
        for gamma in pair.subgroup_elements() {
            assert!(intertwine_check(&f, gamma, pair).unwrap() < 1e-12);
        }
    }

    #[test]
    fn fiberized_delta_spans_first_coset_direction() {
        let pair = FiniteGroupPair::new(4, 2).unwrap();
        let set = fiberize_group(&[delta(4, 0)], pair).unwrap();
        assert_eq!(set.grid().len(), 2);
        assert_eq!(set.fiber_dim(), 2);
        for j in 0..2 {
            assert_eq!(set.fiber(j).vectors()[0], vec![c(1.0, 0.0), c(0.0, 0.0)]);
        }
        let rf = range_function(&set, RankTolerance::default());
        assert!(rf.iter().all(|s| s.dim() == 1));
    }

    #[test]
    fn fiberized_difference_vanishes_at_zero_character() {
        let pair = FiniteGroupPair::new(4, 2).unwrap();
        let mut g = delta(4, 0);
        g[2] = c(-1.0, 0.0);
        let set = fiberize_group(&[g], pair).unwrap();
        let rf = range_function(&set, RankTolerance::default());
        let sigma = spectrum(&rf);
        assert_eq!(sigma, [1usize].into_iter().collect());
        // Fiber at α = 1 is (1 − e^{−2πi/2})·e₀ = 2e₀.
        assert!((set.fiber(1).vectors()[0][0] - c(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn bandlimit_fibers_are_coordinate_vectors() {
        let set = fiberize_real_line(
            &[FourierProfile::Bandlimit { lo: 0.0, hi: 1.0 }],
            8,
            2,
        )
        .unwrap();
        // k runs −2..=2; ξ + k lands in [0,1) only for k = 0 (index 2).
        for j in 0..8 {
            let v = &set.fiber(j).vectors()[0];
            for (idx, z) in v.iter().enumerate() {
                let expect = if idx == 2 { 1.0 } else { 0.0 };
                assert_eq!(*z, c(expect, 0.0));
            }
            let g = gramian::gramian(set.fiber(j));
            assert_eq!(g.entries()[(0, 0)], c(1.0, 0.0));
        }
    }

    #[test]
    fn disjoint_bands_have_zero_angle() {
        let profiles = [
            FourierProfile::Bandlimit { lo: 0.0, hi: 1.0 },
            FourierProfile::Bandlimit { lo: 1.0, hi: 2.0 },
        ];
        let a = fiberize_real_line(&profiles[..1], 16, 4).unwrap();
        let b = fiberize_real_line(&profiles[1..], 16, 4).unwrap();
        let region = a.grid().indices();
        let p = fiber::ess_sup_angle(&a, &b, &region, RankTolerance::default()).unwrap();
        assert_eq!(p.ess_sup, 0.0);
        for j in 0..16 {
            let gm = gramian::mixed_gramian(a.fiber(j), b.fiber(j)).unwrap();
            assert_eq!(gm.entries().max_abs(), 0.0);
        }
    }

    #[test]
    fn bspline_gramian_matches_direct_series() {
        // Order-1 profile: the fiber Gramian at ξ is Σ_k sinc(ξ+k)⁴, which
        // sums to (2 + cos 2πξ)/3 over all of ℤ; at ξ = 0.5 that is 1/3.
        let k = 64usize;
        let set = fiberize_real_line(&[FourierProfile::BSpline { order: 1 }], 2, k).unwrap();
        // Midpoint grid of size 2 has ξ = 0.25 and 0.75; rebuild at ξ = 0.5
        // by direct evaluation instead.
        let profile = FourierProfile::BSpline { order: 1 };
        let xi = 0.5;
        let truncated: f64 = (-(k as i64)..=k as i64)
            .map(|kk| profile.eval(xi + kk as f64).unwrap().powi(2))
            .sum();
        // Oracle: the same series at a much larger truncation.
        let oracle: f64 = (-2048i64..=2048)
            .map(|kk| profile.eval(xi + kk as f64).unwrap().powi(2))
            .sum();
        let tail_bound = (2.0 / PI).powi(4) * 2.0 / (3.0 * ((k - 1) as f64).powi(3));
        assert!((oracle - 1.0 / 3.0).abs() < 1e-9);
        assert!((truncated - oracle).abs() < tail_bound);
        // And the fiberized Gramian at a grid midpoint agrees with the
        // direct series there.
        let g = gramian::gramian(set.fiber(0));
        let expect: f64 = (-(k as i64)..=k as i64)
            .map(|kk| profile.eval(0.25 + kk as f64).unwrap().powi(2))
            .sum();
        assert!((g.entries()[(0, 0)].re - expect).abs() < 1e-12);
    }

    #[test]
    fn table_profile_interpolates_and_bounds() {
        let p = FourierProfile::table(vec![(0.0, 0.0), (1.0, 2.0), (2.0, 0.0)]).unwrap();
        assert_eq!(p.eval(0.5).unwrap(), 1.0);
        assert_eq!(p.eval(1.0).unwrap(), 2.0);
        assert_eq!(p.eval(1.5).unwrap(), 1.0);
        assert_eq!(p.eval(-0.5).unwrap(), 0.0);
        assert_eq!(p.eval(2.5).unwrap(), 0.0);
        assert!(FourierProfile::table(vec![(0.0, 1.0)]).is_err());
        assert!(FourierProfile::table(vec![(0.0, 1.0), (0.0, 2.0)]).is_err());
    }

    #[test]
    fn gaussian_and_delta_profiles() {
        let g = FourierProfile::Gaussian { decay: 1.0 };
        assert!((g.eval(0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((g.eval(1.0).unwrap() - (-PI).exp()).abs() < 1e-15);
        assert_eq!(FourierProfile::Delta.eval(3.7).unwrap(), 1.0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn zak_is_unitary_and_invertible(
            seed in 0u64..10_000,
            n_idx in 0usize..12,
        ) {
            // 50 random (N, M, f) draws via the proptest case budget.
            let sizes = [(4usize, 2usize), (6, 2), (6, 3), (8, 4), (12, 3), (12, 4),
                         (16, 2), (18, 6), (20, 5), (24, 4), (9, 3), (10, 10)];
            let (n, m) = sizes[n_idx];
            let pair = FiniteGroupPair::new(n, m).unwrap();
            let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(13);
            let mut next = move || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 11) as f64) / ((1u64 << 53) as f64) * 2.0 - 1.0
            };
            let f: Vec<Complex64> = (0..n).map(|_| c(next(), next())).collect();
            let z = zak_forward(&f, pair).unwrap();
            prop_assert!((z.weighted_norm_sqr() - vec_norm(&f).powi(2)).abs() < 1e-12);
            let back = zak_inverse(&z, pair).unwrap();
            let worst = f.iter().zip(back.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            prop_assert!(worst < 1e-12);
            let z2 = zak_forward(&back, pair).unwrap();
            let worst2 = (0..pair.subgroup_order())
                .flat_map(|al| (0..m).map(move |cc| (al, cc)))
                .map(|(al, cc)| (z2.value(al, cc) - z.value(al, cc)).norm())
                .fold(0.0, f64::max);
            prop_assert!(worst2 < 1e-12);
        }

        #[test]
        fn translation_composes_additively(
            seed in 0u64..1000,
            a in 0usize..20,
            b in 0usize..20,
        ) {
            let n = 12;
            let mut state = seed.wrapping_add(5);
            let mut next = move || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 11) as f64) / ((1u64 << 53) as f64) * 2.0 - 1.0
            };
            let f: Vec<Complex64> = (0..n).map(|_| c(next(), next())).collect();
            let lhs = translate(&translate(&f, a), b);
            let rhs = translate(&f, (a + b) % n);
            prop_assert_eq!(lhs, rhs);
        }
    }
}

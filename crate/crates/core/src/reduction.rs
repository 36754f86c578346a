//! Sufficient-statistic reduction of IB problems, and its verification.
//!
//! When `C <-> Z <-> T` is a Markov chain for `Z = phi(T)`, the IB problems
//! for `(T, C)` and `(Z, C)` are the same problem: same curve, same
//! Lagrangian value at every `beta`, minimisers in bijection through the
//! pullback `p(X | T = t) := p(X | Z = phi(t))`, and the same critical
//! `beta` values. This module builds reduced joints, moves encoders in both
//! directions, and certifies all four equivalences numerically on finite
//! instances.

use crate::ba::{
    detect_critical_betas, evaluate_encoder, sweep_multi_restart, BaConfig, BaSolution,
    CurvePoint, IBCurve, RestartSchedule,
};
use crate::dist::{DiscreteConditional, DiscreteJoint, FiberMap, TripleJoint};
use crate::info::{
    conditional_mutual_information, mutual_information, total_variation, CmiPair,
};
use crate::{Error, Result};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A sufficiency residual `I(C; T | Z)` at or above this refuses strict
/// verification; exact constructions sit many orders below it.
pub const SUFFICIENCY_TOL: f64 = 1e-9;

/// A sufficient statistic in one of the three forms the tooling consumes.
#[derive(Debug, Clone)]
pub enum StatisticMap {
    /// A finite lookup table `t -> z`.
    Table(FiberMap),
    /// The exact Bayes classifier of a synthetic mixture model.
    BayesClassifier(crate::synth::SynthModel),
    /// A linear map `t -> A t` (the Gaussian conditional-mean statistic),
    /// stored as the `dim_C x dim_T` matrix `A`.
    LinearGaussian(nalgebra::DMatrix<f64>),
}

impl StatisticMap {
    pub fn as_table(&self) -> Option<&FiberMap> {
        match self {
            StatisticMap::Table(f) => Some(f),
            _ => None,
        }
    }

    /// Classify a point under the Bayes-classifier form.
    pub fn classify(&self, point: &[f64]) -> Result<usize> {
        match self {
            StatisticMap::BayesClassifier(model) => model.bayes_statistic(point),
            _ => Err(Error::InvalidConfig(
                "classify requires the Bayes-classifier form".into(),
            )),
        }
    }

    /// Apply the linear form to a point.
    pub fn project(&self, point: &[f64]) -> Result<Vec<f64>> {
        match self {
            StatisticMap::LinearGaussian(a) => {
                if a.ncols() != point.len() {
                    return Err(Error::DimensionMismatch(format!(
                        "statistic matrix expects dimension {}, got {}",
                        a.ncols(),
                        point.len()
                    )));
                }
                let v = nalgebra::DVector::from_column_slice(point);
                Ok((a * v).iter().copied().collect())
            }
            _ => Err(Error::InvalidConfig(
                "project requires the linear-Gaussian form".into(),
            )),
        }
    }
}

/// Draw a random exactly-sufficient instance: random `p(T)`, a random
/// surjective fiber map `T -> Z`, and a random kernel `kappa(c | z)`. The
/// conditional `p(C | T)` is constant on fibers by construction, so
/// `I(C; T | Z) = 0` exactly.
pub fn make_sufficient_instance(
    k_t: usize,
    k_z: usize,
    m: usize,
    seed: u64,
) -> Result<TripleJoint> {
    if k_t == 0 || k_z == 0 || m == 0 {
        return Err(Error::EmptyTable);
    }
    if k_t < k_z {
        return Err(Error::DomainSmallerThanCodomain {
            domain: k_t,
            codomain: k_z,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let p_source = random_simplex(k_t, &mut rng);

    // Surjective map: hit every z once, fill the rest uniformly, shuffle.
    let mut map: Vec<usize> = (0..k_z).collect();
    for _ in k_z..k_t {
        map.push(rng.random_range(0..k_z));
    }
    map.shuffle(&mut rng);
    let fiber = FiberMap::new(map, k_z)?;

    let mut kernel = Vec::with_capacity(k_z * m);
    for _ in 0..k_z {
        kernel.extend(random_simplex(m, &mut rng));
    }
    let kernel = DiscreteConditional::new(k_z, m, kernel)?;

    TripleJoint::from_components(&p_source, &fiber, &kernel)
}

/// A uniform draw from the probability simplex (normalised exponentials).
fn random_simplex<R: Rng>(n: usize, rng: &mut R) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n)
        .map(|_| -f64::ln(1.0 - rng.random::<f64>()))
        .collect();
    let sum: f64 = v.iter().sum();
    v.iter_mut().for_each(|x| *x /= sum);
    v
}

/// Marginalise the source out of a three-way table: the reduced joint
/// `p(Z, C)`.
pub fn reduce_joint(triple: &TripleJoint) -> DiscreteJoint {
    triple.statistic_target()
}

/// Pull a reduced encoder back to the full problem: row `t` of the result
/// is row `phi(t)` of the input. Rate and relevance are preserved exactly.
pub fn pullback_encoder(
    reduced: &DiscreteConditional,
    fiber: &FiberMap,
) -> Result<DiscreteConditional> {
    if reduced.rows() != fiber.codomain() {
        return Err(Error::DimensionMismatch(format!(
            "reduced encoder has {} rows but fiber map has codomain {}",
            reduced.rows(),
            fiber.codomain()
        )));
    }
    let nx = reduced.cols();
    let mut rows = Vec::with_capacity(fiber.domain() * nx);
    for t in 0..fiber.domain() {
        rows.extend_from_slice(reduced.row(fiber.apply(t)));
    }
    DiscreteConditional::new(fiber.domain(), nx, rows)
}

/// Marginalise a full encoder down to the statistic:
/// `q(x | z) = sum_t p(x | t) p(t | z)`.
///
/// Under the reduced joint this never gains rate and keeps the relevance of
/// the full encoder exactly.
pub fn marginalize_encoder(
    full: &DiscreteConditional,
    triple: &TripleJoint,
) -> Result<DiscreteConditional> {
    if full.rows() != triple.n_source() {
        return Err(Error::DimensionMismatch(format!(
            "encoder has {} rows but triple has {} source symbols",
            full.rows(),
            triple.n_source()
        )));
    }
    let t_given_z = triple.source_statistic().bayes_invert().kernel;
    let (kz, kt, nx) = (triple.n_statistic(), triple.n_source(), full.cols());
    let mut rows = vec![0.0; kz * nx];
    for z in 0..kz {
        let weights = t_given_z.row(z);
        let out = &mut rows[z * nx..(z + 1) * nx];
        for t in 0..kt {
            let w = weights[t];
            if w > 0.0 {
                for (o, &e) in out.iter_mut().zip(full.row(t)) {
                    *o += w * e;
                }
            }
        }
    }
    DiscreteConditional::new(kz, nx, rows)
}

/// Largest entrywise defect of the factorisation
/// `p(C, X | Z = z) = p(C | Z = z) q(X | Z = z)` for the marginalised
/// encoder — the Markov-preservation property of marginalisation.
pub fn markov_factorization_residual(
    full: &DiscreteConditional,
    triple: &TripleJoint,
) -> Result<f64> {
    if full.rows() != triple.n_source() {
        return Err(Error::DimensionMismatch(format!(
            "encoder has {} rows but triple has {} source symbols",
            full.rows(),
            triple.n_source()
        )));
    }
    let (kt, kz, m, nx) = (
        triple.n_source(),
        triple.n_statistic(),
        triple.n_target(),
        full.cols(),
    );
    let marginalized = marginalize_encoder(full, triple)?;
    let reduced_cond = triple.statistic_target().row_conditional().kernel;
    let pz = triple.statistic_marginal();

    // p(z, c, x) under the full encoder.
    let mut joint_zcx = vec![0.0; kz * m * nx];
    for t in 0..kt {
        for z in 0..kz {
            for c in 0..m {
                let v = triple.get(t, z, c);
                if v > 0.0 {
                    for (x, &e) in full.row(t).iter().enumerate() {
                        joint_zcx[(z * m + c) * nx + x] += v * e;
                    }
                }
            }
        }
    }

    let mut residual: f64 = 0.0;
    for z in 0..kz {
        if pz[z] <= 0.0 {
            continue;
        }
        for c in 0..m {
            for x in 0..nx {
                let lhs = joint_zcx[(z * m + c) * nx + x] / pz[z];
                let rhs = reduced_cond.get(z, c) * marginalized.get(z, x);
                residual = residual.max((lhs - rhs).abs());
            }
        }
    }
    Ok(residual)
}

/// Largest total-variation distance between encoder rows within one fiber.
pub fn max_within_fiber_tv(encoder: &DiscreteConditional, fiber: &FiberMap) -> f64 {
    let mut worst: f64 = 0.0;
    for members in fiber.fibers() {
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                worst = worst.max(total_variation(encoder.row(a), encoder.row(b)));
            }
        }
    }
    worst
}

/// One `beta` of the side-by-side comparison.
#[derive(Debug, Clone)]
pub struct BetaComparison {
    pub beta: f64,
    pub full: CurvePoint,
    pub reduced: CurvePoint,
    /// `|L_beta^T - L_beta^Z|`.
    pub lagrangian_gap: f64,
    /// `|I_full(X;C) - I_reduced(X;C)|` at matched beta.
    pub relevance_gap: f64,
    /// `|L_full(pullback of the reduced optimum) - L_reduced|`; exercises
    /// the minimiser correspondence mechanically.
    pub pullback_gap: f64,
}

/// Fiber-constancy measurement of the full-problem optimum at one stable
/// `beta`.
#[derive(Debug, Clone)]
pub struct FiberConstancy {
    pub beta: f64,
    pub max_tv: f64,
}

/// Everything the verification harness certifies about one instance.
#[derive(Debug, Clone)]
pub struct ReductionReport {
    /// `I(C; T | Z)` of the instance.
    pub sufficiency_residual: f64,
    /// `I(T; C)` — equals `mi_reduced` under sufficiency.
    pub mi_full: f64,
    /// `I(Z; C)`.
    pub mi_reduced: f64,
    pub points: Vec<BetaComparison>,
    /// Sup over the grid of the per-beta relevance gap.
    pub curve_sup_gap: f64,
    pub max_lagrangian_gap: f64,
    pub max_pullback_gap: f64,
    /// Fiber constancy at midpoints of stable intervals of the full sweep.
    pub fiber_checks: Vec<FiberConstancy>,
    pub max_fiber_tv: f64,
    pub critical_full: Vec<(f64, f64)>,
    pub critical_reduced: Vec<(f64, f64)>,
}

/// Options for [`verify_reduction`].
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub ba: BaConfig,
    pub schedule: RestartSchedule,
    /// Refuse instances whose residual reaches [`SUFFICIENCY_TOL`]. Turn
    /// off to get a diagnostic report for empirical joints where sampling
    /// noise makes the residual positive.
    pub require_sufficiency: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            ba: BaConfig::default(),
            schedule: RestartSchedule::default(),
            require_sufficiency: true,
        }
    }
}

/// Solve both sides of the reduction over a `beta` grid with annealed
/// multi-restart BA and certify the four equivalences.
pub fn verify_reduction(
    triple: &TripleJoint,
    betas: &[f64],
    options: &VerifyOptions,
) -> Result<ReductionReport> {
    let residual = conditional_mutual_information(triple, CmiPair::SourceTargetGivenStatistic);
    if options.require_sufficiency && residual >= SUFFICIENCY_TOL {
        return Err(Error::InsufficientStatistic { residual });
    }

    let full = triple.source_target();
    let reduced = reduce_joint(triple);
    let fiber = triple.fiber_map()?;

    let full_solutions = sweep_multi_restart(&full, betas, &options.ba, &options.schedule)?;
    let reduced_solutions = sweep_multi_restart(&reduced, betas, &options.ba, &options.schedule)?;

    let mut points = Vec::with_capacity(betas.len());
    for (fs, rs) in full_solutions.iter().zip(&reduced_solutions) {
        let pullback = pullback_encoder(&rs.encoder, &fiber)?;
        let pulled = evaluate_encoder(&pullback, &full, fs.point.beta)?;
        points.push(BetaComparison {
            beta: fs.point.beta,
            full: fs.point.clone(),
            reduced: rs.point.clone(),
            lagrangian_gap: (fs.point.lagrangian - rs.point.lagrangian).abs(),
            relevance_gap: (fs.point.relevance - rs.point.relevance).abs(),
            pullback_gap: (pulled.lagrangian - rs.point.lagrangian).abs(),
        });
    }

    let critical_full = criticals(&full_solutions, &full)?;
    let critical_reduced = criticals(&reduced_solutions, &reduced)?;

    let fiber_checks = stable_midpoint_indices(betas, &critical_full)
        .into_iter()
        .map(|i| FiberConstancy {
            beta: betas[i],
            max_tv: max_within_fiber_tv(&full_solutions[i].encoder, &fiber),
        })
        .collect::<Vec<_>>();

    let curve_sup_gap = points.iter().map(|p| p.relevance_gap).fold(0.0, f64::max);
    let max_lagrangian_gap = points.iter().map(|p| p.lagrangian_gap).fold(0.0, f64::max);
    let max_pullback_gap = points.iter().map(|p| p.pullback_gap).fold(0.0, f64::max);
    let max_fiber_tv = fiber_checks.iter().map(|f| f.max_tv).fold(0.0, f64::max);

    Ok(ReductionReport {
        sufficiency_residual: residual,
        mi_full: mutual_information(&full),
        mi_reduced: mutual_information(&reduced),
        points,
        curve_sup_gap,
        max_lagrangian_gap,
        max_pullback_gap,
        fiber_checks,
        max_fiber_tv,
        critical_full,
        critical_reduced,
    })
}

fn criticals(solutions: &[BaSolution], joint: &DiscreteJoint) -> Result<Vec<(f64, f64)>> {
    let points: Vec<CurvePoint> = solutions.iter().map(|s| s.point.clone()).collect();
    let encoders: Vec<DiscreteConditional> =
        solutions.iter().map(|s| s.encoder.clone()).collect();
    let curve = IBCurve::new(points, format!("{}x{}", joint.rows(), joint.cols()))?;
    detect_critical_betas(&curve, &encoders, joint)
}

/// Midpoint grid indices of the stable runs between detected transitions.
/// At a bifurcation the minimiser is non-unique, so fiber constancy is only
/// asserted away from interval boundaries.
fn stable_midpoint_indices(betas: &[f64], intervals: &[(f64, f64)]) -> Vec<usize> {
    let mut boundary = vec![false; betas.len()];
    for &(lo, hi) in intervals {
        for (i, &b) in betas.iter().enumerate() {
            if b == lo || b == hi {
                boundary[i] = true;
            }
        }
    }
    let mut midpoints = Vec::new();
    let mut run_start: Option<usize> = None;
    for i in 0..=betas.len() {
        let in_run = i < betas.len() && !boundary[i];
        match (run_start, in_run) {
            (None, true) => run_start = Some(i),
            (Some(s), false) => {
                let end = i - 1;
                if end > s || intervals.is_empty() {
                    midpoints.push(s + (end - s) / 2);
                }
                run_start = None;
            }
            _ => {}
        }
    }
    midpoints
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ba::{geometric_grid, solve_lagrangian, BaConfig};
    use crate::info::mutual_information;

    #[test]
    fn instance_rejects_domain_smaller_than_codomain() {
        assert!(make_sufficient_instance(4, 8, 3, 0).is_err());
    }

    #[test]
    fn identity_fibers_reproduce_the_full_joint_up_to_relabeling() {
        let triple = make_sufficient_instance(6, 6, 4, 3).unwrap();
        let fiber = triple.fiber_map().unwrap();
        assert!(fiber.is_surjective());
        let full = triple.source_target();
        let reduced = reduce_joint(&triple);
        for t in 0..6 {
            let z = fiber.apply(t);
            for c in 0..4 {
                assert!((full.get(t, c) - reduced.get(z, c)).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn single_statistic_symbol_kills_mutual_information() {
        let triple = make_sufficient_instance(5, 1, 4, 9).unwrap();
        assert!(mutual_information(&triple.source_target()) < 1e-12);
        let reduced = reduce_joint(&triple);
        assert_eq!(reduced.rows(), 1);
        let pc = triple.source_target().col_marginal();
        for c in 0..4 {
            assert!((reduced.get(0, c) - pc[c]).abs() < 1e-15);
        }
    }

    #[test]
    fn construction_is_sufficient_and_preserves_information() {
        let triple = make_sufficient_instance(64, 8, 8, 11).unwrap();
        let residual =
            conditional_mutual_information(&triple, CmiPair::SourceTargetGivenStatistic);
        assert!(residual < 1e-12, "residual {residual}");
        let mi_full = mutual_information(&triple.source_target());
        let mi_reduced = mutual_information(&reduce_joint(&triple));
        assert!((mi_full - mi_reduced).abs() < 1e-12);
    }

    #[test]
    fn seeded_instance_is_reproducible() {
        let a = make_sufficient_instance(16, 4, 4, 7).unwrap();
        let b = make_sufficient_instance(16, 4, 4, 7).unwrap();
        assert_eq!(a.mass(), b.mass());
    }

    #[test]
    fn pullback_through_constant_fiber_has_zero_rate() {
        let fiber = FiberMap::constant(5);
        let reduced =
            DiscreteConditional::from_rows(&[vec![0.3, 0.7]]).unwrap();
        let full = pullback_encoder(&reduced, &fiber).unwrap();
        for t in 0..5 {
            assert_eq!(full.row(t), reduced.row(0));
        }
        let triple = make_sufficient_instance(5, 1, 3, 2).unwrap();
        let (rate, _) =
            crate::ba::induced_information(&full, &triple.source_target()).unwrap();
        assert!(rate < 1e-12);
    }

    #[test]
    fn pullback_through_identity_is_identity() {
        let reduced =
            DiscreteConditional::from_rows(&[vec![0.2, 0.8], vec![0.6, 0.4]]).unwrap();
        let full = pullback_encoder(&reduced, &FiberMap::identity(2)).unwrap();
        assert_eq!(full.kernel(), reduced.kernel());
    }

    #[test]
    fn pullback_preserves_rate_relevance_and_lagrangian() {
        let triple = make_sufficient_instance(64, 8, 8, 11).unwrap();
        let reduced = reduce_joint(&triple);
        let full = triple.source_target();
        let fiber = triple.fiber_map().unwrap();

        let beta = 2.0;
        let sol = solve_lagrangian(&reduced, beta, &BaConfig::with_seed(1)).unwrap();
        let pullback = pullback_encoder(&sol.encoder, &fiber).unwrap();

        let (rate_red, rel_red) =
            crate::ba::induced_information(&sol.encoder, &reduced).unwrap();
        let (rate_full, rel_full) =
            crate::ba::induced_information(&pullback, &full).unwrap();
        assert!((rate_red - rate_full).abs() < 1e-12);
        assert!((rel_red - rel_full).abs() < 1e-12);

        let pulled = evaluate_encoder(&pullback, &full, beta).unwrap();
        assert!((pulled.lagrangian - sol.point.lagrangian).abs() < 1e-10);
    }

    #[test]
    fn pullback_rejects_mismatched_codomain() {
        let reduced =
            DiscreteConditional::from_rows(&[vec![0.5, 0.5], vec![1.0, 0.0]]).unwrap();
        let fiber = FiberMap::new(vec![0, 1, 2], 3).unwrap();
        assert!(pullback_encoder(&reduced, &fiber).is_err());
    }

    #[test]
    fn marginalizing_a_fiber_constant_encoder_recovers_the_common_rows() {
        let triple = make_sufficient_instance(8, 3, 3, 5).unwrap();
        let fiber = triple.fiber_map().unwrap();
        let reduced_enc = DiscreteConditional::from_rows(&[
            vec![0.6, 0.4],
            vec![0.1, 0.9],
            vec![0.5, 0.5],
        ])
        .unwrap();
        let full_enc = pullback_encoder(&reduced_enc, &fiber).unwrap();
        let back = marginalize_encoder(&full_enc, &triple).unwrap();
        for z in 0..3 {
            for x in 0..2 {
                assert!((back.get(z, x) - reduced_enc.get(z, x)).abs() < 1e-12);
            }
        }
        let (rate_full, _) =
            crate::ba::induced_information(&full_enc, &triple.source_target()).unwrap();
        let (rate_red, _) =
            crate::ba::induced_information(&back, &reduce_joint(&triple)).unwrap();
        assert!((rate_full - rate_red).abs() < 1e-12);
    }

    #[test]
    fn marginalizing_the_identity_encoder_strictly_loses_rate() {
        let triple = make_sufficient_instance(8, 3, 3, 4).unwrap();
        let full_enc = DiscreteConditional::identity(8);
        let reduced_enc = marginalize_encoder(&full_enc, &triple).unwrap();
        let (rate_full, _) =
            crate::ba::induced_information(&full_enc, &triple.source_target()).unwrap();
        let (rate_red, _) =
            crate::ba::induced_information(&reduced_enc, &reduce_joint(&triple)).unwrap();
        assert!(
            rate_red < rate_full - 1e-6,
            "expected strict loss, full {rate_full} reduced {rate_red}"
        );
    }

    #[test]
    fn marginalization_keeps_relevance_and_never_gains_rate() {
        let triple = make_sufficient_instance(16, 4, 4, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut rows = Vec::new();
        for _ in 0..16 {
            rows.push(random_simplex(4, &mut rng));
        }
        let full_enc = DiscreteConditional::from_rows(&rows).unwrap();
        let reduced_enc = marginalize_encoder(&full_enc, &triple).unwrap();

        let (rate_full, rel_full) =
            crate::ba::induced_information(&full_enc, &triple.source_target()).unwrap();
        let (rate_red, rel_red) =
            crate::ba::induced_information(&reduced_enc, &reduce_joint(&triple)).unwrap();
        assert!((rel_full - rel_red).abs() < 1e-12);
        assert!(rate_red <= rate_full + 1e-12);

        let residual = markov_factorization_residual(&full_enc, &triple).unwrap();
        assert!(residual < 1e-12, "factorisation residual {residual}");
    }

    #[test]
    fn verify_refuses_insufficient_statistic() {
        // Deterministic statistic coordinate, but C depends on T within a
        // fiber: not sufficient.
        let mass = vec![
            // t = 0, z = 0
            0.25, 0.0, //
            0.0, 0.0, //
            // t = 1, z = 0
            0.0, 0.25, //
            0.0, 0.0, //
            // t = 2, z = 1
            0.0, 0.0, //
            0.125, 0.125, //
            // t = 3, z = 1
            0.0, 0.0, //
            0.125, 0.125,
        ];
        let triple = TripleJoint::new(4, 2, 2, mass).unwrap();
        let err = verify_reduction(
            &triple,
            &[0.5, 1.0],
            &VerifyOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::InsufficientStatistic { .. }));
    }

    #[test]
    fn verify_small_instance_end_to_end() {
        let triple = make_sufficient_instance(8, 3, 3, 13).unwrap();
        let options = VerifyOptions {
            schedule: RestartSchedule {
                restarts: 8,
                screen_iters: 60,
                finalists: 4,
            },
            ..VerifyOptions::default()
        };
        let betas = geometric_grid(1e-2, 1e1, 8).unwrap();
        let report = verify_reduction(&triple, &betas, &options).unwrap();
        assert!(report.sufficiency_residual < 1e-12);
        assert!((report.mi_full - report.mi_reduced).abs() < 1e-12);
        assert!(
            report.max_lagrangian_gap < 1e-6,
            "gap {}",
            report.max_lagrangian_gap
        );
        assert!(report.max_pullback_gap < 1e-10);
        assert!(report.curve_sup_gap < 1e-5);
    }

    #[test]
    fn constant_statistic_gives_flat_zero_lagrangians() {
        let triple = make_sufficient_instance(6, 1, 4, 21).unwrap();
        let options = VerifyOptions {
            schedule: RestartSchedule {
                restarts: 4,
                screen_iters: 40,
                finalists: 2,
            },
            ..VerifyOptions::default()
        };
        let report =
            verify_reduction(&triple, &[0.5, 2.0, 8.0], &options).unwrap();
        for p in &report.points {
            assert!(p.full.lagrangian.abs() < 1e-9);
            assert!(p.reduced.lagrangian.abs() < 1e-9);
        }
    }
}

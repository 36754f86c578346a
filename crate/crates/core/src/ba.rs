//! Blahut–Arimoto solving of the IB Lagrangian on a finite joint.
//!
//! For a joint `p(z, c)` over a `K`-symbol source and `M`-symbol target and a
//! trade-off `beta >= 0`, the solver minimises
//!
//! ```text
//!   L_beta(encoder) = I(X; Z) - beta * I(X; C)
//! ```
//!
//! over stochastic encoders `p(x | z)` by the classical alternating
//! fixed-point updates: refresh the cluster marginal `p(x)` and the Bayes
//! decoder `p(c | x)` from the current encoder, then reassign
//! `p(x | z) ∝ p(x) exp(-beta KL[p(c|z) || p(c|x)])` row by row. Each full
//! step never increases the Lagrangian, and the iteration stops when the
//! Lagrangian change drops below the configured tolerance.
//!
//! Per-iteration cost is `O(K * M * |X|)`, so `O(K^2 M)` at the default
//! representation alphabet `|X| = K`.

use crate::dist::{compose, DiscreteConditional, DiscreteJoint};
use crate::info::{mutual_information, total_variation};
use crate::{Error, Result};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stand-in for `ln 0` in score arithmetic; any exponent this low underflows
/// to an exact zero after row normalisation.
const LN_TINY: f64 = -700.0;

/// Probabilities below this are snapped to exact zeros inside the iteration.
const SNAP: f64 = 1e-250;

/// Decoder rows are compared for cluster counting only when the cluster
/// carries at least this much mass.
const CLUSTER_MASS_FLOOR: f64 = 1e-9;

/// Total-variation radius within which two decoder rows count as the same
/// effective cluster.
pub const CLUSTER_MERGE_TV: f64 = 1e-3;

/// Encoder initialisation for a solve.
#[derive(Debug, Clone)]
pub enum EncoderInit {
    /// Uniform rows with multiplicative noise `U[0.95, 1.05]` per entry,
    /// renormalised. Exact uniform is an unstable fixed point at symmetric
    /// joints, so the noise is what lets the iteration leave it.
    PerturbedUniform { seed: u64 },
    /// Start from a given encoder.
    Warm(DiscreteConditional),
}

/// Solver configuration.
#[derive(Debug, Clone)]
pub struct BaConfig {
    /// Representation alphabet size `|X|`; `None` means the row count of the
    /// joint being solved (that many clusters always suffice).
    pub alphabet_size: Option<usize>,
    pub max_iters: usize,
    /// Convergence threshold on the Lagrangian change per iteration, nats.
    pub tol: f64,
    pub init: EncoderInit,
    /// Sweep betas ascending, warm-starting each solve from the previous
    /// optimum. What makes critical-beta detection meaningful.
    pub anneal: bool,
}

impl Default for BaConfig {
    fn default() -> Self {
        Self {
            alphabet_size: None,
            max_iters: 5000,
            tol: 1e-10,
            init: EncoderInit::PerturbedUniform { seed: 0 },
            anneal: true,
        }
    }
}

impl BaConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            init: EncoderInit::PerturbedUniform { seed },
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if let Some(n) = self.alphabet_size {
            if n == 0 {
                return Err(Error::InvalidConfig("alphabet_size must be >= 1".into()));
            }
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidConfig("max_iters must be >= 1".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidConfig("tol must be > 0".into()));
        }
        Ok(())
    }
}

/// One solved point of the trade-off curve.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint {
    pub beta: f64,
    /// `I(X; source)` in nats.
    pub rate: f64,
    /// `I(X; C)` in nats.
    pub relevance: f64,
    /// `rate - beta * relevance` in nats.
    pub lagrangian: f64,
    pub iters: usize,
    pub converged: bool,
}

/// A traced IB curve: points sorted by strictly increasing `beta`.
#[derive(Debug, Clone)]
pub struct IBCurve {
    points: Vec<CurvePoint>,
    joint_id: String,
}

impl IBCurve {
    pub fn new(points: Vec<CurvePoint>, joint_id: impl Into<String>) -> Result<Self> {
        for pair in points.windows(2) {
            if pair[1].beta <= pair[0].beta {
                return Err(Error::InvalidConfig(format!(
                    "betas must be strictly increasing, got {} then {}",
                    pair[0].beta, pair[1].beta
                )));
            }
        }
        Ok(Self {
            points,
            joint_id: joint_id.into(),
        })
    }

    pub fn points(&self) -> &[CurvePoint] {
        &self.points
    }

    pub fn joint_id(&self) -> &str {
        &self.joint_id
    }

    pub fn max_relevance(&self) -> f64 {
        self.points.iter().map(|p| p.relevance).fold(0.0, f64::max)
    }

    pub fn all_converged(&self) -> bool {
        self.points.iter().all(|p| p.converged)
    }
}

/// A converged (or iteration-capped) solve: the encoder and its curve point.
#[derive(Debug, Clone)]
pub struct BaSolution {
    pub encoder: DiscreteConditional,
    pub point: CurvePoint,
}

/// A traced curve together with the per-point optimal encoders.
#[derive(Debug, Clone)]
pub struct CurveTrace {
    pub curve: IBCurve,
    pub encoders: Vec<DiscreteConditional>,
}

// ---------------------------------------------------------------------------
// Inner iteration state
// ---------------------------------------------------------------------------

/// Flat scratch for the fixed-point iteration on one joint. Rows of the
/// joint must all carry positive mass (callers drop zero rows first).
struct Workspace {
    k: usize,
    m: usize,
    nx: usize,
    beta: f64,
    pz: Vec<f64>,
    ln_pc: Vec<f64>,
    joint: Vec<f64>,
    cond: Vec<f64>,
    // refreshed from the current encoder
    px: Vec<f64>,
    ln_px: Vec<f64>,
    jxc: Vec<f64>,
    ln_dec: Vec<f64>,
    scores: Vec<f64>,
    rate: f64,
    relevance: f64,
}

impl Workspace {
    fn new(joint: &DiscreteJoint, nx: usize, beta: f64) -> Self {
        let (k, m) = (joint.rows(), joint.cols());
        let pz = joint.row_marginal();
        let pc = joint.col_marginal();
        let ln_pc = pc
            .iter()
            .map(|&v| if v > 0.0 { v.ln() } else { LN_TINY })
            .collect();
        let cond = joint.row_conditional().kernel.kernel().to_vec();
        Self {
            k,
            m,
            nx,
            beta,
            pz,
            ln_pc,
            joint: joint.mass().to_vec(),
            cond,
            px: vec![0.0; nx],
            ln_px: vec![0.0; nx],
            jxc: vec![0.0; nx * m],
            ln_dec: vec![0.0; nx * m],
            scores: vec![0.0; k * nx],
            rate: 0.0,
            relevance: 0.0,
        }
    }

    /// Recompute marginal, decoder, rate and relevance from `enc`.
    fn refresh(&mut self, enc: &[f64]) {
        let (k, m, nx) = (self.k, self.m, self.nx);

        self.px.iter_mut().for_each(|v| *v = 0.0);
        for z in 0..k {
            let pz = self.pz[z];
            let row = &enc[z * nx..(z + 1) * nx];
            for (x, &e) in row.iter().enumerate() {
                self.px[x] += pz * e;
            }
        }
        for x in 0..nx {
            self.ln_px[x] = if self.px[x] > 0.0 {
                self.px[x].ln()
            } else {
                LN_TINY
            };
        }

        self.jxc.iter_mut().for_each(|v| *v = 0.0);
        for z in 0..k {
            let jrow = &self.joint[z * m..(z + 1) * m];
            let erow = &enc[z * nx..(z + 1) * nx];
            for (x, &e) in erow.iter().enumerate() {
                if e > 0.0 {
                    let out = &mut self.jxc[x * m..(x + 1) * m];
                    for (o, &j) in out.iter_mut().zip(jrow) {
                        *o += e * j;
                    }
                }
            }
        }

        // relevance I(X;C) and the log-decoder in one pass
        let mut relevance = 0.0;
        for x in 0..nx {
            let ln_px = self.ln_px[x];
            for c in 0..m {
                let v = self.jxc[x * m + c];
                if v > 0.0 {
                    let ln_v = v.ln();
                    self.ln_dec[x * m + c] = ln_v - ln_px;
                    relevance += v * (ln_v - ln_px - self.ln_pc[c]);
                } else {
                    self.ln_dec[x * m + c] = LN_TINY;
                }
            }
        }

        // rate I(X;Z)
        let mut rate = 0.0;
        for z in 0..k {
            let pz = self.pz[z];
            let row = &enc[z * nx..(z + 1) * nx];
            for (x, &e) in row.iter().enumerate() {
                if e > 0.0 {
                    rate += pz * e * (e.ln() - self.ln_px[x]);
                }
            }
        }

        self.rate = rate.max(0.0);
        self.relevance = relevance.max(0.0);
    }

    fn lagrangian(&self) -> f64 {
        self.rate - self.beta * self.relevance
    }

    /// The exponential reassignment; assumes `refresh` ran for `enc`.
    fn update(&mut self, enc: &[f64], out: &mut [f64]) {
        let (k, m, nx) = (self.k, self.m, self.nx);
        debug_assert_eq!(enc.len(), out.len());

        for z in 0..k {
            let crow = &self.cond[z * m..(z + 1) * m];
            let srow = &mut self.scores[z * nx..(z + 1) * nx];
            for (x, s) in srow.iter_mut().enumerate() {
                let drow = &self.ln_dec[x * m..(x + 1) * m];
                let mut acc = 0.0;
                for (&p, &ld) in crow.iter().zip(drow) {
                    acc += p * ld;
                }
                *s = acc;
            }
        }

        for z in 0..k {
            let srow = &self.scores[z * nx..(z + 1) * nx];
            let orow = &mut out[z * nx..(z + 1) * nx];
            let mut top = f64::NEG_INFINITY;
            for (o, (&s, &lp)) in orow.iter_mut().zip(srow.iter().zip(&self.ln_px)) {
                *o = lp + self.beta * s;
                if *o > top {
                    top = *o;
                }
            }
            let mut sum = 0.0;
            for o in orow.iter_mut() {
                *o = (*o - top).exp();
                if *o < SNAP {
                    *o = 0.0;
                }
                sum += *o;
            }
            for o in orow.iter_mut() {
                *o /= sum;
            }
        }
    }
}

fn perturbed_uniform(k: usize, nx: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut enc = Vec::with_capacity(k * nx);
    for _ in 0..k {
        let mut row: Vec<f64> = (0..nx)
            .map(|_| (1.0 / nx as f64) * rng.random_range(0.95..1.05))
            .collect();
        let sum: f64 = row.iter().sum();
        row.iter_mut().for_each(|v| *v /= sum);
        enc.extend(row);
    }
    enc
}

/// Symmetry-breaking perturbation of a warm start for the next point of an
/// annealed sweep. The converged encoder at one `beta` is an exact fixed
/// point at every other `beta` too (a collapsed solution in particular can
/// never bifurcate on its own), so each row is blended with a whiff of
/// uniform to revive dead clusters and then jittered multiplicatively.
fn perturb_encoder(enc: &[f64], nx: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let blend = 1e-6;
    let uniform = 1.0 / nx as f64;
    let mut out = Vec::with_capacity(enc.len());
    for row in enc.chunks(nx) {
        let mut new: Vec<f64> = row
            .iter()
            .map(|&v| ((1.0 - blend) * v + blend * uniform) * rng.random_range(0.95..1.05))
            .collect();
        let sum: f64 = new.iter().sum();
        new.iter_mut().for_each(|v| *v /= sum);
        out.extend(new);
    }
    out
}

struct RunOutcome {
    enc: Vec<f64>,
    lagrangian: f64,
    iters: usize,
    converged: bool,
}

/// Iterate from `enc` for at most `budget` steps at tolerance `tol`.
fn run(ws: &mut Workspace, mut enc: Vec<f64>, budget: usize, tol: f64) -> RunOutcome {
    let mut next = vec![0.0; enc.len()];
    ws.refresh(&enc);
    let mut prev = ws.lagrangian();
    let mut iters = 0;
    let mut converged = false;
    while iters < budget {
        ws.update(&enc, &mut next);
        std::mem::swap(&mut enc, &mut next);
        iters += 1;
        ws.refresh(&enc);
        let cur = ws.lagrangian();
        if (cur - prev).abs() < tol {
            converged = true;
            prev = cur;
            break;
        }
        prev = cur;
    }
    RunOutcome {
        enc,
        lagrangian: prev,
        iters,
        converged,
    }
}

fn initial_encoder(init: &EncoderInit, k: usize, nx: usize) -> Result<Vec<f64>> {
    match init {
        EncoderInit::PerturbedUniform { seed } => Ok(perturbed_uniform(k, nx, *seed)),
        EncoderInit::Warm(enc) => {
            if enc.rows() != k || enc.cols() != nx {
                return Err(Error::DimensionMismatch(format!(
                    "warm-start encoder is {}x{}, expected {}x{}",
                    enc.rows(),
                    enc.cols(),
                    k,
                    nx
                )));
            }
            Ok(enc.kernel().to_vec())
        }
    }
}

// ---------------------------------------------------------------------------
// Zero-mass row handling
// ---------------------------------------------------------------------------

/// Rows of the joint with positive mass, or `None` when all rows qualify.
fn positive_rows(joint: &DiscreteJoint) -> Option<(DiscreteJoint, Vec<usize>)> {
    let pz = joint.row_marginal();
    if pz.iter().all(|&p| p > 0.0) {
        return None;
    }
    let kept: Vec<usize> = (0..joint.rows()).filter(|&z| pz[z] > 0.0).collect();
    let mut mass = Vec::with_capacity(kept.len() * joint.cols());
    for &z in &kept {
        mass.extend_from_slice(joint.row(z));
    }
    let sub = DiscreteJoint::new(kept.len(), joint.cols(), mass)
        .expect("dropping zero-mass rows preserves total mass");
    Some((sub, kept))
}

/// Reinsert encoder rows for dropped source symbols: each dropped row copies
/// the surviving row whose conditional `p(c|z)` is TV-closest to uniform
/// (the dropped symbol's own conditional is undefined, so uniform stands in
/// as its proxy; ties break to the smallest index). The choice carries no
/// mass and cannot move any functional.
fn reinsert_rows(
    sub_enc: &[f64],
    nx: usize,
    kept: &[usize],
    original: &DiscreteJoint,
) -> Vec<f64> {
    let k = original.rows();
    let m = original.cols();
    let uniform = vec![1.0 / m as f64; m];
    let mut best = 0usize;
    let mut best_tv = f64::INFINITY;
    for (i, &z) in kept.iter().enumerate() {
        let row = original.row(z);
        let sum: f64 = row.iter().sum();
        let cond: Vec<f64> = row.iter().map(|v| v / sum).collect();
        let tv = total_variation(&cond, &uniform);
        if tv < best_tv {
            best_tv = tv;
            best = i;
        }
    }
    let mut enc = vec![0.0; k * nx];
    for (i, &z) in kept.iter().enumerate() {
        enc[z * nx..(z + 1) * nx].copy_from_slice(&sub_enc[i * nx..(i + 1) * nx]);
    }
    let donor = sub_enc[best * nx..(best + 1) * nx].to_vec();
    let kept_set: std::collections::HashSet<usize> = kept.iter().copied().collect();
    for z in 0..k {
        if !kept_set.contains(&z) {
            enc[z * nx..(z + 1) * nx].copy_from_slice(&donor);
        }
    }
    enc
}

// ---------------------------------------------------------------------------
// Public operations
// ---------------------------------------------------------------------------

/// One full Blahut–Arimoto step: refresh marginal and decoder from
/// `encoder`, then reassign every row. The Lagrangian never increases
/// across a step (up to 1e-12 rounding slack).
pub fn ba_step(
    encoder: &DiscreteConditional,
    joint: &DiscreteJoint,
    beta: f64,
) -> Result<DiscreteConditional> {
    if encoder.rows() != joint.rows() {
        return Err(Error::DimensionMismatch(format!(
            "encoder has {} rows, joint has {}",
            encoder.rows(),
            joint.rows()
        )));
    }
    if !(beta >= 0.0) {
        return Err(Error::InvalidConfig(format!("beta must be >= 0, got {beta}")));
    }
    let nx = encoder.cols();
    let mut ws = Workspace::new(joint, nx, beta);
    ws.refresh(encoder.kernel());
    let mut out = vec![0.0; encoder.kernel().len()];
    ws.update(encoder.kernel(), &mut out);
    DiscreteConditional::new(joint.rows(), nx, out)
}

/// Evaluate the Lagrangian (and its rate/relevance split) of an encoder on a
/// joint without taking any step.
pub fn evaluate_encoder(
    encoder: &DiscreteConditional,
    joint: &DiscreteJoint,
    beta: f64,
) -> Result<CurvePoint> {
    if encoder.rows() != joint.rows() {
        return Err(Error::DimensionMismatch(format!(
            "encoder has {} rows, joint has {}",
            encoder.rows(),
            joint.rows()
        )));
    }
    let (rate, relevance) = induced_information(encoder, joint)?;
    Ok(CurvePoint {
        beta,
        rate,
        relevance,
        lagrangian: rate - beta * relevance,
        iters: 0,
        converged: true,
    })
}

/// Rate `I(X;Z)` and relevance `I(X;C)` of an encoder, computed by the
/// plug-in functionals on the induced joints.
pub fn induced_information(
    encoder: &DiscreteConditional,
    joint: &DiscreteJoint,
) -> Result<(f64, f64)> {
    let pz = joint.row_marginal();
    let zx = compose(&pz, encoder)?;
    let rate = mutual_information(&zx);

    let (k, m, nx) = (joint.rows(), joint.cols(), encoder.cols());
    let mut jxc = vec![0.0; nx * m];
    for z in 0..k {
        let jrow = joint.row(z);
        let erow = encoder.row(z);
        for (x, &e) in erow.iter().enumerate() {
            if e > 0.0 {
                for (c, &j) in jrow.iter().enumerate() {
                    jxc[x * m + c] += e * j;
                }
            }
        }
    }
    let xc = DiscreteJoint::new(nx, m, jxc)?;
    let relevance = mutual_information(&xc);
    Ok((rate, relevance))
}

/// Solve the IB Lagrangian at a fixed `beta`.
///
/// Zero-mass source rows are dropped before solving and reinserted on
/// output, so the returned encoder always matches the joint's row count.
/// Non-convergence within `max_iters` is not an error; it is flagged on the
/// returned point.
pub fn solve_lagrangian(
    joint: &DiscreteJoint,
    beta: f64,
    config: &BaConfig,
) -> Result<BaSolution> {
    config.validate()?;
    if !(beta >= 0.0) || !beta.is_finite() {
        return Err(Error::InvalidConfig(format!(
            "beta must be finite and >= 0, got {beta}"
        )));
    }
    let nx = config.alphabet_size.unwrap_or(joint.rows());

    let (work_joint, kept) = match positive_rows(joint) {
        Some((sub, kept)) => (sub, Some(kept)),
        None => (joint.clone(), None),
    };

    let init = match (&config.init, &kept) {
        // A warm start sized for the original joint is restricted to the
        // surviving rows.
        (EncoderInit::Warm(enc), Some(kept)) if enc.rows() == joint.rows() => {
            let mut rows = Vec::with_capacity(kept.len() * enc.cols());
            for &z in kept {
                rows.extend_from_slice(enc.row(z));
            }
            EncoderInit::Warm(DiscreteConditional::new(kept.len(), enc.cols(), rows)?)
        }
        _ => config.init.clone(),
    };

    let enc0 = initial_encoder(&init, work_joint.rows(), nx)?;
    let mut ws = Workspace::new(&work_joint, nx, beta);
    let outcome = run(&mut ws, enc0, config.max_iters, config.tol);

    let enc_flat = match &kept {
        Some(kept) => reinsert_rows(&outcome.enc, nx, kept, joint),
        None => outcome.enc,
    };
    let encoder = DiscreteConditional::new(joint.rows(), nx, enc_flat)?;
    let (rate, relevance) = induced_information(&encoder, joint)?;
    Ok(BaSolution {
        encoder,
        point: CurvePoint {
            beta,
            rate,
            relevance,
            lagrangian: rate - beta * relevance,
            iters: outcome.iters,
            converged: outcome.converged,
        },
    })
}

pub(crate) fn validate_betas(betas: &[f64]) -> Result<()> {
    if betas.is_empty() {
        return Err(Error::EmptyInput("beta grid"));
    }
    for &b in betas {
        if !(b >= 0.0) || !b.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "beta must be finite and >= 0, got {b}"
            )));
        }
    }
    for pair in betas.windows(2) {
        if pair[1] <= pair[0] {
            return Err(Error::InvalidConfig(
                "betas must be sorted strictly ascending".into(),
            ));
        }
    }
    Ok(())
}

fn derive_seed(base: u64, index: usize) -> u64 {
    base ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Trace the IB curve over an ascending `beta` grid.
///
/// With `config.anneal` (the default) each solve warm-starts from the
/// previous optimum — both as-is and jittered, since a converged encoder is
/// a fixed point at every `beta` and a collapsed one could otherwise never
/// bifurcate — and a fresh seeded cold start is screened against it; the
/// lowest Lagrangian wins the point. Without annealing every point is an
/// independent cold solve from its own seeded perturbation.
pub fn trace_curve(
    joint: &DiscreteJoint,
    betas: &[f64],
    config: &BaConfig,
) -> Result<CurveTrace> {
    validate_betas(betas)?;
    let base_seed = match &config.init {
        EncoderInit::PerturbedUniform { seed } => *seed,
        EncoderInit::Warm(_) => 0,
    };
    let schedule = RestartSchedule {
        restarts: 1,
        screen_iters: 200,
        finalists: 1,
    };

    let mut points = Vec::with_capacity(betas.len());
    let mut encoders: Vec<DiscreteConditional> = Vec::with_capacity(betas.len());
    for (i, &beta) in betas.iter().enumerate() {
        let solution = if config.anneal && i > 0 {
            let point_config = BaConfig {
                init: EncoderInit::PerturbedUniform {
                    seed: derive_seed(base_seed, i),
                },
                ..config.clone()
            };
            solve_multi_restart(joint, beta, &point_config, &schedule, encoders.last())?
        } else if i == 0 {
            solve_lagrangian(joint, beta, config)?
        } else {
            let point_config = BaConfig {
                init: EncoderInit::PerturbedUniform {
                    seed: derive_seed(base_seed, i),
                },
                ..config.clone()
            };
            solve_lagrangian(joint, beta, &point_config)?
        };
        points.push(solution.point);
        encoders.push(solution.encoder);
    }
    let curve = IBCurve::new(points, format!("{}x{}", joint.rows(), joint.cols()))?;
    Ok(CurveTrace { curve, encoders })
}

/// Reconstruct the relevance envelope from Lagrangian values.
///
/// The curve and the Lagrangian are conjugate: for every encoder,
/// `L_beta <= rate - beta * relevance`, so at a rate budget `R` the
/// achievable relevance is bounded by `(R - L_beta) / beta` for every
/// `beta > 0`, and the infimum over the grid is the (concave, non-decreasing)
/// envelope recovered here. Grid entries at `beta = 0` carry no constraint
/// and are skipped.
pub fn curve_from_lagrangian(points: &[(f64, f64)], rates: &[f64]) -> Result<Vec<f64>> {
    if points.is_empty() {
        return Err(Error::EmptyInput("lagrangian grid"));
    }
    if !points.iter().any(|&(beta, _)| beta > 0.0) {
        return Err(Error::InvalidConfig(
            "lagrangian grid needs at least one beta > 0".into(),
        ));
    }
    Ok(rates
        .iter()
        .map(|&r| {
            points
                .iter()
                .filter(|&&(beta, _)| beta > 0.0)
                .map(|&(beta, lag)| (r - lag) / beta)
                .fold(f64::INFINITY, f64::min)
        })
        .collect())
}

/// Number of effective clusters of an encoder: distinct Bayes-decoder rows
/// `p(c|x)` after greedily merging rows within total variation
/// [`CLUSTER_MERGE_TV`], counting only clusters with non-negligible mass.
pub fn effective_clusters(encoder: &DiscreteConditional, joint: &DiscreteJoint) -> Result<usize> {
    if encoder.rows() != joint.rows() {
        return Err(Error::DimensionMismatch(format!(
            "encoder has {} rows, joint has {}",
            encoder.rows(),
            joint.rows()
        )));
    }
    let (k, m, nx) = (joint.rows(), joint.cols(), encoder.cols());
    let pz = joint.row_marginal();
    let mut px = vec![0.0; nx];
    let mut jxc = vec![0.0; nx * m];
    for z in 0..k {
        let jrow = joint.row(z);
        for (x, &e) in encoder.row(z).iter().enumerate() {
            if e > 0.0 {
                px[x] += pz[z] * e;
                for (c, &j) in jrow.iter().enumerate() {
                    jxc[x * m + c] += e * j;
                }
            }
        }
    }
    let mut representatives: Vec<Vec<f64>> = Vec::new();
    for x in 0..nx {
        if px[x] < CLUSTER_MASS_FLOOR {
            continue;
        }
        let row: Vec<f64> = jxc[x * m..(x + 1) * m].iter().map(|v| v / px[x]).collect();
        if !representatives
            .iter()
            .any(|rep| total_variation(rep, &row) <= CLUSTER_MERGE_TV)
        {
            representatives.push(row);
        }
    }
    Ok(representatives.len())
}

/// Beta intervals `(beta_i, beta_{i+1})` across which the effective cluster
/// count of the optimal encoder increases. Requires the per-point encoders
/// of an annealed sweep.
pub fn detect_critical_betas(
    curve: &IBCurve,
    encoders: &[DiscreteConditional],
    joint: &DiscreteJoint,
) -> Result<Vec<(f64, f64)>> {
    if encoders.len() != curve.points().len() {
        return Err(Error::LengthMismatch {
            expected: curve.points().len(),
            got: encoders.len(),
        });
    }
    let counts: Vec<usize> = encoders
        .iter()
        .map(|enc| effective_clusters(enc, joint))
        .collect::<Result<_>>()?;
    let betas: Vec<f64> = curve.points().iter().map(|p| p.beta).collect();
    let mut intervals = Vec::new();
    for i in 1..counts.len() {
        if counts[i] > counts[i - 1] {
            intervals.push((betas[i - 1], betas[i]));
        }
    }
    Ok(intervals)
}

/// Per-point effective cluster counts along a sweep.
pub fn cluster_counts(
    encoders: &[DiscreteConditional],
    joint: &DiscreteJoint,
) -> Result<Vec<usize>> {
    encoders
        .iter()
        .map(|enc| effective_clusters(enc, joint))
        .collect()
}

// ---------------------------------------------------------------------------
// Multi-restart solving
// ---------------------------------------------------------------------------

/// Restart schedule for multi-start solving: every restart is screened for
/// `screen_iters` iterations, then the best `finalists` (plus any warm-start
/// candidate) are run to full convergence and the lowest Lagrangian wins.
#[derive(Debug, Clone)]
pub struct RestartSchedule {
    pub restarts: usize,
    pub screen_iters: usize,
    pub finalists: usize,
}

impl Default for RestartSchedule {
    fn default() -> Self {
        Self {
            restarts: 50,
            screen_iters: 80,
            finalists: 6,
        }
    }
}

/// Best-of-many solve at one `beta`: seeded perturbed-uniform restarts plus
/// an optional warm-start candidate.
pub fn solve_multi_restart(
    joint: &DiscreteJoint,
    beta: f64,
    config: &BaConfig,
    schedule: &RestartSchedule,
    warm: Option<&DiscreteConditional>,
) -> Result<BaSolution> {
    config.validate()?;
    if schedule.restarts == 0 {
        return Err(Error::InvalidConfig("restarts must be >= 1".into()));
    }
    let nx = config.alphabet_size.unwrap_or(joint.rows());
    let base_seed = match &config.init {
        EncoderInit::PerturbedUniform { seed } => *seed,
        EncoderInit::Warm(_) => 0,
    };

    let (work_joint, kept) = match positive_rows(joint) {
        Some((sub, kept)) => (sub, Some(kept)),
        None => (joint.clone(), None),
    };
    let k = work_joint.rows();

    let mut candidates: Vec<Vec<f64>> = Vec::with_capacity(schedule.restarts + 2);
    let mut warm_indices = Vec::new();
    if let Some(enc) = warm {
        let flat = match &kept {
            Some(kept) if enc.rows() == joint.rows() => {
                let mut rows = Vec::with_capacity(kept.len() * enc.cols());
                for &z in kept {
                    rows.extend_from_slice(enc.row(z));
                }
                rows
            }
            _ => enc.kernel().to_vec(),
        };
        if flat.len() == k * nx {
            // The warm start as-is, plus a jittered copy that can leave a
            // collapsed fixed point at a bifurcation.
            warm_indices.push(candidates.len());
            candidates.push(perturb_encoder(&flat, nx, derive_seed(base_seed, usize::MAX)));
            warm_indices.push(candidates.len());
            candidates.push(flat);
        }
    }
    for r in 0..schedule.restarts {
        candidates.push(perturbed_uniform(k, nx, derive_seed(base_seed, r)));
    }

    let mut ws = Workspace::new(&work_joint, nx, beta);

    // Screening pass. Screening is iteration-bounded with a near-floor
    // tolerance: a candidate dwelling at an unstable fixed point shows a
    // Lagrangian change below any practical tolerance while its escape mode
    // is still growing, and stopping it there would discard exactly the
    // runs worth ranking.
    let screen_tol = config.tol.min(1e-13);
    let mut screened: Vec<(f64, usize, RunOutcome)> = Vec::with_capacity(candidates.len());
    for (idx, cand) in candidates.into_iter().enumerate() {
        let outcome = run(&mut ws, cand, schedule.screen_iters.max(1), screen_tol);
        screened.push((outcome.lagrangian, idx, outcome));
    }
    screened.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    // Refine the finalists (warm candidates always qualify).
    let mut best: Option<RunOutcome> = None;
    for (rank, (_, idx, outcome)) in screened.into_iter().enumerate() {
        let qualifies = rank < schedule.finalists.max(1) || warm_indices.contains(&idx);
        if !qualifies {
            continue;
        }
        let refined = if outcome.converged {
            outcome
        } else {
            let screened_iters = outcome.iters;
            let mut refined = run(
                &mut ws,
                outcome.enc,
                config.max_iters.saturating_sub(screened_iters).max(1),
                config.tol,
            );
            refined.iters += screened_iters;
            refined
        };
        let better = match &best {
            None => true,
            Some(b) => refined.lagrangian < b.lagrangian,
        };
        if better {
            best = Some(refined);
        }
    }
    let best = best.expect("at least one restart ran");

    let enc_flat = match &kept {
        Some(kept) => reinsert_rows(&best.enc, nx, kept, joint),
        None => best.enc,
    };
    let encoder = DiscreteConditional::new(joint.rows(), nx, enc_flat)?;
    let (rate, relevance) = induced_information(&encoder, joint)?;
    Ok(BaSolution {
        encoder,
        point: CurvePoint {
            beta,
            rate,
            relevance,
            lagrangian: rate - beta * relevance,
            iters: best.iters,
            converged: best.converged,
        },
    })
}

/// Annealed multi-restart sweep over an ascending grid: each point's warm
/// candidate is the previous point's winner.
pub fn sweep_multi_restart(
    joint: &DiscreteJoint,
    betas: &[f64],
    config: &BaConfig,
    schedule: &RestartSchedule,
) -> Result<Vec<BaSolution>> {
    validate_betas(betas)?;
    let base_seed = match &config.init {
        EncoderInit::PerturbedUniform { seed } => *seed,
        EncoderInit::Warm(_) => 0,
    };
    let mut out: Vec<BaSolution> = Vec::with_capacity(betas.len());
    for (i, &beta) in betas.iter().enumerate() {
        let point_config = BaConfig {
            init: EncoderInit::PerturbedUniform {
                seed: derive_seed(base_seed, i.wrapping_mul(7919)),
            },
            ..config.clone()
        };
        let warm = if config.anneal {
            out.last().map(|s| &s.encoder)
        } else {
            None
        };
        out.push(solve_multi_restart(
            joint,
            beta,
            &point_config,
            schedule,
            warm,
        )?);
    }
    Ok(out)
}

/// A geometric grid of `n` points from `lo` to `hi` inclusive.
pub fn geometric_grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::EmptyInput("beta grid"));
    }
    if !(lo > 0.0) || !(hi > lo) && n > 1 {
        return Err(Error::InvalidConfig(format!(
            "geometric grid needs 0 < lo < hi, got [{lo}, {hi}]"
        )));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    let ratio = (hi / lo).powf(1.0 / (n - 1) as f64);
    let mut grid: Vec<f64> = (0..n).map(|i| lo * ratio.powi(i as i32)).collect();
    grid[n - 1] = hi;
    Ok(grid)
}

/// The 12-point geometric grid on `[1e-2, 1e1]` used throughout the
/// benchmark runs.
pub fn table1_grid() -> Vec<f64> {
    geometric_grid(1e-2, 1e1, 12).expect("static grid is valid")
}

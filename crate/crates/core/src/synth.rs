//! Synthetic labelled-mixture benchmark.
//!
//! Draw `M` unit-sphere class centres, push them through a fixed smooth
//! nonlinear embedding, and sample isotropic Gaussian clouds around the
//! embedded centres. The exact Bayes classifier of this generative model is
//! a discrete sufficient statistic for the label, so the IB curve of the
//! high-dimensional pair `(T, C)` is computed by BA on the small empirical
//! joint `p(phi(T), C)` — at a cost that does not grow with the ambient
//! dimension.
//!
//! The embedding `g` rotates by a seeded random `Q`, normalises a fixed
//! two-dimensional feature of the result onto the unit circle, ripples and
//! rescales it, and flattens the remaining coordinates:
//!
//! ```text
//!   w = Q v,   u = (w_1, w_2) / |(w_1, w_2)|
//!   g(v) = ( 0.73 * (u + (1/4) sin(pi u)),  0.02 * w_[3..] )
//! ```
//!
//! At `d = 2` the normalisation is a no-op (`|Q v| = 1` on the sphere), so
//! this is the plain rippled circle. At higher `d` the class centres land
//! on the same rippled circle instead of spreading out the way raw sphere
//! points do, which keeps the label overlap — and with it the attainable
//! information level, about 2 nats at `sigma = 0.1` — flat across ambient
//! dimensions. The 0.73 factor pins that level; the per-coordinate ripple
//! derivative `1 + (pi/4) cos` stays positive, so the circle is traversed
//! injectively.

use crate::ba::{table1_grid, trace_curve, BaConfig};
use crate::dist::DiscreteJoint;
use crate::info::mutual_information;
use crate::{Error, Result};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use std::time::Instant;

/// Default benchmark seed; the shipped reports are generated with it.
pub const DEFAULT_SEED: u64 = 68;

/// Generator parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthConfig {
    /// Ambient dimension of the source vectors.
    pub dim: usize,
    /// Number of classes `M`.
    pub classes: usize,
    /// Sample count `N`.
    pub samples: usize,
    /// Isotropic noise standard deviation.
    pub sigma: f64,
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            dim: 2,
            classes: 16,
            samples: 200_000,
            sigma: 0.1,
            seed: DEFAULT_SEED,
        }
    }
}

impl SynthConfig {
    fn validate(&self) -> Result<()> {
        if self.dim == 0 || self.classes == 0 || self.samples == 0 {
            return Err(Error::InvalidConfig(
                "dim, classes and samples must all be >= 1".into(),
            ));
        }
        if !(self.sigma > 0.0) {
            return Err(Error::InvalidConfig("sigma must be > 0".into()));
        }
        Ok(())
    }
}

/// The generative model: unit centres, the rotation behind the embedding,
/// and the noise level. Embedded centres are precomputed since every
/// classification queries them.
#[derive(Debug, Clone)]
pub struct SynthModel {
    dim: usize,
    classes: usize,
    sigma: f64,
    centres: Vec<f64>,
    rotation: Vec<f64>,
    embedded: Vec<f64>,
}

impl SynthModel {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn centre(&self, c: usize) -> &[f64] {
        &self.centres[c * self.dim..(c + 1) * self.dim]
    }

    pub fn embedded_centre(&self, c: usize) -> &[f64] {
        &self.embedded[c * self.dim..(c + 1) * self.dim]
    }

    /// The fixed smooth embedding `g`.
    pub fn embed(&self, v: &[f64]) -> Vec<f64> {
        let d = self.dim;
        let mut w = vec![0.0; d];
        for i in 0..d {
            let row = &self.rotation[i * d..(i + 1) * d];
            w[i] = row.iter().zip(v).map(|(r, x)| r * x).sum();
        }
        let keep = d.min(2);
        let feature_norm = w[..keep]
            .iter()
            .map(|x| x * x)
            .sum::<f64>()
            .sqrt()
            .max(1e-12);
        w.iter()
            .enumerate()
            .map(|(i, &x)| {
                if i < keep {
                    let u = x / feature_norm;
                    0.73 * (u + 0.25 * (std::f64::consts::PI * u).sin())
                } else {
                    0.02 * x
                }
            })
            .collect()
    }

    /// The exact Bayes statistic `argmax_c p(C = c | T = point)`.
    ///
    /// Priors are equal and the components share an isotropic covariance,
    /// so the posterior argmax is the nearest embedded centre; ties break
    /// toward the smallest class index.
    pub fn bayes_statistic(&self, point: &[f64]) -> Result<usize> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "point has dimension {}, model expects {}",
                point.len(),
                self.dim
            )));
        }
        if point.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinitePoint);
        }
        let mut best = 0usize;
        let mut best_d2 = f64::INFINITY;
        for c in 0..self.classes {
            let centre = self.embedded_centre(c);
            let d2: f64 = centre
                .iter()
                .zip(point)
                .map(|(m, x)| (x - m) * (x - m))
                .sum();
            if d2 < best_d2 {
                best_d2 = d2;
                best = c;
            }
        }
        Ok(best)
    }
}

/// Labelled sample vectors, row-major `N x dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    dim: usize,
    vectors: Vec<f64>,
    labels: Vec<usize>,
}

impl SampleSet {
    pub fn new(dim: usize, vectors: Vec<f64>, labels: Vec<usize>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyTable);
        }
        if vectors.len() != labels.len() * dim {
            return Err(Error::LengthMismatch {
                expected: labels.len() * dim,
                got: vectors.len(),
            });
        }
        Ok(Self {
            dim,
            vectors,
            labels,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vector(&self, i: usize) -> &[f64] {
        &self.vectors[i * self.dim..(i + 1) * self.dim]
    }

    pub fn label(&self, i: usize) -> usize {
        self.labels[i]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn vectors(&self) -> &[f64] {
        &self.vectors
    }
}

/// Seeded random rotation: QR of a square standard-normal draw with the
/// sign fix that makes the factorisation unique.
fn random_rotation<R: Rng>(dim: usize, rng: &mut R) -> Vec<f64> {
    let gauss =
        nalgebra::DMatrix::from_fn(dim, dim, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = gauss.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..dim {
        if r[(j, j)] < 0.0 {
            for i in 0..dim {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    let mut out = vec![0.0; dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            out[i * dim + j] = q[(i, j)];
        }
    }
    out
}

fn unit_sphere_point<R: Rng>(dim: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim)
            .map(|_| rng.sample::<f64, _>(StandardNormal))
            .collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// Rebuild just the model for a configuration — same draws as the front of
/// [`generate`]'s stream, so a samples file's header is enough to recover
/// the exact classifier that produced it.
pub fn build_model(config: &SynthConfig) -> Result<SynthModel> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    model_from_stream(config, &mut rng)
}

fn model_from_stream(config: &SynthConfig, rng: &mut ChaCha8Rng) -> Result<SynthModel> {
    let (d, m) = (config.dim, config.classes);
    let mut centres = Vec::with_capacity(m * d);
    for _ in 0..m {
        centres.extend(unit_sphere_point(d, rng));
    }
    let rotation = random_rotation(d, rng);

    let mut model = SynthModel {
        dim: d,
        classes: m,
        sigma: config.sigma,
        centres,
        rotation,
        embedded: Vec::new(),
    };
    let mut embedded = Vec::with_capacity(m * d);
    for c in 0..m {
        embedded.extend(model.embed(&model.centres[c * d..(c + 1) * d].to_vec()));
    }
    model.embedded = embedded;
    Ok(model)
}

/// Draw the model and the sample set. Fully deterministic given the seed:
/// the stream is centres, then the rotation, then per sample a label and
/// its noise vector.
pub fn generate(config: &SynthConfig) -> Result<(SynthModel, SampleSet)> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let model = model_from_stream(config, &mut rng)?;
    let (d, m, n) = (config.dim, config.classes, config.samples);

    let mut vectors = Vec::with_capacity(n * d);
    let mut labels = Vec::with_capacity(n);
    for _ in 0..n {
        let label = rng.random_range(0..m);
        labels.push(label);
        let centre = model.embedded_centre(label);
        for &mu in centre {
            let noise: f64 = rng.sample(StandardNormal);
            vectors.push(mu + config.sigma * noise);
        }
    }

    let samples = SampleSet::new(d, vectors, labels)?;
    Ok((model, samples))
}

/// The `M x M` contingency table of `(phi(T_i), C_i)` normalised by `N`,
/// unsmoothed.
pub fn empirical_reduced_joint(model: &SynthModel, samples: &SampleSet) -> Result<DiscreteJoint> {
    if samples.is_empty() {
        return Err(Error::EmptyInput("sample set"));
    }
    if samples.dim() != model.dim() {
        return Err(Error::DimensionMismatch(format!(
            "samples have dimension {}, model expects {}",
            samples.dim(),
            model.dim()
        )));
    }
    let m = model.classes();
    let mut counts = vec![0.0; m * m];
    for i in 0..samples.len() {
        let phi = model.bayes_statistic(samples.vector(i))?;
        counts[phi * m + samples.label(i)] += 1.0;
    }
    DiscreteJoint::normalized(m, m, counts)
}

/// One row of the benchmark report.
#[derive(Debug, Clone)]
pub struct Table1Row {
    pub dim: usize,
    /// Plug-in `I(phi; C)` of the empirical reduced joint, nats.
    pub mi_phi_c: f64,
    /// Largest `I(X; C)` over the traced curve, nats.
    pub max_relevance: f64,
    /// End-to-end seconds for this dimension.
    pub wallclock_s: f64,
    /// Seconds spent in the BA sweep alone.
    pub ba_seconds: f64,
    pub all_converged: bool,
}

/// Run the full pipeline per dimension: generate, classify, estimate the
/// reduced joint, and trace the curve over the standard 12-point grid.
pub fn reproduce_table1(dims: &[usize], base: &SynthConfig) -> Result<Vec<Table1Row>> {
    if dims.is_empty() {
        return Err(Error::EmptyInput("dimension list"));
    }
    let mut rows = Vec::with_capacity(dims.len());
    for &dim in dims {
        let config = SynthConfig { dim, ..base.clone() };
        let start = Instant::now();
        let (model, samples) = generate(&config)?;
        let joint = empirical_reduced_joint(&model, &samples)?;
        let mi = mutual_information(&joint);

        let ba_start = Instant::now();
        let trace = trace_curve(&joint, &table1_grid(), &BaConfig::with_seed(config.seed))?;
        let ba_seconds = ba_start.elapsed().as_secs_f64();

        rows.push(Table1Row {
            dim,
            mi_phi_c: mi,
            max_relevance: trace.curve.max_relevance(),
            wallclock_s: start.elapsed().as_secs_f64(),
            ba_seconds,
            all_converged: trace.curve.all_converged(),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config() -> SynthConfig {
        SynthConfig {
            dim: 2,
            classes: 16,
            samples: 20_000,
            sigma: 0.1,
            seed: 3,
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let config = small_config();
        let (m1, s1) = generate(&config).unwrap();
        let (m2, s2) = generate(&config).unwrap();
        assert_eq!(m1.centres, m2.centres);
        assert_eq!(m1.rotation, m2.rotation);
        assert_eq!(s1, s2);
    }

    #[test]
    fn centres_are_unit_norm_and_rotation_is_orthogonal() {
        let (model, _) = generate(&small_config()).unwrap();
        for c in 0..model.classes() {
            let norm: f64 = model.centre(c).iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((norm - 1.0).abs() < 1e-12);
        }
        let d = model.dim();
        for i in 0..d {
            for j in 0..d {
                let dot: f64 = (0..d)
                    .map(|k| model.rotation[i * d + k] * model.rotation[j * d + k])
                    .sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((dot - expect).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn single_class_carries_no_information() {
        let config = SynthConfig {
            classes: 1,
            samples: 500,
            ..small_config()
        };
        let (model, samples) = generate(&config).unwrap();
        assert!(samples.labels().iter().all(|&l| l == 0));
        let joint = empirical_reduced_joint(&model, &samples).unwrap();
        assert_eq!(joint.rows(), 1);
        assert!(mutual_information(&joint) < 1e-12);
    }

    #[test]
    fn vanishing_noise_recovers_the_label_information() {
        let config = SynthConfig {
            sigma: 1e-8,
            ..small_config()
        };
        let (model, samples) = generate(&config).unwrap();
        let joint = empirical_reduced_joint(&model, &samples).unwrap();
        let mi = mutual_information(&joint);
        let ceiling = (config.classes as f64).ln();
        assert!(
            (mi - ceiling).abs() < 1e-3,
            "noiseless MI {mi} vs ln M {ceiling}"
        );
    }

    #[test]
    fn statistic_returns_the_class_of_an_exact_centre() {
        let (model, _) = generate(&small_config()).unwrap();
        for c in [0, 3, 15] {
            let point = model.embedded_centre(c).to_vec();
            assert_eq!(model.bayes_statistic(&point).unwrap(), c);
        }
    }

    #[test]
    fn ties_break_toward_the_smallest_class() {
        // Duplicate centres make the tie exact.
        let centre = vec![1.0, 0.0];
        let mut model = SynthModel {
            dim: 2,
            classes: 3,
            sigma: 0.1,
            centres: vec![0.0, 1.0, 1.0, 0.0, 1.0, 0.0],
            rotation: vec![1.0, 0.0, 0.0, 1.0],
            embedded: Vec::new(),
        };
        let mut embedded = Vec::new();
        for c in 0..3 {
            embedded.extend(model.embed(&model.centres[c * 2..(c + 1) * 2].to_vec()));
        }
        model.embedded = embedded;
        let point = model.embed(&centre);
        assert_eq!(model.bayes_statistic(&point).unwrap(), 1);
    }

    #[test]
    fn statistic_rejects_non_finite_points() {
        let (model, _) = generate(&small_config()).unwrap();
        assert!(model.bayes_statistic(&[f64::NAN, 0.0]).is_err());
    }

    #[test]
    fn statistic_matches_the_full_posterior_oracle() {
        // Oracle: evaluate the complete mixture posterior densities rather
        // than the nearest-centre shortcut.
        let config = SynthConfig {
            samples: 2_000,
            ..small_config()
        };
        let (model, samples) = generate(&config).unwrap();
        for i in 0..samples.len() {
            let point = samples.vector(i);
            let mut best = 0usize;
            let mut best_logp = f64::NEG_INFINITY;
            for c in 0..model.classes() {
                let d2: f64 = model
                    .embedded_centre(c)
                    .iter()
                    .zip(point)
                    .map(|(m, x)| (x - m) * (x - m))
                    .sum();
                let logp = -d2 / (2.0 * model.sigma() * model.sigma());
                if logp > best_logp {
                    best_logp = logp;
                    best = c;
                }
            }
            assert_eq!(model.bayes_statistic(point).unwrap(), best);
        }
    }

    #[test]
    fn reduced_joint_agrees_with_the_generic_empirical_reduction() {
        // The discrete-label statistic with identity coding must reproduce
        // the benchmark's own contingency table.
        let config = SynthConfig {
            samples: 5_000,
            ..small_config()
        };
        let (model, samples) = generate(&config).unwrap();
        let direct = empirical_reduced_joint(&model, &samples).unwrap();

        let phis: Vec<usize> = (0..samples.len())
            .map(|i| model.bayes_statistic(samples.vector(i)).unwrap())
            .collect();
        let generic = crate::gaussian::nonlinear_gaussian_reduce(
            &crate::gaussian::AxisCoding::Discrete {
                codes: &phis,
                alphabet: model.classes(),
            },
            &crate::gaussian::AxisCoding::Discrete {
                codes: samples.labels(),
                alphabet: model.classes(),
            },
        )
        .unwrap();
        assert_eq!(direct.mass(), generic.mass());
    }
}

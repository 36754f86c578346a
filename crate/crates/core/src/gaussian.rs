//! The jointly Gaussian specialisation.
//!
//! For a zero-mean Gaussian pair `(T, C)` with invertible `Sigma_TT`, the
//! conditional `p(C | T)` depends on `T` only through the conditional-mean
//! statistic `A T` with `A = Sigma_CT Sigma_TT^{-1}`, so the IB problem
//! reduces to the pair `(A T, C)` whose dimension is the rank of `A`. On
//! that reduced pair the curve is available in closed form through the
//! canonical correlations `rho_i`: with `lambda_i = 1 - rho_i^2` the `i`-th
//! component activates at `beta_i = 1 / rho_i^2`, and for the active set
//!
//! ```text
//!   rate(beta)      = 1/2 sum ln[ (beta - 1)(1 - lambda_i) / lambda_i ]
//!   relevance(beta) = 1/2 sum ln[ (beta - 1) / (beta lambda_i) ]
//! ```
//!
//! (derived from the scalar first-order conditions; the quantised BA oracle
//! in this module is the independent cross-check). As `beta -> inf` the
//! relevance saturates at `I(T;C) = -1/2 sum ln lambda_i`.

use crate::ba::{validate_betas, CurvePoint, IBCurve};
use crate::dist::DiscreteJoint;
use crate::{Error, Result};
use nalgebra::DMatrix;

/// Relative threshold below which singular values count as zero.
const RANK_TOL: f64 = 1e-10;

/// A zero-mean jointly Gaussian pair, stored as covariance blocks.
#[derive(Debug, Clone)]
pub struct GaussianJoint {
    dim_t: usize,
    dim_c: usize,
    sigma_tt: DMatrix<f64>,
    sigma_tc: DMatrix<f64>,
    sigma_cc: DMatrix<f64>,
}

fn check_symmetric(m: &DMatrix<f64>, block: &'static str) -> Result<()> {
    let scale = 1.0 + m.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
    for i in 0..m.nrows() {
        for j in (i + 1)..m.ncols() {
            if (m[(i, j)] - m[(j, i)]).abs() > 1e-9 * scale {
                return Err(Error::NotSymmetric { block });
            }
        }
    }
    Ok(())
}

impl GaussianJoint {
    pub fn new(
        sigma_tt: DMatrix<f64>,
        sigma_tc: DMatrix<f64>,
        sigma_cc: DMatrix<f64>,
    ) -> Result<Self> {
        let dim_t = sigma_tt.nrows();
        let dim_c = sigma_cc.nrows();
        if sigma_tt.ncols() != dim_t || sigma_cc.ncols() != dim_c {
            return Err(Error::DimensionMismatch(
                "covariance blocks must be square".into(),
            ));
        }
        if sigma_tc.nrows() != dim_t || sigma_tc.ncols() != dim_c {
            return Err(Error::DimensionMismatch(format!(
                "cross block must be {}x{}, got {}x{}",
                dim_t,
                dim_c,
                sigma_tc.nrows(),
                sigma_tc.ncols()
            )));
        }
        check_symmetric(&sigma_tt, "sigma_tt")?;
        check_symmetric(&sigma_cc, "sigma_cc")?;
        if nalgebra::Cholesky::new(sigma_tt.clone()).is_none() {
            return Err(Error::NotPositiveDefinite { block: "sigma_tt" });
        }
        if nalgebra::Cholesky::new(sigma_cc.clone()).is_none() {
            return Err(Error::NotPositiveDefinite { block: "sigma_cc" });
        }

        // Full block covariance must be positive semidefinite.
        let n = dim_t + dim_c;
        let mut full = DMatrix::<f64>::zeros(n, n);
        full.view_mut((0, 0), (dim_t, dim_t)).copy_from(&sigma_tt);
        full.view_mut((0, dim_t), (dim_t, dim_c)).copy_from(&sigma_tc);
        full.view_mut((dim_t, 0), (dim_c, dim_t))
            .copy_from(&sigma_tc.transpose());
        full.view_mut((dim_t, dim_t), (dim_c, dim_c))
            .copy_from(&sigma_cc);
        let eigen = nalgebra::SymmetricEigen::new(full);
        let max_eig = eigen.eigenvalues.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
        let min_eig = eigen.eigenvalues.min();
        if min_eig < -1e-9 * max_eig.max(1.0) {
            return Err(Error::NotPositiveSemidefinite {
                min_eigenvalue: min_eig,
            });
        }

        Ok(Self {
            dim_t,
            dim_c,
            sigma_tt,
            sigma_tc,
            sigma_cc,
        })
    }

    /// Build from the row-major full joint covariance of `(T, C)`.
    pub fn from_full(dim_t: usize, dim_c: usize, full: &[f64]) -> Result<Self> {
        let n = dim_t + dim_c;
        if full.len() != n * n {
            return Err(Error::LengthMismatch {
                expected: n * n,
                got: full.len(),
            });
        }
        let m = DMatrix::from_fn(n, n, |i, j| full[i * n + j]);
        Self::new(
            m.view((0, 0), (dim_t, dim_t)).into_owned(),
            m.view((0, dim_t), (dim_t, dim_c)).into_owned(),
            m.view((dim_t, dim_t), (dim_c, dim_c)).into_owned(),
        )
    }

    /// Scalar pair from variances and a covariance.
    pub fn scalar(var_t: f64, var_c: f64, cov: f64) -> Result<Self> {
        Self::new(
            DMatrix::from_element(1, 1, var_t),
            DMatrix::from_element(1, 1, cov),
            DMatrix::from_element(1, 1, var_c),
        )
    }

    /// Unit-variance scalar pair with correlation `rho`.
    pub fn from_correlation(rho: f64) -> Result<Self> {
        Self::scalar(1.0, 1.0, rho)
    }

    pub fn dim_t(&self) -> usize {
        self.dim_t
    }

    pub fn dim_c(&self) -> usize {
        self.dim_c
    }

    pub fn sigma_tt(&self) -> &DMatrix<f64> {
        &self.sigma_tt
    }

    pub fn sigma_tc(&self) -> &DMatrix<f64> {
        &self.sigma_tc
    }

    pub fn sigma_cc(&self) -> &DMatrix<f64> {
        &self.sigma_cc
    }
}

/// The linear sufficient statistic of a Gaussian pair and the invariant
/// spectrum that determines its curve.
#[derive(Debug, Clone)]
pub struct GaussianSpectrum {
    /// `A = Sigma_CT Sigma_TT^{-1}` with shape `dim_C x dim_T`.
    pub statistic_matrix: DMatrix<f64>,
    /// Numerical rank of `A`; never exceeds `min(dim_T, dim_C)`.
    pub rank: usize,
    /// Canonical correlations, sorted descending, each in `(0, 1)`.
    pub correlations: Vec<f64>,
    /// `lambda_i = 1 - rho_i^2`, aligned with `correlations`.
    pub lambdas: Vec<f64>,
    /// Component activation thresholds `beta_i = 1 / rho_i^2`, ascending.
    pub critical_betas: Vec<f64>,
}

impl GaussianSpectrum {
    /// `I(T; C) = -1/2 sum ln lambda_i`, the relevance ceiling.
    pub fn mutual_information(&self) -> f64 {
        -0.5 * self.lambdas.iter().map(|l| l.ln()).sum::<f64>()
    }
}

/// Compute the sufficient statistic `A`, its rank, and the canonical
/// correlation spectrum of a Gaussian pair.
pub fn sufficient_statistic(g: &GaussianJoint) -> Result<GaussianSpectrum> {
    let chol_tt = nalgebra::Cholesky::new(g.sigma_tt.clone())
        .ok_or(Error::NotPositiveDefinite { block: "sigma_tt" })?;
    let chol_cc = nalgebra::Cholesky::new(g.sigma_cc.clone())
        .ok_or(Error::NotPositiveDefinite { block: "sigma_cc" })?;

    // A^T solves Sigma_TT A^T = Sigma_TC.
    let statistic_matrix = chol_tt.solve(&g.sigma_tc).transpose();

    let svd = nalgebra::SVD::new(statistic_matrix.clone(), false, false);
    let smax = svd.singular_values.iter().fold(0.0f64, |a, &v| a.max(v));
    let rank = svd
        .singular_values
        .iter()
        .filter(|&&s| s > RANK_TOL * smax)
        .count();

    // rho_i^2 are the eigenvalues of
    // L^{-1} Sigma_TC Sigma_CC^{-1} Sigma_CT L^{-T},  Sigma_TT = L L^T.
    let w = chol_tt
        .l()
        .solve_lower_triangular(&g.sigma_tc)
        .ok_or(Error::NotPositiveDefinite { block: "sigma_tt" })?;
    let m = &w * chol_cc.solve(&w.transpose());
    let sym = (&m + m.transpose()) * 0.5;
    let mut rho2: Vec<f64> = nalgebra::SymmetricEigen::new(sym)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    rho2.sort_by(|a, b| b.total_cmp(a));
    rho2.truncate(rank);

    let mut correlations = Vec::with_capacity(rank);
    for r2 in rho2 {
        let r2 = r2.clamp(0.0, 1.0);
        if r2 >= 1.0 - 1e-12 {
            return Err(Error::DegenerateGaussian);
        }
        correlations.push(r2.sqrt());
    }
    let lambdas: Vec<f64> = correlations.iter().map(|r| 1.0 - r * r).collect();
    let critical_betas: Vec<f64> = correlations.iter().map(|r| 1.0 / (r * r)).collect();

    Ok(GaussianSpectrum {
        statistic_matrix,
        rank,
        correlations,
        lambdas,
        critical_betas,
    })
}

/// The closed-form IB curve of a Gaussian pair over a `beta` grid.
pub fn gaussian_curve(spec: &GaussianSpectrum, betas: &[f64]) -> Result<IBCurve> {
    validate_betas(betas)?;
    let points = betas
        .iter()
        .map(|&beta| {
            let mut rate = 0.0;
            let mut relevance = 0.0;
            for (lambda, crit) in spec.lambdas.iter().zip(&spec.critical_betas) {
                if beta > *crit {
                    rate += 0.5 * ((beta - 1.0) * (1.0 - lambda) / lambda).ln();
                    relevance += 0.5 * ((beta - 1.0) / (beta * lambda)).ln();
                }
            }
            CurvePoint {
                beta,
                rate,
                relevance,
                lagrangian: rate - beta * relevance,
                iters: 0,
                converged: true,
            }
        })
        .collect();
    IBCurve::new(points, "gaussian-closed-form")
}

// ---------------------------------------------------------------------------
// Quantised oracle
// ---------------------------------------------------------------------------

// 8-point Gauss-Legendre rule on [-1, 1].
const GL_NODES: [f64; 8] = [
    -0.960_289_856_497_536_3,
    -0.796_666_477_413_626_7,
    -0.525_532_409_916_329_0,
    -0.183_434_642_495_649_8,
    0.183_434_642_495_649_8,
    0.525_532_409_916_329_0,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
const GL_WEIGHTS: [f64; 8] = [
    0.101_228_536_290_376_26,
    0.222_381_034_453_374_47,
    0.313_706_645_877_887_3,
    0.362_683_783_378_362_0,
    0.362_683_783_378_362_0,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_47,
    0.101_228_536_290_376_26,
];

fn standard_normal_cdf(x: f64) -> f64 {
    0.5 * (1.0 + libm::erf(x / std::f64::consts::SQRT_2))
}

fn normal_pdf(x: f64, sigma: f64) -> f64 {
    let z = x / sigma;
    (-0.5 * z * z).exp() / (sigma * (2.0 * std::f64::consts::PI).sqrt())
}

/// Discretise a scalar Gaussian pair onto a `bins x bins` probability table.
///
/// The grid is uniform on `[-span*sigma, +span*sigma]` per axis with the
/// outermost cells extended to infinity, so tail mass folds into the edge
/// bins and the table is a true probability distribution. Only the scalar
/// case is supported — it is the oracle bridge to discrete BA; use the
/// closed form for higher dimensions.
pub fn quantize_gaussian(
    g: &GaussianJoint,
    bins_per_dim: usize,
    span_in_std: f64,
) -> Result<DiscreteJoint> {
    if g.dim_t != 1 || g.dim_c != 1 {
        return Err(Error::NonScalarGaussian {
            dim_t: g.dim_t,
            dim_c: g.dim_c,
        });
    }
    if bins_per_dim < 16 {
        return Err(Error::InvalidConfig(format!(
            "quantisation needs at least 16 bins, got {bins_per_dim}"
        )));
    }
    if !(span_in_std > 0.0) {
        return Err(Error::InvalidConfig("span must be positive".into()));
    }
    let sigma_t = g.sigma_tt[(0, 0)].sqrt();
    let sigma_c = g.sigma_cc[(0, 0)].sqrt();
    let rho = g.sigma_tc[(0, 0)] / (sigma_t * sigma_c);
    if 1.0 - rho * rho < 1e-12 {
        return Err(Error::DegenerateGaussian);
    }
    // C | T = t is N(slope * t, resid^2)
    let slope = rho * sigma_c / sigma_t;
    let resid = sigma_c * (1.0 - rho * rho).sqrt();

    let b = bins_per_dim;
    let half = span_in_std * sigma_t;
    let step = 2.0 * half / b as f64;
    let t_edge = |i: usize| -half + i as f64 * step;
    let c_half = span_in_std * sigma_c;
    let c_step = 2.0 * c_half / b as f64;
    // Interior column edges; the outer ones sit at +-infinity.
    let c_edges: Vec<f64> = (1..b).map(|j| -c_half + j as f64 * c_step).collect();

    // Integration cap for the folded edge bins: far enough out that the
    // truncated tail is below quadrature noise.
    let cap = (span_in_std + 10.0) * sigma_t;

    let mut mass = vec![0.0; b * b];
    let mut cum = vec![0.0; b + 1];
    for i in 0..b {
        let (lo, hi) = if i == 0 {
            (-cap, t_edge(1))
        } else if i == b - 1 {
            (t_edge(b - 1), cap)
        } else {
            (t_edge(i), t_edge(i + 1))
        };
        // Keep quadrature panels narrow; the edge bins are wide.
        let panels = ((hi - lo) / (0.5 * sigma_t)).ceil().max(1.0) as usize;
        let panel_w = (hi - lo) / panels as f64;
        for p in 0..panels {
            let a = lo + p as f64 * panel_w;
            let c0 = 0.5 * (a + a + panel_w);
            let hw = 0.5 * panel_w;
            for (node, weight) in GL_NODES.iter().zip(&GL_WEIGHTS) {
                let t = c0 + hw * node;
                let wt = hw * weight * normal_pdf(t, sigma_t);
                let mu = slope * t;
                cum[0] = 0.0;
                cum[b] = 1.0;
                for (j, e) in c_edges.iter().enumerate() {
                    cum[j + 1] = standard_normal_cdf((e - mu) / resid);
                }
                let row = &mut mass[i * b..(i + 1) * b];
                for (j, cell) in row.iter_mut().enumerate() {
                    *cell += wt * (cum[j + 1] - cum[j]);
                }
            }
        }
    }

    DiscreteJoint::normalized(b, b, mass)
}

// ---------------------------------------------------------------------------
// Empirical reduction for nonlinear-Gaussian conditionals
// ---------------------------------------------------------------------------

/// How one axis of an empirical sample pair is coded into a finite alphabet.
#[derive(Debug, Clone)]
pub enum AxisCoding<'a> {
    /// Values already are integer codes in `0..alphabet`.
    Discrete { codes: &'a [usize], alphabet: usize },
    /// Row-major `count x dim` values, quantised per dimension on a uniform
    /// grid over the observed range.
    Quantized {
        values: &'a [f64],
        dim: usize,
        bins_per_dim: usize,
    },
}

impl AxisCoding<'_> {
    fn count(&self) -> usize {
        match self {
            AxisCoding::Discrete { codes, .. } => codes.len(),
            AxisCoding::Quantized { values, dim, .. } => values.len() / (*dim).max(1),
        }
    }

    fn encode(&self) -> Result<(Vec<usize>, usize)> {
        match self {
            AxisCoding::Discrete { codes, alphabet } => {
                if *alphabet == 0 {
                    return Err(Error::EmptyTable);
                }
                for (i, &c) in codes.iter().enumerate() {
                    if c >= *alphabet {
                        return Err(Error::FiberOutOfRange {
                            index: i,
                            value: c,
                            codomain: *alphabet,
                        });
                    }
                }
                Ok((codes.to_vec(), *alphabet))
            }
            AxisCoding::Quantized {
                values,
                dim,
                bins_per_dim,
            } => {
                let (dim, bins) = (*dim, *bins_per_dim);
                if dim == 0 || bins == 0 {
                    return Err(Error::EmptyTable);
                }
                if values.len() % dim != 0 {
                    return Err(Error::LengthMismatch {
                        expected: (values.len() / dim) * dim,
                        got: values.len(),
                    });
                }
                let n = values.len() / dim;
                let alphabet = bins
                    .checked_pow(dim as u32)
                    .filter(|&a| a <= 1 << 20)
                    .ok_or_else(|| {
                        Error::InvalidConfig("quantiser alphabet exceeds 2^20 codes".into())
                    })?;
                let mut lo = vec![f64::INFINITY; dim];
                let mut hi = vec![f64::NEG_INFINITY; dim];
                for (i, &v) in values.iter().enumerate() {
                    if !v.is_finite() {
                        return Err(Error::NonFinitePoint);
                    }
                    let d = i % dim;
                    lo[d] = lo[d].min(v);
                    hi[d] = hi[d].max(v);
                }
                let mut codes = Vec::with_capacity(n);
                for s in 0..n {
                    let mut code = 0usize;
                    let mut stride = 1usize;
                    for d in 0..dim {
                        let v = values[s * dim + d];
                        let width = hi[d] - lo[d];
                        let idx = if width > 0.0 {
                            (((v - lo[d]) / width) * bins as f64) as usize
                        } else {
                            0
                        };
                        code += idx.min(bins - 1) * stride;
                        stride *= bins;
                    }
                    codes.push(code);
                }
                Ok((codes, alphabet))
            }
        }
    }
}

/// Build the empirical reduced joint over `(coded statistic, coded target)`
/// from paired samples. This is what makes nonlinear-Gaussian conditionals
/// `C = f(T) + noise` tractable: the table is sized by the statistic's
/// dimension, never by the ambient dimension of `T`.
pub fn nonlinear_gaussian_reduce(
    statistic: &AxisCoding,
    target: &AxisCoding,
) -> Result<DiscreteJoint> {
    let n = statistic.count();
    if n == 0 {
        return Err(Error::EmptyInput("sample set"));
    }
    if target.count() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: target.count(),
        });
    }
    let (s_codes, s_alpha) = statistic.encode()?;
    let (t_codes, t_alpha) = target.encode()?;
    let mut counts = vec![0.0; s_alpha * t_alpha];
    for (s, t) in s_codes.into_iter().zip(t_codes) {
        counts[s * t_alpha + t] += 1.0;
    }
    DiscreteJoint::normalized(s_alpha, t_alpha, counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::info::mutual_information;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn scalar_spectrum_matches_hand_algebra() {
        let g = GaussianJoint::from_correlation(0.8).unwrap();
        let spec = sufficient_statistic(&g).unwrap();
        assert_eq!(spec.rank, 1);
        assert!((spec.statistic_matrix[(0, 0)] - 0.8).abs() < 1e-12);
        assert!((spec.correlations[0] - 0.8).abs() < 1e-12);
        assert!((spec.lambdas[0] - 0.36).abs() < 1e-12);
        assert!((spec.critical_betas[0] - 1.5625).abs() < 1e-12);
    }

    #[test]
    fn independent_pair_has_empty_spectrum() {
        let g = GaussianJoint::scalar(2.0, 3.0, 0.0).unwrap();
        let spec = sufficient_statistic(&g).unwrap();
        assert_eq!(spec.rank, 0);
        assert!(spec.correlations.is_empty());
        let curve = gaussian_curve(&spec, &[0.5, 2.0, 10.0]).unwrap();
        for p in curve.points() {
            assert_eq!(p.rate, 0.0);
            assert_eq!(p.relevance, 0.0);
        }
    }

    #[test]
    fn rank_is_bounded_by_target_dimension() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let (dt, dc) = (10usize, 2usize);
        let n = dt + dc;
        let f = DMatrix::from_fn(n, n, |_, _| rng.random::<f64>() - 0.5);
        let full = &f * f.transpose() + DMatrix::identity(n, n) * 0.1;
        let g = GaussianJoint::new(
            full.view((0, 0), (dt, dt)).into_owned(),
            full.view((0, dt), (dt, dc)).into_owned(),
            full.view((dt, dt), (dc, dc)).into_owned(),
        )
        .unwrap();
        let spec = sufficient_statistic(&g).unwrap();
        assert_eq!(spec.rank, dc);
        assert_eq!(spec.correlations.len(), dc);
        for r in &spec.correlations {
            assert!(*r > 0.0 && *r < 1.0);
        }
    }

    #[test]
    fn closed_form_matches_scalar_derivation() {
        let g = GaussianJoint::from_correlation(0.8).unwrap();
        let spec = sufficient_statistic(&g).unwrap();
        let curve = gaussian_curve(&spec, &[2.0]).unwrap();
        let p = &curve.points()[0];
        assert!((p.rate - 0.2876820724517809).abs() < 1e-12);
        assert!((p.relevance - 0.16425203348601803).abs() < 1e-12);
    }

    #[test]
    fn relevance_saturates_at_the_gaussian_mutual_information() {
        let g = GaussianJoint::from_correlation(0.8).unwrap();
        let spec = sufficient_statistic(&g).unwrap();
        let i_tc = 0.5108256237659907;
        assert!((spec.mutual_information() - i_tc).abs() < 1e-12);
        let curve = gaussian_curve(&spec, &[1e6]).unwrap();
        assert!((curve.points()[0].relevance - i_tc).abs() < 1e-5);
    }

    #[test]
    fn below_first_critical_beta_the_curve_is_trivial() {
        let g = GaussianJoint::from_correlation(0.8).unwrap();
        let spec = sufficient_statistic(&g).unwrap();
        let curve = gaussian_curve(&spec, &[1.0, 1.5625]).unwrap();
        for p in curve.points() {
            assert!(p.rate.abs() < 1e-12);
            assert!(p.relevance.abs() < 1e-12);
        }
    }

    #[test]
    fn components_enter_at_zero_contribution() {
        let g = GaussianJoint::from_correlation(0.8).unwrap();
        let spec = sufficient_statistic(&g).unwrap();
        let crit = spec.critical_betas[0];
        let curve = gaussian_curve(&spec, &[crit * (1.0 + 1e-9)]).unwrap();
        assert!(curve.points()[0].rate < 1e-8);
        assert!(curve.points()[0].relevance < 1e-8);
    }

    #[test]
    fn curve_is_invariant_under_invertible_reparameterisation() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let (dt, dc) = (4usize, 2usize);
        let n = dt + dc;
        let f = DMatrix::from_fn(n, n, |_, _| rng.random::<f64>() - 0.5);
        let full = &f * f.transpose() + DMatrix::identity(n, n) * 0.2;
        let tt: DMatrix<f64> = full.view((0, 0), (dt, dt)).into_owned();
        let tc: DMatrix<f64> = full.view((0, dt), (dt, dc)).into_owned();
        let cc: DMatrix<f64> = full.view((dt, dt), (dc, dc)).into_owned();
        let g = GaussianJoint::new(tt.clone(), tc.clone(), cc.clone()).unwrap();

        let r = DMatrix::from_fn(dt, dt, |_, _| rng.random::<f64>() - 0.5)
            + DMatrix::identity(dt, dt) * 2.0;
        let g2 = GaussianJoint::new(&r * &tt * r.transpose(), &r * &tc, cc).unwrap();

        let s1 = sufficient_statistic(&g).unwrap();
        let s2 = sufficient_statistic(&g2).unwrap();
        assert_eq!(s1.rank, s2.rank);
        for (a, b) in s1.correlations.iter().zip(&s2.correlations) {
            assert!((a - b).abs() < 1e-9, "correlations differ: {a} vs {b}");
        }
        let betas = [1.2, 2.0, 5.0, 20.0];
        let c1 = gaussian_curve(&s1, &betas).unwrap();
        let c2 = gaussian_curve(&s2, &betas).unwrap();
        for (p, q) in c1.points().iter().zip(c2.points()) {
            assert!((p.rate - q.rate).abs() < 1e-9);
            assert!((p.relevance - q.relevance).abs() < 1e-9);
        }
    }

    #[test]
    fn quantised_independent_pair_has_no_information() {
        let g = GaussianJoint::scalar(1.0, 1.0, 0.0).unwrap();
        let joint = quantize_gaussian(&g, 64, 4.0).unwrap();
        assert!(mutual_information(&joint) < 1e-10);
    }

    #[test]
    fn quantised_mutual_information_approaches_the_analytic_value() {
        let g = GaussianJoint::from_correlation(0.8).unwrap();
        let joint = quantize_gaussian(&g, 200, 4.0).unwrap();
        let mi = mutual_information(&joint);
        assert!(
            (mi - 0.5108256237659907).abs() < 0.01,
            "discrete MI {mi} too far from analytic"
        );
    }

    #[test]
    fn quantiser_rejects_vector_pairs_and_tiny_grids() {
        let g = GaussianJoint::from_correlation(0.5).unwrap();
        assert!(quantize_gaussian(&g, 8, 4.0).is_err());

        let tt = DMatrix::identity(2, 2);
        let tc = DMatrix::zeros(2, 1);
        let cc = DMatrix::identity(1, 1);
        let g2 = GaussianJoint::new(tt, tc, cc).unwrap();
        assert!(matches!(
            quantize_gaussian(&g2, 64, 4.0),
            Err(Error::NonScalarGaussian { dim_t: 2, dim_c: 1 })
        ));
    }

    #[test]
    fn constant_statistic_reduces_to_zero_information() {
        let values = vec![3.25; 40];
        let labels: Vec<usize> = (0..40).map(|i| i % 4).collect();
        let joint = nonlinear_gaussian_reduce(
            &AxisCoding::Quantized {
                values: &values,
                dim: 1,
                bins_per_dim: 16,
            },
            &AxisCoding::Discrete {
                codes: &labels,
                alphabet: 4,
            },
        )
        .unwrap();
        assert!(mutual_information(&joint) < 1e-12);
    }

    #[test]
    fn empty_sample_set_is_an_error() {
        let err = nonlinear_gaussian_reduce(
            &AxisCoding::Discrete {
                codes: &[],
                alphabet: 2,
            },
            &AxisCoding::Discrete {
                codes: &[],
                alphabet: 2,
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::EmptyInput(_)));
    }
}

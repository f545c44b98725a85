//! Exact Gaussian process regression with a squared-exponential kernel.
//!
//! One [`GpModel`] holds a scalar-output GP: kernel hyperparameters, the
//! observation history, and a cached Cholesky factorization of the
//! regularized Gram matrix. The tuner keeps two of these, one for the daily
//! energy consumption and one for the daily thermal discomfort, both over the
//! joint input `x = (controller parameters, context)`.

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};
use thiserror::Error;

/// Relative jitter added to the Gram diagonal, as a fraction of the signal
/// variance. Keeps near-duplicate inputs solvable.
pub const GRAM_JITTER_FACTOR: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum GpError {
    #[error("input has dimension {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid kernel hyperparameters: {0}")]
    InvalidHyper(String),
    #[error("Gram matrix factorization failed despite jitter")]
    Factorization,
    #[error("operation needs at least {needed} observations, model has {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("invalid hyperparameter search bounds: {0}")]
    InvalidBounds(String),
}

/// Hyperparameters of the squared-exponential kernel
/// `k(x, y) = sv * exp(-sum_i ((x_i - y_i) / l_i)^2)`
/// with one lengthscale per input dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct SeKernelHyper {
    signal_variance: f64,
    lengthscales: Vec<f64>,
}

impl SeKernelHyper {
    pub fn new(signal_variance: f64, lengthscales: Vec<f64>) -> Result<Self, GpError> {
        if !signal_variance.is_finite() || signal_variance <= 0.0 {
            return Err(GpError::InvalidHyper(format!(
                "signal variance must be positive and finite, got {signal_variance}"
            )));
        }
        if lengthscales.is_empty() {
            return Err(GpError::InvalidHyper("no lengthscales given".into()));
        }
        if let Some(l) = lengthscales.iter().find(|l| !l.is_finite() || **l <= 0.0) {
            return Err(GpError::InvalidHyper(format!(
                "lengthscales must be positive and finite, got {l}"
            )));
        }
        Ok(Self { signal_variance, lengthscales })
    }

    pub fn signal_variance(&self) -> f64 {
        self.signal_variance
    }

    pub fn lengthscales(&self) -> &[f64] {
        &self.lengthscales
    }

    pub fn input_dim(&self) -> usize {
        self.lengthscales.len()
    }
}

/// Squared-exponential covariance between two points.
///
/// Symmetric in its arguments and bounded by `(0, signal_variance]`.
pub fn se_kernel(x: &[f64], y: &[f64], hyper: &SeKernelHyper) -> Result<f64, GpError> {
    let d = hyper.input_dim();
    if x.len() != d {
        return Err(GpError::DimensionMismatch { expected: d, got: x.len() });
    }
    if y.len() != d {
        return Err(GpError::DimensionMismatch { expected: d, got: y.len() });
    }
    Ok(se_kernel_unchecked(x, y, hyper))
}

#[inline]
fn se_kernel_unchecked(x: &[f64], y: &[f64], hyper: &SeKernelHyper) -> f64 {
    let mut sum = 0.0;
    for i in 0..hyper.lengthscales.len() {
        let scaled = (x[i] - y[i]) / hyper.lengthscales[i];
        sum += scaled * scaled;
    }
    hyper.signal_variance * (-sum).exp()
}

/// Prior mean of a GP.
///
/// `Empirical` centers the model on the mean of the first `warmup` outputs
/// (zero before any data arrives), so confidence bounds are not biased by an
/// arbitrary constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PriorMean {
    Constant(f64),
    Empirical { warmup: usize },
}

/// Posterior of the GP at a single query point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Posterior {
    pub mean: f64,
    pub variance: f64,
}

impl Posterior {
    pub fn std_dev(&self) -> f64 {
        self.variance.sqrt()
    }
}

#[derive(Clone, Debug)]
struct Factorization {
    chol: Cholesky<f64, Dyn>,
    gram_inv: DMatrix<f64>,
    /// `(K + sigma^2 I)^-1 (y - mu)`
    alpha: DVector<f64>,
}

/// Exact GP regression model with squared-exponential kernel.
///
/// Single-writer: [`GpModel::add_observation`] mutates and refreshes the
/// factorization eagerly, so the read-only queries ([`GpModel::posterior`],
/// [`GpModel::log_marginal_likelihood`]) never need interior mutability and
/// the model can be shared across threads between mutations.
#[derive(Clone, Debug)]
pub struct GpModel {
    hyper: SeKernelHyper,
    noise_variance: f64,
    prior: PriorMean,
    inputs: Vec<Vec<f64>>,
    outputs: Vec<f64>,
    cache: Option<Factorization>,
}

impl GpModel {
    pub fn new(hyper: SeKernelHyper, noise_variance: f64, prior: PriorMean) -> Result<Self, GpError> {
        if !noise_variance.is_finite() || noise_variance < 0.0 {
            return Err(GpError::InvalidHyper(format!(
                "noise variance must be nonnegative and finite, got {noise_variance}"
            )));
        }
        Ok(Self { hyper, noise_variance, prior, inputs: Vec::new(), outputs: Vec::new(), cache: None })
    }

    pub fn hyper(&self) -> &SeKernelHyper {
        &self.hyper
    }

    pub fn noise_variance(&self) -> f64 {
        self.noise_variance
    }

    pub fn input_dim(&self) -> usize {
        self.hyper.input_dim()
    }

    pub fn len(&self) -> usize {
        self.outputs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outputs.is_empty()
    }

    pub fn inputs(&self) -> &[Vec<f64>] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[f64] {
        &self.outputs
    }

    /// Current value of the prior mean, resolving the empirical rule against
    /// the observation history.
    pub fn prior_mean_value(&self) -> f64 {
        match self.prior {
            PriorMean::Constant(m) => m,
            PriorMean::Empirical { warmup } => {
                if self.outputs.is_empty() {
                    0.0
                } else {
                    let k = warmup.max(1).min(self.outputs.len());
                    self.outputs[..k].iter().sum::<f64>() / k as f64
                }
            }
        }
    }

    /// Appends one `(x, y)` pair and refreshes the cached factorization.
    ///
    /// On factorization failure the pair is rolled back and the model is left
    /// unchanged.
    pub fn add_observation(&mut self, x: &[f64], y: f64) -> Result<(), GpError> {
        if x.len() != self.input_dim() {
            return Err(GpError::DimensionMismatch { expected: self.input_dim(), got: x.len() });
        }
        self.inputs.push(x.to_vec());
        self.outputs.push(y);
        match factorize(&self.inputs, &self.outputs, &self.hyper, self.noise_variance, self.prior_mean_value()) {
            Ok(f) => {
                self.cache = Some(f);
                Ok(())
            }
            Err(e) => {
                self.inputs.pop();
                self.outputs.pop();
                Err(e)
            }
        }
    }

    /// Posterior mean and variance at one query point.
    pub fn posterior(&self, x: &[f64]) -> Result<Posterior, GpError> {
        let batch = self.posterior_batch(std::slice::from_ref(&x.to_vec()))?;
        Ok(batch[0])
    }

    /// Posterior mean and variance at many query points.
    ///
    /// One factorized solve serves the whole batch; the per-point results are
    /// identical to independent queries up to floating-point reassociation.
    pub fn posterior_batch(&self, xs: &[Vec<f64>]) -> Result<Vec<Posterior>, GpError> {
        let d = self.input_dim();
        for x in xs {
            if x.len() != d {
                return Err(GpError::DimensionMismatch { expected: d, got: x.len() });
            }
        }
        let prior_mean = self.prior_mean_value();
        let prior_var = self.hyper.signal_variance();
        let n = self.len();
        if n == 0 {
            return Ok(xs.iter().map(|_| Posterior { mean: prior_mean, variance: prior_var }).collect());
        }
        let fac = self.cache.as_ref().ok_or(GpError::Factorization)?;
        let m = xs.len();
        let mut kstar = DMatrix::zeros(n, m);
        for (j, x) in xs.iter().enumerate() {
            for i in 0..n {
                kstar[(i, j)] = se_kernel_unchecked(&self.inputs[i], x, &self.hyper);
            }
        }
        let means = kstar.tr_mul(&fac.alpha);
        let w = &fac.gram_inv * &kstar;
        let mut out = Vec::with_capacity(m);
        for j in 0..m {
            let mut quad = 0.0;
            for i in 0..n {
                quad += kstar[(i, j)] * w[(i, j)];
            }
            let variance = (prior_var - quad).max(0.0);
            out.push(Posterior { mean: prior_mean + means[j], variance });
        }
        Ok(out)
    }

    /// Log evidence of the observed outputs under the current prior mean,
    /// kernel, and noise level.
    pub fn log_marginal_likelihood(&self) -> Result<f64, GpError> {
        if self.is_empty() {
            return Err(GpError::InsufficientData { needed: 1, got: 0 });
        }
        let fac = self.cache.as_ref().ok_or(GpError::Factorization)?;
        let n = self.len();
        let mu = self.prior_mean_value();
        let residual = DVector::from_iterator(n, self.outputs.iter().map(|y| y - mu));
        let quad = residual.dot(&fac.alpha);
        let mut log_det_half = 0.0;
        let l = fac.chol.l_dirty();
        for i in 0..n {
            log_det_half += l[(i, i)].ln();
        }
        Ok(-0.5 * quad - log_det_half - 0.5 * n as f64 * (2.0 * std::f64::consts::PI).ln())
    }

    /// Log marginal likelihood the model would have under different kernel
    /// hyperparameters, without mutating the model.
    pub fn log_marginal_likelihood_with(&self, hyper: &SeKernelHyper) -> Result<f64, GpError> {
        if self.is_empty() {
            return Err(GpError::InsufficientData { needed: 1, got: 0 });
        }
        if hyper.input_dim() != self.input_dim() {
            return Err(GpError::DimensionMismatch {
                expected: self.input_dim(),
                got: hyper.input_dim(),
            });
        }
        let trial = GpModel {
            hyper: hyper.clone(),
            noise_variance: self.noise_variance,
            prior: self.prior,
            inputs: self.inputs.clone(),
            outputs: self.outputs.clone(),
            cache: None,
        };
        let fac = factorize(&trial.inputs, &trial.outputs, hyper, trial.noise_variance, trial.prior_mean_value())?;
        let with_cache = GpModel { cache: Some(fac), ..trial };
        with_cache.log_marginal_likelihood()
    }
}

fn factorize(
    inputs: &[Vec<f64>],
    outputs: &[f64],
    hyper: &SeKernelHyper,
    noise_variance: f64,
    prior_mean: f64,
) -> Result<Factorization, GpError> {
    let n = inputs.len();
    let diag = noise_variance + GRAM_JITTER_FACTOR * hyper.signal_variance();
    let mut gram = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let k = se_kernel_unchecked(&inputs[i], &inputs[j], hyper);
            gram[(i, j)] = k;
            gram[(j, i)] = k;
        }
        gram[(i, i)] += diag;
    }
    let chol = Cholesky::new(gram).ok_or(GpError::Factorization)?;
    let gram_inv = chol.inverse();
    let residual = DVector::from_iterator(n, outputs.iter().map(|y| y - prior_mean));
    let alpha = chol.solve(&residual);
    Ok(Factorization { chol, gram_inv, alpha })
}

/// Box over log-hyperparameters for [`fit_hyperparameters`]: one interval for
/// the log signal variance and one per log lengthscale, searched on a grid of
/// `levels` points per coordinate.
#[derive(Debug, Clone)]
pub struct HyperBounds {
    pub log_signal_variance: (f64, f64),
    pub log_lengthscales: Vec<(f64, f64)>,
    pub levels: usize,
}

impl HyperBounds {
    fn validate(&self, input_dim: usize) -> Result<(), GpError> {
        if self.levels == 0 {
            return Err(GpError::InvalidBounds("levels must be at least 1".into()));
        }
        if self.log_lengthscales.len() != input_dim {
            return Err(GpError::InvalidBounds(format!(
                "{} lengthscale intervals for input dimension {input_dim}",
                self.log_lengthscales.len()
            )));
        }
        let mut all = vec![self.log_signal_variance];
        all.extend_from_slice(&self.log_lengthscales);
        for (lo, hi) in all {
            if !lo.is_finite() || !hi.is_finite() || lo > hi {
                return Err(GpError::InvalidBounds(format!("empty or non-finite interval [{lo}, {hi}]")));
            }
        }
        Ok(())
    }

    fn grid_axis(&self, coord: usize) -> Vec<f64> {
        let (lo, hi) = if coord == 0 {
            self.log_signal_variance
        } else {
            self.log_lengthscales[coord - 1]
        };
        if lo == hi || self.levels == 1 {
            return vec![lo];
        }
        (0..self.levels)
            .map(|i| lo + (hi - lo) * i as f64 / (self.levels - 1) as f64)
            .collect()
    }
}

/// Maximizes the log marginal likelihood over a full grid in log-hyperparameter
/// space and returns the best candidate. When the model's current
/// hyperparameters lie inside the search box they compete as well, so the
/// result is never worse than the incumbent.
///
/// The grid is the Cartesian product of per-coordinate axes in the order
/// `[signal variance, lengthscale 1, ..., lengthscale d]`, iterated with the
/// last coordinate varying fastest; ties keep the earlier candidate. The cost
/// is `levels^(d+1)` likelihood evaluations, so this is meant for offline
/// fitting at modest dimension or coarse level counts.
pub fn fit_hyperparameters(model: &GpModel, bounds: &HyperBounds) -> Result<SeKernelHyper, GpError> {
    if model.len() < 5 {
        return Err(GpError::InsufficientData { needed: 5, got: model.len() });
    }
    let d = model.input_dim();
    bounds.validate(d)?;
    let axes: Vec<Vec<f64>> = (0..=d).map(|c| bounds.grid_axis(c)).collect();

    let incumbent = model.hyper().clone();
    let incumbent_log: Vec<f64> = std::iter::once(incumbent.signal_variance())
        .chain(incumbent.lengthscales().iter().copied())
        .map(f64::ln)
        .collect();
    let incumbent_in_box = incumbent_log.iter().enumerate().all(|(c, v)| {
        let (lo, hi) = if c == 0 { bounds.log_signal_variance } else { bounds.log_lengthscales[c - 1] };
        (lo..=hi).contains(v)
    });
    let mut best_hyper = incumbent;
    let mut best_lml = if incumbent_in_box { model.log_marginal_likelihood()? } else { f64::NEG_INFINITY };

    let mut idx = vec![0usize; d + 1];
    loop {
        let sv = axes[0][idx[0]].exp();
        let ls: Vec<f64> = (0..d).map(|i| axes[i + 1][idx[i + 1]].exp()).collect();
        let candidate = SeKernelHyper::new(sv, ls)?;
        let lml = model.log_marginal_likelihood_with(&candidate)?;
        if lml > best_lml {
            best_lml = lml;
            best_hyper = candidate;
        }
        // odometer increment, last coordinate fastest
        let mut c = d + 1;
        loop {
            if c == 0 {
                return Ok(best_hyper);
            }
            c -= 1;
            idx[c] += 1;
            if idx[c] < axes[c].len() {
                break;
            }
            idx[c] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_hyper(dim: usize) -> SeKernelHyper {
        SeKernelHyper::new(1.0, vec![1.0; dim]).unwrap()
    }

    #[test]
    fn kernel_at_zero_distance_is_signal_variance() {
        let hyper = SeKernelHyper::new(56.7, vec![5.9, 3.1, 2.7, 1290.6, 8.0, 150.0, 2.0]).unwrap();
        let x = [0.3, -1.0, 23.0, 300.0, 4.0, 120.0, 22.0];
        assert_eq!(se_kernel(&x, &x, &hyper).unwrap(), 56.7);

        let other = SeKernelHyper::new(2.5, vec![1.0, 1.0]).unwrap();
        assert_eq!(se_kernel(&[0.0, 1.0], &[0.0, 1.0], &other).unwrap(), 2.5);
    }

    #[test]
    fn kernel_one_lengthscale_apart() {
        let hyper = SeKernelHyper::new(1.0, vec![2.0]).unwrap();
        let k = se_kernel(&[0.0], &[2.0], &hyper).unwrap();
        assert!((k - (-1.0f64).exp()).abs() < 1e-12, "got {k}");
    }

    #[test]
    fn kernel_rejects_dimension_mismatch() {
        let hyper = unit_hyper(3);
        assert!(matches!(
            se_kernel(&[0.0, 1.0], &[0.0, 1.0, 2.0], &hyper),
            Err(GpError::DimensionMismatch { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn hyper_rejects_nonpositive_values() {
        assert!(SeKernelHyper::new(0.0, vec![1.0]).is_err());
        assert!(SeKernelHyper::new(1.0, vec![1.0, -2.0]).is_err());
        assert!(SeKernelHyper::new(1.0, vec![]).is_err());
    }

    #[test]
    fn add_observation_extends_history() {
        let mut model = GpModel::new(unit_hyper(2), 0.1, PriorMean::Constant(0.0)).unwrap();
        assert!(model.is_empty());
        model.add_observation(&[0.0, 0.0], 3.0).unwrap();
        assert_eq!(model.len(), 1);
        model.add_observation(&[1.0, 0.5], -1.0).unwrap();
        assert_eq!(model.len(), 2);
        assert!(matches!(
            model.add_observation(&[1.0], 0.0),
            Err(GpError::DimensionMismatch { expected: 2, got: 1 })
        ));
        assert_eq!(model.len(), 2);
    }

    #[test]
    fn repeated_inputs_stay_solvable_with_noise() {
        let mut model = GpModel::new(unit_hyper(1), 0.01, PriorMean::Constant(0.0)).unwrap();
        for _ in 0..5 {
            model.add_observation(&[0.5], 1.0).unwrap();
        }
        let p = model.posterior(&[0.5]).unwrap();
        assert!(p.variance >= 0.0);
        assert!(p.mean.is_finite());
    }

    #[test]
    fn empty_model_returns_prior() {
        let model = GpModel::new(SeKernelHyper::new(3.0, vec![1.0]).unwrap(), 0.1, PriorMean::Constant(1.5)).unwrap();
        let p = model.posterior(&[0.0]).unwrap();
        assert_eq!(p.mean, 1.5);
        assert_eq!(p.variance, 3.0);

        let empirical = GpModel::new(unit_hyper(1), 0.1, PriorMean::Empirical { warmup: 5 }).unwrap();
        assert_eq!(empirical.posterior(&[2.0]).unwrap().mean, 0.0);
    }

    #[test]
    fn noiseless_observation_is_interpolated() {
        let mut model = GpModel::new(unit_hyper(2), 0.0, PriorMean::Constant(1.5)).unwrap();
        model.add_observation(&[0.2, -0.4], 2.0).unwrap();
        let p = model.posterior(&[0.2, -0.4]).unwrap();
        assert!((p.mean - 2.0).abs() < 1e-8, "mean {}", p.mean);
        assert!(p.variance.abs() <= 1e-8, "variance {}", p.variance);
    }

    #[test]
    fn empirical_prior_uses_first_outputs() {
        let mut model = GpModel::new(unit_hyper(1), 0.1, PriorMean::Empirical { warmup: 3 }).unwrap();
        model.add_observation(&[0.0], 2.0).unwrap();
        assert_eq!(model.prior_mean_value(), 2.0);
        model.add_observation(&[1.0], 4.0).unwrap();
        assert_eq!(model.prior_mean_value(), 3.0);
        model.add_observation(&[2.0], 6.0).unwrap();
        model.add_observation(&[3.0], 100.0).unwrap();
        assert_eq!(model.prior_mean_value(), 4.0);
    }

    #[test]
    fn likelihood_of_single_zero_residual_unit_variance() {
        // signal variance + noise + jitter = 1 to within the jitter itself
        let hyper = SeKernelHyper::new(0.5, vec![1.0]).unwrap();
        let mut model = GpModel::new(hyper, 0.5, PriorMean::Constant(2.0)).unwrap();
        model.add_observation(&[0.0], 2.0).unwrap();
        let lml = model.log_marginal_likelihood().unwrap();
        let expected = -0.5 * (2.0 * std::f64::consts::PI).ln();
        assert!((lml - expected).abs() < 1e-6, "lml {lml}, expected {expected}");
    }

    #[test]
    fn likelihood_decreases_with_scaled_residuals() {
        let hyper = SeKernelHyper::new(0.5, vec![1.0]).unwrap();
        let mut base = GpModel::new(hyper.clone(), 0.5, PriorMean::Constant(0.0)).unwrap();
        let mut scaled = GpModel::new(hyper, 0.5, PriorMean::Constant(0.0)).unwrap();
        let xs = [-1.0, 0.0, 1.5, 3.0];
        let ys = [0.4, -0.2, 0.9, -0.5];
        for (x, y) in xs.iter().zip(ys) {
            base.add_observation(&[*x], y).unwrap();
            scaled.add_observation(&[*x], 3.0 * y).unwrap();
        }
        assert!(scaled.log_marginal_likelihood().unwrap() < base.log_marginal_likelihood().unwrap());
    }

    #[test]
    fn likelihood_requires_data() {
        let model = GpModel::new(unit_hyper(1), 0.1, PriorMean::Constant(0.0)).unwrap();
        assert!(matches!(model.log_marginal_likelihood(), Err(GpError::InsufficientData { .. })));
    }

    #[test]
    fn fit_with_collapsed_bounds_returns_that_point() {
        let mut model = GpModel::new(unit_hyper(1), 0.01, PriorMean::Constant(0.0)).unwrap();
        for i in 0..6 {
            model.add_observation(&[i as f64 * 0.4], (i as f64 * 0.4).sin()).unwrap();
        }
        let bounds = HyperBounds {
            log_signal_variance: (0.7, 0.7),
            log_lengthscales: vec![(-0.3, -0.3)],
            levels: 5,
        };
        let fitted = fit_hyperparameters(&model, &bounds).unwrap();
        assert!((fitted.signal_variance() - 0.7f64.exp()).abs() < 1e-12);
        assert!((fitted.lengthscales()[0] - (-0.3f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn fit_never_worse_than_incumbent() {
        // data drawn from the incumbent hyperparameters themselves
        let hyper = SeKernelHyper::new(1.0, vec![0.8]).unwrap();
        let mut model = GpModel::new(hyper.clone(), 0.01, PriorMean::Constant(0.0)).unwrap();
        for i in 0..8 {
            let x = i as f64 * 0.5 - 2.0;
            model.add_observation(&[x], (x * 1.3).cos()).unwrap();
        }
        let incumbent_lml = model.log_marginal_likelihood().unwrap();
        let bounds = HyperBounds {
            log_signal_variance: (-1.0, 1.0),
            log_lengthscales: vec![(-1.5, 1.0)],
            levels: 7,
        };
        let fitted = fit_hyperparameters(&model, &bounds).unwrap();
        let fitted_lml = model.log_marginal_likelihood_with(&fitted).unwrap();
        assert!(fitted_lml >= incumbent_lml - 1e-12);
    }

    #[test]
    fn fit_requires_five_observations() {
        let mut model = GpModel::new(unit_hyper(1), 0.01, PriorMean::Constant(0.0)).unwrap();
        for i in 0..4 {
            model.add_observation(&[i as f64], 0.0).unwrap();
        }
        let bounds = HyperBounds {
            log_signal_variance: (0.0, 1.0),
            log_lengthscales: vec![(0.0, 1.0)],
            levels: 3,
        };
        assert!(matches!(
            fit_hyperparameters(&model, &bounds),
            Err(GpError::InsufficientData { needed: 5, got: 4 })
        ));
    }

    #[test]
    fn fit_rejects_bad_bounds() {
        let mut model = GpModel::new(unit_hyper(1), 0.01, PriorMean::Constant(0.0)).unwrap();
        for i in 0..5 {
            model.add_observation(&[i as f64], 0.1).unwrap();
        }
        let empty = HyperBounds {
            log_signal_variance: (1.0, 0.0),
            log_lengthscales: vec![(0.0, 1.0)],
            levels: 3,
        };
        assert!(matches!(fit_hyperparameters(&model, &empty), Err(GpError::InvalidBounds(_))));
        let wrong_dim = HyperBounds {
            log_signal_variance: (0.0, 1.0),
            log_lengthscales: vec![(0.0, 1.0), (0.0, 1.0)],
            levels: 3,
        };
        assert!(matches!(fit_hyperparameters(&model, &wrong_dim), Err(GpError::InvalidBounds(_))));
    }
}

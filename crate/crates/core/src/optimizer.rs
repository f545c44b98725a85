//! Day-by-day parameter selection: the primal-dual tuner (PDCBO) and the
//! SafeOpt-style, constrained-EI, and fixed-parameter baselines.
//!
//! All strategies share one [`Tuner`], which holds the two GP surrogates, the
//! candidate grid, the confidence weight, and (for PDCBO) the dual variable.
//! Candidates are feature vectors; the controller-specific
//! [`ControllerParams`] / [`CandidateGrid`] types map the four tuning
//! variables onto GP features (gains in log scale) and back. The tuner itself
//! is dimension-agnostic so it can be exercised on low-dimensional synthetic
//! problems.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gp::{GpError, GpModel, Posterior};

/// Hard range for the daytime setpoint, degrees Celsius.
pub const DAY_SETPOINT_RANGE_C: (f64, f64) = (20.0, 26.0);
/// Hard range for the heating start time, minutes after midnight.
pub const HEAT_START_RANGE_MIN: (f64, f64) = (0.0, 540.0);

#[derive(Debug, Error)]
pub enum OptimizerError {
    #[error("candidate grid is empty")]
    EmptyGrid,
    #[error("invalid controller parameters: {0}")]
    InvalidParams(String),
    #[error("candidate dimension {candidate} plus context dimension must match GP input dimension {gp}")]
    GridDimension { candidate: usize, gp: usize },
    #[error(transparent)]
    Gp(#[from] GpError),
}

/// Error of one tuning step: either the surrogate machinery failed or the
/// day-evaluation callback did.
#[derive(Debug, Error)]
pub enum StepError<E: std::error::Error> {
    #[error(transparent)]
    Optimizer(#[from] OptimizerError),
    #[error("day evaluation failed: {0}")]
    Observe(#[source] E),
}

/// The four tuning variables of the heating controller.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ControllerParams {
    /// Proportional gain, per degree Celsius of error.
    pub kp: f64,
    /// Integral gain, per degree-Celsius-hour of accumulated error.
    pub ki: f64,
    /// Daytime setpoint, degrees Celsius.
    pub day_setpoint: f64,
    /// Minute of day at which the controller switches to the daytime setpoint.
    pub heat_start: f64,
}

impl ControllerParams {
    pub fn new(kp: f64, ki: f64, day_setpoint: f64, heat_start: f64) -> Self {
        Self { kp, ki, day_setpoint, heat_start }
    }

    /// GP input features: gains enter in log scale, setpoint and start time raw.
    pub fn gp_features(&self) -> [f64; 4] {
        [self.kp.ln(), self.ki.ln(), self.day_setpoint, self.heat_start]
    }

    pub fn validate(&self, bounds: &ParamBounds) -> Result<(), OptimizerError> {
        let checks = [
            ("kp", self.kp, bounds.kp),
            ("ki", self.ki, bounds.ki),
            ("day_setpoint", self.day_setpoint, DAY_SETPOINT_RANGE_C),
            ("heat_start", self.heat_start, HEAT_START_RANGE_MIN),
        ];
        for (name, value, (lo, hi)) in checks {
            if !value.is_finite() || value < lo || value > hi {
                return Err(OptimizerError::InvalidParams(format!(
                    "{name} = {value} outside [{lo}, {hi}]"
                )));
            }
        }
        Ok(())
    }
}

/// Configurable bounds for the PI gains. Setpoint and start-time ranges are
/// fixed (see [`DAY_SETPOINT_RANGE_C`], [`HEAT_START_RANGE_MIN`]).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamBounds {
    pub kp: (f64, f64),
    pub ki: (f64, f64),
}

impl Default for ParamBounds {
    fn default() -> Self {
        Self { kp: (0.05, 5.0), ki: (0.01, 2.0) }
    }
}

/// Daily environmental context observed before selecting parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Context {
    /// Forecast daily mean ambient temperature, degrees Celsius.
    pub ambient_temp: f64,
    /// Forecast daily mean solar irradiation, W/m^2.
    pub irradiation: f64,
    /// Room temperature at midnight, degrees Celsius.
    pub init_temp: f64,
}

impl Context {
    pub fn gp_features(&self) -> [f64; 3] {
        [self.ambient_temp, self.irradiation, self.init_temp]
    }

    pub fn validate(&self) -> Result<(), OptimizerError> {
        if !self.irradiation.is_finite() || self.irradiation < 0.0 {
            return Err(OptimizerError::InvalidParams(format!(
                "irradiation = {} must be nonnegative",
                self.irradiation
            )));
        }
        if !self.ambient_temp.is_finite() || !(-30.0..=45.0).contains(&self.ambient_temp) {
            return Err(OptimizerError::InvalidParams(format!(
                "ambient_temp = {} outside [-30, 45]",
                self.ambient_temp
            )));
        }
        if !self.init_temp.is_finite() || !(5.0..=35.0).contains(&self.init_temp) {
            return Err(OptimizerError::InvalidParams(format!(
                "init_temp = {} outside [5, 35]",
                self.init_temp
            )));
        }
        Ok(())
    }
}

/// Finite candidate set over the controller parameters.
#[derive(Debug, Clone)]
pub struct CandidateGrid {
    points: Vec<ControllerParams>,
}

impl CandidateGrid {
    pub fn new(points: Vec<ControllerParams>, bounds: &ParamBounds) -> Result<Self, OptimizerError> {
        if points.is_empty() {
            return Err(OptimizerError::EmptyGrid);
        }
        for p in &points {
            p.validate(bounds)?;
        }
        Ok(Self { points })
    }

    /// Cartesian product over the four tuning dimensions: the gains log-spaced
    /// over their bounds, setpoint and start time linearly spaced over their
    /// fixed ranges, with a per-dimension level count. Iteration order is kp
    /// slowest, heat_start fastest; ties in the acquisition break towards this
    /// order.
    pub fn cartesian(
        levels: (usize, usize, usize, usize),
        bounds: &ParamBounds,
    ) -> Result<Self, OptimizerError> {
        let (kp_levels, ki_levels, sp_levels, hs_levels) = levels;
        if kp_levels == 0 || ki_levels == 0 || sp_levels == 0 || hs_levels == 0 {
            return Err(OptimizerError::EmptyGrid);
        }
        let kp_axis = log_spaced(bounds.kp, kp_levels);
        let ki_axis = log_spaced(bounds.ki, ki_levels);
        let sp_axis = lin_spaced(DAY_SETPOINT_RANGE_C, sp_levels);
        let hs_axis = lin_spaced(HEAT_START_RANGE_MIN, hs_levels);
        let mut points = Vec::with_capacity(kp_levels * ki_levels * sp_levels * hs_levels);
        for &kp in &kp_axis {
            for &ki in &ki_axis {
                for &sp in &sp_axis {
                    for &hs in &hs_axis {
                        points.push(ControllerParams::new(kp, ki, sp, hs));
                    }
                }
            }
        }
        Self::new(points, bounds)
    }

    pub fn points(&self) -> &[ControllerParams] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn feature_rows(&self) -> Vec<Vec<f64>> {
        self.points.iter().map(|p| p.gp_features().to_vec()).collect()
    }
}

fn log_spaced((lo, hi): (f64, f64), levels: usize) -> Vec<f64> {
    if levels == 1 {
        return vec![lo];
    }
    let (llo, lhi) = (lo.ln(), hi.ln());
    (0..levels)
        .map(|i| {
            // exact endpoints, no exp/ln round trip
            if i == 0 {
                lo
            } else if i == levels - 1 {
                hi
            } else {
                (llo + (lhi - llo) * i as f64 / (levels - 1) as f64).exp()
            }
        })
        .collect()
}

fn lin_spaced((lo, hi): (f64, f64), levels: usize) -> Vec<f64> {
    if levels == 1 {
        return vec![lo];
    }
    (0..levels)
        .map(|i| lo + (hi - lo) * i as f64 / (levels - 1) as f64)
        .collect()
}

/// Lower confidence bound of a posterior: `mean - beta_sqrt * std`.
pub fn lcb_value(p: &Posterior, beta_sqrt: f64) -> f64 {
    p.mean - beta_sqrt * p.variance.sqrt()
}

/// Upper confidence bound of a posterior: `mean + beta_sqrt * std`.
pub fn ucb_value(p: &Posterior, beta_sqrt: f64) -> f64 {
    p.mean + beta_sqrt * p.variance.sqrt()
}

/// Lower confidence bound of the model at a full input point.
pub fn lcb(model: &GpModel, x: &[f64], beta_sqrt: f64) -> Result<f64, GpError> {
    Ok(lcb_value(&model.posterior(x)?, beta_sqrt))
}

/// Projected dual ascent step:
/// `max(0, lambda + eta * (g_lcb_at_chosen - threshold) + epsilon)`.
pub fn dual_update(lambda: f64, g_lcb_at_chosen: f64, threshold: f64, eta: f64, epsilon: f64) -> f64 {
    (lambda + eta * (g_lcb_at_chosen - threshold) + epsilon).max(0.0)
}

/// What one tuning step decided and observed.
#[derive(Debug, Clone, Copy)]
pub struct StepOutcome {
    /// Index of the chosen candidate in the grid.
    pub chosen: usize,
    /// Measured objective value fed to the objective GP.
    pub objective: f64,
    /// Measured constraint value fed to the constraint GP.
    pub constraint: f64,
    /// Dual variable at selection time (0 for the baselines).
    pub lambda_at_selection: f64,
}

/// Sequential tuner over a fixed candidate grid.
///
/// The objective GP models the metric being minimized and the constraint GP
/// the metric bounded by `threshold`; swapping the two formulations is purely
/// a matter of which measurements are fed to which model.
#[derive(Debug, Clone)]
pub struct Tuner {
    lambda: f64,
    eta: f64,
    epsilon: f64,
    beta_sqrt: f64,
    threshold: f64,
    gp_obj: GpModel,
    gp_con: GpModel,
    grid: Vec<Vec<f64>>,
    candidate_dim: usize,
}

impl Tuner {
    pub fn new(
        gp_obj: GpModel,
        gp_con: GpModel,
        grid: Vec<Vec<f64>>,
        threshold: f64,
        eta: f64,
        epsilon: f64,
        beta_sqrt: f64,
    ) -> Result<Self, OptimizerError> {
        if grid.is_empty() {
            return Err(OptimizerError::EmptyGrid);
        }
        let candidate_dim = grid[0].len();
        if grid.iter().any(|row| row.len() != candidate_dim) {
            return Err(OptimizerError::InvalidParams("grid rows have mixed dimensions".into()));
        }
        if candidate_dim >= gp_obj.input_dim()
            || gp_obj.input_dim() != gp_con.input_dim()
        {
            return Err(OptimizerError::GridDimension { candidate: candidate_dim, gp: gp_obj.input_dim() });
        }
        if eta <= 0.0 || epsilon < 0.0 || beta_sqrt < 0.0 || !eta.is_finite() {
            return Err(OptimizerError::InvalidParams(format!(
                "eta = {eta} must be positive, epsilon = {epsilon} and beta_sqrt = {beta_sqrt} nonnegative"
            )));
        }
        Ok(Self { lambda: 0.0, eta, epsilon, beta_sqrt, threshold, gp_obj, gp_con, grid, candidate_dim })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn reset_lambda(&mut self) {
        self.lambda = 0.0;
    }

    /// Restores a dual variable, e.g. when resuming a run; clamped to keep
    /// the nonnegativity invariant.
    pub fn set_lambda(&mut self, lambda: f64) {
        self.lambda = lambda.max(0.0);
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn set_threshold(&mut self, threshold: f64) {
        self.threshold = threshold;
    }

    pub fn beta_sqrt(&self) -> f64 {
        self.beta_sqrt
    }

    pub fn grid_len(&self) -> usize {
        self.grid.len()
    }

    pub fn gp_objective(&self) -> &GpModel {
        &self.gp_obj
    }

    pub fn gp_constraint(&self) -> &GpModel {
        &self.gp_con
    }

    fn query_rows(&self, context: &[f64]) -> Result<Vec<Vec<f64>>, OptimizerError> {
        let full = self.candidate_dim + context.len();
        if full != self.gp_obj.input_dim() {
            return Err(OptimizerError::GridDimension { candidate: self.candidate_dim, gp: self.gp_obj.input_dim() });
        }
        Ok(self
            .grid
            .iter()
            .map(|row| {
                let mut x = Vec::with_capacity(full);
                x.extend_from_slice(row);
                x.extend_from_slice(context);
                x
            })
            .collect())
    }

    /// Objective and constraint posteriors over the whole grid for one
    /// context, in grid order. What the selection rules consume; exposed for
    /// diagnostics.
    pub fn grid_posteriors(&self, context: &[f64]) -> Result<(Vec<Posterior>, Vec<Posterior>), OptimizerError> {
        let rows = self.query_rows(context)?;
        let obj = self.gp_obj.posterior_batch(&rows)?;
        let con = self.gp_con.posterior_batch(&rows)?;
        Ok((obj, con))
    }

    /// Grid point minimizing the Lagrangian LCB
    /// `lcb_obj + lambda * lcb_con`; ties break to the first grid index.
    pub fn primal_update(&self, context: &[f64]) -> Result<usize, OptimizerError> {
        let (obj, con) = self.grid_posteriors(context)?;
        Ok(self.primal_choice(&obj, &con))
    }

    fn primal_choice(&self, obj: &[Posterior], con: &[Posterior]) -> usize {
        argmin_first(
            (0..self.grid.len())
                .map(|i| lcb_value(&obj[i], self.beta_sqrt) + self.lambda * lcb_value(&con[i], self.beta_sqrt)),
        )
    }

    /// One PDCBO day: primal update, single evaluation of the chosen
    /// candidate, dual ascent on the constraint LCB at the chosen point, then
    /// GP updates. A callback error aborts the step with the tuner unchanged.
    pub fn pdcbo_step<E: std::error::Error>(
        &mut self,
        context: &[f64],
        observe: impl FnOnce(usize) -> Result<(f64, f64), E>,
    ) -> Result<StepOutcome, StepError<E>> {
        let (obj, con) = self.grid_posteriors(context)?;
        let chosen = self.primal_choice(&obj, &con);
        let (y_obj, y_con) = observe(chosen).map_err(StepError::Observe)?;
        let lambda_at_selection = self.lambda;
        let g_lcb = lcb_value(&con[chosen], self.beta_sqrt);
        self.ingest(context, chosen, y_obj, y_con)?;
        self.lambda = dual_update(lambda_at_selection, g_lcb, self.threshold, self.eta, self.epsilon);
        Ok(StepOutcome { chosen, objective: y_obj, constraint: y_con, lambda_at_selection })
    }

    /// SafeOpt-style day: among candidates whose constraint UCB is at most the
    /// threshold, pick the one with the lowest objective LCB; if no candidate
    /// is certified safe, pick the lowest constraint UCB instead.
    pub fn safeopt_step<E: std::error::Error>(
        &mut self,
        context: &[f64],
        observe: impl FnOnce(usize) -> Result<(f64, f64), E>,
    ) -> Result<StepOutcome, StepError<E>> {
        let (obj, con) = self.grid_posteriors(context)?;
        let safe: Vec<usize> = (0..self.grid.len())
            .filter(|&i| ucb_value(&con[i], self.beta_sqrt) <= self.threshold)
            .collect();
        let chosen = if safe.is_empty() {
            argmin_first((0..self.grid.len()).map(|i| ucb_value(&con[i], self.beta_sqrt)))
        } else {
            let local = argmin_first(safe.iter().map(|&i| lcb_value(&obj[i], self.beta_sqrt)));
            safe[local]
        };
        let (y_obj, y_con) = observe(chosen).map_err(StepError::Observe)?;
        self.ingest(context, chosen, y_obj, y_con)?;
        Ok(StepOutcome { chosen, objective: y_obj, constraint: y_con, lambda_at_selection: 0.0 })
    }

    /// Constrained-EI day: maximize `EI(objective) * P(constraint <= threshold)`
    /// where EI is taken against the best feasible observed objective; before
    /// any feasible observation exists the EI factor is dropped and the step
    /// searches for feasibility alone.
    pub fn cei_step<E: std::error::Error>(
        &mut self,
        context: &[f64],
        observe: impl FnOnce(usize) -> Result<(f64, f64), E>,
    ) -> Result<StepOutcome, StepError<E>> {
        let (obj, con) = self.grid_posteriors(context)?;
        let incumbent = self
            .gp_obj
            .outputs()
            .iter()
            .zip(self.gp_con.outputs())
            .filter(|(_, c)| **c <= self.threshold)
            .map(|(o, _)| *o)
            .fold(None, |best: Option<f64>, o| Some(best.map_or(o, |b| b.min(o))));
        let scores = (0..self.grid.len()).map(|i| {
            let feas = feasibility_probability(&con[i], self.threshold);
            let ei = match incumbent {
                Some(best) => expected_improvement(best, &obj[i]),
                None => 1.0,
            };
            ei * feas
        });
        let chosen = argmax_first(scores);
        let (y_obj, y_con) = observe(chosen).map_err(StepError::Observe)?;
        self.ingest(context, chosen, y_obj, y_con)?;
        Ok(StepOutcome { chosen, objective: y_obj, constraint: y_con, lambda_at_selection: 0.0 })
    }

    /// Feeds one pre-recorded evaluation of grid point `idx` into both
    /// surrogates without running a selection or touching the dual variable.
    /// Used to prime the models with existing operational data.
    pub fn seed_observation(
        &mut self,
        context: &[f64],
        idx: usize,
        y_obj: f64,
        y_con: f64,
    ) -> Result<(), OptimizerError> {
        if idx >= self.grid.len() {
            return Err(OptimizerError::InvalidParams(format!(
                "grid index {idx} out of range for {} candidates",
                self.grid.len()
            )));
        }
        self.ingest(context, idx, y_obj, y_con)
    }

    fn ingest(&mut self, context: &[f64], chosen: usize, y_obj: f64, y_con: f64) -> Result<(), OptimizerError> {
        let mut x = Vec::with_capacity(self.gp_obj.input_dim());
        x.extend_from_slice(&self.grid[chosen]);
        x.extend_from_slice(context);
        self.gp_obj.add_observation(&x, y_obj)?;
        self.gp_con.add_observation(&x, y_con)?;
        Ok(())
    }
}

/// Evaluates fixed parameters for one day; no learning state.
pub fn fixed_step<E: std::error::Error>(
    params: &ControllerParams,
    context: &Context,
    observe: impl FnOnce(&ControllerParams, &Context) -> Result<(f64, f64), E>,
) -> Result<(f64, f64), E> {
    observe(params, context)
}

/// Expected improvement of a minimization objective below `best`.
pub fn expected_improvement(best: f64, p: &Posterior) -> f64 {
    let sigma = p.variance.sqrt();
    let gap = best - p.mean;
    if sigma <= 0.0 {
        return gap.max(0.0);
    }
    let z = gap / sigma;
    gap * normal_cdf(z) + sigma * normal_pdf(z)
}

/// Posterior probability that the constraint value is at most `threshold`.
pub fn feasibility_probability(p: &Posterior, threshold: f64) -> f64 {
    let sigma = p.variance.sqrt();
    if sigma <= 0.0 {
        return if p.mean <= threshold { 1.0 } else { 0.0 };
    }
    normal_cdf((threshold - p.mean) / sigma)
}

fn normal_cdf(z: f64) -> f64 {
    0.5 * (1.0 + libm::erf(z / std::f64::consts::SQRT_2))
}

fn normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

fn argmin_first(values: impl Iterator<Item = f64>) -> usize {
    let mut best_idx = 0;
    let mut best = f64::INFINITY;
    for (i, v) in values.enumerate() {
        if v < best {
            best = v;
            best_idx = i;
        }
    }
    best_idx
}

fn argmax_first(values: impl Iterator<Item = f64>) -> usize {
    let mut best_idx = 0;
    let mut best = f64::NEG_INFINITY;
    for (i, v) in values.enumerate() {
        if v > best {
            best = v;
            best_idx = i;
        }
    }
    best_idx
}

/// Which selection strategy an experiment runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Pdcbo,
    Safeopt,
    Cei,
    Fixed,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::Pdcbo, Algorithm::Safeopt, Algorithm::Cei, Algorithm::Fixed];
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Algorithm::Pdcbo => "pdcbo",
            Algorithm::Safeopt => "safeopt",
            Algorithm::Cei => "cei",
            Algorithm::Fixed => "fixed",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pdcbo" => Ok(Algorithm::Pdcbo),
            "safeopt" => Ok(Algorithm::Safeopt),
            "cei" => Ok(Algorithm::Cei),
            "fixed" => Ok(Algorithm::Fixed),
            other => Err(format!("unknown algorithm '{other}', expected one of: pdcbo, safeopt, cei, fixed")),
        }
    }
}

//! Multi-day experiment orchestration: the daily tuning loop, both problem
//! formulations, time-varying threshold schedules, and running-average
//! bookkeeping.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::building::{
    simulate_day, BuildingError, ComfortProfile, DayOutcome, MeasurementNoise, RoomModel,
};
use crate::gp::{GpError, GpModel, PriorMean, SeKernelHyper};
use crate::optimizer::{
    fixed_step, Algorithm, CandidateGrid, Context, ControllerParams, OptimizerError, ParamBounds,
    StepError, Tuner,
};
use crate::weather::{load_weather_csv, synth_weather, WeatherDay, WeatherError};

/// Room temperature assumed at midnight of the very first day, degrees
/// Celsius (the nighttime setpoint).
pub const FIRST_DAY_INIT_TEMP_C: f64 = 22.5;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid experiment configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Weather(#[from] WeatherError),
    #[error("day {day}: {source}")]
    Day {
        day: usize,
        #[source]
        source: DayError,
    },
    #[error("{0} requires at least one record")]
    EmptyRecords(&'static str),
}

#[derive(Debug, Error)]
pub enum DayError {
    #[error(transparent)]
    Simulation(#[from] BuildingError),
    #[error(transparent)]
    Gp(#[from] GpError),
    #[error(transparent)]
    Optimizer(#[from] OptimizerError),
}

impl From<StepError<BuildingError>> for DayError {
    fn from(e: StepError<BuildingError>) -> Self {
        match e {
            StepError::Optimizer(o) => DayError::Optimizer(o),
            StepError::Observe(s) => DayError::Simulation(s),
        }
    }
}

/// Which metric is minimized and which is capped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Formulation {
    /// Minimize energy subject to a daily discomfort cap (threshold in K·h).
    DiscomfortConstrained,
    /// Minimize discomfort subject to a daily energy budget (threshold in kWh).
    EnergyConstrained,
}

impl std::fmt::Display for Formulation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Formulation::DiscomfortConstrained => "discomfort_constrained",
            Formulation::EnergyConstrained => "energy_constrained",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Formulation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "discomfort_constrained" => Ok(Formulation::DiscomfortConstrained),
            "energy_constrained" => Ok(Formulation::EnergyConstrained),
            other => Err(format!(
                "unknown formulation '{other}', expected discomfort_constrained or energy_constrained"
            )),
        }
    }
}

/// One segment of the threshold schedule: `threshold` applies from
/// `start_day` until the next segment begins.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThresholdSegment {
    pub start_day: usize,
    pub threshold: f64,
}

/// Kernel and noise settings for one surrogate metric.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SurrogateSettings {
    pub signal_variance: f64,
    /// Seven lengthscales: log-kp, log-ki, setpoint, start time, ambient
    /// temperature, irradiation, initial temperature.
    pub lengthscales: Vec<f64>,
    /// Observation noise variance; defaults to 1e-2 of the signal variance.
    pub noise_variance: Option<f64>,
    pub prior_mean: PriorMeanSetting,
}

impl SurrogateSettings {
    /// Defaults for the energy surrogate. The wide context lengthscales make
    /// the model learn per-candidate seasonal averages rather than chase
    /// per-day context novelty, which keeps the confidence bounds tight
    /// enough for the dual update to act on.
    pub fn energy_default() -> Self {
        Self {
            signal_variance: 56.7,
            lengthscales: vec![5.9, 3.1, 2.7, 1290.6, 50.0, 1000.0, 20.0],
            noise_variance: Some(1e-5 * 56.7),
            prior_mean: PriorMeanSetting::default(),
        }
    }

    /// Defaults for the discomfort surrogate; context treatment as for energy.
    pub fn discomfort_default() -> Self {
        Self {
            signal_variance: 546.1,
            lengthscales: vec![6.0, 8.8, 5.2, 1188.0, 50.0, 1000.0, 20.0],
            noise_variance: Some(1e-5 * 546.1),
            prior_mean: PriorMeanSetting::default(),
        }
    }

    pub fn noise_variance_value(&self) -> f64 {
        self.noise_variance.unwrap_or(1e-2 * self.signal_variance)
    }

    pub fn build_model(&self) -> Result<GpModel, GpError> {
        let hyper = SeKernelHyper::new(self.signal_variance, self.lengthscales.clone())?;
        GpModel::new(hyper, self.noise_variance_value(), self.prior_mean.to_prior())
    }
}

impl Default for SurrogateSettings {
    fn default() -> Self {
        Self::energy_default()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case", tag = "mode")]
pub enum PriorMeanSetting {
    /// Mean of the first `warmup` observations, zero before any data.
    Empirical { warmup: usize },
    Constant { value: f64 },
}

impl Default for PriorMeanSetting {
    fn default() -> Self {
        PriorMeanSetting::Empirical { warmup: 5 }
    }
}

impl PriorMeanSetting {
    fn to_prior(self) -> PriorMean {
        match self {
            PriorMeanSetting::Empirical { warmup } => PriorMean::Empirical { warmup },
            PriorMeanSetting::Constant { value } => PriorMean::Constant(value),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GpSettings {
    pub energy: SurrogateSettings,
    pub discomfort: SurrogateSettings,
}

impl Default for GpSettings {
    fn default() -> Self {
        Self {
            energy: SurrogateSettings::energy_default(),
            discomfort: SurrogateSettings::discomfort_default(),
        }
    }
}

/// Candidate grid resolution and gain bounds. The setpoint axis is kept the
/// finest since the comfort-energy trade-off is steepest there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridSettings {
    pub kp_levels: usize,
    pub ki_levels: usize,
    pub setpoint_levels: usize,
    pub heat_start_levels: usize,
    pub kp_bounds: (f64, f64),
    pub ki_bounds: (f64, f64),
}

impl Default for GridSettings {
    fn default() -> Self {
        let bounds = ParamBounds::default();
        Self {
            kp_levels: 3,
            ki_levels: 3,
            setpoint_levels: 6,
            heat_start_levels: 4,
            kp_bounds: bounds.kp,
            ki_bounds: bounds.ki,
        }
    }
}

impl GridSettings {
    pub fn param_bounds(&self) -> ParamBounds {
        ParamBounds { kp: self.kp_bounds, ki: self.ki_bounds }
    }

    pub fn build_grid(&self) -> Result<CandidateGrid, OptimizerError> {
        CandidateGrid::cartesian(
            (self.kp_levels, self.ki_levels, self.setpoint_levels, self.heat_start_levels),
            &self.param_bounds(),
        )
    }
}

/// Constants of the tuning loop.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TunerSettings {
    /// Dual ascent step size.
    pub eta: f64,
    /// Constant drift added in the dual update.
    pub epsilon: f64,
    /// Confidence bound weight.
    pub beta_sqrt: f64,
    pub grid: GridSettings,
}

impl Default for TunerSettings {
    fn default() -> Self {
        Self { eta: 1.0, epsilon: 0.0, beta_sqrt: 3.0, grid: GridSettings::default() }
    }
}

/// Where the daily weather contexts come from.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case", tag = "source")]
pub enum WeatherSource {
    /// Generated by [`synth_weather`] from the experiment seed.
    #[default]
    Synthetic,
    /// Loaded from a CSV file with header `day,ambient_c,irradiation_wm2`.
    Csv { path: std::path::PathBuf },
}

/// Full description of one experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub algorithm: Algorithm,
    pub formulation: Formulation,
    pub n_days: usize,
    pub threshold_schedule: Vec<ThresholdSegment>,
    pub seed: u64,
    pub room: RoomModel,
    pub comfort: ComfortProfile,
    pub gp: GpSettings,
    pub tuning: TunerSettings,
    pub weather: WeatherSource,
    /// Parameters used by the `fixed` algorithm.
    pub fixed_params: ControllerParams,
    pub noise: MeasurementNoise,
    /// Commissioning days evaluated before day 0 to prime the surrogates,
    /// mirroring tuning against a building with existing operational data.
    /// Grid points are visited in a seed-shuffled order, simulated on a
    /// separate synthetic weather stream, and fed to both GPs; they produce no
    /// records and leave the dual variable untouched. `None` runs one full
    /// pass over the candidate grid.
    pub warmup_days: Option<usize>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            algorithm: Algorithm::Pdcbo,
            formulation: Formulation::DiscomfortConstrained,
            n_days: 300,
            threshold_schedule: vec![ThresholdSegment { start_day: 0, threshold: 10.0 }],
            seed: 1,
            room: RoomModel::default(),
            comfort: ComfortProfile::default(),
            gp: GpSettings::default(),
            tuning: TunerSettings::default(),
            weather: WeatherSource::default(),
            fixed_params: ControllerParams::new(0.5, 0.1, 23.5, 360.0),
            noise: MeasurementNoise::default(),
            warmup_days: None,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.n_days < 1 {
            return Err(HarnessError::Config("n_days must be at least 1".into()));
        }
        match self.threshold_schedule.first() {
            None => return Err(HarnessError::Config("threshold schedule is empty".into())),
            Some(first) if first.start_day != 0 => {
                return Err(HarnessError::Config("first schedule segment must start at day 0".into()))
            }
            _ => {}
        }
        for pair in self.threshold_schedule.windows(2) {
            if pair[1].start_day <= pair[0].start_day {
                return Err(HarnessError::Config(format!(
                    "schedule start days must be strictly increasing, got {} then {}",
                    pair[0].start_day, pair[1].start_day
                )));
            }
        }
        if self.threshold_schedule.iter().any(|s| !s.threshold.is_finite()) {
            return Err(HarnessError::Config("thresholds must be finite".into()));
        }
        self.room.validate().map_err(|e| HarnessError::Config(e.to_string()))?;
        self.comfort.validate().map_err(|e| HarnessError::Config(e.to_string()))?;
        for (name, s) in [("energy", &self.gp.energy), ("discomfort", &self.gp.discomfort)] {
            s.build_model().map_err(|e| HarnessError::Config(format!("{name} surrogate: {e}")))?;
            if s.lengthscales.len() != 7 {
                return Err(HarnessError::Config(format!(
                    "{name} surrogate needs 7 lengthscales, got {}",
                    s.lengthscales.len()
                )));
            }
        }
        if self.tuning.eta <= 0.0 || self.tuning.epsilon < 0.0 || self.tuning.beta_sqrt < 0.0 {
            return Err(HarnessError::Config(format!(
                "tuning constants out of range: eta = {}, epsilon = {}, beta_sqrt = {}",
                self.tuning.eta, self.tuning.epsilon, self.tuning.beta_sqrt
            )));
        }
        self.tuning.grid.build_grid().map_err(|e| HarnessError::Config(e.to_string()))?;
        self.fixed_params
            .validate(&self.tuning.grid.param_bounds())
            .map_err(|e| HarnessError::Config(format!("fixed_params: {e}")))?;
        if self.noise.energy_std < 0.0 || self.noise.discomfort_std < 0.0 {
            return Err(HarnessError::Config("measurement noise std must be nonnegative".into()));
        }
        Ok(())
    }
}

/// One row of experiment output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DayRecord {
    pub day: usize,
    pub context: Context,
    pub params: ControllerParams,
    /// Tariff-weighted energy, kWh.
    pub energy: f64,
    /// Discomfort, K·h.
    pub discomfort: f64,
    /// Dual variable at selection time (0 for non-PDCBO algorithms).
    pub lambda: f64,
    pub active_threshold: f64,
    /// Mean energy since the current schedule segment began.
    pub running_avg_energy: f64,
    /// Mean discomfort since the current schedule segment began.
    pub running_avg_discomfort: f64,
}

/// Arithmetic mean; errors on an empty slice.
pub fn running_average(values: &[f64]) -> Result<f64, HarnessError> {
    if values.is_empty() {
        return Err(HarnessError::EmptyRecords("running_average"));
    }
    Ok(values.iter().sum::<f64>() / values.len() as f64)
}

/// Threshold of the last schedule segment starting at or before `day`.
pub fn active_threshold(day: usize, schedule: &[ThresholdSegment]) -> f64 {
    schedule
        .iter()
        .rev()
        .find(|s| s.start_day <= day)
        .expect("validated schedule starts at day 0")
        .threshold
}

fn active_segment_index(day: usize, schedule: &[ThresholdSegment]) -> usize {
    schedule
        .iter()
        .rposition(|s| s.start_day <= day)
        .expect("validated schedule starts at day 0")
}

/// Deterministic per-day noise seed derived from the experiment seed.
fn day_seed(seed: u64, day: usize) -> u64 {
    let mut z = seed ^ (day as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Runs the configured experiment against the built-in room simulator.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<DayRecord>, HarnessError> {
    let room = config.room;
    let comfort = config.comfort;
    let noise = config.noise;
    let seed = config.seed;
    run_experiment_with(config, |day, params, ctx| {
        simulate_day(params, ctx, &room, &comfort, &noise, day_seed(seed, day))
    })
}

/// Runs the configured experiment with a caller-supplied day evaluator.
///
/// The evaluator seam exists so tests can substitute analytic functions for
/// the simulator; [`run_experiment`] plugs in [`simulate_day`]. Warm-up
/// evaluations, when configured, reach the evaluator with day indices
/// `n_days..n_days + warmup_days` before day 0 runs.
pub fn run_experiment_with(
    config: &ExperimentConfig,
    mut evaluate: impl FnMut(usize, &ControllerParams, &Context) -> Result<DayOutcome, BuildingError>,
) -> Result<Vec<DayRecord>, HarnessError> {
    config.validate()?;
    let weather: Vec<WeatherDay> = match &config.weather {
        WeatherSource::Synthetic => synth_weather(config.seed, config.n_days)?,
        WeatherSource::Csv { path } => {
            let days = load_weather_csv(path)?;
            if days.len() < config.n_days {
                return Err(HarnessError::Config(format!(
                    "weather file has {} days, experiment needs {}",
                    days.len(),
                    config.n_days
                )));
            }
            days
        }
    };

    let grid = config.tuning.grid.build_grid().map_err(|e| HarnessError::Config(e.to_string()))?;
    let energy_gp = config.gp.energy.build_model().map_err(|e| HarnessError::Config(e.to_string()))?;
    let discomfort_gp =
        config.gp.discomfort.build_model().map_err(|e| HarnessError::Config(e.to_string()))?;
    let (gp_obj, gp_con) = match config.formulation {
        Formulation::DiscomfortConstrained => (energy_gp, discomfort_gp),
        Formulation::EnergyConstrained => (discomfort_gp, energy_gp),
    };
    let mut tuner = Tuner::new(
        gp_obj,
        gp_con,
        grid.feature_rows(),
        config.threshold_schedule[0].threshold,
        config.tuning.eta,
        config.tuning.epsilon,
        config.tuning.beta_sqrt,
    )
    .map_err(|e| HarnessError::Config(e.to_string()))?;

    // Commissioning data comes from comfort-first historical operation:
    // candidates whose daytime setpoint reaches the comfort band. Candidates
    // below the band were never run deliberately and stay unexplored.
    let mut pool: Vec<usize> = (0..grid.len())
        .filter(|&i| grid.points()[i].day_setpoint >= config.comfort.day_lo)
        .collect();
    if pool.is_empty() {
        pool = (0..grid.len()).collect();
    }
    let warmup_days = config.warmup_days.unwrap_or(pool.len());
    if warmup_days > 0 && config.algorithm != Algorithm::Fixed {
        let warmup_weather = synth_weather(day_seed(config.seed, usize::MAX), warmup_days)?;
        pool.shuffle(&mut ChaCha8Rng::seed_from_u64(day_seed(config.seed, usize::MAX - 1)));
        for (i, w) in warmup_weather.iter().enumerate() {
            let day = config.n_days + i;
            let idx = pool[i % pool.len()];
            let params = grid.points()[idx];
            let ctx = Context {
                ambient_temp: w.ambient_mean,
                irradiation: w.irradiation_mean,
                init_temp: FIRST_DAY_INIT_TEMP_C,
            };
            ctx.validate().map_err(|e| HarnessError::Day { day, source: e.into() })?;
            let outcome = evaluate(day, &params, &ctx)
                .map_err(|e| HarnessError::Day { day, source: e.into() })?;
            let (y_obj, y_con) = match config.formulation {
                Formulation::DiscomfortConstrained => (outcome.energy, outcome.discomfort),
                Formulation::EnergyConstrained => (outcome.discomfort, outcome.energy),
            };
            tuner
                .seed_observation(&ctx.gp_features(), idx, y_obj, y_con)
                .map_err(|e| HarnessError::Day { day, source: e.into() })?;
        }
    }

    let mut records = Vec::with_capacity(config.n_days);
    let mut carry_temp = FIRST_DAY_INIT_TEMP_C;
    let mut segment = 0usize;
    let mut seg_energy = 0.0;
    let mut seg_discomfort = 0.0;
    let mut seg_days = 0usize;

    for (day, weather_day) in weather.iter().enumerate().take(config.n_days) {
        let seg_now = active_segment_index(day, &config.threshold_schedule);
        let threshold = config.threshold_schedule[seg_now].threshold;
        if seg_now != segment {
            // preference change: restart the running averages and drop the
            // accumulated dual pressure; the GP history persists
            segment = seg_now;
            seg_energy = 0.0;
            seg_discomfort = 0.0;
            seg_days = 0;
            tuner.reset_lambda();
        }
        tuner.set_threshold(threshold);

        let ctx = Context {
            ambient_temp: weather_day.ambient_mean,
            irradiation: weather_day.irradiation_mean,
            init_temp: carry_temp,
        };
        ctx.validate().map_err(|e| HarnessError::Day { day, source: e.into() })?;

        let mut outcome_slot: Option<DayOutcome> = None;
        let formulation = config.formulation;
        let mut observe_at = |params: &ControllerParams,
                              slot: &mut Option<DayOutcome>|
         -> Result<(f64, f64), BuildingError> {
            let outcome = evaluate(day, params, &ctx)?;
            let pair = match formulation {
                Formulation::DiscomfortConstrained => (outcome.energy, outcome.discomfort),
                Formulation::EnergyConstrained => (outcome.discomfort, outcome.energy),
            };
            *slot = Some(outcome);
            Ok(pair)
        };

        let (params, lambda) = match config.algorithm {
            Algorithm::Pdcbo => {
                let out = tuner
                    .pdcbo_step(&ctx.gp_features(), |i| observe_at(&grid.points()[i], &mut outcome_slot))
                    .map_err(|e| HarnessError::Day { day, source: e.into() })?;
                (grid.points()[out.chosen], out.lambda_at_selection)
            }
            Algorithm::Safeopt => {
                let out = tuner
                    .safeopt_step(&ctx.gp_features(), |i| observe_at(&grid.points()[i], &mut outcome_slot))
                    .map_err(|e| HarnessError::Day { day, source: e.into() })?;
                (grid.points()[out.chosen], 0.0)
            }
            Algorithm::Cei => {
                let out = tuner
                    .cei_step(&ctx.gp_features(), |i| observe_at(&grid.points()[i], &mut outcome_slot))
                    .map_err(|e| HarnessError::Day { day, source: e.into() })?;
                (grid.points()[out.chosen], 0.0)
            }
            Algorithm::Fixed => {
                let params = config.fixed_params;
                fixed_step(&params, &ctx, |p, _| observe_at(p, &mut outcome_slot))
                    .map_err(|e| HarnessError::Day { day, source: DayError::Simulation(e) })?;
                (params, 0.0)
            }
        };

        let outcome = outcome_slot.expect("evaluator ran exactly once");
        seg_energy += outcome.energy;
        seg_discomfort += outcome.discomfort;
        seg_days += 1;
        records.push(DayRecord {
            day,
            context: ctx,
            params,
            energy: outcome.energy,
            discomfort: outcome.discomfort,
            lambda,
            active_threshold: threshold,
            running_avg_energy: seg_energy / seg_days as f64,
            running_avg_discomfort: seg_discomfort / seg_days as f64,
        });
        carry_temp = outcome.end_temp;
    }
    Ok(records)
}

/// Per-segment aggregates of an experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SegmentSummary {
    pub start_day: usize,
    /// Exclusive end day of the segment.
    pub end_day: usize,
    pub threshold: f64,
    pub avg_energy_kwh: f64,
    pub avg_discomfort_kh: f64,
    /// `(constrained average - threshold) / threshold`, in percent.
    pub violation_percent: f64,
}

/// Experiment summary written alongside the per-day records.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub formulation: Formulation,
    pub n_days: usize,
    pub final_avg_energy_kwh: f64,
    pub final_avg_discomfort_kh: f64,
    pub final_threshold: f64,
    /// Violation of the final segment's constraint, in percent.
    pub violation_percent: f64,
    pub segments: Vec<SegmentSummary>,
    /// Present when an energy-budget set had to be rescaled to stay within
    /// reach of the room model.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget_rescale_factor: Option<f64>,
}

/// Aggregates records into final and per-segment averages plus the violation
/// percentage of the constrained metric.
pub fn summarize(records: &[DayRecord], formulation: Formulation) -> Result<Summary, HarnessError> {
    if records.is_empty() {
        return Err(HarnessError::EmptyRecords("summarize"));
    }
    let mut segments = Vec::new();
    let mut start = 0usize;
    for i in 1..=records.len() {
        let boundary = i == records.len() || records[i].active_threshold != records[start].active_threshold;
        if !boundary {
            continue;
        }
        let slice = &records[start..i];
        let avg_energy = running_average(&slice.iter().map(|r| r.energy).collect::<Vec<_>>())?;
        let avg_discomfort = running_average(&slice.iter().map(|r| r.discomfort).collect::<Vec<_>>())?;
        let threshold = records[start].active_threshold;
        let constrained = match formulation {
            Formulation::DiscomfortConstrained => avg_discomfort,
            Formulation::EnergyConstrained => avg_energy,
        };
        segments.push(SegmentSummary {
            start_day: records[start].day,
            end_day: records[i - 1].day + 1,
            threshold,
            avg_energy_kwh: avg_energy,
            avg_discomfort_kh: avg_discomfort,
            violation_percent: (constrained - threshold) / threshold * 100.0,
        });
        start = i;
    }
    let last = segments.last().expect("at least one segment");
    Ok(Summary {
        formulation,
        n_days: records.len(),
        final_avg_energy_kwh: last.avg_energy_kwh,
        final_avg_discomfort_kh: last.avg_discomfort_kh,
        final_threshold: last.threshold,
        violation_percent: last.violation_percent,
        segments,
        budget_rescale_factor: None,
    })
}

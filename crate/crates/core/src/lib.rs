//! Constrained contextual Bayesian optimization for room-heating PI
//! controllers.
//!
//! Day by day, a tuner picks controller parameters (PI gains, daytime
//! setpoint, pre-heating start time) from a candidate grid, runs a closed-loop
//! room simulation, and updates Gaussian process models of the daily energy
//! consumption and thermal discomfort. The primal-dual tuner (PDCBO) keeps one
//! metric below a threshold on average while minimizing the other; SafeOpt-
//! style and constrained-EI baselines share the same surrogates and grid.
//!
//! Module map:
//! - [`gp`]: exact GP regression with a squared-exponential kernel
//! - [`optimizer`]: PDCBO and the comparison strategies over a candidate grid
//! - [`building`]: PI controller plus RC room model, one simulated day
//! - [`weather`]: CSV ingestion and synthetic weather generation
//! - [`harness`]: multi-day experiments, threshold schedules, summaries

pub mod building;
pub mod gp;
pub mod harness;
pub mod optimizer;
pub mod weather;

pub use building::{
    simulate_day, BuildingError, ComfortProfile, DayOutcome, MeasurementNoise, PiState, RoomModel,
};
pub use gp::{fit_hyperparameters, GpError, GpModel, HyperBounds, Posterior, PriorMean, SeKernelHyper};
pub use harness::{
    run_experiment, run_experiment_with, summarize, DayRecord, ExperimentConfig, Formulation,
    HarnessError, Summary, ThresholdSegment, WeatherSource,
};
pub use optimizer::{
    dual_update, Algorithm, CandidateGrid, Context, ControllerParams, OptimizerError, ParamBounds,
    StepError, StepOutcome, Tuner,
};
pub use weather::{load_weather_csv, synth_weather, write_weather_csv, WeatherDay, WeatherError};

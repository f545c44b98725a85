//! Closed-loop day simulator: a truncated PI heating controller driving a
//! single-zone RC thermal model, producing the daily tariff-weighted energy
//! and the daily thermal discomfort.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::optimizer::{Context, ControllerParams};

/// Fixed nighttime setpoint, degrees Celsius.
pub const NIGHT_SETPOINT_C: f64 = 22.5;
/// Minute of day at which the controller switches back to the night setpoint
/// (6 PM).
pub const DAY_END_MIN: f64 = 1080.0;
/// Anti-windup bound on the PI integral term, degree-Celsius-hours.
pub const INTEGRAL_CLAMP: f64 = 10.0;

#[derive(Debug, Error)]
pub enum BuildingError {
    #[error("invalid room model: {0}")]
    InvalidModel(String),
    #[error("invalid comfort profile: {0}")]
    InvalidProfile(String),
    #[error("room temperature became non-finite at step {step}")]
    Diverged { step: usize },
}

/// Comfort band schedule: a looser band at night, a tighter one during the
/// occupied daytime window `[day_begin, day_end)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ComfortProfile {
    pub night_lo: f64,
    pub night_hi: f64,
    pub day_lo: f64,
    pub day_hi: f64,
    /// Start of the daytime band, minutes after midnight.
    pub day_begin: f64,
    /// End of the daytime band, minutes after midnight.
    pub day_end: f64,
}

impl Default for ComfortProfile {
    fn default() -> Self {
        Self {
            night_lo: 21.0,
            night_hi: 24.0,
            day_lo: 23.0,
            day_hi: 24.0,
            day_begin: 660.0,
            day_end: 1080.0,
        }
    }
}

impl ComfortProfile {
    pub fn validate(&self) -> Result<(), BuildingError> {
        if self.night_lo >= self.night_hi || self.day_lo >= self.day_hi {
            return Err(BuildingError::InvalidProfile(
                "comfort band lower bounds must be below upper bounds".into(),
            ));
        }
        if !(0.0 <= self.day_begin && self.day_begin < self.day_end && self.day_end <= 1440.0) {
            return Err(BuildingError::InvalidProfile(format!(
                "daytime window [{}, {}) must satisfy 0 <= begin < end <= 1440",
                self.day_begin, self.day_end
            )));
        }
        Ok(())
    }

    fn is_daytime(&self, minute: f64) -> bool {
        minute >= self.day_begin && minute < self.day_end
    }

    /// Comfort band `(lo, hi)` active at the given minute of day.
    pub fn band_at(&self, minute: f64) -> (f64, f64) {
        if self.is_daytime(minute) {
            (self.day_lo, self.day_hi)
        } else {
            (self.night_lo, self.night_hi)
        }
    }
}

/// Single-zone RC room model with solar gain, stepped by explicit Euler.
///
/// Besides the envelope path to ambient, an optional party-wall path couples
/// the room to the rest of the building at a fixed interior temperature. It
/// bounds how far the room can free-float in either direction, the way a unit
/// embedded in a conditioned building behaves; with `party_wall_conductance`
/// at zero the model reduces to the plain 1R1C form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RoomModel {
    /// Thermal capacitance, kWh per degree Celsius.
    pub thermal_capacitance: f64,
    /// Envelope conductance to ambient, kW per degree Celsius.
    pub envelope_conductance: f64,
    /// Conductance to the interior of the building, kW per degree Celsius.
    pub party_wall_conductance: f64,
    /// Temperature of the adjacent interior, degrees Celsius.
    pub party_wall_temp: f64,
    /// Solar gain, kW per W/m^2 of irradiation.
    pub solar_gain_coeff: f64,
    /// Maximum heating power, kW.
    pub max_heat_power: f64,
    /// Simulation timestep, minutes; must divide 1440.
    pub timestep_min: u32,
}

impl Default for RoomModel {
    fn default() -> Self {
        Self {
            thermal_capacitance: 16.0,
            envelope_conductance: 0.02,
            party_wall_conductance: 0.05,
            party_wall_temp: 21.0,
            solar_gain_coeff: 0.002,
            max_heat_power: 2.0,
            timestep_min: 15,
        }
    }
}

impl RoomModel {
    pub fn validate(&self) -> Result<(), BuildingError> {
        let coeffs = [
            ("thermal_capacitance", self.thermal_capacitance),
            ("envelope_conductance", self.envelope_conductance),
            ("solar_gain_coeff", self.solar_gain_coeff),
            ("max_heat_power", self.max_heat_power),
        ];
        for (name, v) in coeffs {
            if !v.is_finite() || v <= 0.0 {
                return Err(BuildingError::InvalidModel(format!("{name} = {v} must be positive")));
            }
        }
        if !self.party_wall_conductance.is_finite() || self.party_wall_conductance < 0.0 {
            return Err(BuildingError::InvalidModel(format!(
                "party_wall_conductance = {} must be nonnegative",
                self.party_wall_conductance
            )));
        }
        if !self.party_wall_temp.is_finite() {
            return Err(BuildingError::InvalidModel("party_wall_temp must be finite".into()));
        }
        if self.timestep_min == 0 || 1440 % self.timestep_min != 0 {
            return Err(BuildingError::InvalidModel(format!(
                "timestep {} min must divide 1440",
                self.timestep_min
            )));
        }
        // explicit-Euler stability of the free response
        let total_conductance = self.envelope_conductance + self.party_wall_conductance;
        let ratio = self.dt_hours() * total_conductance / self.thermal_capacitance;
        if ratio >= 1.0 {
            return Err(BuildingError::InvalidModel(format!(
                "dt*G/C = {ratio} >= 1, free response would oscillate"
            )));
        }
        Ok(())
    }

    pub fn dt_hours(&self) -> f64 {
        self.timestep_min as f64 / 60.0
    }

    pub fn steps_per_day(&self) -> usize {
        (1440 / self.timestep_min) as usize
    }
}

/// PI controller state carried across timesteps within a day.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PiState {
    /// Accumulated error, degree-Celsius-hours, clamped to [`INTEGRAL_CLAMP`].
    pub integral: f64,
}

/// Setpoint active at the given minute: the daytime setpoint inside
/// `[heat_start, DAY_END_MIN)`, the fixed night setpoint otherwise.
pub fn setpoint_at(minute: f64, params: &ControllerParams) -> f64 {
    if minute >= params.heat_start && minute < DAY_END_MIN {
        params.day_setpoint
    } else {
        NIGHT_SETPOINT_C
    }
}

/// Advances the PI integral and returns the control input truncated to [0, 1].
pub fn pi_control(error: f64, pi: &mut PiState, kp: f64, ki: f64, dt_hours: f64) -> f64 {
    pi.integral = (pi.integral + error * dt_hours).clamp(-INTEGRAL_CLAMP, INTEGRAL_CLAMP);
    (kp * error + ki * pi.integral).clamp(0.0, 1.0)
}

/// One explicit-Euler step of the room temperature under normalized heating
/// input `u`, ambient temperature, and solar irradiation.
pub fn thermal_step(temp: f64, u: f64, ambient: f64, irradiation: f64, model: &RoomModel) -> f64 {
    let net_power = u * model.max_heat_power
        - model.envelope_conductance * (temp - ambient)
        - model.party_wall_conductance * (temp - model.party_wall_temp)
        + model.solar_gain_coeff * irradiation;
    temp + model.dt_hours() / model.thermal_capacitance * net_power
}

/// Instantaneous comfort deviation in Kelvin: zero inside the active band,
/// distance to the nearer bound outside it.
pub fn discomfort_instant(temp: f64, minute: f64, profile: &ComfortProfile) -> f64 {
    let (lo, hi) = profile.band_at(minute);
    if temp > hi {
        temp - hi
    } else if temp < lo {
        lo - temp
    } else {
        0.0
    }
}

/// Energy price weight: daytime consumption counts double.
pub fn tariff_weight(minute: f64, profile: &ComfortProfile) -> f64 {
    if profile.is_daytime(minute) {
        2.0
    } else {
        1.0
    }
}

/// Gaussian measurement noise added to the two daily scalars; zero by default.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MeasurementNoise {
    pub energy_std: f64,
    pub discomfort_std: f64,
}

/// Everything measured over one simulated day.
#[derive(Debug, Clone, PartialEq)]
pub struct DayOutcome {
    /// Tariff-weighted energy consumption, kWh.
    pub energy: f64,
    /// Cumulative comfort deviation, Kelvin-hours.
    pub discomfort: f64,
    /// Room temperature at the start of each timestep, degrees Celsius.
    pub temp_trace: Vec<f64>,
    /// Heating power over each timestep, kW.
    pub power_trace: Vec<f64>,
    /// Temperature at midnight after the last step; the next day's initial
    /// temperature.
    pub end_temp: f64,
}

/// Simulates one day of closed-loop operation.
///
/// The room starts at the context's initial temperature with a zero PI
/// integral. Each step reads the setpoint, advances the controller, integrates
/// the tariff-weighted energy and the comfort deviation, and steps the thermal
/// model. Measurement noise, when enabled, perturbs only the two returned
/// scalars (never the traces), deterministically in the seed.
pub fn simulate_day(
    params: &ControllerParams,
    context: &Context,
    model: &RoomModel,
    profile: &ComfortProfile,
    noise: &MeasurementNoise,
    noise_seed: u64,
) -> Result<DayOutcome, BuildingError> {
    let steps = model.steps_per_day();
    let dt = model.dt_hours();
    let mut temp = context.init_temp;
    let mut pi = PiState::default();
    let mut energy = 0.0;
    let mut discomfort = 0.0;
    let mut temp_trace = Vec::with_capacity(steps);
    let mut power_trace = Vec::with_capacity(steps);

    for step in 0..steps {
        let minute = (step as u32 * model.timestep_min) as f64;
        let setpoint = setpoint_at(minute, params);
        let u = pi_control(setpoint - temp, &mut pi, params.kp, params.ki, dt);
        let power = u * model.max_heat_power;
        energy += tariff_weight(minute, profile) * power * dt;
        discomfort += discomfort_instant(temp, minute, profile) * dt;
        temp_trace.push(temp);
        power_trace.push(power);
        temp = thermal_step(temp, u, context.ambient_temp, context.irradiation, model);
        if !temp.is_finite() {
            return Err(BuildingError::Diverged { step });
        }
    }

    if noise.energy_std > 0.0 || noise.discomfort_std > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(noise_seed);
        if noise.energy_std > 0.0 {
            let dist = Normal::new(0.0, noise.energy_std).expect("validated std");
            energy += dist.sample(&mut rng);
        }
        if noise.discomfort_std > 0.0 {
            let dist = Normal::new(0.0, noise.discomfort_std).expect("validated std");
            discomfort += dist.sample(&mut rng);
        }
        energy = energy.max(0.0);
        discomfort = discomfort.max(0.0);
    }

    Ok(DayOutcome { energy, discomfort, temp_trace, power_trace, end_temp: temp })
}

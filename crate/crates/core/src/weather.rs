//! Daily weather contexts: CSV ingestion and a deterministic synthetic
//! heating-season generator.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use thiserror::Error;

/// Expected header of a weather CSV file.
pub const WEATHER_CSV_HEADER: &str = "day,ambient_c,irradiation_wm2";

#[derive(Debug, Error)]
pub enum WeatherError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("row {row}: expected columns `{WEATHER_CSV_HEADER}`, {detail}")]
    Schema { row: usize, detail: String },
    #[error("row {row}, column {column}: {detail}")]
    Parse { row: usize, column: &'static str, detail: String },
    #[error("row {row}: {detail}")]
    Invalid { row: usize, detail: String },
    #[error("weather file contains no data rows")]
    Empty,
    #[error("invalid weather configuration: {0}")]
    Config(String),
}

/// One day of forecast weather.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeatherDay {
    pub day_index: usize,
    /// Daily mean ambient temperature, degrees Celsius.
    pub ambient_mean: f64,
    /// Daily mean solar irradiation, W/m^2.
    pub irradiation_mean: f64,
}

/// Parses weather CSV text. Rows are returned in file order with `day_index`
/// renumbered to `0..n-1`.
pub fn parse_weather_csv(text: &str) -> Result<Vec<WeatherDay>, WeatherError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(WeatherError::Empty)?;
    if header.trim() != WEATHER_CSV_HEADER {
        return Err(WeatherError::Schema {
            row: 0,
            detail: format!("got header `{}`", header.trim()),
        });
    }
    let mut days = Vec::new();
    for (row, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(WeatherError::Schema {
                row,
                detail: format!("got {} columns", fields.len()),
            });
        }
        fields[0].trim().parse::<i64>().map_err(|e| WeatherError::Parse {
            row,
            column: "day",
            detail: e.to_string(),
        })?;
        let ambient: f64 = fields[1].trim().parse().map_err(|e: std::num::ParseFloatError| {
            WeatherError::Parse { row, column: "ambient_c", detail: e.to_string() }
        })?;
        let irradiation: f64 = fields[2].trim().parse().map_err(|e: std::num::ParseFloatError| {
            WeatherError::Parse { row, column: "irradiation_wm2", detail: e.to_string() }
        })?;
        if !ambient.is_finite() || !irradiation.is_finite() {
            return Err(WeatherError::Invalid { row, detail: "non-finite value".into() });
        }
        if irradiation < 0.0 {
            return Err(WeatherError::Invalid {
                row,
                detail: format!("irradiation {irradiation} must be nonnegative"),
            });
        }
        days.push(WeatherDay { day_index: days.len(), ambient_mean: ambient, irradiation_mean: irradiation });
    }
    if days.is_empty() {
        return Err(WeatherError::Empty);
    }
    Ok(days)
}

pub fn load_weather_csv(path: &Path) -> Result<Vec<WeatherDay>, WeatherError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| WeatherError::Io { path: path.to_path_buf(), source })?;
    parse_weather_csv(&text)
}

/// Serializes days back to the CSV schema accepted by the loader.
pub fn weather_csv_string(days: &[WeatherDay]) -> String {
    let mut out = String::with_capacity(days.len() * 24 + WEATHER_CSV_HEADER.len() + 1);
    out.push_str(WEATHER_CSV_HEADER);
    out.push('\n');
    for (i, d) in days.iter().enumerate() {
        let _ = writeln!(out, "{},{},{}", i, d.ambient_mean, d.irradiation_mean);
    }
    out
}

pub fn write_weather_csv(path: &Path, days: &[WeatherDay]) -> Result<(), WeatherError> {
    std::fs::write(path, weather_csv_string(days))
        .map_err(|source| WeatherError::Io { path: path.to_path_buf(), source })
}

/// Deterministic synthetic heating season.
///
/// Ambient follows a seasonal sine with mean 5 degrees C and amplitude 7 over
/// a 300-day period (mild at the season edges, coldest mid-season) plus daily
/// Gaussian noise with sigma 3, clipped to [-15, 20]. Irradiation is
/// nonnegative and positively correlated with the ambient temperature. The
/// sequence is a pure function of `(seed, n_days)`.
pub fn synth_weather(seed: u64, n_days: usize) -> Result<Vec<WeatherDay>, WeatherError> {
    if n_days < 1 {
        return Err(WeatherError::Config("n_days must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ambient_noise = Normal::new(0.0, 3.0).expect("valid std");
    let irradiation_noise = Normal::new(0.0, 20.0).expect("valid std");
    let mut days = Vec::with_capacity(n_days);
    for day in 0..n_days {
        let phase = 2.0 * std::f64::consts::PI * day as f64 / 300.0;
        let base = 5.0 + 7.0 * phase.cos();
        let ambient = (base + ambient_noise.sample(&mut rng)).clamp(-15.0, 20.0);
        let irradiation = (80.0 + 8.0 * (ambient - 5.0) + irradiation_noise.sample(&mut rng)).max(0.0);
        days.push(WeatherDay { day_index: day, ambient_mean: ambient, irradiation_mean: irradiation });
    }
    Ok(days)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_well_formed_file() {
        let text = "day,ambient_c,irradiation_wm2\n0,4.5,120\n1,-2.25,60.5\n";
        let days = parse_weather_csv(text).unwrap();
        assert_eq!(days.len(), 2);
        assert_eq!(days[0], WeatherDay { day_index: 0, ambient_mean: 4.5, irradiation_mean: 120.0 });
        assert_eq!(days[1], WeatherDay { day_index: 1, ambient_mean: -2.25, irradiation_mean: 60.5 });
    }

    #[test]
    fn renumbers_day_indices() {
        let text = "day,ambient_c,irradiation_wm2\n17,1,10\n99,2,20\n";
        let days = parse_weather_csv(text).unwrap();
        assert_eq!(days[0].day_index, 0);
        assert_eq!(days[1].day_index, 1);
    }

    #[test]
    fn rejects_schema_and_value_errors() {
        assert!(matches!(
            parse_weather_csv("day,ambient_c\n0,1\n"),
            Err(WeatherError::Schema { row: 0, .. })
        ));
        assert!(matches!(
            parse_weather_csv("day,ambient_c,irradiation_wm2\n0,1,2,3\n"),
            Err(WeatherError::Schema { row: 1, .. })
        ));
        assert!(matches!(
            parse_weather_csv("day,ambient_c,irradiation_wm2\n0,abc,2\n"),
            Err(WeatherError::Parse { row: 1, column: "ambient_c", .. })
        ));
        assert!(matches!(
            parse_weather_csv("day,ambient_c,irradiation_wm2\n0,1,-5\n"),
            Err(WeatherError::Invalid { row: 1, .. })
        ));
        assert!(matches!(parse_weather_csv("day,ambient_c,irradiation_wm2\n"), Err(WeatherError::Empty)));
    }

    #[test]
    fn csv_round_trip_preserves_records() {
        let days = synth_weather(3, 25).unwrap();
        let text = weather_csv_string(&days);
        let reloaded = parse_weather_csv(&text).unwrap();
        assert_eq!(days, reloaded);
    }

    #[test]
    fn generator_is_deterministic() {
        let a = synth_weather(7, 300).unwrap();
        let b = synth_weather(7, 300).unwrap();
        assert_eq!(a, b);
        let c = synth_weather(8, 300).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn generator_respects_clipping() {
        for day in synth_weather(11, 600).unwrap() {
            assert!(day.irradiation_mean >= 0.0);
            assert!((-15.0..=20.0).contains(&day.ambient_mean));
        }
    }

    #[test]
    fn generator_rejects_zero_days() {
        assert!(matches!(synth_weather(1, 0), Err(WeatherError::Config(_))));
    }

    #[test]
    fn long_run_ambient_mean_is_near_five() {
        let days = synth_weather(42, 3000).unwrap();
        let mean = days.iter().map(|d| d.ambient_mean).sum::<f64>() / days.len() as f64;
        assert!((mean - 5.0).abs() < 0.5, "mean ambient {mean}");
    }

    #[test]
    fn irradiation_correlates_with_ambient() {
        let days = synth_weather(5, 2000).unwrap();
        let n = days.len() as f64;
        let ma = days.iter().map(|d| d.ambient_mean).sum::<f64>() / n;
        let mi = days.iter().map(|d| d.irradiation_mean).sum::<f64>() / n;
        let cov: f64 = days.iter().map(|d| (d.ambient_mean - ma) * (d.irradiation_mean - mi)).sum::<f64>() / n;
        assert!(cov > 0.0, "covariance {cov}");
    }
}

//! File outputs: the per-day records CSV and the run summary JSON.

use std::path::Path;

use pdcbo_tune::{DayRecord, Summary};

use crate::CliError;

/// Frozen column order of `records.csv`.
pub const RECORDS_CSV_HEADER: &str = "day,ambient_c,irradiation_wm2,init_temp_c,kp,ki,day_setpoint_c,heat_start_min,energy_kwh,discomfort_kh,lambda,threshold,avg_energy_kwh,avg_discomfort_kh";

/// Renders records with the shortest round-trip decimal representation per
/// cell, so identical runs produce byte-identical files.
pub fn records_csv_string(records: &[DayRecord]) -> String {
    let mut out = String::with_capacity(records.len() * 96 + RECORDS_CSV_HEADER.len() + 1);
    out.push_str(RECORDS_CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.day,
            r.context.ambient_temp,
            r.context.irradiation,
            r.context.init_temp,
            r.params.kp,
            r.params.ki,
            r.params.day_setpoint,
            r.params.heat_start,
            r.energy,
            r.discomfort,
            r.lambda,
            r.active_threshold,
            r.running_avg_energy,
            r.running_avg_discomfort,
        ));
    }
    out
}

pub fn write_records_csv(path: &Path, records: &[DayRecord]) -> Result<(), CliError> {
    std::fs::write(path, records_csv_string(records))
        .map_err(|e| CliError::runtime(format!("cannot write {}: {e}", path.display())))
}

pub fn write_summary_json(path: &Path, summary: &Summary) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(summary)
        .map_err(|e| CliError::runtime(format!("cannot serialize summary: {e}")))?;
    text.push('\n');
    std::fs::write(path, text)
        .map_err(|e| CliError::runtime(format!("cannot write {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use pdcbo_tune::{Context, ControllerParams};

    #[test]
    fn rows_round_trip_shortest_decimals() {
        let record = DayRecord {
            day: 3,
            context: Context { ambient_temp: -2.25, irradiation: 120.5, init_temp: 22.0 },
            params: ControllerParams::new(0.5, 0.1, 23.5, 360.0),
            energy: 10.125,
            discomfort: 0.1,
            lambda: 0.0,
            active_threshold: 10.0,
            running_avg_energy: 10.125,
            running_avg_discomfort: 0.1,
        };
        let text = records_csv_string(&[record]);
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), RECORDS_CSV_HEADER);
        assert_eq!(
            lines.next().unwrap(),
            "3,-2.25,120.5,22,0.5,0.1,23.5,360,10.125,0.1,0,10,10.125,0.1"
        );
    }
}

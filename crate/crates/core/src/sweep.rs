//! Driving-time sweeps of the refrigerator and their CSV/JSON encodings.

use std::io::{self, Write};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qsl;
use crate::thermo::{self, CycleConfig, CyclePerformance, Mode, Numerics, StrokeDynamics};

/// Sweep columns, in output order.
pub const SWEEP_COLUMNS: [&str; 31] = [
    "tau",
    "qstar1",
    "qstar3",
    "w1_na",
    "w3_na",
    "q2_na",
    "q4_na",
    "cost1",
    "cost3",
    "cop_na",
    "cop_sta",
    "cop_ad",
    "cop_qsl",
    "j_na",
    "j_sta",
    "j_qsl",
    "chi_na",
    "chi_sta",
    "chi_qsl",
    "dstot_na",
    "dstot_sta",
    "dstot_ad",
    "dsrate_na",
    "dsrate_sta",
    "dsrate_ad",
    "bures1",
    "bures3",
    "tau_qsl1",
    "tau_qsl3",
    "min_omega_lcd_sq",
    "cooling_flag",
];

/// Pareto-front columns, in output order.
pub const PARETO_COLUMNS: [&str; 8] = [
    "tau",
    "inv_cop_na",
    "inv_j_na",
    "inv_cop_sta",
    "inv_j_sta",
    "inv_cop_ad",
    "inv_j_ad",
    "cooling_flag",
];

/// One driving time of a sweep. Metrics a mode cannot define (it does not
/// cool, or the speed-limit bound is undefined) are `None`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub tau: f64,
    pub qstar1: f64,
    pub qstar3: f64,
    pub w1_na: f64,
    pub w3_na: f64,
    pub q2_na: f64,
    pub q4_na: f64,
    pub cost1: f64,
    pub cost3: f64,
    pub cop_na: Option<f64>,
    pub cop_sta: Option<f64>,
    pub cop_ad: Option<f64>,
    pub cop_qsl: Option<f64>,
    pub j_na: Option<f64>,
    pub j_sta: Option<f64>,
    pub j_qsl: Option<f64>,
    pub chi_na: Option<f64>,
    pub chi_sta: Option<f64>,
    pub chi_qsl: Option<f64>,
    pub dstot_na: f64,
    pub dstot_sta: f64,
    pub dstot_ad: f64,
    pub dsrate_na: f64,
    pub dsrate_sta: f64,
    pub dsrate_ad: f64,
    pub bures1: f64,
    pub bures3: f64,
    pub tau_qsl1: Option<f64>,
    pub tau_qsl3: Option<f64>,
    /// Lowest LCD trap frequency squared over both strokes.
    pub min_omega_lcd_sq: f64,
    /// The nonadiabatic cycle refrigerates at this driving time.
    pub cooling_flag: bool,
}

/// Inverse COP and inverse cooling power per mode, the axes of the
/// efficiency/power trade-off plot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParetoRow {
    pub tau: f64,
    pub inv_cop_na: Option<f64>,
    pub inv_j_na: Option<f64>,
    pub inv_cop_sta: Option<f64>,
    pub inv_j_sta: Option<f64>,
    pub inv_cop_ad: Option<f64>,
    pub inv_j_ad: Option<f64>,
    pub cooling_flag: bool,
}

/// Evaluates every mode, the speed-limit bounds and the trap scan at one
/// driving time.
pub fn sweep_point(config: &CycleConfig, numerics: &Numerics) -> Result<SweepRow> {
    config.validate()?;
    let strokes = StrokeDynamics::compute(config, numerics)?;
    let na = thermo::performance(config, Mode::Nonadiabatic, &strokes)?;
    let sta = thermo::performance(config, Mode::Shortcut, &strokes)?;
    let ad = thermo::performance(config, Mode::Adiabatic, &strokes)?;
    let (bures1, bures3) = qsl::stroke_bures_angles(config)?;
    let bounds = match qsl::performance_bounds_with(config, strokes.cost1, strokes.cost3) {
        Ok(b) => Some(b),
        Err(Error::NotCooling { .. } | Error::DegenerateBound(_) | Error::UndefinedBound(_)) => None,
        Err(e) => return Err(e),
    };
    let grid = numerics.lcd_grid_points;
    let min1 = config.compression()?.min_lcd_frequency_sq(grid).0;
    let min3 = config.expansion()?.min_lcd_frequency_sq(grid).0;
    let rate = |p: &CyclePerformance| p.entropy_rate;
    Ok(SweepRow {
        tau: config.tau,
        qstar1: strokes.qstar1,
        qstar3: strokes.qstar3,
        w1_na: na.stroke1.work,
        w3_na: na.stroke3.work,
        q2_na: na.q2,
        q4_na: na.q4,
        cost1: strokes.cost1,
        cost3: strokes.cost3,
        cop_na: na.cop,
        cop_sta: sta.cop,
        cop_ad: ad.cop,
        cop_qsl: bounds.map(|b| b.cop_bound),
        j_na: na.cooling_power,
        j_sta: sta.cooling_power,
        j_qsl: bounds.map(|b| b.cooling_bound),
        chi_na: na.chi,
        chi_sta: sta.chi,
        chi_qsl: bounds.map(|b| b.chi_bound),
        dstot_na: na.entropy_production,
        dstot_sta: sta.entropy_production,
        dstot_ad: ad.entropy_production,
        dsrate_na: rate(&na),
        dsrate_sta: rate(&sta),
        dsrate_ad: rate(&ad),
        bures1,
        bures3,
        tau_qsl1: bounds.map(|b| b.tau_qsl_1),
        tau_qsl3: bounds.map(|b| b.tau_qsl_3),
        min_omega_lcd_sq: min1.min(min3),
        cooling_flag: na.cooling,
    })
}

/// Evaluates `taus` on a pool of `workers` threads. Rows come back in the
/// order of `taus` whatever the scheduling.
pub fn run_sweep(base: &CycleConfig, taus: &[f64], numerics: &Numerics, workers: usize) -> Result<Vec<SweepRow>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter {
            name: "workers",
            reason: e.to_string(),
        })?;
    pool.install(|| {
        taus.par_iter()
            .map(|&tau| sweep_point(&base.with_tau(tau), numerics))
            .collect()
    })
}

fn inverse(x: Option<f64>) -> Option<f64> {
    x.filter(|v| *v > 0.0).map(f64::recip)
}

impl SweepRow {
    /// Projection onto the trade-off axes. The adiabatic cooling power is
    /// not a sweep column, so it is recomputed from `config`.
    pub fn pareto(&self, config: &CycleConfig) -> Result<ParetoRow> {
        let (_, q4_ad) = thermo::heats(&config.with_tau(self.tau), 1.0, 1.0)?;
        let j_ad = self.cop_ad.map(|_| thermo::cooling_power(q4_ad, self.tau));
        Ok(ParetoRow {
            tau: self.tau,
            inv_cop_na: inverse(self.cop_na),
            inv_j_na: inverse(self.j_na),
            inv_cop_sta: inverse(self.cop_sta),
            inv_j_sta: inverse(self.j_sta),
            inv_cop_ad: inverse(self.cop_ad),
            inv_j_ad: inverse(j_ad),
            cooling_flag: self.cooling_flag,
        })
    }

    /// Cells in [`SWEEP_COLUMNS`] order.
    pub fn cells(&self) -> Vec<Option<f64>> {
        vec![
            Some(self.tau),
            Some(self.qstar1),
            Some(self.qstar3),
            Some(self.w1_na),
            Some(self.w3_na),
            Some(self.q2_na),
            Some(self.q4_na),
            Some(self.cost1),
            Some(self.cost3),
            self.cop_na,
            self.cop_sta,
            self.cop_ad,
            self.cop_qsl,
            self.j_na,
            self.j_sta,
            self.j_qsl,
            self.chi_na,
            self.chi_sta,
            self.chi_qsl,
            Some(self.dstot_na),
            Some(self.dstot_sta),
            Some(self.dstot_ad),
            Some(self.dsrate_na),
            Some(self.dsrate_sta),
            Some(self.dsrate_ad),
            Some(self.bures1),
            Some(self.bures3),
            self.tau_qsl1,
            self.tau_qsl3,
            Some(self.min_omega_lcd_sq),
        ]
    }
}

impl ParetoRow {
    /// Cells in [`PARETO_COLUMNS`] order.
    pub fn cells(&self) -> Vec<Option<f64>> {
        vec![
            Some(self.tau),
            self.inv_cop_na,
            self.inv_j_na,
            self.inv_cop_sta,
            self.inv_j_sta,
            self.inv_cop_ad,
            self.inv_j_ad,
        ]
    }
}

/// Seventeen significant digits, enough to round-trip every `f64`.
pub fn format_cell(value: Option<f64>) -> String {
    value.map(|v| format!("{v:.16e}")).unwrap_or_default()
}

fn write_csv_rows<W: Write>(
    out: &mut W,
    columns: &[&str],
    rows: impl Iterator<Item = (Vec<Option<f64>>, bool)>,
) -> io::Result<()> {
    writeln!(out, "{}", columns.join(","))?;
    for (cells, flag) in rows {
        let mut line: Vec<String> = cells.into_iter().map(format_cell).collect();
        line.push(if flag { "1" } else { "0" }.to_string());
        writeln!(out, "{}", line.join(","))?;
    }
    Ok(())
}

/// Header plus one line per row; absent values are empty cells and the
/// cooling flag is written as `1` or `0`.
pub fn write_sweep_csv<W: Write>(out: &mut W, rows: &[SweepRow]) -> io::Result<()> {
    write_csv_rows(out, &SWEEP_COLUMNS, rows.iter().map(|r| (r.cells(), r.cooling_flag)))
}

pub fn write_pareto_csv<W: Write>(out: &mut W, rows: &[ParetoRow]) -> io::Result<()> {
    write_csv_rows(out, &PARETO_COLUMNS, rows.iter().map(|r| (r.cells(), r.cooling_flag)))
}

/// JSON array of row objects; absent values are `null`.
pub fn write_json<W: Write, T: Serialize>(out: &mut W, rows: &[T]) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, rows)?;
    writeln!(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> Numerics {
        Numerics {
            lcd_grid_points: 200,
            ..Numerics::default()
        }
    }

    #[test]
    fn columns_line_up_with_cells() {
        let row = sweep_point(&CycleConfig::reference(10.0), &quick()).unwrap();
        assert_eq!(row.cells().len() + 1, SWEEP_COLUMNS.len());
        let json = serde_json::to_value(row).unwrap();
        let keys: Vec<&str> = json.as_object().unwrap().keys().map(String::as_str).collect();
        let mut expected = SWEEP_COLUMNS.to_vec();
        expected.sort_unstable();
        let mut got = keys.clone();
        got.sort_unstable();
        assert_eq!(got, expected);
        let pareto = row.pareto(&CycleConfig::reference(10.0)).unwrap();
        assert_eq!(pareto.cells().len() + 1, PARETO_COLUMNS.len());
    }

    #[test]
    fn adiabatic_reference_row() {
        let config = CycleConfig::reference(10.0);
        let row = sweep_point(&config, &quick()).unwrap();
        assert!((row.cop_ad.unwrap() - 0.25).abs() < 1e-12);
        assert!(row.cooling_flag);
        assert!(row.min_omega_lcd_sq > 0.0);
        assert_eq!(row.dstot_sta, row.dstot_ad);
        let p = row.pareto(&config).unwrap();
        assert!((p.inv_cop_ad.unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn csv_layout() {
        let rows = run_sweep(&CycleConfig::reference(1.0), &[2.0, 1.0], &quick(), 2).unwrap();
        assert_eq!(rows[0].tau, 2.0);
        let mut buf = Vec::new();
        write_sweep_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(!text.contains('\r'));
        assert_eq!(lines[0].split(',').count(), 31);
        assert!(lines[1].starts_with("2.0000000000000000e0,"));
        assert!(lines[1].ends_with(",1"));
    }

    #[test]
    fn empty_cells_for_missing_metrics() {
        assert_eq!(format_cell(None), "");
        assert_eq!(format_cell(Some(0.1)), "1.0000000000000001e-1");
        let row = ParetoRow {
            tau: 1.0,
            inv_cop_na: None,
            inv_j_na: None,
            inv_cop_sta: Some(2.0),
            inv_j_sta: Some(3.0),
            inv_cop_ad: Some(4.0),
            inv_j_ad: Some(5.0),
            cooling_flag: false,
        };
        let mut buf = Vec::new();
        write_pareto_csv(&mut buf, &[row]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text.lines().nth(1).unwrap().split(',').take(3).collect::<Vec<_>>(),
            ["1.0000000000000000e0", "", ""]
        );
        assert!(text.ends_with(",0\n"));
    }
}

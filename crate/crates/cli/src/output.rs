//! Output writers. Data sections carry 12 significant digits and are
//! byte-stable across runs and worker counts; metadata is echoed as `# `
//! comment lines in the same key = value form the config parser accepts.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::config::RawConfig;
use crate::error::{CliError, Result};
use crate::run::{GridOutcome, SweepRow, VolumeOutcome};
use crate::spec::{GridSpec, StateDumpSpec, SweepSpec, VolumeSpec};

/// 12 significant digits, scientific; enough to verify 1e-8 tolerances
/// downstream while keeping files byte-stable.
pub fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

/// Round to the serialized 12-digit value, for JSON number fields.
fn sig12_value(x: f64) -> f64 {
    sig12(x).parse().unwrap()
}

pub fn create_output(path: &Path) -> Result<File> {
    File::create(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn write_comment_block<W: Write>(w: &mut W, raw: &RawConfig) -> std::io::Result<()> {
    for line in raw.to_config_string().lines() {
        writeln!(w, "# {line}")?;
    }
    Ok(())
}

pub fn write_sweep_csv(file: File, spec: &SweepSpec, rows: &[SweepRow]) -> Result<()> {
    let path = spec.output.clone();
    let mut w = BufWriter::new(file);
    write_comment_block(&mut w, &spec.to_raw()).map_err(io_err(&path))?;
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(["sweep_value", "criterion", "order", "value", "nonclassical", "status"])
        .map_err(|e| CliError::Param(format!("csv write failed: {e}")))?;
    for row in rows {
        csv.write_record([
            sig12(row.sweep_value),
            row.criterion.to_string(),
            row.order.to_string(),
            row.value.map(sig12).unwrap_or_default(),
            row.nonclassical.map(|b| b.to_string()).unwrap_or_default(),
            row.status.to_string(),
        ])
        .map_err(|e| CliError::Param(format!("csv write failed: {e}")))?;
    }
    csv.flush().map_err(io_err(&path))?;
    Ok(())
}

pub fn write_grid_csv(file: File, spec: &GridSpec, outcome: &GridOutcome) -> Result<()> {
    let path = spec.output.clone();
    let mut w = BufWriter::new(file);
    let mut meta = spec.to_raw();
    match outcome {
        GridOutcome::Wigner { mass, radius, .. } => {
            meta.set("window", format!("{radius}"));
            meta.push("normalization", sig12(*mass));
        }
        GridOutcome::Tomogram {
            worst_angle_norm_deviation,
            radius,
            ..
        } => {
            meta.set("window", format!("{radius}"));
            meta.push(
                "normalization_worst_angle_deviation",
                sig12(*worst_angle_norm_deviation),
            );
        }
    }
    write_comment_block(&mut w, &meta).map_err(io_err(&path))?;
    let mut csv = csv::Writer::from_writer(w);
    let record_err = |e: csv::Error| CliError::Param(format!("csv write failed: {e}"));
    match outcome {
        GridOutcome::Wigner { grid, .. } => {
            csv.write_record(["x", "p", "value"]).map_err(record_err)?;
            for (i, &x) in grid.x_axis.iter().enumerate() {
                for (j, &p) in grid.p_axis.iter().enumerate() {
                    csv.write_record([sig12(x), sig12(p), sig12(grid.values[[i, j]])])
                        .map_err(record_err)?;
                }
            }
        }
        GridOutcome::Tomogram { grid, .. } => {
            csv.write_record(["x", "theta", "value"]).map_err(record_err)?;
            for (i, &x) in grid.x_axis.iter().enumerate() {
                for (j, &theta) in grid.theta_axis.iter().enumerate() {
                    csv.write_record([sig12(x), sig12(theta), sig12(grid.values[[i, j]])])
                        .map_err(record_err)?;
                }
            }
        }
    }
    csv.flush().map_err(io_err(&path))?;
    Ok(())
}

#[derive(Serialize)]
struct VolumeJson {
    family: String,
    params: Vec<ParamJson>,
    delta: f64,
    negative_volume: f64,
    window_radius: f64,
    tolerance: f64,
    initial_resolution: usize,
    final_resolution: usize,
    converged: bool,
    refinement_history: Vec<RefinementJson>,
}

#[derive(Serialize)]
struct ParamJson {
    name: String,
    value: f64,
}

#[derive(Serialize)]
struct RefinementJson {
    resolution: usize,
    delta: f64,
}

pub fn write_volume_json(file: File, spec: &VolumeSpec, outcome: &VolumeOutcome) -> Result<()> {
    let path = spec.output.clone();
    let report = &outcome.report;
    let params = spec
        .state
        .family
        .param_names()
        .iter()
        .filter_map(|&name| {
            spec.state.get_param(name).map(|value| ParamJson {
                name: name.to_string(),
                value,
            })
        })
        .collect();
    let doc = VolumeJson {
        family: spec.state.family.to_string(),
        params,
        delta: sig12_value(report.delta),
        negative_volume: sig12_value(report.negative_volume),
        window_radius: outcome.radius,
        tolerance: report.tolerance,
        initial_resolution: report.history.first().map(|h| h.0).unwrap_or(0),
        final_resolution: report.history.last().map(|h| h.0).unwrap_or(0),
        converged: report.converged,
        refinement_history: report
            .history
            .iter()
            .map(|&(resolution, delta)| RefinementJson {
                resolution,
                delta: sig12_value(delta),
            })
            .collect(),
    };
    let mut w = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut w, &doc)
        .map_err(|e| CliError::Param(format!("json write failed: {e}")))?;
    writeln!(w).map_err(io_err(&path))?;
    w.flush().map_err(io_err(&path))?;
    Ok(())
}

pub fn write_state_csv(
    file: File,
    spec: &StateDumpSpec,
    state: &nonclassical::FockSuperposition,
) -> Result<()> {
    let path = spec.output.clone();
    let mut w = BufWriter::new(file);
    let mut meta = spec.to_raw();
    meta.push("cutoff", state.cutoff().to_string());
    write_comment_block(&mut w, &meta).map_err(io_err(&path))?;
    let mut csv = csv::Writer::from_writer(w);
    let record_err = |e: csv::Error| CliError::Param(format!("csv write failed: {e}"));
    csv.write_record(["n", "re", "im", "probability"])
        .map_err(record_err)?;
    let pnd = state.photon_number_distribution();
    for (n, c) in state.coefficients().iter().enumerate() {
        csv.write_record([
            n.to_string(),
            sig12(c.re),
            sig12(c.im),
            sig12(pnd[n]),
        ])
        .map_err(record_err)?;
    }
    csv.flush().map_err(io_err(&path))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig12_is_stable_and_precise() {
        assert_eq!(sig12(0.0), "0.00000000000e0");
        assert_eq!(sig12(-1.0 / 3.0), "-3.33333333333e-1");
        assert_eq!(sig12(12345.6789), "1.23456789000e4");
        // 12 digits round-trip well beyond 1e-8 relative
        let x = 0.1667224353;
        let y: f64 = sig12(x).parse().unwrap();
        assert!((x - y).abs() < 1e-11);
    }
}

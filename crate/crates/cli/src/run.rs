//! Job execution. Work items (sweep points, grid rows) are independent and
//! pure; they are distributed over a rayon pool and collected in canonical
//! order, so outputs do not depend on scheduling or worker count.

use std::fmt;

use rayon::prelude::*;

use nonclassical::{
    evaluate, moment_order_needed, tomogram_grid, wigner_grid, volume_refinement, Criterion,
    Error as CoreError, MomentTable, PhaseSpaceGrid, TomogramGrid, VolumeOptions, VolumeReport,
    Window,
};

use crate::error::{CliError, Result};
use crate::spec::{GridKind, GridSpec, SweepSpec, VolumeSpec};

/// Run a closure inside a pool of `workers` threads; `None` or `Some(0)`
/// uses the default global pool.
pub fn with_pool<T, F>(workers: Option<usize>, f: F) -> Result<T>
where
    T: Send,
    F: FnOnce() -> Result<T> + Send,
{
    match workers {
        None | Some(0) => f(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Param(format!("cannot build worker pool: {e}")))?
            .install(f),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowStatus {
    Ok,
    /// The swept parameter produced an invalid state (e.g. q crossed the
    /// Abel bound); the sweep continues.
    InvalidParams,
    /// The witness value is not a number here (vanishing denominator).
    Indeterminate,
}

impl fmt::Display for RowStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RowStatus::Ok => "ok",
            RowStatus::InvalidParams => "invalid-params",
            RowStatus::Indeterminate => "indeterminate",
        })
    }
}

/// One output row of a sweep: a witness evaluated at one sweep value.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub sweep_value: f64,
    pub criterion: Criterion,
    pub order: u32,
    pub value: Option<f64>,
    pub nonclassical: Option<bool>,
    pub status: RowStatus,
}

pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    let h = (stop - start) / (count - 1) as f64;
    (0..count).map(|i| start + i as f64 * h).collect()
}

/// Evaluate every requested witness at every sweep value. Rows come back
/// ordered by sweep value, then by the listed witness order.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    let values = linspace(spec.start, spec.stop, spec.count);
    let table_order = spec
        .witnesses
        .iter()
        .map(|&(c, o)| moment_order_needed(c, o))
        .max()
        .unwrap_or(0);

    let point_rows: Vec<Vec<SweepRow>> = values
        .par_iter()
        .map(|&sweep_value| -> Result<Vec<SweepRow>> {
            let state_spec = spec.state.with_param(&spec.sweep_param, sweep_value)?;
            let state = match state_spec.build() {
                Ok(state) => state,
                Err(_) => {
                    return Ok(spec
                        .witnesses
                        .iter()
                        .map(|&(criterion, order)| SweepRow {
                            sweep_value,
                            criterion,
                            order,
                            value: None,
                            nonclassical: None,
                            status: RowStatus::InvalidParams,
                        })
                        .collect());
                }
            };
            let table = MomentTable::new(&state, table_order);
            spec.witnesses
                .iter()
                .map(|&(criterion, order)| match evaluate(&table, criterion, order) {
                    Ok(w) => Ok(SweepRow {
                        sweep_value,
                        criterion,
                        order,
                        value: Some(w.value),
                        nonclassical: Some(w.nonclassical),
                        status: RowStatus::Ok,
                    }),
                    Err(CoreError::IndeterminateDenominator { .. }) => Ok(SweepRow {
                        sweep_value,
                        criterion,
                        order,
                        value: None,
                        nonclassical: None,
                        status: RowStatus::Indeterminate,
                    }),
                    Err(e) => Err(CliError::Core(e)),
                })
                .collect()
        })
        .collect::<Result<_>>()?;

    Ok(point_rows.into_iter().flatten().collect())
}

/// Computed grid plus its normalization check for the metadata block.
pub enum GridOutcome {
    Wigner {
        grid: PhaseSpaceGrid,
        /// Trapezoid mass over the window (→ 1).
        mass: f64,
        radius: f64,
    },
    Tomogram {
        grid: TomogramGrid,
        /// Largest |per-angle norm − 1| over all angles.
        worst_angle_norm_deviation: f64,
        radius: f64,
    },
}

pub fn run_grid(spec: &GridSpec) -> Result<GridOutcome> {
    let state = spec.state.build()?;
    let radius = spec
        .window_radius
        .unwrap_or_else(|| (2.0 * state.cutoff() as f64).sqrt() + 6.0);
    match spec.kind {
        GridKind::Wigner => {
            let grid = wigner_grid(
                &state,
                &Window::centered(radius),
                spec.resolution.0,
                spec.resolution.1,
            )?;
            let mass = grid.mass();
            Ok(GridOutcome::Wigner { grid, mass, radius })
        }
        GridKind::Tomogram => {
            let grid = tomogram_grid(
                &state,
                -radius,
                radius,
                spec.resolution.0,
                spec.resolution.1,
            )?;
            let worst = (0..grid.theta_axis.len())
                .map(|j| (grid.angle_norm(j) - 1.0).abs())
                .fold(0.0f64, f64::max);
            Ok(GridOutcome::Tomogram {
                grid,
                worst_angle_norm_deviation: worst,
                radius,
            })
        }
    }
}

/// Refinement outcome plus the window radius actually used.
pub struct VolumeOutcome {
    pub report: VolumeReport,
    pub radius: f64,
}

pub fn run_volume(spec: &VolumeSpec) -> Result<VolumeOutcome> {
    let state = spec.state.build()?;
    let radius = spec
        .window_radius
        .unwrap_or_else(|| (2.0 * state.cutoff() as f64).sqrt() + 6.0);
    let opts = VolumeOptions {
        window: Some(Window::centered(radius)),
        initial_resolution: spec.initial_resolution,
        tolerance: spec.tolerance,
        max_refinements: spec.max_refinements,
    };
    let report = volume_refinement(&state, &opts)?;
    Ok(VolumeOutcome { report, radius })
}

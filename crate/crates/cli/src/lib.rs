//! Library half of the sweep/grid/volume front end: job specifications,
//! runners and writers, kept separate from the binary so they can be tested
//! directly.

pub mod config;
pub mod error;
pub mod output;
pub mod run;
pub mod spec;

use error::Result;

/// Run a sweep job end to end: open the output (failing early on an
/// unwritable path), evaluate all points on the pool, write the CSV.
pub fn cmd_sweep(spec: &spec::SweepSpec, workers: Option<usize>) -> Result<()> {
    let file = output::create_output(&spec.output)?;
    let rows = run::with_pool(workers, || run::run_sweep(spec))?;
    output::write_sweep_csv(file, spec, &rows)
}

pub fn cmd_grid(spec: &spec::GridSpec, workers: Option<usize>) -> Result<()> {
    // validate the state before touching the filesystem
    spec.state.build()?;
    let file = output::create_output(&spec.output)?;
    let outcome = run::with_pool(workers, || run::run_grid(spec))?;
    output::write_grid_csv(file, spec, &outcome)
}

/// Volume job. The report is written even when the refinement cap is hit,
/// so a convergence failure still leaves the partial history on disk; the
/// error (exit code 2) is returned afterwards.
pub fn cmd_volume(spec: &spec::VolumeSpec, workers: Option<usize>) -> Result<()> {
    spec.state.build()?;
    let file = output::create_output(&spec.output)?;
    let outcome = run::with_pool(workers, || run::run_volume(spec))?;
    output::write_volume_json(file, spec, &outcome)?;
    if !outcome.report.converged {
        let n = outcome.report.history.len();
        return Err(nonclassical::Error::NonConvergence {
            what: "nonclassical volume refinement",
            previous: outcome.report.history[n.saturating_sub(2)].1,
            last: outcome.report.history[n - 1].1,
            tolerance: outcome.report.tolerance,
        }
        .into());
    }
    Ok(())
}

pub fn cmd_state(spec: &spec::StateDumpSpec) -> Result<()> {
    let state = spec.state.build()?;
    let file = output::create_output(&spec.output)?;
    output::write_state_csv(file, spec, &state)
}

//! Runs presets end to end: initial data, time stepping, diagnostics,
//! snapshots, and self-convergence studies.

use std::fs;

use crate::diagnostics::{l1_difference, restrict, DiagnosticsReport, DiagnosticsSample};
use crate::error::{Result, SolverError};
use crate::grid::{Grid, StateField};
use crate::ideal_mhd::IdealMhd;
use crate::io::{fmt_f64, write_snapshot, RunConfig, SnapshotMeta};
use crate::model::{SystemKind, SystemModel};
use crate::problems::ProblemPreset;
use crate::scheme::Scheme;
use crate::swmhd::SwMhd;
use crate::time_integration::{Event, Solver, StepRecord, TimeParams};

/// Everything a finished run produced.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub config: RunConfig,
    pub system: SystemKind,
    pub grid: Grid,
    pub state: StateField,
    /// States at the requested snapshot times (and at `t_final`).
    pub snapshots: Vec<(f64, StateField)>,
    pub report: DiagnosticsReport,
    pub steps: Vec<StepRecord>,
}

impl RunOutput {
    pub fn snapshot_at(&self, t: f64) -> Option<&StateField> {
        self.snapshots.iter().find(|(s, _)| *s == t).map(|(_, s)| s)
    }

    pub fn meta(&self, preset: &ProblemPreset, time: f64) -> SnapshotMeta {
        let names: &[&str] = match self.system {
            SystemKind::IdealMhd => IdealMhd::NAMES,
            SystemKind::ShallowWaterMhd => SwMhd::NAMES,
        };
        let pname = match self.system {
            SystemKind::IdealMhd => "gamma",
            SystemKind::ShallowWaterMhd => "g",
        };
        SnapshotMeta {
            problem: self.config.problem.clone(),
            system: self.system,
            parameter: (pname.into(), preset.parameter),
            grid: self.grid.spec,
            time,
            cfl: self.config.cfl,
            theta: self.config.theta,
            components: names.iter().map(|s| s.to_string()).collect(),
        }
    }
}

/// Allowed divergence residual after `steps` accepted steps.
pub fn divergence_budget(steps: usize) -> f64 {
    1e-12 + 1e-14 * steps as f64
}

fn run_with<S: SystemModel>(model: S, config: &RunConfig, preset: &ProblemPreset) -> Result<RunOutput> {
    let grid = preset.grid(config.nx, config.ny)?;
    let scheme = Scheme::new(model, grid, preset.boundary_spec(), config.theta)?;
    let mut solver = Solver::new(scheme, preset.initial_state(&grid))?;
    let params = TimeParams { cfl: config.cfl, ..TimeParams::new(config.t_final) };

    let mut report = DiagnosticsReport::default();
    let mut snapshots = Vec::new();
    let wanted = |t: f64| config.snapshot_times.contains(&t) || t == config.t_final;
    let steps = solver.integrate(&params, &config.snapshot_times, |event, s| {
        let sample = || DiagnosticsSample::take(s.t, &s.state, &s.scheme.grid, &s.scheme.model);
        match event {
            Event::Start => {
                report.push(sample());
                if wanted(0.0) {
                    snapshots.push((0.0, s.state.clone()));
                }
            }
            Event::Step(rec) => {
                if cfg!(debug_assertions) {
                    let div = crate::diagnostics::divergence_residual::<S>(&s.state, &s.scheme.grid);
                    debug_assert!(div <= divergence_budget(rec.step), "divergence residual {div:e} after step {}", rec.step);
                }
                if rec.step % config.diag_interval == 0 {
                    report.push(sample());
                }
            }
            Event::Stop(t) => {
                if report.samples.last().map(|x| x.t) != Some(*t) {
                    report.push(sample());
                }
                if wanted(*t) {
                    snapshots.push((*t, s.state.clone()));
                }
            }
        }
        Ok(())
    })?;
    Ok(RunOutput {
        config: config.clone(),
        system: preset.system(),
        grid,
        state: solver.state,
        snapshots,
        report,
        steps,
    })
}

/// Runs one configuration in memory.
pub fn run(config: &RunConfig) -> Result<RunOutput> {
    config.validate()?;
    let preset = config.preset()?;
    match preset.system() {
        SystemKind::IdealMhd => run_with(IdealMhd::new(preset.parameter), config, &preset),
        SystemKind::ShallowWaterMhd => run_with(SwMhd::new(preset.parameter), config, &preset),
    }
}

/// Runs and writes snapshots plus the diagnostics log into
/// `config.output_dir` when set.
pub fn run_and_write(config: &RunConfig) -> Result<RunOutput> {
    let out = run(config)?;
    if let Some(dir) = &config.output_dir {
        fs::create_dir_all(dir).map_err(|e| SolverError::io(dir, e))?;
        let preset = config.preset()?;
        for (t, state) in &out.snapshots {
            let path = dir.join(format!("{}_t{}.csv", config.problem, fmt_time(*t)));
            write_snapshot(state, &out.grid, &out.meta(&preset, *t), &path)?;
        }
        let log = dir.join(format!("{}_diagnostics.log", config.problem));
        let file = fs::File::create(&log).map_err(|e| SolverError::io(&log, e))?;
        out.report.write_log(std::io::BufWriter::new(file)).map_err(|e| SolverError::io(&log, e))?;
    }
    Ok(out)
}

fn fmt_time(t: f64) -> String {
    format!("{t}").replace('.', "p")
}

/// One row of a self-convergence table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub coarse: usize,
    pub fine: usize,
    /// L1 distance between the solution on `coarse` and the restricted
    /// solution on `fine`.
    pub difference: f64,
    /// `log2` of the previous row's difference over this one.
    pub order: Option<f64>,
}

/// Self-convergence on square grids `resolutions` (each double the last).
pub fn run_convergence(problem: &str, resolutions: &[usize], t_final: f64, component: usize) -> Result<Vec<ConvergenceRow>> {
    if resolutions.len() < 3 {
        return Err(SolverError::Usage("convergence needs at least three resolutions".into()));
    }
    if resolutions.windows(2).any(|w| w[1] != 2 * w[0]) {
        return Err(SolverError::Usage(format!("resolutions must double: {resolutions:?}")));
    }
    let mut solutions = Vec::new();
    for &n in resolutions {
        let base = RunConfig::for_problem(problem)?;
        let config = RunConfig { nx: n, ny: n, t_final, snapshot_times: vec![], ..base };
        let out = run(&config)?;
        if component >= out.state.ncomp() {
            return Err(SolverError::Usage(format!("component {component} out of range")));
        }
        solutions.push((out.grid, out.state));
    }
    let mut rows: Vec<ConvergenceRow> = Vec::new();
    for pair in solutions.windows(2) {
        let (coarse_grid, coarse) = &pair[0];
        let (fine_grid, fine) = &pair[1];
        let (restricted, _) = restrict(fine, fine_grid)?;
        let difference = l1_difference(coarse, &restricted, coarse_grid, component)?;
        let order = rows.last().map(|prev| (prev.difference / difference).log2());
        rows.push(ConvergenceRow { coarse: coarse_grid.nx(), fine: fine_grid.nx(), difference, order });
    }
    Ok(rows)
}

pub fn write_convergence_csv(rows: &[ConvergenceRow], mut out: impl std::io::Write) -> std::io::Result<()> {
    writeln!(out, "coarse,fine,l1_difference,order")?;
    for r in rows {
        let order = r.order.map(fmt_f64).unwrap_or_default();
        writeln!(out, "{},{},{},{}", r.coarse, r.fine, fmt_f64(r.difference), order)?;
    }
    Ok(())
}

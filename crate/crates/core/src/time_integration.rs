//! Three-stage strong-stability-preserving Runge-Kutta stepping with an
//! adaptive CFL time step.

use crate::error::{Result, SolverError};
use crate::grid::{Grid, StateField, GHOST};
use crate::scheme::{MaxSpeeds, Scheme};
use crate::model::SystemModel;

pub const DEFAULT_CFL: f64 = 0.25;
pub const DEFAULT_MAX_STEPS: usize = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeParams {
    pub cfl: f64,
    pub t_final: f64,
    /// Defaults to `1e-14 * t_final`.
    pub dt_min: Option<f64>,
    pub max_steps: usize,
}

impl TimeParams {
    pub fn new(t_final: f64) -> Self {
        TimeParams { cfl: DEFAULT_CFL, t_final, dt_min: None, max_steps: DEFAULT_MAX_STEPS }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.cfl > 0.0 && self.cfl <= 0.5) {
            return Err(SolverError::Config(format!("cfl must lie in (0, 0.5], got {}", self.cfl)));
        }
        if !(self.t_final.is_finite() && self.t_final > 0.0) {
            return Err(SolverError::Config(format!("t_final must be positive, got {}", self.t_final)));
        }
        if self.max_steps == 0 {
            return Err(SolverError::Config("max_steps must be positive".into()));
        }
        Ok(())
    }

    pub fn dt_min(&self) -> f64 {
        self.dt_min.unwrap_or(1e-14 * self.t_final)
    }
}

/// CFL step `cfl * min(dx / a_x, dy / a_y)`; infinite when nothing moves.
pub fn cfl_dt(speeds: MaxSpeeds, grid: &Grid, cfl: f64) -> f64 {
    let tx = if speeds.x > 0.0 { grid.dx / speeds.x } else { f64::INFINITY };
    let ty = if speeds.y > 0.0 { grid.dy / speeds.y } else { f64::INFINITY };
    cfl * tx.min(ty)
}

/// Step size from the CFL condition, clipped so that `t + dt` does not pass
/// `t_stop`. The flag is set when the step lands on `t_stop`.
pub fn compute_dt(speeds: MaxSpeeds, grid: &Grid, params: &TimeParams, t: f64, t_stop: f64) -> Result<(f64, bool)> {
    let dt = cfl_dt(speeds, grid, params.cfl);
    let remaining = t_stop - t;
    if remaining - dt <= 1e-10 * dt.min(remaining.abs().max(f64::MIN_POSITIVE)) || !dt.is_finite() {
        return Ok((remaining, true));
    }
    if dt < params.dt_min() {
        return Err(SolverError::Stagnation { dt, dt_min: params.dt_min(), t });
    }
    Ok((dt, false))
}

/// Flat storage that Runge-Kutta stages can combine.
pub trait StageVector: Clone {
    fn values(&self) -> &[f64];
    fn values_mut(&mut self) -> &mut [f64];

    /// Error describing a non-finite entry at flat position `flat`.
    fn non_finite(&self, flat: usize, stage: usize) -> SolverError {
        SolverError::NonFinite { component: 0, j: flat as isize, k: 0, stage: Some(stage) }
    }
}

impl StageVector for Vec<f64> {
    fn values(&self) -> &[f64] {
        self
    }

    fn values_mut(&mut self) -> &mut [f64] {
        self
    }
}

impl StageVector for StateField {
    fn values(&self) -> &[f64] {
        self.as_slice()
    }

    fn values_mut(&mut self) -> &mut [f64] {
        self.as_mut_slice()
    }

    fn non_finite(&self, flat: usize, stage: usize) -> SolverError {
        let (nx, ny) = self.dims();
        let stride = nx + 2 * GHOST;
        let plane = stride * (ny + 2 * GHOST);
        let c = flat / plane;
        let r = flat % plane;
        SolverError::NonFinite {
            component: c,
            j: (r % stride) as isize - GHOST as isize,
            k: (r / stride) as isize - GHOST as isize,
            stage: Some(stage),
        }
    }
}

fn check_finite<V: StageVector>(v: &V, stage: usize) -> Result<()> {
    match v.values().iter().position(|x| !x.is_finite()) {
        Some(flat) => Err(v.non_finite(flat, stage)),
        None => Ok(()),
    }
}

/// Scratch buffers of one step.
pub struct RkWork<V> {
    pub stage: V,
    pub rate: V,
}

impl<V: StageVector> RkWork<V> {
    pub fn like(v: &V) -> Self {
        RkWork { stage: v.clone(), rate: v.clone() }
    }
}

/// SSP-RK3 step given the already evaluated first-stage rate `l0 = L(u)`.
///
/// `rhs(state, out)` may modify `state` (ghost filling) but not its
/// interior values.
pub fn ssp_rk3_step_with<V, F>(u: &mut V, dt: f64, l0: &V, work: &mut RkWork<V>, mut rhs: F) -> Result<()>
where
    V: StageVector,
    F: FnMut(&mut V, &mut V) -> Result<()>,
{
    let RkWork { stage, rate } = work;
    for ((s, &u0), &l) in stage.values_mut().iter_mut().zip(u.values()).zip(l0.values()) {
        *s = u0 + dt * l;
    }
    check_finite(stage, 1)?;

    rhs(stage, rate)?;
    for ((s, &u0), &l) in stage.values_mut().iter_mut().zip(u.values()).zip(rate.values()) {
        *s = 0.75 * u0 + 0.25 * (*s + dt * l);
    }
    check_finite(stage, 2)?;

    rhs(stage, rate)?;
    for ((u0, &s), &l) in u.values_mut().iter_mut().zip(stage.values()).zip(rate.values()) {
        *u0 = *u0 / 3.0 + 2.0 / 3.0 * (s + dt * l);
    }
    check_finite(u, 3)
}

/// One SSP-RK3 step of `du/dt = L(u)`.
pub fn ssp_rk3_step<V, F>(u: &mut V, dt: f64, mut rhs: F) -> Result<()>
where
    V: StageVector,
    F: FnMut(&mut V, &mut V) -> Result<()>,
{
    let mut l0 = u.clone();
    rhs(u, &mut l0)?;
    let mut work = RkWork::like(u);
    ssp_rk3_step_with(u, dt, &l0, &mut work, rhs)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepRecord {
    pub step: usize,
    pub t: f64,
    pub dt: f64,
}

/// What the observer of [`Solver::integrate`] is told about.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Event {
    /// Before the first step.
    Start,
    /// After every accepted step.
    Step(StepRecord),
    /// The time reached one of the requested stop times exactly.
    Stop(f64),
}

/// Owns the state of one run.
pub struct Solver<S: SystemModel> {
    pub scheme: Scheme<S>,
    pub state: StateField,
    pub t: f64,
    pub steps: usize,
    l0: StateField,
    work: RkWork<StateField>,
}

impl<S: SystemModel> Solver<S> {
    pub fn new(scheme: Scheme<S>, state: StateField) -> Result<Self> {
        state.check_shape(&scheme.grid)?;
        if state.ncomp() != S::NCOMP {
            return Err(SolverError::Shape(format!("expected {} components, got {}", S::NCOMP, state.ncomp())));
        }
        let l0 = StateField::zeros(&scheme.grid, S::NCOMP);
        let work = RkWork::like(&state);
        Ok(Solver { scheme, state, t: 0.0, steps: 0, l0, work })
    }

    pub fn grid(&self) -> &Grid {
        &self.scheme.grid
    }

    /// Advances by one CFL step, never past `t_stop`.
    pub fn step(&mut self, params: &TimeParams, t_stop: f64) -> Result<StepRecord> {
        let speeds = self.scheme.rhs(&mut self.state, &mut self.l0)?;
        let (dt, lands) = compute_dt(speeds, &self.scheme.grid, params, self.t, t_stop)?;
        let scheme = &mut self.scheme;
        ssp_rk3_step_with(&mut self.state, dt, &self.l0, &mut self.work, |s, out| scheme.rhs(s, out).map(|_| ()))?;
        self.t = if lands { t_stop } else { self.t + dt };
        self.steps += 1;
        Ok(StepRecord { step: self.steps, t: self.t, dt })
    }

    /// Integrates to `params.t_final`, landing exactly on every time in
    /// `stops` that lies in `(t, t_final]`.
    pub fn integrate<F>(&mut self, params: &TimeParams, stops: &[f64], mut observer: F) -> Result<Vec<StepRecord>>
    where
        F: FnMut(&Event, &Self) -> Result<()>,
    {
        params.validate()?;
        let mut targets: Vec<f64> =
            stops.iter().copied().filter(|&s| s > self.t && s < params.t_final).collect();
        targets.sort_by(f64::total_cmp);
        targets.dedup();
        targets.push(params.t_final);

        observer(&Event::Start, self)?;
        let mut log = Vec::new();
        for target in targets {
            while self.t < target {
                if log.len() >= params.max_steps {
                    return Err(SolverError::TooManySteps(params.max_steps));
                }
                let record = self.step(params, target)?;
                log.push(record);
                observer(&Event::Step(record), self)?;
            }
            observer(&Event::Stop(target), self)?;
        }
        Ok(log)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{build_grid, GridSpec};

    fn integrate_scalar(u0: f64, t_end: f64, h: f64, f: impl Fn(f64) -> f64) -> f64 {
        let mut u = vec![u0];
        let n = (t_end / h).round() as usize;
        for _ in 0..n {
            ssp_rk3_step(&mut u, h, |s: &mut Vec<f64>, out: &mut Vec<f64>| {
                out[0] = f(s[0]);
                Ok(())
            })
            .unwrap();
        }
        u[0]
    }

    #[test]
    fn zero_rate_leaves_state_unchanged() {
        let mut u = vec![1.5, -2.0, 3.25];
        let before = u.clone();
        ssp_rk3_step(&mut u, 0.7, |_: &mut Vec<f64>, out: &mut Vec<f64>| {
            out.fill(0.0);
            Ok(())
        })
        .unwrap();
        assert_eq!(u, before);
    }

    #[test]
    fn constant_rate_is_exact() {
        let u = integrate_scalar(0.0, 1.0, 0.1, |_| 1.0);
        assert!((u - 1.0).abs() < 1e-14);
    }

    #[test]
    fn exponential_single_step() {
        let u = integrate_scalar(1.0, 0.1, 0.1, |u| u);
        assert!((u - 1.105_166_666_666_666_7).abs() < 1e-15);
    }

    #[test]
    fn one_step_error_is_fourth_order() {
        let err = |h: f64| (integrate_scalar(1.0, h, h, |u| u) - h.exp()).abs();
        let (e1, e2, e3) = (err(0.1), err(0.05), err(0.025));
        assert!((e1 / e2).log2() >= 3.9, "{e1} {e2}");
        assert!((e2 / e3).log2() >= 3.9, "{e2} {e3}");
    }

    #[test]
    fn global_error_is_third_order() {
        let err = |h: f64| (integrate_scalar(1.0, 1.0, h, |u| u) - 1f64.exp()).abs();
        assert!((err(0.05) / err(0.025)).log2() >= 2.9);
    }

    #[test]
    fn nan_is_reported_with_its_stage() {
        let mut u = vec![1.0];
        let mut calls = 0;
        let err = ssp_rk3_step(&mut u, 0.1, |_: &mut Vec<f64>, out: &mut Vec<f64>| {
            calls += 1;
            out[0] = if calls == 2 { f64::NAN } else { 1.0 };
            Ok(())
        })
        .unwrap_err();
        assert!(matches!(err, SolverError::NonFinite { stage: Some(2), .. }), "{err}");
    }

    #[test]
    fn dt_clipping_and_stagnation() {
        let grid = build_grid(GridSpec::new(10, 10, (0.0, 1.0), (0.0, 2.0))).unwrap();
        let params = TimeParams::new(1.0);
        let speeds = MaxSpeeds { x: 2.0, y: 1.0 };
        let (dt, lands) = compute_dt(speeds, &grid, &params, 0.0, 1.0).unwrap();
        assert!((dt - 0.25 * 0.05).abs() < 1e-16 && !lands);
        let (dt, lands) = compute_dt(speeds, &grid, &params, 0.995, 1.0).unwrap();
        assert!(lands && (dt - 0.005).abs() < 1e-15);
        let (_, lands) = compute_dt(MaxSpeeds::default(), &grid, &params, 0.0, 1.0).unwrap();
        assert!(lands);
        let err = compute_dt(MaxSpeeds { x: 1e20, y: 0.0 }, &grid, &params, 0.0, 1.0).unwrap_err();
        assert!(matches!(err, SolverError::Stagnation { .. }));
        assert!(TimeParams { cfl: 0.0, ..params }.validate().is_err());
    }
}

//! Browser front end: run a benchmark interactively, render any field as
//! an image, and explore the limited reconstruction of a 1-D profile.

use pccu_core::diagnostics::{component_range, divergence_residual};
use pccu_core::grid::StateField;
use pccu_core::limiter::{df_scaling, gm_slope};
use pccu_core::problems::{make_problem, PROBLEM_NAMES};
use pccu_core::time_integration::{Solver, TimeParams};
use pccu_core::{IdealMhd, Result, Scheme, SwMhd, SystemKind, SystemModel};
use wasm_bindgen::prelude::*;

enum AnySolver {
    Ideal(Solver<IdealMhd>),
    Sw(Solver<SwMhd>),
}

/// Plain-Rust core of [`Simulation`].
pub struct Session {
    solver: AnySolver,
    params: TimeParams,
    pub problem: String,
}

fn build<S: SystemModel>(model: S, problem: &str, n: usize) -> Result<Solver<S>> {
    let preset = make_problem(problem)?;
    let (nx, ny) = if preset.ny < preset.nx / 10 { (n, (n / 100).max(2)) } else { (n, n) };
    let grid = preset.grid(nx, ny)?;
    let scheme = Scheme::new(model, grid, preset.boundary_spec(), pccu_core::limiter::DEFAULT_THETA)?;
    Solver::new(scheme, preset.initial_state(&grid))
}

impl Session {
    pub fn new(problem: &str, n: usize) -> Result<Self> {
        let preset = make_problem(problem)?;
        let solver = match preset.system() {
            SystemKind::IdealMhd => AnySolver::Ideal(build(IdealMhd::new(preset.parameter), problem, n)?),
            SystemKind::ShallowWaterMhd => AnySolver::Sw(build(SwMhd::new(preset.parameter), problem, n)?),
        };
        Ok(Session { solver, params: TimeParams::new(preset.t_final), problem: problem.to_string() })
    }

    /// Takes up to `steps` steps, stopping at the preset's final time.
    pub fn advance(&mut self, steps: usize) -> Result<f64> {
        let params = self.params;
        match &mut self.solver {
            AnySolver::Ideal(s) => advance(s, &params, steps),
            AnySolver::Sw(s) => advance(s, &params, steps),
        }
    }

    pub fn time(&self) -> f64 {
        match &self.solver {
            AnySolver::Ideal(s) => s.t,
            AnySolver::Sw(s) => s.t,
        }
    }

    pub fn t_final(&self) -> f64 {
        self.params.t_final
    }

    pub fn dims(&self) -> (usize, usize) {
        let g = match &self.solver {
            AnySolver::Ideal(s) => *s.grid(),
            AnySolver::Sw(s) => *s.grid(),
        };
        (g.nx(), g.ny())
    }

    pub fn names(&self) -> &'static [&'static str] {
        match &self.solver {
            AnySolver::Ideal(_) => IdealMhd::NAMES,
            AnySolver::Sw(_) => SwMhd::NAMES,
        }
    }

    fn state(&self) -> (&StateField, &pccu_core::Grid) {
        match &self.solver {
            AnySolver::Ideal(s) => (&s.state, s.grid()),
            AnySolver::Sw(s) => (&s.state, s.grid()),
        }
    }

    /// Interior values of one component, row-major with `k = 0` first.
    pub fn values(&self, component: usize) -> Vec<f64> {
        let (state, grid) = self.state();
        if component >= state.ncomp() {
            return Vec::new();
        }
        state.interior_values(grid, component)
    }

    pub fn range(&self, component: usize) -> (f64, f64) {
        let (state, grid) = self.state();
        component_range(state, grid, component.min(state.ncomp() - 1))
    }

    pub fn divergence(&self) -> f64 {
        match &self.solver {
            AnySolver::Ideal(s) => divergence_residual::<IdealMhd>(&s.state, s.grid()),
            AnySolver::Sw(s) => divergence_residual::<SwMhd>(&s.state, s.grid()),
        }
    }
}

fn advance<S: SystemModel>(s: &mut Solver<S>, params: &TimeParams, steps: usize) -> Result<f64> {
    for _ in 0..steps {
        if s.t >= params.t_final {
            break;
        }
        s.step(params, params.t_final)?;
    }
    Ok(s.t)
}

/// Maps `v` in `[lo, hi]` to a blue-white-red ramp.
pub fn color(v: f64, lo: f64, hi: f64) -> [u8; 3] {
    let t = if hi > lo { ((v - lo) / (hi - lo)).clamp(0.0, 1.0) } else { 0.5 };
    let (r, g, b) = if t < 0.5 {
        let s = t / 0.5;
        (0.23 + 0.77 * s, 0.30 + 0.70 * s, 0.75 + 0.25 * s)
    } else {
        let s = (t - 0.5) / 0.5;
        (1.0 - 0.29 * s, 1.0 - 0.98 * s, 1.0 - 0.85 * s)
    };
    [(r * 255.0).round() as u8, (g * 255.0).round() as u8, (b * 255.0).round() as u8]
}

/// RGBA pixels of a row-major field, flipped so that row 0 of the image is
/// the top of the domain.
pub fn rgba(values: &[f64], nx: usize, ny: usize) -> Vec<u8> {
    let (lo, hi) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    let mut out = Vec::with_capacity(4 * nx * ny);
    for row in (0..ny).rev() {
        for &v in &values[row * nx..(row + 1) * nx] {
            let [r, g, b] = color(v, lo, hi);
            out.extend_from_slice(&[r, g, b, 255]);
        }
    }
    out
}

/// Slopes and west/east face values of a 1-D periodic profile on a unit
/// spacing, flattened as `[slope, west, east]` per cell.
pub fn reconstruct_profile(values: &[f64], theta: f64) -> Vec<f64> {
    let n = values.len();
    let mut out = Vec::with_capacity(3 * n);
    for i in 0..n {
        let prev = values[(i + n - 1) % n];
        let next = values[(i + 1) % n];
        let s = gm_slope(prev, values[i], next, theta, 1.0);
        out.extend_from_slice(&[s, values[i] - 0.5 * s, values[i] + 0.5 * s]);
    }
    out
}

fn js_err(e: impl std::fmt::Display) -> JsError {
    JsError::new(&e.to_string())
}

/// An interactive benchmark run.
#[wasm_bindgen]
pub struct Simulation {
    inner: Session,
}

#[wasm_bindgen]
impl Simulation {
    #[wasm_bindgen(constructor)]
    pub fn new(problem: &str, n: usize) -> Result<Simulation, JsError> {
        Session::new(problem, n).map(|inner| Simulation { inner }).map_err(js_err)
    }

    pub fn step(&mut self, steps: usize) -> Result<f64, JsError> {
        self.inner.advance(steps).map_err(js_err)
    }

    pub fn time(&self) -> f64 {
        self.inner.time()
    }

    #[wasm_bindgen(js_name = finalTime)]
    pub fn final_time(&self) -> f64 {
        self.inner.t_final()
    }

    pub fn nx(&self) -> usize {
        self.inner.dims().0
    }

    pub fn ny(&self) -> usize {
        self.inner.dims().1
    }

    #[wasm_bindgen(js_name = componentNames)]
    pub fn component_names(&self) -> Vec<String> {
        self.inner.names().iter().map(|s| s.to_string()).collect()
    }

    pub fn values(&self, component: usize) -> Vec<f64> {
        self.inner.values(component)
    }

    /// `[min, max]` of a component.
    pub fn range(&self, component: usize) -> Vec<f64> {
        let (lo, hi) = self.inner.range(component);
        vec![lo, hi]
    }

    pub fn rgba(&self, component: usize) -> Vec<u8> {
        let (nx, ny) = self.inner.dims();
        rgba(&self.inner.values(component), nx, ny)
    }

    pub fn divergence(&self) -> f64 {
        self.inner.divergence()
    }
}

#[wasm_bindgen(js_name = problemNames)]
pub fn problem_names() -> Vec<String> {
    PROBLEM_NAMES.iter().map(|s| s.to_string()).collect()
}

/// See [`reconstruct_profile`].
#[wasm_bindgen]
pub fn reconstruct(values: Vec<f64>, theta: f64) -> Vec<f64> {
    reconstruct_profile(&values, theta)
}

/// Scaling factor applied to the divergence slopes for cell averages
/// `A = a`, `B = -a` and limited slopes `hat_a`, `hat_b`.
#[wasm_bindgen(js_name = scalingFactor)]
pub fn scaling_factor(a: f64, hat_a: f64, hat_b: f64) -> f64 {
    df_scaling(a, -a, hat_a, hat_b).value()
}

//! Run-time checks: divergence residual, positivity minima, conserved sums
//! and L1 differences between solutions.

use std::io::Write;

use crate::error::{Result, SolverError};
use crate::grid::{build_grid, Grid, GridSpec, StateField};
use crate::model::SystemModel;

/// Maximum of `|A + B|` over the interior.
pub fn divergence_residual<S: SystemModel>(state: &StateField, grid: &Grid) -> f64 {
    let (a, b) = (state.component(S::A), state.component(S::B));
    let mut worst = 0f64;
    for (j, k) in grid.interior() {
        let c = grid.index(j as isize, k as isize);
        worst = worst.max((a[c] + b[c]).abs());
    }
    worst
}

/// `(min density or thickness, min pressure)` over the interior. The
/// pressure entry is `None` for systems without one.
pub fn positivity_report<S: SystemModel>(state: &StateField, grid: &Grid, model: &S) -> (f64, Option<f64>) {
    let mut min_rho = f64::INFINITY;
    let mut min_p: Option<f64> = None;
    let mut cons = S::Vec::default();
    for (j, k) in grid.interior() {
        state.load(grid.index(j as isize, k as isize), cons.as_mut());
        min_rho = min_rho.min(cons[0]);
        if let Some(p) = model.pressure(&cons) {
            min_p = Some(min_p.map_or(p, |m| m.min(p)));
        }
    }
    (min_rho, min_p)
}

/// `sum(U_c) dx dy` over the interior.
pub fn total(state: &StateField, grid: &Grid, c: usize) -> f64 {
    state.interior_values(grid, c).iter().sum::<f64>() * grid.cell_area()
}

/// Interior minimum and maximum of one component.
pub fn component_range(state: &StateField, grid: &Grid, c: usize) -> (f64, f64) {
    state
        .interior_values(grid, c)
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
}

/// `sum |a_c - b_c| dx dy` over the interior of two fields on `grid`.
pub fn l1_difference(a: &StateField, b: &StateField, grid: &Grid, c: usize) -> Result<f64> {
    a.check_shape(grid)?;
    b.check_shape(grid)?;
    if c >= a.ncomp() || c >= b.ncomp() {
        return Err(SolverError::Shape(format!("component {c} out of range")));
    }
    let (x, y) = (a.component(c), b.component(c));
    let mut sum = 0.0;
    for (j, k) in grid.interior() {
        let i = grid.index(j as isize, k as isize);
        sum += (x[i] - y[i]).abs();
    }
    Ok(sum * grid.cell_area())
}

/// Cell averages of 2x2 blocks of a field on `fine`, returned with the
/// coarse grid.
pub fn restrict(fine_state: &StateField, fine: &Grid) -> Result<(StateField, Grid)> {
    fine_state.check_shape(fine)?;
    if fine.nx() % 2 != 0 || fine.ny() % 2 != 0 {
        return Err(SolverError::Shape(format!(
            "cannot restrict a {}x{} grid by 2x2 blocks",
            fine.nx(),
            fine.ny()
        )));
    }
    let s = fine.spec;
    let coarse = build_grid(GridSpec::new(s.nx / 2, s.ny / 2, (s.xmin, s.xmax), (s.ymin, s.ymax)))?;
    let mut out = StateField::zeros(&coarse, fine_state.ncomp());
    for c in 0..fine_state.ncomp() {
        for (j, k) in coarse.interior() {
            let (fj, fk) = (2 * j as isize, 2 * k as isize);
            let v = 0.25
                * (fine_state.get(fine, c, fj, fk)
                    + fine_state.get(fine, c, fj + 1, fk)
                    + fine_state.get(fine, c, fj, fk + 1)
                    + fine_state.get(fine, c, fj + 1, fk + 1));
            out.set(&coarse, c, j as isize, k as isize, v);
        }
    }
    Ok((out, coarse))
}

/// One diagnostics sample.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagnosticsSample {
    pub t: f64,
    pub max_div: f64,
    pub min_rho: f64,
    pub min_p: Option<f64>,
    pub mass: f64,
}

impl DiagnosticsSample {
    pub fn take<S: SystemModel>(t: f64, state: &StateField, grid: &Grid, model: &S) -> Self {
        let (min_rho, min_p) = positivity_report(state, grid, model);
        DiagnosticsSample {
            t,
            max_div: divergence_residual::<S>(state, grid),
            min_rho,
            min_p,
            mass: total(state, grid, 0),
        }
    }

    /// `t, max_divAB, min_rho, min_p, total_mass`; systems without pressure
    /// write `nan` in the pressure column.
    pub fn log_line(&self) -> String {
        format!(
            "{:.16e}, {:.16e}, {:.16e}, {:.16e}, {:.16e}",
            self.t,
            self.max_div,
            self.min_rho,
            self.min_p.unwrap_or(f64::NAN),
            self.mass
        )
    }
}

/// Append-only record of a run's samples.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DiagnosticsReport {
    pub samples: Vec<DiagnosticsSample>,
}

impl DiagnosticsReport {
    pub fn push(&mut self, sample: DiagnosticsSample) {
        self.samples.push(sample);
    }

    pub fn max_divergence(&self) -> f64 {
        self.samples.iter().map(|s| s.max_div).fold(0.0, f64::max)
    }

    pub fn min_pressure(&self) -> Option<f64> {
        self.samples.iter().filter_map(|s| s.min_p).reduce(f64::min)
    }

    pub fn min_density(&self) -> f64 {
        self.samples.iter().map(|s| s.min_rho).fold(f64::INFINITY, f64::min)
    }

    /// Largest `|mass - initial mass| / |initial mass|`.
    pub fn mass_drift(&self) -> f64 {
        let Some(first) = self.samples.first() else { return 0.0 };
        let m0 = first.mass;
        self.samples.iter().map(|s| (s.mass - m0).abs() / m0.abs()).fold(0.0, f64::max)
    }

    pub fn write_log(&self, mut out: impl Write) -> std::io::Result<()> {
        writeln!(out, "# t, max_divAB, min_rho, min_p, total_mass")?;
        for s in &self.samples {
            writeln!(out, "{}", s.log_line())?;
        }
        Ok(())
    }
}

//! Semi-discrete path-conservative central-upwind right-hand side.
//!
//! Pipeline per evaluation: ghost fill, reconstruction variables at cell
//! centers, generalized-minmod slopes (scaled divergence slopes for the
//! normal magnetic components), interface values, one-sided speeds, CU
//! fluxes, nonconservative interface and cell terms, assembly.

use crate::error::{Result, SolverError};
use crate::grid::{fill_ghost, BoundarySpec, Grid, StateField};
use crate::limiter::{df_scaling, gm_slope};
use crate::model::{Axis, SystemModel, Vector, Violation};

/// Largest `max(s+, -s-)` over the x- and y-interfaces.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct MaxSpeeds {
    pub x: f64,
    pub y: f64,
}

#[inline]
fn fan_is_degenerate(s_plus: f64, s_minus: f64) -> bool {
    s_plus - s_minus < 1e-12 * 1f64.max(s_plus.abs()).max(s_minus.abs())
}

/// Weights `(s+/(s+ - s-), s-/(s+ - s-))` of the interface fluctuation.
/// A degenerate fan splits it evenly.
#[inline]
pub fn fluctuation_weights(s_plus: f64, s_minus: f64) -> (f64, f64) {
    if fan_is_degenerate(s_plus, s_minus) {
        (0.5, -0.5)
    } else {
        let inv = 1.0 / (s_plus - s_minus);
        (s_plus * inv, s_minus * inv)
    }
}

/// Central-upwind numerical flux.
#[inline]
pub fn cu_flux<V: Vector>(f_l: &V, f_r: &V, u_l: &V, u_r: &V, s_plus: f64, s_minus: f64) -> V {
    let mut out = V::default();
    let n = out.as_ref().len();
    if fan_is_degenerate(s_plus, s_minus) {
        for i in 0..n {
            out[i] = 0.5 * (f_l[i] + f_r[i]);
        }
        return out;
    }
    let inv = 1.0 / (s_plus - s_minus);
    let diffusion = s_plus * s_minus * inv;
    for i in 0..n {
        out[i] = (s_plus * f_l[i] - s_minus * f_r[i]) * inv + diffusion * (u_r[i] - u_l[i]);
    }
    out
}

/// Reusable evaluator of the semi-discrete operator for one system and grid.
pub struct Scheme<S: SystemModel> {
    pub model: S,
    pub grid: Grid,
    pub bc: BoundarySpec,
    pub theta: f64,
    w: Vec<S::Vec>,
    slope_x: Vec<S::Vec>,
    slope_y: Vec<S::Vec>,
    /// Per x-interface: flux plus the share of the fluctuation kept by the
    /// cell on the left / right. Indexed `k * (nx + 1) + j` for the
    /// interface between cells `j - 1` and `j`.
    x_to_left: Vec<S::Vec>,
    x_to_right: Vec<S::Vec>,
    /// Same for y-interfaces, indexed `k * nx + j` for the interface
    /// between cells `k - 1` and `k`.
    y_to_left: Vec<S::Vec>,
    y_to_right: Vec<S::Vec>,
}

impl<S: SystemModel> Scheme<S> {
    pub fn new(model: S, grid: Grid, bc: BoundarySpec, theta: f64) -> Result<Self> {
        bc.validate()?;
        if !(1.0..=2.0).contains(&theta) {
            return Err(SolverError::Config(format!("theta must lie in [1, 2], got {theta}")));
        }
        let n = grid.padded_len();
        let (nx, ny) = (grid.nx(), grid.ny());
        Ok(Scheme {
            model,
            grid,
            bc,
            theta,
            w: vec![S::Vec::default(); n],
            slope_x: vec![S::Vec::default(); n],
            slope_y: vec![S::Vec::default(); n],
            x_to_left: vec![S::Vec::default(); (nx + 1) * ny],
            x_to_right: vec![S::Vec::default(); (nx + 1) * ny],
            y_to_left: vec![S::Vec::default(); nx * (ny + 1)],
            y_to_right: vec![S::Vec::default(); nx * (ny + 1)],
        })
    }

    fn positivity(&self, flat: usize, v: Violation) -> SolverError {
        let stride = self.grid.stride() as isize;
        let g = crate::grid::GHOST as isize;
        let flat = flat as isize;
        SolverError::Positivity { quantity: v.quantity, value: v.value, j: flat % stride - g, k: flat / stride - g }
    }

    /// Fills ghosts of `state` and writes `d/dt` of the interior cell
    /// averages into `out` (ghost entries of `out` are zeroed).
    pub fn rhs(&mut self, state: &mut StateField, out: &mut StateField) -> Result<MaxSpeeds> {
        let grid = self.grid;
        state.check_shape(&grid)?;
        out.check_shape(&grid)?;
        if state.ncomp() != S::NCOMP || out.ncomp() != S::NCOMP {
            return Err(SolverError::Shape(format!(
                "expected {} components, got {} and {}",
                S::NCOMP,
                state.ncomp(),
                out.ncomp()
            )));
        }
        fill_ghost(state, &self.bc, &grid)?;

        let nx = grid.nx() as isize;
        let ny = grid.ny() as isize;
        let (dx, dy) = (grid.dx, grid.dy);
        let stride = grid.stride();

        // reconstruction variables everywhere, ghosts included
        let mut cons = S::Vec::default();
        for flat in 0..grid.padded_len() {
            state.load(flat, cons.as_mut());
            self.w[flat] = self.model.reconstruction_vars(&cons).map_err(|v| self.positivity(flat, v))?;
        }

        // slopes on the interior plus one ghost ring
        for k in -1..=ny {
            for j in -1..=nx {
                let c = grid.index(j, k);
                let (wc, we, ww, wn, ws) = (&self.w[c], &self.w[c + 1], &self.w[c - 1], &self.w[c + stride], &self.w[c - stride]);
                let mut sx = S::Vec::default();
                let mut sy = S::Vec::default();
                for i in 0..S::NCOMP {
                    sx[i] = gm_slope(ww[i], wc[i], we[i], self.theta, dx);
                    sy[i] = gm_slope(ws[i], wc[i], wn[i], self.theta, dy);
                }
                let sigma = df_scaling(wc[S::A], wc[S::B], sx[S::BX], sy[S::BY]).value();
                sx[S::BX] = sigma * wc[S::A];
                sy[S::BY] = sigma * wc[S::B];
                self.slope_x[c] = sx;
                self.slope_y[c] = sy;
            }
        }
        let mut max_speeds = MaxSpeeds::default();

        // x-interfaces
        let xfaces = (nx + 1) as usize;
        for k in 0..ny {
            for f in 0..=nx {
                let left = grid.index(f - 1, k);
                let right = grid.index(f, k);
                let east = face(&self.w[left], &self.slope_x[left], 0.5 * dx);
                let west = face(&self.w[right], &self.slope_x[right], -0.5 * dx);
                self.model.check_face(&east).map_err(|v| self.positivity(left, v))?;
                self.model.check_face(&west).map_err(|v| self.positivity(right, v))?;
                let (contrib_l, contrib_r, speed) = self.interface(
                    &east,
                    &west,
                    Axis::X,
                    self.slope_y[left][1],
                    self.slope_y[right][1],
                );
                max_speeds.x = max_speeds.x.max(speed);
                let idx = k as usize * xfaces + f as usize;
                self.x_to_left[idx] = contrib_l;
                self.x_to_right[idx] = contrib_r;
            }
        }

        // y-interfaces
        for f in 0..=ny {
            for j in 0..nx {
                let below = grid.index(j, f - 1);
                let above = grid.index(j, f);
                let north = face(&self.w[below], &self.slope_y[below], 0.5 * dy);
                let south = face(&self.w[above], &self.slope_y[above], -0.5 * dy);
                self.model.check_face(&north).map_err(|v| self.positivity(below, v))?;
                self.model.check_face(&south).map_err(|v| self.positivity(above, v))?;
                let (contrib_l, contrib_r, speed) = self.interface(
                    &north,
                    &south,
                    Axis::Y,
                    self.slope_x[below][2],
                    self.slope_x[above][2],
                );
                max_speeds.y = max_speeds.y.max(speed);
                let idx = f as usize * nx as usize + j as usize;
                self.y_to_left[idx] = contrib_l;
                self.y_to_right[idx] = contrib_r;
            }
        }

        // assembly: x-interface terms, y-interface terms, cell terms
        out.as_mut_slice().fill(0.0);
        let mut d = S::Vec::default();
        for k in 0..ny {
            for j in 0..nx {
                let c = grid.index(j, k);
                let xw = k as usize * xfaces + j as usize;
                let ys = k as usize * nx as usize + j as usize;
                let yn = ys + nx as usize;
                let qx = self.model.noncons_cell(&self.w[c], &self.slope_x[c], Axis::X, dx).map_err(|v| self.positivity(c, v))?;
                let qy = self.model.noncons_cell(&self.w[c], &self.slope_y[c], Axis::Y, dy).map_err(|v| self.positivity(c, v))?;
                let (e, wst, n, s) = (&self.x_to_left[xw + 1], &self.x_to_right[xw], &self.y_to_left[yn], &self.y_to_right[ys]);
                for i in 0..S::NCOMP {
                    let x_part = e[i] - wst[i];
                    let y_part = n[i] - s[i];
                    d[i] = -((x_part - qx[i]) / dx) - ((y_part - qy[i]) / dy);
                }
                if let Some(i) = (0..S::NCOMP).find(|&i| !d[i].is_finite()) {
                    return Err(SolverError::NonFinite { component: i, j, k, stage: None });
                }
                out.store(c, d.as_ref());
            }
        }
        Ok(max_speeds)
    }

    /// Contributions of one interface to the cells on its two sides and the
    /// largest one-sided speed.
    #[inline]
    fn interface(&self, minus: &S::Vec, plus: &S::Vec, axis: Axis, tan_minus: f64, tan_plus: f64) -> (S::Vec, S::Vec, f64) {
        let u_m = self.model.face_conserved(minus);
        let u_p = self.model.face_conserved(plus);
        let f_m = self.model.flux(minus, &u_m, axis, tan_minus);
        let f_p = self.model.flux(plus, &u_p, axis, tan_plus);
        let (s_plus, s_minus) = self.model.speeds(minus, plus, axis);
        let flux = cu_flux(&f_m, &f_p, &u_m, &u_p, s_plus, s_minus);
        let fluct = self.model.noncons_interface(minus, plus, axis);
        let (w_plus, w_minus) = fluctuation_weights(s_plus, s_minus);
        let mut to_left = flux;
        let mut to_right = flux;
        for i in 0..S::NCOMP {
            to_left[i] += w_minus * fluct[i];
            to_right[i] += w_plus * fluct[i];
        }
        (to_left, to_right, s_plus.max(-s_minus))
    }
}

#[inline]
fn face<V: Vector>(center: &V, slope: &V, offset: f64) -> V {
    let mut out = *center;
    for i in 0..out.as_ref().len() {
        out[i] += slope[i] * offset;
    }
    out
}

/// One-shot evaluation of the semi-discrete operator.
pub fn semidiscrete_rhs<S: SystemModel>(
    state: &StateField,
    model: S,
    grid: &Grid,
    bc: &BoundarySpec,
    theta: f64,
) -> Result<(StateField, MaxSpeeds)> {
    let mut scheme = Scheme::new(model, *grid, *bc, theta)?;
    let mut work = state.clone();
    let mut out = StateField::zeros(grid, S::NCOMP);
    let speeds = scheme.rhs(&mut work, &mut out)?;
    Ok((out, speeds))
}

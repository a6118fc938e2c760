//! The seven benchmark presets.
//!
//! Every preset's normal magnetic variables vary only tangentially
//! (`b1(y)`, `b2(x)`, or constants), so `A = B = 0` holds exactly.

use std::f64::consts::PI;

use crate::error::{Result, SolverError};
use crate::grid::{build_grid, Boundary, BoundarySpec, Grid, GridSpec, StateField};
use crate::ideal_mhd::{GasParams, IdealPrimitive};
use crate::model::SystemKind;
use crate::swmhd::SwPrimitive;

/// Pointwise initial data in primitive form.
#[derive(Clone, Copy, Debug)]
pub enum InitialData {
    Ideal(fn(f64, f64) -> IdealPrimitive),
    ShallowWater(fn(f64, f64) -> SwPrimitive),
}

#[derive(Clone, Copy, Debug)]
pub struct ProblemPreset {
    pub name: &'static str,
    pub x: (f64, f64),
    pub y: (f64, f64),
    pub nx: usize,
    pub ny: usize,
    pub boundary: Boundary,
    /// `gamma` for ideal MHD, `g` for shallow water.
    pub parameter: f64,
    pub t_final: f64,
    pub initial: InitialData,
}

pub const PROBLEM_NAMES: [&str; 7] =
    ["brio-wu", "orszag-tang", "rotor", "blast", "sw-orszag-tang", "sw-rotor", "sw-explosion"];

fn brio_wu(x: f64, _y: f64) -> IdealPrimitive {
    if x < 0.0 {
        IdealPrimitive { rho: 1.0, b1: 0.75, b2: 1.0, p: 1.0, ..Default::default() }
    } else {
        IdealPrimitive { rho: 0.125, b1: 0.75, b2: -1.0, p: 0.1, ..Default::default() }
    }
}

const OT_GAMMA: f64 = 5.0 / 3.0;

fn orszag_tang(x: f64, y: f64) -> IdealPrimitive {
    IdealPrimitive {
        rho: OT_GAMMA * OT_GAMMA,
        u: -y.sin(),
        v: x.sin(),
        b1: -y.sin(),
        b2: (2.0 * x).sin(),
        p: OT_GAMMA,
        ..Default::default()
    }
}

fn rotor(x: f64, y: f64) -> IdealPrimitive {
    const R0: f64 = 0.1;
    const R1: f64 = 0.115;
    let r = ((x - 0.5).powi(2) + (y - 0.5).powi(2)).sqrt();
    let (rho, u, v) = if r < R0 {
        (10.0, (0.5 - y) / R0, (x - 0.5) / R0)
    } else if r <= R1 {
        let lambda = (R1 - r) / 0.015;
        (1.0 + 9.0 * lambda, lambda * (0.5 - y) / r, lambda * (x - 0.5) / r)
    } else {
        (1.0, 0.0, 0.0)
    };
    IdealPrimitive { rho, u, v, b1: 2.5 / (4.0 * PI).sqrt(), p: 0.5, ..Default::default() }
}

fn blast(x: f64, y: f64) -> IdealPrimitive {
    let p = if (x * x + y * y).sqrt() < 0.1 { 1000.0 } else { 0.1 };
    IdealPrimitive { rho: 1.0, b1: 100.0 / (4.0 * PI).sqrt(), p, ..Default::default() }
}

fn sw_orszag_tang(x: f64, y: f64) -> SwPrimitive {
    let h = 25.0 / 9.0;
    SwPrimitive { h, u: -y.sin(), v: x.sin(), ha: -h * y.sin(), hb: h * (2.0 * x).sin(), ..Default::default() }
}

fn sw_rotor(x: f64, y: f64) -> SwPrimitive {
    if (x * x + y * y).sqrt() < 0.1 {
        SwPrimitive { h: 10.0, u: -y, v: x, ha: 1.0, hb: 0.0, ..Default::default() }
    } else {
        SwPrimitive { h: 1.0, ha: 1.0, ..Default::default() }
    }
}

fn sw_explosion(x: f64, y: f64) -> SwPrimitive {
    let (h, a) = if (x * x + y * y).sqrt() < 0.3 { (1.0, 0.1) } else { (0.1, 1.0) };
    SwPrimitive { h, ha: h * a, ..Default::default() }
}

/// Looks up a preset by name.
pub fn make_problem(name: &str) -> Result<ProblemPreset> {
    use Boundary::{Periodic, ZeroOrderExtrapolation as Extrap};
    let tau = 2.0 * PI;
    let preset = |name, x, y, n: (usize, usize), boundary, parameter, t_final, initial| ProblemPreset {
        name,
        x,
        y,
        nx: n.0,
        ny: n.1,
        boundary,
        parameter,
        t_final,
        initial,
    };
    Ok(match name {
        "brio-wu" => preset("brio-wu", (-1.0, 1.0), (-0.01, 0.01), (800, 8), Extrap, 2.0, 0.2, InitialData::Ideal(brio_wu)),
        "orszag-tang" => {
            preset("orszag-tang", (0.0, tau), (0.0, tau), (200, 200), Periodic, OT_GAMMA, 4.0, InitialData::Ideal(orszag_tang))
        }
        "rotor" => preset("rotor", (0.0, 1.0), (0.0, 1.0), (200, 200), Periodic, 5.0 / 3.0, 0.295, InitialData::Ideal(rotor)),
        "blast" => preset("blast", (-0.5, 0.5), (-0.5, 0.5), (200, 200), Extrap, 1.4, 0.01, InitialData::Ideal(blast)),
        "sw-orszag-tang" => preset(
            "sw-orszag-tang",
            (0.0, tau),
            (0.0, tau),
            (200, 200),
            Periodic,
            1.0,
            2.0,
            InitialData::ShallowWater(sw_orszag_tang),
        ),
        "sw-rotor" => {
            preset("sw-rotor", (-1.0, 1.0), (-1.0, 1.0), (200, 200), Extrap, 1.0, 0.2, InitialData::ShallowWater(sw_rotor))
        }
        "sw-explosion" => preset(
            "sw-explosion",
            (-1.0, 1.0),
            (-1.0, 1.0),
            (200, 200),
            Extrap,
            1.0,
            0.25,
            InitialData::ShallowWater(sw_explosion),
        ),
        other => {
            return Err(SolverError::Config(format!(
                "unknown problem '{other}'; valid names: {}",
                PROBLEM_NAMES.join(", ")
            )))
        }
    })
}

impl ProblemPreset {
    pub fn system(&self) -> SystemKind {
        match self.initial {
            InitialData::Ideal(_) => SystemKind::IdealMhd,
            InitialData::ShallowWater(_) => SystemKind::ShallowWaterMhd,
        }
    }

    pub fn boundary_spec(&self) -> BoundarySpec {
        BoundarySpec::uniform(self.boundary)
    }

    pub fn grid(&self, nx: usize, ny: usize) -> Result<Grid> {
        build_grid(GridSpec::new(nx, ny, self.x, self.y))
    }

    pub fn default_grid(&self) -> Result<Grid> {
        self.grid(self.nx, self.ny)
    }

    /// Cell averages approximated by the value at each cell center.
    pub fn initial_state(&self, grid: &Grid) -> StateField {
        match self.initial {
            InitialData::Ideal(f) => {
                let gas = GasParams { gamma: self.parameter };
                sample(grid, 10, |x, y| f(x, y).to_conserved(gas).to_array().to_vec())
            }
            InitialData::ShallowWater(f) => sample(grid, 7, |x, y| f(x, y).to_conserved().to_array().to_vec()),
        }
    }
}

fn sample(grid: &Grid, ncomp: usize, f: impl Fn(f64, f64) -> Vec<f64>) -> StateField {
    let mut field = StateField::zeros(grid, ncomp);
    for (j, k) in grid.interior() {
        let (j, k) = (j as isize, k as isize);
        field.store(grid.index(j, k), &f(grid.x_center(j), grid.y_center(k)));
    }
    field
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(name: &str) -> fn(f64, f64) -> IdealPrimitive {
        match make_problem(name).unwrap().initial {
            InitialData::Ideal(f) => f,
            _ => panic!("{name} is not ideal"),
        }
    }

    fn sw(name: &str) -> fn(f64, f64) -> SwPrimitive {
        match make_problem(name).unwrap().initial {
            InitialData::ShallowWater(f) => f,
            _ => panic!("{name} is not shallow water"),
        }
    }

    #[test]
    fn preset_examples() {
        let p = ideal("brio-wu")(-0.5, 0.0);
        assert_eq!((p.rho, p.b2, p.p), (1.0, 1.0, 1.0));
        let p = ideal("orszag-tang")(1.234, 4.5);
        assert!((p.rho - 25.0 / 9.0).abs() < 1e-15);
        let (x, y) = (0.5 + 0.1075, 0.5);
        let p = ideal("rotor")(x, y);
        assert!((p.rho - 5.5).abs() < 1e-12);
        let (x, y) = (0.5, 0.5 + 0.1075);
        let p = ideal("rotor")(x, y);
        assert!((p.u - 0.5 * (0.5 - y) / 0.1075).abs() < 1e-12);
        let blast = make_problem("blast").unwrap();
        assert_eq!((blast.parameter, blast.nx, blast.ny, blast.t_final), (1.4, 200, 200, 0.01));
        assert_eq!(ideal("blast")(0.0, 0.0).p, 1000.0);
        assert_eq!(ideal("blast")(0.3, 0.0).p, 0.1);
        let s = sw("sw-rotor")(0.01, 0.02);
        assert_eq!((s.h, s.u, s.v, s.ha, s.hb), (10.0, -0.02, 0.01, 1.0, 0.0));
        let s = sw("sw-explosion")(0.5, 0.5);
        assert_eq!((s.h, s.a()), (0.1, 1.0));
        assert!((sw("sw-explosion")(0.0, 0.0).a() - 0.1).abs() < 1e-15);
    }

    #[test]
    fn rotor_regions_are_consistent() {
        // at the two region boundaries the taper matches its neighbors
        let f = ideal("rotor");
        let inner = f(0.5 + 0.1, 0.5);
        assert!((inner.rho - 10.0).abs() < 1e-12);
        let outer = f(0.5 + 0.115, 0.5);
        assert!((outer.rho - 1.0).abs() < 1e-12 && outer.v.abs() < 1e-12);
    }

    #[test]
    fn unknown_name_lists_valid_ones() {
        let err = make_problem("kelvin").unwrap_err().to_string();
        for name in PROBLEM_NAMES {
            assert!(err.contains(name));
        }
    }

    #[test]
    fn normal_magnetic_variables_vary_only_tangentially() {
        let h = 1e-6;
        for name in PROBLEM_NAMES {
            let preset = make_problem(name).unwrap();
            let (x0, x1, y0, y1) = (preset.x.0, preset.x.1, preset.y.0, preset.y.1);
            for i in 1..20 {
                for k in 1..20 {
                    let x = x0 + (x1 - x0) * (i as f64 + 0.37) / 20.0;
                    let y = y0 + (y1 - y0) * (k as f64 + 0.61) / 20.0;
                    let (dbx, dby) = match preset.initial {
                        InitialData::Ideal(f) => (f(x + h, y).b1 - f(x - h, y).b1, f(x, y + h).b2 - f(x, y - h).b2),
                        InitialData::ShallowWater(f) => (f(x + h, y).ha - f(x - h, y).ha, f(x, y + h).hb - f(x, y - h).hb),
                    };
                    assert!(dbx.abs() < 1e-8 && dby.abs() < 1e-8, "{name} at ({x}, {y})");
                }
            }
        }
    }

    #[test]
    fn initial_states_have_zero_divergence_pieces() {
        for name in PROBLEM_NAMES {
            let preset = make_problem(name).unwrap();
            let grid = preset.grid(16, 12).unwrap();
            let state = preset.initial_state(&grid);
            let n = state.ncomp();
            assert!(state.as_slice().iter().all(|v| v.is_finite()));
            assert!(state.component(n - 2).iter().all(|v| *v == 0.0));
            assert!(state.component(n - 1).iter().all(|v| *v == 0.0));
        }
    }
}

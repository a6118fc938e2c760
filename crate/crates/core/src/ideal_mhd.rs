//! Augmented Godunov-Powell ideal MHD.
//!
//! Conserved layout: `(ρ, ρu, ρv, ρw, b1, b2, b3, E, A, B)` with
//! `A = (b1)_x`, `B = (b2)_y`. Reconstruction layout:
//! `(ρ, u, v, w, b1, b2, b3, p, A, B)`.

use crate::limiter::ScalingFactor;
use crate::model::{Axis, SystemKind, SystemModel, Violation};

pub const NCOMP: usize = 10;
pub const NAMES: [&str; NCOMP] = ["rho", "mx", "my", "mz", "b1", "b2", "b3", "E", "A", "B"];

pub type IdealVector = [f64; NCOMP];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GasParams {
    pub gamma: f64,
}

impl GasParams {
    pub fn new(gamma: f64) -> Option<Self> {
        (gamma > 1.0 && gamma.is_finite()).then_some(GasParams { gamma })
    }
}

/// Cell averages in conserved form.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct IdealConserved {
    pub rho: f64,
    pub mx: f64,
    pub my: f64,
    pub mz: f64,
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
    pub energy: f64,
    pub div_x: f64,
    pub div_y: f64,
}

/// Primitive state; `div_x`, `div_y` are the averages `A`, `B`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct IdealPrimitive {
    pub rho: f64,
    pub u: f64,
    pub v: f64,
    pub w: f64,
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
    pub p: f64,
    pub div_x: f64,
    pub div_y: f64,
}

impl IdealConserved {
    pub fn to_array(&self) -> IdealVector {
        [self.rho, self.mx, self.my, self.mz, self.b1, self.b2, self.b3, self.energy, self.div_x, self.div_y]
    }

    pub fn from_array(a: &IdealVector) -> Self {
        IdealConserved {
            rho: a[0],
            mx: a[1],
            my: a[2],
            mz: a[3],
            b1: a[4],
            b2: a[5],
            b3: a[6],
            energy: a[7],
            div_x: a[8],
            div_y: a[9],
        }
    }
}

impl IdealPrimitive {
    pub fn to_array(&self) -> IdealVector {
        [self.rho, self.u, self.v, self.w, self.b1, self.b2, self.b3, self.p, self.div_x, self.div_y]
    }

    pub fn from_array(a: &IdealVector) -> Self {
        IdealPrimitive {
            rho: a[0],
            u: a[1],
            v: a[2],
            w: a[3],
            b1: a[4],
            b2: a[5],
            b3: a[6],
            p: a[7],
            div_x: a[8],
            div_y: a[9],
        }
    }

    fn velocity(&self) -> [f64; 3] {
        [self.u, self.v, self.w]
    }

    fn field(&self) -> [f64; 3] {
        [self.b1, self.b2, self.b3]
    }

    pub fn to_conserved(&self, gas: GasParams) -> IdealConserved {
        IdealConserved {
            rho: self.rho,
            mx: self.rho * self.u,
            my: self.rho * self.v,
            mz: self.rho * self.w,
            b1: self.b1,
            b2: self.b2,
            b3: self.b3,
            energy: total_energy(self, gas),
            div_x: self.div_x,
            div_y: self.div_y,
        }
    }
}

#[inline]
fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Equation of state: `E = p/(γ-1) + ρ|u|²/2 + |b|²/2`.
#[inline]
pub fn total_energy(prim: &IdealPrimitive, gas: GasParams) -> f64 {
    let u = prim.velocity();
    let b = prim.field();
    prim.p / (gas.gamma - 1.0) + 0.5 * prim.rho * dot(u, u) + 0.5 * dot(b, b)
}

pub fn primitives_from_averages(cons: &IdealConserved, gas: GasParams) -> Result<IdealPrimitive, Violation> {
    if !(cons.rho > 0.0) {
        return Err(Violation { quantity: "rho", value: cons.rho });
    }
    let u = cons.mx / cons.rho;
    let v = cons.my / cons.rho;
    let w = cons.mz / cons.rho;
    let kinetic = 0.5 * cons.rho * (u * u + v * v + w * w);
    let magnetic = 0.5 * (cons.b1 * cons.b1 + cons.b2 * cons.b2 + cons.b3 * cons.b3);
    let p = (gas.gamma - 1.0) * (cons.energy - kinetic - magnetic);
    if !(p > 0.0) {
        return Err(Violation { quantity: "p", value: p });
    }
    Ok(IdealPrimitive {
        rho: cons.rho,
        u,
        v,
        w,
        b1: cons.b1,
        b2: cons.b2,
        b3: cons.b3,
        p,
        div_x: cons.div_x,
        div_y: cons.div_y,
    })
}

/// Physical flux `F` (x) or `G` (y). `energy` is the point value of `E`;
/// `tangential_slope` is `u_y` for x and `v_x` for y.
#[inline]
pub fn flux(prim: &IdealPrimitive, energy: f64, axis: Axis, tangential_slope: f64) -> IdealVector {
    let IdealPrimitive { rho, u, v, w, b1, b2, b3, p, div_x, div_y } = *prim;
    let ptot = p + 0.5 * (b1 * b1 + b2 * b2 + b3 * b3);
    let ub = u * b1 + v * b2 + w * b3;
    match axis {
        Axis::X => [
            rho * u,
            rho * u * u + ptot - b1 * b1,
            rho * u * v - b1 * b2,
            rho * u * w - b1 * b3,
            0.0,
            u * b2 - v * b1,
            u * b3 - w * b1,
            (energy + ptot) * u - ub * b1,
            u * div_x - b2 * tangential_slope,
            u * div_y + b2 * tangential_slope,
        ],
        Axis::Y => [
            rho * v,
            rho * u * v - b1 * b2,
            rho * v * v + ptot - b2 * b2,
            rho * v * w - b2 * b3,
            v * b1 - u * b2,
            0.0,
            v * b3 - w * b2,
            (energy + ptot) * v - ub * b2,
            v * div_x + b1 * tangential_slope,
            v * div_y - b1 * tangential_slope,
        ],
    }
}

/// Fast magneto-acoustic speed normal to `axis`.
#[inline]
pub fn fast_speed(prim: &IdealPrimitive, gas: GasParams, axis: Axis) -> f64 {
    let gp = gas.gamma * prim.p;
    let b2 = prim.b1 * prim.b1 + prim.b2 * prim.b2 + prim.b3 * prim.b3;
    let bn = match axis {
        Axis::X => prim.b1,
        Axis::Y => prim.b2,
    };
    let sum = gp + b2;
    let mut radicand = sum * sum - 4.0 * gp * bn * bn;
    if radicand < 0.0 && radicand >= -1e-14 * sum * sum {
        radicand = 0.0;
    }
    ((sum + radicand.max(0.0).sqrt()) / (2.0 * prim.rho)).sqrt()
}

/// One-sided local speeds `(s_plus, s_minus)` with the Roe-averaged normal
/// velocity and the magnetic-jump correction.
#[inline]
pub fn speeds(minus: &IdealPrimitive, plus: &IdealPrimitive, gas: GasParams, axis: Axis) -> (f64, f64) {
    let (un_m, un_p) = match axis {
        Axis::X => (minus.u, plus.u),
        Axis::Y => (minus.v, plus.v),
    };
    let sr_m = minus.rho.sqrt();
    let sr_p = plus.rho.sqrt();
    let roe = (un_m * sr_m + un_p * sr_p) / (sr_m + sr_p);
    let db = [minus.b1 - plus.b1, minus.b2 - plus.b2, minus.b3 - plus.b3];
    let beta = dot(db, db).sqrt() / (sr_m + sr_p);
    let c_m = fast_speed(minus, gas, axis);
    let c_p = fast_speed(plus, gas, axis);
    let s_plus = (un_m.max(roe) + c_m + beta).max(un_p.max(roe) + c_p + beta).max(0.0);
    let s_minus = (un_m.min(roe) - c_m - beta).min(un_p.min(roe) - c_p - beta).min(0.0);
    (s_plus, s_minus)
}

/// Exact cell integral of the nonconservative product along `axis`.
///
/// `slopes` holds the cell's slopes of the reconstruction variables in that
/// direction; its normal magnetic entry is ignored and replaced by
/// `sigma * A` (x) or `sigma * B` (y).
pub fn noncons_cell(
    prim: &IdealPrimitive,
    slopes: &IdealPrimitive,
    sigma: ScalingFactor,
    delta: f64,
    axis: Axis,
) -> IdealVector {
    let u = prim.velocity();
    let b = prim.field();
    let (d, second_moment) = match axis {
        Axis::X => {
            let d = sigma.value() * prim.div_x;
            (d, slopes.u * d + slopes.v * slopes.b2 + slopes.w * slopes.b3)
        }
        Axis::Y => {
            let d = sigma.value() * prim.div_y;
            (d, slopes.u * slopes.b1 + slopes.v * d + slopes.w * slopes.b3)
        }
    };
    if d == 0.0 {
        return [0.0; NCOMP];
    }
    let scale = d * delta;
    let energy = (dot(u, b) + delta * delta / 12.0 * second_moment) * scale;
    [
        0.0,
        -b[0] * scale,
        -b[1] * scale,
        -b[2] * scale,
        -u[0] * scale,
        -u[1] * scale,
        -u[2] * scale,
        -energy,
        0.0,
        0.0,
    ]
}

/// Exact integral of the nonconservative product along the linear path
/// between the two interface states.
pub fn noncons_interface(minus: &IdealPrimitive, plus: &IdealPrimitive, axis: Axis) -> IdealVector {
    let jump = match axis {
        Axis::X => plus.b1 - minus.b1,
        Axis::Y => plus.b2 - minus.b2,
    };
    if jump == 0.0 {
        return [0.0; NCOMP];
    }
    let (um, up) = (minus.velocity(), plus.velocity());
    let (bm, bp) = (minus.field(), plus.field());
    let half = 0.5 * jump;
    let energy = (2.0 * dot(um, bm) + dot(um, bp) + dot(up, bm) + 2.0 * dot(up, bp)) / 6.0 * jump;
    [
        0.0,
        -(bm[0] + bp[0]) * half,
        -(bm[1] + bp[1]) * half,
        -(bm[2] + bp[2]) * half,
        -(um[0] + up[0]) * half,
        -(um[1] + up[1]) * half,
        -(um[2] + up[2]) * half,
        -energy,
        0.0,
        0.0,
    ]
}

/// The ideal MHD system for the generic scheme.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IdealMhd {
    pub gas: GasParams,
}

impl IdealMhd {
    pub fn new(gamma: f64) -> Self {
        IdealMhd { gas: GasParams { gamma } }
    }
}

impl SystemModel for IdealMhd {
    type Vec = IdealVector;

    const NCOMP: usize = NCOMP;
    const NAMES: &'static [&'static str] = &NAMES;
    const BX: usize = 4;
    const BY: usize = 5;
    const A: usize = 8;
    const B: usize = 9;

    fn kind(&self) -> SystemKind {
        SystemKind::IdealMhd
    }

    fn parameter(&self) -> (&'static str, f64) {
        ("gamma", self.gas.gamma)
    }

    #[inline]
    fn reconstruction_vars(&self, cons: &IdealVector) -> Result<IdealVector, Violation> {
        primitives_from_averages(&IdealConserved::from_array(cons), self.gas).map(|p| p.to_array())
    }

    #[inline]
    fn check_face(&self, w: &IdealVector) -> Result<(), Violation> {
        if !(w[0] > 0.0) {
            Err(Violation { quantity: "rho (interface)", value: w[0] })
        } else if !(w[7] > 0.0) {
            Err(Violation { quantity: "p (interface)", value: w[7] })
        } else {
            Ok(())
        }
    }

    #[inline]
    fn face_conserved(&self, w: &IdealVector) -> IdealVector {
        IdealPrimitive::from_array(w).to_conserved(self.gas).to_array()
    }

    #[inline]
    fn flux(&self, w: &IdealVector, cons: &IdealVector, axis: Axis, tangential: f64) -> IdealVector {
        flux(&IdealPrimitive::from_array(w), cons[7], axis, tangential)
    }

    #[inline]
    fn speeds(&self, minus: &IdealVector, plus: &IdealVector, axis: Axis) -> (f64, f64) {
        speeds(&IdealPrimitive::from_array(minus), &IdealPrimitive::from_array(plus), self.gas, axis)
    }

    #[inline]
    fn noncons_cell(&self, w: &IdealVector, slopes: &IdealVector, axis: Axis, delta: f64) -> Result<IdealVector, Violation> {
        // The scheme passes sigma * A already stored at the normal slot, so
        // recover it by treating sigma as one and A as that slope.
        let mut prim = IdealPrimitive::from_array(w);
        match axis {
            Axis::X => prim.div_x = slopes[4],
            Axis::Y => prim.div_y = slopes[5],
        }
        Ok(noncons_cell(&prim, &IdealPrimitive::from_array(slopes), ScalingFactor::ONE, delta, axis))
    }

    #[inline]
    fn noncons_interface(&self, minus: &IdealVector, plus: &IdealVector, axis: Axis) -> IdealVector {
        noncons_interface(&IdealPrimitive::from_array(minus), &IdealPrimitive::from_array(plus), axis)
    }

    fn pressure(&self, cons: &IdealVector) -> Option<f64> {
        let c = IdealConserved::from_array(cons);
        let kinetic = 0.5 * (c.mx * c.mx + c.my * c.my + c.mz * c.mz) / c.rho;
        let magnetic = 0.5 * (c.b1 * c.b1 + c.b2 * c.b2 + c.b3 * c.b3);
        Some((self.gas.gamma - 1.0) * (c.energy - kinetic - magnetic))
    }
}

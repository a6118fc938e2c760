//! Augmented Godunov-Powell shallow-water MHD.
//!
//! Conserved layout: `(h, hu, hv, ha, hb, A, B)` with `A = (ha)_x`,
//! `B = (hb)_y`. Reconstruction layout: `(h, u, v, ha, hb, A, B)`; the
//! reduced field `(a, b)` is always derived as `(ha)/h`, `(hb)/h`.

use crate::limiter::ScalingFactor;
use crate::model::{Axis, SystemKind, SystemModel, Violation};

pub const NCOMP: usize = 7;
pub const NAMES: [&str; NCOMP] = ["h", "hu", "hv", "ha", "hb", "A", "B"];

/// Thickness below which the solver gives up.
pub const H_FLOOR: f64 = 1e-12;

pub type SwVector = [f64; NCOMP];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SwParams {
    pub g: f64,
}

impl Default for SwParams {
    fn default() -> Self {
        SwParams { g: 1.0 }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SwConserved {
    pub h: f64,
    pub hu: f64,
    pub hv: f64,
    pub ha: f64,
    pub hb: f64,
    pub div_x: f64,
    pub div_y: f64,
}

/// Reconstruction variables.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SwPrimitive {
    pub h: f64,
    pub u: f64,
    pub v: f64,
    pub ha: f64,
    pub hb: f64,
    pub div_x: f64,
    pub div_y: f64,
}

impl SwConserved {
    pub fn to_array(&self) -> SwVector {
        [self.h, self.hu, self.hv, self.ha, self.hb, self.div_x, self.div_y]
    }

    pub fn from_array(a: &SwVector) -> Self {
        SwConserved { h: a[0], hu: a[1], hv: a[2], ha: a[3], hb: a[4], div_x: a[5], div_y: a[6] }
    }

    pub fn to_primitive(&self) -> Result<SwPrimitive, Violation> {
        check_thickness(self.h, "h")?;
        Ok(SwPrimitive {
            h: self.h,
            u: self.hu / self.h,
            v: self.hv / self.h,
            ha: self.ha,
            hb: self.hb,
            div_x: self.div_x,
            div_y: self.div_y,
        })
    }
}

impl SwPrimitive {
    pub fn to_array(&self) -> SwVector {
        [self.h, self.u, self.v, self.ha, self.hb, self.div_x, self.div_y]
    }

    pub fn from_array(a: &SwVector) -> Self {
        SwPrimitive { h: a[0], u: a[1], v: a[2], ha: a[3], hb: a[4], div_x: a[5], div_y: a[6] }
    }

    pub fn to_conserved(&self) -> SwConserved {
        SwConserved {
            h: self.h,
            hu: self.h * self.u,
            hv: self.h * self.v,
            ha: self.ha,
            hb: self.hb,
            div_x: self.div_x,
            div_y: self.div_y,
        }
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.ha / self.h
    }

    #[inline]
    pub fn b(&self) -> f64 {
        self.hb / self.h
    }
}

#[inline]
fn check_thickness(h: f64, quantity: &'static str) -> Result<(), Violation> {
    if h > H_FLOOR {
        Ok(())
    } else {
        Err(Violation { quantity, value: h })
    }
}

/// Physical flux. `tangential_slope` is `u_y` for x and `v_x` for y.
#[inline]
pub fn sw_flux(prim: &SwPrimitive, params: SwParams, axis: Axis, tangential_slope: f64) -> Result<SwVector, Violation> {
    check_thickness(prim.h, "h")?;
    let SwPrimitive { h, u, v, ha, hb, div_x, div_y } = *prim;
    let a = ha / h;
    let b = hb / h;
    let hydro = 0.5 * params.g * h * h;
    Ok(match axis {
        Axis::X => [
            h * u,
            h * u * u + hydro - ha * a,
            h * u * v - ha * b,
            0.0,
            hb * u - ha * v,
            u * div_x - hb * tangential_slope,
            u * div_y + hb * tangential_slope,
        ],
        Axis::Y => [
            h * v,
            h * u * v - ha * b,
            h * v * v + hydro - hb * b,
            ha * v - hb * u,
            0.0,
            v * div_x + ha * tangential_slope,
            v * div_y - ha * tangential_slope,
        ],
    })
}

/// Eigenvalue-based one-sided speeds `(s_plus, s_minus)`.
#[inline]
pub fn sw_speeds(minus: &SwPrimitive, plus: &SwPrimitive, params: SwParams, axis: Axis) -> (f64, f64) {
    let side = |s: &SwPrimitive| match axis {
        Axis::X => (s.u, (s.a() * s.a() + params.g * s.h).sqrt()),
        Axis::Y => (s.v, (s.b() * s.b() + params.g * s.h).sqrt()),
    };
    let (um, cm) = side(minus);
    let (up, cp) = side(plus);
    ((um + cm).max(up + cp).max(0.0), (um - cm).min(up - cp).min(0.0))
}

/// `∫ (c + d ξ) / (h + e ξ) dξ` over `ξ ∈ [-len/2, len/2]`, for `h > 0` and
/// `|e| len < 2h`.
///
/// The logarithm is expanded as `ln(h⁺/h⁻) = 2 atanh(r)` with
/// `r = e len / (2h)`, which removes the cancellation between the
/// logarithmic and linear parts; at `e = 0` the result is exactly
/// `c len / h`.
pub fn linear_ratio_integral(c: f64, d: f64, h: f64, e: f64, len: f64) -> f64 {
    let r = e * len / (2.0 * h);
    // s = atanh(r)/r - 1, t = s / r
    let (s, t) = if r.abs() < 0.05 {
        let r2 = r * r;
        // odd = r^(2n-1)
        let mut odd = r;
        let mut s = 0.0;
        let mut t = 0.0;
        for n in 1..12 {
            let k = (2 * n + 1) as f64;
            t += odd / k;
            s += odd * r / k;
            odd *= r2;
            if odd.abs() < 1e-20 {
                break;
            }
        }
        (s, t)
    } else {
        let s = r.atanh() / r - 1.0;
        (s, s / r)
    };
    c * len / h * (1.0 + s) - d * len * len / (2.0 * h) * t
}

/// Exact cell integral of the nonconservative product along `axis`.
///
/// `slopes` are the cell's slopes in that direction; the normal magnetic
/// slope is replaced by `sigma * A` (x) or `sigma * B` (y).
pub fn sw_noncons_cell(
    prim: &SwPrimitive,
    slopes: &SwPrimitive,
    sigma: ScalingFactor,
    delta: f64,
    axis: Axis,
) -> Result<SwVector, Violation> {
    let (d, ha_slope, hb_slope) = match axis {
        Axis::X => {
            let d = sigma.value() * prim.div_x;
            (d, d, slopes.hb)
        }
        Axis::Y => {
            let d = sigma.value() * prim.div_y;
            (d, slopes.ha, d)
        }
    };
    if d == 0.0 {
        return Ok([0.0; NCOMP]);
    }
    let half = 0.5 * slopes.h * delta;
    check_thickness(prim.h + half, "h (interface)")?;
    check_thickness(prim.h - half, "h (interface)")?;
    let int_a = linear_ratio_integral(prim.ha, ha_slope, prim.h, slopes.h, delta);
    let int_b = linear_ratio_integral(prim.hb, hb_slope, prim.h, slopes.h, delta);
    let scale = d * delta;
    Ok([0.0, -d * int_a, -d * int_b, -prim.u * scale, -prim.v * scale, 0.0, 0.0])
}

/// Exact path integral across an interface along the linear path in the
/// reconstruction variables.
pub fn sw_noncons_interface(minus: &SwPrimitive, plus: &SwPrimitive, axis: Axis) -> Result<SwVector, Violation> {
    check_thickness(minus.h, "h (interface)")?;
    check_thickness(plus.h, "h (interface)")?;
    let jump = match axis {
        Axis::X => plus.ha - minus.ha,
        Axis::Y => plus.hb - minus.hb,
    };
    if jump == 0.0 {
        return Ok([0.0; NCOMP]);
    }
    let dh = plus.h - minus.h;
    let h_mid = 0.5 * (minus.h + plus.h);
    let dha = plus.ha - minus.ha;
    let dhb = plus.hb - minus.hb;
    let int_a = linear_ratio_integral(0.5 * (minus.ha + plus.ha), dha, h_mid, dh, 1.0);
    let int_b = linear_ratio_integral(0.5 * (minus.hb + plus.hb), dhb, h_mid, dh, 1.0);
    let half = 0.5 * jump;
    Ok([
        0.0,
        -jump * int_a,
        -jump * int_b,
        -(minus.u + plus.u) * half,
        -(minus.v + plus.v) * half,
        0.0,
        0.0,
    ])
}

/// The shallow-water MHD system for the generic scheme.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SwMhd {
    pub params: SwParams,
}

impl SwMhd {
    pub fn new(g: f64) -> Self {
        SwMhd { params: SwParams { g } }
    }
}

impl SystemModel for SwMhd {
    type Vec = SwVector;

    const NCOMP: usize = NCOMP;
    const NAMES: &'static [&'static str] = &NAMES;
    const BX: usize = 3;
    const BY: usize = 4;
    const A: usize = 5;
    const B: usize = 6;

    fn kind(&self) -> SystemKind {
        SystemKind::ShallowWaterMhd
    }

    fn parameter(&self) -> (&'static str, f64) {
        ("g", self.params.g)
    }

    #[inline]
    fn reconstruction_vars(&self, cons: &SwVector) -> Result<SwVector, Violation> {
        SwConserved::from_array(cons).to_primitive().map(|p| p.to_array())
    }

    #[inline]
    fn check_face(&self, w: &SwVector) -> Result<(), Violation> {
        check_thickness(w[0], "h (interface)")
    }

    #[inline]
    fn face_conserved(&self, w: &SwVector) -> SwVector {
        SwPrimitive::from_array(w).to_conserved().to_array()
    }

    #[inline]
    fn flux(&self, w: &SwVector, _cons: &SwVector, axis: Axis, tangential: f64) -> SwVector {
        let prim = SwPrimitive::from_array(w);
        // faces are checked before fluxes are formed
        sw_flux(&prim, self.params, axis, tangential).unwrap_or([f64::NAN; NCOMP])
    }

    #[inline]
    fn speeds(&self, minus: &SwVector, plus: &SwVector, axis: Axis) -> (f64, f64) {
        sw_speeds(&SwPrimitive::from_array(minus), &SwPrimitive::from_array(plus), self.params, axis)
    }

    #[inline]
    fn noncons_cell(&self, w: &SwVector, slopes: &SwVector, axis: Axis, delta: f64) -> Result<SwVector, Violation> {
        let mut prim = SwPrimitive::from_array(w);
        match axis {
            Axis::X => prim.div_x = slopes[3],
            Axis::Y => prim.div_y = slopes[4],
        }
        sw_noncons_cell(&prim, &SwPrimitive::from_array(slopes), ScalingFactor::ONE, delta, axis)
    }

    #[inline]
    fn noncons_interface(&self, minus: &SwVector, plus: &SwVector, axis: Axis) -> SwVector {
        sw_noncons_interface(&SwPrimitive::from_array(minus), &SwPrimitive::from_array(plus), axis)
            .unwrap_or([f64::NAN; NCOMP])
    }
}

//! Numerical-quadrature oracles for the nonconservative cell and interface
//! integrals of both systems.

use pccu_core::ideal_mhd::{self, IdealPrimitive};
use pccu_core::limiter::ScalingFactor;
use pccu_core::model::Axis;
use pccu_core::swmhd::{self, SwPrimitive};
use rand::rngs::StdRng;
use rand::Rng;

/// Integrates each component of `f` over `[a, b]` and returns the
/// integrals together with the integrals of their absolute values.
fn integrate_components<const N: usize>(f: impl Fn(f64) -> [f64; N], a: f64, b: f64) -> ([f64; N], [f64; N]) {
    let mut value = [0.0; N];
    let mut magnitude = [0.0; N];
    for c in 0..N {
        let coarse = quadrature::double_exponential::integrate(|x| f(x)[c].abs(), a, b, 1e-12);
        magnitude[c] = coarse.integral;
        if magnitude[c] == 0.0 {
            continue;
        }
        let tol = 1e-15 * magnitude[c];
        value[c] = quadrature::double_exponential::integrate(|x| f(x)[c], a, b, tol).integral;
    }
    (value, magnitude)
}

fn lerp(a: f64, b: f64, s: f64) -> f64 {
    a + s * (b - a)
}

/// Worst `|closed form - quadrature| / integral of |integrand|` over a set
/// of checks, with the number of compared integrals.
#[derive(Clone, Copy, Debug, Default)]
pub struct OracleStats {
    pub compared: usize,
    pub worst: f64,
}

impl OracleStats {
    fn absorb<const N: usize>(&mut self, got: &[f64; N], oracle: &([f64; N], [f64; N])) {
        for c in 0..N {
            let (value, magnitude) = (oracle.0[c], oracle.1[c]);
            if magnitude == 0.0 {
                assert_eq!(got[c], 0.0, "component {c} should vanish");
                continue;
            }
            self.worst = self.worst.max((got[c] - value).abs() / magnitude);
            self.compared += 1;
        }
    }
}

fn ideal_state(rng: &mut StdRng) -> IdealPrimitive {
    IdealPrimitive {
        rho: rng.gen_range(0.05..10.0),
        u: rng.gen_range(-3.0..3.0),
        v: rng.gen_range(-3.0..3.0),
        w: rng.gen_range(-3.0..3.0),
        b1: rng.gen_range(-5.0..5.0),
        b2: rng.gen_range(-5.0..5.0),
        b3: rng.gen_range(-5.0..5.0),
        p: rng.gen_range(0.01..10.0),
        div_x: 0.0,
        div_y: 0.0,
    }
}

fn ideal_vars(w: &IdealPrimitive) -> ([f64; 3], [f64; 3]) {
    ([w.u, w.v, w.w], [w.b1, w.b2, w.b3])
}

fn ideal_integrand(w: &IdealPrimitive, normal_rate: f64) -> [f64; 10] {
    let (u, b) = ideal_vars(w);
    let ub = u[0] * b[0] + u[1] * b[1] + u[2] * b[2];
    let r = -normal_rate;
    [0.0, r * b[0], r * b[1], r * b[2], r * u[0], r * u[1], r * u[2], r * ub, 0.0, 0.0]
}

fn shift_ideal(w: &IdealPrimitive, s: &IdealPrimitive, xi: f64) -> IdealPrimitive {
    IdealPrimitive {
        rho: w.rho + xi * s.rho,
        u: w.u + xi * s.u,
        v: w.v + xi * s.v,
        w: w.w + xi * s.w,
        b1: w.b1 + xi * s.b1,
        b2: w.b2 + xi * s.b2,
        b3: w.b3 + xi * s.b3,
        p: w.p + xi * s.p,
        div_x: w.div_x,
        div_y: w.div_y,
    }
}

/// Ideal MHD: `cases` random states, each checked for the x and y cell
/// terms and the x and y interface terms.
pub fn ideal_mhd(rng: &mut StdRng, cases: usize) -> OracleStats {
    let mut stats = OracleStats::default();
    for _ in 0..cases {
        let delta = rng.gen_range(1e-3..0.5);
        let d = rng.gen_range(-20.0..20.0);
        let mut center = ideal_state(rng);
        center.div_x = d;
        center.div_y = -d;
        let slopes = ideal_state(rng);
        for axis in [Axis::X, Axis::Y] {
            let mut s = slopes;
            match axis {
                Axis::X => s.b1 = d,
                Axis::Y => s.b2 = -d,
            }
            let got = ideal_mhd::noncons_cell(&center, &s, ScalingFactor::ONE, delta, axis);
            let rate = match axis {
                Axis::X => d,
                Axis::Y => -d,
            };
            let oracle = integrate_components(|xi| ideal_integrand(&shift_ideal(&center, &s, xi), rate), -0.5 * delta, 0.5 * delta);
            stats.absorb(&got, &oracle);

            let minus = ideal_state(rng);
            let mut plus = ideal_state(rng);
            if rng.gen_bool(0.2) {
                plus.b1 = minus.b1 + rng.gen_range(-1e-6..1e-6);
                plus.b2 = minus.b2 + rng.gen_range(-1e-6..1e-6);
            }
            let got = ideal_mhd::noncons_interface(&minus, &plus, axis);
            let jump = match axis {
                Axis::X => plus.b1 - minus.b1,
                Axis::Y => plus.b2 - minus.b2,
            };
            let path = |t: f64| IdealPrimitive {
                rho: lerp(minus.rho, plus.rho, t),
                u: lerp(minus.u, plus.u, t),
                v: lerp(minus.v, plus.v, t),
                w: lerp(minus.w, plus.w, t),
                b1: lerp(minus.b1, plus.b1, t),
                b2: lerp(minus.b2, plus.b2, t),
                b3: lerp(minus.b3, plus.b3, t),
                p: lerp(minus.p, plus.p, t),
                div_x: 0.0,
                div_y: 0.0,
            };
            let oracle = integrate_components(|t| ideal_integrand(&path(t), jump), 0.0, 1.0);
            stats.absorb(&got, &oracle);
        }
    }
    stats
}

fn sw_integrand(w: &SwPrimitive, normal_rate: f64) -> [f64; 7] {
    let r = -normal_rate;
    [0.0, r * w.ha / w.h, r * w.hb / w.h, r * w.u, r * w.v, 0.0, 0.0]
}

/// Thickness pairs covering equal values, tiny and moderate jumps, and
/// ratios up to about `e^4`.
fn thickness_pair(rng: &mut StdRng) -> (f64, f64) {
    let h = rng.gen_range(0.01..10.0);
    let other = match rng.gen_range(0..5) {
        0 => h,
        1 => h * (1.0 + rng.gen_range(-1e-9..1e-9)),
        2 => h * (1.0 + rng.gen_range(-0.12..0.12)),
        3 => h * (1.0 + rng.gen_range(-0.2..0.2)),
        _ => h * rng.gen_range(-4.0f64..4.0).exp(),
    };
    (h, other)
}

fn sw_state(rng: &mut StdRng, h: f64) -> SwPrimitive {
    SwPrimitive {
        h,
        u: rng.gen_range(-3.0..3.0),
        v: rng.gen_range(-3.0..3.0),
        ha: rng.gen_range(-5.0..5.0),
        hb: rng.gen_range(-5.0..5.0),
        div_x: 0.0,
        div_y: 0.0,
    }
}

/// Shallow-water MHD, including the logarithmic integrals.
pub fn shallow_water(rng: &mut StdRng, cases: usize) -> OracleStats {
    let mut stats = OracleStats::default();
    for _ in 0..cases {
        let delta = rng.gen_range(1e-3..0.5);
        let d = rng.gen_range(-20.0..20.0);
        let (h, h_other) = thickness_pair(rng);
        let mut center = sw_state(rng, h);
        center.div_x = d;
        center.div_y = -d;
        // the slope keeps both cell faces at positive thickness
        let h_slope = (h_other - h).clamp(-0.999 * h, 0.999 * h) * 2.0 / delta;
        let mut slopes = sw_state(rng, h_slope);
        for axis in [Axis::X, Axis::Y] {
            let rate = match axis {
                Axis::X => {
                    slopes.ha = d;
                    d
                }
                Axis::Y => {
                    slopes.hb = -d;
                    -d
                }
            };
            let got = swmhd::sw_noncons_cell(&center, &slopes, ScalingFactor::ONE, delta, axis).expect("admissible cell");
            let at = |xi: f64| SwPrimitive {
                h: center.h + xi * slopes.h,
                u: center.u + xi * slopes.u,
                v: center.v + xi * slopes.v,
                ha: center.ha + xi * slopes.ha,
                hb: center.hb + xi * slopes.hb,
                div_x: 0.0,
                div_y: 0.0,
            };
            let oracle = integrate_components(|xi| sw_integrand(&at(xi), rate), -0.5 * delta, 0.5 * delta);
            stats.absorb(&got, &oracle);

            let (hm, hp) = thickness_pair(rng);
            let minus = sw_state(rng, hm);
            let mut plus = sw_state(rng, hp);
            if rng.gen_bool(0.2) {
                plus.ha = minus.ha + rng.gen_range(-1e-6..1e-6);
                plus.hb = minus.hb + rng.gen_range(-1e-6..1e-6);
            }
            let got = swmhd::sw_noncons_interface(&minus, &plus, axis).expect("admissible interface");
            let jump = match axis {
                Axis::X => plus.ha - minus.ha,
                Axis::Y => plus.hb - minus.hb,
            };
            let path = |t: f64| SwPrimitive {
                h: lerp(minus.h, plus.h, t),
                u: lerp(minus.u, plus.u, t),
                v: lerp(minus.v, plus.v, t),
                ha: lerp(minus.ha, plus.ha, t),
                hb: lerp(minus.hb, plus.hb, t),
                div_x: 0.0,
                div_y: 0.0,
            };
            let oracle = integrate_components(|t| sw_integrand(&path(t), jump), 0.0, 1.0);
            stats.absorb(&got, &oracle);
        }
    }
    stats
}

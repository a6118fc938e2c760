//! Minmod algebra and the slope machinery of the piecewise linear
//! reconstruction, including the scaling that keeps the magnetic normal
//! slopes locally divergence-free.

use crate::error::{Result, SolverError};

/// Default generalized-minmod parameter.
pub const DEFAULT_THETA: f64 = 1.3;

/// Per-cell x- and y-slopes of one reconstruction variable.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SlopePair {
    pub sx: f64,
    pub sy: f64,
}

/// Scaling factor in `[0, 1]` applied to the cell averages `A`, `B` when
/// they are used as the normal magnetic slopes.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct ScalingFactor(pub(crate) f64);

impl ScalingFactor {
    pub const ONE: ScalingFactor = ScalingFactor(1.0);

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Minmod of an arbitrary number of arguments.
pub fn minmod(args: &[f64]) -> Result<f64> {
    let (first, rest) = args
        .split_first()
        .ok_or_else(|| SolverError::Usage("minmod needs at least one argument".into()))?;
    if *first > 0.0 && rest.iter().all(|a| *a > 0.0) {
        Ok(args.iter().copied().fold(f64::INFINITY, f64::min))
    } else if *first < 0.0 && rest.iter().all(|a| *a < 0.0) {
        Ok(args.iter().copied().fold(f64::NEG_INFINITY, f64::max))
    } else {
        Ok(0.0)
    }
}

#[inline]
pub fn minmod3(a: f64, b: f64, c: f64) -> f64 {
    if a > 0.0 && b > 0.0 && c > 0.0 {
        a.min(b).min(c)
    } else if a < 0.0 && b < 0.0 && c < 0.0 {
        a.max(b).max(c)
    } else {
        0.0
    }
}

/// Generalized minmod slope from three consecutive values spaced `delta` apart.
#[inline]
pub fn gm_slope(w_prev: f64, w_c: f64, w_next: f64, theta: f64, delta: f64) -> f64 {
    minmod3(
        theta * (w_c - w_prev) / delta,
        (w_next - w_prev) / (2.0 * delta),
        theta * (w_next - w_c) / delta,
    )
}

/// Scaling of the divergence-carrying slopes.
///
/// `a_bar`, `b_bar` are the cell averages of the two divergence pieces and
/// `hat_ax`, `hat_by` the generalized-minmod slopes of the normal magnetic
/// variables in their own directions. A branch whose average is below
/// `1e-14 * max(1, |inputs|)` is skipped, since its scaled slope is zero to
/// machine precision anyway.
#[inline]
pub fn df_scaling(a_bar: f64, b_bar: f64, hat_ax: f64, hat_by: f64) -> ScalingFactor {
    let eps = 1e-14 * 1f64.max(a_bar.abs()).max(b_bar.abs()).max(hat_ax.abs()).max(hat_by.abs());
    let branch = |avg: f64, hat: f64| {
        if avg.abs() <= eps {
            1.0
        } else if hat * avg > 0.0 {
            (hat / avg).min(1.0)
        } else {
            0.0
        }
    };
    let sigma = branch(a_bar, hat_ax).min(branch(b_bar, hat_by)).min(1.0);
    ScalingFactor(sigma)
}

/// Point values of the linear reconstruction at the east, west, north and
/// south interfaces of a cell.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FaceValues {
    pub east: f64,
    pub west: f64,
    pub north: f64,
    pub south: f64,
}

#[inline]
pub fn interface_values(w_c: f64, slopes: SlopePair, dx: f64, dy: f64) -> FaceValues {
    let hx = slopes.sx * (0.5 * dx);
    let hy = slopes.sy * (0.5 * dy);
    FaceValues { east: w_c + hx, west: w_c - hx, north: w_c + hy, south: w_c - hy }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn minmod_examples() {
        assert_eq!(minmod(&[1.0, 2.0, 3.0]).unwrap(), 1.0);
        assert_eq!(minmod(&[-1.0, 2.0, 3.0]).unwrap(), 0.0);
        assert_eq!(minmod(&[-2.0, -3.0, -1.0]).unwrap(), -1.0);
        assert_eq!(minmod(&[0.0, 1.0]).unwrap(), 0.0);
        assert_eq!(minmod(&[4.0]).unwrap(), 4.0);
        assert!(matches!(minmod(&[]), Err(SolverError::Usage(_))));
    }

    #[test]
    fn gm_slope_examples() {
        assert_eq!(gm_slope(0.0, 1.0, 2.0, 1.3, 1.0), 1.0);
        assert_eq!(gm_slope(0.0, 1.0, 0.0, 1.3, 1.0), 0.0);
        assert!((gm_slope(0.0, 1.0, 3.0, 1.3, 1.0) - 1.3).abs() < 1e-15);
    }

    #[test]
    fn scaling_examples() {
        assert_eq!(df_scaling(0.3, -0.3, 0.3, -0.3).value(), 1.0);
        assert_eq!(df_scaling(0.3, -0.3, -0.1, -0.3).value(), 0.0);
        assert_eq!(df_scaling(0.4, -0.4, 0.2, -0.4).value(), 0.5);
        // vanishing averages leave the slope untouched (it is zero anyway)
        assert_eq!(df_scaling(0.0, 0.0, 0.7, -2.0).value(), 1.0);
    }

    #[test]
    fn interface_value_examples() {
        let f = interface_values(1.0, SlopePair::default(), 0.3, 0.7);
        assert_eq!((f.east, f.west, f.north, f.south), (1.0, 1.0, 1.0, 1.0));
        let f = interface_values(0.0, SlopePair { sx: 2.0, sy: 0.0 }, 1.0, 1.0);
        assert_eq!((f.east, f.west, f.north, f.south), (1.0, -1.0, 0.0, 0.0));
        let f = interface_values(5.0, SlopePair { sx: -4.0, sy: 2.0 }, 0.5, 0.25);
        assert_eq!((f.east, f.west, f.north, f.south), (4.0, 6.0, 5.25, 4.75));
    }

    proptest! {
        #[test]
        fn minmod_magnitude_and_homogeneity(
            args in prop::collection::vec(-1e3f64..1e3, 1..6),
            c in 1e-3f64..1e3,
        ) {
            let m = minmod(&args).unwrap();
            let smallest = args.iter().map(|a| a.abs()).fold(f64::INFINITY, f64::min);
            prop_assert!(m.abs() <= smallest);
            let scaled: Vec<f64> = args.iter().map(|a| c * a).collect();
            let ms = minmod(&scaled).unwrap();
            prop_assert!((ms - c * m).abs() <= 1e-12 * (1.0 + (c * m).abs()));
        }

        #[test]
        fn minmod3_agrees_with_general(a in -5.0f64..5.0, b in -5.0f64..5.0, c in -5.0f64..5.0) {
            prop_assert_eq!(minmod3(a, b, c), minmod(&[a, b, c]).unwrap());
        }

        #[test]
        fn gm_slope_is_exact_on_linear_data(
            alpha in -10.0f64..10.0,
            beta in -10.0f64..10.0,
            x0 in -5.0f64..5.0,
            delta in 1e-3f64..1.0,
            theta in 1.0f64..2.0,
        ) {
            let w = |x: f64| alpha + beta * x;
            let s = gm_slope(w(x0 - delta), w(x0), w(x0 + delta), theta, delta);
            prop_assert!((s - beta).abs() <= 1e-9 * (1.0 + beta.abs() + alpha.abs() / delta));
        }

        #[test]
        fn scaling_bounds(
            a in -10.0f64..10.0,
            hat_a in -10.0f64..10.0,
            hat_b in -10.0f64..10.0,
        ) {
            let b = -a;
            let sigma = df_scaling(a, b, hat_a, hat_b).value();
            prop_assert!((0.0..=1.0).contains(&sigma));
            // scaled slopes still cancel
            prop_assert_eq!(sigma * a + sigma * b, 0.0);
            if hat_a * a > 0.0 {
                prop_assert!((sigma * a).abs() <= hat_a.abs() * (1.0 + 1e-15));
            }
            if hat_b * b > 0.0 {
                prop_assert!((sigma * b).abs() <= hat_b.abs() * (1.0 + 1e-15));
            }
        }

        #[test]
        fn reconstruction_is_conservative(w in -10.0f64..10.0, sx in -10.0f64..10.0, dx in 1e-3f64..1.0) {
            let f = interface_values(w, SlopePair { sx, sy: 0.0 }, dx, 1.0);
            prop_assert!((0.5 * (f.east + f.west) - w).abs() <= 1e-14 * (1.0 + w.abs() + sx.abs()));
        }
    }
}

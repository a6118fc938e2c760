//! Common interface of the two physical systems driven by the PCCU scheme.

use std::fmt::Debug;
use std::ops::{Index, IndexMut};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SystemKind {
    IdealMhd,
    ShallowWaterMhd,
}

impl SystemKind {
    pub fn name(self) -> &'static str {
        match self {
            SystemKind::IdealMhd => "ideal",
            SystemKind::ShallowWaterMhd => "swmhd",
        }
    }
}

/// A quantity that must stay positive but does not.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Violation {
    pub quantity: &'static str,
    pub value: f64,
}

/// Fixed-size component vector of a system.
pub trait Vector:
    Copy + Default + Debug + Send + Sync + AsRef<[f64]> + AsMut<[f64]> + Index<usize, Output = f64> + IndexMut<usize>
{
}

impl<const N: usize> Vector for [f64; N] where [f64; N]: Default {}

/// Flux, wave speeds and nonconservative terms of an augmented
/// Godunov-Powell system.
///
/// All vectors use one canonical layout per system. Cell averages are the
/// conserved variables `U`; everything else (slopes, interface values,
/// path endpoints) is expressed in the reconstruction variables `W`, whose
/// magnetic normal components and divergence pieces sit at the same indices
/// as in `U`.
pub trait SystemModel: Send + Sync {
    type Vec: Vector;

    const NCOMP: usize;
    /// Conserved component names in storage order.
    const NAMES: &'static [&'static str];
    /// Index of the magnetic variable whose x-derivative is `A`.
    const BX: usize;
    /// Index of the magnetic variable whose y-derivative is `B`.
    const BY: usize;
    const A: usize;
    const B: usize;

    fn kind(&self) -> SystemKind;

    /// `("gamma", γ)` or `("g", g)`.
    fn parameter(&self) -> (&'static str, f64);

    /// Cell-center reconstruction variables from cell averages.
    fn reconstruction_vars(&self, cons: &Self::Vec) -> Result<Self::Vec, Violation>;

    /// Rejects interface values outside the admissible set.
    fn check_face(&self, w: &Self::Vec) -> Result<(), Violation>;

    /// Conserved vector at an interface point.
    fn face_conserved(&self, w: &Self::Vec) -> Self::Vec;

    /// Physical flux in `axis`. `tangential` is `u_y` for x and `v_x` for y.
    fn flux(&self, w: &Self::Vec, cons: &Self::Vec, axis: Axis, tangential: f64) -> Self::Vec;

    /// One-sided speeds `(s_plus, s_minus)` at an interface.
    fn speeds(&self, minus: &Self::Vec, plus: &Self::Vec, axis: Axis) -> (f64, f64);

    /// Cell integral of the nonconservative product along `axis`.
    ///
    /// `slopes` are the cell's slopes in that direction with the scaled
    /// divergence slope already stored at the normal magnetic index.
    fn noncons_cell(&self, w: &Self::Vec, slopes: &Self::Vec, axis: Axis, delta: f64) -> Result<Self::Vec, Violation>;

    /// Path integral of the nonconservative product across an interface.
    fn noncons_interface(&self, minus: &Self::Vec, plus: &Self::Vec, axis: Axis) -> Self::Vec;

    /// Pressure from cell averages, for systems that have one.
    fn pressure(&self, _cons: &Self::Vec) -> Option<f64> {
        None
    }
}

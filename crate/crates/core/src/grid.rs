//! Uniform Cartesian mesh, boundary conditions and cell-averaged storage.

use crate::error::{Result, SolverError};

/// Number of ghost layers on every side of the interior.
pub const GHOST: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub nx: usize,
    pub ny: usize,
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl GridSpec {
    pub fn new(nx: usize, ny: usize, x: (f64, f64), y: (f64, f64)) -> Self {
        GridSpec { nx, ny, xmin: x.0, xmax: x.1, ymin: y.0, ymax: y.1 }
    }
}

/// Immutable mesh geometry.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub spec: GridSpec,
    pub dx: f64,
    pub dy: f64,
}

/// Validates the spec and builds the mesh.
pub fn build_grid(spec: GridSpec) -> Result<Grid> {
    if spec.nx == 0 || spec.ny == 0 {
        return Err(SolverError::Config(format!(
            "cell counts must be positive, got nx={} ny={}",
            spec.nx, spec.ny
        )));
    }
    let finite = [spec.xmin, spec.xmax, spec.ymin, spec.ymax].iter().all(|v| v.is_finite());
    if !finite || spec.xmax <= spec.xmin || spec.ymax <= spec.ymin {
        return Err(SolverError::Config(format!(
            "invalid domain [{}, {}] x [{}, {}]",
            spec.xmin, spec.xmax, spec.ymin, spec.ymax
        )));
    }
    let dx = (spec.xmax - spec.xmin) / spec.nx as f64;
    let dy = (spec.ymax - spec.ymin) / spec.ny as f64;
    if !(dx > 0.0 && dy > 0.0) {
        return Err(SolverError::Config("degenerate cell size".into()));
    }
    Ok(Grid { spec, dx, dy })
}

impl Grid {
    pub fn nx(&self) -> usize {
        self.spec.nx
    }

    pub fn ny(&self) -> usize {
        self.spec.ny
    }

    /// Row stride of the padded storage.
    pub fn stride(&self) -> usize {
        self.spec.nx + 2 * GHOST
    }

    pub fn padded_len(&self) -> usize {
        self.stride() * (self.spec.ny + 2 * GHOST)
    }

    /// Cell center in x; `j` may address ghost cells (`-2..nx+2`).
    pub fn x_center(&self, j: isize) -> f64 {
        self.spec.xmin + (j as f64 + 0.5) * self.dx
    }

    pub fn y_center(&self, k: isize) -> f64 {
        self.spec.ymin + (k as f64 + 0.5) * self.dy
    }

    pub fn cell_area(&self) -> f64 {
        self.dx * self.dy
    }

    /// Flat index of the cell `(j, k)`, with interior cells at `0..nx`, `0..ny`.
    #[inline]
    pub fn index(&self, j: isize, k: isize) -> usize {
        let g = GHOST as isize;
        ((k + g) as usize) * self.stride() + (j + g) as usize
    }

    /// Row-major (k outer, j inner) iterator over interior cells.
    pub fn interior(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let nx = self.spec.nx;
        (0..self.spec.ny).flat_map(move |k| (0..nx).map(move |j| (j, k)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    Periodic,
    ZeroOrderExtrapolation,
}

/// Boundary conditions on the four sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundarySpec {
    pub west: Boundary,
    pub east: Boundary,
    pub south: Boundary,
    pub north: Boundary,
}

impl BoundarySpec {
    pub fn uniform(kind: Boundary) -> Self {
        BoundarySpec { west: kind, east: kind, south: kind, north: kind }
    }

    pub fn validate(&self) -> Result<()> {
        let x_ok = (self.west == Boundary::Periodic) == (self.east == Boundary::Periodic);
        let y_ok = (self.south == Boundary::Periodic) == (self.north == Boundary::Periodic);
        if x_ok && y_ok {
            Ok(())
        } else {
            Err(SolverError::Config(
                "periodic boundaries must be paired with the opposite side".into(),
            ))
        }
    }
}

/// Cell averages of every conserved component, interior plus ghost layers.
///
/// Each component is a flat row-major array of `grid.padded_len()` values.
#[derive(Clone, Debug, PartialEq)]
pub struct StateField {
    ncomp: usize,
    nx: usize,
    ny: usize,
    data: Vec<f64>,
}

impl StateField {
    pub fn zeros(grid: &Grid, ncomp: usize) -> Self {
        StateField { ncomp, nx: grid.nx(), ny: grid.ny(), data: vec![0.0; ncomp * grid.padded_len()] }
    }

    pub fn ncomp(&self) -> usize {
        self.ncomp
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    fn plane_len(&self) -> usize {
        (self.nx + 2 * GHOST) * (self.ny + 2 * GHOST)
    }

    pub fn component(&self, c: usize) -> &[f64] {
        let n = self.plane_len();
        &self.data[c * n..(c + 1) * n]
    }

    pub fn component_mut(&mut self, c: usize) -> &mut [f64] {
        let n = self.plane_len();
        &mut self.data[c * n..(c + 1) * n]
    }

    /// All components back to back.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn check_shape(&self, grid: &Grid) -> Result<()> {
        if self.nx != grid.nx() || self.ny != grid.ny() {
            return Err(SolverError::Shape(format!(
                "field is {}x{}, grid is {}x{}",
                self.nx,
                self.ny,
                grid.nx(),
                grid.ny()
            )));
        }
        Ok(())
    }

    #[inline]
    pub fn get(&self, grid: &Grid, c: usize, j: isize, k: isize) -> f64 {
        self.data[c * self.plane_len() + grid.index(j, k)]
    }

    #[inline]
    pub fn set(&mut self, grid: &Grid, c: usize, j: isize, k: isize, value: f64) {
        let n = self.plane_len();
        self.data[c * n + grid.index(j, k)] = value;
    }

    /// Gathers the conserved vector of one cell into `out`.
    #[inline]
    pub fn load(&self, flat: usize, out: &mut [f64]) {
        let n = self.plane_len();
        for (c, v) in out.iter_mut().enumerate().take(self.ncomp) {
            *v = self.data[c * n + flat];
        }
    }

    #[inline]
    pub fn store(&mut self, flat: usize, values: &[f64]) {
        let n = self.plane_len();
        for (c, v) in values.iter().enumerate().take(self.ncomp) {
            self.data[c * n + flat] = *v;
        }
    }

    /// Interior values of one component in row-major order.
    pub fn interior_values(&self, grid: &Grid, c: usize) -> Vec<f64> {
        grid.interior().map(|(j, k)| self.get(grid, c, j as isize, k as isize)).collect()
    }
}

/// Populates both ghost layers on every side. Corners are filled by the
/// y pass, which runs over the full padded width.
pub fn fill_ghost(field: &mut StateField, bc: &BoundarySpec, grid: &Grid) -> Result<()> {
    field.check_shape(grid)?;
    bc.validate()?;
    let nx = grid.nx() as isize;
    let ny = grid.ny() as isize;
    let g = GHOST as isize;
    for c in 0..field.ncomp() {
        let plane = field.component_mut(c);
        for k in 0..ny {
            for layer in 1..=g {
                let west = match bc.west {
                    Boundary::Periodic => (nx - layer).rem_euclid(nx),
                    Boundary::ZeroOrderExtrapolation => 0,
                };
                let east = match bc.east {
                    Boundary::Periodic => (layer - 1).rem_euclid(nx),
                    Boundary::ZeroOrderExtrapolation => nx - 1,
                };
                plane[grid.index(-layer, k)] = plane[grid.index(west, k)];
                plane[grid.index(nx - 1 + layer, k)] = plane[grid.index(east, k)];
            }
        }
        for layer in 1..=g {
            let south = match bc.south {
                Boundary::Periodic => (ny - layer).rem_euclid(ny),
                Boundary::ZeroOrderExtrapolation => 0,
            };
            let north = match bc.north {
                Boundary::Periodic => (layer - 1).rem_euclid(ny),
                Boundary::ZeroOrderExtrapolation => ny - 1,
            };
            for j in -g..nx + g {
                plane[grid.index(j, -layer)] = plane[grid.index(j, south)];
                plane[grid.index(j, ny - 1 + layer)] = plane[grid.index(j, north)];
            }
        }
    }
    Ok(())
}

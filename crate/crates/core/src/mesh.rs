//! Regular rectangular finite-volume meshes.
//!
//! Cells are indexed row-major (`j * nx + i`); interior edges are listed
//! x-direction first, then y-direction, each lexicographically, so that every
//! edge appears once with its lower cell index first. Boundary edges are kept
//! so the zero-flux contract can be checked explicitly, but they carry no flux
//! in the scheme.

use crate::Error;

/// Interior edge between two neighboring cells, oriented `k -> l` with `k < l`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InteriorEdge {
    /// Lower cell index in canonical order.
    pub k: usize,
    /// Higher cell index.
    pub l: usize,
    /// Transmissibility |sigma| / dist(x_K, x_L).
    pub transmissibility: f64,
}

/// Edge of a cell lying on the domain boundary.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryEdge {
    /// Adjacent cell index.
    pub k: usize,
    /// Transmissibility |sigma| / dist(x_K, sigma).
    pub transmissibility: f64,
}

/// Uniform rectangular cell complex.
#[derive(Clone, Debug)]
pub struct Mesh {
    pub nx: usize,
    pub ny: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    /// Cell width in x.
    pub hx: f64,
    /// Cell width in y.
    pub hy: f64,
    /// Area of each cell (uniform).
    pub cell_measure: f64,
    pub interior_edges: Vec<InteriorEdge>,
    pub boundary_edges: Vec<BoundaryEdge>,
}

/// Two-point transmissibility |sigma| / distance.
pub fn transmissibility(edge_length: f64, distance: f64) -> Result<f64, Error> {
    if !(edge_length > 0.0) || !(distance > 0.0) {
        return Err(Error::Geometry(format!(
            "transmissibility needs positive edge length and distance, got |sigma| = {edge_length}, d = {distance}"
        )));
    }
    Ok(edge_length / distance)
}

/// Builds the uniform rectangular mesh of `nx * ny` cells tiling the box
/// `[x_min, x_max] x [y_min, y_max]`.
pub fn build_regular_mesh(
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
    nx: usize,
    ny: usize,
) -> Result<Mesh, Error> {
    if !(x_max > x_min) || !(y_max > y_min) {
        return Err(Error::Config(format!(
            "invalid domain bounds: [{x_min}, {x_max}] x [{y_min}, {y_max}]"
        )));
    }
    if nx == 0 || ny == 0 {
        return Err(Error::Config(format!(
            "resolution must be positive, got nx = {nx}, ny = {ny}"
        )));
    }

    let hx = (x_max - x_min) / nx as f64;
    let hy = (y_max - y_min) / ny as f64;

    let tau_x = transmissibility(hy, hx)?; // edge between x-neighbors has length hy
    let tau_y = transmissibility(hx, hy)?;
    let tau_bx = transmissibility(hy, hx / 2.0)?; // cell center to boundary edge
    let tau_by = transmissibility(hx, hy / 2.0)?;

    let mut interior_edges = Vec::with_capacity(ny * (nx - 1) + nx * (ny - 1));
    for j in 0..ny {
        for i in 0..nx - 1 {
            let k = j * nx + i;
            interior_edges.push(InteriorEdge {
                k,
                l: k + 1,
                transmissibility: tau_x,
            });
        }
    }
    for j in 0..ny - 1 {
        for i in 0..nx {
            let k = j * nx + i;
            interior_edges.push(InteriorEdge {
                k,
                l: k + nx,
                transmissibility: tau_y,
            });
        }
    }

    let mut boundary_edges = Vec::with_capacity(2 * (nx + ny));
    for j in 0..ny {
        for i in 0..nx {
            let k = j * nx + i;
            if i == 0 {
                boundary_edges.push(BoundaryEdge {
                    k,
                    transmissibility: tau_bx,
                });
            }
            if i == nx - 1 {
                boundary_edges.push(BoundaryEdge {
                    k,
                    transmissibility: tau_bx,
                });
            }
            if j == 0 {
                boundary_edges.push(BoundaryEdge {
                    k,
                    transmissibility: tau_by,
                });
            }
            if j == ny - 1 {
                boundary_edges.push(BoundaryEdge {
                    k,
                    transmissibility: tau_by,
                });
            }
        }
    }

    Ok(Mesh {
        nx,
        ny,
        x_min,
        x_max,
        y_min,
        y_max,
        hx,
        hy,
        cell_measure: hx * hy,
        interior_edges,
        boundary_edges,
    })
}

impl Mesh {
    /// Total number of cells.
    pub fn n_cells(&self) -> usize {
        self.nx * self.ny
    }

    /// Row-major cell index for grid coordinates `(i, j)`.
    pub fn cell_index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    /// Center coordinates of the cell with the given flat index.
    pub fn cell_center(&self, index: usize) -> (f64, f64) {
        let i = index % self.nx;
        let j = index / self.nx;
        (
            self.x_min + (i as f64 + 0.5) * self.hx,
            self.y_min + (j as f64 + 0.5) * self.hy,
        )
    }

    /// Area of the full domain.
    pub fn domain_area(&self) -> f64 {
        (self.x_max - self.x_min) * (self.y_max - self.y_min)
    }
}

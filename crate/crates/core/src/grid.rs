use crate::error::{Error, Result};

/// Periodic square domain `[0, L)^2` discretised into `n × n` cells.
///
/// The same grid is shared by the noise field and the spectral solver, so the
/// cell count is restricted to powers of two.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusGrid {
    side: f64,
    n: usize,
}

impl TorusGrid {
    pub fn new(side: f64, n: usize) -> Result<Self> {
        if !(side > 0.0) {
            return Err(Error::config(format!("torus side must be positive, got {side}")));
        }
        if n == 0 || !n.is_power_of_two() {
            return Err(Error::config(format!("cells per side must be a power of two, got {n}")));
        }
        Ok(TorusGrid { side, n })
    }

    pub fn side(&self) -> f64 {
        self.side
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spacing(&self) -> f64 {
        self.side / self.n as f64
    }

    pub fn cells(&self) -> usize {
        self.n * self.n
    }

    /// Row-major cell index for integer coordinates (wrapped).
    pub fn idx(&self, ix: i64, iy: i64) -> usize {
        let n = self.n as i64;
        let ix = ix.rem_euclid(n) as usize;
        let iy = iy.rem_euclid(n) as usize;
        iy * self.n + ix
    }

    /// Coordinates of the grid point with index `i` (points sit at `j·Δx`).
    pub fn coord(&self, i: usize) -> [f64; 2] {
        let dx = self.spacing();
        let ix = i % self.n;
        let iy = i / self.n;
        [ix as f64 * dx, iy as f64 * dx]
    }

    /// Fold a coordinate into `[0, L)`.
    pub fn wrap(&self, x: f64) -> f64 {
        let w = x.rem_euclid(self.side);
        if w == self.side {
            0.0
        } else {
            w
        }
    }

    /// Signed displacement folded into `[-L/2, L/2)`.
    pub fn min_image(&self, dx: f64) -> f64 {
        let mut d = dx.rem_euclid(self.side);
        if d >= 0.5 * self.side {
            d -= self.side;
        }
        d
    }

    /// Periodic bilinear interpolation of a row-major scalar field.
    pub fn bilinear(&self, field: &[f64], x: f64, y: f64) -> f64 {
        debug_assert_eq!(field.len(), self.cells());
        let dx = self.spacing();
        let fx = self.wrap(x) / dx;
        let fy = self.wrap(y) / dx;
        let ix = fx.floor() as i64;
        let iy = fy.floor() as i64;
        let tx = fx - ix as f64;
        let ty = fy - iy as f64;
        let f00 = field[self.idx(ix, iy)];
        let f10 = field[self.idx(ix + 1, iy)];
        let f01 = field[self.idx(ix, iy + 1)];
        let f11 = field[self.idx(ix + 1, iy + 1)];
        (1.0 - ty) * ((1.0 - tx) * f00 + tx * f10) + ty * ((1.0 - tx) * f01 + tx * f11)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_sizes() {
        assert!(TorusGrid::new(8.0, 48).is_err());
        assert!(TorusGrid::new(0.0, 64).is_err());
        assert!(TorusGrid::new(8.0, 64).is_ok());
    }

    #[test]
    fn wrap_and_min_image() {
        let g = TorusGrid::new(8.0, 64).unwrap();
        assert!((g.wrap(8.25) - 0.25).abs() < 1e-12);
        assert!((g.wrap(-0.25) - 7.75).abs() < 1e-12);
        assert!((g.min_image(7.75) + 0.25).abs() < 1e-12);
        assert!((g.min_image(-4.0) + 4.0).abs() < 1e-12);
    }

    #[test]
    fn bilinear_reproduces_grid_values() {
        let g = TorusGrid::new(4.0, 8).unwrap();
        let field: Vec<f64> = (0..g.cells()).map(|i| i as f64).collect();
        for i in [0usize, 5, 17, 63] {
            let [x, y] = g.coord(i);
            assert!((g.bilinear(&field, x, y) - field[i]).abs() < 1e-12);
        }
        // midpoint of a cell averages its corners, including across the seam
        let v = g.bilinear(&field, 3.75, 3.75);
        let expect = 0.25 * (field[g.idx(7, 7)] + field[g.idx(0, 7)] + field[g.idx(7, 0)] + field[g.idx(0, 0)]);
        assert!((v - expect).abs() < 1e-12);
    }
}

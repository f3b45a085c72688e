//! Thin 2D FFT layer over rustfft for square power-of-two grids.

use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

/// Planned forward/inverse transforms for an `n × n` complex field stored
/// row-major. Plans are shareable across threads; output is deterministic.
pub struct Fft2 {
    n: usize,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl Fft2 {
    pub fn new(n: usize) -> Self {
        assert!(n.is_power_of_two());
        let mut planner = FftPlanner::new();
        Fft2 { n, fwd: planner.plan_fft_forward(n), inv: planner.plan_fft_inverse(n) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Unnormalized forward 2D transform, in place.
    pub fn forward(&self, data: &mut [Complex64]) {
        self.pass(data, &self.fwd);
    }

    /// Inverse 2D transform including the `1/n²` normalization, in place.
    pub fn inverse(&self, data: &mut [Complex64]) {
        self.pass(data, &self.inv);
        let scale = 1.0 / (self.n * self.n) as f64;
        for v in data.iter_mut() {
            *v *= scale;
        }
    }

    fn pass(&self, data: &mut [Complex64], plan: &Arc<dyn Fft<f64>>) {
        let n = self.n;
        assert_eq!(data.len(), n * n);
        for row in data.chunks_exact_mut(n) {
            plan.process(row);
        }
        transpose_square(data, n);
        for row in data.chunks_exact_mut(n) {
            plan.process(row);
        }
        transpose_square(data, n);
    }
}

pub fn transpose_square(data: &mut [Complex64], n: usize) {
    for i in 0..n {
        for j in (i + 1)..n {
            data.swap(i * n + j, j * n + i);
        }
    }
}

/// Signed integer frequency for bin `k` of an `n`-point DFT.
#[inline]
pub fn freq(k: usize, n: usize) -> i64 {
    if k <= n / 2 {
        k as i64
    } else {
        k as i64 - n as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_plane_wave() {
        let n = 16;
        let fft = Fft2::new(n);
        // plane wave exp(2πi(3x + 5y)/n) concentrates on bin (3, 5)
        let mut data: Vec<Complex64> = (0..n * n)
            .map(|i| {
                let x = (i % n) as f64;
                let y = (i / n) as f64;
                Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (3.0 * x + 5.0 * y) / n as f64)
            })
            .collect();
        let orig = data.clone();
        fft.forward(&mut data);
        for (i, v) in data.iter().enumerate() {
            let (kx, ky) = (i % n, i / n);
            let want = if (kx, ky) == (3, 5) { (n * n) as f64 } else { 0.0 };
            assert!((v.re - want).abs() < 1e-9 && v.im.abs() < 1e-9, "bin ({kx},{ky})");
        }
        fft.inverse(&mut data);
        for (a, b) in data.iter().zip(&orig) {
            assert!((a - b).norm() < 1e-12);
        }
    }
}

//! Uniformly sampled radial tables with cubic (Catmull-Rom) interpolation.

/// A radial profile sampled on `n + 1` equally spaced radii covering
/// `[0, support]`, identically zero beyond the support.
///
/// Evaluation is an even extension at the origin (`f(-r) = f(r)`) and exact
/// zero outside, which preserves evenness and compact support of the
/// tabulated kernels.
#[derive(Debug, Clone)]
pub struct RadialTable {
    support: f64,
    values: Vec<f64>,
}

impl RadialTable {
    pub fn from_values(support: f64, values: Vec<f64>) -> Self {
        assert!(support > 0.0 && values.len() >= 4);
        RadialTable { support, values }
    }

    pub fn from_fn(support: f64, n: usize, f: impl Fn(f64) -> f64) -> Self {
        let dr = support / n as f64;
        let values = (0..=n).map(|i| f(i as f64 * dr)).collect();
        RadialTable { support, values }
    }

    pub fn support(&self) -> f64 {
        self.support
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn spacing(&self) -> f64 {
        self.support / (self.values.len() - 1) as f64
    }

    pub fn radius(&self, i: usize) -> f64 {
        i as f64 * self.spacing()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    fn node(&self, i: isize) -> f64 {
        let n = self.values.len() as isize;
        let i = if i < 0 { -i } else { i }; // even extension across r = 0
        if i >= n {
            0.0
        } else {
            self.values[i as usize]
        }
    }

    /// Cubic interpolation at radius `r ≥ 0`; exact zero for `r ≥ support`.
    #[inline]
    pub fn eval(&self, r: f64) -> f64 {
        if !(r < self.support) {
            return 0.0;
        }
        let h = self.spacing();
        let s = r / h;
        let i = s.floor() as isize;
        let t = s - i as f64;
        if t == 0.0 {
            return self.node(i);
        }
        let p0 = self.node(i - 1);
        let p1 = self.node(i);
        let p2 = self.node(i + 1);
        let p3 = self.node(i + 2);
        0.5 * (2.0 * p1
            + (p2 - p0) * t
            + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * t * t
            + (3.0 * (p1 - p2) + p3 - p0) * t * t * t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_nodes_and_support() {
        let t = RadialTable::from_fn(2.0, 64, |r| (1.0 + r).recip());
        for i in 0..=64 {
            let r = t.radius(i);
            if r < 2.0 {
                assert!((t.eval(r) - (1.0 + r).recip()).abs() < 1e-14);
            }
        }
        assert_eq!(t.eval(2.0), 0.0);
        assert_eq!(t.eval(5.0), 0.0);
    }

    #[test]
    fn cubic_accuracy_on_smooth_profile() {
        let t = RadialTable::from_fn(1.0, 512, |r| (-3.0 * r * r).exp());
        let mut worst = 0.0f64;
        for k in 0..500 {
            let r = 0.001 + 0.997 * (k as f64 / 499.0);
            worst = worst.max((t.eval(r) - (-3.0 * r * r).exp()).abs());
        }
        assert!(worst < 1e-8, "worst = {worst:e}");
    }
}

//! Small quadrature toolbox: adaptive Simpson, composite rules and
//! Gauss-Laguerre nodes for radial Gaussian averages.

/// Adaptive Simpson quadrature with absolute tolerance `tol`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48)
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

/// Composite Simpson over `panels` equal panels (`panels` must be even... it
/// is rounded up to even). Used where the integrand is smooth and cheap.
pub fn composite_simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let n = if panels % 2 == 0 { panels } else { panels + 1 };
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

/// Trapezoid rule over equally spaced samples spanning `[a, b]`.
pub fn trapezoid_samples(values: &[f64], a: f64, b: f64) -> f64 {
    let n = values.len();
    assert!(n >= 2);
    let h = (b - a) / (n - 1) as f64;
    let mut acc = 0.5 * (values[0] + values[n - 1]);
    for v in &values[1..n - 1] {
        acc += v;
    }
    acc * h
}

/// Gauss-Laguerre nodes and weights for `∫_0^∞ f(x) e^{-x} dx ≈ Σ w_i f(x_i)`.
///
/// Newton iteration on the Laguerre recurrence; weights via
/// `w_i = x_i / ((n+1) L_{n+1}(x_i))²`.
pub fn gauss_laguerre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n {
        let mut z = match i {
            0 => 3.0 / (1.0 + 2.4 * nf),
            1 => nodes[0] + 15.0 / (1.0 + 2.5 * nf),
            _ => {
                let ai = (i - 1) as f64;
                nodes[i - 1] + ((1.0 + 2.55 * ai) / (1.9 * ai)) * (nodes[i - 1] - nodes[i - 2])
            }
        };
        for _ in 0..100 {
            let (ln, lnm1) = laguerre(n, z);
            let deriv = nf * (ln - lnm1) / z;
            let dz = ln / deriv;
            z -= dz;
            if dz.abs() < 1e-15 * (1.0 + z.abs()) {
                break;
            }
        }
        nodes[i] = z;
        let (lnp1, _) = laguerre(n + 1, z);
        let denom = (nf + 1.0) * lnp1;
        weights[i] = z / (denom * denom);
    }
    (nodes, weights)
}

/// Returns `(L_n(x), L_{n-1}(x))`.
fn laguerre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = 1.0 - x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0 - x) * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_handles_smooth_integrands() {
        let v = adaptive_simpson(&|x: f64| (-x).exp(), 0.0, 10.0, 1e-12);
        assert!((v - (1.0 - (-10.0_f64).exp())).abs() < 1e-10);
        let v = adaptive_simpson(&|x: f64| x.sin(), 0.0, std::f64::consts::PI, 1e-12);
        assert!((v - 2.0).abs() < 1e-10);
    }

    #[test]
    fn laguerre_moments() {
        let (x, w) = gauss_laguerre(48);
        let m0: f64 = w.iter().sum();
        let m1: f64 = x.iter().zip(&w).map(|(x, w)| x * w).sum();
        let m2: f64 = x.iter().zip(&w).map(|(x, w)| x * x * w).sum();
        assert!((m0 - 1.0).abs() < 1e-12, "m0 = {m0}");
        assert!((m1 - 1.0).abs() < 1e-11, "m1 = {m1}");
        assert!((m2 - 2.0).abs() < 1e-10, "m2 = {m2}");
        // geometric-decay integrand: ∫ e^{-x} e^{-x/2} dx = 2/3
        let g: f64 = x.iter().zip(&w).map(|(x, w)| w * (-0.5 * x).exp()).sum();
        assert!((g - 2.0 / 3.0).abs() < 1e-10, "g = {g}");
    }
}

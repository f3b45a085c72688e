//! Deterministic mathematical kernels: the mollifier `φ`, its
//! self-convolution `R = φ ⋆ φ`, the heat kernel `G`, the effective variance
//! and the limiting variance `σ_t²` of smoothed height fluctuations.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::interp::RadialTable;
use crate::quad::{adaptive_simpson, gauss_laguerre};

const TWO_PI: f64 = 2.0 * PI;

/// Available mollifier shapes.
///
/// The smooth bump is the production kernel; the grid box exists for cheap
/// exact tests of the discrete convolution (it is not radial, so it cannot
/// back a `CovarianceKernel`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MollifierKind {
    SmoothBump,
    GridBox,
}

/// Nonnegative mollifier with unit mass and support inside `|x| < 1/2`.
#[derive(Debug, Clone, Copy)]
pub struct Mollifier {
    kind: MollifierKind,
    support_radius: f64,
    normalization: f64,
}

impl Mollifier {
    /// `φ(x) = c · exp(-1/(1-(2|x|)²))` for `|x| < 1/2`, with `c` fixed by
    /// numerical normalization of the radial integral.
    pub fn smooth_bump() -> Self {
        Mollifier {
            kind: MollifierKind::SmoothBump,
            support_radius: 0.5,
            normalization: *smooth_bump_normalization(),
        }
    }

    /// Uniform box of side 1/2 centred at the origin (diagonal fits inside
    /// the support disc). Its mass is exactly one.
    pub fn grid_box() -> Self {
        Mollifier {
            kind: MollifierKind::GridBox,
            support_radius: 0.5,
            normalization: 4.0, // 1 / side²
        }
    }

    pub fn kind(&self) -> MollifierKind {
        self.kind
    }

    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }

    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    pub fn is_radial(&self) -> bool {
        matches!(self.kind, MollifierKind::SmoothBump)
    }

    /// Box half-width for the grid-box kind.
    pub fn box_half_width(&self) -> f64 {
        0.25
    }

    pub fn eval(&self, x: [f64; 2]) -> f64 {
        match self.kind {
            MollifierKind::SmoothBump => self.eval_radial((x[0] * x[0] + x[1] * x[1]).sqrt()),
            MollifierKind::GridBox => {
                let hw = self.box_half_width();
                if x[0].abs() < hw && x[1].abs() < hw {
                    self.normalization
                } else {
                    0.0
                }
            }
        }
    }

    /// Radial profile; meaningful for the smooth bump.
    pub fn eval_radial(&self, r: f64) -> f64 {
        match self.kind {
            MollifierKind::SmoothBump => {
                if r >= 0.5 {
                    0.0
                } else {
                    let u = 2.0 * r;
                    self.normalization * (-1.0 / (1.0 - u * u)).exp()
                }
            }
            MollifierKind::GridBox => {
                // not radial; callers needing a profile must use eval()
                if r < self.box_half_width() {
                    self.normalization
                } else {
                    0.0
                }
            }
        }
    }
}

/// Evaluate the mollifier at a point.
pub fn mollifier_eval(m: &Mollifier, x: [f64; 2]) -> f64 {
    m.eval(x)
}

fn smooth_bump_normalization() -> &'static f64 {
    static NORM: OnceLock<f64> = OnceLock::new();
    NORM.get_or_init(|| {
        // ∫φ = c · (π/4) ∫_0^1 e^{-1/v} dv
        let i = adaptive_simpson(&|v: f64| if v <= 0.0 { 0.0 } else { (-1.0 / v).exp() }, 0.0, 1.0, 1e-14);
        4.0 / (PI * i)
    })
}

/// Tabulated spatial covariance `R = φ ⋆ φ`: radial profile on a 4096-point
/// radius grid with cubic interpolation, exact zero for `|x| ≥ 1`.
#[derive(Debug, Clone)]
pub struct CovarianceKernel {
    table: RadialTable,
    r0: f64,
}

impl CovarianceKernel {
    /// Build the covariance table by numerical self-convolution of a radial
    /// mollifier.
    pub fn from_mollifier(m: &Mollifier) -> Result<Self> {
        if !m.is_radial() {
            return Err(Error::config(
                "covariance tables are built from the radial (smooth-bump) mollifier",
            ));
        }
        let profile = |r: f64| m.eval_radial(r);
        let table = radial_autocorrelation(&profile, m.support_radius(), 4096, 128, 128);
        let r0 = table.values()[0];
        Ok(CovarianceKernel { table, r0 })
    }

    /// `R(0) = ∫ φ²`.
    pub fn r0(&self) -> f64 {
        self.r0
    }

    pub fn support_radius(&self) -> f64 {
        self.table.support()
    }

    #[inline]
    pub fn eval_radial(&self, r: f64) -> f64 {
        self.table.eval(r)
    }

    #[inline]
    pub fn eval(&self, x: [f64; 2]) -> f64 {
        self.table.eval((x[0] * x[0] + x[1] * x[1]).sqrt())
    }

    /// (radius, value) pairs of the underlying table, for CSV export.
    pub fn radial_table(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let t = &self.table;
        (0..t.len()).map(move |i| (t.radius(i), t.values()[i]))
    }

    pub fn table(&self) -> &RadialTable {
        &self.table
    }
}

/// Shared covariance kernel of the default smooth bump. Built once per
/// process; estimators evaluate it millions of times.
pub fn bump_kernel() -> &'static CovarianceKernel {
    static KERNEL: OnceLock<CovarianceKernel> = OnceLock::new();
    KERNEL.get_or_init(|| {
        CovarianceKernel::from_mollifier(&Mollifier::smooth_bump()).expect("smooth bump is radial")
    })
}

/// Evaluate the covariance kernel at a displacement.
pub fn covariance_eval(k: &CovarianceKernel, x: [f64; 2]) -> f64 {
    k.eval(x)
}

/// Radial autocorrelation `(f ⋆ f)(d)` of a radial profile supported in
/// `[0, support)`, tabulated on `n_table + 1` radii over `[0, 2·support]`.
///
/// Inner integral in polar coordinates: trapezoid in the angle (periodic,
/// superalgebraic for smooth profiles), composite Simpson in the radius.
pub fn radial_autocorrelation(
    f: &dyn Fn(f64) -> f64,
    support: f64,
    n_table: usize,
    n_rho_panels: usize,
    n_theta: usize,
) -> RadialTable {
    let n_rho = 2 * n_rho_panels; // Simpson needs an even panel count
    let h_rho = support / n_rho as f64;
    let rho: Vec<f64> = (0..=n_rho).map(|i| i as f64 * h_rho).collect();
    let f_rho: Vec<f64> = rho.iter().map(|&r| f(r)).collect();
    let h_th = PI / n_theta as f64;
    let cos_th: Vec<f64> = (0..=n_theta).map(|j| (j as f64 * h_th).cos()).collect();

    let out_support = 2.0 * support;
    let dr = out_support / n_table as f64;
    let mut values = vec![0.0; n_table + 1];
    for (k, value) in values.iter_mut().enumerate() {
        let d = k as f64 * dr;
        let mut acc = 0.0;
        for (i, (&ri, &fi)) in rho.iter().zip(&f_rho).enumerate() {
            if fi == 0.0 {
                continue;
            }
            // θ over [0, π] doubled (integrand even in θ); trapezoid weights
            let mut inner = 0.0;
            for (j, &ct) in cos_th.iter().enumerate() {
                let dist2 = ri * ri + d * d - 2.0 * ri * d * ct;
                let fv = f(dist2.max(0.0).sqrt());
                let w = if j == 0 || j == n_theta { 0.5 } else { 1.0 };
                inner += w * fv;
            }
            inner *= 2.0 * h_th;
            let sw = if i == 0 || i == n_rho {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            acc += sw * fi * ri * inner;
        }
        *value = acc * h_rho / 3.0;
    }
    // clamp the tail: the convolution vanishes identically at the support edge
    *values.last_mut().unwrap() = 0.0;
    RadialTable::from_values(out_support, values)
}

/// Query for the standard heat kernel `G_t(x) = (2πt)^{-1} exp(-|x|²/2t)`.
#[derive(Debug, Clone, Copy)]
pub struct HeatKernelQuery {
    pub time: f64,
    pub point: [f64; 2],
}

pub fn heat_kernel_eval(q: &HeatKernelQuery) -> Result<f64> {
    heat_kernel(q.time, q.point)
}

pub fn heat_kernel(t: f64, x: [f64; 2]) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::domain(format!("heat kernel needs t > 0, got {t}")));
    }
    let r2 = x[0] * x[0] + x[1] * x[1];
    Ok((-r2 / (2.0 * t)).exp() / (TWO_PI * t))
}

/// Effective variance `ν_eff² = 2π / (2π - β²)` of the limiting fluctuation
/// field; the coupling is subcritical only for `β² < 2π`.
pub fn effective_variance(beta: f64) -> Result<f64> {
    let b2 = beta * beta;
    // the relative guard absorbs the rounding of beta = sqrt(2π)
    if TWO_PI - b2 <= TWO_PI * 1e-12 {
        return Err(Error::domain(format!(
            "supercritical coupling: beta² = {b2:.6} ≥ 2π"
        )));
    }
    Ok(TWO_PI / (TWO_PI - b2))
}

/// Smooth spatial test function; the gaussian kind admits a closed-form
/// variance oracle, the compactly supported bump kind exists for fidelity
/// runs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TestFunctionKind {
    Gaussian,
    Bump,
}

#[derive(Debug, Clone, Copy)]
pub struct TestFunction {
    kind: TestFunctionKind,
    scale: f64,
    center: [f64; 2],
}

impl TestFunction {
    /// Gaussian density with standard deviation `scale` per coordinate.
    pub fn gaussian(scale: f64, center: [f64; 2]) -> Self {
        assert!(scale > 0.0);
        TestFunction { kind: TestFunctionKind::Gaussian, scale, center }
    }

    /// Normalized smooth bump supported in `|x - center| < scale`.
    pub fn bump(scale: f64, center: [f64; 2]) -> Self {
        assert!(scale > 0.0);
        TestFunction { kind: TestFunctionKind::Bump, scale, center }
    }

    pub fn kind(&self) -> TestFunctionKind {
        self.kind
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn center(&self) -> [f64; 2] {
        self.center
    }

    pub fn eval(&self, x: [f64; 2]) -> f64 {
        self.eval_centered([x[0] - self.center[0], x[1] - self.center[1]])
    }

    /// Evaluate at a displacement from the center.
    pub fn eval_centered(&self, d: [f64; 2]) -> f64 {
        let r2 = d[0] * d[0] + d[1] * d[1];
        match self.kind {
            TestFunctionKind::Gaussian => {
                let s2 = self.scale * self.scale;
                (-0.5 * r2 / s2).exp() / (TWO_PI * s2)
            }
            TestFunctionKind::Bump => {
                let u2 = r2 / (self.scale * self.scale);
                if u2 >= 1.0 {
                    0.0
                } else {
                    bump_density_norm(self.scale) * (-1.0 / (1.0 - u2)).exp()
                }
            }
        }
    }

    /// Autocorrelation `h = g ⋆ g` as a radial table (the center drops out).
    ///
    /// The gaussian autocorrelation is a gaussian and is tabulated from its
    /// formula, truncated at eight standard deviations of `h`; the bump kind
    /// is self-convolved numerically.
    pub fn autocorrelation(&self) -> RadialTable {
        match self.kind {
            TestFunctionKind::Gaussian => {
                let s2h = 2.0 * self.scale * self.scale; // variance of h per coordinate
                let support = 8.0 * s2h.sqrt();
                RadialTable::from_fn(support, 4096, |r| {
                    (-r * r / (2.0 * s2h)).exp() / (TWO_PI * s2h)
                })
            }
            TestFunctionKind::Bump => {
                let norm = bump_density_norm(self.scale);
                let scale = self.scale;
                let profile = move |r: f64| {
                    let u2 = r * r / (scale * scale);
                    if u2 >= 1.0 {
                        0.0
                    } else {
                        norm * (-1.0 / (1.0 - u2)).exp()
                    }
                };
                radial_autocorrelation(&profile, self.scale, 2048, 128, 256)
            }
        }
    }
}

fn bump_density_norm(scale: f64) -> f64 {
    // ∫ bump = norm · π scale² ∫_0^1 e^{-1/v} dv = 1
    static INTEGRAL: OnceLock<f64> = OnceLock::new();
    let i = INTEGRAL.get_or_init(|| {
        adaptive_simpson(&|v: f64| if v <= 0.0 { 0.0 } else { (-1.0 / v).exp() }, 0.0, 1.0, 1e-14)
    });
    1.0 / (PI * scale * scale * i)
}

fn laguerre_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_laguerre(64))
}

/// Limiting variance of the smoothed fluctuation field,
/// `σ_t² = ν_eff² ∫_0^t ∬ g(x₁) g(x₂) G_{2s}(x₁ - x₂) dx₁ dx₂ ds`.
///
/// The spatial double integral collapses onto the autocorrelation
/// `h = g ⋆ g`; the gaussian average of `h` at each `s` is evaluated with a
/// Gauss-Laguerre rule (uniformly accurate down to `s = 0`), and the time
/// integral adaptively.
pub fn sigma_t_squared(g: &TestFunction, t: f64, beta: f64) -> Result<f64> {
    let nu2 = effective_variance(beta)?;
    if t < 0.0 {
        return Err(Error::domain(format!("sigma_t² needs t ≥ 0, got {t}")));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    let h = g.autocorrelation();
    let (nodes, weights) = laguerre_rule();
    let a = move |s: f64| -> f64 {
        let mut acc = 0.0;
        for (&v, &w) in nodes.iter().zip(weights) {
            acc += w * h.eval((4.0 * s * v).sqrt());
        }
        acc
    };
    let integral = adaptive_simpson(&a, 0.0, t, 1e-12);
    Ok(nu2 * integral)
}

/// Gaussian average of a radial table: `∫ f(z) G_{2s}(z) dz`.
///
/// The substitution `u = r²/4s` turns the average into
/// `∫_0^{b²/4s} f(√(4su)) e^{-u} du` over a finite interval (the table is
/// compactly supported), which composite Simpson resolves uniformly in `s`,
/// including the `s → 0` limit where the average tends to `f(0)`.
pub fn radial_gaussian_average(table: &RadialTable, s: f64) -> f64 {
    if s <= 0.0 {
        return table.values()[0];
    }
    let b = table.support();
    let u_max = (b * b / (4.0 * s)).min(40.0);
    if !(u_max > 0.0) {
        return 0.0;
    }
    crate::quad::composite_simpson(|u| table.eval((4.0 * s * u).sqrt()) * (-u).exp(), 0.0, u_max, 256)
}

/// Quadrature oracle for the mean occupation time of a relative path
/// started at the origin: `E ∫_0^T R(B¹_s - B²_s) ds = ∫_0^T ∫ R(z) G_{2s}(z) dz ds`.
///
/// Independent of the path-sampling machinery; used to validate it. Valid
/// for any horizon (the tail is integrated in log time).
pub fn occupation_mean_oracle(k: &CovarianceKernel, horizon: f64) -> f64 {
    let table = k.table();
    let a = move |s: f64| radial_gaussian_average(table, s);
    if horizon <= 1.0 {
        adaptive_simpson(&a, 0.0, horizon, 1e-12)
    } else {
        let head = adaptive_simpson(&a, 0.0, 1.0, 1e-12);
        let tail = adaptive_simpson(&|u: f64| a(u.exp()) * u.exp(), 0.0, horizon.ln(), 1e-12);
        head + tail
    }
}

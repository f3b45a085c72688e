//! Brownian path and bridge sampling plus the path-functional estimators:
//! occupation/intersection times, the Kallianpur-Robbins statistic,
//! exponential moments and the functional whose limit is the effective
//! variance.
//!
//! Two path representations coexist. Desk-scale paths are materialised as
//! [`BrownianPath`] objects on a uniform time grid. The huge-horizon
//! estimators (`t/ε²` up to `10⁸`) never store a path: they stream a
//! distance-adaptive walk whose step collapses to a fine cap near the
//! support of the covariance kernel and grows quadratically with the
//! distance from it, with Brownian-bridge bisection refining any segment
//! that approaches the support. Occupation integrals use the trapezoid rule
//! on the kernel values along the walk.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernels::CovarianceKernel;
use crate::report::EstimateReport;
use crate::rng::SeedStream;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Uniform-step path sampling configuration (dimension fixed at 2).
#[derive(Debug, Clone, Copy)]
pub struct PathConfig {
    pub horizon: f64,
    pub step: f64,
}

impl PathConfig {
    pub fn new(horizon: f64, step: f64) -> Result<Self> {
        let cfg = PathConfig { horizon, step };
        cfg.steps()?;
        Ok(cfg)
    }

    /// Number of steps; the step must divide the horizon within rounding.
    pub fn steps(&self) -> Result<usize> {
        if !(self.horizon > 0.0) {
            return Err(Error::config(format!("horizon must be positive, got {}", self.horizon)));
        }
        if !(self.step > 0.0) {
            return Err(Error::config(format!("step must be positive, got {}", self.step)));
        }
        let n = (self.horizon / self.step).round();
        if n < 1.0 || (n * self.step - self.horizon).abs() > 1e-9 * self.horizon.max(1.0) {
            return Err(Error::config(format!(
                "step {} does not divide horizon {}",
                self.step, self.horizon
            )));
        }
        Ok(n as usize)
    }
}

/// Time-gridded 2D path starting at the origin.
#[derive(Debug, Clone)]
pub struct BrownianPath {
    step: f64,
    positions: Vec<[f64; 2]>,
}

impl BrownianPath {
    /// Assemble a path from explicit samples (used by tests with frozen
    /// paths). `positions[0]` must be the origin.
    pub fn from_positions(step: f64, positions: Vec<[f64; 2]>) -> Self {
        assert!(step > 0.0 && positions.len() >= 2);
        assert_eq!(positions[0], [0.0, 0.0]);
        BrownianPath { step, positions }
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn horizon(&self) -> f64 {
        (self.positions.len() - 1) as f64 * self.step
    }

    pub fn positions(&self) -> &[[f64; 2]] {
        &self.positions
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.positions.len()).map(|i| i as f64 * self.step).collect()
    }

    pub fn terminal(&self) -> [f64; 2] {
        *self.positions.last().unwrap()
    }

    /// Mirror the path through the origin.
    pub fn mirrored(&self) -> Self {
        BrownianPath {
            step: self.step,
            positions: self.positions.iter().map(|p| [-p[0], -p[1]]).collect(),
        }
    }
}

fn sample_with_sd(cfg: &PathConfig, sd: f64, rng: &mut ChaCha8Rng) -> Result<BrownianPath> {
    let n = cfg.steps()?;
    let mut positions = Vec::with_capacity(n + 1);
    let mut p = [0.0f64; 2];
    positions.push(p);
    for _ in 0..n {
        p[0] += sd * rng.sample::<f64, _>(StandardNormal);
        p[1] += sd * rng.sample::<f64, _>(StandardNormal);
        positions.push(p);
    }
    Ok(BrownianPath { step: cfg.step, positions })
}

/// Standard 2D Brownian motion: iid `N(0, step)` increments per coordinate.
pub fn sample_path(cfg: &PathConfig, stream: SeedStream) -> Result<BrownianPath> {
    sample_with_sd(cfg, cfg.step.sqrt(), &mut stream.rng())
}

/// The difference `B¹ - B²` of two independent walkers, realised as a single
/// path at twice the speed (per-step variance `2·step` per coordinate).
pub fn sample_relative_path(cfg: &PathConfig, stream: SeedStream) -> Result<BrownianPath> {
    sample_with_sd(cfg, (2.0 * cfg.step).sqrt(), &mut stream.rng())
}

/// Brownian bridge from the origin to `endpoint` over `[0, horizon]`, by the
/// standard mean adjustment of a free path.
pub fn sample_bridge(cfg: &PathConfig, endpoint: [f64; 2], stream: SeedStream) -> Result<BrownianPath> {
    let mut path = sample_with_sd(cfg, cfg.step.sqrt(), &mut stream.rng())?;
    let n = path.positions.len() - 1;
    let terminal = path.positions[n];
    for (i, p) in path.positions.iter_mut().enumerate() {
        let frac = i as f64 / n as f64;
        p[0] += frac * (endpoint[0] - terminal[0]);
        p[1] += frac * (endpoint[1] - terminal[1]);
    }
    path.positions[n] = endpoint; // exact pinning
    path.positions[0] = [0.0, 0.0];
    Ok(path)
}

/// Occupation query: `∫_I R(offset + path_s) ds`.
#[derive(Debug, Clone, Copy)]
pub struct OccupationQuery<'a> {
    pub offset: [f64; 2],
    pub interval: (f64, f64),
    pub kernel: &'a CovarianceKernel,
}

/// Integral over the query interval of the piecewise-linear interpolant of
/// the kernel values along the path. Linearity of the interpolant makes the
/// functional exactly additive over subintervals.
pub fn occupation_functional(path: &BrownianPath, q: &OccupationQuery) -> Result<f64> {
    let (a, b) = q.interval;
    let horizon = path.horizon();
    if !(0.0 <= a && a <= b && b <= horizon * (1.0 + 1e-12) + 1e-12) {
        return Err(Error::query(format!(
            "interval [{a}, {b}] outside path horizon [0, {horizon}]"
        )));
    }
    let h = path.step;
    let kernel_at = |i: usize| -> f64 {
        let p = path.positions[i];
        q.kernel.eval([q.offset[0] + p[0], q.offset[1] + p[1]])
    };
    let k_lo = ((a / h).floor() as usize).min(path.positions.len() - 2);
    let k_hi = ((b / h).ceil() as usize).max(k_lo + 1).min(path.positions.len() - 1);
    let mut acc = 0.0;
    for k in k_lo..k_hi {
        let t0 = k as f64 * h;
        let t1 = t0 + h;
        let u = a.max(t0);
        let v = b.min(t1);
        if v <= u {
            continue;
        }
        let f0 = kernel_at(k);
        let f1 = kernel_at(k + 1);
        let fu = f0 + (u - t0) / h * (f1 - f0);
        let fv = f0 + (v - t0) / h * (f1 - f0);
        acc += 0.5 * (fu + fv) * (v - u);
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Streaming adaptive walker
// ---------------------------------------------------------------------------

/// Walk parameters for a streamed occupation integral of
/// `∫_0^horizon R(offset + X_s) ds` where `X` has per-coordinate variance
/// rate `speed` (1 for a single walker, 2 for a relative path).
#[derive(Debug, Clone, Copy)]
pub(crate) struct WalkParams {
    pub offset: [f64; 2],
    pub speed: f64,
    pub horizon: f64,
    /// Pin the walk to this endpoint at `horizon` (Brownian bridge).
    pub pin: Option<[f64; 2]>,
}

/// Fine uniform step used while `t < FINE_PHASE_END` near the support.
const FINE_STEP: f64 = 0.01;
const FINE_PHASE_END: f64 = 100.0;
/// Bridge-excursion guard in units of `sqrt(speed·dt)`; a segment whose
/// endpoints both keep this margin from the support is accepted unrefined.
const GUARD_SIGMAS: f64 = 4.0;

struct Walker<'a> {
    kernel: &'a CovarianceKernel,
    p: WalkParams,
    cap_late: f64,
}

impl<'a> Walker<'a> {
    fn new(kernel: &'a CovarianceKernel, p: WalkParams) -> Self {
        let supp = kernel.support_radius();
        // per-coordinate step SD capped at a quarter of the support radius
        let cap_late = supp * supp / (16.0 * p.speed);
        Walker { kernel, p, cap_late }
    }

    #[inline]
    fn near_cap(&self, t: f64) -> f64 {
        if t < FINE_PHASE_END {
            FINE_STEP.min(self.cap_late)
        } else {
            self.cap_late
        }
    }

    /// Distance from the support of the shifted kernel (0 when inside).
    #[inline]
    fn clearance(&self, x: [f64; 2]) -> f64 {
        let dx = x[0] + self.p.offset[0];
        let dy = x[1] + self.p.offset[1];
        ((dx * dx + dy * dy).sqrt() - self.kernel.support_radius()).max(0.0)
    }

    #[inline]
    fn value(&self, x: [f64; 2]) -> f64 {
        self.kernel.eval([x[0] + self.p.offset[0], x[1] + self.p.offset[1]])
    }

    fn integrate(&self, rng: &mut ChaCha8Rng) -> f64 {
        let speed = self.p.speed;
        let mut t = 0.0f64;
        let mut x = [0.0f64; 2];
        let mut fx = self.value(x);
        let mut acc = 0.0f64;
        while t < self.p.horizon {
            let clear = self.clearance(x);
            let far_allow = clear * clear / (32.0 * speed);
            let mut dt = self.near_cap(t).max(far_allow);
            let rem = self.p.horizon - t;
            if dt >= rem {
                dt = rem;
            }
            let x_new = match self.p.pin {
                Some(y) if dt >= rem => y,
                Some(y) => {
                    let frac = dt / rem;
                    let var = speed * dt * (rem - dt) / rem;
                    let sd = var.max(0.0).sqrt();
                    [
                        x[0] + frac * (y[0] - x[0]) + sd * rng.sample::<f64, _>(StandardNormal),
                        x[1] + frac * (y[1] - x[1]) + sd * rng.sample::<f64, _>(StandardNormal),
                    ]
                }
                None => {
                    let sd = (speed * dt).sqrt();
                    [
                        x[0] + sd * rng.sample::<f64, _>(StandardNormal),
                        x[1] + sd * rng.sample::<f64, _>(StandardNormal),
                    ]
                }
            };
            let f_new = self.value(x_new);
            acc += self.segment(t, x, fx, t + dt, x_new, f_new, rng, 0);
            t += dt;
            x = x_new;
            fx = f_new;
        }
        acc
    }

    /// Trapezoid contribution of a segment, refined by bridge bisection
    /// whenever the segment is long and either endpoint is close enough to
    /// the support for an excursion into it to be plausible.
    #[allow(clippy::too_many_arguments)]
    fn segment(
        &self,
        t0: f64,
        x0: [f64; 2],
        f0: f64,
        t1: f64,
        x1: [f64; 2],
        f1: f64,
        rng: &mut ChaCha8Rng,
        depth: u32,
    ) -> f64 {
        let dt = t1 - t0;
        if dt <= self.near_cap(t0) * (1.0 + 1e-9) || depth >= 60 {
            return 0.5 * (f0 + f1) * dt;
        }
        let guard = GUARD_SIGMAS * (self.p.speed * dt).sqrt();
        if self.clearance(x0) > guard && self.clearance(x1) > guard {
            // both endpoints far outside; the bridge stays outside w.o.p.
            return 0.0;
        }
        let tm = 0.5 * (t0 + t1);
        let sd = (self.p.speed * dt * 0.25).sqrt();
        let xm = [
            0.5 * (x0[0] + x1[0]) + sd * rng.sample::<f64, _>(StandardNormal),
            0.5 * (x0[1] + x1[1]) + sd * rng.sample::<f64, _>(StandardNormal),
        ];
        let fm = self.value(xm);
        self.segment(t0, x0, f0, tm, xm, fm, rng, depth + 1)
            + self.segment(tm, xm, fm, t1, x1, f1, rng, depth + 1)
    }
}

/// One streamed sample of `∫_0^horizon R(offset + X_s) ds` for a relative
/// path (`speed = 2`).
pub fn relative_occupation_sample(
    kernel: &CovarianceKernel,
    horizon: f64,
    offset: [f64; 2],
    stream: SeedStream,
) -> Result<f64> {
    if !(horizon > 0.0) {
        return Err(Error::config(format!("horizon must be positive, got {horizon}")));
    }
    let w = Walker::new(kernel, WalkParams { offset, speed: 2.0, horizon, pin: None });
    Ok(w.integrate(&mut stream.rng()))
}

// ---------------------------------------------------------------------------
// Estimators
// ---------------------------------------------------------------------------

fn log_eps(eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::domain(format!("eps must lie in (0, 1), got {eps}")));
    }
    Ok(-eps.ln())
}

fn check_subcritical(beta: f64) -> Result<()> {
    if beta * beta >= TWO_PI {
        return Err(Error::domain(format!("supercritical coupling: beta = {beta}")));
    }
    Ok(())
}

/// Normalisation of the Kallianpur-Robbins statistic.
pub fn kr_value(eps: f64, occupation: f64) -> Result<f64> {
    Ok(occupation / log_eps(eps)?)
}

/// `exp(β² |log ε|⁻¹ · occupation)`: the per-replica value of both the
/// effective-variance functional and the exponential-moment estimators
/// (`β_ε² = β²/|log ε|`).
pub fn exponent_value(beta: f64, eps: f64, occupation: f64) -> Result<f64> {
    Ok((beta * beta * occupation / log_eps(eps)?).exp())
}

fn parallel_samples(replicas: usize, base_seed: u64, f: impl Fn(SeedStream) -> f64 + Sync) -> Vec<f64> {
    (0..replicas)
        .into_par_iter()
        .map(|i| f(SeedStream::new(base_seed, i as u64)))
        .collect()
}

/// One Kallianpur-Robbins sample
/// `|log ε|⁻¹ ∫_0^{ℓ/ε²} R(w + B¹_s - B²_s) ds`.
pub fn kr_sample(
    kernel: &CovarianceKernel,
    eps: f64,
    ell: f64,
    w: [f64; 2],
    stream: SeedStream,
) -> Result<f64> {
    let le = log_eps(eps)?;
    if !(ell > 0.0) {
        return Err(Error::domain(format!("ell must be positive, got {ell}")));
    }
    let occ = relative_occupation_sample(kernel, ell / (eps * eps), w, stream)?;
    Ok(occ / le)
}

/// All replicas of the KR statistic, in replica order (needed for the
/// distribution test as well as the mean).
pub fn kr_samples(
    kernel: &CovarianceKernel,
    eps: f64,
    ell: f64,
    w: [f64; 2],
    replicas: usize,
    base_seed: u64,
) -> Result<Vec<f64>> {
    let le = log_eps(eps)?;
    if !(ell > 0.0) {
        return Err(Error::domain(format!("ell must be positive, got {ell}")));
    }
    let horizon = ell / (eps * eps);
    let params = WalkParams { offset: w, speed: 2.0, horizon, pin: None };
    Ok(parallel_samples(replicas, base_seed, |stream| {
        Walker::new(kernel, params).integrate(&mut stream.rng()) / le
    }))
}

/// Monte Carlo estimate of
/// `E_B[exp(β² |log ε|⁻¹ ∫_0^{ℓ/ε²} R(w + B¹_s - B²_s) ds)]`,
/// the functional converging to the effective variance.
pub fn f_estimate(
    kernel: &CovarianceKernel,
    beta: f64,
    eps: f64,
    ell: f64,
    w: [f64; 2],
    replicas: usize,
    base_seed: u64,
) -> Result<EstimateReport> {
    check_subcritical(beta)?;
    let le = log_eps(eps)?;
    if !(ell > 0.0) {
        return Err(Error::domain(format!("ell must be positive, got {ell}")));
    }
    let start = std::time::Instant::now();
    let horizon = ell / (eps * eps);
    let params = WalkParams { offset: w, speed: 2.0, horizon, pin: None };
    let b2 = beta * beta;
    let samples = parallel_samples(replicas, base_seed, |stream| {
        (b2 * Walker::new(kernel, params).integrate(&mut stream.rng()) / le).exp()
    });
    Ok(EstimateReport::from_samples(
        &samples,
        vec![
            ("beta".into(), beta),
            ("eps".into(), eps),
            ("ell".into(), ell),
            ("seed".into(), base_seed as f64),
        ],
        start.elapsed().as_secs_f64(),
    ))
}

/// Monte Carlo estimate of `E_B[exp(β_ε² ∫_0^{t/ε²} R(x + B_s) ds)]` over
/// free paths, or over bridges pinned at `bridge_endpoint` at the horizon.
pub fn exp_moment_estimate(
    kernel: &CovarianceKernel,
    beta: f64,
    eps: f64,
    t: f64,
    x: [f64; 2],
    bridge_endpoint: Option<[f64; 2]>,
    replicas: usize,
    base_seed: u64,
) -> Result<EstimateReport> {
    let le = log_eps(eps)?;
    if !(t > 0.0) {
        return Err(Error::domain(format!("t must be positive, got {t}")));
    }
    let start = std::time::Instant::now();
    let horizon = t / (eps * eps);
    let params = WalkParams { offset: x, speed: 1.0, horizon, pin: bridge_endpoint };
    let b2 = beta * beta;
    let samples = parallel_samples(replicas, base_seed, |stream| {
        (b2 * Walker::new(kernel, params).integrate(&mut stream.rng()) / le).exp()
    });
    Ok(EstimateReport::from_samples(
        &samples,
        vec![
            ("beta".into(), beta),
            ("eps".into(), eps),
            ("t".into(), t),
            ("bridge".into(), if bridge_endpoint.is_some() { 1.0 } else { 0.0 }),
            ("seed".into(), base_seed as f64),
        ],
        start.elapsed().as_secs_f64(),
    ))
}

/// Monte Carlo estimate of `E_B[(∫_0^{t/ε²} R(x/ε + B_s) ds)ⁿ]`, `n ≤ 3`.
pub fn occupation_moment_estimate(
    kernel: &CovarianceKernel,
    n: u32,
    eps: f64,
    t: f64,
    x: [f64; 2],
    replicas: usize,
    base_seed: u64,
) -> Result<EstimateReport> {
    if !(1..=3).contains(&n) {
        return Err(Error::config(format!("moment order must be 1, 2 or 3, got {n}")));
    }
    log_eps(eps)?;
    if !(t > 0.0) {
        return Err(Error::domain(format!("t must be positive, got {t}")));
    }
    let start = std::time::Instant::now();
    let horizon = t / (eps * eps);
    let offset = [x[0] / eps, x[1] / eps];
    let params = WalkParams { offset, speed: 1.0, horizon, pin: None };
    let samples = parallel_samples(replicas, base_seed, |stream| {
        Walker::new(kernel, params).integrate(&mut stream.rng()).powi(n as i32)
    });
    Ok(EstimateReport::from_samples(
        &samples,
        vec![
            ("n".into(), n as f64),
            ("eps".into(), eps),
            ("t".into(), t),
            ("x".into(), (x[0] * x[0] + x[1] * x[1]).sqrt()),
            ("seed".into(), base_seed as f64),
        ],
        start.elapsed().as_secs_f64(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::bump_kernel;
    use crate::stats;

    #[test]
    fn path_construction_counts() {
        let cfg = PathConfig::new(1.0, 0.01).unwrap();
        let p = sample_path(&cfg, SeedStream::new(1, 0)).unwrap();
        assert_eq!(p.positions().len(), 101);
        assert_eq!(p.positions()[0], [0.0, 0.0]);
        assert!((p.horizon() - 1.0).abs() < 1e-12);
        assert!(PathConfig::new(1.0, 0.013).is_err());
        assert!(PathConfig::new(1.0, -0.01).is_err());
        assert!(PathConfig::new(0.0, 0.01).is_err());
    }

    #[test]
    fn sample_path_is_deterministic() {
        let cfg = PathConfig::new(1.0, 0.01).unwrap();
        let a = sample_path(&cfg, SeedStream::new(42, 7)).unwrap();
        let b = sample_path(&cfg, SeedStream::new(42, 7)).unwrap();
        assert_eq!(a.positions(), b.positions());
        let c = sample_relative_path(&cfg, SeedStream::new(42, 7)).unwrap();
        let d = sample_relative_path(&cfg, SeedStream::new(42, 7)).unwrap();
        assert_eq!(c.positions(), d.positions());
    }

    #[test]
    fn terminal_variance_matches_horizon() {
        let cfg = PathConfig::new(1.0, 0.01).unwrap();
        let n = 100_000;
        let (mut xs, mut xr) = (Vec::with_capacity(n), Vec::with_capacity(n));
        for i in 0..n {
            xs.push(sample_path(&cfg, SeedStream::new(100, i as u64)).unwrap().terminal()[0]);
            xr.push(sample_relative_path(&cfg, SeedStream::new(101, i as u64)).unwrap().terminal()[0]);
        }
        let v1 = stats::sample_variance(&xs);
        let v2 = stats::sample_variance(&xr);
        let se = |v: f64| v * (2.0 / (n as f64 - 1.0)).sqrt();
        assert!((v1 - 1.0).abs() < 3.0 * se(v1), "v1 = {v1}");
        assert!((v2 - 2.0).abs() < 3.0 * se(v2), "v2 = {v2}");
    }

    #[test]
    fn halving_step_keeps_endpoint_law() {
        let n = 10_000;
        let mut coarse = Vec::with_capacity(n);
        let mut fine = Vec::with_capacity(n);
        for i in 0..n {
            let c1 = PathConfig::new(1.0, 0.01).unwrap();
            let c2 = PathConfig::new(1.0, 0.005).unwrap();
            coarse.push(sample_relative_path(&c1, SeedStream::new(7, i as u64)).unwrap().terminal()[0]);
            fine.push(sample_relative_path(&c2, SeedStream::new(8, i as u64)).unwrap().terminal()[0]);
        }
        let d = stats::ks_two_sample(&coarse, &fine).unwrap();
        assert!(d < 0.05, "KS = {d}");
    }

    #[test]
    fn bridge_pins_and_has_bridge_moments() {
        let cfg = PathConfig::new(1.0, 0.01).unwrap();
        let endpoint = [2.0, -1.0];
        let n = 100_000;
        let mut mid_x = Vec::with_capacity(n);
        for i in 0..n {
            let b = sample_bridge(&cfg, endpoint, SeedStream::new(9, i as u64)).unwrap();
            assert_eq!(b.terminal(), endpoint);
            mid_x.push(b.positions()[50][0]);
        }
        let (mean, se) = stats::mean_stderr(&mid_x);
        assert!((mean - 1.0).abs() < 3.0 * se, "midpoint mean {mean}");
        let v = stats::sample_variance(&mid_x);
        let sev = v * (2.0 / (n as f64 - 1.0)).sqrt();
        assert!((v - 0.25).abs() < 3.0 * sev, "midpoint variance {v}");
    }

    #[test]
    fn occupation_on_frozen_paths() {
        let k = bump_kernel();
        // frozen path sitting at the origin: constant integrand R(0)
        let frozen = BrownianPath::from_positions(0.25, vec![[0.0, 0.0]; 9]);
        let q = OccupationQuery { offset: [0.0, 0.0], interval: (0.0, 2.0), kernel: k };
        let v = occupation_functional(&frozen, &q).unwrap();
        assert!((v - 2.0 * k.r0()).abs() < 1e-12);
        // offset far outside the support: exactly zero
        let q = OccupationQuery { offset: [3.0, 0.0], interval: (0.0, 2.0), kernel: k };
        assert_eq!(occupation_functional(&frozen, &q).unwrap(), 0.0);
        // interval outside the horizon is a query error
        let q = OccupationQuery { offset: [0.0, 0.0], interval: (0.0, 5.0), kernel: k };
        assert!(occupation_functional(&frozen, &q).is_err());
    }

    #[test]
    fn occupation_additive_and_mirror_invariant() {
        let k = bump_kernel();
        let cfg = PathConfig::new(2.0, 0.01).unwrap();
        for i in 0..20 {
            let path = sample_relative_path(&cfg, SeedStream::new(77, i)).unwrap();
            let x = [0.3, -0.1];
            let split = 0.7137; // falls inside a grid cell on purpose
            let whole = occupation_functional(&path, &OccupationQuery { offset: x, interval: (0.0, 2.0), kernel: k }).unwrap();
            let left = occupation_functional(&path, &OccupationQuery { offset: x, interval: (0.0, split), kernel: k }).unwrap();
            let right = occupation_functional(&path, &OccupationQuery { offset: x, interval: (split, 2.0), kernel: k }).unwrap();
            assert!((left + right - whole).abs() <= 1e-12 * whole.max(1.0), "additivity");
            // R is even: mirrored path with mirrored offset gives the same value
            let mirrored = occupation_functional(
                &path.mirrored(),
                &OccupationQuery { offset: [-x[0], -x[1]], interval: (0.0, 2.0), kernel: k },
            )
            .unwrap();
            assert_eq!(mirrored, whole);
        }
    }

    #[test]
    fn value_helpers_on_frozen_inputs() {
        // crude sanity case: a path frozen at the origin sees the constant
        // integrand R(0), so the KR statistic is (ℓ/ε²)·R(0)/|log ε|
        let eps = 1e-3;
        let le = (1e3f64).ln();
        let k = bump_kernel();
        let occ = (1.0 / (eps * eps)) * k.r0();
        assert!((kr_value(eps, occ).unwrap() - occ / le).abs() / (occ / le) < 1e-15);
        let occ_small = 10.0 * k.r0();
        let want = (0.49 * occ_small / le).exp();
        assert!((exponent_value(0.7, eps, occ_small).unwrap() - want).abs() / want < 1e-14);
        assert_eq!(exponent_value(0.0, eps, 123.4).unwrap(), 1.0);
        assert!(kr_value(1.0, occ).is_err());
        assert!(kr_value(0.0, occ).is_err());
    }

    #[test]
    fn walker_mean_matches_heat_kernel_quadrature() {
        // E ∫_0^T R(B¹-B²) ds against the quadrature oracle
        // ∫_0^T ∫ R(z) G_{2s}(z) dz ds computed from the kernel table.
        let k = bump_kernel();
        let horizon = 5.0;
        let n = 10_000;
        let samples: Vec<f64> = (0..n)
            .map(|i| relative_occupation_sample(k, horizon, [0.0, 0.0], SeedStream::new(3000, i as u64)).unwrap())
            .collect();
        let (mean, se) = stats::mean_stderr(&samples);
        let oracle = crate::kernels::occupation_mean_oracle(k, horizon);
        assert!(
            (mean - oracle).abs() < 3.0 * se,
            "mean {mean:.5} vs oracle {oracle:.5} (se {se:.5})"
        );
    }

    #[test]
    fn f_estimate_beta_zero_is_one_with_zero_variance() {
        let k = bump_kernel();
        let r = f_estimate(k, 0.0, 1e-2, 0.5, [0.0, 0.0], 64, 5).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(r.stderr, 0.0);
    }

    #[test]
    fn f_estimate_monotone_in_beta_with_shared_seeds() {
        let k = bump_kernel();
        let lo = f_estimate(k, 0.5, 1e-2, 0.5, [0.0, 0.0], 200, 6).unwrap();
        let hi = f_estimate(k, 1.0, 1e-2, 0.5, [0.0, 0.0], 200, 6).unwrap();
        assert!(hi.value > lo.value);
    }

    #[test]
    fn estimators_reject_bad_domains() {
        let k = bump_kernel();
        assert!(f_estimate(k, 2.6, 1e-2, 1.0, [0.0, 0.0], 4, 0).is_err());
        assert!(f_estimate(k, 0.5, 1.0, 1.0, [0.0, 0.0], 4, 0).is_err());
        assert!(kr_sample(k, 1.2, 1.0, [0.0, 0.0], SeedStream::new(0, 0)).is_err());
        assert!(occupation_moment_estimate(k, 4, 0.1, 1.0, [0.5, 0.0], 4, 0).is_err());
    }

    #[test]
    fn estimates_are_reproducible_at_any_thread_count() {
        let k = bump_kernel();
        let run = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            pool.install(|| f_estimate(k, 0.8, 1e-2, 0.5, [0.1, 0.0], 64, 99).unwrap())
        };
        let a = run(1);
        let b = run(2);
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.stderr.to_bits(), b.stderr.to_bits());
    }
}

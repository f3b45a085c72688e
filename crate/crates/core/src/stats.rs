//! Statistics toolkit: sample reductions, jackknife errors and the
//! goodness-of-fit machinery (Kolmogorov-Smirnov against an exact reference
//! CDF, Anderson-Darling normality with estimated parameters).

use crate::error::{Error, Result};

/// Sample mean and standard error (`sd / √n`).
pub fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len();
    assert!(n >= 1);
    let mean = xs.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

/// Unbiased sample variance.
pub fn sample_variance(xs: &[f64]) -> f64 {
    let n = xs.len();
    assert!(n >= 2);
    let mean = xs.iter().sum::<f64>() / n as f64;
    xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1) as f64
}

/// Jackknife standard error of the sample variance.
pub fn jackknife_variance_se(xs: &[f64]) -> f64 {
    let n = xs.len();
    assert!(n >= 3);
    let nf = n as f64;
    let s1: f64 = xs.iter().sum();
    let s2: f64 = xs.iter().map(|x| x * x).sum();
    let m = nf - 1.0;
    let loo: Vec<f64> = xs
        .iter()
        .map(|x| {
            let s1p = s1 - x;
            let s2p = s2 - x * x;
            (s2p - s1p * s1p / m) / (m - 1.0)
        })
        .collect();
    let loo_mean = loo.iter().sum::<f64>() / nf;
    let ss = loo.iter().map(|v| (v - loo_mean) * (v - loo_mean)).sum::<f64>();
    ((nf - 1.0) / nf * ss).sqrt()
}

/// Sample skewness `m₃ / m₂^{3/2}`.
pub fn skewness(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let m2 = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    let m3 = xs.iter().map(|x| (x - mean).powi(3)).sum::<f64>() / n;
    m3 / m2.powf(1.5)
}

/// Standard error of the skewness of a normal sample.
pub fn skewness_se(n: usize) -> f64 {
    let n = n as f64;
    (6.0 * n * (n - 1.0) / ((n - 2.0) * (n + 1.0) * (n + 3.0))).sqrt()
}

/// Complementary error function (Chebyshev fit, relative error ≤ 1.2e-7).
pub fn erfc(x: f64) -> f64 {
    let z = x.abs();
    let t = 1.0 / (1.0 + 0.5 * z);
    let ans = t * (-z * z - 1.26551223
        + t * (1.00002368
            + t * (0.37409196
                + t * (0.09678418
                    + t * (-0.18628806
                        + t * (0.27886807
                            + t * (-1.13520398
                                + t * (1.48851587 + t * (-0.82215223 + t * 0.17087277)))))))))
        .exp();
    if x >= 0.0 {
        ans
    } else {
        2.0 - ans
    }
}

/// Standard normal CDF.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / std::f64::consts::SQRT_2)
}

/// One-sample Kolmogorov-Smirnov statistic against an exact reference CDF.
pub fn ks_statistic(sample: &[f64], cdf: impl Fn(f64) -> f64) -> Result<f64> {
    if sample.len() < 2 {
        return Err(Error::config("KS statistic needs at least 2 samples"));
    }
    let mut xs = sample.to_vec();
    if xs.iter().any(|x| x.is_nan()) {
        return Err(Error::numerical("KS sample contains NaN"));
    }
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len() as f64;
    let mut d = 0.0f64;
    for (i, x) in xs.iter().enumerate() {
        let f = cdf(*x);
        let hi = (i + 1) as f64 / n - f;
        let lo = f - i as f64 / n;
        d = d.max(hi).max(lo);
    }
    Ok(d)
}

/// Asymptotic p-value of the one-sample KS statistic (Kolmogorov series with
/// the standard finite-`n` argument correction).
pub fn ks_p_value(d: f64, n: usize) -> f64 {
    let sn = (n as f64).sqrt();
    let lambda = (sn + 0.12 + 0.11 / sn) * d;
    kolmogorov_q(lambda)
}

fn kolmogorov_q(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for j in 1..=100 {
        let term = (-2.0 * (j as f64) * (j as f64) * lambda * lambda).exp();
        sum += sign * term;
        sign = -sign;
        if term < 1e-16 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Two-sample Kolmogorov-Smirnov statistic.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() < 2 || b.len() < 2 {
        return Err(Error::config("two-sample KS needs at least 2 samples each"));
    }
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_by(|p, q| p.partial_cmp(q).unwrap());
    ys.sort_by(|p, q| p.partial_cmp(q).unwrap());
    let (na, nb) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < xs.len() && j < ys.len() {
        let (fa, fb) = (i as f64 / na, j as f64 / nb);
        d = d.max((fa - fb).abs());
        if xs[i] <= ys[j] {
            i += 1;
        } else {
            j += 1;
        }
    }
    d = d.max((1.0 - j as f64 / nb).abs().max((1.0 - i as f64 / na).abs()));
    while i < xs.len() {
        d = d.max((i as f64 / na - 1.0).abs());
        i += 1;
    }
    Ok(d)
}

/// Result of the Anderson-Darling normality test with estimated mean and
/// variance (case 3).
#[derive(Debug, Clone, Copy)]
pub struct AndersonDarling {
    /// Modified statistic `A*² = A²(1 + 0.75/n + 2.25/n²)`.
    pub a2_star: f64,
    /// Rejection decision at the 1% level.
    pub reject_at_1pct: bool,
}

/// 1% critical value of `A*²` for normality with both parameters estimated
/// (Stephens' case 3).
pub const AD_CRITICAL_1PCT: f64 = 1.035;

pub fn anderson_darling_normal(sample: &[f64]) -> Result<AndersonDarling> {
    let n = sample.len();
    if n < 8 {
        return Err(Error::config("Anderson-Darling needs at least 8 samples"));
    }
    let (mean, _) = mean_stderr(sample);
    let sd = sample_variance(sample).sqrt();
    if !(sd > 0.0) {
        return Err(Error::numerical("degenerate sample in Anderson-Darling"));
    }
    let mut z: Vec<f64> = sample.iter().map(|x| (x - mean) / sd).collect();
    z.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let nf = n as f64;
    let mut a2 = -nf;
    for i in 0..n {
        let phi_lo = normal_cdf(z[i]).clamp(1e-300, 1.0 - 1e-15);
        let phi_hi = normal_cdf(z[n - 1 - i]).clamp(1e-300, 1.0 - 1e-15);
        a2 -= (2.0 * i as f64 + 1.0) / nf * (phi_lo.ln() + (1.0 - phi_hi).ln());
    }
    let a2_star = a2 * (1.0 + 0.75 / nf + 2.25 / (nf * nf));
    Ok(AndersonDarling { a2_star, reject_at_1pct: a2_star > AD_CRITICAL_1PCT })
}

/// CDF of the exponential distribution with the given mean.
pub fn exponential_cdf(mean: f64) -> impl Fn(f64) -> f64 {
    move |x: f64| if x <= 0.0 { 0.0 } else { 1.0 - (-x / mean).exp() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand_distr::StandardNormal;

    #[test]
    fn erfc_reference_values() {
        // the Chebyshev fit carries ~1.2e-7 relative error by construction
        assert!((erfc(0.0) - 1.0).abs() < 3e-7);
        assert!((erfc(1.0) - 0.15729920705028513).abs() < 3e-8);
        assert!((erfc(-1.0) - 1.8427007929497148).abs() < 3e-8);
        assert!((normal_cdf(1.959963984540054) - 0.975).abs() < 1e-7);
        // relative accuracy deep in the tail
        let want = 1.5374597944280349e-12; // erfc(5)
        assert!(((erfc(5.0) - want) / want).abs() < 1e-6);
    }

    #[test]
    fn ks_self_test_exponential() {
        let mut rng = crate::SeedStream::new(11, 0).rng();
        let mean = 0.5;
        let xs: Vec<f64> = (0..10_000).map(|_| -mean * rng.gen::<f64>().ln()).collect();
        let d = ks_statistic(&xs, exponential_cdf(mean)).unwrap();
        assert!(d < 0.02, "d = {d}");
        assert!(ks_p_value(d, xs.len()) > 0.01);
    }

    #[test]
    fn ks_power_against_wrong_rate() {
        let mut rng = crate::SeedStream::new(12, 0).rng();
        let xs: Vec<f64> = (0..10_000).map(|_| -2.0 * rng.gen::<f64>().ln()).collect();
        let d = ks_statistic(&xs, exponential_cdf(1.0)).unwrap();
        assert!(d > 0.1, "d = {d}");
        assert!(ks_p_value(d, xs.len()) < 1e-6);
    }

    #[test]
    fn ad_accepts_normal_sample() {
        let mut rng = crate::SeedStream::new(13, 0).rng();
        let xs: Vec<f64> = (0..10_000).map(|_| 3.0 + 2.0 * rng.sample::<f64, _>(StandardNormal)).collect();
        let ad = anderson_darling_normal(&xs).unwrap();
        assert!(!ad.reject_at_1pct, "A*² = {}", ad.a2_star);
    }

    #[test]
    fn ad_rejects_exponential_sample() {
        let mut rng = crate::SeedStream::new(14, 0).rng();
        let xs: Vec<f64> = (0..10_000).map(|_| -rng.gen::<f64>().ln()).collect();
        let ad = anderson_darling_normal(&xs).unwrap();
        assert!(ad.reject_at_1pct, "A*² = {}", ad.a2_star);
    }

    #[test]
    fn two_sample_ks_basics() {
        let a: Vec<f64> = (0..1000).map(|i| i as f64 / 1000.0).collect();
        let b: Vec<f64> = (0..800).map(|i| i as f64 / 800.0).collect();
        assert!(ks_two_sample(&a, &b).unwrap() < 0.01);
        let c: Vec<f64> = b.iter().map(|x| x + 0.5).collect();
        assert!(ks_two_sample(&a, &c).unwrap() > 0.4);
    }

    #[test]
    fn jackknife_matches_theory_for_gaussian() {
        // for iid normal data, SE(s²) ≈ s²·√(2/(n-1))
        let mut rng = crate::SeedStream::new(15, 0).rng();
        let xs: Vec<f64> = (0..4000).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let v = sample_variance(&xs);
        let se = jackknife_variance_se(&xs);
        let theory = v * (2.0 / (xs.len() as f64 - 1.0)).sqrt();
        assert!((se / theory - 1.0).abs() < 0.15, "se {se}, theory {theory}");
    }

    #[test]
    fn skewness_of_symmetric_sample_small() {
        let mut rng = crate::SeedStream::new(16, 0).rng();
        let xs: Vec<f64> = (0..20_000).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        assert!(skewness(&xs).abs() < 3.0 * skewness_se(xs.len()));
    }
}

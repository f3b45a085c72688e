use crate::stats::mean_stderr;

/// Monte Carlo output record: estimator value, standard error, replica count
/// and an echo of the parameters that produced it.
#[derive(Debug, Clone)]
pub struct EstimateReport {
    pub value: f64,
    /// Sample standard deviation divided by √replicas.
    pub stderr: f64,
    pub replicas: usize,
    /// Parameter echo in a fixed order (name, value).
    pub params: Vec<(String, f64)>,
    /// Wall-clock seconds spent producing the estimate.
    pub wall_time: f64,
}

impl EstimateReport {
    /// Reduce replica values in their natural (index) order.
    pub fn from_samples(samples: &[f64], params: Vec<(String, f64)>, wall_time: f64) -> Self {
        let (value, stderr) = mean_stderr(samples);
        EstimateReport { value, stderr, replicas: samples.len(), params, wall_time }
    }

    pub fn param(&self, name: &str) -> Option<f64> {
        self.params.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_samples() {
        let r = EstimateReport::from_samples(&[1.0, 2.0, 3.0], vec![("beta".into(), 0.5)], 0.0);
        assert_eq!(r.value, 2.0);
        assert_eq!(r.replicas, 3);
        assert!((r.stderr - (1.0f64 / 3.0).sqrt()).abs() < 1e-12);
        assert_eq!(r.param("beta"), Some(0.5));
    }
}

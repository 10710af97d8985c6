//! Statistics over ranging-signal time traces: binned standard deviation and
//! overlapping Allan deviation for stability analysis.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

/// Uniformly sampled dimensionless trace.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub samples: Vec<f64>,
    /// Spacing between samples, s.
    pub sample_interval: f64,
}

impl TimeSeries {
    pub fn new(samples: Vec<f64>, sample_interval: f64) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidSeries("need at least 2 samples"));
        }
        if !(sample_interval > 0.0) {
            return Err(Error::InvalidSeries("sample_interval must be positive"));
        }
        Ok(Self {
            samples,
            sample_interval,
        })
    }

    fn window_len(&self, duration: f64) -> Result<usize> {
        let ratio = duration / self.sample_interval;
        let m = math::round(ratio);
        if m < 1.0 || math::abs(ratio - m) > 1e-9 * ratio.max(1.0) {
            return Err(Error::InvalidTau { tau_s: duration });
        }
        Ok(m as usize)
    }
}

/// Standard deviation of non-overlapping window means (population convention).
pub fn normalized_std(series: &TimeSeries, averaging_time: f64) -> Result<f64> {
    let m = series.window_len(averaging_time)?;
    let windows = series.samples.len() / m;
    if windows < 2 {
        return Err(Error::InvalidSeries("fewer than 2 complete windows"));
    }
    let mut means = Vec::with_capacity(windows);
    for w in 0..windows {
        let slice = &series.samples[w * m..(w + 1) * m];
        means.push(slice.iter().sum::<f64>() / m as f64);
    }
    let grand = means.iter().sum::<f64>() / windows as f64;
    let var = means.iter().map(|&x| (x - grand) * (x - grand)).sum::<f64>() / windows as f64;
    Ok(math::sqrt(var))
}

/// Overlapping Allan deviation at the requested averaging times.
///
/// sigma^2(tau) = 1 / (2 (M - 2m + 1)) * sum_i (ybar_{i+m} - ybar_i)^2 with
/// ybar_i the mean of samples i..i+m-1 and tau = m * sample_interval.
/// Invalid taus get a per-entry error; the rest are still computed.
pub fn allan_deviation(series: &TimeSeries, taus: &[f64]) -> Vec<(f64, Result<f64>)> {
    // Prefix sums make each window mean O(1).
    let n = series.samples.len();
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(0.0f64);
    for &x in &series.samples {
        let last = *prefix.last().unwrap();
        prefix.push(last + x);
    }

    taus.iter()
        .map(|&tau| {
            let sigma = series.window_len(tau).and_then(|m| {
                if 2 * m > n {
                    return Err(Error::InvalidTau { tau_s: tau });
                }
                let terms = n - 2 * m + 1;
                let mut acc = 0.0f64;
                for i in 0..terms {
                    let a = (prefix[i + m] - prefix[i]) / m as f64;
                    let b = (prefix[i + 2 * m] - prefix[i + m]) / m as f64;
                    acc += (b - a) * (b - a);
                }
                Ok(math::sqrt(acc / (2.0 * terms as f64)))
            });
            (tau, sigma)
        })
        .collect()
}

/// Fluorescence deviation converted to ranging deviation, sigma_L = sigma_I / (dI/dL).
pub fn ranging_deviation(allan: &[(f64, f64)], response_per_length: f64) -> Vec<(f64, f64)> {
    allan
        .iter()
        .map(|&(tau, sigma)| (tau, sigma / response_per_length))
        .collect()
}

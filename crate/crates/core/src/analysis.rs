//! Scan-curve analysis and sensitivity arithmetic: FWHM versus N, position
//! response dI/dL, magnetic/electric/phase sensitivity and ranging accuracy.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::interferometer::RangingGeometry;
use crate::math;
use crate::physics::{rabi_frequency, rabi_population, NvEnsembleParams};
use crate::pulse::{scan_distance, PulseSequence};
use crate::SPEED_OF_LIGHT;

/// A normalized ranging signal sampled over strictly increasing positions.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanCurve {
    positions: Vec<f64>,
    values: Vec<f64>,
}

impl ScanCurve {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::InvalidParams("scan curve needs at least 3 points"));
        }
        for w in points.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(Error::InvalidParams("scan positions must be strictly increasing"));
            }
        }
        Ok(Self {
            positions: points.iter().map(|p| p.0).collect(),
            values: points.iter().map(|p| p.1).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.positions.iter().copied().zip(self.values.iter().copied())
    }

    /// Moving-average smoothed copy (window in points, made odd). Intended
    /// for noisy curves before feature extraction; the noise-free analysis
    /// path never needs it.
    pub fn smoothed(&self, window: usize) -> ScanCurve {
        let half = window.max(1) / 2;
        let n = self.len();
        let mut values = Vec::with_capacity(n);
        for i in 0..n {
            let lo = i.saturating_sub(half);
            let hi = (i + half + 1).min(n);
            let sum: f64 = self.values[lo..hi].iter().sum();
            values.push(sum / (hi - lo) as f64);
        }
        ScanCurve {
            positions: self.positions.clone(),
            values,
        }
    }
}

/// Inputs of the sensitivity/accuracy arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub struct SensitivityInputs {
    /// Normalized fluorescence standard deviation sigma_I / I0.
    pub noise_sigma: f64,
    /// Total measurement time t_m, s.
    pub measurement_time: f64,
    /// Normalized small-signal response dI/dB_RF, 1/T.
    pub response_per_field: f64,
    /// Normalized position response dI/dL, 1/m.
    pub response_per_length: f64,
}

fn interior_extrema(values: &[f64]) -> Vec<usize> {
    let mut out = Vec::new();
    let n = values.len();
    for i in 1..n - 1 {
        let left = values[i] - values[i - 1];
        let right = values[i + 1] - values[i];
        if (left > 0.0 && right < 0.0) || (left < 0.0 && right > 0.0) {
            out.push(i);
        }
    }
    out
}

/// Half-maximum crossing between grid points, walking outward from `peak_idx`
/// toward `stop_idx`. Returns the interpolated position.
fn half_crossing(
    positions: &[f64],
    values: &[f64],
    peak_idx: usize,
    stop_idx: usize,
    half_level: f64,
    is_max: bool,
) -> Option<f64> {
    let step: isize = if stop_idx >= peak_idx { 1 } else { -1 };
    let mut i = peak_idx as isize;
    loop {
        let next = i + step;
        if (step > 0 && next > stop_idx as isize) || (step < 0 && next < stop_idx as isize) {
            return None;
        }
        let (a, b) = (values[i as usize], values[next as usize]);
        let crossed = if is_max { b <= half_level } else { b >= half_level };
        if crossed {
            let t = (half_level - a) / (b - a);
            let xa = positions[i as usize];
            let xb = positions[next as usize];
            return Some(xa + t * (xb - xa));
        }
        i = next;
    }
}

/// Full width at half maximum of the feature nearest `center_hint`.
///
/// The half level lies midway between the feature extremum and the deeper of
/// the two adjacent baseline extrema (the curve edge value stands in when the
/// curve is monotonic out to the edge). Crossings are linearly interpolated;
/// a feature whose half level is not reached inside the curve is unbounded.
pub fn fwhm_of_feature(curve: &ScanCurve, center_hint: f64) -> Result<f64> {
    let x = curve.positions();
    let v = curve.values();
    let extrema = interior_extrema(v);
    let feature = extrema
        .iter()
        .copied()
        .min_by(|&a, &b| {
            let da = math::abs(x[a] - center_hint);
            let db = math::abs(x[b] - center_hint);
            da.partial_cmp(&db).unwrap()
        })
        .ok_or(Error::UnboundedFeature)?;
    let peak = v[feature];
    let is_max = v[feature] > v[feature - 1];

    // Baseline on each side: the next interior extremum, else the curve edge.
    let left_base = extrema
        .iter()
        .copied()
        .filter(|&i| i < feature)
        .max()
        .unwrap_or(0);
    let right_base = extrema
        .iter()
        .copied()
        .filter(|&i| i > feature)
        .min()
        .unwrap_or(v.len() - 1);

    // Common half level against the deeper of the two baselines; a feature
    // truncated by the curve edge then fails to reach it on the shallow side.
    let baseline = if is_max {
        v[left_base].min(v[right_base])
    } else {
        v[left_base].max(v[right_base])
    };
    let half = 0.5 * (peak + baseline);
    let xl = half_crossing(x, v, feature, left_base, half, is_max)
        .ok_or(Error::UnboundedFeature)?;
    let xr = half_crossing(x, v, feature, right_base, half, is_max)
        .ok_or(Error::UnboundedFeature)?;
    Ok(xr - xl)
}

/// Derivative dI/dL of a scan curve, 1/m. Central differences in the
/// interior, one-sided at the ends.
pub fn response_curve(curve: &ScanCurve) -> ScanCurve {
    let x = curve.positions();
    let v = curve.values();
    let n = x.len();
    let mut deriv = Vec::with_capacity(n);
    deriv.push((v[1] - v[0]) / (x[1] - x[0]));
    for i in 1..n - 1 {
        deriv.push((v[i + 1] - v[i - 1]) / (x[i + 1] - x[i - 1]));
    }
    deriv.push((v[n - 1] - v[n - 2]) / (x[n - 1] - x[n - 2]));
    ScanCurve {
        positions: x.to_vec(),
        values: deriv,
    }
}

/// Noise-free normalized fringe over one half wavelength, L in [0, lambda/2],
/// sampled at the default lambda/2000 step.
pub fn noise_free_fringe(
    params: &NvEnsembleParams,
    geometry: &RangingGeometry,
    n_pi: u32,
) -> Result<ScanCurve> {
    let lambda = geometry.wavelength();
    let step = lambda / 2000.0;
    let grid: Vec<f64> = (0..=1000).map(|i| i as f64 * step).collect();
    let sequence = PulseSequence {
        init_duration: 550e-9,
        rf_duration: 0.0,
        readout_duration: 550e-9,
        n_pi,
        repeats: 1,
    };
    let points = scan_distance(params, geometry, &sequence, &grid, 0, true)?;
    ScanCurve::new(points)
}

/// Largest |dI/dL| of the noise-free fringe for a given N, 1/m.
pub fn max_response(
    params: &NvEnsembleParams,
    geometry: &RangingGeometry,
    n_pi: u32,
) -> Result<f64> {
    let curve = noise_free_fringe(params, geometry, n_pi)?;
    let deriv = response_curve(&curve);
    Ok(deriv
        .values()
        .iter()
        .fold(0.0f64, |acc, &d| acc.max(math::abs(d))))
}

/// Ratio of the maximum |dI/dL| between two pulse numbers. The optical
/// contrast cancels exactly.
pub fn response_ratio(
    n_hi: u32,
    n_lo: u32,
    params: &NvEnsembleParams,
    geometry: &RangingGeometry,
) -> Result<f64> {
    if n_hi < 1 || n_lo < 1 {
        return Err(Error::Domain("pulse numbers must be at least 1"));
    }
    Ok(max_response(params, geometry, n_hi)? / max_response(params, geometry, n_lo)?)
}

/// Magnetic sensitivity eta_B = sigma * sqrt(t_m) / response, T/sqrt(Hz).
pub fn field_sensitivity(
    noise_sigma: f64,
    measurement_time: f64,
    response_per_field: f64,
) -> f64 {
    noise_sigma * math::sqrt(measurement_time) / response_per_field
}

/// Plane-wave electric sensitivity eta_E = c * eta_B, (V/m)/sqrt(Hz).
pub fn electric_sensitivity(field_sensitivity: f64) -> f64 {
    SPEED_OF_LIGHT * field_sensitivity
}

/// Relative magnetic sensitivity versus RF duration (proportionality
/// constant 1):
/// eta ~ (1 / (gamma k C sqrt(eps))) * sqrt(1 + t_RF/t_det) / (t_RF e^(-t_RF/tau)).
///
/// `t_rf = 0` returns positive infinity.
pub fn sensitivity_formula(
    t_rf: f64,
    t_det: f64,
    tau: f64,
    gamma: f64,
    conversion_gain: f64,
    contrast: f64,
    photon_eps: f64,
) -> f64 {
    if t_rf <= 0.0 {
        return f64::INFINITY;
    }
    let prefactor = 1.0 / (gamma * conversion_gain * contrast * math::sqrt(photon_eps));
    prefactor * math::sqrt(1.0 + t_rf / t_det) / (t_rf * math::exp(-t_rf / tau))
}

/// RF duration minimizing `sensitivity_formula`, golden-section search over
/// (0, 10 tau] to well below 0.1 ns.
pub fn optimal_rf_duration(t_det: f64, tau: f64) -> f64 {
    let f = |t: f64| sensitivity_formula(t, t_det, tau, 1.0, 1.0, 1.0, 1.0);
    let mut lo = 1e-3 * tau;
    let mut hi = 10.0 * tau;
    let inv_phi = 0.618_033_988_749_894_9_f64;
    let mut a = hi - inv_phi * (hi - lo);
    let mut b = lo + inv_phi * (hi - lo);
    let mut fa = f(a);
    let mut fb = f(b);
    while hi - lo > 1e-12 {
        if fa < fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = f(b);
        }
    }
    0.5 * (lo + hi)
}

/// Ranging accuracy deltaL = sigma_I / (dI/dL), m.
pub fn ranging_accuracy(noise_sigma: f64, response_per_length: f64) -> f64 {
    noise_sigma / response_per_length
}

/// Phase sensitivity deltaPhi = 4 pi deltaL / lambda, rad.
pub fn phase_sensitivity(accuracy: f64, wavelength: f64) -> f64 {
    4.0 * core::f64::consts::PI * accuracy / wavelength
}

/// Noise-free small-signal response |d(normalized I)/dB_RF| at the
/// maximum-response bias point (Omega t_RF = pi/2), 1/T.
pub fn field_response(params: &NvEnsembleParams, t_rf: f64) -> Result<f64> {
    if !(t_rf > 0.0) {
        return Err(Error::Domain("t_rf must be positive"));
    }
    let gk = params.gyromagnetic_ratio * params.conversion_gain;
    let bias = 1.0 / (4.0 * gk * t_rf);
    let delta = bias * 1e-6;
    let signal = |b_rf: f64| -> Result<f64> {
        let omega = rabi_frequency(b_rf * params.conversion_gain, params)?;
        let rho = rabi_population(omega, t_rf, params.decay_time).population_ms0;
        Ok(1.0 - params.contrast * (1.0 - rho))
    };
    Ok(math::abs(signal(bias + delta)? - signal(bias - delta)?) / (2.0 * delta))
}

/// Contrast C that makes the noise-free small-signal slope
/// |d(normalized I)/dB_RF| at the maximum-response bias point equal
/// `target_response`.
///
/// The slope is linear in C, so the root is closed-form; the slope per unit
/// contrast is still measured numerically on the full model.
pub fn calibrate_contrast(
    target_response: f64,
    params: &NvEnsembleParams,
    t_rf: f64,
) -> Result<f64> {
    if target_response < 0.0 {
        return Err(Error::Domain("target response must be non-negative"));
    }
    if !(t_rf > 0.0) {
        return Err(Error::Domain("t_rf must be positive"));
    }
    if target_response == 0.0 {
        return Ok(0.0);
    }
    // Maximum-response bias point: Omega * t_rf = pi/2.
    let gk = params.gyromagnetic_ratio * params.conversion_gain;
    let bias = 1.0 / (4.0 * gk * t_rf);
    let signal = |b_rf: f64, contrast: f64| -> Result<f64> {
        let omega = rabi_frequency(b_rf * params.conversion_gain, params)?;
        let rho = rabi_population(omega, t_rf, params.decay_time).population_ms0;
        Ok(1.0 - contrast * (1.0 - rho))
    };
    let delta = bias * 1e-6;
    let slope_unit_c =
        math::abs(signal(bias + delta, 1.0)? - signal(bias - delta, 1.0)?) / (2.0 * delta);
    let contrast = target_response / slope_unit_c;
    if contrast > 1.0 {
        return Err(Error::UnreachableResponse);
    }
    Ok(contrast)
}

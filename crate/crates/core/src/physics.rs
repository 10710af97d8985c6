//! Spin-level forward model: resonance frequencies, ODMR line shape and Rabi
//! population dynamics with an exponential decoherence envelope.

use crate::error::{Error, Result};
use crate::math;

/// Sensor constants of the NV-center ensemble.
///
/// All frequencies in Hz, fields in T, times in s.
#[derive(Debug, Clone, PartialEq)]
pub struct NvEnsembleParams {
    /// Zero-field splitting D, Hz.
    pub zero_field_splitting: f64,
    /// Electron-spin gyromagnetic ratio, Hz/T.
    pub gyromagnetic_ratio: f64,
    /// Static bias field along the NV axis, T. May be zero or negative as
    /// long as both resonances stay positive.
    pub bias_field: f64,
    /// Rabi envelope decay time tau, s.
    pub decay_time: f64,
    /// Optical contrast C between spin states, in (0, 1].
    pub contrast: f64,
    /// Detected fluorescence rate at full collection, counts/s.
    pub photon_rate: f64,
    /// Deliberate attenuation of the collection, in (0, 1].
    pub collection_factor: f64,
    /// Free-space to local field conversion gain k (dimensionless).
    pub conversion_gain: f64,
    /// FWHM of each ODMR Lorentzian dip, Hz.
    pub odmr_linewidth: f64,
}

impl NvEnsembleParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.zero_field_splitting > 0.0) {
            return Err(Error::InvalidParams("zero_field_splitting must be positive"));
        }
        if !(self.gyromagnetic_ratio > 0.0) {
            return Err(Error::InvalidParams("gyromagnetic_ratio must be positive"));
        }
        if !self.bias_field.is_finite() {
            return Err(Error::InvalidParams("bias_field must be finite"));
        }
        if !(self.decay_time > 0.0) {
            return Err(Error::InvalidParams("decay_time must be positive"));
        }
        if !(self.contrast > 0.0 && self.contrast <= 1.0) {
            return Err(Error::InvalidParams("contrast must be in (0, 1]"));
        }
        if !(self.photon_rate > 0.0) {
            return Err(Error::InvalidParams("photon_rate must be positive"));
        }
        if !(self.collection_factor > 0.0 && self.collection_factor <= 1.0) {
            return Err(Error::InvalidParams("collection_factor must be in (0, 1]"));
        }
        if !(self.conversion_gain > 0.0) {
            return Err(Error::InvalidParams("conversion_gain must be positive"));
        }
        if !(self.odmr_linewidth > 0.0) {
            return Err(Error::InvalidParams("odmr_linewidth must be positive"));
        }
        let (plus, minus) = resonance_frequencies(self);
        if !(plus > 0.0 && minus > 0.0) {
            return Err(Error::InvalidParams("both spin resonances must be positive"));
        }
        Ok(())
    }
}

/// Population of the ms = 0 state, in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinState {
    pub population_ms0: f64,
}

/// Transition frequencies (omega_plus, omega_minus) = D +- gamma * Bz, Hz.
pub fn resonance_frequencies(params: &NvEnsembleParams) -> (f64, f64) {
    let zeeman = params.gyromagnetic_ratio * params.bias_field;
    (
        params.zero_field_splitting + zeeman,
        params.zero_field_splitting - zeeman,
    )
}

/// Rabi angular frequency Omega = 2 pi gamma B_loc, rad/s.
pub fn rabi_frequency(local_field: f64, params: &NvEnsembleParams) -> Result<f64> {
    if local_field < 0.0 {
        return Err(Error::Domain("local field must be non-negative"));
    }
    Ok(2.0 * core::f64::consts::PI * params.gyromagnetic_ratio * local_field)
}

/// ms = 0 population after driving for time `t` at Rabi frequency `omega`,
/// with the oscillation amplitude decaying as exp(-t/tau).
///
/// `tau = f64::INFINITY` recovers the undamped oscillation exactly.
pub fn rabi_population(omega: f64, t: f64, tau: f64) -> SpinState {
    let envelope = math::exp(-t / tau);
    SpinState {
        population_ms0: 0.5 * (1.0 + envelope * math::cos(omega * t)),
    }
}

/// Fractional fluorescence reduction at `probe_frequency`: a sum of two
/// Lorentzian dips of depth C and FWHM `odmr_linewidth` centered on the two
/// spin resonances, saturated at C where the dips overlap.
pub fn odmr_contrast(probe_frequency: f64, params: &NvEnsembleParams) -> f64 {
    let (plus, minus) = resonance_frequencies(params);
    let hw = params.odmr_linewidth / 2.0;
    let lorentz = |center: f64| {
        let detuning = probe_frequency - center;
        hw * hw / (detuning * detuning + hw * hw)
    };
    let sum = params.contrast * (lorentz(plus) + lorentz(minus));
    sum.min(params.contrast)
}

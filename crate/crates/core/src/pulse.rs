//! Measurement pulse sequence: initialize, RF-drive, read out. Produces
//! photon-count records with shot noise.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::interferometer::{
    interference_amplitude, local_field, phase_from_distance, RangingGeometry,
};
use crate::physics::{rabi_frequency, rabi_population, NvEnsembleParams, SpinState};
use crate::rng;

/// Timing and repetition of one ranging measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseSequence {
    /// Laser initialization pulse, s. The reference counts are collected here.
    pub init_duration: f64,
    /// RF drive duration, s. Ignored when `n_pi > 0`.
    pub rf_duration: f64,
    /// Laser readout pulse, s.
    pub readout_duration: f64,
    /// N of the N-pi pulse; 0 selects the free-form `rf_duration`.
    pub n_pi: u32,
    /// Number of sequence repetitions averaged into one record.
    pub repeats: u64,
}

impl PulseSequence {
    pub fn validate(&self) -> Result<()> {
        if !(self.init_duration > 0.0 && self.readout_duration > 0.0) {
            return Err(Error::InvalidParams("laser pulse durations must be positive"));
        }
        if self.n_pi == 0 && !(self.rf_duration > 0.0) {
            return Err(Error::InvalidParams("rf_duration must be positive when n_pi = 0"));
        }
        if self.repeats < 1 {
            return Err(Error::InvalidParams("repeats must be at least 1"));
        }
        Ok(())
    }

    /// RF drive duration actually applied: the N-pi duration when `n_pi > 0`,
    /// otherwise the free-form `rf_duration`.
    pub fn effective_rf_duration(
        &self,
        params: &NvEnsembleParams,
        geometry: &RangingGeometry,
    ) -> Result<f64> {
        if self.n_pi == 0 {
            Ok(self.rf_duration)
        } else {
            n_pi_duration(
                self.n_pi,
                geometry.reference_amplitude,
                params.conversion_gain,
                params.gyromagnetic_ratio,
            )
        }
    }
}

/// Photon counts of one averaged measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectionRecord {
    /// Reference counts I0 summed over repeats.
    pub reference_counts: u64,
    /// Ranging-signal counts I(L) summed over repeats.
    pub signal_counts: u64,
    /// signal_counts / reference_counts.
    pub normalized_signal: f64,
    /// Seed of the stream that produced this record.
    pub rng_seed: u64,
}

/// Duration of an N-pi drive, t_RF = N / (4 k gamma B1).
///
/// With this duration Omega * t_RF = N pi at the constructive-interference
/// point B_RF = 2 B1.
pub fn n_pi_duration(n: u32, b1: f64, conversion_gain: f64, gyromagnetic_ratio: f64) -> Result<f64> {
    if n < 1 {
        return Err(Error::Domain("N must be at least 1"));
    }
    if !(b1 > 0.0 && conversion_gain > 0.0 && gyromagnetic_ratio > 0.0) {
        return Err(Error::Domain("B1, k and gamma must be positive"));
    }
    Ok(n as f64 / (4.0 * conversion_gain * gyromagnetic_ratio * b1))
}

/// Mean detected photons per shot for spin state `rho` read out for
/// `readout_duration`: rate * collection * duration * (1 - C (1 - rho)).
pub fn expected_fluorescence(
    rho: SpinState,
    params: &NvEnsembleParams,
    readout_duration: f64,
) -> f64 {
    params.photon_rate
        * params.collection_factor
        * readout_duration
        * (1.0 - params.contrast * (1.0 - rho.population_ms0))
}

/// Spin state after the RF drive for a target at `geometry.target_distance`.
pub fn spin_state_at_distance(
    params: &NvEnsembleParams,
    geometry: &RangingGeometry,
    rf_duration: f64,
) -> Result<SpinState> {
    let phase = phase_from_distance(geometry.target_distance, geometry.wavelength())?;
    let b_rf = interference_amplitude(
        geometry.reference_amplitude,
        geometry.signal_amplitude,
        phase,
    );
    let b_loc = local_field(b_rf, params.conversion_gain);
    let omega = rabi_frequency(b_loc, params)?;
    Ok(rabi_population(omega, rf_duration, params.decay_time))
}

/// Noise-free normalized signal: mean I(L) divided by mean I0.
pub fn mean_normalized_signal(
    params: &NvEnsembleParams,
    geometry: &RangingGeometry,
    sequence: &PulseSequence,
) -> Result<f64> {
    let rf = sequence.effective_rf_duration(params, geometry)?;
    let rho = spin_state_at_distance(params, geometry, rf)?;
    let bright = SpinState { population_ms0: 1.0 };
    Ok(expected_fluorescence(rho, params, sequence.readout_duration)
        / expected_fluorescence(bright, params, sequence.init_duration))
}

/// One averaged measurement with shot noise, deterministic for a fixed seed.
///
/// Reference and signal counts are shot-noise limited: summed over repeats
/// they follow a counting distribution whose total mean is repeats times the
/// per-shot mean (counting statistics are additive, so the total is drawn
/// directly).
pub fn simulate_measurement(
    params: &NvEnsembleParams,
    geometry: &RangingGeometry,
    sequence: &PulseSequence,
    seed: u64,
) -> Result<DetectionRecord> {
    params.validate()?;
    geometry.validate()?;
    sequence.validate()?;
    let rf = sequence.effective_rf_duration(params, geometry)?;
    let rho = spin_state_at_distance(params, geometry, rf)?;
    let bright = SpinState { population_ms0: 1.0 };
    let ref_mean = sequence.repeats as f64
        * expected_fluorescence(bright, params, sequence.init_duration);
    let sig_mean = sequence.repeats as f64
        * expected_fluorescence(rho, params, sequence.readout_duration);

    let mut gen = rng::generator(seed);
    let reference_counts = rng::counting_draw(&mut gen, ref_mean);
    let signal_counts = rng::counting_draw(&mut gen, sig_mean);
    if reference_counts == 0 {
        return Err(Error::Domain("reference counts are zero; raise photon_rate or repeats"));
    }
    Ok(DetectionRecord {
        reference_counts,
        signal_counts,
        normalized_signal: signal_counts as f64 / reference_counts as f64,
        rng_seed: seed,
    })
}

/// Normalized signal over a grid of target distances.
///
/// Each point gets an independent stream derived from `seed` and its index,
/// so the output is identical regardless of evaluation order. `noise_free`
/// replaces sampling with the exact means.
pub fn scan_distance(
    params: &NvEnsembleParams,
    geometry: &RangingGeometry,
    sequence: &PulseSequence,
    distances: &[f64],
    seed: u64,
    noise_free: bool,
) -> Result<Vec<(f64, f64)>> {
    if distances.is_empty() {
        return Err(Error::Domain("distance grid must not be empty"));
    }
    let mut out = Vec::with_capacity(distances.len());
    for (i, &distance) in distances.iter().enumerate() {
        let mut point_geometry = geometry.clone();
        point_geometry.target_distance = distance;
        let value = if noise_free {
            mean_normalized_signal(params, &point_geometry, sequence)?
        } else {
            simulate_measurement(
                params,
                &point_geometry,
                sequence,
                rng::stream_seed(seed, i as u64),
            )?
            .normalized_signal
        };
        out.push((distance, value));
    }
    Ok(out)
}

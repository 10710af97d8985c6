//! Free-space RF interferometer: distance to phase, phase to interference
//! amplitude, and free-space amplitude to local field at the sensor.

use crate::error::{Error, Result};
use crate::math;
use crate::SPEED_OF_LIGHT;

/// Geometry and amplitudes of the two-path RF link.
#[derive(Debug, Clone, PartialEq)]
pub struct RangingGeometry {
    /// Carrier frequency, Hz.
    pub carrier_frequency: f64,
    /// One-way distance to the reflector, m.
    pub target_distance: f64,
    /// Reference-path magnetic amplitude at the sensor, T.
    pub reference_amplitude: f64,
    /// Backscattered-path magnetic amplitude at the sensor, T.
    pub signal_amplitude: f64,
}

impl RangingGeometry {
    /// Free-space wavelength, m. Derived so that wavelength * frequency = c
    /// holds to machine precision by construction.
    pub fn wavelength(&self) -> f64 {
        SPEED_OF_LIGHT / self.carrier_frequency
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.carrier_frequency > 0.0) {
            return Err(Error::InvalidParams("carrier_frequency must be positive"));
        }
        if !(self.target_distance >= 0.0) {
            return Err(Error::InvalidParams("target_distance must be non-negative"));
        }
        if !(self.reference_amplitude >= 0.0 && self.signal_amplitude >= 0.0) {
            return Err(Error::InvalidParams("path amplitudes must be non-negative"));
        }
        Ok(())
    }
}

/// Round-trip interferometer phase phi = 4 pi L / lambda, rad.
///
/// Returned unreduced; modular arithmetic belongs to the ambiguity logic.
pub fn phase_from_distance(distance: f64, wavelength: f64) -> Result<f64> {
    if !(wavelength > 0.0) {
        return Err(Error::Domain("wavelength must be positive"));
    }
    if distance < 0.0 {
        return Err(Error::Domain("distance must be non-negative"));
    }
    Ok(4.0 * core::f64::consts::PI * distance / wavelength)
}

/// Total magnetic amplitude of the two-path interference,
/// B_RF = sqrt(Ba^2 + Bb^2 + 2 Ba Bb cos phi).
///
/// For equal amplitudes this reduces to 2 B1 |cos(phi/2)|.
pub fn interference_amplitude(reference: f64, signal: f64, phase: f64) -> f64 {
    let sq = reference * reference + signal * signal
        + 2.0 * reference * signal * math::cos(phase);
    // Guard tiny negative round-off at deep destructive interference.
    math::sqrt(sq.max(0.0))
}

/// Local field at the sensor, B_loc = k * B_RF.
pub fn local_field(free_space_amplitude: f64, conversion_gain: f64) -> f64 {
    conversion_gain * free_space_amplitude
}

//! Integer-ambiguity handling via dual-frequency phase measurements,
//! unambiguous-range arithmetic and Doppler negligibility checks.

use crate::error::{Error, Result};
use crate::math;
use crate::SPEED_OF_LIGHT;

const TWO_PI: f64 = 2.0 * core::f64::consts::PI;

/// Phases measured at the two spin resonances.
#[derive(Debug, Clone, PartialEq)]
pub struct DualPhaseMeasurement {
    /// Interferometer phase at omega_plus, rad in [0, 2 pi).
    pub phase_plus: f64,
    /// Interferometer phase at omega_minus, rad in [0, 2 pi).
    pub phase_minus: f64,
    /// Upper carrier frequency, Hz.
    pub omega_plus: f64,
    /// Lower carrier frequency, Hz.
    pub omega_minus: f64,
}

/// Outcome of the two-frequency integer-ambiguity resolution.
#[derive(Debug, Clone, PartialEq)]
pub struct AmbiguityResolution {
    /// Fine-phase distance estimate, m.
    pub distance: f64,
    /// Resolved integer number of fine half-wavelength fringes.
    pub integer: i64,
    /// Disagreement between coarse (beat) and fine reconstructions, m.
    pub residual: f64,
}

/// Margin of a Doppler shift against the ODMR linewidth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DopplerMargin {
    /// True when |f_d| is at least two decades below the linewidth.
    pub negligible: bool,
    /// |f_d| / linewidth.
    pub ratio: f64,
}

/// Maximum unambiguous range with a single carrier, R_max = c / (2 f).
pub fn max_unambiguous_range_single(frequency: f64) -> f64 {
    SPEED_OF_LIGHT / (2.0 * frequency)
}

/// Maximum unambiguous range of the dual-frequency (beat) measurement,
/// R_max = c / (2 (omega_plus - omega_minus)); the single-carrier range
/// extended by omega_plus / (omega_plus - omega_minus).
pub fn max_unambiguous_range_dual(omega_plus: f64, omega_minus: f64) -> Result<f64> {
    if !(omega_plus > 0.0 && omega_minus > 0.0) {
        return Err(Error::Domain("carrier frequencies must be positive"));
    }
    if omega_plus <= omega_minus {
        return Err(Error::DegenerateFrequencies);
    }
    Ok(SPEED_OF_LIGHT / (2.0 * (omega_plus - omega_minus)))
}

/// Wide-lane resolution of the integer ambiguity.
///
/// The beat phase (phase_plus - phase_minus) mod 2 pi gives a coarse distance
/// over the dual-frequency range; rounding against the fine fringe of
/// omega_plus recovers the integer, and the fine phase gives the estimate.
pub fn resolve_ambiguity(m: &DualPhaseMeasurement) -> Result<AmbiguityResolution> {
    if m.omega_plus <= m.omega_minus || m.omega_minus <= 0.0 {
        return Err(Error::DegenerateFrequencies);
    }
    let fine_fringe = max_unambiguous_range_single(m.omega_plus);
    let coarse_range = max_unambiguous_range_dual(m.omega_plus, m.omega_minus)?;

    let phase_plus = math::rem_euclid(m.phase_plus, TWO_PI);
    let beat = math::rem_euclid(m.phase_plus - m.phase_minus, TWO_PI);
    let coarse = beat / TWO_PI * coarse_range;

    let fine_fraction = phase_plus / TWO_PI;
    let integer = math::round(coarse / fine_fringe - fine_fraction) as i64;
    let distance = (integer as f64 + fine_fraction) * fine_fringe;
    let residual = math::abs(distance - coarse);
    if residual > fine_fringe / 2.0 {
        return Err(Error::AmbiguityResolution { residual_m: residual });
    }
    Ok(AmbiguityResolution {
        distance,
        integer,
        residual,
    })
}

/// Doppler shift of the reflected carrier, f_d = 2 v / lambda (signed).
pub fn doppler_shift(speed: f64, wavelength: f64) -> f64 {
    2.0 * speed / wavelength
}

/// Whether a Doppler shift is negligible against the ODMR linewidth
/// (two-decade margin), plus the raw ratio for caller-side policies.
pub fn doppler_negligible(doppler: f64, odmr_linewidth: f64) -> DopplerMargin {
    let ratio = math::abs(doppler) / odmr_linewidth;
    DopplerMargin {
        negligible: ratio < 0.01,
        ratio,
    }
}

//! Subcommand implementations: each one computes through the core crate and
//! emits CSV or JSON.

use std::path::Path;

use serde_json::{json, Map, Value};

use nvrange_core::{ambiguity, analysis, interferometer, physics, pulse, rng, stats};
use nvrange_core::SPEED_OF_LIGHT;

use crate::config::InstrumentConfig;
use crate::output::{write_csv, write_json};
use crate::{AmbiguityArgs, CliError, MetricsArgs, OdmrArgs, RabiArgs, ScanArgs, TrackArgs};

fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![lo];
    }
    (0..points)
        .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
        .collect()
}

pub fn odmr(config: &InstrumentConfig, args: &OdmrArgs, out: Option<&Path>) -> Result<(), CliError> {
    if args.points < 2 {
        return Err(CliError::Usage("points must be at least 2".into()));
    }
    if !(args.f_min > 0.0 && args.f_max > args.f_min) {
        return Err(CliError::Usage("need 0 < f_min < f_max".into()));
    }
    let params = config.params();
    let rows = linspace(args.f_min, args.f_max, args.points)
        .into_iter()
        .map(move |f| vec![f, 1.0 - physics::odmr_contrast(f, &params)]);
    write_csv(out, "frequency_hz,normalized_fluorescence", rows)
}

pub fn rabi(config: &InstrumentConfig, args: &RabiArgs, out: Option<&Path>) -> Result<(), CliError> {
    if args.points < 2 {
        return Err(CliError::Usage("points must be at least 2".into()));
    }
    if !(args.t_max > 0.0) {
        return Err(CliError::Usage("t_max must be positive".into()));
    }
    let params = config.params();
    let geometry = config.geometry();
    let phase =
        interferometer::phase_from_distance(geometry.target_distance, geometry.wavelength())?;
    let b_rf = interferometer::interference_amplitude(
        geometry.reference_amplitude,
        geometry.signal_amplitude,
        phase,
    );
    let omega = physics::rabi_frequency(
        interferometer::local_field(b_rf, params.conversion_gain),
        &params,
    )?;
    let rows = linspace(0.0, args.t_max, args.points).into_iter().map(move |t| {
        let rho = physics::rabi_population(omega, t, params.decay_time).population_ms0;
        vec![t, rho, 1.0 - params.contrast * (1.0 - rho)]
    });
    write_csv(out, "time_s,population,normalized_fluorescence", rows)
}

pub fn scan(config: &InstrumentConfig, args: &ScanArgs, out: Option<&Path>) -> Result<(), CliError> {
    if args.points < 2 {
        return Err(CliError::Usage("points must be at least 2".into()));
    }
    if !(args.l_span > 0.0) {
        return Err(CliError::Usage("L_span must be positive".into()));
    }
    let params = config.params();
    let geometry = config.geometry();
    let mut sequence = config.sequence();
    sequence.n_pi = args.n_pi;
    if let Some(repeats) = args.repeats {
        sequence.repeats = repeats;
    }
    sequence.validate()?;
    let grid = linspace(
        args.l_center - args.l_span / 2.0,
        args.l_center + args.l_span / 2.0,
        args.points,
    );
    let points = pulse::scan_distance(
        &params,
        &geometry,
        &sequence,
        &grid,
        config.seed,
        args.noise_free,
    )?;
    write_csv(
        out,
        "distance_m,normalized_signal",
        points.into_iter().map(|(l, v)| vec![l, v]),
    )
}

pub fn metrics(
    config: &InstrumentConfig,
    args: &MetricsArgs,
    out: Option<&Path>,
) -> Result<(), CliError> {
    if args.n_list.is_empty() {
        return Err(CliError::Usage("N_list must not be empty".into()));
    }
    let params = config.params();
    let geometry = config.geometry();
    let lambda = geometry.wavelength();
    let sequence = config.sequence();
    let rf = sequence.effective_rf_duration(&params, &geometry)?;

    let response_field = analysis::field_response(&params, rf)?;
    let eta_attenuated = analysis::field_sensitivity(
        config.noise.sigma_normalized_at_tm,
        config.noise.std_measurement_time_s,
        response_field,
    );
    // Restoring full collection scales shot noise by sqrt(collection_factor).
    let eta_full = eta_attenuated * params.collection_factor.sqrt();
    let eta_electric = analysis::electric_sensitivity(eta_full);

    let mut per_n = Map::new();
    for &n in &args.n_list {
        if n < 1 {
            return Err(CliError::Usage("N_list entries must be at least 1".into()));
        }
        let curve = analysis::noise_free_fringe(&params, &geometry, n)?;
        let fwhm = analysis::fwhm_of_feature(&curve, lambda / 4.0)?;
        let didl = analysis::max_response(&params, &geometry, n)?;
        let accuracy = analysis::ranging_accuracy(config.noise.sigma_normalized_at_1s, didl);
        let phase = analysis::phase_sensitivity(accuracy, lambda);
        per_n.insert(
            n.to_string(),
            json!({
                "accuracy_m_at_1s": accuracy,
                "fwhm_m": fwhm,
                "max_didl_per_m": didl,
                "phase_rad_per_rthz": phase,
            }),
        );
    }

    let report = json!({
        "electric_sensitivity_v_per_m_rthz": eta_electric,
        "field_sensitivity_attenuated_t_rthz": eta_attenuated,
        "field_sensitivity_full_collection_t_rthz": eta_full,
        "per_n": Value::Object(per_n),
    });
    write_json(out, &report)
}

pub fn track(config: &InstrumentConfig, args: &TrackArgs, out: Option<&Path>) -> Result<(), CliError> {
    if !(args.sample_interval > 0.0 && args.duration > 0.0) {
        return Err(CliError::Usage("duration and sample_interval must be positive".into()));
    }
    let samples = (args.duration / args.sample_interval).floor() as usize;
    if samples < 4 {
        return Err(CliError::Usage("trace needs at least 4 samples".into()));
    }
    let params = config.params();
    let geometry = config.geometry();
    let sequence = config.sequence();

    let mut values = Vec::with_capacity(samples);
    let noise_free_value = pulse::mean_normalized_signal(&params, &geometry, &sequence)?;
    for i in 0..samples {
        let t = i as f64 * args.sample_interval;
        let base = if args.noise_free {
            noise_free_value
        } else {
            pulse::simulate_measurement(
                &params,
                &geometry,
                &sequence,
                rng::stream_seed(config.seed, i as u64),
            )?
            .normalized_signal
        };
        values.push(base + config.drift_rate_per_s * t);
    }

    let rows = values
        .iter()
        .enumerate()
        .map(|(i, &v)| vec![i as f64 * args.sample_interval, v]);
    write_csv(out, "time_s,normalized_signal", rows)?;

    let series = stats::TimeSeries::new(values, args.sample_interval)?;
    let mut taus = Vec::new();
    let mut m = 1usize;
    while 2 * m <= samples {
        taus.push(m as f64 * args.sample_interval);
        m *= 2;
    }
    let table: Vec<Value> = stats::allan_deviation(&series, &taus)
        .into_iter()
        .filter_map(|(tau, sigma)| sigma.ok().map(|s| json!({"sigma": s, "tau_s": tau})))
        .collect();
    write_json(args.allan_out.as_deref(), &Value::Array(table))
}

pub fn ambiguity(
    config: &InstrumentConfig,
    args: &AmbiguityArgs,
    out: Option<&Path>,
) -> Result<(), CliError> {
    if args.l_true < 0.0 {
        return Err(CliError::Usage("L_true must be non-negative".into()));
    }
    if args.phase_noise < 0.0 {
        return Err(CliError::Usage("phase_noise must be non-negative".into()));
    }
    let params = config.params();
    let (omega_plus, omega_minus) = physics::resonance_frequencies(&params);
    let rmax_single = ambiguity::max_unambiguous_range_single(omega_plus);
    let rmax_dual = ambiguity::max_unambiguous_range_dual(omega_plus, omega_minus)?;
    if args.l_true >= rmax_dual {
        return Err(CliError::Ambiguity(format!(
            "L_true {} m is beyond the dual-frequency unambiguous range {rmax_dual} m",
            args.l_true
        )));
    }

    let two_pi = 2.0 * std::f64::consts::PI;
    let mut gen = rng::generator(config.seed);
    let mut measured_phase = |omega: f64| -> Result<f64, CliError> {
        let lambda = SPEED_OF_LIGHT / omega;
        let phase = interferometer::phase_from_distance(args.l_true, lambda)?;
        let noisy = phase + args.phase_noise * rng::standard_normal(&mut gen);
        Ok(noisy.rem_euclid(two_pi))
    };
    let measurement = ambiguity::DualPhaseMeasurement {
        phase_plus: measured_phase(omega_plus)?,
        phase_minus: measured_phase(omega_minus)?,
        omega_plus,
        omega_minus,
    };
    let resolution = ambiguity::resolve_ambiguity(&measurement)?;

    let report = json!({
        "L_hat": resolution.distance,
        "n": resolution.integer,
        "phase_minus": measurement.phase_minus,
        "phase_plus": measurement.phase_plus,
        "residual": resolution.residual,
        "rmax_dual": rmax_dual,
        "rmax_single": rmax_single,
    });
    write_json(out, &report)
}

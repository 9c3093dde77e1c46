//! Room impulse responses: synthesis with an exact exponential decay
//! envelope, and the trim/normalize/scale preprocessing applied before
//! convolution.

use crate::audio::SAMPLE_RATE;
use crate::error::{Error, Result};
use crate::rng;

/// ln(10^3): the amplitude envelope exp(-DECAY_LN * t / rt60) falls by
/// exactly 60 dB over rt60 seconds.
pub const DECAY_LN: f64 = 6.907755278982137;

/// Amplitude of the noise tail relative to the unit direct path.
const TAIL_STD: f64 = 0.3;

/// A room impulse response at 16 kHz. `nominal_rt60` carries the analytic
/// ground truth for synthetic RIRs and survives preprocessing.
#[derive(Debug, Clone, PartialEq)]
pub struct ImpulseResponse {
    samples: Vec<f64>,
    sample_rate: u32,
    nominal_rt60: Option<f64>,
}

impl ImpulseResponse {
    pub fn new(samples: Vec<f64>, nominal_rt60: Option<f64>) -> Result<Self> {
        if samples.iter().any(|s| !s.is_finite()) {
            return Err(Error::InvalidInput("RIR contains non-finite samples".into()));
        }
        if let Some(rt) = nominal_rt60 {
            if !(rt > 0.0 && rt <= 2.0) {
                return Err(Error::InvalidRt60(rt));
            }
        }
        Ok(Self {
            samples,
            sample_rate: SAMPLE_RATE,
            nominal_rt60,
        })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn nominal_rt60(&self) -> Option<f64> {
        self.nominal_rt60
    }

    pub fn peak(&self) -> f64 {
        self.samples.iter().fold(0.0, |acc, s| acc.max(s.abs()))
    }
}

/// Synthesizes an RIR with a unit direct path at sample 0 and a seeded white
/// noise tail shaped by the envelope exp(-DECAY_LN * t / rt60), so the tail
/// energy decays by 60 dB over `rt60` seconds.
pub fn synth_rir(rt60: f64, duration: f64, seed: u64) -> Result<ImpulseResponse> {
    if !(rt60 > 0.0 && rt60 <= 2.0) {
        return Err(Error::InvalidRt60(rt60));
    }
    if duration < 2.0 * rt60 {
        return Err(Error::InvalidInput(format!(
            "RIR duration {duration} s too short for rt60 {rt60} s (need >= 2*rt60)"
        )));
    }
    let n = (duration * SAMPLE_RATE as f64).round() as usize;
    let mut rng = rng::rng_from_seed(seed);
    let mut samples = Vec::with_capacity(n);
    samples.push(1.0);
    for i in 1..n {
        let t = i as f64 / SAMPLE_RATE as f64;
        let envelope = (-DECAY_LN * t / rt60).exp();
        samples.push(TAIL_STD * rng::randn(&mut rng) * envelope);
    }
    ImpulseResponse::new(samples, Some(rt60))
}

/// Removes everything before the global-peak-magnitude sample, then rescales
/// so the peak magnitude is 0.25. The nominal RT60 is carried through.
pub fn preprocess_rir(raw: &ImpulseResponse) -> Result<ImpulseResponse> {
    let peak_idx = raw
        .samples
        .iter()
        .enumerate()
        .max_by(|(_, a), (_, b)| a.abs().partial_cmp(&b.abs()).unwrap())
        .map(|(i, _)| i)
        .ok_or(Error::DegenerateRir)?;
    let peak = raw.samples[peak_idx].abs();
    if peak == 0.0 {
        return Err(Error::DegenerateRir);
    }
    let scale = 0.25 / peak;
    let samples = raw.samples[peak_idx..].iter().map(|s| s * scale).collect();
    ImpulseResponse::new(samples, raw.nominal_rt60)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn synth_envelope_reaches_minus_60_db_at_rt60() {
        // By construction: amplitude envelope at t = rt60 is exp(-ln(1000)).
        let env = (-DECAY_LN).exp();
        let db = 20.0 * env.log10();
        assert!((db + 60.0).abs() < 1e-9);
    }

    #[test]
    fn synth_is_deterministic_in_seed() {
        let a = synth_rir(0.5, 1.5, 7).unwrap();
        let b = synth_rir(0.5, 1.5, 7).unwrap();
        assert_eq!(a, b);
        let c = synth_rir(0.5, 1.5, 8).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn synth_rejects_out_of_range_rt60() {
        assert!(matches!(
            synth_rir(-0.1, 1.0, 0),
            Err(Error::InvalidRt60(_))
        ));
        assert!(matches!(synth_rir(0.0, 1.0, 0), Err(Error::InvalidRt60(_))));
        assert!(matches!(synth_rir(2.5, 6.0, 0), Err(Error::InvalidRt60(_))));
    }

    #[test]
    fn synth_direct_path_is_unit() {
        let rir = synth_rir(0.3, 1.0, 3).unwrap();
        assert_eq!(rir.samples()[0], 1.0);
        assert_eq!(rir.len(), 16_000);
    }

    #[test]
    fn preprocess_peak_at_zero_scales_to_quarter() {
        let rir = ImpulseResponse::new(vec![1.0, 0.5, -0.25, 0.1], None).unwrap();
        let out = preprocess_rir(&rir).unwrap();
        assert_eq!(out.len(), 4);
        assert!((out.samples()[0] - 0.25).abs() < 1e-12);
        assert!((out.samples()[1] - 0.125).abs() < 1e-12);
    }

    #[test]
    fn preprocess_trims_pre_echo_to_argmax() {
        let raw = vec![0.01, 0.02, 1.0, 0.5, 0.25, 0.1];
        let peak_idx = 2;
        let rir = ImpulseResponse::new(raw.clone(), Some(0.4)).unwrap();
        let out = preprocess_rir(&rir).unwrap();
        assert_eq!(out.len(), raw.len() - peak_idx);
        assert!((out.samples()[0].abs() - 0.25).abs() < 1e-12);
        assert_eq!(out.nominal_rt60(), Some(0.4));
    }

    #[test]
    fn preprocess_rejects_all_zero() {
        let rir = ImpulseResponse::new(vec![0.0; 16], None).unwrap();
        assert!(matches!(preprocess_rir(&rir), Err(Error::DegenerateRir)));
    }

    #[test]
    fn preprocess_is_idempotent() {
        let rir = synth_rir(0.4, 1.0, 11).unwrap();
        let once = preprocess_rir(&rir).unwrap();
        let twice = preprocess_rir(&once).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn negative_peak_counts_as_magnitude_peak() {
        let rir = ImpulseResponse::new(vec![0.1, -2.0, 0.5], None).unwrap();
        let out = preprocess_rir(&rir).unwrap();
        assert_eq!(out.len(), 2);
        assert!((out.samples()[0] + 0.25).abs() < 1e-12);
    }
}

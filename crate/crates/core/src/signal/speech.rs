//! Parametric source-filter speech synthesis. Each speaker id hashes to a
//! base pitch and a three-resonance vocal-tract filter; each utterance seed
//! determines the syllable envelope (with at least one long pause) and the
//! pitch contour.

use rand_chacha::ChaCha8Rng;

use crate::audio::{AudioBuffer, SAMPLE_RATE};
use crate::error::{Error, Result};
use crate::rng;

const SPEAKER_SALT: u64 = 0x5350_4b52;
const UTTERANCE_SALT: u64 = 0x5554_5452;

/// Per-speaker voice parameters derived from the speaker id.
#[derive(Debug, Clone, Copy)]
struct Voice {
    f0_base: f64,
    formants: [(f64, f64); 3], // (center Hz, bandwidth Hz)
}

impl Voice {
    fn from_speaker(speaker_id: u64) -> Self {
        let mut rng = rng::rng_from_seed(rng::derive_seed(SPEAKER_SALT, speaker_id));
        let f0_base = rng::uniform(&mut rng, 90.0, 250.0);
        let formants = [
            (rng::uniform(&mut rng, 300.0, 900.0), rng::uniform(&mut rng, 60.0, 120.0)),
            (rng::uniform(&mut rng, 950.0, 2200.0), rng::uniform(&mut rng, 80.0, 160.0)),
            (rng::uniform(&mut rng, 2300.0, 3500.0), rng::uniform(&mut rng, 120.0, 220.0)),
        ];
        Voice { f0_base, formants }
    }
}

/// Two-pole resonator applied in place.
fn resonate(x: &mut [f64], center: f64, bandwidth: f64) {
    let r = (-std::f64::consts::PI * bandwidth / SAMPLE_RATE as f64).exp();
    let theta = 2.0 * std::f64::consts::PI * center / SAMPLE_RATE as f64;
    let a1 = 2.0 * r * theta.cos();
    let a2 = -r * r;
    let gain = (1.0 - r) * (1.0 - r).max(1e-4);
    let (mut y1, mut y2) = (0.0, 0.0);
    for s in x.iter_mut() {
        let y = gain * *s + a1 * y1 + a2 * y2;
        y2 = y1;
        y1 = y;
        *s = y;
    }
}

/// One syllable: onset time, voiced length, per-syllable gain.
struct Syllable {
    start: usize,
    len: usize,
    gain: f64,
}

/// Builds the syllable envelope plan. At least one inter-syllable pause of
/// >= 120 ms is forced (when the duration allows more than one syllable).
fn plan_syllables(n: usize, env_rng: &mut ChaCha8Rng) -> Vec<Syllable> {
    let fs = SAMPLE_RATE as f64;
    let mut syllables = Vec::new();
    let mut cursor = 0usize;
    let mut spans: Vec<(usize, usize)> = Vec::new(); // (on_len, gap_len)
    while cursor < n {
        let on = (rng::uniform(env_rng, 0.12, 0.30) * fs) as usize;
        let gap = (rng::uniform(env_rng, 0.03, 0.08) * fs) as usize;
        spans.push((on, gap));
        cursor += on + gap;
    }
    // Force a long pause near the middle of the utterance.
    if spans.len() > 1 {
        let mid = spans.len() / 2 - (spans.len() > 2 && spans.len() % 2 == 0) as usize;
        spans[mid].1 = (rng::uniform(env_rng, 0.15, 0.25) * fs) as usize;
    }
    let mut start = 0usize;
    for (on, gap) in spans {
        if start >= n {
            break;
        }
        let len = on.min(n - start);
        syllables.push(Syllable {
            start,
            len,
            gain: rng::uniform(env_rng, 0.7, 1.0),
        });
        start += on + gap;
    }
    syllables
}

/// Synthesizes `duration` seconds of speech-like audio, peak-normalized to
/// 0.9. Deterministic in `(speaker_id, utterance_seed)`.
pub fn synth_speech(duration: f64, speaker_id: u64, utterance_seed: u64) -> Result<AudioBuffer> {
    if duration <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "speech duration must be positive, got {duration}"
        )));
    }
    let n = (duration * SAMPLE_RATE as f64).round() as usize;
    let voice = Voice::from_speaker(speaker_id);
    // Envelope timing depends on the utterance seed alone; the pitch contour
    // varies with both speaker and utterance.
    let mut env_rng = rng::rng_from_seed(rng::derive_seed(UTTERANCE_SALT, utterance_seed));
    let mut pitch_rng =
        rng::rng_from_seed(rng::derive_seed2(UTTERANCE_SALT, speaker_id, utterance_seed));

    let syllables = plan_syllables(n, &mut env_rng);

    // Envelope with a 15 ms raised-cosine attack and an 8 ms release; the
    // release is deliberately fast so that decay measured on reverberant
    // speech reflects the room, not the dry offset.
    let attack = (0.015 * SAMPLE_RATE as f64) as usize;
    let release = (0.008 * SAMPLE_RATE as f64) as usize;
    let mut envelope = vec![0.0; n];
    for syl in &syllables {
        for i in 0..syl.len {
            let pos = syl.start + i;
            if pos >= n {
                break;
            }
            let mut v = syl.gain;
            if i < attack {
                let ph = i as f64 / attack as f64;
                v *= 0.5 - 0.5 * (std::f64::consts::PI * ph).cos();
            }
            let remain = syl.len - i;
            if remain <= release {
                let ph = remain as f64 / release as f64;
                v *= 0.5 - 0.5 * (std::f64::consts::PI * ph).cos();
            }
            envelope[pos] = v;
        }
    }

    // Glottal pulse train with per-syllable declination and slow pitch drift.
    let mut excitation = vec![0.0; n];
    let mut phase = 0.0f64;
    let mut drift = 0.0f64;
    let mut drift_target = 0.0f64;
    for (i, exc) in excitation.iter_mut().enumerate() {
        if i % 160 == 0 {
            drift_target = 0.06 * rng::randn(&mut pitch_rng);
        }
        drift += (drift_target - drift) / 160.0;
        let syl_pos = syllables
            .iter()
            .find(|s| i >= s.start && i < s.start + s.len)
            .map(|s| (i - s.start) as f64 / s.len.max(1) as f64)
            .unwrap_or(0.5);
        let declination = 1.06 - 0.12 * syl_pos;
        let f0 = voice.f0_base * declination * (1.0 + drift);
        phase += f0 / SAMPLE_RATE as f64;
        if phase >= 1.0 {
            phase -= 1.0;
            *exc = 1.0;
        }
    }

    resonate(&mut excitation, voice.formants[0].0, voice.formants[0].1);
    resonate(&mut excitation, voice.formants[1].0, voice.formants[1].1);
    resonate(&mut excitation, voice.formants[2].0, voice.formants[2].1);

    let mut samples: Vec<f64> = excitation
        .iter()
        .zip(&envelope)
        .map(|(x, e)| x * e)
        .collect();
    let peak = samples.iter().fold(0.0f64, |acc, s| acc.max(s.abs()));
    if peak > 0.0 {
        let scale = 0.9 / peak;
        for s in &mut samples {
            *s *= scale;
        }
    }
    AudioBuffer::new(samples)
}

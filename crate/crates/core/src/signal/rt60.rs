//! RT60 estimation: Schroeder backward integration on impulse responses, and
//! a blind free-decay estimator for reverberant speech.

use crate::audio::AudioBuffer;
use crate::error::{Error, Result};
use crate::signal::ImpulseResponse;

const FS: f64 = 16_000.0;

/// Fit window on the energy-decay curve, in dB relative to the full energy.
const FIT_TOP_DB: f64 = -5.0;
const FIT_BOTTOM_DB: f64 = -25.0;

/// Estimates RT60 from an impulse response via Schroeder backward energy
/// integration: the energy-decay curve is fit with a least-squares line
/// between -5 dB and -25 dB and extrapolated to -60 dB.
pub fn estimate_rt60(h: &ImpulseResponse) -> Result<f64> {
    if h.is_empty() {
        return Err(Error::InsufficientDecay("empty impulse response".into()));
    }
    // Backward integration of squared samples.
    let mut edc = vec![0.0; h.len()];
    let mut acc = 0.0;
    for (i, &s) in h.samples().iter().enumerate().rev() {
        acc += s * s;
        edc[i] = acc;
    }
    let total = edc[0];
    if total <= 0.0 {
        return Err(Error::InsufficientDecay("zero-energy impulse response".into()));
    }

    let db: Vec<f64> = edc
        .iter()
        .map(|&e| {
            if e > 0.0 {
                10.0 * (e / total).log10()
            } else {
                f64::NEG_INFINITY
            }
        })
        .collect();

    let start = db.iter().position(|&d| d.is_finite() && d <= FIT_TOP_DB);
    let end = db.iter().position(|&d| d.is_finite() && d <= FIT_BOTTOM_DB);
    let (start, end) = match (start, end) {
        (Some(s), Some(e)) if e > s + 1 => (s, e),
        _ => {
            return Err(Error::InsufficientDecay(
                "energy-decay curve never reaches the -25 dB fit bound".into(),
            ))
        }
    };

    let slope = fit_slope(
        (start..=end).map(|i| (i as f64 / FS, db[i])),
    );
    if !slope.is_finite() || slope >= 0.0 {
        return Err(Error::InsufficientDecay(format!(
            "non-decaying energy curve (slope {slope} dB/s)"
        )));
    }
    Ok(-60.0 / slope)
}

/// Blind RT60 estimate from reverberant speech. Frames the short-time energy
/// envelope (20 ms windows, 10 ms hop), finds monotone-decay segments of at
/// least 8 frames after local envelope peaks, fits a dB/s slope to each, and
/// converts the 10th-percentile (steepest) slope to an RT60.
pub fn blind_rt60(x: &AudioBuffer) -> Result<f64> {
    const WIN: usize = 320;
    const HOP: usize = 160;
    const MIN_RUN: usize = 8;

    if x.len() < 16_000 {
        return Err(Error::InputTooShort {
            got: x.len(),
            min: 16_000,
        });
    }
    let n_frames = 1 + (x.len() - WIN) / HOP;
    let mut energy = Vec::with_capacity(n_frames);
    for f in 0..n_frames {
        let seg = &x.samples()[f * HOP..f * HOP + WIN];
        energy.push(seg.iter().map(|s| s * s).sum::<f64>());
    }
    let peak_e = energy.iter().cloned().fold(0.0, f64::max);
    if peak_e <= 0.0 {
        return Err(Error::InsufficientDecay("silent input".into()));
    }

    // A moving average keeps single-frame flutter from breaking the
    // monotone-run detection; the floor bounds the dB range in true silence.
    let floor = peak_e * 1e-12;
    let smooth: Vec<f64> = (0..n_frames)
        .map(|f| {
            let lo = f.saturating_sub(2);
            let hi = (f + 3).min(n_frames);
            energy[lo..hi].iter().sum::<f64>() / (hi - lo) as f64
        })
        .collect();
    let db: Vec<f64> = smooth.iter().map(|&e| 10.0 * (e + floor).log10()).collect();

    let hop_secs = HOP as f64 / FS;
    let mut slopes = Vec::new();
    for f in 1..n_frames.saturating_sub(1) {
        let is_peak = db[f] >= db[f - 1] && db[f] > db[f + 1];
        if !is_peak {
            continue;
        }
        let mut run = 0;
        while f + run + 1 < n_frames && db[f + run + 1] < db[f + run] {
            run += 1;
        }
        if run >= MIN_RUN {
            // The first frames after the peak still mix in syllable energy
            // through the smoothing window; fit on the free-decay part.
            let skip = 3.min(run - MIN_RUN + 3).min(run / 2);
            let slope = fit_slope(
                (f + skip..=f + run).map(|i| (i as f64 * hop_secs, db[i])),
            );
            if slope.is_finite() && slope < 0.0 {
                slopes.push(slope);
            }
        }
    }
    if slopes.is_empty() {
        return Err(Error::InsufficientDecay(
            "no monotone decay segment of sufficient length".into(),
        ));
    }
    slopes.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let slope = percentile_sorted(&slopes, 0.10);
    Ok(-60.0 / slope)
}

/// Least-squares slope of y against x.
fn fit_slope(points: impl Iterator<Item = (f64, f64)>) -> f64 {
    let (mut n, mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (x, y) in points {
        n += 1.0;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let denom = n * sxx - sx * sx;
    if denom == 0.0 {
        return f64::NAN;
    }
    (n * sxy - sx * sy) / denom
}

/// Linear-interpolation percentile of an ascending-sorted slice.
fn percentile_sorted(sorted: &[f64], p: f64) -> f64 {
    let idx = p * (sorted.len() - 1) as f64;
    let lo = idx.floor() as usize;
    let hi = idx.ceil() as usize;
    let frac = idx - lo as f64;
    sorted[lo] * (1.0 - frac) + sorted[hi] * frac
}

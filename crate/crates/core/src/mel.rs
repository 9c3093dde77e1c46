//! Mel spectrograms over a Hann-windowed STFT, with the adjoint needed to
//! backpropagate spectral losses to the waveform.

use std::sync::Arc;

use ndarray::Array2;
use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::audio::SAMPLE_RATE;

/// STFT + mel filterbank at one resolution.
pub struct MelSpec {
    win: usize,
    hop: usize,
    n_mels: usize,
    n_bins: usize,
    window: Vec<f64>,
    /// Dense filterbank, [n_mels][n_bins], unit-peak triangles on the mel scale.
    filters: Vec<Vec<f64>>,
    fft: Arc<dyn Fft<f64>>,
    ifft: Arc<dyn Fft<f64>>,
}

/// Forward analysis retained for the adjoint pass.
pub struct MelAnalysis {
    /// One-sided spectra, frame-major: `frames * n_bins` entries.
    spectra: Vec<Complex64>,
    /// Mel energies per frame.
    pub mel: Array2<f64>,
}

fn hz_to_mel(hz: f64) -> f64 {
    2595.0 * (1.0 + hz / 700.0).log10()
}

fn mel_to_hz(mel: f64) -> f64 {
    700.0 * (10f64.powf(mel / 2595.0) - 1.0)
}

impl MelSpec {
    pub fn new(win: usize, hop: usize, n_mels: usize) -> Self {
        assert!(win >= 2 && hop >= 1 && n_mels >= 1);
        let n_bins = win / 2 + 1;
        let window: Vec<f64> = (0..win)
            .map(|n| 0.5 - 0.5 * (2.0 * std::f64::consts::PI * n as f64 / win as f64).cos())
            .collect();

        let f_max = SAMPLE_RATE as f64 / 2.0;
        let mel_points: Vec<f64> = (0..n_mels + 2)
            .map(|i| mel_to_hz(hz_to_mel(f_max) * i as f64 / (n_mels + 1) as f64))
            .collect();
        let bin_hz = SAMPLE_RATE as f64 / win as f64;
        let mut filters = vec![vec![0.0; n_bins]; n_mels];
        for m in 0..n_mels {
            let (lo, center, hi) = (mel_points[m], mel_points[m + 1], mel_points[m + 2]);
            for (k, w) in filters[m].iter_mut().enumerate() {
                let f = k as f64 * bin_hz;
                let rising = if center > lo { (f - lo) / (center - lo) } else { 0.0 };
                let falling = if hi > center { (hi - f) / (hi - center) } else { 0.0 };
                *w = rising.min(falling).max(0.0);
            }
        }

        let mut planner = FftPlanner::new();
        MelSpec {
            win,
            hop,
            n_mels,
            n_bins,
            window,
            filters,
            fft: planner.plan_fft_forward(win),
            ifft: planner.plan_fft_inverse(win),
        }
    }

    pub fn win(&self) -> usize {
        self.win
    }

    pub fn n_mels(&self) -> usize {
        self.n_mels
    }

    /// Number of complete analysis frames for a signal of `len` samples.
    pub fn n_frames(&self, len: usize) -> usize {
        if len < self.win {
            0
        } else {
            1 + (len - self.win) / self.hop
        }
    }

    /// Full analysis: one-sided power spectra fed through the filterbank.
    pub fn analyze(&self, x: &[f64]) -> MelAnalysis {
        let frames = self.n_frames(x.len());
        let mut spectra = Vec::with_capacity(frames * self.n_bins);
        let mut mel = Array2::zeros((frames, self.n_mels));
        let mut buf = vec![Complex64::ZERO; self.win];
        for f in 0..frames {
            let seg = &x[f * self.hop..f * self.hop + self.win];
            for (b, (&s, &w)) in buf.iter_mut().zip(seg.iter().zip(&self.window)) {
                *b = Complex64::new(s * w, 0.0);
            }
            self.fft.process(&mut buf);
            for k in 0..self.n_bins {
                spectra.push(buf[k]);
            }
            let power: Vec<f64> = (0..self.n_bins)
                .map(|k| {
                    let c = spectra[f * self.n_bins + k];
                    c.re * c.re + c.im * c.im
                })
                .collect();
            for m in 0..self.n_mels {
                let e: f64 = self.filters[m]
                    .iter()
                    .zip(&power)
                    .map(|(w, p)| w * p)
                    .sum();
                mel[[f, m]] = e;
            }
        }
        MelAnalysis { spectra, mel }
    }

    /// Log-mel spectrogram, `log(mel + eps)`.
    pub fn log_mel(&self, x: &[f64], eps: f64) -> Array2<f64> {
        self.analyze(x).mel.mapv(|e| (e + eps).ln())
    }

    /// Accumulates into `grad_x` the gradient of a scalar loss with respect
    /// to the input waveform, given the loss gradient with respect to the mel
    /// energies of `analysis`.
    pub fn accumulate_waveform_grad(
        &self,
        analysis: &MelAnalysis,
        mel_grad: &Array2<f64>,
        grad_x: &mut [f64],
    ) {
        let frames = analysis.mel.nrows();
        debug_assert_eq!(mel_grad.nrows(), frames);
        let mut buf = vec![Complex64::ZERO; self.win];
        for f in 0..frames {
            // d(loss)/d(power bin k) via the filterbank transpose.
            buf.fill(Complex64::ZERO);
            for k in 0..self.n_bins {
                let mut gp = 0.0;
                for m in 0..self.n_mels {
                    let g = mel_grad[[f, m]];
                    if g != 0.0 {
                        gp += g * self.filters[m][k];
                    }
                }
                if gp != 0.0 {
                    // d(power)/d(S) as a complex pair: (2 Re, 2 Im). The loss
                    // reads only one-sided bins, so the rest stay zero.
                    let s = analysis.spectra[f * self.n_bins + k];
                    buf[k] = Complex64::new(2.0 * gp * s.re, 2.0 * gp * s.im);
                }
            }
            // Adjoint of the forward DFT: unnormalized inverse FFT, real part,
            // times the analysis window.
            self.ifft.process(&mut buf);
            let base = f * self.hop;
            for t in 0..self.win {
                grad_x[base + t] += buf[t].re * self.window[t];
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;
    use rand::RngExt;

    #[test]
    fn frame_count() {
        let mel = MelSpec::new(400, 160, 64);
        assert_eq!(mel.n_frames(48_000), 298);
        assert_eq!(mel.n_frames(400), 1);
        assert_eq!(mel.n_frames(399), 0);
    }

    #[test]
    fn filters_cover_all_bands() {
        for (win, n_mels) in [(64usize, 2usize), (256, 8), (2048, 64)] {
            let mel = MelSpec::new(win, win / 4, n_mels);
            for m in 0..n_mels {
                let sum: f64 = mel.filters[m].iter().sum();
                assert!(sum > 0.0, "filter {m} of {n_mels} at win {win} is empty");
            }
        }
    }

    #[test]
    fn parseval_energy_sanity() {
        // A pure tone lands in the filters around its frequency.
        let mel = MelSpec::new(512, 128, 16);
        let x: Vec<f64> = (0..2048)
            .map(|n| (2.0 * std::f64::consts::PI * 1000.0 * n as f64 / 16_000.0).sin())
            .collect();
        let a = mel.analyze(&x);
        let total: f64 = a.mel.sum();
        assert!(total > 0.0);
        // Energy concentrates in a narrow mel region.
        let per_band = a.mel.sum_axis(ndarray::Axis(0));
        let peak_band = per_band
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap()
            .0;
        let peak_sum: f64 = per_band
            .iter()
            .enumerate()
            .filter(|(i, _)| (*i as i64 - peak_band as i64).abs() <= 2)
            .map(|(_, v)| v)
            .sum();
        assert!(peak_sum / total > 0.8);
    }

    #[test]
    fn waveform_grad_matches_finite_differences() {
        let mel = MelSpec::new(64, 16, 4);
        let mut rng = rng::rng_from_seed(3);
        let n = 160;
        let x: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
        let target: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
        let eps = 1e-6;

        // Loss: mean |log(mel_x + eps) - log(mel_t + eps)|.
        let loss = |x: &[f64]| -> f64 {
            let lx = mel.log_mel(x, eps);
            let lt = mel.log_mel(&target, eps);
            (&lx - &lt).mapv(f64::abs).mean().unwrap()
        };

        let ax = mel.analyze(&x);
        let at = mel.analyze(&target);
        let count = (ax.mel.nrows() * ax.mel.ncols()) as f64;
        let mut mel_grad = Array2::zeros(ax.mel.raw_dim());
        for f in 0..ax.mel.nrows() {
            for m in 0..ax.mel.ncols() {
                let diff = (ax.mel[[f, m]] + eps).ln() - (at.mel[[f, m]] + eps).ln();
                mel_grad[[f, m]] = diff.signum() / count / (ax.mel[[f, m]] + eps);
            }
        }
        let mut grad = vec![0.0; n];
        mel.accumulate_waveform_grad(&ax, &mel_grad, &mut grad);

        let h = 1e-7;
        let mut checked = 0;
        for i in (0..n).step_by(17) {
            let mut xp = x.clone();
            xp[i] += h;
            let mut xm = x.clone();
            xm[i] -= h;
            let fd = (loss(&xp) - loss(&xm)) / (2.0 * h);
            let denom = fd.abs().max(grad[i].abs()).max(1e-9);
            assert!(
                (fd - grad[i]).abs() / denom < 1e-4,
                "sample {i}: fd {fd} vs analytic {}",
                grad[i]
            );
            checked += 1;
        }
        assert!(checked >= 9);
    }
}

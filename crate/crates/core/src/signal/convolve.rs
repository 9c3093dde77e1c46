//! FFT-based linear convolution of speech with a room impulse response.

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use crate::audio::AudioBuffer;
use crate::error::{Error, Result};
use crate::signal::ImpulseResponse;

/// Convolves `speech` with `rir` and truncates the full linear convolution to
/// the first `speech.len()` samples, so reverberated output keeps the input
/// duration.
pub fn convolve_rir(speech: &AudioBuffer, rir: &ImpulseResponse) -> Result<AudioBuffer> {
    if speech.is_empty() || rir.is_empty() {
        return Err(Error::InvalidInput("empty convolution input".into()));
    }
    if speech.sample_rate() != rir.sample_rate() {
        return Err(Error::RateMismatch {
            left: speech.sample_rate(),
            right: rir.sample_rate(),
        });
    }
    let full = fft_convolve(speech.samples(), rir.samples());
    AudioBuffer::new(full[..speech.len()].to_vec())
}

/// Full linear convolution via zero-padded FFTs.
pub(crate) fn fft_convolve(a: &[f64], b: &[f64]) -> Vec<f64> {
    let out_len = a.len() + b.len() - 1;
    let n = out_len.next_power_of_two();
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(n);
    let ifft = planner.plan_fft_inverse(n);

    let mut fa: Vec<Complex64> = a
        .iter()
        .map(|&x| Complex64::new(x, 0.0))
        .chain(std::iter::repeat(Complex64::ZERO))
        .take(n)
        .collect();
    let mut fb: Vec<Complex64> = b
        .iter()
        .map(|&x| Complex64::new(x, 0.0))
        .chain(std::iter::repeat(Complex64::ZERO))
        .take(n)
        .collect();
    fft.process(&mut fa);
    fft.process(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= y;
    }
    ifft.process(&mut fa);
    let scale = 1.0 / n as f64;
    fa[..out_len].iter().map(|c| c.re * scale).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;
    use rand::RngExt;

    /// Direct O(n*m) sum-of-products reference.
    fn convolve_naive(a: &[f64], b: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    fn random_buf(len: usize, seed: u64) -> Vec<f64> {
        let mut rng = rng::rng_from_seed(seed);
        (0..len).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect()
    }

    #[test]
    fn unit_impulse_is_identity() {
        let x = AudioBuffer::new(random_buf(512, 1)).unwrap();
        let h = ImpulseResponse::new(vec![1.0], None).unwrap();
        let y = convolve_rir(&x, &h).unwrap();
        for (a, b) in x.samples().iter().zip(y.samples()) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn zero_speech_stays_zero() {
        let x = AudioBuffer::zeros(48_000);
        let h = synth_h();
        let y = convolve_rir(&x, &h).unwrap();
        assert_eq!(y.len(), 48_000);
        assert!(y.samples().iter().all(|&s| s == 0.0));
    }

    fn synth_h() -> ImpulseResponse {
        crate::signal::synth_rir(0.3, 0.8, 5).unwrap()
    }

    #[test]
    fn matches_brute_force_oracle() {
        let a = random_buf(64, 2);
        let b = random_buf(16, 3);
        let x = AudioBuffer::new(a.clone()).unwrap();
        let h = ImpulseResponse::new(b.clone(), None).unwrap();
        let y = convolve_rir(&x, &h).unwrap();
        let oracle = convolve_naive(&a, &b);
        assert_eq!(y.len(), 64);
        for (got, want) in y.samples().iter().zip(&oracle) {
            assert!((got - want).abs() < 1e-6, "got {got} want {want}");
        }
    }

    #[test]
    fn output_length_equals_speech_length() {
        let x = AudioBuffer::new(random_buf(1000, 4)).unwrap();
        let h = ImpulseResponse::new(random_buf(3000, 5), None).unwrap();
        let y = convolve_rir(&x, &h).unwrap();
        assert_eq!(y.len(), 1000);
    }

    #[test]
    fn rejects_empty_input() {
        let x = AudioBuffer::zeros(0);
        let h = ImpulseResponse::new(vec![1.0], None).unwrap();
        assert!(matches!(
            convolve_rir(&x, &h),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn linearity_over_random_mixtures() {
        let s1 = random_buf(400, 6);
        let s2 = random_buf(400, 7);
        let h = ImpulseResponse::new(random_buf(50, 8), None).unwrap();
        let (alpha, beta) = (0.7, -1.3);
        let mixed: Vec<f64> = s1
            .iter()
            .zip(&s2)
            .map(|(a, b)| alpha * a + beta * b)
            .collect();
        let y_mix = convolve_rir(&AudioBuffer::new(mixed).unwrap(), &h).unwrap();
        let y1 = convolve_rir(&AudioBuffer::new(s1).unwrap(), &h).unwrap();
        let y2 = convolve_rir(&AudioBuffer::new(s2).unwrap(), &h).unwrap();
        for i in 0..400 {
            let want = alpha * y1.samples()[i] + beta * y2.samples()[i];
            assert!((y_mix.samples()[i] - want).abs() < 1e-5);
        }
    }
}

//! Mono 16 kHz audio buffers and 16-bit PCM WAV I/O.

use std::path::Path;

use crate::error::{Error, Result};

/// The only sample rate this crate operates at.
pub const SAMPLE_RATE: u32 = 16_000;

/// A mono waveform at 16 kHz. Samples are dimensionless amplitudes with a
/// nominal range of [-1, 1]; all values are guaranteed finite.
#[derive(Debug, Clone, PartialEq)]
pub struct AudioBuffer {
    samples: Vec<f64>,
    sample_rate: u32,
}

impl AudioBuffer {
    /// Wraps a sample vector, rejecting NaN/Inf entries.
    pub fn new(samples: Vec<f64>) -> Result<Self> {
        if samples.iter().any(|s| !s.is_finite()) {
            return Err(Error::InvalidInput(
                "audio contains non-finite samples".into(),
            ));
        }
        Ok(Self {
            samples,
            sample_rate: SAMPLE_RATE,
        })
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            samples: vec![0.0; len],
            sample_rate: SAMPLE_RATE,
        }
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
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

    pub fn duration_secs(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate as f64
    }

    /// Largest absolute sample value.
    pub fn peak(&self) -> f64 {
        self.samples.iter().fold(0.0, |acc, s| acc.max(s.abs()))
    }

    /// Scales the waveform so the peak magnitude is exactly 1.0. An all-zero
    /// buffer is returned unchanged.
    pub fn peak_normalize(&self) -> AudioBuffer {
        let peak = self.peak();
        if peak == 0.0 {
            return self.clone();
        }
        AudioBuffer {
            samples: self.samples.iter().map(|s| s / peak).collect(),
            sample_rate: self.sample_rate,
        }
    }

    /// Truncates or zero-pads to exactly `len` samples.
    pub fn resized(&self, len: usize) -> AudioBuffer {
        let mut samples = self.samples.clone();
        samples.resize(len, 0.0);
        AudioBuffer {
            samples,
            sample_rate: self.sample_rate,
        }
    }

    /// Writes mono 16 kHz 16-bit PCM (little-endian). Amplitudes are scaled
    /// by 32768 and clipped to [-32768, 32767].
    pub fn write_wav(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let spec = hound::WavSpec {
            channels: 1,
            sample_rate: self.sample_rate,
            bits_per_sample: 16,
            sample_format: hound::SampleFormat::Int,
        };
        let mut writer = hound::WavWriter::create(path, spec)
            .map_err(|e| wav_err(path, e))?;
        for &s in &self.samples {
            writer
                .write_sample(amplitude_to_i16(s))
                .map_err(|e| wav_err(path, e))?;
        }
        writer.finalize().map_err(|e| wav_err(path, e))?;
        Ok(())
    }

    /// Reads a mono 16 kHz 16-bit PCM WAV file.
    pub fn read_wav(path: impl AsRef<Path>) -> Result<AudioBuffer> {
        let path = path.as_ref();
        let mut reader = hound::WavReader::open(path).map_err(|e| wav_err(path, e))?;
        let spec = reader.spec();
        if spec.channels != 1
            || spec.sample_rate != SAMPLE_RATE
            || spec.bits_per_sample != 16
            || spec.sample_format != hound::SampleFormat::Int
        {
            return Err(Error::InvalidInput(format!(
                "unsupported WAV format in {}: {:?} (need mono 16 kHz s16)",
                path.display(),
                spec
            )));
        }
        let samples: std::result::Result<Vec<i16>, _> = reader.samples::<i16>().collect();
        let samples = samples.map_err(|e| wav_err(path, e))?;
        AudioBuffer::new(samples.iter().map(|&s| s as f64 / 32768.0).collect())
    }
}

fn amplitude_to_i16(s: f64) -> i16 {
    let scaled = (s * 32768.0).round();
    scaled.clamp(-32768.0, 32767.0) as i16
}

fn wav_err(path: &Path, e: hound::Error) -> Error {
    match e {
        hound::Error::IoError(io) => Error::io(path, io),
        other => Error::InvalidInput(format!("{}: {other}", path.display())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_finite() {
        assert!(AudioBuffer::new(vec![0.0, f64::NAN]).is_err());
        assert!(AudioBuffer::new(vec![0.0, f64::INFINITY]).is_err());
    }

    #[test]
    fn peak_normalize_scales_to_unity() {
        let x = AudioBuffer::new(vec![0.1, -0.5, 0.25]).unwrap();
        let y = x.peak_normalize();
        assert!((y.peak() - 1.0).abs() < 1e-12);
        // Shape preserved up to a scalar.
        for (a, b) in x.samples().iter().zip(y.samples()) {
            assert!((b - a / 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn peak_normalize_scalar_division_oracle() {
        let x = AudioBuffer::new(vec![3.2, -1.6, 0.8, 0.0]).unwrap();
        let y = x.peak_normalize();
        for (a, b) in x.samples().iter().zip(y.samples()) {
            assert!((b - a / 3.2).abs() < 1e-12);
        }
    }

    #[test]
    fn peak_normalize_all_zero_unchanged() {
        let x = AudioBuffer::zeros(100);
        assert_eq!(x.peak_normalize(), x);
    }

    #[test]
    fn i16_conversion_clips() {
        assert_eq!(amplitude_to_i16(1.5), 32767);
        assert_eq!(amplitude_to_i16(-1.5), -32768);
        assert_eq!(amplitude_to_i16(0.0), 0);
        assert_eq!(amplitude_to_i16(0.5), 16384);
    }

    #[test]
    fn wav_roundtrip_is_stable() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.wav");
        let x = AudioBuffer::new(
            (0..1000)
                .map(|i| (i as f64 * 0.01).sin() * 0.7)
                .collect(),
        )
        .unwrap();
        x.write_wav(&path).unwrap();
        let y = AudioBuffer::read_wav(&path).unwrap();
        assert_eq!(y.len(), x.len());
        // Quantized once; a second roundtrip must be exact.
        let path2 = dir.path().join("y.wav");
        y.write_wav(&path2).unwrap();
        let z = AudioBuffer::read_wav(&path2).unwrap();
        assert_eq!(y, z);
        for (a, b) in x.samples().iter().zip(y.samples()) {
            assert!((a - b).abs() <= 0.5 / 32768.0 + 1e-12);
        }
    }
}

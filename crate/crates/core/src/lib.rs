//! Disentangled neural speech codec for room-acoustics manipulation.
//!
//! The codec encodes 16 kHz speech into a 128-dim latent split into a speech
//! half and an acoustic half, each quantized by its own residual vector
//! quantizer. Swapping or zeroing the acoustic half at decode time transfers
//! or removes room characteristics. The crate also ships the synthetic
//! dataset pipeline, the multi-task trainer, and the evaluation suite
//! (RT60 estimation and correlation, teleportation accuracy, disentanglement
//! probes, downsampling ablation).

pub mod audio;
pub mod error;
pub mod mel;
pub mod eval;
pub mod rng;
pub mod signal;

pub use audio::{AudioBuffer, SAMPLE_RATE};
pub use error::{Error, Result};
pub use signal::ImpulseResponse;

//! Deterministic DSP primitives: convolution, RIR synthesis and
//! preprocessing, synthetic speech, and RT60 estimation.

mod convolve;
mod rir;
mod rt60;
mod speech;

pub use convolve::convolve_rir;
pub use rir::{preprocess_rir, synth_rir, ImpulseResponse};
pub use rt60::{blind_rt60, estimate_rt60};
pub use speech::synth_speech;

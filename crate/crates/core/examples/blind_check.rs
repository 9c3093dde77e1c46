// Scratch experiment: blind RT60 ordering + Spearman over a synthetic grid.
use roomcodec::eval::spearman;
use roomcodec::signal::{blind_rt60, convolve_rir, preprocess_rir, synth_rir, synth_speech};

fn main() {
    let n = 50;
    let mut nominal = Vec::new();
    let mut blind = Vec::new();
    let mut failures = 0;
    for i in 0..n {
        let rt = 0.1 + 1.1 * (i as f64) / (n as f64 - 1.0);
        let rir = preprocess_rir(&synth_rir(rt, (2.0 * rt + 0.3).min(4.0), 1000 + i as u64).unwrap()).unwrap();
        let speech = synth_speech(3.0, 50 + i as u64, 900 + i as u64).unwrap();
        let reverb = convolve_rir(&speech, &rir).unwrap().peak_normalize();
        match blind_rt60(&reverb) {
            Ok(est) => {
                nominal.push(rt);
                blind.push(est);
                if i % 7 == 0 { println!("rt60 {:.3} -> blind {:.3}", rt, est); }
            }
            Err(e) => { failures += 1; println!("rt60 {:.3} -> ERROR {e}", rt); }
        }
    }
    println!("failures: {failures}/{n}");
    if nominal.len() >= 3 {
        println!("spearman: {:.4}", spearman(&nominal, &blind).unwrap());
    }
}

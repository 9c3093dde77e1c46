// Scratch: grid-search the fit-skip rule for the blind estimator.
use roomcodec::eval::spearman;
use roomcodec::signal::{convolve_rir, preprocess_rir, synth_rir, synth_speech};

fn estimate(x: &[f64], skip_rule: usize) -> Option<f64> {
    let (win, hop) = (320usize, 160usize);
    if x.len() < 16000 { return None; }
    let n_frames = 1 + (x.len() - win) / hop;
    let energy: Vec<f64> = (0..n_frames)
        .map(|f| x[f * hop..f * hop + win].iter().map(|s| s * s).sum::<f64>())
        .collect();
    let peak_e = energy.iter().cloned().fold(0.0, f64::max);
    if peak_e <= 0.0 { return None; }
    let floor = peak_e * 1e-12;
    let smooth: Vec<f64> = (0..n_frames)
        .map(|f| {
            let lo = f.saturating_sub(2);
            let hi = (f + 3).min(n_frames);
            energy[lo..hi].iter().sum::<f64>() / (hi - lo) as f64
        })
        .collect();
    let db: Vec<f64> = smooth.iter().map(|&e| 10.0 * (e + floor).log10()).collect();
    let mut slopes = Vec::new();
    for f in 1..n_frames - 1 {
        if !(db[f] >= db[f - 1] && db[f] > db[f + 1]) { continue; }
        let mut run = 0;
        while f + run + 1 < n_frames && db[f + run + 1] < db[f + run] { run += 1; }
        if run >= 8 {
            let skip = skip_rule.min(run / 2);
            let pts: Vec<(f64, f64)> = (f + skip..=f + run).map(|i| (i as f64 * 0.01, db[i])).collect();
            let n = pts.len() as f64;
            let sx: f64 = pts.iter().map(|p| p.0).sum();
            let sy: f64 = pts.iter().map(|p| p.1).sum();
            let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
            let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
            let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
            if slope.is_finite() && slope < 0.0 { slopes.push(slope); }
        }
    }
    if slopes.is_empty() { return None; }
    slopes.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let idx = 0.10 * (slopes.len() - 1) as f64;
    let (lo, hi, frac) = (idx.floor() as usize, idx.ceil() as usize, idx.fract());
    let slope = slopes[lo] * (1.0 - frac) + slopes[hi] * frac;
    Some(-60.0 / slope)
}

fn main() {
    // Pre-generate the 50 utterances once.
    let mut items = Vec::new();
    for i in 0..50u64 {
        let rt = 0.1 + 1.1 * (i as f64) / 49.0;
        let rir = preprocess_rir(&synth_rir(rt, (2.0 * rt + 0.3).min(4.0), 1000 + i).unwrap()).unwrap();
        let speech = synth_speech(3.0, 50 + i, 900 + i).unwrap();
        let reverb = convolve_rir(&speech, &rir).unwrap().peak_normalize();
        items.push((rt, reverb));
    }
    for skip in [0usize, 2, 3, 4, 5, 6] {
        let mut nom = Vec::new();
        let mut est = Vec::new();
        let mut fails = 0;
        for (rt, x) in &items {
            match estimate(x.samples(), skip) {
                Some(v) => { nom.push(*rt); est.push(v); }
                None => fails += 1,
            }
        }
        let r = spearman(&nom, &est).unwrap();
        println!("skip {skip}: spearman {:.4} fails {fails}", r);
    }
}

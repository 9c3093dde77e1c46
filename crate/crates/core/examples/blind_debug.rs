// Scratch: inspect decay-segment slopes for a high-RT60 utterance.
use roomcodec::signal::{convolve_rir, preprocess_rir, synth_rir, synth_speech};

fn main() {
    for i in [35u64, 42, 49] {
        let rt = 0.1 + 1.1 * (i as f64) / 49.0;
        let rir = preprocess_rir(&synth_rir(rt, (2.0 * rt + 0.3).min(4.0), 1000 + i).unwrap()).unwrap();
        let speech = synth_speech(3.0, 50 + i, 900 + i).unwrap();
        let reverb = convolve_rir(&speech, &rir).unwrap().peak_normalize();
        let x = reverb.samples();
        let (win, hop) = (320usize, 160usize);
        let n_frames = 1 + (x.len() - win) / hop;
        let energy: Vec<f64> = (0..n_frames)
            .map(|f| x[f * hop..f * hop + win].iter().map(|s| s * s).sum::<f64>())
            .collect();
        let peak_e = energy.iter().cloned().fold(0.0, f64::max);
        let floor = peak_e * 1e-12;
        let smooth: Vec<f64> = (0..n_frames)
            .map(|f| {
                let lo = f.saturating_sub(2);
                let hi = (f + 3).min(n_frames);
                energy[lo..hi].iter().sum::<f64>() / (hi - lo) as f64
            })
            .collect();
        let db: Vec<f64> = smooth.iter().map(|&e| 10.0 * (e + floor).log10()).collect();
        println!("== rt60 {:.3} (true slope {:.0} dB/s)", rt, -60.0 / rt);
        for f in 1..n_frames - 1 {
            if !(db[f] >= db[f - 1] && db[f] > db[f + 1]) { continue; }
            let mut run = 0;
            while f + run + 1 < n_frames && db[f + run + 1] < db[f + run] { run += 1; }
            if run >= 8 {
                let skip = 3.min(run - 8 + 3).min(run / 2);
                let pts: Vec<(f64, f64)> = (f + skip..=f + run).map(|i| (i as f64 * 0.01, db[i])).collect();
                let n = pts.len() as f64;
                let sx: f64 = pts.iter().map(|p| p.0).sum();
                let sy: f64 = pts.iter().map(|p| p.1).sum();
                let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
                let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
                let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
                let depth = db[f] - db[f + run];
                println!("  peak@{f} run {run} depth {:.1} dB slope {:.0} dB/s -> rt {:.3}", depth, slope, -60.0/slope);
            }
        }
    }
}

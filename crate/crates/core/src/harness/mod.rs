//! Monte Carlo codeword-error-rate curves, the coding-gain table, asymptotic
//! pairwise error probabilities and result files.

mod table;

pub use table::{gain_table, write_gain_table_csv, ReferenceRow, GainTableOptions, GainTableRow, REFERENCE_GAINS};

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use nalgebra::Vector4;
use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::channel::{sample_block, substream, unit_noise, NoiseConfig};
use crate::error::{Error, Result};
use crate::receiver::Detector;
use crate::stbc::{
    differential_codebook, enumerate_codebook, optimal_design, pairwise_det, training_codebook, Codebook,
    CodebookKind, Codeword, SymbolFamily,
};

/// Trials per random stream. Fixed so results do not depend on the worker count.
pub const BATCH_TRIALS: u64 = 4096;

/// Default pilot share of the training baseline.
pub const DEFAULT_PILOT_SHARE: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    Ufcp,
    Differential,
    TrainingPsk,
    TrainingQam,
}

impl Scheme {
    pub const ALL: [Scheme; 4] = [Scheme::Ufcp, Scheme::Differential, Scheme::TrainingPsk, Scheme::TrainingQam];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Ufcp => "ufcp",
            Scheme::Differential => "differential",
            Scheme::TrainingPsk => "training_psk",
            Scheme::TrainingQam => "training_qam",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|k| k.name() == s.replace('-', "_"))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown scheme {s:?}")))
    }
}

/// Codebook used by `scheme` at `rate_bits` bits per codeword.
pub fn build_codebook(scheme: Scheme, rate_bits: u32, pilot_share: f64) -> Result<Codebook> {
    match scheme {
        Scheme::Ufcp => enumerate_codebook(&optimal_design(rate_bits)?),
        Scheme::Differential => differential_codebook(rate_bits),
        Scheme::TrainingPsk => training_codebook(rate_bits, SymbolFamily::Psk, pilot_share),
        Scheme::TrainingQam => training_codebook(rate_bits, SymbolFamily::Qam, pilot_share),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SimConfig {
    pub scheme: Scheme,
    pub rate_bits: u32,
    pub snr_grid_db: Vec<f64>,
    pub trials: u64,
    pub seed: u64,
    /// Thread count; 0 uses the global pool.
    pub workers: usize,
    pub pilot_share: f64,
}

impl SimConfig {
    pub fn new(scheme: Scheme, rate_bits: u32, snr_grid_db: Vec<f64>, trials: u64, seed: u64) -> Self {
        Self { scheme, rate_bits, snr_grid_db, trials, seed, workers: 0, pilot_share: DEFAULT_PILOT_SHARE }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        if self.snr_grid_db.is_empty() {
            return Err(Error::InvalidParameter("empty SNR grid".into()));
        }
        if self.snr_grid_db.iter().any(|s| !s.is_finite()) || self.snr_grid_db.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParameter("SNR grid must be finite and strictly increasing".into()));
        }
        Ok(())
    }
}

/// One point of an error-rate curve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimPoint {
    pub scheme: Scheme,
    pub rate_bits: u32,
    pub snr_db: f64,
    pub trials: u64,
    pub errors: u64,
    pub cer: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub seed: u64,
}

/// 95% Wilson score interval for `errors` out of `trials`.
pub fn wilson_interval(errors: u64, trials: u64) -> (f64, f64) {
    const Z: f64 = 1.959_963_984_540_054;
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = errors as f64 / n;
    let z2 = Z * Z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = Z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if errors == 0 { 0.0 } else { (centre - half).max(0.0) };
    let hi = if errors >= trials { 1.0 } else { (centre + half).min(1.0) };
    (lo, hi)
}

/// Errors in one batch of trials. The stream depends only on `(seed, batch)`,
/// and the draw order is codeword index, channel, unit noise, so every scheme
/// and SNR point sees the same underlying randomness.
fn run_batch(det: &Detector, cb: &Codebook, seed: u64, batch: u64, count: u64, sigma: f64) -> u64 {
    let mut rng = substream(seed, batch);
    let n = cb.len();
    let sigma = Complex64::new(sigma, 0.0);
    let mut errors = 0;
    for _ in 0..count {
        let sent = rng.random_range(0..n);
        let blk = sample_block(&mut rng);
        let noise = unit_noise(&mut rng);
        let r: Vector4<Complex64> = cb.codewords()[sent].matrix * blk.h + noise * sigma;
        if det.decode_index(&r) != sent {
            errors += 1;
        }
    }
    errors
}

/// Codeword error rate at each SNR of the grid.
pub fn run_cer_curve(cfg: &SimConfig) -> Result<Vec<SimPoint>> {
    cfg.validate()?;
    let cb = build_codebook(cfg.scheme, cfg.rate_bits, cfg.pilot_share)?;
    run_cer_curve_with(cfg, &cb)
}

/// [`run_cer_curve`] on a prebuilt codebook.
pub fn run_cer_curve_with(cfg: &SimConfig, cb: &Codebook) -> Result<Vec<SimPoint>> {
    cfg.validate()?;
    let det = Detector::new(cb)?;
    let batches = cfg.trials.div_ceil(BATCH_TRIALS);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    let mut out = Vec::with_capacity(cfg.snr_grid_db.len());
    for &snr_db in &cfg.snr_grid_db {
        let noise = NoiseConfig::from_snr_db(snr_db)?;
        let sigma = noise.sigma2.sqrt();
        let errors: u64 = pool.install(|| {
            (0..batches)
                .into_par_iter()
                .map(|b| {
                    let count = BATCH_TRIALS.min(cfg.trials - b * BATCH_TRIALS);
                    run_batch(&det, cb, cfg.seed, b, count, sigma)
                })
                .sum()
        });
        let (ci_lo, ci_hi) = wilson_interval(errors, cfg.trials);
        out.push(SimPoint {
            scheme: cfg.scheme,
            rate_bits: cfg.rate_bits,
            snr_db,
            trials: cfg.trials,
            errors,
            cer: errors as f64 / cfg.trials as f64,
            ci_lo,
            ci_hi,
            seed: cfg.seed,
        });
    }
    Ok(out)
}

/// Slope of `log10(cer)` per decade of SNR between two grid points.
pub fn log_slope(points: &[SimPoint], from_db: f64, to_db: f64) -> Option<f64> {
    let at = |s: f64| points.iter().find(|p| p.snr_db == s).map(|p| p.cer);
    let (a, b) = (at(from_db)?, at(to_db)?);
    if a <= 0.0 || b <= 0.0 {
        return None;
    }
    Some((b.log10() - a.log10()) / ((to_db - from_db) / 10.0))
}

/// High-SNR pairwise error probability `3·snr⁻²/det((U,Û)ᴴ(U,Û))`.
pub fn asymptotic_pep(u: &Codeword, v: &Codeword, snr: f64) -> Result<f64> {
    let det = pairwise_det(u, v);
    if det.is_nan() || det <= 1e-24 {
        return Err(Error::InvalidPair(format!("stacked pair is singular (det = {det:e})")));
    }
    Ok(3.0 / (snr * snr * det))
}

/// Union bound on the codeword error rate: the mean over transmitted codewords
/// of the summed asymptotic pairwise error probabilities.
pub fn union_bound(cb: &Codebook, snr: f64) -> Result<f64> {
    let cws = cb.codewords();
    let total: Result<f64> = (0..cws.len())
        .into_par_iter()
        .map(|i| {
            let mut s = 0.0;
            for (j, v) in cws.iter().enumerate() {
                if j != i {
                    s += asymptotic_pep(&cws[i], v, snr)?;
                }
            }
            Ok(s)
        })
        .sum();
    Ok(total? / cws.len() as f64)
}

/// Writes points as CSV with header
/// `scheme,rate_bits,snr_db,trials,errors,cer,ci_lo,ci_hi,seed`.
pub fn write_points_csv<W: Write>(points: &[SimPoint], w: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    for p in points {
        wr.serialize(p)?;
    }
    if points.is_empty() {
        wr.write_record(["scheme", "rate_bits", "snr_db", "trials", "errors", "cer", "ci_lo", "ci_hi", "seed"])?;
    }
    wr.flush()?;
    Ok(())
}

/// CSV text of [`write_points_csv`].
pub fn points_csv(points: &[SimPoint]) -> Result<String> {
    let mut buf = Vec::new();
    write_points_csv(points, &mut buf)?;
    String::from_utf8(buf).map_err(|e| Error::InternalConsistency(e.to_string()))
}

#[derive(Debug, Clone, Serialize)]
pub struct SimReport<'a> {
    pub config: &'a SimConfig,
    pub codebook: &'a CodebookKind,
    pub points: &'a [SimPoint],
}

/// JSON mirror of a run, with the code description embedded.
pub fn write_report_json<W: Write>(report: &SimReport<'_>, w: W) -> Result<()> {
    serde_json::to_writer_pretty(w, report)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scheme_names_roundtrip() {
        for s in Scheme::ALL {
            assert_eq!(s.name().parse::<Scheme>().unwrap(), s);
        }
        assert_eq!("training-qam".parse::<Scheme>().unwrap(), Scheme::TrainingQam);
        assert!("ofdm".parse::<Scheme>().is_err());
    }

    #[test]
    fn wilson_brackets_estimate() {
        for (e, n) in [(0u64, 10u64), (3, 10), (10, 10), (17, 100_000)] {
            let (lo, hi) = wilson_interval(e, n);
            let p = e as f64 / n as f64;
            assert!(lo <= p && p <= hi && lo >= 0.0 && hi <= 1.0);
        }
        // textbook value: 0 of 10 gives an upper limit of about 0.2775
        assert!((wilson_interval(0, 10).1 - 0.27753).abs() < 1e-4);
    }

    #[test]
    fn config_validation() {
        let mut c = SimConfig::new(Scheme::Ufcp, 6, vec![10.0, 20.0], 10, 1);
        assert!(c.validate().is_ok());
        c.snr_grid_db = vec![20.0, 10.0];
        assert!(c.validate().is_err());
        c.snr_grid_db = vec![10.0];
        c.trials = 0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn pep_scaling() {
        let cb = build_codebook(Scheme::Ufcp, 4, DEFAULT_PILOT_SHARE).unwrap();
        let (u, v) = (&cb.codewords()[0], &cb.codewords()[1]);
        let p1 = asymptotic_pep(u, v, 100.0).unwrap();
        let p10 = asymptotic_pep(u, v, 1000.0).unwrap();
        assert!((p10 / p1 - 1e-2).abs() < 1e-12);
        assert!(matches!(asymptotic_pep(u, u, 100.0), Err(Error::InvalidPair(_))));
        // doubling the determinant halves the probability
        let det = pairwise_det(u, v);
        assert!((p1 * det - 3.0 / 1e4).abs() < 1e-15);
    }

    #[test]
    fn worst_pair_rate_four() {
        let d = optimal_design(4).unwrap();
        let w = crate::stbc::coding_gain_bruteforce(&d).unwrap();
        let cb = enumerate_codebook(&d).unwrap();
        let pep = asymptotic_pep(&cb.codewords()[w.first], &cb.codewords()[w.second], 1e3).unwrap();
        assert!((pep - 4.8e-5).abs() < 1e-12);
    }

    #[test]
    fn noiseless_curve_has_no_errors() {
        let cfg = SimConfig::new(Scheme::Ufcp, 6, vec![200.0], 10_000, 3);
        let pts = run_cer_curve(&cfg).unwrap();
        assert_eq!(pts[0].errors, 0);
    }

    #[test]
    fn csv_header_and_determinism() {
        let mut cfg = SimConfig::new(Scheme::Differential, 4, vec![10.0, 14.0], 9000, 77);
        cfg.workers = 1;
        let a = points_csv(&run_cer_curve(&cfg).unwrap()).unwrap();
        cfg.workers = 3;
        let b = points_csv(&run_cer_curve(&cfg).unwrap()).unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with("scheme,rate_bits,snr_db,trials,errors,cer,ci_lo,ci_hi,seed\n"));
        assert!(a.contains("\ndifferential,4,10.0,9000,"));
    }

    #[test]
    fn partial_last_batch_counts_every_trial() {
        let cfg = SimConfig::new(Scheme::TrainingQam, 4, vec![0.0], BATCH_TRIALS + 5, 1);
        let p = &run_cer_curve(&cfg).unwrap()[0];
        assert_eq!(p.trials, BATCH_TRIALS + 5);
        assert!(p.errors > 0 && p.errors <= p.trials);
    }

    #[test]
    fn json_mirror_embeds_design() {
        let cfg = SimConfig::new(Scheme::Ufcp, 5, vec![10.0], 100, 1);
        let cb = build_codebook(cfg.scheme, cfg.rate_bits, cfg.pilot_share).unwrap();
        let pts = run_cer_curve_with(&cfg, &cb).unwrap();
        let mut buf = Vec::new();
        write_report_json(&SimReport { config: &cfg, codebook: cb.kind(), points: &pts }, &mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["codebook"]["scheme"], "ufcp");
        assert_eq!(v["codebook"]["rate_bits"], 5);
        assert!(v["codebook"]["alpha"].as_f64().unwrap() > 0.25);
        assert_eq!(v["points"][0]["trials"], 100);
    }

    #[test]
    fn union_bound_rejects_singular_baseline_pairs() {
        // differential codewords over PSK never collide, so the bound exists
        let cb = differential_codebook(4).unwrap();
        assert!(union_bound(&cb, 1e3).unwrap() > 0.0);
        let ufcp = build_codebook(Scheme::Ufcp, 5, DEFAULT_PILOT_SHARE).unwrap();
        assert!(union_bound(&ufcp, 1e3).unwrap() > 0.0);
    }
}

//! Block Rayleigh fading over four slots with circularly symmetric complex
//! Gaussian noise.

use nalgebra::{Vector2, Vector4};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::stbc::CodeMatrix;

/// Generator used for all simulation randomness.
pub type SimRng = ChaCha8Rng;

/// Independent generator for `(seed, stream)`.
pub fn substream(seed: u64, stream: u64) -> SimRng {
    let mut rng = SimRng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Channel gains from the two transmit antennas, constant over one block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelBlock {
    pub h: Vector2<Complex64>,
}

/// Noise level. `snr = 1/σ²`, so `σ² = 10^(−snr_db/10)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoiseConfig {
    pub sigma2: f64,
    pub snr_db: f64,
}

impl NoiseConfig {
    pub fn from_snr_db(snr_db: f64) -> Result<Self> {
        if !snr_db.is_finite() {
            return Err(Error::InvalidParameter(format!("SNR must be finite, got {snr_db}")));
        }
        Ok(Self { sigma2: 10f64.powf(-snr_db / 10.0), snr_db })
    }

    /// No noise at all.
    pub fn noiseless() -> Self {
        Self { sigma2: 0.0, snr_db: f64::INFINITY }
    }

    pub fn snr_linear(&self) -> f64 {
        1.0 / self.sigma2
    }
}

/// Unit-variance circularly symmetric complex Gaussian sample.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// `h_i = (g1 + j·g2)/√2` with standard normal `g`.
pub fn sample_block<R: Rng + ?Sized>(rng: &mut R) -> ChannelBlock {
    ChannelBlock { h: Vector2::new(complex_gaussian(rng), complex_gaussian(rng)) }
}

/// Four unit-variance noise samples, to be scaled by `σ`.
pub fn unit_noise<R: Rng + ?Sized>(rng: &mut R) -> Vector4<Complex64> {
    Vector4::from_fn(|_, _| complex_gaussian(rng))
}

/// `S·h + ξ` with `ξ ~ CN(0, σ²I₄)`. Draws no noise when `σ² = 0`.
pub fn transmit<R: Rng + ?Sized>(s: &CodeMatrix, blk: &ChannelBlock, noise: &NoiseConfig, rng: &mut R) -> Vector4<Complex64> {
    let clean = s * blk.h;
    if noise.sigma2 == 0.0 {
        return clean;
    }
    clean + unit_noise(rng) * Complex64::new(noise.sigma2.sqrt(), 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stbc::{build_codeword, differential_codebook};
    use crate::constellations::GaussianInt;

    const N: usize = 1_000_000;

    #[test]
    fn seeded_blocks_repeat() {
        let a: Vec<_> = (0..5).map({ let mut r = substream(7, 3); move |_| sample_block(&mut r) }).collect();
        let b: Vec<_> = (0..5).map({ let mut r = substream(7, 3); move |_| sample_block(&mut r) }).collect();
        assert_eq!(a, b);
        let c = sample_block(&mut substream(7, 4));
        assert_ne!(a[0], c);
    }

    #[test]
    fn unit_power_uncorrelated_and_white_in_time() {
        let mut rng = substream(11, 0);
        let (mut p1, mut p2, mut cross, mut lag) = (0.0, 0.0, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        let mut prev = sample_block(&mut rng).h[0];
        for _ in 0..N {
            let h = sample_block(&mut rng).h;
            p1 += h[0].norm_sqr();
            p2 += h[1].norm_sqr();
            cross += h[0] * h[1].conj();
            lag += h[0] * prev.conj();
            prev = h[0];
        }
        let n = N as f64;
        assert!((p1 / n - 1.0).abs() < 0.01, "{}", p1 / n);
        assert!((p2 / n - 1.0).abs() < 0.01);
        assert!(cross.norm() / n < 0.01);
        assert!(lag.norm() / n < 0.01);
    }

    #[test]
    fn noise_is_isotropic() {
        let noise = NoiseConfig::from_snr_db(3.0).unwrap();
        let mut rng = substream(5, 1);
        let s = CodeMatrix::zeros();
        let blk = ChannelBlock { h: Vector2::zeros() };
        let (mut vr, mut vi) = (0.0, 0.0);
        let m = 250_000;
        for _ in 0..m {
            let r = transmit(&s, &blk, &noise, &mut rng);
            vr += r.iter().map(|c| c.re * c.re).sum::<f64>();
            vi += r.iter().map(|c| c.im * c.im).sum::<f64>();
        }
        let half = noise.sigma2 / 2.0;
        assert!((vr / (4 * m) as f64 / half - 1.0).abs() < 0.01);
        assert!((vi / (4 * m) as f64 / half - 1.0).abs() < 0.01);
    }

    #[test]
    fn noiseless_is_exact() {
        let c = build_codeword(GaussianInt::ONE, GaussianInt::new(1, 1), GaussianInt::new(3, -1), 0.2).unwrap();
        let blk = sample_block(&mut substream(1, 1));
        let r = transmit(&c.matrix, &blk, &NoiseConfig::noiseless(), &mut substream(1, 2));
        assert_eq!(r, c.matrix * blk.h);
        let zero = ChannelBlock { h: Vector2::zeros() };
        assert_eq!(transmit(&c.matrix, &zero, &NoiseConfig::noiseless(), &mut substream(1, 2)), Vector4::zeros());
    }

    #[test]
    fn received_energy() {
        // E‖r‖² = ‖h‖² + 4σ² for orthonormal columns
        let cb = differential_codebook(4).unwrap();
        let s = cb.codewords()[5].matrix;
        let blk = ChannelBlock { h: Vector2::new(Complex64::new(0.7, -0.2), Complex64::new(-1.1, 0.4)) };
        let noise = NoiseConfig::from_snr_db(0.0).unwrap();
        let mut rng = substream(9, 9);
        let m = 400_000;
        let mean = (0..m).map(|_| transmit(&s, &blk, &noise, &mut rng).norm_squared()).sum::<f64>() / m as f64;
        let want = blk.h.norm_squared() + 4.0 * noise.sigma2;
        assert!((mean / want - 1.0).abs() < 0.01, "{mean} vs {want}");
    }

    #[test]
    fn snr_convention() {
        let n = NoiseConfig::from_snr_db(20.0).unwrap();
        assert!((n.sigma2 - 0.01).abs() < 1e-15);
        assert!((n.snr_linear() - 100.0).abs() < 1e-9);
        assert!(NoiseConfig::from_snr_db(f64::NAN).is_err());
    }
}

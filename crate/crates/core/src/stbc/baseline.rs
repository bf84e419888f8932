//! Reference codebooks: differential (PSK Alamouti behind an identity block)
//! and training (pilot block followed by Alamouti data).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::{alamouti, CodeMatrix, Codebook, CodebookKind, Codeword, CodewordLabel};
use crate::constellations::make_qam;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SymbolFamily {
    Psk,
    Qam,
}

/// Bits for the two Alamouti symbols: `(r/2, r/2)` or `((r+1)/2, (r−1)/2)`.
pub fn split_bits(r: u32) -> (u32, u32) {
    (r.div_ceil(2), r / 2)
}

/// Unit-modulus `M`-PSK, `e^{j2πm/M}` for `m = 0..M`.
pub fn psk(order: usize) -> Vec<Complex64> {
    (0..order)
        .map(|m| Complex64::from_polar(1.0, 2.0 * PI * m as f64 / order as f64))
        .collect()
}

fn check_rate(r: u32) -> Result<()> {
    if !(2..=24).contains(&r) {
        return Err(Error::InvalidParameter(format!("baseline rate must be in 2..=24 bits, got {r}")));
    }
    Ok(())
}

fn stack(top: [Complex64; 4], data: nalgebra::Matrix2<Complex64>) -> CodeMatrix {
    CodeMatrix::new(top[0], top[1], top[2], top[3], data[(0, 0)], data[(0, 1)], data[(1, 0)], data[(1, 1)])
}

/// `(1/√2)[I₂; (1/√2)·Alamouti(s1, s2)]` over `2^{r1}`- and `2^{r2}`-PSK.
pub fn differential_codebook(r: u32) -> Result<Codebook> {
    check_rate(r)?;
    let (r1, r2) = split_bits(r);
    let (a, b) = (psk(1 << r1), psk(1 << r2));
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut out = Vec::with_capacity(1 << r);
    for (i, &s1) in a.iter().enumerate() {
        for (k, &s2) in b.iter().enumerate() {
            let m = stack([one, zero, zero, one], alamouti(s1, s2) * h) * h;
            out.push(Codeword { matrix: m, label: CodewordLabel::Symbols { s1: i, s2: k } });
        }
    }
    Codebook::new(out, CodebookKind::Differential { rate_bits: r, psk_orders: [a.len(), b.len()] })
}

fn symbols(family: SymbolFamily, bits: u32) -> Result<Vec<Complex64>> {
    Ok(match (family, bits) {
        (SymbolFamily::Psk, b) | (SymbolFamily::Qam, b @ 1) => psk(1 << b),
        (SymbolFamily::Qam, b) => make_qam(b)?.points().iter().map(|p| p.to_complex()).collect(),
    })
}

/// `[√ρ·I₂; √(1−ρ)·Alamouti(s1, s2)/√E]` with `E` the mean of `|s1|² + |s2|²`,
/// so the mean of `tr(SᴴS)` is 2. `ρ = 0.5` gives equal pilot and mean data
/// energy.
pub fn training_codebook(r: u32, family: SymbolFamily, pilot_share: f64) -> Result<Codebook> {
    check_rate(r)?;
    if !(pilot_share > 0.0 && pilot_share < 1.0) {
        return Err(Error::InvalidParameter(format!("pilot share must lie in (0, 1), got {pilot_share}")));
    }
    let (r1, r2) = split_bits(r);
    let (a, b) = (symbols(family, r1)?, symbols(family, r2)?);
    let mean = |s: &[Complex64]| s.iter().map(|c| c.norm_sqr()).sum::<f64>() / s.len() as f64;
    let data_energy = mean(&a) + mean(&b);
    let pilot = Complex64::new(pilot_share.sqrt(), 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let scale = Complex64::new(((1.0 - pilot_share) / data_energy).sqrt(), 0.0);
    let mut out = Vec::with_capacity(1 << r);
    for (i, &s1) in a.iter().enumerate() {
        for (k, &s2) in b.iter().enumerate() {
            let m = stack([pilot, zero, zero, pilot], alamouti(s1, s2) * scale);
            out.push(Codeword { matrix: m, label: CodewordLabel::Symbols { s1: i, s2: k } });
        }
    }
    Codebook::new(out, CodebookKind::Training { rate_bits: r, family, symbol_bits: [r1, r2], pilot_share })
}

//! Unitary space-time codewords built from two factorable pairs sharing the
//! reference set `X`, plus the differential and training baselines.

mod baseline;
mod design;
mod gain;

pub use baseline::{differential_codebook, psk, split_bits, training_codebook, SymbolFamily};
pub use design::{
    analytic_alpha, analytic_gain, gain_case, optimal_design, CodeDesign, GainCase, MAX_ANALYTIC_RATE, MAX_DESIGN_RATE,
};
pub use gain::{
    coding_gain_bruteforce, coding_gain_bruteforce_with, gain_fn, min_sqrt_det, pairwise_det, pairwise_det_closed_form,
    BruteForceOptions, GainWitness, BRUTE_FORCE_CAP,
};

use nalgebra::{Matrix2, Matrix4x2};
use num_complex::Complex64;
use serde::Serialize;

use crate::constellations::GaussianInt;
use crate::error::{Error, Result};

/// A 4×2 complex codeword: rows are time slots, columns are transmit antennas.
pub type CodeMatrix = Matrix4x2<Complex64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CodewordLabel {
    /// Reference symbol and the two data symbols of a UFCP codeword.
    Ufcp { x: GaussianInt, y1: GaussianInt, y2: GaussianInt },
    /// Indices of the two Alamouti symbols of a baseline codeword.
    Symbols { s1: usize, s2: usize },
}

#[derive(Debug, Clone)]
pub struct Codeword {
    pub matrix: CodeMatrix,
    pub label: CodewordLabel,
}

impl Codeword {
    pub fn triple(&self) -> Option<(GaussianInt, GaussianInt, GaussianInt)> {
        match self.label {
            CodewordLabel::Ufcp { x, y1, y2 } => Some((x, y1, y2)),
            CodewordLabel::Symbols { .. } => None,
        }
    }

    pub fn gram(&self) -> Matrix2<Complex64> {
        self.matrix.adjoint() * self.matrix
    }

    /// Largest entry-wise deviation of `SᴴS` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        let d = self.gram() - Matrix2::identity();
        d.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// Alamouti block `[a b; -b* a*]`.
pub fn alamouti(a: Complex64, b: Complex64) -> Matrix2<Complex64> {
    Matrix2::new(a, b, -b.conj(), a.conj())
}

/// `[x 0; 0 x*; αy1 αy2; −αy2* αy1*]`, normalised to orthonormal columns.
pub fn build_codeword(x: GaussianInt, y1: GaussianInt, y2: GaussianInt, alpha: f64) -> Result<Codeword> {
    if x == GaussianInt::ZERO {
        return Err(Error::InvalidParameter("reference symbol x must be nonzero".into()));
    }
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidParameter(format!("alpha must be positive, got {alpha}")));
    }
    let a2 = alpha * alpha;
    let norm = (x.energy() as f64 + a2 * (y1.energy() + y2.energy()) as f64).sqrt();
    let xc = x.to_complex();
    let zero = Complex64::new(0.0, 0.0);
    let b = alamouti(y1.to_complex(), y2.to_complex()) * Complex64::new(alpha, 0.0);
    let m = CodeMatrix::new(xc, zero, zero, xc.conj(), b[(0, 0)], b[(0, 1)], b[(1, 0)], b[(1, 1)])
        / Complex64::new(norm, 0.0);
    Ok(Codeword { matrix: m, label: CodewordLabel::Ufcp { x, y1, y2 } })
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "scheme", rename_all = "snake_case")]
pub enum CodebookKind {
    Ufcp(Box<CodeDesign>),
    Differential { rate_bits: u32, psk_orders: [usize; 2] },
    Training { rate_bits: u32, family: SymbolFamily, symbol_bits: [u32; 2], pilot_share: f64 },
}

#[derive(Debug, Clone)]
pub struct Codebook {
    codewords: Vec<Codeword>,
    kind: CodebookKind,
    unitary: bool,
}

impl Codebook {
    pub fn new(codewords: Vec<Codeword>, kind: CodebookKind) -> Result<Self> {
        if codewords.is_empty() {
            return Err(Error::InvalidCodebook("no codewords".into()));
        }
        let unitary = codewords.iter().all(|c| c.unitarity_error() < 1e-12);
        Ok(Self { codewords, kind, unitary })
    }

    pub fn codewords(&self) -> &[Codeword] {
        &self.codewords
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn kind(&self) -> &CodebookKind {
        &self.kind
    }

    pub fn is_unitary(&self) -> bool {
        self.unitary
    }

    pub fn rate_bits(&self) -> u32 {
        match &self.kind {
            CodebookKind::Ufcp(d) => d.rate_bits(),
            CodebookKind::Differential { rate_bits, .. } | CodebookKind::Training { rate_bits, .. } => *rate_bits,
        }
    }

    /// Mean of `tr(SᴴS)` over the codebook.
    pub fn mean_energy(&self) -> f64 {
        self.codewords.iter().map(|c| c.matrix.norm_squared()).sum::<f64>() / self.len() as f64
    }
}

/// All codewords of a design, x-major, then `y1`, then `y2`, each in
/// constellation order.
pub fn enumerate_codebook(d: &CodeDesign) -> Result<Codebook> {
    let mut out = Vec::with_capacity(1usize << d.rate_bits());
    for &x in d.x().points() {
        for &y1 in d.ufcp1().y().points() {
            for &y2 in d.ufcp2().y().points() {
                out.push(build_codeword(x, y1, y2, d.alpha())?);
            }
        }
    }
    Codebook::new(out, CodebookKind::Ufcp(Box::new(d.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::Matrix2;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn g(a: i64, b: i64) -> GaussianInt {
        GaussianInt::new(a, b)
    }

    #[test]
    fn codeword_example() {
        let c = build_codeword(g(1, 0), g(1, 1), g(1, 1), 1.0).unwrap();
        let s = 5f64.sqrt();
        let col0 = [Complex64::new(1.0 / s, 0.0), Complex64::new(0.0, 0.0), Complex64::new(1.0 / s, 1.0 / s), Complex64::new(-1.0 / s, 1.0 / s)];
        for (i, want) in col0.iter().enumerate() {
            assert!((c.matrix[(i, 0)] - want).norm() < 1e-15);
        }
        assert!(c.unitarity_error() < 1e-15);
    }

    #[test]
    fn rejects_zero_reference_and_bad_alpha() {
        assert!(build_codeword(g(0, 0), g(1, 1), g(1, 1), 0.5).is_err());
        assert!(build_codeword(g(1, 0), g(1, 1), g(1, 1), 0.0).is_err());
    }

    #[test]
    fn reference_rotation() {
        // the unitary diag(j*, j, 1, 1) maps the x = j codeword onto the x = 1 codeword
        let j = Complex64::new(0.0, 1.0);
        let (y1, y2, a) = (g(3, -1), g(-1, 1), 0.3);
        let cj = build_codeword(g(0, 1), y1, y2, a).unwrap();
        let c1 = build_codeword(g(1, 0), y1, y2, a).unwrap();
        let mut rot = nalgebra::Matrix4::<Complex64>::identity();
        rot[(0, 0)] = j.conj();
        rot[(1, 1)] = j;
        assert!((rot * cj.matrix - c1.matrix).norm() < 1e-15);
        // diag(j*, j*, 1, 1) only matches up to the sign of the second slot
        rot[(1, 1)] = j.conj();
        let mapped = rot * cj.matrix;
        assert!((mapped[(1, 1)] + c1.matrix[(1, 1)]).norm() < 1e-15);
    }

    #[test]
    fn codebook_sizes_and_distinct_labels() {
        for r in 4..=8 {
            let d = optimal_design(r).unwrap();
            let cb = enumerate_codebook(&d).unwrap();
            assert_eq!(cb.len(), 1 << r);
            assert!(cb.is_unitary());
            let labels: HashSet<_> = cb.codewords().iter().map(|c| c.triple().unwrap()).collect();
            assert_eq!(labels.len(), cb.len());
        }
    }

    #[test]
    fn codebook_order_is_x_major() {
        let d = optimal_design(5).unwrap();
        let cb = enumerate_codebook(&d).unwrap();
        let first = cb.codewords()[0].triple().unwrap();
        let last = cb.codewords()[31].triple().unwrap();
        assert_eq!(first.0, g(1, 0));
        assert_eq!(last.0, g(0, 1));
        assert_eq!(first.1, d.ufcp1().y().points()[0]);
        assert_eq!(cb.codewords()[1].triple().unwrap().2, d.ufcp2().y().points()[1]);
    }

    #[test]
    fn alamouti_is_scaled_unitary() {
        let a = alamouti(Complex64::new(1.0, 2.0), Complex64::new(-3.0, 0.5));
        let gram = a.adjoint() * a;
        let e = 1.0 + 4.0 + 9.0 + 0.25;
        assert!((gram - Matrix2::identity() * Complex64::new(e, 0.0)).norm() < 1e-12);
    }

    proptest! {
        #[test]
        fn codewords_are_unitary(
            xi in 0usize..4, a in -15i64..=15, b in -15i64..=15, c in -15i64..=15, d in -15i64..=15,
            alpha in 0.01f64..2.0,
        ) {
            let x = [g(1, 0), g(-1, 0), g(0, 1), g(0, -1)][xi];
            let cw = build_codeword(x, g(a, b), g(c, d), alpha).unwrap();
            prop_assert!(cw.unitarity_error() < 1e-12);
            let det = cw.gram().determinant();
            prop_assert!((det - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }
}

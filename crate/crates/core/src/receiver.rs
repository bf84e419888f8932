//! Exhaustive GLRT detection, blind identification of noise-free blocks and
//! least-squares channel estimation.

use std::collections::HashMap;

use nalgebra::{Matrix2, Vector2, Vector4};
use num_complex::Complex64;

use crate::constellations::{Constellation, GaussianInt};
use crate::error::{Error, Result};
use crate::stbc::{CodeDesign, CodeMatrix, Codebook};

type CVec4 = Vector4<Complex64>;
type CVec2 = Vector2<Complex64>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecodeResult {
    pub index: usize,
    pub metric: f64,
    pub h_hat: CVec2,
}

/// Per-codeword data for the metric `vᴴ(SᴴS)⁻¹v` with `v = Sᴴr`.
#[derive(Debug, Clone)]
struct Entry {
    rows: [[Complex64; 4]; 2],
    // (SᴴS)⁻¹ = [a b; b* d]
    a: f64,
    b: Complex64,
    d: f64,
}

/// Precomputed GLRT detector over one codebook.
#[derive(Debug, Clone)]
pub struct Detector {
    entries: Vec<Entry>,
    unitary: bool,
}

fn gram_inverse(s: &CodeMatrix) -> Option<Matrix2<Complex64>> {
    let gm = s.adjoint() * s;
    let tr = gm[(0, 0)].re + gm[(1, 1)].re;
    let det = gm.determinant().re;
    if det.is_nan() || det <= 1e-12 * tr * tr {
        return None;
    }
    gm.try_inverse()
}

impl Detector {
    pub fn new(cb: &Codebook) -> Result<Self> {
        let mut entries = Vec::with_capacity(cb.len());
        for (i, c) in cb.codewords().iter().enumerate() {
            let inv = gram_inverse(&c.matrix)
                .ok_or_else(|| Error::InvalidCodebook(format!("codeword {i} is rank deficient")))?;
            let sh = c.matrix.adjoint();
            let rows = [
                [sh[(0, 0)], sh[(0, 1)], sh[(0, 2)], sh[(0, 3)]],
                [sh[(1, 0)], sh[(1, 1)], sh[(1, 2)], sh[(1, 3)]],
            ];
            entries.push(Entry { rows, a: inv[(0, 0)].re, b: inv[(0, 1)], d: inv[(1, 1)].re });
        }
        Ok(Self { entries, unitary: cb.is_unitary() })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn project(e: &Entry, r: &CVec4) -> (Complex64, Complex64) {
        let dot = |row: &[Complex64; 4]| row[0] * r[0] + row[1] * r[1] + row[2] * r[2] + row[3] * r[3];
        (dot(&e.rows[0]), dot(&e.rows[1]))
    }

    fn score(&self, e: &Entry, r: &CVec4) -> f64 {
        let (v1, v2) = Self::project(e, r);
        if self.unitary {
            v1.norm_sqr() + v2.norm_sqr()
        } else {
            e.a * v1.norm_sqr() + e.d * v2.norm_sqr() + 2.0 * (v1.conj() * e.b * v2).re
        }
    }

    /// GLRT metric of codeword `i`.
    pub fn metric(&self, i: usize, r: &CVec4) -> f64 {
        self.score(&self.entries[i], r)
    }

    /// Index of the largest metric, lowest index on ties.
    pub fn decode_index(&self, r: &CVec4) -> usize {
        let mut best = (0usize, f64::NEG_INFINITY);
        for (i, e) in self.entries.iter().enumerate() {
            let m = self.score(e, r);
            if m > best.1 {
                best = (i, m);
            }
        }
        best.0
    }

    pub fn decode(&self, r: &CVec4) -> DecodeResult {
        let index = self.decode_index(r);
        let e = &self.entries[index];
        let (v1, v2) = Self::project(e, r);
        let h_hat = CVec2::new(e.a * v1 + e.b * v2, e.b.conj() * v1 + e.d * v2);
        DecodeResult { index, metric: self.score(e, r), h_hat }
    }
}

/// `argmax_S Tr(rᴴS(SᴴS)⁻¹Sᴴr)` over the codebook.
pub fn glrt_decode(r: &CVec4, cb: &Codebook) -> Result<DecodeResult> {
    Ok(Detector::new(cb)?.decode(r))
}

/// `rᴴS(SᴴS)⁻¹Sᴴr`.
pub fn projection_metric(r: &CVec4, s: &CodeMatrix) -> Result<f64> {
    let inv = gram_inverse(s).ok_or_else(|| Error::InvalidParameter("SᴴS is singular".into()))?;
    let v = s.adjoint() * r;
    Ok((v.adjoint() * inv * v)[(0, 0)].re)
}

/// `‖Sᴴr‖²`, the metric for orthonormal columns.
pub fn unitary_metric(r: &CVec4, s: &CodeMatrix) -> f64 {
    (s.adjoint() * r).norm_squared()
}

/// Least-squares channel estimate `(SᴴS)⁻¹Sᴴr`.
pub fn channel_estimate(r: &CVec4, s: &CodeMatrix) -> Result<CVec2> {
    let inv = gram_inverse(s).ok_or_else(|| Error::InvalidParameter("SᴴS is singular".into()))?;
    Ok(inv * (s.adjoint() * r))
}

/// Recovered transmission of one noise-free block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Identification {
    pub x: GaussianInt,
    pub y1: GaussianInt,
    pub y2: GaussianInt,
    pub h: CVec2,
}

/// Blind identifier for one design.
///
/// With `r_x`, `r_y` the first and last two received samples,
/// `(r_x*(1)r_y(1) + r_x(2)r_y*(2))/‖r_x‖² = α·y1/x` and
/// `(r_x*(2)r_y(1) − r_x(1)r_y*(2))/‖r_x‖² = α·x·y2`. The first is resolved
/// through the quotient lookup of the first pair, the second through the
/// product lookup `x·y2 → (x, y2)` of the second pair.
#[derive(Debug, Clone)]
pub struct Identifier {
    design: CodeDesign,
    products: HashMap<GaussianInt, (GaussianInt, GaussianInt)>,
}

fn nearest(c: &Constellation, target: Complex64) -> GaussianInt {
    let mut best = (c.points()[0], f64::INFINITY);
    for &p in c.points() {
        let d = (p.to_complex() - target).norm_sqr();
        if d < best.1 {
            best = (p, d);
        }
    }
    best.0
}

impl Identifier {
    pub fn new(design: &CodeDesign) -> Result<Self> {
        let mut products = HashMap::new();
        for &x in design.x().points() {
            for &y in design.ufcp2().y().points() {
                if products.insert(x * y, (x, y)).is_some() {
                    return Err(Error::Unsupported("products x·y2 are not distinct for this design".into()));
                }
            }
        }
        let z2 = design.ufcp2().z();
        if products.len() != z2.len() || !products.keys().all(|k| z2.contains(*k)) {
            return Err(Error::Unsupported("products x·y2 do not cover the second quotient set".into()));
        }
        Ok(Self { design: design.clone(), products })
    }

    pub fn identify(&self, r: &CVec4) -> Result<Identification> {
        let (rx1, rx2, ry1, ry2) = (r[0], r[1], r[2], r[3]);
        let nx = rx1.norm_sqr() + rx2.norm_sqr();
        if nx == 0.0 || !nx.is_finite() {
            return Err(Error::Unidentifiable("reference part of the block is zero".into()));
        }
        let alpha = self.design.alpha();
        let quot = (rx1.conj() * ry1 + rx2 * ry2.conj()) / (nx * alpha);
        let prod = (rx2.conj() * ry1 - rx1 * ry2.conj()) / (nx * alpha);

        let u1 = self.design.ufcp1();
        let z1 = nearest(u1.z(), quot);
        let (xa, y1) = u1
            .lookup(z1)
            .ok_or_else(|| Error::CorruptedInput(format!("{z1} not in the first quotient set")))?;
        let z2 = nearest(self.design.ufcp2().z(), prod);
        let &(xb, y2) = self
            .products
            .get(&z2)
            .ok_or_else(|| Error::CorruptedInput(format!("{z2} not a reference-data product")))?;
        if xa != xb {
            return Err(Error::CorruptedInput(format!("reference symbols disagree: {xa} vs {xb}")));
        }
        let a2 = alpha * alpha;
        let norm = (xa.energy() as f64 + a2 * (y1.energy() + y2.energy()) as f64).sqrt();
        let xc = xa.to_complex();
        let h = CVec2::new(rx1 / xc, rx2 / xc.conj()) * Complex64::new(norm, 0.0);
        Ok(Identification { x: xa, y1, y2, h })
    }
}

/// Recovers `(x, y1, y2, h)` from a noise-free block of the given design.
pub fn identify_noise_free(r: &CVec4, d: &CodeDesign) -> Result<Identification> {
    Identifier::new(d)?.identify(r)
}

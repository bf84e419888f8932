//! Coding gain: the pairwise function, the exhaustive minimum and the
//! determinant of the stacked pair matrix.

use nalgebra::Matrix4;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{enumerate_codebook, CodeDesign, Codeword, CodewordLabel};
use crate::constellations::GaussianInt;
use crate::error::{Error, Result};

/// Largest codebook scanned pair by pair.
pub const BRUTE_FORCE_CAP: usize = 1 << 15;

type Triple = (GaussianInt, GaussianInt, GaussianInt);

/// `α²(|u1 − û1|² + |u2 − û2|²) / ((1 + α²(|u1|² + |u2|²))(1 + α²(|û1|² + |û2|²)))`
/// with `u1 = y1/x` and `u2 = y2·x`.
///
/// Right-multiplying a codeword by `diag(x̄, x)` leaves its column space alone
/// and turns it into `[I; α·alamouti(y1/x, y2·x)]`, so these two quotients
/// are what a pair of codewords is compared on. For `x = ±j` the second one
/// is `−y2/x`.
pub fn gain_fn(a: Triple, b: Triple, alpha: f64) -> f64 {
    let q = |t: Triple| {
        let x = t.0.to_complex();
        (t.1.to_complex() / x, t.2.to_complex() * x / x.norm_sqr())
    };
    let (u1, u2) = q(a);
    let (v1, v2) = q(b);
    let a2 = alpha * alpha;
    a2 * ((u1 - v1).norm_sqr() + (u2 - v2).norm_sqr())
        / ((1.0 + a2 * (u1.norm_sqr() + u2.norm_sqr())) * (1.0 + a2 * (v1.norm_sqr() + v2.norm_sqr())))
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct GainWitness {
    pub gain: f64,
    /// Codebook indices of the minimising pair, `first < second` unless the
    /// reference reduction is on.
    pub first: usize,
    pub second: usize,
    pub first_label: CodewordLabel,
    pub second_label: CodewordLabel,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct BruteForceOptions {
    /// Only pair codewords whose reference symbol is 1 against all others.
    /// Every codeword is a unitary rotation of one with `x = 1`, so the
    /// minimum is unchanged.
    pub fix_reference: bool,
}

/// Exact minimum of [`gain_fn`] over distinct codeword pairs.
pub fn coding_gain_bruteforce(d: &CodeDesign) -> Result<GainWitness> {
    coding_gain_bruteforce_with(d, BruteForceOptions::default())
}

pub fn coding_gain_bruteforce_with(d: &CodeDesign, opts: BruteForceOptions) -> Result<GainWitness> {
    let n = 1usize << d.rate_bits();
    if n > BRUTE_FORCE_CAP {
        return Err(Error::Capacity { codewords: n, cap: BRUTE_FORCE_CAP });
    }
    let mut labels = Vec::with_capacity(n);
    let mut quot = Vec::with_capacity(n);
    for &x in d.x().points() {
        for &y1 in d.ufcp1().y().points() {
            for &y2 in d.ufcp2().y().points() {
                labels.push(CodewordLabel::Ufcp { x, y1, y2 });
                let u1 = y1.div_unit(x)?;
                let u2 = y2 * x;
                quot.push((u1.to_complex(), u2.to_complex(), (u1.energy() + u2.energy()) as f64));
            }
        }
    }
    let a2 = d.alpha() * d.alpha();
    let pair = |i: usize, j: usize| {
        let (u1, u2, e) = quot[i];
        let (v1, v2, f) = quot[j];
        a2 * ((u1 - v1).norm_sqr() + (u2 - v2).norm_sqr()) / ((1.0 + a2 * e) * (1.0 + a2 * f))
    };
    let firsts: Vec<usize> = if opts.fix_reference {
        labels
            .iter()
            .enumerate()
            .filter(|(_, l)| matches!(l, CodewordLabel::Ufcp { x, .. } if *x == GaussianInt::ONE))
            .map(|(i, _)| i)
            .collect()
    } else {
        (0..n).collect()
    };
    let better = |a: (f64, usize, usize), b: (f64, usize, usize)| {
        if (b.0, b.1, b.2) < (a.0, a.1, a.2) {
            b
        } else {
            a
        }
    };
    let best = firsts
        .par_iter()
        .map(|&i| {
            let others: Box<dyn Iterator<Item = usize>> = if opts.fix_reference {
                Box::new((0..n).filter(move |&j| j != i))
            } else {
                Box::new(i + 1..n)
            };
            others.fold((f64::INFINITY, usize::MAX, usize::MAX), |acc, j| better(acc, (pair(i, j), i, j)))
        })
        .reduce(|| (f64::INFINITY, usize::MAX, usize::MAX), better);
    if best.1 == usize::MAX {
        return Err(Error::InvalidParameter("codebook has fewer than two codewords".into()));
    }
    Ok(GainWitness {
        gain: best.0,
        first: best.1,
        second: best.2,
        first_label: labels[best.1],
        second_label: labels[best.2],
    })
}

/// `det((U,Û)ᴴ(U,Û))`, evaluated as `|det(U,Û)|²` from the stacked 4×4 matrix.
pub fn pairwise_det(u: &Codeword, v: &Codeword) -> f64 {
    let mut m = Matrix4::<Complex64>::zeros();
    m.fixed_view_mut::<4, 2>(0, 0).copy_from(&u.matrix);
    m.fixed_view_mut::<4, 2>(0, 2).copy_from(&v.matrix);
    m.determinant().norm_sqr()
}

/// Closed form of [`pairwise_det`] for two codewords of one design: the
/// square of [`gain_fn`].
pub fn pairwise_det_closed_form(a: Triple, b: Triple, alpha: f64) -> f64 {
    gain_fn(a, b, alpha).powi(2)
}

/// Minimum of `√det` over all distinct pairs, straight from the matrices.
pub fn min_sqrt_det(d: &CodeDesign) -> Result<(f64, usize, usize)> {
    let cb = enumerate_codebook(d)?;
    let cws = cb.codewords();
    let n = cws.len();
    let best = (0..n)
        .into_par_iter()
        .map(|i| {
            (i + 1..n).fold((f64::INFINITY, i, i), |acc, j| {
                let v = pairwise_det(&cws[i], &cws[j]);
                if v < acc.0 {
                    (v, i, j)
                } else {
                    acc
                }
            })
        })
        .reduce(|| (f64::INFINITY, usize::MAX, usize::MAX), |a, b| if (b.0, b.1, b.2) < (a.0, a.1, a.2) { b } else { a });
    Ok((best.0.sqrt(), best.1, best.2))
}

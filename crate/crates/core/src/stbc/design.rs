//! Optimal code designs per rate and their closed-form coding gains.

use serde::Serialize;

use crate::constellations::{make_qam, Constellation, CornerProfile};
use crate::error::{Error, Result};
use crate::ufcp::{factorize, Ufcp};

/// Largest rate for which a full design (with explicit constellations) is built.
pub const MAX_DESIGN_RATE: u32 = 24;
/// Largest rate for the closed-form gain and energy scale.
pub const MAX_ANALYTIC_RATE: u32 = 56;

#[derive(Debug, Clone, Serialize)]
pub struct CodeDesign {
    rate_bits: u32,
    delta: u32,
    p: u32,
    q: u32,
    ufcp1: Ufcp,
    ufcp2: Ufcp,
    alpha: f64,
    analytic_gain: f64,
}

impl CodeDesign {
    /// Checks `p + q − δ = r`, a shared `X` of size `2^δ` and `α > 0`.
    pub fn new(rate_bits: u32, ufcp1: Ufcp, ufcp2: Ufcp, alpha: f64, analytic_gain: f64) -> Result<Self> {
        if ufcp1.x() != ufcp2.x() {
            return Err(Error::InvalidParameter("both pairs must share the same X".into()));
        }
        let bits = |c: &Constellation, what: &str| {
            c.bits().ok_or_else(|| Error::InvalidParameter(format!("|{what}| is not a power of two")))
        };
        let delta = bits(ufcp1.x(), "X")?;
        let p = bits(ufcp1.z(), "Z1")?;
        let q = bits(ufcp2.z(), "Z2")?;
        if p + q != rate_bits + delta {
            return Err(Error::InvalidParameter(format!("p + q - delta = {} != r = {rate_bits}", p + q - delta)));
        }
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidParameter(format!("alpha must be positive, got {alpha}")));
        }
        Ok(Self { rate_bits, delta, p, q, ufcp1, ufcp2, alpha, analytic_gain })
    }

    pub fn rate_bits(&self) -> u32 {
        self.rate_bits
    }
    pub fn delta(&self) -> u32 {
        self.delta
    }
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn x(&self) -> &Constellation {
        self.ufcp1.x()
    }
    pub fn ufcp1(&self) -> &Ufcp {
        &self.ufcp1
    }
    pub fn ufcp2(&self) -> &Ufcp {
        &self.ufcp2
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn analytic_gain(&self) -> f64 {
        self.analytic_gain
    }

    /// Same constellations with a different energy scale.
    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        Self::new(self.rate_bits, self.ufcp1.clone(), self.ufcp2.clone(), alpha, self.analytic_gain)
    }
}

/// Which closed form governs the optimum for a given rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GainCase {
    /// `|X| = 1`: `4/(√(E1+E2) + √(E1+E21))²`.
    SingleReference,
    /// `|X| = 2` with an 8-QAM in the pair: `8/(√(E1+E2) + √(E1+E21))²`.
    SmallPair,
    /// `|X| = 2`, `2/(E1+E2)`.
    Balanced,
    /// `|X| = 2`, `p > q`: `8/(√(E1+E21) + √(E1+E22))²`.
    Unequal,
    /// `|X| = 2`, `p = q`: `8/(√(E1+E21) + √(E11+E2))²`.
    Equal,
}

struct Plan {
    delta: u32,
    p: u32,
    q: u32,
    case: GainCase,
}

fn plan(r: u32) -> Result<Plan> {
    if r < 4 {
        return Err(Error::InvalidParameter(format!("rate must be at least 4 bits, got {r}")));
    }
    if r > MAX_ANALYTIC_RATE {
        return Err(Error::InvalidParameter(format!("rate {r} exceeds {MAX_ANALYTIC_RATE} bits")));
    }
    let p = match r {
        4 => return Ok(Plan { delta: 0, p: 2, q: 2, case: GainCase::SingleReference }),
        10 => return Ok(Plan { delta: 0, p: 5, q: 5, case: GainCase::SingleReference }),
        r if r % 2 == 0 => (r + 2) / 2,
        r => r.div_ceil(2),
    };
    let q = r + 1 - p;
    let case = match r {
        5 | 6 => GainCase::SmallPair,
        8 | 9 => GainCase::Balanced,
        r if r % 2 == 0 => GainCase::Unequal,
        _ => GainCase::Equal,
    };
    Ok(Plan { delta: 1, p, q, case })
}

/// `(gain, alpha)` from the corner energies of the two quotient QAMs.
fn closed_form(r: u32) -> Result<(f64, f64, GainCase)> {
    let pl = plan(r)?;
    let z1 = CornerProfile::closed_form(pl.p)?;
    let z2 = CornerProfile::closed_form(pl.q)?;
    let (e1, e11) = (z1.energy as f64, z1.energy_s as f64);
    let (e2, e21, e22) = (z2.energy as f64, z2.energy_s as f64, z2.energy_t as f64);
    let amgm = |num: f64, a: f64, b: f64| (num / (a.sqrt() + b.sqrt()).powi(2), (a * b).powf(-0.25));
    let (gain, alpha) = match pl.case {
        GainCase::SingleReference => amgm(4.0, e1 + e2, e1 + e21),
        GainCase::SmallPair => amgm(8.0, e1 + e2, e1 + e21),
        GainCase::Balanced => (2.0 / (e1 + e2), 1.0 / (e1 + e2).sqrt()),
        GainCase::Unequal => amgm(8.0, e1 + e21, e1 + e22),
        GainCase::Equal => amgm(8.0, e1 + e21, e11 + e2),
    };
    Ok((gain, alpha, pl.case))
}

/// Closed-form optimal coding gain for `r` bits per codeword.
pub fn analytic_gain(r: u32) -> Result<f64> {
    closed_form(r).map(|t| t.0)
}

/// Closed-form optimal energy scale for `r` bits per codeword.
pub fn analytic_alpha(r: u32) -> Result<f64> {
    closed_form(r).map(|t| t.1)
}

/// The case formula used at rate `r`.
pub fn gain_case(r: u32) -> Result<GainCase> {
    closed_form(r).map(|t| t.2)
}

/// Optimal design at `r` bits: a single reference symbol with two QAMs for
/// `r = 4` and `r = 10`, otherwise `X = {1, j}` with the optimal half factors
/// of a `2^p` and a `2^q` QAM.
pub fn optimal_design(r: u32) -> Result<CodeDesign> {
    let pl = plan(r)?;
    if r > MAX_DESIGN_RATE {
        return Err(Error::InvalidParameter(format!("explicit designs stop at {MAX_DESIGN_RATE} bits")));
    }
    let (gain, alpha, _) = closed_form(r)?;
    let (u1, u2) = if pl.delta == 0 {
        let x = Constellation::units(1)?;
        (Ufcp::new(x.clone(), make_qam(pl.p)?)?, Ufcp::new(x, make_qam(pl.q)?)?)
    } else {
        (factorize(&make_qam(pl.p)?, 2)?, factorize(&make_qam(pl.q)?, 2)?)
    };
    let d = CodeDesign::new(r, u1, u2, alpha, gain)?;
    debug_assert_eq!((d.delta, d.p, d.q), (pl.delta, pl.p, pl.q));
    Ok(d)
}

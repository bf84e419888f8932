//! Gaussian-integer constellations: the modified 2^K-ary QAM family, minimum
//! distances and corner-energy profiles.

mod lemmas;

pub use lemmas::{verify_energy_lemmas, EnergyCheck, EnergyLemmaReport, LemmaId};

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact complex integer `re + im·j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GaussianInt {
    pub re: i64,
    pub im: i64,
}

impl GaussianInt {
    pub const ZERO: Self = Self::new(0, 0);
    pub const ONE: Self = Self::new(1, 0);
    pub const J: Self = Self::new(0, 1);

    pub const fn new(re: i64, im: i64) -> Self {
        Self { re, im }
    }

    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    /// `|z|²`, exact.
    pub fn energy(self) -> i64 {
        self.re * self.re + self.im * self.im
    }

    pub fn is_unit(self) -> bool {
        self.energy() == 1
    }

    /// Quotient `self / unit`. Exact because the divisor is one of ±1, ±j.
    pub fn div_unit(self, unit: Self) -> Result<Self> {
        if !unit.is_unit() {
            return Err(Error::Unsupported(format!("division by non-unit {unit}")));
        }
        Ok(self * unit.conj())
    }

    pub fn dist_sq(self, other: Self) -> i64 {
        (self - other).energy()
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re as f64, self.im as f64)
    }

    /// Sort key for the canonical order: imaginary part descending, then real part ascending.
    fn canonical_key(&self) -> (i64, i64) {
        (-self.im, self.re)
    }
}

impl Add for GaussianInt {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for GaussianInt {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for GaussianInt {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
}

impl Neg for GaussianInt {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (re, 0) => write!(f, "{re}"),
            (0, 1) => write!(f, "j"),
            (0, -1) => write!(f, "-j"),
            (0, im) => write!(f, "{im}j"),
            (re, 1) => write!(f, "{re}+j"),
            (re, -1) => write!(f, "{re}-j"),
            (re, im) if im > 0 => write!(f, "{re}+{im}j"),
            (re, im) => write!(f, "{re}{im}j"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstellationKind {
    /// Square QAM, even K.
    Square,
    /// Union of a horizontal and a vertical rectangle, odd K ≥ 5.
    Cross,
    /// The rotation-invariant 8-point set used for K = 3.
    Modified8,
    /// Subset of the units {±1, ±j}.
    Quadset,
    /// Anything built from other constellations (factor sets, quotient sets, groups).
    Derived,
}

impl ConstellationKind {
    pub fn is_qam(self) -> bool {
        matches!(self, Self::Square | Self::Cross | Self::Modified8)
    }
}

/// Finite ordered set of distinct Gaussian integers.
#[derive(Debug, Clone)]
pub struct Constellation {
    points: Vec<GaussianInt>,
    bits: Option<u32>,
    kind: ConstellationKind,
    index: HashMap<GaussianInt, usize>,
}

impl Constellation {
    /// Keeps the given order. Fails on duplicates or an empty list.
    pub fn new(points: Vec<GaussianInt>, kind: ConstellationKind) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidParameter("empty constellation".into()));
        }
        let mut index = HashMap::with_capacity(points.len());
        for (i, &p) in points.iter().enumerate() {
            if index.insert(p, i).is_some() {
                return Err(Error::InvalidParameter(format!("duplicate point {p}")));
            }
        }
        if kind == ConstellationKind::Quadset && !points.iter().all(|p| p.is_unit()) {
            return Err(Error::InvalidParameter("quadset points must be units".into()));
        }
        let n = points.len();
        let bits = n.is_power_of_two().then(|| n.trailing_zeros());
        Ok(Self { points, bits, kind, index })
    }

    /// Like [`Constellation::new`] but reorders into the canonical order.
    pub fn canonical(mut points: Vec<GaussianInt>, kind: ConstellationKind) -> Result<Self> {
        points.sort_by_key(GaussianInt::canonical_key);
        Self::new(points, kind)
    }

    /// The unit set `{1, j}` (`size = 2`) or `{1, -1, j, -j}` (`size = 4`), or `{1}`.
    pub fn units(size: usize) -> Result<Self> {
        let pts = match size {
            1 => vec![GaussianInt::ONE],
            2 => vec![GaussianInt::ONE, GaussianInt::J],
            4 => vec![GaussianInt::ONE, -GaussianInt::ONE, GaussianInt::J, -GaussianInt::J],
            _ => return Err(Error::InvalidParameter(format!("unit set of size {size}"))),
        };
        Self::new(pts, ConstellationKind::Quadset)
    }

    pub fn points(&self) -> &[GaussianInt] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn bits(&self) -> Option<u32> {
        self.bits
    }

    pub fn kind(&self) -> ConstellationKind {
        self.kind
    }

    pub fn contains(&self, z: GaussianInt) -> bool {
        self.index.contains_key(&z)
    }

    pub fn position(&self, z: GaussianInt) -> Option<usize> {
        self.index.get(&z).copied()
    }

    /// Same points, order ignored.
    pub fn same_set(&self, other: &Constellation) -> bool {
        self.len() == other.len() && other.points.iter().all(|p| self.contains(*p))
    }

    /// Closed under multiplication by j.
    pub fn is_rotation_invariant(&self) -> bool {
        self.points.iter().all(|&p| self.contains(p * GaussianInt::J))
    }

    pub fn max_energy(&self) -> i64 {
        self.points.iter().map(|p| p.energy()).max().unwrap_or(0)
    }

    pub fn average_energy(&self) -> f64 {
        self.points.iter().map(|p| p.energy() as f64).sum::<f64>() / self.len() as f64
    }

    /// Minimum squared distance over distinct pairs, exact.
    pub fn d_min_sq(&self) -> Result<i64> {
        if self.len() < 2 {
            return Err(Error::InvalidParameter("d_min needs at least two points".into()));
        }
        let mut best = i64::MAX;
        for (i, a) in self.points.iter().enumerate() {
            for b in &self.points[i + 1..] {
                best = best.min(a.dist_sq(*b));
            }
        }
        Ok(best)
    }
}

impl PartialEq for Constellation {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.points == other.points
    }
}

impl Eq for Constellation {}

impl Serialize for Constellation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Constellation", 3)?;
        st.serialize_field("kind", &self.kind)?;
        st.serialize_field("bits", &self.bits)?;
        let pts: Vec<[i64; 2]> = self.points.iter().map(|p| [p.re, p.im]).collect();
        st.serialize_field("points", &pts)?;
        st.end()
    }
}

/// The eight points of the modified 8-QAM.
pub const MODIFIED_8QAM: [GaussianInt; 8] = [
    GaussianInt::new(1, 3),
    GaussianInt::new(1, 1),
    GaussianInt::new(3, -1),
    GaussianInt::new(1, -1),
    GaussianInt::new(-1, -3),
    GaussianInt::new(-1, -1),
    GaussianInt::new(-3, 1),
    GaussianInt::new(-1, 1),
];

fn odd_grid(half_re: i64, half_im: i64) -> impl Iterator<Item = GaussianInt> {
    (-half_re + 1..=half_re)
        .flat_map(move |m| (-half_im + 1..=half_im).map(move |n| GaussianInt::new(2 * m - 1, 2 * n - 1)))
}

/// The modified 2^K-ary QAM: square for even K, the modified 8-QAM for K = 3 and
/// a cross (union of two rectangles) for odd K ≥ 5.
pub fn make_qam(bits: u32) -> Result<Constellation> {
    if bits < 2 {
        return Err(Error::InvalidParameter(format!("QAM needs K >= 2, got {bits}")));
    }
    if bits > 30 {
        return Err(Error::InvalidParameter(format!("K = {bits} is too large")));
    }
    if bits == 3 {
        return Constellation::canonical(MODIFIED_8QAM.to_vec(), ConstellationKind::Modified8);
    }
    if bits.is_multiple_of(2) {
        let h = 1i64 << ((bits - 2) / 2);
        return Constellation::canonical(odd_grid(h, h).collect(), ConstellationKind::Square);
    }
    let long = 3i64 << ((bits - 5) / 2);
    let short = 1i64 << ((bits - 3) / 2);
    let mut pts: Vec<GaussianInt> = odd_grid(long, short).collect();
    pts.extend(odd_grid(short, long).filter(|p| p.re.abs() > 2 * short - 1 || p.im.abs() > 2 * short - 1));
    pts.sort_by_key(GaussianInt::canonical_key);
    pts.dedup();
    Constellation::new(pts, ConstellationKind::Cross)
}

/// Minimum Euclidean distance over distinct pairs.
pub fn d_min(c: &Constellation) -> Result<f64> {
    Ok((c.d_min_sq()? as f64).sqrt())
}

/// A largest-energy corner and the energies of its nearest neighbours.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CornerProfile {
    pub corner: GaussianInt,
    /// Largest point energy.
    pub energy: i64,
    /// Energy of the higher-energy nearest neighbour.
    pub energy_s: i64,
    /// Energy of the other nearest neighbour; equal to `energy_s` for K = 3.
    pub energy_t: i64,
}

impl CornerProfile {
    /// Closed-form profile of `make_qam(bits)`.
    pub fn closed_form(bits: u32) -> Result<Self> {
        if !(2..=30).contains(&bits) {
            return Err(Error::InvalidParameter(format!("no QAM profile for K = {bits}")));
        }
        let p = match bits {
            2 => Self { corner: GaussianInt::new(1, 1), energy: 2, energy_s: 2, energy_t: 2 },
            3 => Self { corner: GaussianInt::new(1, 3), energy: 10, energy_s: 2, energy_t: 2 },
            k if k % 2 == 0 => {
                let t = 1i64 << (k / 2);
                let n = (t - 1) * (t - 1) + (t - 3) * (t - 3);
                Self { corner: GaussianInt::new(t - 1, t - 1), energy: 2 * (t - 1) * (t - 1), energy_s: n, energy_t: n }
            }
            k => {
                let a = 1i64 << ((k - 1) / 2);
                let b = 3i64 << ((k - 3) / 2);
                let sq = |v: i64| v * v;
                Self {
                    corner: GaussianInt::new(b - 1, a - 1),
                    energy: sq(a - 1) + sq(b - 1),
                    energy_s: sq(a - 3) + sq(b - 1),
                    energy_t: sq(a - 1) + sq(b - 3),
                }
            }
        };
        Ok(p)
    }
}

/// Largest-energy corner among the max-energy points: closed first quadrant,
/// then largest real part.
pub fn select_corner(c: &Constellation) -> GaussianInt {
    let e = c.max_energy();
    c.points()
        .iter()
        .copied()
        .filter(|p| p.energy() == e && p.re >= 0 && p.im >= 0)
        .max_by_key(|p| (p.re, p.im))
        .unwrap_or_else(|| *c.points().iter().find(|p| p.energy() == e).expect("nonempty"))
}

/// Corner profile measured on the constellation itself.
pub fn corner_profile(c: &Constellation) -> Result<CornerProfile> {
    if !c.kind().is_qam() {
        return Err(Error::InvalidParameter(format!("corner profile needs a QAM, got {:?}", c.kind())));
    }
    let corner = select_corner(c);
    let d2 = c.d_min_sq()?;
    let mut neigh: Vec<i64> = c
        .points()
        .iter()
        .filter(|p| p.dist_sq(corner) == d2)
        .map(|p| p.energy())
        .collect();
    neigh.sort_unstable_by(|a, b| b.cmp(a));
    let (energy_s, energy_t) = match neigh.as_slice() {
        [s] => (*s, *s),
        [s, t] => (*s, *t),
        other => {
            return Err(Error::InternalConsistency(format!(
                "corner {corner} has {} nearest neighbours",
                other.len()
            )))
        }
    };
    Ok(CornerProfile { corner, energy: corner.energy(), energy_s, energy_t })
}

//! Executable checks of the corner-energy inequalities used by the coding-gain
//! optimisation.

use serde::Serialize;

use super::CornerProfile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaId {
    /// `E2 + E11 <= E1 + E21`.
    PairIneq1,
    /// `E2 + E12 <= E1 + E22`.
    PairIneq2,
    /// `E1 + E2 >= Ẽ1 + Ẽ2`.
    BalancedMin1,
    /// `√(E1+E21) + √(E1+E22) >= √(Ẽ1+Ẽ21) + √(Ẽ1+Ẽ22)`.
    BalancedMin2,
    /// `√(E1+E2) + √(E1+E21) >= √(Ẽ1+Ẽ2) + √(Ẽ1+Ẽ21)`.
    BalancedMin3,
    /// `√(E1+E21) + √(E2+E11) >= √(Ẽ1+Ẽ21) + √(Ẽ2+Ẽ11)`.
    BalancedMin4,
    /// `Ẽ1 + Ẽ22` vs `Ẽ2 + Ẽ11`: `<=` for even `w`, `>=` for odd `w`.
    BalancedParity,
    /// `3E1E11 + 3E1E2 + 3E11E21 + 3E2E21 >= (E1 + E2)²`.
    CrossEnergy,
}

#[derive(Debug, Clone, Serialize)]
pub struct EnergyCheck {
    pub lemma: LemmaId,
    pub u: u32,
    pub v: u32,
    pub lhs: f64,
    pub rhs: f64,
    /// `"<="` or `">="`.
    pub relation: &'static str,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EnergyLemmaReport {
    pub u_max: u32,
    pub checks: Vec<EnergyCheck>,
}

impl EnergyLemmaReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &EnergyCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn find(&self, lemma: LemmaId, u: u32, v: u32) -> Option<&EnergyCheck> {
        self.checks.iter().find(|c| c.lemma == lemma && c.u == u && c.v == v)
    }
}

/// Balanced split of `w` bits: `(w/2, w/2)` or `((w+1)/2, (w-1)/2)`.
pub fn balanced_split(w: u32) -> (u32, u32) {
    if w.is_multiple_of(2) {
        (w / 2, w / 2)
    } else {
        (w.div_ceil(2), (w - 1) / 2)
    }
}

const SLACK: f64 = 1e-12;

fn check(lemma: LemmaId, u: u32, v: u32, lhs: f64, relation: &'static str, rhs: f64) -> EnergyCheck {
    let scale = lhs.abs().max(rhs.abs()).max(1.0);
    let pass = match relation {
        "<=" => lhs <= rhs + SLACK * scale,
        _ => lhs >= rhs - SLACK * scale,
    };
    EnergyCheck { lemma, u, v, lhs, rhs, relation, pass }
}

fn profile(k: u32) -> (f64, f64, f64) {
    let p = CornerProfile::closed_form(k).expect("K in range");
    (p.energy as f64, p.energy_s as f64, p.energy_t as f64)
}

/// Evaluates every inequality for `2 <= v <= u <= u_max` and, for the parity
/// check, every `4 <= w <= 2·u_max`. Never fails; inspect the report.
pub fn verify_energy_lemmas(u_max: u32) -> EnergyLemmaReport {
    let u_max = u_max.clamp(2, 30);
    let mut checks = Vec::new();
    for u in 2..=u_max {
        for v in 2..=u {
            let (e1, e11, e12) = profile(u);
            let (e2, e21, e22) = profile(v);
            checks.push(check(LemmaId::PairIneq1, u, v, e2 + e11, "<=", e1 + e21));
            checks.push(check(LemmaId::PairIneq2, u, v, e2 + e12, "<=", e1 + e22));

            let (tu, tv) = balanced_split(u + v);
            let (f1, f11, _) = profile(tu);
            let (f2, f21, f22) = profile(tv);
            let s = f64::sqrt;
            checks.push(check(LemmaId::BalancedMin1, u, v, e1 + e2, ">=", f1 + f2));
            checks.push(check(
                LemmaId::BalancedMin2,
                u,
                v,
                s(e1 + e21) + s(e1 + e22),
                ">=",
                s(f1 + f21) + s(f1 + f22),
            ));
            checks.push(check(
                LemmaId::BalancedMin3,
                u,
                v,
                s(e1 + e2) + s(e1 + e21),
                ">=",
                s(f1 + f2) + s(f1 + f21),
            ));
            checks.push(check(
                LemmaId::BalancedMin4,
                u,
                v,
                s(e1 + e21) + s(e2 + e11),
                ">=",
                s(f1 + f21) + s(f2 + f11),
            ));
            checks.push(check(
                LemmaId::CrossEnergy,
                u,
                v,
                3.0 * (e1 * e11 + e1 * e2 + e11 * e21 + e2 * e21),
                ">=",
                (e1 + e2) * (e1 + e2),
            ));
        }
    }
    for w in 4..=2 * u_max {
        let (tu, tv) = balanced_split(w);
        let (f1, f11, _) = profile(tu);
        let (f2, _, f22) = profile(tv);
        let rel = if w % 2 == 0 { "<=" } else { ">=" };
        checks.push(check(LemmaId::BalancedParity, tu, tv, f1 + f22, rel, f2 + f11));
    }
    EnergyLemmaReport { u_max, checks }
}

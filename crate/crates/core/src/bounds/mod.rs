//! Right-hand sides of the height inequalities, the corollary exponent table,
//! the auxiliary explicit lemmas, and calibration of the main constant.
//!
//! All evaluators work on the log scale internally; `rhs` in a report is the
//! exponential of that and may be `inf` for enormous radicals.

mod calibrate;
mod corollary;
mod lemmas;

pub use calibrate::empirical_min_c;
pub use corollary::{corollary_bound, corollary_theta, CorollaryParams, Theta};
pub use lemmas::{
    gyory_bound, landau_min_constant, landau_norms, lefourn_bound, log_star, rosser_check,
    s_regulator, tidy_bound, yu_ord_bound, GyoryInput, LefournInput, RosserReport,
};

use std::f64::consts::E;

use num_bigint::BigUint;

use crate::arith::int::ln_big;
use crate::error::{Error, Result};
use crate::radical::{AbcTriple, SmallProfile};

#[derive(Clone, Debug, PartialEq)]
pub struct BoundConfig {
    pub c_main: f64,
    pub g_min: f64,
    pub gyory_c13: f64,
    pub gyory_c14: f64,
    pub lefourn_c118: f64,
    pub lefourn_c119: f64,
    pub precision_bits: u32,
    /// Add the lower-order exponent terms `1/loglog G + loglog G/log G`.
    pub full_exponent: bool,
}

impl Default for BoundConfig {
    fn default() -> Self {
        BoundConfig {
            c_main: 1.0,
            g_min: E.powf(E),
            gyory_c13: 1.0,
            gyory_c14: 1.0,
            lefourn_c118: 1.0,
            lefourn_c119: 1.0,
            precision_bits: 64,
            full_exponent: false,
        }
    }
}

impl BoundConfig {
    pub fn with_c(c: f64) -> Self {
        BoundConfig {
            c_main: c,
            ..Default::default()
        }
    }

    /// Reference constants must be positive and `G_min > e`; `C_main` may be
    /// zero so that calibration can start from it.
    pub fn validate(&self) -> Result<()> {
        let bad = |key: &str, v: f64| Error::BadValue {
            key: key.into(),
            value: v.to_string(),
        };
        if !(self.c_main >= 0.0 && self.c_main.is_finite()) {
            return Err(bad("C_main", self.c_main));
        }
        if !(self.g_min > E && self.g_min.is_finite()) {
            return Err(bad("G_min", self.g_min));
        }
        for (k, v) in [
            ("gyory_C13", self.gyory_c13),
            ("gyory_C14", self.gyory_c14),
            ("lefourn_C118", self.lefourn_c118),
            ("lefourn_C119", self.lefourn_c119),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(bad(k, v));
            }
        }
        if self.precision_bits < 64 {
            return Err(Error::BadValue {
                key: "precision_bits".into(),
                value: self.precision_bits.to_string(),
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    Normal,
    /// `G <= G_min`: the nested-log exponent is replaced by 0.
    SmallRadical,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Regime::Normal => "normal",
            Regime::SmallRadical => "small-radical",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExponentTerm {
    pub value: f64,
    pub regime: Regime,
}

/// `C·logloglog G / loglog G` (plus the lower-order terms when configured),
/// from `log G`.
pub fn exponent_term_log(log_g: f64, c: f64, cfg: &BoundConfig) -> Result<ExponentTerm> {
    if !(log_g >= 2f64.ln() - 1e-12) {
        return Err(Error::BadRadical(format!("exp({log_g})")));
    }
    if log_g <= cfg.g_min.ln() {
        return Ok(ExponentTerm {
            value: 0.0,
            regime: Regime::SmallRadical,
        });
    }
    let ll = log_g.ln();
    let lll = ll.ln();
    let mut v = lll / ll;
    if cfg.full_exponent {
        v += 1.0 / ll + ll / log_g;
    }
    Ok(ExponentTerm {
        value: c * v,
        regime: Regime::Normal,
    })
}

pub fn exponent_term(g: &BigUint, c: f64, cfg: &BoundConfig) -> Result<ExponentTerm> {
    if g < &BigUint::from(2u32) {
        return Err(Error::BadRadical(g.to_string()));
    }
    exponent_term_log(ln_big(g), c, cfg)
}

/// Outcome of one inequality `log H <= rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub margin: f64,
    /// Total exponent applied to `G` (including any fixed part).
    pub exponent_used: f64,
    pub regime: Regime,
    /// Secondary form: the weakened `G^(1/3 + e)` for Theorem 3, the
    /// alternative branch for corollaries that have one.
    pub alt_rhs: Option<f64>,
}

impl BoundReport {
    fn new(lhs: f64, log_rhs: f64, exponent_used: f64, regime: Regime) -> Self {
        let rhs = log_rhs.exp();
        let margin = rhs - lhs;
        BoundReport {
            lhs,
            rhs,
            holds: margin >= 0.0,
            margin,
            exponent_used,
            regime,
            alt_rhs: None,
        }
    }
}

/// What the theorem evaluators read from a triple, with coordinates already
/// in ascending norm order.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundInput {
    pub log_g: f64,
    pub log_h: f64,
    /// `ln` of `[N_a, N_b, N_c, N'_c, N_q]`.
    pub ln_sel: [f64; 5],
}

impl BoundInput {
    pub fn from_triple(t: &AbcTriple) -> Self {
        let s = t.sorted_by_norm().selectors;
        BoundInput {
            log_g: ln_big(&t.g),
            log_h: t.log_height(),
            ln_sel: [&s.n_a, &s.n_b, &s.n_c, &s.n_c3, &s.n_q].map(ln_big),
        }
    }

    pub fn from_profile(p: &SmallProfile) -> Self {
        BoundInput {
            log_g: (p.g as f64).ln(),
            log_h: (p.z as f64).ln(),
            ln_sel: p.selectors.map(|n| (n as f64).ln()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem {
    One,
    Two,
    Three,
}

impl Theorem {
    pub fn from_id(id: u8) -> Result<Self> {
        match id {
            1 => Ok(Theorem::One),
            2 => Ok(Theorem::Two),
            3 => Ok(Theorem::Three),
            _ => Err(Error::BadParameter(format!(
                "theorem id {id} (expected 1, 2 or 3)"
            ))),
        }
    }
}

/// `ln` of the selector product part of each theorem's right-hand side.
fn log_selector_part(th: Theorem, s: &[f64; 5]) -> f64 {
    let [na, nb, nc, nc3, nq] = *s;
    match th {
        Theorem::One => (na + nb + 2.0 * nc + nb.max(nc)) / 3.0,
        Theorem::Two => 0.5 * nb + nc,
        Theorem::Three => (na + nb + nc + nc3 + nq) / 3.0,
    }
}

pub fn theorem_bound_input(th: Theorem, x: &BoundInput, cfg: &BoundConfig) -> Result<BoundReport> {
    theorem_bound_with_c(th, x, cfg.c_main, cfg)
}

pub(crate) fn theorem_bound_with_c(
    th: Theorem,
    x: &BoundInput,
    c: f64,
    cfg: &BoundConfig,
) -> Result<BoundReport> {
    let et = exponent_term_log(x.log_g, c, cfg)?;
    let log_rhs = log_selector_part(th, &x.ln_sel) + et.value * x.log_g;
    let mut r = BoundReport::new(x.log_h, log_rhs, et.value, et.regime);
    if th == Theorem::Three {
        r.alt_rhs = Some(((1.0 / 3.0 + et.value) * x.log_g).exp());
    }
    Ok(r)
}

pub fn theorem_bound(th: Theorem, t: &AbcTriple, cfg: &BoundConfig) -> Result<BoundReport> {
    theorem_bound_input(th, &BoundInput::from_triple(t), cfg)
}

/// `(N_a N_b N_c² max(N_b, N_c))^(1/3) · G^e`.
pub fn thm1_rhs(t: &AbcTriple, cfg: &BoundConfig) -> Result<BoundReport> {
    theorem_bound(Theorem::One, t, cfg)
}

/// `N_b^(1/2) N_c · G^e`.
pub fn thm2_rhs(t: &AbcTriple, cfg: &BoundConfig) -> Result<BoundReport> {
    theorem_bound(Theorem::Two, t, cfg)
}

/// `(N_a N_b N_c N'_c N_q)^(1/3) · G^e`, with `G^(1/3 + e)` in `alt_rhs`.
pub fn thm3_rhs(t: &AbcTriple, cfg: &BoundConfig) -> Result<BoundReport> {
    theorem_bound(Theorem::Three, t, cfg)
}

//! Exponent table for the corollaries, with hypothesis checks.

use num_bigint::BigUint;

use super::{exponent_term_log, BoundConfig, BoundReport};
use crate::arith::int::ln_big;
use crate::error::{Error, Result};
use crate::radical::AbcTriple;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CorollaryParams {
    pub alpha: Option<f64>,
    /// Select the second statement of corollaries 4, 9, 10 and 11.
    pub alt: bool,
}

/// Shape of the right-hand side: `G^(θ + e)`, `G^(k·e)`, or
/// `max(G^(p + e), C·(log G)^q)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Theta {
    Power(f64),
    SubExponential(f64),
    MaxForm { power: f64, log_exponent: f64 },
}

fn need_alpha(id: u8, p: &CorollaryParams, ok: impl Fn(f64) -> bool) -> Result<f64> {
    match p.alpha {
        Some(a) if a.is_finite() && ok(a) => Ok(a),
        Some(a) => Err(Error::BadAlpha { id, alpha: a }),
        None => Err(Error::BadParameter(format!("corollary {id} needs --alpha"))),
    }
}

pub fn corollary_theta(id: u8, p: &CorollaryParams) -> Result<Theta> {
    use Theta::*;
    let open01 = |a: f64| a > 0.0 && a < 1.0;
    Ok(match (id, p.alt) {
        (1 | 2 | 8, _) => return Err(Error::NotApplicable(id)),
        (3, _) => Power(2.0 / 3.0),
        (4, false) => Power(5.0 / 9.0),
        (4, true) => Power(2.0 / 3.0),
        (5, _) => Power((1.0 + 2.0 * need_alpha(id, p, |a| a > 0.0 && a <= 1.0)?) / 3.0),
        (6, _) => Power(1.0 / (3.0 - 2.0 * need_alpha(id, p, |a| a > 0.0 && a < 2.0 / 3.0)?)),
        (7, _) => SubExponential(1.0 / (3.0 - 5.0 * need_alpha(id, p, |a| a > 0.0 && a < 0.6)?)),
        (9, false) => Power((1.0 + need_alpha(id, p, open01)?) / 2.0),
        (9, true) => Power(1.5 * need_alpha(id, p, open01)?),
        (10, false) => Power(1.0 / (2.0 - need_alpha(id, p, open01)?)),
        (10, true) => {
            SubExponential(1.0 / (2.0 - 3.0 * need_alpha(id, p, |a| a > 0.0 && a < 2.0 / 3.0)?))
        }
        (11, false) => Power((3.0 - 3.0 * need_alpha(id, p, |a| a > 1.0 / 3.0 && a <= 1.0)?) / 2.0),
        (11, true) => Power(0.5),
        (12, _) => Power(need_alpha(id, p, |a| a > 0.0 && a <= 1.0)?.max(0.75)),
        (13, _) => MaxForm {
            power: 0.75,
            log_exponent: 1.0 / (1.0 - need_alpha(id, p, open01)?),
        },
        _ => return Err(Error::BadParameter(format!("no corollary {id}"))),
    })
}

struct Facts {
    ln_a: f64,
    ln_b: f64,
    ln_c: f64,
    n: [BigUint; 3],
    log_g: f64,
    log_h: f64,
    ord_pc: u32,
    max_ord_c: u32,
}

fn facts(t: &AbcTriple) -> Facts {
    let s = t.sorted_by_norm();
    let sel = &s.selectors;
    let fc = &s.factors[2];
    Facts {
        ln_a: ln_big(&sel.n_a),
        ln_b: ln_big(&sel.n_b),
        ln_c: ln_big(&sel.n_c),
        n: [sel.n_a.clone(), sel.n_b.clone(), sel.n_c.clone()],
        log_g: ln_big(&t.g),
        log_h: t.log_height(),
        ord_pc: fc.top().map_or(0, |pp| pp.exponent),
        max_ord_c: fc.max_exponent(),
    }
}

fn check(id: u8, ok: bool, reason: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::HypothesisFails {
            id,
            reason: reason.into(),
        })
    }
}

fn check_hypothesis(id: u8, p: &CorollaryParams, f: &Facts) -> Result<()> {
    let a = p.alpha.unwrap_or(0.0);
    let [na, nb, nc] = &f.n;
    let ln_max_bc = f.ln_b.max(f.ln_c);
    let ln_max = f.ln_a.max(ln_max_bc);
    // `x < G^α` and `x < (log H)^α` on the log scale
    let below_g = |ln_x: f64| ln_x < a * f.log_g;
    let below_logh = |ln_x: f64| f.log_h > 1.0 && ln_x < a * f.log_h.ln();
    let ln_u = |k: u32| (k as f64).ln();
    match (id, p.alt) {
        (3, _) => check(id, nb > nc, "N_b > N_c"),
        (4, false) => check(id, na > nb && nb > nc, "N_a > N_b > N_c"),
        (4, true) => check(id, nc >= nb, "max(N_b, N_c) = N_c"),
        (5, _) => check(id, below_g(ln_max_bc), "max(N_b, N_c) < G^alpha"),
        (6, _) => check(id, below_logh(ln_max_bc), "max(N_b, N_c) < (log H)^alpha"),
        (7, _) => check(id, below_logh(ln_max), "N_max < (log H)^alpha"),
        (9, false) => check(
            id,
            below_g(f.ln_c) || below_g(ln_u(f.max_ord_c)),
            "N_c < G^alpha or max ord c < G^alpha",
        ),
        (9, true) => check(id, below_g(ln_max_bc), "max(N_b, N_c) < G^alpha"),
        (10, false) => check(
            id,
            below_logh(f.ln_c) || below_logh(ln_u(f.max_ord_c)),
            "N_c < (log H)^alpha or max ord c < (log H)^alpha",
        ),
        (10, true) => check(id, below_logh(ln_max_bc), "max(N_b, N_c) < (log H)^alpha"),
        (11, false) => check(
            id,
            ln_max > a * f.log_g && na >= nb && na >= nc,
            "N_max > G^alpha with p_a = p_max",
        ),
        (11, true) => check(id, ln_max <= f.log_g / 3.0, "N_max <= G^(1/3)"),
        (12, _) => check(id, below_g(ln_u(f.ord_pc)), "ord_{p_c} c < G^alpha"),
        (13, _) => check(
            id,
            below_logh(ln_u(f.ord_pc)),
            "ord_{p_c} c < (log H)^alpha",
        ),
        _ => Ok(()),
    }
}

/// Evaluates corollary `id` on `t` after checking its hypothesis.
pub fn corollary_bound(
    id: u8,
    p: &CorollaryParams,
    t: &AbcTriple,
    cfg: &BoundConfig,
) -> Result<BoundReport> {
    let theta = corollary_theta(id, p)?;
    let f = facts(t);
    check_hypothesis(id, p, &f)?;
    let et = exponent_term_log(f.log_g, cfg.c_main, cfg)?;
    let (log_rhs, used) = match theta {
        Theta::Power(th) => ((th + et.value) * f.log_g, th + et.value),
        Theta::SubExponential(k) => (k * et.value * f.log_g, k * et.value),
        Theta::MaxForm {
            power,
            log_exponent,
        } => {
            let g_part = (power + et.value) * f.log_g;
            let log_part = cfg.c_main.ln() + log_exponent * f.log_g.ln();
            (g_part.max(log_part), power + et.value)
        }
    };
    Ok(BoundReport::new(f.log_h, log_rhs, used, et.regime))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(a: f64) -> CorollaryParams {
        CorollaryParams {
            alpha: Some(a),
            alt: false,
        }
    }

    #[test]
    fn theta_table() {
        assert_eq!(
            corollary_theta(10, &alpha(0.5)).unwrap(),
            Theta::Power(2.0 / 3.0)
        );
        assert_eq!(corollary_theta(5, &alpha(1.0)).unwrap(), Theta::Power(1.0));
        assert_eq!(
            corollary_theta(7, &alpha(0.5)).unwrap(),
            Theta::SubExponential(2.0)
        );
        assert_eq!(
            corollary_theta(12, &alpha(0.5)).unwrap(),
            Theta::Power(0.75)
        );
        assert_eq!(corollary_theta(12, &alpha(0.9)).unwrap(), Theta::Power(0.9));
        assert_eq!(
            corollary_theta(3, &CorollaryParams::default()).unwrap(),
            Theta::Power(2.0 / 3.0)
        );
        let alt = CorollaryParams {
            alpha: Some(0.4),
            alt: true,
        };
        assert!(
            matches!(corollary_theta(9, &alt).unwrap(), Theta::Power(x) if (x - 0.6).abs() < 1e-15)
        );
        for id in [1, 2, 8] {
            assert_eq!(
                corollary_theta(id, &alpha(0.5)),
                Err(Error::NotApplicable(id))
            );
        }
    }

    #[test]
    fn alpha_ranges() {
        assert_eq!(
            corollary_theta(6, &alpha(0.7)),
            Err(Error::BadAlpha { id: 6, alpha: 0.7 })
        );
        assert_eq!(
            corollary_theta(7, &alpha(0.6)),
            Err(Error::BadAlpha { id: 7, alpha: 0.6 })
        );
        assert_eq!(
            corollary_theta(11, &alpha(0.3)),
            Err(Error::BadAlpha { id: 11, alpha: 0.3 })
        );
        assert!(matches!(
            corollary_theta(5, &CorollaryParams::default()),
            Err(Error::BadParameter(_))
        ));
        assert!(matches!(
            corollary_theta(14, &alpha(0.5)),
            Err(Error::BadParameter(_))
        ));
    }

    #[test]
    fn cor7_exponent_at_30030() {
        // a synthetic triple is not needed: the exponent is k·e at G = 30030
        let cfg = BoundConfig::default();
        let e = exponent_term_log(30030f64.ln(), 1.0, &cfg).unwrap().value;
        match corollary_theta(7, &alpha(0.5)).unwrap() {
            Theta::SubExponential(k) => assert!((k * e - 2.0 * 0.3632).abs() < 2e-3),
            _ => unreachable!(),
        }
    }

    #[test]
    fn hypotheses_checked() {
        let cfg = BoundConfig::default();
        // sorted (1, 8, 9): N_b = 2 < N_c = 3
        let t = AbcTriple::rational(1, 8, -9).unwrap();
        let err = corollary_bound(3, &CorollaryParams::default(), &t, &cfg).unwrap_err();
        assert!(matches!(err, Error::HypothesisFails { id: 3, .. }));
        let r = corollary_bound(
            4,
            &CorollaryParams {
                alpha: None,
                alt: true,
            },
            &t,
            &cfg,
        )
        .unwrap();
        assert!((r.rhs - 6f64.powf(2.0 / 3.0)).abs() < 1e-9);
        // max(N_b, N_c) = 3 < 6^0.9
        let r = corollary_bound(5, &alpha(0.9), &t, &cfg).unwrap();
        assert!((r.exponent_used - 2.8 / 3.0).abs() < 1e-12);
        assert!(corollary_bound(5, &alpha(0.5), &t, &cfg).is_err());
        // ord_3(9) = 2 < 6^0.5
        assert!(corollary_bound(12, &alpha(0.5), &t, &cfg).is_ok());
        assert!(matches!(
            corollary_bound(1, &alpha(0.5), &t, &cfg),
            Err(Error::NotApplicable(1))
        ));
    }

    #[test]
    fn cor3_holds_on_bigger_b() {
        // 5 + 27 = 32: sorted (5, 27, 32), N_b = 3 > N_c = 2
        let t = AbcTriple::rational(5, 27, -32).unwrap();
        let r =
            corollary_bound(3, &CorollaryParams::default(), &t, &BoundConfig::default()).unwrap();
        assert!(r.holds);
        assert_eq!(r.regime, super::super::Regime::Normal);
    }

    #[test]
    fn cor13_max_form() {
        // sorted c = 3 with ord 1 < (log 3)^(1/2)
        let t = AbcTriple::rational(1, 2, -3).unwrap();
        let cfg = BoundConfig::with_c(100.0);
        let r = corollary_bound(13, &alpha(0.5), &t, &cfg).unwrap();
        let g_part = 6f64.powf(0.75);
        let log_part = 100.0 * 6f64.ln().powf(2.0);
        assert!((r.rhs - g_part.max(log_part)).abs() < 1e-9 * log_part);
    }
}

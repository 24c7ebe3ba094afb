//! Explicit auxiliary bounds: the p-adic linear-forms bound, the tidy step
//! `a/log a < x ⇒ a < max(e, 2x log x)`, the prime-ideal product constant,
//! the two S-unit evaluators, and Rosser's inequalities.

use std::f64::consts::{E, PI};

use num_bigint::BigUint;

use super::BoundConfig;
use crate::arith::factor::{splitting, Splitting};
use crate::arith::int::{first_primes, primes_up_to};
use crate::arith::QuadraticField;
use crate::error::{Error, Result};

fn bad(msg: impl Into<String>) -> Error {
    Error::BadParameter(msg.into())
}

/// `max(log x, 1)`; `log*` is used but not defined alongside the S-unit bound.
pub fn log_star(x: f64) -> f64 {
    x.ln().max(1.0)
}

fn log_plus(x: f64) -> f64 {
    x.ln().max(0.0)
}

/// Upper bound for `ord_p(α_1^b_1 ⋯ α_n^b_n − 1)`:
/// `(16ed)^(2(n+1)) n^(5/2) log(2nd) log(2d) e_p^n Nm(p)/(log Nm(p))² ∏ h'(α_i) log B`
/// with `h' = max(h, 1/(16e²d²))` and `B = max(|b_i|, 3)` supplied directly.
pub fn yu_ord_bound(
    n_terms: u32,
    degree: u32,
    e_p: u32,
    norm_p: f64,
    heights: &[f64],
    b: f64,
) -> Result<f64> {
    if n_terms == 0 {
        return Err(bad("n must be at least 1"));
    }
    if degree == 0 || e_p == 0 {
        return Err(bad("degree and ramification index must be positive"));
    }
    if !(norm_p >= 2.0) {
        return Err(bad(format!("prime norm {norm_p} < 2")));
    }
    if !(b >= 3.0) {
        return Err(bad(format!("B = {b} < 3")));
    }
    if heights.len() != n_terms as usize || heights.iter().any(|h| !(*h >= 0.0)) {
        return Err(bad("need one nonnegative height per term"));
    }
    let n = n_terms as f64;
    let d = degree as f64;
    let floor = 1.0 / (16.0 * E * E * d * d);
    let prod_h: f64 = heights.iter().map(|h| h.max(floor)).product();
    let ln_n = norm_p.ln();
    Ok((16.0 * E * d).powf(2.0 * (n + 1.0))
        * n.powf(2.5)
        * (2.0 * n * d).ln()
        * (2.0 * d).ln()
        * (e_p as f64).powf(n)
        * norm_p
        / (ln_n * ln_n)
        * prod_h
        * b.ln())
}

/// `max(e, 2x log x)`.
pub fn tidy_bound(x: f64) -> Result<f64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(bad(format!("tidy bound needs x > 0, got {x}")));
    }
    Ok(E.max(2.0 * x * x.ln()))
}

/// Norms of the first `r` prime ideals of the ring, in `(norm, canonical)` order.
pub fn landau_norms(field: QuadraticField, r: usize) -> Result<Vec<BigUint>> {
    let mut limit = 64u64;
    loop {
        let mut norms: Vec<u64> = Vec::new();
        for p in primes_up_to(limit) {
            if field.is_rational() {
                norms.push(p);
                continue;
            }
            match splitting(field, &BigUint::from(p))? {
                Splitting::Split(_) => norms.extend([p, p]),
                Splitting::Ramified(_) => norms.push(p),
                Splitting::Inert => {
                    if p * p <= limit {
                        norms.push(p * p)
                    }
                }
            }
        }
        norms.sort_unstable();
        if norms.len() >= r {
            norms.truncate(r);
            return Ok(norms.into_iter().map(BigUint::from).collect());
        }
        limit *= 4;
    }
}

/// The least `C` with `∏_{i<=r} Nm(p_i)/log Nm(p_i) >= (r/C)^r` for every
/// `r <= R`, i.e. `max_r r / (∏)^(1/r)`. Any larger `C` makes the
/// inequality strict.
pub fn landau_min_constant(field: QuadraticField, r_max: usize) -> Result<f64> {
    if r_max == 0 {
        return Err(bad("R must be at least 1"));
    }
    let norms = landau_norms(field, r_max)?;
    let mut log_prod = 0.0;
    let mut best = 0.0f64;
    for (i, n) in norms.iter().enumerate() {
        let x = crate::arith::int::ln_big(n);
        log_prod += x - x.ln();
        let r = (i + 1) as f64;
        best = best.max(r / (log_prod / r).exp());
    }
    Ok(best)
}

/// Inputs to the Győry-type S-unit height bound. Supported fields have unit
/// rank 0, so the regulator is 1 and the class number is 1.
#[derive(Clone, Debug, PartialEq)]
pub struct GyoryInput {
    /// Number of finite places in `S`.
    pub t: usize,
    pub class_number: f64,
    pub regulator: f64,
    pub s_regulator: f64,
    /// Largest norm among the finite places of `S`.
    pub p_max: f64,
    pub h_alpha: f64,
    pub h_beta: f64,
}

/// `R_S = i_S · R · ∏ log Nm(p_i)` with `i_S = R = 1`.
pub fn s_regulator(norms: &[f64]) -> f64 {
    norms.iter().map(|n| n.ln()).product()
}

pub fn gyory_bound(x: &GyoryInput, cfg: &BoundConfig) -> Result<f64> {
    let hmax = x.h_alpha.max(x.h_beta).max(1.0);
    if x.t == 0 {
        return Ok(cfg.gyory_c13 * hmax);
    }
    if !(x.p_max >= 2.0) || !(x.s_regulator > 0.0) || !(x.regulator > 0.0) {
        return Err(bad("S-unit bound needs P >= 2 and positive regulators"));
    }
    let big_r = x.class_number.max(cfg.gyory_c13 * x.regulator);
    Ok(cfg.gyory_c14
        * x.class_number
        * x.regulator
        * log_star(x.regulator)
        * big_r.powi(x.t as i32 + 1)
        * log_star(big_r)
        * (x.p_max / log_star(x.p_max))
        * x.s_regulator
        * hmax)
}

#[derive(Clone, Debug, PartialEq)]
pub struct LefournInput {
    pub degree: u32,
    /// Norms of the finite places of `S`.
    pub norms: Vec<f64>,
    pub s_regulator: f64,
    pub h_alpha: f64,
    pub h_beta: f64,
}

/// Third-largest-norm S-unit bound. With at most two finite places the
/// `R_S log⁺ R_S` form applies; otherwise the `P'_S` form.
pub fn lefourn_bound(x: &LefournInput, cfg: &BoundConfig) -> Result<f64> {
    if x.degree == 0 || !(x.s_regulator > 0.0) {
        return Err(bad("degree and S-regulator must be positive"));
    }
    let h = x.h_alpha.max(x.h_beta).max(1.0).max(PI / x.degree as f64);
    let rs = x.s_regulator;
    if x.norms.len() <= 2 {
        return Ok(cfg.lefourn_c118 * rs * log_plus(rs) * h);
    }
    let mut sorted = x.norms.clone();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let p3 = sorted[2];
    if !(p3 >= 2.0) {
        return Err(bad("prime norms must be at least 2"));
    }
    Ok(cfg.lefourn_c119 * p3 * rs * (1.0 + log_plus(rs) / log_plus(p3)) * h)
}

/// Violations of `n ln n < p_n` (n >= 1) and `p_n <= 2 n ln n` (n >= 3).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RosserReport {
    pub checked: usize,
    pub lower_violations: Vec<usize>,
    pub upper_violations: Vec<usize>,
    /// Smallest `p_n − n ln n` and `2n ln n − p_n` seen.
    pub min_lower_gap: f64,
    pub min_upper_gap: f64,
}

pub fn rosser_check(n_max: usize) -> RosserReport {
    let primes = first_primes(n_max);
    let mut rep = RosserReport {
        checked: n_max,
        min_lower_gap: f64::INFINITY,
        min_upper_gap: f64::INFINITY,
        ..Default::default()
    };
    for (i, &p) in primes.iter().enumerate() {
        let n = (i + 1) as f64;
        let nl = n * n.ln();
        let p = p as f64;
        rep.min_lower_gap = rep.min_lower_gap.min(p - nl);
        if !(nl < p) {
            rep.lower_violations.push(i + 1);
        }
        if i + 1 >= 3 {
            rep.min_upper_gap = rep.min_upper_gap.min(2.0 * nl - p);
            if !(p <= 2.0 * nl) {
                rep.upper_violations.push(i + 1);
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn yu_example_value() {
        let v = yu_ord_bound(1, 1, 1, 2.0, &[3f64.ln()], 3.0).unwrap();
        // oracle: (16e)^4 · 1 · ln2 · ln2 · 2/(ln 2)² · ln3 · ln3
        let oracle = (16.0 * E).powi(4) * 2.0 * 3f64.ln().powi(2);
        assert!((v - oracle).abs() < 1e-6 * oracle);
        assert!((v / 1e6 - 8.637).abs() < 1e-3);
    }

    #[test]
    fn yu_monotone_in_norm_and_validated() {
        let at = |n: f64| yu_ord_bound(1, 1, 1, n, &[3f64.ln()], 3.0).unwrap();
        assert!(at(11.0) > at(8.0));
        assert!(yu_ord_bound(0, 1, 1, 2.0, &[], 3.0).is_err());
        assert!(yu_ord_bound(1, 1, 1, 1.0, &[1.0], 3.0).is_err());
        assert!(yu_ord_bound(1, 1, 1, 2.0, &[1.0], 2.0).is_err());
        // tiny heights are floored at 1/(16e²d²)
        let lo = yu_ord_bound(1, 1, 1, 2.0, &[0.0], 3.0).unwrap();
        let fl = yu_ord_bound(1, 1, 1, 2.0, &[1.0 / (16.0 * E * E)], 3.0).unwrap();
        assert_eq!(lo, fl);
    }

    #[test]
    fn tidy_examples() {
        assert!((tidy_bound(10.0).unwrap() - 20.0 * 10f64.ln()).abs() < 1e-12);
        assert_eq!(tidy_bound(1.0).unwrap(), E);
        assert!(35.0 / 35f64.ln() < 10.0 && 35.0 < tidy_bound(10.0).unwrap());
        assert!(tidy_bound(0.0).is_err());
    }

    #[test]
    fn landau_examples() {
        let c1 = landau_min_constant(QuadraticField::RATIONALS, 1).unwrap();
        assert!((c1 - 2f64.ln() / 2.0).abs() < 1e-12);
        let g = QuadraticField::imaginary(-1).unwrap();
        let n: Vec<u64> = landau_norms(g, 5)
            .unwrap()
            .iter()
            .map(|b| b.try_into().unwrap())
            .collect();
        assert_eq!(n, vec![2, 5, 5, 9, 13]);
        let c100 = landau_min_constant(QuadraticField::RATIONALS, 100).unwrap();
        assert!(c100.is_finite() && c100 >= c1);
        assert!(landau_min_constant(g, 0).is_err());
    }

    #[test]
    fn gyory_and_lefourn_shapes() {
        let cfg = BoundConfig {
            gyory_c13: 2.0,
            gyory_c14: 3.0,
            ..Default::default()
        };
        let base = GyoryInput {
            t: 0,
            class_number: 1.0,
            regulator: 1.0,
            s_regulator: 1.0,
            p_max: 1.0,
            h_alpha: 0.5,
            h_beta: 4.0,
        };
        assert_eq!(gyory_bound(&base, &cfg).unwrap(), 8.0);
        let x = GyoryInput {
            t: 2,
            p_max: 5.0,
            s_regulator: s_regulator(&[2.0, 5.0]),
            ..base
        };
        // R = 1, log* R = 1, ℛ = max(1, 2) = 2, log* ℛ = 1
        let oracle =
            3.0 * 1.0 * 1.0 * 1.0 * 8.0 * 1.0 * (5.0 / 5f64.ln()) * (2f64.ln() * 5f64.ln()) * 4.0;
        assert!((gyory_bound(&x, &cfg).unwrap() - oracle).abs() < 1e-9 * oracle);

        let cfg = BoundConfig::default();
        let two = LefournInput {
            degree: 2,
            norms: vec![2.0, 3.0],
            s_regulator: 10.0,
            h_alpha: 0.0,
            h_beta: 0.0,
        };
        assert!((lefourn_bound(&two, &cfg).unwrap() - 10.0 * 10f64.ln() * PI / 2.0).abs() < 1e-9);
        let four = LefournInput {
            norms: vec![2.0, 3.0, 5.0, 7.0],
            ..two
        };
        let oracle = 3.0 * 10.0 * (1.0 + 10f64.ln() / 3f64.ln()) * PI / 2.0;
        assert!((lefourn_bound(&four, &cfg).unwrap() - oracle).abs() < 1e-9);
    }

    #[test]
    fn rosser_small_range() {
        let r = rosser_check(1000);
        assert!(r.lower_violations.is_empty());
        assert!(r.upper_violations.is_empty());
        assert!(r.min_lower_gap > 0.0);
    }

    #[test]
    fn log_star_floor() {
        assert_eq!(log_star(1.0), 1.0);
        assert!((log_star(E * E) - 2.0).abs() < 1e-15);
    }
}

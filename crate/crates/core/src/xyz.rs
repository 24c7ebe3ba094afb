//! Smooth primitive solutions of `X + Y = Z` over ℤ.
//!
//! Enumeration joins a list of `P`-smooth numbers against a hash set of the
//! same list. Each triple is checked against `G ≤ e^(3S)` and a smoothness
//! predicate of the form `S ≤ T·log T / (log log T · φ(T))`, `T = log log H`.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::arith::int::{first_primes, is_prime_u64, primes_up_to};
use crate::cli::report::fmt_real;
use crate::error::{Error, Result};

/// Largest admissible smoothness bound; keeps every radical inside `u128`.
pub const MAX_P: u64 = 100;

fn check_p(p: u64) -> Result<()> {
    if !is_prime_u64(p) {
        return Err(Error::BadParameter(format!("P = {p} is not prime")));
    }
    if p > MAX_P {
        return Err(Error::BadParameter(format!("P = {p} exceeds {MAX_P}")));
    }
    Ok(())
}

/// All `n ≤ limit` with every prime factor at most `p`, ascending.
pub fn smooth_numbers(p: u64, limit: u64) -> Result<Vec<u64>> {
    check_p(p)?;
    if limit == 0 {
        return Err(Error::BadParameter("limit must be at least 1".into()));
    }
    let mut out = vec![1u64];
    for q in primes_up_to(p) {
        let mut next = Vec::with_capacity(out.len() * 2);
        for &n in &out {
            let mut m = n;
            loop {
                next.push(m);
                match m.checked_mul(q) {
                    Some(v) if v <= limit => m = v,
                    _ => break,
                }
            }
        }
        out = next;
    }
    out.sort_unstable();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothTriple {
    pub x: u64,
    pub y: u64,
    pub z: u64,
    /// Largest prime dividing `XYZ`.
    pub s: u64,
    /// Product of the distinct primes dividing `XYZ`.
    pub g: u128,
}

impl SmoothTriple {
    /// Builds the triple, factoring over the primes up to `p`. Returns `None`
    /// unless `x + y = z`, `x ≤ y`, `gcd = 1` and all three are `p`-smooth.
    pub fn new(x: u64, y: u64, z: u64, p: u64) -> Option<Self> {
        if x == 0 || x > y || x.checked_add(y) != Some(z) || x.gcd(&y) != 1 {
            return None;
        }
        let (mut s, mut g) = (1u64, 1u128);
        for n in [x, y, z] {
            let mut m = n;
            for q in primes_up_to(p) {
                if m % q == 0 {
                    while m % q == 0 {
                        m /= q;
                    }
                    // pairwise coprime, so each prime is met once
                    g *= q as u128;
                    s = s.max(q);
                }
            }
            if m != 1 {
                return None;
            }
        }
        Some(SmoothTriple { x, y, z, s, g })
    }

    /// Projective height; the maximum for coprime positive integers.
    pub fn h(&self) -> u64 {
        self.z
    }

    pub fn log_h(&self) -> f64 {
        (self.z as f64).ln()
    }
}

/// Every primitive triple with `Z ≤ h_limit` and all coordinates `p`-smooth,
/// sorted by `(Z, X)`.
pub fn enumerate_triples(p: u64, h_limit: u64, workers: usize) -> Result<Vec<SmoothTriple>> {
    if h_limit < 2 {
        return Err(Error::BadParameter("H_limit must be at least 2".into()));
    }
    let smooth = smooth_numbers(p, h_limit)?;
    let set: HashSet<u64> = smooth.iter().copied().collect();
    let primes = primes_up_to(p);
    let scan = |zs: &[u64]| -> Vec<SmoothTriple> {
        let mut out = Vec::new();
        for &z in zs {
            for &x in smooth.iter().take_while(|&&x| 2 * x <= z) {
                let y = z - x;
                if set.contains(&y) && x.gcd(&z) == 1 {
                    out.push(profile(x, y, z, &primes));
                }
            }
        }
        out
    };
    let workers = workers.max(1);
    if workers == 1 {
        return Ok(scan(&smooth));
    }
    // work per Z grows with Z, so deal out strided blocks and reassemble
    let chunk = smooth.len().div_ceil(workers * 8).max(1);
    let blocks: Vec<&[u64]> = smooth.chunks(chunk).collect();
    let mut parts: Vec<(usize, Vec<SmoothTriple>)> = std::thread::scope(|sc| {
        let hs: Vec<_> = (0..workers)
            .map(|w| {
                let blocks = &blocks;
                let scan = &scan;
                sc.spawn(move || {
                    (w..blocks.len())
                        .step_by(workers)
                        .map(|i| (i, scan(blocks[i])))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        hs.into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    parts.sort_by_key(|(i, _)| *i);
    Ok(parts.into_iter().flat_map(|(_, v)| v).collect())
}

fn profile(x: u64, y: u64, z: u64, primes: &[u64]) -> SmoothTriple {
    let (mut s, mut g) = (1u64, 1u128);
    for &q in primes {
        if x.is_multiple_of(q) || y.is_multiple_of(q) || z.is_multiple_of(q) {
            s = q;
            g *= q as u128;
        }
    }
    SmoothTriple { x, y, z, s, g }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Lemma9 {
    pub holds: bool,
    /// `3S − log G`.
    pub slack: f64,
}

/// `G ≤ e^(3S)`. Decided exactly via `G ≤ 20^S` (as `20 < e³`) when that
/// suffices; otherwise by comparing logarithms.
pub fn verify_lemma9(t: &SmoothTriple) -> Lemma9 {
    let slack = 3.0 * t.s as f64 - (t.g as f64).ln();
    let exact = BigUint::from(t.g) <= BigUint::from(20u32).pow(t.s as u32);
    Lemma9 {
        holds: exact || slack >= 0.0,
        slack,
    }
}

/// A growth function for the smoothness predicate. `eval` returns `None`
/// outside the domain where the value is defined and positive.
pub trait Phi: Sync {
    fn name(&self) -> String;
    fn eval(&self, x: f64) -> Option<f64>;
}

fn ln_pos(x: f64) -> Option<f64> {
    (x > 0.0).then(|| x.ln())
}

fn positive(v: f64) -> Option<f64> {
    (v > 0.0 && v.is_finite()).then_some(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinPhi {
    /// `log log x / 2`
    HalfLogLog,
    /// `√(log log x)`
    SqrtLogLog,
    /// `log log log x`
    LogLogLog,
}

impl BuiltinPhi {
    pub fn from_id(id: u8) -> Result<Self> {
        match id {
            1 => Ok(BuiltinPhi::HalfLogLog),
            2 => Ok(BuiltinPhi::SqrtLogLog),
            3 => Ok(BuiltinPhi::LogLogLog),
            _ => Err(Error::BadPhi(format!(
                "no built-in phi {id}; expected 1, 2 or 3"
            ))),
        }
    }
}

impl Phi for BuiltinPhi {
    fn name(&self) -> String {
        match self {
            BuiltinPhi::HalfLogLog => "loglog/2",
            BuiltinPhi::SqrtLogLog => "sqrt(loglog)",
            BuiltinPhi::LogLogLog => "logloglog",
        }
        .into()
    }

    fn eval(&self, x: f64) -> Option<f64> {
        let ll = ln_pos(ln_pos(x)?)?;
        match self {
            BuiltinPhi::HalfLogLog => positive(ll / 2.0),
            BuiltinPhi::SqrtLogLog => positive(ll).map(f64::sqrt),
            BuiltinPhi::LogLogLog => positive(ln_pos(ll)?),
        }
    }
}

/// `H > e^(e^e)`: below this the nested logarithms are not all positive.
pub fn thm4_threshold() -> f64 {
    std::f64::consts::E.powf(std::f64::consts::E).exp()
}

/// Right-hand side `T·log T / (log log T · φ(T))` with `T = log log H`,
/// or `None` when `H` is inside the guard.
pub fn thm4_rhs(log_h: f64, phi: &dyn Phi) -> Option<f64> {
    let t = ln_pos(log_h)?;
    let lt = ln_pos(t)?;
    let llt = positive(ln_pos(lt)?)?;
    let f = phi.eval(t)?;
    positive(t * lt / (llt * f))
}

/// `Some(passes)` when the predicate is defined, `None` inside the guard.
pub fn thm4_predicate(s: u64, log_h: f64, phi: &dyn Phi) -> Option<bool> {
    thm4_rhs(log_h, phi).map(|r| s as f64 <= r)
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Thm4Filter {
    pub passing: Vec<SmoothTriple>,
    pub failing: usize,
    /// Triples where the predicate is undefined; reported, not dropped.
    pub below_threshold: usize,
}

pub fn thm4_filter(triples: &[SmoothTriple], phi: &dyn Phi) -> Thm4Filter {
    let mut out = Thm4Filter::default();
    for t in triples {
        match thm4_predicate(t.s, t.log_h(), phi) {
            Some(true) => out.passing.push(t.clone()),
            Some(false) => out.failing += 1,
            None => out.below_threshold += 1,
        }
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ProductChainReport {
    pub checked: usize,
    /// `(k, link)` for each failing link; links are numbered from 1.
    pub violations: Vec<(usize, u8)>,
}

/// Checks, for `3 ≤ k ≤ k_max`, each link of
/// `log ∏ p_i ≤ log(6·∏_{3..k} 2i log i) ≤ k log 2 + k log k + Σ log log i
///  ≤ 2k log k + k log 2 ≤ 3k log k ≤ 3 p_k`.
pub fn rosser_product_check(k_max: usize) -> ProductChainReport {
    let ps = first_primes(k_max);
    let mut rep = ProductChainReport::default();
    let tol = 1e-9;
    let (mut lhs, mut mid, mut lls) = (0.0f64, 6f64.ln(), 0.0f64);
    for k in 1..=k_max {
        lhs += (ps[k - 1] as f64).ln();
        if k >= 3 {
            let i = k as f64;
            mid += (2.0 * i * i.ln()).ln();
            lls += i.ln().ln();
        }
        if k < 3 {
            continue;
        }
        let kf = k as f64;
        let lk = kf.ln();
        let chain = [
            lhs,
            mid,
            kf * 2f64.ln() + kf * lk + lls,
            kf * 2f64.ln() + kf * lk + kf * lk.ln(),
            kf * 2f64.ln() + 2.0 * kf * lk,
            3.0 * kf * lk,
            3.0 * ps[k - 1] as f64,
        ];
        rep.checked += 1;
        for (j, w) in chain.windows(2).enumerate() {
            if w[0] > w[1] + tol {
                rep.violations.push((k, j as u8 + 1));
            }
        }
    }
    rep
}

pub const CSV_HEADER: [&str; 10] = [
    "X",
    "Y",
    "Z",
    "S",
    "G",
    "H",
    "logH",
    "lemma9_slack",
    "passes_thm4",
    "below_threshold",
];

pub fn csv_record(t: &SmoothTriple, phi: &dyn Phi) -> Vec<String> {
    let l9 = verify_lemma9(t);
    let pred = thm4_predicate(t.s, t.log_h(), phi);
    vec![
        t.x.to_string(),
        t.y.to_string(),
        t.z.to_string(),
        t.s.to_string(),
        t.g.to_string(),
        t.h().to_string(),
        fmt_real(t.log_h()),
        fmt_real(l9.slack),
        u8::from(pred == Some(true)).to_string(),
        u8::from(pred.is_none()).to_string(),
    ]
}

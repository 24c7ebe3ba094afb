//! Zero decision for order-3 integer linear recurrences with distinct roots.
//!
//! Pipeline: characteristic polynomial, roots in ℚ or one supported imaginary
//! quadratic field, degeneracy gate, Vandermonde solve for the closed form,
//! denominator clearing, stripping of primes common to all three terms, an
//! upper bound `N` for any zero, and a scan of `a_0 … a_N`.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::int::{exact_sqrt, factor_biguint, is_prime_u64};
use crate::arith::{factor, ideal_coprime, ord, AlgebraicInt, FieldElem, QuadraticField};
use crate::bounds::{exponent_term_log, BoundConfig, Regime};
use crate::error::{Error, Result};
use crate::heights::weil_height;

/// `a_{n+3} = c1·a_{n+2} + c2·a_{n+1} + c3·a_n` with initial terms `a0, a1, a2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceSpec {
    pub c: [BigInt; 3],
    pub a: [BigInt; 3],
}

impl RecurrenceSpec {
    pub fn new(c: [i64; 3], a: [i64; 3]) -> Self {
        RecurrenceSpec {
            c: c.map(BigInt::from),
            a: a.map(BigInt::from),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.c[2].is_zero() {
            return Err(Error::BadParameter(
                "c3 must be nonzero for an order-3 recurrence".into(),
            ));
        }
        Ok(())
    }
}

/// Coefficients `[1, -c1, -c2, -c3]` of `x³ − c1·x² − c2·x − c3`, leading first.
pub fn char_poly(spec: &RecurrenceSpec) -> [BigInt; 4] {
    [BigInt::one(), -&spec.c[0], -&spec.c[1], -&spec.c[2]]
}

#[derive(Clone, Debug, PartialEq)]
pub struct Roots {
    pub field: QuadraticField,
    pub r: [AlgebraicInt; 3],
}

fn divisors(n: &BigUint) -> Vec<BigUint> {
    let mut out = vec![BigUint::one()];
    for (p, e) in factor_biguint(n) {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut pk = d.clone();
            for _ in 0..=e {
                next.push(pk.clone());
                pk *= &p;
            }
        }
        out = next;
    }
    out.sort();
    out
}

fn eval_cubic(p: &[BigInt; 4], x: &BigInt) -> BigInt {
    p.iter().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Squarefree part and square cofactor: `n = f²·s`.
fn squarefree_split(n: &BigInt) -> (BigInt, BigInt) {
    let mut f = BigInt::one();
    let mut s = n.signum();
    for (p, e) in factor_biguint(n.magnitude()) {
        let p = BigInt::from(p);
        f *= p.pow(e / 2);
        if e % 2 == 1 {
            s *= p;
        }
    }
    (f, s)
}

/// Roots of the characteristic polynomial: three integers, or one integer and
/// a conjugate pair in a supported imaginary quadratic ring.
pub fn find_roots(spec: &RecurrenceSpec) -> Result<Roots> {
    spec.validate()?;
    let poly = char_poly(spec);
    let mut rational = None;
    'search: for d in divisors(spec.c[2].magnitude()) {
        for s in [Sign::Plus, Sign::Minus] {
            let x = BigInt::from_biguint(s, d.clone());
            if eval_cubic(&poly, &x).is_zero() {
                rational = Some(x);
                break 'search;
            }
        }
    }
    let r = rational.ok_or_else(|| Error::UnsupportedField("irreducible cubic".into()))?;
    // x³ − c1x² − c2x − c3 = (x − r)(x² + bx + c)
    let b = &r - &spec.c[0];
    let c = &r * &b - &spec.c[1];
    let disc = &b * &b - BigInt::from(4) * &c;
    if disc.is_zero() {
        return Err(Error::RepeatedRoots);
    }
    if disc.is_positive() {
        let s = exact_sqrt(disc.magnitude()).ok_or_else(|| {
            Error::UnsupportedField(format!("real quadratic field Q(sqrt({disc}))"))
        })?;
        let s = BigInt::from(s);
        let r2 = (-&b + &s) / 2;
        let r3 = (-&b - &s) / 2;
        if r == r2 || r == r3 {
            return Err(Error::RepeatedRoots);
        }
        let mut v = [r, r2, r3];
        v.sort();
        return Ok(Roots {
            field: QuadraticField::RATIONALS,
            r: v.map(AlgebraicInt::rational),
        });
    }
    let (f, d) = squarefree_split(&disc);
    let field = d
        .to_i64()
        .and_then(|d| QuadraticField::imaginary(d).ok())
        .ok_or_else(|| Error::UnsupportedField(format!("Q(sqrt({d})) has class number > 1")))?;
    // (−b ± f√d)/2 in the ring basis
    let (x1, y1, x2, y2) = if field.half_integral() {
        ((-&b - &f) / 2, f.clone(), (-&b + &f) / 2, -f)
    } else {
        (-&b / 2, &f / 2, -&b / 2, -&f / 2)
    };
    let r1 = AlgebraicInt::from_int(field, r);
    let ra = AlgebraicInt::new(field, x1, y1);
    let rb = AlgebraicInt::new(field, x2, y2);
    Ok(Roots {
        field,
        r: [r1, ra, rb],
    })
}

/// `true` iff some ratio of two roots is a root of unity, i.e. one root is a
/// unit multiple of another.
pub fn degeneracy_check(roots: &[AlgebraicInt; 3]) -> bool {
    let units = roots[0].field.units();
    (0..3).any(|i| (0..3).any(|j| i != j && units.iter().any(|u| (u * &roots[j]) == roots[i])))
}

/// Solves `Σ k_i r_i^n = a_n` for `n = 0, 1, 2` by Lagrange interpolation:
/// `k_i = (a2 − (r_j + r_l)·a1 + r_j·r_l·a0) / ((r_i − r_j)(r_i − r_l))`.
pub fn solve_coefficients(roots: &[AlgebraicInt; 3], a: &[BigInt; 3]) -> Result<[FieldElem; 3]> {
    let field = roots[0].field;
    let lift = |n: &BigInt| AlgebraicInt::from_int(field, n.clone());
    let (a0, a1, a2) = (lift(&a[0]), lift(&a[1]), lift(&a[2]));
    let solve = |i: usize| -> Result<FieldElem> {
        let (j, l) = ((i + 1) % 3, (i + 2) % 3);
        let (ri, rj, rl) = (&roots[i], &roots[j], &roots[l]);
        let num = &(&a2 - &(&(rj + rl) * &a1)) + &(&(rj * rl) * &a0);
        let den = &(ri - rj) * &(ri - rl);
        if den.is_zero() {
            return Err(Error::SingularSystem);
        }
        FieldElem::from_int(num).div(&FieldElem::from_int(den))
    };
    Ok([solve(0)?, solve(1)?, solve(2)?])
}

/// Multiplies all coefficients by the lcm of their denominators.
pub fn clear_denominators(k: &[FieldElem; 3]) -> [AlgebraicInt; 3] {
    let l = k.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.den()));
    k.clone().map(|x| x.num().scale(&(&l / x.den())))
}

/// One prime removed from all three terms.
#[derive(Clone, Debug, PartialEq)]
pub struct StripStep {
    pub prime: AlgebraicInt,
    /// Exponent divided out of every term.
    pub c_q: u32,
    /// Coordinate whose root is divisible by the prime, if any.
    pub root_index: Option<usize>,
    /// Part of `c_q` absorbed by the root power rather than the coefficient.
    pub deficit: u32,
    /// First `n` from which the division is exact.
    pub n0: u64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct StripCertificate {
    pub steps: Vec<StripStep>,
    /// Stripping is valid for `n >= n0`; smaller `n` are checked directly.
    pub n0: u64,
}

fn pow_div(x: &AlgebraicInt, q: &AlgebraicInt, e: u32) -> AlgebraicInt {
    (0..e).fold(x.clone(), |acc, _| {
        acc.div_exact(q).expect("exponent within valuation")
    })
}

/// Removes every prime dividing `k_i·r_i^n` for all three `i` and all large
/// `n`. At most one root is divisible by such a prime; the exponent removed
/// is the least valuation among the coordinates whose root it does not divide.
pub fn strip_common_primes(
    k: &[AlgebraicInt; 3],
    r: &[AlgebraicInt; 3],
) -> Result<([AlgebraicInt; 3], StripCertificate)> {
    if k.iter().any(|x| x.is_zero()) {
        return Err(Error::ZeroInput);
    }
    for i in 0..3 {
        for j in i + 1..3 {
            if !ideal_coprime(&r[i], &r[j])? {
                return Err(Error::RootsNotCoprime);
            }
        }
    }
    let mut candidates: Vec<AlgebraicInt> = Vec::new();
    for x in k {
        for p in factor(x)?.primes() {
            if !candidates.contains(p) {
                candidates.push(p.clone());
            }
        }
    }
    let mut out = k.clone();
    let mut cert = StripCertificate::default();
    for q in candidates {
        let ord_k = [0, 1, 2].map(|i| ord(&out[i], &q));
        let ord_r = [0, 1, 2].map(|i| ord(&r[i], &q));
        let root_index = (0..3).find(|&i| ord_r[i] > 0);
        let others: Vec<usize> = (0..3).filter(|&i| Some(i) != root_index).collect();
        let c_q = others
            .iter()
            .map(|&i| ord_k[i])
            .min()
            .expect("at least two coordinates");
        if c_q == 0 {
            continue;
        }
        for &i in &others {
            out[i] = pow_div(&out[i], &q, c_q);
        }
        let (deficit, n0) = match root_index {
            Some(j) => {
                let take = ord_k[j].min(c_q);
                out[j] = pow_div(&out[j], &q, take);
                let deficit = c_q - take;
                (deficit, (deficit as u64).div_ceil(ord_r[j] as u64))
            }
            None => (0, 0),
        };
        cert.n0 = cert.n0.max(n0);
        cert.steps.push(StripStep {
            prime: q,
            c_q,
            root_index,
            deficit,
            n0,
        });
    }
    Ok((out, cert))
}

/// `N = G^(1/3 + e) / h_max`.
pub fn zero_bound(log_g: f64, h_max: f64, cfg: &BoundConfig) -> Result<(f64, Regime)> {
    if !(h_max > 0.0) {
        return Err(Error::DegenerateHeight);
    }
    let et = exponent_term_log(log_g, cfg.c_main, cfg)?;
    Ok((((1.0 / 3.0 + et.value) * log_g).exp() / h_max, et.regime))
}

// ---- enumeration --------------------------------------------------------

/// `a_0 … a_{n_max}` in exact arithmetic.
pub fn terms_exact(spec: &RecurrenceSpec, n_max: u64) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = spec.a.to_vec();
    while (v.len() as u64) <= n_max {
        let n = v.len();
        let next = &spec.c[0] * &v[n - 1] + &spec.c[1] * &v[n - 2] + &spec.c[2] * &v[n - 3];
        v.push(next);
    }
    v.truncate(n_max as usize + 1);
    v
}

/// Exact `a_n` by repeated squaring of the companion matrix.
pub fn term_exact(spec: &RecurrenceSpec, n: u64) -> BigInt {
    let m = companion(&spec.c);
    let p = mat_pow(
        &m,
        n,
        &|x, y| x * y,
        &|x, y| x + y,
        BigInt::zero(),
        BigInt::one(),
    );
    let s = [&spec.a[0], &spec.a[1], &spec.a[2]];
    &p[0][0] * s[0] + &p[0][1] * s[1] + &p[0][2] * s[2]
}

type Mat<T> = [[T; 3]; 3];

/// Acts on `(a_n, a_{n+1}, a_{n+2})`.
fn companion(c: &[BigInt; 3]) -> Mat<BigInt> {
    let (z, o) = (BigInt::zero(), BigInt::one());
    [
        [z.clone(), o.clone(), z.clone()],
        [z.clone(), z.clone(), o],
        [c[2].clone(), c[1].clone(), c[0].clone()],
    ]
}

fn mat_mul<T: Clone>(
    a: &Mat<T>,
    b: &Mat<T>,
    mul: &impl Fn(&T, &T) -> T,
    add: &impl Fn(&T, &T) -> T,
    zero: &T,
) -> Mat<T> {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            (0..3).fold(zero.clone(), |acc, k| add(&acc, &mul(&a[i][k], &b[k][j])))
        })
    })
}

fn mat_pow<T: Clone>(
    m: &Mat<T>,
    mut e: u64,
    mul: &impl Fn(&T, &T) -> T,
    add: &impl Fn(&T, &T) -> T,
    zero: T,
    one: T,
) -> Mat<T> {
    let mut acc: Mat<T> = std::array::from_fn(|i| {
        std::array::from_fn(|j| if i == j { one.clone() } else { zero.clone() })
    });
    let mut base = m.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul(&acc, &base, mul, add, &zero);
        }
        base = mat_mul(&base, &base, mul, add, &zero);
        e >>= 1;
    }
    acc
}

/// Up to this many terms the scan uses exact integers throughout.
pub const EXACT_SCAN_LIMIT: u64 = 20_000;

fn moduli() -> &'static [u64; 3] {
    static M: OnceLock<[u64; 3]> = OnceLock::new();
    M.get_or_init(|| {
        let mut out = [0u64; 3];
        let mut n = (1u64 << 61) - 1;
        for slot in out.iter_mut() {
            while !is_prime_u64(n) {
                n -= 2;
            }
            *slot = n;
            n -= 2;
        }
        out
    })
}

fn reduce(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits")
}

/// Indices `n` in `[start, end]` with `a_n ≡ 0` modulo every scan prime.
fn scan_chunk_mod(spec: &RecurrenceSpec, start: u64, end: u64) -> Vec<u64> {
    let ps = moduli();
    let mut states: Vec<(u64, [u64; 3], [u64; 3])> = ps
        .iter()
        .map(|&p| {
            let c = [0, 1, 2].map(|i| reduce(&spec.c[i], p));
            let m: Mat<u64> = [[0, 1, 0], [0, 0, 1], [c[2], c[1], c[0]]];
            let mul = |x: &u64, y: &u64| ((*x as u128 * *y as u128) % p as u128) as u64;
            let add = |x: &u64, y: &u64| ((*x as u128 + *y as u128) % p as u128) as u64;
            let j = mat_pow(&m, start, &mul, &add, 0, 1);
            let a = [0, 1, 2].map(|i| reduce(&spec.a[i], p));
            let s = [0, 1, 2].map(|i| (0..3).fold(0u64, |acc, k| add(&acc, &mul(&j[i][k], &a[k]))));
            (p, c, s)
        })
        .collect();
    let mut hits = Vec::new();
    for n in start..=end {
        if states.iter().all(|(_, _, s)| s[0] == 0) {
            hits.push(n);
        }
        for (p, c, s) in states.iter_mut() {
            let p128 = *p as u128;
            let next = ((c[0] as u128 * s[2] as u128) % p128
                + (c[1] as u128 * s[1] as u128) % p128
                + (c[2] as u128 * s[0] as u128) % p128)
                % p128;
            *s = [s[1], s[2], next as u64];
        }
    }
    hits
}

/// Every `n` in `[0, n_max]` with `a_n = 0`. Small ranges are scanned in
/// exact arithmetic; larger ones modulo three 61-bit primes (a nonzero
/// residue proves `a_n ≠ 0`), with each candidate confirmed exactly.
pub fn find_zeros(spec: &RecurrenceSpec, n_max: u64, workers: usize) -> Vec<u64> {
    if n_max <= EXACT_SCAN_LIMIT {
        return terms_exact(spec, n_max)
            .iter()
            .enumerate()
            .filter(|(_, a)| a.is_zero())
            .map(|(n, _)| n as u64)
            .collect();
    }
    let workers = workers.max(1) as u64;
    let total = n_max + 1;
    let size = total.div_ceil(workers);
    let ranges: Vec<(u64, u64)> = (0..workers)
        .map(|w| (w * size, ((w + 1) * size).min(total)))
        .filter(|(s, e)| s < e)
        .map(|(s, e)| (s, e - 1))
        .collect();
    let candidates: Vec<u64> = if ranges.len() == 1 {
        scan_chunk_mod(spec, 0, n_max)
    } else {
        std::thread::scope(|sc| {
            let hs: Vec<_> = ranges
                .iter()
                .map(|&(s, e)| sc.spawn(move || scan_chunk_mod(spec, s, e)))
                .collect();
            hs.into_iter()
                .flat_map(|h| h.join().expect("worker panicked"))
                .collect()
        })
    };
    candidates
        .into_iter()
        .filter(|&n| term_exact(spec, n).is_zero())
        .collect()
}

// ---- decision -----------------------------------------------------------

/// Above this bound the scan stops at the user cap.
pub const BOUND_LIMIT: f64 = 1e9;
pub const DEFAULT_CAP: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq)]
pub enum SmlStatus {
    ZerosFound(Vec<u64>),
    NoZerosUpToBound(u64),
    /// The bound exceeds the desk limit; only `[0, checked_up_to]` was scanned.
    BoundTooLarge {
        checked_up_to: u64,
        zeros: Vec<u64>,
    },
    /// A ratio of roots is a root of unity, or the sequence is identically zero.
    Degenerate(String),
    Unsupported(String),
}

impl SmlStatus {
    pub fn name(&self) -> &'static str {
        match self {
            SmlStatus::ZerosFound(_) => "ZerosFound",
            SmlStatus::NoZerosUpToBound(_) => "NoZerosUpToBound",
            SmlStatus::BoundTooLarge { .. } => "BoundTooLarge",
            SmlStatus::Degenerate(_) => "Degenerate",
            SmlStatus::Unsupported(_) => "Unsupported",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SmlVerdict {
    pub status: SmlStatus,
    pub roots: Option<Roots>,
    pub coefficients: Option<[FieldElem; 3]>,
    pub stripped: Option<[AlgebraicInt; 3]>,
    pub certificate: Option<StripCertificate>,
    /// The real bound `N` before rounding.
    pub bound: Option<f64>,
    /// Integer scan limit `max(floor N, n0)`.
    pub scan_limit: Option<u64>,
    pub g: Option<BigUint>,
    pub h_max: Option<f64>,
    pub c_main: f64,
    pub regime: Option<Regime>,
}

impl SmlVerdict {
    fn bare(status: SmlStatus, c_main: f64) -> Self {
        SmlVerdict {
            status,
            roots: None,
            coefficients: None,
            stripped: None,
            certificate: None,
            bound: None,
            scan_limit: None,
            g: None,
            h_max: None,
            c_main,
            regime: None,
        }
    }

    /// `status,N,G,zeros` with zeros separated by `;`.
    pub fn machine_line(&self) -> String {
        let zeros = match &self.status {
            SmlStatus::ZerosFound(z) | SmlStatus::BoundTooLarge { zeros: z, .. } => {
                z.iter().map(u64::to_string).collect::<Vec<_>>().join(";")
            }
            _ => String::new(),
        };
        format!(
            "{},{},{},{}",
            self.status.name(),
            self.scan_limit.map(|n| n.to_string()).unwrap_or_default(),
            self.g.as_ref().map(|g| g.to_string()).unwrap_or_default(),
            zeros
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanOptions {
    pub cap: u64,
    pub workers: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            cap: DEFAULT_CAP,
            workers: 1,
        }
    }
}

fn height_of(x: &AlgebraicInt) -> Result<f64> {
    weil_height(&FieldElem::from_int(x.clone()))
}

fn radical_of(xs: &[&AlgebraicInt]) -> Result<BigUint> {
    let mut primes: Vec<(AlgebraicInt, BigUint)> = Vec::new();
    for x in xs {
        for pp in factor(x)?.entries {
            if !primes.iter().any(|(p, _)| p == &pp.prime) {
                primes.push((pp.prime, pp.norm));
            }
        }
    }
    Ok(primes.into_iter().map(|(_, n)| n).product())
}

/// Runs the full pipeline and scans for zeros up to the bound.
pub fn decide_zeros(
    spec: &RecurrenceSpec,
    cfg: &BoundConfig,
    opts: ScanOptions,
) -> Result<SmlVerdict> {
    let c_main = cfg.c_main;
    let roots = match find_roots(spec) {
        Ok(r) => r,
        Err(Error::UnsupportedField(why)) => {
            return Ok(SmlVerdict::bare(SmlStatus::Unsupported(why), c_main));
        }
        Err(e) => return Err(e),
    };
    let mut v = SmlVerdict::bare(SmlStatus::NoZerosUpToBound(0), c_main);
    v.roots = Some(roots.clone());
    if degeneracy_check(&roots.r) {
        v.status = SmlStatus::Degenerate("two roots differ by a root of unity".into());
        return Ok(v);
    }
    let k = solve_coefficients(&roots.r, &spec.a)?;
    v.coefficients = Some(k.clone());
    let kint = clear_denominators(&k);
    let nonzero: Vec<usize> = (0..3).filter(|&i| !kint[i].is_zero()).collect();

    let (bound, n0) = match nonzero.len() {
        0 => {
            v.status = SmlStatus::Degenerate("sequence is identically zero".into());
            return Ok(v);
        }
        // k·r^n with r ≠ 0 never vanishes
        1 => (0.0, 0),
        // k_j r_j^n = −k_l r_l^n forces n·h(r_j/r_l) = h(k_l/k_j)
        2 => {
            let (j, l) = (nonzero[0], nonzero[1]);
            let rk =
                FieldElem::from_int(kint[l].clone()).div(&FieldElem::from_int(kint[j].clone()))?;
            let rr = FieldElem::from_int(roots.r[j].clone())
                .div(&FieldElem::from_int(roots.r[l].clone()))?;
            let hr = weil_height(&rr)?;
            if !(hr > 0.0) {
                return Err(Error::DegenerateHeight);
            }
            (weil_height(&rk)? / hr, 0)
        }
        _ => {
            let (ks, cert) = strip_common_primes(&kint, &roots.r)?;
            let g = radical_of(&[
                &ks[0],
                &ks[1],
                &ks[2],
                &roots.r[0],
                &roots.r[1],
                &roots.r[2],
            ])?;
            let h_max = roots
                .r
                .iter()
                .map(height_of)
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            let (n, regime) = zero_bound(crate::arith::int::ln_big(&g), h_max, cfg)?;
            let n0 = cert.n0;
            v.stripped = Some(ks);
            v.certificate = Some(cert);
            v.g = Some(g);
            v.h_max = Some(h_max);
            v.regime = Some(regime);
            (n, n0)
        }
    };
    v.bound = Some(bound);
    if bound > BOUND_LIMIT {
        let upto = opts.cap.max(n0);
        v.scan_limit = Some(upto);
        let zeros = find_zeros(spec, upto, opts.workers);
        v.status = SmlStatus::BoundTooLarge {
            checked_up_to: upto,
            zeros,
        };
        return Ok(v);
    }
    // the binary case bound is exact; allow one step of rounding slack
    let mut limit = bound.floor() as u64;
    if nonzero.len() == 2 {
        limit += 1;
    }
    let limit = limit.max(n0);
    v.scan_limit = Some(limit);
    let zeros = find_zeros(spec, limit, opts.workers);
    v.status = if zeros.is_empty() {
        SmlStatus::NoZerosUpToBound(limit)
    } else {
        SmlStatus::ZerosFound(zeros)
    };
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: [i64; 3]) -> [AlgebraicInt; 3] {
        v.map(AlgebraicInt::rational)
    }

    fn worked() -> RecurrenceSpec {
        RecurrenceSpec::new([10, -31, 30], [31, 112, 452])
    }

    #[test]
    fn char_poly_examples() {
        let big = |v: [i64; 4]| v.map(BigInt::from);
        assert_eq!(char_poly(&worked()), big([1, -10, 31, -30]));
        assert_eq!(
            char_poly(&RecurrenceSpec::new([0, 0, 1], [0; 3])),
            big([1, 0, 0, -1])
        );
        assert_eq!(
            char_poly(&RecurrenceSpec::new([1, 1, -1], [0; 3])),
            big([1, -1, -1, 1])
        );
    }

    #[test]
    fn root_finding() {
        let r = find_roots(&worked()).unwrap();
        assert_eq!(r.field, QuadraticField::RATIONALS);
        assert_eq!(r.r, ints([2, 3, 5]));

        let r = find_roots(&RecurrenceSpec::new([0, 0, 1], [0; 3])).unwrap();
        let f = QuadraticField::imaginary(-3).unwrap();
        assert_eq!(r.field, f);
        for x in &r.r {
            assert!(x.pow(3) == f.one(), "{x} is not a cube root of unity");
        }
        assert_ne!(r.r[1], r.r[2]);

        assert!(matches!(
            find_roots(&RecurrenceSpec::new([0, 0, 2], [0; 3])),
            Err(Error::UnsupportedField(_))
        ));
        // (x − 1)²(x − 2) = x³ − 4x² + 5x − 2
        assert_eq!(
            find_roots(&RecurrenceSpec::new([4, -5, 2], [0; 3])),
            Err(Error::RepeatedRoots)
        );
        // (x − 1)(x² − 2): real quadratic
        assert!(matches!(
            find_roots(&RecurrenceSpec::new([1, 2, -2], [0; 3])),
            Err(Error::UnsupportedField(_))
        ));
        // (x − 1)(x² + 5): class number 2
        assert!(matches!(
            find_roots(&RecurrenceSpec::new([1, -5, 5], [0; 3])),
            Err(Error::UnsupportedField(_))
        ));
    }

    #[test]
    fn gaussian_roots() {
        // (x − 2)(x² − 2x + 2), roots 2 and 1 ± i
        let r = find_roots(&RecurrenceSpec::new([4, -6, 4], [0; 3])).unwrap();
        let g = QuadraticField::imaginary(-1).unwrap();
        assert_eq!(r.field, g);
        let mut pair = vec![r.r[1].clone(), r.r[2].clone()];
        pair.sort_by(|a, b| a.lex_cmp(b));
        assert_eq!(
            pair,
            vec![AlgebraicInt::new(g, 1, -1), AlgebraicInt::new(g, 1, 1)]
        );
    }

    #[test]
    fn degeneracy_examples() {
        assert!(degeneracy_check(&ints([1, -1, 2])));
        assert!(!degeneracy_check(&ints([2, 3, 5])));
        let g = QuadraticField::imaginary(-1).unwrap();
        assert!(degeneracy_check(&[
            g.one(),
            AlgebraicInt::new(g, 0, 1),
            AlgebraicInt::new(g, 2, 0)
        ]));
    }

    #[test]
    fn coefficient_solutions() {
        let r = ints([2, 3, 5]);
        let k = solve_coefficients(&r, &[31, 112, 452].map(BigInt::from)).unwrap();
        assert_eq!(clear_denominators(&k), ints([7, 11, 13]));
        let k = solve_coefficients(&r, &[1, 0, -12].map(BigInt::from)).unwrap();
        assert_eq!(clear_denominators(&k), ints([1, 1, -1]));
        let k = solve_coefficients(&r, &[0, 0, 0].map(BigInt::from)).unwrap();
        assert!(k.iter().all(|x| x.is_zero()));
        // non-integral coefficients: a = (0, 1, 0)
        let k = solve_coefficients(&r, &[0, 1, 0].map(BigInt::from)).unwrap();
        assert!(k.iter().any(|x| !x.is_integral()));
    }

    #[test]
    fn stripping_examples() {
        let (k, c) = strip_common_primes(&ints([2, 6, 4]), &ints([3, 5, 7])).unwrap();
        assert_eq!(k, ints([1, 3, 2]));
        assert_eq!(c.steps.len(), 1);
        assert_eq!(
            (c.steps[0].prime.clone(), c.steps[0].c_q),
            (AlgebraicInt::rational(2), 1)
        );

        let (k, c) = strip_common_primes(&ints([7, 11, 13]), &ints([2, 3, 5])).unwrap();
        assert_eq!(k, ints([7, 11, 13]));
        assert!(c.steps.is_empty());

        let (k, c) = strip_common_primes(&ints([1, 2, 4]), &ints([2, 3, 5])).unwrap();
        assert_eq!(k, ints([1, 1, 2]));
        assert_eq!(c.n0, 1);
        assert_eq!(c.steps[0].root_index, Some(0));
        assert_eq!(c.steps[0].deficit, 1);

        assert_eq!(
            strip_common_primes(&ints([1, 1, 1]), &ints([2, 4, 5])).unwrap_err(),
            Error::RootsNotCoprime
        );
    }

    #[test]
    fn stripping_divides_every_term_from_n0() {
        // k = (1, 2, 4), r = (2, 3, 5): a_n = 2·a'_n for n >= 1
        let (k, r) = (ints([1, 2, 4]), ints([2, 3, 5]));
        let (ks, cert) = strip_common_primes(&k, &r).unwrap();
        for n in cert.n0 as u32..20 {
            let full: BigInt = (0..3).map(|i| (&k[i] * &r[i].pow(n)).x).sum();
            let part = |i: usize| (&ks[i] * &r[i].pow(n)).x;
            let stripped = part(0) / 2 + part(1) + part(2);
            assert_eq!(full, stripped * 2);
        }
    }

    #[test]
    fn bound_values() {
        let cfg = BoundConfig::default();
        let (n, _) = zero_bound(30030f64.ln(), 5f64.ln(), &cfg).unwrap();
        // oracle: evaluate the nested logs by hand
        let l = 30030f64.ln();
        let e = l.ln().ln() / l.ln();
        assert!((n - 30030f64.powf(1.0 / 3.0 + e) / 5f64.ln()).abs() < 1e-9);
        assert!((815.0..817.0).contains(&n), "{n}");
        let (n0, _) = zero_bound(30030f64.ln(), 5f64.ln(), &BoundConfig::with_c(0.0)).unwrap();
        assert!((n0 - 19.3).abs() < 0.05);
        let (n2, reg) = zero_bound(2f64.ln(), 2f64.ln(), &cfg).unwrap();
        assert_eq!(reg, Regime::SmallRadical);
        assert!((n2 - 2f64.cbrt() / 2f64.ln()).abs() < 1e-12);
        assert_eq!(
            zero_bound(2f64.ln(), 0.0, &cfg),
            Err(Error::DegenerateHeight)
        );
    }

    #[test]
    fn worked_example_verdict() {
        let v = decide_zeros(&worked(), &BoundConfig::default(), ScanOptions::default()).unwrap();
        assert_eq!(v.g, Some(BigUint::from(30030u32)));
        assert_eq!(v.stripped, Some(ints([7, 11, 13])));
        assert!(matches!(v.status, SmlStatus::NoZerosUpToBound(n) if (815..=816).contains(&n)));
        assert!(v.machine_line().starts_with("NoZerosUpToBound,81"));
    }

    #[test]
    fn constructed_zero() {
        let spec = RecurrenceSpec::new([10, -31, 30], [1, 0, -12]);
        let v = decide_zeros(&spec, &BoundConfig::default(), ScanOptions::default()).unwrap();
        assert_eq!(v.status, SmlStatus::ZerosFound(vec![1]));
        assert_eq!(v.g, Some(BigUint::from(30u32)));
        assert!((v.bound.unwrap() - 3.4).abs() < 0.05);
    }

    #[test]
    fn degenerate_and_unsupported_verdicts() {
        // roots 1, −1, 2: (x² − 1)(x − 2) = x³ − 2x² − x + 2
        let v = decide_zeros(
            &RecurrenceSpec::new([2, 1, -2], [1, 2, 3]),
            &BoundConfig::default(),
            ScanOptions::default(),
        )
        .unwrap();
        assert!(matches!(v.status, SmlStatus::Degenerate(_)));
        let v = decide_zeros(
            &RecurrenceSpec::new([0, 0, 2], [1, 2, 3]),
            &BoundConfig::default(),
            ScanOptions::default(),
        )
        .unwrap();
        assert!(matches!(v.status, SmlStatus::Unsupported(_)));
        let v = decide_zeros(
            &RecurrenceSpec::new([10, -31, 30], [0, 0, 0]),
            &BoundConfig::default(),
            ScanOptions::default(),
        )
        .unwrap();
        assert!(matches!(v.status, SmlStatus::Degenerate(_)));
    }

    #[test]
    fn binary_subcase() {
        // a_n = 9·2^n − 4·3^n vanishes only at n = 2
        let a: Vec<i64> = (0..3).map(|n| 9 * 2i64.pow(n) - 4 * 3i64.pow(n)).collect();
        let spec = RecurrenceSpec::new([10, -31, 30], [a[0], a[1], a[2]]);
        let v = decide_zeros(&spec, &BoundConfig::default(), ScanOptions::default()).unwrap();
        assert_eq!(v.status, SmlStatus::ZerosFound(vec![2]));
    }

    #[test]
    fn modular_scan_agrees_with_exact() {
        let spec = RecurrenceSpec::new([10, -31, 30], [1, 0, -12]);
        let exact: Vec<u64> = terms_exact(&spec, 300)
            .iter()
            .enumerate()
            .filter(|(_, a)| a.is_zero())
            .map(|(n, _)| n as u64)
            .collect();
        assert_eq!(scan_chunk_mod(&spec, 0, 300), exact);
        assert_eq!(scan_chunk_mod(&spec, 1, 1), vec![1]);
        assert_eq!(term_exact(&spec, 7), terms_exact(&spec, 7)[7]);
        for w in [1, 2, 5] {
            assert_eq!(find_zeros(&spec, EXACT_SCAN_LIMIT + 500, w), vec![1]);
        }
    }

    #[test]
    fn closed_form_matches_recurrence() {
        let spec = RecurrenceSpec::new([4, -6, 4], [3, -1, 7]);
        let roots = find_roots(&spec).unwrap();
        let k = solve_coefficients(&roots.r, &spec.a).unwrap();
        let terms = terms_exact(&spec, 40);
        for (n, an) in terms.iter().enumerate() {
            let s = (0..3).fold(FieldElem::from_int(roots.field.zero()), |acc, i| {
                acc.add(&k[i].mul(&FieldElem::from_int(roots.r[i].pow(n as u32))))
            });
            assert_eq!(
                s,
                FieldElem::from_int(AlgebraicInt::from_int(roots.field, an.clone()))
            );
        }
    }
}

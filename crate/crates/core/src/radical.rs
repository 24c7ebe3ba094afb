//! abc triples, their radical `G`, smoothness `S`, and the top-norm prime
//! selectors.
//!
//! Triples are stored in the homogeneous form `a + b + c = 0`. Selectors on a
//! stored triple follow the stored order; bound evaluators re-sort by norm.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;

use crate::arith::int::{ln_big, primes_up_to};
use crate::arith::{factor, AlgebraicInt, IdealFactorization, QuadraticField};
use crate::error::{Error, Result};

/// Norms of the selected primes; each is 1 when the prime does not exist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selectors {
    pub n_a: BigUint,
    pub n_b: BigUint,
    pub n_c: BigUint,
    /// Third-largest prime norm dividing `c`.
    pub n_c3: BigUint,
    /// Third-largest prime norm dividing `b·c`.
    pub n_q: BigUint,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AbcTriple {
    pub field: QuadraticField,
    pub a: AlgebraicInt,
    pub b: AlgebraicInt,
    pub c: AlgebraicInt,
    pub factors: [IdealFactorization; 3],
    pub g: BigUint,
    pub selectors: Selectors,
}

fn top_norm(f: &IdealFactorization) -> BigUint {
    f.top().map_or_else(BigUint::one, |pp| pp.norm.clone())
}

/// Norm of the third entry when the distinct primes are sorted descending.
fn third_largest<'a>(fs: impl IntoIterator<Item = &'a IdealFactorization>) -> BigUint {
    let mut entries: Vec<_> = fs.into_iter().flat_map(|f| f.entries.iter()).collect();
    entries.sort_by(|x, y| crate::arith::factor::prime_order(y, x));
    entries.dedup_by(|x, y| x.prime == y.prime);
    entries
        .get(2)
        .map_or_else(BigUint::one, |pp| pp.norm.clone())
}

fn selectors_of(
    fa: &IdealFactorization,
    fb: &IdealFactorization,
    fc: &IdealFactorization,
) -> Selectors {
    Selectors {
        n_a: top_norm(fa),
        n_b: top_norm(fb),
        n_c: top_norm(fc),
        n_c3: third_largest([fc]),
        n_q: third_largest([fb, fc]),
    }
}

/// Builds a triple from `a + b + c = 0`, checking nonvanishing, the sum, and
/// pairwise coprimality of the principal ideals.
pub fn make_triple(a: AlgebraicInt, b: AlgebraicInt, c: AlgebraicInt) -> Result<AbcTriple> {
    let field = a.field;
    if b.field != field || c.field != field {
        return Err(Error::UnsupportedField(
            "coordinates lie in different fields".into(),
        ));
    }
    if a.is_zero() || b.is_zero() || c.is_zero() {
        return Err(Error::ZeroCoordinate);
    }
    if !(&(&a + &b) + &c).is_zero() {
        return Err(Error::SumNotZero);
    }
    let factors = [factor(&a)?, factor(&b)?, factor(&c)?];
    for i in 0..3 {
        for j in i + 1..3 {
            if factors[i].primes().any(|p| factors[j].exponent_of(p) > 0) {
                return Err(Error::NotCoprime);
            }
        }
    }
    let g = factors.iter().map(|f| f.radical()).product();
    let selectors = selectors_of(&factors[0], &factors[1], &factors[2]);
    Ok(AbcTriple {
        field,
        a,
        b,
        c,
        factors,
        g,
        selectors,
    })
}

impl AbcTriple {
    /// From `x + y = z`, stored as `(x, y, -z)`.
    pub fn from_sum(x: AlgebraicInt, y: AlgebraicInt, z: AlgebraicInt) -> Result<Self> {
        make_triple(x, y, -z)
    }

    pub fn rational(a: i64, b: i64, c: i64) -> Result<Self> {
        make_triple(
            AlgebraicInt::rational(a),
            AlgebraicInt::rational(b),
            AlgebraicInt::rational(c),
        )
    }

    pub fn coords(&self) -> [&AlgebraicInt; 3] {
        [&self.a, &self.b, &self.c]
    }

    /// Exact projective height: coordinates are coprime, so `H = max |Nm(x_i)|`
    /// (`max |x_i|` over ℚ).
    pub fn height(&self) -> BigUint {
        self.coords()
            .iter()
            .map(|x| x.abs_norm())
            .max()
            .expect("three coordinates")
    }

    pub fn log_height(&self) -> f64 {
        ln_big(&self.height())
    }

    /// The same triple with coordinates reordered by `|Nm|` ascending (stable),
    /// selectors recomputed for the new order.
    pub fn sorted_by_norm(&self) -> AbcTriple {
        let mut idx = [0usize, 1, 2];
        let norms: Vec<BigUint> = self.coords().iter().map(|x| x.abs_norm()).collect();
        idx.sort_by(|&i, &j| norms[i].cmp(&norms[j]));
        let coords = self.coords();
        let f = &self.factors;
        AbcTriple {
            field: self.field,
            a: coords[idx[0]].clone(),
            b: coords[idx[1]].clone(),
            c: coords[idx[2]].clone(),
            factors: [f[idx[0]].clone(), f[idx[1]].clone(), f[idx[2]].clone()],
            g: self.g.clone(),
            selectors: selectors_of(&f[idx[0]], &f[idx[1]], &f[idx[2]]),
        }
    }
}

pub fn radical_g(t: &AbcTriple) -> BigUint {
    t.g.clone()
}

/// Largest rational prime dividing `abc`; defined over ℚ only.
pub fn smoothness_s(t: &AbcTriple) -> Result<BigUint> {
    if !t.field.is_rational() {
        return Err(Error::UnsupportedField(
            "smoothness is defined over Q only".into(),
        ));
    }
    t.factors
        .iter()
        .filter_map(|f| f.top().map(|pp| pp.norm.clone()))
        .max()
        .ok_or(Error::AllUnits)
}

pub fn top_primes(t: &AbcTriple) -> Selectors {
    t.selectors.clone()
}

/// Column names of [`csv_record`].
pub const TRIPLE_HEADER: [&str; 12] = [
    "a", "b", "c", "field", "G", "S", "N_a", "N_b", "N_c", "N_c3", "N_q", "logH",
];

/// One CSV row; `S` is empty over quadratic fields.
pub fn csv_record(t: &AbcTriple) -> Vec<String> {
    let s = smoothness_s(t).map(|s| s.to_string()).unwrap_or_default();
    let sel = &t.selectors;
    vec![
        t.a.to_string(),
        t.b.to_string(),
        t.c.to_string(),
        t.field.to_string(),
        t.g.to_string(),
        s,
        sel.n_a.to_string(),
        sel.n_b.to_string(),
        sel.n_c.to_string(),
        sel.n_c3.to_string(),
        sel.n_q.to_string(),
        crate::cli::report::fmt_real(t.log_height()),
    ]
}

// ---- fast rational path -------------------------------------------------

/// Smallest-prime-factor table for factoring many small integers.
pub struct SmallSieve {
    spf: Vec<u32>,
}

impl SmallSieve {
    pub fn new(limit: u64) -> Self {
        let n = limit as usize + 1;
        let mut spf = vec![0u32; n.max(2)];
        for p in primes_up_to((limit as f64).sqrt() as u64 + 1) {
            let p = p as usize;
            let mut m = p * p;
            while m < n {
                if spf[m] == 0 {
                    spf[m] = p as u32;
                }
                m += p;
            }
        }
        SmallSieve { spf }
    }

    pub fn limit(&self) -> u64 {
        self.spf.len() as u64 - 1
    }

    /// Prime factorization `(p, e)` ascending. Panics above the sieve limit.
    pub fn factor(&self, mut n: u64) -> Vec<(u64, u32)> {
        let mut out: Vec<(u64, u32)> = Vec::new();
        while n > 1 {
            let p = match self.spf[n as usize] {
                0 => n,
                p => p as u64,
            };
            n /= p;
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

/// Everything the evaluators need about a rational triple `x + y = z` with
/// `0 < x <= y < z`, already in norm order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallProfile {
    pub x: u64,
    pub y: u64,
    pub z: u64,
    pub g: u128,
    pub s: u64,
    /// `[N_a, N_b, N_c, N'_c, N_q]`.
    pub selectors: [u64; 5],
}

impl SmallProfile {
    pub fn new(sieve: &SmallSieve, x: u64, y: u64, z: u64) -> Self {
        debug_assert!(x <= y && x + y == z);
        let fx = sieve.factor(x);
        let fy = sieve.factor(y);
        let fz = sieve.factor(z);
        let top = |f: &[(u64, u32)]| f.last().map_or(1, |&(p, _)| p);
        let g = fx
            .iter()
            .chain(&fy)
            .chain(&fz)
            .map(|&(p, _)| p as u128)
            .product();
        let s = top(&fx).max(top(&fy)).max(top(&fz));
        let third = |f: &mut Vec<u64>| {
            f.sort_unstable_by(|a, b| b.cmp(a));
            f.get(2).copied().unwrap_or(1)
        };
        let n_c3 = third(&mut fz.iter().map(|&(p, _)| p).collect());
        let n_q = third(&mut fy.iter().chain(&fz).map(|&(p, _)| p).collect());
        SmallProfile {
            x,
            y,
            z,
            g,
            s,
            selectors: [top(&fx), top(&fy), top(&fz), n_c3, n_q],
        }
    }
}

/// Primitive `x + y = z` with `1 <= x <= y`, `z <= h_limit`, ordered by `(z, x)`.
pub fn primitive_triples(h_limit: u64) -> impl Iterator<Item = (u64, u64, u64)> {
    (2..=h_limit)
        .flat_map(|z| (1..=z / 2).filter_map(move |x| (x.gcd(&z) == 1).then_some((x, z - x, z))))
}

/// Sign-normalized rational triple `(x, y, -z)` from a primitive sum.
pub fn rational_from_sum(x: u64, y: u64, z: u64) -> Result<AbcTriple> {
    make_triple(
        AlgebraicInt::rational(x),
        AlgebraicInt::rational(y),
        AlgebraicInt::rational(-BigInt::from(z)),
    )
}

/// `|Nm(α)| <= G_α^(max ord)`: compare `ln|Nm α|` with `max_ord · ln G_α` exactly.
pub fn ord_height_lemma_holds(alpha: &AlgebraicInt) -> Result<bool> {
    let f = factor(alpha)?;
    if f.is_unit() {
        return Ok(true);
    }
    let bound = f.radical().pow(f.max_exponent());
    Ok(alpha.abs_norm() <= bound)
}

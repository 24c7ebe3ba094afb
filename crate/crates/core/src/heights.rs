//! Weil and projective heights, the house, and normalized local absolute
//! values.
//!
//! Normalization: at a finite place `|x|_v = Nm(p)^(-ord_p x)`; at the
//! infinite place `|x|_v = |σ(x)|^(d_v)` with `d_v = 1` over ℚ and `d_v = 2`
//! for the single complex place of an imaginary quadratic field. With these
//! conventions the product formula holds and `H_K = H_ℚ^[K:ℚ]` on rational
//! points.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::arith::int::{ln_abs, ln_big};
use crate::arith::{factor, AlgebraicInt, FieldElem};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum PlaceKind {
    Finite { prime: AlgebraicInt, norm: BigUint },
    Infinite { local_degree: u32 },
}

/// One place together with `ord` (finite places) and `log |x|_v`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaceValue {
    pub kind: PlaceKind,
    pub ord: i64,
    pub log_abs: f64,
}

/// Key for grouping finite places: primes are canonical, so `(norm, x, y)` is unique.
type PrimeKey = (BigUint, BigInt, BigInt);

fn prime_key(prime: &AlgebraicInt, norm: &BigUint) -> PrimeKey {
    (norm.clone(), prime.x.clone(), prime.y.clone())
}

/// `ord_p(x)` for every prime dividing the numerator or denominator of `x`.
fn finite_ords(x: &FieldElem) -> Result<BTreeMap<PrimeKey, (AlgebraicInt, BigUint, i64)>> {
    let mut ords = BTreeMap::new();
    for pp in factor(x.num())?.entries {
        ords.insert(
            prime_key(&pp.prime, &pp.norm),
            (pp.prime, pp.norm, pp.exponent as i64),
        );
    }
    if !x.den().is_one() {
        let den = AlgebraicInt::from_int(x.field(), x.den().clone());
        for pp in factor(&den)?.entries {
            let entry = ords
                .entry(prime_key(&pp.prime, &pp.norm))
                .or_insert((pp.prime, pp.norm, 0));
            entry.2 -= pp.exponent as i64;
        }
    }
    ords.retain(|_, v| v.2 != 0);
    Ok(ords)
}

/// `log |x|_∞` with the local degree folded in.
fn log_abs_infinite(x: &FieldElem) -> f64 {
    let deg = x.field().degree() as f64;
    // |σ(num)|^deg = |Nm(num)|
    ln_abs(&x.num().norm()) - deg * ln_abs(x.den())
}

/// Local data of `x` at every place where `|x|_v != 1`, plus the infinite place.
pub fn places(x: &FieldElem) -> Result<Vec<PlaceValue>> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut out = vec![PlaceValue {
        kind: PlaceKind::Infinite {
            local_degree: x.field().degree(),
        },
        ord: 0,
        log_abs: log_abs_infinite(x),
    }];
    for (_, (prime, norm, ord)) in finite_ords(x)? {
        let log_abs = -(ord as f64) * ln_big(&norm);
        out.push(PlaceValue {
            kind: PlaceKind::Finite { prime, norm },
            ord,
            log_abs,
        });
    }
    Ok(out)
}

/// Relative logarithmic height `Σ_v log⁺ |x|_v` over the ambient field.
pub fn weil_height(x: &FieldElem) -> Result<f64> {
    Ok(places(x)?.iter().map(|p| p.log_abs.max(0.0)).sum())
}

/// Absolute logarithmic height: the relative height divided by the degree.
pub fn absolute_height(x: &FieldElem) -> Result<f64> {
    Ok(weil_height(x)? / x.field().degree() as f64)
}

/// `log H_F(x_1, ..., x_n) = Σ_v log max_i |x_i|_v` (zero coordinates skipped).
pub fn log_projective_height(coords: &[FieldElem]) -> Result<f64> {
    let nonzero: Vec<&FieldElem> = coords.iter().filter(|c| !c.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::AllZero);
    }
    let field = nonzero[0].field();
    if nonzero.iter().any(|c| c.field() != field) {
        return Err(Error::BadParameter(
            "coordinates from different fields".into(),
        ));
    }
    let infinite = nonzero
        .iter()
        .map(|c| log_abs_infinite(c))
        .fold(f64::NEG_INFINITY, f64::max);
    // min ord per prime, with primes absent from a coordinate counting as ord 0
    let per_coord: Vec<_> = nonzero
        .iter()
        .map(|c| finite_ords(c))
        .collect::<Result<_>>()?;
    let mut min_ord: BTreeMap<PrimeKey, (BigUint, i64)> = BTreeMap::new();
    for ords in &per_coord {
        for (k, (_, norm, o)) in ords {
            let e = min_ord.entry(k.clone()).or_insert((norm.clone(), *o));
            e.1 = e.1.min(*o);
        }
    }
    for (k, (_, o)) in min_ord.iter_mut() {
        if per_coord.iter().any(|ords| !ords.contains_key(k)) {
            *o = (*o).min(0);
        }
    }
    let finite: f64 = min_ord
        .values()
        .map(|(norm, o)| -(*o as f64) * ln_big(norm))
        .sum();
    Ok(infinite + finite)
}

/// `H_F` itself (may overflow to infinity for enormous inputs; prefer the log).
pub fn projective_height(coords: &[FieldElem]) -> Result<f64> {
    Ok(log_projective_height(coords)?.exp())
}

/// Exact `H_F` for integral coordinates: `max_i |σ(x_i)|^(d_v)` divided by the
/// norm of the gcd ideal. For coprime integers over ℚ this is `max |x_i|`.
pub fn integral_projective_height(coords: &[AlgebraicInt]) -> Result<BigUint> {
    let nonzero: Vec<&AlgebraicInt> = coords.iter().filter(|c| !c.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::AllZero);
    }
    let top = nonzero
        .iter()
        .map(|c| c.abs_norm())
        .max()
        .expect("nonempty");
    let first = factor(nonzero[0])?;
    let mut gcd_norm = BigUint::one();
    for pp in &first.entries {
        let mut m = pp.exponent;
        for c in &nonzero[1..] {
            m = m.min(crate::arith::ord(c, &pp.prime));
            if m == 0 {
                break;
            }
        }
        gcd_norm *= pp.norm.pow(m);
    }
    Ok(top / gcd_norm)
}

/// Maximum modulus over the complex embeddings; `√|Nm(α)|` in the imaginary
/// quadratic case.
pub fn house(a: &AlgebraicInt) -> Result<f64> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(match a.field.degree() {
        1 => ln_abs(&a.x).exp(),
        _ => (0.5 * ln_big(&a.abs_norm())).exp(),
    })
}

/// Convenience: integral coordinates as field elements.
pub fn as_field_elems(coords: &[AlgebraicInt]) -> Vec<FieldElem> {
    coords.iter().cloned().map(FieldElem::from_int).collect()
}

/// Sum of `log |x|_v` over all places; zero up to rounding for `x != 0`.
pub fn product_formula_residual(x: &FieldElem) -> Result<f64> {
    Ok(places(x)?.iter().map(|p| p.log_abs).sum())
}

//! Prime-ideal factorization. Every admissible ring has class number one, so
//! each prime ideal is generated by a single prime element, which we keep in
//! canonical associate form.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{CheckedSub, One, Signed, ToPrimitive, Zero};

use super::field::{AlgebraicInt, QuadraticField};
use super::int::{exact_sqrt, factor_biguint, legendre, sqrt_mod_prime};
use crate::error::{Error, Result};

/// How a rational prime decomposes in the ring of integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Splitting {
    /// `p = u·π·conj(π)` with `π`, `conj(π)` non-associate, each of norm `p`.
    Split(AlgebraicInt),
    /// `p = u·π²`, `π` of norm `p`.
    Ramified(AlgebraicInt),
    /// `p` stays prime, norm `p²`.
    Inert,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimePower {
    pub prime: AlgebraicInt,
    pub exponent: u32,
    pub norm: BigUint,
}

/// `unit · ∏ primeᵉ`, entries sorted by `(norm, lexicographic)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealFactorization {
    pub field: QuadraticField,
    pub unit: AlgebraicInt,
    pub entries: Vec<PrimePower>,
}

impl IdealFactorization {
    pub fn reassemble(&self) -> AlgebraicInt {
        self.entries.iter().fold(self.unit.clone(), |acc, pp| {
            &acc * &pp.prime.pow(pp.exponent)
        })
    }

    pub fn is_unit(&self) -> bool {
        self.entries.is_empty()
    }

    /// Product of the norms of the distinct primes.
    pub fn radical(&self) -> BigUint {
        self.entries.iter().map(|e| e.norm.clone()).product()
    }

    /// Largest exponent, 0 for a unit.
    pub fn max_exponent(&self) -> u32 {
        self.entries.iter().map(|e| e.exponent).max().unwrap_or(0)
    }

    /// The entry of greatest norm (ties: lexicographically last).
    pub fn top(&self) -> Option<&PrimePower> {
        self.entries.last()
    }

    pub fn exponent_of(&self, prime: &AlgebraicInt) -> u32 {
        self.entries
            .iter()
            .find(|e| &e.prime == prime)
            .map_or(0, |e| e.exponent)
    }

    pub fn primes(&self) -> impl Iterator<Item = &AlgebraicInt> {
        self.entries.iter().map(|e| &e.prime)
    }
}

/// Ordering used for prime entries throughout: by norm, then `(x, y)`.
pub fn prime_order(a: &PrimePower, b: &PrimePower) -> Ordering {
    a.norm.cmp(&b.norm).then_with(|| a.prime.lex_cmp(&b.prime))
}

fn in_canonical_region(a: &AlgebraicInt) -> bool {
    a.x.is_positive() || (a.x.is_zero() && a.y.is_positive())
}

/// The distinguished associate of `a`: positive over ℚ; real part positive and
/// imaginary part nonnegative in ℤ[i]; `x > 0` or `(x = 0, y > 0)` in the
/// other rings, taking the lexicographically least such associate for d = -3.
pub fn canonical_associate(a: &AlgebraicInt) -> Result<AlgebraicInt> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    let f = a.field;
    let associates = f.units().into_iter().map(|u| &u * a);
    let best = match f.d() {
        Some(-1) => associates
            .filter(|b| b.x.is_positive() && !b.y.is_negative())
            .next(),
        _ => associates
            .filter(in_canonical_region)
            .min_by(|p, q| p.lex_cmp(q)),
    };
    Ok(best.expect("some associate lies in the canonical region"))
}

/// Classification of `p` by the residue symbol of the discriminant
/// (2 by the discriminant mod 8), with a generator of norm `p` when one exists.
pub fn splitting(field: QuadraticField, p: &BigUint) -> Result<Splitting> {
    if field.is_rational() {
        return Err(Error::UnsupportedField(
            "ℚ has no quadratic splitting".into(),
        ));
    }
    let disc = BigInt::from(field.disc());
    let two = BigUint::from(2u32);
    let kind: i8 = if *p == two {
        match field.disc().rem_euclid(8) {
            1 => 1,
            5 => -1,
            _ => 0,
        }
    } else {
        legendre(&disc, p)
    };
    Ok(match kind {
        -1 => Splitting::Inert,
        0 => Splitting::Ramified(canonical_associate(&norm_element(field, p))?),
        _ => Splitting::Split(canonical_associate(&norm_element(field, p))?),
    })
}

/// An element of norm `p`, assuming one exists (p split or ramified).
fn norm_element(field: QuadraticField, p: &BigUint) -> AlgebraicInt {
    if let Some(a) = cornacchia(field, p) {
        return a;
    }
    brute_norm_element(field, p).expect("split or ramified prime has an element of norm p")
}

/// Modified Cornacchia: solve X² + |D|·Y² = 4p with D the discriminant.
fn cornacchia(field: QuadraticField, p: &BigUint) -> Option<AlgebraicInt> {
    let disc = field.disc();
    let abs_d = BigUint::from(disc.unsigned_abs());
    let four_p = p * 4u32;
    if p == &BigUint::from(2u32) {
        return None;
    }
    let d_mod_p = BigInt::from(disc)
        .mod_floor(&BigInt::from_biguint(Sign::Plus, p.clone()))
        .to_biguint()?;
    let mut b = sqrt_mod_prime(&d_mod_p, p)?;
    // b ≡ D (mod 2)
    if (b.is_odd()) != (disc.rem_euclid(2) == 1) {
        b = p - &b;
    }
    let mut a = p * 2u32;
    let limit = num_integer::Roots::sqrt(&four_p);
    while b > limit {
        let r = &a % &b;
        a = b;
        b = r;
    }
    let rem = four_p.checked_sub(&(&b * &b))?;
    if !(&rem % &abs_d).is_zero() {
        return None;
    }
    let c = exact_sqrt(&(rem / &abs_d))?;
    let big_x = BigInt::from_biguint(Sign::Plus, b);
    let big_y = BigInt::from_biguint(Sign::Plus, c);
    // (X + Y√D)/2 in the ring basis
    let elem = if field.half_integral() {
        AlgebraicInt::new(field, (&big_x - &big_y) / 2, big_y)
    } else {
        AlgebraicInt::new(field, big_x / 2, big_y)
    };
    (elem.abs_norm() == *p).then_some(elem)
}

fn brute_norm_element(field: QuadraticField, p: &BigUint) -> Option<AlgebraicInt> {
    let p = p.to_i64()?;
    // y bounded by the norm form: |d|·y²/4 <= p
    let d = field.d()?.unsigned_abs() as i64;
    let ymax = ((4 * p / d) as f64).sqrt() as i64 + 2;
    for y in 0..=ymax {
        for x in -2 * ymax - 2..=2 * ymax + 2 {
            let a = AlgebraicInt::new(field, x, y);
            if a.abs_norm() == BigUint::from(p as u64) {
                return Some(a);
            }
        }
    }
    None
}

/// Factorization of a nonzero rational integer over ℚ.
pub fn factor_int(n: &BigInt) -> Result<IdealFactorization> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let f = QuadraticField::RATIONALS;
    let unit = AlgebraicInt::rational(if n.is_negative() { -1 } else { 1 });
    let entries = factor_biguint(n.magnitude())
        .into_iter()
        .map(|(p, e)| PrimePower {
            prime: AlgebraicInt::rational(BigInt::from_biguint(Sign::Plus, p.clone())),
            exponent: e,
            norm: p,
        })
        .collect();
    Ok(IdealFactorization {
        field: f,
        unit,
        entries,
    })
}

fn divide_out(a: &mut AlgebraicInt, pi: &AlgebraicInt) -> u32 {
    let mut e = 0;
    while let Some(q) = a.div_exact(pi) {
        *a = q;
        e += 1;
    }
    e
}

/// Factorization in an imaginary quadratic ring: factor the norm over ℤ and
/// lift each rational prime through its splitting type.
pub fn factor_quad(a: &AlgebraicInt) -> Result<IdealFactorization> {
    let field = a.field;
    if field.is_rational() {
        return Err(Error::UnsupportedField(
            "factor_quad needs a quadratic field".into(),
        ));
    }
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut rest = a.clone();
    let mut entries = Vec::new();
    for (p, e) in factor_biguint(&a.abs_norm()) {
        match splitting(field, &p)? {
            Splitting::Inert => {
                let pi = canonical_associate(&AlgebraicInt::from_int(
                    field,
                    BigInt::from_biguint(Sign::Plus, p.clone()),
                ))?;
                let k = divide_out(&mut rest, &pi);
                debug_assert_eq!(2 * k, e);
                entries.push(PrimePower {
                    prime: pi,
                    exponent: k,
                    norm: &p * &p,
                });
            }
            Splitting::Ramified(pi) => {
                let k = divide_out(&mut rest, &pi);
                debug_assert_eq!(k, e);
                entries.push(PrimePower {
                    prime: pi,
                    exponent: k,
                    norm: p,
                });
            }
            Splitting::Split(pi) => {
                let other = canonical_associate(&pi.conj())?;
                for q in [pi, other] {
                    let k = divide_out(&mut rest, &q);
                    if k > 0 {
                        entries.push(PrimePower {
                            prime: q,
                            exponent: k,
                            norm: p.clone(),
                        });
                    }
                }
            }
        }
    }
    debug_assert!(rest.is_unit(), "cofactor {rest} is not a unit");
    entries.sort_by(prime_order);
    Ok(IdealFactorization {
        field,
        unit: rest,
        entries,
    })
}

/// Factorization in whichever ring `a` lives in.
pub fn factor(a: &AlgebraicInt) -> Result<IdealFactorization> {
    if a.field.is_rational() {
        factor_int(&a.x)
    } else {
        factor_quad(a)
    }
}

/// True iff the principal ideals share no prime.
pub fn ideal_coprime(a: &AlgebraicInt, b: &AlgebraicInt) -> Result<bool> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    // A common prime ideal divides both norms; equal-norm primes are compared exactly.
    if a.abs_norm().gcd(&b.abs_norm()).is_one() {
        return Ok(true);
    }
    let fa = factor(a)?;
    let fb = factor(b)?;
    let shared = fa.primes().any(|p| fb.primes().any(|q| p == q));
    Ok(!shared)
}

/// `ord_π(a)` for a canonical prime `π` and nonzero `a`.
pub fn ord(a: &AlgebraicInt, prime: &AlgebraicInt) -> u32 {
    let mut rest = a.clone();
    divide_out(&mut rest, prime)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauss() -> QuadraticField {
        QuadraticField::imaginary(-1).unwrap()
    }

    fn gi(x: i64, y: i64) -> AlgebraicInt {
        AlgebraicInt::new(gauss(), x, y)
    }

    #[test]
    fn factor_int_examples() {
        let f = factor_int(&BigInt::from(72)).unwrap();
        let pairs: Vec<_> = f
            .entries
            .iter()
            .map(|e| (e.prime.x.clone(), e.exponent))
            .collect();
        assert_eq!(pairs, vec![(BigInt::from(2), 3), (BigInt::from(3), 2)]);
        assert_eq!(f.unit, AlgebraicInt::rational(1));
        let one = factor_int(&BigInt::one()).unwrap();
        assert!(one.entries.is_empty());
        assert_eq!(one.unit, AlgebraicInt::rational(1));
        let neg = factor_int(&BigInt::from(-30030)).unwrap();
        assert_eq!(neg.unit, AlgebraicInt::rational(-1));
        assert_eq!(neg.entries.len(), 6);
        assert!(neg.entries.iter().all(|e| e.exponent == 1));
        assert_eq!(factor_int(&BigInt::zero()), Err(Error::ZeroInput));
    }

    #[test]
    fn gaussian_five_splits() {
        let f = factor_quad(&gi(5, 0)).unwrap();
        let primes: Vec<_> = f.primes().cloned().collect();
        assert_eq!(primes, vec![gi(1, 2), gi(2, 1)]);
        assert!(f
            .entries
            .iter()
            .all(|e| e.norm == BigUint::from(5u32) && e.exponent == 1));
        assert_eq!(f.reassemble(), gi(5, 0));
        assert_eq!(&gi(2, 1) * &gi(2, -1), gi(5, 0));
    }

    #[test]
    fn gaussian_two_ramifies() {
        let f = factor_quad(&gi(2, 0)).unwrap();
        assert_eq!(f.entries.len(), 1);
        assert_eq!(f.entries[0].prime, gi(1, 1));
        assert_eq!(f.entries[0].exponent, 2);
        assert_eq!(f.entries[0].norm, BigUint::from(2u32));
        assert_eq!(f.unit, gi(0, -1));
        assert_eq!(&gi(0, -1) * &gi(1, 1).pow(2), gi(2, 0));
    }

    #[test]
    fn gaussian_three_inert() {
        let f = factor_quad(&gi(3, 0)).unwrap();
        assert_eq!(f.entries.len(), 1);
        assert_eq!(f.entries[0].prime, gi(3, 0));
        assert_eq!(f.entries[0].norm, BigUint::from(9u32));
    }

    #[test]
    fn canonical_examples() {
        let q = QuadraticField::RATIONALS;
        assert_eq!(
            canonical_associate(&AlgebraicInt::from_int(q, -3)).unwrap(),
            AlgebraicInt::rational(3)
        );
        assert_eq!(canonical_associate(&gi(-1, 2)).unwrap(), gi(2, 1));
        assert_eq!(canonical_associate(&gi(2, 1)).unwrap(), gi(2, 1));
        assert_eq!(canonical_associate(&gi(0, 0)), Err(Error::ZeroInput));
    }

    #[test]
    fn canonical_eisenstein() {
        let f = QuadraticField::imaginary(-3).unwrap();
        let a = AlgebraicInt::new(f, 2, 3);
        let c = canonical_associate(&a).unwrap();
        for u in f.units() {
            assert_eq!(canonical_associate(&(&u * &a)).unwrap(), c);
        }
        assert!(in_canonical_region(&c));
    }

    #[test]
    fn coprimality() {
        let q = |n: i64| AlgebraicInt::rational(n);
        assert!(ideal_coprime(&q(8), &q(9)).unwrap());
        assert!(!ideal_coprime(&gi(2, 1), &gi(5, 0)).unwrap());
        assert!(ideal_coprime(&gi(1, 1), &gi(3, 0)).unwrap());
        // same norm, different primes
        assert!(ideal_coprime(&gi(2, 1), &gi(2, -1)).unwrap());
        assert_eq!(ideal_coprime(&gi(0, 0), &gi(1, 0)), Err(Error::ZeroInput));
    }

    #[test]
    fn two_in_each_ring() {
        for f in QuadraticField::all().skip(1) {
            let s = splitting(f, &BigUint::from(2u32)).unwrap();
            let expected = match f.disc().rem_euclid(8) {
                1 => "split",
                5 => "inert",
                _ => "ramified",
            };
            let got = match s {
                Splitting::Split(_) => "split",
                Splitting::Inert => "inert",
                Splitting::Ramified(_) => "ramified",
            };
            assert_eq!(got, expected, "{f}");
        }
    }

    #[test]
    fn large_split_prime() {
        let f = QuadraticField::imaginary(-163).unwrap();
        // 41 + 41·... : find a large prime that splits and lift it
        let p = BigUint::from(1_000_000_007u64);
        if let Splitting::Split(pi) = splitting(f, &p).unwrap() {
            assert_eq!(pi.abs_norm(), p);
        }
        let a = AlgebraicInt::new(f, 123_456_789, -987_654);
        let fa = factor_quad(&a).unwrap();
        assert_eq!(fa.reassemble(), a);
    }
}

//! The ambient fields and exact arithmetic in their rings of integers.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The nine imaginary quadratic fields of class number one.
pub const CLASS_NUMBER_ONE: [i64; 9] = [-1, -2, -3, -7, -11, -19, -43, -67, -163];

/// Either ℚ or ℚ(√d) for `d` on [`CLASS_NUMBER_ONE`].
///
/// ℚ is stored with `d = 1`; its elements always have a zero `ω` coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticField {
    d: i64,
}

impl QuadraticField {
    pub const RATIONALS: QuadraticField = QuadraticField { d: 1 };

    /// ℚ(√d). Anything off the class-number-one list is rejected.
    pub fn imaginary(d: i64) -> Result<Self> {
        if CLASS_NUMBER_ONE.contains(&d) {
            Ok(QuadraticField { d })
        } else {
            Err(Error::UnsupportedField(format!(
                "Q(sqrt({d})) is not an imaginary quadratic field of class number one"
            )))
        }
    }

    pub fn all() -> impl Iterator<Item = QuadraticField> {
        std::iter::once(Self::RATIONALS)
            .chain(CLASS_NUMBER_ONE.iter().map(|&d| QuadraticField { d }))
    }

    pub fn is_rational(&self) -> bool {
        self.d == 1
    }

    /// Square-free `d`; `None` for ℚ.
    pub fn d(&self) -> Option<i64> {
        (!self.is_rational()).then_some(self.d)
    }

    pub fn degree(&self) -> u32 {
        if self.is_rational() {
            1
        } else {
            2
        }
    }

    /// Field discriminant (1 for ℚ).
    pub fn disc(&self) -> i64 {
        if self.is_rational() {
            1
        } else if self.d.rem_euclid(4) == 1 {
            self.d
        } else {
            4 * self.d
        }
    }

    /// True when the ring generator is (1 + √d)/2.
    pub fn half_integral(&self) -> bool {
        !self.is_rational() && self.d.rem_euclid(4) == 1
    }

    pub fn omega_description(&self) -> String {
        match self.d() {
            None => "1".into(),
            Some(d) if self.half_integral() => format!("(1+sqrt({d}))/2"),
            Some(-1) => "i".into(),
            Some(d) => format!("sqrt({d})"),
        }
    }

    /// ω² = ω + m for half-integral rings (m = (d-1)/4), ω² = d otherwise.
    fn omega_sq_const(&self) -> i64 {
        if self.half_integral() {
            (self.d - 1) / 4
        } else {
            self.d
        }
    }

    pub fn zero(&self) -> AlgebraicInt {
        AlgebraicInt::from_int(*self, 0)
    }

    pub fn one(&self) -> AlgebraicInt {
        AlgebraicInt::from_int(*self, 1)
    }

    pub fn omega(&self) -> AlgebraicInt {
        assert!(!self.is_rational(), "ℚ has no quadratic generator");
        AlgebraicInt::new(*self, 0, 1)
    }

    /// All roots of unity in the ring, starting with 1.
    pub fn units(&self) -> Vec<AlgebraicInt> {
        let f = *self;
        match self.d {
            -1 => vec![
                f.one(),
                AlgebraicInt::new(f, 0, 1),
                AlgebraicInt::new(f, -1, 0),
                AlgebraicInt::new(f, 0, -1),
            ],
            // ω = (1 + √-3)/2 is a primitive sixth root of unity; ω² = ω - 1.
            -3 => vec![
                f.one(),
                AlgebraicInt::new(f, 0, 1),
                AlgebraicInt::new(f, -1, 1),
                AlgebraicInt::new(f, -1, 0),
                AlgebraicInt::new(f, 0, -1),
                AlgebraicInt::new(f, 1, -1),
            ],
            _ => vec![f.one(), AlgebraicInt::from_int(f, -1)],
        }
    }

    /// Parses `Q`, `Q(i)` or `Q(sqrt(d))`.
    pub fn parse(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "Q" {
            return Ok(Self::RATIONALS);
        }
        if t == "Q(i)" || t == "Q(sqrt(-1))" {
            return Self::imaginary(-1);
        }
        let inner = t
            .strip_prefix("Q(sqrt(")
            .and_then(|r| r.strip_suffix("))"))
            .ok_or_else(|| Error::Parse(format!("bad field literal `{s}`")))?;
        let d: i64 = inner
            .parse()
            .map_err(|_| Error::Parse(format!("bad field literal `{s}`")))?;
        if d == 1 {
            return Ok(Self::RATIONALS);
        }
        Self::imaginary(d)
    }
}

impl fmt::Display for QuadraticField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.d() {
            None => write!(f, "Q"),
            Some(-1) => write!(f, "Q(i)"),
            Some(d) => write!(f, "Q(sqrt({d}))"),
        }
    }
}

/// `x + y·ω` in the ring of integers of `field`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraicInt {
    pub field: QuadraticField,
    pub x: BigInt,
    pub y: BigInt,
}

impl AlgebraicInt {
    pub fn new(field: QuadraticField, x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        let y = y.into();
        assert!(
            !field.is_rational() || y.is_zero(),
            "rational elements have no ω part"
        );
        AlgebraicInt {
            field,
            x: x.into(),
            y,
        }
    }

    pub fn from_int(field: QuadraticField, x: impl Into<BigInt>) -> Self {
        AlgebraicInt {
            field,
            x: x.into(),
            y: BigInt::zero(),
        }
    }

    pub fn rational(x: impl Into<BigInt>) -> Self {
        Self::from_int(QuadraticField::RATIONALS, x)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_rational_integer(&self) -> bool {
        self.y.is_zero()
    }

    /// Norm down to ℚ; for ℚ itself this is the element.
    pub fn norm(&self) -> BigInt {
        if self.field.is_rational() {
            return self.x.clone();
        }
        let (x, y) = (&self.x, &self.y);
        if self.field.half_integral() {
            let m = BigInt::from((1 - self.field.d) / 4);
            x * x + x * y + m * y * y
        } else {
            x * x - BigInt::from(self.field.d) * y * y
        }
    }

    /// |norm|, the norm of the principal ideal.
    pub fn abs_norm(&self) -> BigUint {
        self.norm().magnitude().clone()
    }

    pub fn conj(&self) -> Self {
        if self.field.is_rational() {
            return self.clone();
        }
        if self.field.half_integral() {
            AlgebraicInt {
                field: self.field,
                x: &self.x + &self.y,
                y: -&self.y,
            }
        } else {
            AlgebraicInt {
                field: self.field,
                x: self.x.clone(),
                y: -&self.y,
            }
        }
    }

    pub fn is_unit(&self) -> bool {
        self.abs_norm().is_one()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.field.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        AlgebraicInt {
            field: self.field,
            x: &self.x * k,
            y: &self.y * k,
        }
    }

    /// gcd of the two coordinates (the largest rational integer dividing the element).
    pub fn content(&self) -> BigInt {
        self.x.gcd(&self.y)
    }

    /// `self / other` when the quotient is integral.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        assert!(!other.is_zero(), "division by zero");
        if self.field.is_rational() {
            return self.div_int_exact(&other.x);
        }
        let num = self * &other.conj();
        let n = other.norm();
        let (qx, rx) = num.x.div_rem(&n);
        let (qy, ry) = num.y.div_rem(&n);
        (rx.is_zero() && ry.is_zero()).then_some(AlgebraicInt {
            field: self.field,
            x: qx,
            y: qy,
        })
    }

    /// `self / k` for a rational integer `k` dividing both coordinates.
    pub fn div_int_exact(&self, k: &BigInt) -> Option<Self> {
        let (qx, rx) = self.x.div_rem(k);
        let (qy, ry) = self.y.div_rem(k);
        (rx.is_zero() && ry.is_zero()).then_some(AlgebraicInt {
            field: self.field,
            x: qx,
            y: qy,
        })
    }

    /// Image under the complex embedding with positive imaginary part of √d.
    pub fn to_complex(&self) -> (f64, f64) {
        let x = big_to_f64(&self.x);
        let y = big_to_f64(&self.y);
        match self.field.d() {
            None => (x, 0.0),
            Some(d) => {
                let s = (-(d as f64)).sqrt();
                if self.field.half_integral() {
                    (x + y / 2.0, y * s / 2.0)
                } else {
                    (x, y * s)
                }
            }
        }
    }

    /// Lexicographic order on `(x, y)`, used to break ties between primes of
    /// equal norm.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        (&self.x, &self.y).cmp(&(&other.x, &other.y))
    }

    /// Parses `x+y*w`, `x-w`, `3`, `w`, ... (`i` is accepted for ℚ(i)).
    pub fn parse(field: QuadraticField, s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("bad element literal `{s}` for {field}"));
        if t.is_empty() {
            return Err(bad());
        }
        let mut x = BigInt::zero();
        let mut y = BigInt::zero();
        // split into signed terms
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in t.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 {
                terms.push(&t[start..i]);
                start = i;
            }
        }
        terms.push(&t[start..]);
        for term in terms {
            let (neg, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            if body.is_empty() {
                return Err(bad());
            }
            let is_gen = |v: &str| v == "w" || (v == "i" && field.d() == Some(-1));
            let (coef, gen) = if let Some(c) = body.strip_suffix("*w").or_else(|| {
                (field.d() == Some(-1))
                    .then(|| body.strip_suffix("*i"))
                    .flatten()
            }) {
                (c.parse::<BigInt>().map_err(|_| bad())?, true)
            } else if is_gen(body) {
                (BigInt::one(), true)
            } else {
                (body.parse::<BigInt>().map_err(|_| bad())?, false)
            };
            let coef = if neg { -coef } else { coef };
            if gen {
                y += coef;
            } else {
                x += coef;
            }
        }
        if field.is_rational() && !y.is_zero() {
            return Err(bad());
        }
        Ok(AlgebraicInt { field, x, y })
    }
}

impl fmt::Display for AlgebraicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_zero() {
            return write!(f, "{}", self.x);
        }
        let gen = if self.field.d() == Some(-1) { "i" } else { "w" };
        let ycoef = if self.y.is_one() {
            gen.to_string()
        } else if self.y == -BigInt::one() {
            format!("-{gen}")
        } else {
            format!("{}*{gen}", self.y)
        };
        if self.x.is_zero() {
            write!(f, "{ycoef}")
        } else if self.y.is_negative() {
            write!(f, "{}{}", self.x, ycoef)
        } else {
            write!(f, "{}+{}", self.x, ycoef)
        }
    }
}

pub(crate) fn big_to_f64(n: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    n.to_f64().unwrap_or(if n.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

fn same_field(a: &AlgebraicInt, b: &AlgebraicInt) {
    assert_eq!(a.field, b.field, "mixed-field arithmetic");
}

impl Add for &AlgebraicInt {
    type Output = AlgebraicInt;
    fn add(self, rhs: &AlgebraicInt) -> AlgebraicInt {
        same_field(self, rhs);
        AlgebraicInt {
            field: self.field,
            x: &self.x + &rhs.x,
            y: &self.y + &rhs.y,
        }
    }
}

impl Sub for &AlgebraicInt {
    type Output = AlgebraicInt;
    fn sub(self, rhs: &AlgebraicInt) -> AlgebraicInt {
        same_field(self, rhs);
        AlgebraicInt {
            field: self.field,
            x: &self.x - &rhs.x,
            y: &self.y - &rhs.y,
        }
    }
}

impl Mul for &AlgebraicInt {
    type Output = AlgebraicInt;
    fn mul(self, rhs: &AlgebraicInt) -> AlgebraicInt {
        same_field(self, rhs);
        let f = self.field;
        let xx = &self.x * &rhs.x;
        let yy = &self.y * &rhs.y;
        let cross = &self.x * &rhs.y + &self.y * &rhs.x;
        let m = BigInt::from(f.omega_sq_const());
        if f.half_integral() {
            AlgebraicInt {
                field: f,
                x: xx + &yy * m,
                y: cross + yy,
            }
        } else {
            AlgebraicInt {
                field: f,
                x: xx + yy * m,
                y: cross,
            }
        }
    }
}

impl Neg for &AlgebraicInt {
    type Output = AlgebraicInt;
    fn neg(self) -> AlgebraicInt {
        AlgebraicInt {
            field: self.field,
            x: -&self.x,
            y: -&self.y,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for AlgebraicInt {
            type Output = AlgebraicInt;
            fn $m(self, rhs: AlgebraicInt) -> AlgebraicInt {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for AlgebraicInt {
    type Output = AlgebraicInt;
    fn neg(self) -> AlgebraicInt {
        -&self
    }
}

/// An element of the field as `num / den` with `den > 0` a rational integer.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElem {
    num: AlgebraicInt,
    den: BigInt,
}

impl FieldElem {
    pub fn new(num: AlgebraicInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroInput);
        }
        let mut e = FieldElem { num, den };
        e.normalize();
        Ok(e)
    }

    pub fn from_int(a: AlgebraicInt) -> Self {
        FieldElem {
            num: a,
            den: BigInt::one(),
        }
    }

    pub fn rational(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self> {
        Self::new(AlgebraicInt::rational(n), d.into())
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            self.num = -&self.num;
        }
        let g = self.num.content().gcd(&self.den);
        if !g.is_zero() && !g.is_one() {
            self.num = self.num.div_int_exact(&g).expect("content divides");
            self.den = &self.den / &g;
        }
        if self.num.is_zero() {
            self.den = BigInt::one();
        }
    }

    pub fn field(&self) -> QuadraticField {
        self.num.field
    }

    pub fn num(&self) -> &AlgebraicInt {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, o: &Self) -> Self {
        let num = &self.num.scale(&o.den) + &o.num.scale(&self.den);
        Self::new(num, &self.den * &o.den).expect("nonzero denominator")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        FieldElem {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero denominator")
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        if self.field().is_rational() {
            return Self::new(AlgebraicInt::rational(self.den.clone()), self.num.x.clone());
        }
        // 1/(n/d) = d·conj(n)/N(n)
        let n = self.num.norm();
        Self::new(self.num.conj().scale(&self.den), n)
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    /// Absolute value of the norm, as a reduced fraction `(num, den)`.
    pub fn abs_norm(&self) -> (BigUint, BigUint) {
        let n = self.num.abs_norm();
        let d = self.den.magnitude().pow(self.field().degree());
        let g = n.gcd(&d);
        (n / &g, d / g)
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let (re, im) = self.num.to_complex();
        let d = big_to_f64(&self.den);
        (re / d, im / d)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else if self.num.y.is_zero() {
            write!(f, "{}/{}", self.num, self.den)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}

impl FieldElem {
    /// Parses `elem` or `elem/den` (parentheses around `elem` optional).
    pub fn parse(field: QuadraticField, s: &str) -> Result<Self> {
        let t = s.trim();
        let (num, den) = match t.rfind('/') {
            Some(i) => (&t[..i], Some(&t[i + 1..])),
            None => (t, None),
        };
        let num = num.trim().trim_start_matches('(').trim_end_matches(')');
        let num = AlgebraicInt::parse(field, num)?;
        let den = match den {
            Some(d) => d
                .trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("bad denominator in `{s}`")))?,
            None => BigInt::one(),
        };
        Self::new(num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gi(x: i64, y: i64) -> AlgebraicInt {
        AlgebraicInt::new(QuadraticField::imaginary(-1).unwrap(), x, y)
    }

    #[test]
    fn field_descriptors() {
        assert_eq!(QuadraticField::RATIONALS.degree(), 1);
        for f in QuadraticField::all().skip(1) {
            assert_eq!(f.degree(), 2);
            let n_units = f.units().len();
            match f.d().unwrap() {
                -1 => assert_eq!(n_units, 4),
                -3 => assert_eq!(n_units, 6),
                _ => assert_eq!(n_units, 2),
            }
            for u in f.units() {
                assert!(u.is_unit(), "{u} in {f}");
            }
        }
        assert_eq!(QuadraticField::imaginary(-7).unwrap().disc(), -7);
        assert_eq!(QuadraticField::imaginary(-2).unwrap().disc(), -8);
        assert!(QuadraticField::imaginary(-5).is_err());
        assert!(QuadraticField::imaginary(5).is_err());
    }

    #[test]
    fn sixth_roots_of_unity() {
        let f = QuadraticField::imaginary(-3).unwrap();
        for u in f.units() {
            assert_eq!(u.pow(6), f.one());
        }
        let w = f.omega();
        assert_eq!(w.pow(3), AlgebraicInt::from_int(f, -1));
    }

    #[test]
    fn gaussian_products() {
        assert_eq!(&gi(2, 1) * &gi(2, -1), gi(5, 0));
        assert_eq!(gi(1, 1).pow(2), gi(0, 2));
        assert_eq!(gi(3, 4).norm(), BigInt::from(25));
        assert_eq!(gi(5, 0).div_exact(&gi(2, 1)), Some(gi(2, -1)));
        assert_eq!(gi(3, 0).div_exact(&gi(2, 1)), None);
    }

    #[test]
    fn half_integral_norm_matches_embedding() {
        for d in CLASS_NUMBER_ONE {
            let f = QuadraticField::imaginary(d).unwrap();
            let a = AlgebraicInt::new(f, 3, -5);
            let (re, im) = a.to_complex();
            let n = big_to_f64(&a.norm());
            assert!((re * re + im * im - n).abs() < 1e-9 * n.max(1.0), "d = {d}");
            assert_eq!((&a * &a.conj()).y, BigInt::zero());
        }
    }

    #[test]
    fn parse_and_display() {
        let f = QuadraticField::parse("Q(sqrt(-7))").unwrap();
        assert_eq!(f.d(), Some(-7));
        assert_eq!(QuadraticField::parse("Q(i)").unwrap().d(), Some(-1));
        assert!(QuadraticField::parse("Q(sqrt(-5))").is_err());
        assert!(QuadraticField::parse("R").is_err());
        let a = AlgebraicInt::parse(f, "3-2*w").unwrap();
        assert_eq!(a, AlgebraicInt::new(f, 3, -2));
        assert_eq!(AlgebraicInt::parse(f, &a.to_string()).unwrap(), a);
        assert_eq!(
            AlgebraicInt::parse(f, "-w").unwrap(),
            AlgebraicInt::new(f, 0, -1)
        );
        let g = QuadraticField::imaginary(-1).unwrap();
        assert_eq!(
            AlgebraicInt::parse(g, "1+2i").unwrap_err(),
            Error::Parse("bad element literal `1+2i` for Q(i)".into())
        );
        assert_eq!(AlgebraicInt::parse(g, "1+2*i").unwrap(), gi(1, 2));
        assert!(AlgebraicInt::parse(QuadraticField::RATIONALS, "1+w").is_err());
        let q = FieldElem::parse(QuadraticField::RATIONALS, "-6/4").unwrap();
        assert_eq!(q, FieldElem::rational(-3, 2).unwrap());
    }

    #[test]
    fn field_division() {
        let f = QuadraticField::imaginary(-1).unwrap();
        let a = FieldElem::from_int(gi(1, 2));
        let b = FieldElem::from_int(gi(3, -1));
        let q = a.div(&b).unwrap();
        assert_eq!(q.mul(&b), a);
        assert_eq!(FieldElem::from_int(f.zero()).inv(), Err(Error::ZeroInput));
        assert_eq!(
            FieldElem::rational(-2, 3).unwrap().inv().unwrap(),
            FieldElem::rational(-3, 2).unwrap()
        );
    }
}

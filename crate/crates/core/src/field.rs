//! Exact scalar fields.
//!
//! Every algorithm in this crate is written against the [`Scalar`] trait.
//! Three implementations are provided:
//!
//! * [`Rational`] (`num_rational::BigRational`), the field of rationals with
//!   arbitrary-precision numerator and denominator;
//! * [`Gf<P>`], the prime field with a compile-time modulus, used by the
//!   exhaustive oracles where speed matters;
//! * [`FieldElement`], a runtime-tagged element of either kind, used when the
//!   field is only known from a file or a command-line flag.
//!
//! A [`FieldSpec`] names the field an element lives in. Matrices carry one and
//! refuse to mix operands from different fields.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Inv, One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    PrimeField,
}

/// The field `K`: either `Q` or `GF(p)` with `p` prime.
///
/// Serialized as `Q` or `GF:p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    kind: FieldKind,
    modulus: Option<u64>,
}

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec {
        kind: FieldKind::Rationals,
        modulus: None,
    };

    pub fn rationals() -> Self {
        Self::RATIONALS
    }

    /// Rejects composite moduli (and 0, 1).
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec {
            kind: FieldKind::PrimeField,
            modulus: Some(p),
        })
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn is_finite(&self) -> bool {
        self.kind == FieldKind::PrimeField
    }

    /// Number of elements, `None` for `Q`.
    pub fn order(&self) -> Option<u64> {
        self.modulus
    }

    pub fn ensure_same(&self, other: &FieldSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: *self,
                right: *other,
            })
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus {
            None => f.write_str("Q"),
            Some(p) => write!(f, "GF:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::RATIONALS);
        }
        let digits = s
            .strip_prefix("GF:")
            .ok_or_else(|| Error::Parse(format!("unknown field tag {s:?}, expected Q or GF:p")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad modulus in field tag {s:?}")))?;
        FieldSpec::prime(p)
    }
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const fn is_prime_const(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> Result<u64> {
    if a.is_multiple_of(p) {
        return Err(Error::DivisionByZero);
    }
    // p is prime, so Fermat applies.
    Ok(pow_mod(a, p - 2, p))
}

fn residue_of(v: i64, p: u64) -> u64 {
    (v as i128).rem_euclid(p as i128) as u64
}

fn bigint_mod(v: &BigInt, p: u64) -> u64 {
    v.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits in u64")
}

/// Splits a literal into (numerator, optional denominator).
///
/// Grammar: optional sign (`+`, `-` or U+2212), decimal digits, then
/// optionally `/` and a positive decimal integer.
fn parse_literal(s: &str) -> Result<(BigInt, Option<BigInt>)> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed number {s:?}"));
    let (negative, body) = if let Some(rest) = s.strip_prefix('-') {
        (true, rest)
    } else if let Some(rest) = s.strip_prefix('\u{2212}') {
        (true, rest)
    } else if let Some(rest) = s.strip_prefix('+') {
        (false, rest)
    } else {
        (false, s)
    };
    let digits = |t: &str| -> Result<BigInt> {
        if t.is_empty() || !t.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        BigInt::from_str(t).map_err(|_| bad())
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (digits(n)?, Some(digits(d)?)),
        None => (digits(body)?, None),
    };
    let num = if negative { -num } else { num };
    Ok((num, den))
}

/// An element of an exact field.
///
/// The field itself may be a type-level constant (`Rational`, `Gf<P>`) or
/// carried at runtime (`FieldElement`); either way `spec()` reports it and
/// the `*_in` constructors take it.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn spec(&self) -> FieldSpec;

    /// Whether this type can represent elements of `spec`.
    fn admits(spec: &FieldSpec) -> bool;

    fn zero_in(spec: &FieldSpec) -> Self;

    fn one_in(spec: &FieldSpec) -> Self;

    fn is_zero(&self) -> bool;

    fn inv(&self) -> Result<Self>;

    /// The image of `num / den` in the field.
    fn from_ratio(num: i64, den: i64, spec: &FieldSpec) -> Result<Self>;

    fn parse_in(s: &str, spec: &FieldSpec) -> Result<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one_in(&self.spec())
    }

    fn from_int(v: i64, spec: &FieldSpec) -> Self {
        Self::from_ratio(v, 1, spec).expect("denominator is one")
    }
}

fn check_admits<T: Scalar>(spec: &FieldSpec) -> Result<()> {
    if T::admits(spec) {
        Ok(())
    } else {
        Err(Error::Parse(format!(
            "field {spec} is not representable by {}",
            std::any::type_name::<T>()
        )))
    }
}

impl Scalar for Rational {
    fn spec(&self) -> FieldSpec {
        FieldSpec::RATIONALS
    }

    fn admits(spec: &FieldSpec) -> bool {
        spec.kind == FieldKind::Rationals
    }

    fn zero_in(spec: &FieldSpec) -> Self {
        debug_assert!(Self::admits(spec));
        Rational::zero()
    }

    fn one_in(spec: &FieldSpec) -> Self {
        debug_assert!(Self::admits(spec));
        Rational::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.recip())
    }

    fn from_ratio(num: i64, den: i64, spec: &FieldSpec) -> Result<Self> {
        check_admits::<Self>(spec)?;
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational::new(num.into(), den.into()))
    }

    fn parse_in(s: &str, spec: &FieldSpec) -> Result<Self> {
        check_admits::<Self>(spec)?;
        let (num, den) = parse_literal(s)?;
        match den {
            None => Ok(Rational::from_integer(num)),
            Some(d) if Zero::is_zero(&d) => Err(Error::DivisionByZero),
            Some(d) => Ok(Rational::new(num, d)),
        }
    }
}

/// An element of `GF(P)` with `P` fixed at compile time.
///
/// Instantiating with a composite `P` fails to compile.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf<const P: u64>(u64);

pub type Gf2 = Gf<2>;
pub type Gf3 = Gf<3>;
pub type Gf5 = Gf<5>;
pub type Gf7 = Gf<7>;

impl<const P: u64> Gf<P> {
    const PRIME: () = assert!(is_prime_const(P), "Gf<P> requires a prime modulus");

    pub fn new(v: u64) -> Self {
        #[allow(clippy::let_unit_value)]
        let () = Self::PRIME;
        Gf(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn field() -> FieldSpec {
        FieldSpec {
            kind: FieldKind::PrimeField,
            modulus: Some(P),
        }
    }
}

impl<const P: u64> fmt::Display for Gf<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Gf<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Gf(((self.0 as u128 + rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Sub for Gf<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<const P: u64> Neg for Gf<P> {
    type Output = Self;
    fn neg(self) -> Self {
        if self.0 == 0 {
            self
        } else {
            Gf(P - self.0)
        }
    }
}

impl<const P: u64> Mul for Gf<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Gf(mul_mod(self.0, rhs.0, P))
    }
}

impl<const P: u64> Zero for Gf<P> {
    fn zero() -> Self {
        Gf::new(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Gf<P> {
    fn one() -> Self {
        Gf::new(1)
    }
}

impl<const P: u64> Inv for Gf<P> {
    type Output = Option<Self>;
    fn inv(self) -> Option<Self> {
        inv_mod(self.0, P).ok().map(Gf)
    }
}

impl<const P: u64> Scalar for Gf<P> {
    fn spec(&self) -> FieldSpec {
        Self::field()
    }

    fn admits(spec: &FieldSpec) -> bool {
        spec.modulus == Some(P)
    }

    fn zero_in(spec: &FieldSpec) -> Self {
        debug_assert!(Self::admits(spec));
        Gf::new(0)
    }

    fn one_in(spec: &FieldSpec) -> Self {
        debug_assert!(Self::admits(spec));
        Gf::new(1)
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }

    fn inv(&self) -> Result<Self> {
        inv_mod(self.0, P).map(Gf)
    }

    fn from_ratio(num: i64, den: i64, spec: &FieldSpec) -> Result<Self> {
        check_admits::<Self>(spec)?;
        let n = Gf::new(residue_of(num, P));
        let d = Gf::new(residue_of(den, P));
        Ok(n * Scalar::inv(&d)?)
    }

    fn parse_in(s: &str, spec: &FieldSpec) -> Result<Self> {
        check_admits::<Self>(spec)?;
        parse_residue(s, P).map(Gf)
    }
}

fn parse_residue(s: &str, p: u64) -> Result<u64> {
    match parse_literal(s)? {
        (num, None) => Ok(bigint_mod(&num, p)),
        (_, Some(_)) => Err(Error::Parse(format!(
            "{s:?}: prime-field elements are written as integers"
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Rational(Rational),
    Residue { value: u64, modulus: u64 },
}

/// An element tagged at runtime with its field.
///
/// The operator impls panic when operands come from different fields; use
/// the `checked_*` methods when that can happen. Matrix code validates field
/// agreement once up front, so it uses the operators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    repr: Repr,
}

impl FieldElement {
    pub fn zero(spec: &FieldSpec) -> Self {
        Self::from_int(0, spec)
    }

    pub fn one(spec: &FieldSpec) -> Self {
        Self::from_int(1, spec)
    }

    pub fn from_rational(q: Rational) -> Self {
        FieldElement {
            repr: Repr::Rational(q),
        }
    }

    /// Residue of `value` modulo the field's prime. Panics on `Q`.
    pub fn from_residue(value: u64, spec: &FieldSpec) -> Self {
        let p = spec.modulus.expect("from_residue needs a prime field");
        FieldElement {
            repr: Repr::Residue {
                value: value % p,
                modulus: p,
            },
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match &self.repr {
            Repr::Rational(q) => Some(q),
            Repr::Residue { .. } => None,
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match self.repr {
            Repr::Residue { value, .. } => Some(value),
            Repr::Rational(_) => None,
        }
    }

    pub fn parse(s: &str, spec: &FieldSpec) -> Result<Self> {
        <Self as Scalar>::parse_in(s, spec)
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.spec().ensure_same(&rhs.spec())?;
        Ok(self.clone() + rhs.clone())
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.spec().ensure_same(&rhs.spec())?;
        Ok(self.clone() - rhs.clone())
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.spec().ensure_same(&rhs.spec())?;
        Ok(self.clone() * rhs.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        self.spec().ensure_same(&rhs.spec())?;
        Ok(self.clone() * Scalar::inv(rhs)?)
    }

    fn combine(
        self,
        rhs: Self,
        rat: impl FnOnce(Rational, Rational) -> Rational,
        res: impl FnOnce(u64, u64, u64) -> u64,
    ) -> Self {
        match (self.repr, rhs.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => FieldElement::from_rational(rat(a, b)),
            (
                Repr::Residue {
                    value: a,
                    modulus: p,
                },
                Repr::Residue {
                    value: b,
                    modulus: q,
                },
            ) if p == q => FieldElement {
                repr: Repr::Residue {
                    value: res(a, b, p),
                    modulus: p,
                },
            },
            (a, b) => panic!(
                "field mismatch: {} vs {}",
                FieldElement { repr: a }.spec(),
                FieldElement { repr: b }.spec()
            ),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rational(q) => write!(f, "{q}"),
            Repr::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Add for FieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.combine(
            rhs,
            |a, b| a + b,
            |a, b, p| ((a as u128 + b as u128) % p as u128) as u64,
        )
    }
}

impl Sub for FieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.combine(
            rhs,
            |a, b| a - b,
            |a, b, p| ((a as u128 + (p - b) as u128) % p as u128) as u64,
        )
    }
}

impl Mul for FieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.combine(rhs, |a, b| a * b, mul_mod)
    }
}

impl Div for FieldElement {
    type Output = Self;
    /// Panics on division by zero or mixed fields.
    fn div(self, rhs: Self) -> Self {
        self.checked_div(&rhs).expect("field division")
    }
}

impl Neg for FieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        match self.repr {
            Repr::Rational(q) => FieldElement::from_rational(-q),
            Repr::Residue { value, modulus } => FieldElement {
                repr: Repr::Residue {
                    value: (modulus - value) % modulus,
                    modulus,
                },
            },
        }
    }
}

impl Scalar for FieldElement {
    fn spec(&self) -> FieldSpec {
        match self.repr {
            Repr::Rational(_) => FieldSpec::RATIONALS,
            Repr::Residue { modulus, .. } => FieldSpec {
                kind: FieldKind::PrimeField,
                modulus: Some(modulus),
            },
        }
    }

    fn admits(_spec: &FieldSpec) -> bool {
        true
    }

    fn zero_in(spec: &FieldSpec) -> Self {
        Self::zero(spec)
    }

    fn one_in(spec: &FieldSpec) -> Self {
        Self::one(spec)
    }

    fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rational(q) => Zero::is_zero(q),
            Repr::Residue { value, .. } => *value == 0,
        }
    }

    fn inv(&self) -> Result<Self> {
        match &self.repr {
            Repr::Rational(q) => Scalar::inv(q).map(FieldElement::from_rational),
            Repr::Residue { value, modulus } => Ok(FieldElement {
                repr: Repr::Residue {
                    value: inv_mod(*value, *modulus)?,
                    modulus: *modulus,
                },
            }),
        }
    }

    fn from_ratio(num: i64, den: i64, spec: &FieldSpec) -> Result<Self> {
        match spec.modulus {
            None => Rational::from_ratio(num, den, spec).map(FieldElement::from_rational),
            Some(p) => {
                let n = FieldElement::from_residue(residue_of(num, p), spec);
                let d = FieldElement::from_residue(residue_of(den, p), spec);
                n.checked_div(&d)
            }
        }
    }

    fn parse_in(s: &str, spec: &FieldSpec) -> Result<Self> {
        match spec.modulus {
            None => Rational::parse_in(s, spec).map(FieldElement::from_rational),
            Some(p) => Ok(FieldElement::from_residue(parse_residue(s, p)?, spec)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> FieldElement {
        FieldElement::parse(s, &FieldSpec::RATIONALS).unwrap()
    }

    fn gf(v: u64, p: u64) -> FieldElement {
        FieldElement::from_residue(v, &FieldSpec::prime(p).unwrap())
    }

    #[test]
    fn add_examples() {
        assert_eq!(gf(3, 5).checked_add(&gf(4, 5)).unwrap(), gf(2, 5));
        assert_eq!(q("1/2").checked_add(&q("1/3")).unwrap(), q("5/6"));
        assert_eq!(gf(1, 2).checked_add(&gf(1, 2)).unwrap(), gf(0, 2));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(gf(3, 5).checked_mul(&gf(2, 5)).unwrap(), gf(1, 5));
        assert_eq!(q("2/3").checked_mul(&q("3/4")).unwrap(), q("1/2"));
        let a = q("-7/11");
        assert_eq!(a.checked_mul(&q("1")).unwrap(), a);
    }

    #[test]
    fn inv_examples() {
        assert_eq!(Scalar::inv(&gf(3, 5)).unwrap(), gf(2, 5));
        assert_eq!(Scalar::inv(&q("-2/7")).unwrap(), q("-7/2"));
        assert_eq!(Scalar::inv(&gf(1, 7)).unwrap(), gf(1, 7));
        assert_eq!(Scalar::inv(&q("0")), Err(Error::DivisionByZero));
        assert_eq!(Scalar::inv(&gf(0, 7)), Err(Error::DivisionByZero));
    }

    #[test]
    fn parse_examples() {
        assert_eq!(q("\u{2212}3/6"), q("-1/2"));
        assert_eq!(q("-3/6").to_string(), "-1/2");
        let gf7 = FieldSpec::prime(7).unwrap();
        assert_eq!(FieldElement::parse("9", &gf7).unwrap(), gf(2, 7));
        assert_eq!(FieldElement::parse("-1", &gf7).unwrap(), gf(6, 7));
        assert!(Scalar::is_zero(&q("0")));
        assert!(Scalar::is_zero(&FieldElement::parse("0", &gf7).unwrap()));
    }

    #[test]
    fn parse_errors() {
        let qs = FieldSpec::RATIONALS;
        assert_eq!(FieldElement::parse("1/0", &qs), Err(Error::DivisionByZero));
        for bad in ["", "-", "1/", "/2", "1/-2", "1.5", "abc", "1//2", "--1"] {
            assert!(
                matches!(FieldElement::parse(bad, &qs), Err(Error::Parse(_))),
                "{bad:?}"
            );
        }
        let gf5 = FieldSpec::prime(5).unwrap();
        assert!(matches!(
            FieldElement::parse("1/2", &gf5),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let err = gf(1, 5).checked_add(&gf(1, 7)).unwrap_err();
        assert!(matches!(err, Error::FieldMismatch { .. }));
        assert!(q("1").checked_mul(&gf(1, 7)).is_err());
    }

    #[test]
    fn field_spec_tags() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::RATIONALS);
        assert_eq!("GF:7".parse::<FieldSpec>().unwrap().modulus(), Some(7));
        assert_eq!(FieldSpec::prime(7).unwrap().to_string(), "GF:7");
        assert_eq!("GF:9".parse::<FieldSpec>(), Err(Error::NotPrime(9)));
        assert_eq!(FieldSpec::prime(1), Err(Error::NotPrime(1)));
        assert_eq!(FieldSpec::prime(0), Err(Error::NotPrime(0)));
        assert!("GF7".parse::<FieldSpec>().is_err());
        assert_ne!(FieldSpec::prime(5).unwrap(), FieldSpec::prime(7).unwrap());
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..5000u64 {
            assert_eq!(is_prime(n), is_prime_const(n), "{n}");
        }
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(18_446_744_073_709_551_555));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn static_prime_field() {
        let a = Gf5::new(3);
        assert_eq!(a + Gf5::new(4), Gf5::new(2));
        assert_eq!(a * Gf5::new(2), Gf5::new(1));
        assert_eq!(Scalar::inv(&a).unwrap(), Gf5::new(2));
        assert_eq!(-Gf5::new(0), Gf5::new(0));
        assert_eq!(Gf5::from_ratio(-1, 2, &Gf5::field()).unwrap(), Gf5::new(2));
        assert_eq!(Gf5::parse_in("9", &Gf5::field()).unwrap(), Gf5::new(4));
        assert!(Gf5::parse_in("1", &FieldSpec::RATIONALS).is_err());
    }

    #[test]
    fn large_modulus_arithmetic() {
        let p = 18_446_744_073_709_551_557u64;
        let spec = FieldSpec::prime(p).unwrap();
        let a = FieldElement::from_residue(p - 1, &spec);
        assert_eq!(a.clone() * a.clone(), FieldElement::one(&spec));
        assert_eq!(
            a.clone() + FieldElement::one(&spec),
            FieldElement::zero(&spec)
        );
        let m = FieldElement::from_ratio(-1, 1, &spec).unwrap();
        assert_eq!(m, a);
        let half = FieldElement::from_ratio(1, -2, &spec).unwrap();
        assert_eq!(
            half * FieldElement::from_int(-2, &spec),
            FieldElement::one(&spec)
        );
    }
}

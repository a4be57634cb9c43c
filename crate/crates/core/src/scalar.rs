//! Exact ground fields.
//!
//! Every algorithm in the crate is generic over [`Field`]. Two families are
//! provided: arbitrary-precision rationals ([`Rational`]) and residues modulo
//! an odd prime ([`Fp`]). Characteristic 2 is excluded throughout, so the
//! scalar `1/2` always exists.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::matrix::{gauss_jordan, Matrix};

/// Which ground field a value belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField { p: u32 },
}

impl FieldSpec {
    pub fn prime(p: u32) -> Result<Self> {
        if is_odd_prime(p) {
            Ok(FieldSpec::PrimeField { p })
        } else {
            Err(Error::InvalidPrime(u64::from(p)))
        }
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField { p } => *p,
        }
    }

    /// `{"kind":"Q"}` or `{"kind":"GF","p":5}`.
    pub fn to_json(&self) -> Value {
        match self {
            FieldSpec::Rationals => serde_json::json!({"kind": "Q"}),
            FieldSpec::PrimeField { p } => serde_json::json!({"kind": "GF", "p": p}),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let kind = v
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("field: missing \"kind\"".into()))?;
        match kind {
            "Q" => Ok(FieldSpec::Rationals),
            "GF" => {
                let p = v
                    .get("p")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| Error::Parse("field: GF requires integer \"p\"".into()))?;
                let p = u32::try_from(p).map_err(|_| Error::InvalidPrime(p))?;
                FieldSpec::prime(p)
            }
            other => Err(Error::Parse(format!("field: unknown kind {other:?}"))),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => f.write_str("Q"),
            FieldSpec::PrimeField { p } => write!(f, "GF:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `Q` or `GF:p`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        match s.strip_prefix("GF:") {
            Some(p) => {
                let p: u64 = p
                    .parse()
                    .map_err(|_| Error::Parse(format!("field: bad prime in {s:?}")))?;
                let p = u32::try_from(p).map_err(|_| Error::InvalidPrime(p))?;
                FieldSpec::prime(p)
            }
            None => Err(Error::Parse(format!("field: expected Q or GF:p, got {s:?}"))),
        }
    }
}

pub const fn is_odd_prime(p: u32) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact field of characteristic other than 2.
pub trait Field:
    Clone
    + fmt::Debug
    + fmt::Display
    + Eq
    + Hash
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn spec() -> FieldSpec;

    fn from_i64(v: i64) -> Self;

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// Seeded sample. Rationals draw integers in `[-height, height]`; prime
    /// fields ignore `height` and draw uniformly.
    fn sample<R: Rng + ?Sized>(rng: &mut R, height: u32) -> Self;

    fn to_json(&self) -> Value;

    fn from_json(v: &Value) -> Result<Self>;

    /// Reduce `m` to reduced row echelon form in place, returning the pivot
    /// columns in increasing order.
    fn row_reduce(m: &mut Matrix<Self>) -> Vec<usize> {
        gauss_jordan(m)
    }

    fn characteristic() -> u32 {
        Self::spec().characteristic()
    }

    fn half() -> Self {
        Self::from_i64(2).inv().expect("characteristic is not 2")
    }
}

/// Arbitrary-precision rational number, always in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: BigInt, denom: BigInt) -> Self {
        Rational(BigRational::new(numer, denom))
    }

    pub fn from_big(r: BigRational) -> Self {
        Rational(r)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn into_big(self) -> BigRational {
        self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

macro_rules! rational_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            #[inline]
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);
rational_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational(BigRational::one())
    }
}

impl Field for Rational {
    fn spec() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn from_i64(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R, height: u32) -> Self {
        let h = i64::from(height);
        Self::from_i64(rng.gen_range(-h..=h))
    }

    /// `"a/b"` in lowest terms, `"a"` when the denominator is one.
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => BigRational::from_str(s.trim())
                .map(Rational)
                .map_err(|_| Error::Parse(format!("rational: cannot parse {s:?}"))),
            Value::Number(n) => n
                .as_i64()
                .map(Self::from_i64)
                .ok_or_else(|| Error::Parse(format!("rational: non-integer number {n}"))),
            other => Err(Error::Parse(format!("rational: unexpected {other}"))),
        }
    }

    fn row_reduce(m: &mut Matrix<Self>) -> Vec<usize> {
        crate::matrix::bareiss_rref(m)
    }
}

/// Residue class modulo the odd prime `P`, stored reduced in `[0, P)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    const MODULUS_IS_ODD_PRIME: () = assert!(is_odd_prime(P), "modulus must be an odd prime");

    pub fn new(v: i64) -> Self {
        #[allow(clippy::let_unit_value)]
        let () = Self::MODULUS_IS_ODD_PRIME;
        Fp(v.rem_euclid(i64::from(P)) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u32> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Fp(if self.0 >= rhs.0 {
            self.0 - rhs.0
        } else {
            self.0 + P - rhs.0
        })
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        Fp(((u64::from(self.0) * u64::from(rhs.0)) % u64::from(P)) as u32)
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u32> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero in prime field")
    }
}

impl<const P: u32> AddAssign for Fp<P> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<const P: u32> SubAssign for Fp<P> {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl<const P: u32> MulAssign for Fp<P> {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl<const P: u32> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u32> One for Fp<P> {
    fn one() -> Self {
        Fp(1)
    }
}

impl<const P: u32> Field for Fp<P> {
    fn spec() -> FieldSpec {
        #[allow(clippy::let_unit_value)]
        let () = Self::MODULUS_IS_ODD_PRIME;
        FieldSpec::PrimeField { p: P }
    }

    fn from_i64(v: i64) -> Self {
        Self::new(v)
    }

    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(u64::from(P) - 2))
        }
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R, _height: u32) -> Self {
        Fp(rng.gen_range(0..P))
    }

    fn to_json(&self) -> Value {
        Value::from(self.0)
    }

    fn from_json(v: &Value) -> Result<Self> {
        let n = v
            .as_u64()
            .ok_or_else(|| Error::Parse(format!("GF({P}) scalar: expected integer, got {v}")))?;
        if n >= u64::from(P) {
            return Err(Error::Parse(format!("GF({P}) scalar {n} is not in [0, {P})")));
        }
        Ok(Fp(n as u32))
    }
}

//! Dense univariate polynomials over a [`Field`].
//!
//! Coefficients are stored lowest degree first. The zero polynomial has an
//! empty coefficient list; otherwise the last coefficient is nonzero.

use std::fmt;

use num_traits::{One, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Field;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Field> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Poly {
            coeffs: vec![T::zero(), T::one()],
        }
    }

    pub fn monomial(c: T, deg: usize) -> Self {
        let mut coeffs = vec![T::zero(); deg + 1];
        coeffs[deg] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let cur = std::mem::replace(&mut out[i + j], T::zero());
                out[i + j] = cur + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.coeffs[dd].inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if sd < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![T::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = rem[k + dd].clone() * lead_inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let cur = std::mem::replace(&mut rem[k + j], T::zero());
                rem[k + j] = cur - c.clone() * d.clone();
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Exact quotient; panics in debug builds if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, u)` with `s*self + u*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut u0, mut u1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let u2 = u0.sub(&q.mul(&u1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            u0 = std::mem::replace(&mut u1, u2);
        }
        match r0.leading().cloned() {
            None => (r0, s0, u0),
            Some(l) => {
                let inv = l.inv().expect("nonzero leading coefficient");
                (r0.scale(&inv), s0.scale(&inv), u0.scale(&inv))
            }
        }
    }

    /// Inverse of `self` modulo `modulus`, when they are coprime.
    pub fn inverse_mod(&self, modulus: &Self) -> Option<Self> {
        let (g, s, _) = self.rem(modulus).ext_gcd(modulus);
        (g.degree() == Some(0)).then(|| s.rem(modulus))
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        self.mul(other).exact_div(&self.gcd(other)).monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * T::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// `self(m)` by Horner's rule.
    pub fn eval_matrix(&self, m: &Matrix<T>) -> Matrix<T> {
        assert!(m.is_square(), "polynomial evaluation needs a square matrix");
        let n = m.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m).add(&Matrix::scalar(n, c.clone()));
        }
        acc
    }

    /// `self(inner)`, optionally reduced modulo `modulus` at every step.
    pub fn compose(&self, inner: &Self, modulus: Option<&Self>) -> Self {
        let reduce = |p: Self| match modulus {
            Some(m) => p.rem(m),
            None => p,
        };
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            reduce(acc.mul(inner).add(&Self::constant(c.clone())))
        })
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Product of the distinct monic irreducible factors.
    ///
    /// In characteristic `p` a zero derivative means `self = h(t^p)`, and over
    /// a prime field `h(t^p) = h(t)^p`, so the radical of `h` is taken instead.
    pub fn radical(&self) -> Self {
        let Some(deg) = self.degree() else {
            return Self::zero();
        };
        if deg == 0 {
            return Self::one();
        }
        let f = self.monic();
        let d = f.derivative();
        if d.is_zero() {
            let p = T::characteristic() as usize;
            debug_assert!(p > 0, "zero derivative of a nonconstant polynomial in characteristic 0");
            let root = Self::new(f.coeffs.iter().step_by(p).cloned().collect());
            return root.radical();
        }
        let g = f.gcd(&d);
        let w = f.exact_div(&g);
        w.lcm(&g.radical())
    }

    /// The unique `f` of degree below `deg(a) + deg(b)` with `f ≡ ra (mod a)`
    /// and `f ≡ rb (mod b)`, for coprime `a` and `b`.
    pub fn crt(ra: &Self, a: &Self, rb: &Self, b: &Self) -> Option<Self> {
        let (g, s, u) = a.ext_gcd(b);
        if g.degree() != Some(0) {
            return None;
        }
        // s*a + u*b = 1
        let ab = a.mul(b);
        let f = ra.mul(&u).mul(b).add(&rb.mul(&s).mul(a));
        Some(f.rem(&ab))
    }

    /// Coefficient array, lowest degree first.
    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(Field::to_json).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("polynomial: expected coefficient array".into()))?;
        Ok(Self::new(arr.iter().map(T::from_json).collect::<Result<_>>()?))
    }
}

impl<T: fmt::Debug> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp, Rational};
    use proptest::prelude::*;

    type Q = Rational;
    type F3 = Fp<3>;
    type F5 = Fp<5>;

    fn pq(c: &[i64]) -> Poly<Q> {
        Poly::from_i64(c)
    }

    #[test]
    fn zero_polynomial_has_empty_coefficients() {
        let z = Poly::<Q>::new(vec![Q::zero(), Q::zero()]);
        assert!(z.coeffs().is_empty());
        assert_eq!(z.degree(), None);
        assert_eq!(z.to_json().to_string(), "[]");
        assert_eq!(pq(&[1, 0, 3]).to_json().to_string(), r#"["1","0","3"]"#);
    }

    #[test]
    fn division_and_gcd() {
        // (t-1)(t-2) and (t-1)(t+3)
        let a = pq(&[2, -3, 1]);
        let b = pq(&[-3, 2, 1]);
        assert_eq!(a.gcd(&b), pq(&[-1, 1]));
        let (q, r) = pq(&[1, 0, 0, 1]).div_rem(&pq(&[1, 1]));
        assert_eq!(q, pq(&[1, -1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.lcm(&b), pq(&[6, -7, 0, 1]));
    }

    #[test]
    fn ext_gcd_identity() {
        let a = pq(&[1, 0, 1]);
        let b = pq(&[-1, 1]);
        let (g, s, u) = a.ext_gcd(&b);
        assert_eq!(g, Poly::one());
        assert_eq!(s.mul(&a).add(&u.mul(&b)), g);
        let inv = b.inverse_mod(&a).unwrap();
        assert_eq!(inv.mul(&b).rem(&a), Poly::one());
    }

    #[test]
    fn crt_interpolation() {
        let t = Poly::<Q>::t();
        let g = pq(&[-2, 1]).mul(&pq(&[-3, 1]));
        let f = Poly::crt(&Poly::zero(), &t, &Poly::one(), &g).unwrap();
        assert!(f.rem(&t).is_zero());
        assert_eq!(f.rem(&g), Poly::one());
        assert!(Poly::crt(&Poly::zero(), &t, &Poly::one(), &t.mul(&t)).is_none());
    }

    #[test]
    fn radical_in_characteristic_zero() {
        let f = pq(&[-1, 1]).mul(&pq(&[-1, 1])).mul(&pq(&[2, 1]));
        assert_eq!(f.radical(), pq(&[-2, 1, 1]));
        assert!(!f.is_squarefree());
        assert!(f.radical().is_squarefree());
    }

    #[test]
    fn radical_handles_pth_powers() {
        // (t - 1)^3 = t^3 - 1 over GF(3): derivative vanishes
        let f = Poly::<F3>::from_i64(&[-1, 0, 0, 1]);
        assert!(f.derivative().is_zero());
        assert_eq!(f.radical(), Poly::from_i64(&[-1, 1]));
        // t^2 (t+1)^3 over GF(3)
        let g = Poly::<F3>::t().mul(&Poly::t()).mul(&Poly::from_i64(&[1, 0, 0, 1]));
        assert_eq!(g.radical(), Poly::from_i64(&[0, 1, 1]));
        // (t^5 - t) is squarefree over GF(5)
        assert!(Poly::<F5>::from_i64(&[0, -1, 0, 0, 0, 1]).is_squarefree());
    }

    #[test]
    fn compose_and_matrix_evaluation() {
        let f = pq(&[1, 2, 1]);
        let g = pq(&[0, 3]);
        assert_eq!(f.compose(&g, None), pq(&[1, 6, 9]));
        let m = Matrix::<Q>::from_i64_rows(&[&[0, 1], &[-1, 0]]);
        // t^2 + 1 annihilates a rotation by 90 degrees
        assert!(pq(&[1, 0, 1]).eval_matrix(&m).is_zero());
        assert_eq!(pq(&[5]).eval_matrix(&m), Matrix::scalar(2, Q::from_i64(5)));
    }

    fn poly_strategy() -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-4i64..=4, 0..6)
    }

    proptest! {
        #[test]
        fn division_identity(a in poly_strategy(), b in poly_strategy()) {
            let (a, b) = (pq(&a), pq(&b));
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b);
            prop_assert_eq!(q.mul(&b).add(&r), a);
            prop_assert!(r.degree() < b.degree());
        }

        #[test]
        fn radical_divides_and_is_squarefree(a in proptest::collection::vec(0i64..5, 1..8)) {
            let f = Poly::<F5>::from_i64(&a);
            prop_assume!(f.degree().is_some_and(|d| d > 0));
            let r = f.radical();
            prop_assert!(r.divides(&f));
            prop_assert!(r.is_squarefree());
            // every root multiplicity is absorbed: f divides r^deg(f)
            let mut pw = Poly::one();
            for _ in 0..f.degree().unwrap() { pw = pw.mul(&r); }
            prop_assert!(f.divides(&pw));
        }
    }
}

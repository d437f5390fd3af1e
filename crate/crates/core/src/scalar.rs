//! Exact scalar fields: rationals and Gaussian rationals.
//!
//! Complex doubles live only in [`cp_semigroup`](crate::cp_semigroup); they do not
//! implement [`Scalar`], so exact-only routines (kernels, law checks) cannot be
//! instantiated with them.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// Arbitrary-precision rational number.
pub type Q = BigRational;
/// Gaussian rational `re + im·i`.
pub type Qi = Complex<BigRational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarKind {
    Rational,
    GaussianRational,
}

/// An exact field element.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const KIND: ScalarKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    fn from_q(q: Q) -> Self;
    /// Embeds a Gaussian rational, failing when it does not lie in this field.
    fn from_qi(z: &Qi) -> Option<Self>;
    fn to_q(&self) -> Option<Q>;
    fn conj(&self) -> Self;
    fn to_c64(&self) -> Complex64;
    /// Exact textual form: `p/q` for rationals, `p/q+r/s*i` for Gaussian rationals.
    fn to_text(&self) -> String;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;

    fn from_i64(n: i64) -> Self {
        Self::from_q(Q::from_integer(BigInt::from(n)))
    }

    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_q(Q::new(BigInt::from(n), BigInt::from(d)))
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.clone() * i)
    }
}

pub fn parse_q(s: &str) -> Result<Q> {
    let t = s.trim();
    let q = Q::from_str(t).map_err(|_| Error::Parse(format!("not a rational: '{s}'")))?;
    Ok(q)
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

fn q_text(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

impl Scalar for Q {
    const KIND: ScalarKind = ScalarKind::Rational;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_q(q: Q) -> Self {
        q
    }
    fn from_qi(z: &Qi) -> Option<Self> {
        if Zero::is_zero(&z.im) {
            Some(z.re.clone())
        } else {
            None
        }
    }
    fn to_q(&self) -> Option<Q> {
        Some(self.clone())
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(q_to_f64(self), 0.0)
    }
    fn to_text(&self) -> String {
        q_text(self)
    }
    fn to_json(&self) -> Value {
        Value::String(q_text(self))
    }
    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_q(s),
            Value::Number(n) if n.is_i64() => Ok(q(n.as_i64().unwrap_or_default())),
            Value::Array(a) if a.len() == 2 => {
                let z = Qi::from_json(v)?;
                Q::from_qi(&z).ok_or_else(|| {
                    Error::Construction(format!(
                        "gaussian-rational value {} given where a rational is required",
                        z.to_text()
                    ))
                })
            }
            other => Err(Error::Parse(format!("expected a fraction string, got {other}"))),
        }
    }
}

impl Scalar for Qi {
    const KIND: ScalarKind = ScalarKind::GaussianRational;

    fn zero() -> Self {
        Complex::new(Zero::zero(), Zero::zero())
    }
    fn one() -> Self {
        Complex::new(One::one(), Zero::zero())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if Zero::is_zero(&n) {
            None
        } else {
            Some(Complex::new(&self.re / &n, -&self.im / &n))
        }
    }
    fn from_q(q: Q) -> Self {
        Complex::new(q, Zero::zero())
    }
    fn from_qi(z: &Qi) -> Option<Self> {
        Some(z.clone())
    }
    fn to_q(&self) -> Option<Q> {
        if Zero::is_zero(&self.im) {
            Some(self.re.clone())
        } else {
            None
        }
    }
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(q_to_f64(&self.re), q_to_f64(&self.im))
    }
    fn to_text(&self) -> String {
        if Zero::is_zero(&self.im) {
            q_text(&self.re)
        } else if Zero::is_zero(&self.re) {
            format!("{}*i", q_text(&self.im))
        } else if self.im.is_negative() {
            format!("{}-{}*i", q_text(&self.re), q_text(&-self.im.clone()))
        } else {
            format!("{}+{}*i", q_text(&self.re), q_text(&self.im))
        }
    }
    fn to_json(&self) -> Value {
        Value::Array(vec![
            Value::String(q_text(&self.re)),
            Value::String(q_text(&self.im)),
        ])
    }
    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Array(a) if a.len() == 2 => {
                let re = Q::from_json(&a[0])?;
                let im = Q::from_json(&a[1])?;
                Ok(Complex::new(re, im))
            }
            other => Ok(Qi::from_q(Q::from_json(other)?)),
        }
    }
}

/// Shorthand for the Gaussian rational `re + im·i` with integer parts.
pub fn qi(re: i64, im: i64) -> Qi {
    Complex::new(q(re), q(im))
}

/// `(-1)^n` as a scalar.
pub fn sign<S: Scalar>(n: usize) -> S {
    if n.is_multiple_of(2) {
        S::one()
    } else {
        -S::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_roundtrip() {
        let x = qr(6, -4);
        assert_eq!(x.to_text(), "-3/2");
        assert_eq!(Q::from_json(&x.to_json()).unwrap(), x);
    }

    #[test]
    fn gaussian_inverse() {
        let z = qi(1, 1);
        let w = Scalar::inv(&z).unwrap();
        assert_eq!(z * w, <Qi as Scalar>::one());
        assert!(Scalar::inv(&<Qi as Scalar>::zero()).is_none());
    }

    #[test]
    fn mixing_kinds_at_the_boundary_is_rejected() {
        let v = qi(0, 1).to_json();
        assert!(matches!(Q::from_json(&v), Err(Error::Construction(_))));
        assert_eq!(Qi::from_json(&v).unwrap(), qi(0, 1));
    }
}

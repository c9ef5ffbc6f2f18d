//! Exact arithmetic in the real field generated by √2, √3 and √5.
//!
//! Every reflection weight 2cos(π/m) for m in {3, 4, 5, 6, ∞} lives in this
//! field, so root coordinates of the catalog graphs can be carried exactly.
//! Other labels fall back to [`ApproxValue`], a double with an error bound
//! that refuses to answer sign queries it cannot justify.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::graph::EdgeLabel;

/// Squarefree radicands of the basis {1, √2, √3, √5, √6, √10, √15, √30}.
pub const RADICANDS: [u64; 8] = [1, 2, 3, 5, 6, 10, 15, 30];

fn radicand_index(d: u64) -> usize {
    RADICANDS.iter().position(|&r| r == d).expect("not a basis radicand")
}

#[derive(Debug, Error)]
pub enum ArithError {
    #[error("edge label must be at least 3, got {0}")]
    InvalidLabel(u32),
    #[error("approximate value {value:e} is within its error bound {bound:e} of zero; sign undecidable")]
    PrecisionExhausted { value: f64, bound: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// An element of Q(√2, √3, √5) as eight rational coordinates over
/// {1, √2, √3, √5, √6, √10, √15, √30}.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldValue {
    coeffs: [BigRational; 8],
}

impl FieldValue {
    pub fn zero() -> Self {
        FieldValue { coeffs: std::array::from_fn(|_| BigRational::zero()) }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        let mut v = Self::zero();
        v.coeffs[0] = BigRational::from_integer(n.into());
        v
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let mut v = Self::zero();
        v.coeffs[0] = BigRational::new(num.into(), den.into());
        v
    }

    /// √d for a basis radicand d (1, 2, 3, 5, 6, 10, 15 or 30).
    pub fn sqrt(d: u64) -> Self {
        let mut v = Self::zero();
        v.coeffs[radicand_index(d)] = BigRational::one();
        v
    }

    pub fn coefficient(&self, d: u64) -> &BigRational {
        &self.coeffs[radicand_index(d)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Exact sign. Zero is decided coefficientwise; otherwise dyadic
    /// interval evaluation with doubling precision, which terminates
    /// because the value is then bounded away from zero.
    pub fn sign(&self) -> Sign {
        if self.is_zero() {
            return Sign::Zero;
        }
        if self.is_rational() {
            return if self.coeffs[0].is_positive() { Sign::Positive } else { Sign::Negative };
        }
        let mut shift = 32u32;
        loop {
            let (lo, hi) = self.eval_interval(shift);
            if lo.is_positive() {
                return Sign::Positive;
            }
            if hi.is_negative() {
                return Sign::Negative;
            }
            shift *= 2;
        }
    }

    pub fn compare(&self, other: &Self) -> Ordering {
        match (self - other).sign() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }

    /// Encloses the value in [lo, hi] using outward-rounded √d bounds with
    /// denominator 2^shift.
    fn eval_interval(&self, shift: u32) -> (BigRational, BigRational) {
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k == 0 {
                lo += c;
                hi += c;
                continue;
            }
            let (slo, shi) = sqrt_bounds(RADICANDS[k], shift);
            if c.is_positive() {
                lo += c * &slo;
                hi += c * &shi;
            } else {
                lo += c * &shi;
                hi += c * &slo;
            }
        }
        (lo, hi)
    }

    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.eval_interval(128);
        let mid = (lo + hi) / BigRational::from_integer(2.into());
        mid.to_f64().unwrap_or(f64::NAN)
    }

    pub fn to_approx(&self) -> ApproxValue {
        let (lo, hi) = self.eval_interval(128);
        let two = BigRational::from_integer(2.into());
        let mid = (&lo + &hi) / &two;
        let value = mid.to_f64().unwrap_or(f64::NAN);
        let width = (&hi - &lo).to_f64().unwrap_or(0.0);
        ApproxValue::new(value, width / 2.0 + value.abs() * f64::EPSILON)
    }

    /// Canonical text form: reduced rational coefficients, zero terms
    /// omitted, radicals written r2, r3, ..., r30; "0" for zero.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if k == 0 {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&format!("r{}", RADICANDS[k]));
            } else {
                out.push_str(&format!("{}·r{}", mag, RADICANDS[k]));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for FieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for FieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldValue({})", self.render())
    }
}

/// Outward dyadic bounds lo/2^shift ≤ √d ≤ hi/2^shift.
fn sqrt_bounds(d: u64, shift: u32) -> (BigRational, BigRational) {
    let scaled = BigInt::from(d) << (2 * shift);
    let root = scaled.sqrt();
    let den = BigInt::one() << shift;
    (
        BigRational::new(root.clone(), den.clone()),
        BigRational::new(root + 1, den),
    )
}

impl Add for &FieldValue {
    type Output = FieldValue;
    fn add(self, rhs: &FieldValue) -> FieldValue {
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a += b;
        }
        out
    }
}

impl Sub for &FieldValue {
    type Output = FieldValue;
    fn sub(self, rhs: &FieldValue) -> FieldValue {
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a -= b;
        }
        out
    }
}

impl Neg for &FieldValue {
    type Output = FieldValue;
    fn neg(self) -> FieldValue {
        let mut out = self.clone();
        for a in out.coeffs.iter_mut() {
            *a = -a.clone();
        }
        out
    }
}

impl Mul for &FieldValue {
    type Output = FieldValue;
    fn mul(self, rhs: &FieldValue) -> FieldValue {
        let mut out = FieldValue::zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let di = RADICANDS[i];
                let dj = RADICANDS[j];
                let g = di.gcd(&dj);
                let dk = (di / g) * (dj / g);
                let k = radicand_index(dk);
                out.coeffs[k] += a * b * BigRational::from_integer(g.into());
            }
        }
        out
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for FieldValue {
            type Output = FieldValue;
            fn $method(self, rhs: FieldValue) -> FieldValue {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for FieldValue {
    type Output = FieldValue;
    fn neg(self) -> FieldValue {
        -&self
    }
}

/// A double together with an absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxValue {
    pub value: f64,
    pub bound: f64,
}

impl ApproxValue {
    pub fn new(value: f64, bound: f64) -> Self {
        ApproxValue { value, bound }
    }

    pub fn sign(&self) -> Result<Sign, ArithError> {
        if self.value.abs() <= self.bound {
            return Err(ArithError::PrecisionExhausted { value: self.value, bound: self.bound });
        }
        Ok(if self.value > 0.0 { Sign::Positive } else { Sign::Negative })
    }

    pub fn add(&self, rhs: &ApproxValue) -> ApproxValue {
        let value = self.value + rhs.value;
        ApproxValue::new(value, self.bound + rhs.bound + value.abs() * f64::EPSILON)
    }

    pub fn sub(&self, rhs: &ApproxValue) -> ApproxValue {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &ApproxValue) -> ApproxValue {
        let value = self.value * rhs.value;
        let bound = self.value.abs() * rhs.bound
            + rhs.value.abs() * self.bound
            + self.bound * rhs.bound
            + value.abs() * f64::EPSILON;
        ApproxValue::new(value, bound)
    }

    pub fn neg(&self) -> ApproxValue {
        ApproxValue::new(-self.value, self.bound)
    }

    pub fn render(&self) -> String {
        format!("~{:.12e}", self.value)
    }
}

/// A scalar that is exact whenever the inputs allow it. Any operation that
/// touches an approximate operand yields an approximate (tainted) result.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(FieldValue),
    Approx(ApproxValue),
}

impl Value {
    pub fn zero() -> Self {
        Value::Exact(FieldValue::zero())
    }

    pub fn one() -> Self {
        Value::Exact(FieldValue::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Value::Exact(FieldValue::from_integer(n))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Value::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&FieldValue> {
        match self {
            Value::Exact(v) => Some(v),
            Value::Approx(_) => None,
        }
    }

    pub fn sign(&self) -> Result<Sign, ArithError> {
        match self {
            Value::Exact(v) => Ok(v.sign()),
            Value::Approx(a) => a.sign(),
        }
    }

    pub fn compare(&self, other: &Value) -> Result<Ordering, ArithError> {
        Ok(match self.sub(other).sign()? {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        })
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(v) => v.to_f64(),
            Value::Approx(a) => a.value,
        }
    }

    fn approx(&self) -> ApproxValue {
        match self {
            Value::Exact(v) => v.to_approx(),
            Value::Approx(a) => *a,
        }
    }

    pub fn add(&self, rhs: &Value) -> Value {
        match (self, rhs) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a + b),
            _ => Value::Approx(self.approx().add(&rhs.approx())),
        }
    }

    pub fn sub(&self, rhs: &Value) -> Value {
        match (self, rhs) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a - b),
            _ => Value::Approx(self.approx().sub(&rhs.approx())),
        }
    }

    pub fn mul(&self, rhs: &Value) -> Value {
        match (self, rhs) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a * b),
            _ => Value::Approx(self.approx().mul(&rhs.approx())),
        }
    }

    pub fn neg(&self) -> Value {
        match self {
            Value::Exact(a) => Value::Exact(-a),
            Value::Approx(a) => Value::Approx(a.neg()),
        }
    }

    pub fn render(&self) -> String {
        match self {
            Value::Exact(v) => v.render(),
            Value::Approx(a) => a.render(),
        }
    }
}

/// The reflection weight 2cos(π/m) of an edge label. Exact for the labels
/// the affine catalog uses, approximate (ε = 2⁻⁴⁵) for the rest.
pub fn weight(label: EdgeLabel) -> Result<Value, ArithError> {
    match label {
        EdgeLabel::Infinite => Ok(Value::from_integer(2)),
        EdgeLabel::Finite(3) => Ok(Value::one()),
        EdgeLabel::Finite(4) => Ok(Value::Exact(FieldValue::sqrt(2))),
        EdgeLabel::Finite(5) => {
            let half = FieldValue::from_ratio(1, 2);
            let v = &half + &(&half * &FieldValue::sqrt(5));
            Ok(Value::Exact(v))
        }
        EdgeLabel::Finite(6) => Ok(Value::Exact(FieldValue::sqrt(3))),
        EdgeLabel::Finite(m) if m >= 3 => {
            let value = 2.0 * (std::f64::consts::PI / m as f64).cos();
            Ok(Value::Approx(ApproxValue::new(value, 2f64.powi(-45))))
        }
        EdgeLabel::Finite(m) => Err(ArithError::InvalidLabel(m)),
    }
}
